import random
from pathlib import Path

import pytest

from jcmap.clustering import ClusterConfig, cluster
from jcmap.graph import CitationGraph, SymmetricGraph, from_edges
from jcmap.partition import Partition
from jcmap.vosio import (
    FormatError,
    export_submatrix_csv,
    ingest_csv,
    parse_clu,
    parse_net,
    parse_vos_map,
    write_clu,
    write_net,
    write_vos_map,
    write_vos_network,
)

from oracles import random_citation

FIXTURES = Path(__file__).parent / "fixtures"
GOOD_NET = sorted((FIXTURES / "good").glob("*.net"))
GOOD_CLU = sorted((FIXTURES / "good").glob("*.clu"))

BAD = {
    "count_mismatch.net": 4,
    "no_vertices.net": 1,
    "duplicate_arc.net": 6,
    "out_of_range.net": 5,
    "bad_weight.net": 5,
    "unterminated.net": 2,
    "matrix.net": 4,
    "short.clu": 4,
    "text.clu": 3,
}


def test_tiny_arcs():
    g = parse_net('*Vertices 2\n1 "A"\n2 "B"\n*Arcs\n1 2 3\n')
    assert g.labels == ("A", "B") and g.arcs == ((1, 2, 3),)


def test_edges_expand_both_ways():
    g = parse_net('*Vertices 2\n1 "A"\n2 "B"\n*Edges\n1 2 3\n')
    assert g.arcs == ((1, 2, 3), (2, 1, 3))


def test_quotes_spaces_crlf_and_defaults():
    g = parse_net((FIXTURES / "good" / "spaces_quotes.net").read_text())
    assert g.labels == ("J Am Soc Inf Sci Tec", "Scientometrics", 'Say "hi" Quarterly', "4")
    assert (4, 1, 1) in g.arcs and (3, 3, 2) in g.arcs
    assert '3 "Say ""hi"" Quarterly"\n' in write_net(g)


def test_empty_graph():
    assert write_net(CitationGraph((), ())) == "*Vertices 0\n"


@pytest.mark.parametrize("path", GOOD_NET, ids=lambda p: p.name)
def test_net_round_trip(path):
    g = parse_net(path.read_text())
    text = write_net(g)
    assert parse_net(text) == g
    assert write_net(parse_net(text)) == text


@pytest.mark.parametrize("path", GOOD_CLU, ids=lambda p: p.name)
def test_clu_round_trip(path):
    p = parse_clu(path.read_text())
    text = write_clu(p)
    assert parse_clu(text, len(p)) == p
    assert write_clu(parse_clu(text)) == text


def test_random_net_round_trip():
    rnd = random.Random(3)
    alphabet = 'ab "c\'d-_é'
    for _ in range(50):
        g = random_citation(rnd, rnd.randint(1, 30), 0.2, loops=True)
        labels = tuple("".join(rnd.choice(alphabet) for _ in range(rnd.randint(1, 12))).strip() or "x" for _ in range(g.n))
        g = CitationGraph(labels, g.arcs)
        assert parse_net(write_net(g)) == g


@pytest.mark.parametrize("name,line", sorted(BAD.items()))
def test_malformed_fixture_reports_line(name, line):
    text = (FIXTURES / "bad" / name).read_text()
    parser = parse_clu if name.endswith(".clu") else parse_net
    with pytest.raises(FormatError) as err:
        parser(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


def test_clu_examples(two_triangles):
    assert parse_clu("*Vertices 3\n1\n1\n2\n").assignment == (1, 1, 2)
    p, _ = cluster(two_triangles, ClusterConfig("louvain", 0))
    assert write_clu(p) == "*Vertices 6\n1\n1\n1\n2\n2\n2\n"
    with pytest.raises(FormatError):
        parse_clu("*Vertices 3\n1\n1\n2\n", expected_n=4)


def test_clu_renumbers_densely():
    assert write_clu(parse_clu("*Vertices 4\n7\n3\n7\n9\n")) == "*Vertices 4\n1\n2\n1\n3\n"


def test_symmetric_graph_written_as_edges():
    g = from_edges(3, [(1, 2, 2), (2, 3, 1.5)])
    text = write_net(g)
    assert "*Edges\n1 2 2\n2 3 1.5000\n" in text


def test_vos_map_grammar():
    g = SymmetricGraph(("A", "B"), ((1, 2, 3),))
    text = write_vos_map(g, Partition.single(2), [[0.5, 0.0], [-0.5, 0.0]])
    lines = text.split("\n")
    assert text.endswith("\n") and len(lines) == 4 and lines[-1] == ""
    assert lines[0] == "id\tlabel\tx\ty\tcluster\tweight"
    assert lines[1] == "1\tA\t0.5000\t0.0000\t1\t3.0000"
    m = parse_vos_map(text)
    assert m.weights == (3.0, 3.0) and m.clusters == (1, 1)


def test_vos_map_default_weight_is_degree(bridged_triangles):
    p, _ = cluster(bridged_triangles)
    coords = [[float(i), 0.0] for i in range(6)]
    m = parse_vos_map(write_vos_map(bridged_triangles, p, coords))
    assert m.weights == tuple(float(k) for k in bridged_triangles.degree)
    assert m.ids == tuple(range(1, 7))
    for row in write_vos_map(bridged_triangles, p, coords).splitlines()[1:]:
        x, y, w = row.split("\t")[2], row.split("\t")[3], row.split("\t")[5]
        assert all(len(v.split(".")[1]) == 4 for v in (x, y, w))


def test_vos_map_inconsistent():
    g = SymmetricGraph(("A", "B"), ((1, 2, 3),))
    with pytest.raises(ValueError, match="inconsistent"):
        write_vos_map(g, Partition.single(3), [[0, 0], [1, 1]])


def test_vos_network_lines(two_triangles):
    text = write_vos_network(two_triangles)
    rows = [r.split("\t") for r in text.splitlines()]
    assert len(rows) == 6 and all(len(r) == 3 for r in rows)
    assert rows[0] == ["1", "2", "1"]


def test_map_parser_rejects_bad_rows():
    with pytest.raises(FormatError) as err:
        parse_vos_map("id\tlabel\tx\ty\tcluster\tweight\n1\tA\t0\t0\t1\n")
    assert err.value.line == 2
    with pytest.raises(FormatError):
        parse_vos_map("id,label\n")


def test_ingest_three_rows():
    g, repeats = ingest_csv("A,B,1\nB,C,2\nC,A,3\n")
    assert g.n == 3 and len(g.arcs) == 3 and repeats == 0
    assert g.labels == ("A", "B", "C")


def test_ingest_sums_repeats(caplog):
    g, repeats = ingest_csv("cited,citing,count\nA,B,2\nA,B,3\nB,A,1\n")
    assert repeats == 1
    assert (1, 2, 5) in g.arcs
    assert "repeated" in caplog.text


def test_ingest_zero_count_line():
    with pytest.raises(FormatError) as err:
        ingest_csv("A,B,1\nA,C,0\n")
    assert err.value.line == 2
    with pytest.raises(FormatError) as err:
        ingest_csv("A,B,1\nA,C\n")
    assert err.value.line == 2


def test_ingest_self_citation_is_a_loop():
    g, _ = ingest_csv("A,A,4\nA,B,1\n")
    assert (1, 1, 4) in g.arcs


def test_submatrix():
    g = CitationGraph(("A", "B", "C"), ((1, 2, 4), (2, 1, 1), (3, 1, 9)))
    text = export_submatrix_csv(g, [1, 2])
    assert text == ",A,B\nA,0,4\nB,1,0\n"
    with pytest.raises(KeyError):
        export_submatrix_csv(g, [4])


def test_submatrix_diagonal_zero_on_loop_free():
    rnd = random.Random(4)
    g = random_citation(rnd, 15, 0.4, loops=False)
    rows = export_submatrix_csv(g, range(1, 16)).splitlines()[1:]
    assert len(rows) == 15
    for k, row in enumerate(rows, start=1):
        assert row.split(",")[k] == "0"
