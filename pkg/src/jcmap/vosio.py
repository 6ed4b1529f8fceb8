"""Pajek ``.net`` / ``.clu``, VOSviewer map/network text and CSV helpers.

Writers are canonical: ids ascending, labels always quoted (a literal
quote is doubled), arcs sorted by (source, target), ``\\n`` line endings.
Every parse error is a :class:`FormatError` carrying the 1-based line.
"""

from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass

import numpy as np

from .graph import CitationGraph, SymmetricGraph, remove_loops, symmetrize
from .layout import MapLayout
from .partition import Partition

log = logging.getLogger(__name__)


class FormatError(ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _quote(label: str) -> str:
    return '"' + label.replace('"', '""') + '"'


def _number_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("%"):
            yield no, line


def _parse_vertex(no: int, line: str) -> tuple[int, str]:
    head, rest = (re.split(r"\s+", line, maxsplit=1) + [""])[:2]
    try:
        vid = int(head)
    except ValueError:
        raise FormatError(no, f"vertex id is not an integer: {head!r}") from None
    rest = rest.strip()
    if not rest:
        return vid, str(vid)
    if rest.startswith('"'):
        out = []
        i = 1
        while True:
            j = rest.find('"', i)
            if j < 0:
                raise FormatError(no, "unterminated quoted label")
            out.append(rest[i:j])
            if rest.startswith('""', j):
                out.append('"')
                i = j + 2
                continue
            break
        return vid, "".join(out)
    return vid, rest.split()[0]


def _parse_weight(no: int, token: str) -> int:
    try:
        value = float(token)
    except ValueError:
        raise FormatError(no, f"weight is not a number: {token!r}") from None
    if value != int(value):
        raise FormatError(no, f"weight must be an integer citation count: {token!r}")
    if value < 1:
        raise FormatError(no, f"weight must be positive: {token!r}")
    return int(value)


def parse_net(text: str) -> CitationGraph:
    """Read a Pajek network with ``*Vertices`` and ``*Arcs``/``*Edges`` sections."""
    lines = list(_number_lines(text))
    if not lines or not lines[0][1].lower().startswith("*vertices"):
        raise FormatError(lines[0][0] if lines else 1, "missing *Vertices header")
    no, header = lines[0]
    parts = header.split()
    try:
        n = int(parts[1])
    except (IndexError, ValueError):
        raise FormatError(no, "*Vertices must be followed by the vertex count") from None
    if n < 0:
        raise FormatError(no, "negative vertex count")
    labels: list[str | None] = [None] * n
    arcs: dict[tuple[int, int], int] = {}
    section = "vertices"
    n_vertex_lines = 0
    for no, line in lines[1:]:
        if line.startswith("*"):
            key = line.split()[0].lower()
            if section == "vertices" and n_vertex_lines != n:
                raise FormatError(no, f"vertex count mismatch: declared {n}, found {n_vertex_lines}")
            if key == "*arcs":
                section = "arcs"
            elif key == "*edges":
                section = "edges"
            elif key == "*vertices":
                raise FormatError(no, "repeated *Vertices section")
            else:
                raise FormatError(no, f"unsupported section {line.split()[0]}")
            continue
        if section == "vertices":
            n_vertex_lines += 1
            if n_vertex_lines > n:
                raise FormatError(no, f"vertex count mismatch: more than {n} vertex lines")
            vid, label = _parse_vertex(no, line)
            if not 1 <= vid <= n:
                raise FormatError(no, f"vertex id {vid} out of range 1..{n}")
            if labels[vid - 1] is not None:
                raise FormatError(no, f"duplicate vertex id {vid}")
            labels[vid - 1] = label
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise FormatError(no, "expected 'source target [weight]'")
        try:
            s, t = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise FormatError(no, "arc endpoints must be integers") from None
        for v in (s, t):
            if not 1 <= v <= n:
                raise FormatError(no, f"vertex id {v} out of range 1..{n}")
        w = _parse_weight(no, tokens[2]) if len(tokens) > 2 else 1
        pairs = [(s, t)] if section == "arcs" or s == t else [(s, t), (t, s)]
        for pair in pairs:
            if pair in arcs:
                raise FormatError(no, f"duplicate arc {pair}")
            arcs[pair] = w
    if section == "vertices" and n_vertex_lines != n:
        raise FormatError(
            lines[-1][0] + 1, f"vertex count mismatch: declared {n}, found {n_vertex_lines}"
        )
    final = tuple(lab if lab is not None else str(i + 1) for i, lab in enumerate(labels))
    return CitationGraph(final, tuple((s, t, w) for (s, t), w in sorted(arcs.items())))


def _fmt_weight(w) -> str:
    return str(int(w)) if float(w).is_integer() else f"{w:.4f}"


def write_net(g: CitationGraph | SymmetricGraph) -> str:
    out = [f"*Vertices {g.n}\n"]
    out.extend(f"{i + 1} {_quote(lab)}\n" for i, lab in enumerate(g.labels))
    if isinstance(g, CitationGraph):
        if g.arcs:
            out.append("*Arcs\n")
            out.extend(f"{s} {t} {w}\n" for s, t, w in sorted(g.arcs))
    elif g.edges:
        out.append("*Edges\n")
        out.extend(f"{u} {v} {_fmt_weight(w)}\n" for u, v, w in sorted(g.edges))
    return "".join(out)


def parse_clu(text: str, expected_n: int | None = None) -> Partition:
    lines = list(_number_lines(text))
    if not lines or not lines[0][1].lower().startswith("*vertices"):
        raise FormatError(lines[0][0] if lines else 1, "missing *Vertices header")
    no, header = lines[0]
    try:
        n = int(header.split()[1])
    except (IndexError, ValueError):
        raise FormatError(no, "*Vertices must be followed by the vertex count") from None
    if expected_n is not None and n != expected_n:
        raise FormatError(no, f"partition declares {n} vertices, expected {expected_n}")
    values = []
    for no, line in lines[1:]:
        if len(values) == n:
            raise FormatError(no, f"more than the declared {n} values")
        try:
            values.append(int(line))
        except ValueError:
            raise FormatError(no, f"cluster value is not an integer: {line!r}") from None
    if len(values) != n:
        raise FormatError(
            (lines[-1][0] + 1), f"partition declares {n} vertices but has {len(values)} values"
        )
    return Partition.from_labels(values)


def write_clu(p: Partition) -> str:
    return f"*Vertices {len(p)}\n" + "".join(f"{c}\n" for c in p.assignment)


def _clean_field(label: str) -> str:
    return re.sub(r"[\t\r\n]+", " ", label)


def _as_symmetric(g: CitationGraph | SymmetricGraph) -> SymmetricGraph:
    if isinstance(g, CitationGraph):
        return symmetrize(remove_loops(g)[0])
    return g


MAP_HEADER = "id\tlabel\tx\ty\tcluster\tweight"


def write_vos_map(
    g: CitationGraph | SymmetricGraph,
    p: Partition,
    layout: MapLayout | np.ndarray,
    weights=None,
) -> str:
    """Tab-separated VOSviewer map; node weight defaults to weighted degree."""
    sym = _as_symmetric(g)
    coords = layout.coords if isinstance(layout, MapLayout) else np.asarray(layout)
    if len(p) != sym.n or coords.shape != (sym.n, 2):
        raise ValueError(
            f"inconsistent node sets: graph {sym.n}, partition {len(p)}, layout {coords.shape[0]}"
        )
    if weights is None:
        weights = sym.degree
    if len(weights) != sym.n:
        raise ValueError("one weight per node required")
    rows = [MAP_HEADER]
    for i in range(sym.n):
        rows.append(
            f"{i + 1}\t{_clean_field(sym.labels[i])}\t{coords[i, 0]:.4f}\t{coords[i, 1]:.4f}"
            f"\t{p.assignment[i]}\t{float(weights[i]):.4f}"
        )
    return "\n".join(rows) + "\n"


def write_vos_network(g: CitationGraph | SymmetricGraph) -> str:
    sym = _as_symmetric(g)
    return "".join(f"{u}\t{v}\t{_fmt_weight(w)}\n" for u, v, w in sorted(sym.edges))


@dataclass(frozen=True)
class VosMap:
    ids: tuple[int, ...]
    labels: tuple[str, ...]
    coords: np.ndarray
    clusters: tuple[int, ...]
    weights: tuple[float, ...]


def parse_vos_map(text: str) -> VosMap:
    lines = text.splitlines()
    if not lines or lines[0].strip().split("\t") != MAP_HEADER.split("\t"):
        raise FormatError(1, f"expected header {MAP_HEADER!r}")
    ids, labels, xy, clusters, weights = [], [], [], [], []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise FormatError(no, f"expected 6 tab-separated columns, found {len(fields)}")
        try:
            ids.append(int(fields[0]))
            labels.append(fields[1])
            xy.append((float(fields[2]), float(fields[3])))
            clusters.append(int(fields[4]))
            weights.append(float(fields[5]))
        except ValueError as exc:
            raise FormatError(no, str(exc)) from None
        if clusters[-1] < 1:
            raise FormatError(no, "cluster ids must be positive")
    return VosMap(tuple(ids), tuple(labels), np.asarray(xy, dtype=float).reshape(-1, 2), tuple(clusters), tuple(weights))


def ingest_csv(text: str, delimiter: str = ",", header: bool | None = None) -> tuple[CitationGraph, int]:
    """Build a citation graph from ``cited,citing,count`` rows.

    Nodes are created in order of first appearance. Repeated (cited, citing)
    pairs are summed; the number of such repeats is returned alongside the
    graph. ``header=None`` treats a first row whose count field is not an
    integer as a header.
    """
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    index: dict[str, int] = {}
    acc: dict[tuple[int, int], int] = {}
    repeats = 0
    for row_no, row in enumerate(reader, start=1):
        if not row or all(not f.strip() for f in row):
            continue
        line = reader.line_num
        if len(row) != 3:
            raise FormatError(line, f"expected 3 fields (cited, citing, count), found {len(row)}")
        cited, citing, count = (f.strip() for f in row)
        if row_no == 1 and header:
            continue
        if row_no == 1 and header is None:
            try:
                int(count)
            except ValueError:
                continue
        if not cited or not citing:
            raise FormatError(line, "empty journal label")
        try:
            value = int(count)
        except ValueError:
            raise FormatError(line, f"count is not an integer: {count!r}") from None
        if value <= 0:
            raise FormatError(line, f"count must be positive, got {value}")
        for lab in (cited, citing):
            if lab not in index:
                index[lab] = len(index) + 1
        key = (index[cited], index[citing])
        if key in acc:
            repeats += 1
            acc[key] += value
        else:
            acc[key] = value
    if repeats:
        log.warning("summed %d repeated (cited, citing) rows", repeats)
    labels = tuple(sorted(index, key=index.get))
    return CitationGraph(labels, tuple((s, t, w) for (s, t), w in acc.items())), repeats


def export_submatrix_csv(g: CitationGraph, node_ids) -> str:
    """Square CSV of citation weights among ``node_ids``; cell (i, j) is arc i -> j.

    Labels form the header row and first column, in the order given.
    """
    ids = list(node_ids)
    for i in ids:
        if not 1 <= i <= g.n:
            raise KeyError(f"unknown node id {i}")
    pos = {v: k for k, v in enumerate(ids)}
    mat = [[0] * len(ids) for _ in ids]
    for s, t, w in g.arcs:
        if s in pos and t in pos:
            mat[pos[s]][pos[t]] = w
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + [g.labels[i - 1] for i in ids])
    for i, row in zip(ids, mat):
        writer.writerow([g.labels[i - 1]] + row)
    return buf.getvalue()
