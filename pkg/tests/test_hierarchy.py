from dataclasses import replace

import pytest

from jcmap.graph import symmetrize
from jcmap.hierarchy import (
    ClusterTree,
    DecomposeConfig,
    compare_external,
    decompose,
    relabel,
    subnetwork,
    tree_to_partition,
)
from jcmap.partition import Partition
from jcmap.rng import path_seed
from jcmap.synth import PlantedSpec, planted_partition


@pytest.fixture(scope="module")
def planted():
    return planted_partition(PlantedSpec(60, 3, 0.4, 0.02, seed=7))


@pytest.fixture(scope="module")
def deep_tree():
    g, _ = planted_partition(PlantedSpec(240, 4, 0.25, 0.01, seed=2))
    return g, decompose(g, DecomposeConfig(method="vos", root_seed=11, min_size=8, max_depth=3))


def check_conservation(tree: ClusterTree):
    for node in tree.walk():
        if node.children:
            got = sorted(x for c in node.children for x in c.members) + list(node.singletons)
            assert sorted(got) == sorted(node.members)
            seen = set()
            for k, c in enumerate(node.children, start=1):
                assert set(c.members) <= set(node.members)
                assert not seen & set(c.members)
                seen |= set(c.members)
                assert c.path == (f"{node.path}.{k}" if node.path else str(k))
            sizes = [c.size for c in node.children]
            assert sizes == sorted(sizes, reverse=True)
        else:
            assert node.stop_reason in ("min-size", "max-depth", "no-split", "edgeless")


def test_two_triangles_two_small_leaves(two_triangles):
    cfg = DecomposeConfig(min_size=10, largest_component_only=False)
    tree = decompose(two_triangles, cfg)
    assert [c.size for c in tree.root.children] == [3, 3]
    assert all(c.stop_reason == "min-size" for c in tree.root.children)


def test_root_uses_largest_component(two_triangles):
    tree = decompose(two_triangles, DecomposeConfig())
    assert tree.root.members == (1, 2, 3)
    assert tree.root.stop_reason == "no-split"


def test_planted_blocks_recovered(planted):
    g, truth = planted
    tree = decompose(g, DecomposeConfig(method="vos", root_seed=1, max_depth=2))
    blocks = {tuple(m) for m in truth.clusters}
    assert {c.members for c in tree.root.children} == blocks
    assert tree_to_partition(tree, 1) == truth
    check_conservation(tree)


def test_tree_to_partition_levels(deep_tree):
    _, tree = deep_tree
    root_split = Partition.from_labels(
        [next((k for k, c in enumerate(tree.root.children) if x in c.members), f"s{x}") for x in sorted(tree.root.members)]
    )
    assert tree_to_partition(tree, 1) == root_split
    leaves = tree_to_partition(tree, tree.height)
    assert tree_to_partition(tree, tree.height + 3) == leaves
    for d in range(1, tree.height + 1):
        p = tree_to_partition(tree, d)
        assert len(p) == tree.root.size
    with pytest.raises(ValueError):
        tree_to_partition(tree, 0)


def test_conservation_and_stop_reasons(deep_tree):
    check_conservation(deep_tree[1])


def test_tree_determinism(deep_tree):
    g, tree = deep_tree
    assert decompose(g, tree.config) == tree


def test_branch_seed_independence(deep_tree):
    g, tree = deep_tree
    sym = symmetrize(g)
    child = tree.find("1")
    assert child.children, "fixture should decompose the first field"
    sub = subnetwork(sym, child)
    cfg = replace(tree.config, root_seed=path_seed(tree.config.root_seed, "1"), max_depth=tree.config.max_depth - 1)
    standalone = decompose(sub, cfg)
    assert [c.members for c in standalone.root.children] == [c.members for c in child.children]
    assert standalone.root.quality == child.quality


def test_relabel(deep_tree):
    _, tree = deep_tree
    named = relabel(tree, "1", "Library & Information Science")
    assert named.find("1").label == "Library & Information Science"
    assert tree.find("1").label is None
    for d in (1, 2):
        assert tree_to_partition(named, d) == tree_to_partition(tree, d)
    twice = relabel(named, "1", "LIS")
    assert twice.find("1").label == "LIS"
    assert "LIS" in twice.outline() and "LIS" in twice.to_json()
    with pytest.raises(KeyError):
        relabel(tree, "9.9", "x")


def test_json_round_trip(deep_tree):
    _, tree = deep_tree
    tree = relabel(tree, "2", "Two")
    again = ClusterTree.from_json(tree.to_json())
    assert again == tree
    assert again.to_json() == tree.to_json()


def test_outline_format(deep_tree):
    lines = deep_tree[1].outline().splitlines()
    assert lines[0].startswith("root (n=240)")
    assert lines[1].startswith("  1. (n=")


def test_compare_external(planted):
    g, _ = planted
    tree = decompose(g, DecomposeConfig(method="vos", root_seed=1, max_depth=1))
    node = tree.find("1")
    names = [tree.labels[x] for x in node.members]
    same = compare_external(tree, "1", [f"  {n.lower()} " for n in names])
    assert same.counts["intersection"] == node.size
    assert same.only_in_cluster == () and same.only_in_external == ()
    other = [tree.labels[x] for x in tree.find("2").members]
    disjoint = compare_external(tree, "1", other + ["Not A Journal"])
    assert disjoint.intersection == ()
    assert disjoint.unmatched_external == ("Not A Journal",)
    assert "Not A Journal" in disjoint.only_in_external
    mixed = compare_external(tree, "1", names[:5] + other[:2])
    assert mixed.counts == {
        "cluster": node.size,
        "external": 7,
        "intersection": 5,
        "only_in_cluster": node.size - 5,
        "only_in_external": 2,
        "unmatched_external": 0,
    }
    assert "only in external 2" in mixed.table()
    with pytest.raises(KeyError):
        compare_external(tree, "7", [])


def test_config_validation():
    with pytest.raises(ValueError):
        DecomposeConfig(min_size=0)
    with pytest.raises(ValueError):
        DecomposeConfig(max_depth=0)
    with pytest.raises(ValueError):
        DecomposeConfig(singleton_policy="drop")


def test_keep_policy_makes_singleton_children():
    from jcmap.graph import from_edges

    # a star leaf hanging off a triangle pair tends to become its own cluster under VOS
    g = from_edges(7, [(1, 2, 5), (2, 3, 5), (1, 3, 5), (4, 5, 5), (5, 6, 5), (4, 6, 5), (3, 4, 1), (6, 7, 1)])
    aside = decompose(g, DecomposeConfig(method="vos", min_size=2, singleton_policy="set-aside"))
    kept = decompose(g, DecomposeConfig(method="vos", min_size=2, singleton_policy="keep"))
    n_single = len(aside.root.singletons)
    assert len(kept.root.children) == len(aside.root.children) + n_single
    assert tree_to_partition(kept, 1) == tree_to_partition(aside, 1)
