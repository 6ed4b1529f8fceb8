"""Recursive divisive decomposition into a dotted-path classification tree.

Each tree node is clustered with its own seed, ``path_seed(root_seed, path)``,
where the seed of path ``p.k`` is ``derive_seed(seed(p), k)``. A subtree can
therefore be rebuilt on its own from the subnetwork and its branch seed,
and sibling order never affects results.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Iterator

from .clustering import ClusterConfig, QualityScore, cluster, normalize_method
from .graph import (
    CitationGraph,
    SymmetricGraph,
    extract_subnetwork,
    induced_subgraph,
    largest_component,
    remove_loops,
    symmetrize,
)
from .partition import Partition
from .rng import path_seed

STOP_MIN_SIZE = "min-size"
STOP_MAX_DEPTH = "max-depth"
STOP_NO_SPLIT = "no-split"
STOP_EDGELESS = "edgeless"


@dataclass(frozen=True)
class DecomposeConfig:
    method: str = "modularity"
    root_seed: int = 0
    resolution: float = 1.0
    min_size: int = 10
    max_depth: int = 5
    singleton_policy: str = "set-aside"
    largest_component_only: bool = True

    def __post_init__(self):
        object.__setattr__(self, "method", normalize_method(self.method))
        if self.min_size < 1:
            raise ValueError("min_size must be >= 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.singleton_policy not in ("set-aside", "keep"):
            raise ValueError("singleton_policy must be 'set-aside' or 'keep'")


@dataclass(frozen=True)
class TreeNode:
    path: str
    members: tuple[int, ...]
    seed: int | None = None
    label: str | None = None
    quality: QualityScore | None = None
    children: tuple[TreeNode, ...] = ()
    singletons: tuple[int, ...] = ()
    stop_reason: str | None = None

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def depth(self) -> int:
        return 0 if not self.path else self.path.count(".") + 1

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class ClusterTree:
    root: TreeNode
    labels: dict[int, str] = field(default_factory=dict)
    config: DecomposeConfig | None = None

    def walk(self) -> Iterator[TreeNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def find(self, path: str) -> TreeNode:
        node = self.root
        if path:
            for part in path.split("."):
                k = int(part)
                if not 1 <= k <= len(node.children):
                    raise KeyError(f"unknown tree path {path!r}")
                node = node.children[k - 1]
        return node

    @property
    def height(self) -> int:
        return max(n.depth for n in self.walk())

    def outline(self) -> str:
        """Indented text outline: path, size, label, split quality, stop reason."""
        lines = []
        for node in self.walk():
            name = node.path + "." if node.path else "root"
            parts = [f"{'  ' * node.depth}{name}"]
            if node.label:
                parts.append(node.label)
            parts.append(f"(n={node.size})")
            if node.quality is not None:
                parts.append(f"{node.quality.method}={node.quality.value:.4f}")
            if node.singletons:
                parts.append(f"singletons={len(node.singletons)}")
            if node.stop_reason:
                parts.append(f"[{node.stop_reason}]")
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        def enc(node: TreeNode) -> dict:
            return {
                "path": node.path,
                "size": node.size,
                "label": node.label,
                "seed": node.seed,
                "quality": None
                if node.quality is None
                else {
                    "method": node.quality.method,
                    "value": node.quality.value,
                    "resolution": node.quality.resolution,
                },
                "stop_reason": node.stop_reason,
                "members": list(node.members),
                "singletons": list(node.singletons),
                "children": [enc(c) for c in node.children],
            }

        out = {"labels": {str(k): v for k, v in sorted(self.labels.items())}, "root": enc(self.root)}
        if self.config is not None:
            out["config"] = {
                "method": self.config.method,
                "root_seed": self.config.root_seed,
                "resolution": self.config.resolution,
                "min_size": self.config.min_size,
                "max_depth": self.config.max_depth,
                "singleton_policy": self.config.singleton_policy,
                "largest_component_only": self.config.largest_component_only,
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> ClusterTree:
        def dec(d: dict) -> TreeNode:
            q = d.get("quality")
            return TreeNode(
                path=d["path"],
                members=tuple(d["members"]),
                seed=d.get("seed"),
                label=d.get("label"),
                quality=None if q is None else QualityScore(q["method"], q["value"], q["resolution"]),
                children=tuple(dec(c) for c in d.get("children", [])),
                singletons=tuple(d.get("singletons", [])),
                stop_reason=d.get("stop_reason"),
            )

        cfg = data.get("config")
        return cls(
            root=dec(data["root"]),
            labels={int(k): v for k, v in data.get("labels", {}).items()},
            config=None if cfg is None else DecomposeConfig(**cfg),
        )

    @classmethod
    def from_json(cls, text: str) -> ClusterTree:
        return cls.from_dict(json.loads(text))


def _child_path(parent: str, k: int) -> str:
    return f"{parent}.{k}" if parent else str(k)


def _split(h: SymmetricGraph, path: str, depth: int, cfg: DecomposeConfig) -> TreeNode:
    seed = path_seed(cfg.root_seed, path)
    members = tuple(h.origin)
    if h.m == 0:
        return TreeNode(path, members, seed, stop_reason=STOP_EDGELESS)
    p, q = cluster(h, ClusterConfig(cfg.method, seed, cfg.resolution))
    if p.n_clusters == 1:
        return TreeNode(path, members, seed, quality=q, stop_reason=STOP_NO_SPLIT)
    set_aside = []
    children = []
    for cid in range(1, p.n_clusters + 1):
        if p.sizes[cid - 1] == 1 and cfg.singleton_policy == "set-aside":
            set_aside.append(h.origin[p.members(cid)[0] - 1])
            continue
        sub = extract_subnetwork(h, p, cid)
        cpath = _child_path(path, len(children) + 1)
        if sub.n < cfg.min_size:
            reason = STOP_MIN_SIZE
        elif depth + 1 >= cfg.max_depth:
            reason = STOP_MAX_DEPTH
        elif sub.m == 0:
            reason = STOP_EDGELESS
        else:
            reason = None
        if reason is None:
            children.append(_split(sub, cpath, depth + 1, cfg))
        else:
            children.append(TreeNode(cpath, tuple(sub.origin), path_seed(cfg.root_seed, cpath), stop_reason=reason))
    return TreeNode(path, members, seed, quality=q, children=tuple(children), singletons=tuple(sorted(set_aside)))


def decompose(g: CitationGraph | SymmetricGraph, cfg: DecomposeConfig = DecomposeConfig()) -> ClusterTree:
    """Build the classification tree of ``g``.

    Citation graphs are stripped of loops and symmetrized first. Members are
    reported as ``origin`` ids, i.e. ids in the graph the input descends from.
    """
    if isinstance(g, CitationGraph):
        g = symmetrize(remove_loops(g)[0])
    if cfg.largest_component_only:
        g, _ = largest_component(g)
    if g.n == 0:
        raise ValueError("cannot decompose an empty graph")
    labels = dict(zip(g.origin, g.labels))
    return ClusterTree(_split(g, "", 0, cfg), labels, cfg)


def tree_to_partition(t: ClusterTree, depth: int) -> Partition:
    """Flat partition of the root members at ``depth``.

    Nodes not decomposed that deep keep their shallower cluster; singletons
    set aside at any level up to ``depth`` form clusters of their own.
    Entry ``i`` belongs to the ``i``-th smallest root member id.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    key: dict[int, str] = {}

    def visit(node: TreeNode) -> None:
        if node.depth < depth and node.children:
            for s in node.singletons:
                key[s] = f"{node.path}/s{s}"
            for c in node.children:
                visit(c)
        else:
            for x in node.members:
                key[x] = node.path

    visit(t.root)
    order = sorted(t.root.members)
    return Partition.from_labels([key[x] for x in order])


def relabel(t: ClusterTree, path: str, label: str) -> ClusterTree:
    t.find(path)

    def rebuild(node: TreeNode) -> TreeNode:
        if node.path == path:
            return replace(node, label=label)
        if path.startswith(node.path + ".") or (not node.path and path):
            return replace(node, children=tuple(rebuild(c) for c in node.children))
        return node

    return replace(t, root=rebuild(t.root))


def normalize_label(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip().casefold()


@dataclass(frozen=True)
class OverlapReport:
    cluster_members: tuple[str, ...]
    external_members: tuple[str, ...]
    intersection: tuple[str, ...]
    only_in_cluster: tuple[str, ...]
    only_in_external: tuple[str, ...]
    unmatched_external: tuple[str, ...]

    @property
    def counts(self) -> dict[str, int]:
        return {
            "cluster": len(self.cluster_members),
            "external": len(self.external_members),
            "intersection": len(self.intersection),
            "only_in_cluster": len(self.only_in_cluster),
            "only_in_external": len(self.only_in_external),
            "unmatched_external": len(self.unmatched_external),
        }

    def table(self) -> str:
        """Two-column layout: cluster list beside external list, shared rows first."""
        left = list(self.intersection) + list(self.only_in_cluster)
        right = list(self.intersection) + list(self.only_in_external)
        width = max([len(x) for x in left] + [len("cluster")])
        lines = [f"{'cluster':<{width}}  external"]
        for i in range(max(len(left), len(right))):
            a = left[i] if i < len(left) else ""
            b = right[i] if i < len(right) else ""
            lines.append(f"{a:<{width}}  {b}".rstrip())
        c = self.counts
        lines.append("")
        lines.append(
            f"shared {c['intersection']}, only in cluster {c['only_in_cluster']}, "
            f"only in external {c['only_in_external']}, unmatched external {c['unmatched_external']}"
        )
        return "\n".join(lines) + "\n"


def compare_external(t: ClusterTree, path: str, external_labels) -> OverlapReport:
    """Set overlap between a tree node's journals and an external category list.

    Labels are matched case-insensitively after whitespace normalization.
    External labels matching no journal of the tree are kept in
    ``only_in_external`` and also listed in ``unmatched_external``.
    """
    node = t.find(path)
    cluster_labels = [t.labels.get(x, str(x)) for x in node.members]
    known = {normalize_label(lab) for lab in t.labels.values()}
    in_cluster = {normalize_label(lab): lab for lab in cluster_labels}
    external: dict[str, str] = {}
    for lab in external_labels:
        external.setdefault(normalize_label(lab), lab.strip())
    inter = sorted(in_cluster[k] for k in in_cluster if k in external)
    only_c = sorted(in_cluster[k] for k in in_cluster if k not in external)
    only_e = sorted(external[k] for k in external if k not in in_cluster)
    unmatched = sorted(external[k] for k in external if k not in known)
    return OverlapReport(
        tuple(sorted(cluster_labels)),
        tuple(sorted(external.values())),
        tuple(inter),
        tuple(only_c),
        tuple(only_e),
        tuple(unmatched),
    )


def subnetwork(g: SymmetricGraph, node: TreeNode) -> SymmetricGraph:
    """Induced subgraph of ``g`` on a tree node's members (matched by origin id)."""
    pos = {o: i + 1 for i, o in enumerate(g.origin)}
    return induced_subgraph(g, [pos[x] for x in node.members])
