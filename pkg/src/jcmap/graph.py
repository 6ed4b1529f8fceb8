"""Citation graph model, cleaning transforms and component extraction.

Node ids are 1-based and contiguous. Every graph carries ``origin``, the id
each node had in the first graph it was derived from, so subgraphs can
always be traced back (and labelled) regardless of how many extractions
separate them from the input.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .partition import Partition

Arc = tuple[int, int, int]


def _check_origin(obj, n: int) -> None:
    if obj.origin is None:
        object.__setattr__(obj, "origin", tuple(range(1, n + 1)))
    else:
        object.__setattr__(obj, "origin", tuple(obj.origin))
        if len(obj.origin) != n:
            raise ValueError("origin must have one entry per node")


@dataclass(frozen=True)
class CitationGraph:
    """Directed weighted journal graph; arc ``(s, t, w)`` means cell (s, t) = w."""

    labels: tuple[str, ...]
    arcs: tuple[Arc, ...]
    origin: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "arcs", tuple((int(s), int(t), int(w)) for s, t, w in self.arcs))
        n = len(self.labels)
        _check_origin(self, n)
        seen = set()
        for s, t, w in self.arcs:
            if not (1 <= s <= n and 1 <= t <= n):
                raise ValueError(f"arc ({s}, {t}) has an endpoint outside 1..{n}")
            if w < 1:
                raise ValueError(f"arc ({s}, {t}) has non-positive weight {w}")
            if (s, t) in seen:
                raise ValueError(f"duplicate arc ({s}, {t})")
            seen.add((s, t))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def nodes(self) -> list[tuple[int, str]]:
        return [(i + 1, lab) for i, lab in enumerate(self.labels)]

    @property
    def directed(self) -> bool:
        return True

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.arcs)

    def undirected_pairs(self) -> Iterable[tuple[int, int]]:
        for s, t, _ in self.arcs:
            yield s, t


@dataclass(frozen=True)
class SymmetricGraph:
    """Undirected weighted graph; edges are ``(u, v, w)`` with ``u < v``."""

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]
    origin: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "edges", tuple(self.edges))
        n = len(self.labels)
        _check_origin(self, n)
        seen = set()
        for u, v, w in self.edges:
            if not u < v:
                raise ValueError(f"edge ({u}, {v}) must satisfy u < v (no self-edges)")
            if not (1 <= u and v <= n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            if w <= 0:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def nodes(self) -> list[tuple[int, str]]:
        return [(i + 1, lab) for i, lab in enumerate(self.labels)]

    @cached_property
    def m(self) -> float:
        """Total edge weight."""
        return float(sum(w for _, _, w in self.edges))

    @cached_property
    def degree(self) -> tuple[float, ...]:
        """Weighted degree k_i of node i at index i - 1."""
        k = [0.0] * self.n
        for u, v, w in self.edges:
            k[u - 1] += w
            k[v - 1] += w
        return tuple(k)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """0-based neighbour lists ``(j, w)`` per 0-based node."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u - 1].append((v - 1, float(w)))
            adj[v - 1].append((u - 1, float(w)))
        return tuple(tuple(a) for a in adj)

    def weight_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u - 1, v - 1] = a[v - 1, u - 1] = w
        return a

    def undirected_pairs(self) -> Iterable[tuple[int, int]]:
        for u, v, _ in self.edges:
            yield u, v


Graph = Union[CitationGraph, SymmetricGraph]


@dataclass(frozen=True)
class CleaningReport:
    loops_removed: int = 0
    arcs_removed_by_threshold: int = 0
    nodes_isolated_after_cleaning: int = 0


def remove_loops(g: CitationGraph) -> tuple[CitationGraph, int]:
    kept = tuple(a for a in g.arcs if a[0] != a[1])
    return CitationGraph(g.labels, kept, g.origin), len(g.arcs) - len(kept)


def filter_min_weight(g: CitationGraph, threshold: int) -> tuple[CitationGraph, int]:
    """Drop arcs lighter than ``threshold``; nodes are kept even if isolated."""
    if int(threshold) != threshold or threshold < 1:
        raise ValueError(f"threshold must be a positive integer, got {threshold!r}")
    kept = tuple(a for a in g.arcs if a[2] >= threshold)
    return CitationGraph(g.labels, kept, g.origin), len(g.arcs) - len(kept)


def clean(
    g: CitationGraph, min_weight: int = 1, keep_loops: bool = False
) -> tuple[CitationGraph, CleaningReport]:
    loops = 0
    if not keep_loops:
        g, loops = remove_loops(g)
    g, dropped = filter_min_weight(g, min_weight)
    touched = set()
    for s, t in g.undirected_pairs():
        touched.add(s)
        touched.add(t)
    return g, CleaningReport(loops, dropped, g.n - len(touched))


def symmetrize(g: CitationGraph) -> SymmetricGraph:
    """Edge weight w{u,v} = arc(u,v) + arc(v,u)."""
    acc: dict[tuple[int, int], int] = {}
    for s, t, w in g.arcs:
        if s == t:
            raise ValueError("symmetrize requires a loop-free graph; call remove_loops first")
        key = (s, t) if s < t else (t, s)
        acc[key] = acc.get(key, 0) + w
    edges = tuple((u, v, w) for (u, v), w in sorted(acc.items()))
    return SymmetricGraph(g.labels, edges, g.origin)


def connected_components(g: Graph) -> list[list[int]]:
    """Weakly connected components as ascending id lists.

    Ordered by decreasing size, ties by smallest contained id.
    """
    adj: list[list[int]] = [[] for _ in range(g.n + 1)]
    for u, v in g.undirected_pairs():
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    seen = [False] * (g.n + 1)
    comps = []
    for start in range(1, g.n + 1):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def induced_subgraph(g: Graph, member_ids: Iterable[int]):
    """Node-induced subgraph; members keep their relative order."""
    members = sorted(set(member_ids))
    for i in members:
        if not 1 <= i <= g.n:
            raise KeyError(f"unknown node id {i}")
    new_id = {old: k + 1 for k, old in enumerate(members)}
    labels = tuple(g.labels[i - 1] for i in members)
    origin = tuple(g.origin[i - 1] for i in members)
    if isinstance(g, CitationGraph):
        arcs = tuple(
            (new_id[s], new_id[t], w) for s, t, w in g.arcs if s in new_id and t in new_id
        )
        return CitationGraph(labels, arcs, origin)
    edges = tuple(
        (new_id[u], new_id[v], w) for u, v, w in g.edges if u in new_id and v in new_id
    )
    return SymmetricGraph(labels, edges, origin)


def largest_component(g: Graph):
    """Subgraph on the largest weakly connected component and its member ids in ``g``."""
    if g.n == 0:
        return g, []
    members = connected_components(g)[0]
    return induced_subgraph(g, members), members


def extract_subnetwork(g: Graph, p: Partition, cluster_id: int):
    """Subgraph induced by the members of cluster ``cluster_id``."""
    if len(p) != g.n:
        raise ValueError(f"partition covers {len(p)} nodes, graph has {g.n}")
    if not 1 <= cluster_id <= p.n_clusters:
        raise KeyError(f"unknown cluster id {cluster_id}")
    return induced_subgraph(g, p.members(cluster_id))


def label_index(g: Graph) -> dict[str, int]:
    return {lab: i + 1 for i, lab in enumerate(g.labels)}


def from_edges(
    n: int, edges: Sequence[tuple[int, int, float]], labels: Sequence[str] | None = None
) -> SymmetricGraph:
    """Convenience constructor accepting unordered endpoint pairs (duplicates summed)."""
    acc: dict[tuple[int, int], float] = {}
    for u, v, w in edges:
        if u == v:
            raise ValueError("self-edges are not allowed")
        key = (u, v) if u < v else (v, u)
        acc[key] = acc.get(key, 0) + w
    if labels is None:
        labels = [str(i) for i in range(1, n + 1)]
    return SymmetricGraph(tuple(labels), tuple((u, v, w) for (u, v), w in sorted(acc.items())))
