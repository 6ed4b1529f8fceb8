"""Whole-network descriptive statistics (node/link counts, density, degree, CC1)."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CitationGraph, SymmetricGraph, symmetrize


@dataclass(frozen=True)
class NetworkStats:
    n_nodes: int
    n_links: int
    density: float
    average_total_degree: float
    average_out_degree: float
    clustering_coefficient: float
    warning: str | None = None

    def report(self) -> str:
        rows = [
            ("N of nodes", f"{self.n_nodes}"),
            ("Links", f"{self.n_links}"),
            ("Density", f"{self.density:.4f}"),
            ("Average (total) degree", f"{self.average_total_degree:.3f}"),
            ("Average out-degree", f"{self.average_out_degree:.3f}"),
            ("Clustering coefficient", f"{self.clustering_coefficient:.3f}"),
        ]
        width = max(len(k) for k, _ in rows)
        lines = [f"{k:<{width}}  {v}" for k, v in rows]
        if self.warning:
            lines.append(f"warning: {self.warning}")
        return "\n".join(lines) + "\n"

    def key_values(self) -> str:
        return (
            f"n_nodes={self.n_nodes}\n"
            f"n_links={self.n_links}\n"
            f"density={self.density!r}\n"
            f"average_total_degree={self.average_total_degree!r}\n"
            f"average_out_degree={self.average_out_degree!r}\n"
            f"clustering_coefficient={self.clustering_coefficient!r}\n"
        )


def clustering_coefficient(g: SymmetricGraph | CitationGraph) -> float:
    """Global transitivity 3 * triangles / connected triples, weights ignored."""
    if isinstance(g, CitationGraph):
        g = symmetrize(g)
    nbrs: list[set[int]] = [set() for _ in range(g.n)]
    for u, v, _ in g.edges:
        nbrs[u - 1].add(v - 1)
        nbrs[v - 1].add(u - 1)
    triples = sum(len(s) * (len(s) - 1) // 2 for s in nbrs)
    if triples == 0:
        return 0.0
    # each triangle counted once, at its lowest-id corner pair u < v < w
    triangles = 0
    for u in range(g.n):
        higher = [v for v in nbrs[u] if v > u]
        for v in higher:
            triangles += sum(1 for w in nbrs[v] if w > v and w in nbrs[u])
    return 3.0 * triangles / triples


def network_stats(g: CitationGraph) -> NetworkStats:
    if any(s == t for s, t, _ in g.arcs):
        raise ValueError("network_stats requires a loop-free graph")
    n, links = g.n, len(g.arcs)
    warning = None
    if n < 2:
        density = 0.0
        warning = "fewer than two nodes; density reported as 0"
    else:
        density = links / (n * (n - 1))
    out_deg = links / n if n else 0.0
    return NetworkStats(
        n_nodes=n,
        n_links=links,
        density=density,
        average_total_degree=2.0 * out_deg,
        average_out_degree=out_deg,
        clustering_coefficient=clustering_coefficient(g),
        warning=warning,
    )
