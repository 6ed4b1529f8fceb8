"""Chi-square / Cramér's V association between partitions, and seed stability."""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .clustering import ClusterConfig, cluster
from .graph import SymmetricGraph
from .partition import Partition


@dataclass(frozen=True)
class AssociationReport:
    contingency: np.ndarray
    n: int
    chi_square: float
    cramers_v: float
    degrees_of_freedom: int

    def table(self) -> str:
        """Aligned text rendering of the contingency matrix and statistics."""
        c = self.contingency
        width = max(len(str(int(c.max()))) if c.size else 1, len(str(c.shape[1])), 3)
        head = " " * 5 + " ".join(f"{j + 1:>{width}}" for j in range(c.shape[1]))
        rows = [
            f"{i + 1:>4} " + " ".join(f"{int(x):>{width}}" for x in row) for i, row in enumerate(c)
        ]
        stats = (
            f"n = {self.n}\nchi-square = {self.chi_square:.6f}\n"
            f"df = {self.degrees_of_freedom}\nCramer's V = {self.cramers_v:.6f}"
        )
        return "\n".join([head, *rows, stats]) + "\n"

    def to_csv(self) -> str:
        c = self.contingency
        lines = ["," + ",".join(f"B{j + 1}" for j in range(c.shape[1]))]
        for i, row in enumerate(c):
            lines.append(f"A{i + 1}," + ",".join(str(int(x)) for x in row))
        return "\n".join(lines) + "\n"


def contingency_table(pa: Partition, pb: Partition) -> np.ndarray:
    if len(pa) != len(pb):
        raise ValueError(
            f"partitions cover different node sets ({len(pa)} vs {len(pb)} nodes; "
            f"symmetric difference {abs(len(pa) - len(pb))})"
        )
    table = np.zeros((pa.n_clusters, pb.n_clusters), dtype=np.int64)
    np.add.at(table, (np.asarray(pa.assignment) - 1, np.asarray(pb.assignment) - 1), 1)
    return table


def _phi_sum(table: np.ndarray) -> float:
    # sum of O^2 / (row * col) over nonzero cells, so chi2 = n * (sum - 1);
    # each term is a correctly rounded integer ratio and fsum adds them exactly
    rows, cols = table.sum(axis=1), table.sum(axis=0)
    i, j = np.nonzero(table)
    o = table[i, j].astype(np.int64)
    return math.fsum((o * o) / (rows[i] * cols[j]))


def chi_square(table: np.ndarray) -> float:
    """Pearson chi-square; cells with zero expected count contribute nothing.

    Integer tables use the O^2 / (row * col) form, which gives exactly
    ``n * (min(r, c) - 1)`` under perfect association.
    """
    table = np.asarray(table)
    n = table.sum()
    if n == 0:
        return 0.0
    if np.issubdtype(table.dtype, np.integer):
        return int(n) * (_phi_sum(table) - 1)
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / n
    mask = expected > 0
    return float((((table - expected) ** 2)[mask] / expected[mask]).sum())


def association(pa: Partition, pb: Partition) -> AssociationReport:
    """Contingency table, chi-square and (uncorrected) Cramér's V.

    V is reported as 0 when either partition has a single cluster, where the
    statistic is undefined.
    """
    table = contingency_table(pa, pb)
    n = int(table.sum())
    r, c = table.shape
    k = min(r, c) - 1
    phi = _phi_sum(table)
    chi2 = n * (phi - 1)
    v = math.sqrt(max(phi - 1, 0.0) / k) if k > 0 and n > 0 else 0.0
    return AssociationReport(table, n, max(chi2, 0.0), min(v, 1.0), (r - 1) * (c - 1))


def intersect(
    pa: Partition, ids_a: list, pb: Partition, ids_b: list
) -> tuple[Partition, Partition, list]:
    """Restrict two partitions keyed by node identifiers to their shared nodes."""
    index_b = {x: i for i, x in enumerate(ids_b)}
    shared = [x for x in ids_a if x in index_b]
    index_a = {x: i for i, x in enumerate(ids_a)}
    la = [pa.assignment[index_a[x]] for x in shared]
    lb = [pb.assignment[index_b[x]] for x in shared]
    return Partition.from_labels(la), Partition.from_labels(lb), shared


@dataclass(frozen=True)
class StabilityReport:
    method: str
    n_runs: int
    seeds: tuple[int, ...]
    pairwise_v: tuple[float, ...]
    mean: float
    std: float
    cluster_counts: tuple[int, ...]
    qualities: tuple[float, ...]

    def table(self) -> str:
        lines = [f"method: {self.method}", f"runs: {self.n_runs}", "", "run  seed                  clusters  quality"]
        for i, (s, k, q) in enumerate(zip(self.seeds, self.cluster_counts, self.qualities)):
            lines.append(f"{i + 1:>3}  {s:<20}  {k:>8}  {q:.6f}")
        lines.append("")
        lines.append(f"Cramer's V mean = {self.mean:.6f} (sd {self.std:.6f}, {len(self.pairwise_v)} pairs)")
        return "\n".join(lines) + "\n"


def default_seeds(root_seed: int, runs: int) -> list[int]:
    return [root_seed + i for i in range(runs)]


def stability(
    g: SymmetricGraph,
    method: str,
    resolution: float = 1.0,
    seeds: list[int] | None = None,
    threads: int = 1,
) -> StabilityReport:
    """Cluster once per seed and compare every pair of runs by Cramér's V."""
    if seeds is None:
        seeds = default_seeds(0, 5)
    if len(seeds) < 2:
        raise ValueError("stability needs at least two seeds")
    if len(set(seeds)) != len(seeds):
        raise ValueError("stability seeds must be distinct")
    configs = [ClusterConfig(method, s, resolution) for s in seeds]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(lambda c: cluster(g, c), configs))
    else:
        runs = [cluster(g, c) for c in configs]
    parts = [p for p, _ in runs]
    values = tuple(association(a, b).cramers_v for a, b in combinations(parts, 2))
    sd = statistics.stdev(values) if len(values) > 1 else 0.0
    return StabilityReport(
        method=configs[0].method,
        n_runs=len(seeds),
        seeds=tuple(seeds),
        pairwise_v=values,
        mean=statistics.fmean(values),
        std=sd,
        cluster_counts=tuple(p.n_clusters for p in parts),
        qualities=tuple(q.value for _, q in runs),
    )
