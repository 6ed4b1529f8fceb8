"""Seeded planted-partition citation graphs with known ground truth."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import CitationGraph
from .partition import Partition
from .rng import SplitMix64


@dataclass(frozen=True)
class PlantedSpec:
    n_nodes: int
    n_blocks: int
    p_in: float
    p_out: float
    weight_range: tuple[int, int] = (1, 10)
    seed: int = 0

    def __post_init__(self):
        if self.n_nodes < 1 or self.n_blocks < 1 or self.n_blocks > self.n_nodes:
            raise ValueError("need 1 <= n_blocks <= n_nodes")
        if not 0.0 <= self.p_out <= self.p_in <= 1.0:
            raise ValueError("need 0 <= p_out <= p_in <= 1")
        lo, hi = self.weight_range
        if not 1 <= lo <= hi:
            raise ValueError("weight_range must satisfy 1 <= low <= high")


def block_sizes(n: int, blocks: int) -> list[int]:
    base, extra = divmod(n, blocks)
    return [base + 1 if b < extra else base for b in range(blocks)]


def planted_partition(spec: PlantedSpec) -> tuple[CitationGraph, Partition]:
    """Directed graph: arc i->j present with p_in inside a block, p_out across.

    Draw order is fixed: n*n presence uniforms row-major (diagonal drawn and
    discarded), then n*n weight uniforms, all from ``SplitMix64(seed)``.
    """
    n = spec.n_nodes
    block = np.repeat(np.arange(spec.n_blocks), block_sizes(n, spec.n_blocks))
    rng = SplitMix64(spec.seed)
    presence = rng.random_array(n * n).reshape(n, n)
    lo, hi = spec.weight_range
    weights = lo + np.floor(rng.random_array(n * n) * (hi - lo + 1)).astype(np.int64).reshape(n, n)
    same = block[:, None] == block[None, :]
    prob = np.where(same, spec.p_in, spec.p_out)
    present = presence < prob
    np.fill_diagonal(present, False)
    src, dst = np.nonzero(present)
    arcs = tuple(
        (int(s) + 1, int(t) + 1, int(weights[s, t])) for s, t in zip(src, dst)
    )
    labels = tuple(f"J{i + 1:0{len(str(n))}d}" for i in range(n))
    return CitationGraph(labels, arcs), Partition.from_labels(block.tolist())
