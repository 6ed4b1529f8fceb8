"""Dense cluster assignments."""

from __future__ import annotations

from collections.abc import Hashable, Sequence
from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class Partition:
    """Cluster id per node, node ``i`` (1-based) at ``assignment[i - 1]``.

    Ids are canonical: dense ``1..n_clusters``, numbered by decreasing
    cluster size with ties going to the cluster holding the smaller node id.
    Use :meth:`from_labels` to canonicalize arbitrary labels.
    """

    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if Partition._canonical(self.assignment) != self.assignment:
            raise ValueError(
                "assignment is not canonical (dense ids ordered by decreasing size); "
                "use Partition.from_labels"
            )

    @staticmethod
    def _canonical(labels: Sequence[Hashable]) -> tuple[int, ...]:
        first: dict[Hashable, int] = {}
        size: dict[Hashable, int] = {}
        for i, c in enumerate(labels):
            first.setdefault(c, i)
            size[c] = size.get(c, 0) + 1
        order = sorted(first, key=lambda c: (-size[c], first[c]))
        new_id = {c: k + 1 for k, c in enumerate(order)}
        return tuple(new_id[c] for c in labels)

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> Partition:
        return cls(cls._canonical(labels))

    @classmethod
    def single(cls, n: int) -> Partition:
        return cls((1,) * n)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple(range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.assignment)

    @property
    def n_nodes(self) -> int:
        return len(self.assignment)

    @cached_property
    def n_clusters(self) -> int:
        return max(self.assignment, default=0)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.n_clusters
        for c in self.assignment:
            counts[c - 1] += 1
        return tuple(counts)

    @cached_property
    def clusters(self) -> tuple[tuple[int, ...], ...]:
        """Member node ids (1-based, ascending) of each cluster, in id order."""
        out: list[list[int]] = [[] for _ in range(self.n_clusters)]
        for i, c in enumerate(self.assignment):
            out[c - 1].append(i + 1)
        return tuple(tuple(m) for m in out)

    def members(self, cluster_id: int) -> tuple[int, ...]:
        if not 1 <= cluster_id <= self.n_clusters:
            raise KeyError(f"unknown cluster id {cluster_id}")
        return self.clusters[cluster_id - 1]

    @property
    def singleton_ids(self) -> list[int]:
        return [k + 1 for k, s in enumerate(self.sizes) if s == 1]

    def n_non_singleton(self) -> int:
        return sum(1 for s in self.sizes if s > 1)
