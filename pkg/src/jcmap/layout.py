"""Two-dimensional map layouts.

``vos_layout`` minimizes ``sum_{i<j} s_ij * d_ij**2`` (association strength
``s_ij``) subject to an average pairwise distance of 1. The constraint is
enforced by rescaling after every step, so descent runs on the
scale-free ratio ``sum s d^2 / mean(d)^2``; a step is accepted only if it
lowers the objective.

``kamada_kawai`` minimizes the classic stress
``sum_{i<j} (d_ij - l_ij)^2 / l_ij^2`` against unweighted shortest-path
lengths ``l_ij``, one node at a time (Newton step, majorization update as
fallback); a sweep that does not lower the total stress is discarded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.spatial.distance import pdist

from .clustering import association_strength
from .graph import SymmetricGraph, connected_components
from .rng import SplitMix64


@dataclass(frozen=True)
class MapLayout:
    coords: np.ndarray
    objective: float
    iterations: int
    method: str
    seed: int
    history: tuple[float, ...] = field(default=(), repr=False)


def _require_connected(g: SymmetricGraph) -> None:
    if g.n < 2:
        raise ValueError("layout needs at least two nodes")
    if len(connected_components(g)) != 1:
        raise ValueError("layout requires a connected graph; extract the largest_component first")


def _initial(n: int, seed: int) -> np.ndarray:
    x = SplitMix64(seed).random_array(2 * n).reshape(n, 2) * 2.0 - 1.0
    return x - x.mean(axis=0)


def _normalize(x: np.ndarray) -> np.ndarray:
    x = x - x.mean(axis=0)
    mean_d = pdist(x).mean()
    return x / mean_d


def _vos_objective(x: np.ndarray, s: np.ndarray) -> float:
    diff = x[:, None, :] - x[None, :, :]
    return 0.5 * float((s * (diff**2).sum(axis=2)).sum())


def vos_layout(g: SymmetricGraph, seed: int = 0, max_iterations: int = 1000) -> MapLayout:
    _require_connected(g)
    n = g.n
    s = np.zeros((n, n))
    for u, v, w in association_strength(g):
        s[u - 1, v - 1] = s[v - 1, u - 1] = w
    n_pairs = n * (n - 1) / 2.0

    def grad(x: np.ndarray) -> np.ndarray:
        diff = x[:, None, :] - x[None, :, :]
        d = np.sqrt((diff**2).sum(axis=2))
        np.fill_diagonal(d, 1.0)
        a = 0.5 * float((s * d**2).sum())
        b = (d.sum() - n) / 2.0 / n_pairs
        grad_a = 2.0 * (s[:, :, None] * diff).sum(axis=1)
        inv = 1.0 / np.maximum(d, 1e-12)
        np.fill_diagonal(inv, 0.0)
        grad_b = (inv[:, :, None] * diff).sum(axis=1) / n_pairs
        return grad_a / b**2 - 2.0 * a * grad_b / b**3

    x = _normalize(_initial(n, seed))
    f = _vos_objective(x, s)
    history = [f]
    g0 = grad(x)
    step = 0.1 / max(np.abs(g0).max(), 1e-12)
    it = 0
    while it < max_iterations:
        it += 1
        gx = grad(x)
        trial = x - step * gx
        if pdist(trial - trial.mean(axis=0)).mean() <= 0:
            step *= 0.5
            continue
        trial = _normalize(trial)
        f_new = _vos_objective(trial, s)
        if f_new < f:
            improvement = (f - f_new) / max(abs(f), 1e-300)
            x, f = trial, f_new
            history.append(f)
            step *= 1.5
            if improvement < 1e-9:
                break
        else:
            step *= 0.5
            if step < 1e-16:
                break
    return MapLayout(x, f, it, "vos", seed, tuple(history))


def graph_distances(g: SymmetricGraph) -> np.ndarray:
    rows = [u - 1 for u, _, _ in g.edges]
    cols = [v - 1 for _, v, _ in g.edges]
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    return shortest_path(adj, directed=False, unweighted=True)


def kk_stress(x: np.ndarray, dist: np.ndarray) -> float:
    iu = np.triu_indices(len(x), 1)
    d = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2))[iu]
    l = dist[iu]
    return float((((d - l) / l) ** 2).sum())


def _node_stress(xi: np.ndarray, x: np.ndarray, li: np.ndarray, wi: np.ndarray) -> float:
    d = np.sqrt(((xi - x) ** 2).sum(axis=1))
    return float((wi * (d - li) ** 2).sum())


def kamada_kawai(
    g: SymmetricGraph, seed: int = 0, max_iterations: int = 1000, tol: float = 1e-10
) -> MapLayout:
    """Kamada-Kawai layout with unit ideal edge length (edge weights ignored).

    Each sweep visits every node once and tries a Newton step on that node's
    share of the stress; the step is kept only if it lowers the stress,
    otherwise the majorization update is used. ``max_iterations`` counts
    sweeps; iteration stops once the largest per-node gradient norm is
    below ``tol``, the relative improvement of a sweep drops below 1e-9, or
    a sweep fails to lower the total stress (that sweep is discarded).
    """
    _require_connected(g)
    n = g.n
    dist = graph_distances(g)
    w = np.zeros_like(dist)
    off = ~np.eye(n, dtype=bool)
    w[off] = 1.0 / dist[off] ** 2
    x = _initial(n, seed) * max(1.0, np.sqrt(n))
    x -= x.mean(axis=0)
    history = [kk_stress(x, dist)]
    it = 0
    while it < max_iterations:
        it += 1
        previous = x.copy()
        worst = 0.0
        for i in range(n):
            wi, li = w[i], dist[i]
            r = x[i] - x
            d = np.maximum(np.sqrt((r**2).sum(axis=1)), 1e-12)
            ratio = np.where(off[i], li / d, 0.0)
            grad = 2.0 * ((wi * (1.0 - ratio))[:, None] * r).sum(axis=0)
            worst = max(worst, float(np.hypot(*grad)))
            before = _node_stress(x[i], x, li, wi)
            hess = 2.0 * (
                np.eye(2) * (wi * (1.0 - ratio)).sum()
                + np.einsum("j,ja,jb->ab", wi * ratio / d**2, r, r)
            )
            candidate = None
            try:
                step = np.linalg.solve(hess, grad)
                if np.all(np.isfinite(step)) and float(step @ grad) > 0:
                    candidate = x[i] - step
            except np.linalg.LinAlgError:
                pass
            if candidate is None or _node_stress(candidate, x, li, wi) > before:
                target = x + (li / d)[:, None] * r
                candidate = (wi[:, None] * target).sum(axis=0) / wi.sum()
            if _node_stress(candidate, x, li, wi) <= before:
                x[i] = candidate
        x -= x.mean(axis=0)
        stress = kk_stress(x, dist)
        if stress > history[-1]:
            # rounding noise once converged; keep the last accepted sweep
            x = previous
            break
        improvement = history[-1] - stress
        history.append(stress)
        if worst < tol or improvement <= 1e-9 * history[-2]:
            break
    return MapLayout(x, history[-1], it, "kamada-kawai", seed, tuple(history))
