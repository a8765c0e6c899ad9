"""Pathfinder network scaling: prune the complete similarity graph.

An edge survives iff no alternative path of at most q edges has strictly
smaller Minkowski cost, where the cost of a path is (sum of w^r)^(1/r) over
its edge weights (r = infinity means the maximum edge weight).  Ties keep
the edge.  The surviving edges are the triangle-consistent, most salient
relations; no node is ever isolated because each node's cheapest incident
edge can never be undercut.

Costs are compared in the r-th-power domain, so the main dynamic program
and the exhaustive test oracle perform bit-identical float arithmetic and
agree exactly, not just within tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, NegativeDistance, NonSymmetricInput, TooLarge
from .model import MoGram, SimilarityMatrix

_ORACLE_MAX_N = 9


@dataclass(frozen=True)
class PathfinderParams:
    """r: Minkowski exponent (>= 1 or math.inf); q: max path length in edges.

    q = None selects the sparsest standard network, q = n - 1, at prune
    time.  An explicit q must be at least 2 and is capped at n - 1.
    """

    r: float = math.inf
    q: int | None = None

    def __post_init__(self) -> None:
        if not (self.r >= 1.0):
            raise InvalidParams(f"r must be >= 1 or infinity, got {self.r!r}")
        if self.q is not None and self.q < 2:
            raise InvalidParams(f"q must be >= 2, got {self.q}")

    def effective_q(self, n: int) -> int:
        q = n - 1 if self.q is None else min(self.q, n - 1)
        return max(q, 1)


def to_distance(similarity: SimilarityMatrix) -> np.ndarray:
    """Dissimilarity matrix d = 1 - S: symmetric, zero diagonal, in [0, 1]."""
    d = 1.0 - similarity.values
    np.fill_diagonal(d, 0.0)
    return d


def _check_distance_matrix(d: np.ndarray) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InvalidParams(f"distance matrix must be square, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise InvalidParams("distance matrix entries must be finite")
    if np.any(d < 0):
        i, j = np.argwhere(d < 0)[0]
        raise NegativeDistance(f"negative distance {d[i, j]!r} at ({i}, {j})")
    if np.any(d != d.T):
        i, j = np.argwhere(d != d.T)[0]
        raise NonSymmetricInput(
            f"d[{i}][{j}]={d[i, j]!r} differs from d[{j}][{i}]={d[j, i]!r}"
        )
    if np.any(np.diag(d) != 0):
        raise InvalidParams("distance matrix diagonal must be zero")
    return d


def _power_transform(d: np.ndarray, r: float) -> np.ndarray:
    """Edge weights in the cost-comparison domain: d**r, or d itself for r=inf.

    Shared by the pruner and the oracle so both see identical floats.
    """
    if math.isinf(r):
        return d.copy()
    if r == 1.0:
        return d.copy()
    return d**r


def _path_cost_bound(t: np.ndarray, q: int, use_max: bool) -> np.ndarray:
    """W[i][j] = min cost over walks of at most q edges, in the t domain.

    Iterated generalized matrix product D_(k+1)[i][j] = min_m combine(t[i][m],
    D_k[m][j]); the zero diagonal makes shorter walks admissible, so D_q is
    the minimum over all walks of length <= q.
    """
    w = t.copy()
    for _ in range(q - 1):
        if use_max:
            step = np.minimum.reduce(np.maximum(t[:, :, None], w[None, :, :]), axis=1)
        else:
            step = np.min(t[:, :, None] + w[None, :, :], axis=1)
        if np.array_equal(step, w):
            break
        w = step
    return w


def _minimax_closure(t: np.ndarray) -> np.ndarray:
    """Floyd-Warshall minimax path costs; exact for r=inf, q=n-1."""
    w = t.copy()
    n = w.shape[0]
    for k in range(n):
        np.minimum(w, np.maximum(w[:, k, None], w[None, k, :]), out=w)
    return w


def _prune_to_mogram(d: np.ndarray, keep: np.ndarray) -> MoGram:
    n = d.shape[0]
    adjacency = keep & ~np.eye(n, dtype=bool)
    edge_similarity = {
        (i + 1, j + 1): float(1.0 - d[i, j])
        for i in range(n)
        for j in range(i + 1, n)
        if adjacency[i, j]
    }
    return MoGram(n=n, adjacency=adjacency, edge_similarity=edge_similarity)


def pathfinder_prune(d: np.ndarray, params: PathfinderParams) -> MoGram:
    """Prune the complete graph over d to its Pathfinder network.

    Edge (i, j) is retained iff d[i][j] <= the minimum Minkowski cost over
    alternative paths of at most q edges; equality retains.  Edge weights of
    the result are similarities 1 - d.
    """
    d = _check_distance_matrix(d)
    n = d.shape[0]
    if n < 2:
        raise InvalidParams("need at least 2 nodes")
    q = params.effective_q(n)
    use_max = math.isinf(params.r)
    t = _power_transform(d, params.r)
    if use_max and q == n - 1:
        w = _minimax_closure(t)
    else:
        w = _path_cost_bound(t, q, use_max)
    # w <= t always (the direct edge is itself a walk); equality means no
    # strictly cheaper alternative exists.  Finite-r float costs fold
    # right-to-left, so w[i,j] and w[j,i] can differ in the last ulp; the
    # lower-id-to-higher-id direction is canonical.
    upper = np.triu(t <= w, k=1)
    keep = upper | upper.T
    return _prune_to_mogram(d, keep)


def pathfinder_oracle(d: np.ndarray, params: PathfinderParams) -> MoGram:
    """Reference pruner by exhaustive simple-path enumeration (tests only).

    Same contract as pathfinder_prune; refuses n > 9.  Costs are folded in
    the same order as the dynamic program, so agreement is exact.
    """
    d = _check_distance_matrix(d)
    n = d.shape[0]
    if n > _ORACLE_MAX_N:
        raise TooLarge(f"oracle enumerates paths explicitly; n={n} exceeds {_ORACLE_MAX_N}")
    if n < 2:
        raise InvalidParams("need at least 2 nodes")
    q = params.effective_q(n)
    use_max = math.isinf(params.r)
    t = _power_transform(d, params.r).tolist()

    keep = np.zeros((n, n), dtype=bool)
    visited = bytearray(n)

    for i in range(n):
        for j in range(i + 1, n):
            mids = [v for v in range(n) if v != j]

            def min_to_target(u: int, edges_left: int) -> float:
                # Minimum fold cost over simple paths u -> j of <= edges_left
                # edges, avoiding visited nodes.  Fold order matches the DP:
                # cost(e1..ek) = t[e1] + cost(e2..ek).  An unreachable branch
                # folds to inf and never wins the strict < comparison.
                row = t[u]
                best = row[j]
                if edges_left > 1:
                    nxt = edges_left - 1
                    for v in mids:
                        if visited[v]:
                            continue
                        visited[v] = 1
                        sub = min_to_target(v, nxt)
                        visited[v] = 0
                        if use_max:
                            cand = row[v] if row[v] >= sub else sub
                        else:
                            cand = row[v] + sub
                        if cand < best:
                            best = cand
                return best

            direct = t[i][j]
            best_alt = math.inf
            if q >= 2:
                visited[i] = 1
                row_i = t[i]
                for v in mids:
                    if visited[v]:
                        continue
                    visited[v] = 1
                    sub = min_to_target(v, q - 1)
                    visited[v] = 0
                    cand = max(row_i[v], sub) if use_max else row_i[v] + sub
                    if cand < best_alt:
                        best_alt = cand
                visited[i] = 0
            keep[i, j] = keep[j, i] = not best_alt < direct
    return _prune_to_mogram(d, keep)
