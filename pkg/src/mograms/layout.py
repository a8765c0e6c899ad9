"""Force-directed 2-D placement by stress-energy minimization.

Ideal inter-node lengths are proportional to weighted shortest-path
distances on the pruned network (edge length 1 - similarity, so strongly
similar solutions sit close).  The energy

    E = sum_{i<j} 0.5 * k_ij * (||p_i - p_j|| - l_ij)^2

is minimized node by node: the node with the largest gradient norm is
relaxed by damped 2-D Newton-Raphson until its gradient falls under the
tolerance.  Output is deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, InvalidParams
from .model import LayoutedMoGram, LayoutReport, MoGram

_MIN_EDGE_LENGTH = 1e-6
_HESSIAN_DET_FLOOR = 1e-12
_STEP_FLOOR_FACTOR = 1e-12
_COINCIDENT_FACTOR = 1e-12
_GRADIENT_STEP_CAP = 0.1
_JITTER_FACTOR = 1e-3


@dataclass(frozen=True)
class LayoutParams:
    desired_diameter: float = 1.0
    spring_constant: float = 1.0
    gradient_tolerance: float = 1e-4
    max_outer_iterations: int | None = None  # defaults to 100 * n at run time
    max_newton_steps_per_node: int = 50
    seed: int = 0
    use_hop_distances: bool = False

    def __post_init__(self) -> None:
        if self.desired_diameter <= 0:
            raise InvalidParams("desired_diameter must be positive")
        if self.spring_constant <= 0:
            raise InvalidParams("spring_constant must be positive")
        if not 0 < self.gradient_tolerance < 1:
            raise InvalidParams("gradient_tolerance must be in (0, 1)")
        if self.max_outer_iterations is not None and self.max_outer_iterations < 1:
            raise InvalidParams("max_outer_iterations must be positive")
        if self.max_newton_steps_per_node < 1:
            raise InvalidParams("max_newton_steps_per_node must be positive")


def _components(adjacency: np.ndarray) -> list[list[int]]:
    n = adjacency.shape[0]
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            u = stack.pop()
            comp.append(u + 1)
            for v in np.flatnonzero(adjacency[u]):
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        components.append(sorted(comp))
    return components


def graph_distances(g: MoGram, use_hops: bool = False) -> np.ndarray:
    """All-pairs shortest-path distances over the retained edges.

    Edge length is 1 - similarity (floored at 1e-6 so identical solutions
    still get a positive spring length), or 1 per edge in hop mode.
    """
    comps = _components(g.adjacency)
    if len(comps) > 1:
        raise Disconnected(
            f"network has {len(comps)} components: {comps}", components=comps
        )
    n = g.n
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for (a, b), sim in g.edge_similarity.items():
        length = 1.0 if use_hops else max(1.0 - sim, _MIN_EDGE_LENGTH)
        dist[a - 1, b - 1] = length
        dist[b - 1, a - 1] = length
    for k in range(n):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    return dist


# -- stress energy and derivatives ---------------------------------------------

def stress_energy(positions: np.ndarray, lengths: np.ndarray, strengths: np.ndarray) -> float:
    """Total spring energy of a configuration."""
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    dev = dist - lengths
    np.fill_diagonal(dev, 0.0)
    return 0.25 * float(np.sum(strengths * dev * dev))


def stress_gradient(positions: np.ndarray, lengths: np.ndarray, strengths: np.ndarray) -> np.ndarray:
    """Per-node energy gradient, shape (n, 2).

    Coincident pairs contribute nothing (direction undefined); the solver
    perturbs them apart before calling this.
    """
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = strengths * (1.0 - lengths / dist)
    factor[dist == 0.0] = 0.0
    np.fill_diagonal(factor, 0.0)
    return np.sum(factor[..., None] * diff, axis=1)


def _node_energy(positions: np.ndarray, m: int, p_m: np.ndarray, lengths: np.ndarray, strengths: np.ndarray) -> float:
    diff = p_m - positions
    dist = np.hypot(diff[:, 0], diff[:, 1])
    dev = dist - lengths[m]
    dev[m] = 0.0
    return 0.5 * float(np.sum(strengths[m] * dev * dev))


def _node_grad_hess(
    positions: np.ndarray, m: int, lengths: np.ndarray, strengths: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    diff = positions[m] - positions
    dx, dy = diff[:, 0], diff[:, 1]
    dist = np.hypot(dx, dy)
    dist[m] = 1.0  # keep divisions defined; the m term is masked out below
    k = strengths[m].copy()
    k[m] = 0.0
    l = lengths[m]
    inv = 1.0 / dist
    factor = k * (1.0 - l * inv)
    grad = np.array([np.sum(factor * dx), np.sum(factor * dy)])
    inv3 = inv**3
    hxx = np.sum(k * (1.0 - l * dy * dy * inv3))
    hyy = np.sum(k * (1.0 - l * dx * dx * inv3))
    hxy = np.sum(k * l * dx * dy * inv3)
    hess = np.array([[hxx, hxy], [hxy, hyy]])
    return grad, hess


class _Solver:
    """Node-at-a-time Newton relaxation with step-halving line search."""

    def __init__(self, lengths: np.ndarray, strengths: np.ndarray, params: LayoutParams, n: int):
        self.l = lengths
        self.k = strengths
        self.params = params
        self.n = n
        self.l0 = params.desired_diameter
        self.step_floor = _STEP_FLOOR_FACTOR * self.l0
        self.rng = np.random.default_rng(params.seed)
        self.positions = self._initial_positions()
        self.energy_history: list[float] = []

    def _initial_positions(self) -> np.ndarray:
        n, l0 = self.n, self.l0
        angles = 2.0 * np.pi * np.arange(n) / n
        pos = 0.5 * l0 * np.column_stack([np.cos(angles), np.sin(angles)])
        jitter = self.rng.uniform(-1.0, 1.0, size=(n, 2)) * (_JITTER_FACTOR * l0)
        return pos + jitter

    def _separate_coincident(self) -> None:
        threshold = _COINCIDENT_FACTOR * self.l0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if np.hypot(*(self.positions[i] - self.positions[j])) < threshold:
                    offset = self.rng.uniform(-1.0, 1.0, size=2) * (1e-9 * self.l0)
                    self.positions[i] = self.positions[i] + offset

    def _relax(self, m: int) -> bool:
        """Newton-relax node m; returns False iff no step was accepted."""
        eps = self.params.gradient_tolerance
        moved = False
        for _ in range(self.params.max_newton_steps_per_node):
            grad, hess = _node_grad_hess(self.positions, m, self.l, self.k)
            delta = float(np.hypot(*grad))
            if delta < eps:
                break
            det = hess[0, 0] * hess[1, 1] - hess[0, 1] * hess[1, 0]
            if abs(det) < _HESSIAN_DET_FLOOR:
                step = -grad / delta * min(delta, _GRADIENT_STEP_CAP * self.l0)
            else:
                step = np.array(
                    [
                        (-grad[0] * hess[1, 1] + grad[1] * hess[0, 1]) / det,
                        (grad[0] * hess[0, 1] - grad[1] * hess[0, 0]) / det,
                    ]
                )
                if float(grad @ step) >= 0.0:
                    # an indefinite Hessian can point the Newton step uphill,
                    # where no amount of halving yields an energy decrease
                    step = -grad / delta * min(delta, _GRADIENT_STEP_CAP * self.l0)
            e0 = _node_energy(self.positions, m, self.positions[m], self.l, self.k)
            scale = 1.0
            accepted = False
            step_norm = float(np.hypot(*step))
            while scale * step_norm >= self.step_floor:
                cand = self.positions[m] + scale * step
                if _node_energy(self.positions, m, cand, self.l, self.k) < e0:
                    self.positions[m] = cand
                    accepted = True
                    break
                scale *= 0.5
            if not accepted:
                return moved
            moved = True
            self.energy_history.append(stress_energy(self.positions, self.l, self.k))
        return moved

    def run(self) -> LayoutReport:
        max_outer = self.params.max_outer_iterations or 100 * self.n
        eps = self.params.gradient_tolerance
        iterations = 0
        skipped: set[int] = set()
        converged = False
        while iterations < max_outer:
            self._separate_coincident()
            grads = stress_gradient(self.positions, self.l, self.k)
            deltas = np.hypot(grads[:, 0], grads[:, 1])
            if float(deltas.max()) < eps:
                converged = True
                break
            eligible = deltas >= eps
            for s in skipped:
                eligible[s] = False
            if not eligible.any():
                break  # every stuck node is at its line-search floor
            m = int(np.argmax(np.where(eligible, deltas, -1.0)))
            iterations += 1
            if self._relax(m):
                skipped.clear()
            else:
                skipped.add(m)
        grads = stress_gradient(self.positions, self.l, self.k)
        final_max_grad = float(np.hypot(grads[:, 0], grads[:, 1]).max())
        converged = converged or final_max_grad < eps
        return LayoutReport(
            iterations=iterations,
            final_max_gradient=final_max_grad,
            final_energy=stress_energy(self.positions, self.l, self.k),
            converged=converged,
            energy_history=tuple(self.energy_history),
        )

    def normalized_positions(self) -> np.ndarray:
        pos = self.positions - self.positions.mean(axis=0)
        span = pos.max(axis=0) - pos.min(axis=0)
        longer = float(span.max())
        if longer > 0.0:
            pos = pos * (self.l0 / longer)
        return pos


def ideal_geometry(
    g: MoGram, params: LayoutParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Graph distances plus the derived spring lengths and strengths."""
    dist = graph_distances(g, use_hops=params.use_hop_distances)
    scale = params.desired_diameter / float(dist.max())
    lengths = scale * dist
    with np.errstate(divide="ignore"):
        strengths = params.spring_constant / (dist * dist)
    np.fill_diagonal(strengths, 0.0)
    return dist, lengths, strengths


def kamada_kawai(g: MoGram, params: LayoutParams | None = None) -> LayoutedMoGram:
    """Lay out a connected network; returns positions plus a convergence report.

    Positions are normalized after optimization: centroid at the origin and
    the longer bounding-box side equal to the desired diameter.  The report
    carries the optimizer's pre-normalization gradient and energy.
    """
    params = params or LayoutParams()
    if g.n < 2:
        raise InvalidParams("layout needs at least 2 nodes")
    _, lengths, strengths = ideal_geometry(g, params)
    solver = _Solver(lengths, strengths, params, g.n)
    report = solver.run()
    return LayoutedMoGram(
        base=g, positions=solver.normalized_positions(), layout_report=report
    )
