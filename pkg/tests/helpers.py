"""Shared builders for test inputs."""

from __future__ import annotations

import numpy as np

from mograms.model import (
    FrontSolution,
    MoGram,
    NoPayload,
    ObjectiveSpec,
    Sense,
    SolutionSet,
)


def random_distance_matrix(rng: np.random.Generator, n: int, ties: bool = False) -> np.ndarray:
    v = rng.random((n, n))
    if ties:
        v = np.round(v, 1)  # coarse grid so equal path costs actually occur
    v = (v + v.T) / 2.0
    np.fill_diagonal(v, 0.0)
    return v


def mogram_from_edges(n: int, sims: dict[tuple[int, int], float]) -> MoGram:
    adjacency = np.zeros((n, n), dtype=bool)
    for a, b in sims:
        adjacency[a - 1, b - 1] = adjacency[b - 1, a - 1] = True
    return MoGram(n=n, adjacency=adjacency, edge_similarity=dict(sims))


def plain_solution_set(values: list[list[float]], senses: list[str] | None = None) -> SolutionSet:
    """Payload-free set with the given objective rows (one row per solution)."""
    n_obj = len(values[0])
    senses = senses or ["min"] * n_obj
    objectives = tuple(
        ObjectiveSpec(name=f"f{j + 1}", sense=Sense(senses[j])) for j in range(n_obj)
    )
    solutions = tuple(
        FrontSolution(id=i + 1, objective_values=tuple(row), design=NoPayload())
        for i, row in enumerate(values)
    )
    return SolutionSet(objectives=objectives, solutions=solutions)
