"""Domain types shared by every pipeline stage.

A solution set couples objective-space vectors with design-space payloads.
Downstream stages produce a similarity matrix, a pruned network (adjacency +
edge weights), and finally a laid-out network with 2-D coordinates.  All
values here are immutable after construction and safe to share across tasks.

Node ids are 1-based throughout, matching the labels a decision maker sees.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterator, Union

import numpy as np

from .errors import (
    DuplicateId,
    InvalidId,
    NonFiniteValue,
    ObjectiveArityMismatch,
    PayloadMismatch,
    SchemaError,
    TooFewSolutions,
    ValidationError,
)


class Sense(Enum):
    """Direction of improvement for one objective."""

    MINIMIZE = "min"
    MAXIMIZE = "max"


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    sense: Sense


@dataclass(frozen=True)
class AssignmentPayload:
    """Ordered line configuration: one task-id set per station."""

    stations: tuple[frozenset[int], ...]

    kind = "assignment"


@dataclass(frozen=True)
class BinaryPayload:
    """Fixed-length membership bit string, e.g. ``"10110"``."""

    bits: str

    kind = "binary"


@dataclass(frozen=True)
class TokenPayload:
    """Ordered list of text entities (query terms and operators)."""

    tokens: tuple[str, ...]

    kind = "tokens"


@dataclass(frozen=True)
class NoPayload:
    """Placeholder used when similarities are supplied precomputed."""

    kind = "none"


DesignPayload = Union[AssignmentPayload, BinaryPayload, TokenPayload, NoPayload]


@dataclass(frozen=True)
class FrontSolution:
    id: int
    objective_values: tuple[float, ...]
    design: DesignPayload


@dataclass(frozen=True)
class SolutionSet:
    objectives: tuple[ObjectiveSpec, ...]
    solutions: tuple[FrontSolution, ...]
    pool_size: int | None = None

    @property
    def n(self) -> int:
        return len(self.solutions)

    @property
    def n_obj(self) -> int:
        return len(self.objectives)

    @property
    def payload_kind(self) -> str:
        return self.solutions[0].design.kind

    def objective_column(self, j: int) -> tuple[float, ...]:
        return tuple(s.objective_values[j] for s in self.solutions)


def validate_solution_set(raw: SolutionSet) -> SolutionSet:
    """Check every invariant and return the set unchanged, or raise.

    Exactly one typed error is raised for the first violation found; each
    error names the offending solution id where one exists.
    """
    if len(raw.objectives) < 1:
        raise ValidationError("solution set declares no objectives")
    names = [o.name for o in raw.objectives]
    for name in names:
        if not name:
            raise ValidationError("objective name must be non-empty")
    if len(set(names)) != len(names):
        raise ValidationError(f"duplicate objective names: {sorted(names)}")

    if len(raw.solutions) < 2:
        raise TooFewSolutions(
            f"need at least 2 solutions, got {len(raw.solutions)}; "
            "a single-node network has no edges to analyse"
        )

    seen: set[int] = set()
    for sol in raw.solutions:
        if sol.id in seen:
            raise DuplicateId(f"duplicate solution id {sol.id}", id=sol.id)
        seen.add(sol.id)
    n = len(raw.solutions)
    if seen != set(range(1, n + 1)):
        raise InvalidId(
            f"solution ids must be exactly 1..{n}, got {sorted(seen)}",
            ids=sorted(seen),
        )

    kinds = {sol.design.kind for sol in raw.solutions}
    if len(kinds) > 1:
        raise PayloadMismatch(
            f"solutions mix payload kinds {sorted(kinds)}", kinds=sorted(kinds)
        )

    n_obj = len(raw.objectives)
    for sol in raw.solutions:
        if len(sol.objective_values) != n_obj:
            raise ObjectiveArityMismatch(
                f"solution {sol.id} has {len(sol.objective_values)} objective "
                f"values, expected {n_obj}",
                id=sol.id,
            )
        for v in sol.objective_values:
            if not math.isfinite(v):
                raise NonFiniteValue(
                    f"solution {sol.id} has non-finite objective value {v!r}",
                    id=sol.id,
                )
        _validate_payload(sol, raw.pool_size)

    return raw


def _validate_payload(sol: FrontSolution, pool_size: int | None) -> None:
    design = sol.design
    if isinstance(design, AssignmentPayload):
        assigned: set[int] = set()
        for station in design.stations:
            for task in station:
                if not isinstance(task, int) or task < 0:
                    raise PayloadMismatch(
                        f"solution {sol.id}: task ids must be non-negative "
                        f"integers, got {task!r}",
                        id=sol.id,
                    )
                if task in assigned:
                    raise PayloadMismatch(
                        f"solution {sol.id}: task {task} assigned to two stations",
                        id=sol.id,
                    )
                assigned.add(task)
    elif isinstance(design, BinaryPayload):
        if pool_size is None:
            raise PayloadMismatch(
                "binary payloads require the set-level pool_size", id=sol.id
            )
        if set(design.bits) - {"0", "1"}:
            raise PayloadMismatch(
                f"solution {sol.id}: bit string may contain only 0/1", id=sol.id
            )
        if len(design.bits) != pool_size:
            raise PayloadMismatch(
                f"solution {sol.id}: bit string length {len(design.bits)} != "
                f"pool_size {pool_size}",
                id=sol.id,
            )
    elif isinstance(design, TokenPayload):
        for tok in design.tokens:
            if not isinstance(tok, str) or not tok:
                raise PayloadMismatch(
                    f"solution {sol.id}: tokens must be non-empty text", id=sol.id
                )
    elif isinstance(design, NoPayload):
        pass
    else:  # pragma: no cover - unreachable with the union type
        raise PayloadMismatch(f"solution {sol.id}: unknown payload", id=sol.id)


# -- similarity matrix --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Symmetric n x n matrix of pairwise design-space similarities in [0,1]."""

    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        v = self.values
        if v.shape != (self.n, self.n):
            raise ValidationError(
                f"similarity matrix shape {v.shape} != ({self.n}, {self.n})"
            )
        v.setflags(write=False)

    @classmethod
    def checked(cls, values: np.ndarray | list[list[float]]) -> "SimilarityMatrix":
        """Build from raw values, enforcing all matrix invariants."""
        v = np.asarray(values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValidationError(f"similarity matrix must be square, got {v.shape}")
        n = v.shape[0]
        for i in range(n):
            if v[i, i] != 1.0:
                raise ValidationError(
                    f"diagonal entry [{i}][{i}] = {v[i, i]!r}, expected 1"
                )
            for j in range(n):
                if not math.isfinite(v[i, j]) or not 0.0 <= v[i, j] <= 1.0:
                    raise ValidationError(
                        f"entry [{i}][{j}] = {v[i, j]!r} outside [0, 1]"
                    )
                if v[i, j] != v[j, i]:
                    raise ValidationError(
                        f"asymmetric entries [{i}][{j}]={v[i, j]!r} vs "
                        f"[{j}][{i}]={v[j, i]!r}"
                    )
        return cls(n=n, values=v)


# -- pruned network -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MoGram:
    """Pruned network: adjacency plus per-edge similarity weights.

    ``adjacency`` is indexed 0-based; ``edge_similarity`` is keyed by 1-based
    node-id pairs ``(i, j)`` with ``i < j``, matching display labels.
    """

    n: int
    adjacency: np.ndarray
    edge_similarity: dict[tuple[int, int], float]

    def __post_init__(self) -> None:
        a = np.asarray(self.adjacency, dtype=bool)
        object.__setattr__(self, "adjacency", a)
        if a.shape != (self.n, self.n):
            raise ValidationError(f"adjacency shape {a.shape} != ({self.n}, {self.n})")
        if np.any(a != a.T):
            raise ValidationError("adjacency must be symmetric")
        if np.any(np.diag(a)):
            raise ValidationError("adjacency diagonal must be zero")
        expected = {
            (i + 1, j + 1) for i in range(self.n) for j in range(i + 1, self.n) if a[i, j]
        }
        if set(self.edge_similarity) != expected:
            raise ValidationError("edge_similarity keys do not match adjacency")
        if self.n >= 2 and not np.all(a.sum(axis=0) >= 1):
            isolated = [i + 1 for i in range(self.n) if a[:, i].sum() == 0]
            raise ValidationError(f"isolated nodes {isolated}")
        a.setflags(write=False)

    def edges(self) -> list[tuple[int, int]]:
        """Retained edges as sorted 1-based pairs."""
        return sorted(self.edge_similarity)

    @property
    def edge_count(self) -> int:
        return len(self.edge_similarity)

    def degree(self, node_id: int) -> int:
        return int(self.adjacency[node_id - 1].sum())


# -- laid-out network ---------------------------------------------------------

@dataclass(frozen=True)
class LayoutReport:
    iterations: int
    final_max_gradient: float
    final_energy: float
    converged: bool
    energy_history: tuple[float, ...] = field(default=(), repr=False)


@dataclass(frozen=True, eq=False)
class LayoutedMoGram:
    base: MoGram
    positions: np.ndarray
    layout_report: LayoutReport

    def __post_init__(self) -> None:
        p = np.asarray(self.positions, dtype=float)
        object.__setattr__(self, "positions", p)
        if p.shape != (self.base.n, 2):
            raise ValidationError(f"positions shape {p.shape} != ({self.base.n}, 2)")
        if not np.all(np.isfinite(p)):
            raise ValidationError("positions must be finite")
        p.setflags(write=False)


# -- canonical JSON file format ----------------------------------------------

_SENSE_BY_TAG = {"min": Sense.MINIMIZE, "max": Sense.MAXIMIZE}


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)} in {where}")


def _payload_from_json(obj: Any, where: str) -> DesignPayload:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"design must be an object with a 'kind' field in {where}")
    kind = obj["kind"]
    if kind == "assignment":
        _reject_unknown(obj, {"kind", "stations"}, where)
        stations = obj.get("stations")
        if not isinstance(stations, list):
            raise SchemaError(f"assignment design needs 'stations' list in {where}")
        out = []
        for st in stations:
            if not isinstance(st, list) or not all(
                isinstance(t, int) and not isinstance(t, bool) for t in st
            ):
                raise SchemaError(f"stations must be lists of integers in {where}")
            out.append(frozenset(st))
        return AssignmentPayload(stations=tuple(out))
    if kind == "binary":
        _reject_unknown(obj, {"kind", "bits"}, where)
        bits = obj.get("bits")
        if not isinstance(bits, str):
            raise SchemaError(f"binary design needs a 'bits' string in {where}")
        return BinaryPayload(bits=bits)
    if kind == "tokens":
        _reject_unknown(obj, {"kind", "tokens"}, where)
        tokens = obj.get("tokens")
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise SchemaError(f"tokens design needs a 'tokens' string list in {where}")
        return TokenPayload(tokens=tuple(tokens))
    if kind == "none":
        _reject_unknown(obj, {"kind"}, where)
        return NoPayload()
    raise SchemaError(f"unknown design kind {kind!r} in {where}")


def _payload_to_json(design: DesignPayload) -> dict:
    if isinstance(design, AssignmentPayload):
        return {
            "kind": "assignment",
            "stations": [sorted(st) for st in design.stations],
        }
    if isinstance(design, BinaryPayload):
        return {"kind": "binary", "bits": design.bits}
    if isinstance(design, TokenPayload):
        return {"kind": "tokens", "tokens": list(design.tokens)}
    return {"kind": "none"}


def solution_set_from_json(obj: Any) -> SolutionSet:
    """Parse the canonical solution-set document and validate it.

    Field names are normative; unknown fields are rejected.
    """
    if not isinstance(obj, dict):
        raise SchemaError("top level must be a JSON object")
    _reject_unknown(obj, {"objectives", "pool_size", "solutions"}, "top level")

    raw_objectives = obj.get("objectives")
    if not isinstance(raw_objectives, list):
        raise SchemaError("'objectives' must be a list")
    objectives = []
    for k, o in enumerate(raw_objectives):
        if not isinstance(o, dict):
            raise SchemaError(f"objectives[{k}] must be an object")
        _reject_unknown(o, {"name", "sense"}, f"objectives[{k}]")
        name, sense = o.get("name"), o.get("sense")
        if not isinstance(name, str):
            raise SchemaError(f"objectives[{k}].name must be a string")
        if sense not in _SENSE_BY_TAG:
            raise SchemaError(f"objectives[{k}].sense must be 'min' or 'max'")
        objectives.append(ObjectiveSpec(name=name, sense=_SENSE_BY_TAG[sense]))

    pool_size = obj.get("pool_size")
    if pool_size is not None and (
        not isinstance(pool_size, int) or isinstance(pool_size, bool) or pool_size < 1
    ):
        raise SchemaError("'pool_size' must be a positive integer")

    raw_solutions = obj.get("solutions")
    if not isinstance(raw_solutions, list):
        raise SchemaError("'solutions' must be a list")
    solutions = []
    for k, s in enumerate(raw_solutions):
        where = f"solutions[{k}]"
        if not isinstance(s, dict):
            raise SchemaError(f"{where} must be an object")
        _reject_unknown(s, {"id", "objectives", "design"}, where)
        sid = s.get("id")
        if not isinstance(sid, int) or isinstance(sid, bool):
            raise SchemaError(f"{where}.id must be an integer")
        vals = s.get("objectives")
        if not isinstance(vals, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals
        ):
            raise SchemaError(f"{where}.objectives must be a number list")
        design = _payload_from_json(s.get("design"), where)
        solutions.append(
            FrontSolution(
                id=sid, objective_values=tuple(float(v) for v in vals), design=design
            )
        )

    return validate_solution_set(
        SolutionSet(
            objectives=tuple(objectives),
            solutions=tuple(solutions),
            pool_size=pool_size,
        )
    )


def solution_set_to_json(sset: SolutionSet) -> dict:
    doc: dict[str, Any] = {
        "objectives": [
            {"name": o.name, "sense": o.sense.value} for o in sset.objectives
        ],
        "solutions": [
            {
                "id": s.id,
                "objectives": list(s.objective_values),
                "design": _payload_to_json(s.design),
            }
            for s in sset.solutions
        ],
    }
    if sset.pool_size is not None:
        doc["pool_size"] = sset.pool_size
    return doc


def load_solution_set(path: str | Path) -> SolutionSet:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    return solution_set_from_json(obj)


def save_solution_set(sset: SolutionSet, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(solution_set_to_json(sset), indent=2) + "\n", encoding="utf-8"
    )


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All unordered 0-based index pairs (i, j) with i < j."""
    for i in range(n):
        for j in range(i + 1, n):
            yield i, j
