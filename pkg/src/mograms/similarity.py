"""Pairwise design-space similarity metrics and matrix construction.

Three problem-specific metrics are provided - station/line overlap for
assembly-line configurations, normalized Hamming similarity for membership
bit strings, and normalized Levenshtein similarity for token sequences -
plus a passthrough for externally precomputed matrices.  All metrics are
pure, symmetric, and bounded in [0, 1] with self-similarity exactly 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import AbstractSet, Any, Sequence

import numpy as np

from .errors import (
    BothConfigsEmpty,
    LengthMismatch,
    MetricPayloadMismatch,
    PrecomputedInvalid,
    ValidationError,
)
from .model import (
    AssignmentPayload,
    BinaryPayload,
    SimilarityMatrix,
    SolutionSet,
    TokenPayload,
    iter_pairs,
)


def sim_station(a: AbstractSet[int], b: AbstractSet[int]) -> float:
    """Set-overlap similarity of two station workloads: 2|a&b| / (|a|+|b|).

    Two empty stations are defined as identical (similarity 1); the line
    metric never produces that case because it pads only the shorter
    configuration.
    """
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return 2.0 * len(a & b) / total


def sim_line(
    psi1: Sequence[AbstractSet[int]], psi2: Sequence[AbstractSet[int]]
) -> float:
    """Mean station similarity of two line configurations.

    The shorter configuration is padded with empty stations up to
    m = max(m1, m2); equals 1 iff the configurations match station by
    station.
    """
    m = max(len(psi1), len(psi2))
    if m == 0:
        raise BothConfigsEmpty("both line configurations have zero stations")
    empty: frozenset[int] = frozenset()
    total = 0.0
    for k in range(m):
        s1 = psi1[k] if k < len(psi1) else empty
        s2 = psi2[k] if k < len(psi2) else empty
        total += sim_station(s1, s2)
    return total / m


def hamming_distance(s1: str, s2: str, n_cl: int) -> float:
    """Normalized Hamming distance between two bit strings of length n_cl."""
    if len(s1) != n_cl or len(s2) != n_cl:
        raise LengthMismatch(
            f"bit strings must both have length {n_cl}, got {len(s1)} and {len(s2)}"
        )
    if n_cl < 1:
        raise LengthMismatch("n_cl must be >= 1")
    differing = sum(c1 != c2 for c1, c2 in zip(s1, s2))
    return differing / n_cl


def sim_hamming(s1: str, s2: str, n_cl: int) -> float:
    """Hamming similarity: 1 minus the normalized Hamming distance."""
    return 1.0 - hamming_distance(s1, s2, n_cl)


def levenshtein(bq1: Sequence[str], bq2: Sequence[str]) -> int:
    """Edit distance between token sequences (insert/delete/substitute, cost 1).

    Tokens compare as exact text, case-sensitive.  Standard dynamic program
    with base rows dist(i, 0) = i and dist(0, j) = j.
    """
    n1, n2 = len(bq1), len(bq2)
    if n1 == 0:
        return n2
    if n2 == 0:
        return n1
    prev = list(range(n2 + 1))
    for i in range(1, n1 + 1):
        cur = [i] + [0] * n2
        t1 = bq1[i - 1]
        for j in range(1, n2 + 1):
            cost = 0 if t1 == bq2[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    return prev[n2]


def sim_levenshtein(bq1: Sequence[str], bq2: Sequence[str]) -> float:
    """Levenshtein similarity: 1 - dist / max(|bq1|, |bq2|).

    Two empty sequences are identical, hence similarity 1.
    """
    longest = max(len(bq1), len(bq2))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(bq1, bq2) / longest


# -- metric selection ----------------------------------------------------------

_PAYLOAD_FOR_METRIC = {
    "tsalbp_line": "assignment",
    "hamming_binary": "binary",
    "levenshtein_tokens": "tokens",
    "precomputed": "none",
}


@dataclass(frozen=True)
class MetricChoice:
    """The metric used to fill the similarity matrix.

    One of ``tsalbp_line``, ``hamming_binary``, ``levenshtein_tokens`` or
    ``precomputed``; the latter carries the externally supplied matrix.
    """

    name: str
    matrix: SimilarityMatrix | None = None

    def __post_init__(self) -> None:
        if self.name not in _PAYLOAD_FOR_METRIC:
            raise MetricPayloadMismatch(f"unknown metric {self.name!r}")
        if (self.name == "precomputed") != (self.matrix is not None):
            raise MetricPayloadMismatch(
                "a matrix must be supplied iff the metric is 'precomputed'"
            )

    @classmethod
    def tsalbp_line(cls) -> "MetricChoice":
        return cls("tsalbp_line")

    @classmethod
    def hamming_binary(cls) -> "MetricChoice":
        return cls("hamming_binary")

    @classmethod
    def levenshtein_tokens(cls) -> "MetricChoice":
        return cls("levenshtein_tokens")

    @classmethod
    def precomputed(cls, matrix: SimilarityMatrix) -> "MetricChoice":
        return cls("precomputed", matrix=matrix)

    @property
    def expected_payload_kind(self) -> str:
        return _PAYLOAD_FOR_METRIC[self.name]


def build_similarity_matrix(sset: SolutionSet, metric: MetricChoice) -> SimilarityMatrix:
    """Fill the n x n similarity matrix pair by pair with the chosen metric.

    Each unordered pair is evaluated once and mirrored; the diagonal is
    forced to exactly 1.
    """
    kind = sset.payload_kind
    if metric.expected_payload_kind != kind:
        raise MetricPayloadMismatch(
            f"metric {metric.name!r} expects {metric.expected_payload_kind!r} "
            f"payloads, solution set carries {kind!r}"
        )

    if metric.name == "precomputed":
        assert metric.matrix is not None
        if metric.matrix.n != sset.n:
            raise PrecomputedInvalid(
                f"precomputed matrix is {metric.matrix.n}x{metric.matrix.n}, "
                f"solution set has {sset.n} solutions"
            )
        return metric.matrix

    n = sset.n
    values = np.eye(n)
    designs = [s.design for s in sset.solutions]
    for i, j in iter_pairs(n):
        s = _evaluate(metric.name, designs[i], designs[j], sset.pool_size)
        values[i, j] = s
        values[j, i] = s
    return SimilarityMatrix.checked(values)


def _evaluate(name: str, a: Any, b: Any, pool_size: int | None) -> float:
    if name == "tsalbp_line":
        assert isinstance(a, AssignmentPayload) and isinstance(b, AssignmentPayload)
        return sim_line(a.stations, b.stations)
    if name == "hamming_binary":
        assert isinstance(a, BinaryPayload) and isinstance(b, BinaryPayload)
        assert pool_size is not None
        return sim_hamming(a.bits, b.bits, pool_size)
    assert name == "levenshtein_tokens"
    assert isinstance(a, TokenPayload) and isinstance(b, TokenPayload)
    return sim_levenshtein(a.tokens, b.tokens)


def precomputed_matrix_from_json(obj: Any) -> SimilarityMatrix:
    """Parse {"n": int, "values": [[...]]} and enforce matrix invariants."""
    if not isinstance(obj, dict):
        raise PrecomputedInvalid("matrix document must be a JSON object")
    unknown = set(obj) - {"n", "values"}
    if unknown:
        raise PrecomputedInvalid(f"unknown fields {sorted(unknown)} in matrix document")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise PrecomputedInvalid("'n' must be a positive integer")
    values = obj.get("values")
    if not isinstance(values, list) or len(values) != n:
        raise PrecomputedInvalid(f"'values' must be a list of {n} rows")
    for i, row in enumerate(values):
        if not isinstance(row, list) or len(row) != n:
            raise PrecomputedInvalid(f"row {i} must be a list of {n} numbers")
        for j, v in enumerate(row):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise PrecomputedInvalid(f"entry at row {i}, column {j} is not a number")
    try:
        return SimilarityMatrix.checked(np.asarray(values, dtype=float))
    except ValidationError as exc:
        raise PrecomputedInvalid(str(exc)) from exc


def load_precomputed_matrix(path: str | Path) -> SimilarityMatrix:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PrecomputedInvalid(f"{path}: not valid JSON: {exc}") from exc
    return precomputed_matrix_from_json(obj)
