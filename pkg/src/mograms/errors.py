"""Typed errors raised by the pipeline stages.

Every error carries a stable machine-readable ``code`` (used verbatim as the
HTTP ``error_code``) and an optional ``detail`` mapping with the offending
ids, indices or values.
"""

from __future__ import annotations

from typing import Any


class MoGramError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.detail: dict[str, Any] = detail


# -- solution-set validation ------------------------------------------------

class ValidationError(MoGramError):
    code = "validation_error"


class DuplicateId(ValidationError):
    code = "duplicate_id"


class InvalidId(ValidationError):
    code = "invalid_id"


class PayloadMismatch(ValidationError):
    code = "payload_mismatch"


class ObjectiveArityMismatch(ValidationError):
    code = "objective_arity_mismatch"


class NonFiniteValue(ValidationError):
    code = "non_finite_value"


class TooFewSolutions(ValidationError):
    code = "too_few_solutions"


class SchemaError(ValidationError):
    """Malformed or non-canonical input document."""

    code = "schema_error"


# -- similarity --------------------------------------------------------------

class LengthMismatch(MoGramError):
    code = "length_mismatch"


class BothConfigsEmpty(MoGramError):
    code = "both_configs_empty"


class MetricPayloadMismatch(MoGramError):
    code = "metric_payload_mismatch"


class PrecomputedInvalid(MoGramError):
    code = "precomputed_invalid"


# -- pathfinder ---------------------------------------------------------------

class InvalidParams(MoGramError):
    code = "invalid_params"


class NonSymmetricInput(MoGramError):
    code = "non_symmetric_input"


class NegativeDistance(MoGramError):
    code = "negative_distance"


class TooLarge(MoGramError):
    code = "too_large"


# -- layout -------------------------------------------------------------------

class Disconnected(MoGramError):
    code = "disconnected"


# -- styling ------------------------------------------------------------------

class ArityMismatch(MoGramError):
    code = "arity_mismatch"


class InvalidRange(MoGramError):
    code = "invalid_range"


# -- session ------------------------------------------------------------------

class TooFewRemaining(MoGramError):
    code = "too_few_remaining"


class UnknownId(MoGramError):
    code = "unknown_id"
