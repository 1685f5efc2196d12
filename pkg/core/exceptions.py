"""Domain errors shared by every app.

All of them are ``ValidationError`` subclasses so callers can catch the whole
family in one place; management commands translate them to exit codes.
"""
from __future__ import annotations

from django.core.exceptions import ValidationError


class SuperquiverError(ValidationError):
    """Base class for domain errors."""

    default_code = "invalid"

    def __init__(self, message, code=None, params=None):
        super().__init__(message, code=code or self.default_code, params=params)

    def __str__(self):
        return "; ".join(self.messages)


# quivers ---------------------------------------------------------------------

class QuiverError(SuperquiverError):
    default_code = "quiver"


class UnknownVertexError(QuiverError):
    default_code = "unknown_vertex"


class UnknownEdgeError(QuiverError):
    default_code = "unknown_edge"


class DimensionMismatchError(QuiverError):
    default_code = "dimension_mismatch"


class PathError(QuiverError):
    default_code = "path"


class NormalizationError(QuiverError):
    default_code = "normalization"


# rings -----------------------------------------------------------------------

class RingMismatchError(SuperquiverError):
    default_code = "ring_mismatch"


class ParityError(SuperquiverError):
    default_code = "parity"


class OddDenominatorError(SuperquiverError):
    default_code = "odd_denominator"


class ZeroPolynomialError(SuperquiverError):
    default_code = "zero_polynomial"


# matrices --------------------------------------------------------------------

class FormatError(SuperquiverError):
    default_code = "format"


class OddEntryError(FormatError):
    default_code = "odd_entry"


class SingularBlockError(SuperquiverError):
    default_code = "singular_block"


class NonInvertibleError(SuperquiverError):
    default_code = "non_invertible"


# invariants ------------------------------------------------------------------

class DetLikeSpecError(SuperquiverError):
    default_code = "detlike_spec"


class PolarizationError(SuperquiverError):
    default_code = "polarization"


class ReductionError(SuperquiverError):
    default_code = "reduction"


# oracle ----------------------------------------------------------------------

class NegativeExtError(SuperquiverError):
    default_code = "negative_ext"


class HomConsistencyError(SuperquiverError):
    default_code = "hom_consistency"


class ResourceCapExceeded(SuperquiverError):
    default_code = "resource_cap"


# jobs ------------------------------------------------------------------------

class JobSyntaxError(SuperquiverError):
    """Parse failure carrying a 1-based line and column."""

    default_code = "job_syntax"

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class JobReferenceError(JobSyntaxError):
    default_code = "job_reference"
