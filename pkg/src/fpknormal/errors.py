"""Exception hierarchy.

Every validation failure derives from :class:`StructureError`, itself a
``ValueError``, so callers that only care about "bad input" can catch one type.
"""

from __future__ import annotations


class StructureError(ValueError):
    """Base class for all invalid-input conditions raised by this package."""


class DimensionMismatch(StructureError):
    pass


class InvalidDimension(StructureError):
    pass


class IndexOutOfRange(StructureError):
    pass


class DuplicateEntry(StructureError):
    pass


class InvalidEntry(StructureError):
    pass


class JacobiViolation(StructureError):
    def __init__(self, i: int, j: int, k: int, residual):
        self.triple = (i, j, k)
        self.residual = residual
        super().__init__(f"Jacobi identity fails on basis triple {(i, j, k)}: residual {residual_str(residual)}")


class SingularMatrix(StructureError):
    pass


class DependentVectors(StructureError):
    pass


class NotASubalgebra(StructureError):
    pass


class NotSubalgebraSpan(NotASubalgebra):
    pass


class NotAHomomorphism(StructureError):
    """The group factor's brackets do not match the parallelism's brackets."""


class PhiCubicFails(StructureError):
    pass


class OddRank(StructureError):
    pass


class KernelMismatch(StructureError):
    pass


class DependentParallelism(StructureError):
    pass


class NotAlmostComplex(StructureError):
    pass


class WrongCorank(StructureError):
    pass


class UnknownName(StructureError, KeyError):
    def __str__(self) -> str:
        return ValueError.__str__(self)


class InvalidParameter(StructureError):
    pass


class ParseError(StructureError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(path)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


def residual_str(vec) -> str:
    return "(" + ", ".join(str(c) for c in vec) + ")"
