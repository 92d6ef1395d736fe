"""Exception hierarchy shared by the arithmetic, enumeration, solver and knot layers."""

from __future__ import annotations

from typing import Optional


class SchroderError(Exception):
    pass


# --- series-core -----------------------------------------------------------

class SeriesError(SchroderError, ArithmeticError):
    pass


class NotAUnit(SeriesError):
    """Lowest coefficient of a q-series is not +1 or -1."""


class InexactDivision(SeriesError):
    pass


class NonUnitConstant(SeriesError):
    """Constant term of an x-series is not exactly 1."""


class WindowRequired(SeriesError):
    """An infinite expansion was requested from an exact value without a window."""


# --- path-oracle -----------------------------------------------------------

class PathError(SchroderError):
    pass


class InvalidSlope(PathError, ValueError):
    pass


class StabilizationFailure(PathError):
    pass


class NonIntegralExponent(PathError, ArithmeticError):
    pass


# --- qdiff-solver ----------------------------------------------------------

class SolverError(SchroderError):
    pass


class RecursionGuardTripped(SolverError):
    pass


class NegativeCount(SolverError):
    pass


class NegativeCoefficient(SolverError):
    pass


# --- torus-knot ------------------------------------------------------------

class KnotError(SchroderError):
    pass


class SizeCapExceeded(KnotError, ValueError):
    pass


class NonIntegralCoefficient(KnotError, ArithmeticError):
    pass


class GridViolation(KnotError):
    def __init__(self, message: str, locator: Optional[dict] = None):
        super().__init__(message)
        self.locator = locator


class ParityViolation(KnotError):
    pass


# --- identities ------------------------------------------------------------

class IdentityViolation(SchroderError):
    pass


class FunctionalEquationViolation(IdentityViolation):
    pass


class RouteMismatch(IdentityViolation):
    pass
