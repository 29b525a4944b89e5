"""Exception types shared across the package."""

from __future__ import annotations


class ArrgateError(Exception):
    """Base class for all domain errors raised by this package."""


class EvenMultiplicityError(ArrgateError):
    """An odd-multiplicity-only operation was handed an even multiplicity.

    The residue of the mod-16 test is meaningless in this case, so callers
    get an exception instead of a number they might misread.
    """

    def __init__(self, multiplicity: int):
        self.multiplicity = multiplicity
        super().__init__(f"multiplicity {multiplicity} is even; the mod-16 test requires odd multiplicities only")


class NonIntegralTripleCountError(ArrgateError):
    """d(d-1)/6 is not an integer for the requested degree."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"d(d-1)/6 is non-integral for d={degree}")


class HypothesisNotMetError(ArrgateError):
    """A lattice-level check was invoked outside its hypotheses.

    Carries a human-readable witness naming the offending pair or point, so
    reports can say why the check was skipped.
    """

    def __init__(self, reason: str, witness: str):
        self.reason = reason
        self.witness = witness
        super().__init__(f"{reason} ({witness})")


class DimensionMismatchError(ArrgateError):
    """Two homology classes from different blow-ups were combined."""


class DegreeMismatchError(ArrgateError):
    """Isomorphism test between structures of different degree."""


class CapExceededError(ArrgateError):
    """A scan or vector enumeration exceeded its configured degree cap."""

    def __init__(self, value: int, cap: int, what: str = "degree"):
        self.value = value
        self.cap = cap
        super().__init__(f"{what} {value} exceeds cap {cap}")


class BudgetExceededError(ArrgateError):
    """An enumeration ran out of its node or time budget.

    Partial results are deliberately not attached; a certificate is only
    meaningful when the search space was exhausted.
    """

    def __init__(self, kind: str, limit: int | float, nodes_explored: int):
        self.kind = kind
        self.limit = limit
        self.nodes_explored = nodes_explored
        super().__init__(f"{kind} budget of {limit} exhausted after {nodes_explored} nodes")

    def __reduce__(self):
        # keeps the exception picklable across worker processes
        return (BudgetExceededError, (self.kind, self.limit, self.nodes_explored))


class IncidenceFileError(ArrgateError):
    """An incidence document failed to parse or validate.

    ``line``/``column`` are set for syntax errors; semantic errors carry a
    JSON-path-like location in ``where`` instead.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 where: str | None = None):
        self.line = line
        self.column = column
        self.where = where
        prefix = ""
        if line is not None:
            prefix = f"line {line}, column {column}: "
        elif where is not None:
            prefix = f"at {where}: "
        super().__init__(prefix + message)
