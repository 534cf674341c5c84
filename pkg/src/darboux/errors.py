"""Exception hierarchy shared by the whole pipeline.

Hard errors are kept distinct from the algorithmic "Zero" outcome of the
candidate search: Zero is a regular return value, never an exception.
"""


class DarbouxError(Exception):
    """Base class for all pipeline errors."""

    exit_code = 20


class NonInvertible(DarbouxError):
    """A nonzero element of an algebraic layer has no inverse.

    Signals that the declared constants are not algebraically independent
    (or a minimal polynomial is reducible), violating the tower assumptions.
    """

    exit_code = 24


class PrecisionExhausted(DarbouxError):
    """Interval refinement hit the precision cap without deciding a sign."""

    exit_code = 21


class UnsupportedAlgebraicPoint(DarbouxError):
    """A required point has coordinates outside the declared tower field."""

    exit_code = 20


class DegenerateInfinity(DarbouxError):
    """Every point of the line at infinity is singular; pipeline aborts."""

    exit_code = 23


class BudgetExceeded(DarbouxError):
    """A configured blow-up or exploration budget was exceeded."""

    exit_code = 22


class ShearFailure(DarbouxError):
    """Two independent shears gave different intersection counts."""

    exit_code = 25


class InputError(DarbouxError):
    """Malformed input document (syntax, undeclared symbol, bad block)."""

    exit_code = 26

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = "line %d:%d: %s" % (line, column if column is not None else 0, message)
        super().__init__(message)
        self.line = line
        self.column = column
