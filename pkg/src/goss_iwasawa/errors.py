"""Exception types.

The CLI maps these onto exit codes: ``ConfigError`` and ``PrecisionError``
are user/precondition errors (exit 2), ``GuardError`` subclasses signal that
a heuristic bound was violated (exit 3), and ``UnresolvedError`` means a
search ran out of budget (exit 4).
"""


class GossError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(GossError, ValueError):
    """Invalid field, prime or run configuration."""


class FieldMismatchError(GossError, ValueError):
    """Operands live over different fields or primes."""


class NonUnitError(GossError, ArithmeticError):
    """Inversion or decomposition requested for a non-unit."""


class PrecisionError(GossError, ValueError):
    """Requested precision exceeds what the inputs determine."""


class DivergenceError(GossError, ValueError):
    """Input outside the region where a certified answer is possible."""


class GuardError(GossError):
    """A runtime guard on a heuristic bound fired."""


class DegreeWindowError(GuardError):
    """Nonzero Stickelberger coefficient in the X-degree guard window."""


class DivisionRemainderError(GuardError):
    """Division by (1 - X) left a nonzero remainder."""


class UnresolvedError(GossError):
    """A search hit its bound without a certified answer."""
