"""Exception hierarchy shared across the package.

Validation failures (bad user input) derive from ValueError so callers can
catch them generically; internal numerical breakdowns derive from
RuntimeError.  The CLI maps the former to exit code 2 and the latter to 3.
"""


class SpinClusterError(Exception):
    """Base class for every package-specific error."""


class InvalidClusterError(SpinClusterError, ValueError):
    """Cluster parameters outside the physical domain (n < 2, j = 0, ...)."""


class DomainError(SpinClusterError, ValueError):
    """Argument of an operation outside its stated domain."""


class CapacityError(SpinClusterError, ValueError):
    """Request exceeds a hard resource cap (brute-force size limit)."""


class ConsistencyError(SpinClusterError, RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class NumericalError(SpinClusterError, RuntimeError):
    """A numerical routine produced an unusable result."""
