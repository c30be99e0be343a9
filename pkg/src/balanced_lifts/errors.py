"""Exception types raised by the library."""


class BalancedLiftsError(Exception):
    """Base class for all library errors."""


class SizeMismatchError(BalancedLiftsError, ValueError):
    """A partition, state or matrix does not match the graph it is used with."""


class UnbalancedPartitionError(BalancedLiftsError, ValueError):
    """A partition is not balanced where a balanced one is required."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        """Store the offending 1-based vertex pair, when one is known."""
        super().__init__(message)
        self.pair = pair


class GuardExceededError(BalancedLiftsError):
    """A configured size guard would be exceeded."""


class NotSymmetricError(BalancedLiftsError, ValueError):
    """A symmetric graph or quotient was required."""


class LiftError(BalancedLiftsError, ValueError):
    """A lift cannot be built from the given quotient and class sizes."""


class ExpressionError(BalancedLiftsError, ValueError):
    """A component expression could not be parsed or uses unknown variables."""


class DivergenceError(BalancedLiftsError, ArithmeticError):
    """A vector field produced a non-finite value."""

    def __init__(self, message: str, step: int | None = None):
        """Store the integration step at which the state stopped being finite."""
        super().__init__(message)
        self.step = step


class NotRegularError(BalancedLiftsError, ValueError):
    """A regular graph was required."""


class CouplingError(BalancedLiftsError, ValueError):
    """A coupling specification does not fit the graph it is used on."""
