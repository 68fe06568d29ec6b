"""Exception types raised across the package."""


class StsmError(Exception):
    """Base class for all package errors."""


class WrongKindError(StsmError, ValueError):
    """An arrangement of the wrong kind was passed to an ensemble builder."""


class OutOfRangeError(StsmError, ValueError):
    """A numeric input lies outside the domain an operation can handle."""


class InvalidCountError(StsmError, ValueError):
    pass


class NonPositivePriorError(StsmError, ValueError):
    pass


class IncompatibleDensityError(StsmError, ValueError):
    """A joint density whose outcome conditional is not the Born rule."""


class NoConvergenceError(StsmError, RuntimeError):
    pass
