"""Exception types shared across the package."""


class SphereDesignError(Exception):
    """Base class for errors raised by this package."""


class DataError(SphereDesignError):
    """Malformed or off-sphere input data (files, coordinates, weights)."""


class ConditionError(SphereDesignError):
    """A documented precondition does not hold (strength, dimensions, ...)."""
