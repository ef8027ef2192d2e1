"""Exception hierarchy shared by the model, metric and optimizer layers."""


class RockerOptError(Exception):
    """Base class for all package errors."""


class DimensionError(RockerOptError, ValueError):
    """A flat vector does not have the expected length."""


class GeometryError(RockerOptError, ValueError):
    """The mechanism geometry is degenerate."""


class InstabilityError(RockerOptError):
    """A quasi-static lever balance has a nonpositive arm."""


class ParameterError(RockerOptError, ValueError):
    """A scenario or soil parameter makes a formula undefined."""


class EvaluationError(RockerOptError, ArithmeticError):
    """A metric or fitness value came out non-finite."""


class ConfigError(RockerOptError, ValueError):
    """An optimizer or experiment configuration is invalid."""
