"""Exception hierarchy shared across the package."""


class PagammaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PagammaError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidParamsError(PagammaError, ValueError):
    """A parameter object or result violates its structural invariants."""


class DegenerateInputError(PagammaError, ValueError):
    """Input data carries no information about the quantity being estimated."""


class RootBracketError(PagammaError, RuntimeError):
    """A root finder found no sign change inside its search interval."""


class InsufficientPointsError(PagammaError, ValueError):
    """Too few data points for the requested fit."""


class ConvergenceError(PagammaError, RuntimeError):
    """An iterative method exhausted its iteration budget."""


class ConfigError(PagammaError, ValueError):
    """An experiment configuration is malformed or inconsistent."""


class ExperimentError(PagammaError, RuntimeError):
    """A failure inside an experiment run, annotated with task identity."""
