"""Exception types shared across the package."""


class ShockShiftError(Exception):
    """Base class for all package errors."""


class EvaluationError(ShockShiftError):
    """A user-supplied closure returned a non-finite value."""

    def __init__(self, closure: str, at, value):
        self.closure = closure
        self.at = at
        self.value = value
        super().__init__(f"{closure} returned non-finite value {value!r} at {at!r}")


class ConfigError(ShockShiftError, ValueError):
    """A configuration value violates a precondition."""


class ParseError(ConfigError):
    """Experiment config text could not be parsed or validated."""


class InputError(ShockShiftError, ValueError):
    """Operation inputs are inconsistent (grids, indices, missing data)."""


class DomainError(ShockShiftError, ValueError):
    """A query lies outside the mathematically valid domain."""


class InversionError(ShockShiftError):
    """Root finding for the inverse initial data failed to converge."""


class AssumptionError(ShockShiftError):
    """The structural assumptions on the initial data do not hold."""


class StepSizeError(ShockShiftError, ValueError):
    """Time step violates the CFL bound."""


class DivergenceError(ShockShiftError):
    """The time marching produced non-finite values."""

    def __init__(self, step: int, t: float):
        self.step = step
        self.t = t
        super().__init__(f"solution became non-finite at step {step}, t={t:.6g}")


class SingularityError(ShockShiftError):
    """The shock-boundary ODE hit the singular barrier f(u) - tau <= 0."""


class SchedulingError(ShockShiftError):
    """A required per-node snapshot is missing for the requested time."""
