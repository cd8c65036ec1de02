"""Exception hierarchy shared by all modules."""


class SlowLightError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class InvalidParameterError(SlowLightError, ValueError):
    exit_code = 2


class ValidationError(InvalidParameterError):
    """Aggregated configuration problems; ``issues`` holds every violation."""

    def __init__(self, issues):
        self.issues = list(issues)
        text = "; ".join(f"{i.field}: {i.message}" for i in self.issues)
        super().__init__(text or "invalid configuration")


class SingularConfigurationError(SlowLightError, ZeroDivisionError):
    exit_code = 3


class ConvergenceError(SlowLightError, ArithmeticError):
    """Numerical procedure did not reach the requested tolerance."""

    exit_code = 3

    def __init__(self, message, achieved=None):
        self.achieved = achieved
        if achieved is not None:
            message = f"{message} (achieved error estimate {achieved:.3g})"
        super().__init__(message)


class DriveOpaqueError(SlowLightError):
    """Drive power fell below 1e-6 of its input value inside the cell."""

    exit_code = 3


class WindowTooShortError(SlowLightError):
    exit_code = 3


class NoModulationError(SlowLightError):
    exit_code = 3


class PhaseAmbiguityError(SlowLightError):
    """Delay exceeds half a modulation period; use a lower modulation frequency."""

    exit_code = 3

    def __init__(self, message, delay=None):
        self.delay = delay
        super().__init__(message)


class GainOverflowError(SlowLightError, OverflowError):
    exit_code = 3


class OutputError(SlowLightError, OSError):
    exit_code = 4
