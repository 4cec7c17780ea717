"""Exception hierarchy shared by all casimir_kit modules."""


class CasimirError(Exception):
    """Base class for every error raised by casimir_kit."""


class ValidationError(CasimirError, ValueError):
    """A configuration field is non-finite, non-positive or otherwise invalid."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class StaticLimitError(CasimirError, ValueError):
    """A dielectric function was evaluated at xi = 0 where it diverges."""


class DegenerateModeError(CasimirError, ValueError):
    """A vacuum mode with xi = k = 0 was used where a finite kappa is required."""


class PlasmonPoleError(CasimirError, ArithmeticError):
    """Evaluation too close to a surface plasmon pole of the TM amplitude."""

    def __init__(self, message, omega_plasmon=None):
        self.omega_plasmon = omega_plasmon
        super().__init__(message)


class LoopInstabilityError(CasimirError, ArithmeticError):
    """The open loop function reached rho >= 1 (pole of the closed loop)."""


class DivergenceError(CasimirError, ArithmeticError):
    """A series failed to converge within the allowed number of terms."""


class QuadratureEvaluationError(CasimirError, ArithmeticError):
    """The integrand returned NaN; ``abscissa`` holds the offending point."""

    def __init__(self, abscissa):
        self.abscissa = abscissa
        super().__init__(f"integrand returned NaN at x = {abscissa!r}")
