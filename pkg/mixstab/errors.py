from typing import Any, Dict, Optional

from mixstab.constants import ExitCode


class MixstabError(Exception):
    exit_code = ExitCode.NUMERICAL_FAILURE

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ParameterError(MixstabError):
    exit_code = ExitCode.CONFIG_INVALID


class AsymmetryError(ParameterError):
    def __init__(self, field_a: str, field_b: str, value_a: float, value_b: float):
        super().__init__(
            f"parameters are not balanced: {field_a}={value_a!r} differs from {field_b}={value_b!r}"
        )
        self.fields = (field_a, field_b)


class BranchDomainError(ParameterError):
    def __init__(self, branch: str, radicand: float):
        super().__init__(f"branch {branch} needs a non-negative radicand, got {radicand!r}")
        self.radicand = radicand


class NumericalError(MixstabError):
    exit_code = ExitCode.NUMERICAL_FAILURE


class QuadratureError(NumericalError):
    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate={estimate!r}, error bound={error!r})")
        self.estimate = estimate
        self.error = error


class BracketError(NumericalError):
    def __init__(self, lo: float, hi: float):
        super().__init__(f"invalid bracket: lo={lo!r} must be smaller than hi={hi!r}")


class InstabilityError(NumericalError):
    def __init__(self, message: str, last_stable: Optional[Any] = None):
        super().__init__(message)
        self.last_stable = last_stable


class ConvergenceError(NumericalError):
    def __init__(self, message: str, last_iterate: Optional[Any] = None, residual: float = float("nan")):
        super().__init__(f"{message} (residual={residual!r})")
        self.last_iterate = last_iterate
        self.residual = residual


class ConsistencyError(MixstabError):
    exit_code = ExitCode.NUMERICAL_FAILURE

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class WeakCouplingWarning(UserWarning):
    """gamma_1d above the weak-coupling threshold."""


class AsymptoticRangeWarning(UserWarning):
    """Asymptotic droplet form used with dg/g too large."""


class UnvalidatedTemperatureWarning(UserWarning):
    """Finite-temperature integrands are not validated."""


class UsageError(MixstabError):
    exit_code = ExitCode.USAGE
