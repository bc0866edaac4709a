import dataclasses
import logging
import math
from typing import Callable, NamedTuple, Optional

from scipy import integrate

from mixstab.constants import QUAD_ABS_TOL, QUAD_MAX_SUBDIVISIONS, QUAD_REL_TOL
from mixstab.errors import ParameterError, QuadratureError

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = QUAD_REL_TOL
    abs_tol: float = QUAD_ABS_TOL
    max_subdivisions: int = QUAD_MAX_SUBDIVISIONS
    # infrared cutoff
    k_min: float = 0.0
    # None means the mapped infinity
    k_max: Optional[float] = None

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ParameterError("quadrature tolerances must be positive")
        if self.k_min < 0:
            raise ParameterError(f"k_min must be non-negative, got {self.k_min!r}")
        if self.k_max is not None and not self.k_max > self.k_min:
            raise ParameterError(f"k_max={self.k_max!r} must exceed k_min={self.k_min!r}")
        if self.max_subdivisions < 1:
            raise ParameterError("max_subdivisions must be at least 1")

    def replace(self, **changes) -> "QuadratureSettings":
        return dataclasses.replace(self, **changes)


class QuadratureResult(NamedTuple):
    value: float
    error: float
    evaluations: int


def integrate_semi_infinite(
    f: Callable[[float], float],
    settings: QuadratureSettings = QuadratureSettings(),
    scale: float = 1.0,
) -> QuadratureResult:
    """
    Integrate f over [k_min, k_max), k_max defaulting to infinity.

    The semi-infinite tail is mapped with k = scale * t / (1 - t), t in [t_min, 1), so the
    integrand seen by the adaptive Gauss-Kronrod rule is f(k) * scale / (1 - t)^2. Integrands
    decaying at least as 1/k^2 stay bounded at t -> 1. ``scale`` should be the integrand's
    characteristic wavenumber.
    """
    if not scale > 0:
        raise ParameterError(f"scale must be positive, got {scale!r}")

    if settings.k_max is not None:
        integrand = f
        lo, hi = settings.k_min, settings.k_max
    else:
        def integrand(t: float) -> float:
            one_minus = 1.0 - t
            if one_minus <= 0.0:
                return 0.0
            return f(scale * t / one_minus) * scale / (one_minus * one_minus)

        lo, hi = settings.k_min / (scale + settings.k_min), 1.0

    out = integrate.quad(
        integrand, lo, hi,
        epsabs=settings.abs_tol,
        epsrel=settings.rel_tol,
        limit=settings.max_subdivisions,
        full_output=1,
    )
    value, error, info = out[0], out[1], out[2]
    if len(out) > 3:
        raise QuadratureError(f"quadrature did not converge: {out[3].splitlines()[0]}", value, error)
    if not math.isfinite(value):
        raise QuadratureError("quadrature produced a non-finite value", value, error)
    logger.debug(f"quad [{lo}, {hi}] value={value!r} error={error!r} neval={info['neval']}")
    return QuadratureResult(value=float(value), error=float(error), evaluations=int(info["neval"]))
