import dataclasses
import math
from typing import Callable, Tuple

from scipy import optimize

from mixstab.constants import MINIMIZE_TOL
from mixstab.errors import BracketError


@dataclasses.dataclass(frozen=True)
class MinimizeResult:
    x_star: float
    f_star: float
    iterations: int
    bracket: Tuple[float, float]
    converged: bool
    # x_star is away from both bracket ends
    interior: bool = True


def minimize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = MINIMIZE_TOL,
    maxiter: int = 500,
) -> MinimizeResult:
    """Bounded Brent minimization (golden section with parabolic steps) of a unimodal f on [lo, hi]."""
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise BracketError(lo, hi)

    xatol = tol * (1.0 + min(abs(lo), abs(hi)))
    res = optimize.minimize_scalar(
        f, bounds=(lo, hi), method="bounded", options={"xatol": xatol, "maxiter": maxiter}
    )
    x_star = float(res.x)
    # the bounded method cannot land exactly on an end point; closeness signals a monotone f
    edge = 10.0 * (xatol + math.sqrt(2.2e-16) * abs(x_star))
    interior = (x_star - lo) > edge and (hi - x_star) > edge
    return MinimizeResult(
        x_star=x_star,
        f_star=float(res.fun),
        iterations=int(res.nfev),
        bracket=(float(lo), float(hi)),
        converged=bool(res.success) and interior,
        interior=interior,
    )
