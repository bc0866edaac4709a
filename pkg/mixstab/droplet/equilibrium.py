import dataclasses
import logging
import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import optimize

from mixstab.droplet.energy import DropletConfig, energy, energy_profile
from mixstab.errors import ParameterError
from mixstab.numerics import MinimizeResult, minimize_scalar

logger = logging.getLogger(__name__)

# default bracket around the analytic stationary point
BRACKET_LO = 1e-3
BRACKET_HI = 10.0
# relative half-width searched for a sign change of E' around the Brent minimum
POLISH_WINDOW = 1e-3


@dataclasses.dataclass(frozen=True)
class Equilibrium:
    n_star: float
    e_star: float
    # False when no interior minimum exists on the bracket
    bounded: bool
    minimum: MinimizeResult
    closed_form_n_star: Optional[float] = None
    closed_form_e_star: Optional[float] = None

    @property
    def n_deviation(self) -> Optional[float]:
        if self.closed_form_n_star is None:
            return None
        return abs(self.n_star - self.closed_form_n_star) / abs(self.closed_form_n_star)

    @property
    def e_deviation(self) -> Optional[float]:
        if self.closed_form_e_star is None or self.closed_form_e_star == 0.0:
            return None
        return abs(self.e_star - self.closed_form_e_star) / abs(self.closed_form_e_star)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_star": self.n_star,
            "e_star": self.e_star,
            "bounded": self.bounded,
            "closed_form_n_star": self.closed_form_n_star,
            "closed_form_e_star": self.closed_form_e_star,
            "n_deviation": self.n_deviation,
            "e_deviation": self.e_deviation,
            "iterations": self.minimum.iterations,
            "bracket": list(self.minimum.bracket),
        }


def _polish(cfg: DropletConfig, x: float, lo: float, hi: float) -> float:
    """Root of E'(n) next to the Brent minimum, when E' changes sign there."""
    profile = energy_profile(cfg)
    a = max(lo, x * (1.0 - POLISH_WINDOW))
    b = min(hi, x * (1.0 + POLISH_WINDOW))
    fa, fb = profile.derivative(a), profile.derivative(b)
    if not (fa < 0.0 < fb):
        return x
    return float(optimize.brentq(profile.derivative, a, b, xtol=1e-300, rtol=4.0 * np.finfo(float).eps))


def equilibrium(cfg: DropletConfig, n_bracket: Optional[Tuple[float, float]] = None) -> Equilibrium:
    """
    Minimum of the configured energy form. The default bracket is [1e-3, 10] times the analytic
    stationary point; a form without one (dg = 0) needs an explicit bracket.
    """
    stationary = energy_profile(cfg).stationary_point()
    if n_bracket is None:
        if stationary is None:
            raise ParameterError("energy form has no stationary point: an explicit density bracket is required")
        n_bracket = (BRACKET_LO * stationary[0], BRACKET_HI * stationary[0])
    lo, hi = n_bracket
    if not lo > 0:
        raise ParameterError(f"density bracket must be positive, got {n_bracket!r}")

    result = minimize_scalar(lambda n: energy(n, cfg), lo, hi)
    n_star = result.x_star
    if result.interior:
        n_star = _polish(cfg, n_star, lo, hi)
    e_star = energy(n_star, cfg)
    if not result.interior:
        logger.info(f"no interior minimum on [{lo!r}, {hi!r}] for {cfg}")

    cf_n = cf_e = None
    if stationary is not None:
        cf_n, cf_e = stationary
    return Equilibrium(
        n_star=n_star,
        e_star=e_star,
        bounded=result.interior,
        minimum=dataclasses.replace(result, x_star=n_star, f_star=e_star),
        closed_form_n_star=cf_n,
        closed_form_e_star=cf_e,
    )


@dataclasses.dataclass(frozen=True)
class DropletCurve:
    samples: List[Tuple[float, float]]
    minimum: Optional[MinimizeResult]
    closed_form_n_star: Optional[float]
    closed_form_e_star: Optional[float]
    config: DropletConfig


@dataclasses.dataclass(frozen=True)
class FigureCurves:
    correlated: DropletCurve
    uncorrelated: DropletCurve

    def rows(self) -> List[Tuple[float, float, float]]:
        return [
            (n, e_corr, e_uncorr)
            for (n, e_corr), (_, e_uncorr) in zip(self.correlated.samples, self.uncorrelated.samples)
        ]


def density_grid(lo: float, hi: float, points: int, log: bool = False) -> np.ndarray:
    if points < 1:
        raise ParameterError(f"grid needs at least one point, got {points!r}")
    if not lo > 0 or hi < lo or (points > 1 and not hi > lo):
        raise ParameterError(f"invalid density grid [{lo!r}, {hi!r}]")
    if points == 1:
        return np.array([float(lo)])
    if log:
        return np.geomspace(lo, hi, points)
    return np.linspace(lo, hi, points)


def _curve(cfg: DropletConfig, grid: np.ndarray) -> DropletCurve:
    samples = [(float(n), energy(float(n), cfg)) for n in grid]
    stationary = energy_profile(cfg).stationary_point()
    minimum = None
    if grid.size > 1:
        minimum = equilibrium(cfg, (float(grid[0]), float(grid[-1]))).minimum
    return DropletCurve(
        samples=samples,
        minimum=minimum,
        closed_form_n_star=None if stationary is None else stationary[0],
        closed_form_e_star=None if stationary is None else stationary[1],
        config=cfg,
    )


def figure_curve(cfg: DropletConfig, n_grid: Tuple[float, float, int], log: bool = False) -> FigureCurves:
    """Correlated and uncorrelated curves of one branch on a shared density grid."""
    grid = density_grid(*n_grid, log=log)
    return FigureCurves(
        correlated=_curve(cfg.replace(correlated=True), grid),
        uncorrelated=_curve(cfg.replace(correlated=False), grid),
    )


def minima_summary(cfg: DropletConfig, n_bracket: Optional[Tuple[float, float]] = None) -> Dict[str, Any]:
    corr = equilibrium(cfg.replace(correlated=True), n_bracket)
    uncorr = equilibrium(cfg.replace(correlated=False), n_bracket)
    return {
        "branch": str(cfg.branch),
        "n_star_corr": corr.n_star,
        "e_star_corr": corr.e_star,
        "n_star_uncorr": uncorr.n_star,
        "e_star_uncorr": uncorr.e_star,
        "bounded": corr.bounded and uncorr.bounded,
        "ratios": {
            "n": corr.n_star / uncorr.n_star,
            "e": corr.e_star / uncorr.e_star if uncorr.e_star != 0.0 else math.nan,
        },
        "closed_form": {
            "n_star_corr": corr.closed_form_n_star,
            "e_star_corr": corr.closed_form_e_star,
            "n_star_uncorr": uncorr.closed_form_n_star,
            "e_star_uncorr": uncorr.closed_form_e_star,
        },
        "config": cfg.to_dict(),
    }
