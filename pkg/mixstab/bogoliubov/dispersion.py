"""Closed-form branches of the balanced mixture, in units of g n_c (frequencies) and g n_c (kinetic energy)."""

import cmath
import dataclasses
import math
from typing import Iterable, List, Tuple

from mixstab.errors import InstabilityError, ParameterError
from mixstab.model import BranchLabel, SymmetricParams


@dataclasses.dataclass(frozen=True)
class DispersionPoint:
    # hbar^2 k^2 / (2 m g n_c)
    eps: float
    # hbar omega / (g n_c)
    omega_tilde: complex

    def __post_init__(self):
        if self.eps < 0:
            raise ParameterError(f"eps must be non-negative, got {self.eps!r}")


def _check_eps(eps: float) -> None:
    if not eps >= 0:
        raise ParameterError(f"eps must be non-negative, got {eps!r}")


def branch_gap(branch: BranchLabel, lam: float, f12: float = 0.0) -> float:
    """Dimensionless gap c~ of a branch: 1 - lambda - lambda*f12 (minus) or 1 + lambda (plus)."""
    if branch is BranchLabel.MINUS:
        return 1.0 - lam - lam * f12
    return 1.0 + lam


def _root(radicand: float) -> complex:
    # principal root: a negative radicand gives +i sqrt(|r|)
    return cmath.sqrt(radicand)


def dispersion_minus(eps: float, lam: float, f12: float = 0.0) -> complex:
    _check_eps(eps)
    return _root(eps * (eps + 2.0 * (1.0 - lam) - 2.0 * lam * f12))


def dispersion_plus(eps: float, lam: float) -> complex:
    _check_eps(eps)
    return _root(eps * (eps + 2.0 * (1.0 + lam)))


def dispersion(eps: float, branch: BranchLabel, lam: float, f12: float = 0.0) -> complex:
    if branch is BranchLabel.MINUS:
        return dispersion_minus(eps, lam, f12)
    return dispersion_plus(eps, lam)


def branch_points(eps_grid: Iterable[float], branch: BranchLabel, lam: float, f12: float = 0.0) -> List[DispersionPoint]:
    return [DispersionPoint(eps=float(eps), omega_tilde=dispersion(float(eps), branch, lam, f12)) for eps in eps_grid]


def symmetry_breaking_gap(eps: float, lam: float, f12: float) -> complex:
    """
    omega~_-(eps, -lambda, f12) - omega~_+(eps, lambda); zero when f12 = 0.

    Complex when the mirrored minus branch is dynamically unstable.
    """
    return dispersion_minus(eps, -lam, f12) - dispersion_plus(eps, lam)


def amplitudes_symmetric(eps: float, branch: BranchLabel, lam: float, f12: float = 0.0) -> Tuple[float, float]:
    """
    Single-branch Bogoliubov amplitudes with u^2 - v^2 = 1 and u*v = c/(2 omega).

    v^2 is evaluated as c^2 / (2 omega (eps + c + omega)), which equals (eps + c)/(2 omega) - 1/2
    without the cancellation at large eps.
    """
    if not eps > 0:
        raise ParameterError(f"eps must be positive for amplitudes, got {eps!r}")
    c = branch_gap(branch, lam, f12)
    omega = dispersion(eps, branch, lam, f12)
    if omega.imag != 0.0 or not omega.real > 0:
        raise InstabilityError(f"branch {branch} is unstable at eps={eps!r}: omega~={omega!r}")
    w = omega.real
    v2 = c * c / (2.0 * w * (eps + c + w))
    u = math.sqrt(1.0 + v2)
    v = math.copysign(math.sqrt(v2), c)
    return u, v


def lowest_branch(lam: float) -> BranchLabel:
    """omega~_- lies below omega~_+ for lambda > 0 and above it for lambda < 0; minus at lambda = 0."""
    return BranchLabel.PLUS if lam < 0 else BranchLabel.MINUS


def phonon_slope(branch: BranchLabel, lam: float, f12: float = 0.0) -> float:
    """lim omega~/sqrt(eps) as eps -> 0."""
    gap = branch_gap(branch, lam, f12)
    if gap < 0:
        raise InstabilityError(f"branch {branch} has a negative gap {gap!r}: no phonon regime")
    return math.sqrt(2.0 * gap)


def sound_velocity(sym: SymmetricParams, branch: BranchLabel, f12: float = 0.0) -> float:
    """c = sqrt(g n_c c~ / m), the slope d omega / d k at k -> 0."""
    return phonon_slope(branch, sym.lam, f12) * math.sqrt(sym.g * sym.nc / (2.0 * sym.m))


def eps_of_k(k: float, sym: SymmetricParams) -> float:
    return (sym.hbar * k) ** 2 / (2.0 * sym.m * sym.g * sym.nc)


def k_of_eps(eps: float, sym: SymmetricParams) -> float:
    _check_eps(eps)
    return math.sqrt(2.0 * sym.m * sym.g * sym.nc * eps) / sym.hbar
