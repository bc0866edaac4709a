"""
Energy density of the correlated mixture and its derivatives with respect to the condensed densities.

Derivatives follow one convention throughout: the unreduced fluctuations n~_ij, m~_ij are held fixed
and n_i = nc_i + n~_ii, so the reduced N~_ij = n~_ij / sqrt(nc_i nc_j) rescale with nc.
"""

from typing import Dict, Tuple

import numpy as np

from mixstab.constants import FD_REL_STEP
from mixstab.errors import ParameterError
from mixstab.model import FluctuationSet, MixtureParams
from mixstab.model.params import check_valid, reduce, unreduce
from mixstab.numerics import fd_gradient_hessian


def _correction(nt: float, mt: float) -> float:
    return 2.0 * (nt + mt) + nt * nt + mt * mt


def _energy(params: MixtureParams, fl: FluctuationSet) -> float:
    p = params
    mean_field = 0.5 * p.g11 * p.n1 ** 2 + 0.5 * p.g22 * p.n2 ** 2 + p.g12 * p.n1 * p.n2
    return (
        mean_field
        + 0.5 * p.g11 * p.nc1 ** 2 * _correction(fl.nt11, fl.mt11)
        + 0.5 * p.g22 * p.nc2 ** 2 * _correction(fl.nt22, fl.mt22)
        + p.g12 * p.nc1 * p.nc2 * _correction(fl.nt12, fl.mt12)
    )


def energy_density(params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> float:
    check_valid(params)
    return _energy(params, fl)


def chemical_potentials(params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> Tuple[float, float]:
    check_valid(params)
    p = params
    mu1 = p.g11 * p.n1 + p.g12 * p.n2 + p.g11 * p.nc1 * (fl.nt11 + fl.mt11) + p.g12 * p.nc2 * fl.f12
    mu2 = p.g22 * p.n2 + p.g12 * p.n1 + p.g22 * p.nc2 * (fl.nt22 + fl.mt22) + p.g12 * p.nc1 * fl.f12
    return mu1, mu2


def generalized_couplings(params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> Tuple[float, float, float]:
    """(G1, G2, G12): the analytic Hessian of the energy density in (nc1, nc2)."""
    check_valid(params)
    p = params
    half = 0.5 * fl.f12
    g1 = p.g11 - p.g12 * half * p.nc2 / p.nc1
    g2 = p.g22 - p.g12 * half * p.nc1 / p.nc2
    g12 = p.g12 * (1.0 + half)
    return g1, g2, g12


def energy_at_condensates(params: MixtureParams, fl: FluctuationSet):
    """E as a function of (nc1, nc2) with the unreduced fluctuations held fixed."""
    fixed: Dict[str, float] = unreduce(fl, params)

    def f(x: np.ndarray) -> float:
        nc1, nc2 = float(x[0]), float(x[1])
        moved = params.replace(nc1=nc1, nc2=nc2, n1=nc1 + fixed["n11"], n2=nc2 + fixed["n22"])
        return _energy(moved, reduce(fixed, nc1, nc2))

    return f


def _fd(params: MixtureParams, fl: FluctuationSet) -> Tuple[np.ndarray, np.ndarray]:
    check_valid(params)
    for name in ("nc1", "nc2"):
        if not getattr(params, name) > 0:
            raise ParameterError(f"{name}: positive condensate density required for derivatives")
    x = (params.nc1, params.nc2)
    # keep steps inside nc > 0
    h = [min(FD_REL_STEP * (1.0 + abs(v)), 0.25 * v) for v in x]
    return fd_gradient_hessian(energy_at_condensates(params, fl), x, h)


def gradient_fd(params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> np.ndarray:
    return _fd(params, fl)[0]


def hessian_fd(params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> np.ndarray:
    return _fd(params, fl)[1]


def relative_disagreement(numeric: np.ndarray, analytic: np.ndarray) -> float:
    scale = float(np.max(np.abs(analytic)))
    if scale == 0.0:
        return float(np.max(np.abs(numeric)))
    return float(np.max(np.abs(numeric - analytic))) / scale
