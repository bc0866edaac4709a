import dataclasses
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from mixstab.bogoliubov.dispersion import dispersion_minus, dispersion_plus, eps_of_k, k_of_eps
from mixstab.constants import NORM_TOL
from mixstab.errors import ParameterError
from mixstab.model import BranchLabel, FluctuationSet, MixtureParams
from mixstab.model.params import check_valid, reduce_symmetric
from mixstab.numerics import eigen_4x4

logger = logging.getLogger(__name__)

GENERAL = "general"

# largest projection ratio still read as a pure branch
LABEL_RATIO = 1e-3

# (U1, V1, U2, V2) -> (U1, U2, V1, V2)
_BLOCK_ORDER = [0, 2, 1, 3]


@dataclasses.dataclass(frozen=True)
class BdgMode:
    k: float
    # rad/time; complex when the mode is dynamically unstable
    omega: complex
    u1: float
    v1: float
    u2: float
    v2: float
    norm: float
    branch: Union[BranchLabel, str]
    unstable: bool = False

    def branch_name(self) -> str:
        return str(self.branch)


def _blocks(k: float, params: MixtureParams, fl: FluctuationSet) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    The matrix in (U1, U2, V1, V2) order reads [[A, -B], [B, -A]].

    Returns A, B and the exact A - B, A + B: the diagonal of A contains g_ii n_ci, which cancels
    against B and is therefore not formed by subtraction.
    """
    p = params
    kin1 = (p.hbar * k) ** 2 / (2.0 * p.m1)
    kin2 = (p.hbar * k) ** 2 / (2.0 * p.m2)
    s = math.sqrt(p.nc1 * p.nc2)
    f12 = fl.f12
    lam1 = p.g12 / p.g11
    lam2 = p.g12 / p.g22

    e1 = kin1 + p.g11 * p.nc1 * (1.0 - fl.mt11 - lam1 * (p.nc2 / p.nc1) * f12)
    e2 = kin2 + p.g22 * p.nc2 * (1.0 - fl.mt22 - lam2 * (p.nc1 / p.nc2) * f12)
    eta12 = s * (1.0 + fl.nt12)
    kappa11 = p.nc1 * (1.0 + fl.mt11)
    kappa22 = p.nc2 * (1.0 + fl.mt22)
    kappa12 = s * (1.0 + fl.mt12)

    a = np.array([[e1, p.g12 * eta12], [p.g12 * eta12, e2]])
    b = np.array([[p.g11 * kappa11, p.g12 * kappa12], [p.g12 * kappa12, p.g22 * kappa22]])
    a_minus_b = np.array([
        [kin1 - 2.0 * p.g11 * p.nc1 * fl.mt11 - p.g12 * p.nc2 * f12, p.g12 * s * (fl.nt12 - fl.mt12)],
        [p.g12 * s * (fl.nt12 - fl.mt12), kin2 - 2.0 * p.g22 * p.nc2 * fl.mt22 - p.g12 * p.nc1 * f12],
    ])
    a_plus_b = np.array([
        [kin1 + 2.0 * p.g11 * p.nc1 - p.g12 * p.nc2 * f12, p.g12 * s * (2.0 + fl.nt12 + fl.mt12)],
        [p.g12 * s * (2.0 + fl.nt12 + fl.mt12), kin2 + 2.0 * p.g22 * p.nc2 - p.g12 * p.nc1 * f12],
    ])
    return a, b, a_minus_b, a_plus_b


def bdg_matrix(k: float, params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> np.ndarray:
    """The 4x4 matrix acting on (U1, V1, U2, V2) whose eigenvalues are hbar*omega."""
    check_valid(params, require_repulsive=True)
    a, b, _, _ = _blocks(k, params, fl)
    block = np.block([[a, -b], [b, -a]])
    inverse = np.argsort(_BLOCK_ORDER)
    return block[np.ix_(inverse, inverse)]


def structured_frequencies(k: float, params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> np.ndarray:
    """
    hbar*omega of the two physical modes from (A - B)(A + B), whose eigenvalues are (hbar omega)^2.

    Principal roots: real positive for stable modes, +i|.| for unstable ones.
    """
    _, _, amb, apb = _blocks(k, params, fl)
    omega2 = np.linalg.eigvals(amb @ apb).astype(complex)
    roots = np.sqrt(omega2)
    return roots[np.lexsort((roots.imag, roots.real))]


def _phase_fixed(vec: np.ndarray) -> np.ndarray:
    idx = int(np.argmax(np.abs(vec)))
    phase = vec[idx] / abs(vec[idx])
    return vec / phase


def _balanced(params: MixtureParams, fl: FluctuationSet) -> bool:
    try:
        reduce_symmetric(params)
    except ParameterError:
        return False
    return fl.is_symmetric()


def _label(amps: np.ndarray, balanced: bool) -> Union[BranchLabel, str]:
    """
    Minus modes are antisymmetric in the species index, plus modes symmetric.

    The projections are compared with each other, not with an absolute tolerance: at small eps
    u and v are large and nearly equal. Degenerate modes (lambda = 0) mix both and stay general.
    """
    if not balanced:
        return GENERAL
    u1, v1, u2, v2 = amps
    symmetric = abs(u1 + u2) + abs(v1 + v2)
    antisymmetric = abs(u1 - u2) + abs(v1 - v2)
    if symmetric <= LABEL_RATIO * antisymmetric:
        return BranchLabel.MINUS
    if antisymmetric <= LABEL_RATIO * symmetric:
        return BranchLabel.PLUS
    return GENERAL


def solve_bdg(k: float, params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> List[BdgMode]:
    """
    Physical modes at wavenumber k, sorted by frequency.

    Positive-norm eigenvectors are normalized to sum_i (u_i^2 - v_i^2) = 1 and their negative-norm
    partners dropped. Complex-frequency pairs are kept once (Im omega > 0), flagged unstable and
    left unnormalized. Frequencies come from the structured 2x2 reduction, eigenvectors from the
    4x4 problem.
    """
    matrix = bdg_matrix(k, params, fl)
    scale = float(np.linalg.norm(matrix))
    targets = structured_frequencies(k, params, fl)
    balanced = _balanced(params, fl)

    modes = []
    for pair in eigen_4x4(matrix):
        value = pair.value
        vec = _phase_fixed(pair.vector)
        amps = vec.real
        unstable = abs(value.imag) > 1e-9 * max(scale, 1.0)
        if unstable and value.imag <= 0:
            continue
        norm = float(amps[0] ** 2 - amps[1] ** 2 + amps[2] ** 2 - amps[3] ** 2)
        if not unstable:
            if norm <= NORM_TOL * float(np.dot(amps, amps)):
                continue
            amps = amps / math.sqrt(norm)
            norm = float(amps[0] ** 2 - amps[1] ** 2 + amps[2] ** 2 - amps[3] ** 2)

        lead = amps[0] if abs(amps[0]) > 1e-12 * float(np.max(np.abs(amps))) else amps[2]
        if lead < 0:
            amps = -amps

        if unstable:
            refined = value
        else:
            refined = complex(targets[int(np.argmin(np.abs(targets - value)))])
        modes.append(BdgMode(
            k=float(k),
            omega=refined / params.hbar,
            u1=float(amps[0]), v1=float(amps[1]), u2=float(amps[2]), v2=float(amps[3]),
            norm=norm,
            branch=_label(amps, balanced),
            unstable=unstable,
        ))
    modes.sort(key=lambda mode: (mode.omega.real, mode.omega.imag))
    logger.debug(f"k={k!r}: {len(modes)} modes, omega={[m.omega for m in modes]}")
    return modes


def omega_tilde(mode: BdgMode, params: MixtureParams) -> complex:
    """hbar omega / (g11 n_c1)."""
    return mode.omega * params.hbar / (params.g11 * params.nc1)


def spectrum_truncation_gap(eps: float, params: MixtureParams, fl: FluctuationSet = FluctuationSet()) -> Dict[str, float]:
    """
    |omega~(4x4) - omega~(closed form)| per branch for balanced inputs.

    The general matrix keeps the M~ and N~12 corrections that the balanced closed form of the
    soft branch drops; this reports how far the two are apart.
    """
    sym = reduce_symmetric(params)
    k = k_of_eps(eps, sym)
    analytic = {
        BranchLabel.MINUS: dispersion_minus(eps, sym.lam, fl.f12),
        BranchLabel.PLUS: dispersion_plus(eps, sym.lam),
    }
    gaps = {str(b): float("nan") for b in analytic}
    for mode in solve_bdg(k, params, fl):
        if isinstance(mode.branch, BranchLabel):
            gaps[str(mode.branch)] = abs(omega_tilde(mode, params) - analytic[mode.branch])
    return gaps


def dispersion_rows(
    k: float,
    params: MixtureParams,
    fl: FluctuationSet = FluctuationSet(),
    general: bool = False,
) -> Tuple[float, float, complex, complex, Optional[float]]:
    """
    One CSV row (k, eps, omega~_minus, omega~_plus, deviation) in units of g11 n_c1.

    Balanced inputs use the closed forms unless ``general``; the 4x4 route then also reports the
    largest deviation from the closed forms. Unbalanced inputs always use the 4x4 solver, with
    the lower mode in the minus column.
    """
    balanced = _balanced(params, fl)
    if balanced:
        sym = reduce_symmetric(params)
        eps = eps_of_k(k, sym)
    else:
        eps = (params.hbar * k) ** 2 / (2.0 * params.m1 * params.g11 * params.nc1)
    if balanced and not general:
        return k, eps, dispersion_minus(eps, sym.lam, fl.f12), dispersion_plus(eps, sym.lam), None

    modes = solve_bdg(k, params, fl)
    by_label = {m.branch: omega_tilde(m, params) for m in modes if isinstance(m.branch, BranchLabel)}
    ordered = [omega_tilde(m, params) for m in modes]
    while len(ordered) < 2:
        ordered.append(complex("nan"))
    om_minus = by_label.get(BranchLabel.MINUS, ordered[0])
    om_plus = by_label.get(BranchLabel.PLUS, ordered[1])
    deviation = None
    if balanced:
        deviation = max(
            abs(om_minus - dispersion_minus(eps, sym.lam, fl.f12)),
            abs(om_plus - dispersion_plus(eps, sym.lam)),
        )
    return k, eps, om_minus, om_plus, deviation


def dispersion_table(
    k_grid: Sequence[float],
    params: MixtureParams,
    fl: FluctuationSet = FluctuationSet(),
    general: bool = False,
) -> List[Tuple[float, float, complex, complex, Optional[float]]]:
    return [dispersion_rows(float(k), params, fl, general) for k in sorted(k_grid)]
