import dataclasses
import logging
import math
from typing import Callable, Dict, NamedTuple
import warnings

from mixstab.bogoliubov.dispersion import branch_gap
from mixstab.errors import InstabilityError, ParameterError, UnvalidatedTemperatureWarning
from mixstab.model import BranchLabel, SymmetricParams
from mixstab.model.params import lieb_liniger
from mixstab.numerics import QuadratureResult, QuadratureSettings, integrate_semi_infinite

logger = logging.getLogger(__name__)

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"


@dataclasses.dataclass(frozen=True)
class FluctuationQuadratureSettings:
    quad: QuadratureSettings = QuadratureSettings()
    # energy in units of k_B
    temperature: float = 0.0
    mode: str = CLOSED_FORM

    def __post_init__(self):
        if self.temperature < 0:
            raise ParameterError(f"temperature must be non-negative, got {self.temperature!r}")
        if self.mode not in (CLOSED_FORM, QUADRATURE):
            raise ParameterError(f"Invalid fluctuation mode: {self.mode!r}")


class IntraspeciesQuadrature(NamedTuple):
    nt: float
    mt: float
    sum_ir_safe: float
    diagnostics: Dict[str, float]


def _bose(w: float, t: float) -> float:
    x = w / t
    # expm1 overflows past ~709
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


class _Integrands:
    """
    Reduced integrands of one branch in the dimensionless wavenumber q = k / k_h,
    k_h = sqrt(m g n_c) / hbar, so that eps = q^2 / 2 and omega~ = sqrt(eps (eps + 2 c)).
    """

    def __init__(self, gap: float, temperature_tilde: float):
        self.c = gap
        self.t = temperature_tilde

    def _parts(self, q: float):
        eps = 0.5 * q * q
        c = self.c
        w = math.sqrt(eps * (eps + 2.0 * c))
        if self.t > 0.0:
            f = _bose(w, self.t)
        else:
            f = 0.0
        return eps, w, f

    def normal(self, q: float) -> float:
        eps, w, f = self._parts(q)
        c = self.c
        v2 = c * c / (2.0 * w * (eps + c + w))
        if f == 0.0:
            return v2
        return f * (1.0 + v2) + (1.0 + f) * v2

    def anomalous(self, q: float) -> float:
        eps, w, f = self._parts(q)
        uv = self.c / (2.0 * w)
        return -(1.0 + 2.0 * f) * uv

    def ir_safe(self, q: float) -> float:
        """v^2 - u v (+ thermal part), finite at q = 0."""
        eps = 0.5 * q * q
        c = self.c
        root = math.sqrt(eps + 2.0 * c)
        value = 0.0 if c == 0.0 else -c / ((math.sqrt(eps) + root) * root)
        if self.t > 0.0 and q > 0.0:
            w = math.sqrt(eps) * root
            f = _bose(w, self.t)
            # (u - v)^2 = eps / omega
            value += f * eps / w
        return value


def _reduced_prefactor(sym: SymmetricParams) -> float:
    # (1/pi) * k_h / n_c = gamma_1d(n_c) / pi
    return lieb_liniger(sym.m, sym.g, sym.nc, sym.hbar, warn=False) / math.pi


def healing_wavenumber(sym: SymmetricParams) -> float:
    """sqrt(4 m g n_c) / hbar, the scale of the tail map."""
    return math.sqrt(4.0 * sym.m * sym.g * sym.nc) / sym.hbar


def ir_safe_closed_form(sym: SymmetricParams, branch: BranchLabel, f12: float = 0.0) -> float:
    """(1/2pi) int dk (v^2 - u v) / n_c = -gamma_1d(n_c) sqrt(c~) / pi at zero temperature."""
    gap = branch_gap(branch, sym.lam, f12)
    return -_reduced_prefactor(sym) * math.sqrt(gap)


def _integrate(f: Callable[[float], float], settings: QuadratureSettings, q_min: float) -> QuadratureResult:
    # q is measured in units of k_h; the tail map is centred on the healing scale q = 2
    return integrate_semi_infinite(f, settings.replace(k_min=q_min), scale=2.0)


def quadrature_intraspecies(
    sym: SymmetricParams,
    branch: BranchLabel,
    f12: float = 0.0,
    settings: FluctuationQuadratureSettings = FluctuationQuadratureSettings(mode=QUADRATURE),
    individual: bool = True,
) -> IntraspeciesQuadrature:
    """
    Quadrature of the 1D momentum sums (1/2pi) int_{-inf}^{inf} dk of v^2 and -u v, reduced by n_c.

    Individually the v^2 and u v integrals diverge as 1/k at k -> 0; they are evaluated with the
    infrared cutoff ``settings.quad.k_min`` (a physical wavenumber) and their sensitivity to
    doubling it is reported. The combination v^2 - u v is finite at k = 0 and is integrated from
    zero. ``individual=False`` skips the cutoff-dependent parts.
    """
    gap = branch_gap(branch, sym.lam, f12)
    if gap < 0:
        raise InstabilityError(f"branch {branch} has imaginary frequencies (gap={gap!r})")
    if settings.temperature > 0:
        warnings.warn(
            "finite-temperature fluctuation integrands are not validated",
            UnvalidatedTemperatureWarning,
            stacklevel=2,
        )
    integrands = _Integrands(gap, settings.temperature / (sym.g * sym.nc))
    prefactor = _reduced_prefactor(sym)
    k_h = math.sqrt(sym.m * sym.g * sym.nc) / sym.hbar
    quad = settings.quad
    quad_q = quad.replace(k_min=0.0, k_max=None if quad.k_max is None else quad.k_max / k_h)

    ir_safe = _integrate(integrands.ir_safe, quad_q, 0.0)
    sum_ir_safe = prefactor * ir_safe.value
    diagnostics: Dict[str, float] = {
        "k_min": quad.k_min,
        "healing_wavenumber": healing_wavenumber(sym),
        "ir_safe_error": prefactor * ir_safe.error,
    }

    nt = mt = float("nan")
    if individual:
        if not quad.k_min > 0:
            raise ParameterError("individual N~ and M~ need a positive infrared cutoff k_min")
        q_min = quad.k_min / k_h
        nt = prefactor * _integrate(integrands.normal, quad_q, q_min).value
        mt = prefactor * _integrate(integrands.anomalous, quad_q, q_min).value
        nt_2 = prefactor * _integrate(integrands.normal, quad_q, 2.0 * q_min).value
        mt_2 = prefactor * _integrate(integrands.anomalous, quad_q, 2.0 * q_min).value
        diagnostics.update({
            "nt_sensitivity": nt - nt_2,
            "mt_sensitivity": mt - mt_2,
            "nt_at_2k_min": nt_2,
            "mt_at_2k_min": mt_2,
        })
    logger.debug(f"quadrature branch={branch} gap={gap!r}: nt={nt!r} mt={mt!r} ir_safe={sum_ir_safe!r}")
    return IntraspeciesQuadrature(nt=nt, mt=mt, sum_ir_safe=sum_ir_safe, diagnostics=diagnostics)
