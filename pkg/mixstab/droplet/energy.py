"""
Branch energy landscapes E(n) of a balanced mixture near the droplet regime, dg = g12 + g.

Every form is a power law E(n) = alpha n^2 - A n^(3/2) + Q n with alpha = dg; the full form
evaluates the closed-form fluctuations at gamma_1d(n) and the asymptotic forms keep the
leading (optionally first-order corrected) LHY amplitude with Q = 0.
"""

import dataclasses
import math
from typing import Dict, Optional, Tuple
import warnings

from mixstab.constants import A_M, A_N, ASYMPTOTIC_DG_RATIO
from mixstab.errors import AsymptoticRangeWarning, ParameterError
from mixstab.fluctuations import closed_form_intraspecies, lhy_coefficient
from mixstab.model import BranchLabel
from mixstab.model.params import lieb_liniger

FULL = "full"
ASYMPTOTIC = "asymptotic"
ASYMPTOTIC_CORRECTED = "asymptotic_corrected"
FORMS = (FULL, ASYMPTOTIC, ASYMPTOTIC_CORRECTED)
COEFF_MODES = ("exact", "paper_rounded")


@dataclasses.dataclass(frozen=True)
class DropletConfig:
    dg: float
    m: float = 1.0
    hbar: float = 1.0
    g: float = 1.0
    branch: BranchLabel = BranchLabel.MINUS
    correlated: bool = True
    form: str = ASYMPTOTIC
    lhy_coeff_mode: str = "exact"

    def __post_init__(self):
        for name in ("m", "hbar", "g"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name}: {name} > 0 required, got {getattr(self, name)!r}")
        if not 0.0 <= self.dg <= 2.0 * self.g:
            raise ParameterError(f"dg: 0 <= dg <= 2 g required, got dg={self.dg!r} g={self.g!r}")
        if self.form not in FORMS:
            raise ParameterError(f"Invalid energy form: {self.form!r}")
        if self.lhy_coeff_mode not in COEFF_MODES:
            raise ParameterError(f"Invalid LHY coefficient mode: {self.lhy_coeff_mode!r}")

    @property
    def lam(self) -> float:
        # 1 + lambda = dg / g
        return self.dg / self.g - 1.0

    @property
    def ratio(self) -> float:
        return self.dg / self.g

    def replace(self, **changes) -> "DropletConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, object]:
        out = dataclasses.asdict(self)
        out["branch"] = str(self.branch)
        return out


@dataclasses.dataclass(frozen=True)
class PowerLawEnergy:
    alpha: float
    amplitude: float
    linear: float = 0.0

    def __call__(self, n: float) -> float:
        return self.alpha * n * n - self.amplitude * n * math.sqrt(n) + self.linear * n

    def derivative(self, n: float) -> float:
        return 2.0 * self.alpha * n - 1.5 * self.amplitude * math.sqrt(n) + self.linear

    def second_derivative(self, n: float) -> float:
        return 2.0 * self.alpha - 0.75 * self.amplitude / math.sqrt(n)

    def stationary_point(self) -> Optional[Tuple[float, float]]:
        """
        The local minimum n* = ((3A + sqrt(9A^2 - 32 alpha Q)) / (8 alpha))^2 and E(n*), or None
        when E has no interior minimum on n > 0.
        """
        a, amp, q = self.alpha, self.amplitude, self.linear
        if not a > 0:
            return None
        disc = 9.0 * amp * amp - 32.0 * a * q
        if disc < 0:
            return None
        root = (3.0 * amp + math.sqrt(disc)) / (8.0 * a)
        if not root > 0:
            return None
        n_star = root * root
        if q == 0.0:
            # E* = -alpha n*^2 / 3
            return n_star, -a * n_star * n_star / 3.0
        return n_star, self(n_star)


def _radicand(cfg: DropletConfig) -> float:
    # 1 -/+ lambda: 2 - dg/g on the minus branch, dg/g on the plus branch
    return 1.0 + cfg.branch.sign * cfg.lam


def _weights(cfg: DropletConfig) -> Tuple[float, float]:
    """Weights of the LHY term 2(N~ + M~) and the quadratic term N~^2 + M~^2, relative to g n^2."""
    if cfg.correlated:
        return _radicand(cfg), cfg.ratio
    return 1.0, 1.0


def _asymptotic_amplitude(cfg: DropletConfig) -> float:
    coeff = lhy_coefficient(cfg.lhy_coeff_mode) * math.sqrt(cfg.m) / cfg.hbar
    d = cfg.ratio
    corrected = cfg.form == ASYMPTOTIC_CORRECTED
    if cfg.branch is BranchLabel.MINUS:
        if cfg.correlated:
            factor = math.sqrt(8.0) * ((1.0 - 0.75 * d) if corrected else 1.0)
        else:
            factor = math.sqrt(2.0) * ((1.0 - 0.25 * d) if corrected else 1.0)
        return factor * coeff * cfg.g ** 1.5
    if cfg.correlated:
        return coeff * cfg.dg ** 1.5
    return coeff * cfg.g * math.sqrt(cfg.dg)


def energy_profile(cfg: DropletConfig) -> PowerLawEnergy:
    if cfg.form == FULL:
        weight, quadratic = _weights(cfg)
        r = _radicand(cfg)
        coeff = lhy_coefficient("exact") * math.sqrt(cfg.m) / cfg.hbar
        amplitude = weight * math.sqrt(r) * coeff * cfg.g ** 1.5
        linear = quadratic * r * (A_N * A_N + A_M * A_M) * cfg.m * cfg.g * cfg.g / (cfg.hbar * cfg.hbar)
        return PowerLawEnergy(alpha=cfg.dg, amplitude=amplitude, linear=linear)
    if cfg.ratio > ASYMPTOTIC_DG_RATIO:
        warnings.warn(
            f"dg/g={cfg.ratio:.3g} exceeds {ASYMPTOTIC_DG_RATIO}: asymptotic droplet forms are not reliable",
            AsymptoticRangeWarning,
            stacklevel=3,
        )
    return PowerLawEnergy(alpha=cfg.dg, amplitude=_asymptotic_amplitude(cfg))


def _check_density(n: float) -> None:
    if not n > 0:
        raise ParameterError(f"n must be positive, got {n!r}")


def energy_full(n: float, cfg: DropletConfig) -> float:
    """g n^2 [(1 + lambda) + 2 w (N~ + M~) + q (N~^2 + M~^2)] with the fluctuations evaluated at gamma_1d(n)."""
    _check_density(n)
    gamma = lieb_liniger(cfg.m, cfg.g, n, cfg.hbar, warn=False)
    nt, mt = closed_form_intraspecies(cfg.branch, cfg.lam, gamma)
    weight, quadratic = _weights(cfg)
    scale = cfg.g * n * n
    return scale * (cfg.ratio + 2.0 * weight * (nt + mt) + quadratic * (nt * nt + mt * mt))


def energy_asymptotic(n: float, cfg: DropletConfig) -> float:
    _check_density(n)
    if cfg.form == FULL:
        cfg = cfg.replace(form=ASYMPTOTIC)
    return energy_profile(cfg)(n)


def energy(n: float, cfg: DropletConfig) -> float:
    if cfg.form == FULL:
        return energy_full(n, cfg)
    return energy_asymptotic(n, cfg)


def energy_terms(n: float, cfg: DropletConfig) -> Tuple[float, float, float]:
    """(mean field, LHY, quadratic fluctuation) parts of E(n) for the configured form."""
    _check_density(n)
    profile = energy_profile(cfg)
    return profile.alpha * n * n, -profile.amplitude * n * math.sqrt(n), profile.linear * n
