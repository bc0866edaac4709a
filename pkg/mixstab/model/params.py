import logging
import math
from typing import Any, Dict, List, Mapping, Union
import warnings

from mixstab.constants import WEAK_COUPLING_GAMMA
from mixstab.errors import AsymmetryError, ParameterError, WeakCouplingWarning
from mixstab.model import FluctuationSet, MixtureParams, SymmetricParams

logger = logging.getLogger(__name__)

MIXTURE_KEYS = ("m1", "m2", "g11", "g22", "g12", "n1", "n2", "nc1", "nc2")
SYMMETRIC_KEYS = ("m", "g", "lambda", "n", "nc")


def validate(params: MixtureParams) -> List[str]:
    """Return the violated invariants; an empty list means the parameters are admissible."""
    violations = []
    for name in ("m1", "m2", "hbar", "n1", "n2", "nc1", "nc2"):
        value = getattr(params, name)
        if not math.isfinite(value):
            violations.append(f"{name}: must be finite")
    for name in ("g11", "g22", "g12"):
        if not math.isfinite(getattr(params, name)):
            violations.append(f"{name}: must be finite")
    for name in ("m1", "m2", "hbar", "n1", "n2", "nc1", "nc2"):
        if getattr(params, name) <= 0:
            violations.append(f"{name}: {name} > 0")
    for i in (1, 2):
        nc = getattr(params, f"nc{i}")
        n = getattr(params, f"n{i}")
        if nc > n:
            violations.append(f"nc{i}: nc{i} ≤ n{i}")
    return violations


def check_valid(params: MixtureParams, require_repulsive: bool = False) -> None:
    violations = validate(params)
    if require_repulsive:
        for name in ("g11", "g22"):
            if not getattr(params, name) > 0:
                violations.append(f"{name}: {name} > 0 required for spectra and fluctuations")
    if violations:
        raise ParameterError("invalid parameters: " + "; ".join(violations))


def reduce_symmetric(params: MixtureParams) -> SymmetricParams:
    for a, b in (("m1", "m2"), ("g11", "g22"), ("n1", "n2"), ("nc1", "nc2")):
        va, vb = getattr(params, a), getattr(params, b)
        if va != vb:
            raise AsymmetryError(a, b, va, vb)
    if not params.g11 > 0:
        raise ParameterError(f"g: g > 0 required for the balanced reduction, got {params.g11!r}")
    return SymmetricParams(
        m=params.m1,
        g=params.g11,
        lam=params.g12 / params.g11,
        n=params.n1,
        nc=params.nc1,
        hbar=params.hbar,
    )


def embed_symmetric(sym: SymmetricParams) -> MixtureParams:
    return MixtureParams(
        m1=sym.m, m2=sym.m,
        g11=sym.g, g22=sym.g, g12=sym.lam * sym.g,
        n1=sym.n, n2=sym.n,
        nc1=sym.nc, nc2=sym.nc,
        hbar=sym.hbar,
    )


def lieb_liniger(m: float, g: float, n: float, hbar: float = 1.0, warn: bool = True) -> float:
    if not g > 0:
        raise ParameterError(f"g: g > 0 required for the Lieb-Liniger parameter, got {g!r}")
    if not n > 0:
        raise ParameterError(f"n: n > 0 required for the Lieb-Liniger parameter, got {n!r}")
    gamma = math.sqrt(m * g / (hbar * hbar * n))
    if warn and gamma > WEAK_COUPLING_GAMMA:
        warnings.warn(
            f"gamma_1d={gamma:.6g} exceeds {WEAK_COUPLING_GAMMA}: outside the weak-coupling Bogoliubov regime",
            WeakCouplingWarning,
            stacklevel=3,
        )
    return gamma


def gamma_1d(sym: SymmetricParams, warn: bool = True) -> float:
    """sqrt(m g / (hbar^2 n)), evaluated with the total density n."""
    return lieb_liniger(sym.m, sym.g, sym.n, sym.hbar, warn=warn)


def unreduce(fl: FluctuationSet, params: MixtureParams) -> Dict[str, float]:
    """Unreduced n~_ij, m~_ij = reduced value times sqrt(nc_i nc_j)."""
    s11 = params.nc1
    s22 = params.nc2
    s12 = math.sqrt(params.nc1 * params.nc2)
    return {
        "n11": fl.nt11 * s11, "n22": fl.nt22 * s22, "n12": fl.nt12 * s12,
        "m11": fl.mt11 * s11, "m22": fl.mt22 * s22, "m12": fl.mt12 * s12,
    }


def reduce(unreduced: Mapping[str, float], nc1: float, nc2: float) -> FluctuationSet:
    s12 = math.sqrt(nc1 * nc2)
    return FluctuationSet(
        nt11=unreduced["n11"] / nc1, nt22=unreduced["n22"] / nc2, nt12=unreduced["n12"] / s12,
        mt11=unreduced["m11"] / nc1, mt22=unreduced["m22"] / nc2, mt12=unreduced["m12"] / s12,
    )


def params_from_dict(data: Mapping[str, Any]) -> Union[MixtureParams, SymmetricParams]:
    """Build parameters from the JSON object: full keys or the symmetric shorthand."""
    from mixstab.protocol.config_protocol import MixtureConfig, SymmetricConfig

    if any(k in data for k in MIXTURE_KEYS):
        return MixtureConfig.parse_obj(data).to_params()
    if any(k in data for k in SYMMETRIC_KEYS):
        return SymmetricConfig.parse_obj(data).to_params()
    raise ParameterError("parameter object needs either the full or the symmetric key set")
