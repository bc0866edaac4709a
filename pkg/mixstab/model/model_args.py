from typing import Any, Dict, Mapping, Optional, Union

from mixstab.errors import ParameterError
from mixstab.fluctuations import branch_closure, closed_form_intraspecies
from mixstab.model import BranchLabel, FluctuationSet, MixtureParams, SymmetricParams
from mixstab.model.params import MIXTURE_KEYS, SYMMETRIC_KEYS, gamma_1d, params_from_dict, reduce_symmetric


def add_mixture_args(parser):
    group = parser.add_argument_group("mixture parameters")
    for name in ("m1", "m2"):
        group.add_argument(f"--{name}", type=float, default=None, help=f"Mass of species {name[-1]} (default 1)")
    for name in ("g11", "g22", "g12"):
        group.add_argument(f"--{name}", type=float, default=None, help=f"Coupling {name}")
    for name in ("n1", "n2"):
        group.add_argument(f"--{name}", type=float, default=None, help=f"Total density of species {name[-1]} (default 1)")
    for name in ("nc1", "nc2"):
        group.add_argument(
            f"--{name}", type=float, default=None,
            help=f"Condensate density of species {name[-1]} (default: the total density)",
        )
    group.add_argument("--hbar", type=float, default=None, help="Reduced Planck constant (default 1)")

    shorthand = parser.add_argument_group("balanced shorthand")
    shorthand.add_argument("--m", type=float, default=None, help="Common mass (default 1)")
    shorthand.add_argument("--g", type=float, default=None, help="Common intraspecies coupling")
    shorthand.add_argument("--lambda", dest="lam", type=float, default=None, help="g12 / g")
    shorthand.add_argument("--n", type=float, default=None, help="Common total density (default 1)")
    shorthand.add_argument("--nc", type=float, default=None, help="Common condensate density (default: n)")


def add_fluctuation_args(parser):
    parser.add_argument(
        "--fluct",
        type=str,
        choices=["none", "minus", "plus"],
        default=None,
        help="Closed-form fluctuations with the closure of this branch (balanced inputs only)",
    )
    for name in ("nt11", "nt22", "nt12", "mt11", "mt22", "mt12"):
        parser.add_argument(f"--{name}", type=float, default=None, help=f"Reduced fluctuation {name}")


def add_quadrature_args(parser):
    parser.add_argument("--rel-tol", type=float, default=None, help="Quadrature relative tolerance")
    parser.add_argument("--abs-tol", type=float, default=None, help="Quadrature absolute tolerance")
    parser.add_argument("--max-subdivisions", type=int, default=None)
    parser.add_argument(
        "--k-min", type=float, default=None,
        help="Infrared cutoff (wavenumber) for the individual N~ and M~ integrals",
    )
    parser.add_argument("--k-max", type=float, default=None, help="Finite upper limit instead of the mapped infinity")
    parser.add_argument("--temperature", type=float, default=None, help="k_B T in energy units (unvalidated)")


def _flag_values(args: Any, names) -> Dict[str, float]:
    out = {}
    for name in names:
        attr = "lam" if name == "lambda" else name
        value = getattr(args, attr, None)
        if value is not None:
            out[name] = value
    return out


def resolve_params(args: Any, base: Optional[Mapping[str, float]] = None) -> Union[MixtureParams, SymmetricParams]:
    """
    Parameters from the config file overlaid with the flags. Masses, hbar and densities default to 1
    and condensate densities to the total densities; couplings are required.
    """
    merged: Dict[str, float] = dict(base or {})
    merged.update(_flag_values(args, MIXTURE_KEYS + SYMMETRIC_KEYS + ("hbar",)))
    full = [k for k in MIXTURE_KEYS if k in merged]
    short = [k for k in SYMMETRIC_KEYS if k in merged]
    if full and short:
        raise ParameterError(f"mixed parameter sets: {full} and {short}")
    if short:
        merged.setdefault("m", 1.0)
        merged.setdefault("n", 1.0)
        merged.setdefault("nc", merged["n"])
    else:
        for species in ("1", "2"):
            merged.setdefault(f"m{species}", 1.0)
            merged.setdefault(f"n{species}", 1.0)
            merged.setdefault(f"nc{species}", merged[f"n{species}"])
    required = ("g", "lambda") if short else ("g11", "g22", "g12")
    missing = [k for k in required if k not in merged]
    if missing:
        raise ParameterError(f"missing parameters: {', '.join(missing)}")
    return params_from_dict(merged)


def resolve_fluctuations(
    args: Any,
    params: MixtureParams,
    base: Optional[Mapping[str, float]] = None,
) -> FluctuationSet:
    """Explicit --nt/--mt values, or the closed forms of the --fluct branch."""
    values = dict(base or {})
    values.update(_flag_values(args, ("nt11", "nt22", "nt12", "mt11", "mt22", "mt12")))
    branch = getattr(args, "fluct", None)
    if branch in (None, "none"):
        return FluctuationSet(**values)
    if values:
        raise ParameterError("--fluct cannot be combined with explicit fluctuation values")
    label = BranchLabel.from_str(branch)
    sym = reduce_symmetric(params)
    nt, mt = closed_form_intraspecies(label, sym.lam, gamma_1d(sym))
    return branch_closure(label, nt, mt)
