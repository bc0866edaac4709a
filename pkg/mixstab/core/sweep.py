from concurrent.futures import ThreadPoolExecutor
import logging
import math
from typing import Any, Callable, Iterable, List, Optional, Sequence, TypeVar, Union

from mixstab.errors import MixstabError, ParameterError
from mixstab.fluctuations import branch_closure, closed_form_intraspecies
from mixstab.model import BranchLabel, FluctuationSet, MixtureParams, SymmetricParams
from mixstab.model.params import embed_symmetric, gamma_1d, reduce_symmetric
from mixstab.protocol.config_protocol import ScanSpec
from mixstab.stability import chemical_potentials, energy_density, stability_check

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

UNDEFINED = "undefined"

OUTPUT_COLUMNS = {
    "stability": ["G1", "G2", "G12", "trace_a", "det_a", "verdict"],
    "energy": ["energy"],
    "mu": ["mu1", "mu2"],
}


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """Map preserving input order; threads only change wall time."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, items))


def _balanced(base: Union[MixtureParams, SymmetricParams]) -> SymmetricParams:
    if isinstance(base, SymmetricParams):
        return base
    return reduce_symmetric(base)


def params_at(base: Union[MixtureParams, SymmetricParams], parameter: str, value: float) -> MixtureParams:
    """The mixture at one scan point; lambda, n and dg scans need a balanced base."""
    if parameter == "g12":
        full = embed_symmetric(base) if isinstance(base, SymmetricParams) else base
        return full.replace(g12=value)
    sym = _balanced(base)
    if parameter == "lambda":
        return embed_symmetric(sym.replace(lam=value))
    if parameter == "n":
        # condensate fraction is kept
        return embed_symmetric(sym.replace(n=value, nc=value * sym.nc / sym.n))
    if parameter == "dg":
        # 1 + lambda = dg / g
        return embed_symmetric(sym.replace(lam=value / sym.g - 1.0))
    raise ParameterError(f"Invalid scan parameter: {parameter!r}")


def fluctuations_at(params: MixtureParams, fluct: str) -> FluctuationSet:
    if fluct == "none":
        return FluctuationSet()
    branch = BranchLabel.from_str(fluct)
    sym = reduce_symmetric(params)
    nt, mt = closed_form_intraspecies(branch, sym.lam, gamma_1d(sym, warn=False))
    return branch_closure(branch, nt, mt)


def scan_columns(spec: ScanSpec) -> List[str]:
    columns = [spec.parameter]
    for output in spec.outputs:
        columns.extend(OUTPUT_COLUMNS[output])
    return columns


def _row(spec: ScanSpec, base: Union[MixtureParams, SymmetricParams], value: float) -> List[Any]:
    row: List[Any] = [value]
    try:
        params = params_at(base, spec.parameter, value)
        fl = fluctuations_at(params, spec.fluct)
        for output in spec.outputs:
            if output == "stability":
                report = stability_check(params, fl)
                row.extend([
                    report.g1_eff, report.g2_eff, report.g12_eff,
                    report.trace_a, report.det_a, str(report.verdict),
                ])
            elif output == "energy":
                row.append(energy_density(params, fl))
            elif output == "mu":
                row.extend(chemical_potentials(params, fl))
    except MixstabError as e:
        # points outside the model's domain stay in the table
        logger.warning(f"{spec.parameter}={value!r}: {e.message}")
        row = [value]
        for output in spec.outputs:
            width = len(OUTPUT_COLUMNS[output])
            row.extend([math.nan] * width if output != "stability" else [math.nan] * (width - 1) + [UNDEFINED])
    return row


def run_scan(
    spec: ScanSpec,
    base: Union[MixtureParams, SymmetricParams],
    threads: int = 1,
    grid: Optional[Sequence[float]] = None,
) -> List[List[Any]]:
    """Rows of the stability map, ascending in the scan parameter."""
    values = [float(v) for v in (spec.grid() if grid is None else sorted(grid))]
    logger.debug(f"scan {spec.parameter} over {len(values)} points with {threads} threads")
    return parallel_map(lambda v: _row(spec, base, v), values, threads)
