import dataclasses
import logging
from typing import NamedTuple, Optional

from mixstab.bogoliubov.dispersion import branch_gap
from mixstab.constants import SC_DAMPING, SC_MAX_ITER, SC_TOL
from mixstab.errors import ConvergenceError, InstabilityError, ParameterError
from mixstab.fluctuations.closed_form import branch_closure, closed_form_from_gap
from mixstab.model import BranchLabel, FluctuationSet, SymmetricParams
from mixstab.model.params import gamma_1d

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SelfConsistencySettings:
    damping: float = SC_DAMPING
    tol: float = SC_TOL
    max_iter: int = SC_MAX_ITER

    def __post_init__(self):
        if not 0.0 < self.damping <= 1.0:
            raise ParameterError(f"damping must lie in (0, 1], got {self.damping!r}")
        if not self.tol > 0:
            raise ParameterError(f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be at least 1, got {self.max_iter!r}")


class SelfConsistentResult(NamedTuple):
    fluctuations: FluctuationSet
    iterations: int
    residual: float


def _damped(old: FluctuationSet, new: FluctuationSet, damping: float) -> FluctuationSet:
    return FluctuationSet(*(a + damping * (b - a) for a, b in zip(old.as_tuple(), new.as_tuple())))


def self_consistent_loop(
    sym: SymmetricParams,
    branch: BranchLabel,
    settings: SelfConsistencySettings = SelfConsistencySettings(),
    gamma1d: Optional[float] = None,
) -> SelfConsistentResult:
    """
    Damped fixed point of fluctuations -> branch gap -> closed forms -> branch closure.

    The minus-branch gap 1 - lambda - lambda*(N~12 + M~12) feeds back the interspecies
    fluctuations; the plus-branch gap does not depend on them. ``gamma1d`` overrides the
    Lieb-Liniger parameter of ``sym`` (0 gives the mean-field limit).
    """
    gamma = gamma_1d(sym) if gamma1d is None else gamma1d
    if gamma < 0:
        raise ParameterError(f"gamma1d must be non-negative, got {gamma!r}")

    current = FluctuationSet.zero()
    residual = float("inf")
    for iteration in range(1, settings.max_iter + 1):
        gap = branch_gap(branch, sym.lam, current.f12)
        if gap < 0:
            raise InstabilityError(
                f"branch {branch} turned unstable at iteration {iteration} (gap={gap!r})",
                last_stable=current,
            )
        nt, mt = closed_form_from_gap(gap, gamma, branch)
        updated = _damped(current, branch_closure(branch, nt, mt), settings.damping)
        residual = updated.max_abs_diff(current)
        current = updated
        logger.debug(f"iteration {iteration}: gap={gap!r} residual={residual!r}")
        if residual < settings.tol:
            return SelfConsistentResult(current, iteration, residual)

    raise ConvergenceError(
        f"self-consistency did not converge in {settings.max_iter} iterations",
        last_iterate=current,
        residual=residual,
    )
