from typing import Optional

from mixstab.fluctuations import branch_closure, closed_form_intraspecies
from mixstab.model import BranchLabel, SymmetricParams
from mixstab.model.params import embed_symmetric, gamma_1d
from mixstab.stability.report import StabilityReport, stability_check


def closure_stability(
    sym: SymmetricParams,
    branch: BranchLabel,
    gamma1d: Optional[float] = None,
    with_fd_check: bool = False,
) -> StabilityReport:
    """Stability of a balanced mixture carrying the closed-form fluctuations of one branch."""
    gamma = gamma_1d(sym) if gamma1d is None else gamma1d
    nt, mt = closed_form_intraspecies(branch, sym.lam, gamma)
    return stability_check(embed_symmetric(sym), branch_closure(branch, nt, mt), with_fd_check)
