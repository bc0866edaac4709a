import math
from typing import Tuple

from mixstab.constants import A_M, A_N, LHY_COEFF_EXACT, LHY_COEFF_ROUNDED
from mixstab.errors import BranchDomainError, ParameterError
from mixstab.model import BranchLabel, FluctuationSet


def lhy_coefficient(mode: str = "exact") -> float:
    """2 (a_M - a_N) = 0.2336..., or the rounded 0.234 used for figure reproduction."""
    if mode == "exact":
        return LHY_COEFF_EXACT
    elif mode == "paper_rounded":
        return LHY_COEFF_ROUNDED
    else:
        raise ParameterError(f"Invalid LHY coefficient mode: {mode!r}")


def closed_form_from_gap(gap: float, gamma1d: float, branch: BranchLabel = BranchLabel.MINUS) -> Tuple[float, float]:
    """N~ = a_N gamma sqrt(gap), M~ = -a_M gamma sqrt(gap)."""
    if gap < 0:
        raise BranchDomainError(str(branch), gap)
    root = math.sqrt(gap)
    return A_N * gamma1d * root, -A_M * gamma1d * root


def closed_form_intraspecies(branch: BranchLabel, lam: float, gamma1d: float) -> Tuple[float, float]:
    """Intraspecies N~ and M~ of the 1D balanced mixture on the given branch (radicand 1 -/+ lambda)."""
    return closed_form_from_gap(1.0 + branch.sign * lam, gamma1d, branch)


def branch_closure(branch: BranchLabel, nt: float, mt: float) -> FluctuationSet:
    """N~12 = -N~, M~12 = -M~ on the minus branch; N~12 = +N~, M~12 = +M~ on the plus branch."""
    s = branch.sign
    return FluctuationSet(nt11=nt, nt22=nt, nt12=s * nt, mt11=mt, mt22=mt, mt12=s * mt)
