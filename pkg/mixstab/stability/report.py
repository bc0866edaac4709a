import dataclasses
from enum import Enum
import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from mixstab.constants import FD_AGREEMENT_RTOL, FD_FAILURE_RTOL, MARGINAL_RTOL
from mixstab.errors import ConsistencyError
from mixstab.model import FluctuationSet, MixtureParams
from mixstab.stability.energy import generalized_couplings, hessian_fd, relative_disagreement

logger = logging.getLogger(__name__)


class Verdict(Enum):
    STABLE = "stable"
    COLLAPSE = "collapse"
    SEPARATION = "separation"
    BOTH = "both"
    MARGINAL = "marginal"

    @classmethod
    def from_str(cls, name: str) -> "Verdict":
        for item in cls:
            if item.value == name:
                return item
        raise ValueError(f"Invalid verdict: {name!r}")

    def __str__(self) -> str:
        return self.value


def verdict_from(g1: float, g2: float, g12: float) -> Verdict:
    """Tr A = G1 + G2 > 0 guards against collapse, Det A = G1 G2 - G12^2 > 0 against separation."""
    scale = max(abs(g1), abs(g2), abs(g12))
    trace = g1 + g2
    det = g1 * g2 - g12 * g12
    if scale > 0 and (abs(trace) <= MARGINAL_RTOL * scale or abs(det) <= MARGINAL_RTOL * scale * scale):
        return Verdict.MARGINAL
    collapse, separation = not trace > 0, not det > 0
    if collapse and separation:
        return Verdict.BOTH
    if collapse:
        return Verdict.COLLAPSE
    if separation:
        return Verdict.SEPARATION
    return Verdict.STABLE


@dataclasses.dataclass(frozen=True)
class StabilityReport:
    g1_eff: float
    g2_eff: float
    g12_eff: float
    trace_a: float
    det_a: float
    stable_collapse: bool
    stable_separation: bool
    verdict: Verdict
    fluctuation_input: FluctuationSet
    hessian_fd: Optional[Tuple[Tuple[float, float], Tuple[float, float]]] = None
    fd_disagreement: Optional[float] = None

    @classmethod
    def from_couplings(cls, g1: float, g2: float, g12: float, fl: FluctuationSet) -> "StabilityReport":
        trace = g1 + g2
        det = g1 * g2 - g12 * g12
        return cls(
            g1_eff=g1, g2_eff=g2, g12_eff=g12,
            trace_a=trace, det_a=det,
            stable_collapse=trace > 0,
            stable_separation=det > 0,
            verdict=verdict_from(g1, g2, g12),
            fluctuation_input=fl,
        )

    @property
    def hessian(self) -> np.ndarray:
        return np.array([[self.g1_eff, self.g12_eff], [self.g12_eff, self.g2_eff]])

    def is_consistent(self) -> bool:
        """The flags and verdict reproduce from the couplings alone."""
        again = StabilityReport.from_couplings(self.g1_eff, self.g2_eff, self.g12_eff, self.fluctuation_input)
        return (
            again.stable_collapse == self.stable_collapse
            and again.stable_separation == self.stable_separation
            and again.verdict is self.verdict
        )

    def to_dict(self) -> Dict[str, Any]:
        out = dataclasses.asdict(self)
        out["verdict"] = str(self.verdict)
        out["fluctuation_input"] = self.fluctuation_input.to_dict()
        if self.hessian_fd is not None:
            out["hessian_fd"] = [list(row) for row in self.hessian_fd]
        return out


def stability_check(
    params: MixtureParams,
    fl: FluctuationSet = FluctuationSet(),
    with_fd_check: bool = False,
) -> StabilityReport:
    g1, g2, g12 = generalized_couplings(params, fl)
    report = StabilityReport.from_couplings(g1, g2, g12, fl)
    if not with_fd_check:
        return report

    numeric = hessian_fd(params, fl)
    disagreement = relative_disagreement(numeric, report.hessian)
    if disagreement > FD_FAILURE_RTOL:
        raise ConsistencyError(
            f"finite-difference Hessian disagrees with (G1, G2, G12) by {disagreement:.3e} relative",
            details={"analytic": report.hessian.tolist(), "numeric": numeric.tolist()},
        )
    if disagreement > FD_AGREEMENT_RTOL:
        logger.warning(f"finite-difference Hessian agrees only to {disagreement:.3e} relative")
    return dataclasses.replace(
        report,
        hessian_fd=tuple(tuple(float(v) for v in row) for row in numeric),
        fd_disagreement=disagreement,
    )
