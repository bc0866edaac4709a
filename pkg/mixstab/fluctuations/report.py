from typing import Optional
import warnings

from mixstab.bogoliubov.dispersion import branch_gap
from mixstab.fluctuations.closed_form import branch_closure, closed_form_from_gap
from mixstab.fluctuations.quadrature import (
    QUADRATURE,
    FluctuationQuadratureSettings,
    ir_safe_closed_form,
    quadrature_intraspecies,
)
from mixstab.fluctuations.self_consistent import SelfConsistencySettings, self_consistent_loop
from mixstab.model import BranchLabel, SymmetricParams
from mixstab.model.params import gamma_1d
from mixstab.protocol.report_protocol import FluctuationReport, IrDiagnostics, SelfConsistencyInfo


def fluctuation_report(
    sym: SymmetricParams,
    branch: BranchLabel,
    settings: FluctuationQuadratureSettings = FluctuationQuadratureSettings(),
    f12: float = 0.0,
    self_consistency: Optional[SelfConsistencySettings] = None,
) -> FluctuationReport:
    """
    Closed-form fluctuations with branch closure, plus the IR-safe combination.

    In quadrature mode N~ and M~ come from the cutoff integrals and ``lhy_sum`` is the IR-safe
    quadrature; otherwise they are the closed forms. The IR-safe value -gamma/pi and the
    closed-form sum -0.1168 gamma (at lambda = 0) differ; both are reported as they are.
    Warnings raised on the way are captured into the report.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        gamma = gamma_1d(sym)
        gap = branch_gap(branch, sym.lam, f12)
        nt, mt = closed_form_from_gap(gap, gamma, branch)
        ir_closed = ir_safe_closed_form(sym, branch, f12)

        if settings.mode == QUADRATURE:
            individual = settings.quad.k_min > 0
            quad = quadrature_intraspecies(sym, branch, f12, settings, individual=individual)
            if individual:
                nt, mt = quad.nt, quad.mt
            lhy_sum = quad.sum_ir_safe
            diagnostics = IrDiagnostics(
                k_min=settings.quad.k_min if individual else None,
                nt_sensitivity=quad.diagnostics.get("nt_sensitivity"),
                mt_sensitivity=quad.diagnostics.get("mt_sensitivity"),
                sum_ir_safe=quad.sum_ir_safe,
                sum_ir_safe_closed_form=ir_closed,
                sum_ir_safe_error=quad.diagnostics["ir_safe_error"],
            )
        else:
            lhy_sum = nt + mt
            diagnostics = IrDiagnostics(sum_ir_safe=ir_closed, sum_ir_safe_closed_form=ir_closed)

        closure = branch_closure(branch, nt, mt)
        info = None
        if self_consistency is not None:
            loop = self_consistent_loop(sym, branch, self_consistency, gamma1d=gamma)
            fl = loop.fluctuations
            info = SelfConsistencyInfo(
                iterations=loop.iterations, residual=loop.residual,
                nt=fl.nt11, mt=fl.mt11, nt12=fl.nt12, mt12=fl.mt12,
            )

    return FluctuationReport(
        branch=str(branch),
        gamma1d=gamma,
        nt=nt,
        mt=mt,
        nt12=closure.nt12,
        mt12=closure.mt12,
        lhy_sum=lhy_sum,
        method=settings.mode,
        ir_diagnostics=diagnostics,
        self_consistency=info,
        warnings=[str(w.message) for w in caught],
    )
