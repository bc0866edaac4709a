from mixstab.fluctuations.closed_form import (
    branch_closure,
    closed_form_from_gap,
    closed_form_intraspecies,
    lhy_coefficient,
)
from mixstab.fluctuations.quadrature import (
    CLOSED_FORM,
    QUADRATURE,
    FluctuationQuadratureSettings,
    IntraspeciesQuadrature,
    healing_wavenumber,
    ir_safe_closed_form,
    quadrature_intraspecies,
)
from mixstab.fluctuations.self_consistent import (
    SelfConsistencySettings,
    SelfConsistentResult,
    self_consistent_loop,
)
from mixstab.fluctuations.report import fluctuation_report
