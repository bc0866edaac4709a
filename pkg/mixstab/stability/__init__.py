from mixstab.stability.energy import (
    chemical_potentials,
    energy_at_condensates,
    energy_density,
    generalized_couplings,
    gradient_fd,
    hessian_fd,
)
from mixstab.stability.report import StabilityReport, Verdict, stability_check, verdict_from
from mixstab.stability.closure import closure_stability
