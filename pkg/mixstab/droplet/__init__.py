from mixstab.droplet.energy import (
    ASYMPTOTIC,
    ASYMPTOTIC_CORRECTED,
    FULL,
    DropletConfig,
    PowerLawEnergy,
    energy,
    energy_asymptotic,
    energy_full,
    energy_profile,
    energy_terms,
)
from mixstab.droplet.equilibrium import (
    DropletCurve,
    Equilibrium,
    FigureCurves,
    density_grid,
    equilibrium,
    figure_curve,
    minima_summary,
)
