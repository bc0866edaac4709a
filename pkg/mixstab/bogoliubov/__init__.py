from mixstab.bogoliubov.bdg import (
    GENERAL,
    BdgMode,
    bdg_matrix,
    dispersion_rows,
    dispersion_table,
    omega_tilde,
    solve_bdg,
    spectrum_truncation_gap,
    structured_frequencies,
)
from mixstab.bogoliubov.dispersion import (
    DispersionPoint,
    amplitudes_symmetric,
    branch_points,
    branch_gap,
    dispersion,
    dispersion_minus,
    dispersion_plus,
    eps_of_k,
    k_of_eps,
    lowest_branch,
    phonon_slope,
    sound_velocity,
    symmetry_breaking_gap,
)
