from enum import IntEnum
import math


# Quadrature defaults
QUAD_REL_TOL = 1e-10
QUAD_ABS_TOL = 1e-14
QUAD_MAX_SUBDIVISIONS = 2000

# Scalar minimization
MINIMIZE_TOL = 1e-10

# Finite differences: h_i = FD_REL_STEP * (1 + |x_i|)
FD_REL_STEP = 1e-4

# Eigen-solver acceptance
EIGEN_RESIDUAL_TOL = 1e-10
PAIRING_TOL = 1e-9
NORM_TOL = 1e-9

# Bogoliubov theory is trusted below this Lieb-Liniger parameter
WEAK_COUPLING_GAMMA = 0.3
# Asymptotic droplet forms are trusted below this dg/g
ASYMPTOTIC_DG_RATIO = 0.1

# Relative band around Tr A = 0 / Det A = 0 reported as marginal
MARGINAL_RTOL = 1e-12

# Stability FD oracle
FD_AGREEMENT_RTOL = 1e-6
FD_FAILURE_RTOL = 1e-4

# Self-consistency defaults
SC_DAMPING = 0.5
SC_TOL = 1e-10
SC_MAX_ITER = 200

# LHY constants of the 1D closed forms
A_N = (1.0 - math.asinh(1.0) / math.sqrt(2.0)) / (2.0 * math.pi)
A_M = math.sqrt(2.0) / 8.0
LHY_COEFF_EXACT = 2.0 * (A_M - A_N)
LHY_COEFF_ROUNDED = 0.234

# Serialization
FLOAT_DIGITS = 17

THREADS_ENV = "MIXSTAB_THREADS"
LOGDIR_ENV = "MIXSTAB_LOGDIR"
LOGDIR = "./logs"


class ExitCode(IntEnum):
    OK = 0
    USAGE = 1
    CONFIG_INVALID = 2
    NUMERICAL_FAILURE = 3
    VALIDATION_FAILURE = 4
