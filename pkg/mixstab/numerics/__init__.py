from mixstab.numerics.eigen import EigenPair, eigen_4x4, eigenvalues_4x4
from mixstab.numerics.finite_difference import fd_gradient_hessian
from mixstab.numerics.minimize import MinimizeResult, minimize_scalar
from mixstab.numerics.quadrature import QuadratureResult, QuadratureSettings, integrate_semi_infinite
