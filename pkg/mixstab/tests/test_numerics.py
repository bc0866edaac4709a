import math
import unittest

import numpy as np
import numpy.testing as npt

from mixstab.errors import BracketError, ParameterError, QuadratureError
from mixstab.numerics import (
    QuadratureSettings,
    eigen_4x4,
    eigenvalues_4x4,
    fd_gradient_hessian,
    integrate_semi_infinite,
    minimize_scalar,
)


class TestQuadrature(unittest.TestCase):
    def test_exponential(self):
        result = integrate_semi_infinite(lambda k: math.exp(-k))
        self.assertAlmostEqual(result.value, 1.0, delta=1e-10)
        self.assertGreater(result.evaluations, 0)

    def test_lorentzian(self):
        result = integrate_semi_infinite(lambda k: 1.0 / (k * k + 16.0), scale=4.0)
        self.assertAlmostEqual(result.value, math.pi / 8.0, delta=1e-10)

    def test_ir_safe_anchor(self):
        # (1/2pi) * 2 * (1/2) [k / sqrt(k^2 + 4) - 1]
        def f(k):
            root = math.sqrt(k * k + 4.0)
            return -2.0 / ((k + root) * root) / math.pi

        result = integrate_semi_infinite(f, scale=2.0)
        self.assertAlmostEqual(result.value, -1.0 / math.pi, delta=1e-9)

    def test_finite_interval(self):
        settings = QuadratureSettings(k_min=1.0, k_max=2.0)
        self.assertAlmostEqual(integrate_semi_infinite(lambda k: k, settings).value, 1.5, delta=1e-12)

    def test_infrared_cutoff(self):
        settings = QuadratureSettings(k_min=1.0)
        self.assertAlmostEqual(integrate_semi_infinite(lambda k: math.exp(-k), settings).value, math.exp(-1.0), delta=1e-10)

    def test_tighter_tolerance_is_consistent(self):
        def f(k):
            root = math.sqrt(k * k + 4.0)
            return -2.0 / ((k + root) * root)

        loose = integrate_semi_infinite(f, QuadratureSettings(rel_tol=1e-8), scale=2.0)
        tight = integrate_semi_infinite(f, QuadratureSettings(rel_tol=5e-9), scale=2.0)
        self.assertLessEqual(abs(loose.value - tight.value), 2.0 * max(loose.error, 1e-14))

    def test_doubling_subdivisions(self):
        def f(k):
            root = math.sqrt(k * k + 4.0)
            return -2.0 / ((k + root) * root)

        for limit in (200, QuadratureSettings().max_subdivisions):
            base = integrate_semi_infinite(f, QuadratureSettings(max_subdivisions=limit), scale=2.0)
            doubled = integrate_semi_infinite(f, QuadratureSettings(max_subdivisions=2 * limit), scale=2.0)
            self.assertLessEqual(abs(base.value - doubled.value), 2.0 * QuadratureSettings().rel_tol * abs(base.value))

    def test_divergent_integrand(self):
        with self.assertRaises(QuadratureError):
            integrate_semi_infinite(lambda k: 1.0 / math.sqrt(k) if k > 0 else 0.0, QuadratureSettings(max_subdivisions=20))

    def test_invalid_settings(self):
        with self.assertRaises(ParameterError):
            QuadratureSettings(k_min=-1.0)
        with self.assertRaises(ParameterError):
            QuadratureSettings(k_min=2.0, k_max=1.0)


class TestMinimize(unittest.TestCase):
    def test_quadratic(self):
        result = minimize_scalar(lambda n: (n - 3.0) ** 2, 0.0, 10.0)
        self.assertAlmostEqual(result.x_star, 3.0, delta=1e-8)
        self.assertTrue(result.converged)
        self.assertTrue(result.interior)

    def test_droplet_form(self):
        result = minimize_scalar(lambda n: 0.01 * n * n - math.sqrt(8.0) * 0.234 * n ** 1.5, 1.0, 1e5)
        expected = 4.5 * 0.234 ** 2 / 0.01 ** 2
        self.assertAlmostEqual(result.x_star / expected, 1.0, delta=1e-6)
        self.assertAlmostEqual(result.x_star, 2464.0, delta=0.1)

    def test_affine_rescaling(self):
        def f(n):
            return 0.01 * n * n - math.sqrt(8.0) * 0.234 * n ** 1.5

        base = minimize_scalar(f, 1.0, 1e5)
        for a, b in ((1e3, -7.0), (1e-3, 42.0), (2.0, 0.0)):
            scaled = minimize_scalar(lambda n: a * f(n) + b, 1.0, 1e5)
            self.assertAlmostEqual(scaled.x_star / base.x_star, 1.0, delta=1e-6)
            self.assertAlmostEqual(scaled.f_star, a * base.f_star + b, delta=1e-7 * abs(a * base.f_star))

    def test_monotone(self):
        result = minimize_scalar(lambda n: -n, 0.0, 1.0)
        self.assertFalse(result.interior)
        self.assertFalse(result.converged)

    def test_bracket(self):
        with self.assertRaises(BracketError):
            minimize_scalar(lambda n: n, 5.0, 2.0)


class TestFiniteDifference(unittest.TestCase):
    def test_polynomial(self):
        grad, hess = fd_gradient_hessian(lambda x: x[0] ** 2 + 3.0 * x[0] * x[1], [1.0, 2.0])
        npt.assert_allclose(grad, [8.0, 3.0], atol=1e-8)
        npt.assert_allclose(hess, [[2.0, 3.0], [3.0, 0.0]], atol=1e-8)

    def test_linear(self):
        grad, hess = fd_gradient_hessian(lambda x: x[0], [0.3, -0.7])
        npt.assert_allclose(grad, [1.0, 0.0], atol=1e-10)
        npt.assert_allclose(hess, np.zeros((2, 2)), atol=1e-6)


class TestEigen(unittest.TestCase):
    def test_diagonal(self):
        values = eigenvalues_4x4(np.diag([4.0, 2.0, 3.0, 1.0]))
        npt.assert_allclose(values.real, [1.0, 2.0, 3.0, 4.0])

    def test_rotation_block(self):
        matrix = np.eye(4)
        matrix[:2, :2] = [[0.0, 1.0], [-1.0, 0.0]]
        values = eigenvalues_4x4(matrix)
        npt.assert_allclose(values, [-1j, 1j, 1.0, 1.0], atol=1e-12)

    def test_residuals(self):
        rng = np.random.default_rng(3)
        matrix = rng.normal(size=(4, 4))
        for pair in eigen_4x4(matrix):
            self.assertLess(pair.residual, 1e-12)
            self.assertAlmostEqual(float(np.linalg.norm(pair.vector)), 1.0, places=12)

    def test_shape(self):
        with self.assertRaises(ValueError):
            eigen_4x4(np.eye(3))


if __name__ == '__main__':
    unittest.main()
