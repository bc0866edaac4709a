import math
import unittest

import numpy as np

from mixstab.droplet import (
    ASYMPTOTIC_CORRECTED,
    FULL,
    DropletConfig,
    PowerLawEnergy,
    density_grid,
    energy,
    energy_full,
    energy_profile,
    energy_terms,
    equilibrium,
    figure_curve,
    minima_summary,
)
from mixstab.errors import AsymptoticRangeWarning, ParameterError
from mixstab.model import BranchLabel

MINUS = BranchLabel.MINUS
PLUS = BranchLabel.PLUS


def figure_config(**changes) -> DropletConfig:
    cfg = DropletConfig(dg=0.01, lhy_coeff_mode="paper_rounded")
    return cfg.replace(**changes)


class TestDropletConfig(unittest.TestCase):
    def test_lambda(self):
        self.assertAlmostEqual(figure_config().lam, -0.99, places=15)

    def test_validation(self):
        with self.assertRaises(ParameterError):
            DropletConfig(dg=-0.1)
        with self.assertRaises(ParameterError):
            DropletConfig(dg=2.5)
        with self.assertRaises(ParameterError):
            DropletConfig(dg=0.01, g=0.0)
        with self.assertRaises(ParameterError):
            DropletConfig(dg=0.01, form="leading")
        with self.assertRaises(ParameterError):
            DropletConfig(dg=0.01, lhy_coeff_mode="rounded")

    def test_to_dict(self):
        self.assertEqual(figure_config(branch=PLUS).to_dict()["branch"], "plus")


class TestPowerLawEnergy(unittest.TestCase):
    def test_stationary_point(self):
        profile = PowerLawEnergy(alpha=2.0, amplitude=3.0)
        n_star, e_star = profile.stationary_point()
        self.assertAlmostEqual(n_star, 9.0 * 9.0 / (16.0 * 4.0), places=14)
        self.assertAlmostEqual(e_star, profile(n_star), places=13)
        self.assertAlmostEqual(profile.derivative(n_star), 0.0, places=13)
        self.assertGreater(profile.second_derivative(n_star), 0.0)

    def test_linear_term(self):
        profile = PowerLawEnergy(alpha=1.0, amplitude=2.0, linear=0.1)
        n_star, _ = profile.stationary_point()
        self.assertAlmostEqual(profile.derivative(n_star), 0.0, places=13)

    def test_no_minimum(self):
        self.assertIsNone(PowerLawEnergy(alpha=0.0, amplitude=1.0).stationary_point())
        self.assertIsNone(PowerLawEnergy(alpha=1.0, amplitude=0.1, linear=1.0).stationary_point())


class TestEnergyForms(unittest.TestCase):
    def test_minus_near_minimum(self):
        self.assertAlmostEqual(energy(2464.0, figure_config()) / -2.0238e4, 1.0, delta=1e-4)

    def test_plus_lhy_ratio(self):
        cfg = figure_config(branch=PLUS)
        _, corr, _ = energy_terms(50.0, cfg)
        _, uncorr, _ = energy_terms(50.0, cfg.replace(correlated=False))
        self.assertAlmostEqual(corr / uncorr, 0.01, places=14)

    def test_plus_cancellation_at_lambda_minus_one(self):
        cfg = DropletConfig(dg=0.0, branch=PLUS, form=FULL)
        for n in (0.1, 1.0, 100.0):
            self.assertEqual(energy(n, cfg), 0.0)

    def test_minus_doubling_at_lambda_minus_one(self):
        cfg = DropletConfig(dg=0.0, form=FULL)
        _, corr, _ = energy_terms(10.0, cfg)
        _, uncorr, _ = energy_terms(10.0, cfg.replace(correlated=False))
        self.assertEqual(corr, 2.0 * uncorr)
        self.assertLess(energy(10.0, cfg), 0.0)

    def test_full_form_matches_its_profile(self):
        for branch in (MINUS, PLUS):
            for correlated in (True, False):
                cfg = DropletConfig(dg=0.05, branch=branch, correlated=correlated, form=FULL)
                profile = energy_profile(cfg)
                for n in (0.5, 20.0, 3000.0):
                    self.assertAlmostEqual(energy_full(n, cfg) / profile(n), 1.0, delta=1e-12)

    def test_mean_field_part(self):
        mean, _, quadratic = energy_terms(3.0, figure_config())
        self.assertAlmostEqual(mean, 0.09, places=15)
        self.assertEqual(quadratic, 0.0)

    def test_corrected_amplitude(self):
        plain = energy_profile(figure_config()).amplitude
        corrected = energy_profile(figure_config(form=ASYMPTOTIC_CORRECTED)).amplitude
        self.assertAlmostEqual(corrected / plain, 1.0 - 0.75 * 0.01, places=14)

    def test_range_warning(self):
        with self.assertWarns(AsymptoticRangeWarning):
            energy(1.0, DropletConfig(dg=0.5))

    def test_density_must_be_positive(self):
        with self.assertRaises(ParameterError):
            energy(0.0, figure_config())


class TestEquilibrium(unittest.TestCase):
    def test_minus_branch_figure_values(self):
        eq = equilibrium(figure_config())
        self.assertTrue(eq.bounded)
        self.assertAlmostEqual(eq.n_star, 2464.02, delta=0.01)
        self.assertAlmostEqual(eq.e_star, -20237.98, delta=0.01)
        self.assertLess(eq.n_deviation, 1e-6)
        self.assertAlmostEqual(eq.e_star / (-eq.n_star ** 2 * 0.01 / 3.0), 1.0, delta=1e-8)

    def test_uncorrelated_ratios(self):
        summary = minima_summary(figure_config())
        self.assertAlmostEqual(summary["n_star_uncorr"], 616.0, delta=0.01)
        self.assertAlmostEqual(summary["ratios"]["n"], 4.0, delta=1e-9)
        self.assertAlmostEqual(summary["ratios"]["e"], 16.0, delta=1e-8)
        self.assertTrue(summary["bounded"])

    def test_ratio_identities_are_parameter_free(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            g = rng.uniform(0.5, 2.0)
            cfg = DropletConfig(
                dg=g * rng.uniform(1e-3, 0.1), g=g,
                m=rng.uniform(0.5, 2.0), hbar=rng.uniform(0.5, 2.0),
            )
            summary = minima_summary(cfg)
            self.assertAlmostEqual(summary["ratios"]["n"], 4.0, delta=1e-9)
            self.assertAlmostEqual(summary["ratios"]["e"], 16.0, delta=1e-8)

    def test_plus_branch_shift(self):
        summary = minima_summary(figure_config(branch=PLUS))
        self.assertAlmostEqual(summary["n_star_corr"] / 3.0800e-4, 1.0, delta=1e-4)
        self.assertAlmostEqual(summary["n_star_uncorr"] / 3.0800, 1.0, delta=1e-4)
        self.assertAlmostEqual(summary["ratios"]["n"], 1e-4, delta=1e-12)
        self.assertAlmostEqual(summary["ratios"]["e"] / 1e-8, 1.0, delta=1e-6)

    def test_stationary_and_convex(self):
        cfg = figure_config()
        eq = equilibrium(cfg)
        profile = energy_profile(cfg)
        curvature = profile.second_derivative(eq.n_star)
        self.assertGreater(curvature, 0.0)
        self.assertLessEqual(abs(profile.derivative(eq.n_star)), 1e-8 * curvature * eq.n_star)
        h = 1e-3 * eq.n_star
        second = energy(eq.n_star + h, cfg) - 2.0 * eq.e_star + energy(eq.n_star - h, cfg)
        self.assertGreater(second, 0.0)

    def test_full_form_close_to_asymptotic(self):
        cfg = DropletConfig(dg=1e-3)
        full = equilibrium(cfg.replace(form=FULL))
        asymptotic = equilibrium(cfg)
        self.assertLess(abs(full.n_star - asymptotic.n_star) / asymptotic.n_star, 0.05)

    def test_no_droplet_without_excess_coupling(self):
        cfg = DropletConfig(dg=0.0)
        with self.assertRaises(ParameterError):
            equilibrium(cfg)
        eq = equilibrium(cfg, (1.0, 100.0))
        self.assertFalse(eq.bounded)
        self.assertIsNone(eq.closed_form_n_star)
        self.assertTrue(math.isfinite(energy(1e6, cfg)))


class TestFigureCurves(unittest.TestCase):
    def test_minus_figure(self):
        curves = figure_curve(figure_config(), (1.0, 6000.0, 300))
        self.assertEqual(len(curves.rows()), 300)
        self.assertAlmostEqual(curves.correlated.minimum.x_star, 2464.02, delta=0.01)
        self.assertAlmostEqual(curves.uncorrelated.minimum.x_star, 616.0, delta=0.01)
        ratio = curves.correlated.minimum.f_star / curves.uncorrelated.minimum.f_star
        self.assertAlmostEqual(ratio, 16.0, delta=1e-6)

    def test_plus_figure_log_grid(self):
        curves = figure_curve(figure_config(branch=PLUS), (1e-6, 10.0, 200), log=True)
        samples = curves.correlated.samples
        self.assertAlmostEqual(samples[0][0], 1e-6, places=18)
        self.assertAlmostEqual(samples[-1][0], 10.0, places=12)
        depth = curves.correlated.minimum.f_star / curves.uncorrelated.minimum.f_star
        self.assertAlmostEqual(depth / 1e-8, 1.0, delta=1e-5)

    def test_single_point(self):
        curves = figure_curve(figure_config(), (10.0, 10.0, 1))
        self.assertEqual(len(curves.correlated.samples), 1)
        self.assertIsNone(curves.correlated.minimum)

    def test_grid_validation(self):
        with self.assertRaises(ParameterError):
            density_grid(0.0, 1.0, 10)
        with self.assertRaises(ParameterError):
            density_grid(1.0, 1.0, 10)
        with self.assertRaises(ParameterError):
            density_grid(1.0, 2.0, 0)


if __name__ == "__main__":
    unittest.main()
