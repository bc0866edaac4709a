import math
import unittest
import warnings

from mixstab.errors import AsymmetryError, ParameterError, WeakCouplingWarning
from mixstab.model import BranchLabel, FluctuationSet, MixtureParams, SymmetricParams
from mixstab.model.params import (
    embed_symmetric,
    gamma_1d,
    params_from_dict,
    reduce,
    reduce_symmetric,
    unreduce,
    validate,
)


def balanced(**changes) -> MixtureParams:
    params = MixtureParams(m1=1.0, m2=1.0, g11=1.0, g22=1.0, g12=0.5, n1=1.0, n2=1.0, nc1=1.0, nc2=1.0)
    return params.replace(**changes)


class TestValidate(unittest.TestCase):
    def test_valid(self):
        self.assertEqual(validate(balanced()), [])

    def test_condensate_above_total(self):
        self.assertIn("nc1: nc1 ≤ n1", validate(balanced(nc1=2.0)))

    def test_hbar(self):
        self.assertIn("hbar: hbar > 0", validate(balanced(hbar=0.0)))

    def test_attractive_couplings_are_admissible(self):
        self.assertEqual(validate(balanced(g12=-0.99)), [])


class TestReduceSymmetric(unittest.TestCase):
    def test_ratio(self):
        sym = reduce_symmetric(balanced())
        self.assertEqual(sym.lam, 0.5)
        self.assertEqual(sym.g, 1.0)

    def test_droplet_side(self):
        self.assertEqual(reduce_symmetric(balanced(g12=-0.99)).lam, -0.99)

    def test_mass_asymmetry(self):
        with self.assertRaises(AsymmetryError) as ctx:
            reduce_symmetric(balanced(m2=2.0))
        self.assertEqual(ctx.exception.fields, ("m1", "m2"))
        self.assertIsInstance(ctx.exception, ParameterError)

    def test_round_trip(self):
        params = balanced(g11=2.0, g22=2.0, g12=-1.0, n1=3.0, n2=3.0, nc1=2.5, nc2=2.5)
        self.assertEqual(embed_symmetric(reduce_symmetric(params)), params)


class TestGamma(unittest.TestCase):
    def test_weak_coupling(self):
        sym = SymmetricParams(m=1.0, g=1.0, lam=0.0, n=100.0, nc=100.0)
        self.assertAlmostEqual(gamma_1d(sym), 0.1, places=15)

    def test_droplet_density(self):
        sym = SymmetricParams(m=1.0, g=1.0, lam=0.0, n=2464.0, nc=2464.0)
        self.assertAlmostEqual(gamma_1d(sym), math.sqrt(1.0 / 2464.0), places=15)
        self.assertAlmostEqual(gamma_1d(sym), 0.02015, places=4)

    def test_warning(self):
        sym = SymmetricParams(m=1.0, g=1.0, lam=0.0, n=1.0, nc=1.0)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            self.assertEqual(gamma_1d(sym), 1.0)
        self.assertTrue(any(issubclass(w.category, WeakCouplingWarning) for w in caught))

    def test_no_warning_when_disabled(self):
        sym = SymmetricParams(m=1.0, g=1.0, lam=0.0, n=1.0, nc=1.0)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            gamma_1d(sym, warn=False)
        self.assertEqual(caught, [])


class TestFluctuationSet(unittest.TestCase):
    def test_unreduce_round_trip(self):
        params = balanced(nc1=0.8, nc2=1.6, n1=1.0, n2=2.0)
        fl = FluctuationSet(nt11=0.01, nt22=0.02, nt12=-0.03, mt11=-0.04, mt22=-0.05, mt12=0.06)
        back = reduce(unreduce(fl, params), params.nc1, params.nc2)
        self.assertLess(back.max_abs_diff(fl), 1e-15)

    def test_swap(self):
        fl = FluctuationSet(nt11=0.1, nt22=0.2, nt12=0.3, mt11=0.4, mt22=0.5, mt12=0.6)
        self.assertEqual(fl.swap().swap(), fl)
        self.assertEqual(fl.swap().nt11, 0.2)
        self.assertAlmostEqual(fl.f12, 0.9)

    def test_branch_label(self):
        self.assertIs(BranchLabel.from_str("plus"), BranchLabel.PLUS)
        self.assertEqual(BranchLabel.MINUS.sign, -1)
        self.assertEqual(str(BranchLabel.PLUS), "plus")
        with self.assertRaises(ValueError):
            BranchLabel.from_str("up")


class TestParamsFromDict(unittest.TestCase):
    def test_symmetric_shorthand(self):
        sym = params_from_dict({"m": 1.0, "g": 2.0, "lambda": -0.5, "n": 3.0, "nc": 2.0})
        self.assertEqual(sym, SymmetricParams(m=1.0, g=2.0, lam=-0.5, n=3.0, nc=2.0))

    def test_full_keys(self):
        data = balanced().to_dict()
        self.assertEqual(params_from_dict(data), balanced())

    def test_neither(self):
        with self.assertRaises(ParameterError):
            params_from_dict({"hbar": 1.0})


if __name__ == '__main__':
    unittest.main()
