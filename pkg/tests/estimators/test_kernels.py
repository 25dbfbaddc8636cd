

import unittest

import numpy as np

from fracdiff import specfun
from fracdiff.estimators import errors
from fracdiff.estimators.estimator_params import EstimatorParams
from fracdiff.estimators.estimators import affine_lambda, minimal_fractional_kernel, minimal_integer_kernel, quadrature_apply
from fracdiff.estimators.kernel_table import KernelTable
from fracdiff.fraccalc.frac_order import FracOrder


class TestKernelTable(unittest.TestCase):
    def test_init___valid_arrays___coefficients_are_products(self):
        table = KernelTable(taus=[0.0, 0.5, 1.0], qweights=[0.25, 0.5, 0.25], kvals=[-1.0, 0.0, 1.0], scale=6.0)
        np.testing.assert_array_equal(table.coefficients, [-0.25, 0.0, 0.25])
        self.assertEqual(table.m, 2)
        self.assertEqual(table.rule, "trapezoid")

    def test_init___arrays___read_only(self):
        table = KernelTable(taus=[0.0, 1.0], qweights=[0.5, 0.5], kvals=[1.0, 1.0], scale=1.0)
        with self.assertRaises(ValueError):
            table.kvals[0] = 2.0

    def test_init___length_mismatch___raises_LengthMismatch(self):
        with self.assertRaises(errors.LengthMismatch):
            KernelTable(taus=[0.0, 1.0], qweights=[0.5, 0.5], kvals=[1.0, 1.0, 1.0], scale=1.0)

    def test_init___weights_not_summing_to_one___raises_InvalidParameters(self):
        with self.assertRaises(errors.InvalidParameters):
            KernelTable(taus=[0.0, 1.0], qweights=[0.5, 0.6], kvals=[1.0, 1.0], scale=1.0)

    def test_init___non_finite_kernel___raises_InvalidParameters(self):
        with self.assertRaises(errors.InvalidParameters):
            KernelTable(taus=[0.0, 1.0], qweights=[0.5, 0.5], kvals=[np.inf, 1.0], scale=1.0)

    def test_init___unknown_rule___raises_InvalidParameters(self):
        with self.assertRaises(errors.InvalidParameters):
            KernelTable(taus=[0.0, 1.0], qweights=[0.5, 0.5], kvals=[1.0, 1.0], scale=1.0, rule="simpson")


class TestMinimalIntegerKernel(unittest.TestCase):
    def test_minimal_integer_kernel___first_order___closed_form(self):
        T, m = 0.5, 100
        table = minimal_integer_kernel(1, 0.0, 0.0, T, m)
        taus = np.arange(m + 1) / m
        np.testing.assert_allclose(table.kvals, 2.0 * taus - 1.0, rtol=0.0, atol=1e-14)
        self.assertAlmostEqual(table.scale, 6.0 / T, places=12)
        self.assertAlmostEqual(float(np.sum(table.qweights)), 1.0, places=14)
        self.assertEqual(table.qweights[0], 0.5 / m)
        self.assertEqual(table.qweights[1], 1.0 / m)

    def test_minimal_integer_kernel___order_zero___normalised_weight(self):
        # The zeroth order estimator is a weighted mean: scale * sum(q * w) ~ 1
        table = minimal_integer_kernel(0, 1.0, 2.0, 0.1, 1000)
        self.assertAlmostEqual(table.scale * float(np.sum(table.coefficients)), 1.0, places=5)

    def test_minimal_integer_kernel___repeated_call___shared_table(self):
        self.assertIs(minimal_integer_kernel(2, 0.0, 1.0, 0.25, 250), minimal_integer_kernel(2, 0.0, 1.0, 0.25, 250))

    def test_minimal_integer_kernel___too_few_intervals___raises_InvalidParameters(self):
        with self.assertRaises(errors.InvalidParameters):
            minimal_integer_kernel(2, 0.0, 0.0, 0.1, 2)

    def test_minimal_integer_kernel___bad_exponents___raises_InvalidParameters(self):
        with self.assertRaises(errors.InvalidParameters):
            minimal_integer_kernel(1, -1.0, 0.0, 0.1, 10)
        with self.assertRaises(errors.InvalidParameters):
            minimal_integer_kernel(1, 0.0, 0.0, 0.0, 10)
        with self.assertRaises(errors.InvalidParameters):
            minimal_integer_kernel(-1, 0.0, 0.0, 0.1, 10)

    def test_minimal_integer_kernel___float_order___raises_TypeError(self):
        with self.assertRaises(TypeError):
            minimal_integer_kernel(1.5, 0.0, 0.0, 0.1, 10)

    def test_minimal_integer_kernel___negative_exponent___midpoint_rule(self):
        table = minimal_integer_kernel(1, -0.5, 0.0, 0.1, 100)
        self.assertEqual(table.rule, "midpoint")
        self.assertTrue(np.all(np.isfinite(table.kvals)))


class TestMinimalFractionalKernel(unittest.TestCase):
    def test_minimal_fractional_kernel___integer_alpha___identical_to_integer_kernel(self):
        for n in (1, 2, 3):
            for k, mu in ((0.0, 0.0), (1.0, 0.5)):
                fractional = minimal_fractional_kernel(EstimatorParams(order=FracOrder(float(n)), k=k, mu=mu, T=0.25, m=250))
                integer = minimal_integer_kernel(n, k, mu, 0.25, 250)
                np.testing.assert_array_equal(fractional.kvals, integer.kvals)
                np.testing.assert_array_equal(fractional.qweights, integer.qweights)
                self.assertEqual(fractional.scale, integer.scale)

    def test_minimal_fractional_kernel___integer_alpha___scale_from_factorials(self):
        table = minimal_fractional_kernel(EstimatorParams(order=FracOrder(2.0), k=0.0, mu=1.0, T=0.25, m=250))
        expected = 2.0 / 0.25 ** 2 / specfun.beta(3.0, 4.0)
        self.assertAlmostEqual(table.scale / expected, 1.0, places=13)

    def test_minimal_fractional_kernel___half_order___scale_closed_form(self):
        T = 0.25
        table = minimal_fractional_kernel(EstimatorParams(order=FracOrder(0.5), k=0.0, mu=0.0, T=T, m=250))
        expected = specfun.gamma(0.5) / T ** 0.5 / specfun.beta(1.5, 2.0)
        self.assertAlmostEqual(table.scale / expected, 1.0, places=13)

    def test_minimal_fractional_kernel___degree_above_intervals___raises_InvalidParameters(self):
        with self.assertRaises(errors.InvalidParameters):
            minimal_fractional_kernel(EstimatorParams(order=FracOrder(1.5), k=0.0, mu=0.0, T=0.002, m=2))


class TestAffineLambda(unittest.TestCase):
    def test_affine_lambda___half_order___four(self):
        self.assertEqual(affine_lambda(0.5, 0.0, 0), 4.0)

    def test_affine_lambda___general___closed_form(self):
        self.assertAlmostEqual(affine_lambda(1.7, 1.0, 1), (3.4 - 1.0 + 1.0 + 1.0) / 0.7, places=12)

    def test_affine_lambda___near_integer___raises_NearIntegerOrder(self):
        with self.assertRaises(errors.NearIntegerOrder):
            affine_lambda(1.0005, 0.0, 1)


class TestQuadratureApply(unittest.TestCase):
    def test_quadrature_apply___samples___scaled_dot_product(self):
        table = KernelTable(taus=[0.0, 0.5, 1.0], qweights=[0.25, 0.5, 0.25], kvals=[-1.0, 0.0, 1.0], scale=6.0)
        self.assertEqual(quadrature_apply(table, [1.0, 5.0, 3.0]), 6.0 * (-0.25 + 0.75))

    def test_quadrature_apply___wrong_length___raises_LengthMismatch(self):
        table = KernelTable(taus=[0.0, 1.0], qweights=[0.5, 0.5], kvals=[1.0, 1.0], scale=1.0)
        with self.assertRaises(errors.LengthMismatch):
            quadrature_apply(table, [1.0, 2.0, 3.0])


if __name__ == "__main__":
    unittest.main()
