

import itertools
import math
import unittest

import numpy as np
from scipy import integrate

from fracdiff import specfun
from fracdiff.specfun import errors
from fracdiff.specfun.jacobi_params import JacobiParams


class TestGamma(unittest.TestCase):
    def test_gamma___half___equals_sqrt_pi(self):
        self.assertAlmostEqual(specfun.gamma(0.5), math.sqrt(math.pi), places=14)

    def test_gamma___positive_integer___equals_factorial(self):
        self.assertEqual(specfun.gamma(6), 120.0)

    def test_gamma___zero_and_negative_integers___raises_PoleError(self):
        for x in (0, -1, -2.0):
            with self.assertRaises(errors.PoleError):
                specfun.gamma(x)

    def test_gamma___negative_half___finite(self):
        self.assertAlmostEqual(specfun.gamma(-0.5), -2.0 * math.sqrt(math.pi), places=13)

    def test_gamma___above_threshold___raises_GammaOverflowError(self):
        with self.assertRaises(errors.GammaOverflowError):
            specfun.gamma(200.0)

    def test_gamma___bool___raises_TypeError(self):
        with self.assertRaises(TypeError):
            specfun.gamma(True)

    def test_ln_gamma___large_argument___matches_lgamma(self):
        self.assertAlmostEqual(specfun.ln_gamma(500.5), math.lgamma(500.5), places=9)

    def test_ln_gamma___non_positive___raises_DomainError(self):
        with self.assertRaises(errors.DomainError):
            specfun.ln_gamma(0.0)

    def test_beta___two_two___equals_one_sixth(self):
        self.assertAlmostEqual(specfun.beta(2, 2), 1.0 / 6.0, places=15)

    def test_beta___one_and_half_two___matches_gamma_ratio(self):
        expected = specfun.gamma(1.5) * specfun.gamma(2.0) / specfun.gamma(3.5)
        self.assertAlmostEqual(specfun.beta(1.5, 2.0) / expected, 1.0, places=13)

    def test_gamma___log_spaced_arguments___satisfies_recursion(self):
        for x in np.geomspace(0.1, 30.0, 200):
            x = float(x)
            self.assertLess(abs(specfun.gamma(x + 1.0) / (x * specfun.gamma(x)) - 1.0), 1e-12, msg=f"x={x}")

    def test_gamma___four_point_three___reduces_to_point_three(self):
        expected = 3.3 * 2.3 * 1.3 * 0.3 * math.gamma(0.3)
        self.assertLess(abs(specfun.gamma(4.3) / expected - 1.0), 1e-13)

    def test_ln_gamma___hundred___matches_stirling_series(self):
        x = 100.0
        stirling = (
            (x - 0.5) * math.log(x) - x + 0.5 * math.log(2.0 * math.pi)
            + 1.0 / (12.0 * x) - 1.0 / (360.0 * x ** 3) + 1.0 / (1260.0 * x ** 5) - 1.0 / (1680.0 * x ** 7)
        )
        self.assertLess(abs(specfun.ln_gamma(x) / stirling - 1.0), 1e-12)

    def test_beta___one_and_half_two_point_seven___matches_weighted_quadrature(self):
        # quad's algebraic weight integrates tau**0.5 * (1 - tau)**1.7 = B(1.5, 2.7) against 1
        value, _ = integrate.quad(lambda tau: 1.0, 0.0, 1.0, weight="alg", wvar=(0.5, 1.7), epsabs=1e-14, epsrel=1e-13)
        self.assertLess(abs(specfun.beta(1.5, 2.7) / value - 1.0), 1e-10)

    def test_beta___non_positive_argument___raises_DomainError(self):
        with self.assertRaises(errors.DomainError):
            specfun.beta(0.0, 1.0)


class TestGenBinomial(unittest.TestCase):
    def test_gen_binomial___integer_arguments___matches_comb(self):
        self.assertEqual(specfun.gen_binomial(5, 2), 10.0)

    def test_gen_binomial___all_integer_arguments_up_to_twelve___exact(self):
        for a in range(13):
            for j in range(13):
                self.assertEqual(specfun.gen_binomial(a, j), float(math.comb(a, j)), msg=f"a={a}, j={j}")
                self.assertEqual(specfun.gen_binomial(float(a), j), float(math.comb(a, j)), msg=f"a={a}.0, j={j}")

    def test_gen_binomial___j_above_integer_a___zero(self):
        self.assertEqual(specfun.gen_binomial(2, 3), 0.0)

    def test_gen_binomial___negative_integer_a___alternating_limit(self):
        # binom(-1, j) = (-1)**j, binom(-2, 2) = 3
        self.assertEqual(specfun.gen_binomial(-1, 3), -1.0)
        self.assertEqual(specfun.gen_binomial(-2, 2), 3.0)

    def test_gen_binomial___half___matches_product_formula(self):
        self.assertAlmostEqual(specfun.gen_binomial(0.5, 2), 0.5 * -0.5 / 2.0, places=15)
        self.assertAlmostEqual(specfun.gen_binomial(0.5, 3), 0.5 * -0.5 * -1.5 / 6.0, places=15)

    def test_gen_binomial___negative_j___raises_DomainError(self):
        with self.assertRaises(errors.DomainError):
            specfun.gen_binomial(0.5, -1)

    def test_gen_binomial_array___fractional___matches_signed_gen_binomial(self):
        weights = specfun.gen_binomial_array(0.7, 40)
        expected = np.array([(-1) ** i * specfun.gen_binomial(0.7, i) for i in range(40)])
        np.testing.assert_allclose(weights, expected, rtol=1e-12, atol=0.0)

    def test_gen_binomial_array___integer___terminates_with_zeros(self):
        np.testing.assert_array_equal(specfun.gen_binomial_array(2.0, 5), [1.0, -2.0, 1.0, 0.0, 0.0])

    def test_gen_binomial_array___weights_sum_towards_zero(self):
        # sum_i (-1)**i binom(alpha, i) = 0 for alpha > 0, slowly
        weights = specfun.gen_binomial_array(0.5, 200000)
        self.assertLess(abs(weights.sum()), 1e-2)


class TestJacobi(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.taus = np.linspace(0.0, 1.0, 11)

    def test_jacobi_eval___degree_zero___one(self):
        np.testing.assert_array_equal(specfun.jacobi_eval(JacobiParams(n=0, mu=0.3, k=2.0), self.taus), np.ones(11))

    def test_jacobi_eval___degree_one___closed_forms(self):
        np.testing.assert_allclose(specfun.jacobi_eval(JacobiParams(n=1, mu=0, k=0), self.taus), 2 * self.taus - 1, atol=1e-15)
        np.testing.assert_allclose(specfun.jacobi_eval(JacobiParams(n=1, mu=1, k=0), self.taus), 3 * self.taus - 1, atol=1e-15)
        np.testing.assert_allclose(specfun.jacobi_eval(JacobiParams(n=1, mu=0, k=1), self.taus), 3 * self.taus - 2, atol=1e-15)

    def test_jacobi_eval___shifted_legendre_degree_two___closed_form(self):
        expected = 6 * self.taus ** 2 - 6 * self.taus + 1
        np.testing.assert_allclose(specfun.jacobi_eval(JacobiParams(n=2, mu=0, k=0), self.taus), expected, atol=1e-14)

    def test_jacobi_eval___scalar___returns_float(self):
        value = specfun.jacobi_eval(JacobiParams(n=1, mu=0, k=0), 0.25)
        self.assertIsInstance(value, float)
        self.assertEqual(value, -0.5)

    def test_jacobi_eval___outside_unit_interval___raises_DomainError(self):
        with self.assertRaises(errors.DomainError):
            specfun.jacobi_eval(JacobiParams(n=1, mu=0, k=0), 1.5)

    def test_jacobi_weight___endpoints_with_zero_exponents___one(self):
        p = JacobiParams(n=0, mu=0, k=0)
        self.assertEqual(specfun.jacobi_weight(p, 0.0), 1.0)
        self.assertEqual(specfun.jacobi_weight(p, 1.0), 1.0)

    def test_jacobi_weight___negative_mu_at_one___raises_SingularEndpointError(self):
        with self.assertRaises(errors.SingularEndpointError):
            specfun.jacobi_weight(JacobiParams(n=0, mu=-0.5, k=0), 1.0)

    def test_jacobi_weight___negative_k_at_zero___raises_SingularEndpointError(self):
        with self.assertRaises(errors.SingularEndpointError):
            specfun.jacobi_weight(JacobiParams(n=0, mu=0, k=-0.5), np.array([0.0, 0.5]))

    def test_jacobi_eval___fractional_exponents___orthogonal_under_weight(self):
        mu, k = 0.5, 1.5
        weight = JacobiParams(n=0, mu=mu, k=k)
        for i, j in ((0, 1), (1, 2), (2, 3), (0, 3)):
            p_i, p_j = JacobiParams(n=i, mu=mu, k=k), JacobiParams(n=j, mu=mu, k=k)
            value, _ = integrate.quad(
                lambda tau: specfun.jacobi_weight(weight, tau) * specfun.jacobi_eval(p_i, tau) * specfun.jacobi_eval(p_j, tau),
                0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200,
            )
            self.assertLess(abs(value), 1e-10, msg=f"degrees {i}, {j}")

    def test_jacobi_weight___negative_half_mu_near_one___ten(self):
        self.assertAlmostEqual(specfun.jacobi_weight(JacobiParams(n=0, mu=-0.5, k=0.0), 0.99), 10.0, places=12)

    def test_jacobi_eval___exponent_grid_up_to_degree_six___orthogonal_under_weight(self):
        for mu, k in itertools.product((0.0, 1.0, 2.5), repeat=2):
            polynomials = [JacobiParams(n=n, mu=mu, k=k) for n in range(7)]
            for i, j in itertools.combinations(range(7), 2):
                # quad's algebraic weight is tau**k * (1 - tau)**mu, leaving a polynomial integrand
                value, _ = integrate.quad(
                    lambda tau: specfun.jacobi_eval(polynomials[i], tau) * specfun.jacobi_eval(polynomials[j], tau),
                    0.0, 1.0, weight="alg", wvar=(k, mu), epsabs=1e-13, epsrel=1e-12, limit=200,
                )
                self.assertLess(abs(value), 1e-10, msg=f"mu={mu}, k={k}, degrees {i}, {j}")

    def test_jacobi_eval___large_degree_at_one___equals_binomial(self):
        # P_n(1) = binom(n + mu, n)
        p = JacobiParams(n=10, mu=0.5, k=0.25)
        self.assertAlmostEqual(specfun.jacobi_eval(p, 1.0) / specfun.gen_binomial(10.5, 10), 1.0, places=12)


class TestJacobiParams(unittest.TestCase):
    def test_init___integral_float_degree___normalised_to_int(self):
        p = JacobiParams(n=2.0, mu=0, k=0)
        self.assertIsInstance(p.n, int)
        self.assertIsInstance(p.mu, float)

    def test_init___numpy_integer_degree___accepted(self):
        self.assertEqual(JacobiParams(n=np.int64(3), mu=0, k=0).n, 3)

    def test_init___fractional_degree___raises_TypeError(self):
        with self.assertRaises(TypeError):
            JacobiParams(n=1.5, mu=0, k=0)

    def test_init___exponent_at_minus_one___raises_DomainError(self):
        with self.assertRaises(errors.DomainError):
            JacobiParams(n=1, mu=-1, k=0)
        with self.assertRaises(errors.DomainError):
            JacobiParams(n=1, mu=0, k=-1.5)


if __name__ == "__main__":
    unittest.main()
