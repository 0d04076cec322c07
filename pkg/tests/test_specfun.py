import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgsolve.errors import DomainError, NoConvergence
from kgsolve.specfun import (
    JacobiIndex,
    integrate,
    jacobi_deriv,
    jacobi_eval,
    jacobi_norm_integral,
    log_gamma,
)

from oracles import gauss_panel_integral, jacobi_series


class TestJacobiEval:
    def test_degree_zero_is_one(self):
        idx = JacobiIndex(0.7, 2.3)
        for x in (-1.0, -0.2, 0.0, 0.9, 1.0):
            assert jacobi_eval(0, idx, x) == 1.0

    def test_degree_one_explicit(self):
        a, b, x = 1.8, 0.4, 0.37
        expected = (a - b) / 2 + (a + b + 2) * x / 2
        assert jacobi_eval(1, JacobiIndex(a, b), x) == pytest.approx(expected, rel=1e-15)

    def test_n3_idx_2_1_at_half(self):
        # frozen from the hypergeometric series: the value is exactly -1/16
        assert jacobi_eval(3, JacobiIndex(2.0, 1.0), 0.5) == pytest.approx(-0.0625, abs=1e-14)
        assert jacobi_series(3, 2.0, 1.0, 0.5) == pytest.approx(-0.0625, abs=1e-14)

    @pytest.mark.parametrize("n", range(9))
    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 3.7])
    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0, 3.7])
    def test_recurrence_matches_series_oracle(self, n, a, b):
        idx = JacobiIndex(a, b)
        for x in (-0.9, 0.0, 0.3, 1.0):
            ref = jacobi_series(n, a, b, x)
            assert jacobi_eval(n, idx, x) == pytest.approx(ref, rel=1e-10, abs=1e-12)

    @pytest.mark.parametrize("n,a,b", [(2, 0.5, 1.5), (4, 2.0, 0.3), (6, 3.7, 3.7)])
    def test_value_at_one_is_binomial(self, n, a, b):
        expected = math.exp(math.lgamma(n + a + 1) - math.lgamma(n + 1) - math.lgamma(a + 1))
        assert jacobi_eval(n, JacobiIndex(a, b), 1.0) == pytest.approx(expected, rel=1e-12)

    @given(
        st.integers(min_value=0, max_value=10),
        st.floats(min_value=-0.9, max_value=4.0),
        st.floats(min_value=-0.9, max_value=4.0),
        st.floats(min_value=-1.0, max_value=1.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_reflection_symmetry(self, n, a, b, x):
        left = jacobi_eval(n, JacobiIndex(a, b), -x)
        right = (-1.0) ** n * jacobi_eval(n, JacobiIndex(b, a), x)
        assert left == pytest.approx(right, rel=1e-9, abs=1e-9)

    def test_vectorized_matches_scalar(self):
        idx = JacobiIndex(2.2, 0.8)
        xs = np.linspace(-1.0, 1.0, 17)
        vec = jacobi_eval(5, idx, xs)
        for x, v in zip(xs, vec):
            assert v == pytest.approx(jacobi_eval(5, idx, float(x)), rel=1e-14)

    def test_rejects_x_outside_domain(self):
        with pytest.raises(DomainError):
            jacobi_eval(2, JacobiIndex(1.0, 1.0), 1.001)

    def test_rejects_bad_index_pair(self):
        with pytest.raises(DomainError):
            JacobiIndex(-1.0, 0.5)

    def test_derivative_identity_against_finite_differences(self):
        idx = JacobiIndex(1.3, 2.1)
        h = 1e-6
        for x in (-0.5, 0.1, 0.7):
            fd = (jacobi_eval(4, idx, x + h) - jacobi_eval(4, idx, x - h)) / (2 * h)
            assert jacobi_deriv(4, idx, x) == pytest.approx(fd, rel=1e-8)


class TestThreeTermIdentity:
    """The contiguous recurrence both sides evaluated via the series oracle."""

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("zz", [(0.5, 1.5), (2.0, 1.0), (3.7, 0.5)])
    def test_identity_holds(self, n, zz):
        z, zp = zz
        for x in (-0.8, -0.3, 0.2, 0.6, 0.95):
            lhs = 2 * n * (z + zp + n) * (z + zp + 2 * n - 2) * jacobi_series(n, z, zp, x)
            rhs = (
                (z + zp + 2 * n - 1) * (z * z - zp * zp) * jacobi_series(n - 1, z, zp, x)
                + (z + zp + 2 * n - 1) * (z + zp + 2 * n) * (z + zp + 2 * n - 2)
                * x * jacobi_series(n - 1, z, zp, x)
                - 2 * (z + n - 1) * (zp + n - 1) * (z + zp + 2 * n) * jacobi_series(n - 2, z, zp, x)
            )
            assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


class TestNormIntegral:
    def test_trivial_flat_weight(self):
        assert jacobi_norm_integral(0, 1.0, 0.0) == pytest.approx(2.0, rel=1e-14)

    def test_trivial_linear_weight(self):
        assert jacobi_norm_integral(0, 2.0, 0.0) == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("n,z,zp", [(2, 3.0, 1.5), (1, 0.5, 0.5), (4, 2.2, 0.0)])
    def test_matches_quadrature_of_defining_integral(self, n, z, zp):
        # integrate in t = 1 - x so the (1-x)^(z-1) singularity sits at t = 0,
        # where panel subdivision can march arbitrarily deep
        def f(t):
            p = np.array([jacobi_series(n, z, zp, 1.0 - ti) for ti in np.atleast_1d(t)])
            return t ** (z - 1.0) * (2.0 - t) ** zp * p * p

        ref = integrate(f, 0.0, 2.0, 1e-12)
        assert jacobi_norm_integral(n, z, zp) == pytest.approx(ref, rel=1e-9)

    def test_rejects_nonpositive_z(self):
        with pytest.raises(DomainError):
            jacobi_norm_integral(1, 0.0, 1.0)


class TestLogGamma:
    def test_at_one(self):
        assert log_gamma(1.0) == 0.0

    def test_at_half(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-15)

    def test_recursion_oracle_from_reference_point(self):
        # ln Gamma(1.3) to 25 digits (high-precision reference)
        lg13 = -0.1081748095078604709455781
        ref = math.log(6.3 * 5.3 * 4.3 * 3.3 * 2.3 * 1.3) + lg13
        assert log_gamma(7.3) == pytest.approx(ref, abs=1e-12)

    def test_against_mpmath_sweep(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 40
        for x in (0.5, 0.9, 1.0, 1.5, 3.25, 7.3, 25.0, 120.5, 3000.0, 1e6):
            ref = float(mp.loggamma(mp.mpf(repr(x))))
            tol = max(1e-12, 4.0 * abs(ref) * 2.3e-16)
            assert abs(log_gamma(x) - ref) < tol

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            log_gamma(0.0)


class TestIntegrate:
    def test_constant(self):
        assert integrate(lambda x: np.ones_like(x), 0.0, 1.0, 1e-10) == pytest.approx(1.0, abs=1e-10)

    def test_inverse_sqrt_endpoint_singularity(self):
        val = integrate(lambda x: x ** -0.5, 0.0, 1.0, 1e-9)
        assert val == pytest.approx(2.0, abs=1e-8)

    def test_infinite_upper_limit(self):
        val = integrate(lambda r: np.exp(-r), 0.0, math.inf, 1e-10)
        assert val == pytest.approx(1.0, abs=1e-9)

    def test_scalar_only_callable_is_accepted(self):
        val = integrate(lambda x: math.sin(float(x)), 0.0, math.pi, 1e-10)
        assert val == pytest.approx(2.0, abs=1e-9)

    def test_divergent_integrand_raises(self):
        with pytest.raises(NoConvergence):
            integrate(lambda x: 1.0 / x, 0.0, 1.0, 1e-10)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(DomainError):
            integrate(lambda x: x, 0.0, 1.0, -1.0)

    def test_against_fixed_panel_oracle(self):
        f = lambda x: np.sin(3.0 * x) * np.exp(-x * x)
        ref = gauss_panel_integral(f, -2.0, 2.0)
        assert integrate(f, -2.0, 2.0, 1e-12) == pytest.approx(ref, abs=1e-10)
