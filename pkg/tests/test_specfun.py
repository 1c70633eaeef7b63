from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import special

from fracwave.errors import ConvergenceFailure, OverflowSignal, PoleError, ValidationError
from fracwave.specfun import (SeriesControl, gamma_fn, loggamma, ml_batch, mittag_leffler,
                              mittag_leffler2, pochhammer, prabhakar, series_terms)


def mp_prabhakar(alpha, beta, gam, z, dps=40):
    """Taylor series in extended precision."""
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        return complex(mpmath.nsum(lambda n: mpmath.rf(gam, n) / mpmath.gamma(alpha * n + beta)
                                   * z**n / mpmath.factorial(n), [0, mpmath.inf]))


class TestGamma:
    def test_values(self):
        assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-15)
        assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
        assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-15)

    def test_poles(self):
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                gamma_fn(x)

    def test_complex_matches_mpmath(self):
        z = 1.3 + 2.1j
        assert complex(gamma_fn(z)) == pytest.approx(complex(mpmath.gamma(z)), rel=1e-13)

    def test_loggamma_large(self):
        assert loggamma(200.0) == pytest.approx(float(mpmath.loggamma(200)), rel=1e-14)


class TestPochhammer:
    def test_values(self):
        assert pochhammer(3, 4) == pytest.approx(360.0)
        assert pochhammer(2.7, 0) == 1.0
        for r in range(8):
            assert pochhammer(1, r) == pytest.approx(math.factorial(r))

    def test_negative_count_rejected(self):
        with pytest.raises(ValidationError):
            pochhammer(1.0, -1)


class TestMittagLeffler:
    def test_exponential(self):
        assert float(mittag_leffler(1, 1)) == pytest.approx(math.e, rel=1e-14)

    def test_cosine(self):
        assert float(mittag_leffler(2, -1)) == pytest.approx(math.cos(1), rel=1e-14)

    def test_half_order(self):
        ref = math.e * special.erfc(-1.0)
        assert float(mittag_leffler(0.5, 1)) == pytest.approx(ref, rel=1e-13)

    def test_two_parameter(self):
        assert float(mittag_leffler2(1, 2, 1)) == pytest.approx(math.e - 1, rel=1e-14)
        assert float(mittag_leffler2(1, 3, 1)) == pytest.approx(math.e - 2, rel=1e-13)
        for beta in (0.5, 1.0, 2.5):
            assert float(mittag_leffler2(0.7, beta, 0)) == pytest.approx(1 / math.gamma(beta), rel=1e-15)

    def test_prabhakar(self):
        assert float(prabhakar(1, 1, 2, 1)) == pytest.approx(2 * math.e, rel=1e-14)

    def test_recurrence(self):
        # E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b)
        z = np.array([-3.0, -0.5, 0.4, 2.0, 1 + 1j, -20.0, -40 + 3j])
        for a, b in ((0.6, 1.0), (0.9, 0.7), (1.5, 1.2)):
            lhs = ml_batch(a, b, 1, z).values
            rhs = z * ml_batch(a, a + b, 1, z).values + 1 / math.gamma(b)
            np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-12)

    def test_recurrence_strict_in_disc(self, rng):
        r = 10 * np.sqrt(rng.random(200))
        z = r * np.exp(2j * np.pi * rng.random(200))
        for a, b in ((0.5, 1.0), (0.8, 0.6), (1.0, 1.0), (1.7, 2.2)):
            lhs = ml_batch(a, b, 1, z).values
            rhs = z * ml_batch(a, a + b, 1, z).values + 1 / math.gamma(b)
            assert np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(lhs))) <= 1e-12

    @pytest.mark.parametrize("alpha,beta,gam,z", [
        (0.5, 1.0, 1.0, -2.0),
        (0.8, 1.3, 1.5, -10.0),
        (0.7, 0.9, 2.0, 3.0 + 4.0j),
        (1.2, 1.0, 0.5, -25.0 + 1.0j),
        (0.9, 0.5, 1.0, 25.0),
        (1.8, 2.0, 1.0, -60.0),
        (0.4, 1.0, 3.0, -8.0 - 8.0j),
    ])
    def test_matches_extended_precision(self, alpha, beta, gam, z):
        v = ml_batch(alpha, beta, gam, np.array([z], dtype=complex))
        ref = mp_prabhakar(alpha, beta, gam, z, dps=60)
        assert abs(v.values[0] - ref) <= 1e-10 * max(abs(ref), 1e-3)

    def test_regimes_agree_across_boundary(self):
        # just inside and just outside the series radius
        a = 0.8
        for r in (29.9, 30.1):
            z = -(r ** a) * np.exp(0.3j)
            v = ml_batch(a, 1.0, 1.0, np.array([z])).values[0]
            assert abs(v - mp_prabhakar(a, 1.0, 1.0, z, dps=80)) < 1e-11

    def test_batch_metadata(self):
        b = ml_batch(0.9, 1.0, 1.0, np.array([0.5, -200.0, 3j]))
        assert set(b.regime) <= {"series", "asymptotic", "integral"}
        assert b.regime[0] == "series"
        assert np.all(b.est_error >= 0) and np.all(b.terms_used >= 1)
        assert len(b) == 3

    def test_invalid_orders(self):
        with pytest.raises(ValidationError):
            ml_batch(0.0, 1.0, 1.0, [1.0])
        with pytest.raises(ValidationError):
            ml_batch(1.0, 1.0, 1.0, [np.inf])

    def test_tight_budget_fails_loudly(self):
        with pytest.raises(ConvergenceFailure):
            ml_batch(1.0, 1.0, 1.0, np.array([4.0]), SeriesControl(max_terms=3))

    def test_overflow_is_signalled(self):
        with pytest.raises(OverflowSignal):
            ml_batch(0.2, 1.0, 1.0, np.array([4.0]))

    def test_series_terms_partial_sums(self):
        rows = series_terms(1.0, 1.0, 1.0, 1.0)
        assert rows[0][0] == 0
        assert abs(rows[-1][2] - math.e) < 1e-12

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.3, 1.9), st.floats(0.3, 2.5), st.floats(-15.0, 4.0))
    def test_real_argument_is_real_and_matches_series(self, alpha, beta, x):
        v = ml_batch(alpha, beta, 1.0, np.array([x], dtype=complex)).values[0]
        assert abs(v.imag) <= 1e-12 * max(1.0, abs(v))
        ref = mp_prabhakar(alpha, beta, 1.0, x, dps=50)
        assert abs(v - ref) <= 1e-9 * max(abs(ref), 1e-2)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.2, 1.5), st.floats(-6.0, 6.0), st.floats(-6.0, 6.0))
    def test_conjugate_symmetry(self, alpha, x, y):
        z = np.array([x + 1j * y, x - 1j * y])
        # exp(|z|**(1/alpha)) must stay inside the double range
        assume(abs(z[0]) ** (1 / alpha) < 600)
        v = ml_batch(alpha, 1.0, 1.0, z).values
        assert abs(v[0] - np.conj(v[1])) <= 1e-12 * max(1.0, abs(v[0]))
