from __future__ import annotations

import math

import numpy as np
import pytest

from fracwave.errors import (ArityError, DomainError, InsufficientResolution, SingularityWarning,
                             ValidationError)
from fracwave.fracops import (FracOrder, SampledFn, caputo_derivative, caputo_laplace_symbol,
                              gl_weights, riesz_symbol, rl_derivative, rl_integral)

N = 2001


def sampled(f, t_end):
    return SampledFn.from_callable(f, t_end, N)


class TestSampledFn:
    def test_rejects_unsorted(self):
        with pytest.raises(ValidationError):
            SampledFn(np.array([0.0, 2.0, 1.0]), np.zeros(3))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValidationError):
            SampledFn(np.array([0.0, 1.0]), np.zeros(3))

    def test_uniform_flag(self):
        assert sampled(lambda t: t, 1.0).uniform
        with pytest.raises(ValidationError):
            SampledFn(np.array([0.0, 1.0, 3.0]), np.zeros(3), uniform=True)

    def test_outside_range(self):
        with pytest.raises(DomainError):
            rl_integral(sampled(lambda t: 1.0, 1.0), 0.5, 2.0)


class TestRLIntegral:
    def test_constant(self):
        assert rl_integral(sampled(lambda t: 1.0, 2.0), 1.0, 2.0) == pytest.approx(2.0, rel=1e-12)

    def test_linear(self):
        assert rl_integral(sampled(lambda t: t, 1.0), 1.0, 1.0) == pytest.approx(0.5, rel=1e-12)

    def test_half_order(self):
        ref = 2 / math.sqrt(math.pi)
        assert rl_integral(sampled(lambda t: 1.0, 1.0), 0.5, 1.0) == pytest.approx(ref, rel=1e-12)

    def test_semigroup(self):
        # I^a I^b t = I^{a+b} t = t**(1+a+b) / Gamma(2+a+b)
        a, b = 0.3, 0.6
        t = np.linspace(0, 1, N)
        inner = SampledFn(t, np.array([rl_integral(SampledFn(t, t), b, x) if x > 0 else 0.0 for x in t]))
        ref = 1 / math.gamma(2 + a + b)
        assert rl_integral(inner, a, 1.0) == pytest.approx(ref, rel=1e-5)

    def test_bad_order(self):
        with pytest.raises(ValidationError):
            rl_integral(sampled(lambda t: 1.0, 1.0), 0.0, 1.0)


class TestDerivatives:
    def test_rl_constant(self):
        v = rl_derivative(sampled(lambda t: 1.0, 1.0), 0.5, 1.0)
        assert v == pytest.approx(1 / math.sqrt(math.pi), rel=1e-10)

    def test_rl_linear(self):
        assert rl_derivative(sampled(lambda t: t, 1.0), 1.0, 1.0) == pytest.approx(1.0, rel=1e-10)
        assert rl_derivative(sampled(lambda t: t, 1.0), 0.5, 1.0) == pytest.approx(2 / math.sqrt(math.pi), rel=1e-10)

    def test_rl_singular_at_origin(self):
        with pytest.raises(DomainError):
            rl_derivative(sampled(lambda t: 1.0, 1.0), 0.5, 0.0)

    def test_rl_warns_near_origin(self):
        with pytest.warns(SingularityWarning):
            rl_derivative(sampled(lambda t: 1.0, 1.0), 0.5, 1e-3)

    def test_caputo_constant_is_zero(self):
        assert abs(caputo_derivative(sampled(lambda t: 3.0, 1.0), 0.5, 1.0)) < 1e-12

    def test_caputo_linear(self):
        v = caputo_derivative(sampled(lambda t: t, 1.0), 0.5, 1.0)
        assert v == pytest.approx(2 / math.sqrt(math.pi), rel=1e-10)

    def test_caputo_integer_order(self):
        assert caputo_derivative(sampled(lambda t: t**2, 3.0), 1.0, 3.0) == pytest.approx(6.0, rel=1e-8)

    def test_caputo_power(self):
        # D^a t**2 = 2 t**(2-a) / Gamma(3-a)
        a = 0.7
        v = caputo_derivative(sampled(lambda t: t**2, 1.0), a, 1.0)
        assert v == pytest.approx(2 / math.gamma(3 - a), rel=1e-5)

    def test_caputo_rl_relation(self):
        # RL = Caputo + f(0) t**-a / Gamma(1-a)
        a, f0 = 0.4, 2.0
        f = sampled(lambda t: f0 + np.sin(t), 2.0)
        diff = rl_derivative(f, a, 2.0) - caputo_derivative(f, a, 2.0)
        assert diff == pytest.approx(f0 * 2.0 ** (-a) / math.gamma(1 - a), rel=1e-10)

    def test_unresolved_derivative(self):
        with pytest.raises(InsufficientResolution):
            caputo_derivative(SampledFn.from_callable(lambda t: t, 1.0, 4), 1.5, 1.0)

    def test_frac_order_dispatch(self):
        f = sampled(lambda t: t, 1.0)
        assert FracOrder(0.5, "caputo").apply(f, 1.0) == pytest.approx(2 / math.sqrt(math.pi), rel=1e-10)
        assert FracOrder(1.5, "caputo").m == 2
        with pytest.raises(ValidationError):
            FracOrder(0.5, "weyl").apply(f, 1.0)
        with pytest.raises(ValidationError):
            FracOrder(0.5, "other")


class TestSymbols:
    def test_gl_weights(self):
        np.testing.assert_allclose(gl_weights(1.0, 2), [1, -1, 0], atol=1e-15)
        np.testing.assert_allclose(gl_weights(2.0, 3), [1, -2, 1, 0], atol=1e-15)

    def test_gl_weights_sum(self):
        # sum_j w_j -> 0 for alpha > 0 (generating function (1 - z)**alpha at z = 1)
        assert abs(gl_weights(0.6, 20000).sum()) < 1e-2

    def test_gl_derivative_of_linear(self):
        a, n = 0.5, 4000
        h = 1.0 / n
        t = h * np.arange(n + 1)
        v = (gl_weights(a, n)[::-1] @ t) / h**a
        assert v == pytest.approx(2 / math.sqrt(math.pi), rel=1e-3)

    def test_riesz(self):
        assert riesz_symbol(2.0, 3.0) == pytest.approx(-9.0)
        assert riesz_symbol(1.3, 0.0) == 0.0
        assert riesz_symbol(1.5, -2.0) == pytest.approx(-2.8284271247, rel=1e-10)
        with pytest.raises(ValidationError):
            riesz_symbol(0.0, 1.0)

    def test_caputo_symbol(self):
        s, c = 2.0, 1.7
        assert abs(caputo_laplace_symbol(1.0, s, [c], F=c / s)) < 1e-15
        assert caputo_laplace_symbol(0.5, s, [1.0]) == pytest.approx(-s**-0.5)
        assert caputo_laplace_symbol(2.0, s, [1.0, 0.0]) == pytest.approx(-s)

    def test_caputo_symbol_arity(self):
        with pytest.raises(ArityError):
            caputo_laplace_symbol(1.5, 1.0, [1.0])
