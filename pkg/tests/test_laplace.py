from __future__ import annotations

import math

import numpy as np
import pytest

from fracwave.errors import ContourFailure, DegenerateRootsError, DomainError, ValidationError
from fracwave.laplace import (ABKernelParams, forward_laplace_numeric, inv_formula_A, inv_formula_B,
                              inv_formula_C, inv_formula_D, inv_formula_E, inverse_laplace_numeric,
                              kernel_series, prabhakar_transform, quad_roots, root_formula)


class TestNumericTransforms:
    def test_forward(self):
        assert forward_laplace_numeric(lambda t: 1.0, 2.0) == pytest.approx(0.5, rel=1e-10)
        assert forward_laplace_numeric(lambda t: t, 1.0) == pytest.approx(1.0, rel=1e-10)
        assert forward_laplace_numeric(lambda t: math.exp(-t), 1.0) == pytest.approx(0.5, rel=1e-10)

    def test_inverse(self):
        assert inverse_laplace_numeric(lambda s: 1 / s**2, 3.0) == pytest.approx(3.0, rel=1e-9)
        assert inverse_laplace_numeric(lambda s: 1 / (s + 1), 1.0) == pytest.approx(math.exp(-1), rel=1e-9)
        assert inverse_laplace_numeric(lambda s: s**-0.5, 1.0) == pytest.approx(0.5641895835, rel=1e-9)

    def test_inverse_with_shift(self):
        # pole at s = 2 needs the contour moved right
        v = inverse_laplace_numeric(lambda s: 1 / (s - 2), 1.0, shift=3.0)
        assert v == pytest.approx(math.exp(2), rel=1e-8)

    def test_inverse_needs_positive_time(self):
        with pytest.raises(DomainError):
            inverse_laplace_numeric(lambda s: 1 / s, 0.0)

    def test_round_trip(self):
        f = lambda t: t * math.exp(-0.5 * t)
        F = lambda s: 1 / (s + 0.5) ** 2
        for s in (0.7, 1.5, 3.0):
            assert forward_laplace_numeric(f, s) == pytest.approx(F(s), rel=1e-10)
        for t in (0.3, 1.0, 4.0):
            assert inverse_laplace_numeric(F, t) == pytest.approx(f(t), rel=1e-9)

    def test_prabhakar_transform_exponential(self):
        # beta = gamma = delta = 1: e^{omega t} <-> 1/(s - omega)
        assert complex(prabhakar_transform(1, 1, 1, -2.0, 3.0)) == pytest.approx(0.2)


class TestSeriesFormulas:
    def test_A_examples(self):
        assert inv_formula_A(ABKernelParams(2.0, 1.0, 0.0, 4.0), math.pi / 2) == pytest.approx(-1.0, abs=1e-12)
        assert inv_formula_A(ABKernelParams(1.0, 0.5, 0.0, 1.0), 1.0) == pytest.approx(math.exp(-1), rel=1e-12)
        assert inv_formula_A(ABKernelParams(1.0, 0.0, 1.0, 1.0), 1.0) == pytest.approx(math.exp(-2), rel=1e-12)

    def test_B_examples(self):
        assert inv_formula_B(ABKernelParams(1.0, 0.0, 0.0, 1.0), 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-12)
        assert inv_formula_B(ABKernelParams(2.0, 1.0, 3.0, 2.0), 1.0) == pytest.approx(0.2325441579, rel=1e-9)

    def test_C_examples(self):
        assert inv_formula_C(ABKernelParams(1.0, 0.5, 0.0, 2.0), 1.0) == pytest.approx(math.exp(-2), rel=1e-12)
        assert inv_formula_C(ABKernelParams(1.0, 0.0, 1.0, 1.0), 1.0) == pytest.approx(math.exp(-2), rel=1e-12)

    @pytest.mark.parametrize("which", "ABC")
    def test_against_talbot(self, which):
        al, be, a, b = 0.9, 0.45, 0.7, 1.3
        F = {
            "A": lambda s: s ** (al - 1) / (s**al + a * s**be + b),
            "B": lambda s: s ** (be - 1) / (s**al + a * s**be + b),
            "C": lambda s: 1 / (s**al + a * s**be + b),
        }[which]
        f = {"A": inv_formula_A, "B": inv_formula_B, "C": inv_formula_C}[which]
        for t in (0.2, 1.0, 3.0):
            assert f(ABKernelParams(al, be, a, b), t) == pytest.approx(inverse_laplace_numeric(F, t), rel=1e-8)

    def test_vectorized_in_b(self):
        b = np.array([0.1, 1.0, 5.0])
        res = kernel_series("A", 0.8, 0.4, 0.5, b, 1.0)
        single = [inv_formula_A(ABKernelParams(0.8, 0.4, 0.5, x), 1.0) for x in b]
        np.testing.assert_allclose(res.value, single, rtol=1e-13)
        assert res.terms_used >= 1 and np.all(res.est_error >= 0)

    def test_params_validation(self):
        with pytest.raises(DomainError):
            ABKernelParams(0.5, 0.5, 1.0, 1.0)
        with pytest.raises(ValidationError):
            ABKernelParams(0.0, 0.0, 1.0, 1.0)
        with pytest.raises(ValidationError):
            ABKernelParams(1.0, 0.5, math.nan, 1.0)


class TestRootFormulas:
    def test_roots(self):
        r = quad_roots(3.0, 2.0)
        assert {r.lam, r.mu} == {-1.0, -2.0}
        r = quad_roots(0.0, -4.0)
        assert sorted([r.lam.real, r.mu.real]) == [-2.0, 2.0]
        r = quad_roots(2.0, 5.0)
        assert r.lam == pytest.approx(-1 + 2j) and r.mu == pytest.approx(-1 - 2j)

    @pytest.mark.parametrize("a,b", [(3.0, 2.0), (-1.5, 0.3), (1.0, 7.0), (1e8, 1.0)])
    def test_vieta(self, a, b):
        r = quad_roots(a, b)
        assert r.lam + r.mu == pytest.approx(-a, rel=1e-14)
        assert r.lam * r.mu == pytest.approx(b, rel=1e-14)

    def test_degenerate(self):
        with pytest.raises(DegenerateRootsError):
            quad_roots(2.0, 1.0)

    def test_D_examples(self):
        # roots -1 and -2: D = 2 e^-1 - e^-2
        assert inv_formula_D(1.0, 3.0, 2.0, 1.0) == pytest.approx(2 * math.exp(-1) - math.exp(-2), rel=1e-13)
        assert inv_formula_D(1.0, 3.0, 2.0, 0.0) == 1.0

    def test_E_example(self):
        assert inv_formula_E(1.0, 3.0, 2.0, 1.0) == pytest.approx(0.2325441579, rel=1e-9)

    def test_D_against_talbot(self):
        al, a, b = 0.5, 3.0, 2.0
        F = lambda s: (s ** (2 * al - 1) + a * s ** (al - 1)) / (s ** (2 * al) + a * s**al + b)
        assert inv_formula_D(al, a, b, 1.0) == pytest.approx(inverse_laplace_numeric(F, 1.0), rel=1e-6)

    def test_E_against_talbot(self):
        al, a, b = 0.75, 1.0, 1.0
        F = lambda s: 1 / (s ** (2 * al) + a * s**al + b)
        assert inv_formula_E(al, a, b, 2.0) == pytest.approx(inverse_laplace_numeric(F, 2.0), rel=1e-6)

    def test_complex_roots_give_real_values(self):
        res = root_formula("D", 0.7, 1.0, np.array([5.0, 9.0]), 1.3)
        assert res.imag_residue < 1e-10
        assert np.all(np.isfinite(res.value))

    def test_D_equals_A_plus_aB(self):
        al, a, b, t = 0.6, 1.2, 0.8, 1.5
        p = ABKernelParams(2 * al, al, a, b)
        ab = inv_formula_A(p, t) + a * inv_formula_B(p, t)
        assert inv_formula_D(al, a, b, t) == pytest.approx(ab, rel=1e-11)

    def test_E_equals_C(self):
        al, a, b, t = 0.6, 1.2, 0.8, 1.5
        c = kernel_series("C", 2 * al, al, a, np.array([b]), t)
        # the r-series carries cancellation error here; its estimate must cover the gap
        assert abs(inv_formula_E(al, a, b, t) - c.value[0].real) <= c.est_error[0]

    def test_E_requires_positive_time(self):
        with pytest.raises(DomainError):
            inv_formula_E(0.7, 3.0, 2.0, 0.0)

    def test_order_range(self):
        with pytest.raises(ValidationError):
            root_formula("D", 1.5, 3.0, [2.0], 1.0)
