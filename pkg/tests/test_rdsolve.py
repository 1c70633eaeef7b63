from __future__ import annotations

import io
import json
import math

import numpy as np
import pytest

from fracwave.errors import DomainError, ValidationError
from fracwave.presets import PRESETS, gaussian_source, get_preset, run_preset
from fracwave.rdsolve import (Grid, InitialCondition, KQuadrature, Profile, RDParams, SourceTerm,
                              corollary2_params, greens_fourier_laplace, solution_fourier_time,
                              solve_delta_ic, solve_profile, solve_telegraph, telegraph_fourier,
                              telegraph_root_form)

HEAT = RDParams(1.0, 0.5, 2.0, a=0.0, nu=1.0, xi=0.0)


class TestParams:
    @pytest.mark.parametrize("kw", [
        dict(alpha=0.0, beta=0.0), dict(alpha=2.5, beta=0.1), dict(alpha=0.8, beta=0.8),
        dict(alpha=0.8, beta=-0.1), dict(alpha=0.8, beta=0.4, gamma_space=2.5),
        dict(alpha=0.8, beta=0.4, nu=0.0), dict(alpha=0.8, beta=0.4, a=math.inf),
    ])
    def test_rejected(self, kw):
        with pytest.raises(ValidationError):
            RDParams(**kw)

    def test_mode_coefficient(self):
        p = RDParams(0.9, 0.45, 1.5, a=1.0, nu=2.0, xi=0.5)
        assert p.b(-4.0) == pytest.approx(4 * 8 - 0.25)

    def test_grid_validation(self):
        with pytest.raises(ValidationError):
            Grid([0.0, 0.0], [1.0])
        with pytest.raises(ValidationError):
            Grid([0.0, 1.0], [-1.0])


class TestFourierTime:
    def test_greens_example(self):
        p = RDParams(0.8, 0.4, a=1.0, nu=1.0)
        b = p.b(0.7)
        assert greens_fourier_laplace(0.7, 1.0, p, 1.0) == pytest.approx(2 / (2 + b))
        with pytest.raises(DomainError):
            greens_fourier_laplace(0.7, -1.0, p, 1.0)

    def test_heat_mode(self):
        k, t = 1.3, 0.7
        assert solution_fourier_time(k, t, HEAT) == pytest.approx(math.exp(-k * k * t), rel=1e-12)

    def test_wave_mode(self):
        p = RDParams(2.0, 1.0, a=0.0, nu=1.5)
        k, t = 0.9, 2.0
        assert solution_fourier_time(k, t, p) == pytest.approx(math.cos(1.5 * k * t), abs=1e-12)

    def test_initial_value(self):
        p = PRESETS["theorem"].params()
        ic = InitialCondition.gaussian(0.3)
        for k in (0.0, 0.5, 3.0):
            assert solution_fourier_time(k, 0.0, p, ic) == pytest.approx(math.exp(-0.045 * k * k), rel=1e-14)

    def test_even_in_k(self):
        p = PRESETS["theorem"].params()
        for k in (0.4, 2.5):
            assert solution_fourier_time(k, 1.0, p) == pytest.approx(solution_fourier_time(-k, 1.0, p), rel=1e-14)

    def test_routes_agree(self):
        p = corollary2_params(0.8, 1.0, 1.0, 0.3)
        for k in (0.2, 1.1, 4.0):
            a = solution_fourier_time(k, 1.5, p, route="theorem")
            b = solution_fourier_time(k, 1.5, p, route="corollary2")
            assert a == pytest.approx(b, rel=1e-10, abs=1e-12)

    def test_source_adds_duhamel_term(self):
        # alpha = 1, a = 0: N* = e^{-bt} f* + (1 - e^{-bt}) / b for a unit constant source
        k, t = 1.2, 0.8
        src = SourceTerm.separable(lambda k: np.ones_like(k), lambda t: 1.0)
        b = k * k
        ref = math.exp(-b * t) + (1 - math.exp(-b * t)) / b
        assert solution_fourier_time(k, t, HEAT, src=src) == pytest.approx(ref, rel=1e-10)

    def test_route_requirements(self):
        with pytest.raises(ValidationError):
            solution_fourier_time(1.0, 1.0, RDParams(0.9, 0.3, a=1.0), route="corollary2")
        with pytest.raises(ValidationError):
            solution_fourier_time(1.0, 1.0, corollary2_params(0.5, 1.0, 1.0, 0.2), route="telegraph")


class TestTelegraph:
    def test_classical_example(self):
        a, nu, k, t = 2.0, 1.0, 0.5, 1.0
        r = math.sqrt(a * a - 4 * nu**2 * k**2)
        lam, mu = (-a + r) / 2, (-a - r) / 2
        ref = 0.5 * ((1 + a / r) * math.exp(lam * t) + (1 - a / r) * math.exp(mu * t))
        assert telegraph_fourier(np.array([k]), t, 1.0, a, nu)[0] == pytest.approx(ref, rel=1e-12)

    def test_boundary_values(self):
        k = np.array([0.0, 0.7, 3.0])
        np.testing.assert_allclose(telegraph_fourier(k, 0.0, 0.6, 1.0, 1.0), 1.0, atol=1e-15)
        assert telegraph_fourier(np.array([0.0]), 2.0, 0.6, 1.0, 1.0)[0] == pytest.approx(1.0, rel=1e-13)

    def test_forms_agree(self, rng):
        k = rng.uniform(0.05, 6.0, 50)
        a = telegraph_fourier(k, 1.3, 0.7, 1.0, 1.0)
        b = telegraph_root_form(k, 1.3, 0.7, 1.0, 1.0)
        np.testing.assert_allclose(a, b, rtol=1e-11, atol=1e-13)


X = np.linspace(-3, 3, 13)


class TestProfiles:
    def test_heat_kernel(self):
        prof = solve_delta_ic(HEAT, SourceTerm.zero(), Grid(X, [1.0]))
        ref = np.exp(-X**2 / 4) / math.sqrt(4 * math.pi)
        np.testing.assert_allclose(prof.values[0], ref, atol=1e-9)
        assert prof.values[0, 6] == pytest.approx(0.2820947918, rel=1e-8)

    def test_gaussian_ic_spreads_as_heat(self):
        s = 0.5
        prof = solve_profile(HEAT, InitialCondition.gaussian(s), SourceTerm.zero(), Grid(X, [0.0, 0.5]))
        var = s * s + 2 * 0.5
        ref = np.exp(-X**2 / (2 * var)) / math.sqrt(2 * math.pi * var)
        np.testing.assert_allclose(prof.values[1], ref, atol=1e-9)
        np.testing.assert_allclose(prof.values[0], InitialCondition.gaussian(s).f_real(X), atol=1e-9)

    def test_symmetric_in_x(self):
        prof = run_preset(PRESETS["corollary1"], Grid(X, [0.5, 1.0]), ic=InitialCondition.gaussian(0.2))
        np.testing.assert_allclose(prof.values, prof.values[:, ::-1], atol=1e-12)

    def test_zero_mode_is_mass(self):
        x = np.arange(-1200, 1201) * 0.01
        pre = PRESETS["theorem"]
        prof = run_preset(pre, Grid(x, [1.0]), ic=InitialCondition.gaussian(0.05))
        z = prof.meta["zero_mode"][0]
        assert prof.mass()[0] == pytest.approx(z, rel=1e-6)

    def test_sampled_ic_matches_analytic(self):
        xs = np.linspace(-6, 6, 1201)
        g = InitialCondition.gaussian(0.4)
        samp = InitialCondition.sampled(xs, g.f_real(xs))
        k = np.array([0.0, 1.0, 5.0])
        np.testing.assert_allclose(samp.f_star(k), g.f_star(k), atol=1e-12)

    def test_source_profile(self):
        src = gaussian_source(0.5, 0.5)
        prof = run_preset(PRESETS["theorem"], Grid(X, [0.5]), ic=InitialCondition.gaussian(0.3), src=src)
        assert np.all(np.isfinite(prof.values))

    def test_telegraph_routes(self):
        grid = Grid(X, [0.8])
        ic = InitialCondition.gaussian(0.3)
        a = solve_telegraph(0.5, 1.0, 1.0, 0.0, grid, ic=ic)
        b = run_preset(PRESETS["corollary2"].with_overrides(alpha=0.5, xi=0.0), grid, ic=ic)
        assert a.meta["route"] == "telegraph"
        np.testing.assert_allclose(a.values, b.values, atol=1e-9)

    def test_fixed_quadrature(self):
        kq = KQuadrature(k_max=40.0, adaptive=False)
        prof = solve_delta_ic(HEAT, SourceTerm.zero(), Grid(X, [1.0]), kq=kq)
        assert prof.meta["k_max"] == 40.0

    def test_workers_do_not_change_result(self):
        grid = Grid(X, [0.2, 0.6, 1.0])
        ic = InitialCondition.gaussian(0.3)
        a = run_preset(PRESETS["theorem"], grid, ic=ic, workers=1)
        b = run_preset(PRESETS["theorem"], grid, ic=ic, workers=3)
        np.testing.assert_array_equal(a.values, b.values)


@pytest.fixture(scope="module")
def prof():
    return solve_delta_ic(HEAT, SourceTerm.zero(), Grid([-1.0, 0.0, 1.0], [0.5, 1.0]))


class TestSerialization:
    def test_csv(self, prof):
        text = prof.to_csv()
        lines = text.split("\n")
        assert lines[0] == "t,x,N" and text.endswith("\n") and "\r" not in text
        assert len(lines) == 2 + 6
        t, x, n = lines[1].split(",")
        assert float(t) == 0.5 and float(x) == -1.0
        assert float(n) == prof.values[0, 0]

    def test_json(self, prof):
        doc = json.loads(prof.to_json())
        assert doc["schema_version"] == "1.0"
        for key in ("route", "parameters", "k_max", "tail_estimate", "mass"):
            assert key in doc

    def test_write_to_stream(self, prof):
        buf = io.StringIO()
        prof.to_csv(buf)
        assert buf.getvalue() == prof.to_csv()

    def test_shape_checked(self):
        with pytest.raises(ValidationError):
            Profile(Grid([0.0, 1.0], [1.0]), np.zeros((2, 2)), {})


class TestPresets:
    def test_lookup(self):
        assert get_preset("telegraph-xi0").require_xi0
        with pytest.raises(ValidationError):
            get_preset("nope")

    def test_override_rules(self):
        with pytest.raises(ValidationError):
            PRESETS["corollary2"].with_overrides(beta=0.3)
        with pytest.raises(ValidationError):
            PRESETS["telegraph-xi0"].with_overrides(xi=0.2)
        assert PRESETS["theorem"].with_overrides(alpha=0.7, beta=None).alpha == 0.7

    def test_source_refused(self):
        with pytest.raises(ValidationError):
            run_preset(PRESETS["telegraph"], Grid(X, [1.0]), src=gaussian_source(1.0, 1.0))
