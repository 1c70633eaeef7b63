from __future__ import annotations

import numpy as np
import pytest

from fracwave import _backend, _kernels_py

needs_ext = pytest.mark.skipif("cython" not in _backend.available(), reason="extension not built")

ARGS = (1e-12, 1e-15, 500)
CASES = [(0.5, 1.0, 1.0), (0.9, 0.45, 1.0), (1.3, 1.7, 2.0), (0.8, 1.6, 1.0)]


def _z(rng, n, radius):
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def _compare(name, alpha, beta, gam, z):
    vc, ec, nc, okc = getattr(_backend.get("cython"), name)(alpha, beta, gam, z, *ARGS)
    vp, ep, npy, okp = getattr(_kernels_py, name)(alpha, beta, gam, z, *ARGS)
    np.testing.assert_array_equal(np.asarray(okc), np.asarray(okp))
    ok = np.asarray(okc, dtype=bool)
    diff = np.abs(np.asarray(vc)[ok] - np.asarray(vp)[ok])
    bound = np.asarray(ec)[ok] + np.asarray(ep)[ok] + 4e-16 * np.abs(np.asarray(vp)[ok])
    assert np.all(diff <= bound)


@needs_ext
@pytest.mark.parametrize("alpha,beta,gam", CASES)
def test_series_parity(alpha, beta, gam, rng):
    _compare("series_batch", alpha, beta, gam, _z(rng, 300, 8.0))


@needs_ext
@pytest.mark.parametrize("alpha,beta,gam", CASES)
def test_asymptotic_parity(alpha, beta, gam, rng):
    _compare("asymptotic_batch", alpha, beta, gam, _z(rng, 300, 200.0) + 0.0)


@needs_ext
@pytest.mark.parametrize("alpha,beta,gam", CASES[:2])
def test_contour_parity(alpha, beta, gam, rng):
    _compare("contour_batch", alpha, beta, gam, _z(rng, 40, 20.0))


@needs_ext
def test_forced_backend_is_used():
    from fracwave.specfun import ml_batch
    z = np.array([-2.0, 1.5j, 30.0])
    a = ml_batch(0.7, 1.0, 1.0, z, backend="cython").values
    b = ml_batch(0.7, 1.0, 1.0, z, backend="python").values
    np.testing.assert_allclose(a, b, rtol=1e-12)


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    code = ("from fracwave import _backend; from fracwave.specfun import mittag_leffler; "
            "print(_backend.BACKEND, float(mittag_leffler(1, 1)))")
    env = dict(os.environ, FRACWAVE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, val = out.stdout.split()
    assert name == "python" and abs(float(val) - np.e) < 1e-14
