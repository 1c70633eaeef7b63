"""Gamma, Pochhammer and the Mittag-Leffler family to controlled accuracy.

The three-parameter (Prabhakar) function

    E^g_{a,b}(z) = sum_{n>=0} (g)_n z**n / (n! Gamma(a n + b))

contains E_a (b = g = 1) and E_{a,b} (g = 1) as special cases. Each argument
is routed to one of three evaluators:

* ``series``      compensated Taylor sum, for moderate |z|**(1/a) and for the
                  positive real axis where no cancellation occurs;
* ``asymptotic``  algebraic expansion in 1/z for large |z| when every
                  exponentially large contribution is negligible;
* ``integral``    trapezoidal Laplace inversion of s**(a g - b)/(s**a - z)**g
                  on a parabolic contour, with residues for excluded poles.

Every evaluator certifies its own error estimate; an argument falls through to
the next evaluator when the estimate misses the tolerance. The hot loops live
in the compiled ``_kernels`` extension with a pure-Python twin
(see :mod:`fracwave._backend`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np
from scipy import special

from . import _backend
from .errors import ConvergenceFailure, OverflowSignal, PoleError, ValidationError

__all__ = [
    "SeriesControl",
    "MLValue",
    "MLBatch",
    "gamma_fn",
    "loggamma",
    "pochhammer",
    "mittag_leffler",
    "mittag_leffler2",
    "prabhakar",
    "ml_batch",
    "series_terms",
]

# Series is tried when |z|**(1/alpha) is below this; beyond it the alternating
# terms exceed 1e13 times the result and double precision is gone.
SERIES_RADIUS = 30.0
# Positive real arguments have no cancellation; stop only where terms overflow.
SERIES_RADIUS_POSITIVE = 800.0
ASYMPTOTIC_MIN_ABS = 5.0

REGIMES = ("series", "asymptotic", "integral")


@dataclass(frozen=True)
class SeriesControl:
    """Convergence policy shared by every infinite sum in the package.

    Attributes
    ----------
    rel_tol, abs_tol : float
        Target accuracy ``|err| <= max(abs_tol, rel_tol * |value|)``.
    max_terms : int
        Cap on series terms (or contour nodes for the integral regime).
    """

    rel_tol: float = 1e-12
    abs_tol: float = 1e-15
    max_terms: int = 500

    def __post_init__(self):
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise ValidationError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if not (self.abs_tol >= 0 and math.isfinite(self.abs_tol)):
            raise ValidationError(f"abs_tol must be non-negative, got {self.abs_tol!r}")
        if not isinstance(self.max_terms, Integral) or self.max_terms < 1:
            raise ValidationError(f"max_terms must be a positive integer, got {self.max_terms!r}")

    def tol(self, magnitude: float) -> float:
        return max(self.abs_tol, self.rel_tol * magnitude)


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class MLValue:
    """One Mittag-Leffler value with its provenance."""

    value: complex
    est_error: float
    terms_used: int
    regime: str

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(self.value.real)


@dataclass(frozen=True)
class MLBatch:
    """Vectorized counterpart of :class:`MLValue` (arrays share ``z``'s shape)."""

    values: np.ndarray
    est_error: np.ndarray
    terms_used: np.ndarray
    regime: np.ndarray

    def __getitem__(self, i) -> MLValue:
        return MLValue(complex(self.values[i]), float(self.est_error[i]),
                       int(self.terms_used[i]), str(self.regime[i]))

    def __len__(self):
        return self.values.size


# --------------------------------------------------------------------------
# Gamma and Pochhammer
# --------------------------------------------------------------------------

def _is_pole(x: complex) -> bool:
    return x.imag == 0 and x.real <= 0 and float(x.real).is_integer()


def gamma_fn(x):
    """Gamma function for real or complex ``x``.

    Raises
    ------
    PoleError
        At non-positive integers.
    OverflowSignal
        When |Gamma(x)| exceeds the double range; use :func:`loggamma`.
    """
    xc = complex(x)
    if not (math.isfinite(xc.real) and math.isfinite(xc.imag)):
        raise ValidationError(f"gamma_fn needs a finite argument, got {x!r}")
    if _is_pole(xc):
        raise PoleError(f"Gamma has a pole at {xc.real:g}")
    if xc.imag == 0:
        v = special.gamma(xc.real)
        if not math.isfinite(v):
            raise OverflowSignal(f"Gamma({xc.real:g}) overflows; use loggamma")
        return float(v) if isinstance(x, (Integral, float, np.floating, np.integer)) else complex(v)
    v = complex(special.gamma(xc))
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise OverflowSignal(f"Gamma({xc}) overflows; use loggamma")
    return v


def loggamma(x):
    """Principal branch of log Gamma(x); real for real positive ``x``."""
    xc = complex(x)
    if _is_pole(xc):
        raise PoleError(f"Gamma has a pole at {xc.real:g}")
    if xc.imag == 0 and xc.real > 0:
        return float(special.gammaln(xc.real))
    return complex(special.loggamma(xc))


def pochhammer(g, r: int):
    """Rising factorial (g)_r = g (g+1) ... (g+r-1).

    Exact integer arithmetic for integer ``g`` and ``r <= 20``; a direct
    product for short runs; log-gamma differences for long ones.
    """
    if not isinstance(r, Integral) or r < 0:
        raise ValidationError(f"r must be a non-negative integer, got {r!r}")
    r = int(r)
    if r == 0:
        return 1
    gc = complex(g)
    if gc.imag == 0 and float(gc.real).is_integer() and r <= 20:
        gi = int(gc.real)
        return math.prod(range(gi, gi + r))
    if r <= 64 or (gc.imag == 0 and gc.real <= 0):
        out = 1.0 + 0j
        for j in range(r):
            out *= gc + j
        return out.real if gc.imag == 0 else out
    if gc.imag == 0:
        return float(special.poch(gc.real, r))
    return complex(np.exp(special.loggamma(gc + r) - special.loggamma(gc)))


# --------------------------------------------------------------------------
# Mittag-Leffler family
# --------------------------------------------------------------------------

def _check_orders(alpha, beta, gam):
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gam)):
        if not (isinstance(v, (Integral, float, np.floating, np.integer)) and math.isfinite(v) and v > 0):
            raise ValidationError(f"{name} must be a finite real > 0, got {v!r}")


def _series_mask(alpha, z):
    with np.errstate(over="ignore"):
        rad = np.abs(z) ** (1.0 / alpha)
    pos = (z.imag == 0) & (z.real >= 0)
    return (rad <= SERIES_RADIUS) | (pos & (rad <= SERIES_RADIUS_POSITIVE))


def ml_batch(alpha, beta, gam, z, ctl: SeriesControl | None = None, backend: str | None = None) -> MLBatch:
    """Evaluate E^gam_{alpha,beta} at every entry of ``z``.

    Parameters
    ----------
    alpha, beta, gam : float
        Positive real orders.
    z : array_like of complex
    ctl : SeriesControl, optional
    backend : {'cython', 'python'}, optional
        Force a kernel implementation; default is the active backend.

    Raises
    ------
    ConvergenceFailure
        If no evaluator certifies some entry within ``ctl``.
    OverflowSignal
        If some entry exceeds the double range.
    """
    ctl = ctl or DEFAULT_CONTROL
    _check_orders(alpha, beta, gam)
    K = _backend.get(backend)
    zin = np.asarray(z, dtype=complex)
    shape = zin.shape
    zf = np.ascontiguousarray(zin.ravel())
    if not np.all(np.isfinite(zf)):
        raise ValidationError("z must be finite")
    a, b, g = float(alpha), float(beta), float(gam)
    args = (ctl.rel_tol, ctl.abs_tol, int(ctl.max_terms))

    m = zf.size
    vals = np.full(m, np.nan + 0j)
    est = np.full(m, np.inf)
    nterms = np.zeros(m, dtype=np.int64)
    regime = np.full(m, "", dtype=object)
    todo = np.ones(m, dtype=bool)
    overflow = np.zeros(m, dtype=bool)

    def attempt(mask, kern, name):
        idx = np.flatnonzero(mask & todo)
        if idx.size == 0:
            return
        v, e, n, ok = kern(a, b, g, zf[idx], *args)
        overflow[idx[np.isinf(v)]] = True
        hit = idx[ok]
        vals[hit], est[hit], nterms[hit] = v[ok], e[ok], n[ok]
        regime[hit] = name
        todo[hit] = False

    attempt(_series_mask(a, zf), K.series_batch, "series")
    attempt(np.abs(zf) >= ASYMPTOTIC_MIN_ABS, K.asymptotic_batch, "asymptotic")
    attempt(todo, K.contour_batch, "integral")
    # beyond the positive-real series radius the value grows like exp(|z|**(1/alpha))
    with np.errstate(over="ignore"):
        huge = (zf.imag == 0) & (zf.real > 0) & (np.abs(zf) ** (1.0 / a) > SERIES_RADIUS_POSITIVE)
    overflow |= huge
    if (todo & overflow).any():
        bad = zf[todo & overflow][0]
        raise OverflowSignal(f"E^{g:g}_{{{a:g},{b:g}}}({bad}) exceeds the double range")
    if todo.any():
        bad = zf[todo][0]
        raise ConvergenceFailure(
            f"E^{g:g}_{{{a:g},{b:g}}}({bad}) not certified within "
            f"rel_tol={ctl.rel_tol:g}, abs_tol={ctl.abs_tol:g}, max_terms={ctl.max_terms}")
    return MLBatch(vals.reshape(shape), est.reshape(shape), nterms.reshape(shape),
                   regime.reshape(shape))


def prabhakar(alpha, beta, gamma, z, ctl: SeriesControl | None = None) -> MLValue:
    """Three-parameter Mittag-Leffler function E^gamma_{alpha,beta}(z)."""
    return ml_batch(alpha, beta, gamma, np.array([z], dtype=complex), ctl)[0]


def mittag_leffler2(alpha, beta, z, ctl: SeriesControl | None = None) -> MLValue:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z)."""
    return ml_batch(alpha, beta, 1.0, np.array([z], dtype=complex), ctl)[0]


def mittag_leffler(alpha, z, ctl: SeriesControl | None = None) -> MLValue:
    """One-parameter Mittag-Leffler function E_alpha(z)."""
    return ml_batch(alpha, 1.0, 1.0, np.array([z], dtype=complex), ctl)[0]


def series_terms(alpha, beta, gam, z, ctl: SeriesControl | None = None):
    """Term-by-term Taylor expansion as ``[(n, term, partial_sum), ...]``.

    Diagnostic only: it stops on the same two-small-terms rule as the series
    evaluator but makes no accuracy claim.
    """
    ctl = ctl or DEFAULT_CONTROL
    _check_orders(alpha, beta, gam)
    z = complex(z)
    rows = []
    partial = 0j
    prev = math.inf
    log_coef = 0.0
    for n in range(ctl.max_terms):
        arg = alpha * n + beta
        if n == 0:
            term = complex(special.rgamma(arg))
        elif z == 0:
            term = 0j
        else:
            term = complex(np.exp(log_coef + n * np.log(z) - special.gammaln(arg)))
        partial += term
        rows.append((n, term, partial))
        thr = ctl.tol(abs(partial))
        if abs(term) <= thr and prev <= thr:
            break
        prev = abs(term)
        log_coef += math.log((gam + n) / (n + 1))
    return rows
