"""Fractional integrals and derivatives of sampled functions, plus transform symbols.

All real-space operators act on a :class:`SampledFn` whose first node is the
lower terminal of the integral (``t_nodes[0]`` plays the role of 0). The
weakly singular kernels are integrated exactly against the piecewise-linear
interpolant of the samples (product integration), which is consistent at the
endpoint singularity where the trapezoid rule is not.

The space-fractional operator is provided only through its Fourier multiplier
:func:`riesz_symbol`; the solvers never need it in real space.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import (ArityError, DomainError, InsufficientResolution,
                     SingularityWarning, ValidationError)

__all__ = [
    "SampledFn",
    "FracOrder",
    "rl_integral",
    "rl_derivative",
    "caputo_derivative",
    "gl_weights",
    "riesz_symbol",
    "caputo_laplace_symbol",
]

KINDS = ("rl_integral", "rl_derivative", "caputo", "weyl")


@dataclass(frozen=True)
class SampledFn:
    """Samples ``values[i] = f(t_nodes[i])`` on a strictly increasing grid."""

    t_nodes: np.ndarray
    values: np.ndarray
    uniform: bool | None = field(default=None)

    def __post_init__(self):
        t = np.asarray(self.t_nodes, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape:
            raise ValidationError("t_nodes and values must be 1-D arrays of equal length")
        if t.size < 2:
            raise ValidationError("need at least two samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValidationError("samples must be finite")
        d = np.diff(t)
        if np.any(d <= 0):
            raise ValidationError("t_nodes must be strictly increasing")
        is_uniform = bool(np.allclose(d, d[0], rtol=1e-10, atol=0.0))
        if self.uniform is not None and bool(self.uniform) != is_uniform:
            raise ValidationError(f"uniform={self.uniform} contradicts the node spacing")
        object.__setattr__(self, "t_nodes", t)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "uniform", is_uniform)

    @classmethod
    def from_callable(cls, f, t_end: float, n: int, t_start: float = 0.0) -> "SampledFn":
        t = np.linspace(t_start, t_end, n)
        return cls(t, np.asarray(f(t), dtype=float) * np.ones_like(t))

    @property
    def h_max(self) -> float:
        return float(np.max(np.diff(self.t_nodes)))

    def _check_t(self, t: float) -> float:
        t = float(t)
        lo, hi = self.t_nodes[0], self.t_nodes[-1]
        if not (lo <= t <= hi * (1 + 1e-14) + 1e-300):
            raise DomainError(f"t={t:g} outside sampled range [{lo:g}, {hi:g}]")
        return min(t, hi)


@dataclass(frozen=True)
class FracOrder:
    """An operator order together with its kind."""

    order: float
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not (math.isfinite(self.order) and self.order > 0):
            raise ValidationError(f"order must be positive, got {self.order!r}")

    @property
    def m(self) -> int:
        """Integer ceiling of the order (number of classical initial values)."""
        return max(1, math.ceil(self.order))

    def apply(self, f: SampledFn, t: float) -> float:
        if self.kind == "rl_integral":
            return rl_integral(f, self.order, t)
        if self.kind == "rl_derivative":
            return rl_derivative(f, self.order, t)
        if self.kind == "caputo":
            return caputo_derivative(f, self.order, t)
        raise ValidationError("the Weyl operator is available only as a Fourier symbol (riesz_symbol)")


def _truncate(t_nodes, values, t):
    """Nodes up to ``t`` with ``t`` itself appended by linear interpolation."""
    j = int(np.searchsorted(t_nodes, t, side="right"))
    u = t_nodes[:j]
    v = values[:j]
    if u[-1] < t:
        u = np.append(u, t)
        v = np.append(v, np.interp(t, t_nodes, values))
    return u, v


def _product_integral(u, v, t, nu):
    """int_{u0}^{t} (t-s)**(nu-1) L(s) ds for the linear interpolant L of (u, v); u[-1] == t."""
    if u.size < 2:
        return 0.0
    a = t - u[:-1]
    b = t - u[1:]
    h = u[1:] - u[:-1]
    i0 = (a**nu - b**nu) / nu
    # int (t-s)**(nu-1) (s - u_j) ds  =  a*i0 - (a**(nu+1) - b**(nu+1))/(nu+1)
    i1 = a * i0 - (a ** (nu + 1) - b ** (nu + 1)) / (nu + 1)
    slope = (v[1:] - v[:-1]) / h
    return float(np.sum(v[:-1] * i0 + slope * i1))


def rl_integral(f: SampledFn, nu: float, t: float) -> float:
    """Riemann-Liouville integral of order ``nu`` at ``t``.

    (1/Gamma(nu)) int_0^t (t-u)**(nu-1) f(u) du, exact for piecewise-linear f,
    hence O(h**2) on smooth data.
    """
    if not (math.isfinite(nu) and nu > 0):
        raise ValidationError(f"nu must be positive, got {nu!r}")
    t = f._check_t(t)
    u, v = _truncate(f.t_nodes, f.values, t)
    u = u - f.t_nodes[0]
    return _product_integral(u, v, t - f.t_nodes[0], nu) / special.gamma(nu)


def _derivative_samples(f: SampledFn, m: int) -> np.ndarray:
    """m-th derivative at the nodes: central differences inside, one-sided order 2 at the ends."""
    if f.t_nodes.size < 2 * m + 3:
        raise InsufficientResolution(f"{f.t_nodes.size} samples cannot resolve a derivative of order {m}")
    d = f.values
    for _ in range(m):
        d = np.gradient(d, f.t_nodes, edge_order=2)
    return d


def _check_derivative(f: SampledFn, m: int, d: np.ndarray) -> None:
    """Raise when the derivative estimate changes materially on the half-resolution grid."""
    if not np.all(np.isfinite(d)):
        raise InsufficientResolution("derivative estimate is not finite")
    if f.t_nodes.size < 4 * m + 6:
        return
    coarse = SampledFn(f.t_nodes[::2], f.values[::2])
    dc = _derivative_samples(coarse, m)
    scale = max(float(np.max(np.abs(d))), float(np.max(np.abs(f.values))), 1e-300)
    gap = float(np.max(np.abs(dc - d[::2])))
    if gap > 0.25 * scale:
        raise InsufficientResolution(
            f"order-{m} derivative changes by {gap:.3g} (scale {scale:.3g}) when the grid is halved")


def caputo_derivative(f: SampledFn, alpha: float, t: float) -> float:
    """Caputo derivative of order ``alpha`` at ``t``.

    With m = ceil(alpha) this is I^{m-alpha} applied to f^{(m)}; at integer
    alpha it is the classical m-th derivative.

    Raises
    ------
    InsufficientResolution
        If the sampled m-th derivative is unstable under grid halving.
    """
    if not (math.isfinite(alpha) and alpha > 0):
        raise ValidationError(f"alpha must be positive, got {alpha!r}")
    t = f._check_t(t)
    m = math.ceil(alpha)
    d = _derivative_samples(f, m)
    _check_derivative(f, m, d)
    if alpha == m:
        return float(np.interp(t, f.t_nodes, d))
    return rl_integral(SampledFn(f.t_nodes, d), m - alpha, t)


def rl_derivative(f: SampledFn, alpha: float, t: float) -> float:
    """Riemann-Liouville derivative of order 0 < alpha <= 1 at ``t``.

    Differentiating the product-integration formula for I^{1-alpha} f gives
    f(0) t**(-alpha)/Gamma(1-alpha) + I^{1-alpha} f'.
    """
    if not (0 < alpha <= 1):
        raise ValidationError(f"alpha must lie in (0, 1], got {alpha!r}")
    t = f._check_t(t)
    if alpha == 1:
        return caputo_derivative(f, 1.0, t)
    f0 = float(f.values[0])
    tau = t - f.t_nodes[0]
    if f0 != 0.0:
        if tau == 0.0:
            raise DomainError("RL derivative of a function with f(0) != 0 is singular at t = 0")
        if tau < 10 * (f.t_nodes[1] - f.t_nodes[0]):
            warnings.warn("result dominated by the t**(-alpha) singularity of f(0) != 0",
                          SingularityWarning, stacklevel=2)
    head = f0 * tau ** (-alpha) * special.rgamma(1 - alpha) if f0 != 0.0 else 0.0
    return head + caputo_derivative(f, alpha, t)


def gl_weights(alpha: float, n: int) -> np.ndarray:
    """Grunwald-Letnikov weights w_j = (-1)**j binom(alpha, j), j = 0..n."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValidationError(f"n must be a non-negative integer, got {n!r}")
    w = np.empty(n + 1)
    w[0] = 1.0
    if n:
        j = np.arange(1, n + 1)
        w[1:] = np.cumprod(1.0 - (alpha + 1.0) / j)
    return w


def riesz_symbol(mu: float, k):
    """Fourier multiplier -|k|**mu of the symmetric space-fractional operator."""
    if not (math.isfinite(mu) and mu > 0):
        raise ValidationError(f"mu must be positive, got {mu!r}")
    out = -np.abs(np.asarray(k, dtype=float)) ** mu
    return float(out) if out.ndim == 0 else out


def caputo_laplace_symbol(alpha: float, s, init_derivs, F=0.0):
    """Laplace transform of the Caputo derivative, s**alpha F(s) - sum_r s**(alpha-r-1) f^{(r)}(0+).

    ``init_derivs`` holds f(0+), f'(0+), ... and must have exactly
    ceil(alpha) entries. ``F`` is the transform of f at ``s`` (default 0, which
    returns the initial-value part alone). The Riemann-Liouville rule, which
    uses fractional-order initial values instead, is not used by the solvers.
    """
    if not (math.isfinite(alpha) and alpha > 0):
        raise ValidationError(f"alpha must be positive, got {alpha!r}")
    d = np.atleast_1d(np.asarray(init_derivs, dtype=float))
    m = math.ceil(alpha)
    if d.size != m:
        raise ArityError(f"order {alpha:g} needs {m} initial derivatives, got {d.size}")
    s = np.asarray(s, dtype=complex)
    out = s**alpha * F
    for r, dr in enumerate(d):
        out = out - s ** (alpha - r - 1) * dr
    return complex(out) if out.ndim == 0 else out
