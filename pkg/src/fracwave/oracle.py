"""Brute-force reference solvers used to validate the analytic machinery.

:func:`fd_solve` marches the equation on a periodic grid. Space is treated
spectrally (exact multiplier -|k|**gamma on grid modes), so all error comes
from time stepping. Each Fourier mode v = u - u(0) obeys

    D^alpha v + a D^beta v + b v = -b u(0) + phi,

with Caputo derivatives of u equal to Riemann-Liouville derivatives of v when
u_t(0) = 0. These are discretized by convolution quadrature: the weights of
``delta(zeta)**q / dt**q`` where delta is the BDF2 symbol (default) or the
backward-Euler symbol 1 - zeta (plain Grunwald-Letnikov). The full history is
kept; no memory truncation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import InstabilityDetected, ResolutionError, TruncationWarning, ValidationError
from .fracops import gl_weights
from .rdsolve import SCHEMA_VERSION, Grid, InitialCondition, Profile, RDParams, SourceTerm

__all__ = ["FDGrid", "fd_solve", "cq_weights", "heat_kernel", "SCHEMES"]

SCHEMES = ("bdf2", "gl")
# Fraction of the peak allowed at the periodic boundary before warning.
BOUNDARY_TOL = 1e-6


@dataclass(frozen=True)
class FDGrid:
    """Periodic space grid [x_min, x_max) with nx points and nt steps of size dt."""

    x_min: float
    x_max: float
    nx: int
    dt: float
    nt: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max) and self.x_max > self.x_min):
            raise ValidationError("need finite x_min < x_max")
        if not isinstance(self.nx, (int, np.integer)) or self.nx < 16:
            raise ValidationError(f"nx must be an integer >= 16, got {self.nx!r}")
        if not isinstance(self.nt, (int, np.integer)) or self.nt < 1:
            raise ValidationError(f"nt must be a positive integer, got {self.nt!r}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValidationError(f"dt must be positive, got {self.dt!r}")

    @classmethod
    def for_final_time(cls, x_min, x_max, nx, t_final, nt) -> "FDGrid":
        return cls(float(x_min), float(x_max), int(nx), float(t_final) / int(nt), int(nt))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.nx)

    @property
    def k(self) -> np.ndarray:
        return 2 * math.pi * np.fft.rfftfreq(self.nx, d=self.dx)

    @property
    def t_final(self) -> float:
        return self.dt * self.nt


def cq_weights(q: float, n: int, dt: float, scheme: str = "bdf2") -> np.ndarray:
    """First n+1 convolution-quadrature weights for an order-q derivative."""
    if scheme not in SCHEMES:
        raise ValidationError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    if q == 0:
        w = np.zeros(n + 1)
        w[0] = 1.0
        return w
    g = gl_weights(q, n)
    if scheme == "gl":
        return g / dt**q
    # (3/2 - 2 zeta + zeta**2/2)**q = (3/2)**q (1 - zeta)**q (1 - zeta/3)**q
    g3 = g * 3.0 ** -np.arange(n + 1)
    return (1.5 / dt) ** q * np.convolve(g, g3)[: n + 1]


def heat_kernel(x, t: float, D: float = 1.0):
    """exp(-x**2 / (4 D t)) / sqrt(4 pi D t)."""
    if not t > 0:
        raise ValidationError(f"t must be positive, got {t!r}")
    if not D > 0:
        raise ValidationError(f"D must be positive, got {D!r}")
    x = np.asarray(x, dtype=float)
    out = np.exp(-x * x / (4 * D * t)) / math.sqrt(4 * math.pi * D * t)
    return float(out) if out.ndim == 0 else out


def _growth_rate(p: RDParams) -> float:
    """Largest real root of s**alpha + a s**beta - xi**2 = 0 (0 if none)."""
    c = p.xi**2
    if c == 0:
        return 0.0
    f = lambda s: s**p.alpha + p.a * s**p.beta - c
    hi = 1.0
    while f(hi) < 0:
        hi *= 2
    return float(optimize.brentq(f, 0.0, hi)) if f(0.0) < 0 else 0.0


def _initial_modes(ic: InitialCondition, g: FDGrid) -> np.ndarray:
    if ic.variant == "delta":
        raise ResolutionError("a delta initial condition cannot be sampled; use a Gaussian mollifier")
    if ic.sigma is not None and ic.sigma < 2 * g.dx:
        raise ResolutionError(f"Gaussian width {ic.sigma:g} is below two grid spacings ({2 * g.dx:g})")
    if ic.f_real is not None:
        return np.fft.rfft(np.asarray(ic.f_real(g.x), dtype=float))
    # f*(k) with the e^{ikx} convention; shift to the grid origin
    k = g.k
    return np.conj(ic.f_star(k)) * np.exp(-1j * k * g.x_min) / g.dx


def fd_solve(p: RDParams, ic: InitialCondition, src: SourceTerm | None, g: FDGrid,
             t_out=None, scheme: str = "bdf2") -> Profile:
    """Time-march the equation on a periodic grid.

    Parameters
    ----------
    p : RDParams
        Orders and coefficients; alpha in (1, 2] assumes u_t(x, 0) = 0.
    ic : InitialCondition
        Must be resolvable on the grid (not a bare delta).
    src : SourceTerm or None
        Needs ``phi_real`` when non-zero.
    g : FDGrid
    t_out : sequence of float, optional
        Output times, snapped to the nearest step; default is the final time.
    scheme : {'bdf2', 'gl'}

    Raises
    ------
    ResolutionError
        When the initial condition is not resolved by the grid.
    InstabilityDetected
        When the field becomes non-finite or outgrows the physical bound.

    Warns
    -----
    TruncationWarning
        When the field is not negligible at the periodic boundary.
    """
    src = src or SourceTerm.zero()
    if not src.is_zero and src.phi_real is None:
        raise ValidationError("fd_solve needs phi_real for a non-zero source")
    u0 = _initial_modes(ic, g)
    k = g.k
    b = p.b(k)
    nt, dt = g.nt, g.dt
    if t_out is None:
        steps = np.array([nt])
    else:
        steps = np.unique(np.clip(np.rint(np.asarray(t_out, dtype=float) / dt).astype(int), 0, nt))

    w = cq_weights(p.alpha, nt, dt, scheme) + p.a * cq_weights(p.beta, nt, dt, scheme)
    denom = w[0] + b
    if np.any(denom == 0):
        raise InstabilityDetected("singular implicit step")
    V = np.zeros((nt + 1, k.size), dtype=complex)
    base = -b * u0

    scale = max(float(np.max(np.abs(u0))), 1e-300)
    bound = 1e3 * scale * math.exp(_growth_rate(p) * g.t_final)
    out = {0: u0.copy()} if 0 in steps else {}
    wrev = w[::-1]
    for n in range(1, nt + 1):
        rhs = base.copy()
        if not src.is_zero:
            rhs += np.fft.rfft(np.asarray(src.phi_real(g.x, n * dt), dtype=float))
        # sum_{j=1}^{n} w_j V_{n-j}
        hist = wrev[nt - n: nt] @ V[:n]
        V[n] = (rhs - hist) / denom
        if not np.all(np.isfinite(V[n])) or np.max(np.abs(V[n])) > bound:
            raise InstabilityDetected(f"field left the physical growth bound at step {n}")
        if n in steps:
            out[n] = u0 + V[n]

    values = np.array([np.fft.irfft(out[s], n=g.nx) for s in steps])
    peak = float(np.max(np.abs(values)))
    edge = float(np.max(np.abs(values[:, [0, -1]])))
    if peak > 0 and edge > BOUNDARY_TOL * peak:
        warnings.warn(f"field reaches the periodic boundary ({edge / peak:.1e} of peak)",
                      TruncationWarning, stacklevel=2)
    grid = Grid(g.x, steps * dt)
    prof = Profile(grid, values, {})
    prof.meta = {
        "schema_version": SCHEMA_VERSION,
        "route": "fd_" + scheme,
        "parameters": p.asdict(),
        "fd_grid": {"x_min": g.x_min, "x_max": g.x_max, "nx": g.nx, "dt": dt, "nt": nt},
        "mass": prof.mass(),
        "boundary_fraction": edge / peak if peak > 0 else 0.0,
    }
    return prof
