"""Pure-Python/NumPy implementation of the Mittag-Leffler hot kernels.

Every public function here has a twin with the same signature in the compiled
``_kernels`` extension. Both evaluate the three-parameter function

    E^g_{a,b}(z) = sum_n (g)_n z**n / (n! Gamma(a n + b))

for a batch of complex arguments and fixed real orders, and return

    values (complex), est_error (float), terms (int), ok (bool)

``ok`` is False where the method could not certify ``est_error <= tol``; the
caller falls through to the next regime for those entries.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy import special

EPS = np.finfo(float).eps
_SAFETY = 0.8
_MU_SCAN = 16
_CIRCLE_NODES = 64


def _tol(s_abs, rel_tol, abs_tol):
    return np.maximum(abs_tol, rel_tol * s_abs)


# --------------------------------------------------------------------------
# Taylor series
# --------------------------------------------------------------------------

def series_batch(alpha, beta, gam, z, rel_tol, abs_tol, max_terms):
    z = np.ascontiguousarray(z, dtype=complex).ravel()
    m = z.size
    s_re = np.zeros(m)
    c_re = np.zeros(m)
    s_im = np.zeros(m)
    c_im = np.zeros(m)
    absum = np.zeros(m)
    last = np.zeros(m)
    prev = np.full(m, np.inf)
    nterms = np.zeros(m, dtype=np.int64)
    done = np.zeros(m, dtype=bool)
    dead = np.zeros(m, dtype=bool)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        logz = np.log(np.where(z == 0, 1.0, z))
    coef = 1.0
    log_coef = 0.0
    zpow = np.ones(m, dtype=complex)

    for n in range(max_terms):
        active = ~(done | dead)
        if not active.any():
            break
        arg = alpha * n + beta
        with np.errstate(over="ignore", invalid="ignore"):
            if arg < 170.0 and coef < 1e300:
                term = coef * zpow * special.rgamma(arg)
                bad = ~np.isfinite(term) | (np.abs(zpow) > 1e250)
            else:
                bad = np.ones(m, dtype=bool)
                term = np.zeros(m, dtype=complex)
            if bad.any():
                lt = log_coef + n * logz[bad] - special.gammaln(arg)
                term[bad] = np.exp(lt)
                if n > 0:
                    term[bad & (z == 0)] = 0.0
        term = np.where(active, term, 0.0)
        if n == 0:
            term = np.where(active, term, 0.0)
        dead |= active & ~np.isfinite(term)
        term = np.where(np.isfinite(term), term, 0.0)

        # Neumaier compensated summation, real and imaginary parts separately.
        for s, c, t in ((s_re, c_re, term.real), (s_im, c_im, term.imag)):
            tot = s + t
            big = np.abs(s) >= np.abs(t)
            c += np.where(big, (s - tot) + t, (t - tot) + s)
            s[:] = tot

        at = np.abs(term)
        absum += at
        nterms[active] = n + 1
        s_abs = np.hypot(s_re + c_re, s_im + c_im)
        thr = 0.1 * _tol(s_abs, rel_tol, abs_tol)
        small = (at <= thr) & (prev <= thr) & (at <= prev)
        if n == 0:
            small = small & (z == 0)
        done |= active & small
        last = np.where(active, at, last)
        prev = np.where(active, at, prev)

        coef *= (gam + n) / (n + 1)
        log_coef += math.log((gam + n) / (n + 1))
        # overflowed powers are caught by the log-space path above
        with np.errstate(over="ignore", invalid="ignore"):
            zpow = zpow * z

    values = (s_re + c_re) + 1j * (s_im + c_im)
    n_eff = np.maximum(nterms, 1)
    est = EPS * (2.0 + np.sqrt(n_eff)) * absum + last
    ok = done & ~dead & (est <= _tol(np.abs(values), rel_tol, abs_tol))
    return values, est, nterms, ok


# --------------------------------------------------------------------------
# Algebraic asymptotic expansion for large |z|
# --------------------------------------------------------------------------

def _rgamma_any(x):
    """1/Gamma(x) for any real x, exactly zero at the poles."""
    if x > 0:
        return math.exp(-math.lgamma(x)) if x > 170 else 1.0 / math.gamma(x)
    k = round(x)
    frac = x - k
    if frac == 0.0:
        return 0.0
    sgn = -1.0 if (int(k) % 2) else 1.0
    sinpx = sgn * math.sin(math.pi * frac)
    return sinpx * math.exp(math.lgamma(1.0 - x)) / math.pi


def _pole_weight(alpha, beta, gam, rr, re):
    """Crude magnitude of the residue at a pole of modulus ``rr``."""
    lw = re + (1.0 - beta) * math.log(rr) - math.log(alpha)
    lw += max(gam - 1.0, 0.0) * math.log1p(rr)
    return math.exp(min(lw, 700.0))


def _asymptotic_poles(alpha, beta, gam, z, widen):
    """Split the poles of s**a = z into those on the principal sheet and the rest.

    Returns the principal-sheet poles and the largest crude residue among the
    poles just across the cut (|arg s| <= widen*pi), whose contribution the
    expansion cannot represent. With integer a and a*g - b there is no cut, so
    a pole on the negative axis counts as principal.
    """
    no_cut = float(alpha).is_integer() and float(alpha * gam - beta).is_integer()
    r = abs(z)
    th = cmath.phase(z)
    rr = r ** (1.0 / alpha)
    kmin = math.ceil((-widen * math.pi * alpha - th) / (2 * math.pi))
    kmax = math.floor((widen * math.pi * alpha - th) / (2 * math.pi))
    inside = []
    worst = 0.0
    for k in range(kmin, kmax + 1):
        ang = (th + 2 * math.pi * k) / alpha
        if abs(ang) < math.pi:
            inside.append(rr * cmath.exp(1j * ang))
        elif no_cut and ang == math.pi:
            inside.append(complex(-rr, 0.0))
        elif not no_cut:
            worst = max(worst, _pole_weight(alpha, beta, gam, rr, rr * math.cos(ang)))
    return inside, worst


def asymptotic_batch(alpha, beta, gam, z, rel_tol, abs_tol, max_terms):
    z = np.ascontiguousarray(z, dtype=complex).ravel()
    m = z.size
    values = np.zeros(m, dtype=complex)
    est = np.full(m, np.inf)
    nterms = np.zeros(m, dtype=np.int64)
    ok = np.zeros(m, dtype=bool)
    int_gam = float(gam).is_integer()
    for i in range(m):
        zi = complex(z[i])
        if zi == 0:
            continue
        inside, across = _asymptotic_poles(alpha, beta, gam, zi, 1.25)
        res = 0j
        res_abs = 0.0
        branch = 0.0
        for p in inside:
            if int_gam:
                r = _residue(alpha, beta, gam, zi, p, inside)
                res += r
                res_abs += abs(r)
            else:
                branch = max(branch, _pole_weight(alpha, beta, gam, abs(p), p.real))
        pref = cmath.exp(-gam * cmath.log(-zi))
        inv = 1.0 / zi
        s = 0j
        comp = 0j
        coef = 1.0
        zp = 1.0 + 0j
        prev = math.inf
        conv = False
        zero_prev = False
        n_used = 0
        last = math.inf
        for n in range(max_terms):
            a_n = coef * zp * _rgamma_any(beta - alpha * gam - alpha * n)
            term = pref * a_n
            at = abs(term)
            if not math.isfinite(at):
                break
            if n > 2 and at > prev and prev > 0:
                break
            tot = s + term
            comp += (s - tot) + term if abs(s) >= abs(term) else (term - tot) + s
            s = tot
            n_used = n + 1
            last = at
            thr = 0.1 * max(abs_tol, rel_tol * abs(s + comp + res))
            if n > 0 and at <= thr and prev <= thr:
                conv = True
                break
            if at == 0 and zero_prev:
                # integer orders: every later coefficient hits a Gamma pole
                conv = True
                break
            zero_prev = at == 0
            if at > 0:
                prev = at
            coef *= (gam + n) / (n + 1)
            zp *= inv
        val = s + comp + res
        values[i] = val
        nterms[i] = n_used
        tol = max(abs_tol, rel_tol * abs(val))
        hidden = across + branch
        # exp(p) carries relative rounding of order eps |p| for each pole p
        e = last + hidden + EPS * (4.0 * abs(val) + res_abs * (4.0 + abs(zi) ** (1.0 / alpha)))
        est[i] = e
        ok[i] = conv and cmath.isfinite(val) and hidden <= 0.1 * tol and e <= tol
    return values, est, nterms, ok


# --------------------------------------------------------------------------
# Laplace inversion on an optimal parabolic contour
# --------------------------------------------------------------------------

def _poles_in_sheet(alpha, z):
    r = abs(z)
    th = cmath.phase(z)
    rr = r ** (1.0 / alpha)
    kmin = math.ceil(-alpha / 2 - th / (2 * math.pi))
    kmax = math.floor(alpha / 2 - th / (2 * math.pi))
    out = []
    for k in range(kmin, kmax + 1):
        ang = (th + 2 * math.pi * k) / alpha
        if abs(ang) >= math.pi:
            continue
        out.append(rr * cmath.exp(1j * ang))
    return out


def _phi(s):
    return 0.5 * (s.real + abs(s))


def contour_params(alpha, beta, gam, z, log_tol, mu_max):
    """Pick (mu, h, N, outside_poles, roundoff) minimizing N; None if impossible."""
    poles = _poles_in_sheet(alpha, z)
    tiny = 1e-14 * max(1.0, abs(z) ** (1.0 / alpha))
    poles = sorted((p for p in poles if _phi(p) > tiny), key=_phi)
    phis = [_phi(p) for p in poles]
    bounds = [0.0] + phis
    integer_gamma = float(gam).is_integer()
    origin_strength = max(0.0, beta - alpha * gam)
    pen = math.log(1.0 / (1.0 - _SAFETY))
    best = None
    nb = len(bounds)
    for j in range(nb):
        phi_in = bounds[j]
        phi_out = bounds[j + 1] if j + 1 < nb else math.inf
        if phi_out <= phi_in * (1 + 1e-12):
            continue
        if not integer_gamma and math.isfinite(phi_out):
            continue
        hi = min(phi_out, mu_max)
        if not math.isfinite(phi_out) and hi <= phi_in:
            hi = 2.0 * phi_in + 2.0
        if hi <= phi_in:
            continue
        strength_in = origin_strength if j == 0 else gam
        for q in range(1, _MU_SCAN + 1):
            f = q / _MU_SCAN
            mu = phi_in + (hi - phi_in) * f
            if math.isfinite(phi_out) and mu >= phi_out:
                mu = phi_in + (phi_out - phi_in) * 0.97 * f
            if mu <= phi_in:
                continue
            dp = 1.0 - math.sqrt(phi_in / mu)
            cp = _SAFETY * dp
            lm = mu * (1.0 - cp) ** 2 + 3.0 + strength_in * pen
            if j == 0 and origin_strength > 0:
                lm += origin_strength * max(0.0, -math.log(mu * (1.0 - cp) ** 2))
            h = 2 * math.pi * cp / (lm - log_tol)
            if math.isfinite(phi_out):
                dm = math.sqrt(phi_out / mu) - 1.0
                cm = _SAFETY * dm
                lmm = mu * (1.0 + cm) ** 2 + 3.0 + gam * pen
                h = min(h, 2 * math.pi * cm / (lmm - log_tol))
            if h <= 0:
                continue
            u_max = math.sqrt(1.0 + (3.0 - log_tol) / mu)
            n = math.ceil(u_max / h)
            roundoff = EPS * math.exp(min(mu, 700.0)) * 10.0
            key = (roundoff > math.exp(log_tol) * 10.0, n)
            if best is None or key < best[0]:
                outside = [p for p in poles if _phi(p) > mu]
                best = (key, mu, h, n, outside, roundoff)
    if best is None:
        return None
    return best[1:]


def _integrand(s, alpha, beta, gam, z):
    ls = np.log(s)
    num = np.exp((alpha * gam - beta) * ls)
    den = np.exp(alpha * ls) - z
    if float(gam).is_integer():
        den = den ** int(gam)
    else:
        den = np.exp(gam * np.log(den))
    return np.exp(s) * num / den


def _residue(alpha, beta, gam, z, p, others):
    if gam == 1.0:
        if p.real > 709.0:
            return complex(math.inf, 0.0)
        return cmath.exp((1.0 - beta) * cmath.log(p)) * cmath.exp(p) / alpha
    dist = abs(p) if p.real >= 0 or p.imag == 0 else abs(p.imag)
    for q in others:
        if q != p:
            dist = min(dist, abs(q - p))
    rho = min(0.5 * dist, 2.0)
    th = 2 * np.pi * np.arange(_CIRCLE_NODES) / _CIRCLE_NODES
    e = np.exp(1j * th)
    g = _integrand(p + rho * e, alpha, beta, gam, z)
    return complex(rho * np.mean(g * e))


def contour_one(alpha, beta, gam, z, log_tol, mu_max, max_nodes):
    par = contour_params(alpha, beta, gam, z, log_tol, mu_max)
    if par is None:
        return complex("nan"), math.inf, 0, False
    mu, h, n, outside, roundoff = par
    if 2 * n + 1 > max_nodes:
        return complex("nan"), math.inf, 2 * n + 1, False
    u = h * np.arange(-n, n + 1)
    w = 1.0 + 1j * u
    s = mu * w * w
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        g = _integrand(s, alpha, beta, gam, z)
        val = complex(h * mu / np.pi * np.sum(g * w))
    allp = _poles_in_sheet(alpha, z)
    for p in outside:
        val += _residue(alpha, beta, gam, z, p, allp)
    est = math.exp(log_tol) + roundoff
    # enclosing a far branch point costs exp(mu) in cancellation
    ok = cmath.isfinite(val) and roundoff <= 10.0 * math.exp(log_tol) * max(1.0, abs(val))
    return val, est, 2 * n + 1, ok


def contour_batch(alpha, beta, gam, z, rel_tol, abs_tol, max_terms):
    z = np.ascontiguousarray(z, dtype=complex).ravel()
    m = z.size
    values = np.zeros(m, dtype=complex)
    est = np.full(m, np.inf)
    nterms = np.zeros(m, dtype=np.int64)
    ok = np.zeros(m, dtype=bool)
    target = max(1e-2 * rel_tol, 1e-15)
    for i in range(m):
        lt = math.log(target)
        for _ in range(4):
            mu_max = math.log(math.exp(lt) / EPS)
            v, e, nt, good = contour_one(alpha, beta, gam, complex(z[i]), lt, mu_max, max_terms)
            if good or nt == 0 or nt <= max_terms:
                break
            lt += math.log(10.0)
        values[i] = v
        est[i] = e
        nterms[i] = nt
        ok[i] = good
    return values, est, nterms, ok
