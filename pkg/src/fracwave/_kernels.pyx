# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Mittag-Leffler kernels; mirrors ``_kernels_py`` line for line."""

import numpy as np
cimport numpy as cnp
from libc.math cimport (lgamma, tgamma, sin, cos, exp, log, log1p, sqrt, hypot, ceil,
                        floor, fabs, fmin, fmax, isfinite, round, pow, INFINITY, M_PI)

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double cabs(double complex)
    double carg(double complex)

DEF MAXP = 64

cdef double EPS = np.finfo(float).eps
cdef double SAFETY = 0.8
cdef int MU_SCAN = 16
cdef int CIRCLE_NODES = 64
cdef double complex I1 = 1j


cdef inline double _tol(double s_abs, double rel_tol, double abs_tol) nogil:
    return fmax(abs_tol, rel_tol * s_abs)


cdef inline bint _cfinite(double complex v) nogil:
    return isfinite(v.real) and isfinite(v.imag)


# --------------------------------------------------------------------------
# Taylor series
# --------------------------------------------------------------------------

def series_batch(double alpha, double beta, double gam, z, double rel_tol,
                 double abs_tol, long max_terms):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(z, dtype=complex).ravel()
    cdef Py_ssize_t m = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] values = np.zeros(m, dtype=complex)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] est = np.zeros(m)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nterms = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok = np.zeros(m, dtype=np.uint8)
    cdef Py_ssize_t i
    cdef long n
    cdef double complex zi, logz, zpow, term
    cdef double s_re, c_re, s_im, c_im, tot, t, absum, last, prev, at, thr, coef, log_coef, arg
    cdef bint done, dead, bad
    cdef double complex val
    # z-independent coefficients (gam)_n / (n! Gamma(alpha n + beta)), shared by every element
    cdef cnp.ndarray[cnp.float64_t, ndim=1] rc_arr = np.empty(max(max_terms, 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lc_arr = np.empty(max(max_terms, 1))
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] direct_arr = np.zeros(max(max_terms, 1), dtype=np.uint8)
    cdef double* rc = &rc_arr[0]
    cdef double* lc = &lc_arr[0]
    cdef unsigned char* direct = &direct_arr[0]
    coef = 1.0; log_coef = 0.0
    for n in range(max_terms):
        arg = alpha * n + beta
        lc[n] = log_coef - lgamma(arg)
        if arg < 170.0 and coef < 1e300:
            rc[n] = coef / tgamma(arg)
            direct[n] = isfinite(rc[n])
        coef *= (gam + n) / (n + 1)
        log_coef += log((gam + n) / (n + 1))
    with nogil:
        for i in range(m):
            zi = zz[i]
            if zi == 0:
                logz = 0
            else:
                logz = clog(zi)
            s_re = 0; c_re = 0; s_im = 0; c_im = 0
            absum = 0; last = 0; prev = INFINITY
            zpow = 1.0
            done = False; dead = False
            for n in range(max_terms):
                bad = True
                if direct[n]:
                    term = rc[n] * zpow
                    bad = (not _cfinite(term)) or cabs(zpow) > 1e250
                if bad:
                    if n > 0 and zi == 0:
                        term = 0
                    else:
                        term = cexp(lc[n] + n * logz)
                if not _cfinite(term):
                    dead = True
                    nterms[i] = n + 1
                    break
                t = term.real
                tot = s_re + t
                if fabs(s_re) >= fabs(t):
                    c_re += (s_re - tot) + t
                else:
                    c_re += (t - tot) + s_re
                s_re = tot
                t = term.imag
                tot = s_im + t
                if fabs(s_im) >= fabs(t):
                    c_im += (s_im - tot) + t
                else:
                    c_im += (t - tot) + s_im
                s_im = tot
                at = cabs(term)
                absum += at
                nterms[i] = n + 1
                thr = 0.1 * _tol(hypot(s_re + c_re, s_im + c_im), rel_tol, abs_tol)
                last = at
                if at <= thr and prev <= thr and at <= prev and (n > 0 or zi == 0):
                    done = True
                    break
                prev = at
                zpow = zpow * zi
            val = (s_re + c_re) + I1 * (s_im + c_im)
            values[i] = val
            est[i] = EPS * (2.0 + sqrt(fmax(nterms[i], 1))) * absum + last
            ok[i] = done and (not dead) and est[i] <= _tol(cabs(val), rel_tol, abs_tol)
    return values, est, nterms, ok.astype(bool)


# --------------------------------------------------------------------------
# Algebraic asymptotic expansion
# --------------------------------------------------------------------------

cdef double _rgamma_any(double x) nogil:
    cdef double k, frac, sgn
    if x > 0:
        if x > 170:
            return exp(-lgamma(x))
        return 1.0 / tgamma(x)
    k = round(x)
    frac = x - k
    if frac == 0.0:
        return 0.0
    sgn = -1.0 if (<long> k) % 2 != 0 else 1.0
    return sgn * sin(M_PI * frac) * exp(lgamma(1.0 - x)) / M_PI


cdef inline double _pole_weight(double alpha, double beta, double gam,
                                double rr, double re) nogil:
    cdef double lw = re + (1.0 - beta) * log(rr) - log(alpha)
    lw += fmax(gam - 1.0, 0.0) * log1p(rr)
    return exp(fmin(lw, 700.0))


cdef int _asymptotic_poles(double alpha, double beta, double gam, double complex z,
                           double widen, double complex *inside, double *across) nogil:
    cdef bint no_cut = alpha == floor(alpha) and (alpha * gam - beta) == floor(alpha * gam - beta)
    cdef double r = cabs(z), th = carg(z)
    cdef double rr = r ** (1.0 / alpha)
    cdef long kmin = <long> ceil((-widen * M_PI * alpha - th) / (2 * M_PI))
    cdef long kmax = <long> floor((widen * M_PI * alpha - th) / (2 * M_PI))
    cdef long k
    cdef int cnt = 0
    cdef double ang
    across[0] = 0.0
    for k in range(kmin, kmax + 1):
        ang = (th + 2 * M_PI * k) / alpha
        if fabs(ang) < M_PI:
            if cnt < MAXP:
                inside[cnt] = rr * cexp(I1 * ang)
                cnt += 1
        elif no_cut and ang == M_PI:
            if cnt < MAXP:
                inside[cnt] = -rr + 0.0 * I1
                cnt += 1
        elif not no_cut:
            across[0] = fmax(across[0], _pole_weight(alpha, beta, gam, rr, rr * cos(ang)))
    return cnt


def asymptotic_batch(double alpha, double beta, double gam, z, double rel_tol,
                     double abs_tol, long max_terms):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(z, dtype=complex).ravel()
    cdef Py_ssize_t m = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] values = np.zeros(m, dtype=complex)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] est = np.full(m, np.inf)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nterms = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok = np.zeros(m, dtype=np.uint8)
    cdef Py_ssize_t i
    cdef long n, n_used
    cdef double complex inside[MAXP]
    cdef int nin, j
    cdef bint int_gam = gam == floor(gam)
    cdef double complex zi, pref, inv, s, comp, zp, term, tot, val, res, rj
    cdef double coef, prev, at, last, thr, tol, across, branch, res_abs, hidden, e
    cdef bint conv, zero_prev
    with nogil:
        for i in range(m):
            zi = zz[i]
            if zi == 0:
                continue
            nin = _asymptotic_poles(alpha, beta, gam, zi, 1.25, inside, &across)
            res = 0; res_abs = 0.0; branch = 0.0
            for j in range(nin):
                if int_gam:
                    rj = _residue(alpha, beta, gam, zi, inside[j], inside, nin, int_gam)
                    res += rj
                    res_abs += cabs(rj)
                else:
                    branch = fmax(branch, _pole_weight(alpha, beta, gam, cabs(inside[j]), inside[j].real))
            pref = cexp(-gam * clog(-zi))
            inv = 1.0 / zi
            s = 0; comp = 0; coef = 1.0; zp = 1.0
            prev = INFINITY; conv = False; zero_prev = False; n_used = 0; last = INFINITY
            for n in range(max_terms):
                term = pref * (coef * zp * _rgamma_any(beta - alpha * gam - alpha * n))
                at = cabs(term)
                if not isfinite(at):
                    break
                if n > 2 and at > prev and prev > 0:
                    break
                tot = s + term
                if cabs(s) >= cabs(term):
                    comp += (s - tot) + term
                else:
                    comp += (term - tot) + s
                s = tot
                n_used = n + 1
                last = at
                thr = 0.1 * fmax(abs_tol, rel_tol * cabs(s + comp + res))
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
                zp = zp * inv
            val = s + comp + res
            values[i] = val
            nterms[i] = n_used
            tol = fmax(abs_tol, rel_tol * cabs(val))
            hidden = across + branch
            # exp(p) carries relative rounding of order eps |p| for each pole p
            e = last + hidden + EPS * (4.0 * cabs(val) + res_abs * (4.0 + pow(cabs(zi), 1.0 / alpha)))
            est[i] = e
            ok[i] = conv and _cfinite(val) and hidden <= 0.1 * tol and e <= tol
    return values, est, nterms, ok.astype(bool)


# --------------------------------------------------------------------------
# Laplace inversion on an optimal parabolic contour
# --------------------------------------------------------------------------


cdef inline double _phi(double complex s) nogil:
    return 0.5 * (s.real + cabs(s))


cdef int _poles_in_sheet(double alpha, double complex z, double complex *out) nogil:
    cdef double r = cabs(z), th = carg(z)
    cdef double rr = r ** (1.0 / alpha)
    cdef long kmin = <long> ceil(-alpha / 2 - th / (2 * M_PI))
    cdef long kmax = <long> floor(alpha / 2 - th / (2 * M_PI))
    cdef long k
    cdef int cnt = 0
    cdef double ang
    for k in range(kmin, kmax + 1):
        ang = (th + 2 * M_PI * k) / alpha
        if fabs(ang) >= M_PI:
            continue
        if cnt < MAXP:
            out[cnt] = rr * cexp(I1 * ang)
            cnt += 1
    return cnt


cdef inline double complex _integrand(double complex s, double alpha, double beta,
                                      double gam, double complex z, bint int_gam) nogil:
    cdef double complex ls = clog(s)
    cdef double complex num = cexp((alpha * gam - beta) * ls)
    cdef double complex den = cexp(alpha * ls) - z
    cdef double complex p
    cdef long j, g
    if int_gam:
        g = <long> gam
        p = 1.0
        for j in range(g):
            p = p * den
        den = p
    else:
        den = cexp(gam * clog(den))
    return cexp(s) * num / den


cdef double complex _residue(double alpha, double beta, double gam, double complex z,
                             double complex p, double complex *allp, int nall,
                             bint int_gam) nogil:
    cdef double dist, rho, th
    cdef int j
    cdef double complex acc = 0, e
    if gam == 1.0:
        if p.real > 709.0:
            return INFINITY + 0.0 * I1
        return cexp((1.0 - beta) * clog(p)) * cexp(p) / alpha
    dist = cabs(p) if (p.real >= 0 or p.imag == 0) else fabs(p.imag)
    for j in range(nall):
        if allp[j] != p:
            dist = fmin(dist, cabs(allp[j] - p))
    rho = fmin(0.5 * dist, 2.0)
    for j in range(CIRCLE_NODES):
        th = 2 * M_PI * j / CIRCLE_NODES
        e = cexp(I1 * th)
        acc += _integrand(p + rho * e, alpha, beta, gam, z, int_gam) * e
    return rho * acc / CIRCLE_NODES


cdef bint _contour_one(double alpha, double beta, double gam, double complex z,
                       double log_tol, double mu_max, long max_nodes,
                       double complex *val_out, double *est_out, long *n_out) nogil:
    cdef double complex allp[MAXP]
    cdef double complex poles[MAXP]
    cdef double phis[MAXP + 1]
    cdef int nall = _poles_in_sheet(alpha, z, allp)
    cdef int npol = 0, a, b, j, nb, q
    cdef double tiny = 1e-14 * fmax(1.0, cabs(z) ** (1.0 / alpha))
    cdef double complex tmp
    cdef bint int_gam = gam == floor(gam)
    cdef double origin_strength = fmax(0.0, beta - alpha * gam)
    cdef double pen = log(1.0 / (1.0 - SAFETY))
    cdef double phi_in, phi_out, hi, strength_in, f, mu, dp, cp, lm, h, dm, cm, lmm, u_max, roundoff
    cdef long n
    cdef bint have = False, best_bad = True, bad
    cdef long best_n = 0
    cdef double best_mu = 0, best_h = 0, best_round = 0
    cdef double complex acc, w, s, val
    cdef long k

    for a in range(nall):
        if _phi(allp[a]) > tiny:
            poles[npol] = allp[a]
            npol += 1
    # insertion sort by phi
    for a in range(1, npol):
        tmp = poles[a]
        b = a - 1
        while b >= 0 and _phi(poles[b]) > _phi(tmp):
            poles[b + 1] = poles[b]
            b -= 1
        poles[b + 1] = tmp
    phis[0] = 0.0
    for a in range(npol):
        phis[a + 1] = _phi(poles[a])
    nb = npol + 1

    for j in range(nb):
        phi_in = phis[j]
        phi_out = phis[j + 1] if j + 1 < nb else INFINITY
        if phi_out <= phi_in * (1 + 1e-12):
            continue
        if (not int_gam) and isfinite(phi_out):
            continue
        hi = fmin(phi_out, mu_max)
        if (not isfinite(phi_out)) and hi <= phi_in:
            hi = 2.0 * phi_in + 2.0
        if hi <= phi_in:
            continue
        strength_in = origin_strength if j == 0 else gam
        for q in range(1, MU_SCAN + 1):
            f = <double> q / MU_SCAN
            mu = phi_in + (hi - phi_in) * f
            if isfinite(phi_out) and mu >= phi_out:
                mu = phi_in + (phi_out - phi_in) * 0.97 * f
            if mu <= phi_in:
                continue
            dp = 1.0 - sqrt(phi_in / mu)
            cp = SAFETY * dp
            lm = mu * (1.0 - cp) ** 2 + 3.0 + strength_in * pen
            if j == 0 and origin_strength > 0:
                lm += origin_strength * fmax(0.0, -log(mu * (1.0 - cp) ** 2))
            h = 2 * M_PI * cp / (lm - log_tol)
            if isfinite(phi_out):
                dm = sqrt(phi_out / mu) - 1.0
                cm = SAFETY * dm
                lmm = mu * (1.0 + cm) ** 2 + 3.0 + gam * pen
                h = fmin(h, 2 * M_PI * cm / (lmm - log_tol))
            if h <= 0:
                continue
            u_max = sqrt(1.0 + (3.0 - log_tol) / mu)
            n = <long> ceil(u_max / h)
            roundoff = EPS * exp(mu) * 10.0
            bad = roundoff > exp(log_tol) * 10.0
            if (not have) or (bad < best_bad) or (bad == best_bad and n < best_n):
                have = True
                best_bad = bad
                best_n = n
                best_mu = mu
                best_h = h
                best_round = roundoff
    if not have:
        n_out[0] = 0
        return False
    if 2 * best_n + 1 > max_nodes:
        n_out[0] = 2 * best_n + 1
        return False
    acc = 0
    for k in range(-best_n, best_n + 1):
        w = 1.0 + I1 * (best_h * k)
        s = best_mu * w * w
        acc += _integrand(s, alpha, beta, gam, z, int_gam) * w
    val = best_h * best_mu / M_PI * acc
    for a in range(npol):
        if _phi(poles[a]) > best_mu:
            val += _residue(alpha, beta, gam, z, poles[a], allp, nall, int_gam)
    val_out[0] = val
    est_out[0] = exp(log_tol) + best_round
    n_out[0] = 2 * best_n + 1
    # enclosing a far branch point costs exp(mu) in cancellation
    return _cfinite(val) and best_round <= 10.0 * exp(log_tol) * fmax(1.0, cabs(val))


def contour_batch(double alpha, double beta, double gam, z, double rel_tol,
                  double abs_tol, long max_terms):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(z, dtype=complex).ravel()
    cdef Py_ssize_t m = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] values = np.zeros(m, dtype=complex)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] est = np.full(m, np.inf)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nterms = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok = np.zeros(m, dtype=np.uint8)
    cdef double target = fmax(1e-2 * rel_tol, 1e-15)
    cdef double lt, mu_max, e
    cdef double complex v
    cdef long nt
    cdef bint good
    cdef int attempt
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            lt = log(target)
            good = False
            v = NAN_C()
            e = INFINITY
            nt = 0
            for attempt in range(4):
                mu_max = log(exp(lt) / EPS)
                v = NAN_C()
                e = INFINITY
                good = _contour_one(alpha, beta, gam, zz[i], lt, mu_max, max_terms, &v, &e, &nt)
                if good or nt == 0 or nt <= max_terms:
                    break
                lt += log(10.0)
            values[i] = v
            est[i] = e
            nterms[i] = nt
            ok[i] = good
    return values, est, nterms, ok.astype(bool)


cdef inline double complex NAN_C() nogil:
    cdef double nan = INFINITY - INFINITY
    return nan + I1 * nan
