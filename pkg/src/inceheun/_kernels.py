"""Scalar special-function and recurrence kernels.

Every function here is plain Python over ``cmath``/``math`` and small numpy
arrays so the same source runs compiled (numba) or interpreted.
"""
import cmath
import math

import numpy as np

from ._jit import njit

PI = math.pi
LOG_2PI_HALF = 0.5 * math.log(2.0 * math.pi)
SQRT_PI = math.sqrt(math.pi)
TINY = 1e-300

# mantissa/exponent scaling for index sequences: value = mant * 2**(SCALE_BITS * e)
SCALE_BITS = 400
SCALE_UP = 2.0 ** SCALE_BITS
SCALE_DN = 2.0 ** -SCALE_BITS

_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)


@njit
def near_nonpos_int(z, tol):
    """Return n >= 0 when z is within tol of -n, else -1."""
    k = round(z.real)
    if k <= 0 and abs(z - k) <= tol * max(1.0, abs(k)):
        return int(-k)
    return -1


@njit
def _lgamma_right(z):
    # assumes Re z >= 0.5
    acc = 0.0 + 0.0j
    prod = 1.0 + 0.0j
    w = z
    while abs(w) < 12.0 or w.real < 8.0:
        prod *= w
        if abs(prod) > 1e200:
            acc += cmath.log(prod)
            prod = 1.0 + 0.0j
        w += 1.0
    acc += cmath.log(prod)
    inv = 1.0 / w
    inv2 = inv * inv
    ser = 0.0 + 0.0j
    p = inv
    for c in _STIRLING:
        ser += c * p
        p *= inv2
    return (w - 0.5) * cmath.log(w) - w + LOG_2PI_HALF + ser - acc


@njit
def _log_sin_pi(z):
    # log sin(pi z) up to a multiple of 2 pi i, overflow-free
    k = 2.0 * round(0.5 * z.real)
    z = z - k
    if z.imag >= 0.0:
        e = cmath.exp(2j * PI * z)
        return -1j * PI * z + cmath.log(1.0 - e) + cmath.log(0.5j)
    e = cmath.exp(-2j * PI * z)
    return 1j * PI * z + cmath.log(1.0 - e) + cmath.log(-0.5j)


@njit
def lgamma(z):
    """log Gamma(z) modulo 2 pi i (adequate for exponentiation)."""
    if z.real >= 0.5:
        return _lgamma_right(z)
    return math.log(PI) - _log_sin_pi(z) - _lgamma_right(1.0 - z)


@njit
def gamma(z):
    return cmath.exp(lgamma(z))


@njit
def rgamma(z):
    if near_nonpos_int(z, 1e-15) >= 0:
        return 0.0 + 0.0j
    return cmath.exp(-lgamma(z))


# ---------------------------------------------------------------------------
# Gauss hypergeometric function


@njit
def hyp2f1_series(a, b, c, y, tol, nmax):
    """Maclaurin sum. Returns (F, F', ok)."""
    s = 1.0 + 0.0j
    ds = 0.0 + 0.0j
    t = 1.0 + 0.0j
    small = 0
    for k in range(nmax):
        t = t * (a + k) * (b + k) / ((c + k) * (k + 1.0)) * y
        s += t
        ds += (k + 1.0) * t
        if t == 0.0:
            break
        if abs(t) <= tol * abs(s):
            small += 1
            if small >= 2:
                break
        else:
            small = 0
    else:
        return s, ds, False
    if y != 0:
        ds = ds / y
    else:
        ds = a * b / c
    return s, ds, True


@njit
def hyp2f1_poly(n, b, c, y):
    """F(-n, b; c; y) as the exact finite sum."""
    s = 1.0 + 0.0j
    t = 1.0 + 0.0j
    for k in range(n):
        t = t * (k - n) * (b + k) / ((c + k) * (k + 1.0)) * y
        s += t
    return s


@njit
def hyp2f1_ode(a, b, c, y0, f, df, y1, tol):
    """Carry (F, F') from y0 to y1 along a straight line by Taylor re-expansion
    of the hypergeometric equation."""
    cur = y0
    ab1 = a + b + 1.0
    guard = 0
    while True:
        rem = y1 - cur
        dist = abs(rem)
        if dist == 0.0:
            break
        rad = min(abs(cur), abs(1.0 - cur))
        hmax = 0.5 * rad
        if dist <= hmax:
            h = rem
        else:
            h = rem * (hmax / dist)
        p0 = cur * (1.0 - cur)
        p1 = 1.0 - 2.0 * cur
        q0 = c - ab1 * cur
        fk = f
        fk1 = df
        val = fk + fk1 * h
        dval = fk1 + 0.0j
        hp = h
        small = 0
        for k in range(600):
            fk2 = -((p1 * k + q0) * (k + 1.0) * fk1 - (k + a) * (k + b) * fk) / (p0 * (k + 2.0) * (k + 1.0))
            term_d = (k + 2.0) * fk2 * hp
            hp = hp * h
            term = fk2 * hp
            val += term
            dval += term_d
            if abs(term) <= tol * abs(val) and abs(term_d) <= tol * abs(dval):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            fk = fk1
            fk1 = fk2
        f = val
        df = dval
        cur = cur + h
        guard += 1
        if guard > 100000:
            return f, df, False
    return f, df, True


@njit
def _frac_dist(x):
    return abs(x - round(x.real))


@njit
def _pole(x):
    return near_nonpos_int(x, 1e-14) >= 0


@njit
def hyp2f1(a, b, c, y, tol, nmax):
    """Principal-branch Gauss F(a, b; c; y). Returns (value, ok)."""
    na = near_nonpos_int(a, 1e-14)
    nb = near_nonpos_int(b, 1e-14)
    if na >= 0 or nb >= 0:
        if na < 0 or (nb >= 0 and nb < na):
            return hyp2f1_poly(nb, a, c, y), True
        return hyp2f1_poly(na, b, c, y), True
    ay = abs(y)
    if ay <= 0.5:
        v, dv, ok = hyp2f1_series(a, b, c, y, tol, nmax)
        return v, ok
    w = y / (y - 1.0)
    if abs(w) <= 0.5:
        v, dv, ok = hyp2f1_series(a, c - b, c, w, tol, nmax)
        return (1.0 - y) ** (-a) * v, ok
    if ay >= 2.0 and _frac_dist(a - b) > 0.05:
        lc = lgamma(c)
        x = 1.0 / y
        v1, d1, ok1 = hyp2f1_series(a, a - c + 1.0, a - b + 1.0, x, tol, nmax)
        v2, d2, ok2 = hyp2f1_series(b, b - c + 1.0, b - a + 1.0, x, tol, nmax)
        t1 = 0.0 + 0.0j
        t2 = 0.0 + 0.0j
        if not (_pole(b) or _pole(c - a)):
            t1 = cmath.exp(lc + lgamma(b - a) - lgamma(b) - lgamma(c - a) - a * cmath.log(-y)) * v1
        if not (_pole(a) or _pole(c - b)):
            t2 = cmath.exp(lc + lgamma(a - b) - lgamma(a) - lgamma(c - b) - b * cmath.log(-y)) * v2
        return t1 + t2, ok1 and ok2
    if abs(1.0 - y) <= 0.5 and _frac_dist(c - a - b) > 0.05:
        x = 1.0 - y
        lc = lgamma(c)
        v1, d1, ok1 = hyp2f1_series(a, b, a + b - c + 1.0, x, tol, nmax)
        v2, d2, ok2 = hyp2f1_series(c - a, c - b, c - a - b + 1.0, x, tol, nmax)
        t1 = 0.0 + 0.0j
        t2 = 0.0 + 0.0j
        if not (_pole(c - a) or _pole(c - b)):
            t1 = cmath.exp(lc + lgamma(c - a - b) - lgamma(c - a) - lgamma(c - b)) * v1
        if not (_pole(a) or _pole(b)):
            t2 = cmath.exp(lc + lgamma(a + b - c) - lgamma(a) - lgamma(b) + (c - a - b) * cmath.log(x)) * v2
        return t1 + t2, ok1 and ok2
    if abs(1.0 - y) >= 2.0 and _frac_dist(a - b) > 0.05:
        x = 1.0 / (1.0 - y)
        lc = lgamma(c)
        lx = cmath.log(1.0 - y)
        v1, d1, ok1 = hyp2f1_series(a, c - b, a - b + 1.0, x, tol, nmax)
        v2, d2, ok2 = hyp2f1_series(b, c - a, b - a + 1.0, x, tol, nmax)
        t1 = 0.0 + 0.0j
        t2 = 0.0 + 0.0j
        if not (_pole(b) or _pole(c - a)):
            t1 = cmath.exp(lc + lgamma(b - a) - lgamma(b) - lgamma(c - a) - a * lx) * v1
        if not (_pole(a) or _pole(c - b)):
            t2 = cmath.exp(lc + lgamma(a - b) - lgamma(a) - lgamma(c - b) - b * lx) * v2
        return t1 + t2, ok1 and ok2
    # analytic continuation by the differential equation
    y0 = y * (0.45 / ay)
    f0, df0, ok0 = hyp2f1_series(a, b, c, y0, tol * 1e-2, nmax)
    f, df, ok = hyp2f1_ode(a, b, c, y0, f0, df0, y, tol * 1e-2)
    return f, ok0 and ok


# ---------------------------------------------------------------------------
# Tricomi confluent hypergeometric function U(a, b, y)


@njit
def hyperu_poly(n, b, logy):
    """U(-n, b, y) = (-1)^n sum_k (-n)_k (b+k)_{n-k} y^k / k!."""
    y = cmath.exp(logy)
    coef = np.empty(n + 1, dtype=np.complex128)
    p = 1.0 + 0.0j
    coef[n] = 1.0
    for k in range(n - 1, -1, -1):
        p = p * (b + k)
        coef[k] = p
    s = 0.0 + 0.0j
    t = 1.0 + 0.0j
    for k in range(n + 1):
        s += t * coef[k]
        t = t * (k - n) * y / (k + 1.0)
    if n % 2 == 1:
        s = -s
    return s


@njit
def hyperu_asymptotic(a, b, logy, tol):
    y = cmath.exp(logy)
    s = 1.0 + 0.0j
    t = 1.0 + 0.0j
    a2 = a - b + 1.0
    prev = 1.0
    for k in range(400):
        t = -t * (a + k) * (a2 + k) / ((k + 1.0) * y)
        at = abs(t)
        if at > prev and k > 2:
            return 0.0j, False
        s += t
        prev = at
        if at <= tol * abs(s):
            return s * cmath.exp(-a * logy), True
    return 0.0j, False


@njit
def _ray_angle(phi):
    if abs(phi) <= 0.5 * PI:
        return -phi
    sgn = 1.0 if phi > 0 else -1.0
    return -sgn * 0.5 * (abs(phi) + 0.5 * PI)


@njit
def _u_logintegrand(x, a, b, Y, w, itheta, lg):
    ex = math.exp(-x)
    logs = x - ex
    s = math.exp(logs)
    return -Y * s + a * (logs + itheta) + (b - a - 1.0) * cmath.log(1.0 + w * s) + math.log1p(ex) - lg


@njit
def hyperu_integral(a, b, logy, lg, tol):
    """exp(-lg) * int_0^inf e^{-y t} t^{a-1} (1+t)^{b-a-1} dt, Re a > 0.

    Rotated ray plus a double-exponential change of variable, trapezoid rule
    with step halving. ``lg`` is normally log Gamma(a).
    """
    phi = logy.imag
    theta = _ray_angle(phi)
    w = cmath.exp(1j * theta)
    itheta = 1j * theta
    Y = cmath.exp(logy) * w
    h = 0.25
    # locate the peak and the cutoffs on the coarse grid
    lmax = -1e300
    total = 0.0 + 0.0j
    # scan right from x = -1
    x0 = -1.0
    L = _u_logintegrand(x0, a, b, Y, w, itheta, lg)
    lmax = L.real
    total = cmath.exp(L)
    k = 1
    while k < 4000:
        x = x0 + k * h
        L = _u_logintegrand(x, a, b, Y, w, itheta, lg)
        if L.real > lmax:
            lmax = L.real
        total += cmath.exp(L)
        if L.real < lmax - 42.0 and x > 3.0:
            break
        k += 1
    kr = k
    k = 1
    while k < 4000:
        x = x0 - k * h
        L = _u_logintegrand(x, a, b, Y, w, itheta, lg)
        if L.real > lmax:
            lmax = L.real
        total += cmath.exp(L)
        if L.real < lmax - 42.0:
            break
        k += 1
    kl = k
    xl = x0 - kl * h
    xr = x0 + kr * h
    T = total * h
    for level in range(14):
        hn = 0.5 * h
        n = int(round((xr - xl) / h))
        acc = 0.0 + 0.0j
        for j in range(n):
            x = xl + (j + 0.5) * h
            acc += cmath.exp(_u_logintegrand(x, a, b, Y, w, itheta, lg))
        Tn = 0.5 * T + hn * acc
        diff = abs(Tn - T)
        T = Tn
        h = hn
        if diff <= tol * abs(T) and level >= 1:
            return T, True
    return T, False


@njit
def hyperu_log(a, b, logy, tol):
    """U(a, b, y) with log y supplied (|Im log y| < 3 pi / 2). Returns (value, ok)."""
    n = near_nonpos_int(a, 1e-14)
    if n >= 0:
        return hyperu_poly(n, b, logy), True
    a2 = a - b + 1.0
    n = near_nonpos_int(a2, 1e-14)
    if n >= 0:
        return cmath.exp((1.0 - b) * logy) * hyperu_poly(n, 2.0 - b, logy), True
    ay = math.exp(logy.real)
    if ay > 25.0 and ay > 4.0 * (abs(a) + abs(a2)):
        v, ok = hyperu_asymptotic(a, b, logy, 0.1 * tol)
        if ok:
            return v, True
    if a2.real > a.real:
        aa = a2
        bb = 2.0 - b
        pre = cmath.exp((1.0 - b) * logy)
    else:
        aa = a
        bb = b
        pre = 1.0 + 0.0j
    if aa.real >= 0.5:
        v, ok = hyperu_integral(aa, bb, logy, lgamma(aa), tol)
        return pre * v, ok
    shift = int(math.ceil(0.5 - aa.real))
    A = aa + shift
    cur, ok1 = hyperu_integral(A, bb, logy, lgamma(A), tol)
    nxt, ok2 = hyperu_integral(A + 1.0, bb, logy, lgamma(A + 1.0), tol)
    y = cmath.exp(logy)
    for j in range(shift):
        prev = -(bb - 2.0 * A - y) * cur - A * (A - bb + 1.0) * nxt
        nxt = cur
        cur = prev
        A = A - 1.0
    return pre * cur, ok1 and ok2


@njit
def hyperu(a, b, y, tol):
    return hyperu_log(a, b, cmath.log(y), tol)


@njit
def besselk(lam, xi, tol):
    """K_lam(xi) = sqrt(pi) e^{-xi} (2 xi)^lam U(lam + 1/2, 2 lam + 1, 2 xi)."""
    if lam.real < 0.0:
        lam = -lam
    l2 = cmath.log(2.0 * xi)
    u, ok = hyperu_log(lam + 0.5, 2.0 * lam + 1.0, l2, tol)
    return SQRT_PI * cmath.exp(-xi + lam * l2) * u, ok


@njit
def whittaker_hat(kappa, mu, logy, tol):
    """exp(y/2) W_{kappa,mu}(y) = y^{mu+1/2} U(mu - kappa + 1/2, 2 mu + 1, y)."""
    if mu.real < 0.0:
        mu = -mu
    u, ok = hyperu_log(mu - kappa + 0.5, 2.0 * mu + 1.0, logy, tol)
    return cmath.exp((mu + 0.5) * logy) * u, ok


# ---------------------------------------------------------------------------
# symmetric index lattices
#
# kind 0: K_mu(xi)                        p0 = xi
# kind 1: y^{mu+1/2} U(mu-kappa+1/2, 2mu+1, y)   p0 = kappa, p1 = log y
# kind 2: F(-M, M+s; c; y) with mu = M + s/2     p0 = s, p1 = c, p2 = y
# all three are even in mu and obey a three-term recurrence with unit step.


@njit
def _direct(kind, mu, p0, p1, p2, tol):
    if kind == 0:
        return besselk(mu, p0, tol)
    if kind == 1:
        return whittaker_hat(p0, mu, p1, tol)
    M = mu - 0.5 * p0
    return hyp2f1(-M, M + p0, p1, p2, tol, 20000)


@njit
def _step(kind, mu, fm, f0, p0, p1, p2):
    """Given f(mu-1)=fm, f(mu)=f0 return (f(mu+1), leading coefficient)."""
    if kind == 0:
        xi = p0
        return fm + (2.0 * mu / xi) * f0, 1.0 + 0.0j
    if kind == 1:
        kappa = p0
        y = cmath.exp(p1)
        lead = (mu - kappa + 0.5) * (2.0 * mu - 1.0) * y
        num = 2.0 * mu * (4.0 * mu * mu - 1.0 - 2.0 * kappa * y) * f0 + (2.0 * mu + 1.0) * (mu + kappa - 0.5) * y * fm
        if lead == 0:
            return 0.0j, lead
        return num / lead, lead
    s = p0
    c = p1
    y = p2
    m = mu - 0.5 * s
    al = c - 1.0
    be = s - c
    ab = al + be
    x = 1.0 - 2.0 * y
    lead = 2.0 * (m + al + 1.0) * (m + ab + 1.0) * (2.0 * m + ab)
    num = (2.0 * m + ab + 1.0) * ((2.0 * m + ab + 2.0) * (2.0 * m + ab) * x + al * al - be * be) * f0 \
        - 2.0 * m * (m + be) * (2.0 * m + ab + 2.0) * fm
    if lead == 0:
        return 0.0j, lead
    return num / lead, lead


@njit
def lattice(kind, base, J, p0, p1, p2, tol):
    """Scaled values of f(base + j), j = 0..J, built upward from base."""
    mant = np.empty(J + 1, dtype=np.complex128)
    expo = np.zeros(J + 1, dtype=np.int64)
    ok = True
    f0, o = _direct(kind, base, p0, p1, p2, tol)
    ok = ok and o
    mant[0] = f0
    if J == 0:
        return mant, expo, ok
    f1, o = _direct(kind, base + 1.0, p0, p1, p2, tol)
    ok = ok and o
    mant[1] = f1
    e = 0
    fm = f0
    fc = f1
    for j in range(1, J):
        mu = base + j
        fn, lead = _step(kind, mu, fm, fc, p0, p1, p2)
        ref = abs(mu) * abs(mu) * abs(mu) + 1.0
        if abs(lead) < 1e-8 * ref and kind != 0:
            # recurrence breaks down; restart from direct evaluations
            d0, o1 = _direct(kind, mu, p0, p1, p2, tol)
            d1, o2 = _direct(kind, mu + 1.0, p0, p1, p2, tol)
            ok = ok and o1 and o2
            # express in the current scale
            sc = SCALE_DN ** e if e > 0 else SCALE_UP ** (-e)
            fc = d0 * sc
            fn = d1 * sc
            mant[j] = fc
        fm = fc
        fc = fn
        a = abs(fc)
        if a > SCALE_UP:
            fm *= SCALE_DN
            fc *= SCALE_DN
            e += 1
        elif a < SCALE_DN and a != 0.0:
            fm *= SCALE_UP
            fc *= SCALE_UP
            e -= 1
        mant[j + 1] = fc
        expo[j + 1] = e
    return mant, expo, ok


@njit
def _rep(mu):
    if mu.real < 0.0 or (mu.real == 0.0 and mu.imag < 0.0):
        return -mu
    return mu


@njit
def sym_sequence(kind, mu0, step, nlo, nhi, p0, p1, p2, tol):
    """Scaled f(mu0 + step*n) for n = nlo..nhi using f(-mu) = f(mu)."""
    cnt = nhi - nlo + 1
    reps = np.empty(cnt, dtype=np.complex128)
    for i in range(cnt):
        reps[i] = _rep(mu0 + step * (nlo + i))
    # two candidate lattices: frac(mu0) and frac(-mu0)
    b1 = mu0 - math.floor(mu0.real + 0.5)
    b2 = -mu0 - math.floor(-mu0.real + 0.5)
    J1 = -1
    J2 = -1
    lat = np.empty(cnt, dtype=np.int64)
    idx = np.empty(cnt, dtype=np.int64)
    for i in range(cnt):
        r = reps[i]
        j1 = round((r - b1).real)
        if abs(r - b1 - j1) < 1e-9:
            lat[i] = 0
            idx[i] = j1
            if j1 > J1:
                J1 = j1
        else:
            j2 = round((r - b2).real)
            lat[i] = 1
            idx[i] = j2
            if j2 > J2:
                J2 = j2
    mant = np.empty(cnt, dtype=np.complex128)
    expo = np.zeros(cnt, dtype=np.int64)
    ok = True
    if J1 >= 0:
        m1, e1, o1 = lattice(kind, b1, J1, p0, p1, p2, tol)
        ok = ok and o1
        for i in range(cnt):
            if lat[i] == 0:
                mant[i] = m1[idx[i]]
                expo[i] = e1[idx[i]]
    if J2 >= 0:
        m2, e2, o2 = lattice(kind, b2, J2, p0, p1, p2, tol)
        ok = ok and o2
        for i in range(cnt):
            if lat[i] == 1:
                mant[i] = m2[idx[i]]
                expo[i] = e2[idx[i]]
    return mant, expo, ok


@njit
def jacobi_forward(s, c, y, N, tol):
    """F(-n, n+s; c; y) for n = 0..N by the upward recurrence (scaled)."""
    mant = np.empty(N + 1, dtype=np.complex128)
    expo = np.zeros(N + 1, dtype=np.int64)
    mant[0] = 1.0
    if N == 0:
        return mant, expo, True
    mant[1] = 1.0 - (1.0 + s) * y / c
    fm = mant[0]
    fc = mant[1]
    e = 0
    ok = True
    for j in range(1, N):
        mu = j + 0.5 * s
        fn, lead = _step(2, mu, fm, fc, s, c, y)
        if abs(lead) < 1e-8 * (j + 1.0) ** 3:
            sc = SCALE_DN ** e if e > 0 else SCALE_UP ** (-e)
            fn = hyp2f1_poly(j + 1, j + 1 + s, c, y) * sc
        fm = fc
        fc = fn
        a = abs(fc)
        if a > SCALE_UP:
            fm *= SCALE_DN
            fc *= SCALE_DN
            e += 1
        elif a < SCALE_DN and a != 0.0:
            fm *= SCALE_UP
            fc *= SCALE_UP
            e -= 1
        mant[j + 1] = fc
        expo[j + 1] = e
    return mant, expo, ok


# ---------------------------------------------------------------------------
# continued fractions and recurrences


@njit
def lentz(a, b, tol, tiny):
    """Modified Lentz evaluation of b[0] + a[1]/(b[1] + a[2]/(b[2] + ...)).

    Returns (value, converged, depth). ``a[0]`` is ignored.
    """
    f = b[0]
    if f == 0:
        f = tiny
    C = f
    D = 0.0 + 0.0j
    n = len(b)
    for k in range(1, n):
        if a[k] == 0:
            return (f if b[0] != 0 else f - tiny), True, k
        D = b[k] + a[k] * D
        if D == 0:
            D = tiny
        C = b[k] + a[k] / C
        if C == 0:
            C = tiny
        D = 1.0 / D
        delta = C * D
        f = f * delta
        if abs(delta - 1.0) < tol:
            return (f if b[0] != 0 else f - tiny), True, k
    return (f if b[0] != 0 else f - tiny), False, n - 1


@njit
def backward_ratios(alpha, beta, gamma, tiny):
    """r[i] = -gamma[i] / (beta[i] + alpha[i] r[i+1]) with r[N] = 0.

    Arrays are indexed along the direction of recursion; the returned ratios
    are b_i / b_{i-1} in that direction.
    """
    N = len(beta)
    r = np.empty(N, dtype=np.complex128)
    nxt = 0.0 + 0.0j
    for i in range(N - 1, -1, -1):
        d = beta[i] + alpha[i] * nxt
        if d == 0:
            d = tiny
        nxt = -gamma[i] / d
        r[i] = nxt
    return r


@njit
def scaled_products(r):
    """Running products of r in mantissa/exponent form, starting from 1."""
    N = len(r)
    mant = np.empty(N + 1, dtype=np.complex128)
    expo = np.zeros(N + 1, dtype=np.int64)
    v = 1.0 + 0.0j
    e = 0
    mant[0] = v
    for i in range(N):
        v = v * r[i]
        a = abs(v)
        if a > SCALE_UP:
            v *= SCALE_DN
            e += 1
        elif a < SCALE_DN and a != 0.0:
            v *= SCALE_UP
            e -= 1
        mant[i + 1] = v
        expo[i + 1] = e
    return mant, expo


@njit
def hill_determinant(sub, diag, sup):
    """Continuant of the tridiagonal matrix with rows divided by their diagonal."""
    N = len(diag)
    dm2 = 1.0 + 0.0j
    dm1 = 1.0 + 0.0j
    for k in range(N):
        if k == 0:
            d = 1.0 + 0.0j
        else:
            d = dm1 - (sup[k - 1] / diag[k - 1]) * (sub[k] / diag[k]) * dm2
        dm2 = dm1
        dm1 = d
    return dm1


@njit
def combine_terms(bm, be, fm, fe):
    """Elementwise b*f for two scaled sequences, returning plain complex values."""
    n = len(bm)
    out = np.empty(n, dtype=np.complex128)
    for i in range(n):
        v = bm[i] * fm[i]
        E = be[i] + fe[i]
        if v == 0:
            out[i] = 0.0
            continue
        lg = math.log2(abs(v)) + SCALE_BITS * E
        if lg < -1070.0:
            out[i] = 0.0
        elif lg > 1023.0:
            out[i] = complex(math.inf, 0.0)
        else:
            while E > 0:
                v *= SCALE_UP
                E -= 1
            while E < 0:
                v *= SCALE_DN
                E += 1
            out[i] = v
    return out
