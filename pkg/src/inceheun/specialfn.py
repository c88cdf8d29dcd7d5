"""Complex Gamma, Gauss F, Tricomi U (written Psi here) and modified Bessel K."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .errors import BranchError, InvalidParams, NoConvergence, PoleError, UndefinedF
from .options import TAU_ZERO, near_integer


@dataclass(frozen=True)
class FnEvalOptions:
    tol: float = 1e-12
    n_max: int = 10000
    branch: str = "principal"

    def __post_init__(self):
        if not (0.0 < self.tol < 1.0):
            raise InvalidParams("tol must lie in (0, 1)")
        if self.n_max < 8:
            raise InvalidParams("n_max must be at least 8")
        if self.branch != "principal":
            raise InvalidParams("only the principal branch convention is supported")


DEFAULT_FN = FnEvalOptions()


def _opts(opts):
    return DEFAULT_FN if opts is None else opts


def _c(x) -> complex:
    return complex(x)


def _nonpos_int(z: complex):
    n = near_integer(z.real) if abs(z.imag) <= TAU_ZERO else None
    if n is not None and n <= 0 and abs(z - n) <= TAU_ZERO * max(1, abs(n)):
        return -n
    return None


def gamma(z) -> complex:
    """Principal Gamma function; reflection for Re z < 1/2."""
    z = _c(z)
    if _nonpos_int(z) is not None:
        raise PoleError(f"Gamma has a pole at z = {z}")
    return complex(_k.gamma(z))


def lgamma(z) -> complex:
    """log Gamma(z), defined modulo 2*pi*i."""
    z = _c(z)
    if _nonpos_int(z) is not None:
        raise PoleError(f"Gamma has a pole at z = {z}")
    return complex(_k.lgamma(z))


def rgamma(z) -> complex:
    """1/Gamma(z); zero at the poles."""
    return complex(_k.rgamma(_c(z)))


def gauss_f(a, b, c, y, opts: FnEvalOptions | None = None) -> complex:
    """Gauss hypergeometric F(a, b; c; y) on the principal branch.

    The cut is y in (1, inf). Polynomial cases (a or b a non-positive integer)
    are summed exactly and have no cut.
    """
    o = _opts(opts)
    a, b, c, y = _c(a), _c(b), _c(c), _c(y)
    na, nb, nc = _nonpos_int(a), _nonpos_int(b), _nonpos_int(c)
    npoly = min([n for n in (na, nb) if n is not None], default=None)
    if nc is not None and (npoly is None or npoly > nc):
        raise UndefinedF(f"F undefined for c = {c}")
    if npoly is not None:
        other = b if npoly == na else a
        return complex(_k.hyp2f1_poly(npoly, other, c, y))
    if y == 1:
        if (c - a - b).real > 0:
            return complex(_k.gamma(c) * _k.rgamma(c - a) * _k.rgamma(c - b) * _k.gamma(c - a - b))
        raise BranchError("F diverges at y = 1")
    if y.real > 1 and abs(y.imag) <= TAU_ZERO * y.real:
        raise BranchError(f"y = {y} lies on the branch cut (1, inf)")
    v, ok = _k.hyp2f1(a, b, c, y, 0.1 * o.tol, o.n_max)
    if not ok or not cmath.isfinite(v):
        raise NoConvergence(f"F({a}, {b}; {c}; {y}) did not converge")
    return complex(v)


def _logarg(y: complex, arg):
    if y == 0:
        raise InvalidParams("argument must be non-zero")
    if arg is None:
        return cmath.log(y)
    arg = float(arg)
    if abs(arg) >= 1.5 * math.pi:
        raise BranchError("arg must lie in (-3pi/2, 3pi/2)")
    d = (cmath.phase(y) - arg) / (2 * math.pi)
    if abs(d - round(d)) > 1e-9:
        raise BranchError("arg is inconsistent with the supplied value")
    return complex(math.log(abs(y)), arg)


def psi_u(a, b, y, opts: FnEvalOptions | None = None, arg=None) -> complex:
    """Tricomi U(a, b; y), behaving like y^{-a} for large |y|.

    ``arg`` selects arg(y) in (-3pi/2, 3pi/2); the default is the principal
    value. Values off the principal sheet come from rotating the Laplace
    integration ray.
    """
    o = _opts(opts)
    a, b, y = _c(a), _c(b), _c(y)
    ly = _logarg(y, arg)
    v, ok = _k.hyperu_log(a, b, ly, 0.1 * o.tol)
    if not ok or not cmath.isfinite(v):
        raise NoConvergence(f"Psi({a}, {b}; {y}) did not converge")
    return complex(v)


def bessel_k(lam, xi, opts: FnEvalOptions | None = None, arg=None) -> complex:
    """Modified Bessel K_lam(xi) of complex order."""
    o = _opts(opts)
    lam, xi = _c(lam), _c(xi)
    lx = _logarg(xi, arg)
    if lam.real < 0:
        lam = -lam
    l2 = lx + math.log(2.0)
    u, ok = _k.hyperu_log(lam + 0.5, 2 * lam + 1, l2, 0.1 * o.tol)
    if not ok:
        raise NoConvergence(f"K_{lam}({xi}) did not converge")
    return complex(_k.SQRT_PI * cmath.exp(-cmath.exp(lx) + lam * l2) * u)


def confluence_sides(a_magnitude: float, c, x, opts: FnEvalOptions | None = None):
    """Both sides of Gamma(a+1-c) Psi(a, c; x/a) -> 2 x^{(1-c)/2} K_{c-1}(2 sqrt x)."""
    o = _opts(opts)
    a = complex(float(a_magnitude))
    c, x = _c(c), _c(x)
    if x == 0:
        raise InvalidParams("x must be non-zero")
    ly = cmath.log(x / a)
    # Gamma(a+1-c)/Gamma(a) folded into the quadrature normalization
    lg = _k.lgamma(a) - _k.lgamma(a + 1 - c)
    if a.real >= 0.5:
        left, ok = _k.hyperu_integral(a, c, ly, lg, 0.01 * o.tol)
    else:
        left, ok = psi_u(a, c, x / a, o) * gamma(a + 1 - c), True
    if not ok:
        raise NoConvergence("confluence integral did not converge")
    sx = cmath.sqrt(x)
    right = 2 * x ** ((1 - c) / 2) * bessel_k(c - 1, 2 * sx, o)
    return complex(left), complex(right)


def limit_identity_check(a_magnitude: float, c, x, opts: FnEvalOptions | None = None) -> float:
    """Relative gap between Gamma(a+1-c) Psi(a, c; x/a) and its a -> inf limit."""
    if a_magnitude < 100:
        raise InvalidParams("a_magnitude must be at least 100")
    left, right = confluence_sides(a_magnitude, c, x, opts)
    return abs(left - right) / abs(right)


# -- index sequences used by the series evaluators ---------------------------

def _check_seq(ok, what):
    if not ok:
        raise NoConvergence(f"{what} sequence did not converge")


def bessel_k_sequence(order0, step: int, nlo: int, nhi: int, xi, opts=None):
    """K_{order0 + step*n}(xi), n = nlo..nhi, as (mantissa, exponent) arrays."""
    o = _opts(opts)
    m, e, ok = _k.sym_sequence(0, _c(order0), float(step), nlo, nhi, _c(xi), 0j, 0j, 0.1 * o.tol)
    _check_seq(ok, "Bessel")
    return m, e


def whittaker_sequence(kappa, mu0, nlo: int, nhi: int, logy, opts=None):
    """y^{mu+1/2} U(mu - kappa + 1/2, 2mu + 1, y) for mu = mu0 + n."""
    o = _opts(opts)
    m, e, ok = _k.sym_sequence(1, _c(mu0), 1.0, nlo, nhi, _c(kappa), _c(logy), 0j, 0.1 * o.tol)
    _check_seq(ok, "Whittaker")
    return m, e


def jacobi_sequence(M0, s, c, nlo: int, nhi: int, y, opts=None):
    """F(-M, M + s; c; y) for M = M0 + n, n = nlo..nhi."""
    o = _opts(opts)
    M0, s = _c(M0), _c(s)
    m, e, ok = _k.sym_sequence(2, M0 + 0.5 * s, 1.0, nlo, nhi, s, _c(c), _c(y), 0.1 * o.tol)
    _check_seq(ok, "hypergeometric")
    return m, e


def jacobi_polynomials(s, c, N: int, y):
    """F(-n, n + s; c; y) for n = 0..N by the upward recurrence."""
    m, e, _ = _k.jacobi_forward(_c(s), _c(c), _c(y), N, 1e-16)
    return m, e


def unscale(mant, expo):
    """Plain complex values from a scaled sequence (may under/overflow)."""
    ones = np.ones(len(mant), dtype=np.complex128)
    zeros = np.zeros(len(mant), dtype=np.int64)
    return _k.combine_terms(ones, zeros, np.asarray(mant, np.complex128), np.asarray(expo, np.int64))
