"""Mathieu equation W'' + sigma^2 [a - 2q cos(2 sigma u)] W = 0 as the
Ince-GSWE with z0 = 1, B1 = -1/2, B2 = 1, z = cos^2(sigma u), a = 2q - 4 B3.

Eight series shapes are provided: the four truncated families (even/odd,
period pi/2pi at sigma = 1), the two nu-families, and Poole's solutions with
2 nu + 1 = l/m.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as _k
from . import recurrence as rec
from . import specialfn as sf
from .equations import InceGsweParams
from .errors import ForbiddenNu, InvalidParams, NoConvergence, OutsideDomain
from .options import DEFAULT, Tolerances

# family -> (recurrence id, parity, frequency offset, frequency step is 2)
FAMILIES = {
    "even-pi": ("Mathieu-1", "even", 0.0),
    "even-2pi": ("Mathieu-2", "even", 1.0),
    "odd-pi": ("Mathieu-3", "odd", 2.0),
    "odd-2pi": ("Mathieu-4", "odd", 1.0),
    "nu-even": (rec.MA_EVEN, "even", None),
    "nu-odd": (rec.MA_EVEN, "odd", None),
}
ALIASES = {"W1": "even-pi", "W2": "even-2pi", "W3": "odd-pi", "W4": "odd-2pi"}
PERIOD = {"even-pi": math.pi, "odd-pi": math.pi, "even-2pi": 2 * math.pi, "odd-2pi": 2 * math.pi}


def _family(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in FAMILIES:
        raise InvalidParams(f"unknown Mathieu family {name!r}")
    return name


def mathieu_params(q, a) -> InceGsweParams:
    q, a = complex(q), complex(a)
    return InceGsweParams(B1=-0.5, B2=1.0, B3=(2 * q - a) / 4, z0=1.0, q=q)


def a_of(params: InceGsweParams) -> complex:
    return rec.mathieu_a(params)


@dataclass(frozen=True)
class MathieuProblem:
    q: complex
    a: Optional[complex] = None
    sigma: complex = 1.0
    family: str = "even-pi"
    nu: Optional[complex] = None

    def __post_init__(self):
        object.__setattr__(self, "family", _family(self.family))
        object.__setattr__(self, "q", complex(self.q))
        object.__setattr__(self, "sigma", complex(self.sigma))
        if self.q == 0:
            raise InvalidParams("q must be non-zero")
        if self.sigma not in (1, 1j):
            raise InvalidParams("sigma must be 1 or i")
        if self.family.startswith("nu") and self.nu is None:
            raise InvalidParams("nu families need nu")

    @property
    def params(self) -> InceGsweParams:
        return mathieu_params(self.q, 0.0 if self.a is None else self.a)


@dataclass(frozen=True)
class MathieuRoot:
    a: complex
    residual: complex
    depth: int


def _problem(family: str, q, nu=None) -> rec.CharacteristicProblem:
    fid = FAMILIES[family][0]
    two = fid == rec.MA_EVEN
    return rec.CharacteristicProblem(fid, mathieu_params(q, 0.0), "B3", nu=complex(nu) if two else None)


def ladder(family: str, q, nu=None, count: int = 6, size: int = 40) -> list[complex]:
    """Characteristic values a ordered by continuation from the q = 0 ladder."""
    family = _family(family)
    prob = _problem(family, q, nu)
    b3 = rec.eigen_roots(prob, size)[:count]
    return [2 * complex(q) - 4 * complex(x) for x in b3]


def char_value_a(family: str, q, seed=None, index: int = 0, nu=None,
                 tol: Tolerances | None = None) -> MathieuRoot:
    """a on ``family`` with |f(a)| < tau_root. Without a seed the index-th
    eigenvalue of the truncated matrix (lowest first) starts the search."""
    tol = tol or DEFAULT
    family = _family(family)
    if family.startswith("nu"):
        if nu is None:
            raise InvalidParams("nu families need nu")
        nu = complex(nu)
        rec._check_nu(nu)
    q = complex(q)
    prob = _problem(family, q, nu)
    if seed is None:
        seed = ladder(family, q, nu, count=index + 1)[index]
    b3 = (2 * q - complex(seed)) / 4
    root = rec.solve_characteristic(prob, seed=b3, opts=tol)
    return MathieuRoot(2 * q - 4 * root.value, root.residual, root.depth)


@dataclass
class MathieuSolution:
    family: str
    q: complex
    a: complex
    sigma: complex
    nu: Optional[complex]
    provider: object
    sqrt_sign: int = 1
    tol: Tolerances = DEFAULT

    @property
    def one_sided(self) -> bool:
        return self.provider.family.one_sided

    @property
    def parity(self) -> str:
        return FAMILIES[self.family][1]

    @property
    def period(self) -> Optional[float]:
        return PERIOD.get(self.family)

    def frequencies(self, ns: np.ndarray) -> np.ndarray:
        off = FAMILIES[self.family][2]
        if off is None:
            off = 2 * self.nu + 1
        return 2 * ns + off

    def __call__(self, u, side: str = "trig") -> complex:
        return eval_mathieu(self, u, side)[0]


def mathieu_solution(family: str, q, a=None, sigma=1.0, nu=None, index: int = 0, sqrt_sign: int = 1,
                     tol: Tolerances | None = None) -> MathieuSolution:
    from .solutions import WindowProvider
    tol = tol or DEFAULT
    family = _family(family)
    q = complex(q)
    if a is None:
        a = char_value_a(family, q, index=index, nu=nu, tol=tol).a
    else:
        a = complex(a)
        prob = _problem(family, q, nu)
        if abs(prob((2 * q - a) / 4)) >= tol.root:
            a = char_value_a(family, q, seed=a, nu=nu, tol=tol).a
    fid = FAMILIES[family][0]
    two = fid == rec.MA_EVEN
    fam = rec.RecurrenceFamily(fid, mathieu_params(q, a), complex(nu) if two else None)
    return MathieuSolution(family, q, a, complex(sigma), complex(nu) if two else None,
                           WindowProvider(fam, tol.n_max), sqrt_sign, tol)


def _bessel_terms(sol: MathieuSolution, xi: complex, lo: int, hi: int):
    f0 = sol.frequencies(np.array([lo]))[0]
    m, e = sf.bessel_k_sequence(f0, 2, 0, hi - lo, xi)
    return np.asarray(m, np.complex128), np.asarray(e, np.int64)


def eval_mathieu(sol: MathieuSolution, u, side: str = "trig"):
    """(value, tail) of the trig series (side='trig') or the modified-Bessel
    series (side='bessel'; needs |cos(sigma u)| > 1)."""
    u = complex(u)
    su = sol.sigma * u
    if side not in ("trig", "bessel"):
        raise InvalidParams("side must be 'trig' or 'bessel'")
    c = cmath.cos(su)
    if side == "bessel":
        if abs(c) <= 1.0:
            raise OutsideDomain("Bessel-side Mathieu series needs |cos(sigma u)| > 1")
        xi = sol.sqrt_sign * 2j * cmath.sqrt(sol.q) * c
        if xi.real < 0 and abs(xi.imag) <= 1e-14 * abs(xi.real):
            raise OutsideDomain("Bessel argument lies on its cut")
    N = 16
    while True:
        win = sol.provider.get(N)
        lo = 0 if sol.one_sided else -N
        ns = np.arange(lo, N + 1)
        bm, be = win.slice(lo, N)
        fr = sol.frequencies(ns).astype(np.complex128)
        if side == "trig":
            with np.errstate(over="ignore", invalid="ignore"):
                g = np.cos(fr * su) if sol.parity == "even" else np.sin(fr * su)
            t = _k.combine_terms(bm, be, g.astype(np.complex128), np.zeros(len(ns), np.int64))
        else:
            km, ke = _bessel_terms(sol, xi, lo, N)
            if sol.parity == "odd":
                km = km * fr
            t = _k.combine_terms(bm, be, km, ke)
        if not np.all(np.isfinite(t)):
            raise NoConvergence(f"Mathieu series overflows at u = {u}")
        order = np.argsort(np.abs(ns) * 2 + (ns < 0), kind="stable")
        S = complex(np.cumsum(t[order])[-1])
        edge = np.abs(t[-3:]).max()
        if not sol.one_sided:
            edge = max(edge, np.abs(t[:3]).max())
        tail = edge / abs(S) if S != 0 else 0.0
        if tail < sol.tol.tail or 2 * N > sol.tol.n_max:
            break
        N *= 2
    if side == "bessel" and sol.parity == "odd":
        S *= cmath.tan(su)
    return S, float(tail)


def odd_coefficient_map_residual(q, a, nu, n_max: int = 40) -> float:
    """Check that c_n = b_n / (2n + 2nu + 1), with b_n the minimal solution of
    the odd-nu recurrence, satisfies the even-nu recurrence."""
    nu = complex(nu)
    p = mathieu_params(q, a)
    odd = rec.minimal_coefficients(rec.RecurrenceFamily(rec.MA_ODD, p, nu), n_max)
    ns = odd.indices
    cn = odd.values / (2 * ns + 2 * nu + 1)
    al, be, ga = rec.RecurrenceFamily(rec.MA_EVEN, p, nu).arrays(ns)
    r = al[1:-1] * cn[2:] + be[1:-1] * cn[1:-1] + ga[1:-1] * cn[:-2]
    scale = np.max(np.abs(be * cn))
    return float(np.max(np.abs(r)) / scale)


def lindemann_gap(sol: MathieuSolution, u) -> float:
    """|U(cos^2 u) - W(u)| / |W(u)| for the even nu-family at sigma = 1, where U
    is the Ince-GSWE pair-1 zero-side series (same coefficients)."""
    from .solutions import build_solution
    if sol.family != "nu-even" or sol.sigma != 1:
        raise InvalidParams("Lindemann check applies to the even nu-family at sigma = 1")
    u = complex(u)
    p = mathieu_params(sol.q, sol.a)
    ig = build_solution(rec.IG_NU1, "zero", p, nu=sol.nu, tol=sol.tol)
    if abs(ig.nu - sol.nu) > 1e-8:
        raise NoConvergence("Ince-GSWE root moved away from the Mathieu nu")
    w = sol(u)
    return abs(ig(cmath.cos(u) ** 2) - w) / abs(w)


@dataclass
class PooleSolution:
    l: int
    m: int
    base: MathieuSolution

    @property
    def a(self) -> complex:
        return self.base.a

    @property
    def nu(self) -> complex:
        return self.base.nu

    @property
    def period(self) -> float:
        return 2 * math.pi * self.m

    def _sum(self, kind, u):
        fam = "nu-odd" if kind == "sin" else "nu-even"
        s = MathieuSolution(fam, self.base.q, self.base.a, 1.0, self.base.nu, self.base.provider,
                            tol=self.base.tol)
        return eval_mathieu(s, u)[0]

    def cos_type(self, u) -> complex:
        return self._sum("cos", u)

    def sin_type(self, u) -> complex:
        return self._sum("sin", u)

    def exp_type(self, u) -> complex:
        win = self.base.provider.get(64)
        ns = win.indices
        fr = 2 * ns + self.l / self.m
        return complex(np.sum(win.values * np.exp(1j * fr * complex(u))))

    def __call__(self, u) -> complex:
        return self.exp_type(u)


def poole_solution(l: int, m: int, q, seed_a=None, index: int = 0,
                   tol: Tolerances | None = None) -> PooleSolution:
    """Two-sided period-2 pi m solutions with 2 nu + 1 = l/m."""
    if not (isinstance(l, (int, np.integer)) and isinstance(m, (int, np.integer))):
        raise InvalidParams("l and m must be integers")
    if not (0 < l < m and m >= 2 and math.gcd(l, m) == 1):
        raise InvalidParams("need coprime 0 < l < m with m >= 2")
    nu = (l / m - 1) / 2
    try:
        rec._check_nu(complex(nu))
    except ForbiddenNu as e:  # excluded by the integer conditions above
        raise AssertionError(str(e))
    base = mathieu_solution("nu-even", q, a=seed_a, sigma=1.0, nu=nu, index=index, tol=tol)
    return PooleSolution(int(l), int(m), base)
