"""Three-term recurrences, their characteristic equations and minimal solutions.

Every family is a recurrence

    alpha_n b_{n+1} + beta_n b_n + gamma_n b_{n-1} = 0

in which each coefficient is a sum of rational terms built from factors that
are linear in n. Keeping that structure lets removable 0/0 factors cancel
exactly, as in the head coefficient alpha_{-1} of the truncated families.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels as _k
from .equations import InceDcheParams, InceGsweParams, DcheParams
from .errors import (ForbiddenNu, InadmissibleIndex, InvalidParams, NoConvergence,
                     NoRoot)
from .options import DEFAULT, DELTA_NU, TAU_ZERO, Tolerances


# -- rational coefficient algebra -------------------------------------------

@dataclass(frozen=True)
class Lin:
    """The factor s*n + o."""
    s: complex
    o: complex

    def at(self, n):
        return self.s * n + self.o


def _tiny(v, ref) -> bool:
    return abs(v) <= TAU_ZERO * max(1.0, ref)


@dataclass(frozen=True)
class Term:
    consts: tuple = ()
    num: tuple = ()
    den: tuple = ()

    def is_null(self) -> bool:
        return any(_tiny(c, 0.0) for c in self.consts)

    def const(self) -> complex:
        p = 1 + 0j
        for c in self.consts:
            p *= c
        return p

    def at(self, n: int) -> complex:
        if self.is_null():
            return 0j
        val = self.const()
        zeros_num = []
        for f in self.num:
            v = f.at(n)
            if _tiny(v, abs(f.s * n) + abs(f.o)):
                zeros_num.append(f)
            else:
                val *= v
        for f in self.den:
            v = f.at(n)
            if _tiny(v, abs(f.s * n) + abs(f.o)):
                # removable only against a vanishing numerator factor
                match = next((g for g in zeros_num if g.s != 0), None)
                if match is None or f.s == 0:
                    raise InadmissibleIndex(f"vanishing denominator at n = {n}")
                zeros_num.remove(match)
                val *= match.s / f.s
            else:
                val /= v
        if zeros_num:
            return 0j
        return val

    def vec(self, ns: np.ndarray) -> np.ndarray:
        if self.is_null():
            return np.zeros(len(ns), dtype=np.complex128)
        out = np.full(len(ns), self.const(), dtype=np.complex128)
        bad = np.zeros(len(ns), dtype=bool)
        for f in self.num:
            v = f.s * ns + f.o
            z = np.abs(v) <= TAU_ZERO * np.maximum(1.0, np.abs(f.s * ns) + abs(f.o))
            v = np.where(z, 0.0, v)
            out *= v
        for f in self.den:
            v = f.s * ns + f.o
            z = np.abs(v) <= TAU_ZERO * np.maximum(1.0, np.abs(f.s * ns) + abs(f.o))
            bad |= z
            out /= np.where(z, 1.0, v)
        if bad.any():
            for i in np.nonzero(bad)[0]:
                out[i] = self.at(int(ns[i]))
        return out


def _sum_at(terms, n):
    return sum((t.at(n) for t in terms), 0j)


def _sum_vec(terms, ns):
    out = np.zeros(len(ns), dtype=np.complex128)
    for t in terms:
        out += t.vec(ns)
    return out


def T(*consts, num=(), den=()):
    return Term(tuple(complex(c) for c in consts), tuple(num), tuple(den))


def M(off):
    """Factor n + off."""
    return Lin(1.0, complex(off))


# -- family definitions -----------------------------------------------------

IG_NU1, IG_NU2 = "InceGswe-nu-1", "InceGswe-nu-2"
IG_T = ("InceGswe-T1", "InceGswe-T2", "InceGswe-T3", "InceGswe-T4")
ID_NU1, ID_NU2 = "InceDche-nu-1", "InceDche-nu-2"
ID_T = ("InceDche-T1", "InceDche-T2")
DC_B2 = "Dche-B2eq2"
MA_EVEN, MA_ODD = "Mathieu-even-nu", "Mathieu-odd-nu"
MA_T = ("Mathieu-1", "Mathieu-2", "Mathieu-3", "Mathieu-4")

ALL_FAMILIES = (IG_NU1, IG_NU2) + IG_T + (ID_NU1, ID_NU2) + ID_T + (DC_B2, MA_EVEN, MA_ODD) + MA_T


def _ig_terms(p, nu, pair):
    h = p.B2 / 2
    r = p.B1 / p.z0
    qz = p.q * p.z0
    beta = [T(4 * p.B3 - 2 * qz),
            T(4, num=(M(nu + 1 - h), M(nu + h))),
            T(-2 * qz, h - 1, h + r, den=(M(nu), M(nu + 1)))]
    if pair == 1:
        alpha = [T(qz, num=(M(nu + 2 - h), M(nu + 1 - h - r)), den=(M(nu + 1), M(nu + 1.5)))]
        gamma = [T(qz, num=(M(nu + h - 1), M(nu + h + r)), den=(M(nu - 0.5), M(nu)))]
    else:
        alpha = [T(qz, num=(M(nu + h), M(nu + 1 + h + r)), den=(M(nu + 1), M(nu + 1.5)))]
        gamma = [T(qz, num=(M(nu + 1 - h), M(nu - h - r)), den=(M(nu - 0.5), M(nu)))]
    return alpha, beta, gamma


def _id_terms(p, nu, pair):
    h = p.B2 / 2
    qb = p.q * p.B1
    beta = [T(4 * p.B3),
            T(4, num=(M(nu + 1 - h), M(nu + h))),
            T(-qb, p.B2 - 2, den=(M(nu), M(nu + 1)))]
    if pair == 1:
        alpha = [T(-qb, num=(M(nu + 2 - h),), den=(M(nu + 1), M(nu + 1.5)))]
        gamma = [T(qb, num=(M(nu + h - 1),), den=(M(nu - 0.5), M(nu)))]
    else:
        alpha = [T(qb, num=(M(nu + h),), den=(M(nu + 1), M(nu + 1.5)))]
        gamma = [T(-qb, num=(M(nu + 1 - h),), den=(M(nu - 0.5), M(nu)))]
    return alpha, beta, gamma


def _dc_terms(p, nu):
    c = 1j * p.omega * p.B1
    ie = 1j * p.eta
    alpha = [T(c / 2, num=(M(nu + 1 - ie),), den=(M(nu + 1.5),))]
    beta = [T(p.B3), T(1, num=(M(nu), M(nu + 1)))]
    gamma = [T(c / 2, num=(M(nu + ie),), den=(M(nu - 0.5),))]
    return alpha, beta, gamma


def mathieu_a(p) -> complex:
    return 2 * p.q - 4 * p.B3


def _ma_terms(p, nu, fid):
    q = p.q
    a = mathieu_a(p)
    if fid == MA_EVEN:
        return [T(q)], [T(4, num=(M(nu + 0.5), M(nu + 0.5))), T(-a)], [T(q)]
    if fid == MA_ODD:
        return ([T(q, num=(M(nu + 0.5),), den=(M(nu + 1.5),))],
                [T(4, num=(M(nu + 0.5), M(nu + 0.5))), T(-a)],
                [T(q, num=(M(nu + 0.5),), den=(M(nu - 0.5),))])
    off = {"Mathieu-1": 0.0, "Mathieu-2": 0.5, "Mathieu-3": 1.0, "Mathieu-4": 0.5}[fid]
    return [T(q)], [T(4, num=(M(off), M(off))), T(-a)], [T(q)]


@dataclass(frozen=True)
class FamilyInfo:
    id: str
    equation: str
    one_sided: bool
    unknown_scale: complex        # d beta_n / d B3
    base: str = ""                # nu-family a truncated family is cut from


_INFO = {
    IG_NU1: FamilyInfo(IG_NU1, "ince_gswe", False, 4),
    IG_NU2: FamilyInfo(IG_NU2, "ince_gswe", False, 4),
    "InceGswe-T1": FamilyInfo("InceGswe-T1", "ince_gswe", True, 4, IG_NU1),
    "InceGswe-T2": FamilyInfo("InceGswe-T2", "ince_gswe", True, 4, IG_NU1),
    "InceGswe-T3": FamilyInfo("InceGswe-T3", "ince_gswe", True, 4, IG_NU2),
    "InceGswe-T4": FamilyInfo("InceGswe-T4", "ince_gswe", True, 4, IG_NU2),
    ID_NU1: FamilyInfo(ID_NU1, "ince_dche", False, 4),
    ID_NU2: FamilyInfo(ID_NU2, "ince_dche", False, 4),
    "InceDche-T1": FamilyInfo("InceDche-T1", "ince_dche", True, 4, ID_NU1),
    "InceDche-T2": FamilyInfo("InceDche-T2", "ince_dche", True, 4, ID_NU2),
    DC_B2: FamilyInfo(DC_B2, "dche", False, 1),
    MA_EVEN: FamilyInfo(MA_EVEN, "ince_gswe", False, 4),
    MA_ODD: FamilyInfo(MA_ODD, "ince_gswe", False, 4),
    "Mathieu-1": FamilyInfo("Mathieu-1", "ince_gswe", True, 4),
    "Mathieu-2": FamilyInfo("Mathieu-2", "ince_gswe", True, 4),
    "Mathieu-3": FamilyInfo("Mathieu-3", "ince_gswe", True, 4),
    "Mathieu-4": FamilyInfo("Mathieu-4", "ince_gswe", True, 4),
}

# simplified Mathieu heads: (nu of the trig index, alpha_{-1} / q, form)
_MA_HEAD = {"Mathieu-1": (-0.5, 1.0, "F2"), "Mathieu-2": (0.0, 1.0, "F3"),
            "Mathieu-3": (0.5, 0.0, "F1"), "Mathieu-4": (0.0, -1.0, "F3")}


def family_info(fid: str) -> FamilyInfo:
    try:
        return _INFO[fid]
    except KeyError:
        raise InvalidParams(f"unknown family {fid!r}") from None


def truncated_nu(fid: str, params) -> complex:
    """The fixed value of nu a truncated family is cut at."""
    if fid in _MA_HEAD:
        return complex(_MA_HEAD[fid][0])
    h = params.B2 / 2
    if fid == "InceGswe-T1" or fid == "InceDche-T1":
        return h - 1
    if fid == "InceGswe-T2":
        return h + params.B1 / params.z0
    if fid == "InceGswe-T3" or fid == "InceDche-T2":
        return 1 - h
    if fid == "InceGswe-T4":
        return -h - params.B1 / params.z0
    raise InvalidParams(f"{fid} is not a truncated family")


def _check_params(info: FamilyInfo, params):
    want = {"ince_gswe": InceGsweParams, "ince_dche": InceDcheParams, "dche": DcheParams}[info.equation]
    if not isinstance(params, want):
        raise InvalidParams(f"{info.id} needs {want.__name__}")
    if info.id == DC_B2 and not _tiny(params.B2 - 2, 2.0):
        raise InvalidParams("Dche-B2eq2 needs B2 = 2")


class RecurrenceFamily:
    """Coefficient provider for one solution pair at fixed parameters and nu."""

    def __init__(self, fid: str, params, nu=None):
        self.info = family_info(fid)
        _check_params(self.info, params)
        self.id = fid
        self.params = params
        if self.info.one_sided:
            if nu is not None and abs(complex(nu) - truncated_nu(fid, params)) > 1e-12 * (1 + abs(nu)):
                raise InvalidParams(f"{fid} fixes nu = {truncated_nu(fid, params)}")
            nu = truncated_nu(fid, params)
        elif nu is None:
            raise InvalidParams(f"{fid} needs a value of nu")
        self.nu = complex(nu)
        self._terms = self._build()

    @property
    def one_sided(self) -> bool:
        return self.info.one_sided

    def _build(self):
        fid, p, nu = self.id, self.params, self.nu
        base = self.info.base or fid
        if base in (IG_NU1, IG_NU2):
            return _ig_terms(p, nu, 1 if base == IG_NU1 else 2)
        if base in (ID_NU1, ID_NU2):
            return _id_terms(p, nu, 1 if base == ID_NU1 else 2)
        if base == DC_B2:
            return _dc_terms(p, nu)
        return _ma_terms(p, nu, base)

    def with_nu(self, nu) -> "RecurrenceFamily":
        return RecurrenceFamily(self.id, self.params, nu)

    def with_params(self, params) -> "RecurrenceFamily":
        return RecurrenceFamily(self.id, params, None if self.one_sided else self.nu)

    def coefficients(self, n: int):
        a, b, g = self._terms
        return _sum_at(a, n), _sum_at(b, n), _sum_at(g, n)

    def arrays(self, ns):
        ns = np.asarray(ns, dtype=np.float64)
        a, b, g = self._terms
        return _sum_vec(a, ns), _sum_vec(b, ns), _sum_vec(g, ns)

    def alpha_minus_one(self) -> complex:
        """alpha_{-1} as the removable limit of the alpha formula."""
        if self.id in _MA_HEAD:
            return _MA_HEAD[self.id][1] * self.params.q
        return _sum_at(self._terms[0], -1)

    def basis_order(self, n) -> complex:
        """Index 2n + 2nu + 1 labelling the basis function of term n."""
        return 2 * n + 2 * self.nu + 1


def family_coefficients(family, n: int, nu=None, params=None):
    """(alpha_n, beta_n, gamma_n) for a family id or RecurrenceFamily."""
    if isinstance(family, str):
        family = RecurrenceFamily(family, params, nu)
    elif nu is not None and not family.one_sided:
        family = family.with_nu(nu)
    return family.coefficients(int(n))


# -- truncation forms -------------------------------------------------------

@dataclass(frozen=True)
class TruncationForm:
    form: str              # F1, F2 or F3
    alpha_m1: complex = 0j

    def __str__(self):
        return self.form


def detect_truncation_form(family, params=None) -> TruncationForm:
    """F1 unless alpha_{-1} survives, then F2/F3 by which index it folds onto."""
    if isinstance(family, str):
        family = RecurrenceFamily(family, params)
    if not family.one_sided:
        raise InvalidParams(f"{family.id} is not a truncated family")
    if family.id in _MA_HEAD:
        _, c, form = _MA_HEAD[family.id]
        return TruncationForm(form, c * family.params.q)
    try:
        am1 = family.alpha_minus_one()
    except InadmissibleIndex:
        am1 = 0j
    try:
        scale = abs(family.coefficients(0)[0]) + 1.0
    except InadmissibleIndex:
        # excluded parameters still get a form; the builders reject them
        scale = 1.0
    if _tiny(am1, scale):
        return TruncationForm("F1", 0j)
    lam_m1 = family.basis_order(-1)
    if _tiny(lam_m1 + family.basis_order(1), 1.0):
        return TruncationForm("F2", am1)
    if _tiny(lam_m1 + family.basis_order(0), 1.0):
        return TruncationForm("F3", am1)
    return TruncationForm("F1", 0j)


# -- continued fractions ----------------------------------------------------

def continued_fraction(terms: Sequence, tol: float = 1e-15, k_max: int = 100000) -> complex:
    """b0 + a1/(b1 - a2/(b2 - a3/(b3 - ...))) from pairs (a_k, b_k), k = 0, 1, ...

    ``a_0`` is ignored. A zero a_k terminates the fraction.
    """
    if len(terms) == 0:
        return 0j
    a = np.array([complex(t[0]) for t in terms], dtype=np.complex128)
    b = np.array([complex(t[1]) for t in terms], dtype=np.complex128)
    a[2:] = -a[2:]
    a = a[: k_max + 1]
    b = b[: k_max + 1]
    val, ok, depth = _k.lentz(a, b, tol, _k.TINY)
    if not ok:
        # finite input: the last convergent is the value
        if len(terms) <= k_max:
            return complex(val)
        raise NoConvergence("continued fraction did not converge")
    return complex(val)


def _cf_tail(first_num, nums, dens, tol):
    """first_num/(dens[0] - nums[0]/(dens[1] - ...)) via Lentz; nums already
    hold alpha*gamma products for the deeper levels."""
    K = len(dens)
    a = np.empty(K + 1, dtype=np.complex128)
    b = np.empty(K + 1, dtype=np.complex128)
    a[0] = 0
    b[0] = 0
    a[1] = first_num
    b[1:] = dens
    a[2:] = -nums[: K - 1]
    return _k.lentz(a, b, tol, _k.TINY)


@dataclass
class CharacteristicProblem:
    """f(x) = 0 for the unknown nu ("nu") or the free parameter B3 ("B3")."""

    family_id: str
    params: object
    unknown: str = "nu"
    nu: Optional[complex] = None
    tol: Tolerances = field(default_factory=lambda: DEFAULT)

    def __post_init__(self):
        info = family_info(self.family_id)
        if self.unknown not in ("nu", "B3"):
            raise InvalidParams("unknown must be 'nu' or 'B3'")
        if info.one_sided and self.unknown == "nu":
            raise InvalidParams(f"{self.family_id} has no free nu; solve for B3")
        if not info.one_sided and self.unknown == "B3" and self.nu is None:
            raise InvalidParams("fixed nu needed when solving for B3")
        _check_params(info, self.params)

    @property
    def info(self) -> FamilyInfo:
        return family_info(self.family_id)

    def family_at(self, x) -> RecurrenceFamily:
        if self.unknown == "nu":
            return RecurrenceFamily(self.family_id, self.params, x)
        p = self.params.replace(B3=complex(x))
        return RecurrenceFamily(self.family_id, p, self.nu)

    def __call__(self, x):
        return characteristic_residual(self, x)

    def detail(self, x):
        return _residual_detail(self.family_at(x), self.tol)


def _check_nu(nu: complex):
    k2 = round(2 * nu.real)
    if abs(nu - k2 / 2) <= DELTA_NU:
        raise ForbiddenNu(f"nu = {nu} is an integer or half-integer")


def _residual_detail(fam: RecurrenceFamily, tol: Tolerances):
    """(f, depth) for the characteristic equation of ``fam``."""
    if not fam.one_sided:
        _check_nu(fam.nu)
    ctol = 1e-16
    K = 32
    while True:
        ns = np.arange(-K - 1, K + 2)
        al, be, ga = fam.arrays(ns)
        c = K + 1  # index of n = 0
        if fam.one_sided:
            form = detect_truncation_form(fam)
            g1 = ga[c + 1] + (form.alpha_m1 if form.form == "F2" else 0)
            head = be[c] + (form.alpha_m1 if form.form == "F3" else 0)
            nums = al[c + 1:c + K] * ga[c + 2:c + K + 1]
            vp, okp, dp = _cf_tail(al[c] * g1, nums, be[c + 1:c + K + 1], ctol)
            f, ok, depth = head - vp, okp, dp
        else:
            nums = al[c + 1:c + K] * ga[c + 2:c + K + 1]
            vp, okp, dp = _cf_tail(al[c] * ga[c + 1], nums, be[c + 1:c + K + 1], ctol)
            idx = np.arange(c - 1, c - K - 1, -1)
            numsm = ga[idx] * al[idx - 1]
            vm, okm, dm = _cf_tail(ga[c] * al[c - 1], numsm[: K - 1], be[idx], ctol)
            f, ok, depth = be[c] - vp - vm, okp and okm, max(dp, dm)
        if ok:
            if not cmath.isfinite(f):
                raise NoConvergence("characteristic function is not finite here")
            return complex(f), int(depth)
        if 2 * K > tol.n_max:
            raise NoConvergence("characteristic continued fraction did not converge")
        K *= 2


def characteristic_residual(problem: CharacteristicProblem, x) -> complex:
    return _residual_detail(problem.family_at(complex(x)), problem.tol)[0]


def canonical_nu(nu: complex) -> complex:
    """Shift nu by an integer into Re nu in (-1/2, 1/2]."""
    k = math.ceil(nu.real - 0.5)
    v = nu - k
    if v.real <= -0.5:
        v += 1
    return v


def _secant(f, x0, x1, tol, max_step, maxit=80):
    f0 = f(x0)
    f1 = f(x1)
    for _ in range(maxit):
        if f1 == f0:
            break
        step = f1 * (x1 - x0) / (f1 - f0)
        if abs(step) > max_step:
            step *= max_step / abs(step)
        x0, f0 = x1, f1
        x1 = x1 - step
        f1 = f(x1)
        if abs(f1) < 1e-3 * tol or (abs(f1) < tol and abs(step) < 1e-13 * max(1.0, abs(x1))):
            return x1, f1
    return x1, f1


@dataclass(frozen=True)
class Root:
    value: complex
    residual: complex
    depth: int


def _newton_gap(f, x, fx):
    h = 1e-7 * max(1.0, abs(x))
    d = (f(x + h) - f(x - h)) / (2 * h)
    return abs(fx / d) if d != 0 else math.inf


def _polished(problem, x, f):
    """Root report; a couple of extra secant steps squeeze residual noise."""
    d = problem.detail(x)
    return Root(complex(x), d[0], d[1])


def monodromy_trace(params, radius: float) -> complex:
    """Trace of the monodromy matrix along |z| = radius, by ODE integration."""
    from scipy.integrate import solve_ivp
    from .equations import ode_terms

    def rhs(t, y):
        z = radius * cmath.exp(1j * t)
        P2, P1, P0 = ode_terms(params, z)
        return [1j * z * y[1], -1j * z * (P1 * y[1] + P0 * y[0]) / P2]

    tr = 0j
    for k in range(2):
        y0 = np.zeros(2, np.complex128)
        y0[k] = 1
        sol = solve_ivp(rhs, (0.0, 2 * math.pi), y0, method="DOP853", rtol=1e-13, atol=1e-15)
        if not sol.success:
            raise NoConvergence("monodromy integration failed")
        tr += sol.y[k, -1]
    return complex(tr)


def _loop_radius(fid, p) -> float:
    if fid == DC_B2:
        return math.sqrt(abs(p.B1) / abs(p.omega))
    r = (abs(p.B1) / math.sqrt(abs(p.q))) ** (2 / 3)
    if hasattr(p, "z0"):
        return max(2.0 * abs(p.z0), r)
    return r


def monodromy_nu(problem: CharacteristicProblem) -> list[complex]:
    """+-nu from the Floquet relation cos(2 pi nu) = tr(M) exp(i pi B2) / 2.

    Going once around every finite singular point multiplies the nu-series
    solutions by exp(2 pi i (nu + 1 - B2/2)) and exp(-2 pi i (nu + B2/2)).
    """
    p = problem.params
    c = monodromy_trace(p, _loop_radius(problem.family_id, p)) * cmath.exp(1j * math.pi * p.B2) / 2
    nu = cmath.acos(c) / (2 * math.pi)
    return [canonical_nu(nu), canonical_nu(-nu)]


def nu_seeds(problem: CharacteristicProblem, monodromy: bool = True) -> list[complex]:
    """Monodromy seeds followed by the small-q zeros of beta_0(nu)."""
    fid, p = problem.family_id, problem.params
    if fid in (IG_NU1, IG_NU2):
        w = (p.B2 / 2 - 0.5) ** 2 - p.B3 + p.q * p.z0 / 2
    elif fid in (ID_NU1, ID_NU2):
        w = (p.B2 / 2 - 0.5) ** 2 - p.B3
    elif fid == DC_B2:
        w = 0.25 - p.B3
    else:
        w = mathieu_a(p) / 4
    s = cmath.sqrt(w)
    out = []
    if monodromy:
        try:
            out = monodromy_nu(problem)
        except (NoConvergence, ValueError, ZeroDivisionError):
            out = []
    return out + [canonical_nu(-0.5 + s), canonical_nu(-0.5 - s)]


def _safe(f):
    def g(x):
        try:
            v = f(x)
        except (InadmissibleIndex, ForbiddenNu, NoConvergence, ZeroDivisionError, OverflowError):
            return complex(1e300)
        return v if cmath.isfinite(v) else complex(1e300)
    return g


def _scan_seeds(f, center_im: float, n_re=24, n_im=9, half=1.0):
    """Local minima of |f| on a grid over the canonical strip."""
    res = np.linspace(-0.5 + 1e-3, 0.5 - 1e-3, n_re)
    ims = center_im + np.linspace(-half, half, n_im)
    vals = np.empty((n_im, n_re))
    for i, y in enumerate(ims):
        for j, x in enumerate(res):
            vals[i, j] = abs(f(complex(x, y)))
    out = []
    for i in range(n_im):
        for j in range(n_re):
            v = vals[i, j]
            nb = vals[max(0, i - 1):i + 2, max(0, j - 1):j + 2]
            if v <= nb.min():
                out.append((v, complex(res[j], ims[i])))
    out.sort(key=lambda t: t[0])
    return [s for _, s in out[:6]]


def solve_characteristic(problem: CharacteristicProblem, seed=None, seeds=None,
                         opts: Tolerances | None = None, scan: bool = True) -> Root:
    """Root of the characteristic equation near the supplied seed(s)."""
    tol = opts or problem.tol
    cand = []
    if seed is not None:
        cand.append(complex(seed))
    if seeds:
        cand.extend(complex(s) for s in seeds)
    is_nu = problem.unknown == "nu"
    if not cand:
        cand = nu_seeds(problem) if is_nu else [complex(x) for x in eigen_roots(problem, 40)[:3]]
    f = _safe(problem)
    step = 0.25 if is_nu else max(1.0, 0.25 * abs(cand[0]))
    best = None

    def attempt(x0):
        x1 = x0 + 1e-4 * (1 + abs(x0)) * (1 + 0.5j)
        x, fx = _secant(f, x0, x1, 0.1 * tol.root, step)
        if is_nu:
            x = canonical_nu(x)
            fx = f(x)
        return x, fx

    for x0 in list(cand):
        x, fx = attempt(x0)
        if best is None or abs(fx) < abs(best[1]):
            best = (x, fx)
        if abs(fx) < tol.root:
            break
    if (best is None or abs(best[1]) >= tol.root) and is_nu and scan:
        for x0 in _scan_seeds(f, cand[0].imag):
            x, fx = attempt(x0)
            if abs(fx) < abs(best[1]):
                best = (x, fx)
            if abs(fx) < tol.root:
                break
    x, fx = best
    if abs(fx) >= tol.root and cmath.isfinite(fx) and _newton_gap(f, x, fx) < 1e-12 * max(1.0, abs(x)):
        # steep f: |f| sits at rounding level although x is pinned to machine precision
        fx = complex(0.0)
    if abs(fx) >= tol.root or not cmath.isfinite(fx):
        raise NoRoot(f"no root of the characteristic equation found (|f| = {abs(fx):.3g})")
    if is_nu:
        _check_nu(x)
    return _polished(problem, x, fx)


# -- eigen / determinant oracles ---------------------------------------------

def truncated_matrix(fam: RecurrenceFamily, size: int):
    """Tridiagonal matrix of a truncated recurrence (one-sided: n = 0..size-1,
    two-sided: n = -size..size). Row n holds gamma_n, beta_n, alpha_n."""
    if fam.one_sided:
        ns = np.arange(0, size)
    else:
        ns = np.arange(-size, size + 1)
    al, be, ga = fam.arrays(ns)
    if fam.one_sided:
        form = detect_truncation_form(fam)
        if form.form == "F2" and size > 1:
            ga = ga.copy()
            ga[1] += form.alpha_m1
        if form.form == "F3":
            be = be.copy()
            be[0] += form.alpha_m1
    N = len(ns)
    A = np.zeros((N, N), dtype=np.complex128)
    A[np.arange(N), np.arange(N)] = be
    A[np.arange(N - 1), np.arange(1, N)] = al[:-1]
    A[np.arange(1, N), np.arange(N - 1)] = ga[1:]
    return A


def eigen_roots(problem: CharacteristicProblem, size: int = 40) -> np.ndarray:
    """Free-parameter values making the truncated determinant vanish.

    beta_n is affine in B3 with slope ``unknown_scale``, so these are scaled
    eigenvalues of the matrix taken at B3 = 0.
    """
    if problem.unknown != "B3":
        raise InvalidParams("eigen_roots applies to free-parameter problems")
    fam = problem.family_at(0.0)
    A = truncated_matrix(fam, size)
    ev = np.linalg.eigvals(A)
    x = -ev / fam.info.unknown_scale
    # ladder order: increasing beta-shift, the q -> 0 labelling
    return x[np.argsort(ev.real)]


def hill_determinant(fam: RecurrenceFamily, size: int) -> complex:
    """Determinant of the truncated matrix with rows scaled by beta_n."""
    ns = np.arange(-size, size + 1)
    al, be, ga = fam.arrays(ns)
    return complex(_k.hill_determinant(ga, be, al))


def determinant_nu_root(problem: CharacteristicProblem, seed, size: int = 40) -> complex:
    """Zero of the scaled Hill determinant in nu near ``seed``."""
    if problem.unknown != "nu":
        raise InvalidParams("determinant_nu_root applies to nu problems")

    def D(x):
        return hill_determinant(RecurrenceFamily(problem.family_id, problem.params, x), size)

    f = _safe(D)
    x0 = complex(seed)
    x, fx = _secant(f, x0, x0 + 1e-4 * (1 + 0.5j), 1e-15, 0.1)
    if abs(fx) > 1e-9:
        raise NoRoot("determinant root not found")
    return canonical_nu(x)


# -- minimal solutions ------------------------------------------------------

@dataclass
class CoefficientWindow:
    """b_n for n_min <= n <= n_max with b_0 = 1, in scaled form."""

    family: RecurrenceFamily
    n_min: int
    n_max: int
    mant: np.ndarray
    expo: np.ndarray
    ratios_up: np.ndarray      # b_n / b_{n-1}, n = 1..n_max
    ratios_down: np.ndarray    # b_n / b_{n+1}, n = -1..n_min

    @property
    def values(self) -> np.ndarray:
        return _k.combine_terms(self.mant, self.expo, np.ones(len(self.mant), np.complex128),
                                np.zeros(len(self.mant), np.int64))

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    def value(self, n: int) -> complex:
        return complex(self.values[n - self.n_min])

    def slice(self, lo: int, hi: int):
        i, j = lo - self.n_min, hi - self.n_min + 1
        return self.mant[i:j], self.expo[i:j]

    def recurrence_residual(self) -> float:
        """max |alpha_n b_{n+1} + beta_n b_n + gamma_n b_{n-1}| / max |b| over
        interior rows, with the head rows of truncated forms included."""
        b = self.values
        ns = self.indices
        al, be, ga = self.family.arrays(ns)
        if self.family.one_sided:
            form = detect_truncation_form(self.family)
            if form.form == "F2" and len(ga) > 1:
                ga = ga.copy()
                ga[1] += form.alpha_m1
            if form.form == "F3":
                be = be.copy()
                be[0] += form.alpha_m1
            bm = np.concatenate([[0], b[:-1]])
            lo = 0
        else:
            bm = np.concatenate([[0], b[:-1]])
            lo = 1
        bp = np.concatenate([b[1:], [0]])
        r = al * bp + be * b + ga * bm
        scale = np.max(np.abs(b))
        rows = slice(lo, len(b) - 1)
        return float(np.max(np.abs(r[rows]) / scale))


def minimal_coefficients(family: RecurrenceFamily, n_max: int, n_min: Optional[int] = None,
                         pad: Optional[int] = None) -> CoefficientWindow:
    """Minimal solution by backward ratios started far beyond the window."""
    if n_max < 1:
        raise InvalidParams("n_max must be at least 1")
    if family.one_sided:
        n_min = 0
    elif n_min is None:
        n_min = -n_max
    if not family.one_sided:
        _check_nu(family.nu)
    pad = pad if pad is not None else max(24, n_max // 2)
    top = n_max + pad
    ns = np.arange(1, top + 1)
    al, be, ga = family.arrays(ns)
    if family.one_sided:
        form = detect_truncation_form(family)
        if form.form == "F2":
            ga = ga.copy()
            ga[0] += form.alpha_m1
    ru = _k.backward_ratios(al, be, ga, _k.TINY)[:n_max]
    mu, eu = _k.scaled_products(ru)
    if family.one_sided:
        rd = np.zeros(0, dtype=np.complex128)
        mant, expo = mu, eu
    else:
        bot = -n_min + pad
        nd = -np.arange(1, bot + 1)
        al2, be2, ga2 = family.arrays(nd)
        # along decreasing n the roles of alpha and gamma swap
        rd = _k.backward_ratios(ga2, be2, al2, _k.TINY)[: -n_min]
        md, ed = _k.scaled_products(rd)
        mant = np.concatenate([md[:0:-1], mu])
        expo = np.concatenate([ed[:0:-1], eu])
    if not (np.all(np.isfinite(mant.real)) and np.all(np.isfinite(mant.imag))):
        raise NoConvergence("coefficient window is not finite")
    return CoefficientWindow(family, n_min, n_max, mant, expo, ru, rd)


def tail_ratio_ok(window: CoefficientWindow, rel: float = 0.05) -> bool:
    return abs(window.ratios_up[-1] / window.ratios_up[-2]) < 1.0 + rel


def quasi_polynomial(family, nu=None, params=None, n_limit: int = 10000) -> Optional[int]:
    """Smallest N >= 1 with gamma_N = 0 for a one-sided family, else None."""
    if isinstance(family, str):
        family = RecurrenceFamily(family, params, nu)
    if not family.one_sided:
        raise InvalidParams(f"{family.id} is two-sided")
    ns = np.arange(1, n_limit + 1)
    al, be, ga = family.arrays(ns)
    if family.id not in _MA_HEAD:
        form = detect_truncation_form(family)
        if form.form == "F2":
            ga = ga.copy()
            ga[0] += form.alpha_m1
    scale = np.maximum(1.0, np.abs(al) + np.abs(be))
    zero = np.nonzero(np.abs(ga) <= TAU_ZERO * scale)[0]
    if len(zero) == 0:
        return None
    return int(ns[zero[0]])
