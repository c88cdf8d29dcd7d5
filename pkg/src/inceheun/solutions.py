"""Series solutions of the Ince-GSWE, Ince-DCHE and the B2 = 2 DCHE.

A solution is prefactor(z) * sum_n c_n f_n(z), where f_n is one of three
basis sequences and c_n = b_n (or (-1)^n b_n) comes from a minimal solution
of the family recurrence. Both members of a pair hold the same
:class:`WindowProvider`, so they read the very same coefficient array.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import _kernels as _k
from . import recurrence as rec
from . import specialfn as sf
from .equations import InceGsweParams, leaver_limit
from .errors import (ApplicabilityError, BasisBranchError, InvalidParams, NoConvergence, ValidationError,
                     OutsideDomain, SingularEvaluation)
from .options import DEFAULT, TAU_ZERO, Tolerances, near_integer

EPS = float(np.finfo(float).eps)

ZERO, INFINITY = "zero", "infinity"
FINITE, OUTSIDE_Z0, NONZERO = "finite-plane", "abs(z)>abs(z0)", "abs(z)>0"


def _on_cut(w: complex) -> bool:
    return w.real < 0 and abs(w.imag) <= 1e-14 * abs(w.real)


def _is_int(x: complex) -> bool:
    return abs(x.imag) <= TAU_ZERO and near_integer(x.real) is not None


@dataclass(frozen=True)
class Prefactor:
    """z^pz * (z - z0)^pzz0 * exp(ez * z + einv / z)."""
    pz: complex = 0j
    pzz0: complex = 0j
    z0: complex = 0j
    ez: complex = 0j
    einv: complex = 0j

    def log(self, z: complex) -> complex:
        v = self.ez * z + (self.einv / z if self.einv else 0)
        if self.pz:
            v += self.pz * cmath.log(z)
        if self.pzz0:
            v += self.pzz0 * cmath.log(z - self.z0)
        return v

    def __call__(self, z) -> complex:
        return cmath.exp(self.log(complex(z)))

    def check(self, z: complex):
        if self.pz and not _is_int(self.pz) and _on_cut(z):
            raise BasisBranchError(f"z = {z} lies on the cut of z^{self.pz}")
        if self.pzz0 and not _is_int(self.pzz0) and _on_cut(z - self.z0):
            raise BasisBranchError(f"z = {z} lies on the cut of (z - z0)^{self.pzz0}")


@dataclass(frozen=True)
class GaussBasis:
    """F(-M, M + s; c; 1 - z/z0), M = M0 + n."""
    M0: complex
    s: complex
    c: complex
    z0: complex
    kind: str = "gauss"

    def argument(self, z):
        return 1 - z / self.z0

    def check(self, z):
        if not _is_int(self.M0) and _on_cut(z / self.z0):
            raise BasisBranchError(f"z/z0 = {z / self.z0} lies on the hypergeometric cut")

    def sequence(self, lo, hi, z, tol):
        y = self.argument(z)
        if _is_int(self.M0) and lo + round(self.M0.real) >= 0:
            m0 = int(round(self.M0.real))
            m, e = sf.jacobi_polynomials(self.s, self.c, hi + m0, y)
            return m[lo + m0:], e[lo + m0:]
        return sf.jacobi_sequence(self.M0, self.s, self.c, lo, hi, y, tol)

    def describe(self):
        return {"function": "gauss_f", "a": "-(M0+n)", "b": "M0+n+s", "M0": self.M0, "s": self.s,
                "c": self.c, "argument": "1-z/z0"}


@dataclass(frozen=True)
class BesselBasis:
    """K_{order0 + 2n}(sign * 2i sqrt(q z))."""
    order0: complex
    q: complex
    sign: int = 1
    kind: str = "bessel_k"

    def argument(self, z):
        return self.sign * 2j * cmath.sqrt(self.q * z)

    def check(self, z):
        if _on_cut(self.q * z):
            raise BasisBranchError(f"q z = {self.q * z} lies on the square-root cut")

    def sequence(self, lo, hi, z, tol):
        return sf.bessel_k_sequence(self.order0 + 2 * lo, 2, 0, hi - lo, self.argument(z), tol)

    def describe(self):
        return {"function": "bessel_k", "order": "order0+2n", "order0": self.order0,
                "argument": f"{'+' if self.sign > 0 else '-'}2i*sqrt(q*z)", "q": self.q}


@dataclass(frozen=True)
class TricomiBasis:
    """y^{p0 + n} Psi(a0 + n, b0 + 2n; y) with y = cy/z (inverse) or cy*z.

    arg(y) is taken in (cut - 2pi, cut]; cut = pi is the principal branch and
    cut = +-pi/2 rotates it so that the negative real axis becomes usable.
    """
    a0: complex
    b0: complex
    p0: complex
    cy: complex
    inverse: bool
    kind: str = "psi_u"
    cut: float = math.pi

    def argument(self, z):
        return self.cy / z if self.inverse else self.cy * z

    def log_argument(self, z):
        y = self.argument(z)
        th = cmath.phase(y)
        if th > self.cut:
            th -= 2 * math.pi
        elif th <= self.cut - 2 * math.pi:
            th += 2 * math.pi
        return complex(math.log(abs(y)), th)

    def check(self, z):
        y = self.argument(z)
        d = (cmath.phase(y) - self.cut) % (2 * math.pi)
        if y == 0 or min(d, 2 * math.pi - d) <= 1e-14:
            raise BasisBranchError(f"Psi argument {y} lies on its cut")

    def rotated(self):
        """Copy with the cut moved off the negative real axis to the imaginary one."""
        return replace(self, cut=math.pi / 2)

    def cut_distance(self, y: complex) -> float:
        """Distance from y to the ray carrying the cut."""
        d = (cmath.phase(y) - self.cut) % (2 * math.pi)
        d = min(d, 2 * math.pi - d)
        return abs(y) * math.sin(d) if d < math.pi / 2 else abs(y)

    def sequence(self, lo, hi, z, tol):
        ly = self.log_argument(z)
        mu0 = self.b0 / 2 - 0.5
        kappa = self.b0 / 2 - self.a0
        m, e = sf.whittaker_sequence(kappa, mu0 + lo, 0, hi - lo, ly, tol)
        # y^{p0+n} Psi = y^{p0 - mu0 - 1/2} * hat W_{kappa, mu0+n}
        m = m * cmath.exp((self.p0 - mu0 - 0.5) * ly)
        return m, e

    def describe(self):
        return {"function": "psi_u", "a": "a0+n", "b": "b0+2n", "power": "p0+n", "a0": self.a0,
                "b0": self.b0, "p0": self.p0,
                "argument": ("cy/z" if self.inverse else "cy*z"), "cy": self.cy,
                "cut_angle": self.cut}


class WindowProvider:
    """Lazily grown minimal-solution window for one recurrence family."""

    def __init__(self, family: rec.RecurrenceFamily, n_cap: int = 10000):
        self.family = family
        self.n_cap = n_cap
        self._win: Optional[rec.CoefficientWindow] = None

    def get(self, n: int) -> rec.CoefficientWindow:
        if self._win is None or self._win.n_max < n:
            size = 16
            while size < n:
                size *= 2
            self._win = rec.minimal_coefficients(self.family, min(size, self.n_cap))
        return self._win

    @property
    def window(self) -> rec.CoefficientWindow:
        return self.get(16) if self._win is None else self._win


@dataclass
class SeriesSolution:
    family_id: str
    variant: str
    params: object
    nu: complex
    provider: WindowProvider
    prefactor: Prefactor
    basis: object
    domain: str
    sqrt_sign: int = 1
    pair: int = 1
    alternate: bool = False
    tol: Tolerances = field(default_factory=lambda: DEFAULT)
    terminate: Optional[int] = None     # quasi-polynomial: b_n = 0 for n >= terminate
    n_hint: int = field(default=16, repr=False, compare=False)

    @property
    def family(self) -> rec.RecurrenceFamily:
        return self.provider.family

    @property
    def window(self) -> rec.CoefficientWindow:
        return self.provider.window

    @property
    def one_sided(self) -> bool:
        return self.family.one_sided

    def __call__(self, z) -> complex:
        return eval_solution(self, z)[0]

    def describe(self) -> dict:
        p = self.prefactor
        return {
            "family": self.family_id, "variant": self.variant, "pair": self.pair,
            "nu": self.nu, "domain": self.domain, "sqrt_sign": self.sqrt_sign,
            "coefficient_sign_alternation": self.alternate, "terms": self.terminate,
            "prefactor": {"z_power": p.pz, "z_minus_z0_power": p.pzz0, "exp_z": p.ez, "exp_inv_z": p.einv},
            "basis": self.basis.describe(),
        }


# -- construction -----------------------------------------------------------

def _nonpos_int(x: complex) -> bool:
    return _is_int(x) and round(x.real) <= 0


def _in_ladder(x: complex, start: float, step: float) -> bool:
    """x in {start, start + step, start + 2 step, ...}."""
    k = (x - start) / step
    return abs(k.imag) <= TAU_ZERO and near_integer(k.real) is not None and round(k.real) >= 0


def _termination(fid: str, p) -> Optional[int]:
    """N for a truncated family whose series stops after n = N - 1, else None."""
    if not rec.family_info(fid).one_sided:
        return None
    try:
        return rec.quasi_polynomial(fid, params=p)
    except ValidationError:
        return None


def _applicability(fid: str, variant: str, p):
    """Raise ApplicabilityError when the existence conditions of a pair fail."""
    def fail(msg, sib):
        raise ApplicabilityError(msg, sibling=sib)

    if fid.startswith("InceGswe"):
        h, r = p.B2 / 2, p.B1 / p.z0
        c12, c34 = p.B2 + r, 2 - p.B2 - r
        if fid == "InceGswe-T1" and _in_ladder(p.B2, 0, -1):
            fail("InceGswe-T1 needs B2 not in {0, -1, -2, ...}", "InceGswe-T3")
        if fid == "InceGswe-T2" and _in_ladder(h + r, -1, -0.5):
            fail("InceGswe-T2 needs B2/2 + B1/z0 not in {-1, -3/2, -2, ...}", "InceGswe-T4")
        if fid == "InceGswe-T3" and _in_ladder(p.B2, 4, 1):
            fail("InceGswe-T3 needs B2 not in {4, 5, 6, ...}", "InceGswe-T1")
        if fid == "InceGswe-T4" and _in_ladder(h + r, 1, 0.5):
            fail("InceGswe-T4 needs B2/2 + B1/z0 not in {1, 3/2, 2, ...}", "InceGswe-T2")
        if variant == ZERO:
            if fid in ("InceGswe-nu-1", "InceGswe-T1", "InceGswe-T2") and _nonpos_int(c12):
                sib = {"InceGswe-nu-1": "InceGswe-nu-2", "InceGswe-T1": "InceGswe-T3",
                       "InceGswe-T2": "InceGswe-T4"}[fid]
                fail("B2 + B1/z0 is zero or a negative integer", sib)
            if fid in ("InceGswe-nu-2", "InceGswe-T3", "InceGswe-T4") and _nonpos_int(c34):
                sib = {"InceGswe-nu-2": "InceGswe-nu-1", "InceGswe-T3": "InceGswe-T1",
                       "InceGswe-T4": "InceGswe-T2"}[fid]
                fail("2 - B2 - B1/z0 is zero or a negative integer", sib)
    elif fid == "InceDche-T1" and _in_ladder(p.B2, 0, -1):
        fail("InceDche-T1 needs B2 not in {0, -1, -2, ...}", "InceDche-T2")
    elif fid == "InceDche-T2" and _in_ladder(p.B2, 4, 1):
        fail("InceDche-T2 needs B2 not in {4, 5, 6, ...}", "InceDche-T1")


def _layout(fid: str, variant: str, p, nu: complex, sign: int, pair: int):
    """(prefactor, basis, domain) for each solution layout."""
    if fid.startswith("InceGswe"):
        h, r = p.B2 / 2, p.B1 / p.z0
        first = fid in ("InceGswe-nu-1", "InceGswe-T1", "InceGswe-T2")
        if variant == INFINITY:
            basis = BesselBasis(2 * nu + 1, p.q, sign)
            if first:
                return Prefactor(pz=(1 - p.B2) / 2), basis, OUTSIDE_Z0
            return Prefactor(pz=r + h - 0.5, pzz0=1 - p.B2 - r, z0=p.z0), basis, OUTSIDE_Z0
        if fid == "InceGswe-T2":
            return Prefactor(pz=1 + r), GaussBasis(0j, 1 + p.B2 + 2 * r, p.B2 + r, p.z0), FINITE
        if fid == "InceGswe-T4":
            return (Prefactor(pzz0=1 - p.B2 - r, z0=p.z0),
                    GaussBasis(0j, 1 - p.B2 - 2 * r, 2 - p.B2 - r, p.z0), FINITE)
        if first:
            return Prefactor(), GaussBasis(nu + 1 - h, p.B2 - 1, p.B2 + r, p.z0), FINITE
        return (Prefactor(pz=1 + r, pzz0=1 - p.B2 - r, z0=p.z0),
                GaussBasis(nu + h - 1, 3 - p.B2, 2 - p.B2 - r, p.z0), FINITE)
    if fid.startswith("InceDche"):
        h = p.B2 / 2
        first = fid in ("InceDche-nu-1", "InceDche-T1")
        e = 0j if first else p.B1
        if variant == INFINITY:
            return Prefactor(pz=(1 - p.B2) / 2, einv=e), BesselBasis(2 * nu + 1, p.q, sign), NONZERO
        if first:
            return Prefactor(pz=-nu - h), TricomiBasis(nu + h, 2 * nu + 2, 0j, p.B1, True), FINITE
        return Prefactor(pz=-nu - h, einv=p.B1), TricomiBasis(nu + 2 - h, 2 * nu + 2, 0j, -p.B1, True), FINITE
    if fid == rec.DC_B2:
        e = 0j if pair == 1 else p.B1
        pre = Prefactor(ez=1j * p.omega, einv=e)
        if variant == INFINITY:
            return pre, TricomiBasis(nu + 1 + 1j * p.eta, 2 * nu + 2, nu, -2j * p.omega, False), NONZERO
        cy = p.B1 if pair == 1 else -p.B1
        return pre, TricomiBasis(nu + 1, 2 * nu + 2, nu + 1, cy, True), FINITE
    raise InvalidParams(f"{fid} has no series solution here; see the mathieu module")


SOLUTION_FAMILIES = rec.ALL_FAMILIES[:11]


def _resolve(fid, params, nu, seeds, tol):
    """Return (params, nu) with the characteristic equation satisfied."""
    info = rec.family_info(fid)
    if info.one_sided:
        prob = rec.CharacteristicProblem(fid, params, "B3", tol=tol)
        f0 = prob(params.B3)
        if abs(f0) < tol.root:
            return params, rec.truncated_nu(fid, params)
        root = rec.solve_characteristic(prob, seeds=[params.B3] + list(seeds or []), opts=tol)
        params = params.replace(B3=root.value)
        return params, rec.truncated_nu(fid, params)
    prob = rec.CharacteristicProblem(fid, params, "nu", tol=tol)
    if nu is not None:
        nu = complex(nu)
        if abs(prob(nu)) < tol.root:
            return params, nu
        seeds = [nu] + list(seeds or [])
    root = rec.solve_characteristic(prob, seeds=seeds, opts=tol)
    return params, root.value


def build_solution(family: str, variant: str, params, nu=None, sqrt_sign: int = 1, pair: int = 1,
                   seeds=None, provider: WindowProvider | None = None,
                   tol: Tolerances | None = None) -> SeriesSolution:
    """Build one member of a solution pair.

    For two-sided families ``nu`` is solved from the characteristic equation
    (``nu``/``seeds`` act as starting points). For truncated families nu is
    fixed by the parameters and B3 is adjusted to the nearest root of the
    characteristic equation when the supplied B3 does not satisfy it.
    """
    tol = tol or DEFAULT
    if variant not in (ZERO, INFINITY):
        raise InvalidParams("variant must be 'zero' or 'infinity'")
    if sqrt_sign not in (1, -1):
        raise InvalidParams("sqrt_sign must be +1 or -1")
    if pair not in (1, 2):
        raise InvalidParams("pair must be 1 or 2")
    info = rec.family_info(family)
    rec._check_params(info, params)
    _applicability(family, variant, params)
    if provider is None:
        params, nu = _resolve(family, params, nu, seeds, tol)
        fam = rec.RecurrenceFamily(family, params, None if info.one_sided else nu)
        provider = WindowProvider(fam, tol.n_max)
    else:
        fam = provider.family
        params, nu = fam.params, fam.nu
    pre, basis, domain = _layout(family, variant, params, nu, sqrt_sign, pair)
    return SeriesSolution(family, variant, params, nu, provider, pre, basis, domain,
                          sqrt_sign, pair, alternate=(family == rec.DC_B2 and pair == 2), tol=tol,
                          terminate=_termination(family, params))


def build_pair(family: str, params, nu=None, sqrt_sign: int = 1, pair: int = 1, seeds=None,
               tol: Tolerances | None = None):
    """(zero-side, infinity-side) sharing one coefficient window."""
    z = build_solution(family, ZERO, params, nu, sqrt_sign, pair, seeds, tol=tol)
    i = build_solution(family, INFINITY, z.params, z.nu, sqrt_sign, pair, provider=z.provider, tol=tol)
    return z, i


# -- evaluation -------------------------------------------------------------

def _check_point(sol: SeriesSolution, z: complex):
    p = sol.params
    z0 = getattr(p, "z0", 0j)
    scale = max(1.0, abs(z0))
    if abs(z) <= TAU_ZERO * scale or (z0 and abs(z - z0) <= TAU_ZERO * scale):
        raise SingularEvaluation(f"z = {z} is a singular point")
    if sol.domain == OUTSIDE_Z0 and abs(z) <= abs(z0) * (1 + 1e-12):
        raise OutsideDomain(f"|z| = {abs(z):.6g} must exceed |z0| = {abs(z0):.6g}")
    sol.prefactor.check(z)
    sol.basis.check(z)


def _terms(sol: SeriesSolution, z: complex, N: int):
    win = sol.provider.get(max(N, 1))
    lo = 0 if sol.one_sided else -N
    bm, be = win.slice(lo, N)
    fm, fe = sol.basis.sequence(lo, N, z, sf.FnEvalOptions(tol=sol.tol.fn))
    t = _k.combine_terms(bm, be, np.asarray(fm, np.complex128), np.asarray(fe, np.int64))
    ns = np.arange(lo, N + 1)
    if sol.alternate:
        t = np.where(ns % 2 == 0, t, -t)
    return ns, t


def _outward_sum(ns, t):
    order = np.argsort(np.abs(ns) * 2 + (ns < 0), kind="stable")
    return complex(np.cumsum(t[order])[-1])


def _eval_core(sol: SeriesSolution, z: complex, tol: Tolerances):
    """(log prefactor, bare sum, truncation tail, condition number)."""
    _check_point(sol, z)
    if sol.terminate is not None:
        ns, t = _terms(sol, z, max(sol.terminate - 1, 0))
        S = _outward_sum(ns, t)
        cond = float(np.abs(t).sum() / abs(S)) if S != 0 else math.inf
        return sol.prefactor.log(z), S, 0.0, cond
    # start from the size that sufficed last time; nearby points rarely need more
    N = sol.n_hint
    while True:
        ns, t = _terms(sol, z, N)
        if not np.all(np.isfinite(t)):
            raise NoConvergence(f"series terms overflow at z = {z}")
        S = _outward_sum(ns, t)
        edge = np.abs(t[-3:]).max()
        if not sol.one_sided:
            edge = max(edge, np.abs(t[:3]).max())
        tail = edge / abs(S) if S != 0 else (0.0 if edge == 0 else math.inf)
        if tail < tol.tail:
            break
        if 2 * N > tol.n_max:
            if tail < 1e-3 * tol.res:
                break
            raise NoConvergence(f"series did not converge at z = {z} (tail {tail:.3g})")
        N *= 2
    sol.n_hint = N
    cond = float(np.abs(t).sum() / abs(S)) if S != 0 else math.inf
    return sol.prefactor.log(z), S, float(tail), cond


def eval_solution(sol: SeriesSolution, z, opts: Tolerances | None = None):
    """(value, error estimate) with the series summed until the relative tail
    falls below ``tol.tail`` (or ``n_max`` terms are used on each side).

    The estimate is the larger of the truncation tail and the rounding bound
    eps * sum|t_n| / |S|, so cancellation between terms shows up in it.
    """
    tol = opts or sol.tol
    lp, S, tail, cond = _eval_core(sol, complex(z), tol)
    return cmath.exp(lp) * S, max(tail, EPS * cond)


def log_eval(sol: SeriesSolution, z, opts: Tolerances | None = None):
    """(log U, error estimate, condition number); usable where U under- or overflows."""
    tol = opts or sol.tol
    lp, S, tail, cond = _eval_core(sol, complex(z), tol)
    return lp + cmath.log(S), max(tail, EPS * cond), cond


def eval_many(sol: SeriesSolution, zs):
    out = np.empty(len(zs), dtype=np.complex128)
    tails = np.empty(len(zs))
    for i, z in enumerate(zs):
        out[i], tails[i] = eval_solution(sol, z)
    return out, tails


def thome_form(sol: SeriesSolution, z) -> complex:
    """Leading infinity behaviour exp(-s 2i sqrt(q z)) z^{1/4 - B2/2}."""
    z = complex(z)
    p = sol.params
    return cmath.exp(-sol.sqrt_sign * 2j * cmath.sqrt(p.q * z) + (0.25 - p.B2 / 2) * cmath.log(z))


def asymptotic_check(sol: SeriesSolution, radii, direction: complex = 1.0):
    """Ratios U(z)/thome(z) along z = radius * direction and their relative drifts."""
    if sol.variant != INFINITY:
        raise InvalidParams("asymptotic_check needs an infinity-side solution")
    if not isinstance(sol.basis, BesselBasis):
        raise InvalidParams("asymptotic_check applies to the Bessel-series solutions")
    d = complex(direction) / abs(direction)
    ratios = []
    for R in radii:
        z = R * d
        ratios.append(sol(z) / thome_form(sol, z))
    drifts = [abs(ratios[i + 1] / ratios[i] - 1) for i in range(len(ratios) - 1)]
    return ratios, drifts


def leaver_limit_consistency(params: InceGsweParams, z, z0_values=(1e-2, 1e-3, 1e-4), anchor=None,
                             nu_seed=None, tol: Tolerances | None = None):
    """Deviation between normalized Ince-GSWE and Ince-DCHE pair-1 zero-side
    values as z0 shrinks (B1, B2, B3, q held fixed).

    Each solution is divided by its value at ``anchor``. Returns the list of
    relative deviations in the order of ``z0_values``.
    """
    tol = tol or DEFAULT
    z = complex(z)
    anchor = complex(anchor) if anchor is not None else z * 1.25 * cmath.exp(0.2j)
    pd = leaver_limit(params)
    ref = build_solution(rec.ID_NU1, ZERO, pd, nu=nu_seed, tol=tol)
    target = ref(z) / ref(anchor)
    devs = []
    nu = ref.nu
    for z0 in z0_values:
        pg = params.replace(z0=complex(z0))
        sol = build_solution(rec.IG_NU1, ZERO, pg, nu=nu, tol=tol)
        # keep the root on the branch continuing the Ince-DCHE one
        nu = sol.nu
        val = sol(z) / sol(anchor)
        devs.append(abs(val - target) / abs(target))
    return devs


def exponential_limit(B1, z, z0) -> float:
    """|(1 - z0/z)^{-B1/z0} - e^{B1/z}| / |e^{B1/z}|."""
    B1, z, z0 = complex(B1), complex(z), complex(z0)
    lhs = cmath.exp(-B1 / z0 * cmath.log(1 - z0 / z))
    rhs = cmath.exp(B1 / z)
    return abs(lhs - rhs) / abs(rhs)
