"""Radial Schrodinger equation with polarization potentials, in atomic units.

    chi'' + [k^2 - 2(Z - z')/r - l(l+1)/r^2 + a1/r^4 + (a2 - 6 b1)/r^6] chi = 0

with R = chi / r. The r^-6 case (neutral target) maps to the Ince-DCHE in
z = r^2; without the r^-6 term the equation is a DCHE with B2 = 2 in z = r.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import recurrence as rec
from . import solutions as sol_mod
from .equations import DcheParams, InceDcheParams
from .errors import InceHeunError, ChargedTargetUnsupported, DegeneratePotential, InvalidParams, InvalidPotential
from .options import TAU_ZERO, Tolerances


@dataclass(frozen=True)
class PotentialParams:
    alpha1p: float
    alpha2p: float = 0.0
    beta1p: float = 0.0
    Z: int = 0
    zprime: int = 0
    E: float = 0.5
    l: int = 0

    def __post_init__(self):
        for n in ("alpha1p", "alpha2p", "beta1p", "E"):
            v = getattr(self, n)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise InvalidParams(f"{n} must be a finite real number")
        if self.E <= 0:
            raise InvalidParams("E must be positive")
        if int(self.l) != self.l or self.l < 0:
            raise InvalidParams("l must be a non-negative integer")
        if int(self.Z) != self.Z or int(self.zprime) != self.zprime:
            raise InvalidParams("charges must be integers")

    @property
    def k(self) -> float:
        return math.sqrt(2 * self.E)

    @property
    def c6(self) -> float:
        """a2 - 6 a0 b1, the r^-6 strength."""
        return self.alpha2p - 6 * self.beta1p

    def potential_term(self, r) -> complex:
        """Bracket of the radial equation for chi."""
        r = complex(r)
        l = self.l
        return (self.k ** 2 - 2 * (self.Z - self.zprime) / r - l * (l + 1) / r ** 2
                + self.alpha1p / r ** 4 + self.c6 / r ** 6)


@dataclass(frozen=True)
class RadialMap:
    """R(r) = exp(einv / r^p) r^power U(z = r^p) with p = 2 or 1."""
    case: str
    params: object
    zpow: int
    power: complex
    einv: complex
    potential: PotentialParams

    def z_of(self, r):
        return complex(r) ** self.zpow

    def prefactor(self, r) -> complex:
        r = complex(r)
        return cmath.exp(self.einv / r ** self.zpow + self.power * cmath.log(r))


def _root_sign(v: complex, sign: int) -> complex:
    s = cmath.sqrt(v)
    if abs(s.imag) <= TAU_ZERO * max(1.0, abs(s)):
        s = complex(abs(s.real), 0.0)
    else:
        s = complex(0.0, abs(s.imag))
    return sign * s


def map_inverse6(pot: PotentialParams, b1_sign: int = 1) -> RadialMap:
    if pot.Z != pot.zprime:
        raise ChargedTargetUnsupported("the r^-6 mapping needs a neutral target (Z = z')")
    d = 6 * pot.beta1p - pot.alpha2p
    if abs(d) <= TAU_ZERO:
        raise DegeneratePotential("6 a0 b1 = a2: no r^-6 term, use map_inverse4")
    if b1_sign not in (1, -1):
        raise InvalidParams("b1_sign must be +1 or -1")
    B1 = _root_sign(d, b1_sign)
    B2 = 2 - pot.alpha1p / (2 * B1)
    B3 = (B2 / 2 - 0.25) * (B2 / 2 - 0.75) - pot.l * (pot.l + 1) / 4
    q = pot.k ** 2 / 4
    p = InceDcheParams(B1, B2, B3, q)
    return RadialMap("inverse6", p, 2, B2 - 1.5, -B1 / 2, pot)


def map_inverse4(pot: PotentialParams, omega_sign: int = 1, b1_sign: int = 1) -> RadialMap:
    if abs(pot.c6) > TAU_ZERO:
        raise InvalidPotential("map_inverse4 needs a2 = 6 a0 b1")
    if pot.alpha1p == 0:
        raise InvalidPotential("a1 must be non-zero (B1 = 0 is degenerate)")
    if omega_sign not in (1, -1) or b1_sign not in (1, -1):
        raise InvalidParams("signs must be +1 or -1")
    B1 = _root_sign(-4 * pot.alpha1p, b1_sign)
    omega = omega_sign * pot.k
    eta = (pot.Z - pot.zprime) / omega
    p = DcheParams(B1, 2.0, -pot.l * (pot.l + 1), eta, omega)
    return RadialMap("inverse4", p, 1, 0.0, -B1 / 2, pot)


# condition number above which a sum is replaced by its expansion in two
# solutions from the opposite boundary
COND_LIMIT = 1e6


@dataclass
class RadialSolution:
    mapping: RadialMap
    pair: int
    variant: str
    series: sol_mod.SeriesSolution
    connect: bool = True
    _conn: Optional[tuple] = field(default=None, repr=False)

    @property
    def nu(self) -> complex:
        return self.series.nu

    def log_value(self, r):
        """(log R, condition number of the underlying sum)."""
        r = complex(r)
        m = self.mapping
        lu, _, cond = sol_mod.log_eval(self.series, m.z_of(r))
        return m.einv / r ** m.zpow + m.power * cmath.log(r) + lu, cond

    def companions(self) -> tuple:
        """Two independent solutions of the same radial equation that are
        well conditioned where this one is not."""
        m = self.mapping
        if self.variant == "infinity":
            return tuple(radial_solve(m, k, "zero", nu=self.nu, connect=False) for k in (1, 2))
        if m.case == "inverse6":
            return tuple(radial_solve(m, 1, "infinity", sqrt_sign=s, connect=False) for s in (1, -1))
        p = m.params
        flipped = replace(m, params=DcheParams(p.B1, p.B2, p.B3, -p.eta, -p.omega))
        return (radial_solve(m, 1, "infinity", connect=False),
                radial_solve(flipped, 1, "infinity", connect=False))

    def connection(self) -> tuple:
        """(c1, c2, r_match) with R = c1 R_a + c2 R_b for the companion pair."""
        if self._conn is None:
            from .verify import derivatives
            comp = self.companions()
            fs = (self._plain, *comp)
            best = None
            for rm in np.geomspace(0.02, 50.0, 41):
                try:
                    c = max(f.log_value(rm)[1] for f in (self, *comp))
                except InceHeunError:
                    continue
                if best is None or c < best[0]:
                    best = (c, rm)
            rm = best[1]
            h = 0.1 * rm
            (u, du), (a, da), (b, db) = (derivatives(f, rm, h)[:2] for f in fs)
            w = a * db - da * b
            self._conn = ((u * db - du * b) / w, (a * du - da * u) / w, rm, comp)
        return self._conn[:3]

    def _plain(self, r) -> complex:
        lv, _ = self.log_value(r)
        return cmath.exp(lv)

    def __call__(self, r) -> complex:
        lv, cond = self.log_value(r)
        if cond <= COND_LIMIT or not self.connect:
            return cmath.exp(lv)
        c1, c2, _ = self.connection()
        a, b = self._conn[3]
        return c1 * a(r) + c2 * b(r)

    def chi(self, r) -> complex:
        return complex(r) * self(r)

    def describe(self) -> dict:
        d = self.series.describe()
        d.update({"case": self.mapping.case, "r_power": self.mapping.power,
                  "exp_inv_r": self.mapping.einv, "z_of_r": f"r^{self.mapping.zpow}"})
        return d


def _unrotated(series: sol_mod.SeriesSolution) -> sol_mod.SeriesSolution:
    """Move a Psi cut that would sit on the positive r axis."""
    b = series.basis
    if isinstance(b, sol_mod.TricomiBasis) and sol_mod._on_cut(b.argument(1.0 + 0j)):
        series.basis = b.rotated()
    return series


def radial_solve(mapping: RadialMap, pair: int = 1, variant: str = "zero", seeds=None,
                 sqrt_sign: int = 1, nu=None, tol: Tolerances | None = None,
                 connect: bool = True) -> RadialSolution:
    p = mapping.params
    if mapping.case == "inverse6":
        fid = rec.ID_NU1 if pair == 1 else rec.ID_NU2
        s = sol_mod.build_solution(fid, variant, p, nu=nu, sqrt_sign=sqrt_sign, seeds=seeds, tol=tol)
    else:
        s = sol_mod.build_solution(rec.DC_B2, variant, p, nu=nu, pair=pair, seeds=seeds, tol=tol)
    return RadialSolution(mapping, pair, variant, _unrotated(s), connect)


def radial_pairs(mapping: RadialMap, seeds=None, tol=None) -> dict:
    """All four members sharing one nu (and, per pair, one window)."""
    out = {}
    nu = None
    for pair in (1, 2):
        if mapping.case == "inverse6":
            fid = rec.ID_NU1 if pair == 1 else rec.ID_NU2
            z, i = sol_mod.build_pair(fid, mapping.params, nu=nu, seeds=seeds, tol=tol)
        else:
            z, i = sol_mod.build_pair(rec.DC_B2, mapping.params, nu=nu, pair=pair, seeds=seeds, tol=tol)
        nu = z.nu
        out[(pair, "zero")] = RadialSolution(mapping, pair, "zero", _unrotated(z))
        out[(pair, "infinity")] = RadialSolution(mapping, pair, "infinity", _unrotated(i))
    return out


def radial_residual(sol: RadialSolution, rs=None):
    """ODE residual of chi = r R against the radial equation."""
    from .verify import ode_residual
    pot = sol.mapping.potential
    rs = np.geomspace(0.1, 10, 24) if rs is None else rs

    def terms(r):
        return 1.0, 0.0, pot.potential_term(r)
    def scale(r):
        r = abs(r)
        g1 = m.zpow * abs(m.einv) / r ** (m.zpow + 1)
        return min(0.5 * r, 1 / g1 if g1 else math.inf, 2 / pot.k)
    m = sol.mapping
    return ode_residual(terms, sol.chi, rs, scale=scale)


@dataclass
class BoundaryReport:
    case: str
    variant: str
    radii: list
    values: list
    drift: float
    stationary: bool
    expected: str
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {"case": self.case, "variant": self.variant, "radii": list(self.radii),
                "values": list(self.values), "drift": self.drift, "stationary": self.stationary,
                "expected": self.expected}


def boundary_report(sol: RadialSolution, radii=None, threshold: float = 1e-2) -> BoundaryReport:
    """Check the expected limit behaviour of R at the origin or at infinity.

    Origin: |R(r) / M(r)|, formed in log space, with M = exp(-+B1/(2 r^p)) r^{power} for pair 1/2.
    Infinity: |r R(r)| (r^-6) or r R(r) r^{+-i eta} e^{-+ikr} (r^-4).
    """
    m = sol.mapping
    p = m.params
    if sol.variant == "zero":
        radii = radii if radii is not None else [0.1 * 2.0 ** -k for k in range(6)]
        if m.case == "inverse6":
            pw = (p.B2 - 1.5) if sol.pair == 1 else (2.5 - p.B2)
            e = -p.B1 / 2 if sol.pair == 1 else p.B1 / 2
            expected = "|R| ~ sqrt(r)" if abs(p.B1.real) <= TAU_ZERO else "|R| ~ |exp(-+B1/(2r^2)) r^power|"
            model = lambda r: e / r ** 2 + pw * math.log(r)
        else:
            e = -p.B1 / 2 if sol.pair == 1 else p.B1 / 2
            expected = "|R| ~ 1"
            model = lambda r: e / r
        vals = [math.exp((sol.log_value(r)[0] - model(r)).real) for r in radii]
    else:
        radii = radii if radii is not None else [10.0 * 2.0 ** k for k in range(6)]
        if m.case == "inverse6":
            expected = "|r R| bounded, R ~ exp(-+ikr)/r"
            vals = [abs(r * sol(r)) for r in radii]
        else:
            w, eta = p.omega, p.eta
            expected = "R ~ r^(-+i eta) exp(+-ikr) / r"
            vals = [r * sol(r) * cmath.exp(1j * eta * math.log(r) - 1j * w * r) for r in radii]
    drift = abs(vals[-1] / vals[-2] - 1) if vals[-2] != 0 else math.inf
    return BoundaryReport(m.case, sol.variant, list(radii), vals, float(drift), drift < threshold, expected)
