"""Independent checks of series solutions: ODE residuals, direct integration,
Wronskians, coefficient-ratio asymptotics and truncated-matrix oracles."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from . import recurrence as rec
from .equations import ode_terms, singular_points
from .errors import InvalidParams, NoConvergence, StepFailure
from .solutions import (OUTSIDE_Z0, BesselBasis, GaussBasis, SeriesSolution,
                        TricomiBasis, eval_solution)

RING = 8
_ROOTS = np.exp(2j * np.pi * np.arange(RING) / RING)


def _cut_dist(w: complex) -> float:
    """Distance from w to the negative real axis."""
    return abs(w.imag) if w.real < 0 else abs(w)


def local_scale(sol_or_params, z: complex) -> float:
    """Radius of a disc around z free of singular points and branch cuts."""
    z = complex(z)
    if isinstance(sol_or_params, SeriesSolution):
        sol = sol_or_params
        p = sol.params
        d = [abs(z - s) for s in singular_points(p)]
        pre = sol.prefactor
        if pre.pz:
            d.append(_cut_dist(z))
        if pre.pzz0:
            d.append(_cut_dist(z - pre.z0))
        b = sol.basis
        if isinstance(b, GaussBasis):
            d.append(abs(b.z0) * _cut_dist(z / b.z0))
        elif isinstance(b, BesselBasis):
            d.append(_cut_dist(b.q * z) / abs(b.q))
        elif isinstance(b, TricomiBasis):
            y = b.argument(z)
            # |dy/dz| = |y|/|z| on both the direct and inverse arguments
            d.append(b.cut_distance(y) * abs(z) / abs(y))
        if not hasattr(p, "z0"):
            d.append(abs(z) ** 2 / abs(p.B1))
        if sol.domain == OUTSIDE_Z0:
            d.append(abs(z) - abs(p.z0))
        return min(d)
    return min(abs(z - s) for s in singular_points(sol_or_params))


def derivatives(f: Callable, z: complex, h: float):
    """(f, f', f'') from ring stencils of radius h and h/2 with Richardson
    elimination of the leading aliasing error."""
    z = complex(z)
    f0 = complex(f(z))

    def ring(r):
        v = np.array([complex(f(z + r * w)) for w in _ROOTS])
        d1 = np.sum(v * _ROOTS.conj()) / (RING * r)
        d2 = 2 * np.sum((v - f0) * _ROOTS.conj() ** 2) / (RING * r * r)
        return d1, d2

    a1, a2 = ring(h)
    b1, b2 = ring(h / 2)
    k = 2.0 ** RING
    return f0, (k * b1 - a1) / (k - 1), (k * b2 - a2) / (k - 1)


@dataclass
class ResidualStats:
    max: float
    mean: float
    values: np.ndarray
    grid: np.ndarray

    def as_dict(self):
        return {"max": self.max, "mean": self.mean, "points": int(len(self.grid))}


def _terms_of(params_or_terms):
    if callable(params_or_terms):
        return params_or_terms
    return lambda z: ode_terms(params_or_terms, z)


def ode_residual(params, evaluator: Callable, grid, scale: Optional[Callable] = None,
                 step: float = 0.2) -> ResidualStats:
    """Relative residual |P2 U'' + P1 U' + P0 U| / (|P2 U''| + |P1 U'| + |P0 U|).

    ``params`` is a parameter record or a callable returning (P2, P1, P0).
    ``scale(z)`` bounds the stencil radius; by default the distance to the
    nearest singular point (or the solution's own cut-aware scale).
    """
    terms = _terms_of(params)
    if scale is None:
        if isinstance(evaluator, SeriesSolution):
            scale = lambda z: local_scale(evaluator, z)
        elif not callable(params):
            scale = lambda z: local_scale(params, z)
        else:
            scale = lambda z: max(abs(z), 1e-3)
    grid = np.asarray(list(grid), dtype=np.complex128)
    out = np.empty(len(grid))
    for i, z in enumerate(grid):
        u, du, d2u = derivatives(evaluator, z, step * scale(z))
        P2, P1, P0 = terms(z)
        num = abs(P2 * d2u + P1 * du + P0 * u)
        den = abs(P2 * d2u) + abs(P1 * du) + abs(P0 * u)
        out[i] = num / den if den > 0 else 0.0
    return ResidualStats(float(out.max()), float(out.mean()), out, grid)


def sample_grid(sol: SeriesSolution, n: int = 64, rmin: float | None = None,
                rmax: float | None = None, margin: float = 0.15):
    """n points on an annulus inside the convergence domain, kept away from cuts."""
    p = sol.params
    z0 = abs(getattr(p, "z0", 0j))
    if sol.domain == OUTSIDE_Z0:
        lo, hi = 1.2 * z0, 3.0 * z0
    elif z0:
        lo, hi = 0.25 * z0, 2.5 * z0
    else:
        s = max(0.3, min(3.0, abs(p.B1)))
        lo, hi = 0.3 * s, 2.0 * s
    lo = rmin if rmin is not None else lo
    hi = rmax if rmax is not None else hi
    pts = []
    k = 0
    golden = (math.sqrt(5) - 1) / 2
    while len(pts) < n and k < 50 * n:
        r = lo + (hi - lo) * ((k * golden) % 1.0)
        th = 2 * math.pi * ((k * golden * golden + 0.1) % 1.0)
        z = r * cmath.exp(1j * th)
        k += 1
        ls = local_scale(sol, z)
        if ls > margin * abs(z) and (not z0 or abs(z - getattr(p, "z0")) > margin * z0):
            pts.append(z)
    if len(pts) < n:
        raise InvalidParams("could not place the sampling grid away from cuts")
    return np.array(pts)


def solution_residual(sol: SeriesSolution, n: int = 64, grid=None) -> ResidualStats:
    g = sample_grid(sol, n) if grid is None else grid
    return ode_residual(sol.params, sol, g)


# -- direct integration --------------------------------------------------------

def integrate_ode(params, z_start, u0, du0, z_end, rtol: float = 1e-13, atol: float = 1e-15,
                  path: Sequence[complex] | None = None):
    """(U, U') at z_end from a straight-line (or polyline) DOP853 integration."""
    terms = _terms_of(params)
    nodes = [complex(z_start)] + [complex(w) for w in (path or [])] + [complex(z_end)]
    y = np.array([u0, du0], dtype=np.complex128)
    for a, b in zip(nodes[:-1], nodes[1:]):
        d = b - a

        def rhs(t, yy, a=a, d=d):
            z = a + t * d
            P2, P1, P0 = terms(z)
            return [d * yy[1], -d * (P1 * yy[1] + P0 * yy[0]) / P2]

        s = solve_ivp(rhs, (0.0, 1.0), y, method="DOP853", rtol=rtol, atol=atol)
        if not s.success:
            raise StepFailure(f"integration failed between {a} and {b}: {s.message}")
        y = s.y[:, -1]
    return complex(y[0]), complex(y[1])


def integration_crosscheck(sol: SeriesSolution, z_start, z_end, path=None) -> float:
    """Relative gap between the series at z_end and the ODE integrated from z_start."""
    u, du, _ = derivatives(sol, z_start, 0.2 * local_scale(sol, z_start))
    ui, _ = integrate_ode(sol.params, z_start, u, du, z_end, path=path)
    ue = sol(z_end)
    return abs(ui - ue) / max(abs(ue), abs(u))


# -- Wronskian -----------------------------------------------------------------

def abel_factor(params, z) -> complex:
    """exp(int p) so that W(z) * abel_factor(z) is constant."""
    p = params
    z = complex(z)
    if hasattr(p, "z0"):
        r = p.B1 / p.z0
        return cmath.exp(-r * cmath.log(z) + (r + p.B2) * cmath.log(z - p.z0))
    return cmath.exp(-p.B1 / z + p.B2 * cmath.log(z))


@dataclass
class WronskianReport:
    deviation: float
    relative_size: float
    proportional: bool
    values: list


def wronskian_constancy(params, u1: Callable, u2: Callable, grid, step: float = 0.2,
                        scale: Optional[Callable] = None) -> WronskianReport:
    """Spread of W * exp(int p) over the grid; a tiny W signals proportional functions."""
    scale = scale or (lambda z: local_scale(params, z))
    vals, sizes = [], []
    for z in grid:
        h = step * min(scale(z), *(local_scale(u, z) for u in (u1, u2) if isinstance(u, SeriesSolution)))
        a, da, _ = derivatives(u1, z, h)
        b, db, _ = derivatives(u2, z, h)
        w = a * db - da * b
        sizes.append(abs(w) / (abs(a * db) + abs(da * b)))
        vals.append(w * abel_factor(params, z))
    vals = np.array(vals)
    mean = np.mean(vals)
    dev = float(np.max(np.abs(vals - mean)) / max(np.abs(vals).max(), 1e-300))
    rel = float(np.max(sizes))
    return WronskianReport(dev, rel, rel < 1e-8, [complex(v) for v in vals])


# -- coefficient asymptotics -----------------------------------------------------

@dataclass
class RatioReport:
    n: int
    observed_up: complex
    observed_down: complex
    predicted: complex
    deviation: float
    power: int


def predicted_ratio(family_id: str, params) -> tuple[complex, int]:
    """(c, k) with b_{n+1}/b_n ~ c / n^k for the two-sided Bessel-series families."""
    if family_id.startswith("InceGswe"):
        return -params.q * params.z0 / 4, 2
    if family_id.startswith("InceDche"):
        return -params.q * params.B1 / 4, 3
    raise InvalidParams(f"no ratio prediction for {family_id}")


def convergence_ratio_check(sol: SeriesSolution, n: int = 200) -> RatioReport:
    c, k = predicted_ratio(sol.family_id, sol.params)
    win = sol.provider.get(n + 1)
    up = complex(win.ratios_up[n]) * n ** k
    down = complex(win.ratios_down[n]) * n ** k if len(win.ratios_down) > n else complex("nan")
    dev = abs(up - c) / abs(c)
    if not sol.one_sided:
        dev = max(dev, abs(down - c) / abs(c))
    return RatioReport(n, up, down, c, float(dev), k)


# -- eigen oracle -------------------------------------------------------------------

@dataclass
class OracleReport:
    cf_roots: list
    oracle_roots: list
    doubled_roots: list
    max_delta: float
    stability: float


def eigen_oracle(problem: rec.CharacteristicProblem, cf_roots=None, size: int = 40,
                 count: int = 3) -> OracleReport:
    """Compare continued-fraction roots with truncated-matrix roots at M and 2M."""
    if problem.unknown == "B3":
        o1 = rec.eigen_roots(problem, size)[:count]
        o2 = rec.eigen_roots(problem, 2 * size)[:count]
        if cf_roots is None:
            cf_roots = [rec.solve_characteristic(problem, seed=x).value for x in o1]
    else:
        if cf_roots is None:
            cf_roots = [rec.solve_characteristic(problem).value]
        o1 = [rec.determinant_nu_root(problem, x, size) for x in cf_roots]
        o2 = [rec.determinant_nu_root(problem, x, 2 * size) for x in cf_roots]
    o1, o2 = [complex(x) for x in o1], [complex(x) for x in o2]

    def gap(x, ys):
        if problem.unknown == "nu":
            return min(min(abs(x - y), abs(x + y), abs(x - rec.canonical_nu(-y))) for y in ys)
        return min(abs(x - y) for y in ys)

    delta = max(gap(complex(x), o1) for x in cf_roots)
    stab = max(gap(x, o2) for x in o1)
    return OracleReport([complex(x) for x in cf_roots], o1, o2, float(delta), float(stab))


# -- combined report -----------------------------------------------------------------

@dataclass
class VerificationReport:
    family: str
    variant: str
    residual: ResidualStats
    recurrence_residual: float
    integration_gap: Optional[float] = None
    wronskian: Optional[WronskianReport] = None
    ratio: Optional[RatioReport] = None
    notes: list = field(default_factory=list)

    def as_dict(self):
        d = {"family": self.family, "variant": self.variant,
             "ode_residual": self.residual.as_dict(),
             "recurrence_residual": self.recurrence_residual,
             "integration_gap": self.integration_gap}
        if self.wronskian is not None:
            d["wronskian"] = {"deviation": self.wronskian.deviation,
                              "relative_size": self.wronskian.relative_size,
                              "proportional": self.wronskian.proportional}
        if self.ratio is not None:
            d["ratio"] = {"n": self.ratio.n, "observed": self.ratio.observed_up,
                          "predicted": self.ratio.predicted, "power": self.ratio.power,
                          "deviation": self.ratio.deviation}
        d["notes"] = list(self.notes)
        return d


def verify_solution(sol: SeriesSolution, partner: SeriesSolution | None = None, n: int = 64) -> VerificationReport:
    grid = sample_grid(sol, n)
    res = ode_residual(sol.params, sol, grid)
    rr = sol.provider.window.recurrence_residual()
    rep = VerificationReport(sol.family_id, sol.variant, res, rr)
    try:
        rep.integration_gap = integration_crosscheck(sol, grid[0], grid[1])
    except (StepFailure, NoConvergence) as e:
        rep.notes.append(f"integration cross-check skipped: {e}")
    if partner is not None:
        common = [z for z in grid if _in_domain(partner, z)] or list(sample_grid(partner, 8))
        rep.wronskian = wronskian_constancy(sol.params, sol, partner, common[:8])
    if not sol.one_sided and isinstance(sol.basis, BesselBasis) or (
            partner is not None and isinstance(partner.basis, BesselBasis) and not sol.one_sided):
        rep.ratio = convergence_ratio_check(sol)
    return rep


def _in_domain(sol, z):
    try:
        eval_solution(sol, z)
        return local_scale(sol, z) > 0.1 * abs(z)
    except Exception:
        return False
