"""Parameter rules between solutions, normal forms of the DCHE and the
degenerate cases that reduce to confluent hypergeometric or Bessel equations."""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

from . import specialfn as sf
from .equations import DcheParams, InceDcheParams, InceGsweParams
from .errors import InvalidParams, NotDegenerate, RuleInapplicable
from .options import TAU_ZERO
from .solutions import Prefactor

RULES = ("T1", "T2", "T3", "tau")


@dataclass(frozen=True)
class TransformResult:
    """U(z) = prefactor(z) * V(arg(z)) with V solving the equation for ``params``."""
    rule: str
    source: object
    params: object
    prefactor: Prefactor
    argument: str = "z"          # "z" or "z0-z"

    def arg(self, z):
        z = complex(z)
        return self.source.z0 - z if self.argument == "z0-z" else z

    def apply(self, v: Callable) -> Callable:
        """Lift a solution V of the target equation to one of the source equation."""
        def u(z):
            return self.prefactor(z) * v(self.arg(z))
        return u


def apply_rule(rule: str, params) -> TransformResult:
    p = params
    if rule not in RULES:
        raise RuleInapplicable(f"unknown rule {rule!r}; choose from {RULES}")
    if rule == "tau":
        if not isinstance(p, InceDcheParams):
            raise RuleInapplicable("tau acts on Ince-DCHE parameters")
        new = InceDcheParams(-p.B1, 4 - p.B2, p.B3 + 2 - p.B2, p.q)
        return TransformResult(rule, p, new, Prefactor(pz=2 - p.B2, einv=p.B1))
    if not isinstance(p, InceGsweParams):
        raise RuleInapplicable(f"{rule} acts on Ince-GSWE parameters")
    if abs(p.z0) <= TAU_ZERO:
        raise RuleInapplicable(f"{rule} needs z0 != 0")
    r = p.B1 / p.z0
    if rule == "T1":
        new = InceGsweParams(-p.B1 - 2 * p.z0, 2 + p.B2 + 2 * r, p.B3 + (1 + r) * (p.B2 + r), p.z0, p.q)
        return TransformResult(rule, p, new, Prefactor(pz=1 + r))
    if rule == "T2":
        new = InceGsweParams(p.B1, 2 - p.B2 - 2 * r, p.B3 + r * (r + p.B2 - 1), p.z0, p.q)
        return TransformResult(rule, p, new, Prefactor(pzz0=1 - p.B2 - r, z0=p.z0))
    new = InceGsweParams(-p.B1 - p.B2 * p.z0, p.B2, p.B3 - p.q * p.z0, p.z0, -p.q)
    return TransformResult(rule, p, new, Prefactor(), argument="z0-z")


# -- normal forms -------------------------------------------------------------

def _dche_data(params):
    """(B1, B2, B3, omega^2, 2 eta omega) with the Ince limit omega^2 = 0, 2 eta omega = -q."""
    if isinstance(params, DcheParams):
        return params.B1, params.B2, params.B3, params.omega ** 2, 2 * params.eta * params.omega
    if isinstance(params, InceDcheParams):
        return params.B1, params.B2, params.B3, 0j, -params.q
    raise InvalidParams("normal forms need DCHE or Ince-DCHE parameters")


@dataclass(frozen=True)
class NormalForm:
    """G''(x) + J(x) G(x) = 0 with J = sum_k coeffs[k] * basis_k(x).

    For N1 and N2 basis_k(x) = x^k; for N3 basis_k(u) = exp(k * n3_scale * u).
    """
    which: str
    coeffs: dict
    n3_scale: complex
    B1: complex
    B2: complex

    def z_of(self, x):
        x = complex(x)
        return {"N1": x, "N2": x * x}.get(self.which, cmath.exp(self.n3_scale * x))

    def x_of(self, z):
        z = complex(z)
        if self.which == "N1":
            return z
        if self.which == "N2":
            return cmath.sqrt(z)
        return cmath.log(z) / self.n3_scale

    def potential(self, x) -> complex:
        x = complex(x)
        if self.which == "N3":
            return sum(c * cmath.exp(k * self.n3_scale * x) for k, c in self.coeffs.items())
        return sum(c * x ** k for k, c in self.coeffs.items())

    def gauge(self, z) -> complex:
        """G(x(z)) / U(z)."""
        z = complex(z)
        e = cmath.exp(-self.B1 / (2 * z))
        if self.which == "N1":
            return z ** (self.B2 / 2) * e
        if self.which == "N2":
            return z ** ((2 * self.B2 - 1) / 4) * e
        return cmath.exp((self.B2 - 1) / 2 * cmath.log(z)) * e

    def from_u(self, u: Callable) -> Callable:
        def g(x):
            z = self.z_of(x)
            return self.gauge(z) * u(z)
        return g

    def to_u(self, g: Callable) -> Callable:
        def u(z):
            return g(self.x_of(z)) / self.gauge(z)
        return u


def normal_form(which: str, params, n3_scale=1.0) -> NormalForm:
    B1, B2, B3, w2, tew = _dche_data(params)
    lam = complex(n3_scale)
    if which == "N1":
        c = {0: w2, -1: -tew, -2: B3 - B2 ** 2 / 4 + B2 / 2, -3: B1 * (1 - B2 / 2), -4: -B1 ** 2 / 4}
    elif which == "N2":
        c = {2: 4 * w2, 0: -4 * tew, -2: 4 * (B3 - B2 ** 2 / 4 + B2 / 2 - 3 / 16),
             -4: 4 * B1 * (1 - B2 / 2), -6: -B1 ** 2}
    elif which == "N3":
        if abs(lam) <= TAU_ZERO:
            raise InvalidParams("n3_scale must be non-zero")
        c = {0: B3 - ((1 - B2) / 2) ** 2, -2: -B1 ** 2 / 4, -1: -B1 * (B2 / 2 - 1), 1: -tew, 2: w2}
        c = {k: lam ** 2 * v for k, v in c.items()}
    else:
        raise InvalidParams("normal form must be N1, N2 or N3")
    return NormalForm(which, c, lam, B1, B2)


# -- degenerate reductions -------------------------------------------------------

@dataclass(frozen=True)
class DegenerateSolution:
    """Closed-form solutions of a degenerate DCHE or Ince-DCHE.

    ``terms(z)`` gives (P2, P1, P0) of the degenerate equation.
    """
    case: str
    substitution: str
    reduced_equation: str
    exponents: tuple
    data: dict
    solutions: tuple
    terms: Callable

    def __call__(self, z, which: int = 0):
        return self.solutions[which](complex(z))


def _get(params, name, default=0j):
    if isinstance(params, dict):
        return complex(params.get(name, default))
    return complex(getattr(params, name, default))


def degenerate_reduce(kind: str, params) -> DegenerateSolution:
    """Reduce a DCHE ("dche") or Ince-DCHE ("ince_dche") with B1 = 0 and/or
    omega = 0 (q = 0) to a solvable equation.

    ``params`` may be a mapping since degenerate values are rejected by the
    ordinary parameter records.
    """
    B1, B2, B3 = (_get(params, n) for n in ("B1", "B2", "B3"))
    if kind == "dche":
        eta, omega = _get(params, "eta"), _get(params, "omega")
        tew, w2 = 2 * eta * omega, omega ** 2
    elif kind == "ince_dche":
        q = _get(params, "q")
        tew, w2, omega, eta = -q, 0j, 0j, 0j
    else:
        raise InvalidParams("kind must be 'dche' or 'ince_dche'")
    b1_zero = abs(B1) <= TAU_ZERO
    w_zero = abs(w2) <= TAU_ZERO and abs(tew) <= TAU_ZERO

    def terms(z):
        return z * z, B1 + B2 * z, B3 - tew * z + w2 * z * z

    fo = sf.FnEvalOptions()
    if b1_zero and w_zero:
        d = cmath.sqrt((B2 - 1) ** 2 - 4 * B3)
        r1, r2 = (1 - B2 + d) / 2, (1 - B2 - d) / 2
        # z = e^y: U'' + (B2 - 1) U' + B3 U = 0 in y
        sols = (lambda z: cmath.exp(r1 * cmath.log(z)), lambda z: cmath.exp(r2 * cmath.log(z)))
        return DegenerateSolution("constant-coefficients", "z = exp(y)",
                                  "U_yy + (B2 - 1) U_y + B3 U = 0", (r1, r2), {}, sols, terms)
    if w_zero:
        d = cmath.sqrt((B2 - 1) ** 2 - 4 * B3)
        betas = ((B2 - 1 + d) / 2, (B2 - 1 - d) / 2)

        def mk(beta):
            def u(z):
                y = B1 / z
                return cmath.exp(beta * cmath.log(y)) * sf.psi_u(beta, 2 * beta + 2 - B2, y, fo)
            return u
        return DegenerateSolution("confluent-hypergeometric", "y = B1/z, U = y^beta g(y)",
                                  "y g'' + [(2 beta + 2 - B2) - y] g' - beta g = 0",
                                  betas, {"a": betas[0], "b": 2 * betas[0] + 2 - B2},
                                  tuple(mk(b) for b in betas), terms)
    if not b1_zero:
        raise NotDegenerate("need B1 = 0 or omega = 0 (q = 0)")
    if kind == "ince_dche":
        order2 = (1 - B2) ** 2 - 4 * B3
        order = cmath.sqrt(order2)

        def mk(sign):
            def u(z):
                xi = sign * 2j * cmath.sqrt(q * z)
                return cmath.exp((1 - B2) * cmath.log(xi)) * sf.bessel_k(order, xi, fo)
            return u
        return DegenerateSolution("modified-Bessel", "xi = +-2i sqrt(q z), U = xi^(1-B2) T(xi)",
                                  "xi^2 T'' + xi T' - [order^2 + xi^2] T = 0", (order, -order),
                                  {"order_squared": order2, "bessel_order": order},
                                  (mk(1), mk(-1)), terms)
    d = cmath.sqrt((1 - B2) ** 2 - 4 * B3)
    alphas = ((1 - B2 + d) / 2, (1 - B2 - d) / 2)

    def mk(alpha):
        def u(z):
            y = -2j * omega * z
            a = 1j * eta + alpha + B2 / 2
            return cmath.exp(-y / 2 + alpha * cmath.log(y)) * sf.psi_u(a, 2 * alpha + B2, y, fo)
        return u
    return DegenerateSolution("confluent-hypergeometric", "y = -2i omega z, U = exp(-y/2) y^alpha f(y)",
                              "y f'' + [(2 alpha + B2) - y] f' - (i eta + alpha + B2/2) f = 0",
                              alphas, {"a": 1j * eta + alphas[0] + B2 / 2, "b": 2 * alphas[0] + B2},
                              tuple(mk(a) for a in alphas), terms)
