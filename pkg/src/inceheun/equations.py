"""Parameter records for the four equations and their local data.

All equations are kept in the form

    P2(z) U'' + (B1 + B2 z) U' + P0(z) U = 0

with P2 = z (z - z0) for the GSWE family and P2 = z**2 for the DCHE family.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, fields, replace
from typing import Callable, Union

from .errors import InvalidEndpoint, InvalidParams, SingularEvaluation
from .options import TAU_ZERO


def _cx(v, name):
    try:
        c = complex(v)
    except (TypeError, ValueError):
        raise InvalidParams(f"{name} must be a number") from None
    if not (cmath.isfinite(c)):
        raise InvalidParams(f"{name} must be finite")
    return c


def _nonzero(v, name):
    if abs(v) <= TAU_ZERO:
        raise InvalidParams(f"{name} must be non-zero")


class _Params:
    kind = ""

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _cx(getattr(self, f.name), f.name))
        self._check()

    def _check(self):
        pass

    def replace(self, **kw):
        return replace(self, **kw)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def z0_value(self) -> complex:
        return getattr(self, "z0", 0j)


@dataclass(frozen=True)
class GsweParams(_Params):
    B1: complex
    B2: complex
    B3: complex
    z0: complex
    eta: complex
    omega: complex
    kind = "gswe"

    def _check(self):
        _nonzero(self.z0, "z0")
        _nonzero(self.omega, "omega")


@dataclass(frozen=True)
class InceGsweParams(_Params):
    B1: complex
    B2: complex
    B3: complex
    z0: complex
    q: complex
    kind = "ince_gswe"

    def _check(self):
        _nonzero(self.z0, "z0")
        _nonzero(self.q, "q")


@dataclass(frozen=True)
class DcheParams(_Params):
    B1: complex
    B2: complex
    B3: complex
    eta: complex
    omega: complex
    kind = "dche"

    def _check(self):
        _nonzero(self.B1, "B1")
        _nonzero(self.omega, "omega")


@dataclass(frozen=True)
class InceDcheParams(_Params):
    B1: complex
    B2: complex
    B3: complex
    q: complex
    kind = "ince_dche"

    def _check(self):
        _nonzero(self.B1, "B1")
        _nonzero(self.q, "q")


EquationParams = Union[GsweParams, InceGsweParams, DcheParams, InceDcheParams]

KINDS = {
    "gswe": GsweParams,
    "ince_gswe": InceGsweParams,
    "dche": DcheParams,
    "ince_dche": InceDcheParams,
}


def make_params(kind: str, **values) -> EquationParams:
    try:
        cls = KINDS[kind]
    except KeyError:
        raise InvalidParams(f"unknown equation kind {kind!r}") from None
    names = [f.name for f in fields(cls)]
    missing = [n for n in names if n not in values]
    extra = [n for n in values if n not in names]
    if missing or extra:
        raise InvalidParams(f"{kind} needs exactly {names}")
    return cls(**values)


def is_gswe_type(params) -> bool:
    return params.kind in ("gswe", "ince_gswe")


def singular_points(params) -> list[complex]:
    return [0j, params.z0] if is_gswe_type(params) else [0j]


def ode_terms(params, z) -> tuple[complex, complex, complex]:
    """(P2, P1, P0) of the native equation at z (no singularity check)."""
    z = complex(z)
    p = params
    P1 = p.B1 + p.B2 * z
    k = p.kind
    if k == "gswe":
        P2 = z * (z - p.z0)
        P0 = p.B3 - 2 * p.eta * p.omega * (z - p.z0) + p.omega ** 2 * P2
    elif k == "ince_gswe":
        P2 = z * (z - p.z0)
        P0 = p.B3 + p.q * (z - p.z0)
    elif k == "dche":
        P2 = z * z
        P0 = p.B3 - 2 * p.eta * p.omega * z + p.omega ** 2 * P2
    else:
        P2 = z * z
        P0 = p.B3 + p.q * z
    return P2, P1, P0


def _scale(params):
    return max(1.0, abs(params.z0_value))


def _guard(params, z):
    s = _scale(params)
    for zs in singular_points(params):
        if abs(z - zs) <= TAU_ZERO * s:
            raise SingularEvaluation(f"z = {z} is a singular point")


def ode_coefficients(params) -> tuple[Callable, Callable]:
    """Evaluators p(z), q(z) of U'' + p U' + q U = 0."""
    if not isinstance(params, _Params):
        raise InvalidParams("expected an equation parameter record")

    def p_of(z):
        z = complex(z)
        _guard(params, z)
        P2, P1, _ = ode_terms(params, z)
        return P1 / P2

    def q_of(z):
        z = complex(z)
        _guard(params, z)
        P2, _, P0 = ode_terms(params, z)
        return P0 / P2

    return p_of, q_of


@dataclass(frozen=True)
class AsymptoticDescriptor:
    """Local behaviour exp(exp_coeff * g(z)) * w**power near an endpoint.

    ``exp_form`` names g: "none", "z", "sqrt(z)" or "1/z". ``local`` is the
    local variable w: "z", "z-z0" or "z" at infinity.
    """

    kind: str
    power: complex
    exp_coeff: complex = 0j
    exp_form: str = "none"
    local: str = "z"
    z0: complex = 0j

    def __call__(self, z):
        z = complex(z)
        w = z - self.z0 if self.local == "z-z0" else z
        g = {"none": 0j, "z": z, "1/z": 1 / z}.get(self.exp_form)
        if g is None:
            g = cmath.sqrt(z)
        return cmath.exp(self.exp_coeff * g) * w ** self.power


def endpoint_behavior(params, endpoint: str) -> list[AsymptoticDescriptor]:
    p = params
    gs = is_gswe_type(p)
    if endpoint == "zero":
        if gs:
            return [AsymptoticDescriptor("origin-regular", 0j),
                    AsymptoticDescriptor("origin-regular", 1 + p.B1 / p.z0)]
        return [AsymptoticDescriptor("origin-regular", 0j),
                AsymptoticDescriptor("origin-essential", 2 - p.B2, p.B1, "1/z")]
    if endpoint == "z0":
        if not gs:
            raise InvalidEndpoint("z0 endpoint exists only for the GSWE family")
        return [AsymptoticDescriptor("origin-regular", 0j, local="z-z0", z0=p.z0),
                AsymptoticDescriptor("origin-regular", 1 - p.B2 - p.B1 / p.z0, local="z-z0", z0=p.z0)]
    if endpoint == "infinity":
        if p.kind in ("ince_gswe", "ince_dche"):
            c = 2j * cmath.sqrt(p.q)
            pw = 0.25 - p.B2 / 2
            return [AsymptoticDescriptor("subnormal-Thomé", pw, c, "sqrt(z)"),
                    AsymptoticDescriptor("subnormal-Thomé", pw, -c, "sqrt(z)")]
        return [AsymptoticDescriptor("normal-Thomé", -1j * p.eta - p.B2 / 2, 1j * p.omega, "z"),
                AsymptoticDescriptor("normal-Thomé", 1j * p.eta - p.B2 / 2, -1j * p.omega, "z")]
    raise InvalidEndpoint(f"unknown endpoint {endpoint!r}")


def ince_limit(params: GsweParams | DcheParams, q=None):
    """Ince counterpart with q = -2 eta omega (omega -> 0, eta omega fixed)."""
    qq = -2 * params.eta * params.omega if q is None else complex(q)
    if params.kind == "gswe":
        return InceGsweParams(params.B1, params.B2, params.B3, params.z0, qq)
    if params.kind == "dche":
        return InceDcheParams(params.B1, params.B2, params.B3, qq)
    raise InvalidParams("Ince limit needs GSWE or DCHE parameters")


def leaver_limit(params: InceGsweParams) -> InceDcheParams:
    """Ince-DCHE obtained when z0 -> 0 with B1, B2, B3, q fixed."""
    if params.kind != "ince_gswe":
        raise InvalidParams("Leaver limit needs Ince-GSWE parameters")
    return InceDcheParams(params.B1, params.B2, params.B3, params.q)
