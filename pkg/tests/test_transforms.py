import cmath

import pytest

from inceheun import solutions as S
from inceheun import transforms as T
from inceheun import verify as V
from inceheun.equations import DcheParams, InceDcheParams, InceGsweParams
from inceheun.errors import InvalidParams, NotDegenerate, RuleInapplicable

# dyadic values keep the parameter maps exact in floating point
PG = InceGsweParams(B1=0.375 + 0.125j, B2=1.25, B3=0.5, z0=1.0, q=0.75)
PD = InceDcheParams(B1=0.75, B2=1.25 - 0.25j, B3=0.375, q=0.75)


def test_t1_parameter_map():
    r = T.apply_rule("T1", PG)
    assert r.params.B1 == -PG.B1 - 2 * PG.z0
    assert r.params.B2 == 2 + PG.B2 + 2 * PG.B1 / PG.z0
    assert r.prefactor.pz == 1 + PG.B1 / PG.z0


def test_t3_argument_map():
    r = T.apply_rule("T3", PG)
    assert r.argument == "z0-z"
    assert r.params.q == -PG.q and r.params.B3 == PG.B3 - PG.q * PG.z0
    assert r.arg(0.25) == PG.z0 - 0.25


@pytest.mark.parametrize("rule,p", [("T1", PG), ("T2", PG), ("T3", PG), ("tau", PD)])
def test_involutions_exact(rule, p):
    assert T.apply_rule(rule, T.apply_rule(rule, p).params).params == p


def test_rule_preconditions():
    with pytest.raises(RuleInapplicable):
        T.apply_rule("tau", PG)
    with pytest.raises(RuleInapplicable):
        T.apply_rule("T1", PD)
    with pytest.raises(RuleInapplicable):
        T.apply_rule("T7", PG)


def _lift_residual(rule, p, fam, variant):
    res = T.apply_rule(rule, p)
    v = S.build_solution(fam, variant, res.params)
    u = res.apply(v)
    grid = V.sample_grid(v, 16)
    if res.argument == "z0-z":
        grid = p.z0 - grid
    z0 = getattr(p, "z0", None)

    def scale(z):
        s = [V.local_scale(v, res.arg(z)), V._cut_dist(complex(z))]
        if z0 is not None:
            s.append(V._cut_dist(complex(z) - z0))
        return min(s)
    return V.ode_residual(p, u, grid, scale=scale).max


@pytest.mark.parametrize("rule,p,fam", [("T1", PG, "InceGswe-nu-1"), ("T2", PG, "InceGswe-nu-1"),
                                         ("T3", PG, "InceGswe-nu-1"), ("tau", PD, "InceDche-nu-1")])
@pytest.mark.parametrize("variant", ["zero", "infinity"])
def test_lifted_solutions_solve_source(rule, p, fam, variant):
    assert _lift_residual(rule, p, fam, variant) < 1e-8


def test_normal_form_coefficients():
    d = DcheParams(B1=0.3, B2=1.4, B3=0.2, eta=0.5, omega=0.9)
    n1 = T.normal_form("N1", d)
    assert n1.coeffs[-4] == pytest.approx(-0.09 / 4)
    n2 = T.normal_form("N2", d)
    assert n2.coeffs[-2] == pytest.approx(4 * (0.2 - 1.96 / 4 + 0.7 - 3 / 16))
    n3 = T.normal_form("N3", d, n3_scale=1j)
    assert n3.coeffs[0] == pytest.approx((1j) ** 2 * (0.2 - ((1 - 1.4) / 2) ** 2))
    with pytest.raises(InvalidParams):
        T.normal_form("N4", d)
    with pytest.raises(InvalidParams):
        T.normal_form("N3", d, n3_scale=0)


def test_normal_form_ince_limit():
    n1 = T.normal_form("N1", PD)
    assert n1.coeffs[0] == 0 and n1.coeffs[-1] == PD.q


@pytest.mark.parametrize("which,lam", [("N1", 1), ("N2", 1), ("N3", 1), ("N3", 1j)])
def test_normal_form_solves_and_round_trips(pd, which, lam):
    u = S.build_solution("InceDche-nu-1", "zero", pd)
    nf = T.normal_form(which, pd, n3_scale=lam)
    g = nf.from_u(u)
    xs = [nf.x_of(z) for z in (0.5 + 0.3j, 0.9 - 0.2j, 0.35 + 0.6j)]
    terms = lambda x: (1.0, 0.0, nf.potential(x))
    scale = lambda x: 0.1 * min(abs(nf.z_of(x)), 1.0) / max(abs(nf.z_of(x)) ** 0.5, 1)
    assert V.ode_residual(terms, g, xs, scale=scale).max < 1e-8
    back = nf.to_u(g)
    for z in (0.5 + 0.3j, 0.9 - 0.2j):
        assert abs(back(z) - u(z)) / abs(u(z)) < 1e-11


def test_degenerate_bessel_order():
    B2, B3 = 1.3, 0.2
    d = T.degenerate_reduce("ince_dche", {"B1": 0, "B2": B2, "B3": B3, "q": 0.7})
    assert d.case == "modified-Bessel"
    assert d.data["order_squared"] == (1 - B2) ** 2 - 4 * B3


def test_degenerate_double_root():
    d = T.degenerate_reduce("dche", {"B1": 0, "B2": 1, "B3": 0, "eta": 0.3, "omega": 0.8})
    assert d.exponents == (0, 0)


def test_degenerate_constant_coefficients():
    d = T.degenerate_reduce("ince_dche", {"B1": 0, "B2": 1.3, "B3": 0.2, "q": 0})
    assert d.case == "constant-coefficients" and "exp(y)" in d.substitution


def test_not_degenerate():
    with pytest.raises(NotDegenerate):
        T.degenerate_reduce("dche", {"B1": 0.4, "B2": 1, "B3": 0, "eta": 0.3, "omega": 0.8})
    with pytest.raises(InvalidParams):
        T.degenerate_reduce("gswe", {})


DEGENERATE = [
    ("ince_dche", {"B1": 0, "B2": 1.3, "B3": 0.2, "q": 0.7}),
    ("ince_dche", {"B1": 0.6, "B2": 1.3, "B3": 0.2, "q": 0}),
    ("ince_dche", {"B1": 0, "B2": 1.3, "B3": 0.2, "q": 0}),
    ("dche", {"B1": 0, "B2": 1.3 + 0.1j, "B3": 0.2, "eta": 0.3, "omega": 0.8}),
    ("dche", {"B1": 0.5, "B2": 1.3, "B3": 0.2, "eta": 0, "omega": 0}),
]


@pytest.mark.parametrize("kind,vals", DEGENERATE)
def test_degenerate_solutions_satisfy_equation(kind, vals):
    d = T.degenerate_reduce(kind, vals)
    grid = [0.7 * cmath.exp(1j * t) for t in (0.3, 1.1, -0.8, 2.0)]
    for k in range(2):
        r = V.ode_residual(d.terms, lambda z, k=k: d(z, k), grid, scale=lambda z: 0.3 * abs(z))
        assert r.max < 1e-9
