import cmath

import numpy as np
import pytest

from inceheun import recurrence as R
from inceheun import solutions as S
from inceheun import transforms as T
from inceheun import verify as V
from inceheun.equations import InceGsweParams
from inceheun.mathieu import mathieu_params


def test_derivatives_of_exponential():
    f = lambda z: cmath.exp(2 * z)
    u, du, d2u = V.derivatives(f, 0.3 + 0.1j, 0.1)
    assert abs(du - 2 * u) < 1e-12 * abs(u)
    assert abs(d2u - 4 * u) < 1e-11 * abs(u)


def test_residual_closed_form():
    d = T.degenerate_reduce("ince_dche", {"B1": 0.6, "B2": 1.3, "B3": 0.2, "q": 0})
    r = V.ode_residual(d.terms, d.solutions[0], [0.5 + 0.2j, 1.2 - 0.4j], scale=lambda z: 0.3 * abs(z))
    assert r.max < 1e-9


def test_residual_negative_control(pg):
    r = V.ode_residual(pg, lambda z: cmath.exp(z) + z ** 3, [0.3 + 0.2j, 2.0 + 1j])
    assert r.max > 1e-2


def test_quasi_polynomial_residual():
    p = InceGsweParams(B1=-2.3, B2=1.3, B3=0.3, z0=1.0, q=0.7)
    sol = S.build_solution("InceGswe-T1", "infinity", p)
    assert V.solution_residual(sol, 16).max < 1e-11


@pytest.fixture(scope="module")
def pair(pg):
    return S.build_pair(R.IG_NU1, pg)


def test_integration_crosscheck(pair):
    zero, _ = pair
    assert V.integration_crosscheck(zero, 0.3 + 0.2j, 0.6 - 0.4j) < 1e-8


def test_integrate_zero_data(pg):
    assert V.integrate_ode(pg, 0.3, 0, 0, 0.6 + 0.2j) == (0, 0)


def test_integrate_around_z0_is_report_only(pg, pair):
    zero, _ = pair
    z = 1.5 + 0j
    u, du, _ = V.derivatives(zero, z, 0.05)
    path = [1 + 0.5j, 0.5, 1 - 0.5j]
    ui, _ = V.integrate_ode(pg, z, u, du, z, path=path)
    assert np.isfinite(ui)


def test_wronskian_independent_and_proportional(pg):
    a = S.build_solution(R.IG_NU1, "zero", pg)
    b = S.build_solution(R.IG_NU2, "zero", pg)
    grid = [0.4 + 0.3j, 0.6 - 0.2j, 0.3 + 0.5j, 1.6 + 0.4j]
    rep = V.wronskian_constancy(pg, a, b, grid)
    assert rep.deviation < 1e-6 and not rep.proportional
    twice = lambda z: 2 * a(z)
    rep = V.wronskian_constancy(pg, a, twice, grid)
    assert rep.proportional


def test_convergence_ratio(pair, pd):
    _, inf = pair
    rep = V.convergence_ratio_check(inf, n=64)
    assert rep.deviation < 0.05 and rep.power == 2
    z, _ = S.build_pair(R.ID_NU1, pd)
    # the Ince-DCHE correction is O(1/n) and needs a longer window for 5 %
    rep = V.convergence_ratio_check(z, n=200)
    assert rep.power == 3 and rep.deviation < 0.05


def test_eigen_oracle_mathieu():
    prob = R.CharacteristicProblem("Mathieu-1", mathieu_params(1.0, 0.0), "B3")
    rep = V.eigen_oracle(prob, count=5)
    assert rep.max_delta < 1e-10 and rep.stability < 1e-10


def test_eigen_oracle_zero_q_ladder():
    q = 1e-10
    prob = R.CharacteristicProblem("Mathieu-1", mathieu_params(q, 0.0), "B3")
    a = 2 * q - 4 * R.eigen_roots(prob, 16)[:4]
    assert np.allclose(a.real, [0, 4, 16, 36], atol=1e-8)


def test_eigen_oracle_nu(pd):
    rep = V.eigen_oracle(R.CharacteristicProblem(R.ID_NU1, pd))
    assert rep.max_delta < 1e-8 and rep.stability < 1e-8


def test_verify_solution_report(pair):
    zero, inf = pair
    rep = V.verify_solution(inf, partner=zero, n=16)
    d = rep.as_dict()
    assert d["ode_residual"]["max"] < 1e-8
    assert d["recurrence_residual"] < 1e-12
    assert rep.integration_gap is None or rep.integration_gap < 1e-8
    assert rep.ratio is not None and rep.ratio.deviation < 0.05


def test_sample_grid_respects_domain(pair, pg):
    _, inf = pair
    g = V.sample_grid(inf, 32)
    assert np.all(np.abs(g) > abs(pg.z0))
