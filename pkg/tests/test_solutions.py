import cmath

import numpy as np
import pytest

from inceheun import recurrence as R
from inceheun import solutions as S
from inceheun import verify as V
from inceheun.equations import InceGsweParams
from inceheun.errors import ApplicabilityError, InvalidParams, OutsideDomain, SingularEvaluation


@pytest.fixture(scope="module")
def ig_pair(pg):
    return S.build_pair(R.IG_NU1, pg)


def test_infinity_basis_and_prefactor(ig_pair, pg):
    _, inf = ig_pair
    d = inf.describe()
    assert d["basis"]["function"] == "bessel_k"
    assert d["basis"]["order0"] == pytest.approx(2 * inf.nu + 1)
    assert d["prefactor"]["z_power"] == pytest.approx((1 - pg.B2) / 2)
    assert d["domain"] == "abs(z)>abs(z0)"
    z = 2.3 + 0.7j
    xi = 2j * cmath.sqrt(pg.q * z)
    w = inf.provider.get(40)
    from inceheun.specialfn import bessel_k
    direct = z ** ((1 - pg.B2) / 2) * sum(w.value(n) * bessel_k(2 * n + 2 * inf.nu + 1, xi)
                                          for n in range(-40, 41))
    assert abs(inf(z) - direct) / abs(direct) < 1e-12


def test_ince_dche_second_pair_zero_layout(pd):
    z, _ = S.build_pair(R.ID_NU2, pd)
    d = z.describe()
    nu = z.nu
    assert d["prefactor"]["exp_inv_z"] == pytest.approx(pd.B1)
    assert d["prefactor"]["z_power"] == pytest.approx(-nu - pd.B2 / 2)
    assert d["basis"]["function"] == "psi_u"
    assert d["basis"]["a0"] == pytest.approx(nu + 2 - pd.B2 / 2)
    assert d["basis"]["b0"] == pytest.approx(2 * nu + 2)
    assert d["basis"]["cy"] == pytest.approx(-pd.B1)


def test_truncated_nu_values(pg):
    h, r = pg.B2 / 2, pg.B1 / pg.z0
    want = {"InceGswe-T1": h - 1, "InceGswe-T2": h + r, "InceGswe-T3": 1 - h, "InceGswe-T4": -h - r}
    for fid, nu in want.items():
        assert S.build_solution(fid, "zero", pg).nu == pytest.approx(nu)


def test_applicability_with_sibling():
    p = InceGsweParams(B1=0.3, B2=-1.0, B3=0.2, z0=1.0, q=0.5)
    with pytest.raises(ApplicabilityError) as e:
        S.build_solution("InceGswe-T1", "zero", p)
    assert e.value.sibling == "InceGswe-T3"
    # B2 + B1/z0 = -2 blocks the first zero-side pair
    p = InceGsweParams(B1=-3.3, B2=1.3, B3=0.2, z0=1.0, q=0.5)
    with pytest.raises(ApplicabilityError) as e:
        S.build_solution(R.IG_NU1, "zero", p)
    assert e.value.sibling == R.IG_NU2


def test_outside_domain(ig_pair, pg):
    _, inf = ig_pair
    with pytest.raises(OutsideDomain):
        inf(0.5 * pg.z0)
    zero, _ = ig_pair
    with pytest.raises(SingularEvaluation):
        zero(pg.z0)


def test_both_members_at_twice_z0(ig_pair, pg):
    z = 2 * pg.z0 * cmath.exp(0.6j)
    grid = [z, z * cmath.exp(0.3j), 2.2 * pg.z0 * cmath.exp(-1.1j)]
    for s in ig_pair:
        assert V.ode_residual(pg, s, grid).max < 1e-8


def test_pair_shares_window(ig_pair):
    a, b = ig_pair
    assert a.provider is b.provider
    assert np.array_equal(a.window.values, b.window.values)
    assert a.window.recurrence_residual() < 1e-12


def test_error_estimate(ig_pair):
    zero, _ = ig_pair
    v, err = S.eval_solution(zero, 0.4 + 0.3j)
    assert 0 < err < 1e-13
    lv, err2, cond = S.log_eval(zero, 0.4 + 0.3j)
    assert abs(cmath.exp(lv) - v) / abs(v) < 1e-14 and cond >= 1


def test_build_arguments_checked(pg):
    with pytest.raises(InvalidParams):
        S.build_solution(R.IG_NU1, "middle", pg)
    with pytest.raises(InvalidParams):
        S.build_solution(R.IG_NU1, "zero", pg, sqrt_sign=2)


def test_sqrt_sign_members(pg):
    for s in (1, -1):
        _, inf = S.build_pair(R.IG_NU1, pg, sqrt_sign=s)
        assert V.solution_residual(inf, 16).max < 1e-8


def test_dche_second_pair_alternates(pc):
    a, b = S.build_pair(R.DC_B2, pc, pair=2)
    assert a.alternate and b.alternate
    assert V.solution_residual(b, 16).max < 1e-8


def test_quasi_polynomial_solution():
    N = 3
    p = InceGsweParams(B1=-(N + 0.3), B2=1.3, B3=0.3, z0=1.0, q=0.7)
    inf = S.build_solution("InceGswe-T1", "infinity", p)
    assert inf.terminate == N
    assert V.solution_residual(inf, 32).max < 1e-11
    # the Gauss parameter c = 1 - N on the zero side leaves only the sibling
    with pytest.raises(ApplicabilityError):
        S.build_solution("InceGswe-T1", "zero", p)


def test_asymptotic_check_rejects_zero_side(ig_pair):
    with pytest.raises(InvalidParams):
        S.asymptotic_check(ig_pair[0], [10, 20])


def test_asymptotic_ratio_converges(ig_pair, pg):
    _, inf = ig_pair
    radii = [10 * abs(pg.z0) * 2 ** k for k in range(8)]
    _, drifts = S.asymptotic_check(inf, radii, direction=cmath.exp(0.3j))
    # the first correction is O(z^{-1/2}): drift shrinks by about sqrt(2) per doubling
    assert all(drifts[i + 1] < drifts[i] for i in range(len(drifts) - 1))
    assert 1.2 < drifts[-2] / drifts[-1] < 1.6


def test_thome_correction_vanishes_when_predicted():
    # c1 = (B3 - B2^2/4 + B2/2 - 3/16) / (i s sqrt q) is the 1/sqrt(z) coefficient
    B2 = 1.3
    p = InceGsweParams(B1=0.6 + 0.1j, B2=B2, B3=B2 ** 2 / 4 - B2 / 2 + 3 / 16, z0=1.0, q=0.8)
    _, inf = S.build_pair(R.IG_NU1, p)
    _, drifts = S.asymptotic_check(inf, [1e3 * abs(p.z0), 1e4 * abs(p.z0)], direction=cmath.exp(0.3j))
    assert drifts[-1] < 1e-3


def test_leaver_limit(pg):
    devs = S.leaver_limit_consistency(pg, 0.5 + 0.2j)
    assert devs[0] > devs[1] > devs[2]
    assert devs[-1] < 1e-3


def test_exponential_limit():
    gaps = [S.exponential_limit(0.7, 0.5 + 0.2j, z0) for z0 in (1e-2, 1e-3, 1e-4)]
    assert gaps[0] > gaps[1] > gaps[2] and gaps[2] < 1e-3


def test_mathieu_reduction_matches_trig_series():
    from inceheun import mathieu as M
    sol = M.mathieu_solution("nu-even", 1.0, nu=0.17)
    for u in (0.4 + 0.1j, 1.1 - 0.2j):
        assert M.lindemann_gap(sol, u) < 1e-10


def test_n_hint_does_not_change_values(pd):
    z, _ = S.build_pair(R.ID_NU1, pd)
    pts = [0.3 + 0.1j, 2.0 - 1j, 0.5j]
    first = [z(w) for w in pts]
    again = [z(w) for w in reversed(pts)][::-1]
    for a, b in zip(first, again):
        assert abs(a - b) <= 1e-14 * abs(a)
