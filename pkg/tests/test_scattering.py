import numpy as np
import pytest

from inceheun import recurrence as R
from inceheun import scattering as S
from inceheun.errors import ChargedTargetUnsupported, DegeneratePotential, InvalidParams, InvalidPotential

POT6 = S.PotentialParams(alpha1p=1.0, alpha2p=0.5, beta1p=0.0, E=0.5, l=0)
POT4 = S.PotentialParams(alpha1p=1.0, Z=1, zprime=0, E=0.5, l=1)


@pytest.fixture(scope="module")
def pairs6():
    return S.radial_pairs(S.map_inverse6(POT6))


@pytest.fixture(scope="module")
def pairs4():
    return S.radial_pairs(S.map_inverse4(POT4))


def test_inverse6_map():
    m = S.map_inverse6(POT6)
    p = m.params
    assert p.q == pytest.approx(POT6.k ** 2 / 4) and p.q == pytest.approx(POT6.E / 2)
    # 6 b1 - a2 < 0: B1 = iC and B2 = 2 + i a1 / (2C)
    C = p.B1.imag
    assert p.B1.real == 0 and C > 0
    assert p.B2 == pytest.approx(2 + 1j * POT6.alpha1p / (2 * C))
    assert p.B3 == pytest.approx((p.B2 / 2 - 0.25) * (p.B2 / 2 - 0.75))
    assert m.zpow == 2 and m.einv == -p.B1 / 2 and m.power == p.B2 - 1.5


def test_inverse6_guards():
    with pytest.raises(ChargedTargetUnsupported):
        S.map_inverse6(S.PotentialParams(alpha1p=1.0, alpha2p=0.5, Z=1))
    with pytest.raises(DegeneratePotential):
        S.map_inverse6(S.PotentialParams(alpha1p=1.0, alpha2p=0.6, beta1p=0.1))


def test_inverse4_map():
    p = S.map_inverse4(POT4).params
    assert p.B2 == 2 and p.B3 == -2
    assert p.omega == pytest.approx(POT4.k) and p.eta == pytest.approx(1 / POT4.k)
    assert p.B1 ** 2 == pytest.approx(-4 * POT4.alpha1p)
    neutral = S.map_inverse4(S.PotentialParams(alpha1p=1.0, E=0.5, l=0)).params
    assert neutral.eta == 0 and neutral.B3 == 0
    assert S.map_inverse4(POT4, omega_sign=-1).params.omega == pytest.approx(-POT4.k)
    with pytest.raises(InvalidPotential):
        S.map_inverse4(POT6)


def test_potential_validation():
    with pytest.raises(InvalidParams):
        S.PotentialParams(alpha1p=1.0, E=-1)
    with pytest.raises(InvalidParams):
        S.PotentialParams(alpha1p=1.0, l=-1)


def test_nu_root(pairs6):
    s = pairs6[(1, "zero")].series
    prob = R.CharacteristicProblem(s.family_id, s.params)
    assert abs(prob(s.nu)) < 1e-10


def test_inverse6_bessel_argument(pairs6):
    s = pairs6[(1, "infinity")].series
    r = 2.5
    xi = s.basis.argument(r * r)
    assert xi == pytest.approx(1j * POT6.k * r)


def test_inverse4_pairs_share_coefficients(pairs4):
    a, b = pairs4[(1, "zero")].series, pairs4[(2, "zero")].series
    assert a.nu == b.nu
    w1, w2 = a.provider.get(32), b.provider.get(32)
    assert np.allclose(w1.values, w2.values, rtol=0, atol=1e-15)


@pytest.mark.parametrize("key", [(1, "zero"), (1, "infinity"), (2, "zero"), (2, "infinity")])
def test_radial_residuals(pairs6, pairs4, key):
    assert S.radial_residual(pairs6[key]).max < 1e-8
    assert S.radial_residual(pairs4[key]).max < 1e-8


def test_origin_sqrt_scaling(pairs6):
    rep = S.boundary_report(pairs6[(1, "zero")])
    assert rep.expected == "|R| ~ sqrt(r)"
    assert rep.stationary and rep.drift < 1e-3


def test_infinity_bounded(pairs6):
    rep = S.boundary_report(pairs6[(1, "infinity")])
    assert rep.stationary and max(rep.values) < 10 * min(rep.values)


def test_inverse4_origin(pairs4):
    rep = S.boundary_report(pairs4[(1, "zero")])
    assert rep.expected == "|R| ~ 1" and rep.stationary


def test_inverse4_coulomb_tail(pairs4):
    rep = S.boundary_report(pairs4[(1, "infinity")])
    assert rep.stationary
    # the next term of the expansion is O(1/r): drift halves as r doubles
    d = [abs(rep.values[i + 1] / rep.values[i] - 1) for i in range(len(rep.values) - 1)]
    assert 1.6 < d[-2] / d[-1] < 2.4


def test_companion_connection_is_consistent(pairs6):
    s = pairs6[(1, "infinity")]
    c1, c2, rm = s.connection()
    r = 0.8 * rm
    plain = s._plain(r)
    assert abs(s(r) - plain) < 1e-8 * abs(plain) or s.log_value(r)[1] > S.COND_LIMIT


def test_real_b1_branch():
    pot = S.PotentialParams(alpha1p=1.0, alpha2p=-0.5, E=0.5, l=0)
    pr = S.radial_pairs(S.map_inverse6(pot))
    for key, s in pr.items():
        assert S.radial_residual(s).max < 1e-8, key
