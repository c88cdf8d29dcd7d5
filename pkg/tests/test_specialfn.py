import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from inceheun import specialfn as sf
from inceheun.errors import BranchError, InvalidParams, PoleError, UndefinedF


def rel(a, b):
    return abs(a - b) / abs(b)


def test_gamma_values():
    assert abs(sf.gamma(1) - 1) < 1e-13
    assert rel(sf.gamma(0.5), math.sqrt(math.pi)) < 1e-14
    z = 2 + 3j
    # duplication formula
    lhs = sf.gamma(z) * sf.gamma(z + 0.5)
    rhs = 2 ** (1 - 2 * z) * math.sqrt(math.pi) * sf.gamma(2 * z)
    assert rel(lhs, rhs) < 1e-13
    assert rel(sf.gamma(z), complex(mp.gamma(z))) < 1e-13


def test_gamma_reflection_region():
    z = -2.3 + 0.4j
    assert rel(sf.gamma(z), complex(mp.gamma(z))) < 1e-13
    assert rel(cmath.exp(sf.lgamma(z)), complex(mp.gamma(z))) < 1e-13


def test_gamma_poles():
    for n in (0, -1, -7):
        with pytest.raises(PoleError):
            sf.gamma(n)
        assert sf.rgamma(n) == 0


def test_gauss_f_at_origin():
    assert sf.gauss_f(0.3 + 1j, -2.2, 1.7, 0) == 1


def test_gauss_f_trig_identities():
    th, a = 0.3, 1.7
    y = math.sin(th) ** 2
    assert rel(sf.gauss_f(-a, a, 0.5, y), math.cos(2 * a * th)) < 1e-13
    want = math.sin((2 * a - 1) * th) / ((2 * a - 1) * math.sin(th))
    assert rel(sf.gauss_f(a, 1 - a, 1.5, y), want) < 1e-13


@pytest.mark.parametrize("y", [0.3 + 0.2j, 0.8 - 0.5j, -3 + 1j, 2 + 2j, 0.5 + 0.8j, -20.0])
def test_gauss_f_against_mpmath(y):
    a, b, c = 0.3 + 0.2j, -1.1 + 0.4j, 1.7 - 0.3j
    assert rel(sf.gauss_f(a, b, c, y), complex(mp.hyp2f1(a, b, c, y))) < 1e-11


def test_gauss_f_polynomial_and_guards():
    # terminating series has no cut
    v = sf.gauss_f(-3, 1.5, 0.7, 4.0)
    assert rel(v, complex(mp.hyp2f1(-3, 1.5, 0.7, 4.0))) < 1e-13
    with pytest.raises(UndefinedF):
        sf.gauss_f(0.3, 0.4, -2, 0.2)
    with pytest.raises(BranchError):
        sf.gauss_f(0.3, 0.4, 1.2, 3.0)


def test_psi_closed_form():
    a = 0.4 + 0.7j
    for y in (0.3, 2 + 1j, -1 + 0.5j, 30j):
        assert rel(sf.psi_u(a, a + 1, y), y ** (-a)) < 1e-12


def _e1_cf(y, depth=400):
    # E1(y) = e^{-y} / (y + 1/(1 + 1/(y + 2/(1 + 2/(y + ...)))))
    t = 0j
    for k in range(depth, 0, -1):
        t = k / (1 + k / (y + t))
    return cmath.exp(-y) / (y + t)


def test_psi_exponential_integral():
    for y in (3 + 2j, 1.5, 8 - 4j):
        assert rel(sf.psi_u(1, 1, y), cmath.exp(y) * _e1_cf(y)) < 1e-12
        assert rel(sf.psi_u(1, 1, y), complex(mp.exp(y) * mp.e1(y))) < 1e-12


def test_psi_large_argument():
    a, b = 0.3 + 1j, 1.7
    for ph in (0.0, 1.0, 2.0):
        y = 1000 * cmath.exp(1j * ph)
        assert abs(sf.psi_u(a, b, y) * y ** a - 1) < 5e-3
        assert rel(sf.psi_u(a, b, y), complex(mp.hyperu(a, b, y))) < 1e-11


def test_psi_branch_selection():
    a, b = 0.3, 1.7
    below = sf.psi_u(a, b, -5 + 0j, arg=-math.pi)
    assert rel(below, complex(mp.hyperu(a, b, mp.mpc(-5, -1e-30)))) < 1e-11
    with pytest.raises(BranchError):
        sf.psi_u(a, b, 1 + 0j, arg=2.0)
    with pytest.raises(BranchError):
        sf.psi_u(a, b, 1 + 0j, arg=5.0)


def test_bessel_half_order():
    for xi in (0.5, 2 + 1j, 10 - 3j, 0.1j + 0.2):
        want = cmath.sqrt(math.pi / (2 * xi)) * cmath.exp(-xi)
        assert rel(sf.bessel_k(0.5, xi), want) < 1e-12


def test_bessel_against_mpmath():
    for lam, xi in [(0.3 + 0.2j, 2 + 1j), (3.7, 0.4 - 0.2j), (1.2 - 0.5j, 15 + 4j)]:
        assert rel(sf.bessel_k(lam, xi), complex(mp.besselk(lam, xi))) < 1e-11


def test_bessel_reflection_example():
    lam, xi = 0.3 + 0.2j, 2 + 1j
    assert rel(sf.bessel_k(lam, xi), sf.bessel_k(-lam, xi)) < 1e-11


def test_bessel_large_argument():
    lam = 0.3 + 0.2j
    xi = 500 * cmath.exp(0.4j)
    lead = cmath.sqrt(math.pi / (2 * xi)) * cmath.exp(-xi)
    assert abs(sf.bessel_k(lam, xi) / lead - 1) < 1e-3


def _deriv(f, x, h=1e-3):
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h) - 2 * f(x) + f(x - h)) / h ** 2
    return d1, d2


def test_bessel_difference_differential_relations():
    rng = np.random.default_rng(3)
    for _ in range(10):
        lam = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
        xi = complex(rng.uniform(0.5, 4), rng.uniform(-2, 2))
        K = lambda x, l=lam: sf.bessel_k(l, x)
        d1, d2 = _deriv(K, xi)
        k0, kp, km = K(xi), sf.bessel_k(lam + 2, xi), sf.bessel_k(lam - 2, xi)
        r1 = abs(4 * d2 - (kp + 2 * k0 + km)) / (abs(kp) + 2 * abs(k0) + abs(km))
        rhs = -(4 * lam / xi ** 2) * k0 + (2 / (lam - 1)) * (km - k0)
        r2 = abs(4 / xi * d1 - rhs) / (abs(4 * lam / xi ** 2 * k0) + abs(2 / (lam - 1) * (km - k0)))
        assert r1 < 1e-6 and r2 < 1e-6


def test_confluence_examples():
    d3 = sf.limit_identity_check(1e3, 2, 1)
    d4 = sf.limit_identity_check(1e4, 2, 1)
    assert d3 < 1e-2
    assert 7 < d3 / d4 < 13


def test_confluence_rejects_origin_and_small_a():
    with pytest.raises(InvalidParams):
        sf.limit_identity_check(1e3, 2, 0)
    with pytest.raises(InvalidParams):
        sf.limit_identity_check(10, 2, 1)


def test_sequences_match_pointwise():
    xi = 2j * cmath.sqrt(0.7 * 1.5)
    m, e = sf.bessel_k_sequence(1.6, 2, -10, 10, xi)
    vals = sf.unscale(m, e)
    for i, n in enumerate(range(-10, 11)):
        assert rel(vals[i], sf.bessel_k(1.6 + 2 * n, xi)) < 1e-11
    s, c, y = 1.3 + 0.1j, 1.7, 0.6 - 0.3j
    m, e = sf.jacobi_sequence(0.25, s, c, -8, 8, y)
    vals = sf.unscale(m, e)
    for i, n in enumerate(range(-8, 9)):
        M = 0.25 + n
        assert rel(vals[i], complex(mp.hyp2f1(-M, M + s, c, y))) < 1e-10


def test_options_validated():
    with pytest.raises(InvalidParams):
        sf.FnEvalOptions(tol=2.0)
    with pytest.raises(InvalidParams):
        sf.FnEvalOptions(branch="other")
