import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from hkfam._series import PoleError
from hkfam.specfun import (EULER_GAMMA, bessel_j, bessel_k0, gamma, harmonic, hyp0f2,
                           hyp1f1, hyp1f1_eps_derivative, recip_gamma)

SQRT_PI = 1.7724538509055159


def test_gamma_values():
    assert gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-15)
    assert gamma(4.0) == 6.0
    assert gamma(-0.5) == pytest.approx(-3.5449077018110318, rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -3.0])
def test_gamma_poles_raise(x):
    with pytest.raises(PoleError):
        gamma(x)


def test_recip_gamma_values():
    assert recip_gamma(0.0) == 0.0
    assert recip_gamma(-3.0) == 0.0
    assert recip_gamma(1.0) == 1.0


@given(st.floats(min_value=-20, max_value=20).filter(lambda x: abs(x - round(x)) > 1e-3))
def test_recip_gamma_is_reciprocal(x):
    assert recip_gamma(x) * gamma(x) == pytest.approx(1.0, rel=1e-13)


def test_harmonic_values():
    assert harmonic(3) == pytest.approx(11.0 / 6.0, rel=1e-16)
    assert harmonic(0) == 0.0
    assert harmonic(0.5) == pytest.approx(2.0 - 2.0 * math.log(2.0), rel=1e-15)


@given(st.floats(min_value=-0.9, max_value=30))
def test_harmonic_recurrence(z):
    assert harmonic(z + 1) - harmonic(z) == pytest.approx(1.0 / (z + 1), rel=1e-10, abs=1e-12)


def test_bessel_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_k0(1.0) == pytest.approx(0.42102443824070834, rel=1e-15)


def test_j1_integrates_to_one():
    # panel sum between zeros of J1 with the tail accelerated
    from hkfam.hankel import j1_zero, oscillatory_integral
    r = oscillatory_integral(lambda u: bessel_j(1, u), j1_zero)
    assert r.value == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("x", [1e-4, 0.3, 1.0, 4.0, 9.99, 10.0, 10.01, 25.0, 80.0, 200.0])
def test_k0_absolute_accuracy_both_branches(x):
    assert abs(bessel_k0(x) - float(mp.besselk(0, x))) < 1e-10


@pytest.mark.parametrize("x", [1e-4, 0.3, 1.0, 2.0, 10.0, 25.0, 80.0])
def test_k0_relative_accuracy_away_from_switch(x):
    assert bessel_k0(x) == pytest.approx(float(mp.besselk(0, x)), rel=1e-12)


def test_hyp1f1_examples():
    assert hyp1f1(0, 2, -5.0) == 1.0
    assert hyp1f1(-1, 2, -2.0) == 2.0
    assert hyp1f1(0.5, 2, 0.0) == 1.0


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-6, max_value=6), st.sampled_from([0.5, 1.0, 1.5, 2.0, 3.0]),
       st.floats(min_value=-200, max_value=40))
def test_hyp1f1_against_mpmath(a, b, x):
    ref = float(mp.hyp1f1(a, b, x))
    assert hyp1f1(a, b, x) == pytest.approx(ref, rel=1e-9, abs=1e-12 * max(1.0, abs(ref)))


def test_hyp1f1_kummer_side_matches_direct_side():
    # x = -30 is where the Kummer transformation takes over
    ref = float(mp.hyp1f1(0.5, 2, -30.0))
    assert hyp1f1(0.5, 2, -30.0 + 1e-12) == pytest.approx(ref, rel=1e-12)
    assert hyp1f1(0.5, 2, -30.0 - 1e-12) == pytest.approx(ref, rel=1e-12)


def test_eps_derivative_examples():
    assert hyp1f1_eps_derivative(1, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert hyp1f1_eps_derivative(2, 0.0) == pytest.approx(-1.0, rel=1e-15)


def _eps_fd(n, x, h=1e-5):
    def f(e):
        return mp.exp(-mp.euler * e) / mp.gamma(n + e) * mp.hyp1f1(1 - n - e, 2, x)
    with mp.workdps(40):
        return float((f(h) - f(-h)) / (2 * h))


@pytest.mark.parametrize("n,x", [(1, -1.0), (1, 2.0), (2, -0.5), (3, 4.0), (4, -12.0),
                                 (2, -45.0), (5, -80.0), (3, -150.0)])
def test_eps_derivative_against_finite_difference(n, x):
    ref = _eps_fd(n, x)
    assert hyp1f1_eps_derivative(n, x) == pytest.approx(ref, rel=1e-6, abs=1e-9)


def test_eps_derivative_at_zero_is_digamma_prefactor():
    for n in range(1, 8):
        psi_n = -EULER_GAMMA + harmonic(n - 1)
        assert hyp1f1_eps_derivative(n, 0.0) == pytest.approx(
            -(EULER_GAMMA + psi_n) / math.gamma(n), rel=1e-14, abs=1e-15)


def test_hyp0f2_examples():
    assert hyp0f2(1.5, 2, 0.0) == 1.0
    assert hyp0f2(0.5, 1.5, 0.0) == 1.0
    terms = [mp.mpf(1) ** k / (mp.factorial(k) * mp.rf(1.5, k) * mp.rf(2, k)) for k in range(200)]
    assert hyp0f2(1.5, 2, 1.0) == pytest.approx(float(mp.fsum(terms)), rel=1e-15)


@given(st.sampled_from([(1.5, 2.0), (0.5, 1.5), (1.0, 1.0), (2.5, 0.5)]),
       st.floats(min_value=-100, max_value=100))
def test_hyp0f2_within_stated_accuracy(b, z):
    ref = float(mp.hyper([], list(b), z))
    assert hyp0f2(b[0], b[1], z) == pytest.approx(ref, rel=1e-9, abs=1e-12)
