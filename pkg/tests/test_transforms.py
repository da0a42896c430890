import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from hkfam._series import ParameterError
from hkfam.coeffs import ConstantPotential, FamilyIndex, Flat, Table
from hkfam.psiphi import phi_mp, psi_mp
from hkfam.specfun import EULER_GAMMA
from hkfam.transforms import (IntegrandAssembly, TransformCoefficients, derivative_polynomial,
                              f_n, g_n_even, g_n_odd, g_neg_n_even, m_to_zero_limits,
                              verify_late_time_split, verify_theorem_even, verify_theorem_odd)


def test_f_n_examples():
    assert f_n(1, 2.5, 1.3) == pytest.approx(-2.5, rel=1e-15)
    assert f_n(2, 1.0, 1.0) == pytest.approx(1.5, rel=1e-15)
    assert f_n(4, 0.0, 2.0) == 0.0


@given(st.integers(1, 12), st.floats(min_value=0.01, max_value=30), st.floats(min_value=0.1, max_value=5))
def test_f_n_against_exact_sum(n, s, m2):
    exact = mp.fsum((-s) ** k * (-m2) ** (n - k) / (mp.factorial(k) * mp.factorial(k - 1)
                                                   * mp.factorial(n - k)) for k in range(1, n + 1))
    assert f_n(n, s, m2) == pytest.approx(float(exact), rel=1e-12, abs=1e-14)


def test_g_n_odd_examples():
    assert g_n_odd(3, 0.0, 1.0) == 0.0
    assert g_n_odd(1, 1, 1) == pytest.approx(float(mp.pi / mp.gamma(1.5) * mp.hyp1f1(-0.5, 2, -1)), rel=1e-14)
    assert g_n_odd(0, 1, 1) == pytest.approx(float(-mp.pi / mp.gamma(0.5) * mp.hyp1f1(0.5, 2, -1)), rel=1e-14)


@pytest.mark.parametrize("n", [-6, -3, -1, 0, 1, 2, 5])
@pytest.mark.parametrize("s,m2", [(0.4, 1.0), (3.0, 0.5), (20.0, 2.0)])
def test_g_n_odd_against_mpmath(n, s, m2):
    ref = (mp.pi * (-1) ** (n - 1) * mp.mpf(m2) ** (n - mp.mpf(1) / 2) * s
           * mp.rgamma(n + mp.mpf(1) / 2) * mp.hyp1f1(mp.mpf(1) / 2 - n, 2, -s / mp.mpf(m2)))
    assert g_n_odd(n, s, m2) == pytest.approx(float(ref), rel=1e-9, abs=1e-13)


def _g_neg_oracle(n, s, m2):
    """Central difference in e of the bracket, h = 1e-5, at 40 digits."""
    x = -mp.mpf(s) / m2

    def bracket(e):
        return mp.exp(-mp.euler * e) / mp.gamma(n + e) * mp.hyp1f1(1 - n - e, 2, x)
    with mp.workdps(40):
        h = mp.mpf("1e-5")
        dn = (bracket(h) - bracket(-h)) / (2 * h)
        c = -2 * mp.euler - mp.log(mp.mpf(m2) / 2)
        return float(f_n(n, s, m2) * c + (-mp.mpf(m2)) ** (n - 1) * s * dn)


def test_g_neg_n_even_examples():
    assert g_neg_n_even(2, 0.0, 1.0) == 0.0
    assert g_neg_n_even(1, 1, 1) == pytest.approx(_g_neg_oracle(1, 1, 1), rel=1e-8)
    assert g_neg_n_even(2, 0.5, 2) == pytest.approx(_g_neg_oracle(2, 0.5, 2), rel=1e-8)


@pytest.mark.parametrize("n,s,m2", [(3, 2.0, 1.0), (5, 10.0, 0.7), (4, 50.0, 1.5)])
def test_g_neg_n_even_against_oracle(n, s, m2):
    assert g_neg_n_even(n, s, m2) == pytest.approx(_g_neg_oracle(n, s, m2), rel=1e-7)


def test_g_n_even_examples():
    assert g_n_even(0, 1.3, 0.7) == pytest.approx(math.expm1(-1.3 / 0.7), rel=1e-15)
    assert g_n_even(1, 1, 1) == pytest.approx(-math.exp(-1.0), rel=1e-15)
    assert g_n_even(2, 1, 1) == pytest.approx(-math.exp(-1.0), rel=1e-15)


@pytest.mark.parametrize("n", range(0, 7))
def test_g_n_even_against_mpmath_derivative(n):
    s = 1.7
    ref = (-1) ** n * mp.diff(lambda m2: mp.exp(-s / m2) - 1, mp.mpf("0.9"), n)
    assert g_n_even(n, s, 0.9) == pytest.approx(float(ref), rel=1e-12, abs=1e-14)


def test_derivative_polynomial_first_rows():
    assert derivative_polynomial(0) == (1,)
    assert derivative_polynomial(1) == (0, -1)
    assert derivative_polynomial(2) == (0, -2, 1)


def test_m_to_zero_examples():
    f, g = m_to_zero_limits(1, 1.0, "odd")
    assert f == -1.0
    assert g == pytest.approx(math.pi / (math.gamma(1.5) * math.gamma(2.5)), rel=1e-15)
    f, g = m_to_zero_limits(1, 1.0, "even")
    assert f == -1.0
    assert g == pytest.approx(-(math.log(2.0) - 3 * EULER_GAMMA + 1.0), rel=1e-15)
    for parity in ("odd", "even"):
        f, g = m_to_zero_limits(3, 1e-12, parity)
        assert abs(f) < 1e-30 and abs(g) < 1e-20


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("s", [0.1, 1.0, 5.0])
def test_small_mass_approaches_limits(n, s):
    m2 = 1e-6
    # the exact functions differ from their limits by O(m2 n^2 / s)
    tol = max(1e-4, 2.0 * m2 * n * n / s)
    f_odd, g_odd = m_to_zero_limits(n, s, "odd")
    _, g_even = m_to_zero_limits(n, s, "even")
    assert f_n(n, s, m2) == pytest.approx(f_odd, rel=tol)
    assert g_n_odd(n, s, m2) == pytest.approx(g_odd, rel=tol)
    assert g_neg_n_even(n, s, m2) == pytest.approx(g_even, rel=tol)


def test_small_mass_corrections_are_real():
    # at n = 4, s = 0.1 the exact g_n sits 1.6e-4 away from its limit
    n, s, m2 = 4, 0.1, 1e-6
    with mp.workdps(40):
        ref = (mp.pi * (-1) ** (n - 1) * mp.mpf(m2) ** (n - mp.mpf(1) / 2) * s
               * mp.rgamma(n + mp.mpf(1) / 2) * mp.hyp1f1(mp.mpf(1) / 2 - n, 2, -s / mp.mpf(m2)))
    _, g_odd = m_to_zero_limits(n, s, "odd")
    assert g_n_odd(n, s, m2) == pytest.approx(float(ref), rel=1e-12)
    assert float(ref) / g_odd - 1.0 == pytest.approx(1.575e-4, rel=1e-2)


def test_coefficient_validation():
    with pytest.raises(ParameterError):
        TransformCoefficients("odd", 1.0, 2)
    with pytest.raises(ParameterError):
        TransformCoefficients("even", 0.0, 2)
    with pytest.raises(ParameterError):
        IntegrandAssembly(TransformCoefficients("odd", 1.0, 1), Flat(), 0.2, kind="theorem3")


@pytest.mark.parametrize("provider,d", [(Flat(), 1), (ConstantPotential(0.5), 1), (Flat(), 3),
                                        (Table([1.0, 0.4, -0.1]), 3)])
def test_odd_integrand_matches_double_sum_at_small_s(provider, d):
    F = IntegrandAssembly(TransformCoefficients("odd", 2.0, d), provider, 0.3)
    for s in (0.05, 0.5, 2.0):
        assert F(s) == pytest.approx(F.direct(s), rel=1e-9, abs=1e-13)


def _odd_oracle(provider, d, m2, w, s, n_top=90):
    """Brute-force odd integrand at 80 digits with mpmath's own 1F1."""
    with mp.workdps(80):
        s, m2, w = mp.mpf(s), mp.mpf(m2), mp.mpf(w)
        total = mp.mpf(0)
        for n in range(1, n_top):
            fn = mp.fsum((-s) ** k * (-m2) ** (n - k) / (mp.factorial(k) * mp.factorial(k - 1)
                                                         * mp.factorial(n - k)) for k in range(1, n + 1))
            total += fn * psi_mp(provider, FamilyIndex(d - 2 * n), w)
        for n in range(-n_top, n_top):
            ps = psi_mp(provider, FamilyIndex(d - 1 - 2 * n), w)
            if ps == 0:
                continue
            g = (mp.pi * (-1) ** (n - 1) * m2 ** (n - mp.mpf(1) / 2) * s * mp.rgamma(n + mp.mpf(1) / 2)
                 * mp.hyp1f1(mp.mpf(1) / 2 - n, 2, -s / m2))
            total += g * ps
        return float(total * (4 * mp.pi) ** (-mp.mpf(d) / 2))


@pytest.mark.parametrize("s", [5.0, 40.0])
def test_odd_integrand_against_brute_force(s):
    # negative n terms of the g-sum enter here through constant potential
    p = ConstantPotential(0.5)
    F = IntegrandAssembly(TransformCoefficients("odd", 2.0, 1), p, 0.3)
    assert F(s) == pytest.approx(_odd_oracle(p, 1, 2.0, 0.3, s), rel=1e-10, abs=1e-14)


def _even3_oracle(d, m2, w, s, n_top=70):
    """Subtracted even integrand at 60 digits; D_n by mpmath differentiation."""
    p = Flat()
    with mp.workdps(60):
        s, m2, w = mp.mpf(s), mp.mpf(m2), mp.mpf(w)
        c = -2 * mp.euler - mp.log(m2 / 2)
        total = mp.mpf(0)
        for n in range(1, n_top):
            fn = mp.fsum((-s) ** k * (-m2) ** (n - k) / (mp.factorial(k) * mp.factorial(k - 1)
                                                         * mp.factorial(n - k)) for k in range(1, n + 1))
            total += fn * phi_mp(p, d // 2 - n, w)
            ps = psi_mp(p, d // 2 - n, w)
            dn = mp.diff(lambda e: mp.exp(-mp.euler * e) / mp.gamma(n + e)
                         * mp.hyp1f1(1 - n - e, 2, -s / m2), 0)
            total += (fn * c + (-m2) ** (n - 1) * s * dn) * ps
        return float(total * (4 * mp.pi) ** (-mp.mpf(d) / 2))


def test_even_integrand_against_brute_force():
    F = IntegrandAssembly(TransformCoefficients("even", 1.0, 2), Flat(), 0.3, kind="theorem3")
    for s in (0.7, 12.0):
        assert F(s) == pytest.approx(_even3_oracle(2, 1.0, 0.3, s), rel=1e-9, abs=1e-14)


def test_even_integrand_is_additive():
    p = ConstantPotential(0.4)
    c = TransformCoefficients("even", 1.5, 2)
    f3, f4, f5 = (IntegrandAssembly(c, p, 0.2, kind=k) for k in ("theorem3", "theorem4", "theorem5"))
    for s in (0.01, 1.0, 30.0, 500.0):
        assert abs(f5(s) - f3(s) - f4(s)) < 1e-12


def test_even_integrand_matches_double_sum_at_small_s():
    p = ConstantPotential(0.4)
    F = IntegrandAssembly(TransformCoefficients("even", 1.5, 2), p, 0.2)
    for s in (0.05, 0.5):
        assert F(s) == pytest.approx(F.direct(s), rel=1e-9, abs=1e-13)


@settings(max_examples=10, deadline=None)
@given(st.floats(min_value=0.1, max_value=2000.0))
def test_flat_omega_piece_vanishes(s):
    F = IntegrandAssembly(TransformCoefficients("even", 1.0, 2), Flat(), 0.3, kind="theorem4")
    assert F(s) == 0.0


def test_theorem_odd_flat_d1():
    assert verify_theorem_odd(Flat(), 1, 1.0, 0.1, 0.2) < 1e-5


def test_theorem_even_flat_d2():
    r = verify_theorem_even(Flat(), 2, 1.0, 0.1, 0.3)
    assert r.theorem3 < 1e-5 and r.theorem5 < 1e-5


@pytest.mark.parametrize("provider,d,w,n", [(Flat(), 2, 1.0, 5), (Table([1.0, 0.5, 0.1]), 2, 0.7, 4),
                                            (Flat(), 4, 1.0, 5)])
def test_late_time_split_examples(provider, d, w, n):
    tol = 1e-10 if isinstance(provider, Table) else 1e-12
    assert verify_late_time_split(provider, d, w, n) < tol
