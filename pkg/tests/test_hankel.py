import math

import numpy as np
import pytest
from scipy import special as sc

from hkfam._series import ConvergenceError, ParameterError
from hkfam.hankel import (HankelPolicy, euler_accelerate, hankel_j1, j0_zero, j1_zero,
                          oscillatory_integral, verify_g19)


def test_exponential_identity_examples():
    r = hankel_j1(0.3, lambda s: math.exp(-s) - 1.0)
    assert abs(r.value - 0.7408182206817179) < 1e-6
    r = hankel_j1(0.5, lambda s: math.exp(-s / 2) - 1.0)
    assert abs(r.value - 0.36787944117144233) < 1e-6


def test_small_tau_limit():
    r = hankel_j1(1e-8, lambda s: math.exp(-s) - 1.0)
    assert abs(r.value - 1.0) < 1e-4


def test_verify_g19_examples():
    assert verify_g19(1, 0.3) < 1e-6
    assert verify_g19(5, 0.1) < 1e-6
    assert verify_g19(1, 0) == 0.0


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 5.0, 10.0])
@pytest.mark.parametrize("tau", [0.05, 0.1, 0.3, 0.5, 1.0])
def test_g19_grid(lam, tau):
    assert verify_g19(lam, tau) < 1e-6


def test_vectorized_and_scalar_callbacks_agree():
    a = hankel_j1(0.2, lambda s: np.expm1(-s), vectorized=True).value
    b = hankel_j1(0.2, lambda s: math.expm1(-s)).value
    assert a == pytest.approx(b, rel=1e-13)


def test_error_estimate_is_honest():
    f = lambda s: np.expm1(-s / 3.0)
    base = hankel_j1(0.4, f, vectorized=True)
    fine = hankel_j1(0.4, f, HankelPolicy(subdivide=2), vectorized=True)
    assert abs(base.value - fine.value) <= max(base.abs_error_estimate, 1e-12) * 10


def test_zeros_against_scipy_and_mcmahon_continuity():
    z = sc.jn_zeros(1, 60)
    for k in (1, 10, 50):
        assert j1_zero(k) == z[k - 1]
    # beyond the table McMahon takes over, accurate far out
    assert j1_zero(51) == pytest.approx(z[50], abs=1e-10)
    assert j0_zero(60) == pytest.approx(sc.jn_zeros(0, 60)[59], abs=1e-10)
    with pytest.raises(ParameterError):
        j1_zero(0)


def test_euler_accelerates_alternating_series():
    partial = np.cumsum([(-1) ** k / (k + 1) for k in range(14)])
    assert euler_accelerate(partial) == pytest.approx(math.log(2.0), abs=1e-6)
    assert abs(partial[-1] - math.log(2.0)) > 1e-2


def test_unsettled_quadrature_raises():
    # lobes of one sign never settle
    with pytest.raises(ConvergenceError):
        oscillatory_integral(lambda u: abs(math.sin(u)), lambda k: k * math.pi,
                             HankelPolicy(max_panels=20))


def test_rejects_nonpositive_tau():
    with pytest.raises(ParameterError):
        hankel_j1(0.0, lambda s: 1.0)
