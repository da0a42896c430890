"""Psi and Phi function families, the Omega series and the heat kernel series.

For an index ``alpha`` and a provider with coefficients ``a_k``:

* integer ``p``:  Psi_p = D sum_k (-omega/2)^k / k! a_{p+k}
* half-integer:   Psi_p = D 2^p sum_k Gamma(p-k) omega^(k-p) a_k / 2^k
* Phi_k = -ln(omega) Psi_k + D sum_n (omega/2)^(n-k) g_tilde(k, n) a_n

with ``D`` the Van Vleck factor.  ``omega`` plays the role of the world
function when the families are used as functions of the distance.
"""
import math

import mpmath as mp

from ._series import ConvergenceError, ParameterError, SeriesPolicy, SeriesValue, fsum_terms
from .coeffs import FamilyIndex, g_tilde, g_tilde_mp

PsiValue = SeriesValue


def _check_omega(omega):
    if not omega > 0:
        raise ParameterError("omega must be positive")


def _psi_int_terms(provider, p, omega, k0):
    lw = math.log(0.5 * omega)
    k = k0
    while True:
        a = provider.a(p + k)
        if a == 0.0:
            yield 0.0
        else:
            c = math.exp(k * lw - math.lgamma(k + 1))
            yield (-1.0) ** k * c * a
        k += 1


def _psi_half_terms(provider, p, omega):
    g = math.gamma(p)
    lw = math.log(omega)
    k = 0
    while True:
        a = provider.a(k)
        yield g * math.exp((k - p) * lw) * a / 2.0 ** k
        g /= p - k - 1
        k += 1


def psi(provider, index, omega, policy=None):
    """Evaluate Psi_index at ``omega``.

    Parameters
    ----------
    provider : CoefficientProvider
    index : FamilyIndex, int, float or Fraction
    omega : float
        Positive world-function slot.
    policy : SeriesPolicy, optional

    Returns
    -------
    SeriesValue
        ``value``, ``terms_used`` and ``converged``.

    Examples
    --------
    >>> from hkfam.coeffs import Flat
    >>> psi(Flat(), -1, 0.8).value
    -0.4
    """
    _check_omega(omega)
    policy = policy or SeriesPolicy()
    index = FamilyIndex.of(index)
    sup = provider.support
    if index.is_integer:
        p = index.int_value
        k0 = max(0, -p)
        if sup is not None and sup - p < k0:
            return SeriesValue(0.0, 0, True)
        stop = None if sup is None else sup - p - k0
        r = fsum_terms(_psi_int_terms(provider, p, omega, k0), policy, 0, stop)
    else:
        p = index.value
        r = fsum_terms(_psi_half_terms(provider, p, omega), policy, 0, sup)
        r = SeriesValue(r.value * 2.0 ** p, r.terms_used, r.converged)
    return SeriesValue(provider.vanvleck_sqrt * r.value, r.terms_used, r.converged)


def _phi_tail_terms(provider, k, omega):
    lw = math.log(0.5 * omega)
    n = 0
    while True:
        a = provider.a(n)
        yield 0.0 if a == 0.0 else math.exp((n - k) * lw) * g_tilde(k, n) * a
        n += 1


def phi(provider, k, omega, policy=None):
    """Evaluate the logarithmic family Phi_k at ``omega``.

    Examples
    --------
    >>> from hkfam.coeffs import Flat
    >>> round(phi(Flat(), 1, 2.0).value, 12)
    1.0
    """
    _check_omega(omega)
    policy = policy or SeriesPolicy()
    k = int(k)
    ps = psi(provider, k, omega, policy)
    tail = fsum_terms(_phi_tail_terms(provider, k, omega), policy, 0, provider.support)
    value = -math.log(omega) * ps.value + provider.vanvleck_sqrt * tail.value
    return SeriesValue(value, ps.terms_used + tail.terms_used, ps.converged and tail.converged)


def kwave_sum(provider, d, omega, tau, policy=None):
    """Closed double-sum form of the Omega series.

    D tau^(-d/2) sum_{n >= d/2} a_n tau^n sum_{k=0}^{n-d/2} (-omega/(2 tau))^k / k!
    """
    policy = policy or SeriesPolicy()
    h = d // 2
    x = -omega / (2.0 * tau)

    def terms():
        n = h
        while True:
            inner = math.fsum(x ** k / math.factorial(k) for k in range(n - h + 1))
            yield provider.a(n) * tau ** (n - h) * inner
            n += 1

    stop = None if provider.support is None else max(provider.support - h, 0)
    if provider.support is not None and provider.support < h:
        return SeriesValue(0.0, 0, True)
    r = fsum_terms(terms(), policy, 0, stop)
    return SeriesValue(provider.vanvleck_sqrt * r.value, r.terms_used, r.converged)


def omega_series(provider, d, omega, tau, policy=None):
    """Omega(tau) = sum_n tau^n Psi_{d/2+n}, cross-checked against :func:`kwave_sum`.

    Raises
    ------
    ConvergenceError
        When the series does not converge or the two forms disagree by more
        than ``100 * rtol`` (relative, with an absolute floor of the same size).
    """
    if d % 2 or d < 2:
        raise ParameterError("Omega series needs an even dimension d >= 2")
    _check_omega(omega)
    policy = policy or SeriesPolicy()
    h = d // 2

    if provider.support is not None and provider.support < h:
        value, ok = 0.0, True
    else:
        def terms():
            n = 0
            while True:
                yield tau ** n * psi(provider, h + n, omega, policy).value
                n += 1

        stop = None if provider.support is None else provider.support - h
        r = fsum_terms(terms(), policy, 0, stop)
        value, ok = r.value, r.converged
    check = kwave_sum(provider, d, omega, tau, policy)
    if not (ok and check.converged):
        raise ConvergenceError("Omega series did not converge")
    scale = max(abs(value), abs(check.value), 1.0)
    if abs(value - check.value) > 100.0 * policy.rtol * scale:
        raise ConvergenceError(
            f"Omega series forms disagree: {value!r} vs {check.value!r}")
    return value


def heat_kernel_series(provider, d, m2, sigma, tau, policy=None):
    """Small-time heat kernel
    (4 pi tau)^(-d/2) D exp(-sigma/(2 tau) - tau m2) sum_k tau^k a_k.

    Examples
    --------
    >>> from hkfam.coeffs import Flat
    >>> v = heat_kernel_series(Flat(), 1, 1.0, 0.02, 0.1)
    >>> abs(v - (0.4 * math.pi) ** -0.5 * math.exp(-0.2)) < 1e-15
    True
    """
    if not tau > 0:
        raise ParameterError("tau must be positive")
    policy = policy or SeriesPolicy()

    def terms():
        k = 0
        while True:
            yield tau ** k * provider.a(k)
            k += 1

    r = fsum_terms(terms(), policy, 0, provider.support)
    if not r.converged:
        raise ConvergenceError("heat kernel series did not converge")
    pref = (4.0 * math.pi * tau) ** (-0.5 * d) * provider.vanvleck_sqrt
    return pref * math.exp(-sigma / (2.0 * tau) - tau * m2) * r.value


def radial_laplacian(f, r, d, h_rel=1e-3):
    """f'' + (d-1) f'/r by 5-point central differences, Richardson-extrapolated once."""
    def stencil(h):
        fm2, fm1, f0, fp1, fp2 = (f(r + j * h) for j in (-2, -1, 0, 1, 2))
        d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
        d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)
        return d2 + (d - 1) * d1 / r

    h = h_rel * r
    return (16.0 * stencil(0.5 * h) - stencil(h)) / 15.0


# -- arbitrary precision twins, used by the theorem integrands ----------------

def _mp_sum(terms, support_stop):
    """Sum an mp term iterator until three terms fall below working precision."""
    total = mp.mpf(0)
    quiet = 0
    for k, t in enumerate(terms):
        total += t
        if support_stop is not None and k >= support_stop:
            return total
        if t == 0 or abs(t) < mp.eps * abs(total):
            quiet += 1
            if quiet >= 3 and (total != 0 or k > 40):
                return total
        else:
            quiet = 0
        if k > 2000:
            raise ConvergenceError("mp series did not converge")
    return total


def psi_mp(provider, index, omega):
    """Psi at the current mpmath precision (``omega`` an mpf)."""
    index = FamilyIndex.of(index)
    sup = provider.support
    half = omega / 2
    if index.is_integer:
        p = index.int_value
        k0 = max(0, -p)
        if sup is not None and sup - p < k0:
            return mp.mpf(0)

        def terms():
            k = k0
            c = (-half) ** k0 / mp.factorial(k0)
            while True:
                a = provider.a_mp(p + k)
                yield c * a
                k += 1
                c *= -half / k

        stop = None if sup is None else sup - p - k0
        return provider.vanvleck_sqrt * _mp_sum(terms(), stop)
    p = mp.mpf(index.twice_value) / 2

    def terms():
        g = mp.gamma(p) * omega ** (-p)
        k = 0
        while True:
            yield g * provider.a_mp(k)
            g *= half / (p - k - 1)
            k += 1

    return provider.vanvleck_sqrt * 2 ** p * _mp_sum(terms(), sup)


def phi_mp(provider, k, omega):
    """Phi_k at the current mpmath precision."""
    half = omega / 2

    def terms():
        n = 0
        while True:
            yield half ** (n - k) * g_tilde_mp(k, n) * provider.a_mp(n)
            n += 1

    tail = _mp_sum(terms(), provider.support)
    return -mp.log(omega) * psi_mp(provider, k, omega) + provider.vanvleck_sqrt * tail
