"""Massless closed forms Q1, Q2, Q(d, s, sigma), the logarithmic series T and
quadrature oracles for their defining integrals.

With ``k = sqrt(2 sigma)``,

    Q1 + Q2 = (1/pi) int_0^inf cos(k rho) (exp(-s/rho^2) - 1) d rho
    T(omega, s) = 2 int_0^inf rho J0(rho sqrt(2 omega)) (exp(-s/rho^2) - 1) d rho

Both integrals oscillate with slowly decaying amplitude and are summed lobe
by lobe with Euler acceleration (:func:`hkfam.hankel.oscillatory_integral`).
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sc

from . import _kernels
from ._series import ConvergenceError, ParameterError, SeriesValue
from .hankel import HankelPolicy, j0_zero, oscillatory_integral
from .specfun import EULER_GAMMA, harmonic, hyp0f2, recip_gamma

# beyond this value of s*sigma/2 the power series lose too much to cancellation
LARGE_ARGUMENT = 200.0
_RTOL = 2.0 ** -53
_MAX_TERMS = 500


@dataclass(frozen=True)
class QEvaluation:
    d: int
    s: float
    sigma: float
    value: float
    terms_used: int
    converged: bool = True

    def __float__(self):
        return float(self.value)


def _check_sigma(sigma):
    if not sigma > 0:
        raise ParameterError("sigma must be positive")


def q1(s, sigma):
    """Q1(s, sigma) = s sqrt(sigma/2) 0F2(; 3/2, 2; s sigma/2).

    Examples
    --------
    >>> q1(0.0, 1.0)
    0.0
    """
    _check_sigma(sigma)
    if s == 0:
        return 0.0
    return s * math.sqrt(0.5 * sigma) * hyp0f2(1.5, 2.0, 0.5 * s * sigma)


def q2(s, sigma):
    """Q2(s, sigma) = -sqrt(s/pi) 0F2(; 1/2, 3/2; s sigma/2)."""
    _check_sigma(sigma)
    if s == 0:
        return 0.0
    return -math.sqrt(s) / math.sqrt(math.pi) * hyp0f2(0.5, 1.5, 0.5 * s * sigma)


def q2_gamma_form(s, sigma):
    """Q2 as -(sqrt(pi s)/2) sum_k z^k / (k! Gamma(k+1/2) Gamma(k+3/2)), z = s sigma/2."""
    _check_sigma(sigma)
    if s == 0:
        return 0.0
    lz = math.log(0.5 * s * sigma)
    terms = []
    k = 0
    while k < _MAX_TERMS:
        t = math.exp(k * lz - math.lgamma(k + 1) - math.lgamma(k + 0.5) - math.lgamma(k + 1.5))
        terms.append(t)
        if k > 0.5 * s * sigma and t < _RTOL * math.fsum(terms):
            break
        k += 1
    return -0.5 * math.sqrt(math.pi) * math.sqrt(s) * math.fsum(terms)


def q_sum_oracle(s, sigma, policy=None):
    """(1/pi) int_0^inf cos(rho sqrt(2 sigma)) (exp(-s/rho^2) - 1) d rho by quadrature.

    Returns
    -------
    QuadratureReport
    """
    _check_sigma(sigma)
    if s < 0:
        raise ParameterError("s must be non-negative")
    k = math.sqrt(2.0 * sigma)

    def g(rho):
        with np.errstate(divide="ignore", over="ignore"):
            h = np.expm1(-s / (rho * rho))
        return np.where(rho > 0, np.cos(k * rho) * h, -1.0) / math.pi

    def edge(j):
        return (j - 0.5) * math.pi / k

    return oscillatory_integral(g, edge, policy or HankelPolicy(), vectorized=True)


def _odd_q(d, s, sigma):
    h = 0.5 * d
    half = 0.5 * sigma
    # first series: (4 pi)^(-d/2) sum_{k>=1} (-s)^k/k! (sigma/2)^(k-d/2) Gamma(d/2-k)/Gamma(k)
    a_terms = []
    t = -s * half ** (1.0 - h) * math.gamma(h - 1.0)
    k = 1
    while True:
        a_terms.append(t)
        if k > 2 and abs(t) <= _RTOL * abs(math.fsum(a_terms)) and k > s * half:
            break
        t *= -s * half / ((k + 1) * k * (h - k - 1.0))
        k += 1
        if k > _MAX_TERMS:
            return None
    first = (4.0 * math.pi) ** (-h) * math.fsum(a_terms)
    # second series: -(-1/(2 pi))^((d-1)/2) (sqrt(pi s)/2)
    #   sum_k (s/2)^k sigma^(k-(d-1)/2) / (Gamma(k+(3-d)/2) Gamma(k+1/2) Gamma(k+3/2))
    j = (d - 1) // 2
    b_terms = []
    k = 0
    while True:
        rg = recip_gamma(k + 1 - j)
        if rg != 0.0:
            mag = (k * (math.log(s) - math.log(2.0)) + (k - j) * math.log(sigma)
                   - math.lgamma(k + 0.5) - math.lgamma(k + 1.5))
            b_terms.append(rg * math.exp(mag))
        else:
            b_terms.append(0.0)
        if k > j + 2 and abs(b_terms[-1]) <= _RTOL * abs(math.fsum(b_terms)) and k > s * half:
            break
        k += 1
        if k > _MAX_TERMS:
            return None
    second = -(-0.5 / math.pi) ** j * 0.5 * math.sqrt(math.pi) * math.sqrt(s) * math.fsum(b_terms)
    return first + second, len(a_terms) + len(b_terms)


def _even_q(d, s, sigma):
    h = d // 2
    ls = math.log(s)
    base = ls + math.log(sigma) + 3.0 * EULER_GAMMA - math.log(2.0)
    half = 0.5 * sigma
    terms = []
    n = 1
    while True:
        lead = n * ls - math.lgamma(n) - math.lgamma(n + 1) + (n - h) * math.log(half)
        if n < h:
            # H_{n-h}/Gamma(n-h+1) continues to (-1)^i Gamma(i), i = h - n;
            # the other bracket entries are killed by 1/Gamma(n-h+1)
            i = h - n
            t = -((-1.0) ** i) * math.gamma(i) * math.exp(lead)
        else:
            br = base - harmonic(n - 1) - harmonic(n) - harmonic(n - h)
            t = br * math.exp(lead - math.lgamma(n - h + 1))
        terms.append(t)
        if n > h + 2 and abs(t) <= _RTOL * abs(math.fsum(terms)) and n > s * half:
            break
        n += 1
        if n > _MAX_TERMS:
            return None
    return (-1.0) ** (h - 1) * (4.0 * math.pi) ** (-h) * math.fsum(terms), len(terms)


def q_d(d, s, sigma):
    """Q(d, s, sigma), the massless transform kernel in dimension ``d``.

    Odd ``d`` sums two explicit series (d = 1 gives Q1 + Q2); even ``d``
    sums the single logarithmic series.  For ``s sigma/2`` above
    ``LARGE_ARGUMENT`` the value is returned with ``converged=False``.

    Returns
    -------
    QEvaluation
    """
    _check_sigma(sigma)
    if d < 1:
        raise ParameterError("d must be a positive integer")
    if s < 0:
        raise ParameterError("s must be non-negative")
    if s == 0:
        return QEvaluation(d, s, sigma, 0.0, 0, True)
    out = _odd_q(d, s, sigma) if d % 2 else _even_q(d, s, sigma)
    if out is None:
        return QEvaluation(d, s, sigma, math.nan, _MAX_TERMS, False)
    value, used = out
    return QEvaluation(d, s, sigma, value, used, 0.5 * s * sigma <= LARGE_ARGUMENT)


def t_appendix(omega, s):
    """T(omega, s) = sum_{k>=1} s^k [ln s - 2H_{k-1} - H_k + ln omega + 3 gamma - ln 2]
    (omega/2)^(k-1) / ((k-1)!^2 k!).

    Returns
    -------
    SeriesValue
    """
    if not omega > 0:
        raise ParameterError("omega must be positive")
    if s < 0:
        raise ParameterError("s must be non-negative")
    value, terms, ok = _kernels.t_series(omega, s, _RTOL, 0.0, _MAX_TERMS)
    return SeriesValue(value, terms, ok)


def t_quadrature(omega, s, policy=None):
    """2 int_0^inf rho J0(rho sqrt(2 omega)) (exp(-s/rho^2) - 1) d rho by quadrature."""
    if not omega > 0:
        raise ParameterError("omega must be positive")
    k = math.sqrt(2.0 * omega)

    def g(rho):
        with np.errstate(divide="ignore", over="ignore"):
            h = np.expm1(-s / (rho * rho))
        return np.where(rho > 0, 2.0 * rho * sc.j0(k * rho) * h, 0.0)

    return oscillatory_integral(g, lambda j: j0_zero(j) / k, policy or HankelPolicy(),
                               vectorized=True)


def t_ode_residual(omega, s):
    """|2 d/d omega (s d^2/ds^2 T) - T| with every derivative taken term by term."""
    if not (omega > 0 and s > 0):
        raise ParameterError("omega and s must be positive")
    L = math.log(s) + math.log(omega) + 3.0 * EULER_GAMMA - math.log(2.0)
    t_terms = []
    d_terms = []
    k = 1
    while True:
        # c_k = (omega/2)^(k-1) / ((k-1)!^2 k!)
        lc = (k - 1) * math.log(0.5 * omega) - 2.0 * math.lgamma(k) - math.lgamma(k + 1)
        c = math.exp(lc)
        a = L - 2.0 * harmonic(k - 1) - harmonic(k)
        t_terms.append(c * s ** k * a)
        # s T_k'' = c s^(k-1) [k(k-1) a + 2k - 1]; its omega-derivative
        u = k * (k - 1) * a + 2 * k - 1
        d_terms.append(s ** (k - 1) * c * ((k - 1) / omega * u + k * (k - 1) / omega))
        if k > 3 and k > s * omega and abs(t_terms[-1]) <= _RTOL * abs(math.fsum(t_terms)):
            break
        k += 1
        if k > _MAX_TERMS:
            raise ConvergenceError("T series did not converge")
    return abs(2.0 * math.fsum(d_terms) - math.fsum(t_terms))
