"""Green-function expansions, cut-off regularization, the dimension-shift
integral and Taylor-kernel transforms of the heat kernel.

Every series term is stored as ``coef * t^expo * (ln t)^logpow * x`` with
``t = m2`` and ``x`` a Psi/Phi value that does not depend on the mass, so
derivatives in ``m2`` act term by term and exactly.

Odd ``d``::

    G = (4 pi)^(-d/2) [ sum_{n>=1} (-m2)^(n-1)/Gamma(n) Psi_{d/2-n}
                        + sum_{n in Z} pi (-1)^n m2^(n-1/2)/Gamma(n+1/2) Psi_{(d-1)/2-n} ]

Even ``d``::

    G = (4 pi)^(-d/2) [ sum_{n>=1} (-1)^(n-1) m2^(n-1)/Gamma(n)
                          (Phi_{d/2-n} - Psi_{d/2-n} (2 gamma - ln 2 - H_{n-1} + ln m2))
                        + sum_{n>=1} Gamma(n) m2^(-n) Psi_{d/2-1+n} ]

The last sum is asymptotic for providers with infinite support; it is cut at
its smallest term, which is reported as the error estimate.
"""
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from scipy import integrate, special as sc

from ._series import ParameterError, SeriesPolicy, SeriesValue
from .coeffs import FamilyIndex, Flat
from .psiphi import heat_kernel_series, phi, psi
from .specfun import EULER_GAMMA, harmonic


class GreenTerm(NamedTuple):
    coef: float
    expo: float
    logpow: int
    x: float


@dataclass(frozen=True)
class GreenExpansion:
    d: int
    m2: float
    provider: object = field(default_factory=Flat)
    n_max: int = 80
    policy: SeriesPolicy = field(default_factory=SeriesPolicy)

    def __post_init__(self):
        if self.d < 1:
            raise ParameterError("d must be a positive integer")
        if not self.m2 > 0:
            raise ParameterError("m2 must be positive")
        if self.n_max < 1:
            raise ParameterError("n_max must be at least 1")


@dataclass(frozen=True)
class CutoffParameter:
    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError("cut-off must be positive")

    def regularize(self, sigma):
        """sigma_L = max(sigma, 1/(2 L^2))."""
        return max(sigma, 0.5 / (self.lam * self.lam))


def _band_odd(exp, sigma, n):
    """Terms of band n >= 1: first sum at n, second sum at n - 1 and -n."""
    p, d, pol = exp.provider, exp.d, exp.policy
    out = [GreenTerm((-1.0) ** (n - 1) / math.gamma(n), n - 1, 0,
                     psi(p, FamilyIndex(d - 2 * n), sigma, pol).value)]
    for j in (n - 1, -n):
        x = psi(p, FamilyIndex(d - 1 - 2 * j), sigma, pol).value
        if x != 0.0:
            out.append(GreenTerm(math.pi * (-1.0) ** j / math.gamma(j + 0.5), j - 0.5, 0, x))
    return out


def _band_even(exp, sigma, n):
    p, h, pol = exp.provider, exp.d // 2, exp.policy
    c = (-1.0) ** (n - 1) / math.gamma(n)
    ps = psi(p, h - n, sigma, pol).value
    ph = phi(p, h - n, sigma, pol).value
    k = 2.0 * EULER_GAMMA - math.log(2.0) - harmonic(n - 1)
    return [GreenTerm(c, n - 1, 0, ph - k * ps), GreenTerm(-c, n - 1, 1, ps)]


def _tail_even(exp, sigma):
    """Optimally truncated tail terms and the size of the first omitted one."""
    p, h, pol = exp.provider, exp.d // 2, exp.policy
    sup = p.support
    terms = []
    best = math.inf
    n = 1
    while n <= exp.n_max:
        if sup is not None and h - 1 + n > sup:
            return terms, 0.0
        x = psi(p, h - 1 + n, sigma, pol).value
        size = abs(math.gamma(n) * exp.m2 ** (-n) * x)
        if size > best:
            return terms, best
        best = size
        terms.append(GreenTerm(math.gamma(n), -n, 0, x))
        n += 1
    return terms, best


def _term_value(term, t, j):
    """(-d/dt)^j of coef t^expo (ln t)^logpow, times x."""
    e = term.expo
    a, b = 1.0, 0.0           # d^i (t^e ln t) = t^(e-i) (a ln t + b)
    for i in range(j):
        a, b = (e - i) * a, (e - i) * b + a
    lt = math.log(t)
    if term.logpow == 0:
        core = a
    else:
        core = a * lt + b
    if core == 0.0 or term.x == 0.0:
        return 0.0
    return (-1.0) ** j * term.coef * core * t ** (e - j) * term.x


def _sum_series(exp, sigma, j):
    if not sigma > 0:
        raise ParameterError("sigma must be positive")
    band = _band_odd if exp.d % 2 else _band_even
    t = exp.m2
    vals = []
    quiet = 0
    used = 0
    converged = False
    for n in range(1, exp.n_max + 1):
        bt = [_term_value(term, t, j) for term in band(exp, sigma, n)]
        used += len(bt)
        vals.extend(bt)
        mag = max((abs(v) for v in bt), default=0.0)
        total = math.fsum(vals)
        if n > j + 1 and mag <= exp.policy.rtol * abs(total) + exp.policy.atol:
            quiet += 1
            if quiet >= 3:
                converged = True
                break
        else:
            quiet = 0
    err = 0.0
    if exp.d % 2 == 0:
        tail, err = _tail_even(exp, sigma)
        vals.extend(_term_value(term, t, j) for term in tail)
        used += len(tail)
    norm = (4.0 * math.pi) ** (-0.5 * exp.d)
    return SeriesValue(norm * math.fsum(vals), used, converged, norm * err)


def expansion_terms(exp, sigma, n_bands=None):
    """Term list ``[GreenTerm, ...]`` of the first ``n_bands`` bands (without the common norm)."""
    band = _band_odd if exp.d % 2 else _band_even
    out = []
    for n in range(1, (n_bands or exp.n_max) + 1):
        out.extend(band(exp, sigma, n))
    return out


def green(exp, sigma):
    """Green function of ``-Laplacian - v + m2`` from its series expansion.

    Parameters
    ----------
    exp : GreenExpansion
    sigma : float
        World function, ``r^2 / 2`` in flat space.

    Returns
    -------
    SeriesValue
        ``error_estimate`` is the first omitted tail term in even dimension.

    Examples
    --------
    >>> g = green(GreenExpansion(1, 1.0), 0.5)
    >>> abs(g.value - math.exp(-1.0) / 2.0) < 1e-14
    True
    """
    return _sum_series(exp, sigma, 0)


def green_regularized(exp, sigma, cutoff):
    """Green function at the cut-off world function ``max(sigma, 1/(2 L^2))``."""
    if sigma < 0:
        raise ParameterError("sigma must be non-negative")
    return green(exp, cutoff.regularize(sigma))


def taylor_kernel_transform(exp, c, sigma):
    """sum_j c_j (-d/dm2)^j G for the Taylor coefficients ``c`` of a weight C(tau).

    This is ``int C(tau) K(tau) d tau`` for ``C(tau) = sum_j c_j tau^j``.
    """
    total = []
    used = 0
    ok = True
    err = 0.0
    for j, cj in enumerate(c):
        if cj == 0:
            continue
        r = _sum_series(exp, sigma, j)
        total.append(cj * r.value)
        used += r.terms_used
        ok = ok and r.converged
        err += abs(cj) * r.error_estimate
    return SeriesValue(math.fsum(total), used, ok, err)


def green_closed_form(d, m2, sigma):
    """Flat-space Green function of ``-Laplacian + m2`` for d = 1..5."""
    m = math.sqrt(m2)
    r = math.sqrt(2.0 * sigma)
    if d == 1:
        return math.exp(-m * r) / (2.0 * m)
    if d == 2:
        return sc.k0(m * r) / (2.0 * math.pi)
    if d == 3:
        return math.exp(-m * r) / (4.0 * math.pi * r)
    if d == 4:
        return m * sc.k1(m * r) / (4.0 * math.pi ** 2 * r)
    if d == 5:
        return math.exp(-m * r) * (1.0 + m * r) / (8.0 * math.pi ** 2 * r ** 3)
    raise ParameterError("closed forms are provided for d = 1..5")


def dimension_shift_check(d, k, m2, sigma):
    """|int_0^inf tau^(-k/2) K_d(tau) d tau - (4 pi)^(k/2) G_{d+k}| for the flat kernel."""
    if d + k < 1 or k < 1:
        raise ParameterError("need positive d and k")

    def f(tau):
        return tau ** (-0.5 * k) * heat_kernel_series(Flat(), d, m2, sigma, tau)

    scale = sigma / 2.0
    lo, _ = integrate.quad(f, 0.0, scale, epsabs=1e-14, epsrel=1e-13, limit=200)
    hi, _ = integrate.quad(f, scale, math.inf, epsabs=1e-14, epsrel=1e-13, limit=200)
    g = green(GreenExpansion(d + k, m2), sigma).value
    return abs(lo + hi - (4.0 * math.pi) ** (0.5 * k) * g)
