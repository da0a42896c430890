"""Scalar special functions used across the package.

Gamma-type functions lean on :mod:`math` and :mod:`scipy.special`; the
hypergeometric series and the logarithmic K0 series run through the
kernels in :mod:`hkfam._kernels`.
"""
import math

from scipy import special as sc

from . import _kernels
from ._series import ConvergenceError, ParameterError, PoleError, SeriesValue

EULER_GAMMA = 0.57721566490153286061

# specfun series run to full double precision, tighter than SeriesPolicy()
_RTOL = 2.0 ** -53
_ATOL = 1e-300
_MAX_TERMS = 500

# x below this uses Kummer's transformation (or the large-|x| expansion)
KUMMER_CUTOFF = -30.0
K0_SWITCH = 10.0


def _is_nonpos_int(x):
    return x <= 0 and float(x).is_integer()


def gamma(x):
    """Gamma function.

    Raises
    ------
    PoleError
        At non-positive integers; use :func:`recip_gamma` when a zero
        reciprocal is wanted there.
    """
    if _is_nonpos_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def recip_gamma(x):
    """1/Gamma(x), exactly 0.0 at non-positive integers."""
    if _is_nonpos_int(x):
        return 0.0
    return float(sc.rgamma(x))


def digamma(x):
    if _is_nonpos_int(x):
        raise PoleError(f"digamma has a pole at {x}")
    return float(sc.digamma(x))


_HARMONIC = [0.0]


def harmonic(z):
    """Harmonic number H_z = gamma + psi(z + 1), continued to real z.

    Non-negative integers use the exact partial sum.
    """
    if float(z).is_integer():
        n = int(z)
        if n < 0:
            raise PoleError(f"H_z has a pole at {z}")
        if n < 4096:
            while len(_HARMONIC) <= n:
                j = len(_HARMONIC)
                _HARMONIC.append(math.fsum(1.0 / i for i in range(1, j + 1)))
            return _HARMONIC[n]
    return EULER_GAMMA + float(sc.digamma(z + 1.0))


def bessel_j(order, x):
    """J0 or J1 from :mod:`scipy.special`."""
    if order == 0:
        return sc.j0(x)
    if order == 1:
        return sc.j1(x)
    raise ParameterError("only orders 0 and 1 are provided")


def bessel_k0(x):
    """Modified Bessel function K0.

    The logarithmic power series is used below ``K0_SWITCH`` and the
    optimally truncated asymptotic expansion above it.
    """
    if not x > 0:
        raise ParameterError("K0 needs x > 0")
    if x < K0_SWITCH:
        value, _, ok = _kernels.k0_series(x, _RTOL, _ATOL, _MAX_TERMS)
        if not ok:
            raise ConvergenceError("K0 series did not converge")
        return value
    total = 1.0
    term = 1.0
    k = 0
    while True:
        nxt = -term * (2 * k + 1) ** 2 / ((k + 1) * 8.0 * x)
        if abs(nxt) >= abs(term) or abs(nxt) < _RTOL * abs(total):
            break
        total += nxt
        term = nxt
        k += 1
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total


def _check_lower(b, a):
    if _is_nonpos_int(b):
        # allowed only if an upper parameter terminates the series first
        if not (_is_nonpos_int(a) and a > b):
            raise ParameterError(f"lower parameter {b} hits a pole")


def _gamma_ratio(b, c):
    """Gamma(b) / Gamma(c) without overflow; zero when c is a pole."""
    if _is_nonpos_int(c):
        return 0.0
    sign = sc.gammasgn(b) * sc.gammasgn(c)
    return float(sign * math.exp(sc.gammaln(b) - sc.gammaln(c)))


def _hyp1f1_large_negative(a, b, x):
    """Leading asymptotic branch of 1F1 for x -> -inf.

    Returns ``None`` when the optimally truncated 2F0 series does not reach
    full precision or the exponentially small companion is not negligible.
    """
    y = -x
    total = 1.0
    term = 1.0
    k = 0
    c = a - b + 1.0
    while True:
        nxt = term * (a + k) * (c + k) / ((k + 1) * y)
        k += 1
        if nxt == 0.0:
            break
        if abs(nxt) >= abs(term):
            return None
        total += nxt
        term = nxt
        if abs(term) < _RTOL * abs(total):
            break
        if k > _MAX_TERMS:
            return None
    lead = _gamma_ratio(b, b - a)
    if lead == 0.0:
        return None
    main = lead * y ** (-a) * total
    # size of the e^x companion relative to the main branch
    if not _is_nonpos_int(a):
        log_exp = x + (a - b) * math.log(y) + sc.gammaln(b) - sc.gammaln(a)
        log_main = math.log(abs(main)) if main != 0.0 else -math.inf
        if log_exp - log_main > math.log(_RTOL):
            return None
    return main


def hyp1f1_report(a, b, x):
    """Confluent hypergeometric 1F1(a; b; x) with bookkeeping.

    Terminating parameters give the exact polynomial.  Negative ``x`` goes
    through Kummer's transformation ``e^x 1F1(b-a; b; -x)``, whose terms
    change sign only finitely often; below ``KUMMER_CUTOFF`` the
    large-|x| expansion is tried first.
    """
    _check_lower(b, a)
    if x == 0.0:
        return SeriesValue(1.0, 1, True)
    if _is_nonpos_int(a):
        value, terms, ok = _kernels.hyp1f1_series(a, b, x, 0.0, 0.0, int(-a) + 1)
        return SeriesValue(value, terms, True)
    if x > 0.0:
        value, terms, ok = _kernels.hyp1f1_series(a, b, x, _RTOL, _ATOL, _MAX_TERMS)
        return SeriesValue(value, terms, ok)
    if _is_nonpos_int(b - a):
        value, terms, ok = _kernels.hyp1f1_series(b - a, b, -x, 0.0, 0.0, int(a - b) + 1)
        return SeriesValue(math.exp(x) * value, terms, True)
    if x < KUMMER_CUTOFF:
        asym = _hyp1f1_large_negative(a, b, x)
        if asym is not None:
            return SeriesValue(asym, 0, True)
    cap = max(_MAX_TERMS, int(3 * abs(x)) + 100)
    value, terms, ok = _kernels.hyp1f1_series(b - a, b, -x, _RTOL, _ATOL, cap)
    return SeriesValue(math.exp(x) * value, terms, ok)


def hyp1f1(a, b, x):
    """Confluent hypergeometric function 1F1(a; b; x).

    Examples
    --------
    >>> hyp1f1(-1, 2, -2.0)
    2.0
    """
    r = hyp1f1_report(a, b, x)
    if not r.converged:
        raise ConvergenceError(f"1F1({a}, {b}, {x}) did not converge")
    return r.value


def _eps_asymptotic(n, x):
    """Large -x form of the epsilon derivative; exact up to O(e^x)."""
    y = -x
    w = 1.0 / y
    a = 1.0 - n
    s0 = 1.0
    sa = 0.0
    coef = 1.0   # (a)_k (a-1)_k / k!
    hsum = 0.0
    for k in range(1, n):
        j = k - 1
        hsum += 1.0 / (a + j) + 1.0 / (a - 1 + j)
        coef *= (a + j) * (a - 1 + j) / k
        s0 += coef * w ** k
        sa += coef * hsum * w ** k
    sa -= math.factorial(n - 1) * w ** n
    lead = (math.log(y) - EULER_GAMMA - digamma(n) - digamma(n + 1.0)) * s0 - sa
    return math.exp((n - 1) * math.log(y) - sc.gammaln(n) - sc.gammaln(n + 1.0)) * lead


def hyp1f1_eps_derivative(n, x):
    """d/de at e=0 of exp(-gamma e) / Gamma(n + e) * 1F1(1 - n - e; 2; x).

    The derivative is taken term by term through the digamma function:
    the prefactor gives -(gamma + psi(n)) / Gamma(n) times 1F1(1-n; 2; x)
    and the series gives the Pochhammer derivatives.  Large negative ``x``
    (any negative ``x`` in fact) uses Kummer's transformation, or the terminating large-|x| form when
    ``-x`` is well beyond ``2 n^2``.

    Examples
    --------
    >>> hyp1f1_eps_derivative(2, 0.0)
    -1.0
    """
    n = int(n)
    if n < 1:
        raise ParameterError("n must be a positive integer")
    if x < KUMMER_CUTOFF and -x > max(60.0, 2.0 * n * n):
        return _eps_asymptotic(n, x)
    if x >= 0.0:
        m, dm, _, ok = _kernels.eps_series_direct(n, x, _RTOL, _ATOL, _MAX_TERMS)
    else:
        cap = max(_MAX_TERMS, int(3 * abs(x)) + 100)
        m, dm, _, ok = _kernels.eps_series_kummer(n, x, _RTOL, _ATOL, cap)
    if not ok:
        raise ConvergenceError(f"epsilon-derivative series failed at n={n}, x={x}")
    return (-(EULER_GAMMA + digamma(n)) * m + dm) / math.gamma(n)


def hyp0f2_report(b1, b2, z):
    for b in (b1, b2):
        if _is_nonpos_int(b):
            raise ParameterError(f"lower parameter {b} is a pole")
    if z == 0.0:
        return SeriesValue(1.0, 1, True)
    value, terms, ok = _kernels.hyp0f2_series(b1, b2, z, _RTOL, _ATOL, _MAX_TERMS)
    return SeriesValue(value, terms, ok)


def hyp0f2(b1, b2, z):
    """Generalized hypergeometric function 0F2(; b1, b2; z) by power series."""
    r = hyp0f2_report(b1, b2, z)
    if not r.converged:
        raise ConvergenceError(f"0F2 series did not converge at z={z}")
    return r.value
