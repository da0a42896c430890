"""Pure-Python series kernels.

Mirror of the compiled ``_core`` extension, term for term, so the two
backends agree to rounding.  Every kernel returns ``(value, terms, converged)``
or a wider tuple documented per function.
"""
import math

EULER_GAMMA = 0.57721566490153286061


def _small(term, total, rtol, atol):
    return abs(term) < rtol * abs(total) + atol


def hyp1f1_series(a, b, x, rtol, atol, max_terms):
    """Power series of 1F1(a; b; x) with Neumaier summation."""
    term = 1.0
    s = 1.0
    c = 0.0
    quiet = 0
    k = 0
    while k < max_terms:
        term *= (a + k) * x / ((b + k) * (k + 1))
        k += 1
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        s = t
        if _small(term, s + c, rtol, atol):
            quiet += 1
            if quiet >= 3:
                return s + c, k + 1, True
        else:
            quiet = 0
    return s + c, k + 1, False


def hyp0f2_series(b1, b2, z, rtol, atol, max_terms):
    """Power series of 0F2(; b1, b2; z)."""
    term = 1.0
    s = 1.0
    c = 0.0
    quiet = 0
    k = 0
    while k < max_terms:
        term *= z / ((b1 + k) * (b2 + k) * (k + 1))
        k += 1
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        s = t
        if _small(term, s + c, rtol, atol):
            quiet += 1
            if quiet >= 3:
                return s + c, k + 1, True
        else:
            quiet = 0
    return s + c, k + 1, False


def eps_series_direct(n, x, rtol, atol, max_terms):
    """M(1-n, 2, x) and d/de M(1-n-e, 2, x) at e=0 from the power series.

    Returns ``(m, dm, terms, converged)``.  Below k = n the Pochhammer
    symbol is nonzero and differentiates through its logarithmic
    derivative; from k = n on only the vanishing factor contributes.
    """
    a = 1.0 - n
    q = 1.0          # x^k / ((2)_k k!)
    poch = 1.0       # (a)_k
    hsum = 0.0       # sum_{j<k} 1/(a+j)
    m = 1.0
    dm = 0.0
    quiet = 0
    k = 0
    p = 0.0
    while k < max_terms:
        q *= x / ((2.0 + k) * (k + 1))
        if k < n - 1:
            hsum += 1.0 / (a + k)
            poch *= a + k
            m += poch * q
            term = -poch * hsum * q
        else:
            if k == n - 1:
                p = math.factorial(n - 1) * (1.0 if n % 2 == 1 else -1.0)
            else:
                p *= k + 1 - n
            term = -p * q
        k += 1
        dm += term
        if k >= n:
            if _small(term, dm, rtol, atol):
                quiet += 1
                if quiet >= 3:
                    return m, dm, k + 1, True
            else:
                quiet = 0
    return m, dm, k + 1, False


def eps_series_kummer(n, x, rtol, atol, max_terms):
    """Same pair as :func:`eps_series_direct` through Kummer's transformation.

    Every term is positive for ``x < 0``, so there is no cancellation.
    """
    y = -x
    c = 1.0 + n
    q = 1.0
    dpsi = 0.0
    mk = 1.0
    dk = 0.0
    quiet = 0
    k = 0
    while k < max_terms:
        dpsi += 1.0 / (c + k)
        q *= (c + k) * y / ((2.0 + k) * (k + 1))
        k += 1
        mk += q
        term = q * dpsi
        dk += term
        if _small(term, dk, rtol, atol) and _small(q, mk, rtol, atol):
            quiet += 1
            if quiet >= 3:
                ex = math.exp(x)
                return ex * mk, ex * dk, k + 1, True
        else:
            quiet = 0
    ex = math.exp(x)
    return ex * mk, ex * dk, k + 1, False


def k0_series(x, rtol, atol, max_terms):
    """Logarithmic power series of K0(x)."""
    lead = EULER_GAMMA + math.log(0.5 * x)
    w = 0.25 * x * x
    q = 1.0
    h = 0.0
    s = -lead
    quiet = 0
    j = 0
    while j < max_terms:
        j += 1
        q *= w / (j * j)
        h += 1.0 / j
        term = (h - lead) * q
        s += term
        if _small(term, s, rtol, atol):
            quiet += 1
            if quiet >= 3:
                return s, j + 1, True
        else:
            quiet = 0
    return s, j + 1, False


def t_series(omega, s, rtol, atol, max_terms):
    """Logarithmic series T(omega, s) starting at k = 1."""
    if s == 0.0:
        return 0.0, 0, True
    base = math.log(s) + math.log(omega) + 3.0 * EULER_GAMMA - math.log(2.0)
    half = 0.5 * omega
    q = s            # s^k (omega/2)^(k-1) / ((k-1)!^2 k!)
    hk1 = 0.0        # H_{k-1}
    hk = 1.0         # H_k
    total = q * (base - 2.0 * hk1 - hk)
    quiet = 0
    k = 1
    while k < max_terms:
        q *= s * half / (k * k * (k + 1))
        hk1 = hk
        hk += 1.0 / (k + 1)
        k += 1
        term = q * (base - 2.0 * hk1 - hk)
        total += term
        if _small(term, total, rtol, atol):
            quiet += 1
            if quiet >= 3:
                return total, k, True
        else:
            quiet = 0
    return total, k, False
