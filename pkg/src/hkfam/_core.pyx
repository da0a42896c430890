# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled series kernels (see ``_core_py`` for the reference version)."""
from libc.math cimport exp, log, fabs

cdef double EULER_GAMMA = 0.57721566490153286061


cdef inline bint _small(double term, double total, double rtol, double atol):
    return fabs(term) < rtol * fabs(total) + atol


cdef inline void _neumaier(double *s, double *c, double term):
    cdef double t = s[0] + term
    if fabs(s[0]) >= fabs(term):
        c[0] += (s[0] - t) + term
    else:
        c[0] += (term - t) + s[0]
    s[0] = t


def hyp1f1_series(double a, double b, double x, double rtol, double atol,
                  int max_terms):
    cdef double term = 1.0, s = 1.0, c = 0.0
    cdef int quiet = 0, k = 0
    while k < max_terms:
        term *= (a + k) * x / ((b + k) * (k + 1))
        k += 1
        _neumaier(&s, &c, term)
        if _small(term, s + c, rtol, atol):
            quiet += 1
            if quiet >= 3:
                return s + c, k + 1, True
        else:
            quiet = 0
    return s + c, k + 1, False


def hyp0f2_series(double b1, double b2, double z, double rtol, double atol,
                  int max_terms):
    cdef double term = 1.0, s = 1.0, c = 0.0
    cdef int quiet = 0, k = 0
    while k < max_terms:
        term *= z / ((b1 + k) * (b2 + k) * (k + 1))
        k += 1
        _neumaier(&s, &c, term)
        if _small(term, s + c, rtol, atol):
            quiet += 1
            if quiet >= 3:
                return s + c, k + 1, True
        else:
            quiet = 0
    return s + c, k + 1, False


cdef double _factorial(int n):
    cdef double f = 1.0
    cdef int i
    for i in range(2, n + 1):
        f *= i
    return f


def eps_series_direct(int n, double x, double rtol, double atol, int max_terms):
    cdef double a = 1.0 - n
    cdef double q = 1.0, poch = 1.0, hsum = 0.0, m = 1.0, dm = 0.0
    cdef double p = 0.0, term
    cdef int quiet = 0, k = 0
    while k < max_terms:
        q *= x / ((2.0 + k) * (k + 1))
        if k < n - 1:
            hsum += 1.0 / (a + k)
            poch *= a + k
            m += poch * q
            term = -poch * hsum * q
        else:
            if k == n - 1:
                p = _factorial(n - 1) * (1.0 if n % 2 == 1 else -1.0)
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


def eps_series_kummer(int n, double x, double rtol, double atol, int max_terms):
    cdef double y = -x, c = 1.0 + n
    cdef double q = 1.0, dpsi = 0.0, mk = 1.0, dk = 0.0, term, ex
    cdef int quiet = 0, k = 0
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
                ex = exp(x)
                return ex * mk, ex * dk, k + 1, True
        else:
            quiet = 0
    ex = exp(x)
    return ex * mk, ex * dk, k + 1, False


def k0_series(double x, double rtol, double atol, int max_terms):
    cdef double lead = EULER_GAMMA + log(0.5 * x)
    cdef double w = 0.25 * x * x, q = 1.0, h = 0.0, s = -lead, term
    cdef int quiet = 0, j = 0
    while j < max_terms:
        j += 1
        q *= w / (<double>j * j)
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


def t_series(double omega, double s, double rtol, double atol, int max_terms):
    if s == 0.0:
        return 0.0, 0, True
    cdef double base = log(s) + log(omega) + 3.0 * EULER_GAMMA - log(2.0)
    cdef double half = 0.5 * omega, q = s, hk1 = 0.0, hk = 1.0
    cdef double total = q * (base - 2.0 * hk1 - hk), term
    cdef int quiet = 0, k = 1
    while k < max_terms:
        q *= s * half / (<double>k * k * (k + 1))
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
