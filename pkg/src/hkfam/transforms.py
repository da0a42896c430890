"""Transform coefficient functions and the theorem-level integrands.

Odd dimension: the heat kernel is the Hankel transform of

    F(s) = (4 pi)^(-d/2) [ sum_{n>=1} f_n(s) Psi_{d/2-n} + sum_{n in Z} g_n(s) Psi_{(d-1)/2-n} ]

Even dimension: the Omega-subtracted kernel is the transform of

    F3(s) = (4 pi)^(-d/2) [ sum_{n>=1} f_n(s) Phi_{d/2-n} + sum_{n>=1} g_{-n}(s) Psi_{d/2-n} ]

the Omega piece of ``F4(s) = (4 pi)^(-d/2) sum_{n>=0} g_n(s) Psi_{d/2+n}`` and
the full kernel of ``F5 = F3 + F4``.

The f-sum and the g-sum grow like ``exp(3 (s omega/2)^(1/3))`` separately
and cancel to a result that decays, so the integrands are summed in mpmath
with a working precision chosen per node (:class:`IntegrandAssembly`).
The double precision coefficient functions below serve single evaluations
and cross-checks.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import mpmath as mp

from ._series import ConvergenceError, ParameterError, SeriesPolicy
from .coeffs import FamilyIndex
from .hankel import hankel_j1
from .psiphi import heat_kernel_series, omega_series, phi, phi_mp, psi, psi_mp
from .specfun import EULER_GAMMA, harmonic, hyp1f1, hyp1f1_eps_derivative, recip_gamma


# -- coefficient functions ----------------------------------------------------

def f_n(n, s, m2):
    """f_n(s) = sum_{k=1}^n (-s)^k (-m2)^(n-k) / (k! (k-1)! (n-k)!).

    Examples
    --------
    >>> f_n(2, 1.0, 1.0)
    1.5
    """
    if n < 1:
        raise ParameterError("f_n needs n >= 1")
    if s == 0:
        return 0.0
    ls = math.log(abs(s))
    lm = math.log(m2)
    terms = []
    for k in range(1, n + 1):
        sign = (-1.0) ** n * (1.0 if s > 0 else (-1.0) ** k)
        terms.append(sign * math.exp(k * ls + (n - k) * lm - math.lgamma(k + 1)
                                     - math.lgamma(k) - math.lgamma(n - k + 1)))
    return math.fsum(terms)


def g_n_odd(n, s, m2):
    """g_n(s) = pi (-1)^(n-1) m^(2n-1) s / Gamma(n+1/2) 1F1(1/2-n; 2; -s/m2), n in Z."""
    if s == 0:
        return 0.0
    pref = math.pi * (-1.0) ** (n - 1) * m2 ** (n - 0.5) * s * recip_gamma(n + 0.5)
    return pref * hyp1f1(0.5 - n, 2.0, -s / m2)


def g_neg_n_even(n, s, m2):
    """g_{-n}(s) = f_n(s) (-2 gamma - ln(m2/2)) + (-m2)^(n-1) s D_n(-s/m2).

    ``D_n`` is :func:`hkfam.specfun.hyp1f1_eps_derivative`.
    """
    if n < 1:
        raise ParameterError("g_{-n} needs n >= 1")
    if s == 0:
        return 0.0
    c = -2.0 * EULER_GAMMA - math.log(m2 / 2.0)
    return f_n(n, s, m2) * c + (-m2) ** (n - 1) * s * hyp1f1_eps_derivative(n, -s / m2)


@lru_cache(maxsize=None)
def derivative_polynomial(n):
    """Integer coefficients ``c_i`` of P_n(s, y) = sum_i c_i s^i y^(n+i).

    (-d/dm2)^n exp(-s/m2) = exp(-s y) P_n(s, y) with y = 1/m2, generated by
    P_{n+1} = -dP_n/dm2 - (s/m2^2) P_n, i.e. c'_i = (n+i) c_i - c_{i-1}.
    """
    if n == 0:
        return (1,)
    prev = derivative_polynomial(n - 1) + (0,)
    out = []
    for i in range(n + 1):
        left = (n - 1 + i) * prev[i]
        right = prev[i - 1] if i > 0 else 0
        out.append(left - right)
    return tuple(out)


def g_n_even(n, s, m2):
    """g_n(s) = (-d/dm2)^n [exp(-s/m2) - 1], analytically.

    Examples
    --------
    >>> round(g_n_even(1, 1.0, 1.0), 15) == round(-math.exp(-1.0), 15)
    True
    """
    if n < 0:
        raise ParameterError("g_n needs n >= 0")
    y = 1.0 / m2
    if n == 0:
        return math.expm1(-s * y)
    if s == 0:
        return 0.0
    c = derivative_polynomial(n)
    poly = math.fsum(c[i] * s ** i * y ** (n + i) for i in range(1, n + 1))
    return math.exp(-s * y) * poly


def m_to_zero_limits(n, s, parity):
    """Massless limits ``(lim f_n, lim g)`` for ``parity`` 'odd' or 'even'.

    Odd: g_n -> pi (-1)^(n-1) s^(n+1/2) / (Gamma(n+1/2) Gamma(n+3/2)).
    Even: g_{-n} -> (-s)^n (ln 2 - ln s - 3 gamma + H_n + H_{n-1}) / (n! (n-1)!).
    """
    if n >= 1:
        f = (-s) ** n / (math.factorial(n) * math.factorial(n - 1))
    else:
        f = 0.0
    if parity == "odd":
        g = (math.pi * (-1.0) ** (n - 1) * s ** (n + 0.5)
             * recip_gamma(n + 0.5) * recip_gamma(n + 1.5))
        return f, g
    if parity == "even":
        if n < 1:
            raise ParameterError("even limits need n >= 1")
        br = math.log(2.0) - math.log(s) - 3.0 * EULER_GAMMA + harmonic(n) + harmonic(n - 1)
        return f, f * br
    raise ParameterError("parity must be 'odd' or 'even'")


# -- integrand assembly -------------------------------------------------------

@dataclass(frozen=True)
class TransformCoefficients:
    parity: str
    m2: float
    d: int
    n_max: int = 25

    def __post_init__(self):
        if self.parity not in ("odd", "even"):
            raise ParameterError("parity must be 'odd' or 'even'")
        if (self.d % 2 == 1) != (self.parity == "odd"):
            raise ParameterError("parity does not match d")
        if not self.m2 > 0:
            raise ParameterError("m2 must be positive")


_KINDS = ("odd", "theorem3", "theorem4", "theorem5")
_GUARD = 20          # decimal digits kept below the largest partial term
_BASE_DPS = 20
_QUIET = mp.mpf(10) ** -40


def _log10_abs(x):
    return float(mp.log10(abs(x))) if x != 0 else -math.inf


class _Constants:
    """Node-independent ingredients at a fixed precision ``dps``."""

    def __init__(self, provider, d, m2, omega, dps):
        self.provider = provider
        self.d = d
        self.dps = dps
        with mp.workdps(dps):
            self.w = mp.mpf(omega)
            self.m2 = mp.mpf(m2)
            self.y = 1 / self.m2
            self.norm = (4 * mp.pi) ** (-mp.mpf(d) / 2)
            self.cm = -2 * mp.euler - mp.log(self.m2 / 2)
        self.X = {}
        self.B = [None]
        self.blog = [None]
        self.Y = {}
        self.G = {}
        self.E = []
        self.elog = []

    def _x(self, twice):
        if twice not in self.X:
            p, w = self.provider, self.w
            if self.d % 2:
                val = psi_mp(p, FamilyIndex(twice), w)
            else:
                q = twice // 2
                val = phi_mp(p, q, w) + self.cm * psi_mp(p, q, w)
            self.X[twice] = val
        return self.X[twice]

    def b(self, k):
        """B_k = norm sum_j (-m2)^j / j! X_{d/2-k-j}."""
        with mp.workdps(self.dps):
            while len(self.B) <= k:
                kk = len(self.B)
                total = mp.mpf(0)
                biggest = mp.mpf(0)
                c = mp.mpf(1)
                quiet = 0
                j = 0
                while True:
                    t = c * self._x(self.d - 2 * (kk + j))
                    total += t
                    biggest = max(biggest, abs(t))
                    if abs(t) <= mp.eps * biggest:
                        quiet += 1
                        if quiet >= 3 and j > 4:
                            break
                    else:
                        quiet = 0
                    j += 1
                    c *= -self.m2 / j
                    if j > 4000:
                        raise ConvergenceError("B_k sum did not converge")
                self.B.append(self.norm * total)
                self.blog.append(float(mp.log(abs(self.B[-1]))) if total != 0 else -math.inf)
        return self.B[k]

    def y_odd(self, n):
        """norm Psi_{(d-1)/2-n} and pi (-1)^(n-1) m^(2n-1) / Gamma(n+1/2)."""
        if n not in self.Y:
            with mp.workdps(self.dps):
                self.Y[n] = self.norm * psi_mp(self.provider, FamilyIndex(self.d - 1 - 2 * n), self.w)
                self.G[n] = (mp.pi * (-1) ** (n - 1) * self.m2 ** (n - mp.mpf(1) / 2)
                             * mp.rgamma(n + mp.mpf(1) / 2))
        return self.Y[n], self.G[n]

    def z_even(self, n):
        """norm Psi_{d/2-n}, (-m2)^(n-1), gamma + psi(n) and 1/Gamma(n)."""
        if n not in self.Y:
            with mp.workdps(self.dps):
                self.Y[n] = self.norm * psi_mp(self.provider, self.d // 2 - n, self.w)
                self.G[n] = ((-self.m2) ** (n - 1), mp.euler + mp.digamma(n), mp.rgamma(n))
        return self.Y[n], self.G[n]

    def psi_up(self, n):
        """norm Psi_{d/2+n} (mp) and n! y^n |Psi_{d/2+n}| as a float log."""
        with mp.workdps(self.dps):
            while len(self.E) <= n:
                k = len(self.E)
                v = self.norm * psi_mp(self.provider, self.d // 2 + k, self.w)
                self.E.append(v)
                self.elog.append(float(mp.log(abs(v) * mp.factorial(k) * self.y ** k))
                                 if v != 0 else -math.inf)
        return self.E[n]

    def omega_bound(self):
        """log of sum_n n! y^n |Psi_{d/2+n}|, or inf when it does not settle."""
        if not hasattr(self, "_obound"):
            sup = self.provider.support
            top = 200 if sup is None else max(sup - self.d // 2, 0)
            for n in range(top + 1):
                self.psi_up(n)
            logs = [x for x in self.elog[:top + 1] if x > -math.inf]
            if not logs:
                self._obound = -math.inf
            elif sup is None and self.elog[top] > max(logs) - 40:
                self._obound = math.inf
            else:
                m = max(logs)
                self._obound = m + math.log(sum(math.exp(x - m) for x in logs))
        return self._obound


def _eps_seed(n, y):
    """M(1-n, 2, -y) and its derivative in e of M(1-n-e, 2, -y), n >= 1."""
    threshold = 2.31 * mp.mp.dps + 20
    if y > threshold:
        w = 1 / y
        a = 1 - n
        s0 = mp.mpf(1)
        sa = mp.mpf(0)
        coef = mp.mpf(1)
        hsum = mp.mpf(0)
        for k in range(1, n):
            j = k - 1
            hsum += mp.mpf(1) / (a + j) + mp.mpf(1) / (a - 1 + j)
            coef *= mp.mpf((a + j) * (a - 1 + j)) / k
            s0 += coef * w ** k
            sa += coef * hsum * w ** k
        sa -= mp.factorial(n - 1) * w ** n
        lead = y ** (n - 1) / mp.factorial(n)
        return lead * s0, lead * ((mp.log(y) - mp.digamma(n + 1)) * s0 - sa)
    c = 1 + n
    q = mp.mpf(1)
    dpsi = mp.mpf(0)
    mk = mp.mpf(1)
    dk = mp.mpf(0)
    k = 0
    while True:
        dpsi += mp.mpf(1) / (c + k)
        q *= (c + k) * y / ((2 + k) * (k + 1))
        k += 1
        mk += q
        dk += q * dpsi
        if k > y and q < mp.eps * mk:
            break
    ex = mp.exp(-y)
    return ex * mk, ex * dk


class IntegrandAssembly:
    """Theorem integrand ``F(s)`` as a float-valued callable.

    Parameters
    ----------
    coeffs : TransformCoefficients
    provider : CoefficientProvider
    omega : float
    policy : SeriesPolicy, optional
        Used by :meth:`direct`.
    kind : {'odd', 'theorem3', 'theorem4', 'theorem5'}, optional
        Defaults to 'odd' or 'theorem5' by parity.

    Notes
    -----
    Each call picks a working precision of ``log10(largest partial term) +
    20`` digits, so the cancellation between the two sums costs no accuracy.
    """

    def __init__(self, coeffs, provider, omega, policy=None, kind=None):
        if not omega > 0:
            raise ParameterError("omega must be positive")
        self.coeffs = coeffs
        self.provider = provider
        self.omega = float(omega)
        self.policy = policy or SeriesPolicy()
        if kind is None:
            kind = "odd" if coeffs.parity == "odd" else "theorem5"
        if kind not in _KINDS or (kind == "odd") != (coeffs.parity == "odd"):
            raise ParameterError(f"kind {kind!r} does not fit parity {coeffs.parity!r}")
        self.kind = kind
        self._consts = {}
        self.max_dps_used = 0

    def _constants(self, dps):
        level = max(60, 20 * math.ceil((dps + 15) / 20))
        if level not in self._consts:
            c = self.coeffs
            self._consts[level] = _Constants(self.provider, c.d, c.m2, self.omega, level)
        return self._consts[level]

    def _f_estimate(self, s, consts):
        """log10 of the largest f-sum term, from float logs of B_k."""
        ls = math.log(s)
        best = -math.inf
        k = 1
        while True:
            consts.b(k)
            lt = consts.blog[k] + k * ls - math.lgamma(k + 1) - math.lgamma(k)
            best = max(best, lt)
            if k > 3 and lt < best - 60:
                break
            k += 1
        return best / math.log(10.0)

    def __call__(self, s):
        s = float(s)
        if s == 0.0:
            return 0.0
        if s < 0:
            raise ParameterError("s must be non-negative")
        guess = 0.0 if self.kind == "theorem4" else self._f_estimate(s, self._constants(60))
        dps = max(_BASE_DPS, int(math.ceil(guess + 1.0)) + _GUARD)
        for _ in range(4):
            consts = self._constants(dps)
            value, mag = self._evaluate(s, dps, consts)
            if mag == 0:
                return 0.0
            need = int(math.ceil(_log10_abs(mag))) + _GUARD
            if need <= dps + 2:
                self.max_dps_used = max(self.max_dps_used, dps)
                return float(value)
            dps = need
        raise ConvergenceError(f"precision escalation failed at s={s}")

    def parts(self, s):
        """Dictionary of the separately summed pieces at ``s`` (floats)."""
        s = float(s)
        dps = max(_BASE_DPS, int(math.ceil(self._f_estimate(s, self._constants(60)))) + _GUARD)
        consts = self._constants(dps)
        with mp.workdps(dps):
            ms = mp.mpf(s)
            out = {"f": self._f_part(ms, consts)[0]}
            if self.coeffs.parity == "odd":
                out["g"] = self._g_odd(ms, consts)[0]
            else:
                out["g_neg"] = self._g_even(ms, consts)[0]
                out["omega"] = self._omega_part(ms, consts)[0]
        return {k: float(v) for k, v in out.items()}

    # pieces, each returning (value, sum of |terms|) at the current precision

    def _f_part(self, ms, consts):
        total = mp.mpf(0)
        mag = mp.mpf(0)
        c = -ms
        k = 1
        quiet = 0
        while True:
            t = c * consts.b(k)
            total += t
            mag += abs(t)
            if k > 3 and abs(t) <= _QUIET * mag:
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
            c *= -ms / ((k + 1) * k)
            k += 1
            if k > 5000:
                raise ConvergenceError("f-sum did not converge")
        return total, mag

    def _g_odd(self, ms, consts):
        d = self.coeffs.d
        sup = self.provider.support
        x = ms / consts.m2
        z = -x
        half = mp.mpf(1) / 2
        v0 = mp.hyp1f1(half, 2, z)
        v1 = mp.hyp1f1(-half, 2, z)
        total = mp.mpf(0)
        mag = mp.mpf(0)
        first = max(0, (d - 1) // 2 - sup) if sup is not None else None

        # forward, n = 0, 1, 2, ...
        prev, cur = v0, v1
        n = 0
        quiet = 0
        vals = {0: v0, 1: v1}
        while True:
            v = vals[n] if n <= 1 else cur
            Y, G = consts.y_odd(n)
            t = G * ms * v * Y
            total += t
            mag += abs(t)
            started = first is None or n >= first
            if started and n > (d - 1) // 2 + 2 and abs(t) <= _QUIET * mag:
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
            if n >= 1:
                a = half - n
                nxt = (a * prev - (2 * a - 2 + z) * cur) / (2 - a)
                prev, cur = cur, nxt
            n += 1
            if n > 5000:
                raise ConvergenceError("g-sum did not converge")

        # n = -1, -2, ...: 1F1(1/2 + j; 2; z) is the minimal solution as j
        # grows, so seed two direct values at depth J and recur towards n = 0
        top = None if sup is None else sup - (d - 1) // 2
        if top is None or top >= 1:
            J = top if top is not None else 12
            while True:
                lo = mp.hyp1f1(half + J + 1, 2, z)
                cur = mp.hyp1f1(half + J, 2, z)
                vals = [None] * (J + 1)
                vals[J] = cur
                prv = lo
                for j in range(J, 1, -1):
                    a = half + j            # a_n at n = -j
                    nxt = (a * prv - (2 * a - 2 + z) * cur) / (2 - a)
                    prv, cur = cur, nxt
                    vals[j - 1] = cur
                part = mp.mpf(0)
                pmag = mp.mpf(0)
                last = mp.mpf(0)
                for j in range(1, J + 1):
                    Y, G = consts.y_odd(-j)
                    last = G * ms * vals[j] * Y
                    part += last
                    pmag += abs(last)
                if top is not None or abs(last) <= _QUIET * (mag + pmag):
                    break
                J *= 2
                if J > 4000:
                    raise ConvergenceError("negative g-sum did not converge")
            total += part
            mag += pmag
        return total, mag

    def _g_even(self, ms, consts):
        d = self.coeffs.d
        sup = self.provider.support
        yv = ms / consts.m2
        z = -yv
        v1, d1 = _eps_seed(1, yv)
        v2, d2 = _eps_seed(2, yv)
        total = mp.mpf(0)
        mag = mp.mpf(0)
        first = max(1, d // 2 - sup) if sup is not None else 1
        pv, pd, cv, cd = v1, d1, v2, d2
        n = 1
        quiet = 0
        while True:
            if n == 1:
                v, dv = v1, d1
            elif n == 2:
                v, dv = v2, d2
            else:
                v, dv = cv, cd
            Z, (pw, dig, rg) = consts.z_even(n)
            if Z != 0:
                D = (-dig * v + dv) * rg
                t = pw * ms * D * Z
                total += t
                mag += abs(t)
            else:
                t = mp.mpf(0)
            if n >= first + 2 and abs(t) <= _QUIET * mag:
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
            if n >= 2:
                a0 = 1 - n
                b0 = 2 * a0 - 2 + z
                num_v = a0 * pv - b0 * cv
                num_d = -pv + a0 * pd + 2 * cv - b0 * cd
                nv = num_v / (1 + n)
                nd = (num_d - nv) / (1 + n)
                pv, pd, cv, cd = cv, cd, nv, nd
            n += 1
            if n > 5000:
                raise ConvergenceError("g_{-n} sum did not converge")
        return total, mag

    def _omega_part(self, ms, consts):
        # g_n(s) = -u (n-1)! y^n exp(-u) L^(1)_{n-1}(u), u = s y, n >= 1
        e0 = consts.psi_up(0)
        sup = self.provider.support
        h = self.coeffs.d // 2
        u = ms * consts.y
        ex = mp.exp(-u)
        head = e0 * (ex - 1)
        if sup is not None and sup <= h:
            return head, abs(e0)
        uf = float(u)
        # |L^(1)_{n-1}(u)| <= n exp(u/2)
        bound = -0.5 * uf + math.log(uf) + consts.omega_bound()
        if e0 != 0 and bound < math.log(1e-30) + float(mp.log(abs(e0))):
            return -e0, abs(e0)
        top = None if sup is None else sup - h
        total = head
        mag = abs(e0)
        with mp.workdps(mp.mp.dps + int(uf / 2.3) + 10):
            lprev, lcur = mp.mpf(0), mp.mpf(1)     # L_{-1}, L_0 for alpha = 1
            c = -u * ex * consts.y                  # -u (n-1)! y^n exp(-u) at n = 1
            n = 1
            quiet = 0
            while top is None or n <= top:
                t = c * lcur * consts.psi_up(n)
                total += t
                mag += abs(t)
                if n > 3 and abs(t) <= _QUIET * mag:
                    quiet += 1
                    if quiet >= 3:
                        break
                else:
                    quiet = 0
                k = n - 1
                lprev, lcur = lcur, ((2 * k + 2 - u) * lcur - (k + 1) * lprev) / (k + 1)
                c *= n * consts.y
                n += 1
                if n > 20000:
                    raise ConvergenceError("Omega-piece sum did not converge")
        return +total, mag

    def _evaluate(self, s, dps, consts):
        with mp.workdps(dps):
            ms = mp.mpf(s)
            total = mp.mpf(0)
            mag = mp.mpf(0)
            pieces = []
            if self.kind in ("odd", "theorem3", "theorem5"):
                pieces.append(self._f_part(ms, consts))
            if self.kind == "odd":
                pieces.append(self._g_odd(ms, consts))
            if self.kind in ("theorem3", "theorem5"):
                pieces.append(self._g_even(ms, consts))
            if self.kind in ("theorem4", "theorem5"):
                pieces.append(self._omega_part(ms, consts))
            for v, m in pieces:
                total += v
                mag += m
            return total, mag

    def direct(self, s, n_max=None):
        """Double-precision truncated sum with the public coefficient functions.

        Only meaningful at small ``s``, where the two sums do not cancel badly.
        """
        c = self.coeffs
        N = n_max or c.n_max
        p = self.provider
        d, m2, w = c.d, c.m2, self.omega
        norm = (4.0 * math.pi) ** (-0.5 * d)
        terms = []
        if c.parity == "odd":
            for n in range(1, N + 1):
                terms.append(f_n(n, s, m2) * psi(p, FamilyIndex(d - 2 * n), w, self.policy).value)
            for n in range(-N, N + 1):
                ps = psi(p, FamilyIndex(d - 1 - 2 * n), w, self.policy).value
                if ps != 0.0:
                    terms.append(g_n_odd(n, s, m2) * ps)
            return norm * math.fsum(terms)
        h = d // 2
        if self.kind in ("theorem3", "theorem5"):
            for n in range(1, N + 1):
                terms.append(f_n(n, s, m2) * phi(p, h - n, w, self.policy).value)
                ps = psi(p, h - n, w, self.policy).value
                if ps != 0.0:
                    terms.append(g_neg_n_even(n, s, m2) * ps)
        if self.kind in ("theorem4", "theorem5"):
            for n in range(0, N + 1):
                ps = psi(p, h + n, w, self.policy).value
                if ps != 0.0:
                    terms.append(g_n_even(n, s, m2) * ps)
        return norm * math.fsum(terms)


# -- theorem checks -----------------------------------------------------------

class EvenResiduals(NamedTuple):
    theorem3: float
    theorem5: float


def _assembly(provider, d, m2, omega, kind, policy=None):
    parity = "odd" if d % 2 else "even"
    return IntegrandAssembly(TransformCoefficients(parity, m2, d), provider, omega, policy, kind)


def verify_theorem_odd(provider, d, m2, tau, omega, hankel_policy=None, series_policy=None):
    """|K(tau) - H[F](tau)| for odd ``d`` with the world function set to ``omega``."""
    if d % 2 == 0:
        raise ParameterError("odd dimension expected")
    lhs = heat_kernel_series(provider, d, m2, omega, tau, series_policy)
    F = _assembly(provider, d, m2, omega, "odd", series_policy)
    rhs = hankel_j1(tau, F, hankel_policy).value
    return abs(lhs - rhs)


def _even_sides(provider, d, m2, tau, omega, series_policy):
    if d % 2:
        raise ParameterError("even dimension expected")
    kern = heat_kernel_series(provider, d, m2, omega, tau, series_policy)
    om = (math.exp(-tau * m2) * omega_series(provider, d, omega, tau, series_policy)
          / (4.0 * math.pi) ** (d / 2))
    return kern, om


def verify_theorem_even(provider, d, m2, tau, omega, hankel_policy=None, series_policy=None):
    """Residuals of the even-dimensional statements at one point.

    ``theorem3`` compares K - exp(-tau m2) Omega / (4 pi)^(d/2) with the
    transform of the Phi/Psi sum and ``theorem5`` compares the full kernel
    with the transform of the complete sum.  The Omega piece on its own is
    :func:`verify_theorem_omega`.
    """
    kern, om = _even_sides(provider, d, m2, tau, omega, series_policy)
    out = []
    for kind, lhs in (("theorem3", kern - om), ("theorem5", kern)):
        F = _assembly(provider, d, m2, omega, kind, series_policy)
        out.append(abs(lhs - hankel_j1(tau, F, hankel_policy).value))
    return EvenResiduals(*out)


def verify_theorem_omega(provider, d, m2, tau, omega, hankel_policy=None, series_policy=None):
    """|exp(-tau m2) Omega / (4 pi)^(d/2) - H[F4](tau)| for even ``d``."""
    _, om = _even_sides(provider, d, m2, tau, omega, series_policy)
    F = _assembly(provider, d, m2, omega, "theorem4", series_policy)
    return abs(om - hankel_j1(tau, F, hankel_policy).value)


def _laurent_kernel(provider, d, omega, kmax, n_check):
    """Coefficients of tau^p in D e^{-omega/(2 tau)} sum_k a_k tau^(k - d/2)."""
    h = d // 2
    coef = {}
    for k in range(kmax + 1):
        a = provider.a_mp(k)
        if a == 0:
            continue
        for j in range(k + n_check + 1):
            p = k - j - h
            coef[p] = coef.get(p, 0) + a * (-omega / 2) ** j / mp.factorial(j)
    return coef


def _laurent_kwave(provider, d, omega, kmax):
    """Coefficients of tau^p in the double-sum form of the Omega series."""
    h = d // 2
    coef = {}
    for n in range(h, kmax + 1):
        a = provider.a_mp(n)
        if a == 0:
            continue
        for k in range(n - h + 1):
            p = n - h - k
            coef[p] = coef.get(p, 0) + a * (-omega / 2) ** k / mp.factorial(k)
    return coef


def verify_late_time_split(provider, d, omega, n_check):
    """Largest Laurent-coefficient mismatch in the late-time split.

    The kernel ``tau^(-d/2) e^(-omega/(2 tau)) sum_k a_k tau^k`` is expanded
    as a formal Laurent series, the Omega double sum is subtracted, and the
    coefficient of ``tau^(-n)`` is compared with ``Psi_{d/2-n}`` for
    ``1 <= n <= n_check``.  Non-negative powers must cancel exactly.  Both
    sides carry the common factor ``(4 pi)^(-d/2)``; the mass is zero.
    """
    if d % 2:
        raise ParameterError("even dimension expected")
    h = d // 2
    sup = provider.support
    kmax = sup if sup is not None else 60
    with mp.workdps(40):
        w = mp.mpf(omega)
        lhs = _laurent_kernel(provider, d, w, kmax, n_check)
        for p, c in _laurent_kwave(provider, d, w, kmax).items():
            lhs[p] = lhs.get(p, 0) - c
        norm = (4 * mp.pi) ** (-mp.mpf(h))
        worst = 0.0
        for n in range(1, n_check + 1):
            target = psi(provider, h - n, float(omega)).value
            got = float(norm * provider.vanvleck_sqrt * lhs.get(-n, 0))
            worst = max(worst, abs(got - float(norm) * target))
        for p in range(0, kmax - h + 1):
            worst = max(worst, abs(float(norm * lhs.get(p, 0))))
    return worst
