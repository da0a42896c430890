"""Coefficient families and Seeley-DeWitt coefficient providers.

Three coefficient families appear in the function series:

* ``g_int(p, k) = (-2)^p / Gamma(k - p + 1)`` for integer index ``p``,
* ``g_half(p, k) = (-1)^k Gamma(p - k) 2^p`` for half-integer ``p``,
* ``g_tilde(k, n)``, the logarithmic companion family.

A provider supplies the coefficients ``a_k`` at a fixed implicit point
pair together with the square root of the Van Vleck determinant.
"""
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from ._series import ParameterError
from .specfun import gamma, harmonic, recip_gamma


@dataclass(frozen=True, order=True)
class FamilyIndex:
    """Integer or half-integer index stored exactly as twice its value.

    Examples
    --------
    >>> FamilyIndex.of(-1.5).twice_value
    -3
    >>> FamilyIndex.of(2).shift(1).value
    3.0
    """

    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, int):
            raise ParameterError("twice_value must be an int")

    @classmethod
    def of(cls, value):
        """Build from an int, a float or a Fraction equal to a multiple of 1/2."""
        if isinstance(value, FamilyIndex):
            return value
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ParameterError(f"{value} is neither integer nor half-integer")
        return cls(int(twice))

    @property
    def convention(self):
        return "Integer" if self.twice_value % 2 == 0 else "HalfInteger"

    @property
    def is_integer(self):
        return self.twice_value % 2 == 0

    @property
    def value(self):
        return self.twice_value / 2.0

    @property
    def int_value(self):
        if not self.is_integer:
            raise ParameterError("half-integer index has no integer value")
        return self.twice_value // 2

    def shift(self, k):
        return FamilyIndex(self.twice_value + 2 * int(k))

    def __repr__(self):
        if self.is_integer:
            return f"FamilyIndex({self.twice_value // 2})"
        return f"FamilyIndex({self.twice_value}/2)"


def g_int(p, k):
    """Integer-index coefficient ``(-2)^p / Gamma(k - p + 1)``; zero for k < p."""
    return (-2.0) ** p * recip_gamma(k - p + 1)


def g_half(p, k):
    """Half-integer-index coefficient ``(-1)^k Gamma(p - k) 2^p``."""
    p = FamilyIndex.of(p)
    if p.is_integer:
        raise ParameterError("g_half needs a half-integer index")
    pv = p.value
    return (-1.0) ** k * gamma(pv - k) * 2.0 ** pv


def g_family(p, k):
    """Dispatch to :func:`g_int` or :func:`g_half` by the index convention."""
    p = FamilyIndex.of(p)
    if p.is_integer:
        return g_int(p.int_value, k)
    return g_half(p, k)


def g_tilde(k, n):
    """Logarithmic companion coefficient.

    ``Gamma(k - n)`` for ``n < k`` and ``(-1)^(n-k) H_{n-k} / (n-k)!`` otherwise.
    """
    if n < k:
        return gamma(k - n)
    j = n - k
    return (-1.0) ** j * harmonic(j) / math.factorial(j)


def g_tilde_mp(k, n):
    if n < k:
        return mp.factorial(k - n - 1)
    j = n - k
    return (-1) ** j * mp.harmonic(j) / mp.factorial(j)


class CoefficientProvider:
    """Seeley-DeWitt coefficients ``a_k`` with ``a_0 = 1`` and ``a_k = 0`` for k < 0.

    ``support`` is the largest index that can be nonzero, or ``None`` when
    the sequence is infinite.
    """

    kind = "abstract"
    vanvleck_sqrt = 1.0
    support = None

    def a(self, k):
        raise NotImplementedError

    def a_mp(self, k):
        return mp.mpf(self.a(k))

    def potential(self):
        """Constant potential ``v`` entering ``A = -Laplacian - v`` (0 when absent)."""
        return 0.0


class Flat(CoefficientProvider):
    """Flat space: ``a_k = delta_{k0}``."""

    kind = "flat"
    support = 0

    def a(self, k):
        return 1.0 if k == 0 else 0.0

    def __repr__(self):
        return "Flat()"


class ConstantPotential(CoefficientProvider):
    """Flat space with constant potential, ``a_k = v^k / k!``."""

    kind = "constpot"

    def __init__(self, v):
        self.v = float(v)
        if self.v == 0.0:
            self.support = 0

    def a(self, k):
        if k < 0:
            return 0.0
        return self.v ** k / math.factorial(k)

    def a_mp(self, k):
        if k < 0:
            return mp.mpf(0)
        return mp.mpf(self.v) ** k / mp.factorial(k)

    def potential(self):
        return self.v

    def __repr__(self):
        return f"ConstantPotential({self.v!r})"


class Table(CoefficientProvider):
    """Finite table of externally computed coefficients, zero past its end."""

    kind = "table"

    def __init__(self, values, vanvleck_sqrt=1.0):
        values = [float(x) for x in values]
        if not values or values[0] != 1.0:
            raise ParameterError("table must start with a_0 = 1")
        self.values = tuple(values)
        self.vanvleck_sqrt = float(vanvleck_sqrt)
        self.support = len(values) - 1

    def a(self, k):
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0.0

    def __repr__(self):
        return f"Table({list(self.values)!r}, vanvleck_sqrt={self.vanvleck_sqrt!r})"


def seeley_dewitt(provider, k):
    """Coefficient ``a_k`` of ``provider``; zero for negative ``k``."""
    if k < 0:
        return 0.0
    return provider.a(k)


def load_table(path):
    """Read a provider table ``{"a": [1.0, ...], "vanvleck_sqrt": 1.0}``."""
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, list):
        return Table(doc)
    if "a" not in doc:
        raise ParameterError("table file needs an 'a' array")
    return Table(doc["a"], doc.get("vanvleck_sqrt", 1.0))


def parse_provider(text):
    """Parse ``flat``, ``constpot:v`` or ``table:PATH``."""
    if text == "flat":
        return Flat()
    if text.startswith("constpot:"):
        return ConstantPotential(float(text.split(":", 1)[1]))
    if text.startswith("table:"):
        return load_table(text.split(":", 1)[1])
    raise ParameterError(f"unknown provider {text!r}")
