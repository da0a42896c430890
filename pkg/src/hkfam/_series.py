"""Truncation policy, series results and error types shared by all modules."""
import math
import os
from dataclasses import dataclass, field


class PoleError(ValueError):
    """Argument sits on a pole of the requested function."""


class ParameterError(ValueError):
    """Parameters outside the supported domain."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature did not meet its tolerance within its budget."""


def _default_max_terms():
    raw = os.environ.get("HK_MAX_TERMS")
    if raw is None or raw == "":
        return 60
    return int(raw)


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation rule: stop after three consecutive terms below
    ``rtol * |partial| + atol`` or after ``max_terms`` terms.

    ``max_terms`` defaults to 60 and can be overridden by the
    ``HK_MAX_TERMS`` environment variable.
    """

    max_terms: int = field(default_factory=_default_max_terms)
    rtol: float = 1e-12
    atol: float = 1e-300

    def __post_init__(self):
        if self.max_terms < 4:
            raise ParameterError("max_terms must be at least 4")
        if not (self.rtol >= 0 and self.atol >= 0):
            raise ParameterError("tolerances must be non-negative")


@dataclass(frozen=True)
class SeriesValue:
    """Value of a truncated series with its bookkeeping."""

    value: float
    terms_used: int
    converged: bool
    error_estimate: float = 0.0

    def __float__(self):
        return float(self.value)


def fsum_terms(terms, policy, start=0, stop=None):
    """Sum ``terms`` (an iterator) with the three-quiet-terms rule.

    Testing for smallness begins at index ``start``, so leading zeros of a
    series whose support begins later do not end the summation early.  A
    finite ``stop`` marks the last index that can be nonzero.
    """
    acc = []
    quiet = 0
    k = -1
    partial = 0.0
    for k, t in enumerate(terms):
        acc.append(t)
        partial += t
        if stop is not None and k >= stop:
            return SeriesValue(math.fsum(acc), k + 1, True)
        if k >= start:
            if abs(t) < policy.rtol * abs(partial) + policy.atol:
                quiet += 1
                if quiet >= 3:
                    return SeriesValue(math.fsum(acc), k + 1, True)
            else:
                quiet = 0
        if k + 1 >= policy.max_terms + start:
            break
    return SeriesValue(math.fsum(acc), k + 1, False)
