"""Exact integer and rational helpers.

Rationals are plain :class:`fractions.Fraction` values; they are always kept
in lowest terms with a positive denominator, which is exactly the normal form
the rest of the package relies on.
"""

from __future__ import annotations

import math
import re
import threading
from fractions import Fraction

ExactRational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError(f"factorial of negative integer {k}")
    return math.factorial(k)


def binomial(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError(f"binomial({a}, {b}) with negative argument")
    if b > a:
        raise ValueError(f"binomial({a}, {b}) requires b <= a")
    return math.comb(a, b)


class _BernoulliTable:
    """Grow-only memo of B_0, B_1, ...

    Readers see a tuple that is replaced wholesale under the lock, so a
    reader never observes a half-extended table.
    """

    def __init__(self):
        self._values: tuple[Fraction, ...] = (Fraction(1),)
        self._lock = threading.Lock()

    def get(self, q: int) -> Fraction:
        values = self._values
        if q < len(values):
            return values[q]
        with self._lock:
            values = list(self._values)
            for k in range(len(values), q + 1):
                # sum_{j=0}^{k} C(k+1, j) B_j = 0
                acc = sum(math.comb(k + 1, j) * values[j] for j in range(k))
                values.append(-acc / (k + 1))
            self._values = tuple(values)
            return self._values[q]


_bernoulli = _BernoulliTable()


def bernoulli(q: int) -> Fraction:
    """Bernoulli number with the convention x/(e^x - 1) = sum B_q x^q / q!.

    So B_1 = -1/2, B_q = 0 for odd q >= 3, and B_q = 0 for every q < 0.
    The pairing formulas only ever ask for even q; B_1 is kept for
    completeness.
    """
    if q < 0:
        return Fraction(0)
    if q >= 3 and q % 2:
        return Fraction(0)
    return _bernoulli.get(q)


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(value) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when integral)."""
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)
