"""Certified interval arithmetic on the dyadic grid.

A ``RealInterval`` stores integer endpoints ``lo <= hi`` at a fixed scale
``2**-prec``, so every operation is plain integer arithmetic with outward
rounding: the true value is always contained.  A value known in advance to
be an integer is resolved exactly once the enclosure has width < 1/2.

Precision policy: evaluations start at ``PREC_START`` bits and double on a
failed integer certification, up to ``PREC_CAP``; past the cap a
``PrecisionError`` is raised rather than ever rounding silently.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InternalInvariantError, PrecisionError

PREC_START = 128
PREC_CAP = 8192


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class RealInterval:
    """Enclosure [lo/2^prec, hi/2^prec] of a real number."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: int, hi: int, prec: int):
        if lo > hi:
            raise InternalInvariantError("interval endpoints out of order")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @classmethod
    def from_int(cls, k: int, prec: int) -> RealInterval:
        v = k << prec
        return cls(v, v, prec)

    @classmethod
    def from_fraction(cls, fr: Fraction, prec: int) -> RealInterval:
        num = fr.numerator << prec
        den = fr.denominator
        return cls(_floor_div(num, den), _ceil_div(num, den), prec)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: RealInterval) -> None:
        if self.prec != other.prec:
            raise InternalInvariantError("mixed-precision interval arithmetic")

    def __add__(self, other):
        if isinstance(other, RealInterval):
            self._check(other)
            return RealInterval(self.lo + other.lo, self.hi + other.hi, self.prec)
        if isinstance(other, int):
            k = other << self.prec
            return RealInterval(self.lo + k, self.hi + k, self.prec)
        if isinstance(other, Fraction):
            return self + RealInterval.from_fraction(other, self.prec)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        if isinstance(other, (RealInterval, int, Fraction)):
            return self + (-other if isinstance(other, RealInterval) else -other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self.prec
        if isinstance(other, RealInterval):
            self._check(other)
            a, b, c, d = self.lo, self.hi, other.lo, other.hi
            # products live at scale 2^(2p); shift back with outward rounding
            cands = (a * c, a * d, b * c, b * d)
            return RealInterval(min(cands) >> p, _ceil_div(max(cands), 1 << p), p)
        if isinstance(other, int):
            if other >= 0:
                return RealInterval(self.lo * other, self.hi * other, p)
            return RealInterval(self.hi * other, self.lo * other, p)
        if isinstance(other, Fraction):
            num, den = other.numerator, other.denominator
            a, b = self.lo * num, self.hi * num
            if a > b:
                a, b = b, a
            return RealInterval(_floor_div(a, den), _ceil_div(b, den), p)
        return NotImplemented

    __rmul__ = __mul__

    def recip(self) -> RealInterval:
        """1/self for an interval not containing zero."""
        if self.lo > 0:
            one = 1 << (2 * self.prec)
            return RealInterval(_floor_div(one, self.hi), _ceil_div(one, self.lo), self.prec)
        if self.hi < 0:
            return -((-self).recip())
        raise InternalInvariantError("reciprocal of interval containing zero")

    # -- queries ------------------------------------------------------------

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def excludes_integers_beyond(self, bound: int) -> bool:
        """True iff every point of the interval has absolute value > bound."""
        return self.lo > (bound << self.prec) or self.hi < (-bound << self.prec)

    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.prec)

    def mid(self) -> Fraction:
        return Fraction(self.lo + self.hi, 1 << (self.prec + 1))

    def contains_fraction(self, fr: Fraction) -> bool:
        num = fr.numerator << self.prec
        den = fr.denominator
        return self.lo * den <= num <= self.hi * den

    def integer_range(self) -> tuple[int, int]:
        """Smallest and largest integers inside (empty when klo > khi)."""
        klo = _ceil_div(self.lo, 1 << self.prec)
        khi = self.hi >> self.prec
        return klo, khi

    def certify_integer(self, *, must: bool = False) -> int | None:
        """The unique integer inside, provided the width is < 1/2.

        Returns None when the interval is still too wide; with ``must`` set,
        an interval that is narrow enough but excludes all integers raises
        (the true value was promised to be an integer, so the enclosure or
        the promise is wrong).
        """
        if self.hi - self.lo >= 1 << (self.prec - 1):
            return None
        klo, khi = self.integer_range()
        if klo > khi:
            if must:
                raise InternalInvariantError(
                    "narrow enclosure excludes all integers for an integer-valued quantity"
                )
            return None
        if klo != khi:
            raise InternalInvariantError("width < 1/2 cannot contain two integers")
        return klo

    def __repr__(self):
        return f"RealInterval({float(self.mid()):.6g} ± {float(self.width()) / 2:.3g} @{self.prec}b)"


class ComplexInterval:
    """Rectangular enclosure of a complex number (independent re/im intervals)."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealInterval, im: RealInterval):
        self.re = re
        self.im = im

    @classmethod
    def from_real(cls, re: RealInterval) -> ComplexInterval:
        zero = RealInterval(0, 0, re.prec)
        return cls(re, zero)

    def __add__(self, other):
        if isinstance(other, ComplexInterval):
            return ComplexInterval(self.re + other.re, self.im + other.im)
        return ComplexInterval(self.re + other, self.im)

    def __sub__(self, other):
        if isinstance(other, ComplexInterval):
            return ComplexInterval(self.re - other.re, self.im - other.im)
        return ComplexInterval(self.re - other, self.im)

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, ComplexInterval):
            return ComplexInterval(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return ComplexInterval(self.re * other, self.im * other)

    __rmul__ = __mul__

    def conj(self) -> ComplexInterval:
        return ComplexInterval(self.re, -self.im)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def __repr__(self):
        return f"ComplexInterval({self.re!r}, {self.im!r})"


def sqrt_int(m: int, prec: int) -> RealInterval:
    """Certified enclosure of sqrt(m) for an integer m >= 0."""
    if m < 0:
        raise InternalInvariantError("sqrt of negative integer")
    s = math.isqrt(m << (2 * prec))
    hi = s if s * s == m << (2 * prec) else s + 1
    return RealInterval(s, hi, prec)


def escalate(task, *, start: int = PREC_START, cap: int = PREC_CAP):
    """Run task(prec), doubling precision while it returns None.

    Raises PrecisionError once the cap is exceeded; enclosures are never
    silently rounded.
    """
    prec = start
    while prec <= cap:
        out = task(prec)
        if out is not None:
            return out
        prec *= 2
    raise PrecisionError(f"integer certification failed below the {cap}-bit precision cap")
