"""Small exact integer utilities: 2-adic valuation, squarefree tests, integer square root."""

from __future__ import annotations

import math

from .errors import ValidationError


def v2(m: int) -> int:
    """Exponent of 2 in m (m nonzero)."""
    if m == 0:
        raise ValidationError("v2(0) is undefined")
    return (m & -m).bit_length() - 1


def is_squarefree(m: int) -> bool:
    """True iff no prime square divides m. Trial division up to sqrt(m); m >= 1."""
    if m < 1:
        raise ValidationError("squarefree test expects m >= 1")
    if m % 4 == 0:
        return False
    p = 3
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        if m % p == 0:
            m //= p
        p += 2
    return True


def odd_square_free(m: int) -> bool:
    """True iff no odd prime square divides m (even squares are allowed)."""
    if m < 1:
        raise ValidationError("odd-squarefree test expects m >= 1")
    m >>= v2(m)
    return is_squarefree(m) if m > 1 else True


def exact_sqrt(m: int) -> int | None:
    """Integer square root of m if m is a perfect square, else None."""
    if m < 0:
        return None
    r = math.isqrt(m)
    return r if r * r == m else None


def floor_sqrt_fraction(fr) -> int:
    """floor(sqrt(p/q)) for a non-negative rational, by integer search."""
    num, den = fr.numerator, fr.denominator
    if num < 0:
        raise ValidationError("square root of a negative rational")
    k = math.isqrt(num // den)
    while (k + 1) * (k + 1) * den <= num:
        k += 1
    return k


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    p = 3
    while p * p <= m:
        if m % p == 0:
            return False
        p += 2
    return True
