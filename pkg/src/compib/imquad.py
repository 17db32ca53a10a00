"""Imaginary quadratic fields Q(i*sqrt(d)) for squarefree d >= 1.

The ring of integers is Z[omega] with omega = i*sqrt(d) when -d = 2, 3
(mod 4) and omega = (1 + i*sqrt(d))/2 when -d = 1 (mod 4); the two cases
differ in discriminant (-4d versus -d) and in every bound downstream, so the
case flag is carried explicitly as ``residue``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError
from .intervals import RealInterval, sqrt_int
from .intutil import is_squarefree
from .polynomials import Poly


class ImagQuadField:
    """Q(i*sqrt(d)) with omega chosen so that (1, omega) is an integral basis."""

    def __init__(self, d: int, residue: bool):
        self.d = d
        self.residue = residue
        self.disc = -d if residue else -4 * d
        self.omega_trace = 1 if residue else 0        # omega + conj(omega)
        self.omega_norm = (1 + d) // 4 if residue else d
        self.min_poly_omega = Poly([self.omega_norm, -self.omega_trace, 1])
        self.omega_re = Fraction(self.omega_trace, 2)
        # Im(omega)^2, exact: d in the non-residue case, d/4 in the residue case
        self.im_omega_sq = Fraction(d, 4) if residue else Fraction(d)
        self._im_cache: dict[int, tuple[RealInterval, RealInterval]] = {}

    def quad_norm(self, a: int, b: int) -> int:
        """Norm of a + b*omega down to Q."""
        return a * a + self.omega_trace * a * b + self.omega_norm * b * b

    def conj_coords(self, a: int, b: int) -> tuple[int, int]:
        """Coordinates of the complex conjugate of a + b*omega."""
        return a + self.omega_trace * b, -b

    def im_omega(self, prec: int) -> tuple[RealInterval, RealInterval]:
        """Enclosures of Im(omega) and 1/Im(omega)."""
        hit = self._im_cache.get(prec)
        if hit is None:
            v = sqrt_int(self.d, prec)
            if self.residue:
                v = v * Fraction(1, 2)
            hit = self._im_cache[prec] = (v, v.recip())
        return hit

    def describe(self) -> dict:
        omega = "(1+i*sqrt(d))/2" if self.residue else "i*sqrt(d)"
        return {
            "d": self.d,
            "disc": self.disc,
            "omega": omega,
            "omega_min_poly": [int(c) for c in self.min_poly_omega.coeffs],
        }

    def __repr__(self):
        return f"ImagQuadField(d={self.d}, disc={self.disc})"


def make_imq(d: int) -> ImagQuadField:
    """Validated Q(i*sqrt(d)); d must be a squarefree positive integer."""
    if not isinstance(d, int) or d < 1:
        raise ValidationError("d must be a positive integer")
    if not is_squarefree(d):
        raise ValidationError(f"d = {d} is not squarefree")
    return ImagQuadField(d, residue=(-d) % 4 == 1)
