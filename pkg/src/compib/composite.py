"""Composite fields K = L*M of a totally real field and an imaginary quadratic field.

Elements are written alpha = beta + omega*gamma with beta, gamma in L given by
integral coordinates (x_1..x_n) and (y_1..y_n) over the basis of L; the field
basis of K is (1, l_2..l_n, omega, omega*l_2..omega*l_n), valid whenever
gcd(D_L, D_M) = 1, and D_K = D_M^n * D_L^2.

The index of alpha factors exactly as

    index(alpha) = |N_{M/Q}(I_rel)| * |N_{L/Q}(gamma)| * |F|

where I_rel is the relative index form evaluated at X_i = x_i + omega*y_i and
F collects the cross differences between the two complex embedding families.
``composite_index`` computes the left side from the discriminant of an exact
characteristic polynomial; the three factors are certified independently with
interval arithmetic, which gives a nontrivial identity to test end to end.

For the characteristic polynomial the relative norm to L is taken first:
N_{K/L}(t - alpha) = t^2 - (2*beta + s1*gamma)*t + (beta^2 + s1*beta*gamma
+ s0*gamma^2) with s1, s0 the trace and norm of omega, and x is then
eliminated by a resultant with f.  A literal omega-then-x elimination order
is kept as a slow reference implementation; the two agree (see tests).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CoprimalityError, InternalInvariantError, ValidationError
from .intervals import PREC_START, escalate
from .intutil import exact_sqrt
from .imquad import ImagQuadField
from .numberfield import NumberField
from .polynomials import Poly, discriminant, poly_mod_monic, resultant


class CompositeField:
    """K = L*M with coprime discriminants and the product integral basis."""

    def __init__(self, L: NumberField, M: ImagQuadField):
        self.L = L
        self.M = M
        self.n = L.n
        self.disc = M.disc**L.n * L.disc**2

    def describe(self) -> dict:
        return {
            "degree": 2 * self.n,
            "disc": self.disc,
            "field_L": self.L.describe(),
            "field_M": self.M.describe(),
        }

    def __repr__(self):
        return f"CompositeField(n={self.n}, d={self.M.d}, disc={self.disc})"

    # -- coordinates ----------------------------------------------------------

    def _check_coords(self, xs, ys) -> tuple[tuple[int, ...], tuple[int, ...]]:
        xs, ys = tuple(xs), tuple(ys)
        if len(xs) != self.n or len(ys) != self.n:
            raise ValidationError(f"expected {self.n} x- and y-coordinates")
        if not all(isinstance(c, int) for c in xs + ys):
            raise ValidationError("composite coordinates must be integers")
        return xs, ys

    def _int_scaled_power(self, coords) -> Poly:
        """Power-basis polynomial of denom * (sum coords[i] * basis[i]), integer."""
        pc = self.L.to_power_coeffs(coords)
        d = self.L.denom
        out = []
        for c in pc:
            v = c * d
            if v.denominator != 1:
                raise InternalInvariantError("basis denominator does not clear coordinates")
            out.append(int(v))
        return Poly(out)

    # -- exact invariants -------------------------------------------------------

    def _scaled_char_resultant(self, xs, ys) -> tuple[Poly, int]:
        """(R, D) with char_alpha(t) = R(D*t) / D^(2n), R monic integer.

        R is the characteristic polynomial of D*alpha, obtained by eliminating
        x from the relative characteristic polynomial over L.
        """
        xs, ys = self._check_coords(xs, ys)
        L, M = self.L, self.M
        d = L.denom
        b = self._int_scaled_power(xs)
        g = self._int_scaled_power(ys)
        s1, s0 = M.omega_trace, M.omega_norm
        trace_poly = 2 * b + s1 * g
        norm_poly = poly_mod_monic(b * b + s1 * (b * g) + s0 * (g * g), L.f)
        deg = max(trace_poly.degree, norm_poly.degree)
        if deg <= 0:
            # alpha lies in Q(omega): char of D*alpha is a quadratic power
            a0 = trace_poly.coeffs[0] if trace_poly.coeffs else 0
            b0 = norm_poly.coeffs[0] if norm_poly.coeffs else 0
            return Poly([b0, -a0, 1]) ** self.n, d
        entries = []
        for j in range(deg + 1):
            tj = trace_poly.coeffs[j] if j <= trace_poly.degree else 0
            nj = norm_poly.coeffs[j] if j <= norm_poly.degree else 0
            entries.append(Poly([nj, -tj, 1]) if j == 0 else Poly([nj, -tj]))
        r = resultant(L.f, Poly(entries))
        if not (isinstance(r, Poly) and r.degree == 2 * self.n and r.lc == 1):
            raise InternalInvariantError("composite characteristic resultant is not monic")
        return r, d

    def char_poly(self, xs, ys) -> Poly:
        """Monic characteristic polynomial of alpha over Q, degree 2n."""
        r, d = self._scaled_char_resultant(xs, ys)
        m = 2 * self.n
        return Poly([Fraction(c, d ** (m - k)) for k, c in enumerate(r.coeffs)])

    def composite_index(self, xs, ys) -> int:
        """Index of alpha in Z_K; zero exactly when alpha is not primitive."""
        r, d = self._scaled_char_resultant(xs, ys)
        m = 2 * self.n
        disc_r = discriminant(r)
        if disc_r == 0:
            return 0
        disc_char, rem = divmod(disc_r, d ** (m * (m - 1)))
        if rem:
            raise InternalInvariantError("discriminant scaling is not exact")
        q, rem = divmod(abs(disc_char), abs(self.disc))
        if rem:
            raise InternalInvariantError("element discriminant is not a multiple of D_K")
        s = exact_sqrt(q)
        if s is None:
            raise InternalInvariantError("index squared is not a perfect square")
        return s

    # -- certified factor computations -------------------------------------------

    def relative_index_form(self, xs, ys) -> tuple[int, int]:
        """I_rel at X_i = x_i + omega*y_i as an omega-integer (a, b)."""
        xs, ys = self._check_coords(xs, ys)
        L, M = self.L, self.M
        u = M.omega_re

        def task(prec):
            emb = L.embeddings(prec)
            vv, vr = M.im_omega(prec)
            re = emb.recip_sqrt_disc
            im = re * 0
            for diffs in emb.diffs:
                xp = diffs[0] * xs[1]
                yp = diffs[0] * ys[1]
                for k in range(1, self.n - 1):
                    if xs[k + 1]:
                        xp = xp + diffs[k] * xs[k + 1]
                    if ys[k + 1]:
                        yp = yp + diffs[k] * ys[k + 1]
                # factor (xp + omega*yp) = (xp + u*yp) + i*v*yp
                fre = xp + yp * u if u else xp
                fim = vv * yp
                re, im = re * fre - im * fim, re * fim + im * fre
            bv = (im * vr).certify_integer(must=True)
            if bv is None:
                return None
            av = (re - u * bv).certify_integer(must=True) if u else re.certify_integer(must=True)
            if av is None:
                return None
            return av, bv

        return escalate(task, start=PREC_START, cap=self.L.precision_cap)

    def factor_eq1(self, xs, ys) -> int:
        """N_{M/Q} of the relative index form; a non-negative integer."""
        xs, ys = self._check_coords(xs, ys)
        L, M = self.L, self.M
        u = M.omega_re
        v_sq = M.im_omega_sq

        recip_disc = Fraction(1, L.disc)

        def task(prec):
            emb = L.embeddings(prec)
            prod = None
            for diffs in emb.diffs:
                xp = diffs[0] * xs[1]
                yp = diffs[0] * ys[1]
                for k in range(1, self.n - 1):
                    if xs[k + 1]:
                        xp = xp + diffs[k] * xs[k + 1]
                    if ys[k + 1]:
                        yp = yp + diffs[k] * ys[k + 1]
                re = xp + yp * u if u else xp
                term = re * re + yp * yp * v_sq
                prod = term if prod is None else prod * term
            return (prod * recip_disc).certify_integer(must=True)

        return escalate(task, start=PREC_START, cap=self.L.precision_cap)

    def factor_eq2(self, ys) -> int:
        """N_{L/Q}(gamma) for the omega-part gamma."""
        ys = tuple(ys)
        if len(ys) != self.n:
            raise ValidationError(f"expected {self.n} y-coordinates")
        return self.L.element_norm(ys)

    def factor_F(self, xs, ys) -> int:
        """Product of cross differences between the two embedding families.

        Pairing each (j1, j2) with (j2, j1) shows F = (-1)^e * (a product of
        squared moduli) with e = n(n-1)/2, so F is certified through real
        intervals only.
        """
        xs, ys = self._check_coords(xs, ys)
        L, M = self.L, self.M
        u = M.omega_re
        v_sq = M.im_omega_sq
        e = self.n * (self.n - 1) // 2

        def task(prec):
            emb = L.embeddings(prec)
            prod = None
            for diffs, sums in zip(emb.diffs, emb.sums):
                xd = diffs[0] * xs[1]
                yd = diffs[0] * ys[1]
                ysum = sums[0] * ys[1]
                for k in range(1, self.n - 1):
                    if xs[k + 1]:
                        xd = xd + diffs[k] * xs[k + 1]
                    if ys[k + 1]:
                        yd = yd + diffs[k] * ys[k + 1]
                        ysum = ysum + sums[k] * ys[k + 1]
                ysum = ysum + 2 * ys[0]
                re = xd + yd * u if u else xd
                term = re * re + ysum * ysum * v_sq
                prod = term if prod is None else prod * term
            if prod is None:
                raise InternalInvariantError("degree-1 field in cross-difference product")
            k = prod.certify_integer(must=True)
            if k is None:
                return None
            return -k if e % 2 else k

        return escalate(task, start=PREC_START, cap=self.L.precision_cap)

    def factorization(self, xs, ys) -> dict:
        """All three factors, the index, and the identity check in one report."""
        eq1 = self.factor_eq1(xs, ys)
        eq2 = self.factor_eq2(ys)
        fval = self.factor_F(xs, ys)
        idx = self.composite_index(xs, ys)
        if idx != abs(eq1) * abs(eq2) * abs(fval):
            raise InternalInvariantError("factor product disagrees with the exact index")
        return {"eq1": eq1, "eq2": eq2, "F": fval, "index": idx}


def make_composite(L: NumberField, M: ImagQuadField) -> CompositeField:
    """Validated composite; discriminants of L and M must be coprime."""
    g = math.gcd(L.disc, abs(M.disc))
    if g != 1:
        raise CoprimalityError(
            f"gcd(D_L, D_M) = {g} != 1 for D_L = {L.disc}, D_M = {M.disc}"
        )
    return CompositeField(L, M)


def _char_poly_reference(K: CompositeField, xs, ys) -> Poly:
    """Slow omega-first elimination used only to cross-check char_poly."""
    xs, ys = K._check_coords(xs, ys)
    n = K.n
    beta = K.L.to_power_coeffs(xs)
    gamma = K.L.to_power_coeffs(ys)

    def t_const(fr):
        return Poly([Fraction(fr)])

    def yt_const(fr):
        return Poly([t_const(fr)])

    # t - beta(x) - y*gamma(x) as an x-polynomial over Q[y][t]
    coeffs_x = []
    for i in range(n):
        c0 = Poly([Fraction(-beta[i]), Fraction(1)]) if i == 0 else t_const(-beta[i])
        coeffs_x.append(Poly([c0, t_const(-gamma[i])]))
    f_lift = Poly([yt_const(c) for c in K.L.f.coeffs])
    inner = resultant(f_lift, Poly(coeffs_x))
    if not isinstance(inner, Poly):
        inner = Poly([t_const(inner)])
    g_lift = Poly([t_const(c) for c in K.M.min_poly_omega.coeffs])
    outer = resultant(g_lift, inner)
    if not isinstance(outer, Poly):
        outer = Poly([Fraction(outer)])
    return outer.map_coeffs(Fraction)
