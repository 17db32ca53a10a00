import itertools
import math

import pytest
import sympy

from compib.errors import ValidationError
from compib.numberfield import _invert_matrix
from compib.polynomials import Poly, discriminant, sturm_real_root_count
from compib.simplest_quartic import (OLAJOS_A2, OLAJOS_A4, d3_partial_search,
                                     family_discriminant, family_poly_coeffs,
                                     make_simplest_quartic, olajos_generators,
                                     verify_theorem_cq)


def test_parameter_validation():
    for bad in (3, 22, 0, -5, "2", 2.0):
        with pytest.raises(ValidationError):
            make_simplest_quartic(bad)
    for bad in (3, 22):
        with pytest.raises(ValidationError):
            olajos_generators(bad)


def test_known_discriminants():
    for a, dl in ((1, 17**3), (2, 2000), (4, 2048), (5, 41**3), (7, 65**3), (8, 8000)):
        assert family_discriminant(a) == dl
        assert make_simplest_quartic(a).disc == dl


def test_poly_discriminant_law():
    for a in (1, 2, 4, 5, 6, 7):
        f = Poly(family_poly_coeffs(a))
        assert discriminant(f) == 4 * (a * a + 16) ** 3
        assert sturm_real_root_count(f) == 4


def test_basis_determinant_law():
    # det(B)^2 * disc(f) = D_L for every constructed field
    for a in (1, 2, 4, 5, 6, 8, 16):
        L = make_simplest_quartic(a)
        _, det = _invert_matrix([list(r) for r in L.basis])
        assert det * det * discriminant(L.f) == L.disc


def test_generator_tables():
    g2 = olajos_generators(2)
    assert len(g2) == 10 and g2 == OLAJOS_A2
    assert (4, 2, -1) in g2 and (0, 1, 0) in g2
    g4 = olajos_generators(4)
    assert len(g4) == 6 and g4 == OLAJOS_A4
    assert (3, 2, -1) in g4
    assert olajos_generators(5) == ()
    assert olajos_generators(1) == ()


def test_tables_have_index_one(fam2, fam4):
    for L, table in ((fam2, OLAJOS_A2), (fam4, OLAJOS_A4)):
        for v in table:
            assert L.element_index(v) == 1


def _canonical(v):
    lead = next((c for c in v if c), 0)
    return tuple(-c for c in v) if lead < 0 else tuple(v)


def test_box_search_regenerates_tables(fam2, fam4):
    got = {v for v, _ in fam2.enumerate_bounded_index(1, 15)}
    assert got == {_canonical(v) for v in OLAJOS_A2}
    got = {v for v, _ in fam4.enumerate_bounded_index(1, 10)}
    assert got == {_canonical(v) for v in OLAJOS_A4}


def test_other_parameters_have_no_generators_in_box(fam1):
    assert fam1.enumerate_bounded_index(1, 10) == ()
    L6 = make_simplest_quartic(6)
    assert L6.enumerate_bounded_index(1, 10) == ()


def _numeric_index_oracle(a, radius, bound):
    """Count box vectors with 1 <= index <= bound via 60-digit numerics.

    Fully independent route: sympy nroots for the conjugates, the index-form
    product formula evaluated in mpmath, rounded to the nearest integer.
    True values are integers and the precision is far beyond the rounding
    gap, so the count is exact.
    """
    import mpmath

    mpmath.mp.dps = 60
    x = sympy.Symbol("x")
    f = sympy.Poly(sum(c * x**j for j, c in enumerate(family_poly_coeffs(a))), x)
    roots = [mpmath.mpf(str(r)) for r in f.nroots(n=60, maxsteps=200)]
    L = make_simplest_quartic(a)
    basis_vals = [
        [sum(mpmath.mpf(str(c)) * r**j for j, c in enumerate(row)) for row in L.basis]
        for r in roots
    ]
    sqrt_disc = mpmath.sqrt(L.disc)
    hits = []
    rng = range(-radius, radius + 1)
    for vec in itertools.product(rng, repeat=3):
        lead = next((c for c in vec if c), 0)
        if lead <= 0:
            continue
        prod = mpmath.mpf(1)
        for j1, j2 in itertools.combinations(range(4), 2):
            prod *= sum(vec[k] * (basis_vals[j1][k + 1] - basis_vals[j2][k + 1])
                        for k in range(3))
        val = abs(prod) / sqrt_disc
        k = int(mpmath.nint(val))
        assert abs(val - k) < mpmath.mpf("1e-30")
        if 1 <= k <= bound:
            hits.append((vec, k))
    return hits


def test_bounded_enumeration_against_numeric_oracle(fam1):
    oracle = _numeric_index_oracle(1, 5, 64)
    got = fam1.enumerate_bounded_index(64, 5)
    assert sorted(got) == sorted(oracle)


def test_grid_small():
    rep = verify_theorem_cq(a_max=2, d_max=7, box_radius=8, jobs=1)
    by_cell = {(r["a"], r["d"]): r for r in rep["rows"]}
    assert rep["cells"] == 14
    assert by_cell[(2, 1)]["status"] == "SKIPPED"
    assert "not coprime" in by_cell[(2, 1)]["reason"]
    assert by_cell[(1, 3)]["status"] == "SKIPPED"
    assert "d3_partial_search" in by_cell[(1, 3)]["reason"]
    assert by_cell[(1, 4)]["reason"] == "d is not squarefree"
    ran = [r for r in rep["rows"] if r["status"] == "OK"]
    assert ran and all(r["verdict"] == "NOT_MONOGENIC" for r in ran)
    assert rep["all_not_monogenic"] and rep["counterexamples"] == []
    assert all(r["ms"] is None for r in ran)


def test_grid_parallel_matches_serial():
    serial = verify_theorem_cq(a_max=5, d_max=6, box_radius=6, jobs=1)
    parallel = verify_theorem_cq(a_max=5, d_max=6, box_radius=6, jobs=3)
    assert serial == parallel


def test_grid_validation():
    with pytest.raises(ValidationError):
        verify_theorem_cq(a_max=0)
    with pytest.raises(ValidationError):
        verify_theorem_cq(jobs=0)


def test_d3_partial_search(fam1):
    rep = d3_partial_search(1, box_radius=5)
    assert rep["verdict"] == "INCONCLUSIVE"
    assert rep["completeness"] == "BOX_LIMITED"
    assert rep["regime"] == "RES_D3"
    assert rep["a"] == 1 and rep["box_radius"] == 5
    with pytest.raises(ValidationError):
        d3_partial_search(3)


def test_invalid_parameter_gives_skip_rows():
    rep = verify_theorem_cq(a_max=3, d_max=2, box_radius=5)
    rows3 = [r for r in rep["rows"] if r["a"] == 3]
    assert len(rows3) == 2
    assert all(r["status"] == "SKIPPED" and "excluded" in r["reason"] for r in rows3)
