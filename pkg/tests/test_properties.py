"""Property-based invariants of the exact kernels."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from planepencil.core.euclid import gcd_poly, is_squarefree, resultant, squarefree_part
from planepencil.core.multipoly import MultiPoly

coeffs = st.fractions(
    min_value=-9, max_value=9, max_denominator=4
).filter(lambda q: q != 0)


@st.composite
def polys(draw, max_terms=4, max_exp=3):
    n = draw(st.integers(min_value=1, max_value=max_terms))
    table = {}
    for _ in range(n):
        e = (
            draw(st.integers(min_value=0, max_value=max_exp)),
            draw(st.integers(min_value=0, max_value=max_exp)),
        )
        table[e] = draw(coeffs)
    return MultiPoly(("x", "y"), table)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_product_division_roundtrip(a, b):
    if b.is_zero:
        return
    assert (a * b).exact_div(b) == a


@settings(max_examples=30, deadline=None)
@given(polys(max_terms=3, max_exp=2), polys(max_terms=3, max_exp=2))
def test_resultant_vanishes_iff_common_y_factor(a, b):
    if a.is_zero or b.is_zero:
        return
    if a.degree_in("y") < 1 and b.degree_in("y") < 1:
        return
    r = resultant(a, b, "y")
    g = gcd_poly(a, b)
    assert r.is_zero == (g.degree_in("y") >= 1)


@settings(max_examples=30, deadline=None)
@given(polys(max_terms=3, max_exp=2))
def test_squarefree_part_properties(a):
    if a.is_zero or a.is_constant:
        return
    sf = squarefree_part(a * a)
    assert sf.divides(a * a)
    assert is_squarefree(sf)
    # squarefree part of a square equals the squarefree part of the base
    assert sf == squarefree_part(a)


@settings(max_examples=30, deadline=None)
@given(polys(max_terms=3, max_exp=2), polys(max_terms=2, max_exp=1))
def test_gcd_common_divisor(a, b):
    if a.is_zero or b.is_zero:
        return
    g = gcd_poly(a, b)
    if g.is_zero:
        return
    assert g.divides(a) and g.divides(b)
