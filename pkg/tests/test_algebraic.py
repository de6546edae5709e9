"""Algebraic numbers and number fields; boxes never decide equality."""

from fractions import Fraction

import pytest

from planepencil.core.algnum import AlgebraicNumber, algebraic_ops, roots_of
from planepencil.core.errors import DegreeCapExceeded, InversionOfZero, ToolkitError
from planepencil.core.intervals import Box
from planepencil.core.multipoly import MultiPoly
from planepencil.core.numfield import (
    QQ,
    NumberField,
    field_from_algebraic,
    join_with_algebraic,
    roots_over_field,
)

from conftest import T


def sqrt2():
    return [a for a in roots_of(T("t^2-2")) if a.refine(Fraction(1, 100)).re.lo > 0][0]


def sqrt3():
    return [a for a in roots_of(T("t^2-3")) if a.refine(Fraction(1, 100)).re.lo > 0][0]


def test_sqrt2_plus_minus_sqrt2_is_zero():
    pos = sqrt2()
    neg = [a for a in roots_of(T("t^2-2")) if a != pos][0]
    s = algebraic_ops(pos, neg, "add")
    assert s.is_rational and s.as_fraction() == 0


def test_sqrt2_squared_is_two():
    p = algebraic_ops(sqrt2(), sqrt2(), "mul")
    assert p.is_rational and p.as_fraction() == 2


def test_sqrt2_plus_sqrt3_minimal_polynomial():
    # oracle: (t^2 - 5)^2 - 24 expands to t^4 - 10 t^2 + 1
    s = algebraic_ops(sqrt2(), sqrt3(), "add")
    assert s.min_poly == T("t^4 - 10*t^2 + 1")
    box = s.refine(Fraction(1, 10**9))
    assert box.re.lo < Fraction(3146264370, 10**9) < box.re.hi


def test_inversion():
    inv = algebraic_ops(sqrt2(), None, "inv")
    two_inv = algebraic_ops(inv, inv, "mul")
    assert two_inv.is_rational and two_inv.as_fraction() == Fraction(1, 2)
    with pytest.raises(InversionOfZero):
        algebraic_ops(AlgebraicNumber.from_fraction(0), None, "inv")


def test_degree_cap_enforced():
    a = roots_of(T("t^4-2"))[0]
    b = roots_of(T("t^3-3"))[0]
    with pytest.raises(DegreeCapExceeded) as err:
        algebraic_ops(a, b, "add", cap=8)
    assert err.value.min_polys


def test_isolating_box_verification():
    box = Box.of_corners("13/10", "3/2", "-1/10", "1/10")
    a = AlgebraicNumber.from_min_poly_box(T("t^2-2"), box)
    assert a.root_index == 1
    with pytest.raises(ToolkitError):
        AlgebraicNumber.from_min_poly_box(T("t^2-2"), Box.of_corners(-2, 2, -1, 1))
    with pytest.raises(DegreeCapExceeded):
        AlgebraicNumber.from_min_poly_box(T("t^9-t-1"), Box.of_corners(1, 2, -1, 1))


def test_boxes_refine_and_contain_root():
    for a in roots_of(T("t^3 - t - 1")):
        wide = a.refine(Fraction(1, 4))
        tight = a.refine(Fraction(1, 10**6))
        assert wide.re.lo <= tight.re.lo <= tight.re.hi <= wide.re.hi


# -- number fields -----------------------------------------------------------


def omega_field():
    om_root = roots_of(T("t^2 - t + 1"))[0]
    return field_from_algebraic(om_root)


def test_field_arithmetic_sixth_root():
    K, om = omega_field()
    assert om * om == om - K.one()
    assert om ** 3 == K.from_fraction(-1)
    assert om * (1 / om) == K.one()
    assert K.min_poly_of(om * om) == T("t^2 + t + 1")


def test_roots_over_field_with_extension():
    K, om = omega_field()
    h = MultiPoly(("v",), {(2,): K.one(), (0,): -om})
    roots = roots_over_field(h, K)
    assert len(roots) == 2
    for K2, fmap, elt, _ in roots:
        assert K2.degree == 4
        assert elt * elt == fmap(om)


def test_join_preserves_identities():
    K, om = omega_field()
    r2 = sqrt2()
    K2, fmap, s2 = join_with_algebraic(K, r2)
    assert K2.degree == 4
    assert s2 * s2 == K2.from_fraction(2)
    assert fmap(om) ** 3 == K2.from_fraction(-1)
    # element already in the field keeps the degree
    conj = roots_of(T("t^2 - t + 1"))[1]
    K3, fmap3, c = join_with_algebraic(K, conj)
    assert K3.degree == 2
    assert c * c - c + K3.one() == K3.zero()
    assert fmap3(om) != c  # conjugates stay distinguished by the embedding


def test_abstract_field_has_no_embedding():
    K = NumberField(T("t^2 - t + 1"), gen=None)
    tau = K.gen_element()
    assert K.min_poly_of(tau) == T("t^2 - t + 1")
    with pytest.raises(ToolkitError):
        K.embed_box(tau, Fraction(1, 10))


def test_roots_cap_named():
    with pytest.raises(DegreeCapExceeded) as err:
        roots_over_field(T("t^9 - t - 1").subs({"t": MultiPoly.var("v", ("v",))}), QQ, cap=8)
    assert any("t - 1" in s or "t^9" in s for s in err.value.min_polys)
