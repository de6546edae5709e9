from fractions import Fraction

import pytest

from planepencil.core.errors import (
    DegeneratePencil,
    InvalidProjectivePoint,
    NotIrreducible,
)
from planepencil.core.euclid import squarefree_part
from planepencil.pencil import (
    PencilMap,
    pencil_member,
    rationality_verdict,
    reducible_locus_candidates,
    scan_pencil,
)

from conftest import P


def F(p, q, name="F"):
    return PencilMap(P(p), P(q), name)


def test_pencil_member_examples():
    cx = F("x", "x^2+y^3")
    assert pencil_member(cx, (1, 0)) == P("x")
    assert pencil_member(cx, (0, 1)) == P("x^2+y^3")
    assert pencil_member(F("x", "y+x^2"), (1, 1)) == P("x + y + x^2")
    with pytest.raises(InvalidProjectivePoint):
        pencil_member(cx, (0, 0))


def test_scan_counterexample_all_members_irreducible():
    prof = scan_pencil(F("x", "x^2+y^3"), 50, 0)
    assert prof.generic_r == 1
    assert all(r == 1 for _, r in prof.samples)
    assert [g for g in prof.groups if g.status == "special"] == []
    assert prof.total_reducibility == 0
    assert prof.generic_rationality == "not_rational"
    assert prof.generic_genus == ("genus", 1)


def test_scan_product_sum_special_member():
    prof = scan_pencil(F("x*y", "x+y"), 50, 0)
    assert prof.generic_r == 1
    specials = [g for g in prof.groups if g.status == "special"]
    assert [(g.label, g.r) for g in specials] == [("(1:0)", 2)]
    assert prof.total_reducibility == 1


def test_scan_lines():
    prof = scan_pencil(F("x", "y"), 50, 0)
    assert prof.generic_r == 1
    assert prof.total_reducibility == 0
    assert prof.all_members_certified


def test_scan_degenerate_pencil():
    with pytest.raises(DegeneratePencil):
        scan_pencil(F("x", "2*x"), 50, 0)


def test_scan_seed_invariance():
    a = scan_pencil(F("x^2-y", "y^2-x"), 50, 0)
    b = scan_pencil(F("x^2-y", "y^2-x"), 50, 12345)
    assert a.generic_r == b.generic_r
    key = lambda prof: sorted(
        (g.key, g.orbit, g.r) for g in prof.groups if g.status == "special"
    )
    assert key(a) == key(b)
    assert a.total_reducibility == b.total_reducibility


def test_reducible_locus_confirmed_sets():
    confirmed, complete = reducible_locus_candidates(F("x*y", "x+y"))
    assert complete
    assert [(g.label, g.r) for g in confirmed if g.status == "special"] == [("(1:0)", 2)]
    confirmed2, complete2 = reducible_locus_candidates(F("x", "y+x^2"))
    assert complete2
    assert [g for g in confirmed2 if g.status == "special"] == []
    confirmed3, complete3 = reducible_locus_candidates(F("x", "y^2"))
    # the doubled member is a single component; it is flagged only as
    # non-reduced, never as reducible
    specials = [g for g in confirmed3 if g.status == "special"]
    assert all(g.r == 1 for g in specials)
    assert complete3


def test_rationality_examples():
    assert rationality_verdict(P("x + y + x^2")) == ("rational", 0)
    assert rationality_verdict(P("x^2 + x + y^3")) == ("not_rational", 1)
    assert rationality_verdict(P("x^2 + y^3")) == ("rational", 0)


def test_rationality_cuspidal_parametrization_oracle():
    # (t^3, -t^2) lies on x^2 + y^3 identically, so the curve is rational
    tv = ("t",)
    from planepencil.core.multipoly import MultiPoly

    t = MultiPoly.var("t", tv)
    val = (t ** 3) * (t ** 3) + (-(t ** 2)) ** 3
    assert val.is_zero
    assert rationality_verdict(P("x^2+y^3"))[0] == "rational"


def test_rationality_rejects_reducible():
    with pytest.raises(NotIrreducible):
        rationality_verdict(P("x^2 - y^2"))


def test_rationality_never_contradicts_conics():
    for s in ["x^2 + y - 3", "x*y - 1", "x^2 + y^2 - 1"]:
        assert rationality_verdict(P(s)) == ("rational", 0)


def test_profile_generic_share_invariant():
    prof = scan_pencil(F("x", "x^2+y^3"), 50, 0)
    share = sum(1 for _, r in prof.samples if r == prof.generic_r) / len(prof.samples)
    assert share >= 0.9
