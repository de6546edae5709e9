from fractions import Fraction

import pytest

from planepencil.core.errors import DegreeCapExceeded
from planepencil.jelonek import (
    check_fiber_sum,
    fiber_multiplicity_sum,
    finite_fibres_check,
    geometric_degree,
    local_multiplicity,
    nonproper_set,
    predicates,
    solve_fiber,
)
from planepencil.pencil import PencilMap

from conftest import P


def F(p, q, name="F"):
    return PencilMap(P(p), P(q), name)


def test_finite_fibres_examples(config):
    bad = finite_fibres_check(F("x", "x*y"))
    assert not bad.ok
    assert bad.witness == (Fraction(0), Fraction(0))
    assert finite_fibres_check(F("x", "x^2+y^3")).ok
    assert finite_fibres_check(F("x", "x*y^2-y")).ok


def test_finite_fibres_catches_algebraic_witness_curve(config):
    # fibers over the parabola v = u^2 are infinite
    bad = finite_fibres_check(F("x", "x^2"))
    assert not bad.ok


def test_geometric_degree(config):
    assert geometric_degree(F("x", "y"), config).deg_geo == 1
    assert geometric_degree(F("x", "x^2+y^3"), config).deg_geo == 3
    assert geometric_degree(F("x*y", "x+y"), config).deg_geo == 2
    assert geometric_degree(F("x^2-y", "y^2-x"), config).deg_geo == 4


def test_geometric_degree_shear_invariance(config):
    # composing with a source shear cannot change the degree
    base = geometric_degree(F("x*y", "x+y"), config).deg_geo
    sheared = F("(x+2*y)*y", "x+3*y")
    assert geometric_degree(sheared, config).deg_geo == base


def test_nonproper_sets(config):
    assert nonproper_set(F("x", "x^2+y^3"), config, 3).empty
    assert nonproper_set(F("x", "y"), config, 1).empty
    afs = nonproper_set(F("x", "x*y^2-y"), config, 2)
    assert afs.member_polys() == ["u"]
    comp = afs.components[0]
    assert comp.is_line_through_origin
    assert "s to infinity" in comp.witness
    assert not afs.unresolved


def test_local_multiplicities(config):
    pts = solve_fiber(F("x", "x^2+y^3"), Fraction(0), Fraction(0), config)
    assert len(pts) == 1 and pts[0].multiplicity == 3
    pts = solve_fiber(F("x", "y"), Fraction(2), Fraction(5), config)
    assert len(pts) == 1 and pts[0].multiplicity == 1
    pts = solve_fiber(F("x", "y^2"), Fraction(0), Fraction(0), config)
    assert len(pts) == 1 and pts[0].multiplicity == 2


def test_fiber_sums_jelonek_line(config):
    jl = F("x", "x*y^2-y")
    afs = nonproper_set(jl, config, 2)
    rec = check_fiber_sum(jl, (Fraction(1), Fraction(0)), afs, 2, config)
    assert rec["sum"] == 2 and rec["consistent"] and not rec["in_nonproper_set"]
    pts = {(p["point"]["x"], p["point"]["y"]) for p in rec["points"]}
    assert pts == {("1", "0"), ("1", "1")}
    rec2 = check_fiber_sum(jl, (Fraction(0), Fraction(1)), afs, 2, config)
    assert rec2["sum"] == 1 and rec2["in_nonproper_set"] and rec2["consistent"]
    rec3 = check_fiber_sum(
        F("x", "x^2+y^3"),
        (Fraction(0), Fraction(0)),
        nonproper_set(F("x", "x^2+y^3"), config, 3),
        3,
        config,
    )
    assert rec3["sum"] == 3 and rec3["consistent"]


def test_fiber_sum_cap_free_mode(config):
    cap = F("x^3+y", "y^3+x+1")
    with pytest.raises(DegreeCapExceeded):
        solve_fiber(cap, Fraction(0), Fraction(0), config)
    assert fiber_multiplicity_sum(cap, Fraction(0), Fraction(0), config) == 9


def test_predicates(config):
    pr = predicates(F("x", "y+x^2"), 1, config)
    assert pr.keller and pr.regular_value_at_origin == "regular" and pr.invertible
    pr = predicates(F("x", "x^2+y^3"), 3, config)
    assert not pr.keller
    assert pr.jacobian == P("3*y^2")
    assert pr.regular_value_at_origin == "singular_fiber"
    assert not pr.invertible
    pr = predicates(F("x", "y^2"), 2, config)
    assert not pr.keller and pr.regular_value_at_origin == "singular_fiber"
    pr = predicates(F("x+1", "y"), 1, config)
    assert pr.regular_value_at_origin == "regular"


def test_predicates_not_attained(config):
    # F = (x^2 - y, exp-free): choose a map missing the origin:
    # (x, x*y + 1) has fiber x = 0, 1 = 0: empty
    pr = predicates(F("x", "x*y+1"), 1, config)
    assert pr.regular_value_at_origin == "not_attained"
