"""Absolute factor counting, including the randomized construction suite."""

import random
from fractions import Fraction

import pytest

from planepencil.core.algnum import roots_of
from planepencil.core.errors import ConstantPolynomial
from planepencil.core.multipoly import MultiPoly
from planepencil.core.numfield import field_from_algebraic
from planepencil.ruppert import (
    absolute_factor_count,
    count_at_minpoly,
    pencil_special_candidates,
)

from conftest import P, T


def test_rational_splits():
    assert absolute_factor_count(P("x^2 - y^2")) == 2


def test_absolute_split_of_sum_of_squares():
    # oracle over Q(i): (x + i y)(x - i y) expands to x^2 + y^2
    i_root = roots_of(T("t^2 + 1"))[0]
    K, i = field_from_algebraic(i_root)
    one = K.one()
    x = MultiPoly.var("x", ("x", "y"), one=one)
    y = MultiPoly.var("y", ("x", "y"), one=one)
    prod = (x + y.scale(i)) * (x - y.scale(i))
    assert prod == P("x^2+y^2").map_coeff(K.from_fraction)
    assert absolute_factor_count(P("x^2 + y^2")) == 2


def test_cuspidal_cubic_is_absolutely_irreducible():
    # oracle: the support segment (2,0)-(0,3) is integrally indecomposable
    # (gcd(2,3) = 1), so the polynomial cannot split
    from math import gcd

    assert gcd(2, 3) == 1
    assert absolute_factor_count(P("x^2 + y^3")) == 1


def test_counts_on_squarefree_part():
    assert absolute_factor_count(P("y^2")) == 1
    assert absolute_factor_count(P("(x+y)^2*(x-y)")) == 2


def test_constant_rejected():
    with pytest.raises(ConstantPolynomial):
        absolute_factor_count(P("5"))


POOL = [
    "x + 1",
    "y - 2",
    "x + y",
    "x - y + 1",
    "x*y - 1",
    "y - x^2",
    "x^2 + y^3",
    "y^2 - x^3 - x - 1",
]
POOL_COUNTS = {s: 1 for s in POOL}


def test_randomized_products_counted_by_construction():
    rng = random.Random(20)
    done = 0
    while done < 20:
        k = rng.randint(1, 3)
        picks = rng.sample(POOL, k)
        f = P("1")
        expected = 0
        for s in picks:
            f = f * P(s)
            expected += POOL_COUNTS[s]
        if f.total_degree() > 6:
            continue
        assert absolute_factor_count(f) == expected, picks
        done += 1


def test_products_with_absolute_factors():
    assert absolute_factor_count(P("(x^2+y^2)*(x+y)")) == 3
    assert absolute_factor_count(P("(x^2-2*y^2)*(x*y-1)")) == 3


def test_count_additivity_for_coprime_products():
    rng = random.Random(33)
    for _ in range(10):
        a, b = rng.sample(POOL, 2)
        fa, fb = P(a), P(b)
        assert absolute_factor_count(fa * fb) == absolute_factor_count(
            fa
        ) + absolute_factor_count(fb)


def test_count_invariant_under_shear():
    rng = random.Random(5)
    for s in ["x^2+y^2", "x*y-1", "(x+y)*(x-y)", "x^2+y^3"]:
        f = P(s)
        base = absolute_factor_count(f)
        for _ in range(3):
            sh = Fraction(rng.randint(1, 9), rng.randint(1, 4))
            g = f.subs(
                {
                    "x": P("x") + P("y").scale(sh),
                    "y": P("y"),
                }
            )
            assert absolute_factor_count(g) == base


def test_symbolic_candidates_product_sum():
    sc = pencil_special_candidates(P("x*y"), P("x+y"))
    assert sc.complete
    assert "t" in [f.to_string() for f in sc.factors]


def test_symbolic_candidates_conic_net():
    sc = pencil_special_candidates(P("x^2-y"), P("y^2-x"))
    names = [f.to_string() for f in sc.factors]
    assert "t + 1" in names and "t^2 - t + 1" in names
    assert count_at_minpoly(P("x^2-y"), P("y^2-x"), T("t^2 - t + 1"), 8) == 2
    # rational special member at t = -1 splits into two lines
    assert absolute_factor_count(P("x^2-y") - P("y^2-x")) == 2
