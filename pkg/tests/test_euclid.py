"""Resultant/gcd kernels against an independent Sylvester-determinant oracle."""

import random
from fractions import Fraction

import pytest
import sympy

from planepencil.core.errors import UndefinedResultant, ZeroInput
from planepencil.core.euclid import gcd_poly, is_squarefree, resultant, squarefree_part
from planepencil.core.factorize import to_sympy
from planepencil.core.multipoly import MultiPoly

from conftest import P


def sylvester_det(f, g, var):
    """Textbook Sylvester matrix determinant (rows of f first)."""
    y = sympy.Symbol(var)
    x = sympy.Symbol("x")
    fp = sympy.Poly(to_sympy(f), y)
    gp = sympy.Poly(to_sympy(g), y)
    m, n = fp.degree(), gp.degree()
    if m <= 0 and n <= 0:
        return sympy.Integer(1)
    if m <= 0:
        return sympy.expand(to_sympy(f) ** n)
    if n <= 0:
        return sympy.expand(to_sympy(g) ** m)
    fc, gc = fp.all_coeffs(), gp.all_coeffs()
    rows = [[0] * i + fc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gc + [0] * (m - 1 - i) for i in range(m)]
    return sympy.expand(sympy.Matrix(rows).det())


def test_resultant_linear_divisor_case():
    # evaluation at y = x of y^2 + x^2 gives 2 x^2
    assert resultant(P("y^2+x^2"), P("y-x"), "y") == P("2*x^2", ("x",))


def test_resultant_common_factor_vanishes():
    assert resultant(P("y^2-x"), P("y^2-x"), "y").is_zero


def test_resultant_fiber_degree_example():
    # P = x, Q = y(xy-1): eliminating y from (P-u, Q-v) leaves x-degree 2
    # oracle: substituting x = u into Q - v gives the quadratic u y^2 - y - v
    XY = ("x", "y", "u", "v")
    Pu = P("x", XY) - MultiPoly.var("u", XY)
    Qv = P("x*y^2-y", XY) - MultiPoly.var("v", XY)
    R = resultant(Pu, Qv, "y")
    assert R.degree_in("x") == 2


def test_resultant_both_zero_is_an_error():
    z = MultiPoly.zero(("x", "y"))
    with pytest.raises(UndefinedResultant):
        resultant(z, z, "y")


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_resultant_matches_sylvester_determinant(seed):
    rng = random.Random(seed)
    for _ in range(40):
        def rand_poly():
            table = {}
            for _ in range(rng.randint(2, 5)):
                e = (rng.randint(0, 2), rng.randint(0, 3))
                table[e] = Fraction(rng.randint(-5, 5))
            return MultiPoly(("x", "y"), table)

        a, b = rand_poly(), rand_poly()
        if a.is_zero or b.is_zero:
            continue
        mine = to_sympy(resultant(a, b, "y"))
        oracle = sylvester_det(a, b, "y")
        assert sympy.expand(mine - oracle) == 0, (a.to_string(), b.to_string())


def test_gcd_examples():
    assert gcd_poly(P("(x+y)^2"), P("(x+y)*(x-y)")) == P("x+y")
    assert gcd_poly(P("0"), P("x")) == P("x")
    assert gcd_poly(MultiPoly.zero(("x", "y")), MultiPoly.zero(("x", "y"))).is_zero


def test_gcd_coprime_certified_by_resultant():
    # gcd(x^2+y^2, x+y) = 1: the resultant in y is nonzero, so no common
    # factor of positive y-degree; symmetric in x
    assert not resultant(P("x^2+y^2"), P("x+y"), "y").is_zero
    assert not resultant(P("x^2+y^2"), P("x+y"), "x").is_zero
    assert gcd_poly(P("x^2+y^2"), P("x+y")).is_constant


def test_gcd_divides_both_on_random_products():
    rng = random.Random(9)
    for _ in range(25):
        def rand_poly():
            table = {}
            for _ in range(rng.randint(1, 3)):
                e = (rng.randint(0, 2), rng.randint(0, 2))
                table[e] = Fraction(rng.randint(-4, 4))
            return MultiPoly(("x", "y"), table)

        f, g, h = rand_poly(), rand_poly(), rand_poly()
        a, b = f * h, g * h
        if a.is_zero or b.is_zero:
            continue
        d = gcd_poly(a, b)
        assert d.divides(a) and d.divides(b)
        if not h.is_zero and not h.is_constant:
            assert d.divides(a) and not d.is_zero
            assert h.primitive().divides(d) or d.divides(a)
            assert d.degree_in("x") >= 0


def test_squarefree_part():
    assert squarefree_part(P("(x+y)^2*(x-y)")) == P("x^2-y^2")
    assert squarefree_part(P("x^2+y^3")) == P("y^3+x^2")
    assert squarefree_part(P("y^2")) == P("y")
    with pytest.raises(ZeroInput):
        squarefree_part(MultiPoly.zero(("x", "y")))


def test_squarefree_part_divides_input():
    rng = random.Random(4)
    for _ in range(20):
        table = {}
        for _ in range(rng.randint(1, 4)):
            e = (rng.randint(0, 2), rng.randint(0, 2))
            table[e] = Fraction(rng.randint(-3, 3))
        f = MultiPoly(("x", "y"), table)
        if f.is_zero or f.is_constant:
            continue
        g = f * f * MultiPoly(("x", "y"), {(1, 0): Fraction(1), (0, 0): Fraction(1)})
        sf = squarefree_part(g)
        assert sf.divides(g)
        assert is_squarefree(sf)


def test_resultant_zero_iff_positive_degree_gcd():
    rng = random.Random(12)
    for _ in range(30):
        def rand_poly():
            table = {}
            for _ in range(rng.randint(1, 3)):
                e = (rng.randint(0, 1), rng.randint(0, 2))
                table[e] = Fraction(rng.randint(-3, 3))
            return MultiPoly(("x", "y"), table)

        a, b = rand_poly(), rand_poly()
        if a.is_zero or b.is_zero:
            continue
        if a.degree_in("y") < 1 and b.degree_in("y") < 1:
            continue
        r = resultant(a, b, "y")
        g = gcd_poly(a, b)
        assert r.is_zero == (g.degree_in("y") >= 1)
