"""Counting absolutely irreducible factors by exact linear algebra.

For a squarefree bivariate f, the solution space of the adjoint equation

    f*g_y - g*f_y = f*h_x - h*f_x,   deg g <= (m-1, n), deg h <= (m, n-1),

has dimension equal to the number of irreducible factors of f over the
complex numbers (with m = deg_x f, n = deg_y f, and univariate-only factors
split off first so gcd(f, f_x) = gcd(f, f_y) = 1).  The dimension is
computed by fraction-free elimination over Q, by Gaussian elimination over
a number field, or symbolically over Q[t] for a pencil P + t*Q, where the
final Bareiss pivot is an explicit maximal minor whose roots form a
complete superset of the parameters where the count can change.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core.errors import ConstantPolynomial, DegreeCapExceeded
from .core.euclid import gcd_poly, is_squarefree, resultant, squarefree_part
from .core.factorize import factor_rational
from .core.linalg import field_nullity, polyring_rank_pivot, rational_nullity
from .core.multipoly import MultiPoly
from .core.numfield import NFElement, NumberField, QQ


def _coeff_field(f: MultiPoly):
    for c in f.terms.values():
        if isinstance(c, NFElement):
            return c.field
    return QQ


def _one_of(field):
    return Fraction(1) if field is QQ else field.one()


def _strip_axis_content(f: MultiPoly, axis: str) -> tuple[MultiPoly, MultiPoly]:
    """Split f = content * rest where content collects the factors that only
    involve ``axis`` (content of f as a polynomial in the other variable)."""
    other = [v for v in f.variables if v != axis][0]
    coeffs = [c for c in f.as_univar(other) if not c.is_zero]
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = gcd_poly(cont, c)
        if cont.is_constant:
            break
    cont_full = cont.with_vars(f.variables)
    return cont_full, f.exact_div(cont_full)


def gao_nullity(f: MultiPoly) -> int:
    """Kernel dimension of the adjoint system for mixed squarefree f."""
    x, y = f.variables
    m, n = f.degree_in(x), f.degree_in(y)
    assert m >= 1 and n >= 1
    field = _coeff_field(f)
    one = _one_of(field)
    f_x = f.derivative(x)
    f_y = f.derivative(y)

    columns = []
    # g-type unknowns: x-degree <= m-1, y-degree <= n
    for i in range(m):
        for j in range(n + 1):
            mono = MultiPoly(f.variables, {(i, j): one})
            dmono = mono.derivative(y)
            columns.append(f * dmono - mono * f_y)
    # h-type unknowns: x-degree <= m, y-degree <= n-1
    for i in range(m + 1):
        for j in range(n):
            mono = MultiPoly(f.variables, {(i, j): one})
            dmono = mono.derivative(x)
            columns.append(-(f * dmono) + mono * f_x)

    support = sorted({e for col in columns for e in col.terms})
    index = {e: i for i, e in enumerate(support)}
    zero = Fraction(0) if field is QQ else field.zero()
    rows = [[zero] * len(columns) for _ in support]
    for k, col in enumerate(columns):
        for e, c in col.terms.items():
            rows[index[e]][k] = c
    if field is QQ:
        return rational_nullity(rows)
    return field_nullity(rows)


def absolute_factor_count(f: MultiPoly) -> int:
    """Number of irreducible factors of f over the complex numbers.

    Non-squarefree input is counted on its squarefree part (distinct
    components of the zero set).  Works over Q or over a number field.
    """
    if f.is_zero or f.is_constant:
        raise ConstantPolynomial("factor counting needs a non-constant polynomial")
    if not is_squarefree(f):
        f = squarefree_part(f)
    x, y = f.variables
    count = 0
    if f.degree_in(y) > 0 and f.degree_in(x) > 0:
        cont_x, f = _strip_axis_content(f, x)
        count += max(cont_x.degree_in(x), 0)
        if f.degree_in(x) > 0:
            cont_y, f = _strip_axis_content(f, y)
            count += max(cont_y.degree_in(y), 0)
    if f.is_constant:
        return count
    m, n = f.degree_in(x), f.degree_in(y)
    if m == 0:
        return count + n  # squarefree univariate in y: n distinct roots
    if n == 0:
        return count + m
    return count + gao_nullity(f)


@dataclass
class SpecialCandidates:
    """Finite superset of pencil parameters where the factor count can
    differ from its generic value, in the chart lambda = (1 : t)."""

    factors: list[MultiPoly]  # irreducible monic-free canonical factors in t
    complete: bool
    generic_nullity: int | None


def _tpoly_gcd(polys: list[MultiPoly]) -> MultiPoly:
    acc = None
    for p in polys:
        acc = p if acc is None else gcd_poly(acc, p)
        if acc.is_constant:
            break
    return acc


def pencil_special_candidates(P: MultiPoly, Q: MultiPoly) -> SpecialCandidates:
    """Symbolic Ruppert/Gao analysis of f_t = P + t*Q."""
    xyt = ("x", "y", "t")
    Pt = P.with_vars(xyt)
    Qt = Q.with_vars(xyt)
    t = MultiPoly.var("t", xyt)
    f = Pt + t * Qt
    m, n = f.degree_in("x"), f.degree_in("y")
    if m < 1 or n < 1:
        return SpecialCandidates([], False, None)

    f_x = f.derivative("x")
    f_y = f.derivative("y")
    columns = []
    for i in range(m):
        for j in range(n + 1):
            mono = MultiPoly(xyt, {(i, j, 0): Fraction(1)})
            columns.append(f * mono.derivative("y") - mono * f_y)
    for i in range(m + 1):
        for j in range(n):
            mono = MultiPoly(xyt, {(i, j, 0): Fraction(1)})
            columns.append(-(f * mono.derivative("x")) + mono * f_x)

    support = sorted({(e[0], e[1]) for col in columns for e in col.terms})
    index = {e: i for i, e in enumerate(support)}
    tvars = ("t",)
    zero_t = MultiPoly.zero(tvars)
    rows = [[zero_t] * len(columns) for _ in support]
    for k, col in enumerate(columns):
        for (ex, ey, et), c in col.terms.items():
            cell = rows[index[(ex, ey)]][k]
            rows[index[(ex, ey)]][k] = cell + MultiPoly(tvars, {(et,): c})
    rank, pivot = polyring_rank_pivot(rows)
    generic_nullity = len(columns) - rank

    suspects: list[MultiPoly] = []
    if pivot.degree_in("t") > 0:
        suspects.append(pivot)

    # parameters where the generic bidegree (m, n) drops
    for axis in ("x", "y"):
        lead = f.as_univar(axis)[-1]  # poly in the other variable and t
        other = [v for v in lead.variables if v != "t" and lead.degree_in(v) > 0]
        coeff_polys = (
            [c.drop_vars([w for w in c.variables if w != "t"]) for c in lead.as_univar(other[0])]
            if other
            else [lead.drop_vars([v for v in lead.variables if v != "t"])]
        )
        g = _tpoly_gcd([c for c in coeff_polys if not c.is_zero])
        if g is not None and not g.is_constant:
            suspects.append(g)

    # parameters where the member is not squarefree
    complete = True
    for axis in ("x", "y"):
        if f.degree_in(axis) < 1:
            continue
        w = resultant(f, f.derivative(axis), axis)
        if w.is_zero:
            complete = False
            continue
        keep = [v for v in w.variables if v != "t" and w.degree_in(v) > 0]
        if keep:
            coeffs = w.as_univar(keep[0])
            coeffs = [c.drop_vars([v for v in c.variables if v != "t"]) for c in coeffs]
        else:
            coeffs = [w.drop_vars([v for v in w.variables if v != "t"])]
        g = _tpoly_gcd([c for c in coeffs if not c.is_zero])
        if g is not None and not g.is_constant:
            suspects.append(g)

    seen = set()
    factors = []
    for s in suspects:
        for fac, _ in factor_rational(s):
            if fac.degree_in("t") < 1:
                continue
            key = fac.to_string()
            if key not in seen:
                seen.add(key)
                factors.append(fac)
    factors.sort(key=lambda p: (p.degree_in("t"), p.to_string()))
    return SpecialCandidates(factors, complete, generic_nullity)


def count_at_rational(P: MultiPoly, Q: MultiPoly, a: Fraction, b: Fraction) -> int:
    member = P.scale(a) + Q.scale(b)
    return absolute_factor_count(member)


def count_at_minpoly(P: MultiPoly, Q: MultiPoly, minpoly_t: MultiPoly, cap: int) -> int:
    """Factor count of P + tau*Q for tau a root of an irreducible minpoly.

    Conjugate parameters share the count, so the computation happens in the
    abstract field Q[t]/(minpoly) with no embedding."""
    deg = minpoly_t.degree_in(minpoly_t.variables[0])
    if deg > cap:
        raise DegreeCapExceeded(
            f"special parameter of degree {deg} exceeds cap {cap}",
            (minpoly_t.to_string(),),
        )
    field = NumberField(minpoly_t, gen=None)
    tau = field.gen_element()
    lift = lambda p: p.map_coeff(field.from_fraction)
    member = lift(P) + lift(Q).scale(tau)
    return absolute_factor_count(member)
