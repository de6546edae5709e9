"""Algebraic numbers as (minimal polynomial, isolating box) pairs.

Root handles are sympy ``CRootOf`` objects, which give exact root indexing
and certified rational enclosures of arbitrary precision; minimal
polynomials of sums/products/inverses come from sympy's resultant-based
``minimal_polynomial``.  All box logic (isolation, separation, root
selection) is done here with rational interval arithmetic so that no
decision ever rests on floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from .errors import DegreeCapExceeded, InversionOfZero, ToolkitError
from .factorize import factor_rational, from_sympy, to_sympy
from .intervals import Box, RatInterval
from .multipoly import MultiPoly

DEFAULT_DEGREE_CAP = 8

_T = sympy.Symbol("t")


def _to_fraction(q) -> Fraction:
    q = sympy.Rational(q)
    return Fraction(int(q.p), int(q.q))


def _sqrt_enclosure(q: Fraction, eps: Fraction) -> "RatInterval":
    """Interval containing sqrt(q) (q >= 0) of width at most eps."""
    if q == 0:
        return RatInterval.point(Fraction(0))
    lo = Fraction(0)
    hi = q if q >= 1 else Fraction(1)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if mid * mid <= q:
            lo = mid
        else:
            hi = mid
    return RatInterval(lo, hi)


def _monic_minpoly(p: MultiPoly) -> MultiPoly:
    used = [v for v in p.variables if p.degree_in(v) > 0]
    if p.variables != ("t",):
        if len(used) > 1:
            raise ValueError("minimal polynomial must be univariate")
        name = used[0] if used else p.variables[0]
        p = MultiPoly(
            ("t",),
            {(e[p.variables.index(name)],): c for e, c in p.terms.items()},
        )
    return p.monic()


class AlgebraicNumber:
    """An exact complex algebraic number of bounded degree."""

    __slots__ = ("min_poly", "degree", "_expr", "root_index", "_box", "_eps")

    def __init__(self, min_poly: MultiPoly, expr, root_index: int):
        self.min_poly = min_poly
        self.degree = min_poly.degree_in("t")
        self._expr = expr
        self.root_index = root_index
        self._box = None
        self._eps = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_fraction(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        mp = MultiPoly(("t",), {(1,): Fraction(1), (0,): -q})
        return cls(mp, sympy.Rational(q.numerator, q.denominator), -1)

    @classmethod
    def from_root(cls, min_poly: MultiPoly, index: int) -> "AlgebraicNumber":
        mp = _monic_minpoly(min_poly)
        deg = mp.degree_in("t")
        if deg == 1:
            return cls.from_fraction(-mp.terms.get((0,), Fraction(0)))
        root = sympy.CRootOf(sympy.Poly(to_sympy(mp), _T), index)
        return cls(mp, root, index)

    @classmethod
    def from_min_poly_box(
        cls, min_poly: MultiPoly, box: Box, cap: int = DEFAULT_DEGREE_CAP
    ) -> "AlgebraicNumber":
        """Construct from a minimal polynomial and an isolating box.

        Verifies irreducibility, the degree cap, and that the box isolates
        exactly one root (by interval root separation).
        """
        mp = _monic_minpoly(min_poly)
        deg = mp.degree_in("t")
        if deg > cap:
            raise DegreeCapExceeded(
                f"algebraic degree {deg} exceeds cap {cap}",
                (mp.to_string(),),
            )
        facs = factor_rational(mp)
        if len(facs) != 1 or facs[0][1] != 1:
            raise ToolkitError(f"minimal polynomial {mp.to_string()} is not irreducible")
        inside = []
        for cand in roots_of(mp):
            eps = Fraction(1, 16)
            for _ in range(80):
                b = cand.refine(eps)
                if box.contains(b):
                    inside.append(cand)
                    break
                if not box.intersects(b):
                    break
                eps /= 16
            else:
                raise ToolkitError("could not separate a root from the box boundary")
        if len(inside) != 1:
            raise ToolkitError(
                f"box is not isolating: contains {len(inside)} roots of {mp.to_string()}"
            )
        found = inside[0]
        found._box = None  # keep boxes consistent with the caller's view
        return found

    # -- basic views ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ToolkitError("not a rational number")
        return _to_fraction(self._expr)

    @property
    def expr(self):
        return self._expr

    def is_real(self) -> bool:
        if self.is_rational:
            return True
        return bool(self._expr.is_real)

    def refine(self, eps: Fraction) -> Box:
        """A certified enclosure of width at most ``eps``."""
        if self._box is not None and self._eps is not None and self._eps <= eps:
            return self._box
        if self.is_rational:
            self._box = Box.point(self.as_fraction())
            self._eps = Fraction(0)
            return self._box
        if self.degree == 2:
            # sympy collapses quadratic CRootOf to radicals; enclose the
            # quadratic-formula root with exact rational sqrt bisection.
            p = self.min_poly.terms.get((1,), Fraction(0))
            q = self.min_poly.terms.get((0,), Fraction(0))
            disc = p * p - 4 * q
            half = Fraction(1, 2)
            if disc >= 0:
                root = _sqrt_enclosure(disc, eps)
                signed = root if self.root_index == 1 else -root
                re = RatInterval(
                    (-p + signed.lo) * half, (-p + signed.hi) * half
                )
                box = Box(re, RatInterval.point(Fraction(0)))
            else:
                root = _sqrt_enclosure(-disc, eps)
                signed = root if self.root_index == 1 else -root
                im = RatInterval(
                    min(signed.lo, signed.hi) * half, max(signed.lo, signed.hi) * half
                )
                box = Box(RatInterval.point(-p * half), im)
            self._box = box
            self._eps = Fraction(eps)
            return box
        d = sympy.Rational(eps.numerator, eps.denominator) / 4
        val = self._expr.eval_rational(dx=d, dy=d)
        re, im = val.as_real_imag()
        re = _to_fraction(re)
        im = _to_fraction(im)
        delta = Fraction(d.p, d.q)
        self._box = Box(
            RatInterval(re - delta, re + delta), RatInterval(im - delta, im + delta)
        )
        self._eps = Fraction(eps)
        return self._box

    @property
    def box(self) -> Box:
        return self.refine(Fraction(1, 64))

    # -- exact comparisons ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.as_fraction() == Fraction(other)
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        if self.is_rational:
            return self.as_fraction() == other.as_fraction()
        return self.root_index == other.root_index

    def __hash__(self):
        return hash((self.min_poly, self.root_index))

    def sort_key(self):
        return (
            self.degree,
            tuple(sorted(self.min_poly.terms.items())),
            self.root_index,
        )

    def __repr__(self):
        if self.is_rational:
            return f"AlgebraicNumber({self.as_fraction()})"
        return f"AlgebraicNumber({self.min_poly.to_string()}, root {self.root_index})"

    def to_json(self):
        return {"min_poly": self.min_poly.to_string(), "box": self.box.to_json()}


def roots_of(p: MultiPoly) -> list[AlgebraicNumber]:
    """All distinct complex roots of a univariate rational polynomial."""
    out = []
    for fac, _mult in factor_rational(p):
        mp = _monic_minpoly(fac)
        deg = mp.degree_in("t")
        if deg == 1:
            out.append(AlgebraicNumber.from_fraction(-mp.terms.get((0,), Fraction(0))))
        else:
            for i in range(deg):
                out.append(AlgebraicNumber.from_root(mp, i))
    out.sort(key=lambda a: a.sort_key())
    return out


def _combine_box(a: AlgebraicNumber, b, op: str, eps: Fraction) -> Box:
    if op == "add":
        return a.refine(eps) + b.refine(eps)
    if op == "mul":
        return a.refine(eps) * b.refine(eps)
    if op == "sub":
        return a.refine(eps) - b.refine(eps)
    if op == "inv":
        box = a.refine(eps)
        while box.contains_zero():
            eps /= 16
            box = a.refine(eps)
        return box.inverse()
    raise ValueError(f"unknown op {op!r}")


def algebraic_ops(
    a: AlgebraicNumber,
    b: AlgebraicNumber | None,
    op: str,
    cap: int = DEFAULT_DEGREE_CAP,
) -> AlgebraicNumber:
    """Exact add/sub/mul/inv with degree-cap enforcement.

    The result's minimal polynomial comes from resultant-based minimal
    polynomial computation; the correct root is selected by shrinking
    certified boxes until exactly one candidate remains."""
    if op == "inv":
        if a.is_rational and a.as_fraction() == 0:
            raise InversionOfZero("inverse of zero")
        expr = 1 / a._expr
    else:
        if b is None:
            raise ValueError("binary operation needs two operands")
        if op == "add":
            expr = a._expr + b._expr
        elif op == "sub":
            expr = a._expr - b._expr
        elif op == "mul":
            expr = a._expr * b._expr
        else:
            raise ValueError(f"unknown op {op!r}")
    if a.is_rational and (b is None or b.is_rational):
        return AlgebraicNumber.from_fraction(_to_fraction(expr))
    mp_expr = sympy.minimal_polynomial(expr, _T)
    mp = _monic_minpoly(from_sympy(mp_expr, ("t",)))
    deg = mp.degree_in("t")
    if deg > cap:
        offenders = (a.min_poly.to_string(),) + (
            (b.min_poly.to_string(),) if b is not None else ()
        )
        raise DegreeCapExceeded(
            f"result degree {deg} exceeds cap {cap}", offenders + (mp.to_string(),)
        )
    candidates = roots_of(mp)
    if len(candidates) == 1:
        return candidates[0]
    eps = Fraction(1, 64)
    for _ in range(100):
        target = _combine_box(a, b if b is not None else a, op, eps)
        live = [c for c in candidates if c.refine(eps).intersects(target)]
        if len(live) == 1:
            return live[0]
        eps /= 16
    raise ToolkitError("failed to separate candidate roots")  # pragma: no cover
