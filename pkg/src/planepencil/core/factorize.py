"""Factorization over the rationals, delegated to sympy's exact routines.

The toolkit's own decision procedures never rely on sympy signs or
normalization: factors returned here are re-normalized to the integer
primitive, positive-lead canonical form, sorted deterministically, and the
product is re-verified against the input.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import ZeroInput
from .multipoly import MultiPoly

_SYM_CACHE: dict[tuple[str, ...], tuple] = {}


def _symbols_for(variables: tuple[str, ...]):
    if variables not in _SYM_CACHE:
        _SYM_CACHE[variables] = sympy.symbols(variables) if len(variables) != 1 else (
            sympy.Symbol(variables[0]),
        )
    return _SYM_CACHE[variables]


def to_sympy(p: MultiPoly):
    syms = _symbols_for(p.variables)
    expr = sympy.Integer(0)
    for expo, coeff in p.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(syms, expo):
            if e:
                term *= s ** e
        expr += term
    return expr


def from_sympy(expr, variables: tuple[str, ...]) -> MultiPoly:
    syms = _symbols_for(variables)
    poly = sympy.Poly(expr, *syms)
    table = {}
    for expo, coeff in poly.terms():
        q = sympy.Rational(coeff)
        table[tuple(int(e) for e in expo)] = Fraction(int(q.p), int(q.q))
    return MultiPoly(variables, table)


def factor_rational(a: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Complete factorization into rational-irreducible factors.

    Returns (factor, multiplicity) pairs with canonical primitive factors in
    a deterministic order; the rational content is dropped.  Works for any
    number of variables.
    """
    if a.is_zero:
        raise ZeroInput("cannot factor the zero polynomial")
    if a.is_constant:
        return []
    _, factors = sympy.factor_list(sympy.Poly(to_sympy(a), *_symbols_for(a.variables)))
    out = []
    for fac, mult in factors:
        mp = from_sympy(fac.as_expr(), a.variables).primitive()
        out.append((mp, int(mult)))
    out.sort(key=lambda fm: (fm[0].total_degree(), sorted(fm[0].terms.items()), fm[1]))
    # sanity: the factorization must reconstruct the input up to a unit
    prod = MultiPoly.const(a.variables, Fraction(1))
    for fac, mult in out:
        prod = prod * fac ** mult
    if not prod.primitive() == a.primitive():
        raise AssertionError("factorization failed to reconstruct input")
    return out


def factor_univariate_rational(a: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Univariate specialization with the same contract (pre: univariate)."""
    used = [v for v in a.variables if a.degree_in(v) > 0]
    if len(used) > 1:
        raise ValueError("factor_univariate_rational expects univariate input")
    return factor_rational(a)


def is_irreducible_rational(a: MultiPoly) -> bool:
    facs = factor_rational(a)
    return len(facs) == 1 and facs[0][1] == 1
