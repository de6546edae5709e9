"""GCD, resultant, and squarefree kernels.

Resultants use the subresultant polynomial remainder sequence (pseudo
divisions with the Brown/Traub correction factors) rather than Sylvester
determinant expansion, which keeps coefficient growth polynomial on the
degree <= 12 inputs this toolkit targets.  GCDs use the primitive PRS with
recursive content extraction, with a monic Euclid fast path for genuinely
univariate input.  Everything is exact and works over any coefficient
field whose elements support the arithmetic dunders (Fraction or
number-field elements).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UndefinedResultant, ZeroInput
from .multipoly import MultiPoly

UniList = list  # dense coefficient list, index = degree, entries MultiPoly


def _trim(coeffs: UniList) -> UniList:
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def _prem(A: UniList, B: UniList) -> UniList:
    """Pseudo-remainder: lc(B)^(degA-degB+1) * A mod B."""
    dB = len(B) - 1
    lcB = B[-1]
    R = list(A)
    e = len(A) - len(B) + 1
    while len(R) - 1 >= dB and R:
        dR = len(R) - 1
        lcR = R[-1]
        shift = dR - dB
        R2 = [lcB * c for c in R[:-1]]
        for i in range(dB):
            R2[shift + i] = R2[shift + i] - lcR * B[i]
        R = _trim(R2)
        e -= 1
    if e > 0 and R:
        scale = lcB ** e
        R = [c * scale for c in R]
    return R


def _is_fraction_coeff(p: MultiPoly) -> bool:
    for c in p.terms.values():
        return isinstance(c, Fraction)
    return True


def normalize_factor(p: MultiPoly) -> MultiPoly:
    """Canonical scaling: integer-primitive with positive lead over the
    rationals, monic otherwise."""
    if p.is_zero:
        return p
    if _is_fraction_coeff(p):
        return p.primitive()
    return p.monic()


def resultant(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant of a and b eliminating ``var``.

    Conventions: Res of two polynomials constant in ``var`` is 1; if exactly
    one input is the zero polynomial the resultant is 0 (or 1 when the other
    is constant in ``var``); both zero is an error.
    """
    if a.is_zero and b.is_zero:
        raise UndefinedResultant("resultant of two zero polynomials")
    rest = tuple(v for v in a.variables if v != var)
    if a.is_zero or b.is_zero:
        other = b if a.is_zero else a
        if other.degree_in(var) <= 0:
            return MultiPoly.const(rest, Fraction(1))
        return MultiPoly.zero(rest)
    A = _trim(a.as_univar(var))
    B = _trim(b.as_univar(var))
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0 and dB == 0:
        return MultiPoly.const(rest, Fraction(1))
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    sign = 1
    if dA < dB:
        A, B, dA, dB = B, A, dB, dA
        if (dA * dB) % 2 == 1:
            sign = -sign
    one = MultiPoly.const(rest, Fraction(1))
    g = one
    h = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            sign = -sign
        R = _prem(A, B)
        if not R:
            return MultiPoly.zero(rest)
        denom_tail = h ** delta if delta else one
        denom = g * denom_tail
        A = B
        B = [c.exact_div(denom) for c in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if len(B) - 1 > 0:
            continue
        dA = len(A) - 1
        if dA == 1:
            res = B[0]
        else:
            res = (B[0] ** dA).exact_div(h ** (dA - 1))
        return res.scale(sign) if sign < 0 else res


def _euclid_gcd_univar(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Monic Euclid for polynomials involving only ``var``."""
    A = _trim(a.as_univar(var))
    B = _trim(b.as_univar(var))
    while B:
        dB = len(B) - 1
        lc = B[-1].constant_value()
        R = list(A)
        while R and len(R) - 1 >= dB:
            q = R[-1].constant_value() / lc
            shift = len(R) - 1 - dB
            for i in range(dB):
                R[shift + i] = R[shift + i] - B[i].scale(q)
            R.pop()
            _trim(R)
        A, B = B, R
    if not A:
        return MultiPoly.zero(a.variables)
    return MultiPoly.from_univar(A, var, a.variables)


def gcd_poly(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Primitive greatest common divisor (positive leading rational over Q,
    monic over other fields).  gcd(0, 0) = 0."""
    if a.is_zero and b.is_zero:
        return a
    if a.is_zero:
        return normalize_factor(b)
    if b.is_zero:
        return normalize_factor(a)
    if a.is_constant or b.is_constant:
        return MultiPoly.const(a.variables, Fraction(1))
    used = [
        v
        for v in a.variables
        if a.degree_in(v) > 0 or b.degree_in(v) > 0
    ]
    if len(used) == 1:
        g = _euclid_gcd_univar(a, b, used[0])
        return normalize_factor(g)
    # choose the main variable minimizing the larger degree, deterministically
    both = [v for v in used if a.degree_in(v) > 0 and b.degree_in(v) > 0]
    if not both:
        return MultiPoly.const(a.variables, Fraction(1))
    var = min(both, key=lambda v: (max(a.degree_in(v), b.degree_in(v)), v))

    def content_and_pp(p: MultiPoly):
        coeffs = [c for c in p.as_univar(var) if not c.is_zero]
        cont = coeffs[0]
        for c in coeffs[1:]:
            cont = gcd_poly(cont, c)
            if cont.is_constant:
                break
        cont_full = cont.with_vars(p.variables)
        return cont_full, p.exact_div(cont_full)

    ca, pa = content_and_pp(a)
    cb, pb = content_and_pp(b)
    cont_gcd = gcd_poly(ca, cb)

    A = _trim(pa.as_univar(var))
    B = _trim(pb.as_univar(var))
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _prem(A, B)
        if not R:
            break
        nonzero = [c for c in R if not c.is_zero]
        cont = nonzero[0]
        for c in nonzero[1:]:
            cont = gcd_poly(cont, c)
            if cont.is_constant:
                break
        cont = normalize_factor(cont)
        R = [c.exact_div(cont) for c in R]
        A, B = B, R
        if len(B) - 1 == 0:
            break
    if len(B) - 1 == 0:
        g = MultiPoly.const(a.variables, Fraction(1))
    else:
        g = MultiPoly.from_univar(B, var, a.variables)
    return normalize_factor(cont_gcd * g)


def squarefree_part(a: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of ``a`` (char 0)."""
    if a.is_zero:
        raise ZeroInput("squarefree part of the zero polynomial")
    if a.is_constant:
        return MultiPoly.const(a.variables, Fraction(1))
    d = a
    for v in a.variables:
        if a.degree_in(v) > 0:
            d = gcd_poly(d, a.derivative(v))
            if d.is_constant:
                break
    if d.is_constant:
        return normalize_factor(a)
    return normalize_factor(a.exact_div(d))


def is_squarefree(a: MultiPoly) -> bool:
    if a.is_zero:
        return False
    if a.is_constant:
        return True
    d = a
    for v in a.variables:
        if a.degree_in(v) > 0:
            d = gcd_poly(d, a.derivative(v))
            if d.is_constant:
                return True
    return d.is_constant
