"""Exact linear algebra: fraction-free elimination over the rationals, plain
Gaussian elimination over an arbitrary coefficient field, and Bareiss
elimination over a polynomial ring (used with entries in Q[t] to locate
parameter values where a matrix drops rank).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .multipoly import MultiPoly


def rational_rank(rows: list[list[Fraction]]) -> int:
    """Rank of a matrix with Fraction entries via integer Bareiss."""
    if not rows or not rows[0]:
        return 0
    m = []
    for row in rows:
        den = 1
        for c in row:
            den = den * c.denominator // int_gcd(den, c.denominator)
        scaled = [int(c * den) for c in row]
        g = 0
        for c in scaled:
            g = int_gcd(g, c)
        if g > 1:
            scaled = [c // g for c in scaled]
        m.append(scaled)
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = None
        best = None
        for r in range(row, nrows):
            v = m[r][col]
            if v:
                size = abs(v)
                if best is None or size < best:
                    best = size
                    pivot = r
                    if size == 1:
                        break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        p = m[row][col]
        for r in range(row + 1, nrows):
            factor = m[r][col]
            rr = m[r]
            pr = m[row]
            for c in range(col, ncols):
                rr[c] = (p * rr[c] - factor * pr[c]) // prev
        prev = p
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def rational_nullity(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rows[0]) - rational_rank(rows)


def field_rank(rows: list[list], zero_test=lambda c: not c) -> int:
    """Rank over an arbitrary field; entries need +,-,*,/ and truthiness."""
    if not rows or not rows[0]:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if not zero_test(m[r][col]):
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv_p = m[row][col]
        for r in range(row + 1, nrows):
            if not zero_test(m[r][col]):
                factor = m[r][col] / inv_p
                rr = m[r]
                pr = m[row]
                for c in range(col, ncols):
                    rr[c] = rr[c] - factor * pr[c]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def field_nullity(rows: list[list]) -> int:
    if not rows:
        return 0
    return len(rows[0]) - field_rank(rows)


def polyring_rank_pivot(rows: list[list[MultiPoly]]) -> tuple[int, MultiPoly]:
    """Bareiss elimination with entries in a polynomial ring.

    Returns (generic rank r, final pivot).  The final pivot equals the
    determinant of an explicit r x r submatrix of the input, so every
    parameter value where the matrix drops below its generic rank is a root
    of it.
    """
    if not rows or not rows[0]:
        one = MultiPoly.const((), Fraction(1))
        return 0, one
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    variables = m[0][0].variables
    prev = MultiPoly.const(variables, Fraction(1))
    rank = 0
    row = 0
    last_pivot = prev
    for _ in range(min(nrows, ncols)):
        # choose the sparsest lowest-degree nonzero pivot to limit growth
        pivot = None
        best = None
        for r in range(row, nrows):
            for c in range(ncols):
                entry = m[r][c]
                if not entry.is_zero:
                    key = (entry.total_degree(), len(entry.terms))
                    if best is None or key < best:
                        best = key
                        pivot = (r, c)
        if pivot is None:
            break
        pr, pc = pivot
        m[row], m[pr] = m[pr], m[row]
        p = m[row][pc]
        for r in range(row + 1, nrows):
            factor = m[r][pc]
            rr = m[r]
            top = m[row]
            for c in range(ncols):
                val = p * rr[c] - factor * top[c]
                rr[c] = val.exact_div(prev)
        for r in range(row + 1, nrows):
            m[r][pc] = MultiPoly.zero(variables)
        prev = p
        last_pivot = p
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank, last_pivot
