"""Lattice polygons of polynomial supports.

Convex hulls are computed with exact integer arithmetic (monotone chain)
and stored counterclockwise with exactly the extreme points as vertices.
Degenerate hulls (a segment or a single point) are allowed; they have no
interior lattice points.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as int_gcd

from .errors import ZeroInput
from .multipoly import MultiPoly

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: list[Point]) -> list[Point]:
    """Extreme points of the hull, counterclockwise, collinear interior
    points removed."""
    pts = sorted(set(points))
    if len(pts) <= 1:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 0:  # all collinear
        return [pts[0], pts[-1]]
    return hull


@dataclass(frozen=True)
class LatticePolygon:
    """Convex hull of a finite set of lattice points."""

    vertices: tuple[Point, ...]

    @classmethod
    def of_points(cls, points: list[Point]) -> "LatticePolygon":
        return cls(tuple(convex_hull(points)))

    @property
    def dimension(self) -> int:
        if len(self.vertices) == 1:
            return 0
        if len(self.vertices) == 2:
            return 1
        return 2

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) <= 1:
            return []
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def contains_strictly(self, p: Point) -> bool:
        if self.dimension < 2:
            return False
        v = self.vertices
        for i in range(len(v)):
            if _cross(v[i], v[(i + 1) % len(v)], p) <= 0:
                return False
        return True

    def interior_lattice_points(self) -> list[Point]:
        if self.dimension < 2:
            return []
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        out = []
        for x in range(min(xs) + 1, max(xs)):
            for y in range(min(ys) + 1, max(ys)):
                if self.contains_strictly((x, y)):
                    out.append((x, y))
        return out

    def interior_count(self) -> int:
        return len(self.interior_lattice_points())

    def to_json(self):
        return [list(p) for p in self.vertices]


def edge_lattice_points(edge: tuple[Point, Point]) -> list[Point]:
    """All lattice points on the closed edge, in order."""
    (x0, y0), (x1, y1) = edge
    dx, dy = x1 - x0, y1 - y0
    g = int_gcd(abs(dx), abs(dy))
    if g == 0:
        return [edge[0]]
    sx, sy = dx // g, dy // g
    return [(x0 + k * sx, y0 + k * sy) for k in range(g + 1)]


def newton_polygon(a: MultiPoly) -> LatticePolygon:
    """Convex hull of the exponent support (two-variable polynomials)."""
    if a.is_zero:
        raise ZeroInput("Newton polygon of the zero polynomial")
    if len(a.variables) != 2:
        raise ValueError("newton_polygon expects a two-variable polynomial")
    return LatticePolygon.of_points([(e[0], e[1]) for e in a.terms])


def edge_polynomial(f: MultiPoly, edge: tuple[Point, Point]) -> MultiPoly:
    """Coefficients of f along a polygon edge as a univariate polynomial.

    The k-th lattice point of the edge contributes the coefficient of its
    monomial as the degree-k coefficient.
    """
    table = {}
    for k, (i, j) in enumerate(edge_lattice_points(edge)):
        coeff = f.terms.get((i, j))
        if coeff:
            table[(k,)] = coeff
    return MultiPoly(("t",), table)
