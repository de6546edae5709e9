"""Rational-endpoint interval and complex box arithmetic.

Used only to isolate and separate algebraic numbers, never to decide
equality: every decision procedure in the toolkit reduces equality to exact
polynomial arithmetic, with intervals shrinking until a disjointness or
containment certificate appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def point(cls, q: Fraction) -> "RatInterval":
        q = Fraction(q)
        return cls(q, q)

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "RatInterval") -> "RatInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(products), max(products))

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def square(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            return RatInterval(Fraction(0), max(self.lo * self.lo, self.hi * self.hi))
        return self * self

    def divide(self, other: "RatInterval") -> "RatInterval":
        if other.contains_zero():
            raise ZeroDivisionError("interval division by interval containing zero")
        inverses = (1 / other.lo, 1 / other.hi)
        return self * RatInterval(min(inverses), max(inverses))

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def intersects(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class Box:
    """A rectangle in the complex plane with rational corners."""

    re: RatInterval
    im: RatInterval

    @classmethod
    def point(cls, re: Fraction, im: Fraction = Fraction(0)) -> "Box":
        return cls(RatInterval.point(re), RatInterval.point(im))

    @classmethod
    def of_corners(cls, re_lo, re_hi, im_lo, im_hi) -> "Box":
        return cls(
            RatInterval(Fraction(re_lo), Fraction(re_hi)),
            RatInterval(Fraction(im_lo), Fraction(im_hi)),
        )

    def __add__(self, other: "Box") -> "Box":
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Box") -> "Box":
        return Box(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "Box") -> "Box":
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "Box":
        return Box(-self.re, -self.im)

    def inverse(self) -> "Box":
        norm = self.re.square() + self.im.square()
        return Box(self.re.divide(norm), (-self.im).divide(norm))

    def intersects(self, other: "Box") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def contains(self, other: "Box") -> bool:
        return self.re.contains(other.re) and self.im.contains(other.im)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def to_json(self):
        return [
            str(self.re.lo),
            str(self.re.hi),
            str(self.im.lo),
            str(self.im.hi),
        ]


def eval_poly_box(coeff_boxes: list[Box], at: Box) -> Box:
    """Horner evaluation of a polynomial with box coefficients at a box."""
    acc = Box.point(Fraction(0))
    for c in reversed(coeff_boxes):
        acc = acc * at + c
    return acc
