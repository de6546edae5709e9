"""Sparse exact multivariate polynomials.

``MultiPoly`` is the universal currency of the toolkit: a finite mapping
from exponent vectors to non-zero coefficients, usually ``Fraction`` but any
exact field element with arithmetic dunders works (number-field elements
plug in unchanged).  Invariants: no stored coefficient is zero, the zero
polynomial has an empty term table, and serialization uses graded
lexicographic order on the declared variable tuple so equal polynomials
print identically.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Callable, Iterable, Mapping

from .errors import DivisionInexact, ZeroInput

Exponents = tuple[int, ...]


def _grlex_key(expo: Exponents):
    return (sum(expo), expo)


class MultiPoly:
    """A sparse polynomial over an exact coefficient field."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, object]):
        vs = tuple(variables)
        table = {}
        n = len(vs)
        for expo, coeff in terms.items():
            if len(expo) != n:
                raise ValueError(f"exponent {expo} does not match variables {vs}")
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            if coeff:
                table[tuple(expo)] = coeff
        self.variables = vs
        self.terms = table

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Iterable[str], value) -> "MultiPoly":
        variables = tuple(variables)
        if isinstance(value, int):
            value = Fraction(value)
        if not value:
            return cls(variables, {})
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, name: str, variables: Iterable[str], one=Fraction(1)) -> "MultiPoly":
        variables = tuple(variables)
        expo = tuple(1 if v == name else 0 for v in variables)
        if sum(expo) != 1:
            raise ValueError(f"{name!r} is not among {variables}")
        return cls(variables, {expo: one})

    # -- predicates / inspection --------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        """Coefficient of the constant term (zero coefficient if absent)."""
        zero_expo = (0,) * len(self.variables)
        if self.terms and zero_expo not in self.terms and self.is_constant:
            raise AssertionError("unreachable")
        for expo, coeff in self.terms.items():
            if expo == zero_expo:
                return coeff
        return Fraction(0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def lead(self):
        """Graded-lex leading (exponents, coefficient) pair."""
        if not self.terms:
            raise ZeroInput("zero polynomial has no leading term")
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def lead_coeff(self):
        return self.lead()[1]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, int):
            other = Fraction(other)
        return MultiPoly.const(self.variables, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        table = dict(self.terms)
        for expo, coeff in other.terms.items():
            acc = table.get(expo)
            if acc is None:
                table[expo] = coeff
            else:
                acc = acc + coeff
                if acc:
                    table[expo] = acc
                else:
                    del table[expo]
        return MultiPoly(self.variables, table)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        table: dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = table.get(expo)
                if acc is None:
                    if prod:
                        table[expo] = prod
                else:
                    acc = acc + prod
                    if acc:
                        table[expo] = acc
                    else:
                        del table[expo]
        return MultiPoly(self.variables, table)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.variables, self._one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        if isinstance(c, int):
            c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly(self.variables, {e: k * c for e, k in self.terms.items()})

    def _one(self):
        for coeff in self.terms.values():
            return coeff / coeff
        return Fraction(1)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient self / other; raises DivisionInexact otherwise."""
        other = self._coerce(other)
        if other.is_zero:
            raise DivisionInexact("division by zero polynomial")
        if self.is_zero:
            return MultiPoly.zero(self.variables)
        lead_e, lead_c = other.lead()
        quot: dict[Exponents, object] = {}
        rem = self
        while not rem.is_zero:
            re, rc = rem.lead()
            diff = tuple(a - b for a, b in zip(re, lead_e))
            if any(d < 0 for d in diff):
                raise DivisionInexact("nonzero remainder in exact division")
            coeff = rc / lead_c
            quot[diff] = coeff
            rem = rem - MultiPoly(self.variables, {diff: coeff}) * other
        return MultiPoly(self.variables, quot)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except DivisionInexact:
            return False

    # -- substitution and views ---------------------------------------

    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        Unmentioned variables stay in place; all substituted values must be
        MultiPolys over the *same* variable tuple as the desired result, or
        scalars.  The result variable tuple is taken from the first
        polynomial value, else stays as self's.
        """
        target_vars = None
        for value in mapping.values():
            if isinstance(value, MultiPoly):
                target_vars = value.variables
                break
        if target_vars is None:
            target_vars = self.variables

        def as_poly(value):
            if isinstance(value, MultiPoly):
                if value.variables != target_vars:
                    raise ValueError("substitution values over mixed variable tuples")
                return value
            if isinstance(value, int):
                value = Fraction(value)
            return MultiPoly.const(target_vars, value)

        images = {}
        for i, name in enumerate(self.variables):
            if name in mapping:
                images[i] = as_poly(mapping[name])
            else:
                if name not in target_vars:
                    raise ValueError(f"no image for variable {name!r}")
                images[i] = MultiPoly.var(name, target_vars, one=Fraction(1))

        power_cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[i] ** e
            return power_cache[key]

        result = MultiPoly.zero(target_vars)
        for expo, coeff in self.sorted_terms():
            term = MultiPoly.const(target_vars, coeff)
            for i, e in enumerate(expo):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def eval_scalar(self, values: Mapping[str, object]):
        """Evaluate fully to a coefficient; every variable must be bound."""
        acc = None
        for expo, coeff in self.terms.items():
            term = coeff
            for name, e in zip(self.variables, expo):
                if e:
                    v = values[name]
                    if isinstance(v, int):
                        v = Fraction(v)
                    term = term * v ** e
            acc = term if acc is None else acc + term
        if acc is None:
            return Fraction(0)
        return acc

    def as_univar(self, name: str) -> list["MultiPoly"]:
        """Dense coefficient list in ``name``; entries over remaining vars."""
        i = self.variables.index(name)
        rest = tuple(v for v in self.variables if v != name)
        deg = self.degree_in(name)
        if deg < 0:
            return []
        coeffs = [dict() for _ in range(deg + 1)]
        for expo, coeff in self.terms.items():
            rexpo = tuple(e for j, e in enumerate(expo) if j != i)
            coeffs[expo[i]][rexpo] = coeff
        return [MultiPoly(rest, table) for table in coeffs]

    @staticmethod
    def from_univar(coeffs: list["MultiPoly"], name: str, variables: tuple[str, ...]) -> "MultiPoly":
        """Inverse of :meth:`as_univar` for the given full variable tuple."""
        i = variables.index(name)
        table: dict[Exponents, object] = {}
        for k, c in enumerate(coeffs):
            for rexpo, coeff in c.terms.items():
                expo = list(rexpo[:i]) + [k] + list(rexpo[i:])
                table[tuple(expo)] = coeff
        return MultiPoly(variables, table)

    def drop_vars(self, names: Iterable[str]) -> "MultiPoly":
        """Remove variables the polynomial does not actually use."""
        names = set(names)
        keep = [i for i, v in enumerate(self.variables) if v not in names]
        for expo in self.terms:
            for i, v in enumerate(self.variables):
                if v in names and expo[i]:
                    raise ValueError(f"polynomial uses dropped variable {v!r}")
        new_vars = tuple(self.variables[i] for i in keep)
        return MultiPoly(
            new_vars, {tuple(e[i] for i in keep): c for e, c in self.terms.items()}
        )

    def with_vars(self, variables: Iterable[str]) -> "MultiPoly":
        """Re-embed into a larger/reordered variable tuple."""
        variables = tuple(variables)
        idx = []
        for v in self.variables:
            idx.append(variables.index(v))
        table: dict[Exponents, object] = {}
        for expo, coeff in self.terms.items():
            new_expo = [0] * len(variables)
            for pos, e in zip(idx, expo):
                new_expo[pos] = e
            table[tuple(new_expo)] = coeff
        return MultiPoly(variables, table)

    def derivative(self, name: str) -> "MultiPoly":
        i = self.variables.index(name)
        table: dict[Exponents, object] = {}
        for expo, coeff in self.terms.items():
            e = expo[i]
            if e:
                new_expo = expo[:i] + (e - 1,) + expo[i + 1 :]
                table[new_expo] = coeff * e
        return MultiPoly(self.variables, table)

    def map_coeff(self, fn: Callable) -> "MultiPoly":
        return MultiPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    # -- rational-coefficient normal forms -----------------------------

    def content_and_primitive(self) -> tuple[Fraction, "MultiPoly"]:
        """Split off a positive rational content (Fraction coefficients only).

        The primitive part has coprime integer coefficients and positive
        graded-lex leading coefficient.
        """
        if self.is_zero:
            return Fraction(0), self
        num_gcd = 0
        den_lcm = 1
        for coeff in self.terms.values():
            num_gcd = int_gcd(num_gcd, coeff.numerator)
            den_lcm = den_lcm * coeff.denominator // int_gcd(den_lcm, coeff.denominator)
        content = Fraction(num_gcd, den_lcm)
        prim = self.scale(1 / content)
        if prim.lead_coeff() < 0:
            prim = prim.scale(-1)
            content = -content
        return content, prim

    def primitive(self) -> "MultiPoly":
        return self.content_and_primitive()[1]

    def monic(self) -> "MultiPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.lead_coeff())

    # -- display -------------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for expo, coeff in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, expo)
                if e
            )
            cs = str(coeff)
            if mono:
                if cs == "1":
                    body = mono
                elif cs == "-1":
                    body = f"-{mono}"
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs
            if chunks and not body.startswith("-"):
                chunks.append("+ " + body)
            elif chunks:
                chunks.append("- " + body[1:])
            else:
                chunks.append(body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_string()!r}, vars={self.variables})"

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))
