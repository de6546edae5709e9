"""Number fields Q(g) with optional complex embeddings.

Chart arithmetic in the blow-up engine happens over these fields: elements
are dense coefficient vectors reduced modulo a monic minimal polynomial,
with inversion by the extended Euclidean algorithm.  A field may carry an
embedding (its generator as an AlgebraicNumber with a certified box), which
is what distinguishes conjugate blow-up centers; fields used only for
abstract counting (e.g. special pencil parameters) may omit it.

Tower flattening goes through sympy's ``primitive_element`` with exact
generator representations, re-verified here by polynomial identities before
use; the degree cap applies at every extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import sympy

from .algnum import DEFAULT_DEGREE_CAP, AlgebraicNumber, roots_of, _monic_minpoly
from .errors import DegreeCapExceeded, InversionOfZero, ToolkitError
from .euclid import resultant
from .factorize import factor_rational, from_sympy
from .intervals import Box, eval_poly_box
from .multipoly import MultiPoly

_T = sympy.Symbol("t")


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        coeff = a[-1] / lc
        q[k] = coeff
        for i in range(db + 1):
            a[k + i] -= coeff * b[i]
        _poly_trim(a)
    return q, a


def _poly_ext_gcd(a: list[Fraction], b: list[Fraction]):
    """Extended Euclid over Q[t]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def sub_mul(u, q, v):
        # u - q*v
        res = list(u) + [Fraction(0)] * max(0, len(q) + len(v) - 1 - len(u))
        for i, qi in enumerate(q):
            if qi:
                for j, vj in enumerate(v):
                    if vj:
                        res[i + j] -= qi * vj
        return _poly_trim(res)

    while _poly_trim(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub_mul(s0, q, s1)
        t0, t1 = t1, sub_mul(t0, q, t1)
    return r0, s0, t0


class RationalField:
    """The trivial field Q; elements are plain Fractions."""

    degree = 1
    is_rational_field = True
    gen: Optional[AlgebraicNumber] = None

    def one(self):
        return Fraction(1)

    def zero(self):
        return Fraction(0)

    def from_fraction(self, q) -> Fraction:
        return Fraction(q)

    def min_poly_of(self, elt) -> MultiPoly:
        return MultiPoly(("t",), {(1,): Fraction(1), (0,): -Fraction(elt)})

    def embed_box(self, elt, eps) -> Box:
        return Box.point(Fraction(elt))

    def elt_is_rational(self, elt) -> bool:
        return True

    def elt_as_fraction(self, elt) -> Fraction:
        return Fraction(elt)

    def elt_str(self, elt) -> str:
        return str(Fraction(elt))

    def minpoly_string(self) -> str:
        return "t"

    def same_field(self, other) -> bool:
        return isinstance(other, RationalField)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class NFElement:
    """An element of a NumberField as a reduced coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "NumberField", coeffs):
        d = field.degree
        c = list(coeffs) + [Fraction(0)] * (d - len(coeffs))
        self.field = field
        self.coeffs = tuple(Fraction(x) for x in c[:d])

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field:
                raise ValueError("mixing elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return NFElement(
            self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return NFElement(
            self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * self.field._inv(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.field._inv(self)

    def __pow__(self, n: int):
        result = self.field.one()
        base = self
        if n < 0:
            base = self.field._inv(self)
            n = -n
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, NFElement):
            return self.field is other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return f"NF({self.field.gen_name}; {list(map(str, self.coeffs))})"


class NumberField:
    """Q[g]/(m(g)) with monic irreducible m, optionally embedded in C."""

    is_rational_field = False

    def __init__(
        self,
        min_poly: MultiPoly,
        gen: Optional[AlgebraicNumber] = None,
        gen_name: str = "g",
    ):
        mp = _monic_minpoly(min_poly)
        self.min_poly = mp
        self.degree = mp.degree_in("t")
        self.gen = gen
        self.gen_name = gen_name
        coeffs = [Fraction(0)] * (self.degree + 1)
        for (e,), c in mp.terms.items():
            coeffs[e] = c
        self._mp_coeffs = coeffs
        # reduction table for g^degree .. g^(2*degree-2)
        d = self.degree
        red = []
        current = [-c for c in coeffs[:d]]  # g^d
        red.append(list(current))
        for _ in range(d - 2):
            nxt = [Fraction(0)] + current[: d - 1]
            top = current[d - 1]
            if top:
                for i in range(d):
                    nxt[i] += top * red[0][i]
            red.append(nxt)
            current = nxt
        self._red = red

    # -- element constructors -------------------------------------------

    def one(self) -> NFElement:
        return NFElement(self, [Fraction(1)])

    def zero(self) -> NFElement:
        return NFElement(self, [])

    def from_fraction(self, q) -> NFElement:
        return NFElement(self, [Fraction(q)])

    def gen_element(self) -> NFElement:
        return NFElement(self, [Fraction(0), Fraction(1)])

    def from_coeffs(self, coeffs) -> NFElement:
        return NFElement(self, coeffs)

    # -- arithmetic ------------------------------------------------------

    def _mul(self, a: NFElement, b: NFElement) -> NFElement:
        d = self.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                row = self._red[k - d]
                for i in range(d):
                    out[i] += ck * row[i]
        return NFElement(self, out)

    def _inv(self, a: NFElement) -> NFElement:
        if not a:
            raise InversionOfZero("inverse of zero field element")
        g, s, _ = _poly_ext_gcd(list(a.coeffs), list(self._mp_coeffs))
        if len(g) != 1:
            raise ToolkitError("minimal polynomial is not irreducible")
        scale = 1 / g[0]
        return NFElement(self, [c * scale for c in s])

    # -- views -----------------------------------------------------------

    def elt_is_rational(self, elt: NFElement) -> bool:
        return not any(elt.coeffs[1:])

    def elt_as_fraction(self, elt: NFElement) -> Fraction:
        if not self.elt_is_rational(elt):
            raise ToolkitError("element is not rational")
        return elt.coeffs[0]

    def elt_str(self, elt: NFElement) -> str:
        return "[" + ", ".join(str(c) for c in elt.coeffs) + "]"

    def minpoly_string(self) -> str:
        return self.min_poly.to_string()

    def min_poly_of(self, elt: NFElement) -> MultiPoly:
        """Absolute minimal polynomial over Q (monic) of a field element."""
        if self.elt_is_rational(elt):
            return QQ.min_poly_of(elt.coeffs[0])
        gv = ("g", "t")
        m_g = MultiPoly(gv, {(e, 0): c for (e,), c in self.min_poly.terms.items()})
        rep = MultiPoly(gv, {(0, 1): Fraction(1)})
        rep = rep - MultiPoly(gv, {(i, 0): c for i, c in enumerate(elt.coeffs) if c})
        res = resultant(m_g, rep, "g")
        res = MultiPoly(("t",), {(e[0],): c for e, c in res.terms.items()})
        for fac, _ in factor_rational(res):
            if not self.eval_qpoly(fac, elt):
                return _monic_minpoly(fac)
        raise AssertionError("no factor of the norm vanishes at the element")

    def eval_qpoly(self, p: MultiPoly, at: NFElement) -> NFElement:
        """Evaluate a univariate rational polynomial at a field element."""
        coeffs = [Fraction(0)] * (p.degree_in(p.variables[0]) + 1)
        for (e,), c in p.terms.items():
            coeffs[e] = c
        acc = self.zero()
        for c in reversed(coeffs):
            acc = acc * at + self.from_fraction(c)
        return acc

    def embed_box(self, elt: NFElement, eps: Fraction) -> Box:
        if self.gen is None:
            raise ToolkitError("field has no embedding")
        gbox = self.gen.refine(eps)
        return eval_poly_box([Box.point(c) for c in elt.coeffs], gbox)

    def same_field(self, other) -> bool:
        if not isinstance(other, NumberField):
            return False
        if self.min_poly != other.min_poly:
            return False
        if (self.gen is None) != (other.gen is None):
            return False
        if self.gen is None:
            return True
        return self.gen == other.gen

    def __repr__(self):
        emb = "" if self.gen is None else f", root {self.gen.root_index}"
        return f"QQ[{self.gen_name}]/({self.min_poly.to_string()}{emb})"


@dataclass
class FieldMap:
    """An embedding of one coefficient field into another."""

    src: object
    dst: object
    gen_image: Optional[NFElement]  # image of src's generator; None for QQ src

    def __call__(self, elt):
        if isinstance(self.src, RationalField):
            return (
                Fraction(elt)
                if isinstance(self.dst, RationalField)
                else self.dst.from_fraction(elt)
            )
        if self.src is self.dst:
            return elt
        acc = self.dst.zero()
        for c in reversed(elt.coeffs):
            acc = acc * self.gen_image + self.dst.from_fraction(c)
        return acc

    def apply_poly(self, p: MultiPoly) -> MultiPoly:
        if self.src is self.dst:
            return p
        return p.map_coeff(self)


def identity_map(field) -> FieldMap:
    return FieldMap(field, field, None if isinstance(field, RationalField) else field.gen_element())


def field_from_algebraic(a: AlgebraicNumber) -> tuple:
    """Field generated by one algebraic number; returns (field, elt)."""
    if a.is_rational:
        return QQ, a.as_fraction()
    field = NumberField(a.min_poly, gen=a)
    return field, field.gen_element()


def join_with_algebraic(
    field, rho: AlgebraicNumber, cap: int = DEFAULT_DEGREE_CAP
) -> tuple:
    """Smallest common field of ``field`` and a new algebraic number.

    Returns (new_field, map: field -> new_field, rho_elt in new_field).
    The primitive element gamma = alpha + k*rho is found by resultant
    elimination: k is accepted once the sum polynomial is squarefree and the
    gcd trick recovers rho as a *linear* factor over Q(gamma), which both
    certifies primitivity and yields exact generator representations.
    """
    if rho.is_rational:
        f = rho.as_fraction()
        return field, identity_map(field), (
            f if isinstance(field, RationalField) else field.from_fraction(f)
        )
    if rho.degree > cap:
        raise DegreeCapExceeded(
            f"algebraic degree {rho.degree} exceeds cap {cap}",
            (rho.min_poly.to_string(),),
        )
    if isinstance(field, RationalField):
        new_field, elt = field_from_algebraic(rho)
        return new_field, FieldMap(field, new_field, None), elt
    if field.gen is None:
        raise ToolkitError("cannot extend an abstract field by an embedded root")

    from .euclid import gcd_poly, is_squarefree  # local import to avoid cycle

    alpha = field.gen
    st = ("s", "t")
    m_rho_s = MultiPoly(st, {(e, 0): c for (e,), c in rho.min_poly.terms.items()})
    for k_abs in range(1, 33):
        for k in (k_abs, -k_abs):
            shift = MultiPoly(st, {(0, 1): Fraction(1), (1, 0): Fraction(-k)})
            m_alpha_shift = field.min_poly.subs({"t": shift})
            big = resultant(m_rho_s, m_alpha_shift, "s")
            big = MultiPoly(("t",), {(e[-1],): c for e, c in big.terms.items()})
            if not is_squarefree(big):
                continue
            # locate gamma = alpha + k*rho among the roots of big
            candidates = roots_of(big)
            eps = Fraction(1, 64)
            gamma = None
            for _ in range(100):
                target = alpha.refine(eps) + rho.refine(eps) * Box.point(Fraction(k))
                live = [c for c in candidates if c.refine(eps).intersects(target)]
                if len(live) == 1:
                    gamma = live[0]
                    break
                eps /= 16
            if gamma is None:  # pragma: no cover
                raise ToolkitError("failed to isolate primitive element")
            if gamma.degree > cap:
                raise DegreeCapExceeded(
                    f"joint field degree {gamma.degree} exceeds cap {cap}",
                    (field.minpoly_string(), rho.min_poly.to_string()),
                )
            if gamma.is_rational:  # alpha and rho rationally dependent sum
                continue
            new_field = NumberField(gamma.min_poly, gen=gamma)
            gamma_elt = new_field.gen_element()
            # gcd of m_rho(v) and m_alpha(gamma - k v) over the new field
            vvar = ("v",)
            a_poly = MultiPoly(
                vvar,
                {(e,): new_field.from_fraction(c) for (e,), c in rho.min_poly.terms.items()},
            )
            lin = MultiPoly(
                vvar,
                {(0,): gamma_elt, (1,): new_field.from_fraction(Fraction(-k))},
            )
            b_poly = MultiPoly.zero(vvar)
            acoeffs = [Fraction(0)] * (field.degree + 1)
            for (e,), c in field.min_poly.terms.items():
                acoeffs[e] = c
            for c in reversed(acoeffs):
                b_poly = b_poly * lin + MultiPoly.const(vvar, new_field.from_fraction(c))
            g = gcd_poly(a_poly, b_poly)
            if g.degree_in("v") != 1:
                continue
            g = g.monic()
            rho_elt = -g.terms.get((0,), new_field.zero())
            if isinstance(rho_elt, Fraction):
                rho_elt = new_field.from_fraction(rho_elt)
            alpha_elt = gamma_elt - rho_elt * Fraction(k)
            if new_field.eval_qpoly(rho.min_poly, rho_elt):
                raise AssertionError("rho representation failed verification")
            if new_field.eval_qpoly(field.min_poly, alpha_elt):
                raise AssertionError("alpha representation failed verification")
            return new_field, FieldMap(field, new_field, alpha_elt), rho_elt
    raise ToolkitError("no primitive element found")  # pragma: no cover


def roots_over_field(h: MultiPoly, field, cap: int = DEFAULT_DEGREE_CAP):
    """Roots of a univariate squarefree polynomial over an embedded field.

    ``h`` is a MultiPoly in one variable with coefficients in ``field``
    (Fractions for QQ).  Returns a list of (new_field, map, root_element,
    root_algebraic); each root may live in an extension of ``field``.
    """
    var = h.variables[0]
    deg = h.degree_in(var)
    if deg <= 0:
        return []
    if isinstance(field, RationalField):
        out = []
        for rho in roots_of(MultiPoly(("t",), {(e[0],): c for e, c in h.terms.items()})):
            if rho.degree > cap:
                raise DegreeCapExceeded(
                    f"root degree {rho.degree} exceeds cap {cap}",
                    (rho.min_poly.to_string(),),
                )
            new_field, fmap, elt = join_with_algebraic(field, rho, cap)
            out.append((new_field, fmap, elt, rho))
        return out

    from .euclid import gcd_poly  # local import to avoid cycle

    # squarefree-reduce over the field so the certified count is the degree
    h = h.map_coeff(
        lambda c: c if isinstance(c, NFElement) else field.from_fraction(c)
    )
    rad = gcd_poly(h, h.derivative(var))
    if rad.degree_in(var) > 0:
        h = h.exact_div(rad).monic()
    deg = h.degree_in(var)

    # norm of h: eliminate the field generator
    gv = ("g", var)
    m_g = MultiPoly(gv, {(e, 0): c for (e,), c in field.min_poly.terms.items()})
    h_g = MultiPoly.zero(gv)
    for (e,), c in h.terms.items():
        for i, ci in enumerate(c.coeffs):
            if ci:
                h_g = h_g + MultiPoly(gv, {(i, e): ci})
    norm = resultant(m_g, h_g, "g")
    norm = MultiPoly(("t",), {(e[0],): c for e, c in norm.terms.items()})
    candidates = roots_of(norm)

    coeff_list = [field.zero() for _ in range(deg + 1)]
    for (e,), c in h.terms.items():
        coeff_list[e] = c

    eps = Fraction(1, 64)
    survivors = list(candidates)
    for _ in range(200):
        still = []
        coeff_boxes = [field.embed_box(c, eps) for c in coeff_list]
        for rho in survivors:
            val = eval_poly_box(coeff_boxes, rho.refine(eps))
            if val.contains_zero():
                still.append(rho)
        survivors = still
        if len(survivors) == deg:
            break
        eps /= 16
    else:
        raise ToolkitError("failed to certify the root set over the field")

    out = []
    for rho in survivors:
        new_field, fmap, elt = join_with_algebraic(field, rho, cap)
        out.append((new_field, fmap, elt, rho))
    return out


@dataclass
class AlgebraicPoint:
    """A point with both coordinates in one embedded field."""

    field: object
    x: object
    y: object

    def coords_str(self) -> tuple[str, str]:
        f = self.field
        return f.elt_str(self.x), f.elt_str(self.y)

    def is_rational(self) -> bool:
        f = self.field
        return f.elt_is_rational(self.x) and f.elt_is_rational(self.y)

    def to_json(self):
        f = self.field
        if isinstance(f, RationalField):
            return {
                "field": "QQ",
                "x": str(Fraction(self.x)),
                "y": str(Fraction(self.y)),
            }
        data = {
            "field": f.minpoly_string(),
            "x": f.elt_str(self.x),
            "y": f.elt_str(self.y),
        }
        if f.gen is not None:
            data["gen_box"] = f.gen.box.to_json()
        return data

    def sort_key(self):
        f = self.field
        deg = 1 if isinstance(f, RationalField) else f.degree
        gen_idx = -1 if f.gen is None else getattr(f.gen, "root_index", -1)
        return (
            deg,
            f.minpoly_string(),
            gen_idx,
            f.elt_str(self.x),
            f.elt_str(self.y),
        )
