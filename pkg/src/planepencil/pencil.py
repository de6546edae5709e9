"""Pencil analysis: component counts across aP + bQ = 0 and rationality.

``scan_pencil`` samples the pencil at seeded random parameters plus both
coordinate points, counts components exactly at each, then confirms the
finitely many special parameters located by the symbolic Ruppert/Gao
analysis (conjugate parameters are handled together in the abstract field
defined by their shared minimal polynomial).

``rationality_verdict`` certifies genus through the Newton polygon when the
polynomial is nondegenerate with respect to it (no facial system vanishes
in the torus, checked by exact squarefreeness of edge polynomials plus a
resultant-based search for torus singular points); degenerate cases fall
back to the line/conic/graph certificates or an honest Unknown.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .config import DEFAULT_CONFIG, ToolkitConfig
from .core.errors import (
    ConstantPolynomial,
    DegeneratePencil,
    DegreeCapExceeded,
    InvalidProjectivePoint,
    NotIrreducible,
)
from .core.euclid import gcd_poly, is_squarefree, resultant, squarefree_part
from .core.factorize import factor_rational
from .core.multipoly import MultiPoly
from .core.numfield import NumberField, QQ
from .core.polygon import edge_polynomial, newton_polygon
from .ruppert import (
    absolute_factor_count,
    count_at_minpoly,
    pencil_special_candidates,
)

VARS = ("x", "y")


@dataclass
class PencilMap:
    """A polynomial plane map F = (P, Q) with its pencil aP + bQ."""

    P: MultiPoly
    Q: MultiPoly
    name: str = "F"

    def __post_init__(self):
        if self.P.is_zero and self.Q.is_zero:
            raise ValueError("P and Q must not both be zero")
        if self.P.is_constant and self.Q.is_constant:
            raise ValueError("P and Q must not both be constant")

    @property
    def degP(self) -> int:
        return self.P.total_degree()

    @property
    def degQ(self) -> int:
        return self.Q.total_degree()

    def is_degenerate_pencil(self) -> bool:
        if self.P.is_zero or self.Q.is_zero:
            return True
        lp = self.P.lead_coeff()
        lq = self.Q.lead_coeff()
        return self.P.scale(lq) == self.Q.scale(lp)

    def jacobian(self) -> MultiPoly:
        return self.P.derivative("x") * self.Q.derivative("y") - self.P.derivative(
            "y"
        ) * self.Q.derivative("x")


def pencil_member(F: PencilMap, lam: tuple[Fraction, Fraction]) -> MultiPoly:
    """The member polynomial a*P + b*Q for lambda = (a : b)."""
    a, b = Fraction(lam[0]), Fraction(lam[1])
    if a == 0 and b == 0:
        raise InvalidProjectivePoint("(0:0) is not a projective parameter")
    return F.P.scale(a) + F.Q.scale(b)


def lam_str(a: Fraction, b: Fraction) -> str:
    if a != 0:
        return f"(1:{b / a})"
    return "(0:1)"


@dataclass
class SpecialGroup:
    """A confirmed Galois orbit of special pencil parameters."""

    kind: str  # "rational" | "algebraic" | "infinity"
    label: str  # (1:t0) for rational, minpoly string for algebraic, (0:1)
    orbit: int  # number of parameters in the orbit
    r: Optional[int]  # component count of each member, None when unresolved
    member_squarefree: Optional[bool]
    status: str  # "special" | "ordinary" | "unresolved"
    reason: str = ""
    key: str = ""  # canonical group key shared with the resolution engine

    def to_json(self):
        return {
            "kind": self.kind,
            "label": self.label,
            "key": self.key,
            "orbit": self.orbit,
            "r": self.r,
            "member_squarefree": self.member_squarefree,
            "status": self.status,
            "reason": self.reason,
        }


@dataclass
class PencilProfile:
    samples: list  # (label, r)
    generic_r: int
    special_candidates: list  # labels inspected
    groups: list  # SpecialGroup, confirmed special/unresolved only
    generic_genus: object  # ("genus", g) or ("unknown", reason)
    generic_rationality: str  # rational | not_rational | unknown
    total_reducibility: Optional[int]
    complete: bool
    all_members_certified: bool
    certification_failures: list
    n_samples: int
    seed: int

    def to_json(self):
        return {
            "samples": [[s, r] for s, r in self.samples],
            "generic_r": self.generic_r,
            "special_candidates": list(self.special_candidates),
            "special_groups": [g.to_json() for g in self.groups],
            "generic_genus": list(self.generic_genus),
            "generic_rationality": self.generic_rationality,
            "total_reducibility": self.total_reducibility,
            "complete": self.complete,
            "all_members_certified": self.all_members_certified,
            "certification_failures": list(self.certification_failures),
            "n_samples": self.n_samples,
            "seed": self.seed,
        }


class RationalityVerdict:
    RATIONAL = "rational"
    NOT_RATIONAL = "not_rational"
    UNKNOWN = "unknown"


def _strip_var_power(p: MultiPoly, var: str) -> MultiPoly:
    i = p.variables.index(var)
    val = min(e[i] for e in p.terms)
    if val == 0:
        return p
    return MultiPoly(
        p.variables,
        {e[:i] + (e[i] - val,) + e[i + 1 :]: c for e, c in p.terms.items()},
    )


def _has_torus_singularity(f: MultiPoly, cap: int) -> Optional[bool]:
    """Does {f = f_x = f_y = 0} meet the torus?  None = undecided."""
    fx = f.derivative("x")
    fy = f.derivative("y")
    if f.degree_in("y") == 0 or f.degree_in("x") == 0:
        return False  # irreducible univariate: smooth linear curve
    r1 = resultant(f, fx, "y")
    r2 = resultant(f, fy, "y")
    hx = gcd_poly(r1, r2)
    if hx.is_zero:
        return None
    if hx.is_constant:
        return False
    hx = _strip_var_power(hx, "x")
    if hx.is_constant:
        return False
    for fac, _ in factor_rational(hx):
        if fac.degree_in("x") < 1:
            continue
        deg = fac.degree_in("x")
        if deg > cap:
            return None
        mp = MultiPoly(("t",), {(e[fac.variables.index("x")],): c for e, c in fac.terms.items()})
        K = NumberField(mp, gen=None) if deg > 1 else None
        if K is None:
            x0 = -mp.terms.get((0,), Fraction(0)) / mp.terms.get((1,))
            if x0 == 0:
                continue
            sub = {"x": MultiPoly.const(VARS, x0)}
            fy_list = [f.subs(sub), fx.subs(sub), fy.subs(sub)]
        else:
            x0 = K.gen_element()
            lift = lambda p: p.map_coeff(K.from_fraction)
            xv = MultiPoly.const(VARS, x0)
            sub = {"x": xv, "y": MultiPoly.var("y", VARS, one=K.one())}
            fy_list = [lift(f).subs(sub), lift(fx).subs(sub), lift(fy).subs(sub)]
        g = fy_list[0]
        for other in fy_list[1:]:
            g = gcd_poly(g, other)
            if g.is_constant:
                break
        if g.is_constant:
            continue
        # strip y powers: the torus excludes y = 0
        g = _strip_var_power(g, "y")
        if not g.is_constant:
            return True
    return False


def rationality_verdict(f: MultiPoly, cap: int = 8) -> tuple[str, Optional[int]]:
    """(verdict, genus) for an absolutely irreducible curve f = 0.

    Nondegenerate-with-respect-to-its-Newton-polygon curves get the exact
    geometric genus (interior lattice point count); otherwise only the
    trivial certificates fire and the result may be Unknown.
    """
    if f.is_zero or f.is_constant:
        raise ConstantPolynomial("rationality needs a non-constant polynomial")
    if absolute_factor_count(f) != 1:
        raise NotIrreducible(f"{f.to_string()} is not absolutely irreducible")
    if f.total_degree() <= 2:
        return RationalityVerdict.RATIONAL, 0
    if f.degree_in("x") == 1 or f.degree_in("y") == 1:
        return RationalityVerdict.RATIONAL, 0

    poly = newton_polygon(f)
    if poly.dimension <= 1:
        # irreducible quasi-homogeneous curves are monomially parametrized
        return RationalityVerdict.RATIONAL, 0
    for edge in poly.edges():
        ep = _strip_var_power(edge_polynomial(f, edge), "t")
        if ep.degree_in("t") >= 1 and not is_squarefree(ep):
            return RationalityVerdict.UNKNOWN, None
    sing = _has_torus_singularity(f, cap)
    if sing is None or sing:
        return RationalityVerdict.UNKNOWN, None
    genus = poly.interior_count()
    if genus == 0:
        return RationalityVerdict.RATIONAL, 0
    return RationalityVerdict.NOT_RATIONAL, genus


def _member_count_and_flags(member: MultiPoly):
    sf = is_squarefree(member)
    r = absolute_factor_count(member)
    return r, sf


def scan_pencil(
    F: PencilMap, n_samples: int = 50, seed: int = 0, cap: int = 8
) -> PencilProfile:
    """Sample the pencil, confirm its special parameters, assemble a profile."""
    if n_samples < 20:
        raise ValueError("n_samples must be at least 20")
    if F.is_degenerate_pencil():
        raise DegeneratePencil(f"{F.name}: P and Q are proportional")

    rng = random.Random(seed)
    ts: list[Fraction] = []
    seen = {Fraction(0)}
    while len(ts) < n_samples:
        t = Fraction(rng.randint(-999, 999), rng.randint(1, 40))
        if t not in seen:
            seen.add(t)
            ts.append(t)

    samples = []
    counts = []
    for t in ts:
        member = pencil_member(F, (Fraction(1), t))
        r, _ = _member_count_and_flags(member)
        samples.append((lam_str(Fraction(1), t), r))
        counts.append(r)
    generic_r = min(counts)
    share = sum(1 for r in counts if r == generic_r) / len(counts)

    # coordinate members (1:0) and (0:1), always inspected exactly
    coord_entries = []
    for a, b, kind in ((Fraction(1), Fraction(0), "rational"), (Fraction(0), Fraction(1), "infinity")):
        member = pencil_member(F, (a, b))
        if member.is_constant:
            coord_entries.append((lam_str(a, b), kind, None, None))
            continue
        r, sf = _member_count_and_flags(member)
        coord_entries.append((lam_str(a, b), kind, r, sf))

    # symbolic special-candidate analysis in the chart lambda = (1 : t)
    sc = pencil_special_candidates(F.P, F.Q)
    complete = sc.complete
    groups: list[SpecialGroup] = []
    candidate_labels = []
    failures: list[str] = []

    handled_rational = set()
    for fac in sc.factors:
        deg = fac.degree_in("t")
        if deg == 1:
            c1 = fac.terms.get((1,))
            c0 = fac.terms.get((0,), Fraction(0))
            t0 = -c0 / c1
            label = lam_str(Fraction(1), t0)
            candidate_labels.append(label)
            if t0 in handled_rational:
                continue
            handled_rational.add(t0)
            member = pencil_member(F, (Fraction(1), t0))
            if member.is_constant:
                continue
            r, sf = _member_count_and_flags(member)
            status = "special" if (r != generic_r or not sf) else "ordinary"
            key = QQ.min_poly_of(t0).primitive().to_string()
            groups.append(
                SpecialGroup("rational", label, 1, r, sf, status, key=key)
            )
        else:
            label = fac.to_string()
            candidate_labels.append(label)
            if deg > cap:
                groups.append(
                    SpecialGroup(
                        "algebraic",
                        label,
                        deg,
                        None,
                        None,
                        "unresolved",
                        f"parameter degree {deg} exceeds cap {cap}",
                        key=fac.primitive().to_string(),
                    )
                )
                complete_note = f"unresolved candidate {label}"
                failures.append(complete_note)
                continue
            try:
                r = count_at_minpoly(F.P, F.Q, fac, cap)
            except DegreeCapExceeded as exc:
                groups.append(
                    SpecialGroup(
                        "algebraic", label, deg, None, None, "unresolved", str(exc),
                        key=fac.primitive().to_string(),
                    )
                )
                failures.append(f"unresolved candidate {label}")
                continue
            K = NumberField(fac, gen=None)
            lift = lambda p: p.map_coeff(K.from_fraction)
            member_K = lift(F.P) + lift(F.Q).scale(K.gen_element())
            sf = is_squarefree(member_K)
            status = "special" if (r != generic_r or not sf) else "ordinary"
            groups.append(
                SpecialGroup(
                    "algebraic", label, deg, r, sf, status,
                    key=fac.primitive().to_string(),
                )
            )

    # coordinate point (0:1) sits outside the chart; (1:0) re-checked too
    for label, kind, r, sf in coord_entries:
        if r is None:
            groups.append(
                SpecialGroup(
                    kind, label, 1, None, None, "unresolved", "constant member",
                    key="(0:1)" if kind == "infinity" else "t",
                )
            )
            failures.append(f"constant member at {label}")
            continue
        if kind == "infinity":
            if r != generic_r or not sf:
                groups.append(
                    SpecialGroup(kind, label, 1, r, sf, "special", key="(0:1)")
                )
        else:
            t0 = Fraction(0)
            if t0 not in handled_rational and (r != generic_r or not sf):
                groups.append(
                    SpecialGroup(kind, label, 1, r, sf, "special", key="t")
                )

    confirmed = [g for g in groups if g.status == "special"]
    unresolved = [g for g in groups if g.status == "unresolved"]

    total_reducibility: Optional[int] = None
    if generic_r == 1 and complete and not unresolved:
        total_reducibility = sum(g.orbit * (g.r - 1) for g in confirmed)

    # rationality of a generic member (first sample) and of special members
    gen_member = pencil_member(F, (Fraction(1), ts[0]))
    try:
        verdict, genus = rationality_verdict(squarefree_part(gen_member), cap)
    except NotIrreducible:
        verdict, genus = RationalityVerdict.UNKNOWN, None
    generic_genus = ("genus", genus) if genus is not None else ("unknown", verdict)

    # pencil-wide certification: every member irreducible, reduced, rational
    cert = generic_r == 1 and complete and not unresolved and verdict == RationalityVerdict.RATIONAL
    if cert:
        for g in confirmed:
            if g.r != 1:
                cert = False
                failures.append(f"reducible member at {g.label} (r={g.r})")
            elif g.member_squarefree is False:
                cert = False
                failures.append(f"non-reduced member at {g.label}")
    else:
        if generic_r != 1:
            failures.append(f"generic member has {generic_r} components")
        if verdict != RationalityVerdict.RATIONAL:
            failures.append(f"generic member rationality: {verdict}")
    if cert:
        # spot-check rationality on a few more members, coordinate ones included
        spot = [pencil_member(F, (Fraction(1), t)) for t in ts[1:3]]
        for label, kind, r, sf in coord_entries:
            if r == 1 and sf:
                a, b = (Fraction(1), Fraction(0)) if kind == "rational" else (
                    Fraction(0),
                    Fraction(1),
                )
                spot.append(pencil_member(F, (a, b)))
        for member in spot:
            v, _ = rationality_verdict(squarefree_part(member), cap)
            if v != RationalityVerdict.RATIONAL:
                cert = False
                failures.append(f"member rationality spot check: {v}")
                break

    profile = PencilProfile(
        samples=samples,
        generic_r=generic_r,
        special_candidates=candidate_labels,
        groups=groups,
        generic_genus=generic_genus,
        generic_rationality=verdict,
        total_reducibility=total_reducibility,
        complete=complete,
        all_members_certified=cert,
        certification_failures=failures,
        n_samples=n_samples,
        seed=seed,
    )
    if share < 0.9:
        profile.certification_failures.append(
            f"generic count attained by only {share:.0%} of samples"
        )
    return profile


def reducible_locus_candidates(F: PencilMap, cap: int = 8) -> tuple[list[SpecialGroup], bool]:
    """Confirmed special parameters (r above generic) plus completeness flag."""
    profile = scan_pencil(F, n_samples=DEFAULT_CONFIG.n_samples, seed=DEFAULT_CONFIG.seed, cap=cap)
    out = [g for g in profile.groups if g.status in ("special", "unresolved")]
    return out, profile.complete and not any(g.status == "unresolved" for g in out)
