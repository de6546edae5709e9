"""Properness analysis: the non-proper value set, degrees, multiplicities.

Everything is driven by the two elimination resultants of (P - u, Q - v).
Because u and v only shift constant terms, specialization commutes with the
resultant, so symbolic computations done once answer every sampled value
exactly.  Escape witnesses are one-parameter rational families checked by
degree comparison; a non-proper set component is only reported after its
witness validates, and candidates that fail every recipe are surfaced as
unresolved rather than silently kept or dropped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .config import ToolkitConfig
from .core.errors import (
    DegreeCapExceeded,
    InfiniteBaseLocus,
    InstabilityDetected,
    ShearDisagreement,
    ToolkitError,
)
from .core.euclid import gcd_poly, resultant
from .core.factorize import factor_rational
from .core.multipoly import MultiPoly
from .core.numfield import QQ, AlgebraicPoint, join_with_algebraic, roots_over_field
from .pencil import PencilMap

VARS = ("x", "y")
XYUV = ("x", "y", "u", "v")
UV = ("u", "v")


def _uv_shift(F: PencilMap) -> tuple[MultiPoly, MultiPoly]:
    P4 = F.P.with_vars(XYUV)
    Q4 = F.Q.with_vars(XYUV)
    return P4 - MultiPoly.var("u", XYUV), Q4 - MultiPoly.var("v", XYUV)


def _drop_to_uv(p: MultiPoly) -> MultiPoly:
    return MultiPoly(
        UV, {(e[p.variables.index("u")], e[p.variables.index("v")]): c for e, c in p.terms.items()}
    )


def _strip_value_free_content(R: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly]:
    """Split R in (var, u, v) as C(var) * rest, C the (u,v)-free content.

    Fixed roots of the resultant are artifacts of leading coefficients, not
    moving fiber points, so they are removed before degrees are read off."""
    coeffs: dict[tuple[int, int], MultiPoly] = {}
    iv = R.variables.index(var)
    iu = R.variables.index("u")
    ivv = R.variables.index("v")
    for e, c in R.terms.items():
        key = (e[iu], e[ivv])
        mono = {(e[iv],): c}
        if key in coeffs:
            coeffs[key] = coeffs[key] + MultiPoly((var,), mono)
        else:
            coeffs[key] = MultiPoly((var,), mono)
    cont = None
    for c in coeffs.values():
        cont = c if cont is None else gcd_poly(cont, c)
        if cont.is_constant:
            break
    if cont is None or cont.is_constant:
        return MultiPoly.const((var,), Fraction(1)), R
    cont_full = cont.with_vars(R.variables)
    return cont, R.exact_div(cont_full)


@dataclass
class FiniteFibres:
    ok: bool
    certificate: str
    witness: Optional[tuple] = None  # (u, v) making the fiber infinite

    def to_json(self):
        return {
            "ok": self.ok,
            "certificate": self.certificate,
            "witness": [str(w) for w in self.witness] if self.witness else None,
        }


def _coefficient_system_zero(coeffs: list[MultiPoly]) -> Optional[tuple]:
    """A common zero (u0, v0) of bivariate polynomials, or None.

    Returns rational witnesses when available; algebraic solutions are
    reported with the u-coordinate's minimal polynomial as a string."""
    nonzero = [c for c in coeffs if not c.is_zero]
    if not nonzero:
        return (Fraction(0), Fraction(0))  # identically zero system
    for c in nonzero:
        if c.is_constant:
            return None
    g = nonzero[0]
    for c in nonzero[1:]:
        g = gcd_poly(g, c)
        if g.is_constant:
            break
    if not g.is_constant:
        # a whole curve of bad values; find a point on it
        for u0 in [Fraction(k) for k in (0, 1, -1, 2, -2, 3, -3)]:
            gv = g.subs({"u": MultiPoly.const(UV, u0)})
            gv = MultiPoly(("v",), {(e[1],): c for e, c in gv.terms.items()})
            if gv.is_zero:
                return (u0, Fraction(0))
            if gv.is_constant:
                continue
            for fac, _ in factor_rational(gv):
                if fac.degree_in("v") == 1:
                    v0 = -fac.terms.get((0,), Fraction(0)) / fac.terms[(1,)]
                    return (u0, v0)
        return (f"root of {g.to_string()}", "...")
    # zero-dimensional: candidates from pairwise elimination
    cands: set[Fraction] = set()
    c0 = nonzero[0]
    for cj in nonzero[1:]:
        r = resultant(c0, cj, "v")
        if r.is_zero:
            continue
        if r.is_constant:
            continue
        ru = MultiPoly(("t",), {(e[0],): c for e, c in r.terms.items()})
        for fac, _ in factor_rational(ru):
            if fac.degree_in("t") == 1:
                cands.add(-fac.terms.get((0,), Fraction(0)) / fac.terms[(1,)])
    for u0 in sorted(cands):
        sub = {"u": MultiPoly.const(UV, u0)}
        g = None
        ok = True
        for c in nonzero:
            cv = c.subs(sub)
            cv = MultiPoly(("v",), {(e[1],): k for e, k in cv.terms.items()})
            if cv.is_zero:
                continue
            if cv.is_constant:
                ok = False
                break
            g = cv if g is None else gcd_poly(g, cv)
            if g.is_constant:
                ok = False
                break
        if not ok:
            continue
        if g is None:
            return (u0, Fraction(0))
        for fac, _ in factor_rational(g):
            if fac.degree_in("v") == 1:
                v0 = -fac.terms.get((0,), Fraction(0)) / fac.terms[(1,)]
                return (u0, v0)
        return (u0, f"root of {g.to_string()}")
    return None


def finite_fibres_check(F: PencilMap) -> FiniteFibres:
    """True iff no value (u, v) makes P-u and Q-v share a common factor."""
    if not F.P.is_constant and not F.Q.is_constant:
        g = gcd_poly(F.P, F.Q)
        if not g.is_constant:
            # common factor through every value scaling; witness value (0,0)
            return FiniteFibres(False, f"P and Q share the factor {g.to_string()}", (Fraction(0), Fraction(0)))
    Pu, Qv = _uv_shift(F)
    for var, elim in (("x", "y"), ("y", "x")):
        R = resultant(Pu, Qv, elim)
        iv = R.variables.index(var)
        coeff_map: dict[int, MultiPoly] = {}
        for e, c in R.terms.items():
            k = e[iv]
            mono = MultiPoly(UV, {(e[R.variables.index("u")], e[R.variables.index("v")]): c})
            coeff_map[k] = coeff_map.get(k, MultiPoly.zero(UV)) + mono
        witness = _coefficient_system_zero(list(coeff_map.values()))
        if witness is not None:
            return FiniteFibres(
                False,
                f"the {elim}-eliminated resultant vanishes identically at a value",
                witness,
            )
    return FiniteFibres(True, "no common zero of either eliminated coefficient system")


@dataclass
class DegreeData:
    deg_geo: int
    drop_locus: list[str]
    samples: list

    def to_json(self):
        return {
            "deg_geo": self.deg_geo,
            "degree_drop_locus": list(self.drop_locus),
            "samples": [[str(a), str(b), d] for a, b, d in self.samples],
        }


def _resultant_pair(F: PencilMap):
    Pu, Qv = _uv_shift(F)
    Ry = resultant(Pu, Qv, "y")  # polynomial in (x, u, v)
    Rx = resultant(Pu, Qv, "x")  # polynomial in (y, u, v)
    return Ry, Rx


def geometric_degree(F: PencilMap, config: ToolkitConfig) -> DegreeData:
    """Solutions of F = value for generic values, by stable specialization."""
    Ry, Rx = _resultant_pair(F)
    _, Ry_moving = _strip_value_free_content(Ry, "x")
    _, Rx_moving = _strip_value_free_content(Rx, "y")
    dx = Ry_moving.degree_in("x")
    dy = Rx_moving.degree_in("y")
    if dx != dy:
        raise InstabilityDetected(
            f"x-eliminated degree {dy} disagrees with y-eliminated degree {dx}"
        )
    lead = Ry_moving.as_univar("x")[-1]
    lead_uv = _drop_to_uv(lead.with_vars(XYUV))
    drop = [] if lead_uv.is_constant else [f.to_string() for f, _ in factor_rational(lead_uv)]

    coeffs_x = [
        _drop_to_uv(c.with_vars(XYUV)) for c in Ry_moving.as_univar("x")
    ]
    rng = random.Random(config.seed + 101)
    samples = []
    while len(samples) < config.deg_geo_samples:
        u0 = Fraction(rng.randint(-400, 400), rng.randint(1, 12))
        v0 = Fraction(rng.randint(-400, 400), rng.randint(1, 12))
        if lead_uv.eval_scalar({"u": u0, "v": v0}) == 0:
            continue
        at = {"u": u0, "v": v0}
        deg_here = max(
            (k for k, c in enumerate(coeffs_x) if c.eval_scalar(at) != 0), default=-1
        )
        samples.append((u0, v0, deg_here))
    degs = {d for _, _, d in samples}
    if len(degs) != 1 or degs != {dx}:
        raise InstabilityDetected(f"degree samples disagree: {sorted(degs)} vs {dx}")
    return DegreeData(dx, drop, samples)


# -- shears ----------------------------------------------------------------


def _leading_form(p: MultiPoly) -> MultiPoly:
    d = p.total_degree()
    return MultiPoly(p.variables, {e: c for e, c in p.terms.items() if sum(e) == d})


def _shear_ok(F: PencilMap, s: Fraction) -> bool:
    for p in (F.P, F.Q):
        lf = _leading_form(p)
        if lf.eval_scalar({"x": s, "y": Fraction(1)}) == 0:
            return False
    return True


def _sheared_resultant(F: PencilMap, s: Fraction, u0: Fraction, v0: Fraction) -> MultiPoly:
    """Res_y of the sheared, value-shifted pair; leading x-coefficient is a
    nonzero constant, so the roots are exactly the sheared fiber abscissae
    with their intersection multiplicities."""
    shear = {
        "x": MultiPoly.var("x", VARS) + MultiPoly.var("y", VARS).scale(s),
        "y": MultiPoly.var("y", VARS),
    }
    f = F.P.subs(shear) - u0
    g = F.Q.subs(shear) - v0
    R = resultant(f, g, "y")
    return MultiPoly(("t",), {(e[0],): c for e, c in R.terms.items()})


def _shear_stream(config: ToolkitConfig):
    rng = random.Random(config.seed + 707)
    while True:
        yield Fraction(rng.randint(1, 97), rng.randint(1, 13))


def fiber_multiplicity_sum(F: PencilMap, u0: Fraction, v0: Fraction, config: ToolkitConfig) -> int:
    """Sum of local multiplicities over the finite fiber F = (u0, v0)."""
    sums = []
    stream = _shear_stream(config)
    tried = 0
    while len(sums) < 2 and tried < 40:
        s = next(stream)
        tried += 1
        if not _shear_ok(F, s):
            continue
        R = _sheared_resultant(F, s, u0, v0)
        if R.is_zero:
            raise ToolkitError("resultant vanished on a fiber; fibres not finite")
        sums.append(R.degree_in("t"))
    if len(sums) < 2:
        raise ShearDisagreement("could not find two admissible shears")
    if sums[0] != sums[1]:
        raise ShearDisagreement(f"shears disagree: {sums}")
    return sums[0]


@dataclass
class FiberPoint:
    point: AlgebraicPoint
    multiplicity: int


def solve_fiber(
    F: PencilMap, u0: Fraction, v0: Fraction, config: ToolkitConfig
) -> list[FiberPoint]:
    """The fiber F = (u0, v0) as exact points with local multiplicities."""
    stream = _shear_stream(config)
    for _ in range(40):
        s = next(stream)
        if _shear_ok(F, s):
            break
    else:
        raise ShearDisagreement("no admissible shear found")
    shear = {
        "x": MultiPoly.var("x", VARS) + MultiPoly.var("y", VARS).scale(s),
        "y": MultiPoly.var("y", VARS),
    }
    f = F.P.subs(shear) - u0
    g = F.Q.subs(shear) - v0
    R = _sheared_resultant(F, s, u0, v0)
    if R.is_zero:
        raise ToolkitError("resultant vanished on a fiber; fibres not finite")
    points: list[FiberPoint] = []
    for fac, mult_exp in factor_rational(R):
        deg = fac.degree_in("t")
        if deg > config.degree_cap:
            raise DegreeCapExceeded(
                f"fiber abscissa of degree {deg} exceeds cap {config.degree_cap}",
                (fac.to_string(),),
            )
        for K, fmap, x_elt, _alg in roots_over_field(
            MultiPoly(("w",), {(e[0],): c for e, c in fac.terms.items()}), QQ, config.degree_cap
        ):
            one = K.one() if not isinstance(K, type(QQ)) else Fraction(1)
            lift = (lambda p: p.map_coeff(K.from_fraction)) if K is not QQ else (lambda p: p)
            xv = MultiPoly.const(VARS, x_elt)
            yv = MultiPoly.var("y", VARS, one=one)
            fy = lift(f).subs({"x": xv, "y": yv})
            gy = lift(g).subs({"x": xv, "y": yv})
            h = gcd_poly(fy, gy)
            h1 = MultiPoly(("w",), {(e[1],): c for e, c in h.terms.items()})
            for K2, fmap2, y_elt, _a in roots_over_field(h1, K, config.degree_cap):
                x2 = fmap2(x_elt)
                # undo the shear: original x = sheared_x + s*y
                x_orig = x2 + (y_elt * s if K2 is not QQ else Fraction(s) * y_elt)
                pt = AlgebraicPoint(K2, x_orig, y_elt)
                mult = local_multiplicity(F, pt, (u0, v0), config)
                points.append(FiberPoint(pt, mult))
    points.sort(key=lambda fp: fp.point.sort_key())
    return points


def local_multiplicity(
    F: PencilMap, w: AlgebraicPoint, value: tuple[Fraction, Fraction], config: ToolkitConfig
) -> int:
    """Intersection multiplicity of P-u0 and Q-v0 at the fiber point w."""
    u0, v0 = value
    K = w.field
    orders = []
    stream = _shear_stream(config)
    tried = 0
    while len(orders) < 2 and tried < 60:
        s = next(stream)
        tried += 1
        if not _shear_ok(F, s):
            continue
        R = _sheared_resultant(F, s, u0, v0)
        x_sheared = (
            Fraction(w.x) - s * Fraction(w.y)
            if K is QQ or getattr(K, "is_rational_field", False)
            else w.x - w.y * s
        )
        total = 0
        for fac, mult_exp in factor_rational(R):
            if K is QQ or getattr(K, "is_rational_field", False):
                val = fac.eval_scalar({"t": x_sheared})
                vanish = val == 0
            else:
                vanish = not bool(K.eval_qpoly(fac, x_sheared))
            if vanish:
                total += mult_exp
        orders.append(total)
    if len(orders) < 2:
        raise ShearDisagreement("could not find two admissible shears")
    if orders[0] != orders[1]:
        raise ShearDisagreement(f"local multiplicity shears disagree: {orders}")
    if orders[0] <= 0:
        raise ToolkitError("point is not on the fiber")
    return orders[0]


# -- non-proper value set ---------------------------------------------------


@dataclass
class NonProperComponent:
    poly: MultiPoly  # irreducible defining polynomial in (u, v)
    is_line_through_origin: bool
    witness: str
    parametrization_degrees: Optional[tuple[int, int]] = None

    def to_json(self):
        return {
            "poly": self.poly.to_string(),
            "is_line_through_origin": self.is_line_through_origin,
            "witness": self.witness,
            "parametrization_degrees": list(self.parametrization_degrees)
            if self.parametrization_degrees
            else None,
        }


@dataclass
class NonProperSet:
    components: list[NonProperComponent]
    unresolved: list[str]
    rejected: list[str] = dc_field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.components

    def member_polys(self) -> list[str]:
        return sorted(c.poly.to_string() for c in self.components)

    def contains_value(self, u0: Fraction, v0: Fraction) -> bool:
        return any(
            c.poly.eval_scalar({"u": u0, "v": v0}) == 0 for c in self.components
        )

    def contains_origin(self) -> bool:
        return self.contains_value(Fraction(0), Fraction(0))

    def to_json(self):
        return {
            "components": [c.to_json() for c in self.components],
            "unresolved": list(self.unresolved),
            "rejected": list(self.rejected),
            "empty": self.empty,
        }


def _linear_solve_family(poly: MultiPoly, solve_var: str, other: str):
    """Solve q1*X + q0 = value for X when poly is linear in solve_var.

    Returns (q1, q0) as polynomials in ``other`` or None."""
    if poly.degree_in(solve_var) != 1:
        return None
    coeffs = poly.as_univar(solve_var)
    q0 = coeffs[0]
    q1 = coeffs[1]
    return q1, q0


def _rational_limit(num: MultiPoly, den: MultiPoly, tvar: str):
    """Limit of num/den as tvar goes to infinity, or None if unbounded.

    num, den are polynomials in (tvar, w); the limit is a rational function
    of w given as (numerator, denominator) coefficient polynomials."""
    dn, dd = num.degree_in(tvar), den.degree_in(tvar)
    if dn > dd:
        return None
    rest = tuple(v for v in num.variables if v != tvar)
    top_num = num.as_univar(tvar)[dd] if dn == dd else MultiPoly(rest, {})
    top_den = den.as_univar(tvar)[dd]
    return top_num, top_den


def _compose_rational(F_poly: MultiPoly, x_num, x_den, y_num, y_den, variables):
    """F_poly(x_num/x_den, y_num/y_den) cleared to (numerator, denominator)."""
    dx = max(F_poly.degree_in("x"), 0)
    dy = max(F_poly.degree_in("y"), 0)
    num = MultiPoly.zero(variables)
    for (ex, ey), c in F_poly.terms.items():
        term = MultiPoly.const(variables, c)
        term = term * x_num ** ex * x_den ** (dx - ex)
        term = term * y_num ** ey * y_den ** (dy - ey)
        num = num + term
    den = x_den ** dx * y_den ** dy
    return num, den


def _try_escape_witness(F: PencilMap, cand: MultiPoly) -> Optional[str]:
    """Build and verify a rational escape family converging into cand = 0.

    Recipes fix one coordinate of the value exactly (solving a component of
    F that is linear in x or y) and check by exact degree comparison that
    the other coordinate's limit lands identically on the candidate curve.
    The family is unbounded by construction: one source coordinate is the
    parameter itself."""
    tw = ("s", "w")  # s = family parameter to infinity, w = moving target
    s = MultiPoly.var("s", tw)
    w = MultiPoly.var("w", tw)
    one = MultiPoly.const(tw, Fraction(1))

    for fixed_name, fixed_poly, free_poly, value_var in (
        ("Q", F.Q, F.P, "v"),
        ("P", F.P, F.Q, "u"),
    ):
        for solve_var, param_var in (("x", "y"), ("y", "x")):
            lin = _linear_solve_family(fixed_poly, solve_var, param_var)
            if lin is None:
                continue
            q1, q0 = lin
            # family: param_var = s, solve_var = (w - q0(s)) / q1(s)
            q0s = q0.subs({param_var: s})
            q1s = q1.subs({param_var: s})
            if q1s.is_zero:
                continue
            sol_num = w - q0s
            sol_den = q1s
            if solve_var == "x":
                xn, xd, yn, yd = sol_num, sol_den, s, one
            else:
                xn, xd, yn, yd = s, one, sol_num, sol_den
            num, den = _compose_rational(free_poly, xn, xd, yn, yd, tw)
            lim = _rational_limit(num, den, "s")
            if lim is None:
                continue
            lim_num = lim[0].with_vars(tw)
            lim_den = lim[1].with_vars(tw)
            if value_var == "v":
                # value limit is (phi(w), w); candidate must vanish on it
                cand_num, _ = _compose_rational(
                    _uvpoly_as_xy(cand), lim_num, lim_den, w, one, tw
                )
            else:
                cand_num, _ = _compose_rational(
                    _uvpoly_as_xy(cand), w, one, lim_num, lim_den, tw
                )
            if not cand_num.is_zero:
                continue
            return (
                f"{param_var} = s, {solve_var} = (w - ({q0.to_string()}))/({q1.to_string()})"
                f" with s to infinity sweeps the component while {fixed_name} = w exactly"
            )
    return None


def _uvpoly_as_xy(cand: MultiPoly) -> MultiPoly:
    """Rename a (u, v) polynomial to the composer's (x, y) slots."""
    return MultiPoly(("x", "y"), dict(cand.terms))


def _rational_point_on(cand: MultiPoly) -> Optional[tuple[Fraction, Fraction]]:
    for u0 in [Fraction(k, d) for d in (1, 2, 3) for k in range(-6, 7)]:
        sub = cand.subs({"u": MultiPoly.const(UV, u0)})
        pv = MultiPoly(("t",), {(e[1],): c for e, c in sub.terms.items()})
        if pv.is_zero:
            return (u0, Fraction(1))
        if pv.is_constant:
            continue
        for fac, _ in factor_rational(pv):
            if fac.degree_in("t") == 1:
                v0 = -fac.terms.get((0,), Fraction(0)) / fac.terms[(1,)]
                return (u0, v0)
    return None


def nonproper_set(F: PencilMap, config: ToolkitConfig, deg_geo: Optional[int] = None) -> NonProperSet:
    """The Jelonek set: validated components of the non-proper value curve."""
    Ry, Rx = _resultant_pair(F)
    candidates: list[MultiPoly] = []
    seen = set()
    for R, var in ((Ry, "x"), (Rx, "y")):
        _, moving = _strip_value_free_content(R, var)
        if moving.degree_in(var) <= 0:
            continue
        lead = moving.as_univar(var)[-1]
        lead_uv = _drop_to_uv(lead.with_vars(XYUV))
        if lead_uv.is_constant:
            continue
        for fac, _ in factor_rational(lead_uv):
            key = fac.to_string()
            if key not in seen:
                seen.add(key)
                candidates.append(fac)
    candidates.sort(key=lambda p: (p.total_degree(), p.to_string()))

    if deg_geo is None:
        deg_geo = geometric_degree(F, config).deg_geo

    comps: list[NonProperComponent] = []
    unresolved: list[str] = []
    rejected: list[str] = []
    for cand in candidates:
        witness = _try_escape_witness(F, cand)
        if witness is not None:
            line = (
                cand.total_degree() == 1
                and cand.terms.get((0, 0), Fraction(0)) == 0
            )
            comps.append(NonProperComponent(cand, line, witness))
            continue
        # try to reject: a generic rational point on the candidate whose
        # fiber is full cannot lie in the non-proper set
        pt = _rational_point_on(cand)
        if pt is not None:
            try:
                total = fiber_multiplicity_sum(F, pt[0], pt[1], config)
            except ToolkitError:
                total = None
            if total is not None and total == deg_geo:
                rejected.append(cand.to_string())
                continue
        unresolved.append(cand.to_string())
    return NonProperSet(comps, unresolved, rejected)


def check_fiber_sum(
    F: PencilMap,
    value: tuple[Fraction, Fraction],
    afs: NonProperSet,
    deg_geo: int,
    config: ToolkitConfig,
    detail: str = "auto",
) -> dict:
    """Fiber multiplicity sum at one value, compared against the geometric
    degree and membership in the non-proper set.

    ``detail``: "points" solves the fiber exactly (errors past the degree
    cap), "factors" only sums multiplicities factor-wise, "auto" falls back
    from points to factors on a cap error."""
    u0, v0 = Fraction(value[0]), Fraction(value[1])
    points = None
    if detail == "points":
        points = solve_fiber(F, u0, v0, config)
        total = sum(fp.multiplicity for fp in points)
    elif detail == "factors":
        total = fiber_multiplicity_sum(F, u0, v0, config)
    else:
        try:
            points = solve_fiber(F, u0, v0, config)
            total = sum(fp.multiplicity for fp in points)
        except DegreeCapExceeded:
            total = fiber_multiplicity_sum(F, u0, v0, config)
    on_af = afs.contains_value(u0, v0)
    consistent = (total == deg_geo) == (not on_af)
    return {
        "value": [str(u0), str(v0)],
        "sum": total,
        "deg_geo": deg_geo,
        "in_nonproper_set": on_af,
        "consistent": consistent,
        "points": [
            {"point": fp.point.to_json(), "multiplicity": fp.multiplicity}
            for fp in points
        ]
        if points is not None
        else None,
    }


# -- predicate suite ---------------------------------------------------------


@dataclass
class PredicateResult:
    keller: bool
    jacobian: MultiPoly
    regular_value_at_origin: str  # "regular" | "not_attained" | "singular_fiber"
    invertible: bool
    origin_fiber: list

    def to_json(self):
        return {
            "keller": self.keller,
            "jacobian": self.jacobian.to_string(),
            "regular_value_at_origin": self.regular_value_at_origin,
            "invertible": self.invertible,
            "origin_fiber": [
                {"point": fp.point.to_json(), "multiplicity": fp.multiplicity}
                for fp in self.origin_fiber
            ],
        }


def predicates(F: PencilMap, deg_geo: int, config: ToolkitConfig) -> PredicateResult:
    jac = F.jacobian()
    keller = jac.is_constant and not jac.is_zero
    fiber = solve_fiber(F, Fraction(0), Fraction(0), config)
    if not fiber:
        regular = "not_attained"
    else:
        singular = False
        for fp in fiber:
            K = fp.point.field
            if K is QQ:
                val = jac.eval_scalar({"x": fp.point.x, "y": fp.point.y})
                vanish = val == 0
            else:
                lift = jac.map_coeff(K.from_fraction)
                val = lift.eval_scalar({"x": fp.point.x, "y": fp.point.y})
                vanish = not bool(val)
            if vanish:
                singular = True
                break
        regular = "singular_fiber" if singular else "regular"
    invertible = deg_geo == 1
    return PredicateResult(keller, jac, regular, invertible, fiber)


@dataclass
class RatioVerdict:
    component: str
    matched: bool
    deg_phi: Optional[int]
    deg_psi: Optional[int]
    ratio_ok: Optional[bool]
    is_line_through_origin: bool

    def to_json(self):
        return {
            "component": self.component,
            "matched": self.matched,
            "deg_phi": self.deg_phi,
            "deg_psi": self.deg_psi,
            "ratio_ok": self.ratio_ok,
            "is_line_through_origin": self.is_line_through_origin,
        }


def theorem4_ratio_check(
    F: PencilMap, afs: NonProperSet, matches: dict[str, tuple[int, int]]
) -> list[RatioVerdict]:
    """Degree-ratio constraints on non-proper components for Keller maps.

    ``matches`` maps a component's defining polynomial string to the map
    degrees of the coordinate functions restricted to the matched boundary
    component of the resolution."""
    out = []
    for comp in afs.components:
        key = comp.poly.to_string()
        m = matches.get(key)
        if m is None:
            out.append(
                RatioVerdict(key, False, None, None, None, comp.is_line_through_origin)
            )
            continue
        dphi, dpsi = m
        ratio_ok = dphi * F.degQ == dpsi * F.degP
        out.append(
            RatioVerdict(key, True, dphi, dpsi, ratio_ok, comp.is_line_through_origin)
        )
    return out
