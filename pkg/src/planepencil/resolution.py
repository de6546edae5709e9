"""Blow-up resolution of the pencil map (P : Q) on the projective plane.

The working surface is a collection of affine charts, each with local
coordinates (u, v) over an embedded number field.  Every chart carries the
two pencil sections (degree-matched homogenizations, common exceptional
factors divided out), the local equations of the boundary components that
meet the chart, and the coordinate functions p = P and q = Q as tracked
rational functions: a numerator coprime to every boundary equation plus a
ledger of exact vanishing orders along each boundary component.

Indeterminacy points are blown up with the two standard substitutions
(u, v) -> (c1 + u, c2 + u*v) and (c1 + u*v, c2 + v); new indeterminacies
are found only on the fresh exceptional line, via gcds over the chart
field, with coordinates possibly in a cap-bounded extension.  Restrictions
to a boundary component are decided exactly: the component's order in the
ledger gives zero/pole behaviour, the order-zero case reduces to a
proportionality test of polynomials on the component.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .config import ToolkitConfig
from .core.errors import (
    BlowupBudgetExceeded,
    DegreeCapExceeded,
    InfiniteBaseLocus,
    NotIndeterminate,
    ToolkitError,
)
from .core.euclid import gcd_poly, resultant
from .core.factorize import factor_rational
from .core.multipoly import MultiPoly
from .core.numfield import (
    QQ,
    AlgebraicPoint,
    FieldMap,
    NFElement,
    identity_map,
    roots_over_field,
)
from .pencil import PencilMap

CV = ("u", "v")  # local chart coordinates, every chart


def _rename_xy(p: MultiPoly) -> MultiPoly:
    return MultiPoly(CV, dict(p.terms))


def _inf_chart_poly(p: MultiPoly, total: int, chart: str) -> MultiPoly:
    """Homogenize p to degree ``total`` and restrict to an infinity chart.

    chart "inf_x": (1 : u : v), x = 1/v, y = u/v;
    chart "inf_y": (u : 1 : v), x = u/v, y = 1/v.
    """
    table: dict[tuple[int, int], object] = {}
    for (i, j), c in p.terms.items():
        k = total - i - j
        expo = (j, k) if chart == "inf_x" else (i, k)
        table[expo] = table.get(expo, Fraction(0)) + c
    return MultiPoly(CV, {e: c for e, c in table.items() if c})


def _ord_in(p: MultiPoly, var: str) -> int:
    """Vanishing order along {var = 0} (min exponent)."""
    if p.is_zero:
        raise ToolkitError("order of the zero polynomial")
    i = p.variables.index(var)
    return min(e[i] for e in p.terms)


def _strip_power(p: MultiPoly, var: str, k: int) -> MultiPoly:
    if k == 0:
        return p
    i = p.variables.index(var)
    return MultiPoly(
        p.variables, {e[:i] + (e[i] - k,) + e[i + 1 :]: c for e, c in p.terms.items()}
    )


def _restrict(p: MultiPoly, var: str) -> MultiPoly:
    """Set ``var`` = 0, returning a univariate polynomial in the other
    coordinate (variable name kept)."""
    other = "v" if var == "u" else "u"
    i = p.variables.index(var)
    io = p.variables.index(other)
    table = {}
    for e, c in p.terms.items():
        if e[i] == 0:
            table[(e[io],)] = c
    return MultiPoly((other,), table)


@dataclass
class Chart:
    id: str
    field: object
    s1: MultiPoly
    s2: MultiPoly
    boundary: dict  # comp_id -> local equation over field
    p_num: MultiPoly
    p_ord: dict  # comp_id -> int (exact order of p along the component)
    q_num: MultiPoly
    q_ord: dict
    gen: int
    parent: Optional[str] = None
    center: Optional[tuple] = None
    divided_power: int = 0
    kind: str = "root"


@dataclass
class Restriction:
    """A coordinate function restricted to a boundary component."""

    kind: str  # "zero" | "infinity" | "finite" | "nonconstant"
    value: object = None  # field element for "finite"
    num: Optional[MultiPoly] = None
    den: Optional[MultiPoly] = None
    map_degree: int = 0

    def to_json(self, field):
        data = {"kind": self.kind, "map_degree": self.map_degree}
        if self.kind == "finite":
            data["value"] = (
                str(Fraction(self.value)) if field is QQ else field.elt_str(self.value)
            )
        return data


@dataclass
class Component:
    id: str
    over: str  # "infinity" or a base point id
    origin: str  # "line_at_infinity" or "exceptional"
    chart_id: str
    local_var: str  # coordinate cutting the component in chart_id
    horizontal: bool
    lam_key: Optional[str]  # canonical pencil-parameter key when constant
    lam_label: Optional[str]
    p_rest: Optional[Restriction] = None
    q_rest: Optional[Restriction] = None
    type_label: str = ""
    dicritical: bool = False
    image_polys: list = dc_field(default_factory=list)  # (u,v) component strings

    def to_json(self, field):
        return {
            "id": self.id,
            "over": self.over,
            "origin": self.origin,
            "horizontal": self.horizontal,
            "g_value": self.lam_label,
            "p": self.p_rest.to_json(field) if self.p_rest else None,
            "q": self.q_rest.to_json(field) if self.q_rest else None,
            "type": self.type_label,
            "dicritical": self.dicritical,
            "image": sorted(self.image_polys),
        }


@dataclass
class BasePoints:
    affine: list  # (id, AlgebraicPoint)
    at_infinity: list  # (chart_name, AlgebraicPoint)

    def to_json(self):
        return {
            "affine": [[bid, pt.to_json()] for bid, pt in self.affine],
            "at_infinity": [[ch, pt.to_json()] for ch, pt in self.at_infinity],
        }


def base_points(F: PencilMap, cap: int = 8) -> BasePoints:
    """Affine base points (common zeros of P, Q) and the indeterminacy
    points of the degree-matched pencil on the line at infinity."""
    g = gcd_poly(F.P, F.Q)
    if not g.is_constant:
        raise InfiniteBaseLocus(f"P and Q share the factor {g.to_string()}")

    affine = []
    if F.P.degree_in("y") == 0 and F.Q.degree_in("y") == 0:
        candidates = []  # coprime univariate pair: no common zeros
    else:
        R = resultant(F.P, F.Q, "y")
        R = MultiPoly(("w",), {(e[0],): c for e, c in R.terms.items()})
        candidates = [] if R.is_constant else factor_rational(R)
    for fac, _m in candidates:
        deg = fac.degree_in("w")
        if deg > cap:
            named = MultiPoly(("t",), dict(fac.terms)).primitive().to_string()
            raise DegreeCapExceeded(
                f"affine base point of degree {deg} exceeds cap {cap}", (named,)
            )
        for K, fmap, x0, _alg in roots_over_field(fac, QQ, cap):
            one = Fraction(1) if K is QQ else K.one()
            lift = (lambda p: p) if K is QQ else (lambda p: p.map_coeff(K.from_fraction))
            xv = MultiPoly.const(("x", "y"), x0)
            yv = MultiPoly.var("y", ("x", "y"), one=one)
            py = lift(F.P).subs({"x": xv, "y": yv})
            qy = lift(F.Q).subs({"x": xv, "y": yv})
            h = gcd_poly(py, qy)
            if h.degree_in("y") < 1:
                continue  # spurious resultant root
            h1 = MultiPoly(("w",), {(e[1],): c for e, c in h.terms.items()})
            for K2, fmap2, y0, _a in roots_over_field(h1, K, cap):
                affine.append(AlgebraicPoint(K2, fmap2(x0), y0))
    affine.sort(key=lambda pt: pt.sort_key())
    affine_ids = [(f"b{i}", pt) for i, pt in enumerate(affine)]

    d = max(F.degP, F.degQ)
    lf_p = _leading_form_padded(F.P, d)
    lf_q = _leading_form_padded(F.Q, d)
    at_inf = []
    if lf_p.is_zero and lf_q.is_zero:
        raise ToolkitError("both leading forms vanish")  # pragma: no cover
    if lf_p.is_zero or lf_q.is_zero:
        form = lf_q if lf_p.is_zero else lf_p
    else:
        form = gcd_poly(lf_p, lf_q)
    # roots with X != 0 live in chart inf_x with coordinate u = Y/X
    dehom = MultiPoly(("w",), _dehom_table(form))
    if not form.is_constant:
        if not dehom.is_constant and not dehom.is_zero:
            for fac, _m in factor_rational(dehom):
                deg = fac.degree_in("w")
                if deg > cap:
                    named = MultiPoly(("t",), dict(fac.terms)).primitive().to_string()
                    raise DegreeCapExceeded(
                        f"infinity base point of degree {deg} exceeds cap {cap}", (named,)
                    )
                for K, fmap, u0, _alg in roots_over_field(fac, QQ, cap):
                    zero = Fraction(0) if K is QQ else K.zero()
                    at_inf.append(("inf_x", AlgebraicPoint(K, u0, zero)))
        # the point (0:1:0): both forms must vanish there (no X^0 Y^d term)
        ey = form.variables.index("y")
        ex = form.variables.index("x")
        has_yd = any(e[ex] == 0 for e in form.terms)
        if not has_yd:
            at_inf.append(("inf_y", AlgebraicPoint(QQ, Fraction(0), Fraction(0))))
    at_inf.sort(key=lambda it: (it[0], it[1].sort_key()))
    return BasePoints(affine_ids, at_inf)


def _dehom_table(form: MultiPoly) -> dict:
    # form(1, w): substitute x = 1 in a binary form over (x, y)
    table: dict[tuple[int], object] = {}
    iy = form.variables.index("y")
    for e, c in form.terms.items():
        key = (e[iy],)
        table[key] = table.get(key, Fraction(0)) + c
    return {e: c for e, c in table.items() if c}


def _leading_form_padded(p: MultiPoly, total: int) -> MultiPoly:
    """Leading form of the degree-``total`` homogenization (zero if padded)."""
    if p.total_degree() < total:
        return MultiPoly.zero(p.variables)
    return MultiPoly(
        p.variables, {e: c for e, c in p.terms.items() if sum(e) == total}
    )


@dataclass
class ResolutionTree:
    components: list
    charts: dict
    base: BasePoints
    edges: list
    blowups: list  # (chart_id, point json, new ids)
    h_infinity: int
    h_per_base: dict
    m_total: int
    lam_groups: dict  # lam_key -> {"label", "orbit", "count"}
    situation: Optional[str]
    budget_used: int

    @property
    def h_G(self) -> int:
        return self.h_infinity + sum(self.h_per_base.values())

    def component_by_id(self, cid):
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def dicritical_components(self):
        return [c for c in self.components if c.dicritical]

    def nonproper_polys(self) -> list[str]:
        out = set()
        for c in self.dicritical_components():
            out.update(c.image_polys)
        return sorted(out)

    def to_json(self):
        return {
            "base_points": self.base.to_json(),
            "components": [
                c.to_json(self.charts[c.chart_id].field) for c in self.components
            ],
            "edges": [list(e) for e in self.edges],
            "h_infinity": self.h_infinity,
            "h_per_base": dict(sorted(self.h_per_base.items())),
            "h_G": self.h_G,
            "m": self.m_total,
            "lambda_groups": {
                k: dict(v) for k, v in sorted(self.lam_groups.items())
            },
            "situation": self.situation,
            "blowups": self.blowups,
            "nonproper_from_dicriticals": self.nonproper_polys(),
        }


class Resolver:
    """Runs the blow-up loop for one map."""

    def __init__(self, F: PencilMap, config: ToolkitConfig, order: str = "default"):
        self.F = F
        self.config = config
        self.order = order
        self.charts: dict[str, Chart] = {}
        self.components: list[Component] = []
        self.edges: set[frozenset] = set()
        self.worklist: list = []
        self.blowups: list = []
        self.exc_counter = 0
        self.budget_used = 0

    # -- setup ---------------------------------------------------------

    def _init_charts(self):
        F = self.F
        d = max(F.degP, F.degQ)
        self.charts["affine"] = Chart(
            id="affine",
            field=QQ,
            s1=_rename_xy(F.P),
            s2=_rename_xy(F.Q),
            boundary={},
            p_num=_rename_xy(F.P),
            p_ord={},
            q_num=_rename_xy(F.Q),
            q_ord={},
            gen=0,
        )
        for chart in ("inf_x", "inf_y"):
            v = MultiPoly.var("v", CV)
            self.charts[chart] = Chart(
                id=chart,
                field=QQ,
                s1=_inf_chart_poly(F.P, d, chart),
                s2=_inf_chart_poly(F.Q, d, chart),
                boundary={"Linf": v},
                p_num=_inf_chart_poly(F.P, F.degP, chart),
                p_ord={"Linf": -F.degP},
                q_num=_inf_chart_poly(F.Q, F.degQ, chart),
                q_ord={"Linf": -F.degQ},
                gen=0,
            )

    # -- helpers ---------------------------------------------------------

    def _point_key(self, item):
        gen, chart_id, field, fmap, x0, y0, over = item
        deg = 1 if field is QQ else field.degree
        gi = -1 if field is QQ or field.gen is None else field.gen.root_index
        xs = str(Fraction(x0)) if field is QQ else field.elt_str(x0)
        ys = str(Fraction(y0)) if field is QQ else field.elt_str(y0)
        return (gen, chart_id, deg, field.minpoly_string() if field is not QQ else "t", gi, xs, ys)

    def _next_item(self):
        self.worklist.sort(key=self._point_key)
        if self.order == "reverse":
            return self.worklist.pop()
        return self.worklist.pop(0)

    def _mu_to_lam(self, field, r1: MultiPoly, r2: MultiPoly):
        """Pencil-parameter key/label for a constant ratio (r1 : r2).

        The value (mu0 : mu1) of (P : Q) on the component corresponds to the
        pencil member mu1*P - mu0*Q, i.e. chart parameter t = -mu0/mu1."""
        if r2.is_zero:
            return "(0:1)", "(0:1)"
        if r1.is_zero:
            t0 = Fraction(0)
        else:
            tau = -(r1.lead_coeff() / r2.lead_coeff())
            if field is QQ:
                t0 = Fraction(tau)
            elif field.elt_is_rational(tau):
                t0 = field.elt_as_fraction(tau)
            else:
                key = field.min_poly_of(tau).primitive().to_string()
                return key, key
        key = QQ.min_poly_of(t0).primitive().to_string()
        return key, f"(1:{t0})"

    def _classify_sections_on_exceptional(self, field, s1: MultiPoly, s2: MultiPoly, var: str):
        r1 = _restrict(s1, var)
        r2 = _restrict(s2, var)
        if r1.is_zero and r2.is_zero:
            raise AssertionError("sections both vanish on the component")
        if r1.is_zero or r2.is_zero:
            key, label = self._mu_to_lam(field, r1, r2)
            return False, key, label, r1, r2
        lc1 = r1.lead_coeff()
        lc2 = r2.lead_coeff()
        if r1.scale(lc2) == r2.scale(lc1):
            key, label = self._mu_to_lam(field, r1, r2)
            return False, key, label, r1, r2
        return True, None, None, r1, r2

    # -- the blow-up ------------------------------------------------------

    def _blow_up(self, item):
        gen, chart_id, field, fmap, x0, y0, over = item
        chart = self.charts[chart_id]
        lift = fmap.apply_poly
        s1 = lift(chart.s1)
        s2 = lift(chart.s2)
        zero_test = (lambda c: Fraction(c) == 0) if field is QQ else (lambda c: not c)
        at = {"u": x0, "v": y0}
        if not (zero_test(s1.eval_scalar(at)) and zero_test(s2.eval_scalar(at))):
            raise NotIndeterminate(f"center in chart {chart_id} is not an indeterminacy point")
        self.budget_used += 1
        if self.budget_used > self.config.blowup_budget:
            raise BlowupBudgetExceeded(
                f"resolution exceeded {self.config.blowup_budget} blow-ups"
            )
        self.exc_counter += 1
        eid = f"E{self.exc_counter}"
        one = Fraction(1) if field is QQ else field.one()
        u = MultiPoly.var("u", CV, one=one)
        v = MultiPoly.var("v", CV, one=one)
        cx = MultiPoly.const(CV, x0)
        cy = MultiPoly.const(CV, y0)
        subA = {"u": cx + u, "v": cy + u * v}
        subB = {"u": cx + u * v, "v": cy + v}

        boundary = {cid: lift(w) for cid, w in chart.boundary.items()}
        p_num = lift(chart.p_num)
        q_num = lift(chart.q_num)

        new_charts = {}
        exc_var = {"A": "u", "B": "v"}
        for kind, sub in (("A", subA), ("B", subB)):
            w_exc = exc_var[kind]
            t1 = s1.subs(sub)
            t2 = s2.subs(sub)
            o1, o2 = _ord_in(t1, w_exc), _ord_in(t2, w_exc)
            mdiv = min(o1, o2)
            t1 = _strip_power(t1, w_exc, mdiv)
            t2 = _strip_power(t2, w_exc, mdiv)

            new_boundary = {}
            a_j = {}
            unit_factor = {}
            for cid, w in boundary.items():
                wt = w.subs(sub)
                a = _ord_in(wt, w_exc)
                a_j[cid] = a
                wt = _strip_power(wt, w_exc, a)
                if wt.is_constant:
                    unit_factor[cid] = wt.constant_value()
                else:
                    new_boundary[cid] = wt
            exc_poly = MultiPoly.var(w_exc, CV, one=one)
            new_boundary[eid] = exc_poly

            def transform_track(num, ords):
                tn = num.subs(sub)
                n0 = _ord_in(tn, w_exc)
                tn = _strip_power(tn, w_exc, n0)
                new_ords = {}
                e_ord = n0
                for cid, o in ords.items():
                    e_ord += a_j.get(cid, 0) * o
                    if cid in new_boundary:
                        new_ords[cid] = o
                    elif cid in unit_factor:
                        tn = tn.scale(unit_factor[cid] ** o)
                new_ords[eid] = e_ord
                return tn, new_ords

            pn, po = transform_track(p_num, chart.p_ord)
            qn, qo = transform_track(q_num, chart.q_ord)

            cid_new = f"{chart_id}/{self.exc_counter}{kind}"
            new_charts[kind] = Chart(
                id=cid_new,
                field=field,
                s1=t1,
                s2=t2,
                boundary=new_boundary,
                p_num=pn,
                p_ord=po,
                q_num=qn,
                q_ord=qo,
                gen=gen + 1,
                parent=chart_id,
                center=(x0, y0),
                divided_power=mdiv,
                kind=kind,
            )
        chartA = new_charts["A"]
        chartB = new_charts["B"]
        self.charts[chartA.id] = chartA
        self.charts[chartB.id] = chartB

        # component record for the new exceptional curve
        horizontal, key, label, r1, r2 = self._classify_sections_on_exceptional(
            field, chartA.s1, chartA.s2, "u"
        )
        comp = Component(
            id=eid,
            over=over,
            origin="exceptional",
            chart_id=chartA.id,
            local_var="u",
            horizontal=horizontal,
            lam_key=key,
            lam_label=label if label else None,
        )
        self.components.append(comp)

        # adjacency updates
        through = [cid for cid, w in boundary.items() if zero_test(w.eval_scalar(at))]
        for cid in through:
            self.edges.add(frozenset((eid, cid)))
        for i in range(len(through)):
            for j in range(i + 1, len(through)):
                a, b = through[i], through[j]
                pair = frozenset((a, b))
                if pair not in self.edges:
                    continue
                still = False
                if a in chartA.boundary and b in chartA.boundary:
                    ga = _restrict(chartA.boundary[a], "u")
                    gb = _restrict(chartA.boundary[b], "u")
                    if not ga.is_zero and not gb.is_zero:
                        g = gcd_poly(ga, gb)
                        if g.degree_in("v") >= 1:
                            still = True
                if not still and a in chartB.boundary and b in chartB.boundary:
                    za = chartB.boundary[a].eval_scalar({"u": Fraction(0) if field is QQ else field.zero(), "v": Fraction(0) if field is QQ else field.zero()})
                    zb = chartB.boundary[b].eval_scalar({"u": Fraction(0) if field is QQ else field.zero(), "v": Fraction(0) if field is QQ else field.zero()})
                    if zero_test(za) and zero_test(zb):
                        still = True
                if not still:
                    self.edges.discard(pair)

        # new indeterminacy points on the exceptional line
        g1 = _restrict(chartA.s1, "u")
        g2 = _restrict(chartA.s2, "u")
        g = gcd_poly(g1, g2)
        if g.degree_in("v") >= 1:
            for K2, fmap2, v0, _alg in roots_over_field(g, field, self.config.degree_cap):
                x_new = K2.zero() if K2 is not QQ else Fraction(0)
                self.worklist.append(
                    (
                        gen + 1,
                        chartA.id,
                        K2,
                        fmap2,
                        x_new,
                        v0,
                        over,
                    )
                )
        zf = Fraction(0) if field is QQ else field.zero()
        atB = {"u": zf, "v": zf}
        if zero_test(chartB.s1.eval_scalar(atB)) and zero_test(chartB.s2.eval_scalar(atB)):
            self.worklist.append(
                (gen + 1, chartB.id, field, identity_map(field), zf, zf, over)
            )

        self.blowups.append(
            {
                "chart": chart_id,
                "center": AlgebraicPoint(field, x0, y0).to_json(),
                "exceptional": eid,
                "charts": [chartA.id, chartB.id],
                "divided": [chartA.divided_power, chartB.divided_power],
            }
        )

    # -- restrictions and classification ----------------------------------

    def _restriction_of_track(self, chart: Chart, num: MultiPoly, ords: dict, comp_id: str, var: str) -> Restriction:
        order = ords.get(comp_id, 0)
        if order > 0:
            return Restriction("zero")
        if order < 0:
            return Restriction("infinity")
        field = chart.field
        other = "v" if var == "u" else "u"
        num_r = _restrict(num, var)
        den_r = MultiPoly.const((other,), Fraction(1) if field is QQ else field.one())
        for cid, o in ords.items():
            if cid == comp_id or o == 0:
                continue
            w = chart.boundary.get(cid)
            if w is None:
                continue
            wr = _restrict(w, var)
            if o > 0:
                num_r = num_r * wr ** o
            else:
                den_r = den_r * wr ** (-o)
        g = gcd_poly(num_r, den_r)
        if g.degree_in(other) >= 1:
            num_r = num_r.exact_div(g)
            den_r = den_r.exact_div(g)
        dn, dd = num_r.degree_in(other), den_r.degree_in(other)
        if dn <= 0 and dd <= 0:
            val = num_r.constant_value() / den_r.constant_value()
            kind = "zero" if not val else "finite"
            return Restriction(kind, value=val, map_degree=0)
        return Restriction(
            "nonconstant", num=num_r, den=den_r, map_degree=max(dn, dd)
        )

    def _line_poly(self, field, coord: str, value) -> list[str]:
        """Defining polynomial(s) over Q of the line {coord = value}."""
        uv = ("u", "v")
        if field is QQ or (hasattr(field, "elt_is_rational") and field.elt_is_rational(value)):
            val = Fraction(value) if field is QQ else field.elt_as_fraction(value)
            line = MultiPoly(uv, {(1, 0) if coord == "u" else (0, 1): Fraction(1)}) - val
            return [line.primitive().to_string()]
        mp = field.min_poly_of(value)  # monic in t
        var = MultiPoly.var("u" if coord == "u" else "v", uv)
        out = MultiPoly.zero(uv)
        coeffs = [Fraction(0)] * (mp.degree_in("t") + 1)
        for (e,), c in mp.terms.items():
            coeffs[e] = c
        for c in reversed(coeffs):
            out = out * var + MultiPoly.const(uv, c)
        return [out.primitive().to_string()]

    def _dicritical_image(self, chart: Chart, comp: Component) -> list[str]:
        p, q = comp.p_rest, comp.q_rest
        field = chart.field
        if p.kind in ("finite", "zero") and q.kind == "nonconstant":
            value = p.value if p.kind == "finite" else (Fraction(0) if field is QQ else field.zero())
            return self._line_poly(field, "u", value)
        if q.kind in ("finite", "zero") and p.kind == "nonconstant":
            value = q.value if q.kind == "finite" else (Fraction(0) if field is QQ else field.zero())
            return self._line_poly(field, "v", value)
        # both nonconstant: implicitize by eliminating the component parameter
        other = "v" if comp.local_var == "u" else "u"
        wUV = (other, "U", "V")
        one = Fraction(1) if field is QQ else field.one()

        def lift3(pp: MultiPoly) -> MultiPoly:
            return MultiPoly(wUV, {(e[0], 0, 0): c for e, c in pp.terms.items()})

        Uv = MultiPoly.var("U", wUV, one=one)
        Vv = MultiPoly.var("V", wUV, one=one)
        e1 = lift3(p.num) - Uv * lift3(p.den)
        e2 = lift3(q.num) - Vv * lift3(q.den)
        elim = resultant(e1, e2, other)
        if field is QQ:
            elim_q = MultiPoly(("u", "v"), {(e[wUV.index("U")], e[wUV.index("V")]): c for e, c in elim.terms.items()})
        else:
            gUV = ("g", "U", "V")
            expanded = MultiPoly.zero(gUV)
            for e, c in elim.terms.items():
                for i, ci in enumerate(c.coeffs):
                    if ci:
                        expanded = expanded + MultiPoly(
                            gUV, {(i, e[wUV.index("U")], e[wUV.index("V")]): ci}
                        )
            m_g = MultiPoly(gUV, {(e, 0, 0): c for (e,), c in field.min_poly.terms.items()})
            norm = resultant(m_g, expanded, "g")
            elim_q = MultiPoly(
                ("u", "v"),
                {(e[gUV.index("U")], e[gUV.index("V")]): c for e, c in norm.terms.items()},
            )
        if elim_q.is_zero or elim_q.is_constant:
            raise ToolkitError("implicitization failed for a dicritical image")
        out = []
        for fac, _m in factor_rational(elim_q):
            # validate: the factor must vanish on the parametrization
            facK = fac
            if field is not QQ:
                facK = fac.map_coeff(field.from_fraction)
            check, _ = _compose_uv(facK, p.num, p.den, q.num, q.den)
            if check.is_zero:
                out.append(fac.primitive().to_string())
        if not out:
            raise ToolkitError("no validated factor for a dicritical image")
        return sorted(set(out))

    def _classify_all(self):
        for comp in self.components:
            chart = self.charts[comp.chart_id]
            comp.p_rest = self._restriction_of_track(
                chart, chart.p_num, chart.p_ord, comp.id, comp.local_var
            )
            comp.q_rest = self._restriction_of_track(
                chart, chart.q_num, chart.q_ord, comp.id, comp.local_var
            )
            p, q = comp.p_rest, comp.q_rest
            if not comp.horizontal:
                comp.type_label = "not_horizontal"
            elif comp.over != "infinity":
                comp.type_label = "I"
            elif p.kind == "infinity" and q.kind == "infinity":
                comp.type_label = "IIa"
            elif p.kind == "zero" and q.kind == "zero":
                comp.type_label = "IIb"
            else:
                comp.type_label = "IIc"
            pair_nonconstant = p.kind == "nonconstant" or q.kind == "nonconstant"
            meets_plane = p.kind != "infinity" and q.kind != "infinity"
            comp.dicritical = (
                comp.over == "infinity" and pair_nonconstant and meets_plane
            )
            if comp.dicritical:
                comp.image_polys = self._dicritical_image(chart, comp)

    # -- main entry -------------------------------------------------------

    def run(self) -> ResolutionTree:
        self._init_charts()
        base = base_points(self.F, self.config.degree_cap)

        # the line at infinity is always a boundary component
        inf_chart = self.charts["inf_x"]
        horizontal, key, label, _r1, _r2 = self._classify_sections_on_exceptional(
            QQ, inf_chart.s1, inf_chart.s2, "v"
        )
        self.components.append(
            Component(
                id="Linf",
                over="infinity",
                origin="line_at_infinity",
                chart_id="inf_x",
                local_var="v",
                horizontal=horizontal,
                lam_key=key,
                lam_label=label,
            )
        )

        for bid, pt in base.affine:
            fmap = identity_map(pt.field) if pt.field is QQ else FieldMap(QQ, pt.field, None)
            self.worklist.append((0, "affine", pt.field, fmap, pt.x, pt.y, bid))
        for chart_name, pt in base.at_infinity:
            fmap = identity_map(pt.field) if pt.field is QQ else FieldMap(QQ, pt.field, None)
            self.worklist.append(
                (0, chart_name, pt.field, fmap, pt.x, pt.y, "infinity")
            )

        while self.worklist:
            item = self._next_item()
            self._blow_up(item)

        self._classify_all()

        h_inf = sum(
            1 for c in self.components if c.horizontal and c.over == "infinity"
        )
        h_per_base = {bid: 0 for bid, _ in base.affine}
        for c in self.components:
            if c.horizontal and c.over != "infinity":
                h_per_base[c.over] += 1
        # hard invariants: every boundary piece carries a horizontal component
        if h_inf < 1:
            raise ToolkitError("no horizontal component over infinity")
        for bid, n in h_per_base.items():
            if n < 1:
                raise ToolkitError(f"no horizontal component over base point {bid}")

        lam_groups: dict[str, dict] = {}
        for c in self.components:
            if c.horizontal:
                continue
            grp = lam_groups.setdefault(
                c.lam_key,
                {"label": c.lam_label, "orbit": _orbit_of_key(c.lam_key), "count": 0},
            )
            grp["count"] += 1

        m_total = len(self.components)
        n_base = len(base.affine)
        h_G = h_inf + sum(h_per_base.values())
        situation = None
        if h_G == 2:
            if h_inf == 2 and n_base == 0:
                situation = "i"
            elif h_inf == 1 and n_base == 1:
                situation = "ii"

        return ResolutionTree(
            components=self.components,
            charts=self.charts,
            base=base,
            edges=sorted(sorted(e) for e in self.edges),
            blowups=self.blowups,
            h_infinity=h_inf,
            h_per_base=h_per_base,
            m_total=m_total,
            lam_groups=lam_groups,
            situation=situation,
            budget_used=self.budget_used,
        )


def _orbit_of_key(key: str) -> int:
    """Number of pencil parameters sharing a canonical group key."""
    if key == "(0:1)":
        return 1
    from .core.parse import parse_poly

    try:
        mp = parse_poly(key, ("t",))
    except Exception:
        return 1
    return max(mp.degree_in("t"), 1)


def _compose_uv(fac: MultiPoly, p_num, p_den, q_num, q_den):
    """fac(p_num/p_den, q_num/q_den) cleared; fac over (u, v)."""
    du = max(fac.degree_in("u"), 0)
    dv = max(fac.degree_in("v"), 0)
    variables = p_num.variables
    num = MultiPoly.zero(variables)
    for (eu, ev), c in fac.terms.items():
        term = MultiPoly.const(variables, c)
        term = term * p_num ** eu * p_den ** (du - eu)
        term = term * q_num ** ev * q_den ** (dv - ev)
        num = num + term
    return num, p_den ** du * q_den ** dv


def resolve_pencil(F: PencilMap, config: ToolkitConfig, order: str = "default") -> ResolutionTree:
    """Resolve the pencil map to base-point freeness and classify."""
    return Resolver(F, config, order).run()


def fiber_component_counts(tree: ResolutionTree):
    """(m, per-lambda counts) with the bookkeeping identity asserted."""
    m = tree.m_total
    groups = tree.lam_groups
    total_constant = sum(g["count"] for g in groups.values())
    if tree.h_G + total_constant != m:
        raise ToolkitError("component bookkeeping failed: h_G + sum(m_lambda) != m")
    return m, groups


def dual_graph_dot(tree: ResolutionTree) -> str:
    lines = ["graph resolution {"]
    for c in tree.components:
        attrs = [
            f"type={c.type_label}",
            f"over={c.over}",
            f"dicritical={'yes' if c.dicritical else 'no'}",
        ]
        if c.lam_label:
            attrs.append(f"g={c.lam_label}")
        lines.append(f'  "{c.id}" [label="{c.id}|' + "|".join(attrs) + '"];')
    for a, b in tree.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
