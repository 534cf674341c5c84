"""Point blow-ups of 1-form germs with divisor and proximity bookkeeping.

Every germ lives at the origin of a local chart in variables (x, y).
Blowing up uses two chart maps, chosen so that the new exceptional
divisor always has local equation x = 0:

* slope direction lambda:   (x, y) -> (x, x*(y + lambda))
* vertical direction:       (x, y) -> (x*y, x)

A point records which exceptional divisors pass through it; proximity,
free/satellite status and the strict transform of the line at infinity
all fall out of that bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, UnsupportedAlgebraicPoint
from .poly import Polynomial, content_free_pair, exact_divide, linear_point_factors, poly_gcd

VARS = ("x", "y")


def _xpow(tower, k):
    return Polynomial.from_dict(tower, VARS, {(k, 0): 1})


def chart_map(tower, kind, lam=None):
    """Variable images of the parent coordinates in the child chart."""
    x = Polynomial.variable(tower, VARS, "x")
    y = Polynomial.variable(tower, VARS, "y")
    if kind == "slope":
        shift = y + Polynomial.constant(tower, VARS, lam) if lam is not None else y
        return {"x": x, "y": x * shift}
    if kind == "vertical":
        return {"x": x * y, "y": x}
    raise ValueError("unknown chart kind %r" % (kind,))


def strict_transform_curve(c, kind, lam=None, mult=None):
    """Strict transform of a curve germ through the chosen chart.

    Returns (transform, multiplicity-at-parent).  The transform is
    c(chart)/x^m with m the order of vanishing of c at the parent point.
    """
    if c.is_zero():
        raise ValueError("zero curve germ")
    m = c.order() if mult is None else mult
    total = c.substitute(chart_map(c.tower, kind, lam))
    out = exact_divide(total, _xpow(c.tower, m))
    if out is None:
        raise ArithmeticError("strict transform division failed")
    return out, m


@dataclass
class LocalOneForm:
    """Germ a dx + b dy at the origin, content-free, with incidence data.

    ``divisors`` maps the id of the blow-up point that created each
    exceptional divisor through the origin to its local equation;
    ``infinity`` is the local equation of the strict transform of the
    line at infinity when it passes through the origin.
    """

    a: Polynomial
    b: Polynomial
    divisors: dict = field(default_factory=dict)
    infinity: Polynomial | None = None
    removed_content: Polynomial | None = None

    def __post_init__(self):
        if self.a.is_zero() and self.b.is_zero():
            raise ValueError("zero 1-form germ")
        a, b, content = content_free_pair(self.a, self.b)
        if not content.is_constant():
            self.a, self.b = a, b
            self.removed_content = content if self.removed_content is None else self.removed_content * content
        for pid, eq in self.divisors.items():
            if not eq.constant_term().is_zero() or eq.homogeneous_part(1).is_zero():
                raise ValueError("divisor %s is not smooth through the origin" % pid)

    @property
    def tower(self):
        return self.a.tower

    def multiplicity(self):
        """min of the vanishing orders of a and b at the origin."""
        oa = self.a.order() if not self.a.is_zero() else 10**9
        ob = self.b.order() if not self.b.is_zero() else 10**9
        return min(oa, ob)

    def jets(self, k):
        return self.a.homogeneous_part(k), self.b.homogeneous_part(k)

    def tangent_combination(self):
        """x*a_v + y*b_v for the leading jets; identically zero iff dicritical."""
        v = self.multiplicity()
        av, bv = self.jets(v)
        x = Polynomial.variable(self.tower, VARS, "x")
        y = Polynomial.variable(self.tower, VARS, "y")
        return x * av + y * bv

    def linear_matrix(self):
        """Rows ((db/dx, db/dy), (-da/dx, -da/dy)) at the origin (dual field jet)."""
        a1, b1 = self.jets(1)

        def coeff(p, var):
            e = (1, 0) if var == "x" else (0, 1)
            return p.terms.get(e, self.tower.zero())

        return (
            (coeff(b1, "x"), coeff(b1, "y")),
            (-coeff(a1, "x"), -coeff(a1, "y")),
        )

    def is_dicritical(self):
        if self.multiplicity() < 1:
            raise ValueError("dicriticality is defined at singular points")
        return self.tangent_combination().is_zero()


@dataclass
class InfPoint:
    """An infinitely near point of the blow-up tree."""

    id: int
    parent: int | None
    chart: tuple  # ("root", chart_name, x_translation) | ("slope", lam) | ("vertical",)
    proximate_to: frozenset
    level: int
    on_infinity: bool
    root_coords: tuple | None = None  # (X0, Y0) for points on Z = 0

    @property
    def free(self):
        return len(self.proximate_to) <= 1

    def label(self):
        return "P%d" % self.id


class Configuration:
    """A parent-closed set of infinitely near points with analysis data."""

    def __init__(self, tower):
        self.tower = tower
        self.points = {}
        self.forms = {}
        self.info = {}
        self._next = 1

    def __len__(self):
        return len(self.points)

    def ids(self):
        return sorted(self.points)

    def add_root(self, coords, chart_name, translation, form):
        pid = self._next
        self._next += 1
        pt = InfPoint(
            id=pid,
            parent=None,
            chart=("root", chart_name, translation),
            proximate_to=frozenset(),
            level=0,
            on_infinity=True,
            root_coords=coords,
        )
        self.points[pid] = pt
        self.forms[pid] = form
        return pt

    def add_child(self, parent_id, chart, form, proximate_to, on_infinity):
        pid = self._next
        self._next += 1
        pt = InfPoint(
            id=pid,
            parent=parent_id,
            chart=chart,
            proximate_to=frozenset(proximate_to),
            level=self.points[parent_id].level + 1,
            on_infinity=on_infinity,
        )
        self.points[pid] = pt
        self.forms[pid] = form
        return pt

    def chain(self, pid):
        """Ancestor chain from the root down to pid (inclusive)."""
        out = []
        cur = pid
        while cur is not None:
            out.append(cur)
            cur = self.points[cur].parent
        return list(reversed(out))

    def children(self, pid):
        return [q for q in self.ids() if self.points[q].parent == pid]

    def maximal_points(self, subset=None):
        pool = set(self.points if subset is None else subset)
        parents = {self.points[q].parent for q in pool}
        return sorted(q for q in pool if q not in parents)

    def restricted_proximity(self, pid, chain):
        inside = set(chain)
        return self.points[pid].proximate_to & inside


def blow_up(config, parent_id):
    """Blow up the point, register singular children, return (dicritical, children).

    Children are exactly the singular points of the strict transform on the
    new exceptional divisor, each recentred at the origin of its own chart
    with divisor list, infinity flag and proximity set updated.
    """
    form = config.forms[parent_id]
    tower = form.tower
    nu = form.multiplicity()
    if nu < 1:
        raise ValueError("cannot blow up a nonsingular point")
    A = form.tangent_combination()
    dicritical = A.is_zero()
    if dicritical:
        av1, bv1 = form.jets(nu + 1)
        x = Polynomial.variable(tower, VARS, "x")
        y = Polynomial.variable(tower, VARS, "y")
        g1 = x * av1 + y * bv1
        av, bv = form.jets(nu)
        c = exact_divide(bv, x)
        if c is None:  # bv has no x factor only if av, bv were both zero; cannot happen
            raise ArithmeticError("dicritical jet structure corrupt")
        target = c if g1.is_zero() else poly_gcd(g1, c)
        if target.is_constant():
            directions = []
        else:
            directions = _direction_roots(target)
    else:
        directions = _direction_roots(A)

    div_power = nu + 1 if dicritical else nu
    children = []
    for kind, lam, _mult in directions:
        child_form = _transformed_form(form, kind, lam, div_power, parent_id)
        if child_form is None or child_form.multiplicity() < 1:
            continue
        prox = {parent_id} | (set(child_form.divisors) - {parent_id})
        pt = config.add_child(
            parent_id,
            (kind, lam) if kind == "slope" else ("vertical",),
            child_form,
            prox,
            on_infinity=child_form.infinity is not None,
        )
        children.append((pt, child_form))
    return dicritical, children


def _direction_roots(B):
    """Roots of a binary direction form as chart designators."""
    points, residual = linear_point_factors(B, "x", "y")
    if not residual.is_constant():
        raise UnsupportedAlgebraicPoint(
            "singular direction outside the tower: residual %s" % residual.text()
        )
    out = []
    for (x0, y0), mult in points:
        if x0.is_zero():
            out.append(("vertical", None, mult))
        elif y0.is_zero():
            out.append(("slope", B.tower.zero(), mult))
        else:
            # root (x0 : y0) = (x0 : 1); slope of the direction is y0/x0 = 1/x0
            out.append(("slope", y0 / x0, mult))
    return out


def _transformed_form(form, kind, lam, div_power, parent_id):
    tower = form.tower
    sub = chart_map(tower, kind, lam)
    at = form.a.substitute(sub)
    bt = form.b.substitute(sub)
    x = Polynomial.variable(tower, VARS, "x")
    y = Polynomial.variable(tower, VARS, "y")
    if kind == "slope":
        shift = y + Polynomial.constant(tower, VARS, lam) if lam is not None else y
        raw_a = at + shift * bt
        raw_b = x * bt
    else:
        raw_a = y * at + bt
        raw_b = x * at
    xp = _xpow(tower, div_power)
    new_a = exact_divide(raw_a, xp)
    new_b = exact_divide(raw_b, xp)
    if new_a is None or new_b is None:
        raise ArithmeticError("blow-up division by x^%d failed" % div_power)
    divisors = {parent_id: x}
    for pid, eq in form.divisors.items():
        st, _ = strict_transform_curve(eq, kind, lam, mult=1)
        if st.constant_term().is_zero():
            divisors[pid] = st
    infinity = None
    if form.infinity is not None:
        st, _ = strict_transform_curve(form.infinity, kind, lam, mult=1)
        if st.constant_term().is_zero():
            infinity = st
    if new_a.is_zero() and new_b.is_zero():
        return None
    return LocalOneForm(a=new_a, b=new_b, divisors=divisors, infinity=infinity)


# ---------------------------------------------------------------------------
# curve germ resolution (multiplicity sequences, one-place checks)
# ---------------------------------------------------------------------------


@dataclass
class GermStep:
    multiplicity: int
    proximate_to: frozenset  # indices within the resolution chain
    divisors: dict


def resolve_curve_germ(c, budget=200):
    """Multiplicity sequence and in-chain proximity of a unibranch germ.

    Follows the (unique) tangent at each infinitely near point of the
    minimal embedded resolution.  Returns the list of GermStep records.
    Raises ValueError if the germ splits into several tangent directions
    (more than one place).
    """
    if c.is_zero() or not c.constant_term().is_zero():
        raise ValueError("expected a curve germ through the origin")
    steps = []
    divisors = {}
    germ = c
    for _ in range(budget):
        m = germ.order()
        tangents = _germ_tangents(germ)
        if len(tangents) != 1:
            raise ValueError("germ has %d tangent directions" % len(tangents))
        (kind, lam), _ = tangents[0]
        steps.append(GermStep(multiplicity=m, proximate_to=frozenset(divisors), divisors=dict(divisors)))
        idx = len(steps) - 1
        new_divisors = {idx: Polynomial.variable(c.tower, VARS, "x")}
        for j, eq in divisors.items():
            st, _ = strict_transform_curve(eq, kind, lam, mult=1)
            if st.constant_term().is_zero():
                new_divisors[j] = st
        germ, _ = strict_transform_curve(germ, kind, lam, mult=m)
        if not germ.constant_term().is_zero():
            raise ArithmeticError("strict transform missed the tangent-direction chart origin")
        divisors = new_divisors
        if _is_resolved(germ, divisors):
            return steps
    raise BudgetExceeded("curve resolution exceeded %d blow-ups" % budget)


def _germ_tangents(germ):
    lowest = germ.lowest_part()
    points, residual = linear_point_factors(lowest, "x", "y")
    out = []
    for (x0, y0), mult in points:
        if x0.is_zero():
            out.append((("vertical", None), mult))
        elif y0.is_zero():
            out.append((("slope", germ.tower.zero()), mult))
        else:
            out.append((("slope", y0 / x0), mult))
    if not residual.is_constant():
        # an irreducible residual of degree >= 2 has >= 2 distinct complex
        # roots, hence the germ carries several branches
        raise ValueError("germ has several tangent directions (residual %s)" % residual.text())
    return out


def _is_resolved(germ, divisors):
    """Smooth, at most one divisor, transverse to it: the resolution stops."""
    if germ.order() != 1:
        return False
    if len(divisors) > 1:
        return False
    tangent = germ.homogeneous_part(1)
    for eq in divisors.values():
        dtan = eq.homogeneous_part(1)
        # proportional linear parts mean tangency to the divisor
        det = tangent.terms.get((1, 0), germ.tower.zero()) * dtan.terms.get((0, 1), germ.tower.zero()) - tangent.terms.get(
            (0, 1), germ.tower.zero()
        ) * dtan.terms.get((1, 0), germ.tower.zero())
        if det.is_zero():
            return False
    return True


def multiplicity_sequence(c, budget=200):
    return [s.multiplicity for s in resolve_curve_germ(c, budget)]


# ---------------------------------------------------------------------------
# proximity graphs
# ---------------------------------------------------------------------------


@dataclass
class ProximityGraph:
    """Hasse tree plus retained (non-elided) dotted proximity edges."""

    vertices: tuple  # point ids in ascending order
    tree_edges: tuple  # (parent, child)
    dotted_edges: tuple  # (descendant, ancestor) retained after elision
    labels: dict

    def dot(self):
        lines = ["digraph proximity {"]
        for v in self.vertices:
            lines.append('  %s [label="%s"];' % (self.labels[v], self.labels[v]))
        for p, c in self.tree_edges:
            lines.append("  %s -> %s;" % (self.labels[p], self.labels[c]))
        for q, p in self.dotted_edges:
            lines.append("  %s -> %s [style=dotted];" % (self.labels[q], self.labels[p]))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def ascii(self):
        lines = []
        for p, c in self.tree_edges:
            lines.append("%s -> %s" % (self.labels[p], self.labels[c]))
        for q, p in self.dotted_edges:
            lines.append("%s ..> %s" % (self.labels[q], self.labels[p]))
        return "\n".join(lines) + ("\n" if lines else "")


def proximity_graph(points, labels=None):
    """Build the proximity graph of a set of point records.

    ``points`` maps id -> (parent id or None, proximate-to set); dotted
    edges that follow from retained ones (satellites whose ancestors along
    the chain are necessarily proximate to the same point) are elided.
    """
    ids = sorted(points)
    labels = labels or {i: "P%d" % i for i in ids}
    tree = tuple((points[i][0], i) for i in ids if points[i][0] is not None and points[i][0] in points)
    ancestors = {}
    for i in ids:
        chain = []
        cur = points[i][0]
        while cur is not None and cur in points:
            chain.append(cur)
            cur = points[cur][0]
        ancestors[i] = chain
    dotted = []
    by_target = {}
    for i in ids:
        parent, prox = points[i]
        for t in sorted(prox):
            if t == parent or t not in points:
                continue
            by_target.setdefault(t, []).append(i)
    for t in sorted(by_target):
        sources = by_target[t]
        keep = []
        for q in sorted(sources, key=lambda s: -len(ancestors[s])):
            if any(q in ancestors[r] for r in keep):
                continue  # implied: a retained deeper satellite forces this proximity
            keep.append(q)
        dotted.extend((q, t) for q in sorted(keep))
    dotted.sort()
    return ProximityGraph(
        vertices=tuple(ids),
        tree_edges=tree,
        dotted_edges=tuple(dotted),
        labels=labels,
    )


def configuration_graph(config, subset=None):
    ids = sorted(subset) if subset is not None else config.ids()
    pts = {i: (config.points[i].parent, set(config.points[i].proximate_to)) for i in ids}
    return proximity_graph(pts)


# ---------------------------------------------------------------------------
# base points of a local pencil (test oracle machinery)
# ---------------------------------------------------------------------------


def pencil_base_points(f, g, budget=200):
    """Chains of base points of the local pencil <f, g> at the origin.

    Returns a list of records (path, multiplicity) where path is the list
    of chart designators from the origin and multiplicity is the common
    multiplicity subtracted at that point.  Used as an independent oracle.
    """
    out = []
    stack = [((), f, g)]
    seen = 0
    while stack:
        path, a, b = stack.pop()
        if not (a.constant_term().is_zero() and b.constant_term().is_zero()):
            continue
        seen += 1
        if seen > budget:
            raise BudgetExceeded("pencil resolution exceeded %d points" % budget)
        m = min(a.order(), b.order())
        out.append((path, m))
        directions = _common_directions(a, b)
        for kind, lam in directions:
            xp = _xpow(a.tower, m)
            a2 = exact_divide(a.substitute(chart_map(a.tower, kind, lam)), xp)
            b2 = exact_divide(b.substitute(chart_map(b.tower, kind, lam)), xp)
            step = (kind, None if lam is None else lam)
            stack.append((path + (step,), a2, b2))
    return sorted(out, key=lambda r: (len(r[0]), str(r[0])))


def _common_directions(a, b):
    m = min(a.order(), b.order())
    fa = a.homogeneous_part(m)
    fb = b.homogeneous_part(m)
    g = poly_gcd(fa, fb) if not (fa.is_zero() or fb.is_zero()) else (fb if fa.is_zero() else fa)
    dirs = []
    if g.is_constant():
        candidates = []
    else:
        candidates = _direction_roots(g)
    for kind, lam, _ in candidates:
        dirs.append((kind, lam))
    # degenerate case: one form vanishes entirely at this jet level
    return dirs
