"""Clusters of infinitely near points and the linear systems they cut out.

A cluster here is always a chain (ancestors of a maximal point) with
virtual multiplicities computed by the reverse-topological rule: 1 at the
maximal point, the sum over in-chain proximate points elsewhere.  Passage
conditions are assembled symbolically: a generic degree-m form travels
down the chain by virtual transforms (divide by x^{m_k} regardless of the
actual multiplicity) and every jet coefficient of order below the virtual
multiplicity becomes a linear condition on the form's coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import nullspace
from .poly import Polynomial
from .projective import PROJ_VARS


@dataclass
class Cluster:
    """A chain of configuration points with virtual multiplicities."""

    config: object
    chain: tuple  # point ids, root first
    m: tuple  # virtual multiplicities, aligned with chain

    @property
    def maximal(self):
        return self.chain[-1]


def chain_multiplicities(config, chain):
    """Virtual multiplicities along a chain: 1 at the top, proximity sums below."""
    chain = list(chain)
    n = len(chain)
    if not n:
        raise ValueError("empty chain")
    index = {pid: i for i, pid in enumerate(chain)}
    m = [0] * n
    m[n - 1] = 1
    for i in range(n - 2, -1, -1):
        total = 0
        for j in range(i + 1, n):
            prox = config.points[chain[j]].proximate_to
            if chain[i] in prox:
                total += m[j]
        m[i] = total if total else 1
    return tuple(m)


def make_cluster(config, maximal_pid):
    chain = tuple(config.chain(maximal_pid))
    return Cluster(config=config, chain=chain, m=chain_multiplicities(config, chain))


def d_and_I(config, chain, m):
    """(d, I): d sums m over line-at-infinity points, I = d^2 - sum(m^2)."""
    d = sum(mi for pid, mi in zip(chain, m) if config.points[pid].on_infinity)
    I = d * d - sum(mi * mi for mi in m)
    return d, I


def cluster_d_I(cluster):
    return d_and_I(cluster.config, cluster.chain, cluster.m)


# ---------------------------------------------------------------------------
# passage conditions and linear systems
# ---------------------------------------------------------------------------


def _degree_monomials(degree):
    """Monomials of a ternary form, graded-lex order in (X, Y, Z)."""
    out = []
    for ex in range(degree, -1, -1):
        for ey in range(degree - ex, -1, -1):
            out.append((ex, ey, degree - ex - ey))
    return out


def _coefficient_names(n):
    return tuple("c%d" % i for i in range(n))


def passage_conditions(degree, cluster):
    """Linear conditions on a generic degree-m form to pass virtually
    through the cluster.

    Returns (rows, monomials): rows are lists of FieldElements, one column
    per coefficient of the generic form (graded-lex monomial order).
    """
    config = cluster.config
    tower = config.tower
    monos = _degree_monomials(degree)
    cnames = _coefficient_names(len(monos))
    vars = ("x", "y") + cnames
    zerofe = tower.zero()

    # generic form pulled to the root chart
    root = config.points[cluster.chain[0]]
    kind, chart_name, trans = root.chart
    if kind != "root":
        raise ValueError("cluster chains must start at a root point")
    x = Polynomial.variable(tower, vars, "x")
    y = Polynomial.variable(tower, vars, "y")
    if chart_name == "Y":
        sx, sy, sz = x + Polynomial.constant(tower, vars, trans), Polynomial.constant(tower, vars, 1), y
    else:
        sx, sy, sz = Polynomial.constant(tower, vars, 1), x, y
    germ = Polynomial.zero(tower, vars)
    for mono, cname in zip(monos, cnames):
        c = Polynomial.variable(tower, vars, cname)
        germ = germ + c * sx ** mono[0] * sy ** mono[1] * sz ** mono[2]

    rows = []
    for step, (pid, mk) in enumerate(zip(cluster.chain, cluster.m)):
        # impose vanishing of every jet coefficient of (x,y)-order < mk
        low = {}
        for e, coeff in germ.terms.items():
            if e[0] + e[1] < mk:
                low.setdefault((e[0], e[1]), []).append((e, coeff))
        for _, entries in sorted(low.items()):
            row = [zerofe] * len(cnames)
            for e, coeff in entries:
                ci = next(i for i, k in enumerate(e[2:]) if k)
                row[ci] = row[ci] + coeff
            rows.append(row)
        # delete the conditioned monomials, then move to the next point
        germ = Polynomial(
            tower, vars, {e: c for e, c in germ.terms.items() if e[0] + e[1] >= mk}
        )
        if step + 1 < len(cluster.chain):
            child = config.points[cluster.chain[step + 1]]
            ckind = child.chart[0]
            lam = child.chart[1] if ckind == "slope" else None
            if ckind == "slope":
                shift = y + Polynomial.constant(tower, vars, lam)
                germ = germ.substitute({"x": x, "y": x * shift})
            else:
                germ = germ.substitute({"x": x * y, "y": x})
            germ = _divide_x_power(germ, mk)
    return rows, monos


def _divide_x_power(p, k):
    terms = {}
    for e, c in p.terms.items():
        if e[0] < k:
            raise ArithmeticError("virtual transform not divisible by x^%d" % k)
        terms[(e[0] - k,) + e[1:]] = c
    return Polynomial(p.tower, p.vars, terms)


def linear_system(degree, cluster):
    """(projective dimension, basis of degree-m forms) through the cluster."""
    rows, monos = passage_conditions(degree, cluster)
    tower = cluster.config.tower
    if not rows:
        rows = [[tower.zero()] * len(monos)]
    basis_vecs = nullspace(rows, tower)
    forms = []
    for vec in basis_vecs:
        terms = {mono: c for mono, c in zip(monos, vec) if not c.is_zero()}
        forms.append(Polynomial(tower, PROJ_VARS, terms).monic())
    return len(forms) - 1, forms


def virtual_passage_check(F, cluster):
    """Re-run the virtual transform recursion on a concrete form and check
    the jet vanishing at every cluster point (independent of the matrix path)."""
    config = cluster.config
    tower = F.tower
    root = config.points[cluster.chain[0]]
    _, chart_name, trans = root.chart
    x = Polynomial.variable(tower, ("x", "y"), "x")
    y = Polynomial.variable(tower, ("x", "y"), "y")
    if chart_name == "Y":
        sub = {"X": x + Polynomial.constant(tower, ("x", "y"), trans), "Y": Polynomial.constant(tower, ("x", "y"), 1), "Z": y}
    else:
        sub = {"X": Polynomial.constant(tower, ("x", "y"), 1), "Y": x, "Z": y}
    germ = F.substitute(sub)
    for step, (pid, mk) in enumerate(zip(cluster.chain, cluster.m)):
        if not germ.is_zero() and germ.order() < mk:
            return False
        low = {e for e in germ.terms if e[0] + e[1] < mk}
        germ = Polynomial(tower, germ.vars, {e: c for e, c in germ.terms.items() if e not in low})
        if step + 1 < len(cluster.chain):
            child = config.points[cluster.chain[step + 1]]
            ckind = child.chart[0]
            lam = child.chart[1] if ckind == "slope" else None
            if ckind == "slope":
                shift = y + Polynomial.constant(tower, ("x", "y"), lam)
                germ = germ.substitute({"x": x, "y": x * shift})
            else:
                germ = germ.substitute({"x": x * y, "y": x})
            germ = _divide_x_power(germ, mk)
    return True


def theorem_identities(F, cluster):
    """The two integer identities tying the curve degree to the cluster.

    (i) deg(F)^2 - sum(m^2) = -1, and (ii) deg(F) equals the sum of m over
    the points carrying the strict transform of the line at infinity.
    """
    d, I = cluster_d_I(cluster)
    deg = F.degree()
    return deg * deg - sum(mi * mi for mi in cluster.m) == -1 and deg == d


theorem3_check = theorem_identities
