"""The candidate-curve search and the Darboux exponent solve.

The search follows the two-step procedure: first the blow-up part
(reduction over the line at infinity, then the extended-reduction probe
that keeps free simple points with positive irrational eigenvalue ratio
while the index I stays >= -1), then the linear-system extraction of the
unique curves through the resulting clusters; finally the cofactor
nullspace produces the exponent ray and the integral is verified by the
exact identity sum(lambda_i * k_i) = 0.

"Zero" outcomes (the algorithm's regular no-answer) are ordinary return
values, kept strictly apart from hard errors such as unsupported
algebraic points or precision exhaustion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import configuration_graph
from .clusters import cluster_d_I, linear_system, make_cluster
from .config import AnalysisOptions
from .errors import BudgetExceeded, PrecisionExhausted, ShearFailure
from .linalg import nullspace
from .poly import Polynomial, poly_gcd, resultant
from .projective import dehomogenize, cofactor, projectivize
from .reduction import (
    ORDINARY,
    classify,
    continued_fraction,
    eigenvalues_along_divisor,
    extended_step,
    prox_of,
    seidenberg_over_infinity,
)


@dataclass(frozen=True)
class ZeroOutcome:
    stage: str
    reason: str

    def __str__(self):
        return "0 (%s: %s)" % (self.stage, self.reason)


@dataclass
class SPointData:
    pid: int
    cluster: object
    d: int
    index: int
    form_projective: Polynomial
    curve: Polynomial


@dataclass
class CandidateResult:
    reduction: object
    omega_ids: list = field(default_factory=list)
    extension_ids: list = field(default_factory=list)
    s_points: list = field(default_factory=list)
    zero: ZeroOutcome | None = None

    @property
    def curves(self):
        return [s.curve for s in self.s_points]

    def omega_graph(self):
        return configuration_graph(self.reduction.config, self.omega_ids)


def _in_extended_configuration(cls):
    # membership of a reduction point in the extended-reduction configuration:
    # ordinary points are centers; simple points belong iff their eigenvalue
    # ratio is a positive irrational
    return cls.kind == ORDINARY or cls.extendable()


def candidate_curves(system, options=AnalysisOptions()):
    """Candidate invariant curves from the extended reduction over infinity.

    The extension probe visits every free simple point with positive
    irrational eigenvalue ratio on the frontier of the reduction (not just
    those above maximal centers: a qualifying branch may sprout below a
    deeper sibling branch) and keeps those with index I >= -1; a maximal
    point of the resulting configuration that did not qualify marks a dead
    branch and yields the algorithmic Zero.
    """
    omega = projectivize(system)
    red = seidenberg_over_infinity(omega, options)
    cfg = red.config
    omega_prime = set(red.omega_prime)
    result = CandidateResult(reduction=red)

    qualified = set()
    frontier = [
        pid
        for pid in cfg.ids()
        if pid not in omega_prime
        and cfg.points[pid].parent in omega_prime
        and cfg.points[pid].free
        and cfg.info[pid]["class"].extendable()
    ]
    for q in cfg.maximal_points(omega_prime):
        cls_q = cfg.info[q]["class"]
        if cfg.points[q].free and _in_extended_configuration(cls_q) and _chain_index(cfg, q) >= -1:
            qualified.add(q)
            if cls_q.extendable():  # a simple root: extend beyond it
                if len(cfg) >= options.budget_points:
                    raise BudgetExceeded("point budget exhausted during extension")
                frontier.extend(pt.id for pt, _, _ in extended_step(cfg, q, options.precision_max))
    while frontier:
        pid = frontier.pop(0)
        pt = cfg.points[pid]
        if not (pt.free and cfg.info[pid]["class"].extendable()):
            continue
        if _chain_index(cfg, pid) < -1:
            continue
        qualified.add(pid)
        if len(cfg) >= options.budget_points:
            raise BudgetExceeded("point budget exhausted during extension")
        frontier.extend(pt.id for pt, _, _ in extended_step(cfg, pid, options.precision_max))

    omega_ids = sorted(omega_prime | qualified)
    result.omega_ids = omega_ids
    result.extension_ids = sorted(qualified - omega_prime)

    s_ids = cfg.maximal_points(omega_ids)
    for s in s_ids:
        if s not in qualified:
            result.zero = ZeroOutcome(
                "extension", "no qualifying extension point above P%d" % s
            )
            return result
    clusters = []
    for s in s_ids:
        cl = make_cluster(cfg, s)
        d, index = cluster_d_I(cl)
        if index != -1:
            result.zero = ZeroOutcome("index", "I(P%d) = %d, not -1" % (s, index))
            return result
        clusters.append((s, cl, d, index))

    for s, cl, d, index in clusters:
        dim, forms = linear_system(d, cl)
        if dim != 0:
            result.zero = ZeroOutcome(
                "linear-system",
                "L_%d at P%d has projective dimension %d" % (d, s, dim),
            )
            return result
        F = forms[0]
        f = dehomogenize(F).monic()
        result.s_points.append(
            SPointData(pid=s, cluster=cl, d=d, index=index, form_projective=F, curve=f)
        )
    result.s_points.sort(key=lambda sp: (-sp.curve.degree(), sp.curve.text()))
    return result


def _chain_index(cfg, pid):
    """I of the ancestor chain of pid within the extended configuration."""
    from .clusters import chain_multiplicities, d_and_I

    chain = cfg.chain(pid)
    m = chain_multiplicities(cfg, chain)
    _, index = d_and_I(cfg, chain, m)
    return index


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------


@dataclass
class ExponentResult:
    ray: list | None
    cofactors: list | None = None
    positive: bool | None = None  # None: positivity not decidable at the cap
    nullity: int = 0
    diagnostic: str | None = None


def solve_exponents(system, curves, options=AnalysisOptions()):
    """A positive ray in the nullspace of the cofactor matrix, if any."""
    tower = system.tower
    cofs = []
    for f in curves:
        k = cofactor(system, f)
        if k is None:
            return ExponentResult(ray=None, diagnostic="curve %s is not invariant" % f.text())
        cofs.append(k)
    d = system.degree
    monos = [(i, j) for t in range(d - 1, -1, -1) for i in range(t, -1, -1) for j in (t - i,)]
    rows = [[k.terms.get(mono, tower.zero()) for k in cofs] for mono in monos]
    basis = nullspace(rows, tower)
    if not basis:
        return ExponentResult(
            ray=None, cofactors=cofs, diagnostic="cofactors admit no nonzero relation (nullity 0)"
        )
    chosen, positive = None, False
    undecided = None
    for vec in basis:
        try:
            signs = [tower.sign(c, cap=options.precision_max) for c in vec if not c.is_zero()]
        except PrecisionExhausted:
            undecided = vec
            continue
        if all(s > 0 for s in signs) or all(s < 0 for s in signs):
            chosen = [-c for c in vec] if signs[0] < 0 else vec
            positive = True
            break
    if chosen is None:
        if undecided is not None:
            return ExponentResult(
                ray=undecided, cofactors=cofs, positive=None, nullity=len(basis),
                diagnostic="positivity undecided at the precision cap",
            )
        chosen = basis[0]
    return ExponentResult(ray=chosen, cofactors=cofs, positive=positive, nullity=len(basis))


def _is_atomic(e):
    """A rational, or a rational multiple of a single symbol monomial."""
    num, den = e.tower.flatten(e.data)
    k = len(e.tower.symbols)
    return len(num) <= 1 and list(den) == [(0,) * k] and den[(0,) * k] == 1


def display_ray(ray):
    """A rescaling of the ray whose entries are single symbols or rationals
    whenever some entry's inverse achieves that; falls back to the ray."""
    best, best_score = list(ray), sum(1 for e in ray if _is_atomic(e))
    for pivot in ray:
        if pivot.is_zero():
            continue
        scaled = [e / pivot for e in ray]
        score = sum(1 for e in scaled if _is_atomic(e))
        if score > best_score:
            best, best_score = scaled, score
    return best


# ---------------------------------------------------------------------------
# intersection numbers away from infinity
# ---------------------------------------------------------------------------


def _sheared(f, c):
    tower = f.tower
    x = Polynomial.variable(tower, ("x", "y"), "x")
    y = Polynomial.variable(tower, ("x", "y"), "y")
    return f.substitute({"x": x + c * y, "y": y})


def _shear_valid(curves, c):
    for f in curves:
        g = _sheared(f, c)
        if g.degree_in("y") != f.degree():
            return False
        lead = g.univariate("y")[-1]
        if not lead.is_constant():
            return False
    return True


def _rho_with_shear(curves, c):
    sheared = [_sheared(f, c) for f in curves]
    n = len(curves)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            r = resultant(sheared[i], sheared[j], "y")
            if r.is_zero():
                raise ValueError("curves %d and %d share a component" % (i, j))
            out[(i, j)] = out[(j, i)] = r.degree_in("x")
    return out


def rho_matrix(curves):
    """Pairwise intersection numbers outside the line at infinity.

    Computed as deg_x Res_y after a shear x -> x + c*y making every curve
    y-regular; validated by recomputation under a second independent shear.
    """
    tower = curves[0].tower
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if not poly_gcd(curves[i], curves[j]).is_constant():
                raise ValueError("rho matrix needs pairwise coprime curves")
    attempts = 0
    c = 0
    while attempts < 5:
        pair = []
        while len(pair) < 2:
            c += 1
            if _shear_valid(curves, tower.rational(c)):
                pair.append(tower.rational(c))
        first = _rho_with_shear(curves, pair[0])
        second = _rho_with_shear(curves, pair[1])
        if first == second:
            return first
        attempts += 1
    raise ShearFailure("independent shears keep disagreeing on intersection numbers")


# ---------------------------------------------------------------------------
# the integral itself
# ---------------------------------------------------------------------------


@dataclass
class DarbouxIntegral:
    curves: list
    ray: list
    ray_display: list
    cofactors: list
    verified: bool
    positive: bool | None
    dpwai_certified: bool
    dpwai_notes: list

    def text(self):
        parts = []
        for f, e in zip(self.curves, self.ray_display):
            r = e.as_rational()
            if r is not None and r == 1:
                parts.append("(%s)" % f.text())
            elif r is not None and r.denominator == 1:
                parts.append("(%s)^%d" % (f.text(), r))
            elif _is_atomic(e):
                parts.append("(%s)^%s" % (f.text(), e))
            else:
                parts.append("(%s)^(%s)" % (f.text(), e))
        return " * ".join(parts)


@dataclass
class AnalysisResult:
    system: object
    options: AnalysisOptions
    candidates: CandidateResult
    exponents: ExponentResult | None = None
    integral: DarbouxIntegral | None = None
    zero: ZeroOutcome | None = None
    rho: dict | None = None
    deltas: list | None = None


def first_integral(system, options=AnalysisOptions()):
    """Run the full pipeline; Zero outcomes carry their stage diagnostic."""
    cand = candidate_curves(system, options)
    result = AnalysisResult(system=system, options=options, candidates=cand)
    if cand.zero is not None:
        result.zero = cand.zero
        return result
    exps = solve_exponents(system, cand.curves, options)
    result.exponents = exps
    if exps.ray is None:
        result.zero = ZeroOutcome("exponents", exps.diagnostic or "no exponent ray")
        return result
    tower = system.tower
    residual = Polynomial.zero(tower, ("x", "y"))
    for lam, k in zip(exps.ray, exps.cofactors):
        residual = residual + k * lam
    verified = residual.is_zero()
    notes = []
    dpwai = bool(verified and exps.positive)
    if exps.positive is False:
        notes.append("exponent ray is not strictly positive")
    elif exps.positive is None:
        notes.append("positivity of the ray undecided at the precision cap")
    ray_disp = display_ray(exps.ray)
    rho = None
    deltas = None
    try:
        rho = rho_matrix(cand.curves)
        deltas = []
        for i in range(len(cand.curves)):
            delta = tower.zero()
            for j in range(len(cand.curves)):
                if j != i:
                    delta = delta + ray_disp[j] * rho[(j, i)]
            deltas.append(delta)
        for i, delta in enumerate(deltas):
            ratio = delta / ray_disp[i]
            if ratio.as_rational() is not None:
                dpwai = False
                notes.append(
                    "delta_%d / alpha_%d = %s is rational (a positive rational relation exists)"
                    % (i + 1, i + 1, ratio)
                )
    except ValueError as exc:
        dpwai = False
        notes.append("rho matrix unavailable: %s" % exc)
    result.rho = rho
    result.deltas = deltas
    result.integral = DarbouxIntegral(
        curves=cand.curves,
        ray=exps.ray,
        ray_display=ray_disp,
        cofactors=exps.cofactors,
        verified=verified,
        positive=exps.positive,
        dpwai_certified=dpwai,
        dpwai_notes=notes,
    )
    return result


# ---------------------------------------------------------------------------
# the extended-reduction report over the line at infinity
# ---------------------------------------------------------------------------


@dataclass
class ChainDescriptor:
    s_pid: int
    delta: object
    alpha: object
    cf: object
    chain: object  # ProxChain prefix of the infinite tail
    delta_from_local_form: object
    cross_check: bool


def extended_report(result, options=AnalysisOptions()):
    """Per-S-point chain descriptors of the infinite part of the reduction.

    delta_i is computed from the rho matrix and the exponent ray; the cross
    check recomputes it as alpha_i times the eigenvalue ratio of the local
    form at S_i (tangent-to-divisor over transverse) and demands exact
    equality of field elements.
    """
    if result.integral is None or result.rho is None:
        raise ValueError("extended report needs a computed integral with a rho matrix")
    cand = result.candidates
    cfg = cand.reduction.config
    out = []
    for i, sp in enumerate(cand.s_points):
        alpha = result.integral.ray_display[i]
        delta = result.deltas[i]
        form = cfg.forms[sp.pid]
        try:
            lam_tan, lam_perp = eigenvalues_along_divisor(form, "x")
            delta_alt = alpha * (lam_tan / lam_perp)
            cross = delta == delta_alt
        except ValueError:
            delta_alt, cross = None, None
        cf = continued_fraction(delta, alpha, options.cf_depth, options.precision_max)
        chain = prox_of(cf)
        out.append(
            ChainDescriptor(
                s_pid=sp.pid,
                delta=delta,
                alpha=alpha,
                cf=cf,
                chain=chain,
                delta_from_local_form=delta_alt,
                cross_check=cross,
            )
        )
    return out
