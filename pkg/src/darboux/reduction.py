"""Simple-singularity classification, reduction over the line at infinity,
continued fractions and the proximity graphs they encode.

A multiplicity-1 germ with linear-part eigenvalues l1, l2 is simple when
l1*l2 != 0 and l1/l2 is not a positive rational, or when exactly one
eigenvalue vanishes.  The ratio r = l1/l2 satisfies

    r^2 + (2 - s) r + 1 = 0,        s = trace^2 / det,

so the whole trichotomy is decided from s: rational s is handled exactly
over Q, irrational s by comparing its certified interval against 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import Configuration, LocalOneForm, blow_up
from .config import AnalysisOptions
from .errors import BudgetExceeded
from .poly import Polynomial
from .projective import affinize_at, singular_points_at_infinity

NON_SINGULAR = "nonsingular"
ORDINARY = "ordinary"
SIMPLE = "simple"

ZERO_EIGENVALUE = "zero_eigenvalue"
NEGATIVE_OR_COMPLEX = "negative_or_complex_ratio"
POSITIVE_IRRATIONAL = "positive_irrational"
POSITIVE_RATIONAL = "positive_rational"  # classified ordinary, kept for reporting


@dataclass(frozen=True)
class SingularityClass:
    kind: str
    ratio_class: str | None = None
    trace: object = None
    det: object = None
    rational_ratio: object = None  # Fraction for the positive-rational exclusion case
    multiplicity: int = 0

    @property
    def is_simple(self):
        return self.kind == SIMPLE

    def extendable(self):
        return self.kind == SIMPLE and self.ratio_class == POSITIVE_IRRATIONAL

    def describe(self):
        if self.kind != SIMPLE:
            if self.ratio_class == POSITIVE_RATIONAL:
                return "ordinary (eigenvalue ratio %s in Q+)" % (self.rational_ratio,)
            return self.kind
        return "simple/%s" % self.ratio_class


def classify(form, precision_max=4096):
    """The definitional trichotomy for a content-free germ."""
    mult = form.multiplicity()
    if mult == 0:
        return SingularityClass(kind=NON_SINGULAR, multiplicity=0)
    if mult > 1:
        return SingularityClass(kind=ORDINARY, multiplicity=mult)
    (m11, m12), (m21, m22) = form.linear_matrix()
    trace = m11 + m22
    det = m11 * m22 - m12 * m21
    if det.is_zero():
        if trace.is_zero():
            return SingularityClass(kind=ORDINARY, trace=trace, det=det, multiplicity=1)
        return SingularityClass(
            kind=SIMPLE, ratio_class=ZERO_EIGENVALUE, trace=trace, det=det, multiplicity=1
        )
    s = trace * trace / det
    sr = s.as_rational()
    if sr is None:
        # s irrational: the ratio is automatically irrational; the pair of
        # reciprocal roots is positive real iff s > 4
        positive = s.tower.sign(s - 4, cap=precision_max) > 0
        cls = POSITIVE_IRRATIONAL if positive else NEGATIVE_OR_COMPLEX
        return SingularityClass(kind=SIMPLE, ratio_class=cls, trace=trace, det=det, multiplicity=1)
    if sr >= 4:
        disc = sr * (sr - 4)
        root = _fraction_sqrt(disc)
        if root is not None:
            ratio = ((sr - 2) + root) / 2
            return SingularityClass(
                kind=ORDINARY,
                ratio_class=POSITIVE_RATIONAL,
                trace=trace,
                det=det,
                rational_ratio=ratio,
                multiplicity=1,
            )
        return SingularityClass(
            kind=SIMPLE, ratio_class=POSITIVE_IRRATIONAL, trace=trace, det=det, multiplicity=1
        )
    return SingularityClass(
        kind=SIMPLE, ratio_class=NEGATIVE_OR_COMPLEX, trace=trace, det=det, multiplicity=1
    )


def _fraction_sqrt(fr):
    from gmpy2 import isqrt, mpz

    num, den = mpz(fr.numerator), mpz(fr.denominator)
    if num < 0:
        return None
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        from fractions import Fraction

        return Fraction(int(rn), int(rd))
    return None


def eigenvalues_along_divisor(form, divisor_var):
    """(tangent, transverse) eigenvalues at a simple point on x=0 or y=0.

    The divisor must be invariant, which makes the linear part triangular
    in these coordinates, so both eigenvalues live in the tower.
    """
    (m11, m12), (m21, m22) = form.linear_matrix()
    if divisor_var == "x":
        if not m12.is_zero():
            raise ValueError("x=0 is not invariant for this germ")
        return m22, m11
    if divisor_var == "y":
        if not m21.is_zero():
            raise ValueError("y=0 is not invariant for this germ")
        return m11, m22
    raise ValueError("divisor must be a coordinate axis")


# ---------------------------------------------------------------------------
# reduction over the line at infinity
# ---------------------------------------------------------------------------


@dataclass
class ReductionResult:
    config: Configuration
    roots: list
    omega_prime: list  # roots plus all ordinary centers (the Seidenberg part)

    def point_class(self, pid):
        return self.config.info[pid]["class"]

    def is_dicritical(self, pid):
        return self.config.info[pid].get("dicritical")


def seidenberg_over_infinity(omega, options=AnalysisOptions()):
    """Blow up every non-simple singular point infinitely near Z = 0.

    Returns the full configuration (simple frontier points included) along
    with the id list of the root points and of Omega' (the root points plus
    every ordinary center).  Terminates by Seidenberg's theorem; a
    configurable point budget guards against runaway inputs.
    """
    tower = omega.tower
    cfg = Configuration(tower)
    x = Polynomial.variable(tower, ("x", "y"), "x")
    y = Polynomial.variable(tower, ("x", "y"), "y")
    for (x0, y0), _mult in singular_points_at_infinity(omega):
        if not y0.is_zero():
            chart, trans = "Y", x0 / y0
        else:
            chart, trans = "X", tower.zero()
        a, b = affinize_at(omega, chart)
        if not trans.is_zero():
            shift = {"x": x + Polynomial.constant(tower, ("x", "y"), trans)}
            a, b = a.substitute(shift), b.substitute(shift)
        form = LocalOneForm(a=a, b=b, divisors={}, infinity=y)
        cfg.add_root((x0, y0), chart, trans, form)

    queue = list(cfg.ids())
    roots = list(queue)
    while queue:
        pid = queue.pop(0)
        form = cfg.forms[pid]
        cls = classify(form, options.precision_max)
        cfg.info[pid] = {"class": cls}
        if cls.kind == ORDINARY:
            if len(cfg) >= options.budget_points:
                raise BudgetExceeded(
                    "blow-up budget of %d points exceeded during reduction" % options.budget_points
                )
            dicritical, children = blow_up(cfg, pid)
            cfg.info[pid]["dicritical"] = dicritical
            queue.extend(pt.id for pt, _ in children)
    omega_prime = [pid for pid in cfg.ids() if pid in roots or cfg.info[pid]["class"].kind == ORDINARY]
    return ReductionResult(config=cfg, roots=roots, omega_prime=omega_prime)


def extended_step(config, pid, precision_max=4096):
    """One extended-reduction blow-up at a simple positive-irrational point.

    Registers all singular children in the configuration but returns only
    the extended-reduction-eligible ones (simple with positive real
    eigenvalue ratio), each with its classification.
    """
    cls = config.info[pid]["class"]
    if not cls.extendable():
        raise ValueError("extended_step requires a simple positive-irrational point")
    _, children = blow_up(config, pid)
    out = []
    for pt, form in children:
        ccls = classify(form, precision_max)
        config.info[pt.id] = {"class": ccls}
        if ccls.extendable():
            out.append((pt, form, ccls))
    return out


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CFExpansion:
    digits: tuple
    exact: bool

    def __post_init__(self):
        if any(d < 1 for d in self.digits[1:]) or (self.digits and self.digits[0] < 0):
            raise ValueError("invalid continued fraction digits %s" % (self.digits,))

    def convergent(self):
        from fractions import Fraction

        num, den = 1, 0
        for d in reversed(self.digits):
            num, den = d * num + den, num
        return Fraction(num, den)

    def render(self):
        if not self.digits:
            return "[]"
        head = str(self.digits[0])
        tail = ",".join(str(d) for d in self.digits[1:])
        inner = "%s;%s" % (head, tail) if tail else head
        return "[%s]" % inner + ("" if self.exact else "...")


def continued_fraction(num, den, depth, precision_max=4096):
    """CF digits of num/den > 0: exact Euclid for rationals, certified
    interval floors (with symbolic Gauss steps) otherwise."""
    tower = num.tower
    value = num / den
    if tower.sign(value, cap=precision_max) <= 0:
        raise ValueError("continued fractions need a positive value")
    r = value.as_rational()
    if r is not None:
        digits = []
        p, q = r.numerator, r.denominator
        while q:
            digits.append(p // q)
            p, q = q, p - (p // q) * q
        return CFExpansion(digits=tuple(int(d) for d in digits), exact=True)
    digits = []
    g = value
    for _ in range(depth):
        c = tower.certified_floor(g, cap=precision_max)
        digits.append(c)
        g = (g - c).inverse()  # exact symbolic Gauss step; g was irrational
    return CFExpansion(digits=tuple(digits), exact=False)


# ---------------------------------------------------------------------------
# Prox graphs from continued fractions
# ---------------------------------------------------------------------------

_EXTERNAL = "external-divisor"
_CURVE = "curve"


@dataclass
class ProxChain:
    """Abstract chain emitted by the Euclidean state machine.

    ``prox`` contains in-chain indices only; satellites proximate to the
    divisor predating the chain carry the flag but no in-chain edge.
    """

    multiplicities: list | None
    satellite: list
    prox: list

    def __len__(self):
        return len(self.satellite)

    def graph(self, labels=None):
        from .blowup import proximity_graph

        pts = {i: ((i - 1 if i else None), set(self.prox[i])) for i in range(len(self))}
        return proximity_graph(pts, labels)


def _chain_machine(is_free_step, step, emit_mult, done):
    mults = [emit_mult()]
    satellite = [False]
    prox = [set()]
    frame_t, frame_u = _EXTERNAL, _CURVE
    idx = 0
    while not done():
        if is_free_step():
            new_prox = {idx} | ({frame_u} if isinstance(frame_u, int) else set())
            sat = frame_u is not _CURVE
            frame_t = idx
        else:
            new_prox = {idx} | ({frame_t} if isinstance(frame_t, int) else set())
            sat = True
            frame_u = idx
        step()
        idx += 1
        mults.append(emit_mult())
        satellite.append(sat)
        prox.append(new_prox)
    return mults, satellite, prox


def prox_of(cf, depth=None):
    """The proximity chain encoded by a continued fraction.

    For an exact expansion of p/q the multiplicity sequence is the full
    Euclidean remainder sequence with m0 = q and the chain is finite; for
    a truncated expansion only the stabilized graph prefix is emitted and
    multiplicities are omitted.
    """
    if cf.exact:
        frac = cf.convergent()
        state = [frac.numerator, frac.denominator]

        def is_free():
            return state[0] > state[1]

        def step():
            if state[0] > state[1]:
                state[0] -= state[1]
            else:
                state[1] -= state[0]

        def mult():
            return min(state)

        def done():
            return state[0] == state[1]

        mults, sat, prox = _chain_machine(is_free, step, mult, done)
        return ProxChain(multiplicities=mults, satellite=sat, prox=prox)

    digits = list(cf.digits[: depth if depth is not None else len(cf.digits)])

    def is_free():
        return digits[0] >= 1

    def step():
        if digits[0] >= 1:
            digits[0] -= 1
        else:
            digits[1] -= 1
            if digits[1] == 0:
                del digits[0:2]

    def mult():
        return None

    def done():
        return (not digits) or digits == [0] or (len(digits) == 1 and digits[0] <= 1)

    mults, sat, prox = _chain_machine(is_free, step, mult, done)
    return ProxChain(multiplicities=None, satellite=sat, prox=prox)


def proximity_equalities_hold(chain):
    """Check m_i = sum of in-chain multiplicities proximate to i (exact chains)."""
    if chain.multiplicities is None:
        raise ValueError("needs an exact chain")
    n = len(chain)
    for i in range(n):
        proximate = [j for j in range(n) if i in chain.prox[j]]
        if i == n - 1:
            if chain.multiplicities[i] != 1:
                return False
        elif chain.multiplicities[i] != sum(chain.multiplicities[j] for j in proximate):
            return False
    return True
