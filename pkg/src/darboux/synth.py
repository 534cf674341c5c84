"""Oracle constructions: vector fields with prescribed product integrals.

Given curves f_1..f_r and exponents a_1..a_r, the 1-form

    a(x,y) dx + b(x,y) dy,
    a = sum_i a_i (prod_{j != i} f_j) df_i/dx,
    b = sum_i a_i (prod_{j != i} f_j) df_i/dy,

has prod f_i^{a_i} as a first integral; the corresponding system is the
dual p = b, q = -a.  The curve families generated here have one place at
infinity by construction: graphs y - r(x), and Newton-degenerate curves
y^n - x^m plus monomials strictly below the segment, gcd(n, m) = 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .blowup import resolve_curve_germ
from .errors import UnsupportedAlgebraicPoint
from .poly import Polynomial, linear_point_factors, poly_gcd
from .projective import AFFINE_VARS, AffineSystem, cofactor, dehomogenize, homogenize


@dataclass
class DpwaiSpec:
    """Curves with one place at infinity plus positive exponents."""

    curves: list
    exponents: list

    def __post_init__(self):
        if len(self.curves) < 2 or len(self.curves) != len(self.exponents):
            raise ValueError("need r >= 2 curves with matching exponents")
        tower = self.curves[0].tower
        for e in self.exponents:
            if tower.sign(e) <= 0:
                raise ValueError("exponents must be strictly positive")
        for i, f in enumerate(self.curves):
            if f.degree() < 1:
                raise ValueError("curves must be nonconstant")
            if not check_one_place(homogenize(f)):
                raise ValueError("curve %s does not have one place at infinity" % f.text())
        for i in range(len(self.curves)):
            for j in range(i + 1, len(self.curves)):
                if _pencil_related(self.curves[i], self.curves[j]):
                    raise ValueError(
                        "curves %d and %d differ by a constant scaling/shift" % (i + 1, j + 1)
                    )


def _pencil_related(f, g):
    """True iff f = c*g + const for some scalar c (their nonconstant parts
    are proportional)."""
    nf = f - Polynomial.constant(f.tower, f.vars, f.constant_term())
    ng = g - Polynomial.constant(g.tower, g.vars, g.constant_term())
    if nf.is_zero() or ng.is_zero():
        return True
    lm = nf.leading_monomial()
    if lm != ng.leading_monomial():
        return False
    c = nf.leading_coefficient() / ng.leading_coefficient()
    return nf == ng * c


def build_form(spec):
    """The system dual to the closed form of the prescribed integral.

    Returns (system, content): the gcd stripped from the raw pair is
    reported, never silently dropped.  Construction is verified on the
    spot: every curve must be invariant with cofactors summing to zero
    against the exponents.
    """
    tower = spec.curves[0].tower
    a = Polynomial.zero(tower, AFFINE_VARS)
    b = Polynomial.zero(tower, AFFINE_VARS)
    for i, (f, alpha) in enumerate(zip(spec.curves, spec.exponents)):
        rest = Polynomial.constant(tower, AFFINE_VARS, 1)
        for j, g in enumerate(spec.curves):
            if j != i:
                rest = rest * g
        a = a + rest * f.derivative("x") * alpha
        b = b + rest * f.derivative("y") * alpha
    system, content = AffineSystem.from_one_form(a, b)
    residual = Polynomial.zero(tower, AFFINE_VARS)
    for f, alpha in zip(spec.curves, spec.exponents):
        k = cofactor(system, f)
        if k is None:
            raise AssertionError("constructed system lost invariance of %s" % f.text())
        residual = residual + k * alpha
    if not residual.is_zero():
        raise AssertionError("constructed cofactors do not cancel against the exponents")
    return system, content


def check_one_place(F, budget=200):
    """Does the projective curve F = 0 have only one place at infinity?

    Requires F reduced (squarefree); the curve must meet Z = 0 in a single
    point and be analytically irreducible there, decided by following the
    embedded resolution of the germ.
    """
    if F.is_constant():
        raise ValueError("constant polynomial is not a curve")
    tower = F.tower
    if not _squarefree(F):
        return False
    B = F.substitute(
        {
            "X": Polynomial.variable(tower, F.vars, "X"),
            "Y": Polynomial.variable(tower, F.vars, "Y"),
            "Z": Polynomial.zero(tower, F.vars),
        }
    )
    if B.is_zero():
        return False  # Z divides F: the line at infinity is a component
    points, residual = linear_point_factors(B, "X", "Y")
    if not residual.is_constant():
        return False  # several conjugate points at infinity
    if len(points) != 1:
        return False
    (x0, y0), _ = points[0]
    x = Polynomial.variable(tower, AFFINE_VARS, "x")
    y = Polynomial.variable(tower, AFFINE_VARS, "y")
    if not y0.is_zero():
        trans = x0 / y0
        sub = {"X": x + Polynomial.constant(tower, AFFINE_VARS, trans), "Y": Polynomial.constant(tower, AFFINE_VARS, 1), "Z": y}
    else:
        sub = {"X": Polynomial.constant(tower, AFFINE_VARS, 1), "Y": x, "Z": y}
    germ = F.substitute(sub)
    if germ.order() == 1:
        return True  # smooth at infinity, hence unibranched
    try:
        resolve_curve_germ(germ, budget)
    except ValueError:
        return False
    return True


def _squarefree(F):
    g = None
    for v in F.vars:
        d = F.derivative(v)
        if d.is_zero():
            continue
        g = poly_gcd(F, d) if g is None else poly_gcd(g, d)
        if g.is_constant():
            return True
    return g is not None and g.is_constant()


def random_one_place_curve(family, rng, tower=None):
    """A random curve with one place at infinity.

    Family "A": graphs y - r(x) with r rational of degree 1..4.  Family
    "B": y^n - x^m plus monomials x^i y^j strictly below the Newton
    segment (i*n + j*m < n*m), with gcd(n, m) = 1 and m > n >= 2.
    """
    from .fields import Tower

    tower = tower or Tower([])
    x = Polynomial.variable(tower, AFFINE_VARS, "x")
    y = Polynomial.variable(tower, AFFINE_VARS, "y")
    if family == "A":
        deg = rng.randint(1, 4)
        r = Polynomial.zero(tower, AFFINE_VARS)
        for k in range(deg + 1):
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if k == deg and c == 0:
                c = Fraction(1)
            r = r + x**k * tower.rational(c)
        curve = y - r
    elif family == "B":
        n, m = rng.choice([(2, 3), (2, 5), (3, 4), (3, 5)])
        curve = y**n - x**m
        for i in range(m):
            for j in range(n):
                if (i, j) == (0, 0) or i * n + j * m >= n * m:
                    continue
                if rng.random() < 0.35:
                    c = rng.randint(-3, 3)
                    if c:
                        curve = curve + x**i * y**j * tower.rational(c)
    else:
        raise ValueError("unknown family %r" % (family,))
    assert check_one_place(homogenize(curve)), "family construction must stay one-place"
    return curve


def admissible_below_segment(n, m, i, j):
    """Is the monomial x^i y^j strictly below the Newton segment of y^n - x^m?"""
    return i * n + j * m < n * m


def random_spec(seed, tower, families=("A", "B"), r_choices=(2, 3)):
    """A seeded DpwaiSpec with mixed symbolic exponents.

    The exponent vector always mixes a transcendental multiple with a pure
    rational: since every intersection number is positive, that mix rules
    out any positive rational beta with beta*a_i = sum rho_ji a_j, keeping
    the spec genuinely DPWAI.
    """
    rng = random.Random(seed)
    r = rng.choice(list(r_choices))
    curves = []
    guard = 0
    while len(curves) < r:
        guard += 1
        if guard > 60:
            raise RuntimeError("could not sample %d pairwise-independent curves" % r)
        fam = rng.choice(list(families))
        cand = random_one_place_curve(fam, rng, tower)
        if any(_pencil_related(cand, c) for c in curves):
            continue
        if any(not poly_gcd(cand, c).is_constant() for c in curves):
            continue
        curves.append(cand)
    symbols = [s.name for s in tower.symbols if s.kind == "transcendental"]
    if not symbols:
        raise ValueError("random specs need a transcendental symbol in the tower")
    exponents = [tower.symbol(symbols[0]) * rng.randint(1, 3)]
    for _ in range(r - 2):
        if rng.random() < 0.5:
            exponents.append(tower.symbol(rng.choice(symbols)) * rng.randint(1, 3))
        else:
            exponents.append(tower.rational(rng.randint(1, 4)))
    exponents.append(tower.rational(rng.randint(1, 4)))
    return DpwaiSpec(curves=curves, exponents=exponents)
