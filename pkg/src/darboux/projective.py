"""Projectivization of planar systems and the view from the line at infinity.

The primary input is the affine system (xdot = p, ydot = q), equivalent to
the 1-form p dy - q dx.  Its projectivization is the degree d+1 form

    Omega = P (Y dZ - Z dY) + Q (Z dX - X dZ),    R = 0,

with P = Z^d p(X/Z, Y/Z) and Q = Z^d q(X/Z, Y/Z); the line Z = 0 is then
invariant.  A raw 1-form input a dx + b dy is converted through the dual
convention p = b, q = -a, which is the orientation that reproduces the
published invariant curves of the reference configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInfinity, InputError, UnsupportedAlgebraicPoint
from .poly import Polynomial, content_free_pair, exact_divide, linear_point_factors, poly_gcd

AFFINE_VARS = ("x", "y")
PROJ_VARS = ("X", "Y", "Z")


@dataclass(frozen=True)
class AffineSystem:
    """The polynomial system xdot = p(x,y), ydot = q(x,y), gcd(p, q) = 1."""

    p: Polynomial
    q: Polynomial

    def __post_init__(self):
        if self.p.vars != AFFINE_VARS or self.q.vars != AFFINE_VARS:
            raise InputError("system polynomials must live in variables (x, y)")
        if self.p.is_zero() and self.q.is_zero():
            raise InputError("the zero vector field has no reduction")
        if self.degree < 1:
            raise InputError("constant vector fields are out of scope (degree must be >= 1)")
        g = poly_gcd(self.p, self.q)
        if not g.is_constant():
            raise InputError("p and q share the factor %s; inputs must be coprime" % g.text())

    @property
    def degree(self):
        return max(self.p.degree(), self.q.degree())

    @property
    def tower(self):
        return self.p.tower

    @classmethod
    def from_one_form(cls, a, b):
        """Build the system dual to a dx + b dy (p = b, q = -a), stripping
        and reporting any common content of the pair."""
        a2, b2, content = content_free_pair(a, b)
        return cls(p=b2, q=-a2), content


@dataclass(frozen=True)
class ProjectiveOneForm:
    """Triple (P, Q, R) of equal-degree homogeneous forms in X, Y, Z."""

    P: Polynomial
    Q: Polynomial
    R: Polynomial

    def __post_init__(self):
        degs = set()
        for f in (self.P, self.Q, self.R):
            if f.vars != PROJ_VARS:
                raise ValueError("projective forms live in (X, Y, Z)")
            if not f.is_homogeneous():
                raise ValueError("projective data must be homogeneous")
            if not f.is_zero():
                degs.add(f.degree())
        if len(degs) != 1:
            raise ValueError("P, Q, R must share one degree")

    @property
    def degree(self):
        return max(f.degree() for f in (self.P, self.Q, self.R))

    @property
    def tower(self):
        return self.P.tower

    def expanded_coefficients(self):
        """The (A, B, C) with Omega = A dX + B dY + C dZ."""
        X = Polynomial.variable(self.tower, PROJ_VARS, "X")
        Y = Polynomial.variable(self.tower, PROJ_VARS, "Y")
        Z = Polynomial.variable(self.tower, PROJ_VARS, "Z")
        A = Z * self.Q - Y * self.R
        B = X * self.R - Z * self.P
        C = Y * self.P - X * self.Q
        return A, B, C


def homogenize(f, degree=None):
    """Z^d f(X/Z, Y/Z) as a form in (X, Y, Z)."""
    d = f.degree() if degree is None else degree
    if d < f.degree():
        raise ValueError("homogenization degree too small")
    terms = {}
    for e, c in f.terms.items():
        terms[(e[0], e[1], d - e[0] - e[1])] = c
    return Polynomial(f.tower, PROJ_VARS, terms)


def dehomogenize(F):
    """F(x, y, 1) in the affine variables."""
    terms = {}
    z = len(PROJ_VARS) - 1
    for e, c in F.terms.items():
        key = (e[0], e[1])
        cur = terms.get(key)
        terms[key] = c if cur is None else cur + c
    return Polynomial(F.tower, AFFINE_VARS, terms)


def projectivize(system):
    """The projective 1-form of the system; R = 0 keeps Z = 0 invariant."""
    d = system.degree
    return ProjectiveOneForm(
        P=homogenize(system.p, d),
        Q=homogenize(system.q, d),
        R=Polynomial.zero(system.tower, PROJ_VARS),
    )


def infinity_form(omega):
    """The binary form Y P(X,Y,0) - X Q(X,Y,0) cutting the singular points on Z=0."""
    tower = omega.tower
    X = Polynomial.variable(tower, PROJ_VARS, "X")
    Y = Polynomial.variable(tower, PROJ_VARS, "Y")
    zero_z = {"Z": Polynomial.zero(tower, PROJ_VARS)}
    return (Y * omega.P - X * omega.Q).substitute(zero_z)


def singular_points_at_infinity(omega):
    """Tower-rational singular points on the line at infinity.

    Returns a list of ((X0, Y0), multiplicity) with the projective
    normalization (x, 1) or (1, 0).  Raises DegenerateInfinity when every
    point of Z = 0 is singular and UnsupportedAlgebraicPoint when some
    singular direction has no coordinates in the tower.
    """
    B = infinity_form(omega)
    if B.is_zero():
        raise DegenerateInfinity("Y*P - X*Q vanishes on Z=0: every point at infinity is singular")
    points, residual = linear_point_factors(B, "X", "Y")
    if not residual.is_constant():
        raise UnsupportedAlgebraicPoint(
            "singular directions at infinity outside the declared tower: residual %s" % residual.text()
        )
    return points


def cofactor(system, f):
    """The polynomial k with p f_x + q f_y = k f, or None if f=0 is not invariant."""
    if f.is_constant():
        raise ValueError("cofactors are defined for nonconstant curves")
    lie = system.p * f.derivative("x") + system.q * f.derivative("y")
    k = exact_divide(lie, f)
    if k is not None and k.degree() > system.degree - 1:
        raise AssertionError("cofactor degree exceeds d-1 with Z=0 invariant")
    return k


def affinize_at(omega, chart):
    """Restrict Omega to a coordinate chart as a local form a dx + b dy.

    Chart "Z" uses (x, y) = (X/Z, Y/Z); chart "X" uses (Y/X, Z/X); chart
    "Y" uses (X/Y, Z/Y).  In the X and Y charts the line at infinity is
    the local curve y = 0.  With R = 0 the Z chart gives exactly
    p dy - q dx.
    """
    tower = omega.tower
    x = Polynomial.variable(tower, AFFINE_VARS, "x")
    y = Polynomial.variable(tower, AFFINE_VARS, "y")

    def local(F, point_one):
        # substitute the chart parametrization into a form component
        subs = {
            "X": {"X": Polynomial.constant(tower, AFFINE_VARS, 1), "Y": x, "Z": y},
            "Y": {"X": x, "Y": Polynomial.constant(tower, AFFINE_VARS, 1), "Z": y},
            "Z": {"X": x, "Y": y, "Z": Polynomial.constant(tower, AFFINE_VARS, 1)},
        }[point_one]
        return F.substitute(subs)

    P, Q, R = (local(F, chart) for F in (omega.P, omega.Q, omega.R))
    if chart == "Z":
        a = y * R - Q
        b = P - x * R
    elif chart == "X":
        a = y * P - R
        b = Q - x * P
    elif chart == "Y":
        a = R - y * Q
        b = x * Q - P
    else:
        raise ValueError("chart must be one of X, Y, Z")
    return a, b
