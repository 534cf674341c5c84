"""Sparse multivariate polynomials over the coefficient tower.

Monomials are exponent tuples keyed to a fixed variable list; the term
order is graded lexicographic throughout, so canonical printing and
leading-term normalization are deterministic.  Division, gcd (primitive
pseudo-remainder sequences), Sylvester resultants and linear-factor
extraction of binary forms all stay exact over the tower.
"""

from __future__ import annotations

from gmpy2 import isqrt, mpq, mpz

from .fields import FieldElement, Tower, _q, _qpoly_rational_roots, render_qdict


def _grlex(exp):
    return (sum(exp), exp)


class Polynomial:
    """A sparse polynomial with FieldElement coefficients."""

    __slots__ = ("tower", "vars", "terms")

    def __init__(self, tower, vars, terms):
        self.tower = tower
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, tower, vars):
        return cls(tower, vars, {})

    @classmethod
    def constant(cls, tower, vars, c):
        if not isinstance(c, FieldElement):
            c = tower.rational(c)
        return cls(tower, vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, tower, vars, name):
        i = tuple(vars).index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(tower, vars, {exp: tower.one()})

    @classmethod
    def from_dict(cls, tower, vars, d):
        terms = {}
        for e, c in d.items():
            if not isinstance(c, FieldElement):
                c = tower.rational(c)
            terms[tuple(e)] = c
        return cls(tower, vars, terms)

    # -- ring operations --------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars or self.tower is not other.tower:
            raise ValueError("polynomials over different rings")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.tower, self.vars, out)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(self.tower, self.vars, other)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.tower, self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)) or not isinstance(other, Polynomial):
            c = other if isinstance(other, FieldElement) else self.tower.rational(_q(other))
            if c.is_zero():
                return Polynomial.zero(self.tower, self.vars)
            return Polynomial(self.tower, self.vars, {e: k * c for e, k in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                p = c1 * c2
                s = p if s is None else s + p
                out[e] = s
        return Polynomial(self.tower, self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant():
                raise ValueError("polynomial division by a non-constant; use exact_divide")
            other = other.constant_term()
        c = other if isinstance(other, FieldElement) else self.tower.rational(_q(other))
        return self * c.inverse()

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.tower, self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, c):
        return self * c

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset((e, hash(c)) for e, c in self.terms.items())))

    # -- structure queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var):
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def order(self):
        """Order of vanishing at the origin (min total degree); -1 if zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d):
        return Polynomial(self.tower, self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def lowest_part(self):
        return self.homogeneous_part(self.order()) if self.terms else self

    def leading_monomial(self):
        return max(self.terms, key=_grlex)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        """Divide by the graded-lex leading coefficient."""
        if self.is_zero():
            return self
        lc = self.leading_coefficient()
        return self * lc.inverse()

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.tower.zero())

    # -- calculus and substitution ------------------------------------------

    def derivative(self, var):
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = tuple(v - (1 if j == i else 0) for j, v in enumerate(e))
                out[e2] = c * e[i]
        return Polynomial(self.tower, self.vars, out)

    def substitute(self, mapping):
        """Substitute polynomials (or field elements) for variables.

        ``mapping`` maps variable names to Polynomial replacements sharing
        one common target ring; unmapped variables must exist there too.
        """
        target = None
        for v in mapping.values():
            if isinstance(v, Polynomial):
                target = v
                break
        if target is None:
            raise ValueError("substitution needs at least one polynomial image")
        t_vars = target.vars
        images = []
        for name in self.vars:
            if name in mapping:
                img = mapping[name]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(self.tower, t_vars, img)
                images.append(img)
            else:
                images.append(Polynomial.variable(self.tower, t_vars, name))
        out = Polynomial.zero(self.tower, t_vars)
        powers = [{0: Polynomial.constant(self.tower, t_vars, 1)} for _ in self.vars]
        for e, c in sorted(self.terms.items(), key=lambda item: _grlex(item[0])):
            term = Polynomial.constant(self.tower, t_vars, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                if k not in cache:
                    kk = max(cache)
                    acc = cache[kk]
                    while kk < k:
                        acc = acc * images[i]
                        kk += 1
                        cache[kk] = acc
                term = term * cache[k]
            out = out + term
        return out

    def rename(self, new_vars):
        if len(new_vars) != len(self.vars):
            raise ValueError("variable count mismatch")
        return Polynomial(self.tower, tuple(new_vars), dict(self.terms))

    def eval(self, values):
        """Evaluate at FieldElements given per variable name."""
        acc = self.tower.zero()
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * values[self.vars[i]] ** k
            acc = acc + t
        return acc

    # -- univariate views ---------------------------------------------------

    def univariate(self, var):
        """Dense coefficient list (low->high) in var, entries over the rest."""
        i = self.vars.index(var)
        rest = tuple(v for v in self.vars if v != var)
        n = self.degree_in(var)
        out = [Polynomial.zero(self.tower, rest) for _ in range(n + 1)]
        for e, c in self.terms.items():
            re = tuple(v for j, v in enumerate(e) if j != i)
            out[e[i]] = out[e[i]] + Polynomial(self.tower, rest, {re: c})
        return out

    @classmethod
    def from_univariate(cls, coeffs, var, vars):
        tower = coeffs[0].tower
        i = tuple(vars).index(var)
        out = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                full = list(e[:i]) + [k] + list(e[i:])
                out[tuple(full)] = c
        return cls(tower, vars, out)

    # -- rendering ------------------------------------------------------------

    def text(self):
        """Canonical compact text: graded-lex order, explicit signs."""
        if not self.terms:
            return "0"
        chunks = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (self.vars[i] if k == 1 else "%s^%d" % (self.vars[i], k))
                for i, k in enumerate(e)
                if k
            )
            r = c.as_rational()
            if r is not None:
                sign = "-" if r < 0 else "+"
                mag = abs(r)
                if not mono:
                    body = _qstr(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = "%s*%s" % (_qstr(mag), mono)
            else:
                sign = "+"
                cs = str(c)
                body = "(%s)*%s" % (cs, mono) if mono else "(%s)" % cs
            chunks.append((sign, body))
        sign, first = chunks[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in chunks[1:]:
            out += sign + body
        return out

    __str__ = text

    def __repr__(self):
        return "Polynomial(%s)" % self.text()


def _qstr(r):
    return str(r) if r.denominator == 1 else "%d/%d" % (r.numerator, r.denominator)


# ---------------------------------------------------------------------------
# exact division, gcd, resultants
# ---------------------------------------------------------------------------


def exact_divide(f, g):
    """f/g when the division is exact, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    tower, vars = f.tower, f.vars
    g_lm = g.leading_monomial()
    g_lc_inv = g.leading_coefficient().inverse()
    rem = f
    quo = {}
    while not rem.is_zero():
        lm = rem.leading_monomial()
        diff = tuple(a - b for a, b in zip(lm, g_lm))
        if any(d < 0 for d in diff):
            return None
        c = rem.terms[lm] * g_lc_inv
        quo[diff] = c
        rem = rem - Polynomial(tower, vars, {diff: c}) * g
    return Polynomial(tower, vars, quo)


def _active_vars(f, g):
    seen = []
    for v in f.vars:
        if f.degree_in(v) > 0 or g.degree_in(v) > 0:
            seen.append(v)
    return seen


def poly_gcd(f, g):
    """Monic gcd over the tower field (primitive PRS in the first active
    variable, behind a modular coprimality fast path)."""
    from .modcheck import coprimality_certificate

    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    active = _active_vars(f, g)
    if not active:
        return Polynomial.constant(f.tower, f.vars, 1)
    if coprimality_certificate(f, g):
        return Polynomial.constant(f.tower, f.vars, 1)
    if len(active) == 1:
        return _gcd_univariate(f, g, active[0])
    main = active[0]
    cf, pf = _content_pp(f, main)
    cg, pg = _content_pp(g, main)
    cont = poly_gcd(cf, cg)
    a, b = pf, pg
    while True:
        if b.degree_in(main) <= 0:  # b free of main: common part divides a's content
            ca, _ = _content_pp(a, main)
            return (cont * poly_gcd(ca, b)).monic()
        r = _pseudo_rem(a, b, main)
        if r.is_zero():
            _, pp = _content_pp(b, main)
            return (cont * pp).monic()
        _, r = _content_pp(r, main)
        a, b = b, r


def _strip_rational_content(coeffs):
    from .fields import FieldElement, _list_rat_content, _scale_data

    if not coeffs:
        return coeffs
    content = _list_rat_content([c.data for c in coeffs])
    if content == 1:
        return coeffs
    inv = 1 / content
    return [FieldElement(c.tower, _scale_data(c.data, inv)) for c in coeffs]


def _gcd_univariate(f, g, var):
    a = _strip_rational_content([p.constant_term() for p in f.univariate(var)])
    b = _strip_rational_content([p.constant_term() for p in g.univariate(var)])
    while any(not c.is_zero() for c in b):
        b_trim = _trim(b)
        a_trim = _trim(a)
        a, b = b_trim, _strip_rational_content(_urem(a_trim, b_trim))
    a = _trim(a)
    tower = f.tower
    if not a:
        return Polynomial.zero(tower, f.vars)
    inv = a[-1].inverse()
    rest = tuple(v for v in f.vars if v != var)
    coeffs = [Polynomial.constant(tower, rest, c * inv) for c in a]
    return Polynomial.from_univariate(coeffs, var, f.vars)


def _trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _urem(a, b):
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        f = a[-1] * inv
        shift = len(a) - len(b)
        for k, c in enumerate(b):
            a[shift + k] = a[shift + k] - f * c
        a.pop()
        while a and a[-1].is_zero():
            a.pop()
    return a


def _content_pp(f, main):
    coeffs = f.univariate(main)
    cont = None
    for c in coeffs:
        if c.is_zero():
            continue
        cont = c if cont is None else poly_gcd(cont, c)
        if cont.is_constant():
            break
    cont_full = Polynomial.from_univariate([cont], main, f.vars) if cont is not None else None
    if cont is None or cont.is_constant():
        return Polynomial.constant(f.tower, f.vars, 1), f
    pp = exact_divide(f, cont_full)
    return cont_full, pp


def _pseudo_rem(a, b, main):
    au, bu = a.univariate(main), b.univariate(main)
    db = len(bu) - 1
    lc = bu[-1]
    r = _trim_poly(list(au))
    while r and len(r) - 1 >= db:
        f = r[-1]
        shift = len(r) - 1 - db
        r = [c * lc for c in r]
        for k, c in enumerate(bu):
            r[shift + k] = r[shift + k] - f * c
        r.pop()  # leading term cancels exactly
        r = _trim_poly(r)
    if not r:
        return Polynomial.zero(a.tower, a.vars)
    return Polynomial.from_univariate(r, main, a.vars)


def _trim_poly(r):
    while r and r[-1].is_zero():
        r.pop()
    return r


def resultant(f, g, var):
    """Sylvester resultant with respect to var (fraction-free Bareiss)."""
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(f.tower, f.vars)
    fu, gu = f.univariate(var), g.univariate(var)
    m, n = len(fu) - 1, len(gu) - 1
    rest = tuple(v for v in f.vars if v != var)
    one = Polynomial.constant(f.tower, rest, 1)
    zero = Polynomial.zero(f.tower, rest)
    if m == 0:
        return _embed(fu[0] ** n, rest, f.vars)
    if n == 0:
        return _embed(gu[0] ** m, rest, f.vars)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(fu)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(gu)):
            row[i + k] = c
        rows.append(row)
    det = _bareiss_det(rows, one)
    return _embed(det, rest, f.vars)


def _embed(p, rest, vars):
    # p has no main-variable dependence; re-embed into the full ring
    idx = [vars.index(v) for v in rest]
    terms = {}
    for e, c in p.terms.items():
        full = [0] * len(vars)
        for j, v in enumerate(e):
            full[idx[j]] = v
        terms[tuple(full)] = c
    return Polynomial(p.tower, vars, terms)


def _bareiss_det(rows, one):
    n = len(rows)
    sign = 1
    prev = one
    for k in range(n - 1):
        if rows[k][k].is_zero():
            for r in range(k + 1, n):
                if not rows[r][k].is_zero():
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(one.tower, one.vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]
                q = exact_divide(num, prev)
                if q is None:
                    raise ArithmeticError("Bareiss division failed; matrix entries corrupt")
                rows[i][j] = q
            rows[i][k] = Polynomial.zero(one.tower, one.vars)
        prev = rows[k][k]
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# roots of univariate polynomials over the tower
# ---------------------------------------------------------------------------


def tower_sqrt(e):
    """A FieldElement square root of e, or None if none exists in the tower."""
    t = e.tower
    d = _sqrt_data(t, e.data)
    return FieldElement(t, d) if d is not None else None


def _sqrt_data(t, d, exclude=frozenset()):
    if not isinstance(d, tuple):
        if d < 0:
            return None
        num, den = mpz(d.numerator), mpz(d.denominator)
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return mpq(rn, rd)
        # a rational may still be a square of b*s_i for a quadratic symbol s_i
        for i, sym in enumerate(t.symbols):
            if i in exclude or sym.kind != "algebraic" or len(sym.minpoly) != 3:
                continue
            c0, c1 = _q(sym.minpoly[0]), _q(sym.minpoly[1])
            norm = c1 * c1 / 4 - c0  # value of (c1/2 + s)^2 shifted: s*(s+c1) = -c0...
            if norm == 0:
                continue
            b2 = d / norm
            b = _sqrt_data(t, b2, exclude | {i})
            if b is None:
                continue
            a = t._mul(b, c1 / 2)
            w = t._make_alg(i, [a, b])
            if t._add(t._mul(w, w), t._neg(d)) == mpq(0):
                return w
        return None
    if d[0] == "a":
        return _sqrt_alg(t, d)
    return _sqrt_trans(t, d)


def _sqrt_alg(t, d):
    _, i, coeffs = d
    minpoly = t.symbols[i].minpoly
    if len(minpoly) != 3:
        return None  # only quadratic layers are searched
    c0, c1 = _q(minpoly[0]), _q(minpoly[1])
    u = coeffs[0]
    v = coeffs[1] if len(coeffs) > 1 else mpq(0)
    if not isinstance(v, tuple) and v == 0:
        # try w = a with a^2 = u, then w = b*s with (b*s)^2 = b^2(-c1*s - c0)
        a = _sqrt_data(t, u)
        if a is not None:
            return a
        if c1 == 0:
            b2 = t._mul(u, t._inv(t._neg(c0)))
            b = _sqrt_data(t, b2)
            if b is not None:
                return t._make_alg(i, [mpq(0), b])
        return None
    # w = a + b*s: solve B=b^2 from B^2(c1^2-4c0) + B(2vc1-4u) + v^2 = 0
    A = c1 * c1 - 4 * c0
    Bq = t._add(t._mul(_q(2) * c1, v), t._neg(t._mul(_q(4), u)))
    C = t._mul(v, v)
    for B in _quadratic_roots_data(t, A, Bq, C):
        b = _sqrt_data(t, B)
        if b is None:
            continue
        if _iszero_data(b):
            continue
        # a = (v + B*c1/ ... ) from 2ab - b^2 c1 = v  =>  a = (v + b^2 c1)/(2b)
        a = t._mul(t._add(v, t._mul(t._mul(b, b), c1)), t._inv(t._mul(_q(2), b)))
        w = t._make_alg(i, [a, b])
        if t._add(t._mul(w, w), t._neg(d)) == mpq(0):
            return w
    return None


def _iszero_data(d):
    return not isinstance(d, tuple) and d == 0


def _quadratic_roots_data(t, A, B, C):
    """Roots of A x^2 + B x + C over the tower (A, B, C are data)."""
    if _iszero_data(A):
        if _iszero_data(B):
            return []
        return [t._mul(t._neg(C), t._inv(B))]
    disc = t._add(t._mul(B, B), t._neg(t._mul(_q(4), t._mul(A, C))))
    s = _sqrt_data(t, disc)
    if s is None:
        return []
    inv2a = t._inv(t._mul(_q(2), A))
    r1 = t._mul(t._add(t._neg(B), s), inv2a)
    r2 = t._mul(t._add(t._neg(B), t._neg(s)), inv2a)
    return [r1] if r1 == r2 else [r1, r2]


def _sqrt_trans(t, d):
    _, i, num, den = d
    sn = _psqrt(t, list(num))
    if sn is None:
        return None
    sd = _psqrt(t, list(den))
    if sd is None:
        return None
    return t._make_trans(i, sn, sd)


def _psqrt(t, p):
    """Square root of a dense univariate polynomial over a tower layer."""
    if not p:
        return []
    if len(p) == 1:
        r = _sqrt_data(t, p[0])
        return [r] if r is not None else None
    if (len(p) - 1) % 2:
        return None
    lc = p[-1]
    rl = _sqrt_data(t, lc)
    if rl is None:
        return None
    monic = [t._mul(c, t._inv(lc)) for c in p]
    parts = _yun_squarefree(t, monic)
    half = [mpq(1)]
    for factor, mult in parts:
        if mult % 2:
            return None
        for _ in range(mult // 2):
            half = t._pmul(half, factor)
    return [t._mul(c, rl) for c in half]


def _yun_squarefree(t, p):
    """Yun's squarefree decomposition of a monic dense polynomial."""
    dp = [t._mul(c, mpq(k)) for k, c in enumerate(p)][1:]
    g = t._pgcd(p, dp)
    out = []
    if len(g) == 1:
        return [(p, 1)]
    c = t._pdiv_exact(p, g)
    d = t._padd(t._pdiv_exact(dp, g), [t._neg(x) for x in _pderiv(t, c)])
    k = 1
    while len(c) > 1:
        a = t._pgcd(c, d)
        if len(a) > 1:
            out.append((a, k))
        c = t._pdiv_exact(c, a)
        d = t._padd(t._pdiv_exact(d, a), [t._neg(x) for x in _pderiv(t, c)])
        k += 1
    return out


def _pderiv(t, p):
    return [t._mul(c, mpq(k)) for k, c in enumerate(p)][1:]


def rational_roots(coeffs):
    """Rational roots (with multiplicity) of a univariate poly over the tower.

    ``coeffs`` is a dense low-to-high list of FieldElements.  A rational can
    only be a root if it kills every Q[symbols]-component, so the search
    reduces to the rational gcd of the component polynomials.
    """
    if not coeffs:
        return []
    tower = coeffs[0].tower
    k = len(tower.symbols)
    components = {}
    dens = []
    flats = [tower.flatten(c.data) for c in coeffs]
    for _, dc in flats:
        dens.append(dc)
    for i, (nc, _) in enumerate(flats):
        scaled = dict(nc)
        for j, dj in enumerate(dens):
            if j != i:
                scaled = _fd_mul_local(scaled, dj)
        for mono, q in scaled.items():
            components.setdefault(mono, {})[i] = q
    qg = None
    n = len(coeffs)
    for mono in sorted(components):
        vec = [components[mono].get(i, mpq(0)) for i in range(n)]
        qg = vec if qg is None else _qpoly_gcd(qg, vec)
        if len(_qtrim(qg)) <= 1:
            return []
    if qg is None:
        return []
    roots = []
    for r in _qpoly_rational_roots(tuple(_qtrim(qg))):
        mult = _root_multiplicity(coeffs, tower.rational(r))
        if mult:
            roots.append((tower.rational(r), mult))
    return roots


def _fd_mul_local(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            w = out.get(key, mpq(0)) + va * vb
            if w == 0:
                out.pop(key, None)
            else:
                out[key] = w
    return out


def _qtrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_gcd(a, b):
    a, b = _qtrim(a), _qtrim(b)
    while b:
        r = list(a)
        while len(r) >= len(b):
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= f * c
            r.pop()
            r = _qtrim(r)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _root_multiplicity(coeffs, root):
    mult = 0
    cur = list(coeffs)
    while len(cur) > 1:
        val = cur[0].tower.zero()
        for c in reversed(cur):
            val = val * root + c
        if not val.is_zero():
            break
        cur = _synthetic_divide(cur, root)
        mult += 1
    return mult


def _synthetic_divide(coeffs, root):
    out = [None] * (len(coeffs) - 1)
    carry = coeffs[-1]
    for i in range(len(coeffs) - 2, -1, -1):
        out[i] = carry
        carry = coeffs[i] + carry * root
    return out


def univariate_roots_in_tower(coeffs):
    """(roots-with-multiplicity, residual-coeffs) of a dense univariate poly.

    Rational roots are found completely; irrational tower roots are found
    whenever they live in a quadratic residual whose discriminant has a
    tower square root.  Anything else stays in the residual factor.
    """
    tower = coeffs[0].tower
    cur = _trim(list(coeffs))
    found = []
    progress = True
    while progress and len(cur) > 1:
        progress = False
        for root, mult in rational_roots(cur):
            found.append((root, mult))
            for _ in range(mult):
                cur = _synthetic_divide(cur, root)
            cur = _trim(cur)
            progress = True
        if len(cur) == 3:
            a, b, c = cur[2], cur[1], cur[0]
            disc = b * b - 4 * a * c
            s = tower_sqrt(disc)
            if s is not None:
                inv2a = (a * 2).inverse()
                r1 = (-b + s) * inv2a
                r2 = (-b - s) * inv2a
                if r1 == r2:
                    found.append((r1, 2))
                else:
                    found.append((r1, 1))
                    found.append((r2, 1))
                cur = [tower.one()]
                progress = True
    return found, cur


def linear_point_factors(B, xvar, yvar):
    """Split a binary form into tower-rational linear factors.

    Returns ``(points, residual)`` where points is a list of
    ``((x0, y0), multiplicity)`` projective roots on the line, normalized to
    ``(1, y0)``, ``(0, 1)`` convention is encoded as x0=0,y0=1 and finite
    roots as (root, 1) of the dehomogenization in x/y; residual is the
    product of factors with no tower-rational root.
    """
    if B.is_zero():
        raise ValueError("zero binary form")
    ix, iy = B.vars.index(xvar), B.vars.index(yvar)
    tower = B.tower
    ax = min(e[ix] for e in B.terms)
    ay = min(e[iy] for e in B.terms)
    points = []
    if ax:
        points.append(((tower.zero(), tower.one()), ax))
    if ay:
        points.append(((tower.one(), tower.zero()), ay))
    core_terms = {}
    for e, c in B.terms.items():
        e2 = list(e)
        e2[ix] -= ax
        e2[iy] -= ay
        core_terms[tuple(e2)] = c
    core = Polynomial(tower, B.vars, core_terms)
    if core.is_constant():
        return points, Polynomial.constant(tower, B.vars, core.constant_term())
    # dehomogenize: roots (t : 1) of core(t, 1); none of them is 0 or infinite
    dense = [tower.zero()] * (core.degree() + 1)
    for e, c in core.terms.items():
        dense[e[ix]] = c
    roots, residual = univariate_roots_in_tower(dense)
    roots.sort(key=lambda rm: _root_sort_key(rm[0]))
    for root, mult in roots:
        points.append(((root, tower.one()), mult))
    res_terms = {}
    deg = len(residual) - 1
    for k, c in enumerate(residual):
        if not c.is_zero():
            e = [0] * len(B.vars)
            e[ix] = k
            e[iy] = deg - k
            res_terms[tuple(e)] = c
    res = Polynomial(tower, B.vars, res_terms)
    return points, res


def _root_sort_key(root):
    r = root.as_rational()
    if r is not None:
        return (0, float(r), "")
    return (1, 0.0, str(root))


def content_free_pair(a, b):
    """Remove the common polynomial factor of a pair; returns (a', b', content)."""
    one = Polynomial.constant(a.tower, a.vars, 1)
    if a.is_zero() and b.is_zero():
        return a, b, one
    g = poly_gcd(a, b)
    if g.is_constant():
        return a, b, one
    return exact_divide(a, g), exact_divide(b, g), g
