"""Fast modular coprimality certificates for tower polynomials.

Reducing coefficients modulo a large prime (transcendental symbols mapped
to fixed residues, algebraic symbols to generators of finite-field
extensions by their minimal polynomials) is a ring homomorphism wherever
no denominator vanishes, and a monic common factor keeps its leading
monomial under the reduction.  For a bivariate pair the certificate is:

* a common factor free of y divides both y-contents, whose gcd is
  univariate and cheap to test; and
* a common factor involving y survives specialization x -> r whenever the
  leading y-coefficient of one input is nonzero at r (a divisor's leading
  coefficient divides the input's), so a constant gcd of the specialized
  univariates rules it out.

Everything runs over a finite field, so the test costs microseconds.  A
True return certifies gcd(f, g) constant; None means "no certificate"
and callers fall back to the exact computation.
"""

from __future__ import annotations

_PRIMES = (2147483629, 2147483587, 2147483563, 2147483549)


class NoCertificate(Exception):
    pass


class _ModTower:
    """GF(p) extended by the algebraic minimal polynomials, dense nesting.

    An element of layer k is a tuple of exactly deg_k elements of layer
    k-1 (layer -1 elements are ints mod p), so the representation is
    unambiguous and all public operations work on top-level elements.
    """

    def __init__(self, p, minpolys):
        self.p = p
        self.top = len(minpolys) - 1
        self.dims = [len(mp) - 1 for mp in minpolys]
        # minimal polynomial coefficients embedded at their layer - 1
        self.minpolys = [
            [self._embed_int(c, level - 1) for c in mp] for level, mp in enumerate(minpolys)
        ]

    # -- shape helpers ----------------------------------------------------

    def _embed_int(self, c, level):
        out = c % self.p
        for lv in range(level + 1):
            out = (out,) + tuple(self.zero(lv - 1) for _ in range(self.dims[lv] - 1))
        return out

    def zero(self, level=None):
        if level is None:
            level = self.top
        return self._embed_int(0, level)

    def one(self, level=None):
        if level is None:
            level = self.top
        return self._embed_int(1, level)

    def is_zero(self, a):
        if isinstance(a, tuple):
            return all(self.is_zero(c) for c in a)
        return a == 0

    # -- field operations (top level unless stated) -------------------------

    def add(self, a, b):
        if isinstance(a, tuple):
            return tuple(self.add(x, y) for x, y in zip(a, b))
        return (a + b) % self.p

    def neg(self, a):
        if isinstance(a, tuple):
            return tuple(self.neg(c) for c in a)
        return (-a) % self.p

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b, level=None):
        if not isinstance(a, tuple):
            return (a * b) % self.p
        if level is None:
            level = self.top
        dim = self.dims[level]
        conv = [self.zero(level - 1)] * (2 * dim - 1)
        for i, xx in enumerate(a):
            if self.is_zero(xx):
                continue
            for j, yy in enumerate(b):
                conv[i + j] = self.add(conv[i + j], self.mul(xx, yy, level - 1))
        # reduce modulo the layer's minimal polynomial
        mp = self.minpolys[level]
        for k in range(len(conv) - 1, dim - 1, -1):
            c = conv[k]
            if self.is_zero(c):
                continue
            for t in range(dim):
                conv[k - dim + t] = self.sub(conv[k - dim + t], self.mul(c, mp[t], level - 1))
        return tuple(conv[:dim])

    def inv(self, a, level=None):
        if not isinstance(a, tuple):
            a %= self.p
            if a == 0:
                raise ZeroDivisionError
            return pow(a, self.p - 2, self.p)
        if level is None:
            level = self.top
        r0 = list(self.minpolys[level])  # monic, leading 1 at index dim
        r1 = [c for c in a]
        s0, s1 = [], [self.one(level - 1)]
        while _ptrim(self, r1):
            q, r = self._polydivmod(level, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._polysub(level, s0, self._polymul(level, q, s1))
        r0 = _ptrim(self, r0)
        if len(r0) != 1:
            raise NoCertificate("element not invertible at this prime")
        c = self.inv(r0[0], level - 1)
        out = [self.mul(c, s, level - 1) for s in s0]
        out += [self.zero(level - 1)] * (self.dims[level] - len(out))
        return tuple(out[: self.dims[level]])

    # -- list polynomials over layer-1 elements ------------------------------

    def _polymul(self, level, a, b):
        if not a or not b:
            return []
        out = [self.zero(level - 1)] * (len(a) + len(b) - 1)
        for i, xx in enumerate(a):
            for j, yy in enumerate(b):
                out[i + j] = self.add(out[i + j], self.mul(xx, yy, level - 1))
        return out

    def _polysub(self, level, a, b):
        n = max(len(a), len(b))
        z = self.zero(level - 1)
        out = []
        for i in range(n):
            xx = a[i] if i < len(a) else z
            yy = b[i] if i < len(b) else z
            out.append(self.sub(xx, yy))
        return _ptrim(self, out)

    def _polydivmod(self, level, a, b):
        a = _ptrim(self, list(a))
        b = _ptrim(self, list(b))
        inv_lc = self.inv(b[-1], level - 1)
        q = [self.zero(level - 1)] * max(0, len(a) - len(b) + 1)
        while len(a) >= len(b):
            f = self.mul(a[-1], inv_lc, level - 1)
            q[len(a) - len(b)] = f
            for k, c in enumerate(b):
                idx = len(a) - len(b) + k
                a[idx] = self.sub(a[idx], self.mul(f, c, level - 1))
            a.pop()
            a = _ptrim(self, a)
        return q, a


def _ptrim(ctx, v):
    v = list(v)
    while v and ctx.is_zero(v[-1]):
        v.pop()
    return v


def _build_context(tower, p, salt):
    minpolys = []
    values = {}
    level_of = {}
    for i, sym in enumerate(tower.symbols):
        if sym.kind == "algebraic":
            level_of[i] = len(minpolys)
            mp = []
            for c in sym.minpoly:
                den = int(c.denominator) % p
                if den == 0:
                    raise NoCertificate("denominator vanishes mod p")
                mp.append(int(c.numerator) % p * pow(den, p - 2, p) % p)
            minpolys.append(tuple(mp[:-1]))  # store without the monic lead
        else:
            values[i] = (1299721 * (i + 1) * (salt + 2) + 17) % p
    ctx = _ModTower(p, [mp + (1,) for mp in minpolys])
    for level in range(len(minpolys)):
        if not _irreducible_mod(ctx, level):
            raise NoCertificate("minimal polynomial splits mod p")
    gens = {}
    for i, lv in level_of.items():
        coeffs = [ctx.zero(lv - 1), ctx.one(lv - 1)] + [ctx.zero(lv - 1)] * (ctx.dims[lv] - 2)
        g = tuple(coeffs[: ctx.dims[lv]])
        for up in range(lv + 1, ctx.top + 1):
            g = (g,) + tuple(ctx.zero(up - 1) for _ in range(ctx.dims[up] - 1))
        gens[i] = g
    return ctx, values, gens


def _irreducible_mod(ctx, level):
    dim = ctx.dims[level]
    if dim <= 1:
        return True
    q = ctx.p
    for lv in range(level):
        q **= ctx.dims[lv]
    mp_full = list(ctx.minpolys[level])
    x = [ctx.zero(level - 1), ctx.one(level - 1)]
    acc = list(x)
    for _ in range(dim // 2):
        acc = _powmod_poly(ctx, level, acc, q, mp_full)
        diff = ctx._polysub(level, acc, x)
        if not diff:
            return False
        g = _polygcd_mod(ctx, level, mp_full, diff)
        if len(g) > 1:
            return False
    return True


def _powmod_poly(ctx, level, base, e, mp):
    result = [ctx.one(level - 1)]
    b = list(base)
    while e:
        if e & 1:
            result = ctx._polydivmod(level, ctx._polymul(level, result, b), mp)[1]
        b = ctx._polydivmod(level, ctx._polymul(level, b, b), mp)[1]
        e >>= 1
    return result


def _polygcd_mod(ctx, level, a, b):
    a, b = _ptrim(ctx, a), _ptrim(ctx, b)
    while b:
        _, r = ctx._polydivmod(level, a, b)
        a, b = b, r
    return a


def _convert_data(ctx, values, gens, d, p):
    if not isinstance(d, tuple):
        den = int(d.denominator) % p
        if den == 0:
            raise NoCertificate("denominator vanishes mod p")
        v = int(d.numerator) % p * pow(den, p - 2, p) % p
        return ctx._embed_int(v, ctx.top)
    if d[0] == "a":
        g = gens[d[1]]
        acc = ctx.zero()
        for c in reversed(d[2]):
            acc = ctx.add(ctx.mul(acc, g), _convert_data(ctx, values, gens, c, p))
        return acc
    v = ctx._embed_int(values[d[1]], ctx.top)
    num = ctx.zero()
    for c in reversed(d[2]):
        num = ctx.add(ctx.mul(num, v), _convert_data(ctx, values, gens, c, p))
    den = ctx.zero()
    for c in reversed(d[3]):
        den = ctx.add(ctx.mul(den, v), _convert_data(ctx, values, gens, c, p))
    if ctx.is_zero(den):
        raise NoCertificate("layer denominator vanishes at the chosen residues")
    return ctx.mul(num, ctx.inv(den))


def coprimality_certificate(f, g):
    """True certifies gcd(f, g) constant; None means no certificate."""
    active = [
        i
        for i in range(len(f.vars))
        if any(e[i] for e in f.terms) or any(e[i] for e in g.terms)
    ]
    if len(active) > 2:
        return None
    tower = f.tower
    for salt, p in enumerate(_PRIMES):
        try:
            ctx, values, gens = _build_context(tower, p, salt)
            fm = _convert_terms(ctx, values, gens, f, p)
            gm = _convert_terms(ctx, values, gens, g, p)
            if fm is None or gm is None:
                continue
            return _certify(ctx, fm, gm, active)
        except (NoCertificate, ZeroDivisionError):
            continue
    return None


def _convert_terms(ctx, values, gens, f, p):
    terms = {}
    for e, c in f.terms.items():
        v = _convert_data(ctx, values, gens, c.data, p)
        if not ctx.is_zero(v):
            terms[e] = v
    return terms or None


def _ugcd(ctx, a, b):
    a, b = _ptrim(ctx, a), _ptrim(ctx, b)
    while b:
        inv = ctx.inv(b[-1])
        r = list(a)
        while len(r) >= len(b):
            fac = ctx.mul(r[-1], inv)
            for k, c in enumerate(b):
                idx = len(r) - len(b) + k
                r[idx] = ctx.sub(r[idx], ctx.mul(fac, c))
            r.pop()
            r = _ptrim(ctx, r)
        a, b = b, r
    return a


def _certify(ctx, fm, gm, active):
    if not active:
        return True
    if len(active) == 1:
        ax = active[0]
        return True if len(_ugcd(ctx, _dense(ctx, fm, ax), _dense(ctx, gm, ax))) <= 1 else None
    ix, iy = active
    fx = _as_univar(ctx, fm, iy, ix)
    gx = _as_univar(ctx, gm, iy, ix)
    cf = _content(ctx, fx)
    cg = _content(ctx, gx)
    if len(_ugcd(ctx, cf, cg)) > 1:
        return None
    if len(fx) == 1 or len(gx) == 1:
        return True  # one input is y-free; only content factors were possible
    lead = fx[-1]
    # the resultant has finitely many roots, so some specialization keeping
    # the leading coefficient alive yields coprime univariates unless the
    # inputs really share a y-positive factor
    r = 1
    for _ in range(24):
        if not ctx.is_zero(_ueval(ctx, lead, r)):
            fr = [_ueval(ctx, c, r) for c in fx]
            gr = [_ueval(ctx, c, r) for c in gx]
            if len(_ugcd(ctx, fr, gr)) <= 1:
                return True
        r = (r * 48271 + 11) % ctx.p
    return None


def _dense(ctx, terms, ix):
    n = max(e[ix] for e in terms)
    out = [ctx.zero()] * (n + 1)
    for e, c in terms.items():
        out[e[ix]] = ctx.add(out[e[ix]], c)
    return out


def _as_univar(ctx, terms, iy, ix):
    ny = max(e[iy] for e in terms)
    nx = max(e[ix] for e in terms)
    out = [[ctx.zero()] * (nx + 1) for _ in range(ny + 1)]
    for e, c in terms.items():
        row = out[e[iy]]
        row[e[ix]] = ctx.add(row[e[ix]], c)
    trimmed = [_ptrim(ctx, row) for row in out]
    while trimmed and not trimmed[-1]:
        trimmed.pop()
    return trimmed


def _content(ctx, rows):
    acc = []
    for row in rows:
        if not row:
            continue
        acc = _ugcd(ctx, acc, row) if acc else list(row)
        if len(acc) == 1:
            break
    return acc if acc else [ctx.zero()]


def _ueval(ctx, coeffs, r):
    acc = ctx.zero()
    rr = ctx._embed_int(r, ctx.top)
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, rr), c)
    return acc
