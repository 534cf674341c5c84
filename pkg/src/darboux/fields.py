"""Exact coefficient tower and certified interval numerics.

The coefficient field is an iterated extension of the rationals,
``Q(s_1)(s_2)...(s_k)``, built in declaration order.  A transcendental
symbol contributes a rational-function layer, an algebraic symbol a
quotient layer ``K[t]/(minpoly)``.  Every element is kept in a canonical
reduced form, so equality of values is equality of representations.

Algebraic independence between layers is assumed, not verified; a
violation surfaces as :class:`~darboux.errors.NonInvertible` when some
nonzero element turns out to have no inverse.

No floating point enters any exact decision: sign and floor queries are
answered with exact rational interval arithmetic, refining the numeric
interpretation of each symbol (``pi``/``e`` via mpmath, algebraic symbols
by bisection on their minimal polynomial) until the question is decided
or the precision cap is hit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from gmpy2 import mpq, mpz

from .errors import NonInvertible, PrecisionExhausted

_QONE = mpq(1)
_QZERO = mpq(0)

# numeric interpretations available at arbitrary precision by name
_KNOWN_TRANSCENDENTALS = {"pi", "e"}


def _q(x):
    """Coerce to mpq."""
    if isinstance(x, type(_QONE)):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


# ---------------------------------------------------------------------------
# constant symbols and the tower
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantSymbol:
    """A named constant adjoined to the rationals.

    ``minpoly`` is the monic minimal polynomial over Q for algebraic
    symbols, stored as coefficients from constant to leading term; it is
    None for transcendental symbols.  ``numeric`` is a decimal literal
    seeding the interval interpretation of the symbol.
    """

    name: str
    kind: str  # "transcendental" | "algebraic"
    numeric: str
    minpoly: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("transcendental", "algebraic"):
            raise ValueError("unknown symbol kind %r" % (self.kind,))
        if not self.name.isidentifier():
            raise ValueError("symbol name %r is not an identifier" % (self.name,))
        if self.kind == "algebraic":
            if self.minpoly is None or len(self.minpoly) < 3:
                raise ValueError("algebraic symbol %s needs a minimal polynomial of degree >= 2" % self.name)
            object.__setattr__(self, "minpoly", tuple(_q(c) for c in self.minpoly))
            if self.minpoly[-1] != 1:
                raise ValueError("minimal polynomial of %s must be monic" % self.name)
        elif self.minpoly is not None:
            raise ValueError("transcendental symbol %s cannot carry a minimal polynomial" % self.name)
        mpq(self.numeric)  # raises on malformed literals

    @property
    def degree(self):
        return len(self.minpoly) - 1 if self.minpoly else None

    def seed_value(self):
        return _q(self.numeric)

    def seed_ulp(self):
        text = self.numeric.strip()
        frac_digits = len(text.split(".")[1]) if "." in text else 0
        return mpq(1, 10**frac_digits) if frac_digits else _QONE


# --- rational univariate helpers (minimal polynomial handling) -------------


def _qpoly_eval(coeffs, x):
    acc = _QZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _qpoly_derivative(coeffs):
    return tuple(c * k for k, c in enumerate(coeffs) if k)


def _qpoly_gcd_degree(a, b):
    a, b = list(a), list(b)
    while b and any(c != 0 for c in b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        # remainder of a by b over Q
        while len(a) >= len(b) and any(c != 0 for c in a):
            while a and a[-1] == 0:
                a.pop()
            if len(a) < len(b):
                break
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    while a and a[-1] == 0:
        a.pop()
    return len(a) - 1


def _check_minpoly(sym: ConstantSymbol):
    """Reject obviously reducible minimal polynomials.

    Squarefree-ness and absence of rational roots are verified exactly
    (complete for degree <= 3).  Deeper factorizations are assumed absent;
    a wrong assumption surfaces later as NonInvertible.
    """
    mp_coeffs = sym.minpoly
    if _qpoly_gcd_degree(mp_coeffs, _qpoly_derivative(mp_coeffs)) > 0:
        raise ValueError("minimal polynomial of %s is not squarefree" % sym.name)
    for root in _qpoly_rational_roots(mp_coeffs):
        raise ValueError("minimal polynomial of %s has the rational root %s" % (sym.name, root))


def _qpoly_rational_roots(coeffs):
    """All rational roots of a rational univariate polynomial.

    Uses exact Sturm isolation plus simplest-fraction reconstruction, so
    no integer factorization is required.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    # strip zero roots
    roots = []
    while coeffs[0] == 0:
        roots.append(_QZERO)
        coeffs.pop(0)
        if len(coeffs) <= 1:
            return sorted(set(roots))
    den_bound = abs(coeffs[-1].numerator) * coeffs[0].denominator  # crude common bound
    for lo, hi in _sturm_isolate(coeffs):
        cand = _rational_in_interval(coeffs, lo, hi, den_bound)
        if cand is not None:
            roots.append(cand)
    return sorted(set(roots))


def _sturm_chain(coeffs):
    chain = [tuple(coeffs), _qpoly_derivative(coeffs)]
    while len(chain[-1]) > 1 or (chain[-1] and chain[-1][0] != 0):
        rem = _qpoly_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(tuple(-c for c in rem))
    return [c for c in chain if c]


def _qpoly_rem(a, b):
    a = list(a)
    while len(a) >= len(b):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        while a and a[-1] == 0:
            a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _sign_changes(chain, x):
    signs = []
    for c in chain:
        v = _qpoly_eval(c, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def _root_bound(coeffs):
    lead = abs(coeffs[-1])
    return _QONE + max(abs(c) for c in coeffs[:-1]) / lead if len(coeffs) > 1 else _QONE


def _sturm_isolate(coeffs):
    """Disjoint rational intervals, one around each real root."""
    chain = _sturm_chain(coeffs)
    bound = _root_bound(coeffs)
    stack = [(-bound, bound)]
    out = []
    while stack:
        lo, hi = stack.pop()
        n = _sign_changes(chain, lo) - _sign_changes(chain, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _qpoly_eval(coeffs, mid) == 0:
            out.append((mid, mid))
            eps = (hi - lo) / 4
            while _qpoly_eval(coeffs, mid - eps) == 0 or _qpoly_eval(coeffs, mid + eps) == 0:
                eps /= 2
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    return sorted(out)


def _simplest_in(lo, hi):
    """The fraction with smallest denominator in [lo, hi] (Stern-Brocot)."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return _QZERO
    if hi < 0:
        return -_simplest_in(-hi, -lo)
    # 0 < lo <= hi
    fl = lo.numerator // lo.denominator
    if fl == hi.numerator // hi.denominator and lo.numerator % lo.denominator != 0:
        frac = _simplest_in(1 / (hi - fl), 1 / (lo - fl)) if lo != fl else _QZERO
        return fl + 1 / frac if frac != 0 else mpq(fl)
    return mpq(fl + 1) if lo > fl else mpq(fl)


def _rational_in_interval(coeffs, lo, hi, den_bound):
    """The rational root inside an isolating interval, if there is one."""
    if lo == hi:
        return lo if _qpoly_eval(coeffs, lo) == 0 else None
    # shrink until at most one fraction with denominator <= den_bound fits
    gap = mpq(1, den_bound * den_bound * 2)
    flo, fhi = _qpoly_eval(coeffs, lo), _qpoly_eval(coeffs, hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    while hi - lo > gap:
        mid = (lo + hi) / 2
        fmid = _qpoly_eval(coeffs, mid)
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    cand = _simplest_in(lo, hi)
    return cand if _qpoly_eval(coeffs, cand) == 0 else None


# ---------------------------------------------------------------------------
# canonical layered data
#
# data is one of
#   mpq                                   -- rational value
#   ('t', i, num, den)                    -- num/den in Q(..)(s_i), den monic
#   ('a', i, coeffs)                      -- reduced mod minpoly(s_i)
# where num/den/coeffs are tuples of lower-level data, low degree first.
# Values that live in a lower layer are always stored collapsed, so the
# representation of a value is unique and ``==`` decides equality.
# ---------------------------------------------------------------------------


def _level(d):
    return d[1] if isinstance(d, tuple) else -1


def _is_zero_data(d):
    return not isinstance(d, tuple) and d == 0


class Tower:
    """The coefficient field determined by an ordered list of symbols."""

    def __init__(self, symbols=()):
        self.symbols = tuple(symbols)
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names: %s" % names)
        for s in self.symbols:
            if s.kind == "algebraic":
                _check_minpoly(s)
        self._index = {s.name: i for i, s in enumerate(self.symbols)}
        self._brackets = {}
        for i, s in enumerate(self.symbols):
            if s.kind == "algebraic":
                self._brackets[i] = self._initial_bracket(s)
            elif s.name not in _KNOWN_TRANSCENDENTALS:
                v, ulp = s.seed_value(), s.seed_ulp()
                self._brackets[i] = (v - ulp, v + ulp)

    # -- element construction ------------------------------------------------

    def zero(self):
        return FieldElement(self, _QZERO)

    def one(self):
        return FieldElement(self, _QONE)

    def rational(self, x, y=None):
        return FieldElement(self, mpq(_q(x), _q(y)) if y is not None else _q(x))

    def symbol(self, name):
        i = self._index[name]
        if self.symbols[i].kind == "algebraic":
            data = self._make_alg(i, [_QZERO, _QONE])
        else:
            data = self._make_trans(i, [_QZERO, _QONE], [_QONE])
        return FieldElement(self, data)

    def normalize(self, e):
        """Identity on canonical elements; kept as the public entry point."""
        if e.tower is not self:
            raise ValueError("element from a different tower")
        return e

    # -- layer constructors (normalize + collapse) ---------------------------

    def _make_trans(self, i, num, den):
        num, den = _ptrim(list(num)), _ptrim(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator in layer %s" % self.symbols[i].name)
        if not num:
            return _QZERO
        g = self._pgcd(num, den)
        if len(g) > 1 or g[0] != 1:
            num = self._pdiv_exact(num, g)
            den = self._pdiv_exact(den, g)
        lc = den[-1]
        if not (not isinstance(lc, tuple) and lc == 1):
            inv = self._inv(lc)
            num = [self._mul(c, inv) for c in num]
            den = [self._mul(c, inv) for c in den[:-1]] + [_QONE]
        if len(den) == 1 and len(num) == 1:
            return num[0]
        return ("t", i, tuple(num), tuple(den))

    def _make_alg(self, i, coeffs):
        mp_lift = [_q(c) for c in self.symbols[i].minpoly]
        coeffs = self._pmod(list(coeffs), mp_lift)
        coeffs = _ptrim(coeffs)
        if not coeffs:
            return _QZERO
        if len(coeffs) == 1:
            return coeffs[0]
        return ("a", i, tuple(coeffs))

    # -- field arithmetic on data --------------------------------------------

    def _lift(self, d, i):
        """View d (level < i) as a constant polynomial pair at layer i."""
        return [d]

    def _add(self, a, b):
        la, lb = _level(a), _level(b)
        if la == -1 and lb == -1:
            return a + b
        if la < lb:
            a, b = b, a
            la, lb = lb, la
        if lb < la:
            if a[0] == "t":
                _, i, num, den = a
                return self._make_trans(i, self._padd(list(num), self._pmul(self._lift(b, i), list(den))), list(den))
            _, i, coeffs = a
            c = list(coeffs)
            c[0] = self._add(c[0], b)
            return self._make_alg(i, c)
        # same level
        if a[0] == "t":
            _, i, n1, d1 = a
            _, _, n2, d2 = b
            num = self._padd(self._pmul(list(n1), list(d2)), self._pmul(list(n2), list(d1)))
            return self._make_trans(i, num, self._pmul(list(d1), list(d2)))
        _, i, c1 = a
        _, _, c2 = b
        return self._make_alg(i, self._padd(list(c1), list(c2)))

    def _neg(self, a):
        if not isinstance(a, tuple):
            return -a
        if a[0] == "t":
            return ("t", a[1], tuple(self._neg(c) for c in a[2]), a[3])
        return ("a", a[1], tuple(self._neg(c) for c in a[2]))

    def _mul(self, a, b):
        la, lb = _level(a), _level(b)
        if la == -1 and lb == -1:
            return a * b
        if la < lb:
            a, b = b, a
            la, lb = lb, la
        if _is_zero_data(b):
            return _QZERO
        if lb < la:
            if a[0] == "t":
                _, i, num, den = a
                return self._make_trans(i, self._pmul(list(num), self._lift(b, i)), list(den))
            _, i, coeffs = a
            return self._make_alg(i, [self._mul(c, b) for c in coeffs])
        if a[0] == "t":
            _, i, n1, d1 = a
            _, _, n2, d2 = b
            return self._make_trans(i, self._pmul(list(n1), list(n2)), self._pmul(list(d1), list(d2)))
        _, i, c1 = a
        _, _, c2 = b
        return self._make_alg(i, self._pmul(list(c1), list(c2)))

    def _inv(self, a):
        if not isinstance(a, tuple):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if a[0] == "t":
            _, i, num, den = a
            return self._make_trans(i, list(den), list(num))
        _, i, coeffs = a
        mp_lift = [_q(c) for c in self.symbols[i].minpoly]
        g, u, _ = self._pxgcd(list(coeffs), mp_lift)
        if len(g) > 1:
            raise NonInvertible(
                "element of layer %s shares the factor of degree %d with its minimal polynomial; "
                "declared constants are not independent" % (self.symbols[i].name, len(g) - 1)
            )
        ginv = self._inv(g[0])
        return self._make_alg(i, [self._mul(c, ginv) for c in u])

    # -- dense univariate polynomial helpers over lower layers ---------------

    def _padd(self, a, b):
        n = max(len(a), len(b))
        out = []
        for k in range(n):
            x = a[k] if k < len(a) else _QZERO
            y = b[k] if k < len(b) else _QZERO
            out.append(self._add(x, y))
        return _ptrim(out)

    def _pmul(self, a, b):
        if not a or not b:
            return []
        out = [_QZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero_data(x):
                continue
            for j, y in enumerate(b):
                if _is_zero_data(y):
                    continue
                out[i + j] = self._add(out[i + j], self._mul(x, y))
        return _ptrim(out)

    def _pdivmod(self, a, b):
        a = list(a)
        b = _ptrim(list(b))
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lc = self._inv(b[-1])
        q = [_QZERO] * max(0, len(a) - len(b) + 1)
        while True:
            a = _ptrim(a)
            if len(a) < len(b):
                break
            f = self._mul(a[-1], inv_lc)
            shift = len(a) - len(b)
            q[shift] = f
            for k, c in enumerate(b):
                a[shift + k] = self._add(a[shift + k], self._neg(self._mul(f, c)))
            a[-1] = _QZERO  # force exact cancellation of the leading term
        return _ptrim(q), _ptrim(a)

    def _pdiv_exact(self, a, b):
        q, r = self._pdivmod(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division inside the tower")
        return q

    def _pmod(self, a, b):
        return self._pdivmod(a, b)[1]

    def _pgcd(self, a, b):
        a, b = _ptrim(list(a)), _ptrim(list(b))
        while b:
            r = self._pmod(a, b)
            if r:
                scale = 1 / _list_rat_content(r)
                r = [_scale_data(c, scale) for c in r]
            a, b = b, r
        if not a:
            return [_QONE]
        inv = self._inv(a[-1])
        return [self._mul(c, inv) for c in a]

    def _pxgcd(self, a, b):
        r0, r1 = _ptrim(list(a)), _ptrim(list(b))
        s0, s1 = [_QONE], []
        t0, t1 = [], [_QONE]
        while r1:
            q, r = self._pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._padd(s0, [self._neg(c) for c in self._pmul(q, s1)])
            t0, t1 = t1, self._padd(t0, [self._neg(c) for c in self._pmul(q, t1)])
        return r0, s0, t0

    # -- numeric interpretation ----------------------------------------------

    def _initial_bracket(self, sym):
        v, ulp = sym.seed_value(), sym.seed_ulp()
        coeffs = sym.minpoly
        width = ulp
        for _ in range(24):
            lo, hi = v - width, v + width
            flo, fhi = _qpoly_eval(coeffs, lo), _qpoly_eval(coeffs, hi)
            if flo == 0 or fhi == 0 or (flo > 0) != (fhi > 0):
                return (lo, hi)
            width *= 4
        raise ValueError("numeric seed of %s does not isolate a root of its minimal polynomial" % sym.name)

    def symbol_bracket(self, i, prec):
        """A rational interval of width <= 2**-prec around symbol i (when refinable)."""
        sym = self.symbols[i]
        target = mpq(1, mpz(2) ** prec)
        if sym.kind == "algebraic":
            lo, hi = self._brackets[i]
            coeffs = sym.minpoly
            flo = _qpoly_eval(coeffs, lo)
            while hi - lo > target:
                mid = (lo + hi) / 2
                fmid = _qpoly_eval(coeffs, mid)
                if fmid == 0:  # cannot happen for an irreducible minpoly
                    lo = hi = mid
                    break
                if (fmid > 0) == (flo > 0):
                    lo, flo = mid, fmid
                else:
                    hi = mid
            self._brackets[i] = (lo, hi)
            return (lo, hi)
        if sym.name in _KNOWN_TRANSCENDENTALS:
            old = mpmath.mp.prec
            try:
                mpmath.mp.prec = prec + 16
                x = mpmath.mp.pi if sym.name == "pi" else mpmath.mp.e
                q = _mpf_to_mpq(x)
            finally:
                mpmath.mp.prec = old
            err = mpq(1, mpz(2) ** (prec + 4))
            return (q - err, q + err)
        return self._brackets[i]  # fixed seed interval; precision capped by the seed

    def eval_interval(self, e, prec):
        """An Interval certified to contain the value of e at >= prec bits."""
        lo, hi = self._eval_data(e.data, prec)
        return Interval(lo, hi, prec)

    def _eval_data(self, d, prec):
        if not isinstance(d, tuple):
            return (d, d)
        if d[0] == "a":
            _, i, coeffs = d
            s = self.symbol_bracket(i, prec)
            return self._horner(coeffs, s, prec)
        _, i, num, den = d
        s = self.symbol_bracket(i, prec)
        n = self._horner(num, s, prec)
        dv = self._horner(den, s, prec)
        if dv[0] <= 0 <= dv[1]:
            raise _Straddle(i)
        return _iv_div(n, dv)

    def _horner(self, coeffs, s, prec):
        acc = (_QZERO, _QZERO)
        for c in reversed(coeffs):
            acc = _iv_add(_iv_mul(acc, s), self._eval_data(c, prec))
        return _iv_round_out(acc, prec + 64)

    def sign(self, e, cap=4096, start=128):
        """Exact sign of e: symbolic zero test first, then certified intervals."""
        if _is_zero_data(e.data):
            return 0
        prec = start
        while True:
            try:
                lo, hi = self._eval_data(e.data, prec)
                if lo > 0:
                    return 1
                if hi < 0:
                    return -1
            except _Straddle:
                pass
            if prec >= cap:
                raise PrecisionExhausted(
                    "sign of %s undecided at %d bits (is it zero under the declared numerics?)" % (e, cap)
                )
            prec = min(2 * prec, cap)

    def certified_floor(self, e, cap=4096, start=128):
        """floor(e) with the enclosing interval certified not to straddle an integer."""
        prec = start
        while True:
            try:
                lo, hi = self._eval_data(e.data, prec)
                n = lo.numerator // lo.denominator
                if hi < n + 1:
                    return int(n)
            except _Straddle:
                pass
            if prec >= cap:
                raise PrecisionExhausted("floor of %s undecided at %d bits" % (e, cap))
            prec = min(2 * prec, cap)

    # -- flattening and rendering ---------------------------------------------

    def flatten(self, d):
        """Return (num, den) dicts {symbol-exponent-tuple: mpq} for rendering."""
        k = len(self.symbols)
        zero_exp = (0,) * k
        if not isinstance(d, tuple):
            return ({zero_exp: d} if d != 0 else {}, {zero_exp: _QONE})
        if d[0] == "a":
            _, i, coeffs = d
            return self._fd_combine([self.flatten(c) for c in coeffs], i, k)
        _, i, num_c, den_c = d
        n_num, n_den = self._fd_combine([self.flatten(c) for c in num_c], i, k)
        d_num, d_den = self._fd_combine([self.flatten(c) for c in den_c], i, k)
        return _fd_mul(n_num, d_den), _fd_mul(n_den, d_num)

    def _fd_combine(self, parts, i, k):
        """Sum of N_j/D_j * s_i^j over the product denominator."""
        den = {(0,) * k: _QONE}
        for _, dj in parts:
            den = _fd_mul(den, dj)
        num = {}
        for j, (nj, _) in enumerate(parts):
            rest = {(0,) * k: _QONE}
            for l, (_, dl) in enumerate(parts):
                if l != j:
                    rest = _fd_mul(rest, dl)
            num = _fd_add(num, _fd_shift(_fd_mul(nj, rest), i, j, k))
        return num, den

    def render(self, d):
        num, den = self.flatten(d)
        num, den = _fd_strip_common(num, den)
        names = [s.name for s in self.symbols]
        ns = render_qdict(num, names)
        if len(den) == 1 and den.get((0,) * len(self.symbols)) == 1:
            return ns
        ds = render_qdict(den, names)
        ns = "(%s)" % ns if ("+" in ns[1:] or "-" in ns[1:]) else ns
        ds = "(%s)" % ds if ("+" in ds[1:] or "-" in ds[1:] or "*" in ds) else ds
        return "%s/%s" % (ns, ds)


class _Straddle(Exception):
    """Internal: a denominator interval contains zero; retry at higher precision."""


# -- exact rational interval primitives --------------------------------------


def _iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _iv_mul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def _iv_div(a, b):
    inv = (1 / b[1], 1 / b[0])
    return _iv_mul(a, inv)


def _iv_round_out(iv, prec):
    """Round endpoints outward to denominator 2**prec (keeps containment)."""
    lo, hi = iv
    if lo == hi:
        return iv
    den = mpz(2) ** prec
    lo2 = mpq((lo.numerator * den) // lo.denominator, den)
    hi2 = mpq(-((-hi.numerator * den) // hi.denominator), den)
    return (lo2, hi2)


def _mpf_to_mpq(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return _QZERO
    q = mpq(int(man)) * (mpq(2) ** int(exp))
    return -q if sign else q


def _ptrim(c):
    while c and _is_zero_data(c[-1]):
        c.pop()
    return c


def _rat_content(d, acc=None):
    """gcd-of-numerators / lcm-of-denominators over the rational leaves."""
    from gmpy2 import gcd as zgcd, lcm as zlcm

    if acc is None:
        acc = [mpz(0), mpz(1)]
    if not isinstance(d, tuple):
        if d != 0:
            acc[0] = zgcd(acc[0], d.numerator)
            acc[1] = zlcm(acc[1], d.denominator)
        return acc
    if d[0] == "a":
        for c in d[2]:
            _rat_content(c, acc)
    else:
        for c in d[2]:
            _rat_content(c, acc)
        for c in d[3]:
            _rat_content(c, acc)
    return acc


def _list_rat_content(coeffs):
    acc = [mpz(0), mpz(1)]
    for c in coeffs:
        _rat_content(c, acc)
    if acc[0] == 0:
        return _QONE
    return mpq(acc[0], acc[1])


def _scale_data(d, q):
    """Multiply every rational leaf by q (exact rescaling by a rational)."""
    if not isinstance(d, tuple):
        return d * q
    if d[0] == "a":
        return ("a", d[1], tuple(_scale_data(c, q) for c in d[2]))
    # scaling the numerator leaves the monic denominator intact
    return ("t", d[1], tuple(_scale_data(c, q) for c in d[2]), d[3])


# -- flattened Q[s..] dict helpers (rendering only) ---------------------------


def _fd_add(a, b):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, _QZERO) + v
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def _fd_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            w = out.get(k, _QZERO) + va * vb
            if w == 0:
                out.pop(k, None)
            else:
                out[k] = w
    return out


def _fd_shift(d, i, j, k):
    if j == 0:
        return d
    shift = tuple(j if t == i else 0 for t in range(k))
    return {tuple(x + y for x, y in zip(key, shift)): v for key, v in d.items()}


def _fd_strip_common(num, den):
    """Strip the common monomial factor and make the denominator's leading
    graded-lex coefficient 1 (display normalization only)."""
    if not num or not den:
        return num, den
    width = len(next(iter(den)))
    common = tuple(
        min(min(k[i] for k in num), min(k[i] for k in den)) for i in range(width)
    )
    if any(common):
        num = {tuple(a - b for a, b in zip(k, common)): v for k, v in num.items()}
        den = {tuple(a - b for a, b in zip(k, common)): v for k, v in den.items()}
    lead = den[max(den, key=_grlex_key)]
    if lead != 1:
        num = {k: v / lead for k, v in num.items()}
        den = {k: v / lead for k, v in den.items()}
    return num, den


def _grlex_key(exp):
    return (sum(exp), exp)


def render_qdict(d, names):
    """Canonical text of a Q[names] dict: graded-lex, explicit signs, p/q coefficients."""
    if not d:
        return "0"
    parts = []
    for exp in sorted(d, key=_grlex_key, reverse=True):
        coeff = d[exp]
        mono = "*".join(
            (names[i] if e == 1 else "%s^%d" % (names[i], e)) for i, e in enumerate(exp) if e
        )
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%s*%s" % (mag, mono)
        parts.append(("-" if coeff < 0 else "+", body))
    sign, first = parts[0]
    text = ("-" if sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += sign + body
    return text


# ---------------------------------------------------------------------------
# public element wrapper
# ---------------------------------------------------------------------------


class FieldElement:
    """An element of the coefficient tower, always in canonical form."""

    __slots__ = ("tower", "data")

    def __init__(self, tower, data):
        self.tower = tower
        self.data = data

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower is not self.tower:
                raise ValueError("mixing elements of different towers")
            return other.data
        if isinstance(other, (int, Fraction)) or type(other) is type(_QONE):
            return _q(other)
        return None

    def __add__(self, other):
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower._add(self.data, d))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, self.tower._neg(self.data))

    def __sub__(self, other):
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower._add(self.data, self.tower._neg(d)))

    def __rsub__(self, other):
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower._add(d, self.tower._neg(self.data)))

    def __mul__(self, other):
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower._mul(self.data, d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower._mul(self.data, self.tower._inv(d)))

    def __rtruediv__(self, other):
        d = self._coerce(other)
        if d is None:
            return NotImplemented
        return FieldElement(self.tower, self.tower._mul(d, self.tower._inv(self.data)))

    def __pow__(self, n):
        if n < 0:
            return (self.tower.one() / self) ** (-n)
        out = self.tower._add(_QONE, _QZERO)
        base = self.data
        while n:
            if n & 1:
                out = self.tower._mul(out, base)
            base = self.tower._mul(base, base)
            n >>= 1
        return FieldElement(self.tower, out)

    def inverse(self):
        return FieldElement(self.tower, self.tower._inv(self.data))

    # predicates and views -------------------------------------------------

    def is_zero(self):
        return _is_zero_data(self.data)

    def as_rational(self):
        """The exact rational value, or None if any symbol survives."""
        if isinstance(self.data, tuple):
            return None
        return Fraction(self.data.numerator, self.data.denominator)

    def sign(self, cap=4096):
        return self.tower.sign(self, cap=cap)

    def size(self):
        """Number of rational leaves; used for deterministic pivot choice."""
        return _size(self.data)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.tower is other.tower and self.data == other.data
        if isinstance(other, tuple):
            return NotImplemented
        try:
            return not isinstance(self.data, tuple) and self.data == _q(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash(_freeze(self.data))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return "FieldElement(%s)" % (self,)

    def __str__(self):
        return self.tower.render(self.data)


def _size(d):
    if not isinstance(d, tuple):
        return 1
    if d[0] == "a":
        return sum(_size(c) for c in d[2])
    return sum(_size(c) for c in d[2]) + sum(_size(c) for c in d[3])


def _freeze(d):
    if not isinstance(d, tuple):
        return d
    if d[0] == "a":
        return ("a", d[1], tuple(_freeze(c) for c in d[2]))
    return ("t", d[1], tuple(_freeze(c) for c in d[2]), tuple(_freeze(c) for c in d[3]))


@dataclass(frozen=True)
class Interval:
    """A rational interval certified to contain a real value."""

    lo: object
    hi: object
    prec: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("inverted interval")

    def width(self):
        return self.hi - self.lo

    def contains(self, x):
        x = _q(x)
        return self.lo <= x <= self.hi

    def sign_if_certain(self):
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def midpoint_str(self, digits=20):
        mid = (self.lo + self.hi) / 2
        return mpmath.nstr(mpmath.mpf(mid.numerator) / mpmath.mpf(mid.denominator), digits)
