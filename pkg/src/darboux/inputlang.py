"""The analyzer's input language.

A document declares named constants and one system or 1-form block, with
an optional options block::

    const pi: transcendental ~ 3.14159265358979323846;
    const r2: algebraic t^2-2 ~ 1.4142135623730950488;
    form { a = pi*x; b = y }
    options { cf_depth = 12; }

Polynomial expressions use +, -, *, ^ and / (division only by constant
subexpressions), integer literals and declared constant names over the
variables x and y.  Parsing is whitespace-insensitive; errors carry line
and column positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import AnalysisOptions
from .errors import InputError
from .fields import ConstantSymbol, FieldElement, Tower
from .poly import Polynomial
from .projective import AFFINE_VARS, AffineSystem

_PUNCT = ("{", "}", "(", ")", ";", ":", "~", "=", "+", "-", "*", "/", "^")


@dataclass
class Token:
    kind: str  # name | int | decimal | punct | end
    text: str
    line: int
    col: int


def _tokenize(text):
    out = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("name", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            kind = "decimal" if seen_dot else "int"
            out.append(Token(kind, text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if c in _PUNCT:
            out.append(Token("punct", c, line, start_col))
            i += 1
            col += 1
            continue
        raise InputError("unexpected character %r" % c, line, col)
    out.append(Token("end", "", line, col))
    return out


@dataclass
class InputDocument:
    symbols: list
    tower: Tower
    block_kind: str  # "system" | "form"
    first: Polynomial  # p or a
    second: Polynomial  # q or b
    options: AnalysisOptions = field(default_factory=AnalysisOptions)

    def system(self):
        """The affine system, converting a form block through p=b, q=-a."""
        if self.block_kind == "system":
            return AffineSystem(p=self.first, q=self.second), None
        sys_, content = AffineSystem.from_one_form(self.first, self.second)
        return sys_, (content if not content.is_constant() else None)

    def render(self):
        lines = []
        for s in self.symbols:
            if s.kind == "transcendental":
                lines.append("const %s: transcendental ~ %s;" % (s.name, s.numeric))
            else:
                mp = _render_minpoly(s.minpoly)
                lines.append("const %s: algebraic %s ~ %s;" % (s.name, mp, s.numeric))
        names = ("dx", "dy") if self.block_kind == "system" else ("a", "b")
        lines.append(
            "%s { %s = %s; %s = %s }"
            % (self.block_kind, names[0], self.first.text(), names[1], self.second.text())
        )
        opts = self.options
        defaults = AnalysisOptions()
        shown = []
        for key in ("budget_points", "cf_depth", "precision_max", "seed", "jobs"):
            if getattr(opts, key) != getattr(defaults, key):
                shown.append("%s = %d;" % (key, getattr(opts, key)))
        if shown:
            lines.append("options { %s }" % " ".join(shown))
        return "\n".join(lines) + "\n"


def _render_minpoly(coeffs):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "t^%d" % k if k > 1 else ("t" if k == 1 else "")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = "%s*%s" % (mag, mono)
        else:
            body = str(mag)
        terms.append(("-" if c < 0 else "+", body))
    sign, first = terms[0]
    out = ("-" if sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text):
        tok = self.next()
        if tok.text != text:
            raise InputError("expected %r, found %r" % (text, tok.text or "end of input"), tok.line, tok.col)
        return tok

    def expect_name(self):
        tok = self.next()
        if tok.kind != "name":
            raise InputError("expected a name, found %r" % (tok.text,), tok.line, tok.col)
        return tok

    # -- grammar -----------------------------------------------------------

    def document(self):
        symbols = []
        block = None
        options = {}
        while self.peek().kind != "end":
            tok = self.peek()
            if tok.text == "const":
                symbols.append(self.constdecl())
            elif tok.text in ("system", "form"):
                if block is not None:
                    raise InputError("only one system/form block is allowed", tok.line, tok.col)
                block = self.block()
            elif tok.text == "options":
                options = self.options_block()
            else:
                raise InputError(
                    "expected 'const', 'system', 'form' or 'options', found %r" % tok.text,
                    tok.line,
                    tok.col,
                )
        if block is None:
            raise InputError("missing system or form block")
        try:
            tower = Tower(symbols)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        kind, exprs = block
        first = self._eval_poly(exprs[0], tower, AFFINE_VARS)
        second = self._eval_poly(exprs[1], tower, AFFINE_VARS)
        opts = AnalysisOptions(**options) if options else AnalysisOptions()
        return InputDocument(
            symbols=symbols, tower=tower, block_kind=kind, first=first, second=second, options=opts
        )

    def constdecl(self):
        self.expect("const")
        name = self.expect_name()
        self.expect(":")
        kind = self.expect_name()
        if kind.text == "transcendental":
            minpoly = None
        elif kind.text == "algebraic":
            expr = self.expr()
            minpoly = self._eval_minpoly(expr, kind)
        else:
            raise InputError(
                "constant kind must be 'transcendental' or 'algebraic', found %r" % kind.text,
                kind.line,
                kind.col,
            )
        self.expect("~")
        tok = self.next()
        sign = ""
        if tok.text == "-":
            sign = "-"
            tok = self.next()
        if tok.kind not in ("decimal", "int"):
            raise InputError("expected a decimal literal after '~'", tok.line, tok.col)
        self.expect(";")
        try:
            if minpoly is None:
                return ConstantSymbol(name.text, "transcendental", sign + tok.text)
            return ConstantSymbol(name.text, "algebraic", sign + tok.text, minpoly)
        except ValueError as exc:
            raise InputError(str(exc), name.line, name.col) from exc

    def block(self):
        kind = self.next().text
        self.expect("{")
        lhs = ("dx", "dy") if kind == "system" else ("a", "b")
        exprs = []
        for i, expected in enumerate(lhs):
            tok = self.expect_name()
            if tok.text != expected:
                raise InputError(
                    "expected '%s =' inside the %s block" % (expected, kind), tok.line, tok.col
                )
            self.expect("=")
            exprs.append(self.expr())
            if i == 0:
                self.expect(";")
            elif self.peek().text == ";":
                self.next()
        self.expect("}")
        return kind, exprs

    def options_block(self):
        self.expect("options")
        self.expect("{")
        out = {}
        valid = {"budget_points", "cf_depth", "precision_max", "seed", "jobs"}
        while self.peek().text != "}":
            tok = self.expect_name()
            if tok.text not in valid:
                raise InputError("unknown option %r" % tok.text, tok.line, tok.col)
            self.expect("=")
            val = self.next()
            if val.kind != "int":
                raise InputError("option %s needs an integer" % tok.text, val.line, val.col)
            out[tok.text] = int(val.text)
            if self.peek().text == ";":
                self.next()
        self.expect("}")
        return out

    # expression AST: tuples ("num", tok) | ("name", tok) | (op, lhs, rhs) | ("neg", e)

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            node = (op, node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            rhs = self.unary()
            node = (op, node, rhs)
        return node

    def unary(self):
        if self.peek().text == "-":
            tok = self.next()
            return ("neg", self.unary())
        if self.peek().text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        while self.peek().text == "^":
            self.next()
            exp = self.next()
            if exp.kind != "int":
                raise InputError("exponents must be nonnegative integers", exp.line, exp.col)
            base = ("pow", base, int(exp.text))
        return base

    def atom(self):
        tok = self.next()
        if tok.kind == "int":
            return ("num", tok)
        if tok.kind == "decimal":
            raise InputError("decimal literals are only allowed as constant seeds", tok.line, tok.col)
        if tok.kind == "name":
            return ("name", tok)
        if tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise InputError("unexpected token %r in expression" % (tok.text or "end of input"), tok.line, tok.col)

    # -- evaluation ---------------------------------------------------------

    def _eval_poly(self, node, tower, vars):
        kind = node[0]
        if kind == "num":
            return Polynomial.constant(tower, vars, int(node[1].text))
        if kind == "name":
            tok = node[1]
            if tok.text in vars:
                return Polynomial.variable(tower, vars, tok.text)
            if tok.text in tower._index:
                return Polynomial.constant(tower, vars, tower.symbol(tok.text))
            raise InputError("undeclared symbol %r" % tok.text, tok.line, tok.col)
        if kind == "neg":
            return -self._eval_poly(node[1], tower, vars)
        if kind == "pow":
            return self._eval_poly(node[1], tower, vars) ** node[2]
        lhs = self._eval_poly(node[1], tower, vars)
        rhs = self._eval_poly(node[2], tower, vars)
        if kind == "+":
            return lhs + rhs
        if kind == "-":
            return lhs - rhs
        if kind == "*":
            return lhs * rhs
        if kind == "/":
            if not rhs.is_constant():
                tok = _leftmost_token(node[2])
                raise InputError("division by a non-constant expression", tok.line, tok.col)
            c = rhs.constant_term()
            if c.is_zero():
                tok = _leftmost_token(node[2])
                raise InputError("division by zero", tok.line, tok.col)
            return lhs * c.inverse()
        raise InputError("malformed expression")

    def _eval_minpoly(self, node, where):
        plain = Tower([])
        poly = self._eval_poly(node, plain, ("t",))
        coeffs = [0] * (poly.degree() + 1)
        for e, c in poly.terms.items():
            r = c.as_rational()
            if r is None:
                raise InputError("minimal polynomials take rational coefficients", where.line, where.col)
            coeffs[e[0]] = r
        return tuple(coeffs)


def _leftmost_token(node):
    while not isinstance(node[1], Token):
        node = node[1]
    return node[1]


def parse(text):
    """Parse an input document; raises InputError with positions."""
    return _Parser(text).document()


def parse_integral(text, tower):
    """Parse an integral like ``(x^4-y)^pi * (x^3+y) * (y^2+x)^r2``.

    Returns a list of (curve Polynomial, exponent FieldElement).
    """
    p = _Parser(text)
    factors = []
    while True:
        p.expect("(")
        node = p.expr()
        p.expect(")")
        curve = p._eval_poly(node, tower, AFFINE_VARS)
        if p.peek().text == "^":
            p.next()
            tok = p.peek()
            if tok.text == "(":
                p.next()
                enode = p.expr()
                p.expect(")")
            else:
                enode = p.atom()
                if enode[0] not in ("num", "name"):
                    raise InputError("malformed exponent", tok.line, tok.col)
            epoly = p._eval_poly(enode, tower, AFFINE_VARS)
            if not epoly.is_constant():
                raise InputError("exponents must be constants", tok.line, tok.col)
            exponent = epoly.constant_term()
        else:
            exponent = tower.one()
        factors.append((curve, exponent))
        if p.peek().text == "*":
            p.next()
            continue
        if p.peek().kind == "end":
            break
        tok = p.peek()
        raise InputError("unexpected %r in integral" % tok.text, tok.line, tok.col)
    return factors
