import pytest

from darboux.errors import InputError
from darboux.inputlang import parse, parse_integral
from darboux.poly import Polynomial

from conftest import PI_DIGITS, R2_DIGITS, example_one_form, xy

EXAMPLE_DOC = """
const pi: transcendental ~ %s;
const r2: algebraic t^2-2 ~ %s;
form {
  a = (3+4*pi)*x^6*y^2 + (3+r2+4*pi)*x^7 + 4*pi*x^3*y^3 + (r2+4*pi)*x^4*y
      - 3*x^2*y^3 - (3+r2)*x^3*y - r2*y^2;
  b = 2*r2*x^7*y + (1+2*r2)*x^4*y^2 + x^5 - (2*r2+pi)*x^3*y^2 - pi*x^4
      - (1+2*r2+pi)*y^3 - (1+pi)*x*y
}
""" % (PI_DIGITS, R2_DIGITS)


def test_parse_simple_form():
    doc = parse("const pi: transcendental ~ 3.14159265358979323846; form { a = pi*x; b = y }")
    assert doc.block_kind == "form"
    assert doc.first.text() == "(pi)*x"
    assert doc.second.text() == "y"


def test_parse_system_without_constants():
    doc = parse("system { dx = x; dy = -y }")
    assert doc.block_kind == "system"
    assert doc.symbols == []
    system, content = doc.system()
    assert system.p.text() == "x" and system.q.text() == "-y"


def test_parse_example_document(tower):
    doc = parse(EXAMPLE_DOC)
    a, b = example_one_form(doc.tower)
    assert doc.first.terms.keys() == a.terms.keys()
    assert doc.first.text() == a.text()
    assert doc.second.text() == b.text()


def test_undeclared_symbol_rejected():
    with pytest.raises(InputError, match="undeclared symbol"):
        parse("form { a = q*x; b = y }")


def test_division_by_variable_rejected():
    with pytest.raises(InputError, match="non-constant"):
        parse("form { a = x/y; b = y }")


def test_division_by_constant_allowed():
    doc = parse("form { a = x/2 + 3/4; b = y }")
    assert doc.first.text() == "1/2*x+3/4"


def test_positioned_errors():
    try:
        parse("form {\n a = x +; b = y }")
    except InputError as exc:
        assert exc.line == 2
    else:
        raise AssertionError("expected a syntax error")


def test_options_block():
    doc = parse("system { dx = x; dy = -y } options { cf_depth = 9; budget_points = 100; }")
    assert doc.options.cf_depth == 9
    assert doc.options.budget_points == 100
    assert doc.options.precision_max == 4096


def test_parse_render_round_trip():
    doc = parse(EXAMPLE_DOC)
    text = doc.render()
    doc2 = parse(text)
    assert doc2.render() == text
    # canonical text is faithful, so equal text means equal polynomials
    assert doc2.first.text() == doc.first.text()
    assert doc2.second.text() == doc.second.text()


def test_parse_integral(tower):
    x, y = xy(tower)
    factors = parse_integral("(x^4-y)^pi * (x^3+y) * (y^2+x)^r2", tower)
    assert [f.text() for f, _ in factors] == ["x^4-y", "x^3+y", "y^2+x"]
    assert [str(e) for _, e in factors] == ["pi", "1", "r2"]
    factors2 = parse_integral("(x)^(3/2) * (y)^2", tower)
    assert [str(e) for _, e in factors2] == ["3/2", "2"]


def test_unknown_option_rejected():
    with pytest.raises(InputError, match="unknown option"):
        parse("system { dx = x; dy = -y } options { wibble = 3; }")
