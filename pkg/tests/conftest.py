import pytest

from darboux.fields import ConstantSymbol, Tower
from darboux.poly import Polynomial
from darboux.projective import AffineSystem

PI_DIGITS = "3.14159265358979323846264338327950288419716939937510582097494"
R2_DIGITS = "1.41421356237309504880168872420969807856967187537694809"
E_DIGITS = "2.71828182845904523536028747135266249775724709369995957"


@pytest.fixture(scope="session")
def tower():
    """Q(pi)[r2] with r2^2 = 2, the tower of the running example."""
    return Tower(
        [
            ConstantSymbol("pi", "transcendental", PI_DIGITS),
            ConstantSymbol("r2", "algebraic", R2_DIGITS, (-2, 0, 1)),
        ]
    )


@pytest.fixture(scope="session")
def plain():
    return Tower([])


def xy(tower):
    x = Polynomial.variable(tower, ("x", "y"), "x")
    y = Polynomial.variable(tower, ("x", "y"), "y")
    return x, y


def XYZ(tower):
    return tuple(Polynomial.variable(tower, ("X", "Y", "Z"), v) for v in ("X", "Y", "Z"))


def example_one_form(tower):
    """The published degree-8 1-form a dx + b dy of the worked example."""
    x, y = xy(tower)
    pi = tower.symbol("pi")
    r2 = tower.symbol("r2")
    a = (
        (3 + 4 * pi) * x**6 * y**2
        + (3 + r2 + 4 * pi) * x**7
        + 4 * pi * x**3 * y**3
        + (r2 + 4 * pi) * x**4 * y
        - 3 * x**2 * y**3
        - (3 + r2) * x**3 * y
        - r2 * y**2
    )
    b = (
        2 * r2 * x**7 * y
        + (1 + 2 * r2) * x**4 * y**2
        + x**5
        - (2 * r2 + pi) * x**3 * y**2
        - pi * x**4
        - (1 + 2 * r2 + pi) * y**3
        - (1 + pi) * x * y
    )
    return a, b


@pytest.fixture(scope="session")
def example_system(tower):
    a, b = example_one_form(tower)
    system, content = AffineSystem.from_one_form(a, b)
    assert content.is_constant()
    return system


@pytest.fixture(scope="session")
def example_result(example_system):
    from darboux.integrals import first_integral

    result = first_integral(example_system)
    assert result.zero is None
    return result
