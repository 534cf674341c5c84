from fractions import Fraction

import mpmath
import pytest

from darboux.blowup import Configuration, LocalOneForm
from darboux.errors import PrecisionExhausted
from darboux.poly import Polynomial
from darboux.projective import AffineSystem, projectivize
from darboux.reduction import (
    CFExpansion,
    NEGATIVE_OR_COMPLEX,
    ORDINARY,
    POSITIVE_IRRATIONAL,
    POSITIVE_RATIONAL,
    SIMPLE,
    ZERO_EIGENVALUE,
    classify,
    continued_fraction,
    eigenvalues_along_divisor,
    extended_step,
    prox_of,
    proximity_equalities_hold,
    seidenberg_over_infinity,
)

from conftest import xy


def test_classify_negative_ratio(plain):
    x, y = xy(plain)
    cls = classify(LocalOneForm(a=2 * y, b=x))
    assert cls.kind == SIMPLE and cls.ratio_class == NEGATIVE_OR_COMPLEX


def test_classify_positive_irrational(tower):
    x, y = xy(tower)
    s1 = tower.symbol("pi")
    cls = classify(LocalOneForm(a=y, b=-s1 * x))
    assert cls.kind == SIMPLE and cls.ratio_class == POSITIVE_IRRATIONAL


def test_classify_positive_rational_is_ordinary(plain):
    x, y = xy(plain)
    cls = classify(LocalOneForm(a=y, b=-2 * x))
    assert cls.kind == ORDINARY and cls.ratio_class == POSITIVE_RATIONAL
    assert cls.rational_ratio == 2


def test_classify_saddle_node_and_nilpotent(plain):
    x, y = xy(plain)
    cls = classify(LocalOneForm(a=y, b=x * y + x * x))  # det 0, trace nonzero
    assert cls.kind == SIMPLE and cls.ratio_class == ZERO_EIGENVALUE
    cls2 = classify(LocalOneForm(a=x, b=y * y + x * x))  # nilpotent linear part
    assert cls2.kind == ORDINARY


def test_classify_higher_multiplicity(plain):
    x, y = xy(plain)
    assert classify(LocalOneForm(a=y * y, b=x * x)).kind == ORDINARY


def test_eigenvalues_along_divisor(tower):
    x, y = xy(tower)
    pi = tower.symbol("pi")
    # delta u dt - alpha t du with t = x: eigenvalues (tan, perp) = (-delta, -alpha)
    form = LocalOneForm(a=(4 + pi) * y, b=-pi * x, divisors={})
    tan, perp = eigenvalues_along_divisor(form, "x")
    assert tan / perp == (4 + pi) / pi


def test_saddle_reduction_shape(plain):
    # both points at infinity of the saddle are 2:1 resonant nodes:
    # ordinary, blown up once into a dicritical radial point and a simple
    # negative corner on the line at infinity
    x, y = xy(plain)
    red = seidenberg_over_infinity(projectivize(AffineSystem(p=x, q=-y)))
    cfg = red.config
    assert len(red.roots) == 2
    assert sorted(red.omega_prime) == [1, 2, 3, 5]
    for root in red.roots:
        cls = red.point_class(root)
        assert cls.kind == ORDINARY and cls.rational_ratio == 2
    for pid in (3, 5):
        assert red.point_class(pid).rational_ratio == 1
        assert red.is_dicritical(pid) is True
        assert cfg.children(pid) == []


def test_post_seidenberg_frontier_simple(tower, example_system):
    red = seidenberg_over_infinity(projectivize(example_system))
    cfg = red.config
    for pid in cfg.ids():
        cls = red.point_class(pid)
        if pid not in red.omega_prime:
            assert cls.kind == SIMPLE


def test_continued_fraction_rationals(plain):
    cf = continued_fraction(plain.rational(17), plain.rational(6), 12)
    assert cf.exact and list(cf.digits) == [2, 1, 5]
    cf2 = continued_fraction(plain.rational(3), plain.rational(2), 12)
    assert cf2.exact and list(cf2.digits) == [1, 2]
    assert cf.convergent() == Fraction(17, 6)


def test_continued_fraction_certified_digits(tower):
    num = 4 + 8 * tower.symbol("r2")
    den = tower.symbol("pi")
    cf = continued_fraction(num, den, 8)
    assert not cf.exact
    with mpmath.workdps(80):
        g = (4 + 8 * mpmath.sqrt(2)) / mpmath.pi
        expected = []
        for _ in range(8):
            c = int(mpmath.floor(g))
            expected.append(c)
            g = 1 / (g - c)
    assert list(cf.digits) == expected


def test_continued_fraction_needs_positive_value(tower):
    with pytest.raises(ValueError):
        continued_fraction(tower.rational(-1), tower.rational(2), 4)


def test_prox_of_cusp(plain):
    chain = prox_of(continued_fraction(plain.rational(3), plain.rational(2), 12))
    assert chain.multiplicities == [2, 1, 1]
    assert sum(m * m for m in chain.multiplicities) == 6
    assert chain.prox[2] == {0, 1}
    assert proximity_equalities_hold(chain)


def test_prox_of_seventeen_sixths(plain):
    chain = prox_of(continued_fraction(plain.rational(17), plain.rational(6), 12))
    assert chain.multiplicities == [6, 6, 5, 1, 1, 1, 1, 1]
    assert sum(m * m for m in chain.multiplicities) == 102
    assert proximity_equalities_hold(chain)
    assert chain.satellite == [False, False, False, True, True, True, True, True]


def test_prox_of_small_ratio(plain):
    chain = prox_of(continued_fraction(plain.rational(2), plain.rational(3), 12))
    assert chain.multiplicities == [2, 1, 1]
    assert sum(m * m for m in chain.multiplicities) == 6


def _model_form(tower, delta, alpha):
    x, y = xy(tower)
    return LocalOneForm(a=delta * y, b=-alpha * x, divisors={0: x})


def test_extended_step_large_ratio(tower):
    # gamma = pi > 1: the free child (ratio pi - 1) is retained, the
    # satellite corner has negative ratio and is dropped
    cfg = Configuration(tower)
    pi = tower.symbol("pi")
    root = cfg.add_root((tower.zero(), tower.one()), "Y", tower.zero(), _model_form(tower, pi, tower.one()))
    cfg.info[root.id] = {"class": classify(cfg.forms[root.id])}
    kids = extended_step(cfg, root.id)
    assert len(kids) == 1
    pt, form, cls = kids[0]
    assert pt.free
    tan, perp = eigenvalues_along_divisor(form, "x")
    assert tan / perp == pi - 1


def test_extended_step_small_ratio_turns(tower):
    # 0 < gamma = pi - 3 < 1: the chain turns into the satellite corner
    cfg = Configuration(tower)
    gamma = tower.symbol("pi") - 3
    root = cfg.add_root((tower.zero(), tower.one()), "Y", tower.zero(), _model_form(tower, gamma, tower.one()))
    cfg.info[root.id] = {"class": classify(cfg.forms[root.id])}
    kids = extended_step(cfg, root.id)
    assert len(kids) == 1
    pt, form, cls = kids[0]
    assert not pt.free  # proximate to the model's external divisor and parent
    tan, perp = eigenvalues_along_divisor(form, "x")
    assert tan / perp == (1 - gamma) / gamma  # the 1/gamma - 1 type corner value


def test_model_chain_matches_prox_prefix(tower):
    # Theorem-2 local model t du - (delta/alpha) u dt: iterating the
    # extended step reproduces Prox(delta/alpha) digit for digit
    delta = 4 + 8 * tower.symbol("r2")
    alpha = tower.symbol("pi")
    cf = continued_fraction(delta, alpha, 6)
    predicted = prox_of(cf)
    cfg = Configuration(tower)
    root = cfg.add_root((tower.zero(), tower.one()), "Y", tower.zero(), _model_form(tower, delta, alpha))
    cfg.info[root.id] = {"class": classify(cfg.forms[root.id])}
    ids = [root.id]
    for _ in range(len(predicted) - 1):
        kids = extended_step(cfg, ids[-1])
        assert len(kids) == 1
        ids.append(kids[0][0].id)
    id_index = {pid: i for i, pid in enumerate(ids)}
    for i, pid in enumerate(ids):
        if i == 0:
            continue
        pt = cfg.points[pid]
        in_chain = {id_index[q] for q in pt.proximate_to if q in id_index}
        assert in_chain == predicted.prox[i]
        assert (not pt.free) == predicted.satellite[i]
