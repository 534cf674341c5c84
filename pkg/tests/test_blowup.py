import pytest

from darboux.blowup import (
    Configuration,
    LocalOneForm,
    blow_up,
    multiplicity_sequence,
    proximity_graph,
    resolve_curve_germ,
    strict_transform_curve,
)
from darboux.poly import Polynomial

from conftest import xy


def _config_with_root(tower, form):
    cfg = Configuration(tower)
    root = cfg.add_root((tower.zero(), tower.one()), "Y", tower.zero(), form)
    return cfg, root


def test_multiplicity(plain):
    x, y = xy(plain)
    assert LocalOneForm(a=y, b=x).multiplicity() == 1
    form = LocalOneForm(a=x**2, b=x * y)
    assert form.removed_content == x
    assert form.multiplicity() == 1
    assert LocalOneForm(a=Polynomial.constant(plain, ("x", "y"), 1), b=x).multiplicity() == 0


def test_dicritical_detection(plain):
    x, y = xy(plain)
    assert LocalOneForm(a=-y, b=x).is_dicritical()
    assert not LocalOneForm(a=x, b=y).is_dicritical()
    assert not LocalOneForm(a=y, b=x).is_dicritical()


def test_blow_up_node(plain):
    x, y = xy(plain)
    cfg, root = _config_with_root(plain, LocalOneForm(a=y, b=x))
    dic, children = blow_up(cfg, root.id)
    assert not dic
    assert len(children) == 2
    # the slope-0 child carries the strict form 2y dx + x dy (t-coordinate named y)
    slope_children = [f for pt, f in children if pt.chart[0] == "slope"]
    assert slope_children and slope_children[0].a == 2 * y and slope_children[0].b == x
    for pt, f in children:
        assert f.multiplicity() == 1
        assert pt.proximate_to == {root.id}


def test_blow_up_dicritical_radial(plain):
    x, y = xy(plain)
    cfg, root = _config_with_root(plain, LocalOneForm(a=-y, b=x))
    dic, children = blow_up(cfg, root.id)
    assert dic
    assert children == []


def test_blow_up_divides_expected_power(plain):
    # non-dicritical: x^v divides both pullback coefficients and E stays
    # invariant for the strict transform; dicritical: x^(v+1) divides both
    x, y = xy(plain)
    cfg, root = _config_with_root(plain, LocalOneForm(a=y, b=x))
    _, children = blow_up(cfg, root.id)
    for pt, f in children:
        # E = {x=0} invariant: the dy-coefficient vanishes on x = 0
        restricted = f.b.substitute({"x": Polynomial.zero(plain, ("x", "y"))})
        assert restricted.is_zero()


def test_curve_strict_transform_cusp(plain):
    x, y = xy(plain)
    st, m = strict_transform_curve(y**2 - x**3, "slope", plain.zero())
    assert m == 2
    assert st == y**2 - x


def test_curve_strict_transform_smooth_line(plain):
    # in the slope-0 chart the strict transform of y = x is y - 1, which
    # misses the origin (the curve's tangent direction is elsewhere on E)
    x, y = xy(plain)
    st, m = strict_transform_curve(y - x, "slope", plain.zero())
    assert m == 1
    assert st == y - 1
    assert not st.constant_term().is_zero()


def test_cusp_multiplicity_sequence(plain):
    x, y = xy(plain)
    assert multiplicity_sequence(y**2 - x**3) == [2, 1, 1]
    steps = resolve_curve_germ(y**2 - x**3)
    assert [sorted(s.proximate_to) for s in steps] == [[], [0], [0, 1]]


def test_seventeen_sixths_sequence(plain):
    x, y = xy(plain)
    seq = multiplicity_sequence(x**17 - y**6)
    assert seq == [6, 6, 5, 1, 1, 1, 1, 1]
    assert sum(m * m for m in seq) == 17 * 6
    steps = resolve_curve_germ(x**17 - y**6)
    # proximity equalities hold along the chain
    for i, s in enumerate(steps):
        proximate = [j for j in range(len(steps)) if i in steps[j].proximate_to]
        if i + 1 < len(steps):
            assert seq[i] == sum(seq[j] for j in proximate)
        else:
            assert seq[i] == 1


def test_germ_with_two_branches_rejected(plain):
    x, y = xy(plain)
    with pytest.raises(ValueError):
        resolve_curve_germ(x * y)  # two tangents at the origin


def test_proximity_graph_free_chain(plain):
    pts = {0: (None, set()), 1: (0, {0}), 2: (1, {1})}
    g = proximity_graph(pts)
    assert g.tree_edges == ((0, 1), (1, 2))
    assert g.dotted_edges == ()


def test_proximity_graph_cusp_dotted(plain):
    pts = {0: (None, set()), 1: (0, {0}), 2: (1, {0, 1})}
    g = proximity_graph(pts)
    assert g.dotted_edges == ((2, 0),)
    assert "P2 -> P0 [style=dotted]" in g.dot()


def test_proximity_graph_elision(plain):
    # satellites 3 and 4 proximate to 1: only the deepest edge survives
    pts = {
        0: (None, set()),
        1: (0, {0}),
        2: (1, {1}),
        3: (2, {2, 1}),
        4: (3, {3, 1}),
    }
    g = proximity_graph(pts)
    assert g.dotted_edges == ((4, 1),)


def test_dot_output_stable(plain):
    pts = {0: (None, set()), 1: (0, {0}), 2: (1, {0, 1})}
    g1 = proximity_graph(pts).dot()
    g2 = proximity_graph(pts).dot()
    assert g1 == g2
    assert g1.startswith("digraph proximity {")
