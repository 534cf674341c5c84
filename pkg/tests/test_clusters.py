from dataclasses import dataclass

from darboux.blowup import Configuration, LocalOneForm
from darboux.clusters import (
    Cluster,
    chain_multiplicities,
    cluster_d_I,
    d_and_I,
    linear_system,
    make_cluster,
    passage_conditions,
    theorem3_check,
    virtual_passage_check,
)
from darboux.poly import Polynomial

from conftest import xy


@dataclass
class _Pt:
    parent: object
    proximate_to: frozenset
    on_infinity: bool


class _FakeConfig:
    """Just enough structure for the combinatorial cluster operations."""

    def __init__(self, data):
        self.points = {
            pid: _Pt(parent, frozenset(prox), inf) for pid, (parent, prox, inf) in data.items()
        }

    def chain(self, pid):
        out = []
        while pid is not None:
            out.append(pid)
            pid = self.points[pid].parent
        return list(reversed(out))


def test_chain_multiplicities_free_chain():
    cfg = _FakeConfig({0: (None, [], True), 1: (0, [0], False), 2: (1, [1], False)})
    assert chain_multiplicities(cfg, [0, 1, 2]) == (1, 1, 1)


def test_chain_multiplicities_example_chains():
    # the deep branch of the worked example: P4 proximate to P3 and P1
    cfg = _FakeConfig(
        {
            1: (None, [], True),
            2: (1, [1], True),
            3: (2, [1, 2], False),
            4: (3, [1, 3], False),
            5: (4, [4], False),
            6: (5, [5], False),
            7: (6, [6], False),
            8: (7, [7], False),
            9: (8, [8], False),
        }
    )
    chain = cfg.chain(9)
    m = chain_multiplicities(cfg, chain)
    assert m == (3, 1, 1, 1, 1, 1, 1, 1, 1)
    d, i = d_and_I(cfg, chain, m)
    assert (d, i) == (4, -1)


def test_chain_multiplicities_middle_chain():
    cfg = _FakeConfig(
        {
            1: (None, [], True),
            2: (1, [1], True),
            3: (2, [1, 2], False),
            10: (3, [3], False),
            11: (10, [10], False),
            12: (11, [11], False),
            13: (12, [12], False),
        }
    )
    chain = cfg.chain(13)
    m = chain_multiplicities(cfg, chain)
    assert m == (2, 1, 1, 1, 1, 1, 1)
    assert d_and_I(cfg, chain, m) == (3, -1)


def test_single_root_line_cluster():
    cfg = _FakeConfig({1: (None, [], True)})
    m = chain_multiplicities(cfg, [1])
    assert m == (1,)
    assert d_and_I(cfg, [1], m) == (1, 0)


def test_proximity_equalities_forward(plain):
    cfg = _FakeConfig(
        {
            1: (None, [], True),
            2: (1, [1], True),
            3: (2, [1, 2], False),
            4: (3, [1, 3], False),
            5: (4, [4], False),
        }
    )
    chain = cfg.chain(5)
    m = chain_multiplicities(cfg, chain)
    index = {pid: k for k, pid in enumerate(chain)}
    for k, pid in enumerate(chain[:-1]):
        total = sum(
            m[index[q]] for q in chain if pid in cfg.points[q].proximate_to and q in index
        )
        assert m[k] == total


def _single_point_cluster(tower, m):
    x, y = xy(tower)
    cfg = Configuration(tower)
    root = cfg.add_root((tower.zero(), tower.one()), "Y", tower.zero(), LocalOneForm(a=y, b=x))
    return Cluster(config=cfg, chain=(root.id,), m=(m,))


def test_passage_conditions_simple_point(plain):
    cl = _single_point_cluster(plain, 1)
    rows, monos = passage_conditions(1, cl)
    assert len(monos) == 3
    assert len(rows) == 1
    nonzero = [i for i, c in enumerate(rows[0]) if not c.is_zero()]
    assert len(nonzero) == 1  # exactly one coefficient is pinned at the point


def test_passage_conditions_double_point(plain):
    cl = _single_point_cluster(plain, 2)
    rows, _ = passage_conditions(2, cl)
    assert len(rows) == 3  # jet orders 0 and 1


def test_linear_system_line_through_two_points(plain):
    x, y = xy(plain)
    cfg = Configuration(plain)
    root = cfg.add_root((plain.zero(), plain.one()), "Y", plain.zero(), LocalOneForm(a=y, b=x))
    _pt = cfg.add_child(root.id, ("slope", plain.zero()), LocalOneForm(a=y, b=x), {root.id}, True)
    cl = make_cluster(cfg, _pt.id)
    assert cl.m == (1, 1)
    dim, forms = linear_system(1, cl)
    assert dim == 0
    assert forms[0].text() == "Z"  # the line through (0:1:0) tangent to the slope-0 direction
    assert virtual_passage_check(forms[0], cl)


def test_example_clusters(example_result):
    cand = example_result.candidates
    assert [tuple(sp.cluster.m) for sp in cand.s_points] == [
        (3, 1, 1, 1, 1, 1, 1, 1, 1),
        (2, 1, 1, 1, 1, 1, 1),
        (1, 1, 1, 1, 1),
    ]
    assert [(sp.d, sp.index) for sp in cand.s_points] == [(4, -1), (3, -1), (2, -1)]
    for sp in cand.s_points:
        assert theorem3_check(sp.form_projective, sp.cluster)
        assert virtual_passage_check(sp.form_projective, sp.cluster)


def test_example_quartic_system_rank(example_result):
    # 15 coefficients of a quartic, rank-14 condition system, dimension 0
    sp = example_result.candidates.s_points[0]
    rows, monos = passage_conditions(4, sp.cluster)
    assert len(monos) == 15
    from darboux.linalg import nullspace

    basis = nullspace(rows, sp.curve.tower)
    assert len(basis) == 1
    assert sum(1 for _ in rows) >= 14


def test_passage_condition_rank_bound(example_result):
    # rank can never exceed sum of binom(m_k + 1, 2)
    from darboux.linalg import nullspace

    for sp in example_result.candidates.s_points:
        rows, monos = passage_conditions(sp.d, sp.cluster)
        bound = sum(mk * (mk + 1) // 2 for mk in sp.cluster.m)
        nullity = len(nullspace(rows, sp.curve.tower))
        rank = len(monos) - nullity
        assert rank <= bound
