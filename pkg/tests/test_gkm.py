import pytest

from conftest import oracle_cases, case_id, parabolic_data, root_data
from hessgkm.errors import InvalidIdeal
from hessgkm.gkm import FULL, PARTIAL, build_fiber_graph, build_gkm
from hessgkm.hessenberg import HessIdeal, full_ideal, minimal_ideal
from hessgkm.rootsys import normalize_sign


def test_a2_flag_graph():
    rs, _ = root_data("A", 2)
    par = parabolic_data("A", 2, ())
    g = build_gkm(rs, par, full_ideal(rs, par))
    assert len(g.vertices) == 6 and len(g.constraints) == 9
    assert g.components() == 1 and g.dimension == 3
    assert all(g.degree_of(v) == 3 for v in range(6))


def test_a2_partial_graphs():
    rs, _ = root_data("A", 2)
    par = parabolic_data("A", 2, (1,))
    small = build_gkm(rs, par, minimal_ideal(rs, par), PARTIAL)
    assert len(small.vertices) == 3 and small.constraints == [] and small.dimension == 0
    big = build_gkm(rs, par, full_ideal(rs, par), PARTIAL)
    assert len(big.vertices) == 3 and len(big.constraints) == 3 and big.dimension == 2


@pytest.mark.parametrize("case", oracle_cases(), ids=case_id)
def test_constraint_invariants(case):
    rs, par, ideal = case
    for mode in (FULL, PARTIAL):
        g = build_gkm(rs, par, ideal, mode)
        for u, v, lab in g.constraints:
            assert u < v
            assert lab == normalize_sign(lab) and rs.is_root(lab)
        assert len(set(g.constraints)) == len(g.constraints)
        expected_dim = len(ideal.roots) - (len(par.phi_theta_plus) if mode == PARTIAL else 0)
        assert all(len(t) == expected_dim for t in g.tangent)


def test_not_a_theta_ideal_rejected():
    rs, _ = root_data("A", 2)
    par = parabolic_data("A", 2, (2,))
    with pytest.raises(InvalidIdeal):
        build_gkm(rs, par, HessIdeal(((1, 0), (0, 1)), frozenset()), FULL)


def test_fiber_graph_is_levi_flag():
    rs, _ = root_data("A", 3)
    par = parabolic_data("A", 3, (1, 2))
    fib = build_fiber_graph(rs, par)
    assert len(fib.vertices) == 6 and len(fib.constraints) == 9


def test_key_is_content_hash():
    rs, _ = root_data("B", 2)
    par = parabolic_data("B", 2, ())
    a = build_gkm(rs, par, full_ideal(rs, par))
    b = build_gkm(rs, par, full_ideal(rs, par))
    c = build_gkm(rs, par, minimal_ideal(rs, par))
    assert a.key == b.key != c.key
    assert a.to_json()["constraints"] == b.to_json()["constraints"]


@pytest.mark.parametrize("t,n,theta", [("A", 3, (1,)), ("B", 2, (2,)), ("G", 2, ())])
def test_regularity_for_full_ideal(t, n, theta):
    rs, _ = root_data(t, n)
    par = parabolic_data(t, n, theta)
    full = build_gkm(rs, par, full_ideal(rs, par), FULL)
    part = build_gkm(rs, par, full_ideal(rs, par), PARTIAL)
    assert all(full.degree_of(v) == len(rs.positive_roots) for v in range(len(full.vertices)))
    k = len(rs.positive_roots) - len(par.phi_theta_plus)
    assert all(part.degree_of(v) == k for v in range(len(part.vertices)))


@pytest.mark.parametrize("case", oracle_cases()[:40], ids=case_id)
def test_b0_counts_components(case):
    from hessgkm.cohomology import betti

    rs, par, ideal = case
    for mode in (FULL, PARTIAL):
        g = build_gkm(rs, par, ideal, mode)
        assert betti(g)[0] == g.components()
