import flint
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import parabolic_data, root_data
from hessgkm import linalg as la
from hessgkm.actions import (
    GradedRepresentation,
    character,
    commute,
    conjugacy_classes,
    dot_rep,
    invariant_dims,
    invariant_subring,
    star_rep,
    subgroup_elements,
)
from hessgkm.cohomology import RingPresentation, betti, ordinary_ring
from hessgkm.errors import ModeError, NotAutomorphism, NotThetaIdeal
from hessgkm.gkm import FULL, PARTIAL, build_gkm
from hessgkm.hessenberg import full_ideal, minimal_ideal, simple_ideal


def graph(t, n, theta, which, mode=FULL):
    rs, _ = root_data(t, n)
    par = parabolic_data(t, n, theta)
    ideal = {"full": full_ideal, "simple": simple_ideal, "minimal": minimal_ideal}[which](rs, par)
    return build_gkm(rs, par, ideal, mode)


def test_identity_acts_trivially():
    g = graph("B", 2, (1,), "full")
    for rep in (star_rep(g), dot_rep(g)):
        e = rep.weyl.identity
        for k, mats in rep.matrices.items():
            assert mats[e] == la.identity(rep.dims[k])


def test_star_on_disconnected_case():
    g = graph("A", 2, (1,), "minimal")
    rep = star_rep(g, equivariant=True)
    assert invariant_dims(rep) == [3, 0]
    s1 = rep.group[1]
    assert rep.matrices[0][s1] == la.identity(3)
    assert rep.matrices[1][s1] == -la.identity(3)


def test_dot_trivial_on_a2_flag():
    g = graph("A", 2, (), "full")
    rep = dot_rep(g)
    assert all(m == la.identity(m.nrows()) for mats in rep.matrices.values() for m in mats.values())
    chi = character(rep)
    assert all(chi[(k, c)] == [1, 2, 2, 1][k] for k, c in chi)


def test_dot_on_permutohedral_a2():
    g = graph("A", 2, (), "simple")
    rep = dot_rep(g)
    assert invariant_dims(rep) == [1, 2, 1]
    chi = character(rep)
    classes = conjugacy_classes(rep.weyl, rep.group)
    reflection = next(c for c, cls in enumerate(classes) if len(cls) == 3)
    trace = sum(rep.matrices[1][classes[reflection][0]][i, i] for i in range(4))
    assert chi[(1, reflection)] == la.to_fraction(trace) == 2
    assert chi[(1, 0)] == 4


def test_invariant_subrings():
    g = graph("A", 2, (), "simple")
    ring = invariant_subring(dot_rep(g), ordinary_ring(g))
    assert ring.dims == [1, 2, 1]
    P = ring.pairing_matrix(1)
    assert la.rank(P) == 2
    g = graph("A", 2, (1,), "full")
    ring = invariant_subring(star_rep(g), ordinary_ring(g))
    assert ring.dims == [1, 1, 1, 0]
    assert ring.dims[:3] == betti(graph("A", 2, (1,), "full", PARTIAL))


def test_trivial_group_keeps_ring():
    g = graph("B", 2, (), "simple")
    ring = ordinary_ring(g)
    rep = dot_rep(g, [g.group.identity])
    sub = invariant_subring(rep, ring)
    assert sub.dims == ring.dims
    assert sub.structure_constants() == ring.structure_constants()


@pytest.mark.parametrize("t,n,theta", [("A", 3, (2,)), ("B", 2, (1,)), ("G", 2, (2,)), ("A", 3, (1, 3))])
def test_star_invariants_of_flag_are_partial_flag(t, n, theta):
    full = graph(t, n, theta, "full")
    part = graph(t, n, theta, "full", PARTIAL)
    inv = invariant_dims(star_rep(full))
    b = betti(part)
    assert inv == b + [0] * (len(inv) - len(b))


@pytest.mark.parametrize("t,n,theta,which", [("A", 3, (1,), "full"), ("G", 2, (1,), "simple"), ("B", 2, (2,), "minimal")])
def test_multiplicative_and_commuting(t, n, theta, which):
    g = graph(t, n, theta, which)
    star = star_rep(g)
    dot = dot_rep(g)
    assert star.is_multiplicative() and dot.is_multiplicative(exhaustive_limit=24)
    assert commute(star, dot)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 11), st.integers(0, 11))
def test_dot_multiplicative_equivariantly_g2(i, j):
    g = graph("G", 2, (), "simple")
    rep = dot_rep(g, equivariant=True)
    W = rep.weyl
    u, v = W.elements[i], W.elements[j]
    for k, mats in rep.equivariant.items():
        assert mats[W.mul(u, v)] == mats[u] * mats[v]


def test_partial_dot_with_subgroup():
    g = graph("A", 3, (1,), "simple", PARTIAL)
    sub = subgroup_elements(g.group, [2, 3])
    rep = dot_rep(g, sub)
    assert len(rep.group) == 6 and rep.is_multiplicative()
    dims = invariant_dims(rep)
    assert all(x <= y for x, y in zip(dims, betti(g)))


def test_not_theta_ideal():
    rs, _ = root_data("A", 2)
    g = build_gkm(rs, parabolic_data("A", 2, ()), minimal_ideal(rs, parabolic_data("A", 2, (1,))))
    with pytest.raises(NotThetaIdeal):
        star_rep(g, parabolic_data("A", 2, (2,)))


def test_star_needs_full_mode():
    with pytest.raises(ModeError):
        star_rep(graph("A", 2, (1,), "full", PARTIAL))


def test_not_automorphism():
    ring = RingPresentation([1, 1, 1], 2, {
        (0, 0): la.matrix([[1]]), (0, 1): la.matrix([[1]]), (1, 0): la.matrix([[1]]),
        (0, 2): la.matrix([[1]]), (2, 0): la.matrix([[1]]), (1, 1): la.matrix([[1]]),
    })
    _, W = root_data("A", 1)
    e = W.identity
    fake = GradedRepresentation([e], {0: {e: la.identity(1)}, 1: {e: la.identity(1) * 2},
                                      2: {e: la.identity(1)}}, "dot", W, [1, 1, 1])
    with pytest.raises(NotAutomorphism):
        invariant_subring(fake, ring)


def test_serialization():
    g = graph("A", 2, (1,), "full")
    data = star_rep(g).to_json()
    assert data["kind"] == "star" and len(data["group"]) == 2
    assert data["matrices"]["0"] == [[[1, 1]], [[1, 1]]]
