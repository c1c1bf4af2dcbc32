from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import root_data
from hessgkm.errors import UnsupportedType
from hessgkm.rootsys import SUPPORTED, build_root_system, normalize_sign, parabolic

ALL = [(t, n) for t, ranks in SUPPORTED.items() for n in ranks]


def orbit_roots(rs, W):
    """Positive roots as the W-orbit of the simple roots (independent of root strings)."""
    out = set()
    for w in W.elements:
        for a in rs.simple_roots:
            out.add(w.act(a))
    return {r for r in out if all(x >= 0 for x in r)}


@pytest.mark.parametrize("lie_type,rank", ALL)
def test_root_strings_agree_with_reflection_orbits(lie_type, rank):
    rs, W = root_data(lie_type, rank)
    assert set(rs.positive_roots) == orbit_roots(rs, W)


@pytest.mark.parametrize("lie_type,rank,order", [
    ("A", 1, 2), ("A", 2, 6), ("A", 3, 24), ("A", 4, 120), ("B", 2, 8), ("B", 3, 48),
    ("B", 4, 384), ("C", 2, 8), ("C", 3, 48), ("C", 4, 384), ("D", 4, 192), ("G", 2, 12),
])
def test_group_orders(lie_type, rank, order):
    assert len(root_data(lie_type, rank)[1]) == order


def test_conventions():
    b2 = build_root_system("B", 2)
    assert (1, 2) in b2.positive_roots and (2, 1) not in b2.positive_roots
    c2 = build_root_system("C", 2)
    assert (2, 1) in c2.positive_roots
    g2 = build_root_system("G", 2)
    assert (3, 2) in g2.positive_roots
    d4 = build_root_system("D", 4)
    assert d4.cartan[1] == (-1, 2, -1, -1)


@pytest.mark.parametrize("lie_type,rank", [("Z", 2), ("A", 9), ("D", 3), ("G", 3)])
def test_unsupported(lie_type, rank):
    with pytest.raises(UnsupportedType):
        build_root_system(lie_type, rank)


@pytest.mark.parametrize("lie_type,rank", ALL)
def test_fundamental_weights_are_dual(lie_type, rank):
    rs = build_root_system(lie_type, rank)
    for i, w in enumerate(rs.fundamental_weights):
        for j, a in enumerate(rs.simple_roots):
            assert rs.pairing(w, a) == (1 if i == j else 0)


@pytest.mark.parametrize("lie_type,rank", [("A", 3), ("B", 3), ("G", 2)])
def test_length_is_word_length(lie_type, rank):
    _, W = root_data(lie_type, rank)
    for w in W.elements:
        assert w.length == len(w.word)
        # the word really multiplies out to w
        g = W.identity
        for i in w.word:
            g = W.mul(g, W.s(i))
        assert g == w


words = st.lists(st.integers(min_value=1, max_value=3), max_size=12)


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_group_law_b3(u_word, v_word):
    rs, W = root_data("B", 3)

    def elt(word):
        g = W.identity
        for i in word:
            g = W.mul(g, W.s(i))
        return g

    u, v = elt(u_word), elt(v_word)
    uv = W.mul(u, v)
    assert W.mul(uv, W.inverse(v)) == u
    for a in rs.positive_roots:
        assert uv.act(a) == u.act(v.act(a))
        assert rs.is_root(uv.act(a))
        # W preserves the inner product
        assert rs.inner(u.act(a), u.act(a)) == rs.inner(a, a)


@pytest.mark.parametrize("lie_type,rank", [("A", 2), ("B", 2), ("G", 2)])
def test_reflection_of_root(lie_type, rank):
    rs, W = root_data(lie_type, rank)
    for a in rs.positive_roots:
        s = W.reflection(a)
        assert s.act(a) == tuple(-x for x in a)
        assert W.mul(s, s) == W.identity


@pytest.mark.parametrize("lie_type,rank,theta", [("A", 3, (1,)), ("A", 3, (1, 3)), ("B", 3, (2, 3)), ("G", 2, (2,))])
def test_parabolic_cosets(lie_type, rank, theta):
    rs, W = root_data(lie_type, rank)
    par = parabolic(rs, theta, W)
    assert len(par.cosets) * len(par.w_theta) == len(W)
    for coset in par.cosets:
        rep = coset[0]
        assert all(rep.length < w.length for w in coset[1:])
        # minimal representatives send Phi_Theta^+ to positive roots
        assert all(rs.is_positive(rep.act(a)) for a in par.phi_theta_plus)
    assert all(sum(r[i - 1] for i in range(1, rank + 1) if i not in theta) == 0 for r in par.phi_theta_plus)


def test_theta_out_of_range():
    rs, W = root_data("A", 2)
    with pytest.raises(ValueError):
        parabolic(rs, {3}, W)


def test_normalize_sign():
    assert normalize_sign((0, -1, 2)) == (0, 1, -2)
    assert normalize_sign((Fraction(1, 2), -1)) == (Fraction(1, 2), -1)


def test_conjugacy_classes_s3():
    _, W = root_data("A", 2)
    sizes = sorted(len(c) for c in W.conjugacy_classes())
    assert sizes == [1, 2, 3]


@pytest.mark.parametrize("lie_type,rank", ALL)
def test_braid_relations(lie_type, rank):
    rs, W = root_data(lie_type, rank)
    order_from_cartan = {0: 2, 1: 3, 2: 4, 3: 6}
    for i in range(1, rank + 1):
        assert W.mul(W.s(i), W.s(i)) == W.identity
        for j in range(i + 1, rank + 1):
            m = order_from_cartan[rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]]
            st_ = W.mul(W.s(i), W.s(j))
            g = W.identity
            for step in range(1, m + 1):
                g = W.mul(g, st_)
                assert (g == W.identity) == (step == m)


def test_extreme_parabolics():
    rs, W = root_data("A", 2)
    assert len(parabolic(rs, (), W).cosets) == 6
    assert len(parabolic(rs, (1, 2), W).cosets) == 1
    assert W.identity.act((1, 0)) == (1, 0)
