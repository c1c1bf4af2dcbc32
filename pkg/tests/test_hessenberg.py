import itertools

import pytest

from conftest import parabolic_data, root_data
from hessgkm import hessenberg
from hessgkm.errors import InvalidIdeal, InvalidRoot, TooLarge
from hessgkm.hessenberg import (
    enumerate_theta_ideals,
    full_ideal,
    make_ideal,
    minimal_ideal,
    simple_ideal,
    theta_ideal_closure,
    validate_theta_ideal,
)


def brute_force_ideals(rs, par):
    """Subsets I of Phi^+ with Phi_Theta^+ in I, closed under the bracket test, by direct search."""
    pos = list(rs.positive_roots)
    roots = set(rs.roots)
    p_side = pos + [tuple(-x for x in a) for a in par.phi_theta_plus]
    out = []
    for r in range(len(pos) + 1):
        for sub in itertools.combinations(pos, r):
            s = set(sub)
            if not set(par.phi_theta_plus) <= s:
                continue
            h_side = pos + [tuple(-x for x in a) for a in s]
            ok = True
            for b in p_side:
                for g in h_side:
                    t = tuple(x + y for x, y in zip(b, g))
                    if t in roots and not rs.is_positive(t) and tuple(-x for x in t) not in s:
                        ok = False
            if ok:
                out.append(frozenset(s))
    return set(out)


@pytest.mark.parametrize("lie_type,rank,catalan", [
    ("A", 2, 5), ("B", 2, 6), ("G", 2, 8), ("A", 3, 14), ("B", 3, 20), ("A", 4, 42), ("D", 4, 50),
])
def test_borel_counts_are_catalan(lie_type, rank, catalan):
    rs, _ = root_data(lie_type, rank)
    assert len(enumerate_theta_ideals(rs, parabolic_data(lie_type, rank, ()))) == catalan


@pytest.mark.parametrize("lie_type,rank", [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("C", 3)])
def test_enumeration_matches_brute_force(lie_type, rank):
    rs, _ = root_data(lie_type, rank)
    for size in range(rank + 1):
        for theta in itertools.combinations(range(1, rank + 1), size):
            par = parabolic_data(lie_type, rank, theta)
            got = {frozenset(h.roots) for h in enumerate_theta_ideals(rs, par)}
            assert got == brute_force_ideals(rs, par)


@pytest.mark.parametrize("lie_type,rank", [("A", 3), ("B", 3)])
def test_monotone_in_theta(lie_type, rank):
    rs, _ = root_data(lie_type, rank)
    small = {frozenset(h.roots) for h in enumerate_theta_ideals(rs, parabolic_data(lie_type, rank, (1,)))}
    big = {frozenset(h.roots) for h in enumerate_theta_ideals(rs, parabolic_data(lie_type, rank, ()))}
    assert small <= big


def test_ideals_are_lower_sets():
    rs, _ = root_data("B", 3)
    par = parabolic_data("B", 3, ())
    for h in enumerate_theta_ideals(rs, par):
        for a in h.roots:
            for j in range(rs.rank):
                b = list(a)
                b[j] -= 1
                if rs.is_positive(b):
                    assert tuple(b) in h.roots


def test_a2_theta1_examples():
    rs, _ = root_data("A", 2)
    par = parabolic_data("A", 2, (1,))
    ideals = [h.roots for h in enumerate_theta_ideals(rs, par)]
    assert ideals == [((1, 0),), ((1, 0), (0, 1), (1, 1))]
    assert not validate_theta_ideal(rs, par, [(1, 0), (0, 1)])
    with pytest.raises(InvalidIdeal):
        make_ideal(rs, par, [(1, 0), (0, 1)])
    assert simple_ideal(rs, par).roots == full_ideal(rs, par).roots
    assert minimal_ideal(rs, par).roots == ((1, 0),)
    assert theta_ideal_closure(rs, par, [(0, 1)]).roots == full_ideal(rs, par).roots


def test_invalid_root():
    rs, _ = root_data("A", 2)
    with pytest.raises(InvalidRoot):
        make_ideal(rs, parabolic_data("A", 2, ()), [(2, 0)])
    with pytest.raises(InvalidRoot):
        make_ideal(rs, parabolic_data("A", 2, ()), [(-1, 0)])


def test_dimensions():
    rs, _ = root_data("A", 3)
    par = parabolic_data("A", 3, (1,))
    h = full_ideal(rs, par)
    assert h.dim_over_b() == 6 and h.dim_over_p(par) == 5


def test_too_large(monkeypatch):
    monkeypatch.setattr(hessenberg, "MAX_ENUMERATION_ROOTS", 5)
    rs, _ = root_data("A", 3)
    with pytest.raises(TooLarge):
        enumerate_theta_ideals(rs, parabolic_data("A", 3, ()))


@pytest.mark.parametrize("lie_type,rank", [("A", 3), ("B", 2), ("G", 2)])
def test_full_theta_has_one_ideal(lie_type, rank):
    rs, _ = root_data(lie_type, rank)
    par = parabolic_data(lie_type, rank, tuple(range(1, rank + 1)))
    assert [h.roots for h in enumerate_theta_ideals(rs, par)] == [rs.positive_roots]
