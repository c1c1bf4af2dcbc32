"""p-Hessenberg spaces as Theta-ideals I(H) of the positive roots.

A p-Hessenberg space is ``H = b + sum_{a in I} g_{-a}`` with ``I`` a subset
of the positive roots, stable under ad(p).  Whether a subset qualifies is
decided by bracket closure: a root vector of p bracketed with a root vector
of H lands in the root space of the sum whenever the sum is a root (this is
nonzero by the Chevalley basis theorem), so no structure constants enter.

The closure test below is a reconstruction of the Theta-ideal notion from
that bracket argument, not a quoted definition.  The tests check its
consequences independently, e.g. that every result is a lower set of the
root poset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidIdeal, InvalidRoot, TooLarge
from .rootsys import ParabolicData, RootSystem, neg

MAX_ENUMERATION_ROOTS = 24


@dataclass(frozen=True)
class HessIdeal:
    roots: tuple  # positive roots in the root system's order
    theta: frozenset

    def __len__(self):
        return len(self.roots)

    def __contains__(self, root):
        return tuple(root) in self.roots

    def dim_over_b(self) -> int:
        return len(self.roots)

    def dim_over_p(self, parabolic: ParabolicData) -> int:
        return len(self.roots) - len(parabolic.phi_theta_plus)

    def serialize(self) -> list[list[int]]:
        return [list(r) for r in self.roots]


def _canonical(rs: RootSystem, roots: Iterable[Sequence]) -> tuple:
    out = set()
    for r in roots:
        r = tuple(int(x) for x in r)
        if not rs.is_positive(r):
            raise InvalidRoot(f"{list(r)} is not a positive root of {rs.name}")
        out.add(r)
    return tuple(a for a in rs.positive_roots if a in out)


def _violations(rs: RootSystem, parabolic: ParabolicData, roots: set) -> list[tuple]:
    """Positive roots that bracket closure forces into I but are missing."""
    p_roots = list(rs.positive_roots) + [neg(a) for a in parabolic.phi_theta_plus]
    h_roots = list(rs.positive_roots) + [neg(a) for a in roots]
    missing = []
    for b in p_roots:
        for g in h_roots:
            s = tuple(x + y for x, y in zip(b, g))
            if rs.root_index.get(s, 0) < 0 and neg(s) not in roots:
                missing.append(neg(s))
    return missing


def validate_theta_ideal(rs: RootSystem, parabolic: ParabolicData, roots: Iterable[Sequence]) -> bool:
    rset = set(_canonical(rs, roots))
    if not set(parabolic.phi_theta_plus) <= rset:
        return False
    return not _violations(rs, parabolic, rset)


def theta_ideal_closure(rs: RootSystem, parabolic: ParabolicData, roots: Iterable[Sequence]) -> HessIdeal:
    """Smallest Theta-ideal containing the given roots and Phi_Theta^+."""
    rset = set(_canonical(rs, roots)) | set(parabolic.phi_theta_plus)
    while True:
        missing = _violations(rs, parabolic, rset)
        if not missing:
            break
        rset |= set(missing)
    return HessIdeal(_canonical(rs, rset), parabolic.theta)


def make_ideal(rs: RootSystem, parabolic: ParabolicData, roots: Iterable[Sequence]) -> HessIdeal:
    canon = _canonical(rs, roots)
    if not validate_theta_ideal(rs, parabolic, canon):
        raise InvalidIdeal(
            f"{[list(r) for r in canon]} is not a Theta-ideal for theta={sorted(parabolic.theta)}"
        )
    return HessIdeal(canon, parabolic.theta)


def full_ideal(rs: RootSystem, parabolic: ParabolicData) -> HessIdeal:
    return HessIdeal(tuple(rs.positive_roots), parabolic.theta)


def minimal_ideal(rs: RootSystem, parabolic: ParabolicData) -> HessIdeal:
    return HessIdeal(tuple(parabolic.phi_theta_plus), parabolic.theta)


def simple_ideal(rs: RootSystem, parabolic: ParabolicData) -> HessIdeal:
    return theta_ideal_closure(rs, parabolic, rs.simple_roots)


def _lower_ideals(rs: RootSystem, forced: set) -> list[set]:
    """All lower order ideals of the root poset containing ``forced``."""
    order = list(rs.positive_roots)  # sorted by height
    n = rs.rank
    below = {}
    for a in order:
        preds = []
        for j in range(n):
            b = list(a)
            b[j] -= 1
            b = tuple(b)
            if rs.is_positive(b):
                preds.append(b)
        below[a] = preds
    out = []

    def rec(k: int, chosen: set):
        if k == len(order):
            out.append(set(chosen))
            return
        a = order[k]
        if all(b in chosen for b in below[a]):
            chosen.add(a)
            rec(k + 1, chosen)
            chosen.discard(a)
        if a not in forced:
            rec(k + 1, chosen)

    rec(0, set())
    return out


def enumerate_theta_ideals(rs: RootSystem, parabolic: ParabolicData) -> list[HessIdeal]:
    """All Theta-ideals, sorted by size and then lexicographically by root position.

    Candidates are the lower ideals of the root poset containing Phi_Theta^+
    (every Theta-ideal is one); each candidate is then validated in full.
    """
    if len(rs.positive_roots) > MAX_ENUMERATION_ROOTS:
        raise TooLarge(f"{rs.name} has more than {MAX_ENUMERATION_ROOTS} positive roots")
    pos_index = {a: i for i, a in enumerate(rs.positive_roots)}
    found = []
    for cand in _lower_ideals(rs, set(parabolic.phi_theta_plus)):
        if set(parabolic.phi_theta_plus) <= cand and not _violations(rs, parabolic, cand):
            found.append(HessIdeal(_canonical(rs, cand), parabolic.theta))
    found.sort(key=lambda h: (len(h.roots), [pos_index[a] for a in h.roots]))
    return found
