"""GKM constraint systems of regular semisimple (partial) Hessenberg varieties.

Full mode: vertices are W, and f(w) - f(w s_a) must be divisible by w(a)
for every a in I.  Partial mode: vertices are the cosets W/W_Theta (held by
their minimal-length representatives), with one condition per
a in I minus Phi_Theta^+.  Labels are stored up to sign, normalized so the
first nonzero coordinate is positive.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidIdeal
from .hessenberg import HessIdeal, validate_theta_ideal
from .rootsys import ParabolicData, RootSystem, WeylElement, WeylGroup, normalize_sign

FULL = "full"
PARTIAL = "partial"
FLAG = "fiber"  # the flag variety P/B of the Levi factor


@dataclass
class GKMGraph:
    rs: RootSystem
    parabolic: ParabolicData
    ideal: HessIdeal
    mode: str
    vertices: list  # WeylElement (full/fiber) or minimal coset representatives (partial)
    constraints: list  # (u, v, label) with u < v vertex indices
    tangent: list = field(repr=False)  # tangent[v] = roots w(a); the T-weights there are -w(a)

    @property
    def group(self) -> WeylGroup:
        return self.parabolic.group

    @property
    def nvars(self) -> int:
        return self.rs.rank

    @property
    def dimension(self) -> int:
        """Complex dimension: |I| (full), |I minus Phi_Theta^+| (partial), |Phi_Theta^+| (fiber)."""
        return len(self.tangent[0]) if self.tangent else 0

    @cached_property
    def vertex_index(self) -> dict:
        return {w: i for i, w in enumerate(self.vertices)}

    def vertex_of(self, w: WeylElement) -> int:
        """Vertex index holding the group element w (its coset in partial mode)."""
        if self.mode == PARTIAL:
            return self.parabolic.coset_of[w]
        return self.vertex_index[w]

    def degree_of(self, v: int) -> int:
        return sum(1 for a, b, _ in self.constraints if a == v or b == v)

    def components(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _ in self.constraints:
            parent[find(a)] = find(b)
        return len({find(x) for x in range(len(self.vertices))})

    def to_json(self) -> dict:
        return {
            "type": self.rs.lie_type,
            "rank": self.rs.rank,
            "mode": self.mode,
            "theta": sorted(self.parabolic.theta),
            "ideal": self.ideal.serialize(),
            "vertices": [list(w.word) for w in self.vertices],
            "constraints": [[a, b, list(lab)] for a, b, lab in self.constraints],
        }

    @cached_property
    def key(self) -> str:
        """Content hash of everything the solution spaces depend on."""
        payload = {
            "n": self.rs.rank,
            "vertices": [list(map(list, w.images)) for w in self.vertices],
            "constraints": [[a, b, [str(x) for x in lab]] for a, b, lab in self.constraints],
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


def _full_constraints(W: WeylGroup, vertices: list, roots) -> tuple[list, list]:
    index = {w: i for i, w in enumerate(vertices)}
    seen = set()
    cons = []
    tangent = []
    refl = {a: W.reflection(a) for a in roots}
    for i, w in enumerate(vertices):
        tw = []
        for a in roots:
            v = W.mul(w, refl[a])
            j = index[v]
            lab = w.act(a)
            tw.append(lab)
            key = (min(i, j), max(i, j), normalize_sign(lab))
            if key not in seen:
                seen.add(key)
                cons.append(key)
        tangent.append(tw)
    cons.sort()
    return cons, tangent


def build_gkm(rs: RootSystem, parabolic: ParabolicData, ideal: HessIdeal, mode: str = FULL) -> GKMGraph:
    if not validate_theta_ideal(rs, parabolic, ideal.roots):
        raise InvalidIdeal(f"not a Theta-ideal for theta={sorted(parabolic.theta)}")
    W = parabolic.group
    if mode == FULL:
        cons, tangent = _full_constraints(W, W.elements, ideal.roots)
        return GKMGraph(rs, parabolic, ideal, FULL, list(W.elements), cons, tangent)
    if mode != PARTIAL:
        raise ValueError(f"unknown mode {mode!r}")
    roots = [a for a in ideal.roots if a not in set(parabolic.phi_theta_plus)]
    reps = parabolic.representatives
    refl = {a: W.reflection(a) for a in roots}
    seen = set()
    cons = []
    tangent = []
    for i, w in enumerate(reps):
        tw = []
        for a in roots:
            j = parabolic.coset_of[W.mul(w, refl[a])]
            lab = w.act(a)
            tw.append(lab)
            if j == i:
                continue
            key = (min(i, j), max(i, j), normalize_sign(lab))
            if key not in seen:
                seen.add(key)
                cons.append(key)
        tangent.append(tw)
    cons.sort()
    return GKMGraph(rs, parabolic, ideal, PARTIAL, list(reps), cons, tangent)


def build_fiber_graph(rs: RootSystem, parabolic: ParabolicData) -> GKMGraph:
    """GKM graph of P/B, the full flag variety of the root subsystem Phi_Theta."""
    W = parabolic.group
    ideal = HessIdeal(tuple(parabolic.phi_theta_plus), parabolic.theta)
    cons, tangent = _full_constraints(W, list(parabolic.w_theta), ideal.roots)
    return GKMGraph(rs, parabolic, ideal, FLAG, list(parabolic.w_theta), cons, tangent)
