"""Star and dot actions on GKM cohomology as exact matrices.

Matrices use the column convention: column i holds the coordinates of the
image of basis vector i, so ``M(uv) = M(u) M(v)`` for these left actions.

* star (right multiplication on vertices, full mode only):
  ``(u * f)(v) = f(v u)``
* dot (Weyl action twisting the coefficients):
  ``(w . f)(v) = w(f(w^-1 v))``, with ``w^-1 v`` read through the coset map
  in partial mode.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from . import linalg as la
from .cohomology import GKMCohomology, RingPresentation, cohomology, p_dim
from .errors import ModeError, NotAutomorphism, NotThetaIdeal
from .gkm import FULL, PARTIAL, GKMGraph
from .rootsys import WeylElement, WeylGroup

STAR = "star"
DOT = "dot"


@dataclass
class GradedRepresentation:
    group: list  # WeylElement
    matrices: dict  # degree -> {WeylElement: fmpq_mat} on ordinary cohomology
    kind: str
    weyl: WeylGroup = field(repr=False)
    dims: list = field(default_factory=list)
    equivariant: dict | None = None  # degree -> {WeylElement: fmpq_mat} on Sol_k

    def degrees(self) -> list[int]:
        return sorted(self.matrices)

    def matrix(self, k: int, w: WeylElement) -> flint.fmpq_mat:
        return self.matrices[k][w]

    def is_multiplicative(self, exhaustive_limit: int = 8, samples: int = 64, seed: int = 0) -> bool:
        W = self.weyl
        pairs = [(u, v) for u in self.group for v in self.group]
        if len(self.group) > exhaustive_limit:
            pairs = random.Random(seed).sample(pairs, min(samples, len(pairs)))
        for k, mats in self.matrices.items():
            if mats[W.identity] != la.identity(self.dims[k]):
                return False
            for u, v in pairs:
                if mats[W.mul(u, v)] != mats[u] * mats[v]:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "group": [list(w.word) for w in self.group],
            "matrices": {
                str(k): [[[int(x.p), int(x.q)] for x in m.entries()] for m in (mats[w] for w in self.group)]
                for k, mats in sorted(self.matrices.items())
            },
        }


# ---- row transforms ---------------------------------------------------------

def _permute_blocks(rows: flint.fmpq_mat, source: list, p: int) -> list:
    """Entries of rows whose vertex block v is replaced by block source[v]."""
    ents = rows.entries()
    width = rows.ncols()
    out = []
    for r in range(rows.nrows()):
        base = r * width
        for s in source:
            out.extend(ents[base + s * p: base + (s + 1) * p])
    return out


def star_transform(graph: GKMGraph, u: WeylElement, rows: flint.fmpq_mat, k: int) -> flint.fmpq_mat:
    W = graph.group
    source = [graph.vertex_index[W.mul(v, u)] for v in graph.vertices]
    return flint.fmpq_mat(rows.nrows(), rows.ncols(), _permute_blocks(rows, source, p_dim(graph.nvars, k)))


def dot_transform(graph: GKMGraph, w: WeylElement, rows: flint.fmpq_mat, k: int) -> flint.fmpq_mat:
    W = graph.group
    winv = W.inverse(w)
    p = p_dim(graph.nvars, k)
    source = [graph.vertex_of(W.mul(winv, v)) for v in graph.vertices]
    flat = _permute_blocks(rows, source, p)
    if not flat:
        return flint.fmpq_mat(rows.nrows(), rows.ncols())
    from .polyring import degree_spaces

    blocks = flint.fmpq_mat(rows.nrows() * len(graph.vertices), p, flat)
    moved = blocks * degree_spaces(graph.nvars).action_matrix(w, k)
    return flint.fmpq_mat(rows.nrows(), rows.ncols(), moved.entries())


def check_star_permutes_constraints(graph: GKMGraph, u: WeylElement) -> bool:
    W = graph.group
    cons = set(graph.constraints)
    for a, b, lab in graph.constraints:
        x = graph.vertex_index[W.mul(graph.vertices[a], u)]
        y = graph.vertex_index[W.mul(graph.vertices[b], u)]
        if (min(x, y), max(x, y), lab) not in cons:
            return False
    return True


# ---- representations --------------------------------------------------------

_REPS: dict = {}
_REPS_LOCK = threading.Lock()


def _build(coh: GKMCohomology, group: list, kind: str, transform, k_max: int, equivariant: bool):
    graph = coh.graph
    b = coh.betti()
    mats: dict = {}
    eq: dict | None = {} if equivariant else None
    for k in range(k_max + 1):
        gens = coh.generators(k)
        mats[k] = {}
        for w in group:
            if b[k] == 0:
                mats[k][w] = la.zeros(0, 0)
                continue
            img = transform(graph, w, gens, k)
            mats[k][w] = coh.ordinary_coords(k, img).transpose()
        if equivariant:
            sol = coh.solution(k)
            eq[k] = {}
            for w in group:
                img = transform(graph, w, sol.basis, k)
                if not sol.contains(img):
                    raise ArithmeticError(f"{kind} action of {w} leaves the degree-{k} solution space")
                eq[k][w] = sol.coords(img).transpose()
    return GradedRepresentation(list(group), mats, kind, graph.group, list(b[: k_max + 1]), eq)


def _memo(key, build):
    with _REPS_LOCK:
        hit = _REPS.get(key)
    if hit is None:
        hit = build()
        with _REPS_LOCK:
            _REPS.setdefault(key, hit)
    return hit


def clear_memo():
    with _REPS_LOCK:
        _REPS.clear()


def star_rep(graph: GKMGraph, parabolic=None, equivariant: bool = False, store=None) -> GradedRepresentation:
    """W_Theta acting by (u * f)(v) = f(v u) on a full-mode graph."""
    if graph.mode != FULL:
        raise ModeError("the star action is defined on full-mode graphs")
    parabolic = parabolic if parabolic is not None else graph.parabolic
    group = list(parabolic.w_theta)
    for u in group:
        if not check_star_permutes_constraints(graph, u):
            raise NotThetaIdeal(f"{u} does not permute the constraints; I is not a Theta-ideal")
    coh = cohomology(graph, store)
    key = (graph.key, graph.mode, STAR, tuple(w.images for w in group), equivariant, id(store))
    return _memo(key, lambda: _build(coh, group, STAR, star_transform, graph.dimension, equivariant))


def dot_rep(graph: GKMGraph, subgroup=None, equivariant: bool = False, store=None) -> GradedRepresentation:
    """A subgroup of W acting by (w . f)(v) = w(f(w^-1 v)); default all of W."""
    if graph.mode not in (FULL, PARTIAL):
        raise ModeError(f"no dot action on {graph.mode} graphs")
    group = list(subgroup) if subgroup is not None else list(graph.group.elements)
    coh = cohomology(graph, store)
    key = (graph.key, graph.mode, DOT, tuple(w.images for w in group), equivariant, id(store))
    return _memo(key, lambda: _build(coh, group, DOT, dot_transform, graph.dimension, equivariant))


def subgroup_elements(W: WeylGroup, indices) -> list[WeylElement]:
    """W_Xi for 1-based simple-root indices, as canonical elements of W."""
    return [W.canonical(e.images) for e in WeylGroup(W.rs, indices).elements]


# ---- invariants and characters ----------------------------------------------

def projector(mats: dict, group: list, dim: int) -> flint.fmpq_mat:
    total = la.zeros(dim, dim)
    for w in group:
        total += mats[w]
    return total * flint.fmpq(1, len(group))


def _trace(m: flint.fmpq_mat) -> flint.fmpq:
    return sum((m[i, i] for i in range(m.nrows())), flint.fmpq(0))


def invariant_dims(rep: GradedRepresentation, equivariant: bool = False) -> list[int]:
    """Per degree, rank of the Reynolds projector, cross-checked by the trace average."""
    source = rep.equivariant if equivariant else rep.matrices
    if source is None:
        raise ValueError("representation carries no equivariant matrices")
    out = []
    for k in sorted(source):
        mats = source[k]
        dim = mats[rep.group[0]].nrows()
        if dim == 0:
            out.append(0)
            continue
        proj = projector(mats, rep.group, dim)
        r = la.rank(proj)
        avg = sum((_trace(mats[w]) for w in rep.group), flint.fmpq(0)) / len(rep.group)
        if avg != r:
            raise ArithmeticError(
                f"degree {k}: projector rank {r} but trace average {avg} ({rep.kind})"
            )
        out.append(r)
    return out


def invariant_basis(rep: GradedRepresentation, k: int) -> flint.fmpq_mat:
    """Rows spanning the invariant coordinate vectors in degree k (rref)."""
    mats = rep.matrices[k]
    dim = rep.dims[k]
    if dim == 0:
        return la.zeros(0, 0)
    return la.rref(projector(mats, rep.group, dim).transpose())[0]


def invariant_subring(rep: GradedRepresentation, ring: RingPresentation, samples: int = 200,
                      seed: int = 0) -> RingPresentation:
    """Structure constants of the invariants, on an echelon basis of each degree."""
    rng = random.Random(seed)
    checks = []
    for a in range(ring.top + 1):
        for b in range(a, ring.top + 1 - a):
            for i in range(ring.dims[a]):
                for j in range(ring.dims[b]):
                    for w in rep.group:
                        checks.append((a, i, b, j, w))
    if len(checks) > samples:
        checks = rng.sample(checks, samples)
    for a, i, b, j, w in checks:
        x, y = ring.basis_vector(a, i), ring.basis_vector(b, j)
        ma, mb, mc = rep.matrices[a][w], rep.matrices[b][w], rep.matrices[a + b][w]
        lhs = ring.multiply(a, x, b, y) * mc.transpose()
        rhs = ring.multiply(a, x * ma.transpose(), b, y * mb.transpose())
        if lhs != rhs:
            raise NotAutomorphism(f"{rep.kind} action of {w} is not multiplicative on degrees {a},{b}")

    bases = [invariant_basis(rep, k) if ring.dims[k] else la.zeros(0, 0) for k in range(ring.top + 1)]
    spaces = [la.Subspace(B, ring.dims[k]) for k, B in enumerate(bases)]
    dims = [B.nrows() for B in bases]
    table = {}
    for a in range(ring.top + 1):
        for b in range(ring.top + 1 - a):
            c = a + b
            rows = []
            for i in range(dims[a]):
                for j in range(dims[b]):
                    prod = ring.multiply(a, la.select_rows(bases[a], [i]), b, la.select_rows(bases[b], [j]))
                    if not spaces[c].contains(prod):
                        raise ArithmeticError("product of invariants is not invariant")
                    rows.append(spaces[c].coords(prod))
            table[(a, b)] = la.vstack(rows, dims[c]) if rows else la.zeros(0, dims[c])
    integral = None
    if ring.integral is not None and dims[ring.top]:
        integral = bases[ring.top] * ring.integral
    hints = []
    for h in ring.omega_hints:
        if spaces[1].contains(h):
            hints.append(spaces[1].coords(h))
    return RingPresentation(dims, ring.top, table, integral, hints, label=f"{ring.label}/{rep.kind}")


def character(rep: GradedRepresentation) -> dict:
    """(degree, class index) -> trace, after checking constancy on each class."""
    classes = conjugacy_classes(rep.weyl, rep.group)
    out = {}
    for k, mats in sorted(rep.matrices.items()):
        for c, cls in enumerate(classes):
            vals = {_trace(mats[w]) for w in cls}
            if len(vals) != 1:
                raise ArithmeticError(f"character not a class function in degree {k}")
            v = vals.pop()
            out[(k, c)] = Fraction(int(v.p), int(v.q))
    return out


def conjugacy_classes(W: WeylGroup, group: list) -> list[list[WeylElement]]:
    """Conjugacy classes of the subgroup ``group`` (brute-force orbits)."""
    members = set(group)
    seen: set = set()
    classes = []
    for w in group:
        if w in seen:
            continue
        cls = {W.mul(W.mul(g, w), W.inverse(g)) for g in group}
        assert cls <= members
        seen |= cls
        classes.append(sorted(cls, key=lambda e: W.index[e.images]))
    return classes


def commute(a: GradedRepresentation, b: GradedRepresentation) -> bool:
    for k in a.matrices:
        for u in a.group:
            mu = a.matrices[k][u]
            for w in b.group:
                mw = b.matrices[k][w]
                if mu * mw != mw * mu:
                    return False
    return True
