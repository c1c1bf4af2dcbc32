"""Mechanical checks of the structure theorems on concrete cases.

Each ``verify_*`` builds the graphs it needs, computes both sides of a
statement independently and records one entry per check.  Failures are
report entries, never exceptions, so a whole suite can run to completion.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import flint

from . import linalg as la
from .actions import (
    character,
    commute,
    conjugacy_classes,
    dot_rep,
    invariant_dims,
    invariant_subring,
    projector,
    star_rep,
    subgroup_elements,
)
from .cohomology import RingPresentation, chern_class, cohomology, p_dim
from .gkm import FULL, PARTIAL, GKMGraph, build_fiber_graph, build_gkm
from .hessenberg import HessIdeal, simple_ideal
from .polyring import Polynomial, degree_spaces
from .rootsys import ParabolicData, RootSystem

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    name: str
    status: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness}


@dataclass
class VerificationReport:
    case: dict
    checks: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool | None, **witness) -> Check:
        status = SKIPPED if ok is None else (PASS if ok else FAIL)
        c = Check(name, status, witness)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def status(self) -> str:
        if not self.passed:
            return FAIL
        if self.checks and all(c.status == SKIPPED for c in self.checks):
            return SKIPPED
        return PASS

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, timings: bool = True) -> dict:
        out = {"case": self.case, "status": self.status, "checks": [c.to_json() for c in self.checks]}
        if timings:
            out["timings"] = self.timings
        return out


def case_descriptor(rs: RootSystem, parabolic: ParabolicData, ideal: HessIdeal, xi=None) -> dict:
    return {
        "type": rs.lie_type,
        "rank": rs.rank,
        "theta": sorted(parabolic.theta),
        "ideal": ideal.serialize(),
        "xi": None if xi is None else sorted(xi),
    }


def _frac(x) -> str:
    f = la.to_fraction(x)
    return str(f)


def _padded(b: list, n: int) -> list:
    return list(b) + [0] * (n - len(b))


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def pullback_rows(partial: GKMGraph, full: GKMGraph, rows: flint.fmpq_mat, k: int) -> flint.fmpq_mat:
    """p(f)(w) = f(coset of w): partial-graph classes as full-graph classes."""
    p = p_dim(full.nvars, k)
    coset = full.parabolic.coset_of
    source = [coset[w] for w in full.vertices]
    ents = rows.entries()
    width = rows.ncols()
    out = []
    for r in range(rows.nrows()):
        base = r * width
        for s in source:
            out.extend(ents[base + s * p: base + (s + 1) * p])
    return flint.fmpq_mat(rows.nrows(), len(full.vertices) * p, out)


def _invariant_rows(mats: dict, group: list, dim: int) -> flint.fmpq_mat:
    if dim == 0:
        return la.zeros(0, 0)
    return la.rref(projector(mats, group, dim).transpose())[0]


# ---- pullback / star invariants ---------------------------------------------

def verify_pullback_invariants(rs: RootSystem, parabolic: ParabolicData, ideal: HessIdeal,
                               store=None) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(case_descriptor(rs, parabolic, ideal))
    full = build_gkm(rs, parabolic, ideal, FULL)
    part = build_gkm(rs, parabolic, ideal, PARTIAL)
    cf, cp = cohomology(full, store), cohomology(part, store)
    df, dp = full.dimension, part.dimension
    bf, bp = cf.betti(), _padded(cp.betti(), df + 1)
    star = star_rep(full, parabolic, equivariant=True, store=store)

    injective, eq_image, witness_eq = True, True, []
    for k in range(df + 1):
        sol_f, sol_p = cf.solution(k), cp.solution(k)
        pulled = pullback_rows(part, full, sol_p.basis, k)
        r = la.rank(pulled)
        inside = sol_f.contains(pulled)
        injective &= r == sol_p.dim and inside
        inv = _invariant_rows(star.equivariant[k], star.group, sol_f.dim)
        inv_rows = inv * sol_f.basis if inv.nrows() else la.zeros(0, sol_f.ambient)
        same = la.span(pulled) == la.span(inv_rows) if pulled.nrows() or inv_rows.nrows() else True
        eq_image &= same
        witness_eq.append([sol_p.dim, r, inv_rows.nrows()])
    rep.add("pullback injective (equivariant)", injective, dims=witness_eq)
    rep.add("image = star invariants (equivariant)", eq_image, dims=witness_eq)

    phi = {}
    ord_inj, ord_image, star_dims = True, True, invariant_dims(star)
    for k in range(df + 1):
        gens = cp.generators(k) if k <= dp else la.zeros(0, cp.width(k))
        phi[k] = cf.ordinary_coords(k, pullback_rows(part, full, gens, k)) if gens.nrows() \
            else la.zeros(0, bf[k])
        ord_inj &= la.rank(phi[k]) == bp[k] if phi[k].nrows() else bp[k] == 0
        inv = _invariant_rows(star.matrices[k], star.group, bf[k])
        ord_image &= la.span(phi[k]) == la.span(inv) if bf[k] else True
    rep.add("pullback injective (ordinary)", ord_inj, partial_betti=bp, star_invariant_dims=star_dims)
    rep.add("image = star invariants (ordinary)", ord_image and bp == star_dims,
            partial_betti=bp, star_invariant_dims=star_dims)

    ring_f, ring_p = cf.ring(), cp.ring()
    ok, count = True, 0
    for a in range(dp + 1):
        for b in range(a, dp + 1):
            if a + b > df:
                continue
            for i in range(bp[a]):
                for j in range(bp[b]):
                    x, y = la.select_rows(phi[a], [i]), la.select_rows(phi[b], [j])
                    lhs = ring_f.multiply(a, x, b, y)
                    if a + b <= dp:
                        rhs = ring_p.multiply(a, ring_p.basis_vector(a, i), b, ring_p.basis_vector(b, j))
                        rhs = rhs * phi[a + b] if bp[a + b] else la.zeros(1, bf[a + b])
                    else:
                        rhs = la.zeros(1, bf[a + b])
                    ok &= lhs == rhs
                    count += 1
    rep.add("structure constants match", ok, products_checked=count)
    rep.timings["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


# ---- Leray-Hirsch -------------------------------------------------------------

def _derivative(p: Polynomial, i: int) -> Polynomial:
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
    return Polynomial(out, p.nvars)


def harmonic_basis(rs: RootSystem, parabolic: ParabolicData) -> dict:
    """Degree -> basis of the W_Theta-harmonic polynomials in the alpha_i, i in Theta.

    These are the derivatives of prod_{a in Phi_Theta^+} a; they span a graded
    W_Theta-stable complement to the ideal of positive-degree invariants.
    """
    n = rs.rank
    top = Polynomial.constant(1, n)
    for a in parabolic.phi_theta_plus:
        top = top * Polynomial.linear(a)
    N = len(parabolic.phi_theta_plus)
    out = {N: [top]}
    level = [top]
    for k in range(N - 1, -1, -1):
        cands = [_derivative(q, i - 1) for q in level for i in sorted(parabolic.theta)]
        vecs = [c.to_vector(k) for c in cands if c.terms]
        if not vecs:
            level = []
            out[k] = []
            continue
        basis = la.rref(la.matrix(vecs, p_dim(n, k)))[0]
        level = [Polynomial.from_vector(row, n, k) for row in basis.table()]
        out[k] = level
    return out


def _restrict_to_fiber(full: GKMGraph, fiber: GKMGraph, rows: flint.fmpq_mat, k: int) -> flint.fmpq_mat:
    p = p_dim(full.nvars, k)
    source = [full.vertex_index[u] for u in fiber.vertices]
    ents = rows.entries()
    width = rows.ncols()
    out = []
    for r in range(rows.nrows()):
        base = r * width
        for s in source:
            out.extend(ents[base + s * p: base + (s + 1) * p])
    return flint.fmpq_mat(rows.nrows(), len(fiber.vertices) * p, out)


def verify_leray_hirsch(rs: RootSystem, parabolic: ParabolicData, ideal: HessIdeal,
                        store=None) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(case_descriptor(rs, parabolic, ideal))
    full = build_gkm(rs, parabolic, ideal, FULL)
    part = build_gkm(rs, parabolic, ideal, PARTIAL)
    fib = build_fiber_graph(rs, parabolic)
    cf, cp, cfib = cohomology(full, store), cohomology(part, store), cohomology(fib, store)
    bf, bp, bfib = cf.betti(), cp.betti(), cfib.betti()
    prod = _poly_mul(bfib, bp)
    rep.add("Poincare factorization", prod == bf, full=bf, fiber=bfib, partial=bp)

    harm = harmonic_basis(rs, parabolic)
    hdims = [len(harm.get(k, [])) for k in range(len(bfib))]
    rep.add("section basis size", hdims == bfib, harmonic_dims=hdims, fiber=bfib)

    df, dp = full.dimension, part.dimension
    sections = {}
    for k, qs in harm.items():
        if qs:
            sections[k] = la.vstack([_orbit_class(cf, q, k) for q in qs], cf.width(k))

    # fiber restriction: s_H(q) restricted to W_Theta is a basis of H^*(P/B)
    restr_ok = True
    for k, rows in sections.items():
        r = cfib.ordinary_coords(k, _restrict_to_fiber(full, fib, rows, k))
        restr_ok &= r.nrows() == r.ncols() and la.rank(r) == r.nrows()
    rep.add("section restricts to a fiber basis", restr_ok)

    # products s_H(q_j) * pi^*(b_i) form a basis of each full degree
    per_degree: dict = {k: [] for k in range(df + 1)}
    for a, srows in sections.items():
        for b in range(dp + 1):
            gens = cp.generators(b)
            if gens.nrows() == 0 or a + b > df:
                continue
            pulled = pullback_rows(part, full, gens, b)
            for j in range(srows.nrows()):
                x = la.select_rows(srows, [j])
                per_degree[a + b].append(cf.ordinary_coords(a + b, cf.product(x, a, pulled, b)))
    counts, ranks = [], []
    for k in range(df + 1):
        m = la.vstack(per_degree[k], bf[k]) if bf[k] else la.zeros(0, 0)
        counts.append(m.nrows())
        ranks.append(la.rank(m) if m.nrows() and bf[k] else 0)
    rep.add("section x pullback basis", counts == bf and ranks == bf,
            products=counts, ranks=ranks, full=bf)

    # W_Theta-equivariance: u * s_H(q) = s_H(u q), compared in ordinary coordinates
    star = star_rep(full, parabolic, store=store)
    spaces = degree_spaces(rs.rank)
    eq_ok = True
    for k, qs in harm.items():
        if not qs or k > df:
            continue
        hsub = la.Subspace(la.matrix([q.to_vector(k) for q in qs], p_dim(rs.rank, k)))
        S = cf.ordinary_coords(k, sections[k])
        for u in star.group:
            moved = la.matrix([q.to_vector(k) for q in qs], p_dim(rs.rank, k)) * spaces.action_matrix(u, k)
            if not hsub.contains(moved):
                eq_ok = False
                continue
            N = _coords_in(hsub, qs, moved, k, rs.rank)
            eq_ok &= S * star.matrices[k][u].transpose() == N * S
    rep.add("section is W_Theta-equivariant", eq_ok)
    rep.timings["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


def _coords_in(hsub: la.Subspace, qs: list, moved: flint.fmpq_mat, k: int, n: int) -> flint.fmpq_mat:
    """Coordinates of the rows of ``moved`` over the basis qs (not over the rref basis)."""
    B = la.matrix([q.to_vector(k) for q in qs], p_dim(n, k))
    # moved = N B  =>  N = moved[:, piv] * (B[:, piv])^-1
    piv = hsub.pivots
    return la.select_columns(moved, piv) * la.select_columns(B, piv).inv()


def _orbit_class(coh, q: Polynomial, k: int) -> flint.fmpq_mat:
    from .polyring import act

    vals = []
    for w in coh.graph.vertices:
        img = act(w, q)
        vals.extend(img.to_vector(k) if img.terms else [0] * p_dim(coh.n, k))
    return la.matrix([vals], coh.width(k))


# ---- W-module decomposition ---------------------------------------------------

def verify_w_module_decomposition(rs: RootSystem, parabolic: ParabolicData, ideal: HessIdeal,
                                  store=None) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(case_descriptor(rs, parabolic, ideal))
    full = build_gkm(rs, parabolic, ideal, FULL)
    fib = build_fiber_graph(rs, parabolic)
    bfib = cohomology(fib, store).betti()
    star = star_rep(full, parabolic, store=store)
    dot = dot_rep(full, store=store)
    rep.add("star and dot commute", commute(star, dot))
    try:
        chi = character(dot)
        rep.add("dot character is a class function", True)
    except ArithmeticError as exc:
        rep.add("dot character is a class function", False, error=str(exc))
        rep.timings["seconds"] = round(time.perf_counter() - t0, 3)
        return rep
    classes = conjugacy_classes(dot.weyl, dot.group)
    d = full.dimension
    projs = {k: projector(star.matrices[k], star.group, star.dims[k]) for k in range(d + 1)}
    ok = True
    table = []
    for c, cls in enumerate(classes):
        w = cls[0]
        inv_chi = [sum((x for x in (projs[k] * dot.matrices[k][w]).entries()[:: star.dims[k] + 1]),
                       flint.fmpq(0)) if star.dims[k] else flint.fmpq(0) for k in range(d + 1)]
        row = []
        for k in range(d + 1):
            rhs = sum((bfib[i] * inv_chi[k - i] for i in range(len(bfib)) if 0 <= k - i <= d),
                      flint.fmpq(0))
            lhs = chi[(k, c)]
            ok &= Fraction(lhs) == la.to_fraction(rhs)
            row.append(str(lhs))
        table.append({"class": list(w.word), "size": len(cls), "character": row})
    rep.add("character identity", ok, characters=table)
    rep.timings["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


def dot_is_trivial(graph: GKMGraph, store=None) -> bool:
    rep = dot_rep(graph, store=store)
    return all(m == la.identity(m.nrows()) for mats in rep.matrices.values() for m in mats.values())


# ---- regular case -------------------------------------------------------------

@dataclass
class RegularCohomology:
    ring: RingPresentation
    betti: list
    ambient_betti: list
    peterson: dict | None  # expected binomial pattern and whether it matched
    note: str = ("the regular variety's ring is computed as the W_Xi dot-invariants of the "
                 "regular semisimple ring; no independent model of the left-hand side is built")


def _invariant_weight(rs: RootSystem, parabolic: ParabolicData) -> tuple:
    """sum of the fundamental weights outside Theta (rho when Theta is empty)."""
    n = rs.rank
    return tuple(sum((rs.fundamental_weights[i][j] for i in range(n) if i + 1 not in parabolic.theta),
                     Fraction(0)) for j in range(n))


def regular_cohomology(rs: RootSystem, parabolic: ParabolicData, ideal: HessIdeal, xi,
                       store=None) -> RegularCohomology:
    xi = sorted(set(xi))
    graph = build_gkm(rs, parabolic, ideal, PARTIAL)
    coh = cohomology(graph, store)
    base = coh.ring()
    hints = []
    if graph.dimension >= 1 and base.dims[1]:
        lam = _invariant_weight(rs, parabolic)
        c = chern_class(graph, lam)
        v = coh.ordinary_coords(1, coh.class_vector(c))
        if not la.is_zero(v):
            hints = [v, -v]
    ring = RingPresentation(base.dims, base.top, base.table, base.integral, hints, label=base.label)
    if xi:
        rep = dot_rep(graph, subgroup_elements(graph.group, xi), store=store)
        ring = invariant_subring(rep, ring)
    dims = list(ring.dims)
    if any(x > y for x, y in zip(dims, base.dims)):
        raise ArithmeticError("invariant dimensions exceed ambient dimensions")
    peterson = None
    if not parabolic.theta and xi == list(range(1, rs.rank + 1)) and \
            set(ideal.roots) == set(simple_ideal(rs, parabolic).roots):
        expected = [comb(rs.rank, k) for k in range(rs.rank + 1)]
        peterson = {"expected": expected, "match": dims == expected}
    return RegularCohomology(ring, dims, list(base.dims), peterson)


# ---- Poincare duality, hard Lefschetz, Hodge-Riemann ---------------------------

def _hl_hr(ring: RingPresentation, omega: flint.fmpq_mat) -> tuple[bool, bool, flint.fmpq_mat]:
    d = ring.top
    if d % 2 == 1:
        _, top = ring.power(1, omega, d)
        if ring.integrate(top) < 0:
            omega = -omega
    lefschetz = {}
    for k in range(d // 2 + 1):
        deg, pw = ring.power(1, omega, d - 2 * k)
        L = ring.mult_matrix(deg, pw, k)
        if L.nrows() != L.ncols() or (L.nrows() and la.rank(L) != L.nrows()):
            return False, False, omega
        lefschetz[k] = L
    for k in range(d // 2 + 1):
        if ring.dims[k] == 0:
            continue
        m = d - 2 * k + 1
        if k + m > d:
            K = la.identity(ring.dims[k])
        else:
            deg, pw = ring.power(1, omega, m)
            K = la.left_nullspace(ring.mult_matrix(deg, pw, k))
        if K.nrows() == 0:
            continue
        form = lefschetz[k] * ring.pairing_matrix(d - k)
        if k % 2:
            form = -form
        if not la.leading_minors_positive(K * form * K.transpose()):
            return True, False, omega
    return True, True, omega


def verify_pd_hl_hr(ring: RingPresentation, omega_candidates=None, seed: int = 0,
                    max_attempts: int = 32, case: dict | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(dict(case or {}, ring_dims=list(ring.dims), seed=seed))
    d = ring.top
    if ring.dims[d] != 1:
        for name in ("Poincare duality", "hard Lefschetz", "Hodge-Riemann"):
            rep.add(name, None, reason="not irreducible", top_betti=ring.dims[d])
        rep.timings["seconds"] = round(time.perf_counter() - t0, 3)
        return rep
    pd_ok = ring.integral is not None
    ranks = []
    if pd_ok:
        for k in range(d // 2 + 1):
            P = ring.pairing_matrix(k)
            r = la.rank(P) if P.nrows() else 0
            ranks.append(r)
            pd_ok &= P.nrows() == P.ncols() == r
    rep.add("Poincare duality", pd_ok, pairing_ranks=ranks)

    candidates = []
    if omega_candidates is not None:
        candidates = [("given", c) for c in omega_candidates]
    else:
        candidates = [("chern", h) for h in ring.omega_hints]
    rng = random.Random(seed)
    b1 = ring.dims[1] if d >= 1 else 0
    log = []
    found = None
    attempts = 0
    while attempts < max_attempts:
        if candidates:
            source, omega = candidates.pop(0)
        elif omega_candidates is None and (b1 or d == 0):
            source = "random"
            coeffs = [rng.randint(-3, 3) for _ in range(b1)]
            if b1 and not any(coeffs):
                continue
            omega = la.matrix([coeffs], b1)
        else:
            break
        attempts += 1
        hl, hr, omega = _hl_hr(ring, omega)
        log.append({"source": source, "omega": [_frac(x) for x in omega.entries()],
                    "hard_lefschetz": hl, "hodge_riemann": hr})
        if hl and hr:
            found = omega
            break
    any_hl = any(e["hard_lefschetz"] for e in log)
    if found is not None:
        w = [_frac(x) for x in found.entries()]
        rep.add("hard Lefschetz", True, omega=w, attempts=len(log))
        rep.add("Hodge-Riemann", True, omega=w)
    elif any_hl:
        rep.add("hard Lefschetz", True, attempts=log)
        rep.add("Hodge-Riemann", False, reason="no Lefschetz candidate satisfied the sign conditions",
                attempts=log)
    else:
        rep.add("hard Lefschetz", False, reason=f"inconclusive after {len(log)} candidates", attempts=log)
        rep.add("Hodge-Riemann", None, reason="no Lefschetz element found")
    rep.timings["seconds"] = round(time.perf_counter() - t0, 3)
    return rep
