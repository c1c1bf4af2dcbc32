"""Equivariant and ordinary cohomology from a GKM constraint system.

A degree-k class is a map vertices -> R_k, stored as one row vector of
length ``|V| * dim R_k`` (vertex-major, monomials grlex-descending inside
each block).  Each GKM condition ``l | f(u) - f(v)`` becomes the linear
condition that ``f(u) - f(v)`` vanishes on the hyperplane ``l = 0``; the
degree-k solution space is the kernel of the stacked conditions, kept in
reduced row echelon form so every basis is canonical.

Ordinary cohomology in degree k is ``Sol_k / (alpha_1 Sol_{k-1} + ... +
alpha_n Sol_{k-1})``.  Representatives of a basis (the module generators)
are the rref basis rows of ``Sol_k`` sitting at the non-pivot positions of
that submodule, so the choice is canonical too.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import flint

from . import linalg as la
from .errors import ModeError, NegativeBetti
from .gkm import FULL, PARTIAL, GKMGraph
from .hessenberg import HessIdeal
from .polyring import Polynomial, degree_spaces, divides
from .rootsys import ParabolicData, RootSystem

# generic point for localization; |root coefficients| <= 3 < 10 keeps every root nonzero
_GENERIC_POINTS = ((1, 10, 100, 1000), (2, 21, 205, 2003))


def p_dim(n: int, m: int) -> int:
    """dim R_m = C(m + n - 1, n - 1)."""
    return comb(m + n - 1, n - 1) if m >= 0 else 0


@dataclass
class PiecewisePolynomial:
    """An element of Map(vertices, R): one homogeneous polynomial per vertex."""

    values: list  # Polynomial per vertex
    degree: int

    def satisfies(self, graph: GKMGraph) -> bool:
        return all(divides(lab, self.values[u] - self.values[v]) for u, v, lab in graph.constraints)

    def __add__(self, other):
        return PiecewisePolynomial([a + b for a, b in zip(self.values, other.values)], self.degree)

    def __mul__(self, other):
        if isinstance(other, PiecewisePolynomial):
            return PiecewisePolynomial(
                [a * b for a, b in zip(self.values, other.values)], self.degree + other.degree
            )
        return PiecewisePolynomial([a * other for a in self.values], self.degree)

    def to_vector(self) -> list:
        out = []
        for p in self.values:
            out.extend(p.to_vector(self.degree) if p.terms else [0] * p_dim(p.nvars, self.degree))
        return out

    @classmethod
    def from_vector(cls, vec: Sequence, nvertices: int, n: int, k: int) -> "PiecewisePolynomial":
        p = p_dim(n, k)
        return cls([Polynomial.from_vector(vec[v * p:(v + 1) * p], n, k) for v in range(nvertices)], k)


class RingPresentation:
    """A finite graded commutative ring given by structure constants.

    ``dims[k]`` is the dimension of the degree-2k piece.  ``table[(a, b)]``
    has one row per basis pair (i, j), row index ``i * dims[b] + j``, holding
    the coordinates of ``e_i * e_j`` in degree a + b.  Products above
    ``top`` vanish.  ``integral`` is a functional on the top degree (a
    column of length ``dims[top]``) or None.
    """

    def __init__(self, dims, top, table, integral=None, omega_hints=(), label=""):
        self.dims = list(dims)
        self.top = top
        self.table = table
        self.integral = integral
        self.omega_hints = list(omega_hints)
        self.label = label

    def zero(self, k: int) -> flint.fmpq_mat:
        return la.zeros(1, self.dims[k])

    def basis_vector(self, k: int, i: int) -> flint.fmpq_mat:
        v = la.zeros(1, self.dims[k])
        v[0, i] = 1
        return v

    def multiply(self, a: int, x: flint.fmpq_mat, b: int, y: flint.fmpq_mat) -> flint.fmpq_mat:
        if a + b > self.top:
            return la.zeros(1, 0)
        da, db = self.dims[a], self.dims[b]
        if da == 0 or db == 0 or self.dims[a + b] == 0:
            return la.zeros(1, self.dims[a + b])
        xs, ys = x.entries(), y.entries()
        kron = la.fmpq_mat(1, da * db, [xi * yj for xi in xs for yj in ys])
        return kron * self.table[(a, b)]

    def mult_matrix(self, a: int, x: flint.fmpq_mat, b: int) -> flint.fmpq_mat:
        """Matrix (rows = basis of degree b) of y -> x*y into degree a + b."""
        db = self.dims[b]
        if a + b > self.top:
            return la.zeros(db, 0)
        if db == 0:
            return la.zeros(0, self.dims[a + b])
        return la.vstack((self.multiply(a, x, b, self.basis_vector(b, j)) for j in range(db)),
                         self.dims[a + b])

    def power(self, a: int, x: flint.fmpq_mat, m: int) -> tuple[int, flint.fmpq_mat]:
        deg, out = 0, self.basis_vector(0, 0)
        for _ in range(m):
            out = self.multiply(deg, out, a, x)
            deg += a
        return deg, out

    def integrate(self, v: flint.fmpq_mat):
        if self.integral is None:
            raise ValueError("ring has no integration functional")
        return (v * self.integral)[0, 0]

    def pairing_matrix(self, k: int) -> flint.fmpq_mat:
        """Entry (i, j) = integral of e_i * e_j, for e_i of degree k, e_j of degree top - k."""
        d = self.top
        rows = []
        for i in range(self.dims[k]):
            m = self.mult_matrix(k, self.basis_vector(k, i), d - k)
            rows.append((m * self.integral).transpose())
        return la.vstack(rows, self.dims[d - k])

    def structure_constants(self) -> list[tuple]:
        """Flat list (i, j, k, value) with global basis numbering by degree."""
        offset = [sum(self.dims[:k]) for k in range(len(self.dims))]
        out = []
        for (a, b), t in sorted(self.table.items()):
            db, dc = self.dims[b], self.dims[a + b]
            rows = t.table()
            for r, row in enumerate(rows):
                i, j = divmod(r, db)
                for c in range(dc):
                    if row[c] != 0:
                        out.append((offset[a] + i, offset[b] + j, offset[a + b] + c, la.to_fraction(row[c])))
        return out

    def to_json(self) -> dict:
        return {
            "dims": self.dims,
            "top": self.top,
            "structure_constants": [[i, j, k, f"{v.numerator}/{v.denominator}"]
                                    for i, j, k, v in self.structure_constants()],
            "integral": None if self.integral is None
            else [str(la.to_fraction(x)) for x in self.integral.entries()],
        }


class GKMCohomology:
    """Lazily solved cohomology of one GKM graph."""

    def __init__(self, graph: GKMGraph, store=None):
        self.graph = graph
        self.n = graph.nvars
        self.nv = len(graph.vertices)
        self.spaces = degree_spaces(self.n)
        self.store = store
        self._sol: dict = {}
        self._coords: dict = {}
        self._lock = threading.Lock()
        self._ring = None

    # ---- equivariant -----------------------------------------------------

    def width(self, k: int) -> int:
        return self.nv * p_dim(self.n, k)

    def constraint_matrix(self, k: int) -> flint.fmpq_mat:
        p = p_dim(self.n, k)
        blocks = []
        total = 0
        for u, v, lab in self.graph.constraints:
            s = self.spaces.substitution_matrix(lab, k).table()
            blocks.append((u, v, s))
            total += len(s[0]) if s else 0
        a = la.zeros(total, self.width(k))
        r0 = 0
        for u, v, s in blocks:
            q = len(s[0]) if s else 0
            for m in range(p):
                row = s[m]
                for c in range(q):
                    x = row[c]
                    if x != 0:
                        a[r0 + c, u * p + m] = x
                        a[r0 + c, v * p + m] = -x
            r0 += q
        return a

    def solution(self, k: int) -> la.Subspace:
        with self._lock:
            hit = self._sol.get(k)
        if hit is not None:
            return hit
        basis = None
        if self.store is not None:
            basis = self.store.load(self.graph.key, k, self.width(k))
        if basis is None:
            if self.graph.constraints:
                basis = la.nullspace(self.constraint_matrix(k))
            else:
                basis = la.identity(self.width(k))
            if self.store is not None:
                self.store.save(self.graph.key, k, basis)
        sub = la.Subspace(basis, self.width(k))
        with self._lock:
            self._sol[k] = sub
        return sub

    def betti(self, k_max: int | None = None) -> list[int]:
        """b_{2k} from dim Sol_k = sum_j b_{2j} dim R_{k-j} (freeness recursion)."""
        if k_max is None:
            k_max = self.graph.dimension
        b: list[int] = []
        for k in range(k_max + 1):
            dim = self.solution(k).dim
            val = dim - sum(b[j] * p_dim(self.n, k - j) for j in range(k))
            if val < 0:
                raise NegativeBetti(f"b_{2 * k} = {val} for {self.graph.mode} graph")
            b.append(val)
        if sum(b) != self.nv:
            raise NegativeBetti(f"Betti numbers {b} do not sum to {self.nv} vertices")
        return b

    def multiply_variable(self, rows: flint.fmpq_mat, k: int, i: int) -> flint.fmpq_mat:
        """Multiply each row (degree k) by alpha_{i+1}."""
        idx_from = self.spaces.monomials(k)
        target = {m: j for j, m in enumerate(self.spaces.monomials(k + 1))}
        p, p1 = len(idx_from), p_dim(self.n, k + 1)
        shift = []
        for e in idx_from:
            f = list(e)
            f[i] += 1
            shift.append(target[tuple(f)])
        out = []
        for row in rows.table():
            new = [0] * (self.nv * p1)
            for v in range(self.nv):
                base, nbase = v * p, v * p1
                for m in range(p):
                    x = row[base + m]
                    if x != 0:
                        new[nbase + shift[m]] = x
            out.extend(new)
        return la.fmpq_mat(rows.nrows(), self.nv * p1, out)

    def submodule(self, k: int) -> flint.fmpq_mat:
        """(H^{>0}(BT) * H_T)_k = sum_i alpha_i Sol_{k-1}, as rows in Sol_k coordinates (rref)."""
        sol = self.solution(k)
        if k == 0:
            return la.zeros(0, sol.dim)
        prev = self.solution(k - 1).basis
        mats = [sol.coords(self.multiply_variable(prev, k - 1, i)) for i in range(self.n)]
        return la.rref(la.vstack(mats, sol.dim))[0]

    def _coordinates(self, k: int):
        """(pivots P, inverse Q, rank of submodule, generator rows) for degree k."""
        with self._lock:
            hit = self._coords.get(k)
        if hit is not None:
            return hit
        sol = self.solution(k)
        s = sol.dim
        sub_c, sub_piv = la.rref(self.submodule(k))
        pivset = set(sub_piv)
        gen_pos = [t for t in range(s) if t not in pivset]
        gens = la.select_rows(sol.basis, gen_pos)
        change = la.vstack([sub_c, la.select_rows(la.identity(s), gen_pos)], s)
        q = change.inv() if s else change
        out = (sol.pivots, q, sub_c.nrows(), gens)
        with self._lock:
            self._coords[k] = out
        return out

    def generators(self, k: int) -> flint.fmpq_mat:
        return self._coordinates(k)[3]

    def equivariant_coords(self, k: int, rows: flint.fmpq_mat) -> flint.fmpq_mat:
        return self.solution(k).coords(rows)

    def ordinary_coords(self, k: int, rows: flint.fmpq_mat) -> flint.fmpq_mat:
        """Ordinary-cohomology coordinates of classes in Sol_k (rows)."""
        pivots, q, m, gens = self._coordinates(k)
        b = gens.nrows()
        if rows.nrows() == 0 or b == 0:
            return la.zeros(rows.nrows(), b)
        full = la.select_columns(rows, pivots) * q
        return la.select_columns(full, range(m, m + b))

    def in_submodule(self, k: int, rows: flint.fmpq_mat) -> bool:
        return la.is_zero(self.ordinary_coords(k, rows))

    def product(self, x: flint.fmpq_mat, a: int, y: flint.fmpq_mat, b: int) -> flint.fmpq_mat:
        """Vertex-wise products x_r * y_r of paired rows (or x_0 * y_r if x has one row)."""
        n, nv = self.n, self.nv
        pa, pb, pc = p_dim(n, a), p_dim(n, b), p_dim(n, a + b)
        table = self.spaces.product_table(a, b)
        xr, yr = x.table(), y.table()
        out = []
        for r in range(len(yr)):
            xs = xr[0] if len(xr) == 1 else xr[r]
            ys = yr[r]
            new = [flint.fmpq(0)] * (nv * pc)
            for v in range(nv):
                xa = [(i, xs[v * pa + i]) for i in range(pa) if xs[v * pa + i] != 0]
                if not xa:
                    continue
                yb = [(j, ys[v * pb + j]) for j in range(pb) if ys[v * pb + j] != 0]
                base = v * pc
                for i, xi in xa:
                    ti = table[i]
                    for j, yj in yb:
                        new[base + ti[j]] += xi * yj
            out.extend(new)
        return la.fmpq_mat(len(yr), nv * pc, out)

    # ---- ordinary ring ---------------------------------------------------

    def top_degree(self) -> int:
        return self.graph.dimension

    def integrate(self, rows: flint.fmpq_mat) -> list:
        """Localization integral of degree-top classes: sum_v f(v) / prod(-w(a)).

        Evaluated exactly at two generic points; the two must agree.
        """
        d = self.top_degree()
        p = p_dim(self.n, d)
        out = []
        for row in rows.table():
            vals = []
            for pt in _GENERIC_POINTS:
                pt = pt[: self.n]
                total = Fraction(0)
                for v in range(self.nv):
                    poly = Polynomial.from_vector(row[v * p:(v + 1) * p], self.n, d)
                    e = Fraction(1)
                    for a in self.graph.tangent[v]:
                        e *= -sum(Fraction(c) * t for c, t in zip(a, pt))
                    total += poly.evaluate(pt) / e
                vals.append(total)
            if vals[0] != vals[1]:
                raise ArithmeticError("localization sum is not constant; input is not a top class")
            out.append(vals[0])
        return out

    def ring(self) -> RingPresentation:
        if self._ring is not None:
            return self._ring
        d = self.top_degree()
        b = self.betti(d)
        gens = {k: self.generators(k) for k in range(d + 1)}
        table = {}
        for a in range(d + 1):
            for c in range(a, d + 1 - a):
                da, dc = b[a], b[c]
                if da == 0 or dc == 0 or b[a + c] == 0:
                    table[(a, c)] = la.zeros(da * dc, b[a + c])
                    if a != c:
                        table[(c, a)] = la.zeros(dc * da, b[a + c])
                    continue
                ga, gc = gens[a].table(), gens[c].table()
                xs = la.fmpq_mat(da * dc, self.width(a), [x for i in range(da) for _ in range(dc) for x in ga[i]])
                ys = la.fmpq_mat(da * dc, self.width(c), [y for _ in range(da) for j in range(dc) for y in gc[j]])
                prods = self.product(xs, a, ys, c)
                coords = self.ordinary_coords(a + c, prods)
                table[(a, c)] = coords
                if a != c:
                    rows = coords.table()
                    flat = [x for j in range(dc) for i in range(da) for x in rows[i * dc + j]]
                    table[(c, a)] = la.fmpq_mat(da * dc, b[a + c], flat)
        integral = None
        if b[d] > 0:
            vals = self.integrate(gens[d])
            integral = la.matrix([[v] for v in vals], 1)
        self._ring = RingPresentation(b, d, table, integral, label=self.graph.mode)
        return self._ring

    def class_vector(self, f: PiecewisePolynomial) -> flint.fmpq_mat:
        return la.matrix([f.to_vector()], self.width(f.degree))


_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def cohomology(graph: GKMGraph, store=None) -> GKMCohomology:
    """Memoized GKMCohomology keyed by the graph's content hash."""
    key = (graph.key, graph.mode, id(store) if store is not None else None)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
        if hit is None:
            hit = GKMCohomology(graph, store)
            _CACHE[key] = hit
    return hit


def clear_memo():
    with _CACHE_LOCK:
        _CACHE.clear()


# ---- module-level operations ------------------------------------------------

def solve_equivariant_degree(graph: GKMGraph, k: int) -> list[PiecewisePolynomial]:
    coh = cohomology(graph)
    sol = coh.solution(k)
    return [PiecewisePolynomial.from_vector(row, coh.nv, coh.n, k) for row in sol.basis.table()]


def betti(graph: GKMGraph, k_max: int | None = None) -> list[int]:
    return cohomology(graph).betti(k_max)


def betti_oracle_cells(rs: RootSystem, parabolic: ParabolicData, ideal: HessIdeal, mode: str = FULL) -> list[int]:
    """Count vertices by the number of negative tangent roots w(a)."""
    pos = set(rs.positive_roots)
    if mode == FULL:
        verts, roots = parabolic.group.elements, list(ideal.roots)
    else:
        phit = set(parabolic.phi_theta_plus)
        verts, roots = parabolic.representatives, [a for a in ideal.roots if a not in phit]
    b = [0] * (len(roots) + 1)
    for w in verts:
        b[sum(1 for a in roots if w.act(a) not in pos)] += 1
    return b


def chern_class(graph: GKMGraph, weight: Sequence) -> PiecewisePolynomial:
    """The equivariant class w -> w(weight) (coset representative in partial mode)."""
    n = graph.nvars
    weight = tuple(Fraction(x) for x in weight)
    if graph.mode == PARTIAL:
        for i in graph.parabolic.theta:
            if graph.rs.pairing(weight, graph.rs.simple_roots[i - 1]) != 0:
                raise ModeError("weight is not W_Theta-invariant; the coset value is ill defined")
    vals = [Polynomial.linear(w.act(weight)) if any(weight) else Polynomial({}, n) for w in graph.vertices]
    return PiecewisePolynomial(vals, 1)


@dataclass
class GradedBasis:
    solution_bases: dict  # k -> list[PiecewisePolynomial]
    betti: list
    module_generators: dict  # k -> list[PiecewisePolynomial]


def module_generators(graph: GKMGraph) -> GradedBasis:
    coh = cohomology(graph)
    b = coh.betti()
    sols, gens = {}, {}
    for k in range(len(b)):
        sols[k] = [PiecewisePolynomial.from_vector(r, coh.nv, coh.n, k) for r in coh.solution(k).basis.table()]
        gens[k] = [PiecewisePolynomial.from_vector(r, coh.nv, coh.n, k) for r in coh.generators(k).table()]
    return GradedBasis(sols, b, gens)


def ordinary_ring(graph: GKMGraph) -> RingPresentation:
    return cohomology(graph).ring()


def weight_orbit_class(coh: GKMCohomology, poly: Polynomial) -> flint.fmpq_mat:
    """Row vector of the class w -> w(poly) on a full-mode (or fiber) graph."""
    from .polyring import act

    k = poly.degree() if poly.terms else 0
    vals = [act(w, poly) for w in coh.graph.vertices]
    f = PiecewisePolynomial([v if v.terms else Polynomial({}, coh.n) for v in vals], k)
    return coh.class_vector(f)


__all__ = [
    "FULL",
    "PARTIAL",
    "PiecewisePolynomial",
    "RingPresentation",
    "GKMCohomology",
    "GradedBasis",
    "cohomology",
    "solve_equivariant_degree",
    "betti",
    "betti_oracle_cells",
    "chern_class",
    "module_generators",
    "ordinary_ring",
    "weight_orbit_class",
    "p_dim",
]
