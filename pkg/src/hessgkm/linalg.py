"""Exact rational linear algebra helpers.

Thin layer over ``flint.fmpq_mat``.  Row vectors are the convention
throughout: a subspace is stored as the rows of a matrix in reduced row
echelon form, so two spans are equal iff their canonical matrices are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

fmpq = flint.fmpq
fmpq_mat = flint.fmpq_mat


def to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    return fmpq(x)


def to_fraction(x) -> Fraction:
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def matrix(rows: Sequence[Sequence], ncols: int | None = None) -> flint.fmpq_mat:
    """Build an fmpq matrix from nested rows (ints, Fractions or fmpq)."""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = [to_fmpq(x) for row in rows for x in row]
    return fmpq_mat(len(rows), ncols, flat)


def zeros(nrows: int, ncols: int) -> flint.fmpq_mat:
    return fmpq_mat(nrows, ncols)


def identity(n: int) -> flint.fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def vstack(mats: Iterable[flint.fmpq_mat], ncols: int) -> flint.fmpq_mat:
    flat = []
    nrows = 0
    for m in mats:
        if m.nrows() == 0:
            continue
        if m.ncols() != ncols:
            raise ValueError("column mismatch in vstack")
        flat.extend(m.entries())
        nrows += m.nrows()
    return fmpq_mat(nrows, ncols, flat)


def select_columns(m: flint.fmpq_mat, cols: Sequence[int]) -> flint.fmpq_mat:
    ents = m.entries()
    n = m.ncols()
    return fmpq_mat(m.nrows(), len(cols), [ents[i * n + c] for i in range(m.nrows()) for c in cols])


def select_rows(m: flint.fmpq_mat, rows_idx: Sequence[int]) -> flint.fmpq_mat:
    ents = m.entries()
    n = m.ncols()
    rows_idx = list(rows_idx)
    return fmpq_mat(len(rows_idx), n, [x for i in rows_idx for x in ents[i * n:(i + 1) * n]])


def to_rows(m: flint.fmpq_mat) -> list[list[Fraction]]:
    return [[to_fraction(x) for x in row] for row in m.table()]


def is_zero(m: flint.fmpq_mat) -> bool:
    return all(x == 0 for x in m.entries())


def rref(m: flint.fmpq_mat) -> tuple[flint.fmpq_mat, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    if m.nrows() == 0 or m.ncols() == 0:
        return fmpq_mat(0, m.ncols()), []
    r, rank = m.rref()
    n = m.ncols()
    ents = r.entries()
    pivots = []
    start = 0
    for i in range(rank):
        base = i * n
        j = start
        while ents[base + j] == 0:
            j += 1
        pivots.append(j)
        start = j + 1
    if rank == r.nrows():
        return r, pivots
    return fmpq_mat(rank, n, ents[: rank * n]), pivots


def rank(m: flint.fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rref()[1]


def nullspace(m: flint.fmpq_mat) -> flint.fmpq_mat:
    """Basis (rows) of {x : m x = 0}, one row per free column of rref(m).

    Row t is 1 at the t-th free column and 0 at the others; this depends only
    on the kernel, so it is canonical, though not itself in rref.
    """
    n = m.ncols()
    if m.nrows() == 0:
        return identity(n)
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    if not free:
        return fmpq_mat(0, n)
    ents = r.entries()
    flat = [fmpq(0)] * (len(free) * n)
    for t, f in enumerate(free):
        base = t * n
        flat[base + f] = fmpq(1)
        for i, p in enumerate(pivots):
            c = ents[i * n + f]
            if c != 0:
                flat[base + p] = -c
    return fmpq_mat(len(free), n, flat)


def left_nullspace(m: flint.fmpq_mat) -> flint.fmpq_mat:
    """Rows y with y m = 0."""
    return nullspace(m.transpose())


class Subspace:
    """A subspace of Q^n held as a canonical rref basis (rows)."""

    def __init__(self, basis: flint.fmpq_mat, ambient: int | None = None):
        if ambient is None:
            ambient = basis.ncols()
        self.ambient = ambient
        self.basis, self.pivots = rref(basis) if basis.nrows() else (fmpq_mat(0, ambient), [])

    @property
    def dim(self) -> int:
        return self.basis.nrows()

    def coords(self, vectors: flint.fmpq_mat) -> flint.fmpq_mat:
        """Coordinates of row vectors assumed to lie in the subspace."""
        return select_columns(vectors, self.pivots)

    def contains(self, vectors: flint.fmpq_mat) -> bool:
        if vectors.nrows() == 0:
            return True
        back = self.coords(vectors) * self.basis if self.dim else zeros(vectors.nrows(), self.ambient)
        return back == vectors

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, tuple(self.basis.entries())))


def span(vectors: flint.fmpq_mat) -> Subspace:
    return Subspace(vectors, vectors.ncols())


def leading_minors_positive(gram: flint.fmpq_mat) -> bool:
    """Sylvester's criterion, computed exactly by symmetric elimination."""
    n = gram.nrows()
    a = [list(row) for row in gram.table()]
    for k in range(n):
        pivot = a[k][k]
        # the k-th pivot is the ratio of consecutive leading minors
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f == 0:
                continue
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def fraction_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a small square rational matrix, as Fractions."""
    m = matrix(rows)
    return to_rows(m.inv())
