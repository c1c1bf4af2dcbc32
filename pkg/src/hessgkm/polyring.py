"""Exact polynomials over Q in the simple-root variables alpha_1..alpha_n.

Monomial order is graded lexicographic with ``alpha_1 > alpha_2 > ...``;
within a degree, monomials are listed largest first.  ``DegreeSpaces``
holds the dense per-degree coordinate machinery used by the GKM solver
(action matrices, hyperplane substitutions, multiplication tables).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint

from .linalg import to_fmpq


@lru_cache(maxsize=None)
def monomials(n: int, k: int) -> tuple:
    """Exponent vectors of degree k in n variables, grlex-descending."""
    if n == 0:
        return ((),) if k == 0 else ()
    out = []
    for e in range(k, -1, -1):
        for rest in monomials(n - 1, k - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, k: int) -> dict:
    return {m: i for i, m in enumerate(monomials(n, k))}


def dim_homogeneous(n: int, k: int) -> int:
    return len(monomials(n, k))


def _grlex_key(e: tuple):
    return (sum(e), e)


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Mapping | None = None, nvars: int = 0):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match nvars")
                    clean[e] = Fraction(c)
        self.terms = clean

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        """alpha_{i+1} (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        return cls({tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)}, n)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial({e: v * c for e, v in self.terms.items()}, self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = Polynomial.constant(1, self.nvars)
        for _ in range(k):
            r = r * self
        return r

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (k is None or degs == {k})

    def homogeneous_component(self, k: int) -> "Polynomial":
        return Polynomial({e: c for e, c in self.terms.items() if sum(e) == k}, self.nvars)

    def homogeneous_components(self) -> dict:
        return {k: self.homogeneous_component(k) for k in sorted({sum(e) for e in self.terms})}

    def substitute_linear(self, images: Sequence[Sequence]) -> "Polynomial":
        """Replace variable j by the linear form with coefficient vector images[j]."""
        n = self.nvars
        lin = [Polynomial.linear(img) for img in images]
        out = Polynomial({}, n)
        powers: dict = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(c, n)
            for j, k in enumerate(e):
                if k:
                    key = (j, k)
                    if key not in powers:
                        powers[key] = lin[j] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def to_vector(self, k: int) -> list[Fraction]:
        idx = monomial_index(self.nvars, k)
        vec = [Fraction(0)] * len(idx)
        for e, c in self.terms.items():
            if sum(e) != k:
                raise ValueError(f"polynomial is not homogeneous of degree {k}")
            vec[idx[e]] = c
        return vec

    @classmethod
    def from_vector(cls, vec: Sequence, n: int, k: int) -> "Polynomial":
        mons = monomials(n, k)
        return cls({mons[i]: Fraction(c) if not isinstance(c, flint.fmpq) else Fraction(int(c.p), int(c.q))
                    for i, c in enumerate(vec) if c != 0}, n)

    def serialize(self) -> list:
        """[(exponents, numerator, denominator), ...] in grlex-descending order."""
        items = sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
        return [[list(e), c.numerator, c.denominator] for e, c in items]

    @classmethod
    def deserialize(cls, data: Iterable, nvars: int) -> "Polynomial":
        return cls({tuple(e): Fraction(p, q) for e, p, q in data}, nvars)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True):
            mon = "*".join(f"a{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mon}" if mon else "") if c != 1 or not mon else mon)
        return " + ".join(parts)


def act(w, p: Polynomial) -> Polynomial:
    """Weyl action on R = Sym t*: alpha_j -> w(alpha_j), extended multiplicatively."""
    return p.substitute_linear(w.images)


def _pivot(coeffs: Sequence) -> int:
    for i, c in enumerate(coeffs):
        if c != 0:
            return i
    raise ValueError("zero linear form")


def hyperplane_images(coeffs: Sequence) -> list[tuple]:
    """Variable images for restriction to the hyperplane {l = 0}.

    The pivot is the lowest-index variable with a nonzero coefficient; it is
    replaced by -(1/c_p) sum_{j != p} c_j alpha_j, other variables are kept.
    """
    p = _pivot(coeffs)
    n = len(coeffs)
    cp = Fraction(coeffs[p])
    images = []
    for j in range(n):
        if j == p:
            images.append(tuple(Fraction(0) if i == p else -Fraction(coeffs[i]) / cp for i in range(n)))
        else:
            images.append(tuple(int(i == j) for i in range(n)))
    return images


def divides(linear_form, p: Polynomial) -> bool:
    """True iff p lies in the principal ideal generated by the linear form."""
    coeffs = linear_form.to_vector(1) if isinstance(linear_form, Polynomial) else list(linear_form)
    return p.substitute_linear(hyperplane_images(coeffs)).is_zero()


def reynolds(group_elements: Sequence, p: Polynomial) -> Polynomial:
    total = Polynomial({}, p.nvars)
    for w in group_elements:
        total = total + act(w, p)
    return total * Fraction(1, len(group_elements))


class DegreeSpaces:
    """Dense coordinates on R_k = homogeneous polynomials of degree k."""

    def __init__(self, n: int):
        self.n = n
        self._action: dict = {}
        self._subst: dict = {}
        self._mult: dict = {}
        self._varmul: dict = {}

    def dim(self, k: int) -> int:
        return dim_homogeneous(self.n, k)

    def monomials(self, k: int) -> tuple:
        return monomials(self.n, k)

    def _linear_image_matrix(self, images: tuple, k: int, target_cols: tuple) -> flint.fmpq_mat:
        n = self.n
        col = {m: i for i, m in enumerate(target_cols)}
        mons = monomials(n, k)
        mat = flint.fmpq_mat(len(mons), len(target_cols))
        for r, e in enumerate(mons):
            img = Polynomial({e: 1}, n).substitute_linear(images)
            for m, c in img.terms.items():
                mat[r, col[m]] = to_fmpq(c)
        return mat

    def action_matrix(self, w, k: int) -> flint.fmpq_mat:
        """Row-vector matrix A with coeffs(w p) = coeffs(p) * A on R_k."""
        key = (w.images, k)
        m = self._action.get(key)
        if m is None:
            m = self._linear_image_matrix(w.images, k, monomials(self.n, k))
            self._action[key] = m
        return m

    def substitution_matrix(self, coeffs: tuple, k: int) -> flint.fmpq_mat:
        """Restriction of R_k to the hyperplane {l = 0}, in the free variables.

        The result has one column per degree-k monomial avoiding the pivot
        variable; p is divisible by l iff coeffs(p) * S == 0.
        """
        key = (coeffs, k)
        m = self._subst.get(key)
        if m is None:
            p = _pivot(coeffs)
            cols = tuple(e for e in monomials(self.n, k) if e[p] == 0)
            m = self._linear_image_matrix(tuple(hyperplane_images(coeffs)), k, cols)
            self._subst[key] = m
        return m

    def product_table(self, a: int, b: int) -> list[list[int]]:
        """table[i][j] = index in degree a+b of monomial_i(a) * monomial_j(b)."""
        key = (a, b)
        t = self._mult.get(key)
        if t is None:
            idx = monomial_index(self.n, a + b)
            ma, mb = monomials(self.n, a), monomials(self.n, b)
            t = [[idx[tuple(x + y for x, y in zip(ea, eb))] for eb in mb] for ea in ma]
            self._mult[key] = t
        return t

    def variable_matrix(self, i: int, k: int) -> flint.fmpq_mat:
        """Multiplication by alpha_{i+1}: R_k -> R_{k+1}, row-vector convention."""
        key = (i, k)
        m = self._varmul.get(key)
        if m is None:
            idx = monomial_index(self.n, k + 1)
            mons = monomials(self.n, k)
            m = flint.fmpq_mat(len(mons), len(idx))
            for r, e in enumerate(mons):
                f = list(e)
                f[i] += 1
                m[r, idx[tuple(f)]] = 1
            self._varmul[key] = m
        return m


@lru_cache(maxsize=None)
def degree_spaces(n: int) -> DegreeSpaces:
    return DegreeSpaces(n)


def all_monomial_polys(n: int, k: int) -> list[Polynomial]:
    return [Polynomial({e: 1}, n) for e in monomials(n, k)]
