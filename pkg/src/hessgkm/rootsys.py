"""Root systems, Weyl groups and parabolic data in simple-root coordinates.

Every weight is a vector of rationals giving its coefficients over the
simple roots, so simple root ``i`` is the ``i``-th unit vector and every
root has integer coordinates.  Indices of simple roots are 1-based at the
public surface (``theta={1}`` means the first simple root) and 0-based
internally.

Conventions (Bourbaki numbering):

====  ==================================================  ============
type  inner products (alpha_i, alpha_i), off-diagonal      long/short
====  ==================================================  ============
A_n   2 on the chain                                       simply laced
B_n   2 for i < n, 1 for i = n; -1 on the chain            alpha_n short
C_n   1 for i < n, 2 for i = n; -1/2 on the chain, -1 last alpha_n long
D_4   2, with alpha_2 joined to alpha_1, alpha_3, alpha_4  simply laced
G_2   2 and 6, (alpha_1, alpha_2) = -3                     alpha_1 short
====  ==================================================  ============

The Cartan matrix is ``c[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)``
and ``s_j(alpha_i) = alpha_i - c[i][j] alpha_j``.  For B2 this makes
``alpha_1 + 2 alpha_2`` a root.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import UnsupportedType
from .linalg import fraction_inverse

Vector = tuple  # tuple of ints or Fractions, simple-root coordinates

SUPPORTED = {
    "A": (1, 2, 3, 4),
    "B": (2, 3, 4),
    "C": (2, 3, 4),
    "D": (4,),
    "G": (2,),
}

# classical counts, used only as post-construction sanity checks
CLASSICAL_POSITIVE_ROOTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
}


def _gram(lie_type: str, n: int) -> list[list[Fraction]]:
    g = [[Fraction(0)] * n for _ in range(n)]
    if lie_type == "A":
        for i in range(n):
            g[i][i] = Fraction(2)
        for i in range(n - 1):
            g[i][i + 1] = g[i + 1][i] = Fraction(-1)
    elif lie_type == "B":
        for i in range(n):
            g[i][i] = Fraction(2) if i < n - 1 else Fraction(1)
        for i in range(n - 1):
            g[i][i + 1] = g[i + 1][i] = Fraction(-1)
    elif lie_type == "C":
        for i in range(n):
            g[i][i] = Fraction(1) if i < n - 1 else Fraction(2)
        for i in range(n - 1):
            v = Fraction(-1, 2) if i < n - 2 else Fraction(-1)
            g[i][i + 1] = g[i + 1][i] = v
    elif lie_type == "D":
        for i in range(n):
            g[i][i] = Fraction(2)
        for a, b in [(0, 1), (1, 2), (1, 3)]:
            g[a][b] = g[b][a] = Fraction(-1)
    elif lie_type == "G":
        g = [[Fraction(2), Fraction(-3)], [Fraction(-3), Fraction(6)]]
    return g


def _positive_roots_by_strings(cartan: list[list[int]]) -> list[Vector]:
    """Positive roots by the root-string rule, height by height.

    For a positive root b and simple root a_j (b != a_j), with p the largest
    k such that b - k a_j is a root, b + a_j is a root iff p - <b, a_j^v> > 0.
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for j in range(n):
                if b == simple[j]:
                    continue
                p = 0
                probe = list(b)
                while True:
                    probe[j] -= 1
                    if tuple(probe) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(b[i] * cartan[i][j] for i in range(n))
                if p - pairing > 0:
                    c = list(b)
                    c[j] += 1
                    c = tuple(c)
                    if c not in roots:
                        roots.add(c)
                        nxt.append(c)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r)))


@dataclass(frozen=True)
class RootSystem:
    lie_type: str
    rank: int
    gram: tuple
    cartan: tuple
    positive_roots: tuple
    fundamental_weights: tuple

    @property
    def simple_roots(self) -> list[Vector]:
        n = self.rank
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    @property
    def name(self) -> str:
        return f"{self.lie_type}{self.rank}"

    @cached_property
    def roots(self) -> list[Vector]:
        return list(self.positive_roots) + [neg(r) for r in self.positive_roots]

    @cached_property
    def root_index(self) -> dict:
        """Map root -> signed position: +i+1 for positive_roots[i], -(i+1) for its negative."""
        idx = {}
        for i, r in enumerate(self.positive_roots):
            idx[r] = i + 1
            idx[neg(r)] = -(i + 1)
        return idx

    def inner(self, x: Sequence, y: Sequence):
        n = self.rank
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])

    def pairing(self, weight: Sequence, root: Sequence) -> Fraction:
        """<weight, root^v> = 2 (weight, root) / (root, root)."""
        return Fraction(2) * self.inner(weight, root) / self.inner(root, root)

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self.root_index

    def is_positive(self, v: Sequence) -> bool:
        return self.root_index.get(tuple(v), 0) > 0

    def height(self, v: Sequence) -> int:
        return int(sum(v))

    def rho(self) -> tuple:
        n = self.rank
        return tuple(sum((w[i] for w in self.fundamental_weights), Fraction(0)) for i in range(n))


def neg(v: Sequence) -> tuple:
    return tuple(-x for x in v)


def normalize_sign(v: Sequence) -> tuple:
    """Scale by -1 if needed so the first nonzero coordinate is positive."""
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else neg(v)
    return tuple(v)


def build_root_system(lie_type: str, rank: int) -> RootSystem:
    lie_type = str(lie_type).upper()
    if lie_type not in SUPPORTED or rank not in SUPPORTED[lie_type]:
        raise UnsupportedType(f"unsupported root system {lie_type}{rank}")
    g = _gram(lie_type, rank)
    cartan = [[int(2 * g[i][j] / g[j][j]) for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        for j in range(rank):
            assert 2 * g[i][j] / g[j][j] == cartan[i][j]
    pos = _positive_roots_by_strings(cartan)
    expected = CLASSICAL_POSITIVE_ROOTS[lie_type](rank)
    if len(pos) != expected:
        raise AssertionError(f"{lie_type}{rank}: {len(pos)} positive roots, expected {expected}")
    # <w_i, a_j^v> = sum_k M[i][k] c[k][j] = delta_ij  =>  M = C^{-1}
    fw = fraction_inverse(cartan)
    return RootSystem(
        lie_type=lie_type,
        rank=rank,
        gram=tuple(tuple(r) for r in g),
        cartan=tuple(tuple(r) for r in cartan),
        positive_roots=tuple(pos),
        fundamental_weights=tuple(tuple(r) for r in fw),
    )


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element, identified by the images of the simple roots."""

    images: tuple  # images[j] = w(alpha_j), integer vectors
    word: tuple = field(default=(), compare=False)  # lex-minimal reduced word, 1-based
    length: int = field(default=-1, compare=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        w = "".join(f"s{i}" for i in self.word) if self.length >= 0 else "?"
        return f"WeylElement({w or 'e'})"

    def act(self, weight: Sequence) -> tuple:
        n = len(self.images)
        out = [0] * n
        for j, c in enumerate(weight):
            if c:
                img = self.images[j]
                for i in range(n):
                    out[i] += c * img[i]
        return tuple(out)

    def compose_images(self, other: "WeylElement") -> tuple:
        """Images of the product self * other (apply other first)."""
        return tuple(self.act(img) for img in other.images)

    @property
    def matrix(self) -> list[list]:
        """Matrix acting on column coordinate vectors: column j is w(alpha_j)."""
        n = len(self.images)
        return [[self.images[j][i] for j in range(n)] for i in range(n)]


class WeylGroup:
    """The finite Weyl group of a root system, enumerated by BFS.

    Elements are sorted by (length, lex-minimal reduced word); ``elements[0]``
    is the identity.
    """

    def __init__(self, rs: RootSystem, generators: Iterable[int] | None = None):
        self.rs = rs
        n = rs.rank
        gens = sorted(set(generators)) if generators is not None else list(range(1, n + 1))
        self.generators = tuple(gens)
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.simple_reflections = {
            i: tuple(
                tuple(int(k == j) - (rs.cartan[j][i - 1] if k == i - 1 else 0) for k in range(n))
                for j in range(n)
            )
            for i in range(1, n + 1)
        }
        words = {ident: ()}
        queue = deque([ident])
        while queue:
            cur = queue.popleft()
            cw = WeylElement(cur)
            for i in gens:
                nxt = cw.compose_images(WeylElement(self.simple_reflections[i]))
                if nxt not in words:
                    words[nxt] = words[cur] + (i,)
                    queue.append(nxt)
        pos_set = set(rs.positive_roots)
        elems = []
        for imgs, word in words.items():
            e = WeylElement(imgs)
            length = sum(1 for a in rs.positive_roots if e.act(a) not in pos_set)
            elems.append(WeylElement(imgs, word, length))
        elems.sort(key=lambda e: (e.length, e.word))
        self.elements: list[WeylElement] = elems
        self.index = {e.images: k for k, e in enumerate(elems)}
        self._mul: dict = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w: WeylElement) -> bool:
        return w.images in self.index

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def canonical(self, images: tuple) -> WeylElement:
        return self.elements[self.index[images]]

    def mul(self, u: WeylElement, v: WeylElement) -> WeylElement:
        key = (u.images, v.images)
        hit = self._mul.get(key)
        if hit is None:
            hit = self.canonical(u.compose_images(v))
            self._mul[key] = hit
        return hit

    def inverse(self, w: WeylElement) -> WeylElement:
        r = self.identity
        for i in reversed(w.word):
            r = self.mul(r, self.s(i))
        return r

    def s(self, i: int) -> WeylElement:
        return self.canonical(self.simple_reflections[i])

    def reflection(self, root: Sequence) -> WeylElement:
        """s_root(x) = x - <x, root^v> root."""
        rs = self.rs
        imgs = []
        for a in rs.simple_roots:
            c = rs.pairing(a, root)
            assert c.denominator == 1
            imgs.append(tuple(a[i] - int(c) * root[i] for i in range(rs.rank)))
        return self.canonical(tuple(imgs))

    def act(self, w: WeylElement, weight: Sequence) -> tuple:
        return w.act(weight)

    def conjugacy_classes(self) -> list[list[WeylElement]]:
        seen = set()
        classes = []
        for w in self.elements:
            if w in seen:
                continue
            cls = {self.mul(self.mul(g, w), self.inverse(g)) for g in self.elements}
            seen |= cls
            classes.append(sorted(cls, key=lambda e: self.index[e.images]))
        return classes


def weyl_group(rs: RootSystem) -> WeylGroup:
    return WeylGroup(rs)


@dataclass
class ParabolicData:
    rs: RootSystem
    theta: frozenset  # 1-based indices
    phi_theta_plus: tuple
    w_theta: list  # WeylElements of W_theta, canonical elements of the ambient W
    cosets: list  # list of lists of WeylElement; cosets[k][0] is the minimal representative
    group: WeylGroup

    @cached_property
    def coset_of(self) -> dict:
        """WeylElement -> index of its left coset w W_theta."""
        out = {}
        for k, c in enumerate(self.cosets):
            for w in c:
                out[w] = k
        return out

    @property
    def representatives(self) -> list[WeylElement]:
        return [c[0] for c in self.cosets]


def parabolic(rs: RootSystem, theta: Iterable[int], group: WeylGroup | None = None) -> ParabolicData:
    theta = frozenset(int(t) for t in theta)
    if not theta <= set(range(1, rs.rank + 1)):
        raise ValueError(f"theta {sorted(theta)} not a subset of 1..{rs.rank}")
    W = group if group is not None else WeylGroup(rs)
    th0 = [t - 1 for t in theta]
    phi_t = tuple(r for r in rs.positive_roots if all(r[i] == 0 for i in range(rs.rank) if i not in th0))
    sub = WeylGroup(rs, theta)
    w_theta = [W.canonical(e.images) for e in sub.elements]
    cosets = []
    seen = set()
    for w in W.elements:  # increasing length, so the first seen is minimal
        if w in seen:
            continue
        coset = sorted((W.mul(w, u) for u in w_theta), key=lambda e: (e.length, e.word))
        seen.update(coset)
        cosets.append(coset)
    return ParabolicData(rs, theta, phi_t, w_theta, cosets, W)
