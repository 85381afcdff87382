"""Small fields GF(2^k), matrices over them, and the permutation actions
used to realize linear, affine and projective groups.

Vectors are row vectors and matrices act on the right (``x -> x M``), which
makes every action here a homomorphism for the left-to-right composition of
:mod:`ordertype.perm`.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Callable, Sequence

from .group import GeneratedGroup
from .perm import Permutation

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]

# x^2+x+1 and x^3+x+1, as bit masks
IRREDUCIBLE = {1: 0b11, 2: 0b111, 3: 0b1011}


class GF2k:
    """The field GF(2^k), elements encoded as k-bit integers."""

    def __init__(self, k: int):
        if k not in IRREDUCIBLE:
            raise ValueError(f"GF(2^{k}) not supported")
        self.k = k
        self.q = 1 << k
        self.poly = IRREDUCIBLE[k]
        self.mul_table = [[self._slow_mul(a, b) for b in range(self.q)] for a in range(self.q)]
        self.inv_table = [0] * self.q
        for a in range(1, self.q):
            self.inv_table[a] = next(b for b in range(1, self.q) if self.mul_table[a][b] == 1)

    def _slow_mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & self.q:
                a ^= self.poly
        return r

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul_table[r][a]
        return r

    def frobenius(self, a: int) -> int:
        return self.mul_table[a][a]

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            k += 1
        return k

    @cached_property
    def primitive(self) -> int:
        """Least generator of the multiplicative group."""
        return next(a for a in range(2, self.q) if self.mult_order(a) == self.q - 1) if self.q > 2 else 1


@lru_cache(maxsize=None)
def field(q: int) -> GF2k:
    return GF2k(q.bit_length() - 1)


# -- matrices -------------------------------------------------------------

def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def mat_mul(F: GF2k, a: Matrix, b: Matrix) -> Matrix:
    d = len(a)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            s = 0
            for t in range(d):
                s ^= F.mul_table[a[i][t]][b[t][j]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def vec_mat(F: GF2k, x: Vector, m: Matrix) -> Vector:
    d = len(m)
    out = [0] * d
    for i, xi in enumerate(x):
        if xi:
            mrow = F.mul_table[xi]
            for j in range(d):
                out[j] ^= mrow[m[i][j]]
    return tuple(out)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_inverse(F: GF2k, m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ValueError for singular input."""
    d = len(m)
    aug = [list(m[i]) + [int(i == j) for j in range(d)] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = F.inv(aug[col][col])
        aug[col] = [F.mul(scale, v) for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v ^ F.mul(f, w) for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[d:]) for row in aug)


def det(F: GF2k, m: Matrix) -> int:
    d = len(m)
    a = [list(r) for r in m]
    result = 1
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col]), None)
        if piv is None:
            return 0
        a[col], a[piv] = a[piv], a[col]  # row swap: sign is irrelevant in characteristic 2
        p = a[col][col]
        result = F.mul(result, p)
        pinv = F.inv(p)
        for r in range(col + 1, d):
            if a[r][col]:
                f = F.mul(a[r][col], pinv)
                a[r] = [v ^ F.mul(f, w) for v, w in zip(a[r], a[col])]
    return result


def frobenius_matrix(F: GF2k, m: Matrix) -> Matrix:
    return tuple(tuple(F.frobenius(v) for v in row) for row in m)


def inverse_transpose(F: GF2k, m: Matrix) -> Matrix:
    return transpose(mat_inverse(F, m))


def elementary_transvection(d: int, i: int, j: int, a: int) -> Matrix:
    return tuple(tuple(a if (r, c) == (i, j) else int(r == c) for c in range(d)) for r in range(d))


# -- projective space -------------------------------------------------------

def normalize(F: GF2k, x: Vector) -> Vector:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(v for v in x if v)
    s = F.inv(lead)
    return tuple(F.mul(s, v) for v in x)


@lru_cache(maxsize=None)
def projective_points(q: int, d: int) -> tuple[Vector, ...]:
    """Points of PG(d-1, q) as normalized vectors, in lexicographic order."""
    F = field(q)
    pts = {normalize(F, x) for x in itertools.product(range(q), repeat=d) if any(x)}
    return tuple(sorted(pts))


def _point_index(q: int, d: int) -> dict[Vector, int]:
    return {p: i for i, p in enumerate(projective_points(q, d))}


def projective_action(F: GF2k, m: Matrix, points: Sequence[Vector] | None = None) -> Permutation:
    """Permutation induced by ``x -> x m`` on projective points."""
    d = len(m)
    if det(F, m) == 0:
        raise ValueError("singular matrix")
    points = points if points is not None else projective_points(F.q, d)
    index = {p: i for i, p in enumerate(points)}
    return Permutation._raw(tuple(index[normalize(F, vec_mat(F, x, m))] for x in points))


def sl_generators(F: GF2k, d: int) -> list[Matrix]:
    """Elementary transvections ``I + a E_ij`` with ``a`` running over a basis of F over GF(2)."""
    basis = [1 << b for b in range(F.k)]
    return [elementary_transvection(d, i, j, a)
            for i in range(d) for j in range(d) if i != j for a in basis]


# -- vector spaces over GF(2) ----------------------------------------------

def int_vector(v: int, d: int) -> Vector:
    return tuple((v >> i) & 1 for i in range(d))


def vector_int(x: Vector) -> int:
    return sum(b << i for i, b in enumerate(x))


def gf2_linear_action(m: Matrix) -> Permutation:
    """``x -> x m`` on GF(2)^d, points indexed by their integer encoding."""
    d = len(m)
    rows = [vector_int(r) for r in m]
    images = []
    for v in range(1 << d):
        w = 0
        for i in range(d):
            if (v >> i) & 1:
                w ^= rows[i]
        images.append(w)
    perm = Permutation(images)
    if perm.images[0] != 0:
        raise ValueError("not linear")
    return perm


def matrix_of_linear_map(d: int, fn: Callable[[int], int]) -> Matrix:
    """GF(2) matrix whose row i is the image of the i-th basis vector under ``fn``."""
    m = tuple(int_vector(fn(1 << i), d) for i in range(d))
    if det(field(2), m) == 0:
        raise ValueError("map is not invertible")
    return m


def nonzero_vector_action(m: Matrix) -> Permutation:
    """Action of an invertible GF(2) matrix on the 2^d - 1 nonzero vectors (index v-1)."""
    full = gf2_linear_action(m)
    return Permutation._raw(tuple(full.images[v] - 1 for v in range(1, len(full.images))))


def matrix_from_nonzero_action(p: Permutation, d: int) -> Matrix:
    return tuple(int_vector(p.images[(1 << i) - 1] + 1, d) for i in range(d))


def affine_semidirect(d: int, linear_gens: Sequence[Matrix], label: str = "") -> GeneratedGroup:
    """Translations of GF(2)^d together with the given linear maps, on 2^d points."""
    n = 1 << d
    gens = [Permutation._raw(tuple(v ^ (1 << i) for v in range(n))) for i in range(d)]
    for m in linear_gens:
        if det(field(2), m) == 0:
            raise ValueError("singular linear generator")
        gens.append(gf2_linear_action(m))
    return GeneratedGroup(n, tuple(gens), label)


# -- PG(2,4) points and lines ------------------------------------------------

DUALITY_KINDS = ("field", "graph", "graph-field")


def _points_lines_action(F: GF2k, m: Matrix, pts: Sequence[Vector], index: dict[Vector, int]) -> Permutation:
    n = len(pts)
    mt = inverse_transpose(F, m)
    on_points = [index[normalize(F, vec_mat(F, x, m))] for x in pts]
    on_lines = [n + index[normalize(F, vec_mat(F, y, mt))] for y in pts]
    return Permutation._raw(tuple(on_points + on_lines))


def inner_points_lines(F: GF2k, m: Matrix) -> Permutation:
    """Action of ``m`` on points and (via inverse transpose) on lines: degree 2|PG|."""
    pts = projective_points(F.q, len(m))
    return _points_lines_action(F, m, pts, _point_index(F.q, len(m)))


def correlation(q: int, d: int) -> Permutation:
    """Swap point i with the line having the same coordinates."""
    n = len(projective_points(q, d))
    return Permutation._raw(tuple(list(range(n, 2 * n)) + list(range(n))))


def frobenius_points(F: GF2k, d: int, with_lines: bool = False) -> Permutation:
    pts = projective_points(F.q, d)
    index = _point_index(F.q, d)
    images = [index[tuple(F.frobenius(v) for v in x)] for x in pts]
    if with_lines:
        images += [len(pts) + i for i in images]
    return Permutation._raw(tuple(images))


def duality_extension(F: GF2k, base: Sequence[Matrix], outer: str, label: str = "") -> GeneratedGroup:
    """Extend the projective image of ``base`` by a field, graph or graph-field automorphism."""
    d = len(base[0])
    if outer == "field":
        gens = [projective_action(F, m) for m in base]
        gens.append(frobenius_points(F, d))
    elif outer in ("graph", "graph-field"):
        gens = [inner_points_lines(F, m) for m in base]
        delta = correlation(F.q, d)
        if outer == "graph-field":
            delta = delta * frobenius_points(F, d, with_lines=True)
        gens.append(delta)
    else:
        raise ValueError(f"unknown outer automorphism {outer!r}; expected one of {DUALITY_KINDS}")
    return GeneratedGroup(gens[0].degree, tuple(gens), label or f"{outer}-extension")
