"""Permutation groups given by generators, backed by a stabilizer chain.

The chain is built with the deterministic incremental Schreier-Sims
algorithm: every Schreier generator is sifted, no random verification.
Randomness only enters through ``random_element`` and, optionally, through
the ``seed`` passed to ``build_chain`` (which shuffles the base-point
preference and generator order without changing the group).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .perm import Permutation

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """Refusal to enumerate a group larger than the enumeration cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"group of order {order} exceeds enumeration cap {cap}")
        self.order = order
        self.cap = cap


@dataclass(frozen=True)
class GeneratedGroup:
    degree: int
    generators: tuple[Permutation, ...]
    label: str = ""

    def __post_init__(self):
        gens = []
        seen = set()
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError(f"generator of degree {g.degree} in group of degree {self.degree}")
            if g.is_identity() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        if not gens:
            gens = [Permutation.identity(self.degree)]
        object.__setattr__(self, "generators", tuple(gens))


@dataclass
class _Level:
    base: int
    gens: list[Permutation] = field(default_factory=list)
    # orbit point -> (u, u^-1) with u(base) == point
    transversal: dict[int, tuple[Permutation, Permutation]] = field(default_factory=dict)


class StabilizerChain:
    """Base, fundamental orbits, transversals and strong generators of a group."""

    def __init__(self, degree: int, point_order: Sequence[int] | None = None):
        self.degree = degree
        self.point_order = tuple(point_order) if point_order is not None else tuple(range(degree))
        self.levels: list[_Level] = []
        self._identity = Permutation.identity(degree)

    # -- construction --------------------------------------------------
    def _new_level(self, g: Permutation) -> _Level:
        b = next(x for x in self.point_order if g.images[x] != x)
        lvl = _Level(b)
        lvl.transversal[b] = (self._identity, self._identity)
        self.levels.append(lvl)
        return lvl

    def _sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            x = g.images[lvl.base]
            entry = lvl.transversal.get(x)
            if entry is None:
                return g, i
            g = g * entry[1]
        return g, len(self.levels)

    def _add_strong(self, i: int, g: Permutation) -> None:
        """Add ``g`` (fixing base points above level ``i``) to level ``i`` and close up."""
        lvl = self._new_level(g) if i == len(self.levels) else self.levels[i]
        lvl.gens.append(g)
        # new (orbit point, generator) pairs to check: all old points with g,
        # then every newly reached point with all generators
        work = [(x, g) for x in list(lvl.transversal)]
        while work:
            x, s = work.pop()
            u, _ = lvl.transversal[x]
            y = s.images[x]
            entry = lvl.transversal.get(y)
            if entry is None:
                v = u * s
                lvl.transversal[y] = (v, v.inverse())
                work.extend((y, t) for t in lvl.gens)
                continue
            schreier = u * s * entry[1]
            if schreier.is_identity():
                continue
            h, j = self._sift(schreier, i + 1)
            if not h.is_identity():
                for m in range(j, i, -1):
                    self._add_strong(m, h)

    def add_generator(self, g: Permutation) -> bool:
        """Extend the group by ``g``; return True if the group grew."""
        if g.degree != self.degree:
            raise ValueError(f"degree mismatch: {g.degree} vs {self.degree}")
        h, j = self._sift(g)
        if h.is_identity():
            return False
        for m in range(j, -1, -1):
            self._add_strong(m, h)
        return True

    # -- queries ---------------------------------------------------------
    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.base for lvl in self.levels)

    @property
    def strong_generators(self) -> list[Permutation]:
        out: list[Permutation] = []
        seen = set()
        for lvl in self.levels:
            for g in lvl.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def orbit_sizes(self) -> list[int]:
        return [len(lvl.transversal) for lvl in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        h, _ = self._sift(p)
        return h.is_identity()

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def _check_cap(self, cap: int) -> int:
        n = self.order()
        if n > cap:
            raise CapExceeded(n, cap)
        return n

    def element_array(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        """All elements as rows of an ``(order, degree)`` image array."""
        self._check_cap(cap)
        elems = np.arange(self.degree, dtype=np.int16)[None, :]
        # g = u_last * ... * u_0 with u_0 applied last
        for lvl in reversed(self.levels):
            reps = np.array([u.images for u, _ in lvl.transversal.values()], dtype=np.int16)
            elems = reps[:, elems].reshape(-1, self.degree)
        return elems

    def enumerate(self, cap: int = DEFAULT_CAP) -> Iterator[Permutation]:
        for row in self.element_array(cap):
            yield Permutation._raw(tuple(row.tolist()))

    def random_element(self, rng: random.Random) -> Permutation:
        g = self._identity
        for lvl in reversed(self.levels):
            u, _ = rng.choice(list(lvl.transversal.values()))
            g = g * u
        return g

    def elements_of_order(self, k: int, cap: int = DEFAULT_CAP) -> list[Permutation]:
        arr = self.element_array(cap)
        mask = element_orders(arr) == k
        return [Permutation._raw(tuple(r.tolist())) for r in arr[mask]]

    def verify(self) -> bool:
        """Self-check: transversals map base points correctly and strong generators sift."""
        for lvl in self.levels:
            for x, (u, ui) in lvl.transversal.items():
                if u.images[lvl.base] != x or not (u * ui).is_identity():
                    return False
        return all(self.contains(g) for g in self.strong_generators)


def element_orders(arr: np.ndarray) -> np.ndarray:
    """Vectorized element orders for an ``(N, degree)`` array of permutations."""
    n_elems, degree = arr.shape
    ident = np.arange(degree, dtype=arr.dtype)
    cycle_len = np.zeros(arr.shape, dtype=np.int64)
    cur = arr.copy()
    rows = np.arange(n_elems)[:, None]
    for k in range(1, degree + 1):
        hit = (cur == ident) & (cycle_len == 0)
        cycle_len[hit] = k
        if k < degree:
            cur = arr[rows, cur]
    return np.lcm.reduce(cycle_len, axis=1)


def build_chain(g: GeneratedGroup | Iterable[Permutation], seed: int | None = None) -> StabilizerChain:
    """Build a stabilizer chain; ``seed`` only reorders the base preference and generators."""
    gens = list(g.generators if isinstance(g, GeneratedGroup) else g)
    degree = gens[0].degree
    points = list(range(degree))
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(points)
        rng.shuffle(gens)
    chain = StabilizerChain(degree, points)
    for s in gens:
        chain.add_generator(s)
    return chain


def group_order(c: StabilizerChain) -> int:
    return c.order()


def generated_subgroup(degree: int, gens: Iterable[Permutation], label: str = "") -> tuple[GeneratedGroup, int]:
    """Subgroup generated by ``gens``; redundant generators are dropped as they are sifted."""
    chain = StabilizerChain(degree)
    kept = []
    for s in gens:
        if chain.add_generator(s):
            kept.append(s)
    group = GeneratedGroup(degree, tuple(kept), label)
    return group, chain.order()


def normal_closure(degree: int, gens: Iterable[Permutation], ambient: Sequence[Permutation]) -> StabilizerChain:
    chain = StabilizerChain(degree)
    pending = [s for s in gens if chain.add_generator(s)]
    normal_gens = list(pending)
    while pending:
        x = pending.pop()
        for g in ambient:
            c = x.conjugate(g)
            if chain.add_generator(c):
                normal_gens.append(c)
                pending.append(c)
    return chain


def derived_subgroup(g: GeneratedGroup) -> GeneratedGroup:
    gens = g.generators
    comms = [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    chain = normal_closure(g.degree, comms, gens)
    label = f"[{g.label},{g.label}]" if g.label else ""
    return GeneratedGroup(g.degree, tuple(chain.strong_generators), label)


def derived_series(g: GeneratedGroup) -> list[int]:
    """Orders ``|G| > |G'| > ...`` down to the point where the series stabilizes."""
    orders = [build_chain(g).order()]
    while orders[-1] > 1:
        g = derived_subgroup(g)
        n = build_chain(g).order()
        if n == orders[-1]:
            break
        orders.append(n)
    return orders


def is_solvable(g: GeneratedGroup) -> bool:
    return derived_series(g)[-1] == 1


def center_order(g: GeneratedGroup, cap: int = DEFAULT_CAP, chain: StabilizerChain | None = None) -> int:
    chain = chain or build_chain(g)
    arr = chain.element_array(cap)
    rows = np.arange(len(arr))[:, None]
    central = np.ones(len(arr), dtype=bool)
    for s in g.generators:
        s_arr = np.array(s.images, dtype=arr.dtype)
        # e*s maps i -> s[e[i]]; s*e maps i -> e[s[i]]
        central &= np.all(s_arr[arr] == arr[rows, s_arr[None, :]], axis=1)
    return int(central.sum())
