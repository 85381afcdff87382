"""Permutations of {0, ..., n-1} stored as image tuples.

Composition convention: ``p * q`` (and ``compose(p, q)``) applies ``p`` first,
then ``q``, so ``(p * q)(i) == q(p(i))``.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence


class Permutation:
    """An immutable bijection on ``range(degree)``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n < 1:
            raise ValueError("degree must be at least 1")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {images}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images: tuple) -> Permutation:
        # trusted constructor, skips the bijection check
        p = object.__new__(cls)
        p.images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise ValueError("degree must be at least 1")
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
        """Build from 0-based disjoint cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for k, a in enumerate(cyc):
                if a in seen or not 0 <= a < degree:
                    raise ValueError(f"bad cycle {tuple(cyc)} for degree {degree}")
                seen.add(a)
                images[a] = cyc[(k + 1) % len(cyc)]
        return cls._raw(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"not in cycle notation: {text!r}")
        cycles = []
        for chunk in text[1:-1].split(")("):
            chunk = chunk.strip()
            if chunk:
                cycles.append([int(tok) - 1 for tok in chunk.replace(",", " ").split()])
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def conjugate(self, by: Permutation) -> Permutation:
        """Return ``by^-1 * self * by``."""
        return by.inverse() * self * by

    def commutator(self, other: Permutation) -> Permutation:
        """Return ``self^-1 * other^-1 * self * other``."""
        return self.inverse() * other.inverse() * self * other

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, fixed points included, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_structure(self) -> CycleStructure:
        return cycle_structure(self)

    @property
    def order(self) -> int:
        return element_order(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        parts = [
            "(" + " ".join(str(a + 1) for a in cyc) + ")"
            for cyc in self.cycles()
            if len(cyc) > 1
        ]
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


class CycleStructure(tuple):
    """Sorted multiset of cycle lengths (fixed points counted as 1-cycles)."""

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def order(self) -> int:
        return math.lcm(*self)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if len(p.images) != len(q.images):
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation._raw(tuple([qi[i] for i in p.images]))


def cycle_structure(p: Permutation) -> CycleStructure:
    return CycleStructure(sorted(len(c) for c in p.cycles()))


def element_order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in p.cycles()))
