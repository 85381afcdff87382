"""Element-order statistics: order-count tables, spectra and nse."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import factorint, totient

from .group import DEFAULT_CAP, StabilizerChain, element_orders

Factorization = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class OrderCountTable:
    """Number of elements of each order; ``counts`` is sorted by order."""

    group_order: int
    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        counts = tuple(sorted((int(k), int(m)) for k, m in dict(self.counts).items() if m))
        object.__setattr__(self, "counts", counts)
        if sum(m for _, m in counts) != self.group_order:
            raise ValueError(f"counts sum to {sum(m for _, m in counts)}, not {self.group_order}")
        if dict(counts).get(1) != 1:
            raise ValueError("there must be exactly one element of order 1")
        for k, m in counts:
            if self.group_order % k:
                raise ValueError(f"element order {k} does not divide {self.group_order}")
            if m % int(totient(k)):
                raise ValueError(f"phi({k}) does not divide m_{k} = {m}")

    @classmethod
    def from_mapping(cls, group_order: int, counts: Mapping[int, int]) -> OrderCountTable:
        return cls(group_order, tuple(counts.items()))

    def __getitem__(self, k: int) -> int:
        return dict(self.counts).get(k, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def merge(self, other: OrderCountTable) -> dict[int, int]:
        """Add count maps of two partitions of one enumeration (not a valid table by itself)."""
        out = self.as_dict()
        for k, m in other.counts:
            out[k] = out.get(k, 0) + m
        return out

    def to_pairs(self) -> list[list[int]]:
        return [[k, m] for k, m in self.counts]


def order_count_table(chain: StabilizerChain, cap: int = DEFAULT_CAP) -> OrderCountTable:
    """Exact counts by full enumeration; raises CapExceeded for large groups."""
    orders = element_orders(chain.element_array(cap))
    ks, ms = np.unique(orders, return_counts=True)
    return OrderCountTable(chain.order(), tuple(zip(ks.tolist(), ms.tolist())))


def spectrum(t: OrderCountTable) -> tuple[int, ...]:
    return tuple(k for k, _ in t.counts)


def nse(t: OrderCountTable) -> tuple[int, ...]:
    """The counts m_k as a sorted multiset (one entry per element order)."""
    return tuple(sorted(m for _, m in t.counts))


def nse_values(t: OrderCountTable) -> frozenset[int]:
    """Distinct values of nse, the set-style form in which it is usually quoted."""
    return frozenset(m for _, m in t.counts)


def top_orders(spec: Iterable[int], j: int) -> tuple[int, ...]:
    """The ``j`` largest element orders, descending."""
    s = sorted(set(spec), reverse=True)
    if not 1 <= j <= len(s):
        raise ValueError(f"cannot take {j} largest of {len(s)} element orders")
    return tuple(s[:j])


def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    return tuple(sorted(factorint(n).items()))


def factorization_value(f: Sequence[tuple[int, int]]) -> int:
    out = 1
    for p, a in f:
        out *= p**a
    return out


def format_factorization(f: Sequence[tuple[int, int]]) -> str:
    return " * ".join(f"{p}^{a}" if a > 1 else str(p) for p, a in f) or "1"


def largest_prime_divisor(f: Sequence[tuple[int, int]]) -> int:
    if not f:
        raise ValueError("the trivial group has no prime divisor")
    return f[-1][0]


def same_order_type(t1: OrderCountTable, t2: OrderCountTable) -> bool:
    return t1.group_order == t2.group_order and t1.counts == t2.counts
