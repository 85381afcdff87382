"""Counting elements of prime order p from arithmetic data alone.

When p divides |G| exactly once, a Sylow p-subgroup P = <a> is cyclic of
order p, N(P)/C(P) embeds in Aut(P) (so m = |N:C| divides p - 1), and
n_p = |G:N(P)| is 1 mod p. If in addition |C(a)| is known, the admissible
values of m pin down n_p and hence the (p - 1) n_p elements of order p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from sympy import divisors, isprime

from .catalog import GroupFactSheet
from .group import DEFAULT_CAP, GeneratedGroup, StabilizerChain, build_chain, center_order, generated_subgroup
from .stats import OrderCountTable, largest_prime_divisor

CONFIRMED = "confirmed"
INCONCLUSIVE = "inconclusive"
REFUTED = "refuted"
DATA_CONTRADICTION = "data-contradiction"


@dataclass(frozen=True, order=True)
class SylowCountCandidate:
    m: int  # |N(<a>) : C(<a>)|
    n_p: int
    count: int

    def to_dict(self) -> dict:
        return {"m": self.m, "n_p": self.n_p, "count": self.count}


def deduce_centralizer_order(factorization: Sequence[tuple[int, int]], p: int, spectrum: Sequence[int]) -> int | None:
    """Return p if |C(a)| = p is forced for an element a of order p, else None.

    Forced when p^2 does not divide |G| and no proper multiple of p is an
    element order: a prime q != p dividing |C(a)| would give an element of
    order pq.
    """
    if p not in spectrum:
        raise ValueError(f"{p} is not an element order")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    exponent = dict(factorization).get(p, 0)
    if exponent != 1:
        return None
    if any(k != p and k % p == 0 for k in spectrum):
        return None
    return p


def sylow_count_candidates(group_order: int, p: int, centralizer_order: int | None = None) -> list[SylowCountCandidate]:
    """All (m, n_p, count) consistent with m | p-1, n_p = |G|/(|C| m), n_p = 1 mod p."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if group_order % p:
        raise ValueError(f"{p} does not divide {group_order}")
    if group_order % (p * p) == 0:
        raise ValueError(f"{p}^2 divides {group_order}: Sylow {p}-subgroups are not cyclic of order {p}")
    c = p if centralizer_order is None else centralizer_order
    if c % p or (c // p) % p == 0 or group_order % c:
        raise ValueError(f"centralizer order {c} incompatible with |G| = {group_order}, p = {p}")
    out = []
    for m in divisors(p - 1):
        if group_order % (c * m):
            continue
        n_p = group_order // (c * m)
        if n_p % p == 1:
            out.append(SylowCountCandidate(int(m), n_p, (p - 1) * n_p))
    return out


# -- Conjecture C ------------------------------------------------------------

@dataclass
class Evidence:
    """What is known about one group: its sheet, plus enumeration results if constructed."""

    sheet: GroupFactSheet
    table: OrderCountTable | None = None
    derived_order: int | None = None
    solvable: bool | None = None


@dataclass
class GroupVerdictBlock:
    name: str
    order: int
    count: int | None
    count_source: str  # "enumeration" | "deduction" | "none"
    centralizer_order: int | None
    candidates: list[SylowCountCandidate] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "order_p_count": self.count,
            "order_p_count_source": self.count_source,
            "deduced_centralizer_order": self.centralizer_order,
            "candidates": [c.to_dict() for c in self.candidates],
        }


@dataclass
class WitnessReport:
    verdict: str
    p: int | None
    blocks: list[GroupVerdictBlock]
    checks: dict[str, bool]
    witnesses: list[str]
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "p": self.p,
            "groups": [b.to_dict() for b in self.blocks],
            "checks": dict(self.checks),
            "non_isomorphism_witnesses": list(self.witnesses),
            "notes": list(self.notes),
        }


def _order_p_block(ev: Evidence, p: int) -> GroupVerdictBlock:
    sheet = ev.sheet
    order = sheet.order
    cent = deduce_centralizer_order(sheet.factorization, p, sheet.spectrum) if p in sheet.spectrum else None
    cands = sylow_count_candidates(order, p) if cent is not None else []
    if ev.table is not None:
        return GroupVerdictBlock(sheet.name, order, ev.table[p], "enumeration", cent, cands)
    if len(cands) == 1:
        return GroupVerdictBlock(sheet.name, order, cands[0].count, "deduction", cent, cands)
    return GroupVerdictBlock(sheet.name, order, None, "none", cent, cands)


def conjecture_c_witness(first: Evidence, second: Evidence) -> WitnessReport:
    """Check whether two groups of equal order with equal order-p counts are provably non-isomorphic."""
    o1, o2 = first.sheet.order, second.sheet.order
    checks: dict[str, bool] = {"equal_orders": o1 == o2}
    if o1 != o2:
        return WitnessReport(REFUTED, None, [], checks, [], [f"orders differ: {o1} vs {o2}"])
    p = largest_prime_divisor(first.sheet.factorization)
    b1, b2 = _order_p_block(first, p), _order_p_block(second, p)
    notes = []
    if b1.count is not None and b2.count is not None:
        checks["equal_order_p_counts"] = b1.count == b2.count
        counts_known = True
    else:
        counts_known = False
        same_cands = bool(b1.candidates) and b1.candidates == b2.candidates
        checks["equal_order_p_counts"] = False
        if same_cands:
            notes.append("candidate sets identical for both groups: equal counts forced, but not unique")
        else:
            notes.append("order-p count not determined for at least one group")

    witnesses = []
    if first.sheet.spectrum != second.sheet.spectrum:
        witnesses.append("spectra differ")
    if first.solvable is not None and second.solvable is not None and first.solvable != second.solvable:
        witnesses.append("solvability differs")
    if first.derived_order is not None and second.derived_order is not None and first.derived_order != second.derived_order:
        witnesses.append("derived subgroup orders differ")
    checks["non_isomorphic"] = bool(witnesses)

    if not counts_known:
        verdict = INCONCLUSIVE
    elif all(checks.values()):
        verdict = CONFIRMED
    else:
        verdict = REFUTED
    return WitnessReport(verdict, p, [b1, b2], checks, witnesses, notes)


# -- Conjecture E ------------------------------------------------------------

def is_mersenne_prime(q: int) -> bool:
    return isprime(q) and (q + 1) & q == 0


def excluded_by_mersenne_clause(simple_name: str) -> bool:
    """True for L2(q) with q a Mersenne prime, e.g. ``L2_7``."""
    m = re.fullmatch(r"L2_(\d+)", simple_name)
    return bool(m) and is_mersenne_prime(int(m.group(1)))


@dataclass
class GenerationReport:
    name: str
    p: int
    group_order: int
    generated_order: int
    center_order: int
    order_p_count: int
    mersenne_excluded: bool

    @property
    def generated_by_order_p(self) -> bool:
        return self.generated_order == self.group_order

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "p": self.p,
            "group_order": self.group_order,
            "generated_by_order_p_order": self.generated_order,
            "generated_by_order_p": self.generated_by_order_p,
            "center_order": self.center_order,
            "order_p_count": self.order_p_count,
            "mersenne_excluded": self.mersenne_excluded,
        }


def conjecture_e_witness(g: GeneratedGroup, p: int, cap: int = DEFAULT_CAP,
                         chain: StabilizerChain | None = None, simple_name: str | None = None) -> GenerationReport:
    chain = chain or build_chain(g)
    elems = chain.elements_of_order(p, cap)
    _, gen_order = generated_subgroup(g.degree, elems)
    return GenerationReport(
        name=g.label,
        p=p,
        group_order=chain.order(),
        generated_order=gen_order,
        center_order=center_order(g, cap, chain),
        order_p_count=len(elems),
        mersenne_excluded=excluded_by_mersenne_clause(simple_name or g.label),
    )

