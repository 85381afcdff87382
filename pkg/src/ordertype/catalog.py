"""Named groups: permutation constructions plus arithmetic-only fact sheets."""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Sequence

from sympy import isprime, primitive_root

from . import algebra
from .group import GeneratedGroup, StabilizerChain, build_chain, derived_subgroup
from .perm import Permutation
from .stats import (
    Factorization,
    OrderCountTable,
    factorization_value,
    factorize,
    nse_values,
    order_count_table,
    spectrum,
)

log = logging.getLogger(__name__)

CONSTRUCTED = "constructed"
PAPER_DATA = "paper-data"

# nse of 2^4:A7 and L3(4):2_2 as published (distinct values)
THOMPSON_NSE = frozenset({1, 435, 2240, 6300, 8064, 6720, 5040, 5760})


class CatalogError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupFactSheet:
    name: str
    factorization: Factorization
    spectrum: tuple[int, ...]
    source: str = PAPER_DATA

    def __post_init__(self):
        fac = tuple((int(p), int(a)) for p, a in self.factorization)
        object.__setattr__(self, "factorization", fac)
        object.__setattr__(self, "spectrum", tuple(sorted(set(self.spectrum))))
        primes = [p for p, _ in fac]
        if any(b <= a for a, b in zip(primes, primes[1:])):
            raise CatalogError(f"{self.name}: primes not strictly increasing: {primes}")
        for p, a in fac:
            if not isprime(p):
                raise CatalogError(f"{self.name}: {p} is not prime")
            if a < 1:
                raise CatalogError(f"{self.name}: exponent of {p} must be at least 1")
        if 1 not in self.spectrum:
            raise CatalogError(f"{self.name}: spectrum must contain 1")
        members = set(self.spectrum)
        for k in self.spectrum:
            if k < 1:
                raise CatalogError(f"{self.name}: element order {k} is not positive")
            missing = [d for d in range(1, k) if k % d == 0 and d not in members]
            if missing:
                raise CatalogError(f"{self.name}: spectrum not divisor-closed ({k} present, {missing[0]} absent)")
        if self.source not in (CONSTRUCTED, PAPER_DATA):
            raise CatalogError(f"{self.name}: unknown source {self.source!r}")

    @property
    def order(self) -> int:
        return factorization_value(self.factorization)


@dataclass
class CatalogEntry:
    """A fact sheet and, for constructible groups, a seeded recipe."""

    sheet: GroupFactSheet | None
    construction: Callable[[int], GeneratedGroup] | None = None
    name: str = ""
    # order-k counts stated alongside the sheet, keyed by element order
    stated_counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.name:
            self.name = self.sheet.name if self.sheet else ""

    @property
    def constructed(self) -> bool:
        return self.construction is not None

    def build(self, seed: int = 1) -> GeneratedGroup:
        if self.construction is None:
            raise CatalogError(f"{self.name} has no construction (arithmetic data only)")
        return self.construction(seed)


# -- constructions -----------------------------------------------------------

def alternating(n: int) -> GeneratedGroup:
    """A_n generated by (0 1 2) and an n-cycle (n odd) or (1 ... n-1) (n even)."""
    if n < 3:
        raise ValueError("alternating group needs n >= 3")
    three = Permutation.from_cycles(n, [(0, 1, 2)])
    long = tuple(range(n)) if n % 2 else tuple(range(1, n))
    return GeneratedGroup(n, (three, Permutation.from_cycles(n, [long])), f"A{n}")


def psl2(p: int) -> GeneratedGroup:
    """PSL(2, p) acting on the projective line; point p stands for infinity."""
    if p < 5 or not isprime(p):
        raise ValueError(f"psl2 needs a prime p >= 5, got {p}")
    inf = p
    lam = primitive_root(p)
    sq = lam * lam % p

    def mobius(f):
        return Permutation(f(x) for x in range(p + 1))

    shift = mobius(lambda x: inf if x == inf else (x + 1) % p)
    scale = mobius(lambda x: inf if x == inf else sq * x % p)
    invert = mobius(lambda x: 0 if x == inf else inf if x == 0 else (-pow(x, -1, p)) % p)
    return GeneratedGroup(p + 1, (shift, scale, invert), f"L2_{p}")


def psl3_4() -> GeneratedGroup:
    F = algebra.field(4)
    gens = [algebra.projective_action(F, m) for m in algebra.sl_generators(F, 3)]
    return GeneratedGroup(21, tuple(gens), "L3_4")


def _gf8_linear_maps() -> list[algebra.Matrix]:
    F = algebra.field(8)
    g = F.primitive
    return [
        algebra.matrix_of_linear_map(3, lambda x: F.mul(g, x)),
        algebra.matrix_of_linear_map(3, F.frobenius),
    ]


def two_frobenius_168() -> GeneratedGroup:
    """Maps x -> a x^(2^i) + b of GF(8): [[2^3]7]3, a 2-Frobenius group."""
    return algebra.affine_semidirect(3, _gf8_linear_maps(), "2Frob_168")


def gl4_2_on_nonzero_vectors() -> GeneratedGroup:
    F2 = algebra.field(2)
    gens = [algebra.nonzero_vector_action(m) for m in algebra.sl_generators(F2, 4)]
    return GeneratedGroup(15, tuple(gens), "GL4_2")


def find_linear_a7(seed: int, budget: int = 10_000) -> tuple[list[algebra.Matrix], int]:
    """Seeded search for a perfect subgroup of order 2520 in GL(4,2).

    Returns matrix generators and the number of pairs tried.
    """
    rng = random.Random(seed)
    gl = build_chain(gl4_2_on_nonzero_vectors())
    for attempt in range(1, budget + 1):
        a, b = gl.random_element(rng), gl.random_element(rng)
        sub = GeneratedGroup(15, (a, b))
        if build_chain(sub).order() != 2520:
            continue
        if build_chain(derived_subgroup(sub)).order() != 2520:
            continue
        log.debug("linear A7 found after %d pairs (seed %d)", attempt, seed)
        return [algebra.matrix_from_nonzero_action(x, 4) for x in (a, b)], attempt
    raise SearchExhausted(f"no A7 subgroup of GL(4,2) found in {budget} pairs (seed {seed})")


def affine_2e4_a7(seed: int = 1) -> GeneratedGroup:
    mats, _ = find_linear_a7(seed)
    return algebra.affine_semidirect(4, mats, "2^4:A7")


@dataclass(frozen=True)
class ExtensionMatch:
    group: GeneratedGroup
    variant: str
    nse_by_variant: dict


@lru_cache(maxsize=None)
def select_l3_4_extension() -> ExtensionMatch:
    """Build the three index-2 extensions of L3(4) and keep the one matching THOMPSON_NSE."""
    F = algebra.field(4)
    base = algebra.sl_generators(F, 3)
    matches = []
    table_nse = {}
    for kind in algebra.DUALITY_KINDS:
        g = algebra.duality_extension(F, base, kind, "L3_4:2_2")
        values = nse_values(order_count_table(build_chain(g)))
        table_nse[kind] = sorted(values)
        if values == THOMPSON_NSE:
            matches.append((kind, g))
    if len(matches) != 1:
        raise CatalogError(
            f"data contradiction: {len(matches)} extensions of L3(4) match the published nse "
            f"({[k for k, _ in matches]})")
    kind, g = matches[0]
    return ExtensionMatch(g, kind, table_nse)


def l3_4_ext_2_2(seed: int = 1) -> GeneratedGroup:
    return select_l3_4_extension().group


# -- fact sheets ---------------------------------------------------------------

def _sheet(name: str, order: int, spec: Sequence[int], source: str = PAPER_DATA) -> GroupFactSheet:
    return GroupFactSheet(name, factorize(order), tuple(spec), source)


def parse_factorization(text: str) -> Factorization:
    """Parse ``"2^9 * 3^9 * 5 * 7 * 13"``."""
    out = []
    for term in text.split("*"):
        term = term.strip()
        m = re.fullmatch(r"(\d+)\s*(?:\^\s*(\d+))?", term)
        if not m:
            raise ValueError(f"bad factor {term!r}")
        out.append((int(m.group(1)), int(m.group(2) or 1)))
    return tuple(out)


def parse_catalog(text: str, origin: str = "<catalog>") -> list[GroupFactSheet]:
    """Parse the flat catalog format.

    Each section starts with ``name = X`` and needs ``order = p^a * ...`` and
    ``spectrum = [k1, k2, ...]``. ``#`` starts a comment.
    """
    sheets: list[GroupFactSheet] = []
    current: dict | None = None

    def finish():
        if current is None:
            return
        where = f"{origin}:{current['line']}"
        for key in ("order", "spectrum"):
            if key not in current:
                raise CatalogError(f"{where}: section {current['name']!r} has no {key!r}")
        try:
            sheets.append(GroupFactSheet(current["name"], current["order"], current["spectrum"], PAPER_DATA))
        except CatalogError as exc:
            raise CatalogError(f"{where}: {exc}") from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{origin}:{lineno}"
        if "=" not in line:
            raise CatalogError(f"{where}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "name":
            finish()
            if not value:
                raise CatalogError(f"{where}: empty name")
            current = {"name": value, "line": lineno}
            continue
        if current is None:
            raise CatalogError(f"{where}: {key!r} before any 'name ='")
        if key in current:
            raise CatalogError(f"{where}: duplicate key {key!r}")
        if key == "order":
            try:
                current["order"] = parse_factorization(value)
            except ValueError as exc:
                raise CatalogError(f"{where}: {exc}") from None
        elif key == "spectrum":
            if not (value.startswith("[") and value.endswith("]")):
                raise CatalogError(f"{where}: spectrum must be a bracketed list")
            try:
                current["spectrum"] = tuple(int(v) for v in value[1:-1].split(",") if v.strip())
            except ValueError:
                raise CatalogError(f"{where}: spectrum entries must be integers") from None
        else:
            raise CatalogError(f"{where}: unknown key {key!r}")
    finish()
    names = [s.name for s in sheets]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise CatalogError(f"{origin}: duplicate section names {sorted(dupes)}")
    return sheets


def load_catalog(path) -> list[GroupFactSheet]:
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read(), str(path))


def fact_sheets_large() -> dict[str, GroupFactSheet]:
    text = resources.files("ordertype").joinpath("data/large_groups.cat").read_text(encoding="utf-8")
    return {s.name: s for s in parse_catalog(text, "large_groups.cat")}


def builtin_entries() -> dict[str, CatalogEntry]:
    entries = {
        "A7": CatalogEntry(_sheet("A7", 2520, range(1, 8), CONSTRUCTED), lambda s: alternating(7)),
        "A8": CatalogEntry(_sheet("A8", 20160, [1, 2, 3, 4, 5, 6, 7, 15]), lambda s: alternating(8),
                           stated_counts={7: 5760}),
        "L3_4": CatalogEntry(_sheet("L3_4", 20160, [1, 2, 3, 4, 5, 7]), lambda s: psl3_4(),
                             stated_counts={7: 5760}),
        "L2_7": CatalogEntry(_sheet("L2_7", 168, [1, 2, 3, 4, 7]), lambda s: psl2(7),
                             stated_counts={7: 48}),
        "2Frob_168": CatalogEntry(_sheet("2Frob_168", 168, [1, 2, 3, 6, 7], CONSTRUCTED),
                                  lambda s: two_frobenius_168(), stated_counts={7: 48}),
        "2^4:A7": CatalogEntry(_sheet("2^4:A7", 40320, [1, 2, 3, 4, 5, 6, 7, 8, 14]), affine_2e4_a7,
                               stated_counts={7: 5760}),
        "L3_4:2_2": CatalogEntry(_sheet("L3_4:2_2", 40320, [1, 2, 3, 4, 5, 6, 7, 8, 14]), l3_4_ext_2_2,
                                 stated_counts={7: 5760}),
    }
    for name, sheet in fact_sheets_large().items():
        entries[name] = CatalogEntry(sheet)
    return entries


def lookup(name: str, extra: Sequence[GroupFactSheet] = ()) -> CatalogEntry:
    """Find a built-in or ingested entry; ``A<n>`` and ``L2_<p>`` are built on demand."""
    for sheet in extra:
        if sheet.name == name:
            return CatalogEntry(sheet)
    entries = builtin_entries()
    if name in entries:
        return entries[name]
    m = re.fullmatch(r"A(\d+)", name)
    if m and int(m.group(1)) >= 3:
        n = int(m.group(1))
        return CatalogEntry(None, lambda s: alternating(n), name)
    m = re.fullmatch(r"L2_(\d+)", name)
    if m and isprime(int(m.group(1))) and int(m.group(1)) >= 5:
        p = int(m.group(1))
        return CatalogEntry(None, lambda s: psl2(p), name)
    raise KeyError(name)


def computed_sheet(name: str, chain: StabilizerChain, table: OrderCountTable) -> GroupFactSheet:
    return GroupFactSheet(name, factorize(chain.order()), spectrum(table), CONSTRUCTED)
