"""Scenario runners and reports for the command-line front end."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import __version__
from .catalog import (
    CONSTRUCTED,
    THOMPSON_NSE,
    CatalogEntry,
    GroupFactSheet,
    computed_sheet,
    lookup,
    select_l3_4_extension,
)
from .deduction import (
    CONFIRMED,
    DATA_CONTRADICTION,
    INCONCLUSIVE,
    REFUTED,
    Evidence,
    conjecture_c_witness,
    conjecture_e_witness,
    deduce_centralizer_order,
    excluded_by_mersenne_clause,
    sylow_count_candidates,
)
from .group import DEFAULT_CAP, CapExceeded, GeneratedGroup, StabilizerChain, build_chain, derived_series
from .stats import (
    OrderCountTable,
    format_factorization,
    largest_prime_divisor,
    nse,
    nse_values,
    order_count_table,
    same_order_type,
)

SCENARIOS = ("ce1", "ce2", "ce3", "conjE", "thompson")

EXIT_OK = 0
EXIT_UNCONFIRMED = 1
EXIT_USAGE = 2


@dataclass
class Report:
    scenario: str
    verdict: str
    groups: list[dict]
    checks: dict[str, bool]
    details: dict = field(default_factory=dict)
    seed: int = 1
    version: str = __version__
    duration_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "verdict": self.verdict,
            "groups": self.groups,
            "checks": self.checks,
            "details": self.details,
            "seed": self.seed,
            "version": self.version,
            "duration_s": round(self.duration_s, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"== {self.scenario}: {self.verdict.upper()} =="]
        _flatten(self.to_dict(), "", lines)
        return "\n".join(lines)


def _flatten(obj, prefix: str, out: list[str]) -> None:
    # scalars and flat lists are printed with json.dumps so numbers render as in to_json
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj) and not _is_pair_list(obj):
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}[{i}]", out)
    else:
        out.append(f"{prefix}: {json.dumps(obj)}")


def _is_pair_list(obj: list) -> bool:
    return all(isinstance(v, list) and all(isinstance(x, int) for x in v) for v in obj)


# -- group analysis ---------------------------------------------------------------

@dataclass
class Analysis:
    entry: CatalogEntry
    sheet: GroupFactSheet  # reference data (published, or computed for derived-only entries)
    group: GeneratedGroup | None = None
    chain: StabilizerChain | None = None
    table: OrderCountTable | None = None
    series: list[int] | None = None
    contradictions: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.entry.name

    @property
    def effective_sheet(self) -> GroupFactSheet:
        """Computed data when available, reference data otherwise."""
        if self.table is not None:
            return computed_sheet(self.name, self.chain, self.table)
        return self.sheet

    def evidence(self) -> Evidence:
        solvable = self.series[-1] == 1 if self.series else None
        derived = (self.series[1] if len(self.series) > 1 else self.series[0]) if self.series else None
        return Evidence(self.effective_sheet, self.table, derived, solvable)

    def block(self) -> dict:
        sheet = self.effective_sheet
        enumerated = self.table is not None
        out = {
            "name": self.name,
            "source": CONSTRUCTED if self.group is not None else "paper-data",
            "order": sheet.order,
            "order_factorization": format_factorization(sheet.factorization),
            "order_source": "stabilizer-chain" if self.chain is not None else "paper-data",
            "spectrum": list(sheet.spectrum),
            "spectrum_source": "enumeration" if enumerated else "paper-data",
        }
        if self.group is not None:
            out["degree"] = self.group.degree
        if enumerated:
            out["order_counts"] = self.table.to_pairs()
            out["nse"] = list(nse(self.table))
        if self.series is not None:
            out["derived_series"] = list(self.series)
            out["solvable"] = self.series[-1] == 1
        if self.contradictions:
            out["contradictions"] = list(self.contradictions)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


class Session:
    """Caches analyses so ``verify all`` builds each group once."""

    def __init__(self, seed: int = 1, cap: int = DEFAULT_CAP, extra: Sequence[GroupFactSheet] = ()):
        self.seed = seed
        self.cap = cap
        self.extra = tuple(extra)
        self._cache: dict[str, Analysis] = {}

    def analyze(self, name: str) -> Analysis:
        if name in self._cache:
            return self._cache[name]
        entry = lookup(name, self.extra)
        an = Analysis(entry, entry.sheet)
        if entry.constructed:
            an.group = entry.build(self.seed)
            an.chain = build_chain(an.group)
            try:
                an.table = order_count_table(an.chain, self.cap)
            except CapExceeded as exc:
                an.notes.append(f"{exc}; using arithmetic data only")
            an.series = derived_series(an.group)
            if an.sheet is None:
                if an.table is None:
                    raise CapExceeded(an.chain.order(), self.cap)
                an.sheet = an.effective_sheet
            _compare(an)
        self._cache[name] = an
        return an


def _compare(an: Analysis) -> None:
    ref = an.sheet
    order = an.chain.order()
    if order != ref.order:
        an.contradictions.append(f"computed order {order} != reference {ref.order}")
    if an.table is None:
        return
    spec = tuple(k for k, _ in an.table.counts)
    if spec != ref.spectrum:
        an.contradictions.append(f"computed spectrum {list(spec)} != reference {list(ref.spectrum)}")
    for k, m in an.entry.stated_counts.items():
        if an.table[k] != m:
            an.contradictions.append(f"computed m_{k} = {an.table[k]} != stated {m}")


def _combine(checks: dict[str, bool], analyses: Sequence[Analysis], base: str | None = None) -> str:
    if any(a.contradictions for a in analyses):
        return DATA_CONTRADICTION
    if base is not None and base != CONFIRMED:
        return base
    return CONFIRMED if all(checks.values()) else REFUTED


# -- scenarios ------------------------------------------------------------------

def verify_pair(session: Session, first: str, second: str, scenario: str | None = None) -> Report:
    t0 = time.perf_counter()
    a, b = session.analyze(first), session.analyze(second)
    witness = conjecture_c_witness(a.evidence(), b.evidence())
    checks = {f"witness.{k}": v for k, v in witness.checks.items()}
    verdict = _combine(checks, [a, b], witness.verdict)
    return Report(scenario or f"pair:{first}:{second}", verdict, [a.block(), b.block()], checks,
                  {"conjecture_c": witness.to_dict()}, session.seed, duration_s=time.perf_counter() - t0)


def scenario_ce1(session: Session) -> Report:
    return verify_pair(session, "A8", "L3_4", "ce1")


def scenario_ce2(session: Session) -> Report:
    return verify_pair(session, "O7_3", "S6_3", "ce2")


def scenario_ce3(session: Session) -> Report:
    return verify_pair(session, "L2_7", "2Frob_168", "ce3")


def scenario_thompson(session: Session) -> Report:
    t0 = time.perf_counter()
    a, b = session.analyze("2^4:A7"), session.analyze("L3_4:2_2")
    match = select_l3_4_extension()
    checks = {
        "both_enumerated": a.table is not None and b.table is not None,
    }
    details: dict = {"matched_extension": match.variant,
                     "nse_values_by_extension": {k: list(v) for k, v in match.nse_by_variant.items()}}
    if checks["both_enumerated"]:
        checks["same_order_type"] = same_order_type(a.table, b.table)
        checks["nse_matches_published"] = nse_values(a.table) == THOMPSON_NSE == nse_values(b.table)
        p = largest_prime_divisor(a.effective_sheet.factorization)
        details["p"] = p
        details["order_p_counts"] = [a.table[p], b.table[p]]
        derived = [a.evidence().derived_order, b.evidence().derived_order]
        details["derived_subgroup_orders"] = derived
        checks["derived_orders_differ"] = derived[0] != derived[1]
        checks["first_perfect"] = derived[0] == a.chain.order()
        checks["neither_solvable"] = a.series[-1] != 1 and b.series[-1] != 1
    verdict = _combine(checks, [a, b])
    return Report("thompson", verdict, [a.block(), b.block()], checks, details, session.seed,
                  duration_s=time.perf_counter() - t0)


def scenario_conj_e(session: Session) -> Report:
    t0 = time.perf_counter()
    simple, other = session.analyze("A8"), session.analyze("L3_4")
    p = largest_prime_divisor(simple.effective_sheet.factorization)
    gens = []
    for an in (simple, other):
        gens.append(conjecture_e_witness(an.group, p, session.cap, an.chain, simple_name=an.name))
    s_rep, g_rep = gens
    checks = {
        "simple_not_mersenne_l2": not excluded_by_mersenne_clause(simple.name),
        "generated_by_order_p": all(r.generated_by_order_p for r in gens),
        "centers_trivial": all(r.center_order == 1 for r in gens),
        "equal_order_p_counts": s_rep.order_p_count == g_rep.order_p_count,
        "not_isomorphic": simple.effective_sheet.spectrum != other.effective_sheet.spectrum,
    }
    verdict = _combine(checks, [simple, other])
    return Report("conjE", verdict, [simple.block(), other.block()], checks,
                  {"p": p, "generation": [r.to_dict() for r in gens]}, session.seed,
                  duration_s=time.perf_counter() - t0)


RUNNERS: dict[str, Callable[[Session], Report]] = {
    "ce1": scenario_ce1,
    "ce2": scenario_ce2,
    "ce3": scenario_ce3,
    "conjE": scenario_conj_e,
    "thompson": scenario_thompson,
}


def run_scenario(name: str, session: Session) -> list[Report]:
    if name == "all":
        return [RUNNERS[s](session) for s in SCENARIOS]
    if name not in RUNNERS:
        raise KeyError(name)
    return [RUNNERS[name](session)]


def stats_report(session: Session, name: str) -> Report:
    t0 = time.perf_counter()
    an = session.analyze(name)
    sheet = an.effective_sheet
    details: dict = {}
    if sheet.factorization:
        p = largest_prime_divisor(sheet.factorization)
        details["p"] = p
        if p in sheet.spectrum:
            cent = deduce_centralizer_order(sheet.factorization, p, sheet.spectrum)
            details["deduced_centralizer_order"] = cent
            if cent is not None:
                details["candidates"] = [c.to_dict() for c in sylow_count_candidates(sheet.order, p)]
        if an.table is not None:
            details["order_p_count"] = an.table[p]
    verdict = DATA_CONTRADICTION if an.contradictions else CONFIRMED
    return Report(f"stats:{name}", verdict, [an.block()], {}, details, session.seed,
                  duration_s=time.perf_counter() - t0)


def exit_code(reports: Sequence[Report]) -> int:
    return EXIT_OK if all(r.verdict == CONFIRMED for r in reports) else EXIT_UNCONFIRMED


__all__ = [
    "CONFIRMED", "INCONCLUSIVE", "REFUTED", "DATA_CONTRADICTION",
    "Report", "Session", "run_scenario", "stats_report", "verify_pair", "exit_code",
]
