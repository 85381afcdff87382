import numpy as np
import pytest
from sympy import isprime

import oracles
from ordertype.catalog import fact_sheets_large, GroupFactSheet
from ordertype.deduction import (
    CONFIRMED,
    INCONCLUSIVE,
    REFUTED,
    Evidence,
    conjecture_c_witness,
    conjecture_e_witness,
    deduce_centralizer_order,
    excluded_by_mersenne_clause,
    is_mersenne_prime,
    sylow_count_candidates,
)
from ordertype.group import GeneratedGroup, build_chain
from ordertype.perm import Permutation
from ordertype.stats import factorize

from conftest import CONSTRUCTED

BIG = 2**9 * 3**9 * 5 * 7 * 13


def test_deduce_centralizer_order():
    assert deduce_centralizer_order(factorize(20160), 7, (1, 2, 3, 4, 5, 6, 7, 15)) == 7
    o7 = fact_sheets_large()["O7_3"]
    assert deduce_centralizer_order(o7.factorization, 13, o7.spectrum) == 13
    assert deduce_centralizer_order(factorize(40320), 7, (1, 2, 7, 14)) is None
    assert deduce_centralizer_order(factorize(49 * 2), 7, (1, 2, 7)) is None
    with pytest.raises(ValueError):
        deduce_centralizer_order(factorize(20160), 11, (1, 2, 3))
    with pytest.raises(ValueError):
        deduce_centralizer_order(factorize(20160), 15, (1, 3, 5, 15))


@pytest.mark.parametrize(
    "order, p, c",
    [(20160, 7, 7), (168, 7, 7), (BIG, 13, 13), (40320, 7, 14), (60, 5, 5), (660, 11, 11), (7920, 11, 11)],
)
def test_candidates_agree_with_divisor_scan(order, p, c):
    got = [(x.m, x.n_p, x.count) for x in sylow_count_candidates(order, p, c)]
    assert got == oracles.sylow_candidates_by_scan(order, p, c)


def test_candidate_values():
    (a8,) = sylow_count_candidates(20160, 7)
    assert (a8.m, a8.n_p, a8.count) == (3, 960, 5760)
    (l27,) = sylow_count_candidates(168, 7)
    assert (l27.m, l27.n_p, l27.count) == (3, 8, 48)
    (o7,) = sylow_count_candidates(BIG, 13)
    assert (o7.m, o7.n_p, o7.count) == (6, 58786560, 705438720)


def test_candidate_invariants():
    for order, p in [(20160, 7), (168, 7), (BIG, 13), (60, 5)]:
        for cand in sylow_count_candidates(order, p):
            assert (p - 1) % cand.m == 0
            assert cand.n_p * p * cand.m == order
            assert cand.n_p % p == 1
            assert cand.count % (p - 1) == 0


def test_candidate_errors():
    with pytest.raises(ValueError, match="divides"):
        sylow_count_candidates(49 * 6, 7)
    with pytest.raises(ValueError):
        sylow_count_candidates(20160, 11)
    with pytest.raises(ValueError):
        sylow_count_candidates(20160, 9)
    with pytest.raises(ValueError):
        sylow_count_candidates(20160, 7, 9)


def _centralizer_order(chain, a):
    arr = chain.element_array()
    rows = np.arange(len(arr))[:, None]
    s = np.array(a.images, dtype=arr.dtype)
    return int(np.all(s[arr] == arr[rows, s[None, :]], axis=1).sum())


@pytest.mark.parametrize("name", CONSTRUCTED)
def test_enumeration_agrees_with_deduction(analyses, name):
    an = analyses[name]
    order = an.chain.order()
    spec = tuple(k for k, _ in an.table.counts)
    for p, e in factorize(order):
        if e != 1 or p not in spec:
            continue
        cent = deduce_centralizer_order(factorize(order), p, spec)
        a = an.chain.elements_of_order(p)[0]
        actual = _centralizer_order(an.chain, a)
        if cent is not None:
            assert cent == actual == p
        cands = sylow_count_candidates(order, p, actual)
        assert an.table[p] in [c.count for c in cands]
        if len(cands) == 1:
            assert cands[0].count == an.table[p]


def test_thompson_groups_need_larger_centralizer(analyses):
    for name in ("2^4:A7", "L3_4:2_2"):
        an = analyses[name]
        spec = tuple(k for k, _ in an.table.counts)
        assert deduce_centralizer_order(factorize(40320), 7, spec) is None
        a = an.chain.elements_of_order(7)[0]
        assert _centralizer_order(an.chain, a) == 14
        (cand,) = sylow_count_candidates(40320, 7, 14)
        assert cand.count == an.table[7] == 5760


def _ev(analyses, name):
    return analyses[name].evidence()


@pytest.mark.parametrize("pair", [("A8", "L3_4"), ("L2_7", "2Frob_168")])
def test_conjecture_c_confirmed_by_enumeration(analyses, pair):
    rep = conjecture_c_witness(_ev(analyses, pair[0]), _ev(analyses, pair[1]))
    assert rep.verdict == CONFIRMED
    assert rep.p == 7
    assert rep.blocks[0].count == rep.blocks[1].count
    assert {b.count_source for b in rep.blocks} == {"enumeration"}
    mirrored = conjecture_c_witness(_ev(analyses, pair[1]), _ev(analyses, pair[0]))
    assert mirrored.verdict == rep.verdict
    assert [b.to_dict() for b in mirrored.blocks] == [b.to_dict() for b in reversed(rep.blocks)]
    assert sorted(mirrored.witnesses) == sorted(rep.witnesses)


def test_conjecture_c_solvability_witness(analyses):
    rep = conjecture_c_witness(_ev(analyses, "L2_7"), _ev(analyses, "2Frob_168"))
    assert "solvability differs" in rep.witnesses


def test_conjecture_c_by_deduction():
    sheets = fact_sheets_large()
    rep = conjecture_c_witness(Evidence(sheets["O7_3"]), Evidence(sheets["S6_3"]))
    assert rep.verdict == CONFIRMED
    assert rep.p == 13
    assert [b.count_source for b in rep.blocks] == ["deduction", "deduction"]
    assert rep.blocks[0].candidates == rep.blocks[1].candidates
    assert [b.centralizer_order for b in rep.blocks] == [13, 13]


def test_conjecture_c_inconclusive_and_refuted():
    # p = 5 with centralizer undetermined: 10 in spectrum
    a = GroupFactSheet("a", factorize(60), (1, 2, 3, 5, 10, 6))
    b = GroupFactSheet("b", factorize(60), (1, 2, 3, 5))
    rep = conjecture_c_witness(Evidence(a), Evidence(b))
    assert rep.verdict == INCONCLUSIVE
    c = GroupFactSheet("c", factorize(120), (1, 2, 3, 5))
    assert conjecture_c_witness(Evidence(b), Evidence(c)).verdict == REFUTED
    # identical data, no invariant separates them
    assert conjecture_c_witness(Evidence(b), Evidence(b)).verdict == REFUTED


def test_conjecture_e(analyses):
    for name in ("A8", "L3_4"):
        an = analyses[name]
        rep = conjecture_e_witness(an.group, 7, chain=an.chain)
        assert rep.generated_by_order_p and rep.generated_order == 20160
        assert rep.center_order == 1
        assert rep.order_p_count == 5760
        assert not rep.mersenne_excluded
    c7 = GeneratedGroup(7, (Permutation.from_cycles(7, [tuple(range(7))]),), "C7")
    rep = conjecture_e_witness(c7, 7)
    assert rep.generated_by_order_p and rep.center_order == 7 and rep.order_p_count == 6


def test_mersenne_guard():
    assert [q for q in range(2, 200) if is_mersenne_prime(q)] == [3, 7, 31, 127]
    assert excluded_by_mersenne_clause("L2_7")
    assert excluded_by_mersenne_clause("L2_31")
    assert not excluded_by_mersenne_clause("L2_11")
    assert not excluded_by_mersenne_clause("A8")
    assert all(isprime(q) for q in (3, 7, 31, 127))
