import random

import numpy as np
import pytest

from ordertype.catalog import alternating, psl3_4
from ordertype.group import (
    CapExceeded,
    GeneratedGroup,
    build_chain,
    center_order,
    derived_series,
    derived_subgroup,
    element_orders,
    generated_subgroup,
    group_order,
    is_solvable,
)
from ordertype.perm import Permutation, element_order

from conftest import CONSTRUCTED


def cyclic7(degree=7):
    return GeneratedGroup(degree, (Permutation.from_cycles(degree, [tuple(range(7))]),), "C7")


@pytest.fixture(scope="module")
def a8_chain():
    return build_chain(alternating(8))


def test_generators_deduplicated_and_identity_dropped():
    p = Permutation.from_cycles(5, [(0, 1)])
    g = GeneratedGroup(5, (p, Permutation.identity(5), p))
    assert g.generators == (p,)
    assert GeneratedGroup(5, (Permutation.identity(5),)).generators == (Permutation.identity(5),)
    with pytest.raises(ValueError):
        GeneratedGroup(5, (Permutation.identity(4),))


def test_trivial_group():
    c = build_chain(GeneratedGroup(5, (Permutation.identity(5),)))
    assert group_order(c) == 1
    assert [p.is_identity() for p in c.enumerate()] == [True]
    assert c.random_element(random.Random(0)).is_identity()
    assert c.contains(Permutation.identity(5))


def test_cyclic_group():
    c = build_chain(cyclic7(8))
    assert c.order() == 7
    elems = list(c.enumerate())
    assert len(elems) == 7
    assert {element_order(e) for e in elems} == {1, 7}


def test_a8_order_and_membership(a8_chain):
    assert a8_chain.order() == 20160
    assert a8_chain.verify()
    assert all(a8_chain.contains(g) for g in alternating(8).generators)
    assert a8_chain.contains(Permutation.identity(8))
    assert not a8_chain.contains(Permutation.from_cycles(8, [(0, 1)]))
    with pytest.raises(ValueError):
        a8_chain.contains(Permutation.identity(9))


def test_enumeration_distinct_and_contained(a8_chain):
    arr = a8_chain.element_array()
    assert len(arr) == 20160
    assert len({row.tobytes() for row in arr}) == 20160
    sample = arr[:: 97]
    assert all(a8_chain.contains(Permutation(r)) for r in sample)


def test_enumeration_cap(a8_chain):
    with pytest.raises(CapExceeded, match="20160"):
        a8_chain.element_array(cap=1000)
    with pytest.raises(CapExceeded):
        list(a8_chain.enumerate(cap=20159))


def test_vectorized_orders_match_cycle_lcm(a8_chain):
    arr = a8_chain.element_array()[::37]
    fast = element_orders(arr)
    assert fast.tolist() == [element_order(Permutation(r)) for r in arr]


def test_chain_seed_independence(a8_chain):
    rng = random.Random(5)
    other = build_chain(alternating(8), seed=99)
    assert other.order() == a8_chain.order()
    probes = [Permutation(rng.sample(range(8), 8)) for _ in range(100)]
    assert any(a8_chain.contains(p) for p in probes)
    assert any(not a8_chain.contains(p) for p in probes)
    assert [a8_chain.contains(p) for p in probes] == [other.contains(p) for p in probes]


def test_random_element_uniform_on_cyclic():
    c = build_chain(cyclic7())
    rng = random.Random(1234)
    draws = 7000
    counts = np.zeros(7)
    gen = cyclic7().generators[0]
    powers = {(gen ** k).images: k for k in range(7)}
    for _ in range(draws):
        counts[powers[c.random_element(rng).images]] += 1
    expected = draws / 7
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    # 6 degrees of freedom: mean 6, sd sqrt(12)
    assert chi2 < 6 + 4 * 12 ** 0.5


def test_random_element_order7_fraction(a8_chain):
    rng = random.Random(2024)
    n = 20000
    hits = sum(element_order(a8_chain.random_element(rng)) == 7 for _ in range(n))
    frac = 5760 / 20160
    sigma = (frac * (1 - frac) / n) ** 0.5
    assert abs(hits / n - frac) < 3 * sigma


def test_generated_subgroup():
    _, order = generated_subgroup(6, [Permutation.identity(6)])
    assert order == 1
    a8 = build_chain(alternating(8))
    sevens = a8.elements_of_order(7)
    g, order = generated_subgroup(8, sevens)
    assert order == 20160
    assert len(g.generators) < 10
    l34 = build_chain(psl3_4())
    assert generated_subgroup(21, l34.elements_of_order(7))[1] == 20160


def test_derived_series():
    assert derived_series(cyclic7()) == [7, 1]
    assert is_solvable(cyclic7())
    assert derived_series(alternating(8)) == [20160]
    assert not is_solvable(alternating(8))
    s4 = GeneratedGroup(4, (Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(0, 1, 2, 3)])))
    assert derived_series(s4) == [24, 12, 4, 1]
    assert build_chain(derived_subgroup(s4)).order() == 12


def test_center():
    assert center_order(cyclic7()) == 7
    assert center_order(alternating(8)) == 1
    assert center_order(psl3_4()) == 1
    with pytest.raises(CapExceeded):
        center_order(alternating(8), cap=100)


def test_elements_of_order(a8_chain):
    assert len(a8_chain.elements_of_order(7)) == 5760
    ones = a8_chain.elements_of_order(1)
    assert len(ones) == 1 and ones[0].is_identity()


@pytest.mark.parametrize("name", CONSTRUCTED)
def test_catalog_chain_properties(analyses, name):
    an = analyses[name]
    chain = an.chain
    assert chain.verify()
    arr = chain.element_array()
    assert len(arr) == chain.order()
    assert len({r.tobytes() for r in arr}) == chain.order()
    reseeded = build_chain(an.group, seed=7)
    assert reseeded.order() == chain.order()
    rng = random.Random(3)
    probes = [chain.random_element(rng) for _ in range(50)]
    probes += [Permutation(rng.sample(range(chain.degree), chain.degree)) for _ in range(50)]
    assert [chain.contains(p) for p in probes] == [reseeded.contains(p) for p in probes]


def test_psl2_7_order7_elements():
    from ordertype.catalog import psl2
    assert len(build_chain(psl2(7)).elements_of_order(7)) == 48
