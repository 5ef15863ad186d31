import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hologroups.perm_core import (Perm, PermGroup, alternating_group, centralizer_in_sym, compose,
                                  derived_subgroup, format_perm, is_normal, normalizer_in, parse_perm,
                                  symmetric_group)

perms6 = st.permutations(list(range(6))).map(lambda xs: Perm(xs))


def test_composition_applies_left_factor_first():
    a = parse_perm("(0 1 2 3)", 4)
    b = parse_perm("(0 2)(1 3)", 4)
    # 0 -a-> 1 -b-> 3
    assert compose(a, b)(0) == 3
    assert format_perm(a * b) == "(0 3 2 1)"


def test_parse_format_round_trip():
    p = parse_perm("(1 4)(2 3 5)", 7)
    assert parse_perm(format_perm(p), 7) == p
    assert format_perm(Perm.identity(3)) == "()"


@pytest.mark.parametrize("text", ["(0 0)", "(0 1", "(a b)"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_perm(text, 4)


@given(perms6, perms6, perms6)
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Perm.identity(6)
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(perms6)
def test_order_matches_powers(a):
    k = a.order()
    assert (a ** k).is_identity()
    assert all(not (a ** j).is_identity() for j in range(1, k))


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_and_alternating_orders(n):
    assert symmetric_group(n).order() == math.factorial(n)
    assert alternating_group(n).order() == max(1, math.factorial(n) // 2)


def test_elements_enumeration_matches_order():
    g = PermGroup([parse_perm("(0 1 2)(3 4)", 6), parse_perm("(1 2 5)", 6)])
    elems = list(g.elements())
    assert len(elems) == len(set(elems)) == g.order()


@settings(max_examples=25, deadline=None)
@given(st.lists(perms6, min_size=1, max_size=3), st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_products_of_generators_are_members(gens, word):
    g = PermGroup(gens)
    p = Perm.identity(6)
    for i in word:
        p = p * gens[i % len(gens)]
    assert g.contains(p)


def test_non_member_rejected():
    a4 = alternating_group(4)
    assert not a4.contains(parse_perm("(0 1)", 4))


def _brute_centralizer(group, n):
    gens = group.generators
    return [p for p in (Perm(xs) for xs in itertools.permutations(range(n)))
            if all(p * s == s * p for s in gens)]


@pytest.mark.parametrize("gens,n", [
    (["(0 1 2 3)"], 4),
    (["(0 1)(2 3)", "(0 2)(1 3)"], 4),
    (["(0 1)"], 5),
    (["(0 1 2)(3 4 5)"], 6),
    ([], 4),
])
def test_centralizer_matches_brute_force(gens, n):
    g = PermGroup([parse_perm(t, n) for t in gens], degree=n)
    c = centralizer_in_sym(g)
    brute = _brute_centralizer(g, n)
    assert c.order() == len(brute)
    assert all(c.contains(p) for p in brute)


def test_normalizers():
    s4 = symmetric_group(4)
    c4 = PermGroup([parse_perm("(0 1 2 3)", 4)])
    v = PermGroup([parse_perm("(0 1)(2 3)", 4), parse_perm("(0 2)(1 3)", 4)])
    assert normalizer_in(s4, c4).order() == 8
    assert normalizer_in(s4, v).order() == 24
    assert is_normal(s4, v) and not is_normal(s4, c4)


def test_derived_and_regularity():
    assert derived_subgroup(symmetric_group(4)).order() == 12
    v = PermGroup([parse_perm("(0 1)(2 3)", 4), parse_perm("(0 2)(1 3)", 4)])
    assert v.is_regular()
    assert not symmetric_group(4).is_regular()


def test_order_hint_is_checked_when_chain_built():
    g = PermGroup([parse_perm("(0 1 2)", 3)], order=6)
    with pytest.raises(AssertionError):
        g.build_chain()
