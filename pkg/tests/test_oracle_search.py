import numpy as np
import pytest

from hologroups.errors import BudgetExceeded
from hologroups.group_model import direct_product, from_regular, named_group, rho
from hologroups.autos import isomorphism_search
from hologroups.holomorph import classify_regular, holomorph, validate_gamma_normal, validate_gamma_regular
from hologroups.oracle_search import (SearchBudget, element_set, enumerate_gammas, enumerate_J_bruteforce,
                                      enumerate_regular_in_hol, gamma_of, literal_holomorph, normalizer_equals_hol,
                                      regular_subgroups_of)
from hologroups.perm_core import PermGroup, parse_perm


def c2_power(k):
    c2 = named_group("cyclic:2")
    g = c2
    for _ in range(k - 1):
        g = direct_product(g, c2)
    return g


GROUPS = {
    "trivial": lambda: named_group("trivial"),
    "cyclic:4": lambda: named_group("cyclic:4"),
    "C2^2": lambda: c2_power(2),
    "C2^3": lambda: c2_power(3),
    "quaternion:8": lambda: named_group("quaternion:8"),
    "dihedral:8": lambda: named_group("dihedral:8"),
    "cyclic:8": lambda: named_group("cyclic:8"),
    "sym:3": lambda: named_group("sym:3"),
    "cyclic:6": lambda: named_group("cyclic:6"),
}

# Regression constants: (regular subgroups of Hol(G), those normalized by Aut(G)).
# Derived by the gamma-backtracking oracle and confirmed by the independent
# symmetric-group search before being frozen here.
PINNED = {
    "trivial": (1, 1),
    "cyclic:4": (2, 2),
    "C2^2": (4, 1),
    "C2^3": (232, 1),
    "quaternion:8": (28, 2),
    "dihedral:8": (20, 4),
    "cyclic:8": (6, 4),
    "sym:3": (8, 2),
    "cyclic:6": (2, 2),
}


@pytest.mark.parametrize("name", sorted(PINNED))
def test_pinned_counts(name):
    g = GROUPS[name]()
    regular, normal = PINNED[name]
    assert len(enumerate_regular_in_hol(g)) == regular
    assert len(enumerate_J_bruteforce(g)) == normal


@pytest.mark.parametrize("name", ["cyclic:4", "C2^2", "C2^3", "quaternion:8", "dihedral:8", "sym:3"])
def test_two_oracles_agree(name):
    g = GROUPS[name]()
    via_gamma = {element_set(N) for N in enumerate_regular_in_hol(g)}
    via_sym = set(regular_subgroups_of(literal_holomorph(g)))
    assert via_gamma == via_sym


def test_c4_regular_subgroups_are_rho_and_klein():
    g = named_group("cyclic:4")
    found = {element_set(N) for N in enumerate_regular_in_hol(g)}
    klein = PermGroup([parse_perm("(0 1)(2 3)", 4), parse_perm("(0 2)(1 3)", 4)])
    assert found == {element_set(rho(g)), element_set(klein)}


def test_c2_squared_has_three_cyclic_and_one_klein():
    g = c2_power(2)
    kinds = sorted(from_regular(N).is_abelian() and int(from_regular(N).element_orders().max())
                   for N in enumerate_regular_in_hol(g))
    assert kinds == [2, 4, 4, 4]


@pytest.mark.parametrize("name", ["C2^3", "quaternion:8", "dihedral:8", "cyclic:6"])
def test_oracle_members_satisfy_identities(name):
    g = GROUPS[name]()
    h = holomorph(g)
    for N in enumerate_J_bruteforce(g):
        gm = gamma_of(g, N)
        assert validate_gamma_regular(gm)
        assert validate_gamma_normal(gm, h.aut)
    for N in enumerate_regular_in_hol(g):
        assert validate_gamma_regular(gamma_of(g, N))


@pytest.mark.parametrize("name", ["cyclic:4", "quaternion:8", "dihedral:8", "C2^3", "sym:3"])
def test_chain_holds_for_every_oracle_subgroup(name):
    g = GROUPS[name]()
    h = holomorph(g)
    for gm in enumerate_gammas(g):
        r = classify_regular(h, gm)
        assert r.chain_holds()
        assert r.in_J == validate_gamma_normal(gm, h.aut)


def test_literal_holomorph_matches_order():
    for name in ("cyclic:4", "sym:3", "quaternion:8", "C2^3"):
        g = GROUPS[name]()
        assert literal_holomorph(g).order() == holomorph(g).order


def test_normalizer_equals_hol_examples():
    g = named_group("cyclic:4")
    assert normalizer_equals_hol(g, rho(g))
    klein = PermGroup([parse_perm("(0 1)(2 3)", 4), parse_perm("(0 2)(1 3)", 4)])
    assert not normalizer_equals_hol(g, klein)


def test_quaternion_copy_in_dihedral_holomorph():
    d16, q16 = named_group("dihedral:16"), named_group("quaternion:16")
    copies = [N for N in enumerate_J_bruteforce(d16) if isomorphism_search(q16, from_regular(N)) is not None]
    assert copies
    assert all(normalizer_equals_hol(d16, N) for N in copies)


def test_budgets():
    with pytest.raises(BudgetExceeded):
        enumerate_gammas(named_group("cyclic:30"))
    with pytest.raises(BudgetExceeded):
        enumerate_gammas(named_group("dihedral:8"), SearchBudget(max_nodes=3))
    with pytest.raises(BudgetExceeded):
        literal_holomorph(named_group("cyclic:9"))
    with pytest.raises(BudgetExceeded):
        regular_subgroups_of(literal_holomorph(c2_power(3)), max_nodes=2)
    with pytest.raises(ValueError):
        SearchBudget(max_group_order=0)


def test_gamma_tables_sorted_and_distinct():
    gammas = enumerate_gammas(named_group("dihedral:8"))
    keys = [gm.sort_key() for gm in gammas]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert np.array_equal(gammas[0].table, np.tile(np.arange(8), (8, 1)))
