"""Acceptance criteria 1-10, each timed against its limit.

Every criterion builds fresh group objects so that cached automorphism
groups from other tests cannot shorten the measured time.  One PASS/FAIL line
per criterion is printed at the end of the pytest run (and when this file is
executed directly).
"""

import sys
import time

import numpy as np
import pytest

from hologroups.autos import automorphism_group, is_automorphism, isomorphism_search
from hologroups.catalog import catalog_sample, parse_group_spec
from hologroups.group_model import (CayleyGroup, direct_product, from_regular, inversion_perm, lambda_rep,
                                    opposite, rho)
from hologroups.holomorph import (GammaMap, circ_structure, circ_table, classify_regular,
                                  commutator_identity_check, holomorph, skew_brace_check, validate_gamma_normal,
                                  validate_gamma_regular)
from hologroups.oracle_search import (element_set, enumerate_gammas, enumerate_J_bruteforce,
                                      enumerate_regular_in_hol, gamma_of, literal_holomorph, normalizer_equals_hol,
                                      regular_subgroups_of)
from hologroups.perfect_decomp import construction_decomposition, enumerate_J_perfect, krs_inn
from hologroups.perm_core import Perm, PermGroup, centralizer_in_sym, normalizer_in, parse_perm, symmetric_group

RESULTS: list[str] = []


def fresh(spec: str) -> CayleyGroup:
    g = parse_group_spec(spec)
    return CayleyGroup(g.mul.copy(), provenance=g.provenance,
                       factors=g.factors, check=g.n <= 4096)


def c2_power(k: int) -> CayleyGroup:
    c2 = fresh("cyclic:2")
    g = c2
    for _ in range(k - 1):
        g = direct_product(g, c2)
    return g


def _perm(a) -> Perm:
    return Perm(np.asarray(a).tolist(), check=False)


def same_group(a: PermGroup, b: PermGroup) -> bool:
    return a.order() == b.order() and all(a.contains(p) for p in b.generators)


def timed(number: int, title: str, limit: float, body) -> None:
    start = time.perf_counter()
    status, note = "FAIL", ""
    try:
        body()
        elapsed = time.perf_counter() - start
        if elapsed <= limit:
            status = "PASS"
        else:
            note = " over time limit"
    except Exception as exc:
        elapsed = time.perf_counter() - start
        note = " %s: %s" % (type(exc).__name__, exc)
        RESULTS.append(_line(number, title, status, elapsed, limit, note))
        raise
    RESULTS.append(_line(number, title, status, elapsed, limit, note))
    assert elapsed <= limit, "criterion %d took %.1fs, limit %gs" % (number, elapsed, limit)


def _line(number, title, status, elapsed, limit, note) -> str:
    return "%s  criterion %-2d %s %8.2fs / %gs%s" % (status, number, title.ljust(48), elapsed, limit, note)


# -- 1 ---------------------------------------------------------------------------

def test_criterion_01_regular_representation_duality():
    def body():
        specs = catalog_sample(120)
        assert len(specs) >= 30
        for spec in specs:
            g = fresh(spec)
            r, l = rho(g), lambda_rep(g)
            assert same_group(centralizer_in_sym(r, max_degree=128), l), spec
            assert same_group(centralizer_in_sym(l, max_degree=128), r), spec
            h = holomorph(g)
            hol = PermGroup([_perm(p) for p in h.generators], degree=g.n)
            assert hol.order() == automorphism_group(g).order * g.n, spec
            inv = inversion_perm(g)
            conj = PermGroup([inv * p * inv for p in r.generators], degree=g.n)
            assert same_group(conj, l), spec
    timed(1, "rho/lambda centralizer duality, |Hol|", 300, body)


# -- 2 ---------------------------------------------------------------------------

def test_criterion_02_cyclic_four_chain():
    def body():
        g = fresh("cyclic:4")
        h = holomorph(g)
        assert h.order == 8
        klein = PermGroup([parse_perm("(0 1)(2 3)", 4), parse_perm("(0 2)(1 3)", 4)])
        assert normalizer_in(symmetric_group(4), klein).order() == 24
        recs = [classify_regular(h, N) for N in enumerate_regular_in_hol(g)]
        k = [r for r in recs if element_set(r.N) == element_set(klein)]
        assert len(k) == 1 and k[0].in_J and not k[0].in_I
        J = sum(r.in_J for r in recs)
        I = sum(r.in_I for r in recs)
        H = sum(r.in_H for r in recs)
        assert (J, I, H) == (2, 1, 1)
        assert all(r.chain_holds() for r in recs)
    timed(2, "C4: H = I strictly inside J", 1, body)


# -- 3 ---------------------------------------------------------------------------

def test_criterion_03_dihedral_quaternion_holomorph():
    def body():
        d16, q16 = fresh("dihedral:16"), fresh("quaternion:16")
        h = holomorph(d16)
        copies = [N for N in enumerate_J_bruteforce(d16)
                  if isomorphism_search(q16, from_regular(N)) is not None]
        assert copies
        N = copies[0]
        # normal in Hol(D16): every generator of Hol conjugates N into itself
        for p in h.generators:
            q = _perm(p)
            assert all(N.contains(q.inverse() * s * q) for s in N.generators)
        assert automorphism_group(q16).order == automorphism_group(d16).order == 32
        assert normalizer_equals_hol(d16, N, h)
        rec = classify_regular(h, N)
        # in I(D16) but not in H(D16): the strict inclusion H < I
        assert rec.in_J and rec.in_I and not rec.in_H
        assert isomorphism_search(d16, q16) is None
    timed(3, "Q16 regular copy inside Hol(D16)", 30, body)


# -- 4 ---------------------------------------------------------------------------

def test_criterion_04_alternating_five():
    def body():
        g = fresh("alt:5")
        aut = automorphism_group(g, "brute")
        assert aut.order == 120
        e = enumerate_J_perfect(g, aut)
        assert e.count == 2 and e.all_in_H
        tables = sorted(r.circ.circ_group.table_hash() for r in e.records)
        assert tables == sorted([g.table_hash(), opposite(g).table_hash()])
        lam = lambda_rep(g)
        assert any(all(lam.contains(p) for p in r.N.generators) for r in e.records)
        assert e.t.type == "C2" and e.t.order == 2
    timed(4, "A5: J = H = {rho, lambda}, T = C2", 120, body)


# -- 5 ---------------------------------------------------------------------------

def test_criterion_05_two_simple_factors():
    def body():
        g = fresh("direct(alt:5,psl:2,7)")
        aut = automorphism_group(g, "factorwise")
        assert aut.order == 120 * 336
        e = enumerate_J_perfect(g, aut, strategy="factorwise")
        assert e.krs.n == 2
        assert e.count == 4 and e.all_in_H
        t = e.t
        assert t.order == 4 and t.is_abelian and t.type == "C2^2"
        assert np.array_equal(t.table[np.arange(4), np.arange(4)], np.zeros(4))
    timed(5, "A5 x PSL(2,7): 4 records, T = C2^2", 900, body)


# -- 6 ---------------------------------------------------------------------------

def test_criterion_06_perfect_with_center():
    def body():
        g = fresh("sl:2,5")
        aut = automorphism_group(g)
        e = enumerate_J_perfect(g, aut)
        assert e.count == 2
        for r in e.records:
            gm = r.gamma
            assert validate_gamma_normal(gm, aut)
            assert skew_brace_check(r.circ)
            assert commutator_identity_check(gm, aut)["ok"]
            assert gm.is_inner_valued()
            assert GammaMap(g, table=gm.materialize()).is_inner_valued()
        assert g.second_center().members == g.center().members
        assert g.center().order == 2
    timed(6, "SL(2,5): |J| = 2 with all identities", 300, body)


# -- 7 ---------------------------------------------------------------------------

def test_criterion_07_swap_merges_factors():
    def body():
        g = fresh("direct(alt:5,alt:5)")
        aut = automorphism_group(g)
        assert construction_decomposition(g).n == 2
        assert krs_inn(g, aut).n == 1
        e = enumerate_J_perfect(g, aut)
        assert e.count == 2 and e.all_in_H
    timed(7, "A5 x A5: swap gives n = 1, |J| = 2", 1200, body)


# -- 8 ---------------------------------------------------------------------------

def test_criterion_08_oracle_equivalence():
    def body():
        groups = [fresh("cyclic:4"), c2_power(2), c2_power(3), fresh("quaternion:8"), fresh("dihedral:8")]
        for g in groups:
            via_gamma = {element_set(N) for N in enumerate_regular_in_hol(g)}
            via_sym = set(regular_subgroups_of(literal_holomorph(g)))
            assert via_gamma == via_sym, g.provenance
            aut = automorphism_group(g)
            for N in enumerate_J_bruteforce(g):
                gm = gamma_of(g, N)
                assert validate_gamma_regular(gm) and validate_gamma_normal(gm, aut)
    timed(8, "gamma oracle matches symmetric-group search", 300, body)


# -- 9 ---------------------------------------------------------------------------

def test_criterion_09_pairing():
    def body():
        g = fresh("sl:2,5")
        e = enumerate_J_perfect(g)
        assert e.count == 2
        n1, n2 = e.records[0].N, e.records[1].N
        inv = inversion_perm(g)
        assert same_group(PermGroup([inv * p * inv for p in n1.generators], degree=g.n), n2)
        assert same_group(centralizer_in_sym(n1, max_degree=128), n2)
        assert same_group(centralizer_in_sym(n2, max_degree=128), n1)
    timed(9, "SL(2,5): inversion and centralizer pair N1, N2", 600, body)


# -- 10 --------------------------------------------------------------------------

def _is_group_table(mul) -> bool:
    try:
        CayleyGroup(mul)
    except ValueError:
        return False
    return True


def test_criterion_10_round_trips():
    def body():
        rng = np.random.default_rng(2024)
        small = [fresh("cyclic:4"), c2_power(2), fresh("sym:3"), fresh("cyclic:6"), fresh("dihedral:8"),
                 fresh("quaternion:8")]
        # exhaustive: every valid gamma of the small groups
        for g in small:
            h = holomorph(g)
            for gm in enumerate_gammas(g):
                c = circ_structure(gm)
                back = circ_structure(classify_regular(h, c.N).gamma).gamma
                assert np.array_equal(back.materialize(), gm.table)
                assert from_regular(c.N).same_table(c.circ_group)
        for spec in catalog_sample(120):
            g = fresh(spec)
            assert from_regular(rho(g)).same_table(g)
        # randomized: 10^4 gamma candidates with automorphism values
        auts = {id(g): np.array(list(automorphism_group(g).elements())) for g in small}
        agree = valid = 0
        for trial in range(10**4):
            g = small[trial % len(small)]
            a = auts[id(g)]
            if trial % 5 == 0:
                t = enumerate_gammas(g)[rng.integers(len(enumerate_gammas(g)))].table.copy()
            else:
                t = a[rng.integers(0, len(a), size=g.n)]
                t[0] = np.arange(g.n)
            gm = GammaMap(g, table=t)
            ok = validate_gamma_regular(gm)
            valid += ok
            agree += ok == _is_group_table(circ_table(gm))
            if ok:
                assert all(is_automorphism(g, t[x]) for x in range(g.n))
        assert agree == 10**4 and valid >= 2000
    timed(10, "gamma -> circ -> N -> gamma and validator", 300, body)


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    print("\n".join(RESULTS))
    sys.exit(code)
