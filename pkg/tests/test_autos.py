import numpy as np
import pytest
from conftest import all_bijections_fixing_zero, brute_is_hom

from hologroups import autos
from hologroups.autos import (Automorphism, automorphism_group, count_automorphisms_exhaustive,
                              inner_automorphism_group, iota, is_automorphism, is_central_automorphism,
                              is_characteristic, isomorphism_search)
from hologroups.errors import BudgetExceeded
from hologroups.group_model import CayleyGroup, Subgroup, direct_product, named_group, opposite


@pytest.mark.parametrize("spec,order", [
    ("trivial", 1), ("cyclic:4", 2), ("cyclic:12", 4), ("dihedral:8", 8), ("dihedral:16", 32),
    ("quaternion:8", 24), ("quaternion:16", 32), ("sym:4", 24), ("alt:5", 120), ("sl:2,5", 120),
    ("psl:2,7", 336),
])
def test_known_automorphism_group_orders(spec, order):
    assert automorphism_group(named_group(spec)).order == order


def test_elementary_abelian_eight():
    c2 = named_group("cyclic:2")
    g = direct_product(direct_product(c2, c2), c2)
    assert automorphism_group(g).order == 168


@pytest.mark.parametrize("spec", ["cyclic:5", "cyclic:6", "sym:3", "cyclic:4", "dihedral:6"])
def test_order_matches_every_bijection(spec):
    g = named_group(spec)
    count = sum(brute_is_hom(g, f) for f in all_bijections_fixing_zero(g.n))
    assert automorphism_group(g).order == count


@pytest.mark.parametrize("spec", ["dihedral:8", "quaternion:8", "cyclic:8", "sym:4", "alt:4", "dihedral:12",
                                  "quaternion:16"])
def test_order_matches_unpruned_search(spec):
    g = named_group(spec)
    assert automorphism_group(g).order == count_automorphisms_exhaustive(g)


def test_generators_are_automorphisms():
    g = named_group("sl:2,5")
    aut = automorphism_group(g)
    assert all(is_automorphism(g, p) for p in aut.generators)
    assert aut.contains(np.arange(g.n))
    assert not aut.contains(np.roll(np.arange(g.n), 1))


def test_automorphism_composition_left_to_right():
    g = named_group("sym:3")
    a = Automorphism(g, g.conjugation_perm(1))
    b = Automorphism(g, g.conjugation_perm(3))
    ab = a * b
    assert all(ab(x) == b(a(x)) for x in range(g.n))
    assert (a * a.inverse()).is_identity()


def test_inner_automorphisms():
    q8 = named_group("quaternion:8")
    inn = inner_automorphism_group(q8)
    assert inn.order == 4
    images = {iota(q8)(y) for y in range(q8.n)}
    assert len(images) == 4
    kernel = [y for y in range(q8.n) if iota(q8)(y).is_identity()]
    assert kernel == list(q8.center().members)
    a5 = named_group("alt:5")
    assert not inner_automorphism_group(a5).same_group(automorphism_group(a5))
    assert inner_automorphism_group(a5).order == 60


def test_iota_respects_products():
    g = named_group("sym:4")
    i = iota(g)
    for a, b in [(1, 5), (7, 13), (20, 3)]:
        assert i(a) * i(b) == i(g.product(a, b))


def test_central_automorphisms():
    q8 = named_group("quaternion:8")
    aut = automorphism_group(q8)
    inner = {p.tobytes() for p in (q8.conjugation_perm(y) for y in range(8))}
    for p in aut.elements():
        if p.tobytes() in inner:
            assert is_central_automorphism(q8, p)
    assert not all(is_central_automorphism(q8, p) for p in aut.elements())


def test_characteristic_subgroups():
    a5 = named_group("alt:5")
    d = direct_product(a5, a5)
    left = Subgroup(d, tuple(sorted(d.factors[0].embed.tolist())))
    assert not is_characteristic(d, left, automorphism_group(d))
    mixed = direct_product(a5, named_group("psl:2,7"))
    left = Subgroup(mixed, tuple(sorted(mixed.factors[0].embed.tolist())))
    assert is_characteristic(mixed, left, automorphism_group(mixed))
    sl = named_group("sl:2,5")
    assert is_characteristic(sl, sl.center(), automorphism_group(sl))


@pytest.mark.parametrize("spec,order", [("direct(alt:5,alt:5)", 28800), ("central(sl:2,5,sl:2,5)", 28800),
                                        ("direct(alt:5,psl:2,7)", 40320), ("direct(alt:5,sl:2,5)", 14400)])
def test_factorwise_orders(spec, order):
    aut = automorphism_group(named_group(spec))
    assert aut.strategy == "factorwise" and aut.order == order
    g = aut.base_group
    assert all(is_automorphism(g, p) for p in aut.generators)


def test_factorwise_refuses_non_perfect_large_group():
    g = direct_product(named_group("sym:5"), named_group("sym:5"))
    with pytest.raises(BudgetExceeded):
        automorphism_group(g)


def test_brute_and_factorwise_agree_on_overlap(monkeypatch):
    a5 = named_group("alt:5")
    g = direct_product(a5, a5)
    fw = automorphism_group(g, "factorwise")
    monkeypatch.setattr(autos, "BRUTE_MAX_ORDER", 4000)
    brute = automorphism_group(g, "brute")
    assert brute.strategy == "brute"
    assert brute.as_perm_group.order() == fw.order
    assert brute.same_group(fw)


def _relabel(g, seed):
    rng = np.random.default_rng(seed)
    sigma = np.concatenate([[0], 1 + rng.permutation(g.n - 1)])
    inv = np.empty_like(sigma)
    inv[sigma] = np.arange(g.n)
    # sigma(x) sigma(y) = sigma(x y)
    mul = sigma[g.mul[inv[:, None], inv[None, :]]]
    return CayleyGroup(mul), sigma


@pytest.mark.parametrize("spec", ["sym:3", "dihedral:8", "quaternion:8"])
def test_isomorphism_is_lex_least(spec):
    g = named_group(spec)
    h, sigma = _relabel(g, 7)
    iso = isomorphism_search(g, h)
    assert iso is not None
    assert brute_is_hom_between(g, h, iso.images)
    best = min(f.tolist() for f in all_bijections_fixing_zero(g.n) if brute_is_hom_between(g, h, f))
    assert iso.images.tolist() == best


def brute_is_hom_between(a, b, f):
    f = np.asarray(f)
    return bool(np.array_equal(f[a.mul.astype(np.int64)], b.mul[f[:, None], f[None, :]]))


def test_non_isomorphic_pairs():
    assert isomorphism_search(named_group("dihedral:16"), named_group("quaternion:16")) is None
    assert isomorphism_search(named_group("dihedral:8"), named_group("quaternion:8")) is None
    assert isomorphism_search(named_group("cyclic:4"), named_group("cyclic:5")) is None
    assert isomorphism_search(named_group("alt:5"), named_group("sl:2,5")) is None


def test_exceptional_isomorphism():
    iso = isomorphism_search(named_group("psl:2,7"), named_group("psl:3,2"))
    assert iso is not None
    back = iso.inverse()
    assert np.array_equal(back.images[iso.images], np.arange(168))


def test_opposite_group_witness():
    g = named_group("sl:2,5")
    op = opposite(g)
    iso = isomorphism_search(g, op)
    assert iso is not None and brute_is_hom_between(g, op, iso.images)
    # inversion is also a valid isomorphism onto the opposite group
    assert brute_is_hom_between(g, op, g.inv)


def test_factorwise_isomorphism_between_products():
    a5 = named_group("alt:5")
    g = direct_product(a5, named_group("psl:2,7"))
    h = direct_product(named_group("psl:2,5"), named_group("psl:3,2"))
    iso = isomorphism_search(g, h)
    assert iso is not None
    assert autos.is_isomorphism(g, h, iso.images)
    assert isomorphism_search(g, direct_product(a5, named_group("sl:2,5"))) is None
