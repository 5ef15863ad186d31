"""Regular subgroups normal in the holomorph of a perfect group.

For perfect G, Inn(G) = G/Z(G) is centerless and has a unique decomposition
A_1 x ... x A_n into Aut(G)-invariant factors admitting no further invariant
direct splitting.  The subgroups B_i = (preimage of A_i)' are perfect,
pairwise commuting and generate G.  Every subset S of {1..n} gives one normal
regular subgroup through

    gamma(h k) = iota(h^-1),   h in H = prod_{i in S} B_i,  k in K Z(G),

where K is the product of the remaining factors, and these are all of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .autos import AutGroup, automorphism_group, is_isomorphism
from .errors import NotPerfectError, VerificationError
from .group_model import (CayleyGroup, FactorEmbedding, Subgroup, closure_mask, derived_subgroup,
                          generating_set, invariant_normal_subgroups, opposite, quotient_central)
from .holomorph import (GammaMap, Holomorph, RegularSubgroupRecord, TGroup, circ_structure,
                        classify_regular, conjugator_from_iso, holomorph, t_group)
from .perm_core import PermGroup, centralizer_in_sym

PAIRING_MAX_DEGREE = 128


def _require_perfect(g: CayleyGroup) -> None:
    if not g.is_perfect():
        raise NotPerfectError("%s is not perfect; only perfect groups are handled here"
                              % (g.provenance or "group"))


def _mask_generators(g: CayleyGroup, mask: np.ndarray) -> list[int]:
    return generating_set(g, mask)


def _centralizer_mask(g: CayleyGroup, gens: Sequence[int]) -> np.ndarray:
    out = np.ones(g.n, dtype=bool)
    for t in gens:
        out &= g.mul[:, t] == g.mul[t, :]
    return out


# -- Inn(G) as an Aut(G)-group ---------------------------------------------------

@dataclass
class KRSDecomposition:
    inn: CayleyGroup
    factors: list[Subgroup]
    proj: np.ndarray = field(repr=False)
    induced: list[np.ndarray] = field(repr=False, default_factory=list)

    @property
    def n(self) -> int:
        return len(self.factors)

    def to_json(self) -> dict:
        return {"n": self.n, "inn_order": self.inn.n, "factor_orders": [a.order for a in self.factors]}


def induced_action(g: CayleyGroup, aut: AutGroup, proj: np.ndarray, m: int) -> list[np.ndarray]:
    reps = np.full(m, -1, dtype=np.int64)
    # least member of each coset
    for x in range(g.n - 1, -1, -1):
        reps[proj[x]] = x
    return [proj[b[reps]] for b in aut.generators]


def _direct_factors(inn: CayleyGroup, subs: Sequence[Subgroup]) -> list[Subgroup]:
    """Members A of ``subs`` with Inn = A x C(A)."""
    out = []
    for a in subs:
        if a.order in (1, inn.n):
            continue
        c = _centralizer_mask(inn, a.generators())
        if int(c.sum()) * a.order == inn.n and not (c & a.mask)[1:].any():
            out.append(a)
    return out


def krs_inn(g: CayleyGroup, aut: AutGroup) -> KRSDecomposition:
    """Decompose Inn(G) into indecomposable Aut(G)-invariant direct factors.

    All invariant normal subgroups are enumerated; the factors are the
    minimal nontrivial invariant direct factors, which for a centerless group
    are pairwise disjoint and multiply to the whole group.
    """
    _require_perfect(g)
    z = g.center()
    inn, proj = quotient_central(g, z)
    induced = induced_action(g, aut, proj, inn.n)
    subs = invariant_normal_subgroups(inn, induced)
    direct = _direct_factors(inn, subs)
    minimal = [a for a in direct
               if not any(b.order < a.order and set(b.members) <= set(a.members) for b in direct)]
    minimal.sort(key=lambda a: (a.order, a.members[1] if a.order > 1 else 0))
    # certify: trivial pairwise intersections and product = Inn
    total = 1
    for a in minimal:
        total *= a.order
    for a, b in itertools.combinations(minimal, 2):
        if len(set(a.members) & set(b.members)) != 1:
            raise VerificationError("invariant direct factors intersect")
    if inn.n > 1 and not minimal:
        minimal = [inn.whole()]
        total = inn.n
    if total != inn.n:
        raise VerificationError("invariant direct factors do not cover Inn(G)")
    return KRSDecomposition(inn, minimal, proj, induced)


# -- the central factors B_i -------------------------------------------------------

@dataclass
class CentralDecomposition:
    group: CayleyGroup
    factors: list[Subgroup]
    center: Subgroup
    aut_invariant: bool = True

    @property
    def n(self) -> int:
        return len(self.factors)

    def product_mask(self, indices: Sequence[int]) -> np.ndarray:
        gens: list[int] = []
        for i in indices:
            gens.extend(self.factors[i].generators())
        return closure_mask(self.group.mul, gens)

    def to_json(self) -> dict:
        import hashlib
        return {
            "n": self.n,
            "factors": [{"order": b.order,
                         "members_hash": hashlib.sha256(b.array.astype(np.int32).tobytes()).hexdigest(),
                         "perfect": True} for b in self.factors],
            "center_order": self.center.order,
        }


def central_factors(g: CayleyGroup, aut: AutGroup, krs: KRSDecomposition) -> CentralDecomposition:
    proj = krs.proj
    factors = []
    for a in krs.factors:
        pre = a.mask[proj]
        factors.append(derived_subgroup(g, _mask_generators(g, pre)))
    cd = CentralDecomposition(g, factors, g.center())
    verify_decomposition(cd, aut)
    return cd


def verify_decomposition(cd: CentralDecomposition, aut: Optional[AutGroup] = None) -> None:
    g = cd.group
    gens = [b.generators() for b in cd.factors]
    for i, j in itertools.combinations(range(cd.n), 2):
        for s in gens[i]:
            for t in gens[j]:
                if g.mul[s, t] != g.mul[t, s]:
                    raise VerificationError("factors %d and %d do not commute" % (i, j))
    if int(cd.product_mask(range(cd.n)).sum()) != g.n:
        raise VerificationError("factors do not generate the group")
    for b, bg in zip(cd.factors, gens):
        if derived_subgroup(g, bg).order != b.order:
            raise VerificationError("factor is not perfect")
        if aut is not None and cd.aut_invariant:
            mask = b.mask
            if not all(mask[p[b.array]].all() for p in aut.generators):
                raise VerificationError("factor is not Aut(G)-invariant")


def construction_decomposition(g: CayleyGroup) -> CentralDecomposition:
    """The factors recorded when g was built as a product (not necessarily Aut-invariant)."""
    if not g.factors:
        raise ValueError("group carries no product structure")
    factors = [Subgroup.from_mask(g, np.isin(np.arange(g.n), fe.embed)) for fe in g.factors]
    cd = CentralDecomposition(g, factors, g.center(), aut_invariant=False)
    verify_decomposition(cd)
    return cd


def decompose(g: CayleyGroup, aut: Optional[AutGroup] = None) -> tuple[KRSDecomposition, CentralDecomposition]:
    aut = automorphism_group(g) if aut is None else aut
    krs = krs_inn(g, aut)
    return krs, central_factors(g, aut, krs)


# -- gamma from a subset ---------------------------------------------------------

def _circ_factors(cd: CentralDecomposition, hmask: np.ndarray) -> Optional[list[FactorEmbedding]]:
    """Product structure of (G, o): factors inside H become their opposites."""
    g = cd.group
    if not g.factors:
        return None
    out = []
    for fe in g.factors:
        inside = hmask[fe.embed]
        if inside.all():
            out.append(FactorEmbedding(opposite(fe.group), fe.embed))
        elif not inside[1:].any() or _commutes_with(g, fe.embed, hmask):
            out.append(fe)
        else:
            return None
    return out


def _commutes_with(g: CayleyGroup, embed: np.ndarray, hmask: np.ndarray) -> bool:
    hg = generating_set(g, hmask)
    return bool(_centralizer_mask(g, hg)[embed].all())


def gamma_for_subset(cd: CentralDecomposition, subset: Sequence[int]) -> GammaMap:
    """gamma(h k) = iota(h^-1) with h in prod_{i in S} B_i and k in the rest times Z(G)."""
    g = cd.group
    subset = sorted(set(int(i) for i in subset))
    if any(i < 0 or i >= cd.n for i in subset):
        raise ValueError("factor index out of range")
    rest = [i for i in range(cd.n) if i not in subset]
    hmask = cd.product_mask(subset)
    zmask = cd.center.mask
    kzmask = closure_mask(g.mul, [x for i in rest for x in cd.factors[i].generators()]
                          + cd.center.generators())
    # well-definedness: H meets K Z(G) only in the centre
    if (hmask & kzmask & ~zmask).any():
        raise VerificationError("H and K Z(G) meet outside the centre")
    harr = np.flatnonzero(hmask)
    karr = np.flatnonzero(kzmask)
    c = np.full(g.n, -1, dtype=np.int64)
    prods = g.mul[harr[:, None], karr[None, :]].astype(np.int64)
    c[prods.ravel()] = np.repeat(g.inv[harr], karr.size)
    if (c < 0).any():
        raise VerificationError("H K Z(G) does not cover the group")
    return GammaMap(g, inner=c, circ_factors=_circ_factors(cd, hmask))


# -- enumeration ---------------------------------------------------------------

@dataclass
class JEnumeration:
    group: CayleyGroup
    krs: KRSDecomposition
    decomposition: CentralDecomposition
    records: list[RegularSubgroupRecord]
    subsets: list[tuple[int, ...]]
    t: Optional[TGroup] = None

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def all_in_H(self) -> bool:
        return all(r.in_H for r in self.records)

    def to_json(self) -> dict:
        recs = []
        for s, r in zip(self.subsets, self.records):
            d = r.to_json()
            d["subset"] = list(s)
            recs.append(d)
        summary = {"count": self.count, "all_in_H": self.all_in_H,
                   "krs_n": self.krs.n, "decomposition": self.decomposition.to_json()}
        if self.t is not None:
            summary["t_group_type"] = self.t.type
        return {"records": recs, "summary": summary}


def enumerate_J_perfect(g: CayleyGroup, aut: Optional[AutGroup] = None, strategy: str = "auto",
                        with_t_group: bool = True) -> JEnumeration:
    _require_perfect(g)
    aut = automorphism_group(g, strategy) if aut is None else aut
    hol = Holomorph(g, aut)
    krs = krs_inn(g, aut)
    cd = central_factors(g, aut, krs)
    subsets = [s for r in range(cd.n + 1) for s in itertools.combinations(range(cd.n), r)]
    records = []
    for s in subsets:
        gamma = gamma_for_subset(cd, s)
        rec = classify_regular(hol, circ_structure(gamma), strategy)
        records.append(rec)
    hashes = [r.circ.circ_group.table_hash() for r in records]
    if len(set(hashes)) != len(hashes):
        raise VerificationError("two subsets produced the same regular subgroup")
    order = sorted(range(len(records)), key=lambda i: records[i].sort_key())
    records = [records[i] for i in order]
    subsets = [subsets[i] for i in order]
    result = JEnumeration(g, krs, cd, records, subsets)
    if with_t_group and result.all_in_H:
        for r in records:
            r.conjugator = conjugator_from_iso(hol, r)
        result.t = t_group(g, records, hol)
    return result


# -- recovering the split from gamma ------------------------------------------------

@dataclass
class Split:
    H: Subgroup
    K: Subgroup
    preimage_order: int

    def to_json(self) -> dict:
        return {"H_order": self.H.order, "K_order": self.K.order,
                "gamma_image_preimage_order": self.preimage_order}


def split_from_gamma(g: CayleyGroup, aut: AutGroup, gamma: GammaMap) -> Split:
    """K = ker(gamma) and H = (iota^-1(gamma(G)))', with the checks they must pass."""
    _require_perfect(g)
    z = g.center()
    zmask = z.mask
    zarr = z.array
    n = g.n
    ar = np.arange(n)
    if gamma.inner is not None:
        c = gamma.inner
        kmask = zmask[c]
        pre = np.zeros(n, dtype=bool)
        pre[g.mul[np.unique(c)[:, None], zarr[None, :]].ravel()] = True
    else:
        t = gamma.table
        kmask = (t == ar).all(axis=1)
        from .holomorph import _conjugation_table
        conj = _conjugation_table(g)
        rows = {r.tobytes() for r in t}
        pre = np.array([conj[y].tobytes() in rows for y in range(n)])
    if not kmask[zarr].all():
        raise VerificationError("centre not contained in ker(gamma)")
    K = Subgroup.from_mask(g, kmask)
    if int(closure_mask(g.mul, generating_set(g, kmask)).sum()) != K.order:
        raise VerificationError("ker(gamma) is not a subgroup")
    H = derived_subgroup(g, generating_set(g, pre))
    # Inn(G) = gamma(G) x iota(K): in G, pre meets K Z(G) = K in Z and the orders multiply
    if (pre & kmask & ~zmask).any() or (int(pre.sum()) // z.order) * (K.order // z.order) != n // z.order:
        raise VerificationError("gamma(G) and iota(ker gamma) do not split Inn(G)")
    hg = H.generators()
    if not _centralizer_mask(g, hg)[K.array].all():
        raise VerificationError("[H, K] is not trivial")
    harr = H.array
    if gamma.inner is not None:
        ok = zmask[g.mul[gamma.inner[harr], harr]].all()
    else:
        from .holomorph import _conjugation_table
        ok = np.array_equal(gamma.table[harr], _conjugation_table(g)[g.inv[harr]])
    if not ok:
        raise VerificationError("gamma(h) differs from iota(h^-1) on H")
    return Split(H, K, int(pre.sum()))


# -- pairing ---------------------------------------------------------------------

def pairing_check(g: CayleyGroup, cd: CentralDecomposition, subset: Sequence[int],
                  max_degree: int = PAIRING_MAX_DEGREE) -> dict:
    """Compare N_S with N_{S^c}: inversion swaps them, and each centralizes the other."""
    subset = sorted(set(subset))
    comp = [i for i in range(cd.n) if i not in subset]
    c1 = circ_structure(gamma_for_subset(cd, subset))
    c2 = circ_structure(gamma_for_subset(cd, comp))
    inv = g.inv
    m1, m2 = c1.circ_group.mul, c2.circ_group.mul
    report: dict = {"subset": list(subset), "complement": comp}
    report["inversion_conjugates"] = all(
        c2.contains(inv[m1[inv, s].astype(np.int64)]) for s in c1.circ_group.generating_set())
    report["inversion_isomorphism"] = is_isomorphism(c1.circ_group, c2.circ_group, inv)
    if g.n <= max_degree:
        cent = centralizer_in_sym(c1.N, max_degree=max_degree)
        report["centralizer_order"] = cent.order()
        report["centralizer_is_complement"] = bool(
            cent.order() == g.n and all(cent.contains(p) for p in c2.N.generators))
    else:
        report["centralizer_is_complement"] = None
        report["notice"] = "centralizer skipped above degree %d" % max_degree
    report["ok"] = bool(report["inversion_conjugates"] and report["inversion_isomorphism"]
                        and report["centralizer_is_complement"] is not False)
    return report


def opposite_replacement(cd: CentralDecomposition, i: int) -> CayleyGroup:
    """(G, o) for gamma_for_subset(cd, {i}): factor i replaced by its opposite."""
    return circ_structure(gamma_for_subset(cd, [i])).circ_group


__all__ = [
    "KRSDecomposition", "CentralDecomposition", "JEnumeration", "Split", "krs_inn", "central_factors",
    "construction_decomposition", "decompose", "gamma_for_subset", "enumerate_J_perfect",
    "split_from_gamma", "pairing_check", "opposite_replacement", "verify_decomposition",
]
