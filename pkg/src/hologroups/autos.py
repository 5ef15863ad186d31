"""Automorphism groups, inner automorphisms and isomorphism search on Cayley tables.

Automorphisms are stored as index arrays ``a`` with ``a[x]`` the image of
element ``x``.  Composition follows the left-to-right convention of the rest
of the package: ``x^(ab) = (x^a)^b``, i.e. ``(a*b)[x] = b[a[x]]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, OutOfScope, VerificationError
from .group_model import CayleyGroup, Subgroup, closure_mask, invariant_normal_subgroups, quotient_central
from .perm_core import Perm, PermGroup

BRUTE_MAX_ORDER = 512
STRATEGIES = ("auto", "brute", "factorwise")


class FactorwiseUnavailable(OutOfScope):
    """The factorwise strategy cannot certify its preconditions for this group."""


# -- single maps -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Automorphism:
    group: CayleyGroup
    perm: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.perm, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "perm", arr)

    def __call__(self, x: int) -> int:
        return int(self.perm[x])

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(self.group, other.perm[self.perm])

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and np.array_equal(self.perm, other.perm)

    def __hash__(self) -> int:
        return hash(self.perm.tobytes())

    def inverse(self) -> "Automorphism":
        return Automorphism(self.group, invert(self.perm))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(self.perm.size)))

    def as_perm(self) -> Perm:
        return Perm(self.perm.tolist(), check=False)

    def to_json(self) -> dict:
        return {"group_provenance": self.group.provenance, "perm": self.perm.tolist()}


def invert(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(a.size, dtype=a.dtype)
    return out


def is_homomorphism(a: CayleyGroup, b: CayleyGroup, f: np.ndarray, gens: Optional[Sequence[int]] = None) -> bool:
    """Check ``f(x s) = f(x) f(s)`` for all ``x`` and all generators ``s`` of ``a``.

    Generators suffice: writing ``y`` as a word in them, the identity for
    ``x y`` follows by induction on word length.
    """
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (a.n,) or f[0] != 0:
        return False
    gens = a.basic_generators() if gens is None else gens
    amul = a.mul
    bmul = b.mul
    for s in gens:
        lhs = f[amul[:, s]]
        rhs = bmul[f, f[s]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_bijection(f: np.ndarray, n: int) -> bool:
    f = np.asarray(f)
    return f.shape == (n,) and np.array_equal(np.sort(f), np.arange(n))


def is_automorphism(g: CayleyGroup, f: np.ndarray) -> bool:
    return is_bijection(f, g.n) and is_homomorphism(g, g, f)


def is_isomorphism(a: CayleyGroup, b: CayleyGroup, f: np.ndarray) -> bool:
    return a.n == b.n and is_bijection(f, a.n) and is_homomorphism(a, b, f)


# -- partial-map extension -----------------------------------------------------

def _extend(amul: np.ndarray, bmul: np.ndarray, gens: np.ndarray, imgs: np.ndarray,
            f: np.ndarray) -> Optional[np.ndarray]:
    """Extend the partial homomorphism ``f`` (-1 = undefined) by ``gens -> imgs``.

    Returns None on a well-definedness or injectivity violation.  The result
    is defined exactly on the subgroup generated by ``gens``.
    """
    f = f.copy()
    for s, t in zip(gens.tolist(), imgs.tolist()):
        if f[s] >= 0 and f[s] != t:
            return None
        f[s] = t
    frontier = np.flatnonzero(f >= 0)
    while frontier.size:
        ys = amul[frontier[:, None], gens[None, :]].ravel().astype(np.int64)
        im = bmul[f[frontier][:, None], imgs[None, :]].ravel().astype(np.int64)
        known = f[ys] >= 0
        if np.any(f[ys[known]] != im[known]):
            return None
        ys, im = ys[~known], im[~known]
        if ys.size == 0:
            break
        order = np.argsort(ys, kind="stable")
        ys, im = ys[order], im[order]
        first = np.ones(ys.size, dtype=bool)
        first[1:] = ys[1:] != ys[:-1]
        lead = np.maximum.accumulate(np.where(first, np.arange(ys.size), 0))
        if np.any(im != im[lead]):
            return None
        f[ys[first]] = im[first]
        frontier = ys[first]
    vals = f[f >= 0]
    if np.unique(vals).size != vals.size:
        return None
    return f


def _matching(a: CayleyGroup, b: CayleyGroup) -> dict[int, np.ndarray]:
    """Candidate images per fingerprint (element order, class size)."""
    fb = b.fingerprints()
    return {int(v): np.flatnonzero(fb == v) for v in np.unique(a.fingerprints())}


# -- brute strategy -----------------------------------------------------------

def _orbit_np(x: int, perms: Sequence[np.ndarray]) -> set[int]:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for p in perms:
            z = int(p[y])
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return seen


def _brute_generators(g: CayleyGroup, max_nodes: Optional[int] = None) -> tuple[list[np.ndarray], list[int]]:
    """Generators of Aut(g) from a backtrack over generator images.

    The search follows the identity path; at depth ``d`` every candidate image
    already in the orbit of ``gens[d]`` under automorphisms found so far that
    fix ``gens[:d]`` is skipped, since a completion there would be redundant.
    """
    n = g.n
    gens = g.generating_set()
    if n == 1 or not gens:
        return [], []
    fp = g.fingerprints()
    cands = [np.flatnonzero(fp == fp[s]) for s in gens]
    garr = np.asarray(gens, dtype=np.int64)
    mul = g.mul
    found: list[tuple[int, np.ndarray]] = []
    nodes = [0]

    def tick():
        nodes[0] += 1
        if max_nodes is not None and nodes[0] > max_nodes:
            raise BudgetExceeded("automorphism search exceeded %d nodes" % max_nodes)

    def complete(depth: int, f: np.ndarray, imgs: list[int]) -> Optional[np.ndarray]:
        if depth == len(gens):
            return f if (f >= 0).all() else None
        for y in cands[depth].tolist():
            tick()
            f2 = _extend(mul, mul, garr[:depth + 1], np.asarray(imgs + [y], dtype=np.int64), f)
            if f2 is None:
                continue
            res = complete(depth + 1, f2, imgs + [y])
            if res is not None:
                return res
        return None

    # identity path prefix maps: f_d is the identity on <gens[:d]>
    prefix = []
    f = np.full(n, -1, dtype=np.int64)
    f[0] = 0
    for d in range(len(gens)):
        prefix.append(f)
        f = _extend(mul, mul, garr[:d + 1], garr[:d + 1], f)
    for d in reversed(range(len(gens))):
        stab = [p for depth, p in found if depth >= d]
        orbit = _orbit_np(gens[d], stab)
        for y in cands[d].tolist():
            if y in orbit:
                continue
            tick()
            imgs = gens[:d] + [y]
            f2 = _extend(mul, mul, garr[:d + 1], np.asarray(imgs, dtype=np.int64), prefix[d])
            if f2 is None:
                continue
            res = complete(d + 1, f2, imgs)
            if res is not None:
                found.append((d, res))
                orbit = _orbit_np(gens[d], [p for depth, p in found if depth >= d])
    return [p for _, p in found], list(gens)


def count_automorphisms_exhaustive(g: CayleyGroup) -> int:
    """Count automorphisms by trying every image tuple for the generators.

    No fingerprint or orbit pruning; used as an independent check.
    """
    gens = g.generating_set()
    if not gens:
        return 1
    garr = np.asarray(gens, dtype=np.int64)
    count = 0
    base = np.full(g.n, -1, dtype=np.int64)
    base[0] = 0

    def rec(depth: int, f: np.ndarray, imgs: list[int]) -> None:
        nonlocal count
        if depth == len(gens):
            count += int((f >= 0).all())
            return
        for y in range(1, g.n):
            f2 = _extend(g.mul, g.mul, garr[:depth + 1], np.asarray(imgs + [y], dtype=np.int64), f)
            if f2 is not None:
                rec(depth + 1, f2, imgs + [y])

    rec(0, base, [])
    return count


# -- the group ---------------------------------------------------------------

class AutGroup:
    """Aut(G) as a permutation group on the element indices of G."""

    def __init__(self, base_group: CayleyGroup, generators: Sequence[np.ndarray], strategy: str,
                 order: Optional[int] = None, base_points: Sequence[int] = ()):
        self.base_group = base_group
        self.generators = [np.asarray(p, dtype=np.int64) for p in generators]
        for p in self.generators:
            p.setflags(write=False)
        self.strategy = strategy
        self._order = order
        self._base_points = tuple(base_points) or tuple(base_group.generating_set())
        self._perm_group: Optional[PermGroup] = None

    def __repr__(self) -> str:
        return "AutGroup(%s, order=%d, strategy=%s)" % (self.base_group.provenance, self.order, self.strategy)

    @property
    def as_perm_group(self) -> PermGroup:
        if self._perm_group is None:
            gens = [Perm(p.tolist(), check=False) for p in self.generators]
            self._perm_group = PermGroup(gens, degree=self.base_group.n, order=self._order,
                                         base=self._base_points)
        return self._perm_group

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = self.as_perm_group.order()
        return self._order

    def automorphisms(self) -> list[Automorphism]:
        return [Automorphism(self.base_group, p) for p in self.generators]

    def contains(self, perm) -> bool:
        arr = np.asarray(perm.perm if isinstance(perm, Automorphism) else perm, dtype=np.int64)
        return is_automorphism(self.base_group, arr)

    def elements(self) -> Iterator[np.ndarray]:
        for p in self.as_perm_group.elements():
            yield np.asarray(p.images, dtype=np.int64)

    def same_group(self, other: "AutGroup") -> bool:
        """Equal as permutation groups: mutual membership of generators."""
        if self.base_group.n != other.base_group.n or self.order != other.order:
            return False
        return all(other.contains(p) for p in self.generators) and all(self.contains(p) for p in other.generators)

    def to_json(self) -> dict:
        return {"order": self.order, "generators": [p.tolist() for p in self.generators],
                "strategy": self.strategy}


def automorphism_group(g: CayleyGroup, strategy: str = "auto", max_nodes: Optional[int] = None) -> AutGroup:
    if strategy not in STRATEGIES:
        raise ValueError("unknown strategy %r" % strategy)
    key = ("aut", strategy if strategy != "auto" else "auto")
    cached = g._cache.get(key)
    if cached is not None:
        return cached
    if strategy == "brute" or (strategy == "auto" and g.n <= BRUTE_MAX_ORDER):
        if g.n > BRUTE_MAX_ORDER:
            raise BudgetExceeded("brute automorphism search limited to order %d" % BRUTE_MAX_ORDER)
        gens, base = _brute_generators(g, max_nodes)
        result = AutGroup(g, gens, "brute", base_points=base)
    else:
        try:
            result = _factorwise(g)
        except FactorwiseUnavailable as exc:
            if strategy == "factorwise":
                raise
            raise BudgetExceeded("order %d exceeds brute bound and %s" % (g.n, exc)) from exc
    g._cache[key] = result
    return result


# -- factorwise strategy ------------------------------------------------------

def _coordinates(g: CayleyGroup, embeds: Sequence[np.ndarray]) -> np.ndarray:
    """For each element of g, one tuple of factor indices whose product it is."""
    mul = g.mul
    reached = np.full(g.n, -1, dtype=np.int64)
    reached[embeds[0]] = np.arange(embeds[0].size)
    coords = np.full((g.n, len(embeds)), -1, dtype=np.int64)
    coords[embeds[0], 0] = np.arange(embeds[0].size)
    current = np.asarray(embeds[0], dtype=np.int64)
    for k in range(1, len(embeds)):
        e = np.asarray(embeds[k], dtype=np.int64)
        prods = mul[current[:, None], e[None, :]].astype(np.int64)
        flat = prods.ravel()
        _, first = np.unique(flat, return_index=True)
        new = np.full((g.n, len(embeds)), -1, dtype=np.int64)
        src_rows = current[first // e.size]
        new[flat[first]] = coords[src_rows]
        new[flat[first], k] = first % e.size
        coords = new
        current = flat[first]
    if (coords[:, 0] < 0).any():
        raise FactorwiseUnavailable("factors do not generate the group")
    return coords


def _assemble(g: CayleyGroup, coords: np.ndarray, maps: Sequence[np.ndarray]) -> np.ndarray:
    """x = prod e_i(b_i)  ->  prod maps_i(b_i), evaluated for all x."""
    out = maps[0][coords[:, 0]]
    for k in range(1, len(maps)):
        out = g.mul[out, maps[k][coords[:, k]]].astype(np.int64)
    return out


def _directly_indecomposable_mod_center(b: CayleyGroup) -> bool:
    inn, _ = quotient_central(b, b.center())
    if inn.n == 1:
        return True
    n = inn.n
    for s in invariant_normal_subgroups(inn):
        if s.order in (1, n):
            continue
        mask = s.mask
        gens = s.generators()
        cmask = np.ones(n, dtype=bool)
        for t in gens:
            cmask &= inn.mul[:, t] == inn.mul[t, :]
        if int(cmask.sum()) * s.order == n and not (cmask & mask)[1:].any():
            return False
    return True


@dataclass
class _FactorData:
    group: CayleyGroup
    embed: np.ndarray
    auts: list[np.ndarray]
    central: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))


def _factor_data(g: CayleyGroup, factors) -> list[_FactorData]:
    if not factors or len(factors) < 2:
        raise FactorwiseUnavailable("no product structure recorded")
    zmask = g.center().mask
    data = []
    for fe in factors:
        b = fe.group
        if b.n > BRUTE_MAX_ORDER:
            raise FactorwiseUnavailable("factor of order %d too large" % b.n)
        if not b.is_perfect():
            raise FactorwiseUnavailable("factor %s is not perfect" % b.provenance)
        if not _directly_indecomposable_mod_center(b):
            raise FactorwiseUnavailable("factor %s decomposes further" % b.provenance)
        ab = automorphism_group(b, "brute")
        auts = list(ab.elements())
        embed = np.asarray(fe.embed, dtype=np.int64)
        data.append(_FactorData(b, embed, auts, np.flatnonzero(zmask[embed])))
    for i, j in itertools.combinations(range(len(data)), 2):
        ei, ej = data[i].embed, data[j].embed
        if not np.array_equal(g.mul[ei[:, None], ej[None, :]], g.mul[ej[None, :], ei[:, None]]):
            raise FactorwiseUnavailable("factors do not commute")
    return data


def _restriction_classes(fd: _FactorData, target: _FactorData, iso: np.ndarray) -> dict[bytes, list[np.ndarray]]:
    """Maps iso∘sigma (sigma in Aut(factor)) grouped by their action on central points."""
    classes: dict[bytes, list[np.ndarray]] = {}
    for sigma in fd.auts:
        m = iso[sigma]
        key = target.embed[m[fd.central]].tobytes()
        classes.setdefault(key, []).append(m)
    return classes


def _factor_isomorphism(a: CayleyGroup, b: CayleyGroup) -> Optional[np.ndarray]:
    if a is b:
        return np.arange(a.n, dtype=np.int64)
    return _brute_isomorphism(a, b)


def _realizations(g: CayleyGroup, data: list[_FactorData], coords: np.ndarray, perm: Sequence[int],
                  isos: dict[tuple[int, int], np.ndarray]):
    """Class structure and valid class combinations for a factor permutation.

    Factor ``i`` is sent onto factor ``perm[i]``.  Returns the per-factor
    class dictionaries and the list of valid key combinations.
    """
    k = len(data)
    classes = [_restriction_classes(data[i], data[perm[i]], isos[i, perm[i]]) for i in range(k)]
    valid = []
    for combo in itertools.product(*[sorted(c) for c in classes]):
        maps = [data[perm[i]].embed[classes[i][combo[i]][0]] for i in range(k)]
        cand = _assemble(g, coords, maps)
        if is_automorphism(g, cand):
            valid.append((combo, cand))
    return classes, valid


def _closure_of_maps(perms: Sequence[np.ndarray]) -> set[bytes]:
    """All products of the given index permutations, as a set of byte keys."""
    start = np.arange(perms[0].size, dtype=np.int64)
    seen = {start.tobytes()}
    stack = [start]
    while stack:
        x = stack.pop()
        for p in perms:
            y = p[x]
            key = y.tobytes()
            if key not in seen:
                seen.add(key)
                stack.append(y)
    return seen


def _factorwise(g: CayleyGroup) -> AutGroup:
    """Aut(G) for a central product of perfect, centrally indecomposable factors.

    Every automorphism permutes such factors, so Aut(G) is the extension of
    the factor-preserving part (a fiber product of factor automorphism groups
    over their action on the amalgamated centre) by the realizable factor
    permutations.  Every assembled map is verified to be an automorphism.
    """
    data = _factor_data(g, g.factors)
    k = len(data)
    coords = _coordinates(g, [d.embed for d in data])
    isos: dict[tuple[int, int], np.ndarray] = {}
    for i, j in itertools.product(range(k), repeat=2):
        if data[i].group.n == data[j].group.n:
            iso = _factor_isomorphism(data[i].group, data[j].group)
            if iso is not None:
                isos[i, j] = iso
    identity = tuple(range(k))
    classes, valid = _realizations(g, data, coords, identity, isos)
    fiber_order = sum(int(np.prod([len(classes[i][combo[i]]) for i in range(k)])) for combo, _ in valid)
    gens: list[np.ndarray] = []
    # kernel part: automorphisms of one factor acting trivially on central points
    for i in range(k):
        key = data[i].embed[data[i].central].tobytes()
        reached = {np.arange(data[i].group.n, dtype=np.int64).tobytes()}
        kernel: list[np.ndarray] = []
        for sigma in classes[i].get(key, []):
            if sigma.tobytes() in reached:
                continue
            kernel.append(sigma)
            reached = _closure_of_maps(kernel)
            maps = [d.embed for d in data]
            maps[i] = data[i].embed[sigma]
            gens.append(_assemble(g, coords, maps))
    # one representative per valid central action, and one per realizable permutation
    gens.extend(cand for _, cand in valid)
    realized = 0
    for perm in itertools.permutations(range(k)):
        if any((i, perm[i]) not in isos for i in range(k)):
            continue
        _, pvalid = _realizations(g, data, coords, perm, isos)
        if pvalid:
            realized += 1
            gens.append(pvalid[0][1])
    gens = [p for p in gens if not np.array_equal(p, np.arange(g.n))]
    for p in gens:
        if not is_automorphism(g, p):
            raise VerificationError("assembled map is not an automorphism")
    # reduce to a short generating list, deduplicated
    uniq = {p.tobytes(): p for p in gens}
    gens = [uniq[key] for key in sorted(uniq)]
    return AutGroup(g, gens, "factorwise", order=fiber_order * realized)


# -- inner automorphisms and tests ---------------------------------------------

def iota(g: CayleyGroup):
    """The map y -> (x -> y^-1 x y)."""

    def inner(y: int) -> Automorphism:
        return Automorphism(g, g.conjugation_perm(y))

    return inner


def inner_automorphism_group(g: CayleyGroup) -> AutGroup:
    gens = [g.conjugation_perm(y) for y in g.basic_generators()]
    gens = [p for p in gens if not np.array_equal(p, np.arange(g.n))]
    return AutGroup(g, gens, "inner", order=g.n // g.center().order)


def is_central_automorphism(g: CayleyGroup, a) -> bool:
    """True iff x^-1 x^a lies in Z(g) for every x."""
    perm = np.asarray(a.perm if isinstance(a, Automorphism) else a, dtype=np.int64)
    zmask = g.center().mask
    return bool(zmask[g.mul[g.inv, perm]].all())


def is_characteristic(g: CayleyGroup, s: Subgroup, aut: AutGroup) -> bool:
    if s.parent is not g:
        raise ValueError("subgroup belongs to another group")
    if not s.is_closed():
        raise ValueError("not a subgroup")
    mask = s.mask
    members = s.array
    return all(bool(mask[p[members]].all()) for p in aut.generators)


# -- isomorphisms --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Isomorphism:
    source: CayleyGroup
    target: CayleyGroup
    images: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def inverse(self) -> "Isomorphism":
        return Isomorphism(self.target, self.source, invert(self.images))

    def to_json(self) -> dict:
        return {"source": self.source.provenance, "target": self.target.provenance,
                "images": self.images.tolist()}


def invariants(g: CayleyGroup) -> tuple:
    orders, counts = np.unique(g.element_orders(), return_counts=True)
    return (g.n, g.is_abelian(), tuple(zip(orders.tolist(), counts.tolist())), g.center().order,
            g.derived_series_orders())


def _brute_isomorphism(a: CayleyGroup, b: CayleyGroup) -> Optional[np.ndarray]:
    """Lexicographically least isomorphism a -> b, as an image array.

    Images are chosen for the least element not yet determined, in increasing
    order; everything the choice forces is filled in before moving on, so the
    first complete map reached is the least one.
    """
    n = a.n
    cand = _matching(a, b)
    fa = a.fingerprints()

    def rec(f: np.ndarray, gens: list[int], imgs: list[int]) -> Optional[np.ndarray]:
        free = np.flatnonzero(f < 0)
        if free.size == 0:
            return f
        x = int(free[0])
        used = np.zeros(n, dtype=bool)
        used[f[f >= 0]] = True
        for y in cand[int(fa[x])].tolist():
            if used[y]:
                continue
            f2 = _extend(a.mul, b.mul, np.asarray(gens + [x], dtype=np.int64),
                         np.asarray(imgs + [y], dtype=np.int64), f)
            if f2 is None:
                continue
            res = rec(f2, gens + [x], imgs + [y])
            if res is not None:
                return res
        return None

    f0 = np.full(n, -1, dtype=np.int64)
    f0[0] = 0
    return rec(f0, [], [])


def _factorwise_isomorphism(a: CayleyGroup, b: CayleyGroup) -> Optional[np.ndarray]:
    da = _factor_data(a, a.factors)
    db = _factor_data(b, b.factors)
    if len(da) != len(db):
        return None
    k = len(da)
    coords = _coordinates(a, [d.embed for d in da])
    isos = {}
    for i, j in itertools.product(range(k), repeat=2):
        if da[i].group.n == db[j].group.n:
            iso = _factor_isomorphism(da[i].group, db[j].group)
            if iso is not None:
                isos[i, j] = iso
    for perm in itertools.permutations(range(k)):
        if any((i, perm[i]) not in isos for i in range(k)):
            continue
        classes = [_restriction_classes(da[i], db[perm[i]], isos[i, perm[i]]) for i in range(k)]
        for combo in itertools.product(*[sorted(c) for c in classes]):
            maps = [db[perm[i]].embed[classes[i][combo[i]][0]] for i in range(k)]
            out = maps[0][coords[:, 0]]
            for m in range(1, k):
                out = b.mul[out, maps[m][coords[:, m]]].astype(np.int64)
            if is_isomorphism(a, b, out):
                return out
    return None


def isomorphism_search(a: CayleyGroup, b: CayleyGroup, strategy: str = "auto") -> Optional[Isomorphism]:
    """An explicit isomorphism a -> b, or None when none exists."""
    if a.n != b.n:
        return None
    if a is b or a.same_table(b):
        return Isomorphism(a, b, np.arange(a.n, dtype=np.int64))
    if invariants(a) != invariants(b):
        return None
    if strategy in ("auto", "brute") and a.n <= BRUTE_MAX_ORDER:
        f = _brute_isomorphism(a, b)
    elif strategy in ("auto", "factorwise"):
        try:
            f = _factorwise_isomorphism(a, b)
        except FactorwiseUnavailable as exc:
            raise BudgetExceeded("isomorphism search beyond bounds: %s" % exc) from exc
    else:
        raise BudgetExceeded("brute isomorphism search limited to order %d" % BRUTE_MAX_ORDER)
    if f is None:
        return None
    if not is_isomorphism(a, b, f):
        raise VerificationError("isomorphism search produced an invalid map")
    return Isomorphism(a, b, f)


__all__ = [
    "Automorphism", "AutGroup", "Isomorphism", "FactorwiseUnavailable", "automorphism_group",
    "count_automorphisms_exhaustive", "iota", "inner_automorphism_group", "is_central_automorphism",
    "is_characteristic", "isomorphism_search", "is_automorphism", "is_isomorphism", "is_homomorphism",
    "invariants", "invert",
]
