"""Finite groups as multiplication tables.

Elements are indices ``0..n-1`` with ``0`` the identity. ``mul[x, y]`` is the
index of ``x*y``. All constructions here produce tables in a deterministic
canonical order (identity first, then construction order).
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BudgetExceeded, SpecParseError
from .perm_core import Perm, PermGroup

DEFAULT_MAX_ORDER = 10**6
ASSOC_EXHAUSTIVE_MAX = 256
ASSOC_SAMPLES = 10**5


def max_order() -> int:
    env = os.environ.get("HOLO_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


def table_dtype(n: int):
    # int32 up to 4096 elements, uint16 above to halve table memory
    if n <= 4096:
        return np.int32
    if n <= 65535:
        return np.uint16
    return np.int32


def _ro(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FactorEmbedding:
    """A factor group and the index map of its elements into the parent."""

    group: "CayleyGroup"
    embed: np.ndarray


def _rows_are_perms(mul: np.ndarray, chunk: int = 1024) -> bool:
    n = mul.shape[1]
    for lo in range(0, mul.shape[0], chunk):
        block = np.asarray(mul[lo:lo + chunk])
        seen = np.zeros(block.shape, dtype=bool)
        seen[np.arange(block.shape[0])[:, None], block] = True
        if not seen.all():
            return False
    return True


class CayleyGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, mul, labels: Optional[Sequence[str]] = None, provenance: str = "",
                 factors: Optional[Sequence[FactorEmbedding]] = None, check: bool = True):
        mul = np.asarray(mul)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise ValueError("multiplication table must be a non-empty square matrix")
        n = mul.shape[0]
        self.mul = _ro(np.ascontiguousarray(mul, dtype=table_dtype(n)))
        self.n = n
        self.labels = list(labels) if labels is not None else None
        self.provenance = provenance
        self.factors = tuple(factors) if factors else None
        if check:
            self._check()
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        self.inv = _ro(inv)
        self._cache: dict = {}

    def _check(self) -> None:
        n, mul = self.n, self.mul
        ar = np.arange(n)
        if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
            raise ValueError("index 0 is not the identity")
        if not (_rows_are_perms(mul) and _rows_are_perms(mul.T)):
            raise ValueError("table is not a Latin square")
        if n <= ASSOC_EXHAUSTIVE_MAX:
            for x in range(n):
                # (x y) z == x (y z) for all y, z
                if not np.array_equal(mul[mul[x]], mul[x][mul]):
                    raise ValueError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            x, y, z = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
            if not np.array_equal(mul[mul[x, y], z], mul[x, mul[y, z]]):
                raise ValueError("table is not associative")

    def __len__(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return "CayleyGroup(order=%d, provenance=%r)" % (self.n, self.provenance)

    def product(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def table_hash(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.mul, dtype=np.int32).tobytes()).hexdigest()

    def same_table(self, other: "CayleyGroup") -> bool:
        return self.n == other.n and np.array_equal(self.mul, other.mul)

    # -- element-level data -------------------------------------------------

    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.n
            ar = np.arange(n)
            orders = np.zeros(n, dtype=np.int64)
            cur = ar.copy()
            k = 1
            while not orders.all():
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
                cur = self.mul[cur, ar]
                k += 1
            self._cache["orders"] = _ro(orders)
        return self._cache["orders"]

    def right_perm(self, g: int) -> np.ndarray:
        """x -> x g."""
        return self.mul[:, g]

    def left_perm(self, g: int) -> np.ndarray:
        """x -> g x."""
        return self.mul[g, :]

    def conjugation_perm(self, y: int) -> np.ndarray:
        """x -> y^-1 x y, the inner automorphism iota(y)."""
        return self.mul[self.mul[self.inv[y], :], y]

    def commutator(self, x, y):
        """[x, y] = x^-1 y^-1 x y, vectorized over array arguments."""
        mul, inv = self.mul, self.inv
        return mul[mul[mul[inv[x], inv[y]], x], y]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def conjugacy_class_ids(self) -> np.ndarray:
        if "classes" not in self._cache:
            perms = [self.conjugation_perm(g) for g in self.basic_generators()]
            self._cache["classes"] = _ro(orbit_labels(self.n, perms))
        return self._cache["classes"]

    def class_sizes(self) -> np.ndarray:
        """Size of the conjugacy class of each element."""
        ids = self.conjugacy_class_ids()
        counts = np.bincount(ids)
        return counts[ids]

    def fingerprints(self) -> np.ndarray:
        """Per-element isomorphism-invariant codes: (order, class size)."""
        if "fp" not in self._cache:
            fp = self.element_orders() * (self.n + 1) + self.class_sizes()
            self._cache["fp"] = _ro(fp)
        return self._cache["fp"]

    # -- subgroups ---------------------------------------------------------

    def closure(self, gens: Sequence[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by ``gens``."""
        return closure_mask(self.mul, gens)

    def subgroup(self, gens: Sequence[int]) -> "Subgroup":
        return Subgroup.from_mask(self, self.closure(gens))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.n)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def generating_set(self) -> list[int]:
        """A small generating set, chosen deterministically."""
        if "gens" not in self._cache:
            self._cache["gens"] = generating_set(self, np.ones(self.n, dtype=bool))
        return self._cache["gens"]

    def basic_generators(self) -> list[int]:
        if "basic_gens" not in self._cache:
            self._cache["basic_gens"] = _order_greedy_gens(self, np.ones(self.n, dtype=bool))
        return self._cache["basic_gens"]

    def center(self) -> "Subgroup":
        if "center" not in self._cache:
            mask = np.ones(self.n, dtype=bool)
            for g in self.basic_generators():
                mask &= self.mul[:, g] == self.mul[g, :]
            self._cache["center"] = Subgroup.from_mask(self, mask)
        return self._cache["center"]

    def second_center(self) -> "Subgroup":
        z = self.center().mask
        mask = np.ones(self.n, dtype=bool)
        ar = np.arange(self.n)
        for g in self.basic_generators():
            mask &= z[self.commutator(ar, g)]
        return Subgroup.from_mask(self, mask)

    def derived(self) -> "Subgroup":
        if "derived" not in self._cache:
            self._cache["derived"] = derived_subgroup(self, self.generating_set())
        return self._cache["derived"]

    def is_perfect(self) -> bool:
        return self.derived().order == self.n

    def derived_series_orders(self) -> tuple[int, ...]:
        orders = [self.n]
        gens = self.generating_set()
        while True:
            d = derived_subgroup(self, gens)
            if d.order == orders[-1]:
                break
            orders.append(d.order)
            gens = d.generators()
        return tuple(orders)

    def to_json(self) -> dict:
        out = {"order": self.n, "mul": self.mul.astype(int).tolist(), "labels": self.labels}
        if self.provenance:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CayleyGroup":
        return cls(np.array(data["mul"]), labels=data.get("labels"),
                   provenance=data.get("provenance", ""))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: CayleyGroup
    members: tuple[int, ...]

    @classmethod
    def from_mask(cls, parent: CayleyGroup, mask: np.ndarray) -> "Subgroup":
        return cls(parent, tuple(int(x) for x in np.flatnonzero(mask)))

    def __post_init__(self):
        if not self.members or self.members[0] != 0:
            raise ValueError("a subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.n, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return "Subgroup(order=%d of %d)" % (self.order, self.parent.n)

    def generators(self) -> list[int]:
        return generating_set(self.parent, self.mask)

    def is_closed(self) -> bool:
        arr = self.array
        return bool(self.mask[self.parent.mul[np.ix_(arr, arr)]].all())

    def is_normal(self) -> bool:
        mask = self.mask
        arr = self.array
        return all(mask[self.parent.conjugation_perm(g)[arr]].all()
                   for g in self.parent.generating_set())

    def is_central(self) -> bool:
        return bool(self.parent.center().mask[self.array].all())

    def table(self) -> CayleyGroup:
        """The subgroup as a Cayley group, members re-indexed in increasing order."""
        arr = self.array
        pos = np.full(self.parent.n, -1, dtype=np.int64)
        pos[arr] = np.arange(len(arr))
        sub = pos[self.parent.mul[np.ix_(arr, arr)]]
        return CayleyGroup(sub, provenance="subgroup", check=False)


def closure_mask(mul: np.ndarray, gens: Sequence[int], start: Optional[np.ndarray] = None) -> np.ndarray:
    n = mul.shape[0]
    mask = np.zeros(n, dtype=bool) if start is None else start.copy()
    mask[0] = True
    gens = np.unique(np.asarray([int(g) for g in gens if g != 0], dtype=np.int64))
    frontier = np.flatnonzero(mask)
    if gens.size == 0:
        return mask
    while frontier.size:
        nxt = np.unique(mul[frontier[:, None], gens[None, :]].ravel().astype(np.int64))
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return mask


def generating_set(g: CayleyGroup, target: np.ndarray) -> list[int]:
    """Greedy generating set for the subgroup with membership mask ``target``.

    Small groups pick, at each step, the element enlarging the generated
    subgroup most (ties: rarest fingerprint, then lowest index), which keeps
    backtracking searches over generator images short.
    """
    members = np.flatnonzero(target)
    if members.size <= 1:
        return []
    gens: list[int] = []
    current = np.zeros(g.n, dtype=bool)
    current[0] = True
    if g.n <= 1024:
        fp = g.fingerprints()
        fp_count = {}
        for v in fp[members]:
            fp_count[int(v)] = fp_count.get(int(v), 0) + 1
        while current.sum() < members.size:
            best = None
            for x in members:
                if current[x]:
                    continue
                mask = closure_mask(g.mul, gens + [int(x)])
                key = (int(mask.sum()), -fp_count[int(fp[x])], -int(x))
                if best is None or key > best[0]:
                    best = (key, int(x), mask)
            gens.append(best[1])
            current = best[2]
        return gens
    return _order_greedy_gens(g, target)


def _order_greedy_gens(g: CayleyGroup, target: np.ndarray) -> list[int]:
    members = np.flatnonzero(target)
    gens: list[int] = []
    current = np.zeros(g.n, dtype=bool)
    current[0] = True
    orders = g.element_orders()
    for x in sorted(members.tolist(), key=lambda e: (-int(orders[e]), e)):
        if current.sum() == members.size:
            break
        if not current[x]:
            gens.append(int(x))
            current = closure_mask(g.mul, gens)
    return gens


def derived_subgroup(g: CayleyGroup, gens: Sequence[int]) -> Subgroup:
    """Normal closure, inside <gens>, of the commutators of ``gens``."""
    gens = list(gens)
    comms = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = int(g.commutator(a, b))
            if c != 0:
                comms.append(c)
    dgens = list(dict.fromkeys(comms))
    mask = closure_mask(g.mul, dgens)
    changed = True
    while changed:
        changed = False
        for d in list(dgens):
            for s in gens:
                c = int(g.mul[g.mul[g.inv[s], d], s])
                if not mask[c]:
                    dgens.append(c)
                    mask = closure_mask(g.mul, dgens)
                    changed = True
    return Subgroup.from_mask(g, mask)


def invariant_normal_subgroups(g: CayleyGroup, perms: Sequence[np.ndarray] = ()) -> list[Subgroup]:
    """All normal subgroups of ``g`` also invariant under the maps ``perms``.

    Such subgroups are unions of orbits of the group generated by the inner
    automorphisms and ``perms``; the lattice is closed under joins, so it is
    enumerated by repeatedly joining known members with single orbits.
    """
    maps = [g.conjugation_perm(x) for x in g.basic_generators()] + [np.asarray(p) for p in perms]
    labels = orbit_labels(g.n, maps)
    orbit_reps = [int(np.flatnonzero(labels == lab)[0]) for lab in np.unique(labels)]
    orbit_reps = [r for r in orbit_reps if r != 0]
    trivial = closure_mask(g.mul, [])
    found = {np.flatnonzero(trivial).tobytes(): trivial}
    queue = [(trivial, [])]
    while queue:
        base, base_gens = queue.pop()
        for r in orbit_reps:
            if base[r]:
                continue
            orbit = np.flatnonzero(labels == labels[r])
            mask, gens = base, list(base_gens)
            while not mask[orbit].all():
                gens.append(int(orbit[~mask[orbit]][0]))
                mask = closure_mask(g.mul, gens, start=mask)
            key = np.flatnonzero(mask).tobytes()
            if key not in found:
                found[key] = mask
                queue.append((mask, gens))
    subs = [Subgroup.from_mask(g, m) for m in found.values()]
    return sorted(subs, key=lambda s: (s.order, s.members))


def orbit_labels(n: int, perms: Sequence[np.ndarray]) -> np.ndarray:
    """Label each point with the index of its orbit under the given maps."""
    if not perms:
        return np.arange(n)
    rows = np.concatenate([np.arange(n)] * len(perms))
    cols = np.concatenate([np.asarray(p, dtype=np.int64) for p in perms])
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


# -- regular representations -------------------------------------------------

def rho(g: CayleyGroup) -> PermGroup:
    """Right regular representation x -> x g."""
    gens = [Perm(g.right_perm(s).tolist(), check=False) for s in g.generating_set()]
    return PermGroup(gens, degree=g.n, order=g.n)


def lambda_rep(g: CayleyGroup) -> PermGroup:
    """Left regular representation x -> g x."""
    gens = [Perm(g.left_perm(s).tolist(), check=False) for s in g.generating_set()]
    return PermGroup(gens, degree=g.n, order=g.n)


def inversion_perm(g: CayleyGroup) -> Perm:
    return Perm(g.inv.tolist(), check=False)


def from_regular(group: PermGroup, return_nu: bool = False):
    """Transport a regular permutation group to a Cayley table.

    Element ``i`` is the unique ``n`` in the group with ``0^n = i``; the
    table is then ``mul[i, j] = i^{n_j}``.
    """
    deg = group.degree
    gens = [np.array(s.images, dtype=np.int64) for s in group.generators]
    nu = np.full((deg, deg), -1, dtype=np.int64)
    nu[0] = np.arange(deg)
    queue = [0]
    head = 0
    while head < len(queue):
        i = queue[head]
        head += 1
        for s in gens:
            q = s[nu[i]]
            j = int(q[0])
            if nu[j, 0] < 0:
                nu[j] = q
                queue.append(j)
            elif not np.array_equal(nu[j], q):
                raise ValueError("group is not regular: two elements send 0 to %d" % j)
    if len(queue) != deg:
        raise ValueError("group is not regular: not transitive")
    cg = CayleyGroup(nu.T.copy(), provenance="from_regular")
    return (cg, nu) if return_nu else cg


# -- constructions ---------------------------------------------------------

def opposite(g: CayleyGroup) -> CayleyGroup:
    factors = None
    if g.factors:
        factors = [FactorEmbedding(opposite(f.group), f.embed) for f in g.factors]
    return CayleyGroup(g.mul.T.copy(), labels=g.labels, provenance="opposite(%s)" % g.provenance,
                       factors=factors, check=False)


@dataclass
class CentralProductSpec:
    """Amalgamate central subgroups: ``amalgam`` maps left indices to right indices."""

    left: CayleyGroup
    right: CayleyGroup
    amalgam: dict[int, int] = field(default_factory=lambda: {0: 0})

    def __post_init__(self):
        amalgam = dict(self.amalgam)
        amalgam.setdefault(0, 0)
        self.amalgam = extend_partial_hom(self.left, self.right, amalgam)
        zl, zr = self.left.center().mask, self.right.center().mask
        dom = list(self.amalgam)
        img = list(self.amalgam.values())
        if not zl[dom].all() or not zr[img].all():
            raise ValueError("amalgam is not between central subgroups")
        if len(set(img)) != len(img):
            raise ValueError("amalgam is not injective")


def extend_partial_hom(a: CayleyGroup, b: CayleyGroup, partial: dict[int, int]) -> dict[int, int]:
    """Extend generator images to a homomorphism on the generated subgroup."""
    hom = {0: 0}
    hom.update(partial)
    gens = [x for x in partial if x != 0]
    queue = list(hom)
    while queue:
        x = queue.pop()
        for s in gens:
            y = int(a.mul[x, s])
            val = int(b.mul[hom[x], hom[s]])
            if y in hom:
                if hom[y] != val:
                    raise ValueError("amalgam does not extend to a homomorphism")
            else:
                hom[y] = val
                queue.append(y)
    return hom


@dataclass
class CentralProduct:
    group: CayleyGroup
    left: Subgroup
    right: Subgroup
    left_map: np.ndarray
    right_map: np.ndarray


def _check_order(n: int) -> None:
    if n > max_order():
        raise BudgetExceeded("group order %d exceeds maximum %d" % (n, max_order()))


def central_product(spec: CentralProductSpec, provenance: str = "") -> CentralProduct:
    """(left x right) / {(z, amalgam(z)^-1)}.

    Elements are pairs (t, y) with t in a fixed left transversal of the
    amalgamated subgroup, ordered lexicographically by (t, y).
    """
    L, R = spec.left, spec.right
    dom = np.array(sorted(spec.amalgam), dtype=np.int64)
    phi = np.zeros(L.n, dtype=np.int64)
    for d, e in spec.amalgam.items():
        phi[d] = e
    t_of = np.full(L.n, -1, dtype=np.int64)
    d_of = np.full(L.n, -1, dtype=np.int64)
    reps = []
    for x in range(L.n):
        if t_of[x] >= 0:
            continue
        reps.append(x)
        coset = L.mul[x, dom].astype(np.int64)
        t_of[coset] = x
        d_of[coset] = dom
    tpos = np.full(L.n, -1, dtype=np.int64)
    tpos[reps] = np.arange(len(reps))
    nr = R.n
    n = len(reps) * nr
    _check_order(n)
    reps_arr = np.array(reps, dtype=np.int64)
    ex = np.repeat(reps_arr, nr)
    ey = np.tile(np.arange(nr), len(reps))
    Lmul = L.mul.astype(np.int64) if L.n <= 4096 else L.mul
    Rmul = R.mul
    mul = np.empty((n, n), dtype=table_dtype(n))
    chunk = max(1, 2_000_000 // n)
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        x = Lmul[ex[start:stop, None], ex[None, :]]
        y = Rmul[ey[start:stop, None], ey[None, :]]
        y = Rmul[phi[d_of[x]], y]
        mul[start:stop] = tpos[t_of[x]] * nr + y
    left_map = tpos[t_of] * nr + phi[d_of]
    right_map = np.arange(nr, dtype=np.int64)
    factors = []
    for part, pmap in ((L, left_map), (R, right_map)):
        if part.factors:
            factors.extend(FactorEmbedding(f.group, pmap[f.embed]) for f in part.factors)
        else:
            factors.append(FactorEmbedding(part, pmap))
    if not provenance:
        kind = "direct" if len(dom) == 1 else "central"
        provenance = "%s(%s,%s)" % (kind, L.provenance, R.provenance)
    group = CayleyGroup(mul, provenance=provenance, factors=factors, check=n <= 4096)
    left_sub = Subgroup(group, tuple(sorted(set(left_map.tolist()))))
    right_sub = Subgroup(group, tuple(right_map.tolist()))
    return CentralProduct(group, left_sub, right_sub, left_map, right_map)


def direct_product(a: CayleyGroup, b: CayleyGroup, provenance: str = "") -> CayleyGroup:
    return central_product(CentralProductSpec(a, b), provenance=provenance).group


def quotient_central(g: CayleyGroup, z: Subgroup) -> tuple[CayleyGroup, np.ndarray]:
    """G/Z for a central subgroup Z; cosets ordered by least member index."""
    if not z.is_central():
        raise ValueError("subgroup is not central")
    if z.order == 1:
        return g, np.arange(g.n, dtype=np.int64)
    zarr = z.array
    coset_min = g.mul[:, zarr].min(axis=1).astype(np.int64)
    reps = np.unique(coset_min)
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    proj = pos[coset_min]
    q = proj[g.mul[np.ix_(reps, reps)]].astype(table_dtype(len(reps)))
    quotient = CayleyGroup(q, provenance="quotient(%s)" % g.provenance, check=len(reps) <= 4096)
    return quotient, proj


def center(g: CayleyGroup) -> Subgroup:
    return g.center()


def derived(g: CayleyGroup) -> Subgroup:
    return g.derived()


def is_perfect(g: CayleyGroup) -> bool:
    return g.is_perfect()


def second_center(g: CayleyGroup) -> Subgroup:
    return g.second_center()


def named_group(spec: str) -> CayleyGroup:
    from . import catalog
    return catalog.named_group(spec)


__all__ = [
    "CayleyGroup", "Subgroup", "FactorEmbedding", "CentralProductSpec", "CentralProduct",
    "rho", "lambda_rep", "inversion_perm", "from_regular", "opposite", "direct_product",
    "central_product", "quotient_central", "center", "derived", "is_perfect",
    "second_center", "named_group", "closure_mask", "orbit_labels",
    "invariant_normal_subgroups", "generating_set", "derived_subgroup", "SpecParseError",
]
