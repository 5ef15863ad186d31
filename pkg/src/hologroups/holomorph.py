"""Holomorphs, gamma-maps of regular subgroups and the twisted product.

A regular subgroup N of Hol(G) is encoded by the map gamma: G -> Aut(G) with
nu(g) = gamma(g) rho(g), where nu(g) is the element of N sending 0 to g.  The
twisted product is ``x o y = x^gamma(y) y`` and ``x^nu(y) = x o y``.

Gamma maps come in two representations:

* explicit: an n x n array whose row g is the image array of gamma(g);
* inner: an array ``c`` with gamma(g) = iota(c[g]).  Equality is only
  meaningful modulo the centre, since iota(a) = iota(b) iff a b^-1 is central.

The inner form keeps large perfect groups (orders in the thousands) within
O(n) storage per map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .autos import AutGroup, Isomorphism, automorphism_group, is_automorphism, isomorphism_search
from .errors import BudgetExceeded, VerificationError
from .group_model import CayleyGroup, FactorEmbedding, from_regular, rho, table_dtype
from .perm_core import Perm, PermGroup

EXPLICIT_MAX_ORDER = 512
SKEW_BRACE_EXHAUSTIVE_MAX = 128
SKEW_BRACE_SAMPLES = 10**6


def _zmask(g: CayleyGroup) -> np.ndarray:
    return g.center().mask


def hol_contains(g: CayleyGroup, p: Union[Perm, np.ndarray]) -> bool:
    """Membership in Hol(g): p rho(0^p)^-1 must be an automorphism."""
    arr = np.asarray(p.images if isinstance(p, Perm) else p, dtype=np.int64)
    alpha = g.mul[arr, g.inv[arr[0]]].astype(np.int64)
    return is_automorphism(g, alpha)


# -- the holomorph -------------------------------------------------------------

class Holomorph:
    def __init__(self, base: CayleyGroup, aut: AutGroup):
        self.base = base
        self.aut = aut
        self._group: Optional[PermGroup] = None

    def __repr__(self) -> str:
        return "Holomorph(%s, order=%d)" % (self.base.provenance, self.order)

    @property
    def order(self) -> int:
        return self.aut.order * self.base.n

    @property
    def rho_generators(self) -> list[np.ndarray]:
        return [self.base.right_perm(s).astype(np.int64) for s in self.base.generating_set()]

    @property
    def generators(self) -> list[np.ndarray]:
        return list(self.aut.generators) + self.rho_generators

    @property
    def group(self) -> PermGroup:
        if self._group is None:
            gens = [Perm(p.tolist(), check=False) for p in self.generators]
            self._group = PermGroup(gens, degree=self.base.n, order=self.order,
                                    base=(0,) + tuple(self.base.generating_set()))
        return self._group

    def contains(self, p) -> bool:
        return hol_contains(self.base, p)

    def point_stabilizer_is_aut(self) -> bool:
        """The stabilizer of 0 has order |Hol|/|G| and consists of automorphisms."""
        if self.order // self.base.n != self.aut.order:
            return False
        return all(self.contains(p) and p[0] == 0 for p in self.aut.generators)


def holomorph(g: CayleyGroup, strategy: str = "auto") -> Holomorph:
    return Holomorph(g, automorphism_group(g, strategy))


# -- gamma maps --------------------------------------------------------------

class GammaMap:
    """gamma: G -> Aut(G), explicit or inner (see module docstring)."""

    def __init__(self, base: CayleyGroup, table: Optional[np.ndarray] = None,
                 inner: Optional[np.ndarray] = None, circ_factors: Optional[Sequence[FactorEmbedding]] = None):
        if (table is None) == (inner is None):
            raise ValueError("give exactly one of table or inner")
        self.base = base
        self.table = None if table is None else np.asarray(table, dtype=np.int64)
        self.inner = None if inner is None else np.asarray(inner, dtype=np.int64)
        if self.table is not None and self.table.shape != (base.n, base.n):
            raise ValueError("gamma table has wrong shape")
        if self.inner is not None and self.inner.shape != (base.n,):
            raise ValueError("inner representation has wrong shape")
        self.circ_factors = tuple(circ_factors) if circ_factors else None
        self._flags: dict = {}

    @classmethod
    def trivial(cls, g: CayleyGroup) -> "GammaMap":
        return cls(g, inner=np.zeros(g.n, dtype=np.int64))

    @classmethod
    def left_regular(cls, g: CayleyGroup) -> "GammaMap":
        """gamma(y) = iota(y^-1), the map of lambda(G)."""
        return cls(g, inner=g.inv.copy())

    def __call__(self, g: int) -> np.ndarray:
        if self.table is not None:
            return self.table[g]
        c = int(self.inner[g])
        return self.base.conjugation_perm(c).astype(np.int64)

    @property
    def n(self) -> int:
        return self.base.n

    def image_of(self, g, x):
        """x^gamma(g), vectorized over array arguments."""
        if self.table is not None:
            return self.table[g, x]
        mul, inv = self.base.mul, self.base.inv
        c = self.inner[g]
        return mul[mul[inv[c], x], c].astype(np.int64)

    def materialize(self) -> np.ndarray:
        if self.table is not None:
            return self.table
        mul, inv = self.base.mul, self.base.inv
        c = self.inner
        return mul[mul[inv[c][:, None], np.arange(self.n)[None, :]], c[:, None]].astype(np.int64)

    def canonical_inner(self) -> np.ndarray:
        """Least representative of each c[g] modulo the centre."""
        z = self.base.center().array
        return self.base.mul[self.inner[:, None], z[None, :]].min(axis=1).astype(np.int64)

    def sort_key(self) -> bytes:
        if self.n <= EXPLICIT_MAX_ORDER or self.inner is None:
            return self.materialize().astype(np.int32).tobytes()
        return self.canonical_inner().astype(np.int32).tobytes()

    def equals(self, other: "GammaMap") -> bool:
        if self.inner is not None and other.inner is not None:
            return np.array_equal(self.canonical_inner(), other.canonical_inner())
        return np.array_equal(self.materialize(), other.materialize())

    def is_inner_valued(self) -> bool:
        """Every gamma(g) is an inner automorphism."""
        if self.inner is not None:
            return True
        conj = _conjugation_table(self.base)
        t = self.table
        return all(bool((conj == t[g]).all(axis=1).any()) for g in range(self.n))

    @property
    def satisfies_regular_condition(self) -> bool:
        if "regular" not in self._flags:
            self._flags["regular"] = validate_gamma_regular(self)
        return self._flags["regular"]

    def satisfies_normal_condition(self, aut: AutGroup) -> bool:
        key = ("normal", id(aut))
        if key not in self._flags:
            self._flags[key] = validate_gamma_normal(self, aut)
        return self._flags[key]

    def to_json(self) -> dict:
        if self.n <= EXPLICIT_MAX_ORDER or self.inner is None:
            return {"table": self.materialize().tolist()}
        return {"inner_mod_center": self.canonical_inner().tolist()}


def _conjugation_table(g: CayleyGroup) -> np.ndarray:
    if "conj_table" not in g._cache:
        if g.n > EXPLICIT_MAX_ORDER:
            raise BudgetExceeded("conjugation table limited to order %d" % EXPLICIT_MAX_ORDER)
        ar = np.arange(g.n)
        g._cache["conj_table"] = g.mul[g.mul[g.inv[:, None], ar[None, :]], ar[:, None]].astype(np.int64)
    return g._cache["conj_table"]


def _mod_center_equal(g: CayleyGroup, a, b) -> np.ndarray:
    return _zmask(g)[g.mul[a, g.inv[b]]]


def gamma_from_regular(h: Holomorph, N: PermGroup) -> GammaMap:
    g = h.base
    if N.degree != g.n:
        raise ValueError("degree mismatch")
    try:
        _, nu = from_regular(N, return_nu=True)
    except ValueError as exc:
        raise ValueError("N is not regular: %s" % exc) from exc
    table = g.mul[nu, g.inv[np.arange(g.n)][:, None]].astype(np.int64)
    for x in range(g.n):
        if not is_automorphism(g, table[x]):
            raise ValueError("N is not contained in Hol(G)")
    return GammaMap(g, table=table)


# -- validators ----------------------------------------------------------------

def validate_gamma_regular(gamma: GammaMap) -> bool:
    """gamma(0) = 1 and gamma(g) gamma(h) = gamma(g^gamma(h) h) for all g, h."""
    g = gamma.base
    n = g.n
    mul = g.mul
    ar = np.arange(n)
    if gamma.table is not None:
        t = gamma.table
        if not np.array_equal(t[0], ar):
            return False
        if not all(is_automorphism(g, t[x]) for x in range(n)):
            return False
        for h in range(n):
            k = mul[t[h], h].astype(np.int64)
            # row g of t[k] must be gamma(g) followed by gamma(h)
            if not np.array_equal(t[k], t[h][t]):
                return False
        return True
    c = gamma.inner
    zmask = _zmask(g)
    if not zmask[c[0]]:
        return False
    for h in range(n):
        k = mul[gamma.image_of(h, ar), h]
        if not zmask[mul[mul[c, c[h]], g.inv[c[k]]]].all():
            return False
    return True


def validate_gamma_normal(gamma: GammaMap, aut: AutGroup) -> bool:
    """gamma(gh) = gamma(h) gamma(g) and gamma(g^b) = gamma(g)^b for b in Aut(G).

    Equivariance is tested on generators of Aut(G) only: the set of b for
    which it holds is closed under composition, so it holds on all of Aut(G).
    """
    g = gamma.base
    n = g.n
    mul = g.mul
    ar = np.arange(n)
    if gamma.table is not None:
        t = gamma.table
        for x in range(n):
            # gamma(x h) = gamma(h) then gamma(x), for all h
            if not np.array_equal(t[mul[x, :]], t[x][t]):
                return False
        for b in aut.generators:
            binv = np.empty_like(b)
            binv[b] = ar
            if not np.array_equal(t[b], b[t[:, binv]]):
                return False
        return True
    c = gamma.inner
    for lo in range(0, n, 256):
        rows = mul[lo:lo + 256]
        cg = c[lo:lo + 256]
        if not _mod_center_equal(g, c[rows], mul[c[None, :], cg[:, None]]).all():
            return False
    for b in aut.generators:
        if not _mod_center_equal(g, c[b], b[c]).all():
            return False
    return True


# -- the twisted product ---------------------------------------------------------

@dataclass
class CircStructure:
    gamma: GammaMap
    circ_group: CayleyGroup
    N: PermGroup = field(repr=False)

    def nu(self, h: int) -> Perm:
        return Perm(self.circ_group.mul[:, h].astype(np.int64).tolist(), check=False)

    def nu_array(self, h: int) -> np.ndarray:
        return self.circ_group.mul[:, h].astype(np.int64)

    def contains(self, p) -> bool:
        """Membership in the regular group N: p must equal nu(0^p)."""
        arr = np.asarray(p.images if isinstance(p, Perm) else p)
        return bool(np.array_equal(arr, self.circ_group.mul[:, int(arr[0])]))


def circ_table(gamma: GammaMap) -> np.ndarray:
    g = gamma.base
    n = g.n
    out = np.empty((n, n), dtype=table_dtype(n))
    ar = np.arange(n)
    for y in range(n):
        out[:, y] = g.mul[gamma.image_of(y, ar), y]
    return out


def circ_structure(gamma: GammaMap, check: Optional[bool] = None) -> CircStructure:
    """Build (G, o) and its regular representation N.

    ``check`` re-validates gamma first (default: for explicit tables only,
    since inner maps are produced by constructions that validate separately).
    """
    g = gamma.base
    if check is None:
        check = gamma.table is not None
    if check and not gamma.satisfies_regular_condition:
        raise VerificationError("gamma violates the regular condition")
    mul = circ_table(gamma)
    circ = CayleyGroup(mul, provenance="circ(%s)" % g.provenance, factors=gamma.circ_factors)
    gens = [Perm(circ.mul[:, s].astype(np.int64).tolist(), check=False) for s in circ.generating_set()]
    N = PermGroup(gens, degree=g.n, order=g.n)
    return CircStructure(gamma, circ, N)


def skew_brace_check(c: CircStructure, samples: int = SKEW_BRACE_SAMPLES, seed: int = 0) -> bool:
    """(g h) o k = (g o k) k^-1 (h o k); exhaustive for small orders, sampled above."""
    g = c.gamma.base
    mul, inv, circ = g.mul, g.inv, c.circ_group.mul
    n = g.n
    if n <= SKEW_BRACE_EXHAUSTIVE_MAX:
        for k in range(n):
            lhs = circ[mul, k]
            col = circ[:, k]
            rhs = mul[mul[col, inv[k]][:, None], col[None, :]]
            if not np.array_equal(lhs, rhs):
                return False
        return True
    rng = np.random.default_rng(seed)
    x, y, k = rng.integers(0, n, size=(3, samples))
    lhs = circ[mul[x, y], k]
    rhs = mul[mul[circ[x, k], inv[k]], circ[y, k]]
    return bool(np.array_equal(lhs, rhs))


def commutator_identity_check(gamma: GammaMap, aut: AutGroup) -> dict:
    """Check the three commutator identities satisfied by normal gamma maps.

    Conventions (all in Hol(G), rho(G) identified with G):
      [b, g^-1]  = g^b g^-1
      [a, h]     = (h^a)^-1 h
      [g^-1, a]  = g (g^a)^-1
    Identities:
      aut:        gamma([b, g^-1]) = [gamma(g), b]
      inner:      gamma([h, g^-1]) = iota([gamma(g), h])
      mod_center: [gamma(g), h] = [g^-1, gamma(h^-1)] modulo Z(G)
    """
    g = gamma.base
    n = g.n
    mul, inv = g.mul, g.inv
    zmask = _zmask(g)
    ar = np.arange(n)
    report = {"aut": None, "inner": None, "mod_center": None}

    # aut identity
    for bi, b in enumerate(aut.generators):
        binv = np.empty_like(b)
        binv[b] = ar
        ks = mul[b, inv].astype(np.int64)
        for x in range(n):
            ga = gamma(x)
            gainv = np.empty_like(ga)
            gainv[ga] = ar
            # [a, b] = a^-1 b^-1 a b as maps applied left to right
            comm = b[ga[binv[gainv]]]
            if not np.array_equal(gamma(int(ks[x])), comm):
                report["aut"] = {"beta": bi, "g": x}
                break
        if report["aut"]:
            break

    # inner identity and the mod-centre identity, over all pairs
    for x in range(n):
        hs = ar
        e = mul[inv[gamma.image_of(x, hs)], hs]                  # [gamma(x), h]
        k = mul[mul[mul[inv[hs], x], hs], inv[x]]                # [h, x^-1]
        if report["inner"] is None:
            if gamma.inner is not None:
                ok = _mod_center_equal(g, gamma.inner[k], e)
            else:
                conj = _conjugation_table(g)
                ok = (gamma.table[k] == conj[e]).all(axis=1)
            if not ok.all():
                report["inner"] = {"g": x, "h": int(np.flatnonzero(~ok)[0])}
        if report["mod_center"] is None:
            hinv = inv[hs]
            gx = np.full(n, x)
            e2 = mul[x, inv[gamma.image_of(hinv, gx)]]          # [x^-1, gamma(h^-1)]
            ok = _mod_center_equal(g, e, e2)
            if not ok.all():
                report["mod_center"] = {"g": x, "h": int(np.flatnonzero(~ok)[0])}
    report["ok"] = all(report[k] is None for k in ("aut", "inner", "mod_center"))
    return report


# -- classification ------------------------------------------------------------

@dataclass
class RegularSubgroupRecord:
    circ: CircStructure
    in_J: bool
    in_I: bool
    in_H: bool
    iso_to_base: Optional[Isomorphism] = None
    conjugator: Optional[Perm] = None

    @property
    def N(self) -> PermGroup:
        return self.circ.N

    @property
    def gamma(self) -> GammaMap:
        return self.circ.gamma

    def chain_holds(self) -> bool:
        return (not self.in_H or self.in_I) and (not self.in_I or self.in_J)

    def sort_key(self) -> bytes:
        return self.gamma.sort_key()

    def to_json(self) -> dict:
        out = {
            "gamma": self.gamma.to_json(),
            "circ_mul_hash": self.circ.circ_group.table_hash(),
            "in_J": self.in_J,
            "in_I": self.in_I,
            "in_H": self.in_H,
        }
        if self.iso_to_base is not None:
            out["iso_witness"] = self.iso_to_base.images.tolist()
        if self.conjugator is not None:
            out["conjugator"] = list(self.conjugator.images)
        return out


def is_aut_invariant(h: Holomorph, circ: CircStructure) -> bool:
    """N is normalized by every generator of Aut(G)."""
    cm = circ.circ_group.mul
    ar = np.arange(h.base.n)
    for b in h.aut.generators:
        binv = np.empty_like(b)
        binv[b] = ar
        for s in circ.circ_group.generating_set():
            nu = cm[:, s].astype(np.int64)
            conj = b[nu[binv]]
            if not np.array_equal(conj, cm[:, int(b[s])]):
                return False
    return True


def classify_regular(h: Holomorph, N: Union[PermGroup, CircStructure, GammaMap],
                     strategy: str = "auto") -> RegularSubgroupRecord:
    if isinstance(N, PermGroup):
        circ = circ_structure(gamma_from_regular(h, N), check=False)
    elif isinstance(N, GammaMap):
        circ = circ_structure(N)
    else:
        circ = N
    in_J = is_aut_invariant(h, circ)
    aut_circ = automorphism_group(circ.circ_group, strategy)
    in_I = h.aut.same_group(aut_circ)
    iso = isomorphism_search(h.base, circ.circ_group, strategy)
    return RegularSubgroupRecord(circ, in_J, in_I, in_I and iso is not None, iso)


def conjugator_from_iso(h: Holomorph, rec: RegularSubgroupRecord) -> Perm:
    """The permutation theta conjugating rho(G) onto N, checked to normalize Hol(G)."""
    if rec.iso_to_base is None:
        raise VerificationError("record has no isomorphism witness")
    g = h.base
    theta = np.asarray(rec.iso_to_base.images, dtype=np.int64)
    tinv = np.empty_like(theta)
    tinv[theta] = np.arange(g.n)
    for s in g.generating_set():
        conj = theta[g.mul[tinv, s].astype(np.int64)]
        if not rec.circ.contains(conj):
            raise VerificationError("theta does not conjugate rho(G) into N")
    for p in h.generators:
        if not h.contains(theta[p[tinv]]):
            raise VerificationError("theta does not normalize Hol(G)")
    return Perm(theta.tolist(), check=False)


# -- T(G) ------------------------------------------------------------------------

def abelian_type(mul: np.ndarray) -> str:
    """Isomorphism type string of an abelian group table, e.g. 'C4 x C2' or 'C2^2'."""
    n = mul.shape[0]
    if n == 1:
        return "1"
    orders = CayleyGroup(mul, check=False).element_orders()
    parts: list[int] = []
    for p in sorted(set(_prime_factors(n))):
        # r_k = number of cyclic p-factors of order >= p^k = log_p(c_k / c_(k-1)),
        # where c_k counts elements whose order divides p^k
        counts = [1]
        k = 0
        while counts[-1] < _p_part(n, p):
            k += 1
            counts.append(int(np.sum(p ** k % orders == 0)))
        r = [round(np.log(counts[i] / counts[i - 1]) / np.log(p)) for i in range(1, len(counts))] + [0]
        for i in range(len(r) - 1):
            parts.extend([p ** (i + 1)] * (r[i] - r[i + 1]))
    out = []
    for q in sorted(set(parts), reverse=True):
        c = parts.count(q)
        out.append("C%d" % q if c == 1 else "C%d^%d" % (q, c))
    return " x ".join(out)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while n > 1:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    return out


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


@dataclass
class TGroup:
    table: np.ndarray
    type: str
    is_abelian: bool
    regular: bool

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def to_json(self) -> dict:
        return {"order": self.order, "type": self.type, "abelian": self.is_abelian,
                "regular_action": self.regular, "table": self.table.tolist()}


def t_group(g: CayleyGroup, H_set: Sequence[RegularSubgroupRecord], h: Optional[Holomorph] = None) -> TGroup:
    """Multiplication table of T(G) acting on the H-records via their conjugators.

    Index i stands for the coset theta_i Hol(G).  The product of i and j is the
    record k whose subgroup is rho(G)^(theta_i theta_j); theta_i theta_j
    theta_k^-1 is then checked to lie in Hol(G).
    """
    if h is None:
        h = holomorph(g)
    recs, seen = [], set()
    for r in H_set:
        key = r.circ.circ_group.table_hash()
        if key not in seen:
            seen.add(key)
            recs.append(r)
    m = len(recs)
    if m == 0:
        raise ValueError("empty H set")
    thetas = []
    for r in recs:
        if r.conjugator is None:
            r.conjugator = conjugator_from_iso(h, r)
        thetas.append(np.asarray(r.conjugator.images, dtype=np.int64))
    ident = [i for i, r in enumerate(recs) if np.array_equal(r.circ.circ_group.mul, g.mul)]
    if len(ident) != 1:
        raise VerificationError("rho(G) must occur exactly once in the H set")
    rho_gens = [g.right_perm(s).astype(np.int64) for s in g.generating_set()]
    table = np.full((m, m), -1, dtype=np.int64)
    for i in range(m):
        for j in range(m):
            t = thetas[j][thetas[i]]
            tinv = np.empty_like(t)
            tinv[t] = np.arange(g.n)
            images = [t[r[tinv]] for r in rho_gens]
            hits = [k for k in range(m) if all(recs[k].circ.contains(p) for p in images)]
            if len(hits) != 1:
                raise VerificationError("conjugator product does not land on a unique H record")
            k = hits[0]
            kinv = np.empty_like(thetas[k])
            kinv[thetas[k]] = np.arange(g.n)
            if not hol_contains(g, kinv[t]):
                raise VerificationError("conjugator product leaves the coset")
            table[i, j] = k
    # relabel so that the rho record is 0
    order = ident + [i for i in range(m) if i != ident[0]]
    pos = np.empty(m, dtype=np.int64)
    pos[order] = np.arange(m)
    tab = pos[table[np.ix_(order, order)]]
    ar = np.arange(m)
    regular = bool(all(np.array_equal(np.sort(tab[i]), ar) for i in range(m))
                   and all(np.array_equal(np.sort(tab[:, j]), ar) for j in range(m)))
    if not regular:
        raise VerificationError("T(G) action is not regular")
    abelian = bool(np.array_equal(tab, tab.T))
    kind = abelian_type(tab) if abelian else "nonabelian of order %d" % m
    return TGroup(tab, kind, abelian, regular)


__all__ = [
    "Holomorph", "GammaMap", "CircStructure", "RegularSubgroupRecord", "TGroup", "holomorph",
    "hol_contains", "gamma_from_regular", "validate_gamma_regular", "validate_gamma_normal",
    "circ_table", "circ_structure", "skew_brace_check", "commutator_identity_check", "is_aut_invariant",
    "classify_regular", "conjugator_from_iso", "t_group", "abelian_type",
]
