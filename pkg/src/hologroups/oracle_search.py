"""Brute-force oracles for tiny groups.

Two independent routes to the regular subgroups of Hol(G):

* gamma backtracking: assign gamma(x) in Aut(G) element by element and
  propagate gamma(g) gamma(h) = gamma(g^gamma(h) h) until the table is full;
* symmetric-group search: compute Hol(G) as the literal normalizer of rho(G)
  in S(G), then grow regular subgroups from fixed-point-free elements.

Neither uses the structure theory of the other modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .autos import automorphism_group
from .errors import BudgetExceeded, VerificationError
from .group_model import CayleyGroup, from_regular, rho
from .holomorph import GammaMap, Holomorph, circ_structure, holomorph, is_aut_invariant
from .perm_core import Perm, PermGroup, normalizer_in, symmetric_group

HOL_LEVEL_MAX_ORDER = 24
SYM_LEVEL_MAX_ORDER = 16
LITERAL_NORMALIZER_MAX_DEGREE = 8


@dataclass(frozen=True)
class SearchBudget:
    max_group_order: int = HOL_LEVEL_MAX_ORDER
    max_nodes: int = 10**6

    def __post_init__(self):
        if self.max_group_order <= 0 or self.max_nodes <= 0:
            raise ValueError("budget values must be positive")

    def check_order(self, n: int) -> None:
        if n > self.max_group_order:
            raise BudgetExceeded("order %d exceeds oracle budget %d" % (n, self.max_group_order))


def _aut_elements(g: CayleyGroup) -> np.ndarray:
    return np.array(sorted(automorphism_group(g).elements(), key=lambda a: a.tolist()), dtype=np.int64)


def enumerate_gammas(g: CayleyGroup, budget: Optional[SearchBudget] = None) -> list[GammaMap]:
    """Every gamma table satisfying the regular condition, by backtracking."""
    budget = budget or SearchBudget()
    budget.check_order(g.n)
    n = g.n
    mul = g.mul.astype(np.int64)
    auts = _aut_elements(g)
    m = len(auts)
    index = {a.tobytes(): i for i, a in enumerate(auts)}
    ident = index[np.arange(n, dtype=np.int64).tobytes()]
    # compose[i, j] = index of auts[i] followed by auts[j]
    compose = np.array([[index[auts[j][auts[i]].tobytes()] for j in range(m)] for i in range(m)])
    nodes = [0]
    results: list[np.ndarray] = []

    def propagate(assign: np.ndarray, fresh: list[int]) -> bool:
        queue = list(fresh)
        while queue:
            a = queue.pop()
            done = np.flatnonzero(assign >= 0)
            for b in done.tolist():
                for x, y in ((a, b), (b, a)):
                    # gamma(x) gamma(y) = gamma(x^gamma(y) y)
                    k = int(mul[auts[assign[y]][x], y])
                    val = compose[assign[x], assign[y]]
                    if assign[k] < 0:
                        assign[k] = val
                        queue.append(k)
                    elif assign[k] != val:
                        return False
        return True

    def rec(assign: np.ndarray) -> None:
        nodes[0] += 1
        if nodes[0] > budget.max_nodes:
            raise BudgetExceeded("gamma search exceeded %d nodes" % budget.max_nodes)
        free = np.flatnonzero(assign < 0)
        if free.size == 0:
            results.append(assign.copy())
            return
        x = int(free[0])
        for v in range(m):
            trial = assign.copy()
            trial[x] = v
            if propagate(trial, [x]):
                rec(trial)

    start = np.full(n, -1, dtype=np.int64)
    start[0] = ident
    if propagate(start, [0]):
        rec(start)
    gammas = [GammaMap(g, table=auts[r]) for r in results]
    gammas.sort(key=lambda gm: gm.sort_key())
    return gammas


def enumerate_regular_in_hol(g: CayleyGroup, budget: Optional[SearchBudget] = None) -> list[PermGroup]:
    """All regular subgroups of Hol(g), as the nu-images of the gamma tables."""
    return [circ_structure(gm).N for gm in enumerate_gammas(g, budget)]


def enumerate_J_bruteforce(g: CayleyGroup, budget: Optional[SearchBudget] = None) -> list[PermGroup]:
    """Regular subgroups of Hol(g) normalized by Aut(g)."""
    h = holomorph(g)
    out = []
    for gm in enumerate_gammas(g, budget):
        c = circ_structure(gm)
        if is_aut_invariant(h, c):
            out.append(c.N)
    return out


def element_set(group: PermGroup) -> frozenset[tuple[int, ...]]:
    return frozenset(p.images for p in group.elements())


# -- symmetric-group level ---------------------------------------------------------

def literal_holomorph(g: CayleyGroup, budget: Optional[SearchBudget] = None) -> PermGroup:
    """N_{S(G)}(rho(G)) computed by a normalizer search in the full symmetric group."""
    budget = budget or SearchBudget(SYM_LEVEL_MAX_ORDER)
    budget.check_order(g.n)
    if g.n > LITERAL_NORMALIZER_MAX_DEGREE:
        raise BudgetExceeded("literal normalizer limited to degree %d" % LITERAL_NORMALIZER_MAX_DEGREE)
    return normalizer_in(symmetric_group(g.n), rho(g))


def regular_subgroups_of(group: PermGroup, max_nodes: int = 10**6) -> list[frozenset]:
    """All regular subgroups of a permutation group, as element sets.

    A regular subgroup holds exactly one element moving 0 to each point; the
    search adds one such element for the least point not yet reached and
    closes up, abandoning any closure that is too big or has a nonidentity
    element with a fixed point.
    """
    n = group.degree
    elems = [p for p in group.elements()]
    by_target: dict[int, list[Perm]] = {}
    for p in elems:
        if p.is_identity() or all(p(x) != x for x in range(n)):
            by_target.setdefault(p(0), []).append(p)
    ident = Perm.identity(n)
    found: set[frozenset] = set()
    nodes = [0]

    def close(gens: list[Perm]) -> Optional[set[Perm]]:
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = a * s
                    if b not in seen:
                        if len(seen) >= n or (not b.is_identity() and any(b(x) == x for x in range(n))):
                            return None
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    def rec(gens: list[Perm], members: set[Perm]) -> None:
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise BudgetExceeded("regular subgroup search exceeded %d nodes" % max_nodes)
        if len(members) == n:
            found.add(frozenset(p.images for p in members))
            return
        reached = {p(0) for p in members}
        x = min(set(range(n)) - reached)
        for p in by_target.get(x, []):
            closed = close(gens + [p])
            if closed is not None:
                rec(gens + [p], closed)

    rec([], {ident})
    return sorted(found, key=lambda s: sorted(s))


def normalizer_equals_hol(g: CayleyGroup, N: PermGroup, h: Optional[Holomorph] = None) -> bool:
    """|Aut(N)| |N| = |Hol(G)|, for N already normalized by Hol(G).

    For degree at most 8 the verdict is compared with the literal normalizer
    of N in S(G).
    """
    h = h or holomorph(g)
    circ = from_regular(N)
    verdict = automorphism_group(circ).order * N.order() == h.order
    if g.n <= LITERAL_NORMALIZER_MAX_DEGREE:
        literal = normalizer_in(symmetric_group(g.n), N)
        if not all(literal.contains(Perm(p.tolist(), check=False)) for p in h.generators):
            raise VerificationError("N is not normalized by Hol(G)")
        if (literal.order() == h.order) != verdict:
            raise VerificationError("order shortcut disagrees with the literal normalizer")
    return verdict


def gamma_of(g: CayleyGroup, N: PermGroup) -> GammaMap:
    """gamma read off a regular subgroup of Hol(G) without the holomorph module's checks."""
    _, nu = from_regular(N, return_nu=True)
    return GammaMap(g, table=g.mul[nu, g.inv[:, None]].astype(np.int64))


__all__ = [
    "SearchBudget", "enumerate_gammas", "enumerate_regular_in_hol", "enumerate_J_bruteforce",
    "literal_holomorph", "regular_subgroups_of", "normalizer_equals_hol", "element_set", "gamma_of",
]
