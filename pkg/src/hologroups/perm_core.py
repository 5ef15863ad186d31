"""Permutations and permutation groups on the points 0..n-1.

Maps compose left to right and act as exponents: ``x^(ab) = (x^a)^b``,
so ``(a * b)(x) == b(a(x))``.

Groups keep a deterministic Schreier-Sims stabilizer chain (base points are
taken in increasing order of first moved point), built on first use.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceeded

DEFAULT_CENTRALIZER_DEGREE = 64
DEFAULT_NORMALIZER_ORDER = 10**7


class Perm:
    """An immutable permutation of ``range(degree)`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(int(x) for x in images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation: %r" % (images,))
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Perm":
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if x in seen or not 0 <= x < degree:
                    raise ValueError("bad cycle point %r" % (x,))
                seen.add(x)
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images, check=False)

    @classmethod
    def parse(cls, text: str, degree: Optional[int] = None) -> "Perm":
        return parse_perm(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __invert__(self) -> "Perm":
        return self.inverse()

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(inv, check=False)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by: "Perm") -> "Perm":
        """``self^by = by^-1 self by``."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def first_moved(self) -> Optional[int]:
        for i, x in enumerate(self.images):
            if i != x:
                return i
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __str__(self) -> str:
        return format_perm(self)

    def __repr__(self) -> str:
        return "Perm(%r, degree=%d)" % (format_perm(self), self.degree)


def compose(a: Perm, b: Perm) -> Perm:
    """Apply ``a`` then ``b``."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch: %d vs %d" % (a.degree, b.degree))
    return Perm(map(b.images.__getitem__, a.images), check=False)


def inverse(p: Perm) -> Perm:
    return p.inverse()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: Optional[int] = None) -> Perm:
    """Parse cycle notation such as ``"(0 1 2 3)(4 5)"``; ``"()"`` is the identity.

    Without ``degree`` the result has the smallest degree covering every
    mentioned point.
    """
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError("malformed permutation %r" % text)
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.replace(",", " ").split()
        if body:
            cycles.append([int(tok) for tok in body])
    top = max((x for c in cycles for x in c), default=-1) + 1
    if degree is None:
        degree = max(top, 1)
    elif top > degree:
        raise ValueError("point %d outside degree %d" % (top - 1, degree))
    return Perm.from_cycles(cycles, degree)


def format_perm(p: Perm) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(%s)" % " ".join(map(str, c)) for c in cycles)


class _Chain:
    """Base, strong generators and orbit transversals of a stabilizer chain."""

    def __init__(self, degree: int):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[Perm] = []
        self.trans: list[dict[int, Perm]] = []
        self.trans_inv: list[dict[int, Perm]] = []

    def level_gens(self, i: int) -> list[Perm]:
        prefix = self.base[:i]
        return [s for s in self.strong if all(s.images[b] == b for b in prefix)]

    def compute_level(self, i: int) -> None:
        gens = self.level_gens(i)
        b = self.base[i]
        trans = {b: Perm.identity(self.degree)}
        queue = deque([b])
        while queue:
            p = queue.popleft()
            u = trans[p]
            for s in gens:
                q = s.images[p]
                if q not in trans:
                    trans[q] = u * s
                    queue.append(q)
        self.trans[i] = trans
        self.trans_inv[i] = {p: u.inverse() for p, u in trans.items()}

    def add_base_point(self, point: int) -> None:
        self.base.append(point)
        self.trans.append({})
        self.trans_inv.append({})

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for j in range(start, len(self.base)):
            x = g.images[self.base[j]]
            u_inv = self.trans_inv[j].get(x)
            if u_inv is None:
                return g, j
            g = g * u_inv
        return g, len(self.base)

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)


def _schreier_sims(generators: Sequence[Perm], degree: int, base: Sequence[int] = ()) -> _Chain:
    chain = _Chain(degree)
    for b in base:
        chain.add_base_point(b)
    gens = [g for g in generators if not g.is_identity()]
    for g in gens:
        if all(g.images[b] == b for b in chain.base):
            chain.add_base_point(g.first_moved())
    chain.strong = list(gens)
    i = len(chain.base) - 1
    while i >= 0:
        chain.compute_level(i)
        restart = None
        gens_i = chain.level_gens(i)
        trans = chain.trans[i]
        trans_inv = chain.trans_inv[i]
        for p, u in list(trans.items()):
            for s in gens_i:
                schreier = u * s * trans_inv[s.images[p]]
                if schreier.is_identity():
                    continue
                h, j = chain.strip(schreier, i + 1)
                if h.is_identity():
                    continue
                if j == len(chain.base):
                    chain.add_base_point(h.first_moved())
                chain.strong.append(h)
                restart = j
                break
            if restart is not None:
                break
        if restart is None:
            i -= 1
        else:
            i = restart
    return chain


class PermGroup:
    """Subgroup of the symmetric group generated by ``generators``.

    ``order`` may be passed when it is known from construction (e.g. regular
    groups built from a Cayley table); the chain is then only built if
    membership is asked for. ``base`` optionally fixes a base prefix.
    """

    def __init__(self, generators: Iterable[Perm], degree: Optional[int] = None,
                 order: Optional[int] = None, base: Sequence[int] = ()):
        generators = tuple(generators)
        if degree is None:
            if not generators:
                raise ValueError("degree required for a group with no generators")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree %d != %d" % (g.degree, degree))
        self.degree = degree
        self.generators = generators
        self._order = order
        self._base = tuple(base)
        self._chain: Optional[_Chain] = None

    def __repr__(self) -> str:
        return "PermGroup(degree=%d, generators=[%s])" % (
            self.degree, ", ".join(map(str, self.generators)))

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _schreier_sims(self.generators, self.degree, self._base)
            if self._order is not None and self._order != self._chain.order():
                raise AssertionError("order hint %d disagrees with chain order %d"
                                     % (self._order, self._chain.order()))
        return self._chain

    def build_chain(self) -> "PermGroup":
        self.chain
        return self

    def order(self) -> int:
        if self._order is None:
            self._order = self.chain.order()
        return self._order

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        h, j = self.chain.strip(p)
        return j == len(self.chain.base) and h.is_identity()

    __contains__ = contains

    def orbit(self, x: int) -> set[int]:
        seen = {x}
        queue = deque([x])
        while queue:
            p = queue.popleft()
            for s in self.generators:
                q = s.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    def orbits(self) -> list[set[int]]:
        out, seen = [], set()
        for x in range(self.degree):
            if x not in seen:
                orb = self.orbit(x)
                seen |= orb
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def is_full_symmetric(self) -> bool:
        return self.order() == math.factorial(self.degree)

    def elements(self) -> Iterator[Perm]:
        """Every element exactly once, via products of transversals."""
        chain = self.chain
        ident = Perm.identity(self.degree)
        if not chain.base:
            yield ident
            return
        levels = [list(t.values()) for t in reversed(chain.trans)]
        for combo in itertools.product(*levels):
            g = ident
            for u in combo:
                g = g * u
            yield g

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_group(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a, b in itertools.combinations(gens, 2))


def symmetric_group(degree: int) -> PermGroup:
    if degree < 2:
        return PermGroup([], degree=degree, order=1)
    gens = [Perm.from_cycles([list(range(degree))], degree)]
    if degree > 2:
        gens.append(Perm.from_cycles([[0, 1]], degree))
    return PermGroup(gens, order=math.factorial(degree))


def alternating_group(degree: int) -> PermGroup:
    if degree < 3:
        return PermGroup([], degree=max(degree, 1), order=1)
    gens = [Perm.from_cycles([[0, 1, i]], degree) for i in range(2, degree)]
    return PermGroup(gens, order=math.factorial(degree) // 2)


def order(g: PermGroup) -> int:
    return g.order()


def contains(g: PermGroup, p: Perm) -> bool:
    return g.contains(p)


def orbit(g: PermGroup, x: int) -> set[int]:
    return g.orbit(x)


def is_regular(g: PermGroup) -> bool:
    return g.is_regular()


def build_chain(g: PermGroup) -> PermGroup:
    return g.build_chain()


def _group_from_elements(degree: int, elements: Iterable[Perm]) -> PermGroup:
    gens: list[Perm] = []
    current = PermGroup([], degree=degree, order=1)
    for p in elements:
        if not current.contains(p):
            gens.append(p)
            current = PermGroup(gens, degree=degree)
    return current


def centralizer_in_sym(g: PermGroup, max_degree: int = DEFAULT_CENTRALIZER_DEGREE) -> PermGroup:
    """Centralizer of ``g`` in the full symmetric group of its degree.

    Backtrack over images of base points; a commuting permutation ``c``
    satisfies ``c(x^s) = c(x)^s`` for every generator ``s``, so each choice
    propagates along the orbit of the chosen point. Along the identity path
    images already in the orbit of the generators found so far are skipped,
    so the search returns a generating set rather than every element.
    """
    n = g.degree
    if n > max_degree:
        raise BudgetExceeded("centralizer search degree %d exceeds bound %d" % (n, max_degree))
    gens = [s.images for s in g.generators if not s.is_identity()]
    assign = [-1] * n
    used = [False] * n
    found: list[tuple[int, Perm]] = []

    def propagate(x: int, y: int, trail: list[int]) -> bool:
        if used[y]:
            return False
        assign[x] = y
        used[y] = True
        trail.append(x)
        queue = deque([x])
        while queue:
            a = queue.popleft()
            b = assign[a]
            for s in gens:
                a2, b2 = s[a], s[b]
                if assign[a2] == -1:
                    if used[b2]:
                        return False
                    assign[a2] = b2
                    used[b2] = True
                    trail.append(a2)
                    queue.append(a2)
                elif assign[a2] != b2:
                    return False
        return True

    def undo(trail: list[int]) -> None:
        for x in trail:
            used[assign[x]] = False
            assign[x] = -1

    def next_point() -> int:
        for x in range(n):
            if assign[x] == -1:
                return x
        return -1

    def find_one() -> Optional[Perm]:
        x = next_point()
        if x < 0:
            return Perm(assign, check=False)
        for y in range(n):
            if used[y]:
                continue
            trail: list[int] = []
            if propagate(x, y, trail):
                sol = find_one()
                if sol is not None:
                    undo(trail)
                    return sol
            undo(trail)
        return None

    def search_identity_path(depth: int) -> None:
        x = next_point()
        if x < 0:
            return
        trail: list[int] = []
        if not propagate(x, x, trail):
            raise AssertionError("identity assignment inconsistent")
        search_identity_path(depth + 1)
        undo(trail)
        for y in range(n):
            if y == x or used[y]:
                continue
            deeper = [p for d, p in found if d >= depth]
            if deeper and y in _orbit_of(x, deeper):
                continue
            trail = []
            if propagate(x, y, trail):
                sol = find_one()
                if sol is not None:
                    found.append((depth, sol))
            undo(trail)

    search_identity_path(0)
    gens_out = [p for _, p in found]
    return PermGroup(gens_out, degree=n) if gens_out else PermGroup([], degree=n, order=1)


def _orbit_of(x: int, perms: Sequence[Perm]) -> set[int]:
    seen = {x}
    queue = deque([x])
    while queue:
        p = queue.popleft()
        for s in perms:
            q = s.images[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def _iter_elements(a: PermGroup, max_order: int) -> Iterator[Perm]:
    if a.degree <= 8 and a.is_full_symmetric():
        for images in itertools.permutations(range(a.degree)):
            yield Perm(images, check=False)
        return
    if a.order() > max_order:
        raise BudgetExceeded("group order %d exceeds enumeration bound %d" % (a.order(), max_order))
    yield from a.elements()


def normalizer_in(a: PermGroup, h: PermGroup, max_order: int = DEFAULT_NORMALIZER_ORDER) -> PermGroup:
    """N_a(h) by enumerating ``a`` (bounded) and testing generator conjugates."""
    if not h.is_subgroup_of(a):
        raise ValueError("h is not a subgroup of a")
    hgens = [s for s in h.generators if not s.is_identity()]
    h.build_chain()

    def normalizes(p: Perm) -> bool:
        p_inv = p.inverse()
        return all(h.contains(p_inv * s * p) for s in hgens)

    return _group_from_elements(a.degree, (p for p in _iter_elements(a, max_order) if normalizes(p)))


def is_normal(a: PermGroup, h: PermGroup) -> bool:
    h.build_chain()
    for s in a.generators:
        s_inv = s.inverse()
        if not all(h.contains(s_inv * k * s) for k in h.generators):
            return False
    return True


def normal_closure(a: PermGroup, h: PermGroup) -> PermGroup:
    gens = [k for k in h.generators if not k.is_identity()]
    current = PermGroup(gens, degree=a.degree) if gens else PermGroup([], degree=a.degree, order=1)
    changed = True
    while changed:
        changed = False
        for k in list(current.generators):
            for s in a.generators:
                c = s.inverse() * k * s
                if not current.contains(c):
                    gens.append(c)
                    current = PermGroup(gens, degree=a.degree)
                    changed = True
    return current


def commutator(a: Perm, b: Perm) -> Perm:
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def derived_subgroup(g: PermGroup) -> PermGroup:
    comms = [commutator(a, b) for a, b in itertools.combinations(g.generators, 2)]
    comms = [c for c in comms if not c.is_identity()]
    seed = PermGroup(comms, degree=g.degree) if comms else PermGroup([], degree=g.degree, order=1)
    return normal_closure(g, seed)


def center(g: PermGroup, max_order: int = 10**6) -> PermGroup:
    gens = g.generators
    members = (p for p in _iter_elements(g, max_order)
               if all(p * s == s * p for s in gens))
    return _group_from_elements(g.degree, members)
