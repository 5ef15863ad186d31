"""Named groups and the group-spec grammar.

    spec := name ':' int (',' int)*
          | 'direct(' spec ',' spec ')'
          | 'central(' spec ',' spec [';' pairs] ')'
          | 'opposite(' spec ')'
    pairs := int '=' int (',' int '=' int)*

Names: cyclic:n, dihedral:N (order N), quaternion:N (order N = 2^k, k >= 3),
sym:n (n <= 6), alt:n (n <= 7), sl:2,q and psl:2,q (q in 4, 5, 7, 9),
psl:3,2, and ``trivial``.
"""

from __future__ import annotations

import functools
import itertools
from typing import Optional

import numpy as np

from .errors import SpecParseError
from .group_model import (CayleyGroup, _check_order, CentralProductSpec, central_product, direct_product,
                          opposite)
from .perm_core import Perm, format_perm


class GF:
    """The field with q = p^k elements, k <= 2, as integer codes 0..q-1."""

    _IRREDUCIBLE = {4: (1, 1), 9: (0, 1)}  # (c1, c0) with t^2 = -(c1 t + c0): x^2+x+1, x^2+1

    def __init__(self, q: int):
        primes = {2: (2, 1), 3: (3, 1), 5: (5, 1), 7: (7, 1), 4: (2, 2), 9: (3, 2)}
        if q not in primes:
            raise SpecParseError("unsupported field size %d" % q)
        self.q = q
        self.p, self.k = primes[q]
        p = self.p
        elems = [(a, b) for b in range(p) for a in range(p)] if self.k == 2 else [(a, 0) for a in range(p)]
        code = {e: i for i, e in enumerate(elems)}
        self.add = np.zeros((q, q), dtype=np.int64)
        self.mul = np.zeros((q, q), dtype=np.int64)
        c1, c0 = self._IRREDUCIBLE.get(q, (0, 0))
        for (i, (a0, a1)), (j, (b0, b1)) in itertools.product(enumerate(elems), repeat=2):
            self.add[i, j] = code[((a0 + b0) % p, (a1 + b1) % p)]
            # (a0 + a1 t)(b0 + b1 t) with t^2 = -c1 t - c0
            r0 = a0 * b0 + a1 * b1 * (-c0)
            r1 = a0 * b1 + a1 * b0 + a1 * b1 * (-c1)
            self.mul[i, j] = code[(r0 % p, r1 % p)]
        self.neg = np.array([int(np.flatnonzero(self.add[i] == 0)[0]) for i in range(q)])


def _perm_group_table(perms: list[tuple[int, ...]], provenance: str) -> CayleyGroup:
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            mul[i, j] = index[tuple(b[x] for x in a)]
    labels = [format_perm(Perm(p, check=False)) for p in perms]
    return CayleyGroup(mul, labels=labels, provenance=provenance)


def _matrix_group_table(elements: list[tuple], product, provenance: str) -> CayleyGroup:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mul[i, j] = index[product(a, b)]
    return CayleyGroup(mul, labels=[str(e) for e in elements], provenance=provenance)


def cyclic(n: int) -> CayleyGroup:
    if n < 1:
        raise SpecParseError("cyclic order must be positive")
    _check_order(n)
    ar = np.arange(n)
    labels = ["1"] + ["a^%d" % i for i in range(1, n)]
    return CayleyGroup((ar[:, None] + ar[None, :]) % n, labels=labels, provenance="cyclic:%d" % n)


def dihedral(order: int) -> CayleyGroup:
    """r^i s^e at index i + m e, with s r s = r^-1."""
    if order < 2 or order % 2:
        raise SpecParseError("dihedral order must be even and >= 2")
    _check_order(order)
    m = order // 2
    mul = np.empty((order, order), dtype=np.int64)
    for e in range(2):
        for i in range(m):
            for f in range(2):
                for j in range(m):
                    k = (i + (j if e == 0 else -j)) % m
                    mul[i + m * e, j + m * f] = k + m * ((e + f) % 2)
    labels = [("r^%d" % i if i else "1") if e == 0 else ("r^%d s" % i if i else "s")
              for e in range(2) for i in range(m)]
    return CayleyGroup(mul, labels=labels, provenance="dihedral:%d" % order)


def quaternion(order: int) -> CayleyGroup:
    """a^i b^e at index i + 2m e, with a^{2m} = 1, b^2 = a^m, b^-1 a b = a^-1."""
    if order < 8 or order & (order - 1):
        raise SpecParseError("quaternion order must be a power of 2, at least 8")
    _check_order(order)
    m = order // 4
    h = 2 * m
    mul = np.empty((order, order), dtype=np.int64)
    for e in range(2):
        for i in range(h):
            for f in range(2):
                for j in range(h):
                    if e == 0:
                        mul[i + h * e, j + h * f] = (i + j) % h + h * f
                    elif f == 0:
                        mul[i + h * e, j + h * f] = (i - j) % h + h
                    else:
                        mul[i + h * e, j + h * f] = (i - j + m) % h
    labels = [("a^%d" % i if i else "1") if e == 0 else ("a^%d b" % i if i else "b")
              for e in range(2) for i in range(h)]
    return CayleyGroup(mul, labels=labels, provenance="quaternion:%d" % order)


def symmetric(n: int) -> CayleyGroup:
    if not 1 <= n <= 6:
        raise SpecParseError("sym:n supports 1 <= n <= 6")
    return _perm_group_table(list(itertools.permutations(range(n))), "sym:%d" % n)


def _is_even(p: tuple[int, ...]) -> bool:
    return sum(len(c) - 1 for c in Perm(p, check=False).cycles()) % 2 == 0


def alternating(n: int) -> CayleyGroup:
    if not 1 <= n <= 7:
        raise SpecParseError("alt:n supports 1 <= n <= 7")
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _perm_group_table(perms, "alt:%d" % n)


def _sl2_elements(F: GF) -> list[tuple[int, int, int, int]]:
    one = 1
    out = []
    for a, b, c, d in itertools.product(range(F.q), repeat=4):
        det = F.add[F.mul[a, d], F.neg[F.mul[b, c]]]
        if det == one:
            out.append((a, b, c, d))
    ident = (1, 0, 0, 1)
    out.remove(ident)
    return [ident] + out


def _mat2_product(F: GF):
    def prod(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return (int(F.add[F.mul[a, e], F.mul[b, g]]), int(F.add[F.mul[a, f], F.mul[b, h]]),
                int(F.add[F.mul[c, e], F.mul[d, g]]), int(F.add[F.mul[c, f], F.mul[d, h]]))
    return prod


def special_linear_2(q: int) -> CayleyGroup:
    if q not in (4, 5, 7, 9):
        raise SpecParseError("sl:2,q supports q in 4, 5, 7, 9")
    F = GF(q)
    return _matrix_group_table(_sl2_elements(F), _mat2_product(F), "sl:2,%d" % q)


def projective_special_linear_2(q: int) -> CayleyGroup:
    if q not in (4, 5, 7, 9):
        raise SpecParseError("psl:2,q supports q in 4, 5, 7, 9")
    F = GF(q)
    prod = _mat2_product(F)

    def canon(m):
        neg = tuple(int(F.neg[x]) for x in m)
        return min(m, neg)

    reps = list(dict.fromkeys(canon(m) for m in _sl2_elements(F)))
    return _matrix_group_table(reps, lambda x, y: canon(prod(x, y)), "psl:2,%d" % q)


def psl_3_2() -> CayleyGroup:
    """GL(3,2) = PSL(3,2) as 3x3 invertible matrices over F2 (rows as bit triples)."""

    def mat_mul(x, y):
        return tuple(sum(x[3 * i + k] * y[3 * k + j] for k in range(3)) % 2
                     for i in range(3) for j in range(3))

    def det(m):
        a, b, c, d, e, f, g, h, i = m
        return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % 2

    mats = [m for m in itertools.product((0, 1), repeat=9) if det(m)]
    ident = (1, 0, 0, 0, 1, 0, 0, 0, 1)
    mats.remove(ident)
    return _matrix_group_table([ident] + mats, mat_mul, "psl:3,2")


_FAMILIES = {
    "cyclic": (1, lambda a: cyclic(a[0])),
    "dihedral": (1, lambda a: dihedral(a[0])),
    "quaternion": (1, lambda a: quaternion(a[0])),
    "sym": (1, lambda a: symmetric(a[0])),
    "alt": (1, lambda a: alternating(a[0])),
    "sl": (2, lambda a: _linear(a, special_linear_2)),
    "psl": (2, lambda a: psl_3_2() if tuple(a) == (3, 2) else _linear(a, projective_special_linear_2)),
}


def _linear(args, builder):
    if args[0] != 2:
        raise SpecParseError("only 2-dimensional linear groups (and psl:3,2) are supported")
    return builder(args[1])


@functools.lru_cache(maxsize=64)
def _named(name: str, args: tuple[int, ...]) -> CayleyGroup:
    if name == "trivial":
        if args:
            raise SpecParseError("trivial takes no parameters")
        g = cyclic(1)
        g.provenance = "trivial"
        return g
    if name not in _FAMILIES:
        raise SpecParseError("unknown group family %r" % name)
    arity, build = _FAMILIES[name]
    if len(args) != arity:
        raise SpecParseError("%s expects %d parameter(s)" % (name, arity))
    return build(list(args))


class _Parser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def error(self, msg: str):
        raise SpecParseError("%s at position %d in %r" % (msg, self.pos, self.text))

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str) -> None:
        if not self.text.startswith(s, self.pos):
            self.error("expected %r" % s)
        self.pos += len(s)

    def name(self) -> str:
        start = self.pos
        while self.peek().isalpha() or self.peek() == "_":
            self.pos += 1
        if start == self.pos:
            self.error("expected a group name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def spec(self) -> tuple[CayleyGroup, str]:
        start = self.pos
        name = self.name()
        if name in ("direct", "central", "opposite") and self.peek() == "(":
            self.expect("(")
            left, lsrc = self.spec()
            if name == "opposite":
                self.expect(")")
                g = opposite(left)
                g.provenance = "opposite(%s)" % lsrc
                return g, g.provenance
            self.expect(",")
            right, rsrc = self.spec()
            if name == "direct":
                self.expect(")")
                src = "direct(%s,%s)" % (lsrc, rsrc)
                return direct_product(left, right, provenance=src), src
            pairs = None
            if self.peek() == ";":
                self.pos += 1
                pairs = {}
                while True:
                    a = self.integer()
                    self.expect("=")
                    pairs[a] = self.integer()
                    if self.peek() != ",":
                        break
                    self.pos += 1
            self.expect(")")
            amalgam = pairs if pairs is not None else default_amalgam(left, right)
            src = self.text[start:self.pos]
            try:
                cp = central_product(CentralProductSpec(left, right, amalgam), provenance=src)
            except ValueError as exc:
                raise SpecParseError(str(exc)) from exc
            return cp.group, src
        args = []
        if self.peek() == ":":
            self.pos += 1
            args.append(self.integer())
            while self.peek() == "," and self.text[self.pos + 1:self.pos + 2].isdigit():
                self.pos += 1
                args.append(self.integer())
        src = self.text[start:self.pos]
        return _named(name, tuple(args)), src


def default_amalgam(left: CayleyGroup, right: CayleyGroup) -> dict[int, int]:
    """Pair the unique central subgroups of a common prime order, if exactly one such prime."""

    def prime_subgroups(g: CayleyGroup) -> dict[int, list[frozenset]]:
        orders = g.element_orders()
        out: dict[int, set] = {}
        for z in g.center().members:
            o = int(orders[z])
            if o > 1 and all(o % d for d in range(2, int(o ** 0.5) + 1)):
                out.setdefault(o, set()).add(frozenset(np.flatnonzero(g.closure([z])).tolist()))
        return {p: sorted(v, key=min) for p, v in out.items()}

    lp, rp = prime_subgroups(left), prime_subgroups(right)
    common = [p for p in lp if p in rp and len(lp[p]) == 1 and len(rp[p]) == 1]
    if len(common) != 1:
        raise SpecParseError("default amalgam is ambiguous or empty; give explicit pairs")
    p = common[0]
    z1 = min(x for x in lp[p][0] if x != 0)
    z2 = min(x for x in rp[p][0] if x != 0)
    return {z1: z2}


def parse_group_spec(text: str) -> CayleyGroup:
    parser = _Parser(text)
    group, _ = parser.spec()
    if parser.pos != len(parser.text):
        parser.error("trailing input")
    # cached catalog entries skip the construction-time check
    _check_order(group.n)
    return group


@functools.lru_cache(maxsize=32)
def named_group(spec: str) -> CayleyGroup:
    return parse_group_spec(spec)


def catalog_sample(max_order: Optional[int] = None) -> list[str]:
    """A fixed representative list of catalog specs, optionally capped by order."""
    specs = (["trivial"] + ["cyclic:%d" % n for n in (2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 30)]
             + ["dihedral:%d" % n for n in (4, 6, 8, 10, 12, 16, 20, 24)]
             + ["quaternion:%d" % n for n in (8, 16, 32)]
             + ["sym:%d" % n for n in (3, 4, 5)] + ["alt:%d" % n for n in (4, 5)]
             + ["sl:2,4", "sl:2,5", "psl:2,4", "psl:2,5", "psl:2,7", "psl:3,2", "sl:2,7",
                "psl:2,9", "sym:6", "alt:6", "sl:2,9"])
    sizes = {"sl:2,4": 60, "sl:2,5": 120, "psl:2,4": 60, "psl:2,5": 60, "psl:2,7": 168,
             "psl:3,2": 168, "sl:2,7": 336, "psl:2,9": 360, "sym:6": 720, "alt:6": 360,
             "sl:2,9": 720, "sym:5": 120, "alt:5": 60, "sym:4": 24, "sym:3": 6, "alt:4": 12}
    if max_order is None:
        return specs

    def size(s: str) -> int:
        if s in sizes:
            return sizes[s]
        if s == "trivial":
            return 1
        return int(s.split(":")[1])

    return [s for s in specs if size(s) <= max_order]
