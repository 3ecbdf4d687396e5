"""Group providers, conjugacy oracles and the FC-center.

Every provider exposes canonical hashable, mutually comparable elements,
``mul``/``inv``/``identity``, a finite generator list, and a conjugacy
oracle returning :class:`FiniteClass` or :class:`InfiniteClass`.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence

from .errors import NotAGroup, ParseError
from .finmod import ComputableModule, Generator
from .scalar import QQ, Field

__all__ = [
    "FiniteClass",
    "InfiniteClass",
    "GroupProvider",
    "FiniteGroup",
    "IntegerGroup",
    "InfiniteDihedral",
    "Heisenberg",
    "FreeGroup2",
    "DirectProduct",
    "fc_center_membership",
    "fc_center_window",
    "group_ad_module",
    "parse_group",
    "permutation_group",
    "cyclic",
    "dihedral",
    "dicyclic",
    "small_groups",
]


@dataclass(frozen=True)
class FiniteClass:
    size: int
    conjugates: tuple

    finite = True


@dataclass(frozen=True)
class InfiniteClass:
    reason: str

    finite = False


class GroupProvider:
    name = "G"

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def generators(self) -> list:
        raise NotImplementedError

    def conjugacy(self, g):
        raise NotImplementedError

    def format(self, g) -> str:
        return str(g)

    def conj(self, s, g):
        return self.mul(self.mul(s, g), self.inv(s))

    def ball(self, length: int) -> list:
        """Elements of word length ≤ length, in BFS order then sorted."""
        e = self.identity()
        seen = {e: 0}
        frontier = [e]
        steps = []
        for s in self.generators():
            steps.append(s)
            si = self.inv(s)
            if si != s:
                steps.append(si)
        for d in range(1, length + 1):
            nxt = []
            for g in frontier:
                for s in steps:
                    h = self.mul(g, s)
                    if h not in seen:
                        seen[h] = d
                        nxt.append(h)
            frontier = nxt
        return sorted(seen, key=lambda g: (seen[g], g))

    def word_length(self, g, cap: int = 64) -> int | None:
        for L in range(cap + 1):
            if g in set(self.ball(L)):
                return L
        return None

    def __repr__(self):
        return f"<group {self.name}>"


def _bfs_class(G: GroupProvider, g, cap: int | None = None):
    """Conjugacy class by closing {g} under conjugation by generators and
    their inverses; valid for finite groups."""
    steps = []
    for s in G.generators():
        steps += [s, G.inv(s)]
    seen = {g}
    todo = deque([g])
    while todo:
        x = todo.popleft()
        for s in steps:
            y = G.conj(s, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
                if cap is not None and len(seen) > cap:
                    return None
    return tuple(sorted(seen))


class FiniteGroup(GroupProvider):
    """A finite group from explicit elements and a multiplication function."""

    def __init__(self, name: str, elements: Sequence[Hashable], mul, gens: Sequence, fmt=None):
        self.name = name
        self.elements = sorted(elements)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self._mul = mul
        self._gens = list(gens)
        self._fmt = fmt or str
        e = [x for x in self.elements if all(mul(x, y) == y == mul(y, x) for y in self.elements)]
        if not e:
            raise NotAGroup(f"{name}: no identity")
        self._e = e[0]
        self._inv = {}
        for x in self.elements:
            for y in self.elements:
                if mul(x, y) == self._e:
                    self._inv[x] = y
                    break
            else:
                raise NotAGroup(f"{name}: {x!r} has no inverse")

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self):
        return self._e

    def mul(self, a, b):
        return self._mul(a, b)

    def inv(self, a):
        return self._inv[a]

    def generators(self):
        return list(self._gens)

    def conjugacy(self, g):
        cls = _bfs_class(self, g)
        return FiniteClass(len(cls), cls)

    def format(self, g):
        return self._fmt(g)

    def table(self) -> list[list[int]]:
        idx = self._index
        return [[idx[self._mul(a, b)] for b in self.elements] for a in self.elements]

    def labels(self) -> list[str]:
        return [self.format(g) for g in self.elements]

    def index(self, g) -> int:
        return self._index[g]

    def element_order(self, g) -> int:
        k, x = 1, g
        while x != self._e:
            x = self._mul(x, g)
            k += 1
        return k

    def order_profile(self) -> tuple:
        return tuple(sorted(self.element_order(g) for g in self.elements))

    def is_abelian(self) -> bool:
        return all(self._mul(a, b) == self._mul(b, a) for a in self.elements for b in self.elements)


# -- permutations -------------------------------------------------------------------------


def _perm_mul(a, b):
    # (a·b)(i) = a(b(i)): apply b first
    return tuple(a[i] for i in b)


def _perm_format(p) -> str:
    seen = set()
    cycles = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append("(" + "".join(str(x + 1) if len(p) < 10 else f"{x + 1} " for x in cyc).strip() + ")")
    return "".join(cycles) or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> tuple:
    """Cycle notation on points 1..n, e.g. ``(123)(45)`` or ``(1 10)``."""
    text = text.strip()
    if text in ("", "()", "1", "e"):
        if degree is None:
            raise ParseError("identity permutation needs a degree")
        return tuple(range(degree))
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos : m.start()].strip():
            raise ParseError(f"unexpected text {text[pos:m.start()]!r} in permutation", 1, pos + 1)
        body = m.group(1).strip()
        pts = body.split() if (" " in body or "," in body) else list(body)
        pts = [p.strip(",") for p in pts if p.strip(",")]
        try:
            cycles.append([int(p) - 1 for p in pts])
        except ValueError:
            raise ParseError(f"bad cycle {m.group(0)!r}", 1, m.start() + 1) from None
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected text {text[pos:]!r} in permutation", 1, pos + 1)
    n = max([max(c) + 1 for c in cycles if c] + [degree or 0])
    if any(p < 0 for c in cycles for p in c):
        raise ParseError("points are numbered from 1")
    perm = list(range(n))
    # rightmost cycle acts first
    for c in reversed(cycles):
        step = list(range(n))
        for i, p in enumerate(c):
            step[p] = c[(i + 1) % len(c)]
        perm = [step[perm[i]] for i in range(n)]
    return tuple(perm)


def permutation_group(gens: Sequence, name: str | None = None) -> FiniteGroup:
    """Closure of permutations (tuples or cycle strings) under composition."""
    perms = [g if isinstance(g, tuple) else None for g in gens]
    if any(p is None for p in perms):
        parsed = [parse_permutation(g) if isinstance(g, str) else tuple(g) for g in gens]
    else:
        parsed = perms
    n = max(len(p) for p in parsed) if parsed else 1
    parsed = [tuple(p) + tuple(range(len(p), n)) for p in parsed]
    e = tuple(range(n))
    seen = {e}
    todo = deque([e])
    while todo:
        x = todo.popleft()
        for s in parsed:
            y = _perm_mul(x, s)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return FiniteGroup(name or "perm:" + ",".join(_perm_format(p) for p in parsed), seen, _perm_mul, parsed, _perm_format)


# -- small groups ----------------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(f"C{n}", range(n), lambda a, b: (a + b) % n, [1 % n], lambda a: _pow("a", a) or "1")


def _zn_product(name: str, mods: Sequence[int]) -> FiniteGroup:
    els = list(itertools.product(*[range(m) for m in mods]))
    gens = [tuple(1 if i == j else 0 for i in range(len(mods))) for j in range(len(mods))]
    return FiniteGroup(name, els, lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods)), gens)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon: r^k s^e as (k, e) with s r s = r⁻¹."""

    def mul(a, b):
        k1, e1 = a
        k2, e2 = b
        return ((k1 + (-1) ** e1 * k2) % n, (e1 + e2) % 2)

    def fmt(g):
        k, e = g
        return _pow("r", k) + ("s" if e else "") or "1"

    return FiniteGroup(f"D{n}", [(k, e) for k in range(n) for e in range(2)], mul, [(1, 0), (0, 1)], fmt)


def dicyclic(n: int) -> FiniteGroup:
    """⟨a, x | a^{2n} = 1, x² = a^n, x a x⁻¹ = a⁻¹⟩ of order 4n (Q8 for n = 2)."""
    m = 2 * n

    def mul(u, v):
        i, j = u
        k, l = v
        i2 = (i + (-1) ** j * k) % m
        if j and l:
            return ((i2 + n) % m, 0)
        return (i2, (j + l) % 2)

    def fmt(g):
        i, j = g
        return _pow("a", i) + ("x" if j else "") or "1"

    return FiniteGroup(f"Dic{n}", [(i, j) for i in range(m) for j in range(2)], mul, [(1, 0), (0, 1)], fmt)


def small_groups() -> dict[str, FiniteGroup]:
    """One representative of each of the 24 groups of order ≤ 12."""
    out: dict[str, FiniteGroup] = {}
    for n in range(1, 13):
        out[f"C{n}"] = cyclic(n)
    out["C2xC2"] = _zn_product("C2xC2", [2, 2])
    out["C4xC2"] = _zn_product("C4xC2", [4, 2])
    out["C2xC2xC2"] = _zn_product("C2xC2xC2", [2, 2, 2])
    out["C3xC3"] = _zn_product("C3xC3", [3, 3])
    out["C6xC2"] = _zn_product("C6xC2", [6, 2])
    out["S3"] = permutation_group(["(12)", "(123)"], "S3")
    out["D4"] = dihedral(4)
    out["Q8"] = dicyclic(2)
    out["Q8"].name = "Q8"
    out["D5"] = dihedral(5)
    out["A4"] = permutation_group(["(123)", "(12)(34)"], "A4")
    out["D6"] = dihedral(6)
    out["Dic3"] = dicyclic(3)
    return out


# -- infinite providers -----------------------------------------------------------------


class IntegerGroup(GroupProvider):
    name = "Z"

    def identity(self):
        return 0

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def generators(self):
        return [1]

    def conjugacy(self, g):
        return FiniteClass(1, (g,))

    def format(self, g):
        return _pow("t", g) or "1"


class InfiniteDihedral(GroupProvider):
    """D∞ = ⟨r, s | s² = 1, s r s = r⁻¹⟩; elements r^k s^e as (k, e)."""

    name = "dinf"

    def identity(self):
        return (0, 0)

    def mul(self, a, b):
        k1, e1 = a
        k2, e2 = b
        return (k1 + (-1) ** e1 * k2, (e1 + e2) % 2)

    def inv(self, a):
        k, e = a
        return (-k, 0) if e == 0 else a

    def generators(self):
        return [(1, 0), (0, 1)]

    def conjugacy(self, g):
        k, e = g
        if e == 0:
            cls = tuple(sorted({(k, 0), (-k, 0)}))
            return FiniteClass(len(cls), cls)
        # r^m (r^k s) r^{-m} = r^{k+2m} s: pairwise distinct
        return InfiniteClass("reflection: conjugates r^(k+2m)s are pairwise distinct")

    def format(self, g):
        k, e = g
        return _pow("r", k) + ("s" if e else "") or "1"


class Heisenberg(GroupProvider):
    """Integer upper unitriangular 3×3 matrices as (a, b, c), i.e.
    [[1, a, c], [0, 1, b], [0, 0, 1]]."""

    name = "heis"

    def identity(self):
        return (0, 0, 0)

    def mul(self, x, y):
        a, b, c = x
        a2, b2, c2 = y
        return (a + a2, b + b2, c + c2 + a * b2)

    def inv(self, x):
        a, b, c = x
        return (-a, -b, -c + a * b)

    def generators(self):
        return [(1, 0, 0), (0, 1, 0)]

    def conjugacy(self, g):
        a, b, _ = g
        if a == 0 and b == 0:
            return FiniteClass(1, (g,))
        # conjugating by x^m y^l shifts c by m·b − l·a
        return InfiniteClass("non-central: conjugates shift the corner entry by multiples of gcd(a, b)")


class FreeGroup2(GroupProvider):
    """Free group on x = 1, y = 2; reduced words as tuples of ±1, ±2."""

    name = "free2"

    def identity(self):
        return ()

    def mul(self, a, b):
        out = list(a)
        for s in b:
            if out and out[-1] == -s:
                out.pop()
            else:
                out.append(s)
        return tuple(out)

    def inv(self, a):
        return tuple(-s for s in reversed(a))

    def generators(self):
        return [(1,), (2,)]

    def conjugacy(self, g):
        if not g:
            return FiniteClass(1, (g,))
        return InfiniteClass("nontrivial element of a free group of rank 2")

    def format(self, g):
        names = {1: "x", -1: "X", 2: "y", -2: "Y"}
        return "".join(names[s] for s in g) or "1"


class DirectProduct(GroupProvider):
    def __init__(self, A: GroupProvider, B: GroupProvider):
        self.A, self.B = A, B
        self.name = f"{A.name}x{B.name}"

    def identity(self):
        return (self.A.identity(), self.B.identity())

    def mul(self, x, y):
        return (self.A.mul(x[0], y[0]), self.B.mul(x[1], y[1]))

    def inv(self, x):
        return (self.A.inv(x[0]), self.B.inv(x[1]))

    def generators(self):
        ea, eb = self.A.identity(), self.B.identity()
        return [(s, eb) for s in self.A.generators()] + [(ea, t) for t in self.B.generators()]

    def conjugacy(self, g):
        ca = self.A.conjugacy(g[0])
        cb = self.B.conjugacy(g[1])
        if not ca.finite:
            return InfiniteClass(f"first factor: {ca.reason}")
        if not cb.finite:
            return InfiniteClass(f"second factor: {cb.reason}")
        cls = tuple(sorted(itertools.product(ca.conjugates, cb.conjugates)))
        return FiniteClass(len(cls), cls)

    def format(self, g):
        return f"({self.A.format(g[0])}, {self.B.format(g[1])})"


def _pow(base: str, k: int) -> str:
    if k == 0:
        return ""
    return base if k == 1 else f"{base}^{k}"


# -- FC-center ----------------------------------------------------------------------------


def fc_center_membership(G: GroupProvider, g):
    """Finite class (with its size) or an Infinite certificate."""
    return G.conjugacy(g)


def fc_center_window(G: GroupProvider, length: int) -> list:
    """Elements of word length ≤ length with finitely many conjugates."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    return [g for g in G.ball(length) if G.conjugacy(g).finite]


def group_ad_module(G: GroupProvider, field: Field = QQ) -> ComputableModule:
    """kG under conjugation: generators act by g ↦ s g s⁻¹ for s and s⁻¹."""
    gens = []
    for i, s in enumerate(G.generators()):
        si = G.inv(s)
        gens.append(Generator(f"s{i}", (lambda g, s=s: {G.conj(s, g): field.one}), grouplike=True))
        gens.append(Generator(f"s{i}^-1", (lambda g, s=si: {G.conj(s, g): field.one}), grouplike=True))
    return ComputableModule(field, gens, name=f"ad k{G.name}", key_format=G.format)


# -- descriptors ----------------------------------------------------------------------------


def _split_top(text: str) -> list[str]:
    """Split at commas not inside parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def parse_group(desc: str) -> GroupProvider:
    """``dinf``, ``heis``, ``free2``, ``z``, ``cyclic:n``, ``perm:<cycles>``,
    a small-group name such as ``D4``, or ``prod:<a>,<b>``."""
    desc = desc.strip()
    low = desc.lower()
    if low == "dinf":
        return InfiniteDihedral()
    if low == "heis":
        return Heisenberg()
    if low == "free2":
        return FreeGroup2()
    if low == "z":
        return IntegerGroup()
    if low.startswith("cyclic:"):
        try:
            return cyclic(int(desc.split(":", 1)[1]))
        except ValueError:
            raise ParseError(f"bad cyclic order in {desc!r}") from None
    if low.startswith("perm:"):
        gens = [g for g in _split_top(desc[5:]) if g.strip()]
        if not gens:
            raise ParseError("perm: needs at least one generator")
        return permutation_group([g.strip() for g in gens])
    if low.startswith("prod:"):
        body = desc[5:]
        # try every top-level comma as the split point
        parts = _split_top(body)
        for i in range(1, len(parts)):
            left, right = ",".join(parts[:i]), ",".join(parts[i:])
            try:
                return DirectProduct(parse_group(left), parse_group(right))
            except ParseError:
                continue
        raise ParseError(f"cannot split product descriptor {desc!r}")
    catalog = small_groups()
    if desc in catalog:
        return catalog[desc]
    raise ParseError(f"unknown group descriptor {desc!r}")
