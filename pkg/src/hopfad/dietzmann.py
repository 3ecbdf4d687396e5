"""Product filtrations of finite sums of coideal subalgebras, and the gap
straightening rewrite that bounds them.

For C = C₁ + … + C_k the filtration is C^(0) = k·1 and
C^(n+1) = C^(n) + C·C^(n). Straightening rewrites a product c₁⋯c_s with
s > k into products of at most s − 1 factors using cd = Σ (c₍₁₎.d) c₍₂₎.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .errors import (
    HypothesisViolated,
    PreconditionViolated,
    RecursionCapExceeded,
    WindowOverflow,
)
from .hopf import HopfAlgebraData, is_left_coideal_subalgebra
from .linalg import Echelon, Subspace, axpy, solve
from .scalar import QQ, Field

__all__ = [
    "HopfHost",
    "GroupAlgebraHost",
    "PBWHost",
    "CoidealFamily",
    "FiltrationReport",
    "Straightened",
    "product_filtration",
    "straighten",
    "straighten_span",
]


# -- hosts ------------------------------------------------------------------------------
#
# A host supplies sparse multiplication, the coproduct grouped by first leg,
# the adjoint action on basis keys, and the ad generators used for stability
# checks. Elements are dicts keyed by basis keys.


class HopfHost:
    def __init__(self, h: HopfAlgebraData):
        self.h = h
        self.field = h.field
        self.ambient = h.dim
        self.name = h.name

    @property
    def one(self) -> dict:
        return self.h.one

    def mul(self, a, b) -> dict:
        return self.h.mul(a, b)

    def first_legs(self, c) -> dict:
        """Δc = Σ_key key ⊗ w_key."""
        legs: dict = {}
        for (i, j), x in self.h.coproduct(c).items():
            legs.setdefault(i, {})[j] = x
        return legs

    def ad_key(self, key, v) -> dict:
        return self.h.adjoint({key: self.field.one}, v)

    def ad_generators(self) -> list:
        return list(range(self.h.dim))

    def is_coideal_subalgebra(self, S: Subspace) -> bool:
        return is_left_coideal_subalgebra(self.h, S)

    def format_key(self, key) -> str:
        return self.h.labels[key]


class GroupAlgebraHost:
    """kG with basis keys the group elements. ``window`` (an element set) bounds
    where products may land; leaving it raises WindowOverflow."""

    def __init__(self, G, field: Field = QQ, window=None):
        self.G = G
        self.field = field
        self.window = set(window) if window is not None else None
        self.ambient = None
        self.name = f"k{G.name}"

    def _check(self, g):
        if self.window is not None and g not in self.window:
            raise WindowOverflow(f"{self.G.format(g)} lies outside the working window")
        return g

    @property
    def one(self) -> dict:
        return {self.G.identity(): self.field.one}

    def mul(self, a, b) -> dict:
        out: dict = {}
        for g, x in a.items():
            for h, y in b.items():
                axpy(out, x * y, {self._check(self.G.mul(g, h)): self.field.one})
        return out

    def first_legs(self, c) -> dict:
        return {g: {g: x} for g, x in c.items() if x}

    def ad_key(self, g, v) -> dict:
        out: dict = {}
        for h, x in v.items():
            axpy(out, x, {self._check(self.G.conj(g, h)): self.field.one})
        return out

    def ad_generators(self) -> list:
        out = []
        for s in self.G.generators():
            out += [s, self.G.inv(s)]
        return out

    def is_coideal_subalgebra(self, S: Subspace) -> bool:
        e = S.echelon()
        if not e.contains(self.one):
            return False
        vecs = S.vectors
        if not all(e.contains(self.mul(a, b)) for a in vecs for b in vecs):
            return False
        # Δ(Σ x_g g) = Σ x_g g⊗g, so every g in a support must be in S
        return all(e.contains({g: self.field.one}) for v in vecs for g in v)

    def format_key(self, key) -> str:
        return self.G.format(key)


class PBWHost:
    """A presented algebra; ``bmax`` bounds |b| of monomials (WindowOverflow)."""

    def __init__(self, alg, bmax: int | None = None):
        self.alg = alg
        self.field = alg.field
        self.bmax = bmax
        self.ambient = None
        self.name = alg.name

    def _check(self, v: Mapping) -> dict:
        if self.bmax is not None:
            for (a, b, c) in v:
                if abs(b) > self.bmax:
                    raise WindowOverflow(f"monomial {self.alg.format_key((a, b, c))} lies outside |b| ≤ {self.bmax}")
        return dict(v)

    @property
    def one(self) -> dict:
        return {(0, 0, 0): self.field.one}

    def mul(self, a, b) -> dict:
        return self._check(self.alg.mul_vec(a, b))

    def first_legs(self, c) -> dict:
        legs: dict = {}
        for (k1, k2), x in self.alg.coproduct(c).items():
            legs.setdefault(k1, {})[k2] = x
        return legs

    def ad_key(self, key, v) -> dict:
        return self._check(self.alg.adjoint({key: self.field.one}, v).terms)

    def ad_generators(self) -> list:
        return [(0, 0, 1), (1, 0, 0), self.alg._norm_key(0, 1, 0), self.alg._norm_key(0, -1, 0)]

    def is_coideal_subalgebra(self, S: Subspace) -> bool:
        e = S.echelon()
        if not e.contains(self.one):
            return False
        vecs = S.vectors
        if not all(e.contains(self.mul(a, b)) for a in vecs for b in vecs):
            return False
        return all(e.contains(w) for v in vecs for w in self.first_legs(v).values())

    def format_key(self, key) -> str:
        return self.alg.format_key(key)


def as_host(algebra):
    if isinstance(algebra, (HopfHost, GroupAlgebraHost, PBWHost)):
        return algebra
    if isinstance(algebra, HopfAlgebraData):
        return HopfHost(algebra)
    from .pbw import PresentedAlgebra

    if isinstance(algebra, PresentedAlgebra):
        return PBWHost(algebra)
    raise TypeError(f"no host adapter for {type(algebra).__name__}")


# -- families ---------------------------------------------------------------------------


STABILITY = ("verified", "assumed", "unknown")


class CoidealFamily:
    """C₁, …, C_k inside a host, each given by spanning elements.

    ``ad_stability`` is the status of ad(H)C ⊆ C. With ``verify=True`` each
    Cᵢ is checked to be a left coideal subalgebra and ad-stability is decided
    on the host's ad generators (status becomes verified, or the check
    raises PreconditionViolated). :meth:`is_relaxed_ad_stable` asks only for
    ad(Cᵢ)C ⊆ C, which suffices when every Cᵢ is a sub-bialgebra.
    """

    def __init__(self, host, spans: Sequence[Sequence[Mapping]], ad_stability: str = "unknown", verify: bool = False):
        self.host = as_host(host)
        self.field = self.host.field
        if ad_stability not in STABILITY:
            raise ValueError(f"ad_stability must be one of {STABILITY}")
        self.components = [
            Subspace(self.field, self.host.ambient, [self._coerce(v) for v in span]) for span in spans
        ]
        if not self.components:
            raise PreconditionViolated("a family needs at least one component")
        self.ad_stability = ad_stability
        self.coideal_flags = [None] * len(self.components)
        if verify:
            self.verify()

    def _coerce(self, v) -> dict:
        if isinstance(v, Mapping):
            return {k: self.field(x) for k, x in v.items() if x}
        return {i: self.field(x) for i, x in enumerate(v) if x}

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def total(self) -> Subspace:
        """C = C₁ + … + C_k."""
        e = Echelon(self.field)
        for c in self.components:
            for v in c.vectors:
                e.insert(v)
        return e.freeze(self.host.ambient)

    def verify(self) -> None:
        for i, c in enumerate(self.components):
            ok = self.host.is_coideal_subalgebra(c)
            self.coideal_flags[i] = ok
            if not ok:
                raise PreconditionViolated(f"component {i + 1} is not a left coideal subalgebra")
        if not self.is_ad_stable():
            raise PreconditionViolated("C is not stable under the adjoint action")
        self.ad_stability = "verified"

    def is_ad_stable(self, actors=None) -> bool:
        """ad(a)C ⊆ C for each actor key (default: the host's ad generators)."""
        C = self.total
        e = C.echelon()
        actors = self.host.ad_generators() if actors is None else actors
        return all(e.contains(self.host.ad_key(a, v)) for a in actors for v in C.vectors)

    def is_relaxed_ad_stable(self) -> bool:
        """ad(Cᵢ)C ⊆ C, tested on the first legs of every component basis vector."""
        actors = set()
        for c in self.components:
            for v in c.vectors:
                actors.update(self.host.first_legs(v))
        return self.is_ad_stable(sorted(actors))


# -- filtration ---------------------------------------------------------------------------


@dataclass
class FiltrationReport:
    """``dims[n-1]`` is dim C^(n) for n = 1, 2, …; C^(0) = k·1 is implicit.

    ``s_star`` is the least n with C^(n) = C^(n+1), or None if ``max_steps``
    ran out first.
    """

    dims: list[int]
    s_star: int | None
    closure: Subspace | None = dc_field(repr=False)
    budget_hit: bool = False

    @property
    def closure_dim(self) -> int | None:
        return self.closure.dim if self.closure is not None else None

    def as_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "s_star": self.s_star,
            "closure_dim": self.closure_dim,
            "budget_hit": self.budget_hit,
        }


def product_filtration(family: CoidealFamily, max_steps: int = 16, budget: int | None = None) -> FiltrationReport:
    host = family.host
    C = family.total.vectors
    cur = Echelon(family.field, [host.one])
    dims: list[int] = []
    layer = [host.one]
    prev_dim = len(cur)
    for n in range(1, max_steps + 1):
        # C·C^(n-1) modulo C^(n-1) only needs the vectors added last round
        new_layer = []
        for c in C:
            for w in layer:
                p = host.mul(c, w)
                if p and cur.insert(p) is not None:
                    new_layer.append(p)
                    if budget is not None and len(cur) > budget:
                        dims.append(len(cur))
                        return FiltrationReport(dims, None, None, budget_hit=True)
        dims.append(len(cur))
        if len(cur) == prev_dim:
            return FiltrationReport(dims, n - 1, cur.freeze(host.ambient))
        prev_dim = len(cur)
        layer = new_layer
    return FiltrationReport(dims, None, cur.freeze(host.ambient))


# -- straightening --------------------------------------------------------------------------


@dataclass
class Straightened:
    """Σ over ``terms`` of the ordered products equals the input product.

    Each term is a list of (component index, element) with at most s − 1
    factors.
    """

    terms: list
    value: dict
    input_length: int
    steps: int

    @property
    def max_length(self) -> int:
        return max((len(t) for t in self.terms), default=0)


def _product(host, factors) -> dict:
    out = host.one
    for _, c in factors:
        out = host.mul(out, c)
        if not out:
            return {}
    return out


def _decompose(family: CoidealFamily, y: Mapping):
    """Split y ∈ C into Σ y_i with y_i ∈ C_i against the concatenated bases."""
    columns, owner = [], []
    for i, comp in enumerate(family.components):
        for v in comp.vectors:
            columns.append(v)
            owner.append(i)
    coeffs = solve(family.field, columns, dict(y))
    if coeffs is None:
        return None
    parts: dict[int, dict] = {}
    for j, x in coeffs.items():
        axpy(parts.setdefault(owner[j], {}), x, columns[j])
    return {i: p for i, p in sorted(parts.items()) if p}


def _min_gap(idx: Sequence[int]):
    """Leftmost pair (l, m), l < m, of equal indices with the least gap m − l − 1."""
    best = None
    last: dict[int, int] = {}
    for m, i in enumerate(idx):
        if i in last:
            l = last[i]
            if best is None or m - l < best[1] - best[0]:
                best = (l, m)
        last[i] = m
    return best


def straighten(family: CoidealFamily, monomial: Sequence, cap: int = 100000) -> Straightened:
    """Rewrite c_1⋯c_s (s > k) as a sum of products of at most s − 1 factors.

    ``monomial`` is a sequence of (component index, element) pairs with
    0-based component indices. The minimal-gap pair is brought together by
    moving its left factor rightwards with c d = Σ (c₍₁₎.d) c₍₂₎, which needs
    c₍₂₎ ∈ C_i (coideal) and c₍₁₎.d ∈ C (ad-stability); a failure of either
    raises HypothesisViolated.
    """
    host = family.host
    mono = [(int(i), family._coerce(c)) for i, c in monomial]
    s = len(mono)
    if s <= family.k:
        raise PreconditionViolated(f"monomial length {s} must exceed the number of components {family.k}")
    for i, c in mono:
        if not (0 <= i < family.k):
            raise PreconditionViolated(f"component index {i} out of range")
        if not family.components[i].contains(c):
            raise PreconditionViolated(f"factor is not in component {i}")
    target = _product(host, mono)
    C = family.total.echelon()
    comp_ech = [c.echelon() for c in family.components]
    out_terms: list = []
    steps = 0
    stack = [mono]
    while stack:
        cur = stack.pop()
        if any(not c for _, c in cur):
            continue
        steps += 1
        if steps > cap:
            raise RecursionCapExceeded(f"straightening exceeded {cap} rewrite steps")
        if len(cur) < s:
            out_terms.append(cur)
            continue
        pair = _min_gap([i for i, _ in cur])
        if pair is None:
            raise PreconditionViolated("no repeated component index")
        l, m = pair
        if m == l + 1:
            i, c = cur[l]
            merged = host.mul(c, cur[m][1])
            if not comp_ech[i].contains(merged):
                raise HypothesisViolated(f"component {i} is not closed under multiplication")
            stack.append(cur[:l] + [(i, merged)] + cur[m + 1 :])
            continue
        i, c = cur[l]
        d = cur[l + 1][1]
        for key, leg in host.first_legs(c).items():
            if not comp_ech[i].contains(leg):
                raise HypothesisViolated(f"component {i} is not a left coideal")
            y = host.ad_key(key, d)
            if not y:
                continue
            if not C.contains(y):
                raise HypothesisViolated(
                    f"ad({host.format_key(key)}) maps a factor outside C; the family is not ad-stable"
                )
            parts = _decompose(family, y)
            for j, yj in parts.items():
                stack.append(cur[:l] + [(j, yj), (i, dict(leg))] + cur[l + 2 :])
    value: dict = {}
    for t in out_terms:
        axpy(value, family.field.one, _product(host, t))
    if value != target:
        raise AssertionError("straightening changed the value of the product")
    return Straightened(out_terms, value, s, steps)


def straighten_span(family: CoidealFamily, monomials: Sequence[Sequence]) -> Subspace:
    """Span of the values of straightened monomials, after checking every
    output factor lies in its component."""
    e = Echelon(family.field)
    for mono in monomials:
        res = straighten(family, mono)
        for t in res.terms:
            for i, c in t:
                if not family.components[i].contains(c):
                    raise AssertionError("output factor left its component")
        e.insert(res.value)
    return e.freeze(family.host.ambient)
