"""Finite-dimensional Hopf algebras given by structure constants.

Elements are sparse coordinate dicts ``{basis index: Scalar}``; every entry
point also accepts a dense coordinate sequence of length ``dim``. Tensors in
H⊗H and H⊗H⊗H are dicts keyed by index pairs/triples. Sweedler sums are
always evaluated by contracting the stored coproduct tensor.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .errors import (
    BadCharacteristic,
    DimensionMismatch,
    NotAGroup,
    PreconditionViolated,
    ShapeMismatch,
    UnsupportedCharacteristic,
)
from .linalg import (
    Echelon,
    LinearMap,
    Subspace,
    annihilator,
    axpy,
    nullspace,
    sparse,
    tensor_subspace,
    vscale,
)
from .scalar import Field, PrimeField, Rationals, Scalar

__all__ = [
    "HopfAlgebraData",
    "AxiomCheck",
    "AxiomReport",
    "verify_axioms",
    "group_algebra",
    "sweedler",
    "taft",
    "small_quantum_sl2",
    "dual_hopf",
    "adjoint_action",
    "is_left_coideal_subalgebra",
    "coradical",
    "coradical_filtration",
    "grouplikes",
    "is_pointed",
    "masuoka_freeness_criterion",
    "free_basis_over",
    "parse_hsc",
    "dump_hsc",
    "load_hsc",
]


def _tensor_add(out: dict, key, c: Scalar):
    y = out.get(key)
    y = c if y is None else y + c
    if y:
        out[key] = y
    else:
        out.pop(key, None)


class HopfAlgebraData:
    """Structure constants of a finite-dimensional Hopf algebra.

    ``mult[(i, j)]`` is the sparse product e_i e_j, ``comult[k]`` the sparse
    tensor Δe_k keyed by ``(i, j)``, ``antipode[i]`` the sparse image S(e_i).
    Dense 3-index tensors (``mult[i][j][k]``, ``comult[k][i][j]``) and an
    antipode :class:`LinearMap` are accepted as well.

    Optional metadata: ``labels`` for printing, ``words`` expressing each
    basis element as a product of named ``generators``, and a
    ``grouplike_certificate`` listing known grouplikes; when the certificate is
    complete (``pointed=True``) the coradical is their span.
    """

    def __init__(
        self,
        field: Field,
        dim: int,
        mult,
        unit,
        comult,
        counit,
        antipode,
        *,
        name: str = "H",
        labels: Sequence[str] | None = None,
        generators: Mapping[str, Mapping] | None = None,
        words: Sequence[Sequence[str]] | None = None,
        grouplike_certificate: Sequence[Mapping] | None = None,
        pointed: bool | None = None,
    ):
        self.field = field
        self.dim = dim
        self.name = name
        self.mult = self._read_mult(mult)
        self.comult = self._read_comult(comult)
        self.unit = self._read_vector(unit, "unit")
        counit_vec = self._read_vector(counit, "counit")
        self.counit_vec = [counit_vec.get(i, field.zero) for i in range(dim)]
        self.antipode = self._read_antipode(antipode)
        self.labels = list(labels) if labels else [f"e{i}" for i in range(dim)]
        self.generators = {k: sparse(v, dim) for k, v in (generators or {}).items()}
        self.words = [tuple(w) for w in words] if words is not None else None
        self.grouplike_certificate = (
            [sparse(g, dim) for g in grouplike_certificate] if grouplike_certificate is not None else None
        )
        self.pointed = pointed
        self._ad_cache: dict = {}
        self._cache: dict = {}

    # -- construction helpers -------------------------------------------------

    def _coerce(self, x) -> Scalar:
        return self.field(x)

    def _read_vector(self, v, what) -> dict:
        if isinstance(v, Mapping):
            out = {}
            for k, x in v.items():
                if not (isinstance(k, int) and 0 <= k < self.dim):
                    raise ShapeMismatch(f"{what}: index {k!r} out of range")
                x = self._coerce(x)
                if x:
                    out[k] = x
            return out
        if len(v) != self.dim:
            raise ShapeMismatch(f"{what}: expected length {self.dim}, got {len(v)}")
        return {i: self._coerce(x) for i, x in enumerate(v) if self._coerce(x)}

    def _read_mult(self, mult) -> dict:
        d = self.dim
        out: dict = {}
        if isinstance(mult, Mapping):
            for key, img in mult.items():
                i, j = key
                if not (0 <= i < d and 0 <= j < d):
                    raise ShapeMismatch(f"mult: index {key!r} out of range")
                img = self._read_vector(img, "mult")
                if img:
                    out[(i, j)] = img
        else:
            if len(mult) != d or any(len(r) != d or any(len(c) != d for c in r) for r in mult):
                raise ShapeMismatch("mult tensor must have shape dim x dim x dim")
            for i in range(d):
                for j in range(d):
                    img = self._read_vector(mult[i][j], "mult")
                    if img:
                        out[(i, j)] = img
        return out

    def _read_comult(self, comult) -> list[dict]:
        d = self.dim
        out = [dict() for _ in range(d)]
        if isinstance(comult, Mapping):
            items = comult.items()
        else:
            if len(comult) != d:
                raise ShapeMismatch("comult tensor must have shape dim x dim x dim")
            items = enumerate(comult)
        for k, img in items:
            if not (isinstance(k, int) and 0 <= k < d):
                raise ShapeMismatch(f"comult: index {k!r} out of range")
            if isinstance(img, Mapping):
                for (i, j), x in img.items():
                    if not (0 <= i < d and 0 <= j < d):
                        raise ShapeMismatch(f"comult: index {(i, j)!r} out of range")
                    x = self._coerce(x)
                    if x:
                        out[k][(i, j)] = x
            else:
                if len(img) != d or any(len(r) != d for r in img):
                    raise ShapeMismatch("comult tensor must have shape dim x dim x dim")
                for i in range(d):
                    for j in range(d):
                        x = self._coerce(img[i][j])
                        if x:
                            out[k][(i, j)] = x
        return out

    def _read_antipode(self, s) -> list[dict]:
        d = self.dim
        if isinstance(s, LinearMap):
            if s.domain_dim != d or s.codomain_dim != d:
                raise ShapeMismatch("antipode must be a dim x dim map")
            return [{k: self._coerce(x) for k, x in s.column(j).items()} for j in range(d)]
        if not isinstance(s, Mapping) and len(s) == d and all(isinstance(r, Mapping) for r in s):
            s = dict(enumerate(s))  # list of sparse images S(e_i)
        if isinstance(s, Mapping):
            out = [dict() for _ in range(d)]
            for i, img in s.items():
                if not (isinstance(i, int) and 0 <= i < d):
                    raise ShapeMismatch(f"antipode: index {i!r} out of range")
                out[i] = self._read_vector(img, "antipode")
            return out
        if len(s) != d or any(len(r) != d for r in s):
            raise ShapeMismatch("antipode matrix must be dim x dim")
        m = LinearMap(self.field, s, d, d)
        return [m.column(j) for j in range(d)]

    # -- element arithmetic -----------------------------------------------------

    def element(self, v) -> dict:
        """Normalize a dense or sparse coordinate vector; coerces coefficients."""
        v = sparse(v, self.dim)
        return {k: self._coerce(x) for k, x in v.items()}

    def basis_element(self, i: int) -> dict:
        return {i: self.field.one}

    @property
    def one(self) -> dict:
        return dict(self.unit)

    def mul(self, a, b) -> dict:
        return self._mul(self.element(a), self.element(b))

    def _mul(self, a: dict, b: dict) -> dict:
        # inputs already normalized: sparse, coefficients in self.field
        out: dict = {}
        mult = self.mult
        for i, x in a.items():
            for j, y in b.items():
                img = mult.get((i, j))
                if img:
                    axpy(out, x * y, img)
        return out

    def coproduct(self, a) -> dict:
        out: dict = {}
        for k, x in self.element(a).items():
            axpy(out, x, self.comult[k])
        return out

    def coproduct2(self, a) -> dict:
        """(Δ ⊗ id)Δ a keyed by index triples."""
        out: dict = {}
        for (i, j), x in self.coproduct(a).items():
            for (p, q), y in self.comult[i].items():
                _tensor_add(out, (p, q, j), x * y)
        return out

    def counit(self, a) -> Scalar:
        total = self.field.zero
        for k, x in self.element(a).items():
            total = total + x * self.counit_vec[k]
        return total

    def apply_antipode(self, a) -> dict:
        out: dict = {}
        for k, x in self.element(a).items():
            axpy(out, x, self.antipode[k])
        return out

    def tensor_mul(self, X: Mapping, Y: Mapping) -> dict:
        out: dict = {}
        mult = self.mult
        for (a, b), x in X.items():
            for (c, d), y in Y.items():
                left = mult.get((a, c))
                right = mult.get((b, d))
                if not left or not right:
                    continue
                xy = x * y
                for p, u in left.items():
                    for q, w in right.items():
                        _tensor_add(out, (p, q), xy * u * w)
        return out

    def tensor_apply(self, X: Mapping, left=None, right=None) -> dict:
        """Apply linear maps (functions on sparse elements) to tensor legs."""
        out: dict = {}
        for (a, b), x in X.items():
            la = left({a: self.field.one}) if left else {a: self.field.one}
            rb = right({b: self.field.one}) if right else {b: self.field.one}
            for p, u in la.items():
                for q, w in rb.items():
                    _tensor_add(out, (p, q), x * u * w)
        return out

    def _ad_basis(self, i: int, j: int) -> dict:
        key = (i, j)
        hit = self._ad_cache.get(key)
        if hit is None:
            hit = {}
            vj = {j: self.field.one}
            for (a, b), x in self.comult[i].items():
                prod = self._mul(self._mul({a: self.field.one}, vj), self.antipode[b])
                axpy(hit, x, prod)
            self._ad_cache[key] = hit
        return hit

    def adjoint(self, k, v) -> dict:
        """k.v = k₍₁₎ v S(k₍₂₎)."""
        k = self.element(k)
        v = self.element(v)
        out: dict = {}
        for i, x in k.items():
            for j, y in v.items():
                axpy(out, x * y, self._ad_basis(i, j))
        return out

    # -- structural predicates -------------------------------------------------

    def is_cocommutative(self) -> bool:
        return all(c.get((j, i)) == x for c in self.comult for (i, j), x in c.items())

    def is_commutative(self) -> bool:
        return all(self.mult.get((i, j), {}) == self.mult.get((j, i), {}) for i in range(self.dim) for j in range(self.dim))

    def mult_tensor(self) -> list:
        z = self.field.zero
        return [[[self.mult.get((i, j), {}).get(k, z) for k in range(self.dim)] for j in range(self.dim)] for i in range(self.dim)]

    def comult_tensor(self) -> list:
        z = self.field.zero
        return [[[self.comult[k].get((i, j), z) for j in range(self.dim)] for i in range(self.dim)] for k in range(self.dim)]

    def antipode_map(self) -> LinearMap:
        return LinearMap.from_columns(self.field, self.antipode, self.dim)

    def left_mult_map(self, a) -> LinearMap:
        a = self.element(a)
        return LinearMap.from_columns(self.field, [self.mul(a, {j: self.field.one}) for j in range(self.dim)], self.dim)

    def format_element(self, v) -> str:
        v = self.element(v)
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            parts.append(self.labels[k] if c == 1 else f"({c})*{self.labels[k]}")
        return " + ".join(parts)

    def extend_scalars(self, target: Field) -> HopfAlgebraData:
        """The same structure constants read in an extension field."""
        emb = target

        def vec(v):
            return {k: emb(x) for k, x in v.items()}

        return HopfAlgebraData(
            target,
            self.dim,
            {key: vec(img) for key, img in self.mult.items()},
            vec(self.unit),
            {k: vec(c) for k, c in enumerate(self.comult)},
            {i: emb(x) for i, x in enumerate(self.counit_vec) if x},
            {i: vec(s) for i, s in enumerate(self.antipode)},
            name=f"{self.name}_{target}",
            labels=self.labels,
            generators={n: vec(g) for n, g in self.generators.items()},
            words=self.words,
            grouplike_certificate=(
                [vec(g) for g in self.grouplike_certificate] if self.grouplike_certificate is not None else None
            ),
            pointed=self.pointed,
        )

    def __repr__(self):
        return f"HopfAlgebraData({self.name!r}, dim={self.dim}, field={self.field})"


# -- axiom checking -------------------------------------------------------------


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class AxiomReport:
    checks: list[AxiomCheck] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)


def _first_failure(pairs, test):
    for w in pairs:
        if not test(*w):
            return w
    return None


def verify_axioms(h: HopfAlgebraData) -> AxiomReport:
    """Check every Hopf axiom on basis elements; failures carry a witness."""
    d = h.dim
    one = h.field.one
    e = [{i: one} for i in range(d)]
    u = h.one
    eps = h.counit_vec
    rep = AxiomReport()

    def add(name, witness, detail):
        rep.checks.append(AxiomCheck(name, witness is None, witness, "" if witness is None else detail))

    prods = {(i, j): h.mult.get((i, j), {}) for i in range(d) for j in range(d)}
    w = _first_failure(
        itertools.product(range(d), repeat=3),
        lambda i, j, k: h._mul(prods[i, j], e[k]) == h._mul(e[i], prods[j, k]),
    )
    add("associativity", w, "(e_i e_j) e_k != e_i (e_j e_k)")

    w = _first_failure(((i,) for i in range(d)), lambda i: h.mul(u, e[i]) == e[i] == h.mul(e[i], u))
    add("unit", w, "1 e_i != e_i or e_i 1 != e_i")

    w = _first_failure(
        ((k,) for k in range(d)),
        lambda k: _coassoc_left(h, k) == _coassoc_right(h, k),
    )
    add("coassociativity", w, "(Δ⊗id)Δ e_k != (id⊗Δ)Δ e_k")

    def counit_ok(k):
        left: dict = {}
        right: dict = {}
        for (i, j), x in h.comult[k].items():
            if eps[i]:
                _tensor_add(left, j, x * eps[i])
            if eps[j]:
                _tensor_add(right, i, x * eps[j])
        return left == e[k] == right

    w = _first_failure(((k,) for k in range(d)), counit_ok)
    add("counit", w, "(ε⊗id)Δ e_k != e_k or (id⊗ε)Δ e_k != e_k")

    unit_tensor = {}
    for i, x in u.items():
        for j, y in u.items():
            _tensor_add(unit_tensor, (i, j), x * y)
    w = None if h.coproduct(u) == unit_tensor else ("unit",)
    if w is None:
        w = _first_failure(
            itertools.product(range(d), repeat=2),
            lambda i, j: h.coproduct(prods[i, j]) == h.tensor_mul(h.comult[i], h.comult[j]),
        )
    add("comultiplication_multiplicative", w, "Δ(e_i e_j) != Δ(e_i) Δ(e_j)")

    w = None if h.counit(u) == one else ("unit",)
    if w is None:
        w = _first_failure(
            itertools.product(range(d), repeat=2),
            lambda i, j: h.counit(prods[i, j]) == eps[i] * eps[j],
        )
    add("counit_multiplicative", w, "ε(e_i e_j) != ε(e_i) ε(e_j)")

    def antipode_ok(k):
        left: dict = {}
        right: dict = {}
        for (i, j), x in h.comult[k].items():
            axpy(left, x, h._mul(h.antipode[i], e[j]))
            axpy(right, x, h._mul(e[i], h.antipode[j]))
        target = vscale(eps[k], u)
        return left == target == right

    w = _first_failure(((k,) for k in range(d)), antipode_ok)
    add("antipode", w, "m(S⊗id)Δ e_k or m(id⊗S)Δ e_k != ε(e_k) 1")
    return rep


def _coassoc_left(h, k):
    out: dict = {}
    for (i, j), x in h.comult[k].items():
        for (p, q), y in h.comult[i].items():
            _tensor_add(out, (p, q, j), x * y)
    return out


def _coassoc_right(h, k):
    out: dict = {}
    for (i, j), x in h.comult[k].items():
        for (p, q), y in h.comult[j].items():
            _tensor_add(out, (i, p, q), x * y)
    return out


# -- constructors -------------------------------------------------------------


def group_algebra(table, field: Field, *, labels=None, name="kG") -> HopfAlgebraData:
    """kG for a finite group given by its multiplication table.

    ``table[i][j]`` is the index of g_i g_j. Any object with a ``table()``
    method (see :mod:`hopfad.groups`) is accepted too.
    """
    if hasattr(table, "table"):
        if labels is None and hasattr(table, "labels"):
            labels = table.labels()
        name = getattr(table, "name", name) or name
        table = table.table()
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise NotAGroup("table must be a non-empty square array")
    if any(not (0 <= x < n) for r in table for x in r):
        raise NotAGroup("table entries must index group elements")
    ident = [i for i in range(n) if all(table[i][j] == j and table[j][i] == j for j in range(n))]
    if not ident:
        raise NotAGroup("no identity element")
    e = ident[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup(f"not associative at ({a}, {b}, {c})")
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if table[a][b] == e and table[b][a] == e]
        if not cands:
            raise NotAGroup(f"element {a} has no inverse")
        inv.append(cands[0])
    one = field.one
    mult = {(i, j): {table[i][j]: one} for i in range(n) for j in range(n)}
    comult = {k: {(k, k): one} for k in range(n)}
    return HopfAlgebraData(
        field,
        n,
        mult,
        {e: one},
        comult,
        [one] * n,
        {i: {inv[i]: one} for i in range(n)},
        name=name,
        labels=labels or [f"g{i}" for i in range(n)],
        generators={f"g{i}": {i: one} for i in range(n)},
        words=[(f"g{i}",) for i in range(n)],
        grouplike_certificate=[{i: one} for i in range(n)],
        pointed=True,
    )


def sweedler(field: Field) -> HopfAlgebraData:
    """Sweedler's 4-dim algebra on the basis 1, g, x, gx with g² = 1, x² = 0,
    xg = -gx, Δg = g⊗g, Δx = x⊗1 + g⊗x."""
    if field.characteristic == 2:
        raise BadCharacteristic("Sweedler's algebra needs char k != 2")
    o = field.one
    m = -o
    ONE, G, X, GX = range(4)
    mult = {
        (ONE, ONE): {ONE: o}, (ONE, G): {G: o}, (ONE, X): {X: o}, (ONE, GX): {GX: o},
        (G, ONE): {G: o}, (G, G): {ONE: o}, (G, X): {GX: o}, (G, GX): {X: o},
        (X, ONE): {X: o}, (X, G): {GX: m}, (X, X): {}, (X, GX): {},
        (GX, ONE): {GX: o}, (GX, G): {X: m}, (GX, X): {}, (GX, GX): {},
    }  # fmt: skip
    comult = {
        ONE: {(ONE, ONE): o},
        G: {(G, G): o},
        X: {(X, ONE): o, (G, X): o},
        GX: {(GX, G): o, (ONE, GX): o},
    }
    antipode = {ONE: {ONE: o}, G: {G: o}, X: {GX: m}, GX: {X: o}}
    return HopfAlgebraData(
        field, 4, mult, {ONE: o}, comult, [o, o, 0, 0], antipode,
        name="sweedler",
        labels=["1", "g", "x", "gx"],
        generators={"g": {G: o}, "x": {X: o}},
        words=[(), ("g",), ("x",), ("g", "x")],
        grouplike_certificate=[{ONE: o}, {G: o}],
        pointed=True,
    )  # fmt: skip


def _complete_from_generators(field, dim, mult, unit, words, gen_delta, gen_eps, gen_S, **meta):
    """Extend Δ, ε, S from generator values to a monomial basis.

    ``words[i]`` lists generator names whose product is exactly e_i. Δ and ε
    are multiplied out as algebra maps, S as an anti-homomorphism.
    """
    pre = HopfAlgebraData(field, dim, mult, unit, {}, {}, {}, **meta)
    comult = {}
    counit = {}
    antipode = {}
    unit_t = {}
    for i, x in pre.unit.items():
        for j, y in pre.unit.items():
            _tensor_add(unit_t, (i, j), x * y)
    for i, word in enumerate(words):
        d = dict(unit_t)
        c = field.one
        s = pre.one
        for g in word:
            d = pre.tensor_mul(d, gen_delta[g])
            c = c * gen_eps[g]
            s = pre.mul(gen_S[g], s)
        comult[i] = d
        if c:
            counit[i] = c
        antipode[i] = s
    return HopfAlgebraData(field, dim, pre.mult, pre.unit, comult, counit, antipode, words=words, **meta)


def taft(n: int, field: Field, q: Scalar | None = None) -> HopfAlgebraData:
    """Taft algebra of dimension n²: g^n = 1, x^n = 0, xg = q gx,
    Δg = g⊗g, Δx = x⊗1 + g⊗x. Basis g^i x^j sits at index j*n + i."""
    if q is None:
        q = field.primitive_root(n)
    else:
        q = field(q)
        if q**n != 1 or any(q**m == 1 for m in range(1, n)):
            raise PreconditionViolated(f"{q} is not a primitive {n}-th root of unity")
    one = field.one
    idx = lambda i, j: j * n + i  # noqa: E731
    mult = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j + l >= n:
            mult[(idx(i, j), idx(k, l))] = {}
        else:
            mult[(idx(i, j), idx(k, l))] = {idx((i + k) % n, j + l): q ** (j * k)}
    G, X = idx(1, 0), idx(0, 1)
    ginv = idx(n - 1, 0)
    words = [tuple(["g"] * i + ["x"] * j) for j in range(n) for i in range(n)]
    labels = []
    for j in range(n):
        for i in range(n):
            parts = [p for p in (_pow_label("g", i), _pow_label("x", j)) if p]
            labels.append("".join(parts) or "1")
    return _complete_from_generators(
        field,
        n * n,
        mult,
        {0: one},
        words,
        gen_delta={"g": {(G, G): one}, "x": {(X, 0): one, (G, X): one}},
        gen_eps={"g": one, "x": field.zero},
        gen_S={"g": {ginv: one}, "x": {idx(n - 1, 1): -one}},
        name=f"taft{n}",
        labels=labels,
        generators={"g": {G: one}, "x": {X: one}},
        grouplike_certificate=[{idx(i, 0): one} for i in range(n)],
        pointed=True,
    )


def _pow_label(s, e):
    if e == 0:
        return ""
    return s if e == 1 else f"{s}^{e}"


def small_quantum_sl2(n: int, field: Field, q: Scalar | None = None) -> HopfAlgebraData:
    """u_q(sl2) of dimension n³ (n odd): the truncated quantum group with
    E^n = F^n = 0 and K^n = 1, on the PBW basis F^a K^b E^c at a*n² + b*n + c."""
    from .pbw import PresentedAlgebra

    if n % 2 == 0 or n < 3:
        raise PreconditionViolated("small_quantum_sl2 needs an odd n >= 3")
    alg = PresentedAlgebra(field, q=q if q is not None else field.primitive_root(n), n=n, truncate=True, k_order=n)
    one = field.one
    keys = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
    index = {k: i for i, k in enumerate(keys)}
    mult = {}
    for k1 in keys:
        for k2 in keys:
            prod = alg.monomial_product(k1, k2)
            mult[(index[k1], index[k2])] = {index[k]: x for k, x in prod.items()}
    E, F, K = index[(0, 0, 1)], index[(1, 0, 0)], index[(0, 1, 0)]
    Kinv = index[(0, n - 1, 0)]
    words = [tuple(["F"] * a + ["K"] * b + ["E"] * c) for (a, b, c) in keys]
    labels = []
    for a, b, c in keys:
        parts = [p for p in (_pow_label("F", a), _pow_label("K", b), _pow_label("E", c)) if p]
        labels.append("".join(parts) or "1")
    return _complete_from_generators(
        field,
        n**3,
        mult,
        {index[(0, 0, 0)]: one},
        words,
        gen_delta={
            "E": {(E, 0): one, (K, E): one},
            "F": {(F, Kinv): one, (0, F): one},
            "K": {(K, K): one},
        },
        gen_eps={"E": field.zero, "F": field.zero, "K": one},
        gen_S={
            "E": {index[(0, n - 1, 1)]: -one},
            # S(F) = -FK
            "F": {index[(1, 1, 0)]: -one},
            "K": {Kinv: one},
        },
        name=f"u_q(sl2)[n={n}]",
        labels=labels,
        generators={"E": {E: one}, "F": {F: one}, "K": {K: one}},
        grouplike_certificate=[{index[(0, b, 0)]: one} for b in range(n)],
        pointed=True,
    )


def dual_hopf(h: HopfAlgebraData) -> HopfAlgebraData:
    """H* on the dual basis: every structure tensor transposed."""
    d = h.dim
    mult = {(i, j): {} for i in range(d) for j in range(d)}
    for k, c in enumerate(h.comult):
        for (i, j), x in c.items():
            mult[(i, j)][k] = x
    comult = {k: {} for k in range(d)}
    for (i, j), img in h.mult.items():
        for k, x in img.items():
            comult[k][(i, j)] = x
    antipode = {j: {} for j in range(d)}
    for i, img in enumerate(h.antipode):
        for j, x in img.items():
            antipode[j][i] = x
    return HopfAlgebraData(
        h.field,
        d,
        mult,
        {i: x for i, x in enumerate(h.counit_vec) if x},
        comult,
        h.unit,
        antipode,
        name=f"{h.name}*",
        labels=[f"{lab}*" for lab in h.labels],
    )


# -- operations -------------------------------------------------------------------


def adjoint_action(h: HopfAlgebraData, k, v) -> dict:
    """Left adjoint action k.v = k₍₁₎ v S(k₍₂₎)."""
    return h.adjoint(k, v)


def _as_subspace(h: HopfAlgebraData, B) -> Subspace:
    if isinstance(B, Subspace):
        if B.ambient != h.dim:
            raise DimensionMismatch(f"subspace ambient {B.ambient} != dim {h.dim}")
        return B
    return Subspace(h.field, h.dim, [h.element(b) for b in B])


def _second_legs(t: Mapping) -> dict:
    """Group a tensor Σ e_i ⊗ w_i by first leg: {i: w_i}."""
    legs: dict = {}
    for (i, j), x in t.items():
        legs.setdefault(i, {})[j] = x
    return legs


def is_left_coideal_subalgebra(h: HopfAlgebraData, B) -> bool:
    """1 ∈ B, B·B ⊆ B and Δ(B) ⊆ H ⊗ B."""
    B = _as_subspace(h, B)
    e = B.echelon()
    if not e.contains(h.one):
        return False
    vecs = B.vectors
    for a in vecs:
        for b in vecs:
            if not e.contains(h.mul(a, b)):
                return False
    for b in vecs:
        for leg in _second_legs(h.coproduct(b)).values():
            if not e.contains(leg):
                return False
    return True


def _preimage_under_coproduct(h: HopfAlgebraData, target: Subspace) -> Subspace:
    ann = annihilator(target)
    d = h.dim
    rows = []
    for phi in ann.vectors:
        row = {}
        for j in range(d):
            total = h.field.zero
            for (a, b), x in h.comult[j].items():
                c = phi.get(a * d + b)
                if c:
                    total = total + c * x
            if total:
                row[j] = total
        rows.append(row)
    return nullspace(h.field, rows, d)


def coradical(h: HopfAlgebraData, use_certificate: bool = True) -> Subspace:
    """H₀. In char 0 it is the annihilator of the Jacobson radical of H*,
    which is the kernel of the trace form of the regular representation."""
    if use_certificate and h.pointed and h.grouplike_certificate is not None:
        return Subspace(h.field, h.dim, h.grouplike_certificate)
    if h.field.characteristic != 0:
        raise UnsupportedCharacteristic(
            f"coradical of an uncertified algebra over {h.field} (char {h.field.characteristic})"
        )
    d = h.dim
    # trace of left multiplication by e^k in H*: Σ_q comult[q][(k, q)]
    tr = [h.field.zero] * d
    for q, c in enumerate(h.comult):
        for (k, qq), x in c.items():
            if qq == q:
                tr[k] = tr[k] + x
    gram = [[h.field.zero] * d for _ in range(d)]
    for k, c in enumerate(h.comult):
        if not tr[k]:
            continue
        for (p, q), x in c.items():
            gram[p][q] = gram[p][q] + x * tr[k]
    rad = nullspace(h.field, gram, d)
    return annihilator(rad)


def coradical_filtration(h: HopfAlgebraData, max_steps: int = 64, use_certificate: bool = True) -> list[Subspace]:
    """H₀ ⊆ H₁ ⊆ … ⊆ H with H_n = Δ⁻¹(H⊗H_{n-1} + H₀⊗H)."""
    full = Subspace.full(h.field, h.dim)
    h0 = coradical(h, use_certificate)
    filt = [h0]
    while filt[-1].dim < h.dim:
        if len(filt) > max_steps:
            raise RuntimeError("coradical filtration did not terminate")
        target = tensor_subspace(full, filt[-1]) + tensor_subspace(h0, full)
        nxt = _preimage_under_coproduct(h, target)
        if nxt == filt[-1]:
            raise RuntimeError("coradical filtration stalled below H")
        filt.append(nxt)
    return filt


def _roots_in_field(field: Field, mat: list[list[Scalar]]) -> list[Scalar]:
    """Eigenvalues of ``mat`` lying in ``field``."""
    n = len(mat)
    if isinstance(field, PrimeField):
        out = []
        for r in range(field.p):
            lam = field(r)
            shifted = [[mat[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
            if nullspace(field, shifted, n).dim:
                out.append(lam)
        return out
    if isinstance(field, Rationals):
        import sympy

        m = sympy.Matrix(n, n, lambda i, j: sympy.Rational(mat[i][j].value.numerator, mat[i][j].value.denominator))
        lam = sympy.Symbol("lam")
        poly = sympy.Poly(m.charpoly(lam).as_expr(), lam, domain="QQ")
        return [field(_to_fraction(r)) for r in poly.ground_roots()]
    raise UnsupportedCharacteristic(f"eigenvalue search over {field} is not implemented")


def _to_fraction(r):
    from fractions import Fraction

    return Fraction(int(r.p), int(r.q))


def grouplikes(h: HopfAlgebraData, use_certificate: bool = True) -> list[dict]:
    """All g with Δg = g⊗g and ε(g) = 1.

    Uses the certificate when the constructor supplied a complete one.
    Otherwise g is a common eigenvector: Σ_k comult[k][(p, q)] g_k = g_p g_q
    for all p, q, so g lies in an eigenspace of M_p = (comult[k][(p, q)])_{q,k}
    for every p; intersecting those eigenspaces isolates the grouplikes.
    """
    if use_certificate and h.pointed and h.grouplike_certificate is not None:
        return [dict(g) for g in h.grouplike_certificate]
    d = h.dim
    F = h.field
    cached = h._cache.get("grouplikes")
    if cached is not None:
        return [dict(g) for g in cached]
    mats = []
    for p in range(d):
        m = [[F.zero] * d for _ in range(d)]
        for k, c in enumerate(h.comult):
            for (pp, q), x in c.items():
                if pp == p:
                    m[q][k] = m[q][k] + x
        mats.append(m)
    spaces = [Subspace.full(F, d)]
    for p in range(d):
        roots = _roots_in_field(F, mats[p])
        nxt = []
        for S in spaces:
            for lam in roots:
                shifted = [[mats[p][i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
                eig = nullspace(F, shifted, d)
                cut = S & eig
                if cut.dim:
                    nxt.append(cut)
        spaces = nxt
        if not spaces:
            break
    found = []
    for S in spaces:
        for v in S.vectors:
            c = h.counit(v)
            if not c:
                continue
            g = vscale(c.inverse(), v)
            if h.coproduct(g) == _outer(g, g) and g not in found:
                found.append(g)
    found.sort(key=lambda g: sorted(g))
    h._cache["grouplikes"] = found
    return [dict(g) for g in found]


def _outer(a: Mapping, b: Mapping) -> dict:
    return {(i, j): x * y for i, x in a.items() for j, y in b.items()}


def is_pointed(h: HopfAlgebraData, use_certificate: bool = True) -> bool:
    """dim H₀ equals the number of grouplikes."""
    if use_certificate and h.pointed is not None:
        return h.pointed
    return coradical(h, use_certificate).dim == len(grouplikes(h, use_certificate))


def masuoka_freeness_criterion(h: HopfAlgebraData, B) -> bool:
    """S(B ∩ kG) = B ∩ kG for a left coideal subalgebra B of a pointed H."""
    B = _as_subspace(h, B)
    if not is_pointed(h):
        raise PreconditionViolated("the freeness criterion needs a pointed Hopf algebra")
    if not is_left_coideal_subalgebra(h, B):
        raise PreconditionViolated("B is not a left coideal subalgebra")
    kg = Subspace(h.field, h.dim, grouplikes(h))
    inter = B & kg
    image = Subspace(h.field, h.dim, [h.apply_antipode(v) for v in inter.vectors])
    return image == inter


def free_basis_over(h: HopfAlgebraData, B, side: str = "right") -> list[int] | None:
    """Search basis-element subsets X with H = ⊕_{x∈X} xB (right) or Bx (left).

    Returns the indices of a witness basis, or None when no subset of the
    standard basis works (which does not by itself rule out freeness).
    """
    B = _as_subspace(h, B)
    if B.dim == 0 or h.dim % B.dim:
        return None
    m = h.dim // B.dim
    bvecs = B.vectors
    for combo in itertools.combinations(range(h.dim), m):
        e = Echelon(h.field)
        ok = True
        for i in combo:
            for b in bvecs:
                prod = h.mul({i: h.field.one}, b) if side == "right" else h.mul(b, {i: h.field.one})
                if e.insert(prod) is None:
                    ok = False
                    break
            if not ok:
                break
        if ok and len(e) == h.dim:
            return list(combo)
    return None


# -- identities used as invariants ------------------------------------------------


def adjoint_coproduct_sides(h: HopfAlgebraData, k, v) -> tuple[dict, dict]:
    """Both sides of Δ(k.v) = k₍₁₎v₍₁₎S(k₍₃₎) ⊗ k₍₂₎.v₍₂₎."""
    k = h.element(k)
    v = h.element(v)
    lhs: dict = {}
    rhs: dict = {}
    for i, x in k.items():
        for j, y in v.items():
            l_ij, r_ij = _adjoint_coproduct_basis(h, i, j)
            for key, c in l_ij.items():
                _tensor_add(lhs, key, x * y * c)
            for key, c in r_ij.items():
                _tensor_add(rhs, key, x * y * c)
    return lhs, rhs


def _adjoint_coproduct_basis(h, i, j):
    key = ("adjoint-coproduct", i, j)
    hit = h._cache.get(key)
    if hit is None:
        one = h.field.one
        lhs = h.coproduct(h._ad_basis(i, j))
        rhs: dict = {}
        k3 = h.coproduct2({i: one})
        by_p: dict = {}
        for (p, r), y in h.comult[j].items():
            by_p.setdefault(p, []).append((r, y))
        # skip the many zero products a·p before doing any real work
        for (a, b, c), x in k3.items():
            for p, legs in by_p.items():
                ap = h.mult.get((a, p))
                if not ap:
                    continue
                left = h._mul(ap, h.antipode[c])
                if not left:
                    continue
                for r, y in legs:
                    right = h._ad_basis(b, r)
                    xy = x * y
                    for s_, u in left.items():
                        for t, w in right.items():
                            _tensor_add(rhs, (s_, t), xy * u * w)
        hit = (lhs, rhs)
        h._cache[key] = hit
    return hit


def multiplication_recovery_sides(h: HopfAlgebraData, a, b) -> tuple[dict, dict]:
    """a b versus Σ (a₍₁₎.b) a₍₂₎."""
    a = h.element(a)
    b = h.element(b)
    rhs: dict = {}
    for (i, j), x in h.coproduct(a).items():
        axpy(rhs, x, h.mul(h.adjoint({i: h.field.one}, b), {j: h.field.one}))
    return h.mul(a, b), rhs


def module_algebra_sides(h: HopfAlgebraData, k, v, w) -> tuple[dict, dict]:
    """k.(vw) versus Σ (k₍₁₎.v)(k₍₂₎.w)."""
    rhs: dict = {}
    for (i, j), x in h.coproduct(k).items():
        one = h.field.one
        axpy(rhs, x, h.mul(h.adjoint({i: one}, v), h.adjoint({j: one}, w)))
    return h.adjoint(k, h.mul(v, w)), rhs


def equivariance_sides(h: HopfAlgebraData, k, v) -> tuple[dict, dict]:
    """Δ(k.v) versus Σ k₍₁₎.v₍₁₎ ⊗ k₍₂₎.v₍₂₎ (equal when k's coproduct is
    cocommutative)."""
    one = h.field.one
    rhs: dict = {}
    dv = h.coproduct(v)
    for (a, b), x in h.coproduct(k).items():
        for (p, r), y in dv.items():
            left = h.adjoint({a: one}, {p: one})
            right = h.adjoint({b: one}, {r: one})
            for s, u in left.items():
                for t, w in right.items():
                    _tensor_add(rhs, (s, t), x * y * u * w)
    return h.coproduct(h.adjoint(k, v)), rhs


def random_element(h: HopfAlgebraData, rng, support: int = 3, size: int = 3) -> dict:
    out: dict = {}
    for i in rng.sample(range(h.dim), min(support, h.dim)):
        c = h.field.random_element(rng, size)
        if c:
            out[i] = c
    return out


# -- structure-constant files ------------------------------------------------------
#
#   field Q
#   dim 4
#   name sweedler            (optional)
#   label 2 x                (optional)
#   unit 1 0 0 0             dense row
#   counit 1 1 0 0           dense row
#   mult i j k <coeff>       e_i e_j has coefficient coeff on e_k
#   comult k i j <coeff>     Δe_k has coefficient coeff on e_i⊗e_j
#   antipode i j <coeff>     S(e_i) has coefficient coeff on e_j
#
# Row entries are whitespace separated, so they must not contain spaces;
# a triple's coefficient is the rest of its line. '#' starts a comment.


def _row_literal(x: Scalar) -> str:
    return x.field._fmt(x.value).replace(" ", "")


def dump_hsc(h: HopfAlgebraData) -> str:
    lines = [f"field {h.field}", f"dim {h.dim}", f"name {h.name}"]
    for i, lab in enumerate(h.labels):
        lines.append(f"label {i} {lab}")
    lines.append("unit " + " ".join(_row_literal(h.unit.get(i, h.field.zero)) for i in range(h.dim)))
    lines.append("counit " + " ".join(_row_literal(x) for x in h.counit_vec))
    for (i, j) in sorted(h.mult):
        for k, x in sorted(h.mult[(i, j)].items()):
            lines.append(f"mult {i} {j} {k} {x}")
    for k, t in enumerate(h.comult):
        for (i, j), x in sorted(t.items()):
            lines.append(f"comult {k} {i} {j} {x}")
    for i, img in enumerate(h.antipode):
        for j, x in sorted(img.items()):
            lines.append(f"antipode {i} {j} {x}")
    return "\n".join(lines) + "\n"


def parse_hsc(text: str) -> HopfAlgebraData:
    from .errors import ParseError
    from .scalar import parse_field

    field = None
    dim = None
    name = "H"
    labels: dict = {}
    unit = counit = None
    mult: dict = {}
    comult: dict = {}
    antipode: dict = {}
    arity = {"mult": 3, "comult": 3, "antipode": 2}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        parts = line.split(None, 1)
        kw = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        rest_col = line.find(rest, col0 - 1 + len(kw)) + 1 if rest else col0 + len(kw)

        def fail(msg, col=rest_col):
            raise ParseError(msg, lineno, col)

        def scalar(tok, col):
            if field is None:
                fail("coefficient before the field line", col)
            try:
                return field.parse(tok)
            except ParseError as e:
                raise ParseError(f"bad coefficient {tok!r}: {e}", lineno, col) from None
            except ZeroDivisionError:
                raise ParseError(f"division by zero in {tok!r}", lineno, col) from None

        if kw == "field":
            try:
                field = parse_field(rest)
            except Exception as e:  # noqa: BLE001 - any failure is a parse error here
                fail(f"bad field descriptor: {e}")
        elif kw == "dim":
            try:
                dim = int(rest)
            except ValueError:
                fail(f"dim must be an integer, got {rest!r}")
            if dim < 1:
                fail("dim must be positive")
        elif kw == "name":
            name = rest.strip()
        elif kw == "label":
            bits = rest.split(None, 1)
            if len(bits) != 2 or not bits[0].isdigit():
                fail("expected: label <index> <text>")
            labels[int(bits[0])] = bits[1].strip()
        elif kw in ("unit", "counit"):
            if dim is None:
                fail(f"{kw} row before the dim line", col0)
            toks = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)][1:]
            if len(toks) != dim:
                fail(f"{kw} row needs {dim} entries, got {len(toks)}")
            row = [scalar(t, c) for t, c in toks]
            if kw == "unit":
                unit = row
            else:
                counit = row
        elif kw in arity:
            if dim is None:
                fail(f"{kw} entry before the dim line", col0)
            n = arity[kw]
            bits = rest.split(None, n)
            if len(bits) != n + 1:
                fail(f"expected: {kw} " + " ".join(["<index>"] * n) + " <coeff>")
            idx = []
            pos = rest_col
            for b in bits[:n]:
                pos = line.find(b, pos - 1) + 1
                try:
                    v = int(b)
                except ValueError:
                    fail(f"index {b!r} is not an integer", pos)
                if not 0 <= v < dim:
                    fail(f"index {v} out of range 0..{dim - 1}", pos)
                idx.append(v)
                pos += len(b)
            coeff_col = line.find(bits[n], pos - 1) + 1
            c = scalar(bits[n].strip(), coeff_col)
            if kw == "mult":
                img = mult.setdefault((idx[0], idx[1]), {})
                img[idx[2]] = img.get(idx[2], field.zero) + c
            elif kw == "comult":
                t = comult.setdefault(idx[0], {})
                t[(idx[1], idx[2])] = t.get((idx[1], idx[2]), field.zero) + c
            else:
                img = antipode.setdefault(idx[0], {})
                img[idx[1]] = img.get(idx[1], field.zero) + c
        else:
            fail(f"unknown keyword {kw!r}", col0)

    for what, val in (("field", field), ("dim", dim), ("unit", unit), ("counit", counit)):
        if val is None:
            raise ParseError(f"missing {what} line")
    return HopfAlgebraData(
        field,
        dim,
        mult,
        unit,
        comult,
        counit,
        antipode,
        name=name,
        labels=[labels.get(i, f"e{i}") for i in range(dim)],
    )


def load_hsc(path) -> HopfAlgebraData:
    with open(path, encoding="utf-8") as fh:
        return parse_hsc(fh.read())
