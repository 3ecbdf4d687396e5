"""Modules over Hopf algebras and their locally finite parts.

Two kinds of module live here. :class:`ModuleData` is a finite-dimensional
representation of a :class:`~hopfad.hopf.HopfAlgebraData`, one matrix per
algebra basis element. :class:`ComputableModule` has a keyed basis that may
be infinite and a finite list of generators acting by rules; it is what orbit
closures run on.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import (
    ActionNotFinitelySupported,
    AlgebraMismatch,
    DimensionMismatch,
    PreconditionViolated,
    UnsupportedExtension,
)
from .hopf import HopfAlgebraData
from .linalg import Echelon, LinearMap, Subspace, axpy, sparse
from .scalar import Cyclotomic, Field, RationalFunctions, Rationals, Scalar

__all__ = [
    "ModuleData",
    "ComputableModule",
    "Generator",
    "Finite",
    "BudgetExceeded",
    "default_budget",
    "orbit_closure",
    "locally_finite_part",
    "u_prime",
    "u_double_prime",
    "u_prime_keyed",
    "u_double_prime_keyed",
    "tensor_module",
    "direct_sum",
    "extend_scalars",
    "is_submodule",
]

DEFAULT_BUDGET = 200


def default_budget() -> int:
    """Budget from HOPFAD_BUDGET, else 200."""
    raw = os.environ.get("HOPFAD_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise PreconditionViolated(f"HOPFAD_BUDGET must be an integer, got {raw!r}") from None
        if value < 1:
            raise PreconditionViolated("HOPFAD_BUDGET must be at least 1")
        return value
    return DEFAULT_BUDGET


# -- verdicts -------------------------------------------------------------------------


@dataclass(frozen=True)
class Finite:
    """The orbit closed up inside ``subspace`` of dimension ``dim``."""

    dim: int
    subspace: Subspace = dc_field(compare=False, repr=False)
    history: tuple = dc_field(default=(), compare=False)

    kind = "finite"


@dataclass(frozen=True)
class BudgetExceeded:
    """Evidence only: the orbit grew past ``budget`` dimensions."""

    reached: int
    budget: int
    history: tuple = dc_field(default=(), compare=False)

    kind = "budget-exceeded"


# -- finite-dimensional modules --------------------------------------------------------


def _same_algebra(a: HopfAlgebraData, b: HopfAlgebraData) -> bool:
    if a is b:
        return True
    return (
        a.field == b.field
        and a.dim == b.dim
        and a.mult == b.mult
        and a.comult == b.comult
        and a.antipode == b.antipode
    )


class ModuleData:
    """Left module over a finite-dimensional Hopf algebra.

    ``action[i]`` is the matrix of the i-th algebra basis element. The
    representation property is checked on construction unless ``check`` is
    False.
    """

    def __init__(self, algebra: HopfAlgebraData, dim: int, action: Sequence[LinearMap], *, name="V", check=True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.name = name
        if len(action) != algebra.dim:
            raise DimensionMismatch(f"need {algebra.dim} action matrices, got {len(action)}")
        acts = []
        for m in action:
            if not isinstance(m, LinearMap):
                m = LinearMap(self.field, m, dim, dim)
            if m.domain_dim != dim or m.codomain_dim != dim:
                raise DimensionMismatch("action matrices must be dim x dim")
            acts.append(m)
        self.action = acts
        self._cols = [[m.column(j) for j in range(dim)] for m in acts]
        if check:
            self._check()

    def _check(self):
        h = self.algebra
        unit_map = self.act_matrix(h.one)
        if unit_map != LinearMap.identity(self.field, self.dim):
            raise PreconditionViolated("the unit does not act as the identity")
        for i in range(h.dim):
            for j in range(h.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = self.act_matrix(h.mult.get((i, j), {}))
                if lhs != rhs:
                    raise PreconditionViolated(f"action is not multiplicative at basis pair ({i}, {j})")

    def act_matrix(self, a) -> LinearMap:
        a = self.algebra.element(a)
        cols = []
        for j in range(self.dim):
            col: dict = {}
            for i, x in a.items():
                axpy(col, x, self._cols[i][j])
            cols.append(col)
        return LinearMap.from_columns(self.field, cols, self.dim)

    def act(self, a, v) -> dict:
        """a·v for an algebra element and a module vector (sparse result)."""
        a = self.algebra.element(a)
        v = sparse(v, self.dim)
        out: dict = {}
        for i, x in a.items():
            cols = self._cols[i]
            for j, y in v.items():
                axpy(out, x * y, cols[j])
        return out

    # constructors

    @classmethod
    def regular(cls, h: HopfAlgebraData) -> ModuleData:
        return cls(h, h.dim, [h.left_mult_map({i: h.field.one}) for i in range(h.dim)], name=f"{h.name}-regular", check=False)

    @classmethod
    def adjoint(cls, h: HopfAlgebraData) -> ModuleData:
        one = h.field.one
        maps = [
            LinearMap.from_columns(h.field, [h.adjoint({i: one}, {j: one}) for j in range(h.dim)], h.dim)
            for i in range(h.dim)
        ]
        return cls(h, h.dim, maps, name=f"ad {h.name}", check=False)

    @classmethod
    def trivial(cls, h: HopfAlgebraData) -> ModuleData:
        return cls(h, 1, [LinearMap(h.field, [[h.counit_vec[i]]], 1, 1) for i in range(h.dim)], name="trivial", check=False)

    @classmethod
    def zero(cls, h: HopfAlgebraData) -> ModuleData:
        return cls(h, 0, [LinearMap(h.field, [], 0, 0) for _ in range(h.dim)], name="zero", check=False)

    @classmethod
    def from_basis_actions(cls, h, dim, matrices, name="V") -> ModuleData:
        return cls(h, dim, matrices, name=name)

    @classmethod
    def from_generator_actions(cls, h: HopfAlgebraData, dim: int, gens: Mapping[str, Sequence], name="V") -> ModuleData:
        """Extend generator matrices to all basis elements through ``h.words``."""
        if h.words is None:
            raise PreconditionViolated(f"{h.name} has no basis words; give every basis action")
        gm = {k: (m if isinstance(m, LinearMap) else LinearMap(h.field, m, dim, dim)) for k, m in gens.items()}
        maps = []
        for word in h.words:
            m = LinearMap.identity(h.field, dim)
            for g in word:
                if g not in gm:
                    raise PreconditionViolated(f"no matrix for generator {g!r}")
                m = m @ gm[g]
            maps.append(m)
        return cls(h, dim, maps, name=name)

    def as_computable(self) -> ComputableModule:
        """Keys 0..dim−1; every algebra basis element is a generator."""
        h = self.algebra
        gens = []
        for i in range(h.dim):
            cols = self._cols[i]
            gens.append(Generator(h.labels[i], (lambda key, cols=cols: cols[key]), grouplike=False))
        return ComputableModule(self.field, gens, name=self.name, ambient=self.dim)

    def submodule_check(self, U: Subspace) -> bool:
        return is_submodule(self, U)

    def __repr__(self):
        return f"ModuleData({self.name!r}, dim={self.dim}, over {self.algebra.name})"


def is_submodule(M: ModuleData, U: Subspace) -> bool:
    """h·U ⊆ U for every algebra basis element h."""
    e = U.echelon()
    one = M.field.one
    for i in range(M.algebra.dim):
        for u in U.vectors:
            if not e.contains(M.act({i: one}, u)):
                return False
    return True


def tensor_module(M: ModuleData, N: ModuleData) -> ModuleData:
    """h·(v⊗w) = h₍₁₎v ⊗ h₍₂₎w, with e_i⊗f_j at i·dim N + j."""
    if not _same_algebra(M.algebra, N.algebra):
        raise AlgebraMismatch(f"{M.algebra.name} vs {N.algebra.name}")
    h = M.algebra
    dn = N.dim
    maps = []
    for k in range(h.dim):
        cols = []
        for i in range(M.dim):
            for j in range(dn):
                col: dict = {}
                for (a, b), x in h.comult[k].items():
                    left = M._cols[a][i]
                    right = N._cols[b][j]
                    for p, u in left.items():
                        for r, w in right.items():
                            axpy(col, x * u * w, {p * dn + r: M.field.one})
                cols.append(col)
        maps.append(LinearMap.from_columns(h.field, cols, M.dim * dn))
    return ModuleData(h, M.dim * dn, maps, name=f"{M.name}⊗{N.name}", check=False)


def direct_sum(*mods: ModuleData) -> ModuleData:
    h = mods[0].algebra
    for m in mods[1:]:
        if not _same_algebra(h, m.algebra):
            raise AlgebraMismatch("summands live over different algebras")
    total = sum(m.dim for m in mods)
    maps = []
    for k in range(h.dim):
        cols = []
        off = 0
        for m in mods:
            for j in range(m.dim):
                cols.append({off + i: x for i, x in m._cols[k][j].items()})
            off += m.dim
        maps.append(LinearMap.from_columns(h.field, cols, total))
    return ModuleData(h, total, maps, name="⊕".join(m.name for m in mods), check=False)


# -- computable modules ------------------------------------------------------------------


@dataclass
class Generator:
    """One generator's action on basis keys. ``in_T`` marks generators of the
    distinguished subalgebra T; ``grouplike`` marks generators acting
    diagonally on tensor products."""

    name: str
    rule: Callable[[Hashable], Mapping]
    in_T: bool = False
    grouplike: bool = False


class ComputableModule:
    """Module with a keyed basis and generator actions given by rules.

    Keys must be hashable and mutually comparable (they order echelon
    pivots). ``ambient`` is a finite dimension when keys are 0..dim−1, and
    None otherwise.
    """

    def __init__(
        self,
        field: Field,
        generators: Sequence[Generator],
        *,
        name: str = "V",
        ambient: int | None = None,
        key_format: Callable | None = None,
        use_T: bool = False,
    ):
        self.field = field
        self.generators = list(generators)
        self.name = name
        self.ambient = ambient
        self.key_format = key_format or str
        self.use_T = use_T
        self._cache: dict = {}

    def active_generators(self, use_T: bool | None = None) -> list[Generator]:
        if use_T is None:
            use_T = self.use_T
        if not use_T:
            return self.generators
        gens = [g for g in self.generators if g.in_T]
        if not gens:
            raise PreconditionViolated(f"{self.name} has no generators flagged as belonging to T")
        return gens

    def act_key(self, gen: Generator, key) -> dict:
        ck = (gen.name, key)
        hit = self._cache.get(ck)
        if hit is None:
            hit = gen.rule(key)
            if not isinstance(hit, Mapping):
                raise ActionNotFinitelySupported(
                    f"generator {gen.name} returned {type(hit).__name__} on {key!r}; expected a finite mapping"
                )
            hit = {k: self.field(x) for k, x in hit.items() if x}
            self._cache[ck] = hit
        return hit

    def act(self, gen: Generator | str, v: Mapping) -> dict:
        if isinstance(gen, str):
            gen = self.generator(gen)
        out: dict = {}
        for key, x in v.items():
            axpy(out, x, self.act_key(gen, key))
        return out

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def __repr__(self):
        return f"ComputableModule({self.name!r}, field={self.field})"


def orbit_closure(module, seeds: Iterable[Mapping], budget: int | None = None, use_T: bool | None = None):
    """Breadth-first closure of span(seeds) under the generators.

    Returns :class:`Finite` when a round adds nothing, :class:`BudgetExceeded`
    as soon as the span is bigger than ``budget``. ``history`` records the
    dimension after each round (round 0 is the span of the seeds).
    """
    if isinstance(module, ModuleData):
        module = module.as_computable()
    if budget is None:
        budget = default_budget()
    if budget < 1:
        raise PreconditionViolated("budget must be at least 1")
    F = module.field
    gens = module.active_generators(use_T)
    e = Echelon(F)
    frontier = []
    for s in seeds:
        s = {k: F(x) for k, x in s.items() if x}
        if e.insert(s) is not None:
            frontier.append(s)
        if len(e) > budget:
            return BudgetExceeded(len(e), budget, (len(e),))
    history = [len(e)]
    while frontier:
        nxt = []
        for g in gens:
            for v in frontier:
                w = module.act(g, v)
                if w and e.insert(w) is not None:
                    nxt.append(w)
                    if len(e) > budget:
                        history.append(len(e))
                        return BudgetExceeded(len(e), budget, tuple(history))
        frontier = nxt
        if nxt:
            history.append(len(e))
    return Finite(len(e), e.freeze(module.ambient), tuple(history))


def locally_finite_part(module: ModuleData) -> Subspace:
    """For a finite-dimensional module this is the whole space; each basis
    vector's orbit is closed explicitly as a certificate."""
    comp = module.as_computable()
    e = Echelon(module.field)
    for i in range(module.dim):
        v = orbit_closure(comp, [{i: module.field.one}], budget=max(module.dim, 1))
        if not isinstance(v, Finite):
            raise AssertionError("orbit in a finite-dimensional module exceeded its dimension")
        for r in v.subspace.vectors:
            e.insert(r)
    return e.freeze(module.dim)


# -- U′ and U″ --------------------------------------------------------------------------


def _check_tensor_ambient(U: Subspace, dim_v: int, dim_w: int):
    if U.ambient != dim_v * dim_w:
        raise DimensionMismatch(f"subspace lives in dimension {U.ambient}, expected {dim_v}·{dim_w}")


def u_prime(U: Subspace, dim_v: int, dim_w: int) -> Subspace:
    """Smallest V′ ⊆ V with U ⊆ V′⊗W: span of (Id⊗f_j)(u) over the dual basis f_j."""
    _check_tensor_ambient(U, dim_v, dim_w)
    legs: list[dict] = []
    for u in U.vectors:
        by_j: dict = {}
        for idx, x in u.items():
            i, j = divmod(idx, dim_w)
            by_j.setdefault(j, {})[i] = x
        legs.extend(by_j.values())
    return Subspace(U.field, dim_v, legs)


def u_double_prime(U: Subspace, dim_v: int, dim_w: int) -> Subspace:
    """Smallest W″ ⊆ W with U ⊆ V⊗W″."""
    _check_tensor_ambient(U, dim_v, dim_w)
    legs: list[dict] = []
    for u in U.vectors:
        by_i: dict = {}
        for idx, x in u.items():
            i, j = divmod(idx, dim_w)
            by_i.setdefault(i, {})[j] = x
        legs.extend(by_i.values())
    return Subspace(U.field, dim_w, legs)


def u_prime_keyed(field: Field, vectors: Iterable[Mapping]) -> Subspace:
    """U′ for vectors keyed by pairs (v-key, w-key)."""
    legs = []
    for u in vectors:
        by_j: dict = {}
        for (i, j), x in u.items():
            by_j.setdefault(j, {})[i] = x
        legs.extend(by_j.values())
    return Subspace(field, None, legs)


def u_double_prime_keyed(field: Field, vectors: Iterable[Mapping]) -> Subspace:
    legs = []
    for u in vectors:
        by_i: dict = {}
        for (i, j), x in u.items():
            by_i.setdefault(i, {})[j] = x
        legs.extend(by_i.values())
    return Subspace(field, None, legs)


def tensor_computable(V: ComputableModule, W: ComputableModule) -> ComputableModule:
    """V⊗W for modules whose generators are grouplike: g(v⊗w) = gv⊗gw.

    Generators are matched by name; keys are pairs.
    """
    if V.field != W.field:
        raise AlgebraMismatch(f"{V.field} vs {W.field}")
    gens = []
    for gv in V.generators:
        if not gv.grouplike:
            raise PreconditionViolated(f"generator {gv.name} is not flagged grouplike")
        gw = W.generator(gv.name)

        def rule(key, gv=gv, gw=gw):
            a, b = key
            left = V.act_key(gv, a)
            right = W.act_key(gw, b)
            return {(p, r): x * y for p, x in left.items() for r, y in right.items()}

        gens.append(Generator(gv.name, rule, in_T=gv.in_T, grouplike=True))

    def fmt(key):
        return f"{V.key_format(key[0])}⊗{W.key_format(key[1])}"

    return ComputableModule(V.field, gens, name=f"{V.name}⊗{W.name}", key_format=fmt)


# -- scalar extension ------------------------------------------------------------------


def _check_extension(base: Field, target: Field):
    ok = (isinstance(base, Rationals) and isinstance(target, Cyclotomic)) or (
        isinstance(target, RationalFunctions) and target.base == base
    )
    if base == target:
        ok = True
    if not ok:
        raise UnsupportedExtension(f"extension {base} ⊆ {target} is not supported")


def extend_scalars(module, target: Field):
    """Read the action coefficients in ``target``.

    ModuleData is rebuilt over the extended algebra; ComputableModule keeps
    its keys and rules and coerces every output coefficient.
    """
    _check_extension(module.field, target)
    if isinstance(module, ModuleData):
        h = module.algebra.extend_scalars(target)
        maps = [LinearMap(target, [[target(x) for x in row] for row in m.matrix], module.dim, module.dim) for m in module.action]
        return ModuleData(h, module.dim, maps, name=f"{module.name}_{target}", check=False)
    if isinstance(module, ComputableModule):
        gens = [
            Generator(g.name, (lambda key, g=g: {k: target(x) for k, x in module.act_key(g, key).items()}), g.in_T, g.grouplike)
            for g in module.generators
        ]
        return ComputableModule(
            target, gens, name=f"{module.name}_{target}", ambient=module.ambient, key_format=module.key_format, use_T=module.use_T
        )
    raise UnsupportedExtension(f"cannot extend {type(module).__name__}")


# -- the group algebra of Z ---------------------------------------------------------------


def laurent_module(field: Field, summands: Sequence[str]) -> ComputableModule:
    """A k[t, t⁻¹]-module: a direct sum of ``regular``, ``trivial`` and
    ``sign`` summands (t acting by shift, 1 and −1).

    Keys are ``(s, m)`` with s the summand index and m the exponent (always 0
    for the one-dimensional summands).
    """
    kinds = list(summands)
    for k in kinds:
        if k not in ("regular", "trivial", "sign"):
            raise PreconditionViolated(f"unknown summand {k!r}")

    def shift(step):
        def rule(key):
            s, m = key
            kind = kinds[s]
            if kind == "regular":
                return {(s, m + step): field.one}
            if kind == "trivial":
                return {key: field.one}
            return {key: -field.one}

        return rule

    def fmt(key):
        s, m = key
        return f"t^{m}[{s}]" if kinds[s] == "regular" else f"{kinds[s]}[{s}]"

    return ComputableModule(
        field,
        [Generator("t", shift(1), grouplike=True), Generator("t^-1", shift(-1), grouplike=True)],
        name="+".join(kinds),
        key_format=fmt,
    )
