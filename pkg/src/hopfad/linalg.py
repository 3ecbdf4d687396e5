"""Exact linear algebra over a :class:`~hopfad.scalar.Field`.

Vectors are handled in two shapes. Public functions accept dense coordinate
sequences; internally everything works on sparse dicts ``{key: Scalar}``
whose keys are mutually comparable (ints for finite-dimensional spaces,
group elements or PBW exponent triples for windows of infinite ones).

A :class:`Subspace` keeps a fully reduced row-echelon basis: the pivot of a
row is its smallest key, pivots carry coefficient 1, and every other row
vanishes at each pivot. Two subspaces are equal iff their rows are equal.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, IndexOutOfRange
from .scalar import Field, Scalar

__all__ = [
    "Echelon",
    "Subspace",
    "LinearMap",
    "span",
    "subspace_sum",
    "subspace_intersect",
    "contains",
    "tensor_index",
    "tensor_subspace",
    "sparse",
    "dense",
    "vadd",
    "vsub",
    "vscale",
    "axpy",
]


# sparse vector helpers -------------------------------------------------------


def axpy(dest: dict, c: Scalar, v: Mapping) -> dict:
    """``dest += c * v`` in place; drops entries that cancel."""
    if not c:
        return dest
    for k, x in v.items():
        y = dest.get(k)
        y = c * x if y is None else y + c * x
        if y:
            dest[k] = y
        else:
            dest.pop(k, None)
    return dest


def vadd(u: Mapping, v: Mapping) -> dict:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = x if y is None else y + x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vsub(u: Mapping, v: Mapping) -> dict:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = -x if y is None else y - x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(c: Scalar, v: Mapping) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def sparse(vec, dim: int | None = None) -> dict:
    """Dense sequence (or sparse mapping) to a sparse dict with nonzero entries."""
    if isinstance(vec, dict) or isinstance(vec, Mapping):
        if dim is not None:
            for k in vec:
                if not (isinstance(k, int) and 0 <= k < dim):
                    raise DimensionMismatch(f"coordinate {k!r} outside dimension {dim}")
        return {k: x for k, x in vec.items() if x}
    if dim is not None and len(vec) != dim:
        raise DimensionMismatch(f"expected length {dim}, got {len(vec)}")
    return {i: x for i, x in enumerate(vec) if x}


def dense(vec: Mapping, dim: int, field: Field) -> list[Scalar]:
    out = [field.zero] * dim
    for k, x in vec.items():
        out[k] = x
    return out


# echelon core ----------------------------------------------------------------


class Echelon:
    """Mutable fully reduced echelon basis, grown one vector at a time."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, vectors: Iterable[Mapping] = ()):
        self.field = field
        self.rows: dict = {}
        for v in vectors:
            self.insert(v)

    def reduce(self, v: Mapping) -> dict:
        out = {k: x for k, x in v.items() if x}
        hits = [p for p in out if p in self.rows]
        for p in hits:
            c = out.get(p)
            if c:
                axpy(out, -c, self.rows[p])
        return out

    def insert(self, v: Mapping) -> dict | None:
        """Add ``v``; returns the new normalized row, or None if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        r = vscale(r[p].inverse(), r)
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return r

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def __len__(self):
        return len(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> list:
        return sorted(self.rows)

    def copy(self) -> Echelon:
        e = Echelon(self.field)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e

    def freeze(self, ambient=None) -> Subspace:
        return Subspace(self.field, ambient, self.basis(), _canonical=True)


class Subspace:
    """Finite-dimensional subspace in canonical echelon form.

    ``ambient`` is the ambient dimension, or None for a subspace of a space
    with an unbounded keyed basis.
    """

    __slots__ = ("field", "ambient", "_rows", "_key")

    def __init__(self, field: Field, ambient, rows: Iterable[Mapping], _canonical=False):
        self.field = field
        self.ambient = ambient
        if not _canonical:
            rows = Echelon(field, ({k: field(x) for k, x in sparse(r, ambient).items()} for r in rows)).basis()
        self._rows = tuple(dict(r) for r in rows)
        self._key = tuple(tuple(sorted(r.items())) for r in self._rows)

    @classmethod
    def zero(cls, field: Field, ambient) -> Subspace:
        return cls(field, ambient, (), _canonical=True)

    @classmethod
    def full(cls, field: Field, dim: int) -> Subspace:
        return cls(field, dim, ({i: field.one} for i in range(dim)), _canonical=True)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def vectors(self) -> list[dict]:
        """Sparse basis rows."""
        return [dict(r) for r in self._rows]

    @property
    def basis(self) -> list[list[Scalar]]:
        """Dense echelon matrix; rows are basis vectors."""
        if self.ambient is None:
            raise DimensionMismatch("dense basis needs a finite ambient dimension")
        return [dense(r, self.ambient, self.field) for r in self._rows]

    @property
    def pivots(self) -> list:
        return [min(r) for r in self._rows]

    def echelon(self) -> Echelon:
        e = Echelon(self.field)
        e.rows = {min(r): dict(r) for r in self._rows}
        return e

    def contains(self, v) -> bool:
        return self.echelon().contains(sparse(v, self.ambient))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: Subspace) -> bool:
        e = other.echelon()
        return all(e.contains(r) for r in self._rows)

    def __ge__(self, other: Subspace) -> bool:
        return other <= self

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient == other.ambient and self._key == other._key

    def __hash__(self):
        return hash((self.ambient, self._key))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field})"


def span(vectors: Iterable, ambient_dim, field: Field | None = None) -> Subspace:
    vectors = list(vectors)
    if field is None:
        field = _guess_field(vectors)
    return Subspace(field, ambient_dim, vectors)


def _guess_field(vectors) -> Field:
    for v in vectors:
        vals = v.values() if isinstance(v, Mapping) else v
        for x in vals:
            if isinstance(x, Scalar):
                return x.field
    from .scalar import QQ

    return QQ


def _check_same(a: Subspace, b: Subspace):
    if a.ambient != b.ambient:
        raise DimensionMismatch(f"ambient {a.ambient} vs {b.ambient}")
    if a.field != b.field:
        from .errors import FieldMismatch

        raise FieldMismatch(f"{a.field} vs {b.field}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    e = a.echelon()
    for r in b._rows:
        e.insert(r)
    return e.freeze(a.ambient)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelonize rows (x, x) for x in A and (y, 0) for y in B;
    rows whose first half vanishes span A ∩ B in their second half."""
    _check_same(a, b)
    e = Echelon(a.field)
    for r in a._rows:
        row = {(0, k): x for k, x in r.items()}
        row.update({(1, k): x for k, x in r.items()})
        e.insert(row)
    for r in b._rows:
        e.insert({(0, k): x for k, x in r.items()})
    out = Echelon(a.field)
    for p, row in e.rows.items():
        if p[0] == 1:
            out.insert({k[1]: x for k, x in row.items()})
    return out.freeze(a.ambient)


def contains(a: Subspace, v) -> bool:
    return a.contains(v)


def tensor_index(i: int, j: int, dim_w: int) -> int:
    """Coordinate of e_i ⊗ f_j in V ⊗ W (first factor varies slowest)."""
    if not (0 <= j < dim_w) or i < 0:
        raise IndexOutOfRange(f"tensor index ({i}, {j}) with dim W = {dim_w}")
    return i * dim_w + j


def tensor_subspace(a: Subspace, b: Subspace) -> Subspace:
    """A ⊗ B inside V ⊗ W using the row-major index convention."""
    if a.field != b.field:
        from .errors import FieldMismatch

        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.ambient is None or b.ambient is None:
        ambient = None
        idx = lambda i, j: (i, j)  # noqa: E731
    else:
        ambient = a.ambient * b.ambient
        dw = b.ambient
        idx = lambda i, j: i * dw + j  # noqa: E731
    rows = []
    for u in a._rows:
        for w in b._rows:
            rows.append({idx(i, j): x * y for i, x in u.items() for j, y in w.items()})
    return Subspace(a.field, ambient, rows)


class LinearMap:
    """Matrix with ``matrix[i][j]`` the i-th coordinate of the image of e_j."""

    __slots__ = ("field", "domain_dim", "codomain_dim", "matrix")

    def __init__(self, field: Field, matrix: Sequence[Sequence[Scalar]], domain_dim=None, codomain_dim=None):
        self.field = field
        self.matrix = [list(map(field, row)) for row in matrix]
        self.codomain_dim = len(self.matrix) if codomain_dim is None else codomain_dim
        if domain_dim is None:
            domain_dim = len(self.matrix[0]) if self.matrix else 0
        self.domain_dim = domain_dim
        if len(self.matrix) != self.codomain_dim or any(len(r) != domain_dim for r in self.matrix):
            raise DimensionMismatch("matrix shape does not match the declared dimensions")

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Mapping], codomain_dim: int) -> LinearMap:
        m = [[field.zero] * len(columns) for _ in range(codomain_dim)]
        for j, col in enumerate(columns):
            for i, x in sparse(col, codomain_dim).items():
                m[i][j] = x
        return cls(field, m, len(columns), codomain_dim)

    @classmethod
    def identity(cls, field: Field, n: int) -> LinearMap:
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n, n)

    def column(self, j: int) -> dict:
        return {i: row[j] for i, row in enumerate(self.matrix) if row[j]}

    def apply(self, v) -> dict:
        """Image of ``v`` (dense or sparse) as a sparse dict."""
        v = sparse(v, self.domain_dim)
        out: dict = {}
        for j, c in v.items():
            for i, row in enumerate(self.matrix):
                x = row[j]
                if x:
                    y = out.get(i)
                    y = c * x if y is None else y + c * x
                    if y:
                        out[i] = y
                    else:
                        del out[i]
        return out

    def __call__(self, v) -> list[Scalar]:
        return dense(self.apply(v), self.codomain_dim, self.field)

    def __matmul__(self, other: LinearMap) -> LinearMap:
        if self.domain_dim != other.codomain_dim:
            raise DimensionMismatch("cannot compose: inner dimensions differ")
        cols = [self.apply(other.column(j)) for j in range(other.domain_dim)]
        return LinearMap.from_columns(self.field, cols, self.codomain_dim)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix and self.domain_dim == other.domain_dim

    def transpose(self) -> LinearMap:
        return LinearMap(
            self.field,
            [[self.matrix[i][j] for i in range(self.codomain_dim)] for j in range(self.domain_dim)],
            self.codomain_dim,
            self.domain_dim,
        )

    def image(self) -> Subspace:
        return Subspace(self.field, self.codomain_dim, (self.column(j) for j in range(self.domain_dim)))

    def kernel(self) -> Subspace:
        return nullspace(self.field, self.matrix, self.domain_dim)

    def rank(self) -> int:
        return self.image().dim

    def __repr__(self):
        return f"LinearMap({self.codomain_dim}x{self.domain_dim}, {self.field})"


def nullspace(field: Field, rows: Iterable[Sequence | Mapping], ncols: int) -> Subspace:
    """Solutions x of ``rows · x = 0``."""
    e = Echelon(field, ({k: field(x) for k, x in sparse(r, ncols).items()} for r in rows))
    pivots = set(e.rows)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = {f: field.one}
        for p, row in e.rows.items():
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return Subspace(field, ncols, basis)


def annihilator(s: Subspace) -> Subspace:
    """Functionals (as coordinate vectors in the dual basis) vanishing on ``s``."""
    return nullspace(s.field, s.vectors, s.ambient)


def solve(field: Field, columns: Sequence[Mapping], target: Mapping):
    """Coefficients c with Σ c_j columns[j] = target, or None if unsolvable."""
    # each row carries its column combination on (1, j) coordinates
    e = Echelon(field)
    for j, col in enumerate(columns):
        row = {(0, k): x for k, x in col.items()}
        row[(1, j)] = field.one
        e.insert(row)
    r = e.reduce({(0, k): x for k, x in target.items()})
    if any(k[0] == 0 for k in r):
        return None
    return {k[1]: -x for k, x in r.items()}
