"""Exact scalar fields: Q, F_p, Q(zeta_n) and univariate rational functions.

A field object doubles as its own descriptor. Calling it coerces integers,
fractions, literal strings and scalars of a subfield into a :class:`Scalar`::

    >>> Q = Rationals()
    >>> Q(1) / 2 + Q("1/3")
    Scalar('5/6', Q)
    >>> K = Cyclotomic(3)
    >>> z = K.gen
    >>> z**2 + z + 1
    Scalar('0', cyclotomic:3)
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property

from . import _poly
from .errors import (
    DivisionByZero,
    FieldMismatch,
    NoSuchRoot,
    ParseError,
    UnsupportedExtension,
)

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "Cyclotomic",
    "RationalFunctions",
    "Scalar",
    "QQ",
    "parse_field",
    "primitive_root",
    "cyclotomic_polynomial",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _int_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _int_exact_div(p, d):
    p = list(p)
    out = [0] * (len(p) - len(d) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = p[i + len(d) - 1] // d[-1]
        out[i] = c
        for j, b in enumerate(d):
            p[i + j] -= c * b
    assert not any(p), "inexact cyclotomic division"
    return out


class Field:
    """Common interface. Subclasses implement payload-level arithmetic."""

    characteristic: int = 0

    # payload arithmetic, overridden per field
    _zero = None
    _one = None

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        return a == self._zero

    def _from_int(self, n: int):
        raise NotImplementedError

    def _fmt(self, a) -> str:
        raise NotImplementedError

    def _suffix(self) -> str:
        return ""

    def symbols(self) -> dict:
        return {}

    # public surface

    @property
    def zero(self) -> Scalar:
        return Scalar(self, self._zero)

    @property
    def one(self) -> Scalar:
        return Scalar(self, self._one)

    def __call__(self, x) -> Scalar:
        if isinstance(x, Scalar):
            if x.field == self:
                return x
            return self.embed(x)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return Scalar(self, self._from_int(x))
        if isinstance(x, Fraction):
            num = Scalar(self, self._from_int(x.numerator))
            return num / Scalar(self, self._from_int(x.denominator))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def embed(self, x: Scalar) -> Scalar:
        raise UnsupportedExtension(f"no embedding of {x.field} into {self}")

    def format(self, x: Scalar) -> str:
        return self._fmt(x.value) + self._suffix()

    def parse(self, text: str) -> Scalar:
        return _LiteralParser(self, text).parse()

    def primitive_root(self, n: int) -> Scalar:
        raise NoSuchRoot(f"{self} has no primitive {n}-th root of unity")

    def random_element(self, rng, size: int = 3) -> Scalar:
        return self(rng.randint(-size, size))

    def contains_field(self, other: Field) -> bool:
        if other == self:
            return True
        try:
            self.embed(other.one)
        except UnsupportedExtension:
            return False
        return True

    def __repr__(self) -> str:
        return str(self)


class Rationals(Field):
    characteristic = 0
    _zero = Fraction(0)
    _one = Fraction(1)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if not a:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def _is_zero(self, a):
        return not a

    def _from_int(self, n):
        return Fraction(n)

    def _fmt(self, a):
        return str(a)

    def embed(self, x):
        if x.field == self:
            return x
        raise UnsupportedExtension(f"no embedding of {x.field} into Q")

    def primitive_root(self, n):
        if n == 1:
            return self.one
        if n == 2:
            return -self.one
        raise NoSuchRoot(f"Q has no primitive {n}-th root of unity")

    def random_element(self, rng, size=3):
        den = rng.randint(1, size)
        return self(Fraction(rng.randint(-size, size), den))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __str__(self):
        return "Q"


QQ = Rationals()


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self._zero = 0
        self._one = 1 % p

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        if not a:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _from_int(self, n):
        return n % self.p

    def _fmt(self, a):
        return str(a)

    def _suffix(self):
        return f" mod {self.p}"

    def embed(self, x):
        if x.field == self:
            return x
        raise UnsupportedExtension(f"no embedding of {x.field} into {self}")

    def primitive_root(self, n):
        if n < 1 or (self.p - 1) % n:
            raise NoSuchRoot(f"F_{self.p} has no primitive {n}-th root of unity")
        for r in range(1, self.p):
            if pow(r, n, self.p) == 1 and all(pow(r, m, self.p) != 1 for m in range(1, n)):
                return Scalar(self, r)
        raise NoSuchRoot(f"F_{self.p} has no primitive {n}-th root of unity")  # pragma: no cover

    def random_element(self, rng, size=3):
        return Scalar(self, rng.randrange(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __str__(self):
        return f"fp:{self.p}"


def _common_denominator(p) -> tuple[list[int], int]:
    den = 1
    for x in p:
        q = x.denominator
        if q != 1:
            den = den * q // math.gcd(den, q)
    if den == 1:
        return [x.numerator for x in p], 1
    return [x.numerator * (den // x.denominator) for x in p], den


class Cyclotomic(Field):
    """Q(zeta) with zeta a primitive n-th root of unity; payloads are reduced
    modulo the n-th cyclotomic polynomial."""

    characteristic = 0

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclotomic order must be positive")
        self.n = n
        self.base = QQ
        self.modulus = tuple(Fraction(c) for c in cyclotomic_polynomial(n))
        self.degree = len(self.modulus) - 1
        self._zero = ()
        self._one = (Fraction(1),)
        # z^(degree+i) reduced, for i < degree − 1; Φ_n is monic with integer coefficients
        d = self.degree
        red = []
        cur = [-int(c) for c in cyclotomic_polynomial(n)[:d]]
        for _ in range(max(d - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [x - top * int(c) for x, c in zip(cur, cyclotomic_polynomial(n)[:d])]
        self._red = red

    def _reduce(self, p):
        p = _poly.trim(QQ, p)
        if len(p) > self.degree:
            p = _poly.divmod_(QQ, p, self.modulus)[1]
        return p

    def _add(self, a, b):
        return _poly.add(QQ, a, b)

    def _neg(self, a):
        return _poly.neg(QQ, a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        if len(a) == 1 and len(b) == 1:
            return (a[0] * b[0],)
        # integer arithmetic over a common denominator; Fractions only at the end
        A, da = _common_denominator(a)
        B, db = _common_denominator(b)
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(A):
            if x:
                for j, y in enumerate(B):
                    prod[i + j] += x * y
        d = self.degree
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                for t, r in enumerate(self._red[k - d]):
                    if r:
                        prod[t] += c * r
        del prod[d:]
        while prod and not prod[-1]:
            prod.pop()
        den = da * db
        return tuple(Fraction(x, den) for x in prod)

    def _inv(self, a):
        if not a:
            raise DivisionByZero("division by zero in a cyclotomic field")
        return self._reduce(_poly.inverse_mod(QQ, a, self.modulus))

    def _is_zero(self, a):
        return not a

    def _from_int(self, n):
        return (Fraction(n),) if n else ()

    def _fmt(self, a):
        return _format_poly(a, "z", QQ)

    def symbols(self):
        return {"z": self.gen}

    @cached_property
    def gen(self) -> Scalar:
        return Scalar(self, self._reduce((Fraction(0), Fraction(1))))

    def embed(self, x):
        if x.field == self:
            return x
        if x.field == QQ:
            return Scalar(self, self._from_fraction(x.value))
        raise UnsupportedExtension(f"no embedding of {x.field} into {self}")

    def _from_fraction(self, f):
        return (f,) if f else ()

    def primitive_root(self, n):
        if n < 1:
            raise NoSuchRoot("order must be positive")
        if self.n % n == 0:
            return self.gen ** (self.n // n)
        # all roots of unity in Q(zeta_m): a cyclic group of order lcm(m, 2)
        order = self.n if self.n % 2 == 0 else 2 * self.n
        omega = self.gen if self.n % 2 == 0 else -self.gen
        if order % n:
            raise NoSuchRoot(f"{self} has no primitive {n}-th root of unity")
        return omega ** (order // n)

    def random_element(self, rng, size=3):
        coeffs = [Fraction(rng.randint(-size, size), rng.randint(1, 2)) for _ in range(self.degree)]
        return Scalar(self, self._reduce(coeffs))

    def __eq__(self, other):
        return isinstance(other, Cyclotomic) and other.n == self.n

    def __hash__(self):
        return hash(("cyclotomic", self.n))

    def __str__(self):
        return f"cyclotomic:{self.n}"


class RationalFunctions(Field):
    """base(var): payloads ``(num, den)`` with coprime numerator/denominator
    and monic denominator."""

    def __init__(self, base: Field = QQ, var: str = "q"):
        if isinstance(base, RationalFunctions):
            raise ValueError("rational function fields nest at most one level")
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self._zero = ((), (base._one,))
        self._one = ((base._one,), (base._one,))

    def _make(self, num, den):
        k = self.base
        num = _poly.trim(k, num)
        den = _poly.trim(k, den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self._zero
        g = _poly.gcd(k, num, den)
        if len(g) > 1:
            num = _poly.divmod_(k, num, g)[0]
            den = _poly.divmod_(k, den, g)[0]
        lead = k._inv(den[-1])
        return _poly.scale(k, lead, num), _poly.scale(k, lead, den)

    def _add(self, a, b):
        k = self.base
        if a[1] == b[1]:
            return self._make(_poly.add(k, a[0], b[0]), a[1])
        num = _poly.add(k, _poly.mul(k, a[0], b[1]), _poly.mul(k, b[0], a[1]))
        return self._make(num, _poly.mul(k, a[1], b[1]))

    def _neg(self, a):
        return (_poly.neg(self.base, a[0]), a[1])

    def _mul(self, a, b):
        k = self.base
        return self._make(_poly.mul(k, a[0], b[0]), _poly.mul(k, a[1], b[1]))

    def _inv(self, a):
        if not a[0]:
            raise DivisionByZero("division by zero in a rational function field")
        return self._make(a[1], a[0])

    def _is_zero(self, a):
        return not a[0]

    def _from_int(self, n):
        c = self.base._from_int(n)
        if self.base._is_zero(c):
            return self._zero
        return ((c,), (self.base._one,))

    def _fmt(self, a):
        num = _format_poly(a[0], self.var, self.base)
        if a[1] == (self.base._one,):
            return num
        den = _format_poly(a[1], self.var, self.base)
        return f"({num})/({den})"

    def _suffix(self):
        return self.base._suffix()

    def symbols(self):
        out = {self.var: self.gen}
        for name, val in self.base.symbols().items():
            out[name] = self.embed(val)
        return out

    @cached_property
    def gen(self) -> Scalar:
        k = self.base
        return Scalar(self, ((k._zero, k._one), (k._one,)))

    def embed(self, x):
        if x.field == self:
            return x
        if x.field == self.base:
            c = x.value
            if self.base._is_zero(c):
                return self.zero
            return Scalar(self, ((c,), (self.base._one,)))
        if isinstance(x.field, Rationals) and self.base.contains_field(x.field):
            return self.embed(self.base.embed(x))
        raise UnsupportedExtension(f"no embedding of {x.field} into {self}")

    def primitive_root(self, n):
        return self.embed(self.base.primitive_root(n))

    def random_element(self, rng, size=3):
        k = self.base
        num = [k.random_element(rng, size).value for _ in range(rng.randint(1, 3))]
        den = [k.random_element(rng, size).value for _ in range(rng.randint(1, 2))] + [k._one]
        return Scalar(self, self._make(num, den))

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctions)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ratfunc", self.base, self.var))

    def __str__(self):
        if self.base == QQ and self.var == "q":
            return "ratfunc"
        if self.var == "q":
            return f"ratfunc:{self.base}"
        return f"ratfunc[{self.var}]:{self.base}"


def _format_poly(coeffs, var, k: Field) -> str:
    if not coeffs:
        return "0"
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if k._is_zero(c):
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        cs = k._fmt(c)
        compound = bool(re.search(r".[-+ ]", cs))
        if not mono:
            term = f"({cs})" if compound and terms else cs
        elif c == k._one:
            term = mono
        elif not compound and k._neg(c) == k._one and k.characteristic == 0:
            term = "-" + mono
        elif compound:
            term = f"({cs})*{mono}"
        else:
            term = f"{cs}*{mono}"
        terms.append(term)
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


_FIELD_RE = re.compile(r"^\s*(?P<body>.*?)\s*$")


def parse_field(text: str) -> Field:
    """Parse a field descriptor: ``Q``, ``fp:p``, ``cyclotomic:n``,
    ``ratfunc`` (= Q(q)) or ``ratfunc:<base>``."""
    try:
        return _parse_field(text)
    except ValueError as e:
        raise ParseError(f"bad field descriptor {text!r}: {e}") from None


def _parse_field(text: str) -> Field:
    body = _FIELD_RE.match(text).group("body")
    low = body.lower()
    if low in ("q", "qq", "rationals"):
        return QQ
    if low.startswith("fp:"):
        p = low[3:].split(",")[0]
        return PrimeField(int(p))
    if low.startswith("cyclotomic:"):
        return Cyclotomic(int(low.split(":", 1)[1]))
    if low == "ratfunc":
        return RationalFunctions(QQ)
    if low.startswith("ratfunc:"):
        return RationalFunctions(_parse_field(body.split(":", 1)[1]))
    raise ParseError(f"unknown field descriptor {text!r}")


def primitive_root(field: Field, n: int) -> Scalar:
    """Primitive n-th root of unity in ``field`` (smallest residue in F_p)."""
    return field.primitive_root(n)


class Scalar:
    """Immutable element of a :class:`Field` in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field._add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return Scalar(f, f._add(self.value, f._neg(o.value)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field._mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return Scalar(f, f._mul(self.value, f._inv(o.value)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.value))

    def __pos__(self):
        return self

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field._inv(self.value))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field(other).value
        return NotImplemented

    def __hash__(self):
        if isinstance(self.field, Rationals):
            return hash(self.value)
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self)

    def __repr__(self):
        return f"Scalar({str(self)!r}, {self.field})"


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")
_MOD_RE = re.compile(r"^(?P<expr>.*?)\s+mod\s+(?P<p>\d+)\s*$", re.S)


class _LiteralParser:
    """Recursive-descent evaluator for scalar literals in a given field."""

    def __init__(self, field: Field, text: str):
        self.field = field
        self.text = text
        m = _MOD_RE.match(text)
        if m:
            p = int(m.group("p"))
            if field.characteristic != p:
                raise ParseError(f"literal {text!r} is mod {p} but field is {field}")
            text = m.group("expr")
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        out = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN_RE.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {text[i:i + 1]!r}", column=i + 1)
            num, ident, op = m.groups()
            col = m.start() + (len(m.group(0)) - len(m.group(0).lstrip())) + 1
            if num is not None:
                out.append(("num", int(num), col))
            elif ident is not None:
                out.append(("id", ident, col))
            else:
                out.append(("op", "^" if op == "**" else op, col))
            i = m.end()
        return out

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, value=None):
        tok = self._peek()
        if tok is None or (value is not None and tok[1] != value):
            col = tok[2] if tok else len(self.text) + 1
            raise ParseError(f"expected {value or 'token'} in {self.text!r}", column=col)
        self.pos += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ParseError("empty literal")
        val = self._expr()
        if self._peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}", column=self._peek()[2])
        return val

    def _expr(self):
        val = self._term()
        while (tok := self._peek()) and tok[1] in ("+", "-"):
            self.pos += 1
            rhs = self._term()
            val = val + rhs if tok[1] == "+" else val - rhs
        return val

    def _term(self):
        val = self._unary()
        while (tok := self._peek()) and tok[1] in ("*", "/"):
            self.pos += 1
            rhs = self._unary()
            val = val * rhs if tok[1] == "*" else val / rhs
        return val

    def _unary(self):
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in ("+", "-"):
            self.pos += 1
            val = self._unary()
            return -val if tok[1] == "-" else val
        return self._power()

    def _power(self):
        base = self._atom()
        tok = self._peek()
        if tok and tok[1] == "^":
            self.pos += 1
            sign = 1
            tok = self._peek()
            paren = False
            if tok and tok[1] == "(":
                self.pos += 1
                paren = True
                tok = self._peek()
            if tok and tok[1] == "-":
                self.pos += 1
                sign = -1
            exp = self._take()
            if exp[0] != "num":
                raise ParseError("exponent must be an integer", column=exp[2])
            if paren:
                self._take(")")
            return base ** (sign * exp[1])
        return base

    def _atom(self):
        tok = self._take()
        kind, val, col = tok
        if kind == "num":
            return self.field(val)
        if kind == "id":
            syms = self.field.symbols()
            if val not in syms:
                raise ParseError(f"unknown symbol {val!r} for field {self.field}", column=col)
            return syms[val]
        if val == "(":
            inner = self._expr()
            self._take(")")
            return inner
        raise ParseError(f"unexpected {val!r}", column=col)
