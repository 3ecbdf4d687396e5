"""Quantum sl2 in PBW form.

Elements are finitely supported maps from exponent triples ``(a, b, c)`` to
scalars, standing for the normal monomial F^a K^b E^c. The defining relations
are

    K E = q² E K,   K F = q⁻² F K,   E F − F E = (K − K⁻¹)/(q − q⁻¹),

with the coproduct ΔE = E⊗1 + K⊗E, ΔF = F⊗K⁻¹ + 1⊗F, ΔK = K⊗K.

Two evaluators live here. :class:`PresentedAlgebra` multiplies normal
monomials by closed-form letter rules; :class:`WordRewriter` is a plain
string-rewriting system on the letters ``F K k E`` (``k`` = K⁻¹) used as an
independent cross-check and for the critical-pair self-test.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import PreconditionViolated, RecursionCapExceeded
from .linalg import axpy
from .scalar import Field, RationalFunctions, Scalar

__all__ = [
    "PresentedAlgebra",
    "PBWElement",
    "WordRewriter",
    "q_binomial",
    "q_integer",
    "uq_sl2",
    "uq_sl2_quotient",
    "adjoint_action_pbw",
    "adfin_probe",
    "ad_power_chain",
]

Key = tuple  # (a, b, c)


def q_integer(m: int, t: Scalar) -> Scalar:
    """1 + t + … + t^{m-1}."""
    total = t.field.zero
    p = t.field.one
    for _ in range(m):
        total = total + p
        p = p * t
    return total


def q_binomial(m: int, j: int, t: Scalar) -> Scalar:
    """Gaussian binomial [m choose j]_t via the t-Pascal rule
    [m, j] = [m−1, j−1] + t^j [m−1, j]."""
    if j < 0 or j > m:
        return t.field.zero
    row = [t.field.one]
    for r in range(1, m + 1):
        new = [t.field.one] * (r + 1)
        for i in range(1, r):
            new[i] = row[i - 1] + t**i * row[i]
        row = new
    return row[j]


class PresentedAlgebra:
    """U_q(sl2), optionally divided by E^n, F^n (``truncate``) and K^n − 1
    (``k_order``).

    Over a rational function field ``q`` defaults to the generator. The
    quotient by (E^n, F^n) needs q to be a primitive n-th root of unity with n
    odd; those conditions are checked.
    """

    def __init__(
        self,
        field: Field,
        q: Scalar | None = None,
        n: int | None = None,
        truncate: bool = False,
        k_order: int | None = None,
        self_test: bool = True,
    ):
        self.field = field
        if q is None:
            if not isinstance(field, RationalFunctions):
                raise PreconditionViolated("q must be given unless the field is a rational function field")
            q = field.gen
        self.q = field(q)
        if self.q * self.q == 1:
            raise PreconditionViolated("q² = 1 makes q − q⁻¹ vanish")
        self.n = n
        self.truncate = truncate
        self.k_order = k_order
        if truncate or k_order:
            if n is None or n < 3 or n % 2 == 0:
                raise PreconditionViolated("the quotient needs an odd n ≥ 3")
            if self.q**n != 1 or any(self.q**m == 1 for m in range(1, n)):
                raise PreconditionViolated(f"q is not a primitive {n}-th root of unity")
        if k_order is not None and k_order != n:
            raise PreconditionViolated("K^n = 1 is only supported with the same n as the truncation")
        self.qinv = self.q.inverse()
        self._denom = (self.q - self.qinv).inverse()
        self._coprod_cache: dict = {}
        self._anti_cache: dict = {}
        self._mono_cache: dict = {}
        self.name = self._name()
        if self_test:
            WordRewriter(self).check_confluence()

    def _name(self) -> str:
        if self.k_order:
            return f"u_q(sl2)[n={self.n}]"
        if self.truncate:
            return f"uq-sl2-quotient:{self.n}"
        return "uq-sl2"

    # -- monomials ---------------------------------------------------------------

    def valid(self, key: Key) -> bool:
        a, b, c = key
        if a < 0 or c < 0:
            return False
        if self.truncate and (a >= self.n or c >= self.n):
            return False
        if self.k_order and not (0 <= b < self.k_order):
            return False
        return True

    def _norm_key(self, a, b, c):
        if self.truncate and (a >= self.n or c >= self.n):
            return None
        if self.k_order:
            b %= self.k_order
        return (a, b, c)

    def _put(self, out: dict, key, coeff: Scalar):
        key = self._norm_key(*key)
        if key is None or not coeff:
            return
        y = out.get(key)
        y = coeff if y is None else y + coeff
        if y:
            out[key] = y
        else:
            out.pop(key, None)

    def _times_letter(self, vec: Mapping, letter: str, power: int = 1) -> dict:
        """Right multiplication of a normal-form vector by E, F or K^power."""
        out: dict = {}
        q, qi = self.q, self.qinv
        for (a, b, c), x in vec.items():
            if letter == "E":
                self._put(out, (a, b, c + 1), x)
            elif letter == "K":
                # E^c K^s = q^{-2cs} K^s E^c
                self._put(out, (a, b + power, c), x * q ** (-2 * c * power))
            elif letter == "F":
                # F^a K^b E^c F = q^{-2b} F^{a+1} K^b E^c + commutator terms
                self._put(out, (a + 1, b, c), x * q ** (-2 * b))
                if c:
                    up = sum((qi ** (2 * i) for i in range(c)), self.field.zero)
                    down = sum((q ** (2 * i) for i in range(c)), self.field.zero)
                    # K^b K = K^{b+1}; F^a is untouched
                    self._put(out, (a, b + 1, c - 1), x * up * self._denom)
                    self._put(out, (a, b - 1, c - 1), -x * down * self._denom)
            else:
                raise ValueError(f"unknown letter {letter!r}")
        return out

    def monomial_product(self, k1: Key, k2: Key) -> dict:
        hit = self._mono_cache.get((k1, k2))
        if hit is not None:
            return hit
        vec = {k1: self.field.one}
        a, b, c = k2
        for _ in range(a):
            vec = self._times_letter(vec, "F")
        if b:
            vec = self._times_letter(vec, "K", b)
        for _ in range(c):
            vec = self._times_letter(vec, "E")
        self._mono_cache[(k1, k2)] = vec
        return vec

    def mul_vec(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for k1, s in x.items():
            for k2, t in y.items():
                axpy(out, s * t, self.monomial_product(k1, k2))
        return out

    # -- element constructors -------------------------------------------------------

    def element(self, data) -> PBWElement:
        if isinstance(data, PBWElement):
            return data
        out: dict = {}
        for key, x in dict(data).items():
            self._put(out, tuple(key), self.field(x))
        return PBWElement(self, out)

    def monomial(self, a: int = 0, b: int = 0, c: int = 0) -> PBWElement:
        out: dict = {}
        self._put(out, (a, b, c), self.field.one)
        return PBWElement(self, out)

    @property
    def one(self) -> PBWElement:
        return self.monomial()

    @property
    def E(self) -> PBWElement:
        return self.monomial(0, 0, 1)

    @property
    def F(self) -> PBWElement:
        return self.monomial(1, 0, 0)

    @property
    def K(self) -> PBWElement:
        return self.monomial(0, 1, 0)

    @property
    def Kinv(self) -> PBWElement:
        return self.monomial(0, -1, 0)

    def normal_form(self, word: Iterable) -> PBWElement:
        """Normal form of a word given as letters or (letter, exponent) pairs.

        Letters are ``E``, ``F``, ``K`` (any integer exponent) and ``k``
        (shorthand for K⁻¹).
        """
        vec = {(0, 0, 0): self.field.one}
        for item in word:
            letter, e = (item, 1) if isinstance(item, str) else item
            if letter == "k":
                letter, e = "K", -e
            if letter == "K":
                vec = self._times_letter(vec, "K", e)
                continue
            if letter not in ("E", "F"):
                raise ValueError(f"unknown generator {letter!r}")
            if e < 0:
                raise ValueError(f"{letter} has no inverse")
            for _ in range(e):
                vec = self._times_letter(vec, letter)
        return PBWElement(self, {k: x for k, x in vec.items() if x})

    # -- Hopf structure --------------------------------------------------------------

    def _tensor_mul(self, X: Mapping, Y: Mapping) -> dict:
        out: dict = {}
        for (a1, a2), x in X.items():
            for (b1, b2), y in Y.items():
                left = self.monomial_product(a1, b1)
                if not left:
                    continue
                right = self.monomial_product(a2, b2)
                xy = x * y
                for p, u in left.items():
                    for r, w in right.items():
                        key = (p, r)
                        z = out.get(key)
                        z = xy * u * w if z is None else z + xy * u * w
                        if z:
                            out[key] = z
                        else:
                            out.pop(key, None)
        return out

    def _gen_coproduct(self, letter: str) -> dict:
        one = self.field.one
        o = (0, 0, 0)
        if letter == "E":
            return {((0, 0, 1), o): one, ((0, 1, 0), (0, 0, 1)): one}
        if letter == "F":
            kinv = self._norm_key(0, -1, 0)
            return {((1, 0, 0), kinv): one, (o, (1, 0, 0)): one}
        raise ValueError(letter)

    def monomial_coproduct(self, key: Key) -> dict:
        hit = self._coprod_cache.get(key)
        if hit is not None:
            return hit
        a, b, c = key
        one = self.field.one
        kb = self._norm_key(0, b, 0)
        t = {(kb, kb): one}
        for _ in range(c):
            t = self._tensor_mul(t, self._gen_coproduct("E"))
        # F^a K^b E^c: left-multiply by F one at a time
        for _ in range(a):
            t = self._tensor_mul(self._gen_coproduct("F"), t)
        self._coprod_cache[key] = t
        return t

    def monomial_antipode(self, key: Key) -> dict:
        hit = self._anti_cache.get(key)
        if hit is not None:
            return hit
        a, b, c = key
        one = self.field.one
        sE = {self._norm_key(0, -1, 1): -one}  # −K⁻¹E
        sF = {self._norm_key(1, 1, 0): -one}  # −FK
        vec = {(0, 0, 0): one}
        for _ in range(c):
            vec = self.mul_vec(vec, sE)
        vec = self.mul_vec(vec, {self._norm_key(0, -b, 0): one})
        for _ in range(a):
            vec = self.mul_vec(vec, sF)
        self._anti_cache[key] = vec
        return vec

    def coproduct(self, x) -> dict:
        out: dict = {}
        for key, s in self.element(x).terms.items():
            axpy(out, s, self.monomial_coproduct(key))
        return out

    def antipode(self, x) -> PBWElement:
        out: dict = {}
        for key, s in self.element(x).terms.items():
            axpy(out, s, self.monomial_antipode(key))
        return PBWElement(self, out)

    def counit(self, x) -> Scalar:
        total = self.field.zero
        for (a, b, c), s in self.element(x).terms.items():
            if a == 0 and c == 0:
                total = total + s
        return total

    def adjoint(self, k, v) -> PBWElement:
        """k.v = k₍₁₎ v S(k₍₂₎)."""
        v = self.element(v)
        out: dict = {}
        for (k1, k2), s in self.coproduct(k).items():
            left = self.mul_vec({k1: self.field.one}, v.terms)
            if left:
                axpy(out, s, self.mul_vec(left, self.monomial_antipode(k2)))
        return PBWElement(self, out)

    def tensor_mul(self, X: Mapping, Y: Mapping) -> dict:
        return self._tensor_mul(X, Y)

    def is_cocommutative(self, keys: Iterable[Key]) -> bool:
        """Cocommutativity tested on the given monomials."""
        for key in keys:
            t = self.monomial_coproduct(key)
            if any(t.get((j, i)) != x for (i, j), x in t.items()):
                return False
        return True

    def format_key(self, key: Key) -> str:
        a, b, c = key
        parts = []
        if a:
            parts.append("F" if a == 1 else f"F^{a}")
        if b:
            parts.append("K" if b == 1 else f"K^{b}")
        if c:
            parts.append("E" if c == 1 else f"E^{c}")
        return "".join(parts) or "1"

    def window(self, bmax: int) -> list[Key]:
        """Monomials of the quotient with |b| ≤ bmax (a, c < n)."""
        if not self.truncate:
            raise PreconditionViolated("windows of monomials are defined for the truncated algebra")
        bs = range(self.k_order) if self.k_order else range(-bmax, bmax + 1)
        return [(a, b, c) for a in range(self.n) for b in bs for c in range(self.n)]

    def ad_module(self):
        """The adjoint representation as a computable module; K^{±1} form T."""
        from .finmod import ComputableModule, Generator

        gens = [
            Generator("E", lambda key: self.adjoint(self.E, {key: self.field.one}).terms),
            Generator("F", lambda key: self.adjoint(self.F, {key: self.field.one}).terms),
            Generator("K", lambda key: self.adjoint(self.K, {key: self.field.one}).terms, in_T=True, grouplike=True),
            Generator("K^-1", lambda key: self.adjoint(self.Kinv, {key: self.field.one}).terms, in_T=True, grouplike=True),
        ]
        return ComputableModule(self.field, gens, name=f"ad {self.name}", key_format=self.format_key)

    def __repr__(self):
        return f"PresentedAlgebra({self.name}, field={self.field}, q={self.q})"


class PBWElement:
    """Immutable finitely supported combination of normal monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: PresentedAlgebra, terms: Mapping):
        self.algebra = algebra
        self.terms = {k: x for k, x in terms.items() if x}

    def _other(self, y) -> PBWElement:
        if isinstance(y, PBWElement):
            return y
        return self.algebra.element({(0, 0, 0): self.algebra.field(y)})

    def __add__(self, y):
        out = dict(self.terms)
        axpy(out, self.algebra.field.one, self._other(y).terms)
        return PBWElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.algebra, {k: -x for k, x in self.terms.items()})

    def __sub__(self, y):
        return self + (-self._other(y))

    def __rsub__(self, y):
        return self._other(y) - self

    def __mul__(self, y):
        if isinstance(y, PBWElement):
            return PBWElement(self.algebra, self.algebra.mul_vec(self.terms, y.terms))
        c = self.algebra.field(y)
        return PBWElement(self.algebra, {k: c * x for k, x in self.terms.items()})

    def __rmul__(self, y):
        c = self.algebra.field(y)
        return PBWElement(self.algebra, {k: c * x for k, x in self.terms.items()})

    def __pow__(self, e: int):
        out = self.algebra.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, y):
        if isinstance(y, (int, Scalar)):
            y = self._other(y)
        if not isinstance(y, PBWElement):
            return NotImplemented
        return self.terms == y.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, a=0, b=0, c=0) -> Scalar:
        return self.terms.get((a, b, c), self.algebra.field.zero)

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.algebra.format_key
        return " + ".join(f"({x})*{fmt(k)}" for k, x in sorted(self.terms.items()))

    def __repr__(self):
        return f"PBWElement({self})"


class WordRewriter:
    """String rewriting on the letters F, K, k (= K⁻¹), E.

    Rules: EF → FE + (K − k)/(q − q⁻¹), EK → q⁻²KE, Ek → q²kE, KF → q⁻²FK,
    kF → q²Fk, Kk → 1, kK → 1; plus Eⁿ → 0, Fⁿ → 0 when truncated and
    Kⁿ → 1, k → K^{n−1} when K has order n. Irreducible words have the shape
    F^a K^b E^c.
    """

    def __init__(self, alg: PresentedAlgebra, step_cap: int = 200000):
        self.alg = alg
        self.step_cap = step_cap
        F = alg.field
        q, qi = alg.q, alg.qinv
        one = F.one
        d = alg._denom
        rules: dict[tuple, list[tuple[Scalar, tuple]]] = {
            ("E", "F"): [(one, ("F", "E")), (d, ("K",)), (-d, ("k",))],
            ("E", "K"): [(qi * qi, ("K", "E"))],
            ("E", "k"): [(q * q, ("k", "E"))],
            ("K", "F"): [(qi * qi, ("F", "K"))],
            ("k", "F"): [(q * q, ("F", "k"))],
            ("K", "k"): [(one, ())],
            ("k", "K"): [(one, ())],
        }
        if alg.truncate:
            rules[("E",) * alg.n] = []
            rules[("F",) * alg.n] = []
        if alg.k_order:
            rules[("K",) * alg.n] = [(one, ())]
            rules[("k",)] = [(one, ("K",) * (alg.n - 1))]
            for lhs in [("E", "k"), ("k", "F"), ("K", "k"), ("k", "K")]:
                rules.pop(lhs)
        self.rules = rules
        self._maxlen = max(len(r) for r in rules)

    def _find(self, word: tuple, start: int = 0):
        for i in range(start, len(word)):
            for L in range(1, self._maxlen + 1):
                lhs = word[i : i + L]
                if len(lhs) == L and lhs in self.rules:
                    return i, lhs
        return None

    def _apply_at(self, word, i, lhs) -> list[tuple[Scalar, tuple]]:
        pre, post = word[:i], word[i + len(lhs) :]
        return [(c, pre + rhs + post) for c, rhs in self.rules[lhs]]

    def reduce(self, vec: Mapping[tuple, Scalar]) -> dict:
        """Normal form of a combination of words (leftmost-redex strategy)."""
        todo = dict(vec)
        done: dict = {}
        steps = 0
        while todo:
            word, c = todo.popitem()
            if not c:
                continue
            hit = self._find(word)
            if hit is None:
                axpy(done, c, {word: self.alg.field.one})
                continue
            steps += 1
            if steps > self.step_cap:
                raise RecursionCapExceeded("rewriting did not terminate within the step cap")
            for coeff, w in self._apply_at(word, *hit):
                axpy(todo, c * coeff, {w: self.alg.field.one})
        return done

    def normal_form(self, letters: Iterable[str]) -> dict:
        """Reduce a word and read off exponent triples."""
        red = self.reduce({tuple(letters): self.alg.field.one})
        out: dict = {}
        for word, c in red.items():
            a = word.count("F")
            b = word.count("K") - word.count("k")
            e = word.count("E")
            if word != ("F",) * a + (("K",) * b if b >= 0 else ("k",) * -b) + ("E",) * e:
                raise RecursionCapExceeded(f"irreducible word {''.join(word)} is not a PBW monomial")
            axpy(out, c, {(a, b, e): self.alg.field.one})
        return out

    def critical_pairs(self) -> list[tuple]:
        """Overlap words u·v·w where uv and vw are left-hand sides."""
        out = set()
        lhss = list(self.rules)
        for l1, l2 in itertools.product(lhss, repeat=2):
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    out.add((l1 + l2[k:], 0, len(l1) - k))
            # inclusion overlaps
            if l1 != l2 and len(l2) < len(l1):
                for s in range(len(l1) - len(l2) + 1):
                    if l1[s : s + len(l2)] == l2:
                        out.add((l1, 0, s))
        return sorted(out)

    def check_confluence(self) -> None:
        """Every overlap resolves to one normal form; raises otherwise."""
        one = self.alg.field.one
        for word, i, j in self.critical_pairs():
            results = []
            for pos in (i, j):
                lhs = None
                for L in range(self._maxlen, 0, -1):
                    if word[pos : pos + L] in self.rules:
                        lhs = word[pos : pos + L]
                        break
                branch: dict = {}
                for c, w in self._apply_at(word, pos, lhs):
                    axpy(branch, c, {w: one})
                results.append(self.reduce(branch))
            if results[0] != results[1]:
                raise PreconditionViolated(f"rewriting system is not confluent at {''.join(word)}")


def uq_sl2(field: Field | None = None, q: Scalar | None = None) -> PresentedAlgebra:
    """U_q(sl2) over Q(q) (or a given field and q)."""
    if field is None:
        field = RationalFunctions()
    return PresentedAlgebra(field, q=q)


def uq_sl2_quotient(n: int, field: Field | None = None, q: Scalar | None = None) -> PresentedAlgebra:
    """U_q(sl2)/(E^n, F^n) with q a primitive n-th root of unity."""
    if field is None:
        from .scalar import Cyclotomic

        field = Cyclotomic(n)
    if q is None:
        q = field.primitive_root(n)
    return PresentedAlgebra(field, q=q, n=n, truncate=True)


def adjoint_action_pbw(k, v) -> PBWElement:
    """Left adjoint action of one PBW element on another."""
    alg = k.algebra if isinstance(k, PBWElement) else v.algebra
    return alg.adjoint(k, v)


def adfin_probe(algebra: PresentedAlgebra, v, budget: int | None = None, use_T: bool | None = None):
    """Orbit of v under the adjoint action.

    The quotient is a finitely generated module over k[K^{±1}], so there
    only K^{±1} is iterated; for U itself every generator is.
    """
    from .finmod import orbit_closure

    if use_T is None:
        use_T = algebra.truncate
    mod = algebra.ad_module()
    return orbit_closure(mod, [algebra.element(v).terms], budget=budget, use_T=use_T)


def ad_power_chain(algebra: PresentedAlgebra, gen: PBWElement, v, steps: int) -> list[int]:
    """dim span{v, gen.v, …, gen^m.v} for m = 0..steps."""
    from .linalg import Echelon

    e = Echelon(algebra.field)
    cur = algebra.element(v)
    dims = []
    for _ in range(steps + 1):
        e.insert(cur.terms)
        dims.append(len(e))
        cur = algebra.adjoint(gen, cur)
    return dims
