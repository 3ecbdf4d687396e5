"""Dense univariate polynomials over a field, as tuples of payloads.

Coefficients are stored low degree first. The zero polynomial is ``()``.
Every function takes the coefficient field first; only its payload-level
methods (``_add``, ``_neg``, ``_mul``, ``_inv``, ``_is_zero``, ``_zero``,
``_one``) are used.
"""

from __future__ import annotations


def trim(k, p):
    p = list(p)
    while p and k._is_zero(p[-1]):
        p.pop()
    return tuple(p)


def add(k, p, r):
    n = max(len(p), len(r))
    out = []
    for i in range(n):
        if i >= len(p):
            out.append(r[i])
        elif i >= len(r):
            out.append(p[i])
        else:
            out.append(k._add(p[i], r[i]))
    return trim(k, out)


def neg(k, p):
    return tuple(k._neg(c) for c in p)


def sub(k, p, r):
    return add(k, p, neg(k, r))


def scale(k, c, p):
    if k._is_zero(c):
        return ()
    return trim(k, [k._mul(c, x) for x in p])


def mul(k, p, r):
    if not p or not r:
        return ()
    out = [k._zero] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if k._is_zero(a):
            continue
        for j, b in enumerate(r):
            out[i + j] = k._add(out[i + j], k._mul(a, b))
    return trim(k, out)


def divmod_(k, p, d):
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    lead_inv = k._inv(d[-1])
    qdeg = len(p) - len(d)
    if qdeg < 0:
        return (), tuple(p)
    quo = [k._zero] * (qdeg + 1)
    for i in range(qdeg, -1, -1):
        c = k._mul(p[i + len(d) - 1], lead_inv)
        quo[i] = c
        if k._is_zero(c):
            continue
        for j, b in enumerate(d):
            p[i + j] = k._add(p[i + j], k._neg(k._mul(c, b)))
    return trim(k, quo), trim(k, p[: len(d) - 1])


def monic(k, p):
    if not p:
        return p
    return scale(k, k._inv(p[-1]), p)


def gcd(k, p, r):
    while r:
        p, r = r, divmod_(k, p, r)[1]
    return monic(k, p)


def inverse_mod(k, a, m):
    """Inverse of ``a`` modulo ``m`` via the extended Euclidean algorithm."""
    r0, r1 = m, trim(k, a)
    s0, s1 = (), (k._one,)
    while r1:
        quo, rem = divmod_(k, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(k, s0, mul(k, quo, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    return scale(k, k._inv(r0[0]), s0)
