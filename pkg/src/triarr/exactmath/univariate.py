"""Univariate polynomials over GF(p) as coefficient lists, lowest degree first.

Only what root finding and resultants need: arithmetic, gcd, modular
powering, Cantor-Zassenhaus splitting and Lagrange interpolation.
"""

from __future__ import annotations

import random

Poly = list[int]


def trim(f: Poly) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Poly) -> int:
    return len(trim(f)) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                 for i in range(n)])


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, [-c for c in g], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def divmod_poly(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim([c % p for c in f])
    if len(r) < len(g):
        return [], r
    inv = pow(g[-1], p - 2, p)
    q = [0] * (len(r) - len(g) + 1)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - dg] = c
            for i, b in enumerate(g):
                r[k - dg + i] = (r[k - dg + i] - c * b) % p
    return trim(q), trim(r[:dg])


def monic(f: Poly, p: int) -> Poly:
    f = trim(f)
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    a, b = trim([c % p for c in f]), trim([c % p for c in g])
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def powmod(base: Poly, e: int, mod: Poly, p: int) -> Poly:
    result: Poly = [1]
    b = divmod_poly(base, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, b, p), mod, p)[1]
        b = divmod_poly(mul(b, b, p), mod, p)[1]
        e >>= 1
    return result


def evaluate(f: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def roots(f: Poly, p: int, seed: int = 0) -> list[int]:
    """Distinct roots of ``f`` in GF(p), sorted.  ``f`` must be nonzero."""
    f = monic(f, p)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    # keep only the split part: gcd(f, x^p - x)
    xp = powmod([0, 1], p, f, p)
    g = gcd(f, sub(xp, [0, 1], p), p)
    out: list[int] = []
    rng = random.Random(seed)
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d <= 0:
            continue
        if d == 1:
            out.append((-h[0]) % p)
            continue
        while True:
            a = rng.randrange(p)
            w = powmod([a, 1], (p - 1) // 2, h, p)
            s = gcd(h, sub(w, [1], p), p)
            if 0 < len(s) - 1 < d:
                stack.append(s)
                stack.append(divmod_poly(h, s, p)[0])
                break
    return sorted(set(out))


def interpolate(xs: list[int], ys: list[int], p: int) -> Poly:
    """Lagrange interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    # master polynomial prod (x - x_i)
    master: Poly = [1]
    for x in xs:
        master = mul(master, [(-x) % p, 1], p)
    out = [0] * n
    for i, xi in enumerate(xs):
        if ys[i] % p == 0:
            continue
        basis, _ = divmod_poly(master, [(-xi) % p, 1], p)
        denom = evaluate(basis, xi, p)
        scale = ys[i] * pow(denom, p - 2, p) % p
        for k, c in enumerate(basis):
            out[k] = (out[k] + scale * c) % p
    return trim(out)
