"""Univariate polynomials over a Field as coefficient tuples, lowest degree first."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

from .fields import Field

Poly = tuple


def trim(f: Field, p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == f.zero:
        p.pop()
    return tuple(p)


def deg(p: Poly) -> int:
    return len(p) - 1


def monic(f: Field, p: Poly) -> Poly:
    if not p:
        return p
    c = f.inv(p[-1])
    return tuple(f.mul(c, a) for a in p)


def padd(f: Field, p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    z = f.zero
    return trim(f, [f.add(p[k] if k < len(p) else z, q[k] if k < len(q) else z) for k in range(n)])


def pmul(f: Field, p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [f.zero] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x == f.zero:
            continue
        for b, y in enumerate(q):
            out[a + b] = f.add(out[a + b], f.mul(x, y))
    return trim(f, out)


def pdivmod(f: Field, p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quo = [f.zero] * max(len(p) - len(q) + 1, 0)
    lead = f.inv(q[-1])
    while len(r) >= len(q) and r:
        c = f.mul(r[-1], lead)
        s = len(r) - len(q)
        quo[s] = c
        for k, y in enumerate(q):
            r[s + k] = f.sub(r[s + k], f.mul(c, y))
        r = list(trim(f, r))
    return trim(f, quo), tuple(r)


def pgcd(f: Field, p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, pdivmod(f, p, q)[1]
    return monic(f, p)


def pexact_div(f: Field, p: Poly, q: Poly) -> Poly:
    quo, rem = pdivmod(f, p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quo


def divides(f: Field, q: Poly, p: Poly) -> bool:
    return not pdivmod(f, p, q)[1]


def evaluate(f: Field, p: Poly, x):
    acc = f.zero
    for c in reversed(p):
        acc = f.add(f.mul(acc, x), c)
    return acc


def apply_to_vector(f: Field, p: Poly, A, v: Sequence) -> tuple:
    """p(A) v by Horner's rule."""
    acc = tuple(f.zero for _ in v)
    for c in reversed(p):
        acc = tuple(f.add(a, f.mul(c, x)) for a, x in zip(A.apply(acc), v))
    return acc


def coprime_split(f: Field, g: Poly, h: Poly) -> tuple[Poly, Poly]:
    """(a, b) with a | g, b | h, gcd(a, b) = 1 and a b = lcm(g, h)."""
    a = g
    b = pexact_div(f, h, pgcd(f, g, h))
    while True:
        e = pgcd(f, a, b)
        if deg(e) == 0:
            return monic(f, a), monic(f, b)
        a = pexact_div(f, a, e)
        b = pmul(f, b, e)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def roots(f: Field, p: Poly) -> list:
    """Distinct roots of p lying in the field, in canonical order."""
    p = trim(f, p)
    if deg(p) < 1:
        return []
    if f.is_finite:
        return [x for x in f.elements() if evaluate(f, p, x) == f.zero]
    found = set()
    while p and p[0] == 0:
        found.add(Fraction(0))
        p = p[1:]
    if deg(p) >= 1:
        den = lcm(*(Fraction(c).denominator for c in p))
        ints = [int(Fraction(c) * den) for c in p]
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints]
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                for s in (1, -1):
                    x = Fraction(s * a, b)
                    if evaluate(f, p, x) == 0:
                        found.add(x)
    return sorted(found)
