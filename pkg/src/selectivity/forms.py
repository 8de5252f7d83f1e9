"""Positive definite binary quadratic forms ax^2 + bxy + cy^2 of negative discriminant.

Reduced forms are the canonical representatives of ideal classes, so two
classes are equal exactly when their reduced forms are equal as tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt


@dataclass(frozen=True, order=True)
class Form:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    def to_list(self) -> list[int]:
        return [self.a, self.b, self.c]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _solve_linmod(a: int, b: int, m: int) -> tuple[int, int]:
    # all solutions of a*x = b (mod m) are u + v*k
    g, d, _ = _egcd(a % m, m)
    if b % g:
        raise ArithmeticError(f"{a}*x = {b} (mod {m}) has no solution")
    v = m // g
    u = (b // g) * d % v
    return u, v


def principal_form(disc: int) -> Form:
    k = disc % 2
    return Form(1, k, (k * k - disc) // 4)


def normalize(f: Form) -> Form:
    a, b, c = f.a, f.b, f.c
    if -a < b <= a:
        return f
    r = (a - b) // (2 * a)
    return Form(a, b + 2 * r * a, a * r * r + b * r + c)


def reduce_form(f: Form) -> Form:
    """Return the unique reduced form properly equivalent to ``f``."""
    if f.a <= 0 or f.discriminant >= 0:
        raise ValueError(f"form {f} is not positive definite")
    f = normalize(f)
    a, b, c = f.a, f.b, f.c
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return normalize(Form(a, b, c))


def inverse(f: Form) -> Form:
    return reduce_form(Form(f.a, -f.b, f.c))


@lru_cache(maxsize=65536)
def compose(f1: Form, f2: Form) -> Form:
    """Gaussian composition of two primitive forms of the same discriminant, reduced."""
    if f1.discriminant != f2.discriminant:
        raise ValueError("forms of different discriminants")
    a1, b1, c1 = f1.a, f1.b, f1.c
    a2, b2 = f2.a, f2.b
    g = (b1 + b2) // 2
    h = (b2 - b1) // 2
    w = gcd(gcd(a1, a2), g)
    s, t, u = a1 // w, a2 // w, g // w
    mu, nu = _solve_linmod(t * u, h * u + s * c1, s * t)
    lam, _ = _solve_linmod(t * nu, h - t * mu, s)
    k = mu + nu * lam
    l = (k * t - h) // s
    m = (t * u * k - h * u - c1 * s) // (s * t)
    return reduce_form(Form(s * t, w * u - (k * t + l * s), k * l - w * m))


def power(f: Form, e: int) -> Form:
    result = principal_form(f.discriminant)
    if e < 0:
        f, e = inverse(f), -e
    base = f
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def reduced_forms(disc: int) -> list[Form]:
    """All primitive reduced forms of discriminant ``disc`` in lexicographic order."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    out = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = Form(a, b, c)
            if f.is_reduced() and gcd(gcd(a, b), c) == 1:
                out.append(f)
    return sorted(out)
