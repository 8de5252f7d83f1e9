"""Residue fields F_p and F_{p^2}, and factorization of polynomials over them.

Field elements are plain ints (F_p) or pairs (u, v) standing for u + v*w with
w^2 = t*w - n (F_{p^2}).  Polynomials are lists of coefficients, constant term
first, with no trailing zeros; [] is the zero polynomial.

Factorization is squarefree decomposition, then distinct-degree, then
Cantor-Zassenhaus equal-degree splitting driven by a seeded ``random.Random``
so results are reproducible.
"""

from __future__ import annotations

import random
from functools import lru_cache


class ResidueField:
    def __init__(self, p: int, quadratic: tuple[int, int] | None = None):
        self.p = p
        self.quadratic = quadratic
        self.degree = 1 if quadratic is None else 2
        self.q = p**self.degree
        if quadratic is not None:
            t, n = quadratic
            self._t, self._n = t % p, n % p
            self.zero, self.one = (0, 0), (1, 0)
        else:
            self.zero, self.one = 0, 1

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.quadratic) == (other.p, other.quadratic)

    def __hash__(self):
        return hash((self.p, self.quadratic))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def from_int(self, a: int):
        return a % self.p if self.degree == 1 else (a % self.p, 0)

    def add(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x + y) % p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x - y) % p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def neg(self, x):
        return self.sub(self.zero, x)

    def mul(self, x, y):
        p = self.p
        if self.degree == 1:
            return x * y % p
        a, b = x
        c, d = y
        bd = b * d
        return ((a * c - self._n * bd) % p, (a * d + b * c + self._t * bd) % p)

    def inv(self, x):
        p = self.p
        if self.degree == 1:
            if x % p == 0:
                raise ZeroDivisionError("inverse of 0 in residue field")
            return pow(x, -1, p)
        a, b = x
        # conj(a + b w) = (a + b t) - b w, norm = a^2 + a b t + b^2 n
        nm = (a * a + a * b * self._t + b * b * self._n) % p
        if nm == 0:
            raise ZeroDivisionError("inverse of 0 in residue field")
        ninv = pow(nm, -1, p)
        return ((a + b * self._t) * ninv % p, (-b) * ninv % p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def is_zero(self, x) -> bool:
        return x == self.zero

    def random(self, rng: random.Random):
        if self.degree == 1:
            return rng.randrange(self.p)
        return (rng.randrange(self.p), rng.randrange(self.p))

    def elements(self):
        if self.degree == 1:
            return list(range(self.p))
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    def pth_root(self, x):
        # Frobenius is x -> x^p; its inverse on F_{p^d} is x -> x^(p^(d-1))
        return self.pow(x, self.p ** (self.degree - 1))


# ---------------------------------------------------------------------------
# polynomial arithmetic


def trim(f, F: ResidueField):
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def padd(f, g, F):
    n = max(len(f), len(g))
    out = [F.add(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)]
    return trim(out, F)


def psub(f, g, F):
    n = max(len(f), len(g))
    out = [F.sub(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)]
    return trim(out, F)


def pmul(f, g, F):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out, F)


def pdivmod(f, g, F):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    if len(f) - 1 < dg:
        return [], trim(f, F)
    quot = [F.zero] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv_lead)
        quot[i - dg] = c
        for j in range(dg + 1):
            f[i - dg + j] = F.sub(f[i - dg + j], F.mul(c, g[j]))
    return trim(quot, F), trim(f[:dg], F)


def pmod(f, g, F):
    return pdivmod(f, g, F)[1]


def monic(f, F):
    if not f:
        return f
    inv = F.inv(f[-1])
    return [F.mul(c, inv) for c in f]


def pgcd(f, g, F):
    while g:
        f, g = g, pmod(f, g, F)
    return monic(f, F)


def ppowmod(f, e: int, m, F):
    result = [F.one]
    base = pmod(f, m, F)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, F), m, F)
        base = pmod(pmul(base, base, F), m, F)
        e >>= 1
    return result


def pderiv(f, F):
    return trim([F.mul(F.from_int(i), f[i]) for i in range(1, len(f))], F)


def is_one(f, F) -> bool:
    return len(f) == 1 and f[0] == F.one


def degree(f) -> int:
    return len(f) - 1


def _pth_root_poly(f, F):
    p = F.p
    return trim([F.pth_root(f[i]) for i in range(0, len(f), p)], F)


def squarefree_factorization(f, F):
    """Pairs (g, e) of squarefree, pairwise coprime monic g with f = prod g^e."""
    f = monic(f, F)
    out = []
    if degree(f) < 1:
        return out
    d = pderiv(f, F)
    if not d:
        return [(g, e * F.p) for g, e in squarefree_factorization(_pth_root_poly(f, F), F)]
    c = pgcd(f, d, F)
    w = pdivmod(f, c, F)[0]
    i = 1
    while not is_one(w, F):
        y = pgcd(w, c, F)
        z = pdivmod(w, y, F)[0]
        if not is_one(z, F):
            out.append((monic(z, F), i))
        i += 1
        w = y
        c = pdivmod(c, y, F)[0]
    if not is_one(c, F):
        out.extend((g, e * F.p) for g, e in squarefree_factorization(_pth_root_poly(c, F), F))
    return out


def distinct_degree_factorization(f, F):
    """Pairs (g, d): g is the product of all degree-d irreducible factors of squarefree monic f."""
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, F.q, f, F)
        g = pgcd(f, psub(h, x, F), F)
        if not is_one(g, F):
            out.append((g, d))
            f = pdivmod(f, g, F)[0]
            h = pmod(h, f, F)
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def _trace_map(a, f, F, d):
    # a + a^2 + a^4 + ... + a^(2^(k d - 1)) mod f, where q = 2^k
    k = F.degree
    t = a
    acc = a
    for _ in range(k * d - 1):
        t = pmod(pmul(t, t, F), f, F)
        acc = padd(acc, t, F)
    return acc


def equal_degree_factorization(f, d: int, F, rng: random.Random):
    if degree(f) == d:
        return [f]
    n = degree(f)
    while True:
        a = trim([F.random(rng) for _ in range(n)], F)
        if degree(a) < 1:
            continue
        if F.p == 2:
            b = _trace_map(a, f, F, d)
        else:
            b = psub(ppowmod(a, (F.q**d - 1) // 2, f, F), [F.one], F)
        g = pgcd(f, b, F)
        if 0 < degree(g) < n:
            h = pdivmod(f, g, F)[0]
            return equal_degree_factorization(g, d, F, rng) + equal_degree_factorization(h, d, F, rng)


def _key(g, F):
    return (degree(g), [c if F.degree == 1 else tuple(c) for c in reversed(g)])


def factor(f, F: ResidueField, seed: int = 0):
    """Complete factorization of a nonzero polynomial into monic irreducibles.

    Returns pairs (g, e) sorted by degree then coefficients; the leading
    coefficient is dropped.
    """
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_factorization(f, F):
        for h, d in distinct_degree_factorization(g, F):
            for irr in equal_degree_factorization(h, d, F, rng):
                out.append((monic(irr, F), e))
    out.sort(key=lambda ge: (_key(ge[0], F), ge[1]))
    return out


@lru_cache(maxsize=None)
def field(p: int, quadratic: tuple[int, int] | None = None) -> ResidueField:
    return ResidueField(p, quadratic)
