"""Ring of integers of K as a Z-lattice, by the Round 2 algorithm.

Elements of K are coefficient lists over k in the power basis 1, theta, ...,
theta^(n-1).  Their Z-coordinates are taken in the basis w^a theta^i, so the
equation order o_k[theta] is the standard lattice.  Round 2 is run only at
rational primes below the primes of k where Dedekind's criterion fails; at
every other prime o_k[theta] is already maximal.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .basefield import KElement
from .extension import RelativeExtension, kp_divmod, kp_mul, kp_trim, maximality_check
from .lattice import det, hnf, nullspace_mod_p, rational_hnf, solve_rational


def to_vector(ext: RelativeExtension, x: list[KElement]) -> list[Fraction]:
    k = ext.base
    zero = k(0)
    out = []
    for i in range(ext.degree):
        c = x[i] if i < len(x) else zero
        out.extend(c.coords())
    return out


def from_vector(ext: RelativeExtension, v) -> list[KElement]:
    k = ext.base
    m = k.degree
    return [k(*v[i * m:(i + 1) * m]) for i in range(ext.degree)]


def multiply(ext: RelativeExtension, x, y) -> list[KElement]:
    prod = kp_mul(kp_trim(x), kp_trim(y))
    if not prod:
        return [ext.base(0)] * ext.degree
    r = kp_divmod(prod, ext.poly)[1]
    return r + [ext.base(0)] * (ext.degree - len(r))


class _Order:
    """A Z-order given by a basis, with its multiplication table in that basis."""

    def __init__(self, ext: RelativeExtension, basis):
        self.ext = ext
        self.basis = [list(map(Fraction, b)) for b in basis]
        self.dim = len(self.basis)
        unit = [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]
        # row i of the inverse holds the coordinates of the i-th standard vector
        self._inverse = [solve_rational(self.basis, u) for u in unit]
        elems = [from_vector(ext, b) for b in self.basis]
        self.table = [[self.coords(to_vector(ext, multiply(ext, x, y))) for y in elems] for x in elems]

    def coords(self, vec) -> list[int]:
        c = [sum(v * row[j] for v, row in zip(vec, self._inverse) if v) for j in range(self.dim)]
        if any(x.denominator != 1 for x in c):
            raise ArithmeticError("product left the order")
        return [int(x) for x in c]

    def mul(self, x, y, p=None):
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for l, t in enumerate(self.table[i][j]):
                    out[l] += ab * t
        if p is not None:
            out = [v % p for v in out]
        return out

    def pow_mod(self, x, e: int, p: int):
        result = self.coords(to_vector(self.ext, [self.ext.base(1)]))
        result = [v % p for v in result]
        x = [v % p for v in x]
        while e:
            if e & 1:
                result = self.mul(result, x, p)
            x = self.mul(x, x, p)
            e >>= 1
        return result


def _radical(order: _Order, p: int) -> list[list[int]]:
    """Z-basis (in order coordinates) of the p-radical of the order."""
    n = order.dim
    e = p
    while e < n:
        e *= p
    unit = [[int(i == j) for j in range(n)] for i in range(n)]
    images = [order.pow_mod(u, e, p) for u in unit]
    # column i of the Frobenius matrix is the image of the i-th basis element
    matrix = [[images[i][r] for i in range(n)] for r in range(n)]
    kernel = nullspace_mod_p(matrix, p)
    rows = [[p * x for x in u] for u in unit] + kernel
    basis = hnf(rows, n)
    return [b for b in basis if b is not None]


def _enlarge(order: _Order, p: int):
    """The multiplier ring of the p-radical, or None when it equals the order."""
    n = order.dim
    rad = _radical(order, p)
    rad_f = [list(map(Fraction, r)) for r in rad]
    unit = [[int(i == j) for j in range(n)] for i in range(n)]
    matrix = []
    for alpha in rad:
        cols = []
        for u in unit:
            prod = order.mul(u, alpha)
            c = solve_rational(rad_f, prod)
            cols.append([int(x) % p for x in c])
        for comp in range(n):
            matrix.append([cols[i][comp] for i in range(n)])
    kernel = nullspace_mod_p(matrix, p)
    if not kernel:
        return None
    new = [list(b) for b in order.basis]
    for v in kernel:
        new.append([sum(Fraction(c, p) * b[l] for c, b in zip(v, order.basis)) for l in range(n)])
    return rational_hnf(new, n)


def round_two_primes(ext: RelativeExtension, seed: int = 0) -> list[int]:
    return sorted({P.residue_char for P in maximality_check(ext, seed)})


@lru_cache(maxsize=None)
def _maximal_order_basis(ext: RelativeExtension, seed: int) -> tuple[tuple[Fraction, ...], ...]:
    dim = ext.degree * ext.base.degree
    basis = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for p in round_two_primes(ext, seed):
        while True:
            bigger = _enlarge(_Order(ext, basis), p)
            if bigger is None:
                break
            basis = bigger
    return tuple(tuple(b) for b in basis)


def maximal_order_basis(ext: RelativeExtension, seed: int = 0) -> list[list[Fraction]]:
    """Z-basis of o_K in the coordinates of ``to_vector``."""
    return [list(b) for b in _maximal_order_basis(ext, seed)]


def equation_order_index(ext: RelativeExtension, seed: int = 0) -> int:
    """[o_K : o_k[theta]] as abelian groups."""
    d = abs(det(maximal_order_basis(ext, seed)))
    assert d.numerator == 1
    return d.denominator
