"""Small exact integer-lattice routines: Hermite normal form, membership, kernels mod p.

Rows generate the lattice. Matrices here are tiny (dimension <= 2n), so plain
Euclidean elimination on Python ints is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def hnf(rows, dim: int, track: bool = False):
    """Hermite normal form of the lattice spanned by ``rows`` in Z^dim.

    Pivots are taken from the last coordinate backwards, so a full-rank result
    is lower triangular: basis[j] has its pivot in column j, positive, and the
    entries of later rows in column j are reduced into [0, pivot).  Returns the
    list of basis rows indexed by pivot column (missing pivots are None).  With
    ``track`` each row comes paired with its coefficient vector over the input.
    """
    m = len(rows)
    work = []
    for i, r in enumerate(rows):
        coeff = [0] * m
        coeff[i] = 1
        work.append((list(r), coeff))
    basis: list = [None] * dim
    for col in range(dim - 1, -1, -1):
        active = [w for w in work if w[0][col] != 0]
        rest = [w for w in work if w[0][col] == 0]
        piv = None
        for vec, co in active:
            if piv is None:
                piv = (vec, co)
                continue
            pv, pc = piv
            while vec[col] != 0:
                q = pv[col] // vec[col]
                pv = [x - q * y for x, y in zip(pv, vec)]
                pc = [x - q * y for x, y in zip(pc, co)]
                pv, vec = vec, pv
                pc, co = co, pc
            # pv now carries the gcd, vec has a zero in this column
            piv = (pv, pc)
            rest.append((vec, co))
        if piv is not None:
            pv, pc = piv
            if pv[col] < 0:
                pv = [-x for x in pv]
                pc = [-x for x in pc]
            basis[col] = (pv, pc)
        work = [w for w in rest if any(w[0])]
    # reduce entries below each pivot; right to left, since row col touches columns <= col
    for col in range(dim - 1, -1, -1):
        if basis[col] is None:
            continue
        pv, pc = basis[col]
        for later in range(col + 1, dim):
            if basis[later] is None:
                continue
            lv, lc = basis[later]
            q = lv[col] // pv[col]
            if q:
                basis[later] = ([x - q * y for x, y in zip(lv, pv)], [x - q * y for x, y in zip(lc, pc)])
    if track:
        return basis
    return [None if b is None else b[0] for b in basis]


def solve_in_lattice(rows, target, dim: int):
    """Integer coefficients c with sum c_i rows[i] == target, or None."""
    basis = hnf(rows, dim, track=True)
    t = list(target)
    coeff = [0] * len(rows)
    for col in range(dim - 1, -1, -1):
        if t[col] == 0:
            continue
        if basis[col] is None:
            return None
        pv, pc = basis[col]
        q, r = divmod(t[col], pv[col])
        if r:
            return None
        t = [x - q * y for x, y in zip(t, pv)]
        coeff = [x + q * y for x, y in zip(coeff, pc)]
    return coeff


def rational_hnf(rows, dim: int) -> list[list[Fraction]]:
    """HNF of a full-rank Z-lattice given by rational generators."""
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in r] for r in rows]
    basis = hnf(ints, dim)
    if any(b is None for b in basis):
        raise ValueError("lattice is not of full rank")
    return [[Fraction(x, den) for x in b] for b in basis]


def nullspace_mod_p(matrix, p: int) -> list[list[int]]:
    """Basis of {x : matrix @ x == 0 (mod p)} for an integer matrix given by rows."""
    rows = [[x % p for x in r] for r in matrix]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc] % p
        basis.append(v)
    return basis


def det(matrix) -> Fraction:
    """Determinant of a square matrix of rationals (Gaussian elimination)."""
    m = [[Fraction(x) for x in r] for r in matrix]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if m[i][c] != 0), None)
        if sel is None:
            return Fraction(0)
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def solve_rational(basis, vec) -> list[Fraction]:
    """Coordinates x with sum x_i basis[i] == vec for an invertible rational basis."""
    n = len(basis)
    # augmented system with basis vectors as columns
    m = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(vec[i])] for i in range(n)]
    for c in range(n):
        sel = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[sel] = m[sel], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]
