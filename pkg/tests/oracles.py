"""Brute-force reference computations, deliberately sharing no code with the package."""

from math import isqrt, pi, sqrt

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form


def _w(D):
    t = D % 2
    return t, (t - D) // 4  # w^2 = t*w - n


def _mul(x, y, t, n):
    a, b = x
    c, d = y
    return (a * c - n * b * d, a * d + b * c + t * b * d)


def _norm(x, t, n):
    a, b = x
    return a * a + t * a * b + n * b * b


def integral_ideals(D, bound):
    """All integral ideals of norm <= bound as Z-bases ((a, 0), (b, c))."""
    t, n = _w(D)
    out = []
    for a in range(1, bound + 1):
        for c in range(1, bound // a + 1):
            if a % c:
                continue
            for b in range(0, a, c):
                # lattice Z a + Z (b + c w); must be closed under multiplication by w
                def inside(v):
                    x, y = v
                    if y % c:
                        return False
                    return (x - (y // c) * b) % a == 0

                if inside(_mul((a, 0), (0, 1), t, n)) and inside(_mul((b, c), (0, 1), t, n)):
                    out.append(((a, 0), (b, c)))
    return out


def _lattice(gens):
    m = Matrix([list(g) for g in gens]).T
    h = hermite_normal_form(m)
    cols = [tuple(int(x) for x in h[:, j]) for j in range(h.shape[1])]
    return [c for c in cols if any(c)]


def _principal(basis, target, t, n):
    """Is there an element of the lattice of norm exactly ``target``?"""
    g1, g2 = basis
    A = _norm(g1, t, n)
    C = _norm(g2, t, n)
    B = _norm((g1[0] + g2[0], g1[1] + g2[1]), t, n) - A - C
    disc = 4 * A * C - B * B
    vmax = isqrt(4 * A * target // disc) + 1
    umax = isqrt(4 * C * target // disc) + 1
    for u in range(-umax, umax + 1):
        for v in range(-vmax, vmax + 1):
            if A * u * u + B * u * v + C * v * v == target:
                return True
    return False


def minkowski_class_number(D):
    """Number of ideal classes, by enumerating ideals of norm below the Minkowski bound."""
    t, n = _w(D)
    bound = max(1, int(2 * sqrt(-D) / pi))
    ideals = integral_ideals(D, bound)
    reps = []
    for I in ideals:
        NI = I[0][0] * I[1][1]
        new = True
        for J in reps:
            NJ = J[0][0] * J[1][1]
            conjJ = [(x + t * y, -y) for x, y in J]
            prod = _lattice([_mul(x, y, t, n) for x in I for y in conjJ])
            if _principal(prod, NI * NJ, t, n):
                new = False
                break
        if new:
            reps.append(I)
    return len(reps)
