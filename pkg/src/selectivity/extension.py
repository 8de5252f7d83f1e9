"""Relative extensions K = k[x]/(f) and the class-group image of their idelic norms."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import factorint

from . import finitefield as ff
from .basefield import BaseField, KElement, PrimeIdeal, prime_ideals_above, primes_up_to_norm
from .classgroup import Subgroup, class_group, prime_class, subgroup_generated, trivial_subgroup
from .errors import ValidationError

# ---------------------------------------------------------------------------
# polynomials over k (lists of KElement, constant term first)


def kp_trim(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def kp_add(f, g):
    n = max(len(f), len(g))
    zero = (f or g)[0] * 0
    return kp_trim([(f[i] if i < len(f) else zero) + (g[i] if i < len(g) else zero) for i in range(n)])


def kp_sub(f, g):
    return kp_add(f, [-c for c in g])


def kp_mul(f, g):
    if not f or not g:
        return []
    out = [f[0] * 0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return kp_trim(out)


def kp_divmod(f, g):
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [], kp_trim(f)
    inv = g[-1].inverse()
    quot = [f[0] * 0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv
        quot[i - dg] = c
        if c:
            for j in range(dg + 1):
                f[i - dg + j] = f[i - dg + j] - c * g[j]
    return kp_trim(quot), kp_trim(f[:dg])


def kp_deriv(f):
    return kp_trim([f[i] * i for i in range(1, len(f))])


def kp_resultant(f, g) -> KElement:
    """Resultant of two nonzero polynomials over k (Euclidean recursion)."""
    f, g = kp_trim(f), kp_trim(g)
    one = f[0] * 0 + 1
    acc = one
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return acc * g[0] ** m
        r = kp_divmod(f, g)[1]
        if not r:
            return one * 0
        if (m * n) % 2:
            acc = -acc
        acc = acc * g[-1] ** (m - (len(r) - 1))
        f, g = g, r


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelativeExtension:
    """K = k[x]/(f) for a monic irreducible f over o_k of degree n >= 3."""

    base: BaseField
    min_poly: tuple[KElement, ...]

    def __post_init__(self):
        coeffs = tuple(self.base(c) if not isinstance(c, KElement) else c for c in self.min_poly)
        object.__setattr__(self, "min_poly", coeffs)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValidationError("minimal polynomial must be monic")
        if self.degree < 3:
            raise ValidationError(f"degree {self.degree} < 3: the extension degree must be at least 3")
        for c in coeffs:
            if not c.is_integral():
                raise ValidationError(f"coefficient {c!r} is not in o_k")
        if not _is_irreducible(self.base, coeffs):
            raise ValidationError(f"minimal polynomial is reducible over {self.base}")

    @classmethod
    def from_pairs(cls, base: BaseField, pairs) -> "RelativeExtension":
        """Coefficients given constant term first, each as (a, b) meaning a + b*w, or an int."""
        coeffs = []
        for c in pairs:
            if isinstance(c, (list, tuple)):
                a, b = c
                coeffs.append(base(Fraction(a), Fraction(b)))
            else:
                coeffs.append(base(Fraction(c)))
        return cls(base, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def poly(self) -> list[KElement]:
        return list(self.min_poly)

    def to_pairs(self) -> list[list[int]]:
        return [[int(c.a), int(c.b)] for c in self.min_poly]

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.min_poly[i]
            if c:
                terms.append(f"({c!r})x^{i}" if i else f"({c!r})")
        return " + ".join(terms)


def _sympy_expr(base: BaseField, coeffs):
    x = sympy.Symbol("x")
    if base.is_rational:
        w = 0
    else:
        w = (base.trace_w + sympy.sqrt(base.discriminant)) / 2
    expr = sum((sympy.Rational(c.a) + sympy.Rational(c.b) * w) * x**i for i, c in enumerate(coeffs))
    return sympy.expand(expr), x


@lru_cache(maxsize=None)
def _is_irreducible(base: BaseField, coeffs) -> bool:
    expr, x = _sympy_expr(base, coeffs)
    if base.is_rational:
        return sympy.Poly(expr, x, domain=sympy.QQ).is_irreducible
    _, factors = sympy.factor_list(expr, x, extension=sympy.sqrt(base.discriminant))
    return len(factors) == 1 and factors[0][1] == 1


def real_root_count(ext: RelativeExtension) -> int:
    """Number of real places of K (only meaningful for k = Q)."""
    if not ext.base.is_rational:
        return 0
    expr, x = _sympy_expr(ext.base, ext.min_poly)
    return sympy.Poly(expr, x).count_roots()


def discriminant(ext: RelativeExtension) -> KElement:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f."""
    f = ext.poly
    n = ext.degree
    r = kp_resultant(f, kp_deriv(f))
    return -r if (n * (n - 1) // 2) % 2 else r


# ---------------------------------------------------------------------------
# splitting of primes


@dataclass(frozen=True)
class SplittingDatum:
    prime: PrimeIdeal
    factors: tuple[tuple[int, int], ...]  # (e, f) per prime of K above ``prime``
    certified: bool

    @property
    def local_degrees(self) -> list[int]:
        return [e * f for e, f in self.factors]

    def to_dict(self) -> dict:
        return {
            "prime": self.prime.label(),
            "factors": [[e, f] for e, f in self.factors],
            "certified": self.certified,
        }


def reduce_poly(ext: RelativeExtension, prime: PrimeIdeal):
    F = prime.residue_field
    return ff.trim([prime.reduce(c) for c in ext.min_poly], F)


def _lift_poly(prime: PrimeIdeal, g) -> list[KElement]:
    return [prime.lift(c) for c in g]


@lru_cache(maxsize=None)
def _factor_mod(ext: RelativeExtension, prime: PrimeIdeal, seed: int):
    F = prime.residue_field
    fbar = reduce_poly(ext, prime)
    return tuple((tuple(g), e) for g, e in ff.factor(fbar, F, seed=seed))


def dedekind_index_factor(ext: RelativeExtension, prime: PrimeIdeal, seed: int = 0):
    """The polynomial U = gcd(Fbar, gbar, hbar) of Dedekind's criterion over F_q.

    o_k[x]/(f) is maximal at ``prime`` iff U is constant.
    """
    F = prime.residue_field
    facs = [(list(g), e) for g, e in _factor_mod(ext, prime, seed)]
    gbar = [F.one]
    hbar = [F.one]
    for g, e in facs:
        gbar = ff.pmul(gbar, g, F)
        for _ in range(e - 1):
            hbar = ff.pmul(hbar, g, F)
    if ff.is_one(hbar, F):
        return [F.one]
    g = _lift_poly(prime, gbar)
    h = _lift_poly(prime, hbar)
    pi = prime.uniformizer
    diff = kp_sub(kp_mul(g, h), ext.poly)
    Fbar = ff.trim([prime.reduce(c / pi) for c in diff], F)
    return ff.pgcd(ff.pgcd(Fbar, gbar, F), hbar, F) if Fbar else ff.pgcd(gbar, hbar, F)


@lru_cache(maxsize=None)
def splitting_type(ext: RelativeExtension, prime: PrimeIdeal, seed: int = 0) -> SplittingDatum:
    """Factor f modulo ``prime``; (e, f) pairs are the splitting of the prime when certified."""
    if prime.field != ext.base:
        raise ValidationError(f"prime {prime} does not belong to {ext.base}")
    facs = _factor_mod(ext, prime, seed)
    factors = tuple(sorted((e, len(g) - 1) for g, e in facs))
    U = dedekind_index_factor(ext, prime, seed)
    return SplittingDatum(prime, factors, certified=len(U) == 1)


def maximality_check(ext: RelativeExtension, seed: int = 0) -> list[PrimeIdeal]:
    """Primes of k dividing disc(f) at which Dedekind's criterion fails."""
    d = discriminant(ext)
    nd = d.norm() if not ext.base.is_rational else d.a
    nd = abs(int(nd))
    bad = []
    for p in sorted(factorint(nd)):
        for P in prime_ideals_above(ext.base, int(p)):
            if P.reduce(d) != P.residue_field.zero:
                continue
            if not splitting_type(ext, P, seed).certified:
                bad.append(P)
    return bad


# ---------------------------------------------------------------------------
# norm subgroup


@dataclass(frozen=True)
class NormSubgroup:
    subgroup: Subgroup
    sampling_bound: int
    stabilized: bool
    skipped: tuple[PrimeIdeal, ...] = ()
    last_growth: int = 1

    @property
    def field(self) -> BaseField:
        return self.subgroup.ambient.field

    @property
    def index(self) -> int:
        return self.subgroup.index


def norm_class_subgroup(ext: RelativeExtension, bound: int, seed: int = 0) -> NormSubgroup:
    """Subgroup of Cl(k) generated by the classes of N(P) = p^f over sampled primes P of K.

    Primes of k where the monogenic order is not certified maximal are skipped
    and listed in ``skipped``.  ``stabilized`` means nothing was added by primes
    of norm above bound/2.
    """
    if not isinstance(bound, int) or bound < 2:
        raise ValidationError(f"sampling bound must be an integer >= 2, got {bound!r}")
    return _norm_class_subgroup(ext, bound, seed)


@lru_cache(maxsize=256)
def _norm_class_subgroup(ext: RelativeExtension, bound: int, seed: int) -> NormSubgroup:
    group = class_group(ext.base)
    if group.order == 1:
        return NormSubgroup(trivial_subgroup(group), bound, True)
    gens: list = []
    current = trivial_subgroup(group)
    skipped = []
    last_growth = 1
    for P in primes_up_to_norm(ext.base, bound):
        datum = splitting_type(ext, P, seed)
        if not datum.certified:
            skipped.append(P)
            continue
        c = prime_class(ext.base, P)
        for _, f in datum.factors:
            x = group.pow(c, f)
            if x not in current:
                gens.append(x)
                current = subgroup_generated(group, gens)
                last_growth = P.norm
        if current.order == group.order:
            break
    return NormSubgroup(current, bound, 2 * last_growth <= bound, tuple(skipped), last_growth)


def intersection_degree_hilbert(ext: RelativeExtension, bound: int, seed: int = 0) -> int:
    """[K cap H_k : k], computed as the index of the norm subgroup in Cl(k)."""
    N = norm_class_subgroup(ext, bound, seed)
    if not N.stabilized:
        warnings.warn(
            f"norm subgroup for {ext} has not stabilized at bound {bound}",
            RuntimeWarning,
            stacklevel=2,
        )
    return N.index
