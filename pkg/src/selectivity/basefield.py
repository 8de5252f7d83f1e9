"""The base field k: either Q or an imaginary quadratic field Q(sqrt(D)).

Elements are written a + b*w in the integral basis {1, w} of o_k, where w is a
root of the form polynomial x^2 - t*x + n (t = D mod 2, n = (t - D)/4).  For Q
the second coordinate is always zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm, pi, sqrt

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from . import forms
from .errors import ValidationError
from .forms import Form
from .lattice import rational_hnf, solve_in_lattice


def _fundamental_problem(d: int) -> str | None:
    if d == 0:
        return None
    if d > 0:
        return f"discriminant {d} is positive; only Q (0) and imaginary quadratic fields are supported"
    if d % 4 not in (0, 1):
        return f"discriminant {d} is not congruent to 0 or 1 mod 4"
    if d % 4 == 1:
        if any(e > 1 for e in factorint(-d).values()):
            return f"discriminant {d} is not squarefree (non-maximal order)"
        return None
    m = d // 4
    if m % 4 not in (2, 3):
        return f"discriminant {d}: D/4 = {m} is not congruent to 2 or 3 mod 4 (non-maximal order)"
    if any(e > 1 for e in factorint(-m).values()):
        return f"discriminant {d}: D/4 = {m} is not squarefree (non-maximal order)"
    return None


@dataclass(frozen=True)
class BaseField:
    discriminant: int = 0

    def __post_init__(self):
        problem = _fundamental_problem(self.discriminant)
        if problem:
            raise ValidationError(problem)

    @property
    def is_rational(self) -> bool:
        return self.discriminant == 0

    @property
    def degree(self) -> int:
        return 1 if self.is_rational else 2

    @property
    def trace_w(self) -> int:
        return 0 if self.is_rational else self.discriminant % 2

    @property
    def norm_w(self) -> int:
        if self.is_rational:
            return 0
        return (self.trace_w - self.discriminant) // 4

    def __call__(self, a=0, b=0) -> "KElement":
        if isinstance(a, KElement):
            return a
        if self.is_rational and b:
            raise ValidationError("Q has no w-coordinate")
        return KElement(self, Fraction(a), Fraction(b))

    @property
    def w(self) -> "KElement":
        return self(0, 1)

    def minkowski_bound(self) -> int:
        """floor of (2/pi) sqrt|D|; every ideal class has an integral member of norm at most this."""
        if self.is_rational:
            return 1
        return int(2 * sqrt(-self.discriminant) / pi)

    def __str__(self) -> str:
        if self.is_rational:
            return "Q"
        d = self.discriminant
        return f"Q(sqrt({d // 4 if d % 4 == 0 else d}))"


@dataclass(frozen=True, eq=True)
class KElement:
    field: BaseField
    a: Fraction
    b: Fraction

    def _coerce(self, other) -> "KElement":
        if isinstance(other, KElement):
            return other
        if isinstance(other, (int, Fraction)):
            return KElement(self.field, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t, n = self.field.trace_w, self.field.norm_w
        bd = self.b * o.b
        return KElement(self.field, self.a * o.a - n * bd, self.a * o.b + self.b * o.a + t * bd)

    __rmul__ = __mul__

    def conj(self) -> "KElement":
        return KElement(self.field, self.a + self.field.trace_w * self.b, -self.b)

    def norm(self) -> Fraction:
        t, n = self.field.trace_w, self.field.norm_w
        return self.a * self.a + t * self.a * self.b + n * self.b * self.b

    def trace(self) -> Fraction:
        if self.field.is_rational:
            return self.a
        return 2 * self.a + self.field.trace_w * self.b

    def inverse(self) -> "KElement":
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return KElement(self.field, c.a / nm, c.b / nm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = KElement(self.field, Fraction(1), Fraction(0))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, KElement):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def denominator(self) -> int:
        return lcm(self.a.denominator, self.b.denominator)

    def coords(self) -> tuple[Fraction, ...]:
        if self.field.is_rational:
            return (self.a,)
        return (self.a, self.b)

    def to_pair(self) -> list[str]:
        return [str(self.a), str(self.b)]

    def __repr__(self) -> str:
        if self.field.is_rational or self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}w"


# ---------------------------------------------------------------------------
# fractional ideals


@dataclass(frozen=True)
class Ideal:
    """Fractional ideal stored by the canonical HNF of its Z-lattice.

    Quadratic case: Z-basis {A, B + C*w} with A, C > 0 and 0 <= B < A.
    Rational case: the ideal A*Z (B = 0, C = 1 unused).
    """

    field: BaseField
    A: Fraction
    B: Fraction
    C: Fraction

    @classmethod
    def from_generators(cls, field: BaseField, gens) -> "Ideal":
        gens = [field(g) if not isinstance(g, KElement) else g for g in gens]
        gens = [g for g in gens if g]
        if not gens:
            raise ValidationError("the zero ideal is not a fractional ideal")
        if field.is_rational:
            rows = [[g.a] for g in gens]
            (basis,) = rational_hnf(rows, 1)
            return cls(field, basis[0], Fraction(0), Fraction(1))
        rows = []
        w = field.w
        for g in gens:
            rows.append(list(g.coords()))
            rows.append(list((g * w).coords()))
        b0, b1 = rational_hnf(rows, 2)
        return cls(field, b0[0], b1[0], b1[1])

    @classmethod
    def unit(cls, field: BaseField) -> "Ideal":
        return cls.from_generators(field, [1])

    @property
    def basis(self) -> list[KElement]:
        if self.field.is_rational:
            return [self.field(self.A)]
        return [self.field(self.A), self.field(self.B, self.C)]

    def __mul__(self, other):
        if isinstance(other, Ideal):
            return Ideal.from_generators(self.field, [x * y for x in self.basis for y in other.basis])
        g = self.field(other) if not isinstance(other, KElement) else other
        return Ideal.from_generators(self.field, [x * g for x in self.basis])

    __rmul__ = __mul__

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal.from_generators(self.field, self.basis + other.basis)

    def norm(self) -> Fraction:
        if self.field.is_rational:
            return self.A
        return self.A * self.C

    def conj(self) -> "Ideal":
        return Ideal.from_generators(self.field, [x.conj() for x in self.basis])

    def inverse(self) -> "Ideal":
        return self.conj() * self.field(1 / self.norm())

    def __truediv__(self, other: "Ideal") -> "Ideal":
        return self * other.inverse()

    def __pow__(self, e: int) -> "Ideal":
        if e < 0:
            return self.inverse() ** (-e)
        result = Ideal.unit(self.field)
        for _ in range(e):
            result = result * self
        return result

    def contains(self, x) -> bool:
        x = self.field(x) if not isinstance(x, KElement) else x
        rows = [list(b.coords()) for b in self.basis]
        den = lcm(*(c.denominator for r in rows for c in r), *(c.denominator for c in x.coords()))
        ints = [[int(c * den) for c in r] for r in rows]
        target = [int(c * den) for c in x.coords()]
        return solve_in_lattice(ints, target, self.field.degree) is not None

    def is_integral(self) -> bool:
        return all(b.is_integral() for b in self.basis)

    def is_principal(self) -> bool:
        return self.ideal_class() == identity_class(self.field)

    def ideal_class(self) -> Form:
        """Reduced form attached to this ideal (its class in Cl(k))."""
        if self.field.is_rational:
            return identity_class(self.field)
        den = lcm(self.A.denominator, self.B.denominator, self.C.denominator)
        a, b, c = int(self.A * den), int(self.B * den), int(self.C * den)
        # integral ideal [a, b + c w] = c * [a/c, b/c + w]
        A, B = a // c, b // c
        t, n = self.field.trace_w, self.field.norm_w
        return forms.reduce_form(Form(A, 2 * B + t, (B * B + B * t + n) // A))

    def __repr__(self) -> str:
        if self.field.is_rational:
            return f"({self.A})"
        return f"[{self.A}, {self.B}+{self.C}w]"


def identity_class(field: BaseField) -> Form:
    if field.is_rational:
        return Form(1, 0, 0)
    return forms.principal_form(field.discriminant)


def ideal_from_form(field: BaseField, f: Form) -> Ideal:
    """An integral ideal whose class is the given reduced form (inverse of ``Ideal.ideal_class``)."""
    if field.is_rational:
        return Ideal.unit(field)
    t = field.trace_w
    B = (f.b - t) // 2
    return Ideal.from_generators(field, [field(f.a), field(B, 1)])


# ---------------------------------------------------------------------------
# prime ideals


@dataclass(frozen=True)
class PrimeIdeal:
    """A nonzero prime of o_k above the rational prime p.

    ``kind`` is one of "rational" (k = Q), "split", "inert", "ramified".  For
    split and ramified primes ``root`` is the residue of w modulo the prime,
    i.e. the prime is (p, w - root).
    """

    field: BaseField
    p: int
    kind: str
    root: int | None = None

    @property
    def residue_char(self) -> int:
        return self.p

    @property
    def e(self) -> int:
        return 2 if self.kind == "ramified" else 1

    @property
    def f_over_Q(self) -> int:
        return 2 if self.kind == "inert" else 1

    @property
    def generator_data(self):
        return (self.p, self.root) if self.root is not None else (self.p, self.kind)

    @property
    def norm(self) -> int:
        return self.p ** self.f_over_Q

    @cached_property
    def other_root(self) -> int | None:
        if self.kind != "split":
            return None
        return (self.field.trace_w - self.root) % self.p

    def ideal(self) -> Ideal:
        if self.kind in ("rational", "inert"):
            return Ideal.from_generators(self.field, [self.p])
        return Ideal.from_generators(self.field, [self.field(self.p), self.field(-self.root, 1)])

    def ideal_class(self) -> Form:
        return ideal_class(self.field, self)

    @cached_property
    def uniformizer(self) -> KElement:
        if self.kind == "ramified":
            return self.field(-self.root, 1)
        return self.field(self.p)

    @property
    def residue_degree(self) -> int:
        return self.f_over_Q

    def _reduce_integral(self, x: KElement):
        p = self.p
        if self.kind == "inert":
            return (int(x.a) % p, int(x.b) % p)
        if self.kind == "rational":
            return int(x.a) % p
        return (int(x.a) + int(x.b) * self.root) % p

    def reduce(self, x):
        """Image of a p-integral element of k in the residue field o_k / P.

        Residues are ints mod p, or pairs (u, v) meaning u + v*w for inert primes.
        """
        x = self.field(x) if not isinstance(x, KElement) else x
        p = self.p
        den = x.denominator()
        j = 0
        while den % p == 0:
            den //= p
            j += 1
        alpha = x * (den * p**j)
        if j == 0:
            num = self._reduce_integral(alpha)
            return self.residue_field.div(num, self.residue_field.from_int(den))
        if self.kind == "split":
            s = self.field(-self.other_root, 1) ** j
            beta = alpha * s / (p**j)
            scale = self._reduce_integral(s) * den
        else:
            beta = alpha / (p**j)
            scale = den
        if not beta.is_integral():
            raise ValueError(f"{x} is not integral at {self}")
        F = self.residue_field
        return F.div(self._reduce_integral(beta), F.from_int(scale))

    def lift(self, r) -> KElement:
        """An element of o_k reducing to the residue ``r``."""
        if self.kind == "inert":
            return self.field(r[0], r[1])
        return self.field(r)

    @cached_property
    def residue_field(self):
        from .finitefield import ResidueField

        if self.kind == "inert":
            return ResidueField(self.p, (self.field.trace_w, self.field.norm_w))
        return ResidueField(self.p)

    def label(self) -> str:
        if self.kind in ("rational", "inert"):
            return f"({self.p})"
        if self.kind == "ramified":
            return f"P{self.p}[ramified]"
        return f"P{self.p}[r={self.root}]"

    def spec(self) -> dict:
        if self.kind == "split":
            return {"p": self.p, "root": self.root}
        if self.kind == "ramified":
            return {"p": self.p, "root": "ramified"}
        return {"p": self.p}

    def __str__(self) -> str:
        return self.label()

    def sort_key(self):
        return (self.norm, self.p, self.root if self.root is not None else -1)


def kronecker(d: int, p: int) -> int:
    if d % p == 0:
        return 0
    if p == 2:
        return 1 if d % 8 in (1, 7) else -1
    return 1 if pow(d % p, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def prime_ideals_above(field: BaseField, p: int) -> tuple[PrimeIdeal, ...]:
    """The primes of o_k above p, split ones ordered by their root."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValidationError(f"{p} is not a rational prime")
    if field.is_rational:
        return (PrimeIdeal(field, p, "rational"),)
    t, n = field.trace_w, field.norm_w
    chi = kronecker(field.discriminant, p)
    if chi == -1:
        return (PrimeIdeal(field, p, "inert"),)
    if p == 2:
        roots = [r for r in (0, 1) if (r * r - t * r + n) % 2 == 0]
    else:
        # roots of x^2 - t x + n mod p are (t +- s)/2 with s^2 = D
        inv2 = pow(2, -1, p)
        ss = sqrt_mod(field.discriminant % p, p, all_roots=True)
        roots = sorted({(t + s) * inv2 % p for s in ss})
    if chi == 0:
        (r,) = roots
        return (PrimeIdeal(field, p, "ramified", r),)
    return tuple(PrimeIdeal(field, p, "split", r) for r in sorted(roots))


def ideal_class(field: BaseField, prime: PrimeIdeal) -> Form:
    if field.is_rational or prime.kind == "inert":
        return identity_class(field)
    t, n, p, r = field.trace_w, field.norm_w, prime.p, prime.root
    return forms.reduce_form(Form(p, t - 2 * r, (r * r - t * r + n) // p))


def primes_up_to_norm(field: BaseField, bound: int) -> list[PrimeIdeal]:
    """All primes of o_k with norm <= bound, ordered by norm."""
    from sympy import primerange

    out = []
    for p in primerange(2, bound + 1):
        for P in prime_ideals_above(field, int(p)):
            if P.norm <= bound:
                out.append(P)
    out.sort(key=PrimeIdeal.sort_key)
    return out


def resolve_prime(field: BaseField, spec) -> PrimeIdeal:
    """Resolve a prime given as {"p": p, "root": r | "ramified"} (root optional when unique)."""
    if isinstance(spec, PrimeIdeal):
        return spec
    if isinstance(spec, int):
        spec = {"p": spec}
    try:
        p = int(spec["p"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError(f"malformed prime specification {spec!r}") from None
    primes = prime_ideals_above(field, p)
    root = spec.get("root")
    if root is None:
        if len(primes) != 1:
            raise ValidationError(f"{p} splits in {field}; a root selector is required", prime=str(p))
        return primes[0]
    if root == "ramified":
        if primes[0].kind != "ramified":
            raise ValidationError(f"{p} is not ramified in {field}", prime=str(p))
        return primes[0]
    try:
        root = int(root)
    except (TypeError, ValueError):
        raise ValidationError(f"root selector must be an integer or 'ramified', got {root!r}") from None
    for P in primes:
        if P.root is not None and P.root == root:
            return P
    raise ValidationError(f"no prime above {p} with root {root} in {field}", prime=str(p))
