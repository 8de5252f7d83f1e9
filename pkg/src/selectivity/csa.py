"""Central simple algebras over k described by their local Hasse invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basefield import BaseField, PrimeIdeal
from .errors import NotEmbeddableError, UndeterminedPrimeError, ValidationError
from .extension import RelativeExtension, real_root_count, splitting_type


@dataclass(frozen=True)
class AlgebraSpec:
    """A central simple algebra of degree n, given by its nonzero local invariants.

    ``finite_invariants`` pairs a prime of k with a fraction r/d in [0, 1).
    ``real_invariant`` is only meaningful for k = Q (0 or 1/2).
    """

    field: BaseField
    degree: int
    finite_invariants: tuple[tuple[PrimeIdeal, Fraction], ...] = ()
    real_invariant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(
            self,
            "finite_invariants",
            tuple((P, Fraction(r)) for P, r in self.finite_invariants),
        )
        object.__setattr__(self, "real_invariant", Fraction(self.real_invariant))

    def invariant_at(self, prime: PrimeIdeal) -> Fraction:
        for P, r in self.finite_invariants:
            if P == prime:
                return r
        return Fraction(0)

    @property
    def ramified_primes(self) -> list[PrimeIdeal]:
        return [P for P, r in self.finite_invariants if r.denominator > 1]

    @property
    def is_matrix_algebra(self) -> bool:
        return not self.ramified_primes and self.real_invariant == 0


@dataclass(frozen=True)
class LocalIndexDatum:
    prime: PrimeIdeal
    d_v: int
    m_v: int


def validate(spec: AlgebraSpec) -> None:
    """Raise ValidationError unless the invariants describe a central simple algebra of degree n."""
    n = spec.degree
    if not isinstance(n, int) or n < 3:
        raise ValidationError(f"algebra degree must be an integer >= 3, got {n!r}")
    seen = set()
    total = Fraction(0)
    for P, r in spec.finite_invariants:
        if P.field != spec.field:
            raise ValidationError(f"prime {P} does not belong to {spec.field}", prime=P.label())
        if P in seen:
            raise ValidationError(f"prime {P} listed twice", prime=P.label())
        seen.add(P)
        if not 0 <= r < 1:
            raise ValidationError(f"invariant {r} at {P} is not in [0, 1)", prime=P.label())
        if n % r.denominator:
            raise ValidationError(
                f"local index {r.denominator} at {P} does not divide the degree {n}", prime=P.label()
            )
        total += r
    rinv = spec.real_invariant
    if rinv:
        if not spec.field.is_rational:
            raise ValidationError("imaginary quadratic fields have no real places")
        if rinv != Fraction(1, 2):
            raise ValidationError(f"real invariant must be 0 or 1/2, got {rinv}")
        if n % 2:
            raise ValidationError(f"real invariant 1/2 is impossible in odd degree {n}")
    total += rinv
    if total.denominator != 1:
        raise ValidationError(f"reciprocity violated: sum of local invariants is {total}, not an integer")


def local_index(spec: AlgebraSpec, prime: PrimeIdeal) -> LocalIndexDatum:
    d = spec.invariant_at(prime).denominator
    return LocalIndexDatum(prime, d, spec.degree // d)


def local_embeddable(spec: AlgebraSpec, ext: RelativeExtension, prime: PrimeIdeal, seed: int = 0) -> bool:
    """d_v divides every local degree [K_w : k_v] for w above ``prime``."""
    d = local_index(spec, prime).d_v
    if d == 1:
        return True
    datum = splitting_type(ext, prime, seed)
    if not datum.certified:
        raise UndeterminedPrimeError(
            f"o_k[x]/(f) is not certified maximal at {prime}; local degrees there are undetermined",
            prime=prime.label(),
        )
    return all(deg % d == 0 for deg in datum.local_degrees)


def real_place_embeddable(spec: AlgebraSpec, ext: RelativeExtension) -> bool:
    if spec.real_invariant == 0:
        return True
    return real_root_count(ext) == 0


def global_embeddable(spec: AlgebraSpec, ext: RelativeExtension, seed: int = 0) -> bool:
    """K embeds in the algebra iff it embeds at every place; only ramified places can fail."""
    if ext.degree != spec.degree:
        raise ValidationError(f"extension degree {ext.degree} differs from algebra degree {spec.degree}")
    if not real_place_embeddable(spec, ext):
        return False
    return all(local_embeddable(spec, ext, P, seed) for P in spec.ramified_primes)


def require_embeddable(spec: AlgebraSpec, ext: RelativeExtension, seed: int = 0) -> None:
    if not real_place_embeddable(spec, ext):
        raise NotEmbeddableError("K has a real place but the algebra is ramified at infinity", prime="infinity")
    for P in spec.ramified_primes:
        if not local_embeddable(spec, ext, P, seed):
            d = local_index(spec, P).d_v
            raise NotEmbeddableError(f"local index {d} at {P} does not divide every local degree of K", prime=P.label())
