"""Class field of a genus of orders as a quotient of Cl(k), and selectivity counts.

Everything idelic collapses to the class group: finite unit norms are always
reduced norms of local stabilizers, and for n >= 3 the archimedean norm image is
everything.  So the class field k(Gamma) corresponds to Cl(k)/S where S is
generated by Cl(k)^n and the classes of the local norm valuations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .basefield import PrimeIdeal
from .classgroup import ClassGroup, Subgroup, class_group, power_subgroup, prime_class, subgroup_generated
from .csa import AlgebraSpec, local_index, require_embeddable, validate
from .errors import ValidationError
from .extension import NormSubgroup, RelativeExtension, norm_class_subgroup
from .forms import Form

EXACT = "Exact"
LOWER_BOUND = "LowerBound"


@dataclass(frozen=True)
class LocalType:
    """Local descriptor of the order at one prime.

    ``maximal_split``: norm valuations are multiples of m_v = n/d_v.
    ``maximal_division``: every valuation occurs (requires d_v = n).
    ``custom``: valuations are multiples of ``exponent``, full units.
    """

    kind: str
    exponent: int | None = None

    def __post_init__(self):
        if self.kind not in ("maximal_split", "maximal_division", "custom"):
            raise ValidationError(f"unknown local type {self.kind!r}")
        if self.kind == "custom":
            if not isinstance(self.exponent, int) or self.exponent < 1:
                raise ValidationError(f"custom exponent must be a positive integer, got {self.exponent!r}")
        elif self.exponent is not None:
            raise ValidationError(f"{self.kind} takes no exponent")

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.exponent is not None:
            d["exponent"] = self.exponent
        return d

    @classmethod
    def from_dict(cls, d) -> "LocalType":
        if isinstance(d, str):
            return cls(d)
        return cls(d["kind"], d.get("exponent"))


def MaximalSplit() -> LocalType:
    return LocalType("maximal_split")


def MaximalDivision() -> LocalType:
    return LocalType("maximal_division")


def Custom(g: int) -> LocalType:
    return LocalType("custom", g)


@dataclass(frozen=True)
class OrderGenusSpec:
    algebra: AlgebraSpec
    local_types: tuple[tuple[PrimeIdeal, LocalType], ...] = ()

    @property
    def field(self):
        return self.algebra.field

    @property
    def degree(self) -> int:
        return self.algebra.degree

    def type_at(self, prime: PrimeIdeal) -> LocalType:
        for P, t in self.local_types:
            if P == prime:
                return t
        return MaximalSplit()

    def exponent_at(self, prime: PrimeIdeal) -> int:
        t = self.type_at(prime)
        if t.kind == "maximal_division":
            return 1
        if t.kind == "custom":
            return t.exponent
        return local_index(self.algebra, prime).m_v

    @property
    def division_primes(self) -> list[PrimeIdeal]:
        return [P for P, t in self.local_types if t.kind == "maximal_division"]


def validate_genus(spec: OrderGenusSpec) -> None:
    validate(spec.algebra)
    n = spec.degree
    seen = set()
    for P, t in spec.local_types:
        if P.field != spec.field:
            raise ValidationError(f"prime {P} does not belong to {spec.field}", prime=P.label())
        if P in seen:
            raise ValidationError(f"local type at {P} given twice", prime=P.label())
        seen.add(P)
        if t.kind == "custom" and n % t.exponent:
            raise ValidationError(f"custom exponent {t.exponent} at {P} does not divide {n}", prime=P.label())
        if t.kind == "maximal_division" and local_index(spec.algebra, P).d_v != n:
            raise ValidationError(f"MaximalDivision at {P} needs local index {n}", prime=P.label())


def exactness(spec: OrderGenusSpec) -> tuple[str, list[str]]:
    """Exact only for maximal orders with every local index in {1, n}."""
    reasons = []
    n = spec.degree
    for P, t in spec.local_types:
        if t.kind == "custom":
            reasons.append(f"custom local type (exponent {t.exponent}) at {P.label()}")
    for P in spec.algebra.ramified_primes:
        d = local_index(spec.algebra, P).d_v
        if d not in (1, n):
            reasons.append(f"intermediate local index {d} at {P.label()}")
    return (LOWER_BOUND if reasons else EXACT), reasons


@dataclass(frozen=True)
class StabilizerSubgroup:
    subgroup: Subgroup
    derivation: tuple[tuple[PrimeIdeal, int], ...]


def stabilizer_subgroup(spec: OrderGenusSpec) -> StabilizerSubgroup:
    """S = <Cl^n, [p]^(m_p) for listed primes>."""
    validate_genus(spec)
    group = class_group(spec.field)
    gens = sorted(power_subgroup(group, spec.degree).members)
    listed = {P for P, _ in spec.local_types} | set(spec.algebra.ramified_primes)
    derivation = []
    for P in sorted(listed, key=lambda P: P.sort_key()):
        m = spec.exponent_at(P)
        derivation.append((P, m))
        gens.append(group.pow(prime_class(spec.field, P), m))
    return StabilizerSubgroup(subgroup_generated(group, gens), tuple(derivation))


def genus_class_count(spec: OrderGenusSpec) -> int:
    return stabilizer_subgroup(spec).subgroup.index


def _check_same_field(spec: OrderGenusSpec, norm: NormSubgroup) -> None:
    if norm.field != spec.field:
        raise ValidationError(f"norm subgroup is over {norm.field}, order genus over {spec.field}")


def embeddable_subgroup(spec: OrderGenusSpec, norm: NormSubgroup) -> Subgroup:
    """N*S, the preimage in Cl(k) of the embeddable classes."""
    _check_same_field(spec, norm)
    return stabilizer_subgroup(spec).subgroup.join(norm.subgroup)


def selectivity_degree(spec: OrderGenusSpec, norm: NormSubgroup) -> int:
    """[Cl : N*S] = [K cap k(Gamma) : k]."""
    return embeddable_subgroup(spec, norm).index


def decide_class(spec: OrderGenusSpec, norm: NormSubgroup, c: Form) -> bool:
    """Does o_K embed into an order of the genus class indexed by c?"""
    group = class_group(spec.field)
    group.check(c)
    return c in embeddable_subgroup(spec, norm)


@dataclass
class SelectivityReport:
    genus_class_count: int
    class_field_degree: int
    selectivity_degree: int
    embeddable_class_count: int
    ratio: Fraction
    exactness: str
    diagnostics: list[str] = field(default_factory=list)
    stabilizer: StabilizerSubgroup | None = None
    norm: NormSubgroup | None = None
    embeddable_cosets: list[list[Form]] = field(default_factory=list)
    genus_cosets: list[list[Form]] = field(default_factory=list)

    @property
    def group(self) -> ClassGroup:
        return self.stabilizer.subgroup.ambient


def _coset_list(sub: Subgroup) -> list[list[Form]]:
    return [sorted(cs) for cs in sub.cosets()]


def selectivity_report(spec: OrderGenusSpec, ext: RelativeExtension, bound: int, seed: int = 0) -> SelectivityReport:
    """Count the genus classes and those containing an embedded copy of o_K."""
    validate_genus(spec)
    if ext.base != spec.field:
        raise ValidationError(f"extension is over {ext.base}, algebra over {spec.field}")
    if ext.degree != spec.degree:
        raise ValidationError(f"extension degree {ext.degree} differs from algebra degree {spec.degree}")
    require_embeddable(spec.algebra, ext, seed)

    stab = stabilizer_subgroup(spec)
    S = stab.subgroup
    norm = norm_class_subgroup(ext, bound, seed)
    NS = S.join(norm.subgroup)
    genus = S.index
    sel = NS.index
    emb = NS.order // S.order
    flag, reasons = exactness(spec)

    diagnostics = []
    for r in reasons:
        diagnostics.append(f"lower bound only: {r}")
    if not norm.stabilized:
        diagnostics.append(
            f"norm subgroup last grew at norm {norm.last_growth}, above half the sampling bound {bound}"
        )
    for P in norm.skipped:
        diagnostics.append(f"prime {P.label()} skipped in norm sampling: monogenic order not certified maximal")

    # cosets of S inside N*S, in the lexicographic order of their representatives
    emb_cosets = sorted((sorted(S.coset(c)) for c in NS.members), key=lambda cs: cs[0])
    uniq = []
    for cs in emb_cosets:
        if not uniq or uniq[-1] != cs:
            uniq.append(cs)
    return SelectivityReport(
        genus_class_count=genus,
        class_field_degree=genus,
        selectivity_degree=sel,
        embeddable_class_count=emb,
        ratio=Fraction(emb, genus),
        exactness=flag,
        diagnostics=diagnostics,
        stabilizer=stab,
        norm=norm,
        embeddable_cosets=uniq,
        genus_cosets=_coset_list(S),
    )
