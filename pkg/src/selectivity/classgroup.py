"""Ideal class group Cl(k) of the base field and its subgroups.

Classes are reduced forms (see ``forms``); for k = Q the group is trivial with
the placeholder element (1, 0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint

from . import forms
from .basefield import BaseField, PrimeIdeal, identity_class
from .basefield import ideal_class as _prime_class
from .errors import ValidationError
from .forms import Form


@dataclass(frozen=True)
class ClassGroup:
    field: BaseField
    elements: tuple[Form, ...]
    generators: tuple[Form, ...]
    elementary_divisors: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Form:
        return identity_class(self.field)

    def __contains__(self, c) -> bool:
        return c in self._members

    @property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def mul(self, x: Form, y: Form) -> Form:
        if self.field.is_rational:
            return self.identity
        return forms.compose(x, y)

    def inv(self, x: Form) -> Form:
        if self.field.is_rational:
            return self.identity
        return forms.inverse(x)

    def pow(self, x: Form, e: int) -> Form:
        if self.field.is_rational:
            return self.identity
        return forms.power(x, e)

    def element_order(self, x: Form) -> int:
        e, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            e += 1
        return e

    def check(self, c: Form) -> Form:
        if c not in self._members:
            raise ValidationError(f"{c} is not a class of Cl({self.field})")
        return c


def _generated(group: ClassGroup, gens) -> frozenset:
    members = {group.identity}
    frontier = [group.identity]
    gens = [g for g in gens if g != group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def _invariant_factors(group: ClassGroup) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group, from p-torsion counts."""
    h = group.order
    if h == 1:
        return []
    per_prime = []
    for p in sorted(factorint(h)):
        # ranks[k] = log_p #{x : x^(p^k) = 1}
        counts = []
        k = 1
        while True:
            n = sum(1 for x in group.elements if group.pow(x, p**k) == group.identity)
            lg = 0
            while n > 1:
                n //= p
                lg += 1
            counts.append(lg)
            if k > 1 and counts[-1] == counts[-2]:
                counts.pop()
                break
            k += 1
        # number of cyclic factors of exponent >= k is counts[k-1] - counts[k-2]
        prev = 0
        at_least = []
        for c in counts:
            at_least.append(c - prev)
            prev = c
        exps = []
        for k in range(len(at_least)):
            nxt = at_least[k + 1] if k + 1 < len(at_least) else 0
            exps += [k + 1] * (at_least[k] - nxt)
        per_prime.append((p, sorted(exps, reverse=True)))
    rank = max(len(e) for _, e in per_prime)
    divs = [1] * rank
    for p, exps in per_prime:
        for i, e in enumerate(exps):
            divs[rank - 1 - i] *= p**e
    return divs


def _find_basis(group: ClassGroup, divs: list[int]) -> list[Form]:
    """Elements g_i of order divs[i] generating the group as a direct product."""
    order_of = {x: group.element_order(x) for x in group.elements}
    target = list(reversed(divs))  # largest first

    def search(i, chosen, sub):
        if i == len(target):
            return chosen
        for x in group.elements:
            if order_of[x] != target[i] or x in sub:
                continue
            new = _generated(group, chosen + [x])
            if len(new) == len(sub) * target[i]:
                found = search(i + 1, chosen + [x], new)
                if found is not None:
                    return found
        return None

    basis = search(0, [], frozenset({group.identity}))
    assert basis is not None
    return list(reversed(basis))


@lru_cache(maxsize=None)
def class_group(field: BaseField) -> ClassGroup:
    """Cl(k) as the group of reduced forms of discriminant D under composition."""
    if not isinstance(field, BaseField):
        field = BaseField(int(field))
    if field.is_rational:
        e = identity_class(field)
        return ClassGroup(field, (e,), (), ())
    elements = tuple(forms.reduced_forms(field.discriminant))
    provisional = ClassGroup(field, elements, (), ())
    divs = _invariant_factors(provisional)
    gens = _find_basis(provisional, divs) if divs else []
    return ClassGroup(field, elements, tuple(gens), tuple(divs))


@dataclass(frozen=True)
class Subgroup:
    ambient: ClassGroup
    members: frozenset

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.ambient.order // self.order

    def __contains__(self, c) -> bool:
        return c in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def join(self, other: "Subgroup") -> "Subgroup":
        return subgroup_generated(self.ambient, sorted(self.members | other.members))

    def coset(self, c: Form) -> frozenset:
        return frozenset(self.ambient.mul(c, s) for s in self.members)

    def cosets(self) -> list[frozenset]:
        """All cosets, ordered by their smallest reduced form."""
        seen = set()
        out = []
        for c in self.ambient.elements:
            if c in seen:
                continue
            cs = self.coset(c)
            seen |= cs
            out.append(cs)
        return sorted(out, key=min)

    def generators(self) -> list[Form]:
        """A small generating set, chosen greedily in lexicographic order."""
        gens: list[Form] = []
        cur = frozenset({self.ambient.identity})
        for c in sorted(self.members):
            if c not in cur:
                gens.append(c)
                cur = _generated(self.ambient, gens)
            if cur == self.members:
                break
        return gens


def subgroup_generated(group: ClassGroup, gens) -> Subgroup:
    gens = list(gens)
    for g in gens:
        group.check(g)
    return Subgroup(group, _generated(group, gens))


def trivial_subgroup(group: ClassGroup) -> Subgroup:
    return Subgroup(group, frozenset({group.identity}))


def power_subgroup(group: ClassGroup, n: int) -> Subgroup:
    """The subgroup {c^n : c in Cl}."""
    if n < 1:
        raise ValidationError(f"power exponent must be positive, got {n}")
    return Subgroup(group, frozenset(group.pow(c, n) for c in group.elements))


def prime_class(field: BaseField, prime: PrimeIdeal) -> Form:
    return _prime_class(field, prime)
