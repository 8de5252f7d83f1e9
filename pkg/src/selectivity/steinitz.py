"""Steinitz classes of o_k-lattices: an independent check on the class-field engine.

Only the split case (algebra M_n(k), maximal orders) is covered.  Maximal orders
of M_n(k) are End(L) for rank-n lattices L, and their conjugacy classes are
classified by st(L) modulo Cl(k)^n.  o_K embeds in End(L) iff L carries an
o_K-module structure, i.e. L is isomorphic to a fractional o_K-ideal A, whose
Steinitz class is st(o_K) * [N(A)].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .basefield import BaseField, Ideal, KElement, ideal_from_form
from .classgroup import class_group
from .errors import OracleNotApplicable, ValidationError
from .extension import RelativeExtension
from .forms import Form
from .lattice import rational_hnf, solve_in_lattice
from .round2 import from_vector, maximal_order_basis, multiply, to_vector


@dataclass(frozen=True)
class PseudoLattice:
    """The o_k-module sum_i a_i * rows[i] inside k^n."""

    field: BaseField
    ideals: tuple[Ideal, ...]
    rows: tuple[tuple[KElement, ...], ...]

    def __post_init__(self):
        if len(self.ideals) != len(self.rows):
            raise ValidationError("need one coefficient ideal per row")
        if not self.rows:
            raise ValidationError("empty pseudo-lattice")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValidationError("rows have different lengths")

    @property
    def rank(self) -> int:
        return len(self.rows[0])

    @classmethod
    def free(cls, field: BaseField, n: int) -> "PseudoLattice":
        rows = tuple(tuple(field(int(i == j)) for j in range(n)) for i in range(n))
        return cls(field, (Ideal.unit(field),) * n, rows)

    def scale(self, c: Ideal) -> "PseudoLattice":
        return PseudoLattice(self.field, tuple(a * c for a in self.ideals), self.rows)

    def transform(self, matrix) -> "PseudoLattice":
        """Apply a k-linear map (given by rows, acting on row vectors) to every row."""
        n = self.rank
        zero = self.field(0)
        rows = []
        for r in self.rows:
            out = [zero] * n
            for i, x in enumerate(r):
                if x:
                    for j in range(n):
                        out[j] = out[j] + x * matrix[i][j]
            rows.append(tuple(out))
        return PseudoLattice(self.field, self.ideals, tuple(rows))

    def z_basis(self) -> list[list]:
        """HNF Z-basis of the module, for equality testing."""
        gens = []
        for a, r in zip(self.ideals, self.rows):
            for b in a.basis:
                v = []
                for x in r:
                    v.extend((b * x).coords())
                gens.append(v)
        return rational_hnf(gens, self.rank * self.field.degree)


def _split_one(I: Ideal, J: Ideal) -> tuple[KElement, KElement]:
    """e in I, f in J with e + f = 1, for coprime integral ideals."""
    k = I.field
    basis = I.basis + J.basis
    den = lcm(*(c.denominator for b in basis for c in b.coords()))
    rows = [[int(c * den) for c in b.coords()] for b in basis]
    target = [int(c * den) for c in k(1).coords()]
    coeff = solve_in_lattice(rows, target, k.degree)
    if coeff is None:
        raise ArithmeticError("ideals are not coprime")
    m = len(I.basis)
    e = k(0)
    for c, b in zip(coeff[:m], I.basis):
        e = e + b * c
    return e, k(1) - e


def pseudo_hnf(lat: PseudoLattice) -> PseudoLattice:
    """Triangular pseudo-basis with unit pivots (Cohen's pseudo-HNF, without off-diagonal reduction).

    Pivots are taken from the last coordinate backwards; the i-th output row has
    a 1 in position i and zeros after it.
    """
    k = lat.field
    n = lat.rank
    work = [(a, list(r)) for a, r in zip(lat.ideals, lat.rows) if any(r)]
    pivots: list = [None] * n
    for i in range(n - 1, -1, -1):
        live = [j for j, (_, r) in enumerate(work) if r[i]]
        if not live:
            raise ValidationError("pseudo-lattice basis matrix is singular")
        a_k, r_k = work[live[0]]
        c = r_k[i]
        a_k = a_k * c
        r_k = [x / c for x in r_k]
        rest = []
        for j, (a_r, r_r) in enumerate(work):
            if j == live[0]:
                continue
            delta = r_r[i]
            if not delta:
                rest.append((a_r, r_r))
                continue
            d = a_r * delta + a_k
            dinv = d.inverse()
            e, f = _split_one(a_r * delta * dinv, a_k * dinv)
            u, v = f, e / delta
            new_r = [x - delta * y for x, y in zip(r_r, r_k)]
            new_k = [u * y + v * x for x, y in zip(r_r, r_k)]
            a_r, a_k = a_r * a_k * dinv, d
            r_k = new_k
            if any(new_r):
                rest.append((a_r, new_r))
        pivots[i] = (a_k, r_k)
        work = rest
    return PseudoLattice(k, tuple(a for a, _ in pivots), tuple(tuple(r) for _, r in pivots))


@dataclass(frozen=True)
class SteinitzClass:
    cls: Form

    def __str__(self) -> str:
        return str(self.cls)


def steinitz_ideal(lat: PseudoLattice) -> Ideal:
    h = pseudo_hnf(lat)
    out = Ideal.unit(lat.field)
    for a in h.ideals:
        out = out * a
    return out


def steinitz_class(lat: PseudoLattice) -> SteinitzClass:
    """Ideal class of the product of the pseudo-HNF coefficient ideals."""
    return SteinitzClass(steinitz_ideal(lat).ideal_class())


def determinant_ideal(lat: PseudoLattice) -> Ideal:
    """sum over n-subsets S of rows of det(rows_S) * prod_{i in S} a_i (the top exterior power)."""
    from itertools import combinations

    k = lat.field
    n = lat.rank
    gens = []
    for S in combinations(range(len(lat.rows)), n):
        d = _kdet([lat.rows[i] for i in S])
        if not d:
            continue
        ideal = Ideal.unit(k) * d
        for i in S:
            ideal = ideal * lat.ideals[i]
        gens.extend(ideal.basis)
    if not gens:
        raise ValidationError("pseudo-lattice basis matrix is singular")
    return Ideal.from_generators(k, gens)


def _kdet(rows) -> KElement:
    m = [list(r) for r in rows]
    n = len(m)
    k = m[0][0].field
    d = k(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if m[i][c]), None)
        if sel is None:
            return k(0)
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            d = -d
        d = d * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


# ---------------------------------------------------------------------------
# conjugacy classes of maximal orders of M_n(k)


def _union_cosets(elements, edges) -> list[list[Form]]:
    parent = {x: x for x in elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict = {}
    for x in elements:
        groups.setdefault(find(x), []).append(x)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def maximal_order_class_set(field: BaseField, n: int) -> list[list[Form]]:
    """Steinitz classes grouped by isomorphism of End(L): one group per conjugacy class.

    Lattices o_k^(n-1) + a realize every Steinitz class; End(cL) = End(L), so
    classes reached from one another by scaling are identified.
    """
    if n < 3:
        raise ValidationError(f"degree must be >= 3, got {n}")
    group = class_group(field)
    reps = {c: ideal_from_form(field, c) for c in group.elements}
    lattices = {}
    for c, a in reps.items():
        base = PseudoLattice.free(field, n)
        lat = PseudoLattice(field, base.ideals[:-1] + (a,), base.rows)
        lattices[steinitz_class(lat).cls] = lat
    edges = []
    for s, lat in lattices.items():
        for a in reps.values():
            edges.append((s, steinitz_class(lat.scale(a)).cls))
    return _union_cosets(sorted(lattices), edges)


# ---------------------------------------------------------------------------
# lattices with an o_K-module structure


def _ok_lattice(ext: RelativeExtension, vectors) -> PseudoLattice:
    k = ext.base
    one = Ideal.unit(k)
    rows = tuple(tuple(from_vector(ext, v)) for v in vectors)
    return PseudoLattice(k, (one,) * len(rows), rows)


def ring_of_integers_steinitz(ext: RelativeExtension, seed: int = 0) -> SteinitzClass:
    """st(o_K), from a Z-basis of o_K computed by Round 2."""
    return steinitz_class(_ok_lattice(ext, maximal_order_basis(ext, seed)))


def _ideal_basis(ext: RelativeExtension, a: int, alpha) -> list[list]:
    """Z-basis of the o_K-ideal (a, alpha)."""
    ok = maximal_order_basis(ext)
    gens = [[a * x for x in b] for b in ok]
    for b in ok:
        gens.append(to_vector(ext, multiply(ext, alpha, from_vector(ext, b))))
    return rational_hnf(gens, len(ok))


@lru_cache(maxsize=None)
def module_norm_classes(ext: RelativeExtension, samples: int = 24, seed: int = 0) -> frozenset:
    """Classes st(A) / st(o_K) for sampled o_K-ideals A = (a, alpha), closed under the group law.

    This reaches the norm subgroup through module theory alone: no splitting
    types or Dedekind certificates are consulted.
    """
    k = ext.base
    group = class_group(k)
    base = ring_of_integers_steinitz(ext, seed).cls
    base_inv = group.inv(base)
    ok = maximal_order_basis(ext, seed)
    rng = random.Random(seed)
    found = {group.identity}
    small_primes = [2, 3, 5, 7, 11, 13]
    for _ in range(samples):
        if len(found) == group.order:
            break
        a = rng.choice(small_primes)
        coeffs = [rng.randint(-2, 2) for _ in ok]
        vec = [sum(c * b[l] for c, b in zip(coeffs, ok)) for l in range(len(ok))]
        if not any(vec):
            continue
        alpha = from_vector(ext, vec)
        lat = _ok_lattice(ext, _ideal_basis(ext, a, alpha))
        found.add(group.mul(steinitz_class(lat).cls, base_inv))
    # close up into a subgroup
    frontier = list(found)
    while frontier:
        x = frontier.pop()
        for y in list(found):
            z = group.mul(x, y)
            if z not in found:
                found.add(z)
                frontier.append(z)
    return frozenset(found)


def embeddable_steinitz_set(ext: RelativeExtension, n: int, samples: int = 24, seed: int = 0) -> list[list[Form]]:
    """Steinitz cosets mod Cl^n of rank-n lattices admitting an o_K-module structure."""
    if ext.degree != n:
        raise ValidationError(f"extension degree {ext.degree} differs from {n}")
    group = class_group(ext.base)
    base = ring_of_integers_steinitz(ext, seed).cls
    reached = {group.mul(base, c) for c in module_norm_classes(ext, samples, seed)}
    by_class = maximal_order_class_set(ext.base, n)
    return [cs for cs in by_class if reached & set(cs)]


@dataclass(frozen=True)
class CrossCheck:
    matches: bool
    orientation: str  # "direct" or "inverse"
    oracle_cosets: tuple[tuple[Form, ...], ...]
    engine_cosets: tuple[tuple[Form, ...], ...]
    steinitz_ok: Form

    def __bool__(self) -> bool:
        return self.matches

    def to_dict(self) -> dict:
        return {
            "verdict": "match" if self.matches else "mismatch",
            "orientation": self.orientation,
            "steinitz_ring_of_integers": str(self.steinitz_ok),
            "oracle_cosets": [[str(c) for c in cs] for cs in self.oracle_cosets],
            "engine_cosets": [[str(c) for c in cs] for cs in self.engine_cosets],
        }


def oracle_applicable(spec) -> None:
    if not spec.algebra.is_matrix_algebra:
        raise OracleNotApplicable("the Steinitz oracle only covers the matrix algebra M_n(k)")
    for P, t in spec.local_types:
        if t.kind != "maximal_split":
            raise OracleNotApplicable(f"the Steinitz oracle only covers maximal orders (local type {t.kind} at {P.label()})")


def cross_check(report, oracle_set, ext: RelativeExtension, seed: int = 0) -> CrossCheck:
    """Compare the engine's embeddable genus classes with the oracle's Steinitz cosets.

    Genus class c corresponds to the lattice with Steinitz class st(o_K) * c^e,
    e = +1 ("direct") or -1 ("inverse"); the identity class is the base order
    End(o_K).  Both orientations are tried and the one used is recorded.
    """
    group = report.group
    base = ring_of_integers_steinitz(ext, seed).cls
    oracle = {frozenset(cs) for cs in oracle_set}
    engine = [frozenset(cs) for cs in report.embeddable_cosets]
    for orientation in ("direct", "inverse"):
        turn = (lambda c: c) if orientation == "direct" else group.inv
        shifted = {frozenset(group.mul(base, turn(c)) for c in cs) for cs in engine}
        ok = shifted == oracle and len(oracle) == report.embeddable_class_count
        if ok:
            break
    return CrossCheck(
        ok,
        orientation if ok else "direct",
        tuple(tuple(sorted(cs)) for cs in sorted(oracle, key=min)),
        tuple(tuple(sorted(cs)) for cs in sorted(engine, key=min)),
        base,
    )
