import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selectivity import (
    AlgebraSpec,
    BaseField,
    Custom,
    LocalType,
    MaximalDivision,
    OrderGenusSpec,
    ValidationError,
    class_group,
    decide_class,
    genus_class_count,
    norm_class_subgroup,
    prime_ideals_above,
    selectivity_degree,
    selectivity_report,
    stabilizer_subgroup,
)
from selectivity.classfield import embeddable_subgroup, exactness
from selectivity.classgroup import power_subgroup
from selectivity.errors import NotEmbeddableError
from selectivity.forms import Form

from conftest import corpus_extensions
from specgen import all_maximal_matrix_spec, random_genus_spec

CORPUS = corpus_extensions()
K23 = BaseField(-23)
P2, P2b = prime_ideals_above(K23, 2)
RAMIFIED_23 = AlgebraSpec(K23, 3, ((P2, Fraction(1, 3)), (P2b, Fraction(2, 3))))


def test_local_type_validation():
    with pytest.raises(ValidationError):
        LocalType("maximal")
    with pytest.raises(ValidationError):
        Custom(0)
    with pytest.raises(ValidationError):
        LocalType("maximal_split", 2)
    assert LocalType.from_dict(Custom(3).to_dict()) == Custom(3)
    assert LocalType.from_dict("maximal_division") == MaximalDivision()


def test_genus_spec_validation():
    with pytest.raises(ValidationError, match="divide"):
        stabilizer_subgroup(OrderGenusSpec(AlgebraSpec(K23, 3), ((P2, Custom(2)),)))
    with pytest.raises(ValidationError, match="local index"):
        stabilizer_subgroup(OrderGenusSpec(AlgebraSpec(K23, 3), ((P2, MaximalDivision()),)))
    with pytest.raises(ValidationError, match="twice"):
        stabilizer_subgroup(OrderGenusSpec(AlgebraSpec(K23, 3), ((P2, Custom(3)), (P2, Custom(1)))))


def test_stabilizer_examples():
    G = class_group(K23)
    S = stabilizer_subgroup(OrderGenusSpec(AlgebraSpec(K23, 3))).subgroup
    assert S.order == 1 and S.index == 3
    S = stabilizer_subgroup(OrderGenusSpec(RAMIFIED_23, ((P2, MaximalDivision()),))).subgroup
    assert S.order == G.order
    Q = BaseField(0)
    assert stabilizer_subgroup(OrderGenusSpec(AlgebraSpec(Q, 3))).subgroup.index == 1


def test_genus_class_count_examples():
    assert genus_class_count(OrderGenusSpec(AlgebraSpec(K23, 3))) == 3
    assert genus_class_count(OrderGenusSpec(AlgebraSpec(BaseField(-20), 4))) == 2
    assert genus_class_count(OrderGenusSpec(AlgebraSpec(BaseField(0), 5))) == 1
    # Cl(-84) = C2 x C2 is killed by squaring, so n = 3 leaves nothing
    assert genus_class_count(OrderGenusSpec(AlgebraSpec(BaseField(-84), 3))) == 1
    assert genus_class_count(OrderGenusSpec(AlgebraSpec(BaseField(-84), 4))) == 4


def test_selectivity_degree_and_decisions(golden23):
    N = norm_class_subgroup(golden23, 1000)
    split = OrderGenusSpec(AlgebraSpec(K23, 3))
    division = OrderGenusSpec(RAMIFIED_23, ((P2, MaximalDivision()),))
    assert selectivity_degree(split, N) == 3
    assert selectivity_degree(division, N) == 1
    G = class_group(K23)
    assert decide_class(split, N, G.identity)
    assert not decide_class(split, N, P2.ideal_class())
    assert all(decide_class(division, N, c) for c in G.elements)
    with pytest.raises(ValidationError):
        decide_class(split, N, Form(1, 0, 5))
    Q = BaseField(0)
    NQ = norm_class_subgroup(CORPUS[-1], 1000)
    assert selectivity_degree(OrderGenusSpec(AlgebraSpec(Q, 3)), NQ) == 1
    with pytest.raises(ValidationError):
        selectivity_degree(split, NQ)


def test_report_examples(golden23, golden20):
    r = selectivity_report(OrderGenusSpec(AlgebraSpec(K23, 3)), golden23, 1000)
    assert (r.genus_class_count, r.selectivity_degree, r.embeddable_class_count) == (3, 3, 1)
    assert r.ratio == Fraction(1, 3) and r.exactness == "Exact"
    r = selectivity_report(OrderGenusSpec(RAMIFIED_23), golden23, 1000)
    assert (r.genus_class_count, r.embeddable_class_count, r.ratio) == (1, 1, 1)
    r = selectivity_report(OrderGenusSpec(AlgebraSpec(golden20.base, 4)), golden20, 1000)
    assert (r.genus_class_count, r.selectivity_degree, r.embeddable_class_count, r.ratio) == (2, 2, 1, Fraction(1, 2))
    assert r.class_field_degree == r.genus_class_count


def test_report_requires_embeddability(golden23):
    principal = prime_ideals_above(K23, 59)[0]
    assert principal.ideal().is_principal()
    spec = OrderGenusSpec(AlgebraSpec(K23, 3, ((principal, Fraction(1, 3)), (P2, Fraction(2, 3)))))
    with pytest.raises(NotEmbeddableError) as info:
        selectivity_report(spec, golden23, 1000)
    assert info.value.prime == principal.label()


def test_lower_bound_flag():
    K = CORPUS[2]  # Cl = C2 x C2, n = 4
    k = K.base
    spec = OrderGenusSpec(AlgebraSpec(k, 4), ((prime_ideals_above(k, 5)[0], Custom(2)),))
    r = selectivity_report(spec, K, 1000)
    assert r.exactness == "LowerBound"
    assert any("custom" in d for d in r.diagnostics)
    assert exactness(OrderGenusSpec(AlgebraSpec(k, 4))) == ("Exact", [])


def _draw(data, case=None):
    idx = data.draw(st.integers(0, len(CORPUS) - 1)) if case is None else case
    seed = data.draw(st.integers(0, 10**6))
    ext = CORPUS[idx]
    return ext, random_genus_spec(ext, random.Random(seed))


@settings(max_examples=80)
@given(st.data())
def test_counting_laws(data):
    ext, spec = _draw(data)
    r = selectivity_report(spec, ext, 1000)
    h = class_group(ext.base).order
    assert h % r.class_field_degree == 0
    assert r.class_field_degree % r.selectivity_degree == 0
    assert r.embeddable_class_count >= Fraction(r.genus_class_count, r.selectivity_degree)
    assert r.embeddable_class_count * r.selectivity_degree == r.genus_class_count
    assert r.stabilizer.subgroup.members >= power_subgroup(class_group(ext.base), spec.degree).members
    flag, _ = exactness(spec)
    custom = any(t.kind == "custom" for _, t in spec.local_types)
    intermediate = any(1 < r_.denominator < spec.degree for _, r_ in spec.algebra.finite_invariants)
    assert (flag == "Exact") == (not custom and not intermediate)


@settings(max_examples=60)
@given(st.data())
def test_division_primes_make_every_class_embeddable(data):
    ext, spec = _draw(data)
    if not spec.division_primes:
        return
    r = selectivity_report(spec, ext, 1000)
    S = r.stabilizer.subgroup
    for P in spec.division_primes:
        assert P.ideal_class() in S
    assert r.embeddable_class_count == r.genus_class_count
    N = r.norm
    assert all(decide_class(spec, N, c) for c in class_group(ext.base).elements)


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_all_maximal_matrix_algebra_gives_cl_mod_cl_n(idx):
    ext = CORPUS[idx]
    spec = all_maximal_matrix_spec(ext)
    G = class_group(ext.base)
    S = stabilizer_subgroup(spec).subgroup
    P = power_subgroup(G, ext.degree)
    assert S.members == P.members
    assert [sorted(c) for c in S.cosets()] == [sorted(c) for c in P.cosets()]


@settings(max_examples=40)
@given(st.data())
def test_decision_depends_only_on_the_coset(data):
    ext, spec = _draw(data)
    N = norm_class_subgroup(ext, 1000)
    G = class_group(ext.base)
    S = stabilizer_subgroup(spec).subgroup
    c = data.draw(st.sampled_from(G.elements))
    s = data.draw(st.sampled_from(sorted(S.members)))
    assert decide_class(spec, N, c) == decide_class(spec, N, G.mul(c, s))


@settings(max_examples=40)
@given(st.data())
def test_more_division_primes_never_shrink_the_embeddable_set(data):
    ext, spec = _draw(data)
    N = norm_class_subgroup(ext, 1000)
    n = spec.degree
    full = [P for P, r in spec.algebra.finite_invariants if r.denominator == n]
    if not full:
        return
    base_types = tuple((P, t) for P, t in spec.local_types if P not in full)
    fewer = OrderGenusSpec(spec.algebra, base_types)
    more = OrderGenusSpec(spec.algebra, base_types + tuple((P, MaximalDivision()) for P in full))
    assert embeddable_subgroup(fewer, N).members <= embeddable_subgroup(more, N).members
