import warnings

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from selectivity import BaseField, RelativeExtension, ValidationError, class_group, maximality_check
from selectivity.basefield import primes_up_to_norm
from selectivity.extension import (
    discriminant,
    intersection_degree_hilbert,
    norm_class_subgroup,
    real_root_count,
    splitting_type,
)

Q = BaseField(0)


@pytest.mark.parametrize(
    "d, coeffs",
    [
        (-23, [-1, 0, 0, 1]),  # x^3 - 1, reducible
        (-23, [1, 0, 1]),  # degree 2
        (-23, [1, 0, 0, 2]),  # not monic
        (-4, [1, 0, 0, 0, 1]),  # x^4 + 1 = (x^2 + i)(x^2 - i)
        (-23, ["1/2", 0, 0, 1]),  # coefficient not in o_k
        (-23, [[1, 0], [1, 1], 1]),  # degree 2 with a w coefficient
    ],
)
def test_rejects_bad_polynomials(d, coeffs):
    with pytest.raises(ValidationError):
        RelativeExtension.from_pairs(BaseField(d), coeffs)


def test_coefficients_with_w():
    k = BaseField(-20)
    K = RelativeExtension.from_pairs(k, [[0, 1], 0, 0, 1])  # x^3 + sqrt(-5)
    assert K.degree == 3 and K.to_pairs()[0] == [0, 1]


@pytest.mark.parametrize("coeffs", [[-1, -1, 0, 1], [-8, -2, -1, 1], [-2, 0, 0, 1], [1, 1, 1, 1, 1], [5, 0, 3, 2, 0, 1]])
def test_discriminant_over_q_matches_sympy(coeffs):
    x = sympy.Symbol("x")
    poly = sum(c * x**i for i, c in enumerate(coeffs))
    K = RelativeExtension.from_pairs(Q, coeffs)
    assert discriminant(K) == int(sympy.discriminant(poly, x))


def test_golden_discriminant(golden23):
    assert discriminant(golden23) == -23


@pytest.mark.parametrize("coeffs", [[-1, -1, 0, 1], [-8, -2, -1, 1], [3, 1, 0, 0, 1]])
def test_splitting_over_q_matches_sympy_factorization(coeffs):
    x = sympy.Symbol("x")
    K = RelativeExtension.from_pairs(Q, coeffs)
    poly = sympy.Poly(sum(c * x**i for i, c in enumerate(coeffs)), x)
    for P in primes_up_to_norm(Q, 60):
        _, facs = sympy.Poly(poly.as_expr(), x, modulus=P.p).factor_list()
        expected = sorted((e, g.degree()) for g, e in facs)
        assert list(splitting_type(K, P).factors) == expected


@pytest.mark.parametrize("d, coeffs", [(-23, [-1, -1, 0, 1]), (-84, [16, 0, -4, 0, 1])])
def test_hilbert_class_field_splitting_follows_artin(d, coeffs):
    # in the Hilbert class field, P splits into primes of residue degree ord([P])
    k = BaseField(d)
    K = RelativeExtension.from_pairs(k, coeffs)
    G = class_group(k)
    checked = 0
    for P in primes_up_to_norm(k, 300):
        datum = splitting_type(K, P)
        if not datum.certified:
            continue
        order = G.element_order(P.ideal_class())
        assert datum.factors == tuple([(1, order)] * (K.degree // order)), P
        checked += 1
    assert checked > 50


def test_maximality_over_q():
    assert maximality_check(RelativeExtension.from_pairs(Q, [-1, -1, 0, 1])) == []
    # Dedekind's cubic: Z[theta] has index 2 in the maximal order
    bad = maximality_check(RelativeExtension.from_pairs(Q, [-8, -2, -1, 1]))
    assert [P.p for P in bad] == [2]


def test_maximality_of_the_corpus(golden23, golden20):
    # disc(f) = -23 generates P23^2 although K/k is unramified, so Z-index 23 sits at P23
    assert [P.label() for P in maximality_check(golden23)] == ["P23[ramified]"]
    assert [P.label() for P in maximality_check(golden20)] == ["P2[ramified]", "P3[r=1]", "P3[r=2]"]


def test_splitting_at_two_for_golden(golden23):
    k = golden23.base
    for P in primes_up_to_norm(k, 2):
        datum = splitting_type(golden23, P)
        assert datum.certified and datum.factors == ((1, 3),)
        assert datum.local_degrees == [3]


def test_real_root_count():
    assert real_root_count(RelativeExtension.from_pairs(Q, [-1, -1, 0, 1])) == 1
    assert real_root_count(RelativeExtension.from_pairs(Q, [1, 0, 0, 0, 1])) == 0
    assert real_root_count(RelativeExtension.from_pairs(Q, [1, -3, 0, 1])) == 3


def test_norm_subgroup_index_on_corpus(corpus):
    expected = [3, 2, 4, 1, 1, 1, 1]
    for K, idx in zip(corpus, expected):
        N = norm_class_subgroup(K, 1000)
        assert N.index == idx
        assert N.stabilized
        assert intersection_degree_hilbert(K, 1000) == idx


def test_norm_subgroup_bound_validation(golden23):
    for bad in (1, 0, -5, 2.5, "10"):
        with pytest.raises(ValidationError):
            norm_class_subgroup(golden23, bad)


def test_unstabilized_sampling_warns():
    K = RelativeExtension.from_pairs(BaseField(-23), [-2, 0, 0, 1])
    N = norm_class_subgroup(K, 3)
    assert not N.stabilized
    with pytest.warns(RuntimeWarning):
        intersection_degree_hilbert(K, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        intersection_degree_hilbert(K, 1000)


@given(st.sampled_from([0, 1, 2, 3]))
def test_splitting_is_independent_of_the_seed(seed):
    k = BaseField(-84)
    K = RelativeExtension.from_pairs(k, [16, 0, -4, 0, 1])
    for P in primes_up_to_norm(k, 40):
        assert splitting_type(K, P, seed) == splitting_type(K, P, 0)
