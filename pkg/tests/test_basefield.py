from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selectivity import BaseField, Ideal, ValidationError, prime_ideals_above, resolve_prime
from selectivity.basefield import ideal_from_form, kronecker, primes_up_to_norm
from selectivity.classgroup import class_group
from selectivity.forms import compose

from oracles import integral_ideals

FIELDS = [BaseField(d) for d in (-3, -4, -7, -8, -15, -20, -23, -84)]

small = st.integers(-6, 6)
elements = st.builds(lambda a, b, c, d: (Fraction(a, c), Fraction(b, d)), small, small, st.integers(1, 4), st.integers(1, 4))


@pytest.mark.parametrize("d", [1, 5, -1, -2, -12, -16, -18, 8])
def test_rejects_non_fundamental_or_real(d):
    with pytest.raises(ValidationError):
        BaseField(d)


def test_labels():
    assert str(BaseField(-20)) == "Q(sqrt(-5))"
    assert str(BaseField(-23)) == "Q(sqrt(-23))"
    assert str(BaseField(0)) == "Q"


@given(st.sampled_from(FIELDS), elements, elements, elements)
def test_element_arithmetic_is_a_field(k, x, y, z):
    x, y, z = k(*x), k(*y), k(*z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).conj() == x.conj() + y.conj()
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


def test_w_satisfies_its_polynomial():
    for k in FIELDS:
        w = k.w
        assert w * w - w * k.trace_w + k.norm_w == 0
        assert (w.norm(), w.trace()) == (k.norm_w, k.trace_w)


@given(st.sampled_from(FIELDS), st.data())
def test_ideal_arithmetic(k, data):
    ideals = [Ideal.from_generators(k, [k(a, 0), k(b, c)]) for (a, _), (b, c) in integral_ideals(k.discriminant, 12)]
    I = data.draw(st.sampled_from(ideals))
    J = data.draw(st.sampled_from(ideals))
    assert (I * J).norm() == I.norm() * J.norm()
    assert I * I.conj() == Ideal.unit(k) * k(I.norm())
    assert I * I.inverse() == Ideal.unit(k)
    assert (I * J) / J == I
    assert (I * J).ideal_class() == compose(I.ideal_class(), J.ideal_class())
    assert I.contains(I.basis[0] * J.basis[-1])


def test_every_class_is_realized_by_ideal_from_form():
    for k in FIELDS:
        for c in class_group(k).elements:
            assert ideal_from_form(k, c).ideal_class() == c


@pytest.mark.parametrize("k", FIELDS)
def test_prime_decomposition(k):
    for p in (2, 3, 5, 7, 11, 13, 23):
        primes = prime_ideals_above(k, p)
        chi = kronecker(k.discriminant, p)
        assert len(primes) == (2 if chi == 1 else 1)
        prod = Ideal.unit(k)
        for P in primes:
            prod = prod * P.ideal() ** P.e
            assert P.ideal().norm() == P.norm
        assert prod == Ideal.unit(k) * p


@pytest.mark.parametrize("k", FIELDS)
def test_primes_up_to_norm_against_ideal_enumeration(k):
    # a nonzero integral ideal is prime iff it is not a product of two proper ideals
    bound = 60
    ideals = {Ideal.from_generators(k, [k(a, 0), k(b, c)]) for (a, _), (b, c) in integral_ideals(k.discriminant, bound)}
    unit = Ideal.unit(k)
    proper = [I for I in ideals if I != unit]
    products = {I * J for I in proper for J in proper if I.norm() * J.norm() <= bound}
    expected = sorted(I.norm() for I in proper if I not in products)
    primes = primes_up_to_norm(k, bound)
    assert [P.norm for P in primes] == expected
    assert {P.ideal() for P in primes} == {I for I in proper if I not in products}


@given(st.sampled_from(FIELDS), st.sampled_from([2, 3, 5, 7, 23]), elements, elements)
def test_residue_map_is_a_ring_homomorphism(k, p, x, y):
    for P in prime_ideals_above(k, p):
        F = P.residue_field
        x_, y_ = k(*x), k(*y)
        try:
            rx, ry = P.reduce(x_), P.reduce(y_)
        except ValueError:
            continue  # not integral at P
        assert P.reduce(x_ + y_) == F.add(rx, ry)
        assert P.reduce(x_ * y_) == F.mul(rx, ry)
        assert P.reduce(P.lift(rx)) == rx


def test_residue_map_on_generators():
    k = BaseField(-23)
    P, Q = prime_ideals_above(k, 2)
    assert P.reduce(k(-P.root, 1)) == 0
    assert Q.reduce(k(-P.root, 1)) != 0


def test_prime_classes_for_minus_23():
    k = BaseField(-23)
    P, Q = prime_ideals_above(k, 2)
    assert (P.root, Q.root) == (0, 1)
    assert str(P.ideal_class()) == "(2,1,3)"
    assert str(Q.ideal_class()) == "(2,-1,3)"
    assert P.label() == "P2[r=0]"
    assert prime_ideals_above(k, 23)[0].label() == "P23[ramified]"


def test_resolve_prime():
    k = BaseField(-23)
    assert resolve_prime(k, {"p": 2, "root": 1}).root == 1
    assert resolve_prime(k, {"p": 23, "root": "ramified"}).kind == "ramified"
    assert resolve_prime(k, {"p": 5}).kind == "inert"
    for bad in ({"p": 2}, {"p": 4}, {"p": 2, "root": 5}, {"p": 5, "root": "ramified"}, {"q": 3}):
        with pytest.raises(ValidationError):
            resolve_prime(k, bad)
    assert resolve_prime(BaseField(0), {"p": 7}).kind == "rational"


def test_rational_base_field():
    k = BaseField(0)
    assert k.is_rational and k.degree == 1
    I = Ideal.from_generators(k, [6, 10])
    assert I == Ideal.unit(k) * 2
    assert I.is_principal()
