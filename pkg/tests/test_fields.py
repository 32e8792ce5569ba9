import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ratdec.fields import (
    QQ,
    ExtensionField,
    FieldError,
    IntegersModPrimePower,
    PrimeField,
    embedding,
    field_from_string,
    field_to_string,
    irreducible_modulus,
    make_extension,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F7 = PrimeField(7)
F4 = ExtensionField(2, (1, 1, 1))  # F_2[y]/(y^2+y+1)


def test_rational_basics():
    assert QQ.add(QQ.of(Fraction(1, 2)), QQ.of(Fraction(1, 3))) == Fraction(5, 6)
    assert QQ.of(3) == Fraction(3)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero)


def test_prime_field_basics():
    assert F7.mul(3, 5) == 1
    assert F7.inv(3) == 5
    assert F7.of(-1) == 6
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)
    with pytest.raises(FieldError):
        PrimeField(6)


def test_extension_inverse_from_reduction():
    # inv(y) in F_2[y]/(y^2+y+1) is y+1 since y*(y+1) = y^2+y = 1 mod m
    y = F4.gen
    assert F4.inv(y) == (1, 1)
    assert F4.mul(y, (1, 1)) == F4.one


def test_make_extension():
    E = make_extension(F2, 2)
    assert E == F4
    assert E.modulus == (1, 1, 1)
    assert make_extension(F3, 1) is F3
    with pytest.raises(FieldError):
        make_extension(QQ, 2)


def test_extension_of_extension_and_embedding():
    E = make_extension(F4, 2)
    assert E.cardinality == 16
    emb = embedding(F4, E)
    a, b = F4.gen, (1, 1)
    assert emb(F4.mul(a, b)) == E.mul(emb(a), emb(b))
    assert emb(F4.add(a, b)) == E.add(emb(a), emb(b))
    assert emb(F4.one) == E.one
    # prime field embeds as constants
    emb2 = embedding(F2, F4)
    assert emb2(1) == F4.one


def test_descriptor_strings():
    assert field_from_string("q") is QQ or field_from_string("q") == QQ
    assert field_from_string("fp:7919") == PrimeField(7919)
    K = field_from_string("fp:2^4")
    assert isinstance(K, ExtensionField) and K.cardinality == 16
    assert field_to_string(K) == "fp:2^4"
    assert field_to_string(QQ) == "q"
    assert field_to_string(PrimeField(5)) == "fp:5"
    with pytest.raises(FieldError):
        field_from_string("r")


def test_element_enumeration_is_canonical():
    assert list(F3.elements()) == [0, 1, 2]
    elems = list(F4.elements())
    assert elems[0] == F4.zero and len(set(elems)) == 4


def test_zmod_prime_power():
    R = IntegersModPrimePower(5, 3)
    assert R.mul(26, 26) == 676 % 125
    assert R.mul(R.inv(7), 7) == 1
    assert R.centered(124) == -1
    with pytest.raises(ZeroDivisionError):
        R.inv(10)


def _axiom_fields():
    return [QQ, F7, F4, PrimeField(101)]


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    for K in _axiom_fields():
        if K.cardinality is None:
            pick = st.fractions(max_denominator=50)
        else:
            pick = st.sampled_from(list(K.elements()))
        a = K.of(data.draw(pick)) if K is QQ else data.draw(pick)
        b = K.of(data.draw(pick)) if K is QQ else data.draw(pick)
        c = K.of(data.draw(pick)) if K is QQ else data.draw(pick)
        assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.add(a, b) == K.add(b, a)
        assert K.mul(a, b) == K.mul(b, a)
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        if not K.is_zero(a):
            assert K.mul(a, K.inv(a)) == K.one
        assert K.add(a, K.neg(a)) == K.zero


def test_irreducible_modulus_is_deterministic():
    assert irreducible_modulus(2, 2) == (1, 1, 1)
    assert irreducible_modulus(2, 2) == irreducible_modulus(2, 2)
    m = irreducible_modulus(3, 3)
    assert len(m) == 4 and m[-1] == 1
