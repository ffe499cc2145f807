import pickle

import pytest
import sympy
from hypothesis import given, strategies as st

from furstenberg.errors import FieldZeroDivisionError, GuardError, UsageError
from furstenberg.field import (
    arith,
    extend,
    extension_for,
    field_make,
    is_irreducible_rabin,
    is_irreducible_trial,
    parse_field,
)

FIELDS = ["2^1", "3^1", "5^1", "2^2", "2^3", "3^2", "5^2", "2^2:2", "3^1:3", "2^2:3", "2^16", "7^3"]


def _oracle_mul(F, a, b):
    """Multiply base-digit vectors as sympy polynomials over GF(p) modulo the modulus (flat fields)."""
    y = sympy.Symbol("y")
    p = F.p
    pa = sympy.Poly(list(reversed(F.digits(a))), y, modulus=p)
    pb = sympy.Poly(list(reversed(F.digits(b))), y, modulus=p)
    mod = sympy.Poly(list(reversed(F.modulus)), y, modulus=p)
    r = (pa * pb).rem(mod)
    coeffs = [int(c) % p for c in reversed(r.all_coeffs())]
    return F.undigits(coeffs + [0] * (F.degree - len(coeffs)))


@pytest.mark.parametrize("spec", ["2^2", "2^3", "3^2", "5^2", "7^3", "2^8"])
def test_flat_multiplication_matches_sympy(spec):
    F = parse_field(spec)
    import random
    rng = random.Random(1)
    for _ in range(200):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == _oracle_mul(F, a, b)


@pytest.mark.parametrize("spec", ["2^2", "2^5", "3^3", "5^2", "2^16", "3^7"])
def test_modulus_irreducible_by_sympy(spec):
    F = parse_field(spec)
    y = sympy.Symbol("y")
    assert sympy.Poly(list(reversed(F.modulus)), y, modulus=F.p).is_irreducible


def test_least_irreducible_convention():
    # least monic irreducible in ascending sum c_i p^i order
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(2, 3).modulus == (1, 1, 0, 1)
    assert field_make(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("spec", FIELDS)
def test_multiplicative_group_order(spec):
    F = parse_field(spec)
    for a in range(1, min(F.order, 300)):
        assert F.pow(a, F.order - 1) == 1


@pytest.mark.parametrize("spec", FIELDS)
@given(data=st.data())
def test_field_axioms(spec, data):
    F = parse_field(spec)
    el = st.integers(0, F.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(b, a), a) == b
    # Frobenius is a ring map
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(a) == F.pow(a, F.p)


def test_prime_subfield_codes_and_embedding():
    F = field_make(3)
    E = extend(F, 2)
    T = extend(E, 3)
    assert F.embeds_into(T) and E.embeds_into(T) and not T.embeds_into(E)
    for a in range(3):
        for b in range(3):
            assert T.mul(a, b) == F.mul(a, b)
            assert T.add(a, b) == F.add(a, b)
    for a in range(E.order):
        for b in range(E.order):
            assert T.mul(a, b) == E.mul(a, b)


def test_tower_and_flat_orders():
    assert parse_field("2^2:3").order == 64
    assert parse_field("2^2:3").tower()[-1].order == 2
    assert extension_for(field_make(2), 1 << 16).order == 1 << 16
    assert extension_for(field_make(3), 100).order == 243
    assert extend(field_make(5), 1) is field_make(5)


def test_fields_are_cached_and_pickle():
    F = parse_field("2^2:3")
    assert parse_field("2^2:3") is F
    assert pickle.loads(pickle.dumps(F)) is F


def test_element_wrapper():
    F = field_make(2, 2)
    a, b = F.element(2), F.element(3)
    assert (a * b).code == 1
    assert (a + 1).code == 3
    assert (a / b * b) == a
    assert arith(a, b, "mul").code == 1
    with pytest.raises(FieldZeroDivisionError):
        F.element(0).inverse()


def test_errors():
    with pytest.raises(UsageError):
        field_make(4)
    with pytest.raises(UsageError):
        parse_field("banana")
    with pytest.raises(GuardError):
        field_make(2, 70)


@pytest.mark.parametrize("p,coeffs", [(2, [1, 1, 1]), (2, [1, 0, 1]), (3, [1, 0, 1]), (3, [2, 0, 1]),
                                      (2, [1, 1, 0, 0, 1]), (2, [1, 0, 0, 0, 1]), (5, [2, 0, 1])])
def test_irreducibility_tests_agree_with_sympy(p, coeffs):
    F = field_make(p)
    y = sympy.Symbol("y")
    want = sympy.Poly(list(reversed(coeffs)), y, modulus=p).is_irreducible
    assert is_irreducible_trial(F, coeffs) == want
    assert is_irreducible_rabin(F, coeffs) == want
