"""Finite fields and Artin local algebras: exact arithmetic invariants."""

import pytest
from hypothesis import given, settings, strategies as st

from wildram.coeffring import (
    ArtinElem,
    FieldElem,
    NotAUnit,
    ReducibleModulus,
    make_artin_algebra,
    make_field,
    p_power_root,
    ring_is_field,
)

FIELDS = [make_field(2), make_field(3), make_field(5),
          make_field(2, 2), make_field(3, 2), make_field(2, 3), make_field(5, 2)]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: "F%d" % f.q)
def test_field_axioms_exhaustive(field):
    els = list(field.elements())
    assert len(els) == field.q
    one, zero = field.one(), field.zero()
    for a in els:
        assert a + zero == a and a * one == a
        assert a - a == zero and a + (-a) == zero
        if a:
            inv = field.from_raw(field.raw_inv(a.idx))
            assert a * inv == one


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: "F%d" % f.q)
def test_frobenius_is_additive_and_pth_power(field):
    for a in field.elements():
        assert a.frobenius() == a ** field.p
        for b in field.elements():
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: "F%d" % f.q)
def test_p_power_root_roundtrip(field):
    for a in field.elements():
        for e in (1, 2):
            r = field.from_raw(field.raw_p_root(a.idx, e))
            assert r ** (field.p ** e) == a


def test_from_int_is_ring_hom():
    field = make_field(7)
    for x in range(-10, 15):
        for y in range(-10, 15):
            assert field.from_int(x) + field.from_int(y) == field.from_int(x + y)
            assert field.from_int(x) * field.from_int(y) == field.from_int(x * y)


def test_multiplicative_order_divides_q_minus_1():
    field = make_field(3, 2)
    g = field.gen()
    powers = set()
    acc = field.one()
    for _ in range(field.q - 1):
        acc = acc * g
        powers.add(acc.idx)
    assert field.one().idx in powers


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, modulus=[1, 0, 1])  # x^2 + 1 = (x+1)^2 over F_2


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_f9_associativity_and_distributivity(i, j, k):
    field = make_field(3, 2)
    a, b, c = (field.from_raw(x) for x in (i, j, k))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("n", [2, 3, 4])
def test_artin_algebra_nilpotency(n):
    A = make_artin_algebra(make_field(3), n)
    eps = A.eps()
    acc = A.one()
    for _ in range(n - 1):
        acc = acc * eps
        assert acc
    assert acc * eps == A.zero()
    assert A.nilpotency == n


def test_artin_units_are_exactly_nonzero_residue():
    A = make_artin_algebra(make_field(2, 2), 2)
    for x in A.elements():
        assert x.is_unit() == bool(x.residue())
        if x.is_unit():
            inv = A.from_raw(A.raw_inv(x.raw))
            assert x * inv == A.one()
        else:
            with pytest.raises(NotAUnit):
                A.raw_inv(x.raw)


def test_include_residue_roundtrip():
    field = make_field(5)
    A = make_artin_algebra(field, 3)
    for a in field.elements():
        assert A.include(a).residue() == a
    assert not ring_is_field(A) and ring_is_field(field)


def test_small_extension_adds_one_level():
    field = make_field(3)
    A3 = make_artin_algebra(field, 3)
    A4 = A3.small_extension()
    assert A4.n == 4 and A4.base == A3.base
    x = A3.elem([field.from_int(1), field.from_int(2), field.from_int(1)])
    assert x.reduce(2).raw == x.raw[:2]
    assert x.lift(A4).reduce(3) == x


def test_p_power_root_on_field_elements():
    field = make_field(3, 2)
    for a in field.elements():
        assert p_power_root(a) ** 3 == a
