"""The order-p^s automorphism family rho_sigma and its ramification."""

import pytest

from wildram.autoreps import (
    InvalidCharacter,
    build_rho,
    character_value,
    default_precision,
    group_mul,
    group_pow,
    make_character,
    ramification_data,
    verify_group_law,
)
from wildram.coeffring import make_field
from wildram.series import LaurentSeries, compose, invert_unit_series

from conftest import character_for, small_grid


@pytest.mark.parametrize("p,s,m", small_grid())
def test_defining_equation(p, s, m):
    """1/rho_sigma(t)^m = 1/t^m + c(sigma), coefficientwise exact."""
    ch = character_for(p, s, m)
    prec = default_precision(p, m)
    for g in ch.group():
        rho = build_rho(ch, g, prec)
        lhs = invert_unit_series(rho.pow(m))
        rhs = LaurentSeries.t_power(ch.field, -m, lhs.prec) + \
            LaurentSeries.make(ch.field, {0: character_value(ch, g)}, lhs.prec)
        assert lhs.eq_to_prec(rhs)


def test_identity_is_identity_series():
    ch = character_for(3, 1, 2)
    rho = build_rho(ch, ch.identity(), 20)
    assert rho.eq_to_prec(LaurentSeries.t_power(ch.field, 1, 20))


@pytest.mark.parametrize("p,s,m", small_grid())
def test_group_law_and_order(p, s, m):
    ch = character_for(p, s, m)
    assert verify_group_law(ch)["ok"]
    g = ch.generator(1)
    prec = default_precision(p, m)
    acc = build_rho(ch, g, prec)
    rho = build_rho(ch, g, prec)
    for _ in range(p - 1):
        acc = compose(rho, acc)
    assert acc.eq_to_prec(LaurentSeries.t_power(ch.field, 1, acc.prec))


def test_rho_first_coefficients_small_case():
    """p=2, m=1, c=1: 1/rho^1 = 1/t + 1 means rho = t/(1+t) = t + t^2 + ..."""
    ch = character_for(2, 1, 1)
    rho = build_rho(ch, ch.generator(1), 10)
    for e in range(1, 10):
        assert rho.coeff(e) == 1


@pytest.mark.parametrize("p,s,m", small_grid())
def test_ramification_break(p, s, m):
    """v(rho_sigma(t) - t) = m + 1 for every nontrivial sigma: a single
    ramification break at m."""
    ch = character_for(p, s, m)
    data = ramification_data(ch)
    assert data["uniform_break"]
    assert data["single_jump"] == m
    assert data["ar_identity"] == (ch.order() - 1) * (m + 1)
    t = LaurentSeries.t_power(ch.field, 1, default_precision(p, m))
    for g in ch.group():
        if g.is_identity():
            continue
        diff = build_rho(ch, g, t.prec) - t
        assert diff.valuation() == m + 1


def test_character_must_be_injective():
    field = make_field(2, 2)
    with pytest.raises(InvalidCharacter):
        make_character(field, [[1, 0], [1, 0]], 3)  # dependent values
    with pytest.raises(InvalidCharacter):
        make_character(field, [[1, 0]], 2)  # m divisible by p


def test_group_algebra_structure():
    ch = character_for(3, 2, 2)
    g, h = ch.generator(1), ch.generator(2)
    assert group_mul(ch, g, h) == group_mul(ch, h, g)
    assert group_pow(ch, g, 3).is_identity()
    assert character_value(ch, group_mul(ch, g, h)) == \
        character_value(ch, g) + character_value(ch, h)
    assert ch.order() == 9 and len(list(ch.group())) == 9
