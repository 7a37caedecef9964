"""The canonical automorphism representation of V = (Z/p)^s on k[[t]].

A character c: V -> k with F_p-independent generator values and a conductor
m coprime to p determine automorphisms rho_sigma with
1/rho_sigma(t)^m = 1/t^m + c(sigma); this module builds them and keeps the
ramification bookkeeping.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .addpoly import moore_det
from .coeffring import FieldElem
from .series import (
    LaurentSeries,
    compose,
    invert_unit_series,
    mth_root_unit,
)


class InvalidCharacter(ValueError):
    pass


def default_precision(p, m):
    return 4 * (m + 1) * p


@dataclass(frozen=True)
class Character:
    field: object
    s: int
    vals: tuple  # c(sigma_1), ..., c(sigma_s)
    m: int

    def __post_init__(self):
        p = self.field.p
        if self.s < 1 or len(self.vals) != self.s:
            raise InvalidCharacter("need exactly s generator values")
        if self.m < 1 or self.m % p == 0:
            raise InvalidCharacter("conductor must be >= 1 and coprime to p")
        if self.s >= 2 and self.m <= 1:
            raise InvalidCharacter("two-dimensionality forces m > 1 when s >= 2")
        if not moore_det(list(self.vals)):
            raise InvalidCharacter("character values are F_p-dependent (rho not faithful)")

    @property
    def p(self):
        return self.field.p

    def identity(self):
        return GroupElem((0,) * self.s)

    def generator(self, i):
        """1-based generator sigma_i."""
        return GroupElem(tuple(1 if j == i - 1 else 0 for j in range(self.s)))

    def group(self):
        return [GroupElem(e) for e in itertools.product(range(self.p), repeat=self.s)]

    def order(self):
        return self.p ** self.s


def make_character(field, vals, m):
    vals = tuple(v if isinstance(v, FieldElem) else field.elem(v) for v in vals)
    return Character(field, len(vals), vals, m)


@dataclass(frozen=True)
class GroupElem:
    exps: tuple

    def is_identity(self):
        return not any(self.exps)

    def __repr__(self):
        return "g%s" % (list(self.exps),)


def group_mul(ch, g, h):
    p = ch.p
    return GroupElem(tuple((a + b) % p for a, b in zip(g.exps, h.exps)))


def group_pow(ch, g, k):
    p = ch.p
    return GroupElem(tuple((a * k) % p for a in g.exps))


def character_value(ch, g):
    acc = ch.field.zero()
    for e, v in zip(g.exps, ch.vals):
        for _ in range(e % ch.p):
            acc = acc + v
    return acc


_rho_cache = {}


def build_rho(ch, g, prec=None):
    """rho_g(t) = t / (1 + c(g) t^m)^{1/m}, exact to the requested precision.

    Built twice internally -- via the m-th root of 1 + c t^m and via a direct
    Hensel solve of (1 + c t^m) T^m = t^m -- and the two must agree bit-exactly.
    """
    if prec is None:
        prec = default_precision(ch.p, ch.m)
    key = (ch, g.exps, prec)
    if key in _rho_cache:
        return _rho_cache[key]
    field = ch.field
    c = character_value(ch, g)
    t = LaurentSeries.t_power(field, 1, prec)
    if not c:
        _rho_cache[key] = t
        return t
    m = ch.m
    base = LaurentSeries.make(field, {0: 1, m: c}, prec)
    root = mth_root_unit(base, m)
    rho = (t * invert_unit_series(root)).with_prec(prec)
    alt = _rho_by_direct_hensel(field, c, m, prec)
    if not rho.eq_to_prec(alt):
        raise AssertionError("the two rho constructions disagree")
    _rho_cache[key] = rho
    return rho


def _rho_by_direct_hensel(field, c, m, prec):
    """Newton solve of (1 + c t^m) T^m - t^m = 0 with T = t + higher."""
    base = LaurentSeries.make(field, {0: 1, m: c}, prec)
    tm = LaurentSeries.t_power(field, m, prec + m)
    T = LaurentSeries.t_power(field, 1, prec)
    for _ in range(64):
        err = base * T.pow(m) - tm
        if err.is_zero():
            break
        dF = (base * T.pow(m - 1)).scale(m)
        T = (T - err * invert_unit_series(dF)).with_prec(prec)
    else:
        raise AssertionError("direct Hensel construction did not converge")
    return T


def verify_group_law(ch, prec=None, seed=0):
    """Check rho_sigma o rho_tau = rho_{sigma tau} on generator pairs and,
    for larger groups, on a random sample of general pairs."""
    if prec is None:
        prec = default_precision(ch.p, ch.m)
    pairs = []
    gens = [ch.generator(i) for i in range(1, ch.s + 1)]
    for a in gens:
        for b in gens:
            pairs.append((a, b))
    elems = ch.group()
    if ch.order() ** 2 <= 625:
        pairs.extend((a, b) for a in elems for b in elems)
    else:
        rng = random.Random(seed)
        for _ in range(25):
            pairs.append((rng.choice(elems), rng.choice(elems)))
    first_failure = None
    for a, b in pairs:
        left = compose(build_rho(ch, a, prec), build_rho(ch, b, prec))
        right = build_rho(ch, group_mul(ch, a, b), prec)
        if not left.eq_to_prec(right):
            first_failure = (a, b)
            break
    return {"ok": first_failure is None,
            "pairs_checked": len(pairs),
            "first_discrepancy": first_failure}


def ramification_data(ch, prec=None):
    """Break data of the filtration: i(sigma) = v(rho_sigma(t) - t) for each
    nontrivial sigma (all equal m+1), Artin representation values, and the
    single-jump flag."""
    if prec is None:
        prec = default_precision(ch.p, ch.m)
    t = LaurentSeries.t_power(ch.field, 1, prec)
    jumps = {}
    for g in ch.group():
        if g.is_identity():
            continue
        diff = build_rho(ch, g, prec) - t
        jumps[g.exps] = diff.valuation()
    ar1 = sum(jumps.values())
    return {
        "i": jumps,
        "ar": {e: -v for e, v in jumps.items()},
        "ar_identity": ar1,
        "uniform_break": all(v == ch.m + 1 for v in jumps.values()),
        "single_jump": ch.m,
    }
