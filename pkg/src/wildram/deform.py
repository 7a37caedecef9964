"""Lower-triangular matrix deformation data, deformed automorphisms of
A[[t]], tangent 1-cocycles (extracted and in closed form), obstruction
2-cocycles across small extensions, and arithmetic lifting predicates.

A matrix datum assigns to each group element a diagonal unit lam(g) = 1 mod
m_A and a lower-left entry C(g) = c(g) mod m_A subject to the twisted
homomorphism rule C(gh) = C(g) + lam(g) C(h).  The deformed automorphism is
the unique T = rho_g mod m_A with ftilde(T) = lam(g) ftilde + C(g).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .autoreps import build_rho, character_value, default_precision, group_mul
from .coeffring import ArtinElem, FieldElem, make_artin_algebra
from .cohomology import H2Engine, OneCochain, PolePartClass, is_cocycle
from .series import (
    INF,
    LaurentSeries,
    compose,
    invert_unit_series,
    pole_part,
    revert,
)
from .ascover import ReductionMismatch


class NoSolution(ArithmeticError):
    pass


@dataclass(frozen=True)
class MatrixRep:
    """Full tables over V of the lower-left entries C and diagonal units
    lam of a lower-triangular two dimensional deformation."""
    A: object
    ch: object
    C: dict    # exps tuple -> ArtinElem
    lam: dict  # exps tuple -> ArtinElem

    def C_of(self, g):
        return self.C[g.exps]

    def lam_of(self, g):
        return self.lam[g.exps]


def make_matrix_rep(A, ch, Cgens, lamgens):
    """Extend generator values to all of V through C(gh) = C(g) + lam(g)C(h)
    and lam(gh) = lam(g)lam(h), peeling generators in index order."""
    Cs = {}
    lams = {}

    def fill(exps):
        if exps in Cs:
            return
        i = next((j for j, e in enumerate(exps) if e), None)
        if i is None:
            Cs[exps] = A.zero()
            lams[exps] = A.one()
            return
        rest = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
        fill(rest)
        Cs[exps] = Cgens[i] + lamgens[i] * Cs[rest]
        lams[exps] = lamgens[i] * lams[rest]

    for g in ch.group():
        fill(g.exps)
    return MatrixRep(A, ch, Cs, lams)


def trivial_rep(A, ch):
    Cgens = [A.include(v) for v in ch.vals]
    lamgens = [A.one() for _ in range(ch.s)]
    return make_matrix_rep(A, ch, Cgens, lamgens)


def rep_validate(rep):
    """Check every defining relation of the matrix datum on all of V."""
    A, ch = rep.A, rep.ch
    p = ch.p
    failures = []
    for g in ch.group():
        Cg, lg = rep.C[g.exps], rep.lam[g.exps]
        if lg.residue() != ch.field.one():
            failures.append(("lam_reduction", g.exps))
        if Cg.residue() != character_value(ch, g):
            failures.append(("C_reduction", g.exps))
        if lg ** p != A.one():
            failures.append(("lam_order", g.exps))
        norm = A.zero()
        acc = A.one()
        for _ in range(p):
            norm = norm + acc
            acc = acc * lg
        if Cg * norm != A.zero():
            failures.append(("C_norm", g.exps))
    for g in ch.group():
        for h in ch.group():
            gh = group_mul(ch, g, h)
            lhs = rep.C[g.exps] + rep.lam[g.exps] * rep.C[h.exps]
            if lhs != rep.C[gh.exps]:
                failures.append(("C_product", g.exps, h.exps))
            if rep.lam[g.exps] * rep.lam[h.exps] != rep.lam[gh.exps]:
                failures.append(("lam_product", g.exps, h.exps))
            rhs = rep.C[h.exps] + rep.lam[h.exps] * rep.C[g.exps]
            if lhs != rhs:
                failures.append(("commutativity", g.exps, h.exps))
    return {"valid": not failures, "failures": failures}


def conjugate_rep(rep, mu, lam0):
    """Conjugation by [[1,0],[mu,lam0]]: C'(g) = mu + lam0 C(g) - lam(g) mu,
    diagonal entries unchanged."""
    C2 = {e: mu + lam0 * Cg - rep.lam[e] * mu for e, Cg in rep.C.items()}
    return MatrixRep(rep.A, rep.ch, C2, dict(rep.lam))


@dataclass(frozen=True)
class DeformationDatum:
    """First-order datum over k[eps]/eps^2: lam(sigma_i) = 1 + eps lambda1_i,
    C(sigma_i) = c(sigma_i) + eps delta_i, and the first-order Weierstrass
    coefficients a1 of 1/ftilde = t^m + eps sum a1[mu] t^mu."""
    ch: object
    lambda1: tuple
    delta: tuple
    a1: tuple

    def algebra(self):
        return make_artin_algebra(self.ch.field, 2)

    def matrix_rep(self):
        A = self.algebra()
        eps = A.eps()
        Cgens = [A.include(c) + eps * A.include(d)
                 for c, d in zip(self.ch.vals, self.delta)]
        lamgens = [A.one() + eps * A.include(l) for l in self.lambda1]
        return make_matrix_rep(A, self.ch, Cgens, lamgens)

    def ftilde(self, prec):
        A = self.algebra()
        eps = A.eps()
        terms = {self.ch.m: A.one()}
        for mu, a in enumerate(self.a1):
            if a:
                terms[mu] = eps * A.include(a)
        denom = LaurentSeries.make(A, terms, prec + 2 * self.ch.m)
        return invert_unit_series(denom)

    def lambda1_of(self, g):
        """First-order diagonal entry on a general element (additive)."""
        acc = self.ch.field.zero()
        for e, l in zip(g.exps, self.lambda1):
            for _ in range(e % self.ch.p):
                acc = acc + l
        return acc


def make_datum(ch, lambda1, delta, a1):
    field = ch.field

    def fe(x):
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, int):
            return field.from_int(x)
        return field.elem(x)

    return DeformationDatum(ch, tuple(fe(x) for x in lambda1),
                            tuple(fe(x) for x in delta),
                            tuple(fe(x) for x in a1))


def deformed_rho(rep, ftilde, g, prec=None):
    """The unique T in A[[t]] with T = rho_g mod m_A and
    ftilde(T) = lam(g) ftilde + C(g), by Newton iteration along the
    nilpotent filtration."""
    A, ch = rep.A, rep.ch
    if prec is None:
        prec = default_precision(ch.p, ch.m)
    work = prec + 3 * (A.n + 1) * (ch.m + 2)
    T = build_rho(ch, g, work).lift_ring(A)
    rhs = ftilde.scale(rep.lam[g.exps]) + \
        LaurentSeries.make(A, {0: rep.C[g.exps]}, INF)
    dft = ftilde.derivative()
    for _ in range(A.n + 2):
        err = compose(ftilde, T) - rhs
        if err.truncate(prec - ch.m - 1).is_zero():
            break
        T = T - err * invert_unit_series(compose(dft, T))
    else:
        raise NoSolution("Newton iteration for the deformed automorphism "
                         "did not converge")
    if T.prec < prec:
        raise NoSolution("insufficient working precision")
    return T.truncate(prec)


def tangent_cocycle_extract(rep, ftilde, prec=None):
    """The 1-cochain sigma -> pole part of h_sigma / t^{m+1} where
    rho~_sigma o rho_sigma^{-1}(t) = t + eps h_sigma(t); verified to be a
    cocycle for the pole-part module action."""
    A, ch = rep.A, rep.ch
    if A.n != 2:
        raise ValueError("tangent extraction needs the dual numbers")
    if prec is None:
        prec = 3 * (ch.m + 2)
    t_A = LaurentSeries.t_power(A, 1, INF)
    vals = []
    for i in range(1, ch.s + 1):
        g = ch.generator(i)
        T = deformed_rho(rep, ftilde, g, prec)
        rho_inv = revert(build_rho(ch, g, prec)).lift_ring(A)
        diff = compose(T, rho_inv) - t_A
        if diff.prec < ch.m + 2:
            raise NoSolution("insufficient precision for the pole window")
        if not diff.residue().is_zero():
            raise NoSolution("deformed automorphism does not reduce to rho")
        h1 = diff.eps_component(1)
        vals.append(PolePartClass.from_series(ch, h1.shift(-(ch.m + 1))))
    cochain = OneCochain(ch, tuple(vals))
    if not is_cocycle(ch, cochain):
        raise NoSolution("extracted cochain fails the cocycle conditions")
    return cochain


def cocycle_formula(datum, g):
    """Closed form of the tangent cocycle: the pole part of
    -(1/m)(lambda1(g)/t^m + sum_mu ((2m-mu)/m) a1[mu] c(g) / t^{m-mu});
    the constant terms of the displayed formula drop out."""
    ch = datum.ch
    field = ch.field
    m, p = ch.m, ch.p
    minv = field.raw_inv(field.raw_from_int(m))
    c = character_value(ch, g)
    lam1 = datum.lambda1_of(g)
    coeffs = {}

    def bump(e, raw):
        coeffs[e] = field.raw_sub(coeffs.get(e, 0), raw)

    bump(-m, field.raw_mul(lam1.idx, minv))
    for mu, a in enumerate(datum.a1):
        if not a:
            continue
        factor = field.raw_mul(field.raw_from_int(2 * m - mu),
                               field.raw_mul(minv, minv))
        bump(mu - m, field.raw_mul(factor, field.raw_mul(a.idx, c.idx)))
    return PolePartClass.from_series(ch, LaurentSeries(field, coeffs, INF))


def cocycle_formula_cochain(datum):
    return OneCochain(datum.ch,
                      tuple(cocycle_formula(datum, datum.ch.generator(i))
                            for i in range(1, datum.ch.s + 1)))


def obstruction_two_cocycle(repA2, ftilde2, lifts, prec=None):
    """The 2-cocycle measuring failure of per-generator lifts to compose,
    across the small extension A' -> A with kernel eps^{n-1}.

    lifts maps generator index (1-based) to a series over A' reducing to the
    deformed automorphism over A; entries keyed by an exps tuple override
    the lift of that single group element.  Remaining elements are filled
    by peeling generators, and rho~_s rho~_t rho~_{st}^{-1}(t) =
    t + eps^{n-1} h gives the cochain of pole parts h / t^{m+1}."""
    A, ch = repA2.A, repA2.ch
    if prec is None:
        prec = 3 * (ch.m + 2)
    kernel_idx = A.n - 1
    table_T = {e: T for e, T in lifts.items() if isinstance(e, tuple)}
    table_inv = {}

    def lift_of(exps):
        if exps in table_T:
            return table_T[exps]
        i = next((j for j, e in enumerate(exps) if e), None)
        if i is None:
            T = LaurentSeries.t_power(A, 1, INF)
        else:
            rest = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            T = compose(lifts[i + 1], lift_of(rest))
        table_T[exps] = T
        return T

    for i in range(1, ch.s + 1):
        g = ch.generator(i)
        res = lifts[i].residue()
        if not res.eq_to_prec(build_rho(ch, g, res.prec)):
            raise ReductionMismatch("lift %d does not reduce to rho" % i)
        lift_of(g.exps)

    def inv_of(exps):
        if exps not in table_inv:
            table_inv[exps] = revert(lift_of(exps).truncate(prec))
        return table_inv[exps]

    t_A = LaurentSeries.t_power(A, 1, INF)
    table = {}
    zero = True
    for g in ch.group():
        for h in ch.group():
            gh = group_mul(ch, g, h)
            word = compose(compose(lift_of(g.exps).truncate(prec),
                                   lift_of(h.exps).truncate(prec)),
                           inv_of(gh.exps))
            diff = word - t_A
            if diff.prec < ch.m + 2:
                raise ReductionMismatch("insufficient precision in the lifts")
            for j in range(kernel_idx):
                if not diff.eps_component(j).is_zero():
                    raise ReductionMismatch(
                        "lifts do not agree below the kernel level")
            hh = diff.eps_component(kernel_idx)
            val = PolePartClass.from_series(ch, hh.shift(-(ch.m + 1)))
            table[(g.exps, h.exps)] = val
            zero = zero and val.is_zero()
    engine = H2Engine(ch)
    return {"cochain": table,
            "identically_zero": zero,
            "vanishes_in_H2": engine.is_coboundary(table)}


def lifting_predicates(p, s, m):
    """Arithmetic lifting flags for the (p, s, m) configuration."""
    if gcd(m, p) != 1:
        raise ValueError("m must be coprime to p")
    return {
        "char0_lift_necessary_condition": (m + 1) % p ** (s - 1) == 0,
        "invariant_divisor_exists": s == 1 or (m + 1) % p != 0,
        "invariant_divisor_excluded_mixed": s > 2,
        "stichtenoth_two_dim": m < p ** s,
        "two_dim_wellformed": gcd(m, p) == 1 and (s == 1 or m > 1),
    }
