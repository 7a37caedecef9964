"""Generalized Artin-Schreier models y^{p^s} - y = u of the covers attached
to a character, their class reduction, conductors and deformations.

The symbolic model expresses u as an additive polynomial in a function f
with sigma_i(f) = f + c(sigma_i); the germ model substitutes f = t^{-m}.
Cover classes live in the quotient of Laurent series by holomorphic parts
and the image of D: x -> x^{p^s} - x, up to the scaling action of F_{p^s}^*.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .addpoly import (
    PPolynomial,
    _det_raw,
    _moore_matrix_raw,
    additive_poly_from_character,
    moore_det,
    ppoly_apply,
)
from .autoreps import build_rho
from .coeffring import FieldElem
from .series import (
    INF,
    LaurentSeries,
    holomorphic_part,
    invert_unit_series,
    pole_part,
    weierstrass_prepare,
)


class DependentMu(ValueError):
    pass


class ReductionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ASCover:
    """A cover y^{p^s} - y = rhs; rhs is an additive polynomial in f for the
    symbolic model, a Laurent series for the germ model."""
    s: int
    field: object
    rhs: object


@dataclass(frozen=True)
class CoverClass:
    """Canonical class representative: a pole part with no exponent divisible
    by p^s, together with the witness of the reduction."""
    rep: LaurentSeries
    s: int
    witness: LaurentSeries
    holomorphic: LaurentSeries

    def is_trivial(self):
        return self.rep.is_zero()


def subfield_elements(field, s):
    """The elements of the field fixed by the p^s-power map (the copy of
    F_{p^s} when it embeds), in index order."""
    q = field.p ** s
    return [FieldElem(field, i) for i in range(field.q)
            if field.raw_pow(i, q) == i]


def default_mu(field, s):
    """Power basis 1, gamma, ..., gamma^{s-1} of F_{p^s}, with gamma the
    first subfield element (in index order) whose powers are independent."""
    one = field.one()
    if s == 1:
        return [one]
    for gamma in subfield_elements(field, s):
        basis = [one]
        for _ in range(s - 1):
            basis.append(basis[-1] * gamma)
        if moore_det(basis):
            return basis
    raise DependentMu("field does not contain an F_p-basis of F_{p^s}")


def _bordered_u1_cofactors(ring, mu_raws, col_raws):
    """Cofactors of the zero last column of the matrix with top row
    (mu_1, ..., mu_s, 0) and Moore rows of col_raws below; entry nu of the
    result multiplies the f^{p^{nu}} slot."""
    s = len(col_raws)
    moore = _moore_matrix_raw(ring, col_raws)
    cofs = []
    for i in range(1, s + 1):
        minor = [list(mu_raws)] + [moore[r] for r in range(s) if r != i - 1]
        d = _det_raw(ring, minor)
        # cofactor sign times the global (-1)^{s+1} making u1(c_j) = mu_j
        if i % 2 == 0:
            d = ring.raw_neg(d)
        cofs.append(d)
    return cofs


def build_u(ch, mu=None):
    """The normalized right-hand side u with y^{p^s} - y = u.

    u1(f) = sum_nu o_nu f^{p^nu} comes from the bordered Moore determinant of
    the character values against mu, divided by the plain Moore determinant;
    u = u1^{p^s} - u1, whose coefficients satisfy a_{nu+s} = -a_nu^{p^s}."""
    field = ch.field
    s = ch.s
    if mu is None:
        mu = default_mu(field, s)
    mu = [v if isinstance(v, FieldElem) else field.elem(v) for v in mu]
    if len(mu) != s or not moore_det(mu):
        raise DependentMu("mu must be an F_p-basis of F_{p^s}")
    delta = moore_det(list(ch.vals))
    dinv = field.raw_inv(delta.idx)
    cofs = _bordered_u1_cofactors(field, [v.idx for v in mu],
                                  [c.idx for c in ch.vals])
    o = [FieldElem(field, field.raw_mul(c, dinv)) for c in cofs]
    u1 = PPolynomial.make(field, {nu: o[nu] for nu in range(s)})
    q = field.p ** s
    terms = {}
    for nu in range(s):
        if o[nu]:
            terms[nu] = -o[nu]
            terms[nu + s] = o[nu] ** q
    u = PPolynomial.make(field, terms)
    for nu in range(s):
        assert u.coeff(nu + s) == field.raw_neg(field.raw_pow(u.coeff(nu), q))
    return {"u1": u1, "u": u, "o": o, "mu": mu}


def normalized_generators(ch):
    """y_i with sigma_j(y_i) = y_i + delta_ij: the additive polynomial
    killing the span of the other character values, normalized at c(sigma_i).
    The shift check evaluates y_i on every c(sigma_j) through additivity."""
    field = ch.field
    out = []
    for i in range(1, ch.s + 1):
        ad = additive_poly_from_character(ch, omit=i)
        norm = ppoly_apply(ad, ch.vals[i - 1])
        yi = ad.scale_raw(field.raw_inv(norm.idx))
        shifts = tuple(ppoly_apply(yi, ch.vals[j - 1]) ==
                       (field.one() if j == i else field.zero())
                       for j in range(1, ch.s + 1))
        out.append({"yi": yi, "shift_check": shifts})
    return out


def germ_model(ch, mu=None):
    """Substitute f = t^{-m} into u: the exact Laurent polynomial
    sum_nu a_nu t^{-m p^nu}."""
    data = build_u(ch, mu)
    rhs = ppoly_apply(data["u"], LaurentSeries.t_power(ch.field, -ch.m, INF))
    return ASCover(ch.s, ch.field, rhs)


def class_reduce(g, s):
    """Canonical representative of the cover y^{p^s} - y = g.

    Drops the holomorphic part, then repeatedly trades a t^{-p^s k} for
    a^{1/p^s} t^{-k}; the trades accumulate into the witness d, which
    satisfies g - rep - holomorphic = d^{p^s} - d exactly."""
    field = g.ring
    if g.prec < 0:
        raise ValueError("pole part is not determined at this precision")
    q = field.p ** s
    hol = holomorphic_part(g)
    pp = pole_part(g)
    coeffs = dict(pp.coeffs)
    witness = {}
    while True:
        divisible = sorted(e for e in coeffs if (-e) % q == 0)
        if not divisible:
            break
        e = divisible[0]
        a = coeffs.pop(e)
        k = (-e) // q
        root = field.raw_p_root(a, s)
        for target in (witness, coeffs):
            target[-k] = field.raw_add(target.get(-k, 0), root)
            if field.raw_is_zero(target[-k]):
                del target[-k]
    rep = LaurentSeries(field, coeffs, INF)
    d = LaurentSeries(field, witness, INF)
    return CoverClass(rep, s, d, hol)


def reduction_witness_valid(g, cls):
    """Exact check of g - rep - holomorphic = d^{p^s} - d."""
    lhs = g - cls.rep - cls.holomorphic
    rhs = cls.witness.frobenius_power(cls.s) - cls.witness
    return (lhs - rhs).is_zero()


def conductor(cls):
    """max over pole exponents n = d p^nu of the reduced representative of
    the prime-to-p part d (nu = v_p(n) < s); 0 for the trivial class, which
    is the unramified cover."""
    if cls.rep.is_zero():
        return 0
    p = cls.rep.ring.p
    best = 0
    for e in cls.rep.coeffs:
        n = -e
        nu = 0
        while n % p == 0:
            n //= p
            nu += 1
        if nu >= cls.s:
            raise AssertionError("representative is not reduced")
        best = max(best, n)
    return best


def equivalent_covers(g1, g2, s):
    """Search zeta in F_{p^s}^* with g1 - zeta g2 of trivial class."""
    for zeta in subfield_elements(g1.ring, s):
        if not zeta:
            continue
        if class_reduce(g1 - g2.scale(zeta), s).is_trivial():
            return {"equivalent": True, "zeta": zeta}
    return {"equivalent": False, "zeta": None}


# -- the germ expressed downstairs --------------------------------------------

def downstairs_coordinate(ch, prec):
    """x = prod_sigma rho_sigma(t), a coordinate of the quotient germ with
    v(x) = p^s."""
    x = LaurentSeries.one(ch.field, prec)
    for g in ch.group():
        x = x * build_rho(ch, g, prec)
    return x


def expand_downstairs(x, g, s):
    """Rewrite g, a series in t invariant under the group (so lying in
    k((x))), as a Laurent polynomial in x for exponents < 1; greedy peeling
    from the deepest pole, returning {exponent: raw coefficient}."""
    field = g.ring
    q = field.p ** s
    if g.lead >= 0:
        return {}
    if (-g.lead) % q:
        raise AssertionError("series does not lie in k((x))")
    out = {}
    n = g.lead // q
    xpow = invert_unit_series(x).pow(-n)  # x^n for the starting n < 0
    r = g
    while n < 0:
        lead_e = q * n
        if r.prec <= lead_e:
            raise AssertionError("insufficient precision for the expansion")
        if r.lead < lead_e:
            raise AssertionError("series does not lie in k((x))")
        b = r.coeff(lead_e)
        if not field.raw_is_zero(b):
            out[n] = b
            r = r - xpow.scale(FieldElem(field, b))
        n += 1
        xpow = xpow * x
    if r.lead < 0:
        raise AssertionError("series does not lie in k((x))")
    return out


def downstairs_model(ch, mu=None):
    """The cover with its right-hand side pushed down to the quotient
    coordinate x: u = sum_i mu_i sum_{j<s} (y_i(f)^p - y_i(f))^{p^j}, each
    inner factor a downstairs function of pole order m."""
    field = ch.field
    p, s, m = ch.p, ch.s, ch.m
    q = p ** s
    data = build_u(ch, mu)
    prec = (m + 4) * q
    x = downstairs_coordinate(ch, prec)
    f_germ = LaurentSeries.t_power(field, -m, prec)
    u_coeffs = {}
    for i, rec in enumerate(normalized_generators(ch)):
        yi = ppoly_apply(rec["yi"], f_germ)
        ui = yi.frobenius_power(1) - yi
        ui_x = expand_downstairs(x, ui, s)
        mu_i = data["mu"][i].idx
        for j in range(s):
            for e, c in ui_x.items():
                term = field.raw_mul(mu_i, field.raw_pow(c, p ** j))
                ee = e * p ** j
                u_coeffs[ee] = field.raw_add(u_coeffs.get(ee, 0), term)
    rhs = LaurentSeries(field, u_coeffs, 1)
    return {"cover": ASCover(s, field, rhs), "x": x, "u": data["u"]}


# -- deformed covers -----------------------------------------------------------

def deformed_u(ch, mu, Cvals, ftilde):
    """The deformed normalization U = U1^{p^s} - U1 over the Artin ring of
    the deformed character values, reducing to u, plus the branch-splitting
    flag read off the Weierstrass divisor of 1/ftilde."""
    field = ch.field
    s = ch.s
    if len(Cvals) != s:
        raise ReductionMismatch("need one deformed value per generator")
    A = Cvals[0].ring
    for Cv, cv in zip(Cvals, ch.vals):
        if Cv.residue() != cv:
            raise ReductionMismatch("deformed values do not reduce to c")
    if mu is None:
        mu = default_mu(field, s)
    mu = [v if isinstance(v, FieldElem) else field.elem(v) for v in mu]
    mu_A = [(v.idx,) + (0,) * (A.n - 1) for v in mu]
    C_raws = [Cv.raw for Cv in Cvals]
    delta = _det_raw(A, _moore_matrix_raw(A, C_raws))
    dinv = A.raw_inv(delta)
    O = [A.raw_mul(c, dinv)
         for c in _bordered_u1_cofactors(A, mu_A, C_raws)]
    U1 = LaurentSeries.zero(A)
    for nu in range(s):
        if not A.raw_is_zero(O[nu]):
            U1 = U1 + ftilde.frobenius_power(nu).scale(O[nu])
    U = U1.frobenius_power(s) - U1

    u_red = ppoly_apply(build_u(ch, mu)["u"], ftilde.residue())
    assert U.residue().eq_to_prec(u_red), "U does not reduce to u"

    gdist, _unit = weierstrass_prepare(invert_unit_series(ftilde))
    return {"U": U, "U1": U1, "O": O,
            "splits_branch": not _is_pure_power(gdist),
            "distinguished": gdist}


def _is_pure_power(gdist):
    """Whether the distinguished polynomial equals (t - r)^m; the only
    candidate root is r = -a_{m-1}/m."""
    A = gdist.ring
    m = gdist.degree
    if m == 1:
        return True
    minv = A.raw_inv(A.raw_from_int(m))
    r = A.raw_neg(A.raw_mul(gdist.coeffs[m - 1], minv))
    for i in range(m):
        coeff = A.raw_mul(A.raw_from_int(comb(m, i)), A.raw_pow(r, m - i))
        if (m - i) % 2 == 1:
            coeff = A.raw_neg(coeff)
        if gdist.coeffs[i] != coeff:
            return False
    return True
