"""Truncated Laurent series over a coefficient ring from coeffring.

Series are stored sparsely: a dict mapping exponent -> raw coefficient
(nonzero only), together with an absolute truncation exponent ``prec``
(terms of exponent >= prec are unknown).  ``INF`` marks exact polynomials.

Over an Artin ring the interesting valuation is the *reduced* one (the
valuation of the reduction modulo the maximal ideal); terms below it can
exist but carry nilpotent coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffring import (
    ArtinAlgebraDescriptor,
    ArtinElem,
    FieldElem,
    ring_is_field,
)

INF = 10 ** 9


class RingMismatch(ValueError):
    pass


class ValuationOfZero(ValueError):
    pass


class NotAUnitSeries(ValueError):
    pass


class CompositionDiverges(ValueError):
    pass


class NotReversible(ValueError):
    pass


class RootDegreeDivisibleByP(ValueError):
    pass


class NotAOnePlusSeries(ValueError):
    pass


class ReductionIsZero(ValueError):
    pass


def _raw(ring, x):
    if isinstance(x, FieldElem):
        if not ring_is_field(ring):
            raise RingMismatch("field element in Artin-ring series")
        return x.idx
    if isinstance(x, ArtinElem):
        return x.raw
    if isinstance(x, int):
        return ring.raw_from_int(x)
    return x


class LaurentSeries:
    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec):
        self.ring = ring
        self.prec = prec
        self.coeffs = {e: c for e, c in coeffs.items()
                       if e < prec and not ring.raw_is_zero(c)}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def make(cls, ring, terms, prec=INF):
        """terms: dict exponent -> coefficient (ring element, raw, or int)."""
        return cls(ring, {e: _raw(ring, c) for e, c in terms.items()}, prec)

    @classmethod
    def zero(cls, ring, prec=INF):
        return cls(ring, {}, prec)

    @classmethod
    def one(cls, ring, prec=INF):
        return cls(ring, {0: ring.raw_one()}, prec)

    @classmethod
    def t_power(cls, ring, k, prec=INF):
        return cls(ring, {k: ring.raw_one()}, prec)

    # -- structure ------------------------------------------------------------

    @property
    def lead(self):
        return min(self.coeffs) if self.coeffs else self.prec

    def is_zero(self):
        return not self.coeffs

    def coeff(self, e):
        """Raw coefficient of t^e (zero raw if absent)."""
        return self.coeffs.get(e, self.ring.raw_zero())

    def coeff_elem(self, e):
        c = self.coeff(e)
        if ring_is_field(self.ring):
            return FieldElem(self.ring, c)
        return ArtinElem(self.ring, c)

    def valuation(self):
        """Valuation over a field (error if indistinguishable from zero)."""
        if not ring_is_field(self.ring):
            return self.reduced_valuation()
        if not self.coeffs:
            raise ValuationOfZero("all known coefficients vanish")
        return self.lead

    def reduced_valuation(self):
        """Valuation of the reduction modulo the maximal ideal."""
        r = self.ring
        exps = [e for e, c in self.coeffs.items() if not r.base.raw_is_zero(r.raw_residue(c))] \
            if not ring_is_field(r) else list(self.coeffs)
        if not exps:
            raise ValuationOfZero("reduction is zero to working precision")
        return min(exps)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return LaurentSeries(self.ring, self.coeffs, prec)

    def with_prec(self, prec):
        """Assert-free reinterpretation of precision (internal use)."""
        return LaurentSeries(self.ring, self.coeffs, prec)

    # -- ring operations ------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch("incompatible coefficient rings")

    def __add__(self, other):
        self._check(other)
        r = self.ring
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = r.raw_add(out[e], c) if e in out else c
        return LaurentSeries(r, out, prec)

    def __sub__(self, other):
        self._check(other)
        r = self.ring
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = r.raw_sub(out[e], c) if e in out else r.raw_neg(c)
        return LaurentSeries(r, out, prec)

    def __neg__(self):
        r = self.ring
        return LaurentSeries(r, {e: r.raw_neg(c) for e, c in self.coeffs.items()}, self.prec)

    def __mul__(self, other):
        self._check(other)
        r = self.ring
        prec = min(self.prec + other.lead, other.prec + self.lead)
        out = {}
        raw_mul = r.raw_mul
        raw_add = r.raw_add
        items = list(other.coeffs.items())
        for e1, c1 in self.coeffs.items():
            for e2, c2 in items:
                e = e1 + e2
                if e < prec:
                    m = raw_mul(c1, c2)
                    out[e] = raw_add(out[e], m) if e in out else m
        return LaurentSeries(r, out, prec)

    def scale(self, c):
        r = self.ring
        c = _raw(r, c)
        return LaurentSeries(r, {e: r.raw_mul(x, c) for e, x in self.coeffs.items()}, self.prec)

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentSeries(self.ring, {e + k: c for e, c in self.coeffs.items()},
                             self.prec + k if self.prec < INF else INF)

    def derivative(self):
        r = self.ring
        out = {}
        for e, c in self.coeffs.items():
            m = r.raw_mul(c, r.raw_from_int(e % r.p))
            if not r.raw_is_zero(m):
                out[e - 1] = m
        return LaurentSeries(r, out, self.prec - 1 if self.prec < INF else INF)

    def pow(self, n):
        if n < 0:
            return invert_unit_series(self.pow(-n))
        result = LaurentSeries.one(self.ring, INF)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def frobenius_power(self, e=1):
        """The p^e-th power, computed coefficientwise (exact in char p)."""
        r = self.ring
        q = r.p ** e
        prec = self.prec * q if self.prec < INF else INF
        return LaurentSeries(r, {ex * q: r.raw_pow(c, q) for ex, c in self.coeffs.items()}, prec)

    # -- reductions and lifts -------------------------------------------------

    def residue(self):
        """Reduction modulo the maximal ideal, over the residue field."""
        r = self.ring
        if ring_is_field(r):
            return self
        return LaurentSeries(r.base, {e: r.raw_residue(c) for e, c in self.coeffs.items()},
                             self.prec)

    def reduce_ring(self, m):
        """Push coefficients along F_q[eps]/eps^n -> F_q[eps]/eps^m."""
        r = self.ring
        target = ArtinAlgebraDescriptor(r.base, m)
        return LaurentSeries(target, {e: c[:m] for e, c in self.coeffs.items()}, self.prec)

    def lift_ring(self, target):
        """Zero-padded lift of coefficients into a larger Artin ring (or from the field)."""
        r = self.ring
        if ring_is_field(r):
            out = {e: (c,) + (0,) * (target.n - 1) for e, c in self.coeffs.items()}
        else:
            pad = (0,) * (target.n - r.n)
            out = {e: c + pad for e, c in self.coeffs.items()}
        return LaurentSeries(target, out, self.prec)

    def eps_component(self, j):
        """The coefficient series of eps^j, over the residue field."""
        r = self.ring
        return LaurentSeries(r.base, {e: c[j] for e, c in self.coeffs.items()}, self.prec)

    # -- comparisons / io -----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, LaurentSeries) and self.ring == other.ring
                and self.prec == other.prec and self.coeffs == other.coeffs)

    def eq_to_prec(self, other, upto=None):
        """Coefficientwise equality up to the shared known precision."""
        self._check(other)
        bound = min(self.prec, other.prec)
        if upto is not None:
            bound = min(bound, upto)
        for e in set(self.coeffs) | set(other.coeffs):
            if e < bound and self.coeff(e) != other.coeff(e):
                return False
        return True

    def to_dict(self):
        def enc(c):
            if ring_is_field(self.ring):
                return list(self.ring.idx_to_coeffs(c))
            return [list(self.ring.base.idx_to_coeffs(i)) for i in c]
        if not self.coeffs:
            return {"lead": 0, "prec": self.prec, "coeffs": []}
        lo, hi = self.lead, max(self.coeffs)
        return {"lead": lo, "prec": self.prec,
                "coeffs": [enc(self.coeff(e)) for e in range(lo, hi + 1)]}

    @classmethod
    def from_dict(cls, ring, data):
        def dec(v):
            if ring_is_field(ring):
                return ring.coeffs_to_idx(v)
            raw = tuple(ring.base.coeffs_to_idx(x) for x in v)
            return raw + (0,) * (ring.n - len(raw))
        lo = data["lead"]
        return cls(ring, {lo + i: dec(v) for i, v in enumerate(data["coeffs"])},
                   data["prec"])

    def __repr__(self):
        if not self.coeffs:
            return "O(t^%s)" % (self.prec,)
        terms = ["%r*t^%d" % (self.coeff_elem(e), e) for e in sorted(self.coeffs)]
        return " + ".join(terms) + " + O(t^%s)" % (self.prec,)


# -- string-dispatched arithmetic ----------------------------------------------

def arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "derivative":
        return a.derivative()
    if op == "valuation":
        return a.valuation()
    raise ValueError("unknown op %r" % (op,))


# -- inversion ----------------------------------------------------------------

def invert_unit_series(a):
    """Exact inverse of a unit Laurent series (Newton iteration).

    The leading coefficient of the reduction must be nonzero; over an Artin
    ring terms with nilpotent coefficients may sit below the reduced valuation.
    """
    r = a.ring
    try:
        rv = a.reduced_valuation()
    except ValuationOfZero:
        raise NotAUnitSeries("series is zero modulo the maximal ideal")
    nil = r.nilpotency
    slack = 2 * (nil - 1) * max(0, rv - a.lead)
    prec = a.prec - 2 * rv - slack if a.prec < INF else INF
    c = a.coeff(rv)
    if not r.raw_is_unit(c):
        raise NotAUnitSeries("coefficient at the reduced valuation is not a unit")
    x = LaurentSeries(r, {-rv: r.raw_inv(c)}, prec)
    one = LaurentSeries.one(r)
    for _ in range(64):
        e = one - a * x
        if e.is_zero():
            return x.with_prec(prec)
        nxt = (x + x * e).with_prec(prec)
        if nxt == x:
            # The update has reached the precision barrier coming from
            # nilpotent terms below the reduced valuation; certify only
            # the order actually achieved.
            return x.with_prec(min(prec, e.lead - a.lead))
        x = nxt
    raise AssertionError("series inversion did not converge")


def pole_part(a):
    """The strictly negative-exponent part; exact once prec >= 0."""
    out = {e: c for e, c in a.coeffs.items() if e < 0}
    return LaurentSeries(a.ring, out, INF if a.prec >= 0 else a.prec)


def holomorphic_part(a):
    out = {e: c for e, c in a.coeffs.items() if e >= 0}
    return LaurentSeries(a.ring, out, a.prec)


# -- composition and reversion ------------------------------------------------

def compose(outer, inner):
    """outer(inner(t)), exact to the propagated precision.

    inner must have reduced valuation >= 1; negative powers of inner go
    through invert_unit_series (so inner's reduction must be nonzero).
    """
    if outer.ring != inner.ring:
        raise RingMismatch("incompatible coefficient rings")
    r = outer.ring
    if inner.is_zero():
        if outer.lead < 0:
            raise CompositionDiverges("inner series is zero")
        return LaurentSeries(r, {0: outer.coeff(0)}, inner.prec)
    try:
        rv = inner.reduced_valuation()
    except ValuationOfZero:
        raise CompositionDiverges("inner reduces to zero")
    if rv < 1:
        raise CompositionDiverges("inner valuation must be >= 1")

    nil = r.nilpotency
    if outer.prec >= INF:
        cap = INF
    else:
        cap = (outer.prec - (nil - 1)) * rv + (nil - 1) * min(inner.lead, rv)

    hi = min(outer.prec - 1, max(outer.coeffs) if outer.coeffs else -1)
    lo = outer.lead if outer.coeffs else 0

    # nonnegative-exponent part by Horner, top down
    acc = LaurentSeries.zero(r)
    if hi >= 0:
        for k in range(hi, -1, -1):
            acc = acc * inner
            c = outer.coeff(k)
            if not r.raw_is_zero(c):
                acc = acc + LaurentSeries(r, {0: c}, INF)
    result = acc
    # negative-exponent part: Horner in 1/inner
    if lo < 0:
        inv = invert_unit_series(inner)
        accn = LaurentSeries.zero(r)
        for k in range(lo, 0):
            if not accn.is_zero():
                accn = accn * inv
            c = outer.coeff(k)
            if not r.raw_is_zero(c):
                accn = accn + LaurentSeries(r, {0: c}, INF)
        accn = accn * inv
        result = result + accn
    return result.truncate(cap) if cap < result.prec else result


def revert(a):
    """Compositional inverse: compose(a, revert(a)) = t (Newton iteration)."""
    r = a.ring
    try:
        rv = a.reduced_valuation()
    except ValuationOfZero:
        raise NotReversible("series reduces to zero")
    if rv != 1 or not r.raw_is_unit(a.coeff(1)):
        raise NotReversible("series must be a unit multiple of t plus higher terms")
    t = LaurentSeries.t_power(r, 1, a.prec)
    da = a.derivative()
    g = LaurentSeries(r, {1: r.raw_inv(a.coeff(1))}, a.prec)
    for _ in range(64):
        err = compose(a, g) - t
        if err.is_zero():
            break
        g = (g - err * invert_unit_series(compose(da, g))).with_prec(a.prec)
    else:
        raise AssertionError("reversion did not converge")
    return g.with_prec(a.prec)


def mth_root_unit(a, m):
    """The unique series x = 1 + higher with x^m = a; requires gcd(m, p) = 1.

    Newton iteration on X^m - a; the derivative m X^{m-1} is a unit, so no
    division by p ever occurs (binomial-series recursions would divide by
    arbitrary integers and break in characteristic p).
    """
    r = a.ring
    if m % r.p == 0:
        raise RootDegreeDivisibleByP("gcd(m, p) must be 1")
    one = LaurentSeries.one(r)
    h = a - one
    if not h.is_zero():
        bad = [e for e, c in h.coeffs.items()
               if e <= 0 and (ring_is_field(r) or r.raw_is_unit(c))]
        if bad:
            raise NotAOnePlusSeries("series is not 1 + (small part)")
    nil = r.nilpotency
    slack = (nil - 1) * max(0, -h.lead) if h.coeffs else 0
    prec = a.prec - slack if a.prec < INF else INF
    minv = r.raw_inv(r.raw_from_int(m))
    x = one.with_prec(prec)
    for _ in range(64):
        err = x.pow(m) - a
        if err.is_zero():
            break
        corr = err * invert_unit_series(x.pow(m - 1).scale(r.raw_from_int(m)))
        x = (x - corr).with_prec(prec)
    else:
        raise AssertionError("m-th root iteration did not converge")
    return x.with_prec(prec)


# -- Weierstrass preparation --------------------------------------------------

@dataclass(frozen=True)
class DistinguishedPolynomial:
    """t^m + a_{m-1} t^{m-1} + ... + a_0 with every a_i in the maximal ideal."""
    ring: ArtinAlgebraDescriptor
    degree: int
    coeffs: tuple  # raw coefficients a_0 ... a_{m-1}

    def coeff_elems(self):
        return tuple(ArtinElem(self.ring, c) for c in self.coeffs)

    def to_series(self, prec=INF):
        terms = {self.degree: self.ring.raw_one()}
        for i, c in enumerate(self.coeffs):
            if not self.ring.raw_is_zero(c):
                terms[i] = c
        return LaurentSeries(self.ring, terms, prec)


def weierstrass_prepare(f):
    """Factor f = g * u with g distinguished of degree m and u a unit.

    f must be holomorphic (lead >= 0) with reduction of finite valuation m.
    Computed by the contraction q -> tau(t^m - A0 q) B0^{-1} along the
    nilpotent filtration, where f = A0 + t^m B0 with A0 of degree < m.
    """
    r = f.ring
    if ring_is_field(r):
        raise RingMismatch("weierstrass_prepare expects an Artin coefficient ring")
    if f.lead < 0:
        raise ValueError("series must be holomorphic")
    try:
        m = f.reduced_valuation()
    except ValuationOfZero:
        raise ReductionIsZero("reduction of f is zero to working precision")
    if m >= f.prec:
        raise ReductionIsZero("reduction of f is zero to working precision")

    def tau(s):
        return LaurentSeries(r, {e - m: c for e, c in s.coeffs.items() if e >= m},
                             s.prec - m if s.prec < INF else INF)

    def alpha(s):
        return LaurentSeries(r, {e: c for e, c in s.coeffs.items() if e < m}, INF)

    A0 = alpha(f)
    B0 = tau(f)
    B0inv = invert_unit_series(B0)
    tm = LaurentSeries.t_power(r, m, f.prec)
    q = B0inv
    for _ in range(r.n + 1):
        q_next = (tau(tm - A0 * q) * B0inv).with_prec(B0inv.prec)
        if q_next.eq_to_prec(q):
            q = q_next
            break
        q = q_next
    rrem = alpha(tm - A0 * q)
    g_coeffs = []
    for i in range(m):
        c = r.raw_neg(rrem.coeff(i))
        if c[0] != 0:
            raise AssertionError("distinguished coefficient not in the maximal ideal")
        g_coeffs.append(c)
    g = DistinguishedPolynomial(r, m, tuple(g_coeffs))
    u = invert_unit_series(q)
    return g, u
