"""Exact arithmetic in F_{p^d} and in the Artin local algebras F_{p^d}[eps]/(eps^n).

A field element is an index into the lexicographic enumeration of coefficient
vectors over F_p; the descriptor lazily builds full addition/multiplication
tables (fields in scope have q <= 625), so element operations are table
lookups.  Series and linear-algebra code works on the "raw" representation
directly (ints for fields, tuples of ints for Artin rings) through the
raw_* methods shared by both descriptor types.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class NonPrimeP(ValueError):
    pass


class ReducibleModulus(ValueError):
    pass


class NotAUnit(ZeroDivisionError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _polmod_mul(a, b, modulus, p):
    """Multiply coefficient tuples mod (modulus, p); modulus is monic."""
    d = len(modulus) - 1
    if not any(a) or not any(b):
        return (0,) * d
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, d - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(d):
                res[i - d + j] = (res[i - d + j] - c * modulus[j]) % p
    res = res[:d] + [0] * (d - len(res))
    return tuple(res[:d])


class FieldDescriptor:
    """The finite field F_{p^d} given by a monic irreducible modulus over F_p."""

    nilpotency = 1

    def __init__(self, p, d, modulus):
        self.p = p
        self.d = d
        self.modulus = tuple(c % p for c in modulus[:-1]) + (1,)
        self.q = p ** d
        self._tables = None

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.d)

    def __eq__(self, other):
        return (isinstance(other, FieldDescriptor)
                and (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus))

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    # -- index <-> coefficient vector ----------------------------------------

    def idx_to_coeffs(self, i):
        out = []
        for _ in range(self.d):
            i, r = divmod(i, self.p)
            out.append(r)
        return tuple(out)

    def coeffs_to_idx(self, coeffs):
        i = 0
        for c in reversed(coeffs):
            i = i * self.p + (c % self.p)
        return i

    def tables(self):
        if self._tables is None:
            p, q, d = self.p, self.q, self.d
            vecs = [self.idx_to_coeffs(i) for i in range(q)]
            add = [[0] * q for _ in range(q)]
            mul = [[0] * q for _ in range(q)]
            for i in range(q):
                vi = vecs[i]
                for j in range(i, q):
                    vj = vecs[j]
                    s = self.coeffs_to_idx(tuple((a + b) % p for a, b in zip(vi, vj)))
                    add[i][j] = add[j][i] = s
                    m = self.coeffs_to_idx(_polmod_mul(vi, vj, self.modulus, p))
                    mul[i][j] = mul[j][i] = m
            neg = [self.coeffs_to_idx(tuple((-c) % p for c in vecs[i])) for i in range(q)]
            inv = [0] * q
            for i in range(1, q):
                for j in range(1, q):
                    if mul[i][j] == 1:
                        inv[i] = j
                        break
            frob = [0] * q
            for i in range(q):
                acc = i
                for _ in range(p - 1):
                    acc = mul[acc][i]
                frob[i] = acc
            frob_inv = [0] * q
            for i in range(q):
                frob_inv[frob[i]] = i
            self._tables = (add, mul, neg, inv, frob, frob_inv)
        return self._tables

    # -- raw interface (ints) -------------------------------------------------

    def raw_zero(self):
        return 0

    def raw_one(self):
        return 1

    def raw_from_int(self, k):
        return k % self.p

    def raw_add(self, a, b):
        return self.tables()[0][a][b]

    def raw_sub(self, a, b):
        t = self.tables()
        return t[0][a][t[2][b]]

    def raw_neg(self, a):
        return self.tables()[2][a]

    def raw_mul(self, a, b):
        return self.tables()[1][a][b]

    def raw_inv(self, a):
        if a == 0:
            raise NotAUnit("zero is not invertible")
        return self.tables()[3][a]

    def raw_pow(self, a, n):
        if n < 0:
            return self.raw_pow(self.raw_inv(a), -n)
        mul = self.tables()[1]
        result, base = 1, a
        while n:
            if n & 1:
                result = mul[result][base]
            base = mul[base][base]
            n >>= 1
        return result

    def raw_frobenius(self, a, e=1):
        frob = self.tables()[4]
        for _ in range(e % self.d if self.d > 1 else 0):
            a = frob[a]
        return a if self.d > 1 else a

    def raw_p_root(self, a, e=1):
        frob_inv = self.tables()[5]
        if self.d == 1:
            return a
        for _ in range(e % self.d):
            a = frob_inv[a]
        return a

    def raw_is_zero(self, a):
        return a == 0

    def raw_is_unit(self, a):
        return a != 0

    def raw_residue(self, a):
        return a

    # -- public elements ------------------------------------------------------

    def elem(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.d:
            raise ValueError("coefficient vector longer than degree %d" % self.d)
        coeffs = coeffs + [0] * (self.d - len(coeffs))
        return FieldElem(self, self.coeffs_to_idx(coeffs))

    def from_int(self, n):
        return FieldElem(self, n % self.p)

    def from_raw(self, raw):
        return FieldElem(self, raw)

    def zero(self):
        return FieldElem(self, 0)

    def one(self):
        return FieldElem(self, 1)

    def gen(self):
        if self.d == 1:
            return self.from_int(-self.modulus[0])
        return FieldElem(self, self.p)  # the class of x

    def elements(self):
        return [FieldElem(self, i) for i in range(self.q)]


@dataclass(frozen=True)
class FieldElem:
    field: FieldDescriptor
    idx: int

    @property
    def coeffs(self):
        return self.field.idx_to_coeffs(self.idx)

    def __bool__(self):
        return self.idx != 0

    def is_unit(self):
        return self.idx != 0

    def _check(self, other):
        if not isinstance(other, FieldElem) or self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.raw_add(self.idx, other.idx))

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.raw_sub(self.idx, other.idx))

    def __neg__(self):
        return FieldElem(self.field, self.field.raw_neg(self.idx))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.raw_mul(self.idx, other.idx))

    def __pow__(self, n):
        return FieldElem(self.field, self.field.raw_pow(self.idx, n))

    def frobenius(self, e=1):
        return FieldElem(self.field, self.field.raw_frobenius(self.idx, e))

    def __repr__(self):
        return "Fq%s" % (list(self.coeffs),)


# -- field construction -------------------------------------------------------

def _has_root(coeffs, p):
    for r in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
        if acc == 0:
            return True
    return False


def _poly_trim(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a, p), _poly_trim(b, p)
    while b:
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b):
            lead = r[-1] * inv % p
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - lead * c) % p
            r = _poly_trim(r, p)
            if not r:
                break
        a, b = b, r
    return a


def _poly_mod(r, modulus, p):
    r = list(r)
    m = list(modulus)
    while True:
        r = _poly_trim(r, p)
        if len(r) < len(m):
            return r
        lead = r[-1] % p  # modulus is monic
        shift = len(r) - len(m)
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * c) % p


def _frob_power(k, modulus, p):
    """x^(p^k) reduced mod the monic modulus, by repeated p-th powering;
    a(x)^p = a(x^p) since the coefficients are in F_p."""
    acc = [0, 1]
    for _ in range(k):
        lifted = [0] * (p * (len(acc) - 1) + 1)
        for i, c in enumerate(acc):
            lifted[i * p] = c % p
        acc = _poly_mod(lifted, modulus, p)
        if not acc:
            acc = [0]
    return acc


def _is_irreducible(coeffs, p):
    """Rabin's criterion for a monic polynomial over F_p."""
    d = len(coeffs) - 1
    if d <= 1:
        return d == 1
    if _has_root(coeffs, p):
        return False
    x_pd = _frob_power(d, tuple(coeffs), p)
    minus_x = _poly_trim([c for c in x_pd], p)
    diff = list(minus_x) + [0] * max(0, 2 - len(minus_x))
    diff[1] = (diff[1] - 1) % p
    if _poly_trim(diff, p):
        return False
    primes = {r for r in range(2, d + 1) if d % r == 0 and all(r % q for q in range(2, r))}
    for r in primes:
        x_pk = _frob_power(d // r, tuple(coeffs), p)
        diff = list(x_pk) + [0] * max(0, 2 - len(x_pk))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(list(coeffs), diff, p)
        if len(g) - 1 != 0:
            return False
    return True


@lru_cache(maxsize=None)
def _default_modulus(p, d):
    if d == 1:
        return (0, 1)
    def vectors(k):
        if k == 0:
            yield ()
            return
        for rest in vectors(k - 1):
            for c in range(p):
                yield rest + (c,)
    for low in sorted(vectors(d)):
        cand = tuple(low) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducibles of every degree exist")


@lru_cache(maxsize=None)
def _field_cache(p, d, modulus):
    return FieldDescriptor(p, d, modulus)


def make_field(p, d=1, modulus=None):
    if not _is_prime(p):
        raise NonPrimeP("p = %r is not prime" % (p,))
    if d < 1:
        raise ValueError("d must be >= 1")
    if d > 6:
        raise ValueError("extension degrees above 6 are out of scope")
    if modulus is None:
        modulus = _default_modulus(p, d)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree d")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulus("modulus %r is reducible over F_%d" % (modulus, p))
    return _field_cache(p, d, modulus)


# -- Artin local algebras -----------------------------------------------------

class ArtinAlgebraDescriptor:
    """A = F_q[eps]/(eps^n).  n = 1 is the field itself (still wrapped).

    Raw elements are length-n tuples of field indices.
    """

    def __init__(self, base, n):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.base = base
        self.n = n
        self.p = base.p
        self.nilpotency = n
        self._bt = base.tables()

    def __repr__(self):
        return "%r[eps]/(eps^%d)" % (self.base, self.n)

    def __eq__(self, other):
        return (isinstance(other, ArtinAlgebraDescriptor)
                and self.base == other.base and self.n == other.n)

    def __hash__(self):
        return hash((self.base, self.n))

    # -- raw interface (tuples of ints) ---------------------------------------

    def raw_zero(self):
        return (0,) * self.n

    def raw_one(self):
        return (1,) + (0,) * (self.n - 1)

    def raw_eps(self):
        if self.n < 2:
            return self.raw_zero()
        return (0, 1) + (0,) * (self.n - 2)

    def raw_from_int(self, k):
        return (k % self.p,) + (0,) * (self.n - 1)

    def raw_add(self, a, b):
        add = self._bt[0]
        return tuple(add[x][y] for x, y in zip(a, b))

    def raw_sub(self, a, b):
        t = self._bt
        add, neg = t[0], t[2]
        return tuple(add[x][neg[y]] for x, y in zip(a, b))

    def raw_neg(self, a):
        neg = self._bt[2]
        return tuple(neg[x] for x in a)

    def raw_mul(self, a, b):
        t = self._bt
        add, mul = t[0], t[1]
        n = self.n
        if n == 2:
            a0, a1 = a
            b0, b1 = b
            return (mul[a0][b0], add[mul[a0][b1]][mul[a1][b0]])
        res = [0] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    y = b[j]
                    if y:
                        res[i + j] = add[res[i + j]][mul[x][y]]
        return tuple(res)

    def raw_inv(self, a):
        if a[0] == 0:
            raise NotAUnit("element lies in the maximal ideal")
        c0inv = (self.base.raw_inv(a[0]),) + (0,) * (self.n - 1)
        # a = c0 (1 + nil);  1/a = c0^{-1} sum (-nil)^k
        nil = self.raw_sub(self.raw_mul(a, c0inv), self.raw_one())
        acc = self.raw_one()
        term = self.raw_one()
        for _ in range(self.n - 1):
            term = self.raw_neg(self.raw_mul(term, nil))
            acc = self.raw_add(acc, term)
        return self.raw_mul(c0inv, acc)

    def raw_pow(self, a, n):
        if n < 0:
            return self.raw_pow(self.raw_inv(a), -n)
        result, base = self.raw_one(), a
        while n:
            if n & 1:
                result = self.raw_mul(result, base)
            base = self.raw_mul(base, base)
            n >>= 1
        return result

    def raw_is_zero(self, a):
        return not any(a)

    def raw_is_unit(self, a):
        return a[0] != 0

    def raw_residue(self, a):
        return a[0]

    # -- public elements ------------------------------------------------------

    def elem(self, comps):
        comps = list(comps)
        if len(comps) > self.n:
            raise ValueError("too many eps-components")
        raw = tuple(c.idx for c in comps) + (0,) * (self.n - len(comps))
        return ArtinElem(self, raw)

    def include(self, x):
        return ArtinElem(self, (x.idx,) + (0,) * (self.n - 1))

    def from_int(self, k):
        return ArtinElem(self, self.raw_from_int(k))

    def from_raw(self, raw):
        return ArtinElem(self, raw)

    def zero(self):
        return ArtinElem(self, self.raw_zero())

    def one(self):
        return ArtinElem(self, self.raw_one())

    def eps(self):
        return ArtinElem(self, self.raw_eps())

    def small_extension(self):
        """A' = F_q[eps]/(eps^{n+1}), the canonical small extension onto A."""
        return ArtinAlgebraDescriptor(self.base, self.n + 1)

    def elements(self):
        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for i in range(self.base.q):
                    yield rest + (i,)
        return [ArtinElem(self, raw) for raw in rec(self.n)]


@dataclass(frozen=True)
class ArtinElem:
    ring: ArtinAlgebraDescriptor
    raw: tuple

    @property
    def comps(self):
        return tuple(FieldElem(self.ring.base, i) for i in self.raw)

    def __bool__(self):
        return any(self.raw)

    def is_unit(self):
        return self.raw[0] != 0

    def in_max_ideal(self):
        return self.raw[0] == 0

    def residue(self):
        return FieldElem(self.ring.base, self.raw[0])

    def _check(self, other):
        if not isinstance(other, ArtinElem) or self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        self._check(other)
        return ArtinElem(self.ring, self.ring.raw_add(self.raw, other.raw))

    def __sub__(self, other):
        self._check(other)
        return ArtinElem(self.ring, self.ring.raw_sub(self.raw, other.raw))

    def __neg__(self):
        return ArtinElem(self.ring, self.ring.raw_neg(self.raw))

    def __mul__(self, other):
        self._check(other)
        return ArtinElem(self.ring, self.ring.raw_mul(self.raw, other.raw))

    def __pow__(self, n):
        return ArtinElem(self.ring, self.ring.raw_pow(self.raw, n))

    def reduce(self, m=None):
        """Image under A -> F_q[eps]/(eps^m); m defaults to n-1."""
        if m is None:
            m = self.ring.n - 1
        return ArtinElem(ArtinAlgebraDescriptor(self.ring.base, m), self.raw[:m])

    def lift(self, ring):
        """Zero-padded lift along ring -> self.ring."""
        if ring.base != self.ring.base or ring.n < self.ring.n:
            raise ValueError("not an extension of the ambient ring")
        return ArtinElem(ring, self.raw + (0,) * (ring.n - self.ring.n))

    def __repr__(self):
        return "Artin%s" % ([list(c.coeffs) for c in self.comps],)


def make_artin_algebra(base, n):
    return ArtinAlgebraDescriptor(base, n)


# -- generic helpers ----------------------------------------------------------

def invert_unit(x):
    """Exact inverse of a unit FieldElem or ArtinElem."""
    if isinstance(x, FieldElem):
        return FieldElem(x.field, x.field.raw_inv(x.idx))
    if isinstance(x, ArtinElem):
        return ArtinElem(x.ring, x.ring.raw_inv(x.raw))
    raise TypeError("unsupported element type %r" % type(x))


def p_power_root(x, e=1):
    """The unique y with y^{p^e} = x, by iterating the inverse Frobenius."""
    if not isinstance(x, FieldElem):
        raise TypeError("p-power roots are only defined over fields")
    return FieldElem(x.field, x.field.raw_p_root(x.idx, e))


def ring_is_field(ring):
    return isinstance(ring, FieldDescriptor)


def residue_field(ring):
    return ring if ring_is_field(ring) else ring.base
