"""Exact coefficient arithmetic: Q, GF(p), and GF(p^k).

Extension fields are always flattened to a single irreducible modulus over
the prime field, so every element of GF(p^k) is a coefficient tuple of
length k regardless of how the field was built.  A field constructed with
:func:`extend_field` remembers where its base generator and the adjoined
root landed, which is what makes the embedding maps explicit.

Univariate polynomials over any of these fields live in :class:`UniPoly`;
irreducibility testing and full factorization over finite fields
(distinct-degree + Cantor-Zassenhaus equal-degree splitting) are provided
here because the zero-extraction machinery needs them.
"""

from __future__ import annotations

import itertools
import random
import re
from fractions import Fraction

from .errors import (
    DivisionByZero,
    FieldEmbeddingFailure,
    FieldMismatch,
    ParseError,
    ReducibleModulus,
    UnsupportedField,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a base set that is deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldElement:
    """Immutable element of a Field, stored in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatch(f"{other.field} vs {self.field}")
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, b.value))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.value, b.value))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(b.value, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, b.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * b.inv()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b * self.inv()

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self.field, self.field._inv(self.value))

    def __bool__(self):
        return self.value != self.field._zero_value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field._canon(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __repr__(self):
        return f"<{self.field.format_element(self)}>"

    def __str__(self):
        return self.field.format_element(self)


class Field:
    """Common interface of Q, GF(p) and GF(p^k)."""

    is_finite = False
    char = 0
    order = None

    def element(self, raw) -> FieldElement:
        if isinstance(raw, FieldElement):
            if raw.field == self:
                return raw
            raise FieldMismatch(f"element of {raw.field} given to {self}")
        return FieldElement(self, self._canon(raw))

    def __call__(self, raw):
        return self.element(raw)

    @property
    def zero(self):
        return FieldElement(self, self._zero_value)

    @property
    def one(self):
        return FieldElement(self, self._one_value)

    def embed(self, elt: FieldElement) -> FieldElement:
        """Map an element of a subfield (along the construction chain) into self."""
        if elt.field == self:
            return elt
        raise FieldEmbeddingFailure(f"no embedding of {elt.field} into {self}")

    def elements(self):
        raise UnsupportedField(f"{self} is not finite")

    def format_element(self, elt) -> str:
        return str(elt.value)


class RationalField(Field):
    """The rationals, elements stored as fully reduced Fraction values."""

    is_finite = False
    char = 0
    _zero_value = Fraction(0)
    _one_value = Fraction(1)

    def _canon(self, raw):
        return Fraction(raw)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = RationalField()


class PrimeField(Field):
    """GF(p), elements stored as residues in [0, p)."""

    is_finite = True
    _zero_value = 0
    _one_value = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p

    def _canon(self, raw):
        if isinstance(raw, Fraction):
            if raw.denominator % self.p == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return raw.numerator * pow(raw.denominator, -1, self.p) % self.p
        return int(raw) % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def elements(self):
        for v in range(self.p):
            yield FieldElement(self, v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _pf_polymul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pf_polymod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for i in range(dm):
                a[off + i] = (a[off + i] - c * m[i]) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pf_polydivmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * binv % p
        off = len(a) - 1 - db
        q[off] = c
        for i in range(db + 1):
            a[off + i] = (a[off + i] - c * b[i]) % p
        while a and a[-1] == 0:
            a.pop()
    return tuple(q), tuple(a)


def _pf_polyinv(a, m, p):
    # extended Euclid in GF(p)[x], inverse of a mod m
    r0, r1 = tuple(m), tuple(a)
    t0, t1 = (), (1,)
    while r1:
        q, r = _pf_polydivmod(r0, r1, p)
        r0, r1 = r1, r
        qt = _pf_polymul(q, t1, p)
        nt = tuple((x - y) % p for x, y in itertools.zip_longest(t0, qt, fillvalue=0))
        while nt and nt[-1] == 0:
            nt = nt[:-1]
        t0, t1 = t1, nt
    if len(r0) != 1:
        raise DivisionByZero("element not invertible mod modulus")
    c = pow(r0[0], -1, p)
    return tuple(x * c % p for x in t0)


class ExtensionField(Field):
    """GF(p^k) as GF(p)[g]/(modulus), elements as length-k coefficient tuples.

    modulus is a monic irreducible coefficient tuple (low degree first, length
    k+1) over GF(p).  base_field / base_gen_image / adjoined_root record the
    construction history used by embed().
    """

    is_finite = True

    def __init__(self, p, modulus, gen_name="w", base_field=None,
                 base_gen_image=None, adjoined_root=None, _check=True):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        self.p = p
        self.char = p
        mod = tuple(c % p for c in modulus)
        if not mod or mod[-1] != 1:
            raise ReducibleModulus("modulus must be monic")
        self.modulus = mod
        self.k = len(mod) - 1
        if self.k < 1:
            raise ReducibleModulus("modulus must have positive degree")
        self.order = p ** self.k
        self.gen_name = gen_name
        self._zero_value = (0,) * self.k
        self._one_value = (1,) + (0,) * (self.k - 1)
        self.base_field = base_field if base_field is not None else PrimeField(p)
        # coefficient tuples in self for the images of the base generator and
        # of the root adjoined at construction (defaults for a prime base)
        self._base_gen_image = base_gen_image
        gen_value = tuple(1 if i == 1 else 0 for i in range(self.k)) if self.k > 1 else (
            (-mod[0]) % p,)
        self._adjoined_root = adjoined_root if adjoined_root is not None else gen_value
        self._gen_value = gen_value
        if _check and not _pf_irreducible(mod, p):
            raise ReducibleModulus("modulus is reducible over GF(p)")

    @property
    def gen(self):
        return FieldElement(self, self._gen_value)

    @property
    def adjoined_root(self):
        """Image in self of the root of the modulus handed to extend_field."""
        return FieldElement(self, self._adjoined_root)

    def _pad(self, t):
        return tuple(t) + (0,) * (self.k - len(t))

    def _canon(self, raw):
        if isinstance(raw, Fraction):
            return self._pad((PrimeField(self.p)._canon(raw),))[:self.k]
        if isinstance(raw, int):
            return self._pad((raw % self.p,))
        t = tuple(int(c) % self.p for c in raw)
        if len(t) > self.k:
            t = _pf_polymod(t, self.modulus, self.p)
        return self._pad(t)

    def _strip(self, t):
        t = tuple(t)
        while t and t[-1] == 0:
            t = t[:-1]
        return t

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _mul(self, a, b):
        return self._pad(_pf_polymod(_pf_polymul(self._strip(a), self._strip(b), self.p),
                                     self.modulus, self.p))

    def _neg(self, a):
        return tuple(-x % self.p for x in a)

    def _inv(self, a):
        return self._pad(_pf_polyinv(self._strip(a), self.modulus, self.p))

    def elements(self):
        """All field elements, constant coefficient varying fastest."""
        for digits in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, digits)

    def embed(self, elt: FieldElement) -> FieldElement:
        if elt.field == self:
            return elt
        if isinstance(elt.field, PrimeField) and elt.field.p == self.p:
            return self.element(elt.value)
        if elt.field == self.base_field:
            if self._base_gen_image is None:
                raise FieldEmbeddingFailure(f"no recorded embedding of {elt.field}")
            img = FieldElement(self, self._base_gen_image)
            acc = self.zero
            for c in reversed(elt.field._strip(elt.value)):
                acc = acc * img + self.element(c)
            return acc
        if isinstance(self.base_field, ExtensionField):
            return self.embed(self.base_field.embed(elt))
        raise FieldEmbeddingFailure(f"no embedding of {elt.field} into {self}")

    def format_element(self, elt) -> str:
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = elt.value[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                v = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                terms.append(v if c == 1 else f"{c}*{v}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("GFext", self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


def _pf_frobenius(h, q, m, p):
    """h^q mod m over GF(p) by square and multiply."""
    result = (1,)
    base = h
    n = q
    while n:
        if n & 1:
            result = _pf_polymod(_pf_polymul(result, base, p), m, p)
        base = _pf_polymod(_pf_polymul(base, base, p), m, p)
        n >>= 1
    return result


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pf_irreducible(m, p):
    """Rabin irreducibility test for a monic polynomial over GF(p)."""
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    h = x
    powers = {}
    for i in range(1, n + 1):
        h = _pf_frobenius(h, p, m, p)
        powers[i] = h
    for r in _prime_divisors(n):
        g = powers[n // r]
        diff = tuple((a - b) % p for a, b in itertools.zip_longest(g, x, fillvalue=0))
        while diff and diff[-1] == 0:
            diff = diff[:-1]
        if _pf_gcd(diff, m, p) != (1,):
            return False
    top = powers[n]
    diff = tuple((a - b) % p for a, b in itertools.zip_longest(top, x, fillvalue=0))
    while diff and diff[-1] == 0:
        diff = diff[:-1]
    return not diff


def _pf_gcd(a, b, p):
    while b:
        _, a = _pf_polydivmod(a, b, p)
        a, b = b, a
    if a:
        c = pow(a[-1], -1, p)
        a = tuple(x * c % p for x in a)
    return a


class UniPoly:
    """Dense univariate polynomial over a Field; zero polynomial has degree None."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.element(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def leading(self):
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other):
        if not isinstance(other, UniPoly):
            raise TypeError("UniPoly expected")
        if other.field != self.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return UniPoly(self.field, [c * other for c in self.coeffs])
        self._check(other)
        if not self or not other:
            return UniPoly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._check(other)
        if not other:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        binv = other.leading().inv()
        quo = [self.field.zero] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * binv
            off = len(rem) - 1 - db
            quo[off] = c
            for i in range(db + 1):
                rem[off + i] = rem[off + i] - c * other.coeffs[i]
            while rem and not rem[-1]:
                rem.pop()
        return UniPoly(self.field, quo), UniPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def monic(self):
        if not self:
            return self
        lc = self.leading()
        if lc == self.field.one:
            return self
        return self * lc.inv()

    def derivative(self):
        return UniPoly(self.field, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def evaluate(self, x: FieldElement):
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + x.field.embed(c) if x.field != self.field else acc * x + c
        return acc

    def pow_mod(self, n: int, modulus: "UniPoly"):
        result = UniPoly.constant(self.field, self.field.one)
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = self.field.format_element(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if cs == "1" else f"({cs})*{xs}")
        return " + ".join(parts)


def is_irreducible(f: UniPoly) -> bool:
    """Rabin test over a finite field."""
    if not f.field.is_finite:
        raise UnsupportedField("irreducibility test needs a finite field")
    n = f.degree
    if n is None or n == 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    q = f.field.order
    x = UniPoly.x(f.field)
    powers = {0: x}
    h = x
    for i in range(1, n + 1):
        h = h.pow_mod(q, f)
        powers[i] = h
    for r in _prime_divisors(n):
        if (powers[n // r] - x).gcd(f).degree != 0:
            return False
    return not (powers[n] - x) % f


def _pth_root(f: UniPoly) -> UniPoly:
    """Inverse Frobenius on coefficients: f(x) = g(x^p) -> g."""
    p = f.field.char
    q = f.field.order
    root_exp = q // p  # c -> c^(q/p) is the p-th root in GF(q)
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(f.coeffs[i] ** root_exp)
    return UniPoly(f.field, out)


def _squarefree_parts(f: UniPoly):
    """Map squarefree polynomial -> multiplicity, f monic nonconstant."""
    field = f.field
    p = field.char
    out = {}

    def accumulate(g, mult):
        if g.degree and g.degree > 0:
            out[g] = out.get(g, 0) + mult

    def run(f, scale):
        if f.degree == 0:
            return
        df = f.derivative()
        if not df:
            run(_pth_root(f), scale * p)
            return
        c = f.gcd(df)
        w = f // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w // y
            accumulate(z, i * scale)
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            run(_pth_root(c), scale * p)

    run(f.monic(), 1)
    return out


def _equal_degree_split(f: UniPoly, d: int, rng: random.Random):
    """Cantor-Zassenhaus: f squarefree product of degree-d irreducibles."""
    field = f.field
    if f.degree == d:
        return [f]
    q = field.order
    n = f.degree
    while True:
        a = UniPoly(field, [field.element(rng.randrange(field.char))
                            if field.char == q else
                            field.element(tuple(rng.randrange(field.char)
                                                for _ in range(field.k)))
                            for _ in range(n)])
        if a.degree is None or a.degree == 0:
            continue
        g = a.gcd(f)
        if g.degree and 0 < g.degree < n:
            t = g
        elif q % 2 == 1:
            b = a.pow_mod((q ** d - 1) // 2, f) - UniPoly.constant(field, field.one)
            t = b.gcd(f)
        else:
            # trace map over GF(2^k): sum of 2^i-th powers, i < k*d
            k = 1 if q == 2 else field.k
            tr = a % f
            sq = a % f
            for _ in range(k * d - 1):
                sq = (sq * sq) % f
                tr = tr + sq
            t = tr.gcd(f)
        if t.degree and 0 < t.degree < n:
            return (_equal_degree_split(t, d, rng)
                    + _equal_degree_split(f // t, d, rng))


def factor_squarefree_unipoly(f: UniPoly, seed: int = 0):
    """Factor f over a finite field into (irreducible monic, multiplicity) pairs.

    The product of the factors with multiplicities is the monic part of f.
    Output order is deterministic: by degree, then by coefficient tuple.
    """
    field = f.field
    if not field.is_finite:
        raise UnsupportedField("factorization over Q is out of scope")
    if not f:
        raise DivisionByZero("cannot factor the zero polynomial")
    rng = random.Random(seed)
    result = {}
    f = f.monic()
    if field.order < 64:
        # brute-force root stripping keeps the common tiny cases exact and fast
        for a in field.elements():
            lin = UniPoly(field, [-a, field.one])
            while f.degree and f.degree > 0 and not f.evaluate(a):
                f = f // lin
                result[lin] = result.get(lin, 0) + 1
    if f.degree and f.degree > 0:
        for sqf, mult in _squarefree_parts(f).items():
            for irr in _distinct_degree_factor(sqf, rng):
                result[irr] = result.get(irr, 0) + mult

    def key(g):
        return (g.degree, tuple(tuple_key(c) for c in g.coeffs))

    def tuple_key(c):
        return c.value if not isinstance(c.value, tuple) else c.value

    return sorted(result.items(), key=lambda kv: key(kv[0]))


def _distinct_degree_factor(f: UniPoly, rng: random.Random):
    """Irreducible factors of a squarefree monic f over a finite field."""
    field = f.field
    q = field.order
    out = []
    h = UniPoly.x(field)
    x = UniPoly.x(field)
    d = 0
    while f.degree and f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append(f)
            break
        h = h.pow_mod(q, f)
        g = (h - x).gcd(f)
        if g.degree and g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            f = f // g
            h = h % f
    return out


def extend_field(base: Field, modulus: UniPoly, gen_name: str = None) -> Field:
    """Adjoin a root of an irreducible modulus to a finite field.

    The result is always flattened to GF(p^(k*d)) with a single modulus over
    the prime field; its adjoined_root is the image of the new root and
    embed() maps base elements in.
    """
    if not base.is_finite:
        raise UnsupportedField("can only extend finite fields")
    if modulus.field != base:
        raise FieldMismatch("modulus must live over the base field")
    d = modulus.degree
    if d is None or d < 1:
        raise ReducibleModulus("modulus must be nonconstant")
    if not is_irreducible(modulus):
        raise ReducibleModulus(f"{modulus!r} is reducible over {base}")
    modulus = modulus.monic()
    p = base.char
    if isinstance(base, PrimeField):
        name = gen_name or "w"
        return ExtensionField(p, tuple(c.value for c in modulus.coeffs),
                              gen_name=name, base_field=base, _check=False)
    return _flatten_tower(base, modulus, gen_name or _next_gen_name(base))


def _next_gen_name(base):
    order = "wuvabc"
    try:
        i = order.index(base.gen_name)
        return order[(i + 1) % len(order)]
    except ValueError:
        return base.gen_name + "'"


def _flatten_tower(base: ExtensionField, modulus: UniPoly, gen_name: str):
    """GF(p^k)[t]/(modulus) realized as a single extension of GF(p)."""
    p = base.p
    k = base.k
    d = modulus.degree
    dim = k * d

    # tower elements: length-d tuples of base elements, reduced mod modulus
    def t_mul(a, b):
        prod = [base.zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = prod[i + j] + ai * bj
        # reduce by monic modulus
        for top in range(len(prod) - 1, d - 1, -1):
            c = prod[top]
            if c:
                for i in range(d):
                    prod[top - d + i] = prod[top - d + i] - c * modulus.coeffs[i]
                prod[top] = base.zero
        return tuple(prod[:d])

    def t_coords(a):
        out = []
        for c in a:
            out.extend(c.value)
        return out

    def t_add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    t_one = (base.one,) + (base.zero,) * (d - 1)
    t_gen = tuple(base.one if i == 1 else base.zero for i in range(d)) if d > 1 else (
        -modulus.coeffs[0],)
    t_base_gen = (base.gen,) + (base.zero,) * (d - 1)

    rng = random.Random(dim)
    candidates = [t_gen]
    for c in range(1, p):
        candidates.append(t_add(t_gen, tuple(x * c for x in t_base_gen)))

    def random_candidate():
        return tuple(base.element(tuple(rng.randrange(p) for _ in range(k)))
                     for _ in range(d))

    pf = PrimeField(p)
    while True:
        theta = candidates.pop(0) if candidates else random_candidate()
        minpoly, power_rows = _minpoly_over_prime(theta, t_one, t_mul, t_coords, dim, pf)
        if len(minpoly) - 1 == dim:
            break

    flat = ExtensionField(p, minpoly, gen_name=gen_name, base_field=base, _check=False)

    # express tower elements in powers of theta: solve against power_rows
    def to_flat(tv):
        target = t_coords(tv)
        sol = _solve_mod_p(power_rows, target, p)
        if sol is None:
            raise FieldEmbeddingFailure("tower flattening lost an element")
        return flat.element(tuple(sol))

    flat._base_gen_image = to_flat(t_base_gen).value
    flat._adjoined_root = to_flat(t_gen).value
    return flat


def _minpoly_over_prime(theta, one, mul, coords, dim, pf):
    """Minimal polynomial of theta over GF(p) via linear dependence of powers.

    Returns (monic coefficient tuple, list of coordinate rows of
    theta^0..theta^(deg-1)); the rows are reused to express elements in the
    power basis when the degree is full.
    """
    p = pf.p
    rows = []
    powers = []
    cur = one
    while True:
        c = coords(cur)
        dep = _dependence_mod_p(rows, c, p)
        if dep is not None:
            # theta^len(rows) = sum dep_i theta^i
            minpoly = tuple((-x) % p for x in dep) + (1,)
            return minpoly, rows
        rows.append(c)
        powers.append(cur)
        cur = mul(cur, theta)


def _dependence_mod_p(rows, target, p):
    """Coefficients expressing target in span(rows) over GF(p), or None."""
    if not rows:
        return None if any(target) else []
    n = len(target)
    aug = [list(r) + [1 if i == j else 0 for j in range(len(rows))]
           for i, r in enumerate(rows)]
    tg = list(target) + [0] * len(rows)
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, len(aug)):
            if aug[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] % p:
                c = aug[i][col]
                aug[i] = [(x - c * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    # reduce target
    for rr, col in enumerate(pivots):
        c = tg[col] % p
        if c:
            tg = [(x - c * y) % p for x, y in zip(tg, aug[rr])]
    if any(x % p for x in tg[:n]):
        return None
    return [(-x) % p for x in tg[n:]]


def _solve_mod_p(rows, target, p):
    """Solve sum c_i rows_i = target over GF(p)."""
    return _dependence_mod_p(rows, target, p)


def default_extension(p: int, e: int, gen_name: str = "w") -> Field:
    """Canonical GF(p^e): first monic irreducible of degree e in lex coefficient order."""
    if e == 1:
        return PrimeField(p)
    for tail in itertools.product(range(p), repeat=e):
        mod = tuple(reversed(tail)) + (1,)
        if _pf_irreducible(mod, p):
            return ExtensionField(p, mod, gen_name=gen_name, _check=False)
    raise UnsupportedField(f"no irreducible modulus found for GF({p}^{e})")


_FIELD_RE = re.compile(r"^GF\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:;\s*(.+))?\)$")


def parse_field(text: str) -> Field:
    """Parse a field spec: `Q`, `GF(7)`, or `GF(2^2; w^2+w+1)`."""
    text = text.strip()
    if text == "Q":
        return QQ
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse field spec {text!r}")
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    if k == 1:
        if m.group(3):
            raise ParseError("modulus given for a prime field")
        return PrimeField(p)
    if not m.group(3):
        return default_extension(p, k)
    pf = PrimeField(p)
    mod, name = _parse_unipoly(m.group(3), pf)
    if len(mod.coeffs) - 1 != k:
        raise ParseError(f"modulus degree {mod.degree} does not match k={k}")
    return extend_field(pf, mod, gen_name=name)


_TERM_RE = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?(?:([A-Za-z])\s*(?:\^\s*(\d+))?)?\s*$")


def _parse_unipoly(text: str, field: Field):
    """Parse `w^2+w+1`-style univariate polynomials over GF(p)."""
    name = None
    coeffs = {}
    chunks = re.split(r"(?=[+-])", text.replace(" ", ""))
    for chunk in chunks:
        if not chunk:
            continue
        sign = 1
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"cannot parse modulus term {chunk!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            if name is None:
                name = m.group(2)
            elif name != m.group(2):
                raise ParseError("modulus must be univariate")
            e = int(m.group(3)) if m.group(3) else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
    deg = max(coeffs)
    poly = UniPoly(field, [coeffs.get(i, 0) for i in range(deg + 1)])
    return poly, (name or "w")
