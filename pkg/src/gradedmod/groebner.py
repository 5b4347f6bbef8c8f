"""Buchberger engine for homogeneous submodules of free graded modules,
with normal forms, standard-monomial component bases, and exact Hilbert data.

The ideal case is the rank-1 free module.  The module term order is
position-over-term (lower position wins) on top of the ring's monomial
order; degree shifts of the free generators enter only through degrees.
Everything is homogeneous and S-pairs are processed degree by degree.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import linalg
from .errors import InhomogeneousInput, InternalInconsistency, RingMismatch
from .poly import (
    GradedRing,
    Polynomial,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class FreeModule:
    """Free graded module over a GradedRing with generator degree shifts."""

    def __init__(self, ring: GradedRing, shifts=(0,)):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.rank = len(self.shifts)

    def element(self, comps) -> "ModuleElement":
        comps = tuple(comps)
        if len(comps) != self.rank:
            raise ValueError("component count mismatch")
        for c in comps:
            if c.ring != self.ring:
                raise RingMismatch("component in wrong ring")
        return ModuleElement(self, comps)

    def generator(self, i: int) -> "ModuleElement":
        return self.element(tuple(self.ring.one if j == i else self.ring.zero
                                  for j in range(self.rank)))

    def zero(self) -> "ModuleElement":
        return self.element((self.ring.zero,) * self.rank)

    def from_polynomial(self, f: Polynomial) -> "ModuleElement":
        if self.rank != 1:
            raise ValueError("from_polynomial needs a rank-1 module")
        return self.element((f,))

    def __eq__(self, other):
        return (isinstance(other, FreeModule) and other.ring == self.ring
                and other.shifts == self.shifts)

    def __hash__(self):
        return hash((self.ring, self.shifts))

    def __repr__(self):
        return f"{self.ring}^{self.rank}{list(self.shifts)}"


class ModuleElement:
    """Vector of polynomials over a FreeModule basis e_1..e_r."""

    __slots__ = ("module", "comps")

    def __init__(self, module, comps):
        self.module = module
        self.comps = comps

    def is_zero(self):
        return not any(self.comps)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        self._check(other)
        return ModuleElement(self.module,
                             tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(self.module,
                             tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return ModuleElement(self.module, tuple(-a for a in self.comps))

    def __mul__(self, other):
        # scalar or polynomial action
        return ModuleElement(self.module, tuple(c * other for c in self.comps))

    __rmul__ = __mul__

    def _check(self, other):
        if other.module != self.module:
            raise RingMismatch("module mismatch")

    def __eq__(self, other):
        return (isinstance(other, ModuleElement) and other.module == self.module
                and other.comps == self.comps)

    def __hash__(self):
        return hash((self.module, self.comps))

    def degree(self):
        """Homogeneous degree, or None if zero.  Raises if inhomogeneous."""
        deg = None
        for i, c in enumerate(self.comps):
            if not c:
                continue
            ok, d = c.is_homogeneous()
            if not ok:
                raise InhomogeneousInput(f"component {i} is inhomogeneous")
            d += self.module.shifts[i]
            if deg is None:
                deg = d
            elif deg != d:
                raise InhomogeneousInput(
                    f"components of degrees {deg} and {d} mixed")
        return deg

    def is_homogeneous(self):
        try:
            self.degree()
            return True
        except InhomogeneousInput:
            return False

    def leading_term(self):
        """(position, monomial, coeff) under position-over-term order."""
        for i, c in enumerate(self.comps):
            if c:
                return i, c.leading_monomial(), c.leading_coeff()
        raise ValueError("zero element has no leading term")

    def terms(self):
        """All (position, monomial, coeff) in descending module order."""
        for i, c in enumerate(self.comps):
            for m, a in c.terms:
                yield i, m, a

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.comps) + ")"


def _make_term(module, pos, mono, coeff):
    ring = module.ring
    comps = [ring.zero] * module.rank
    comps[pos] = Polynomial(ring, {mono: coeff})
    return ModuleElement(module, tuple(comps))


def _reduce_full(v: ModuleElement, gens) -> ModuleElement:
    """Full normal form of v modulo gens (every term reduced)."""
    module = v.module
    ring = module.ring
    by_pos = {}
    for g in gens:
        pos, m, c = g.leading_term()
        by_pos.setdefault(pos, []).append((m, c, g))
    remainder = module.zero()
    work = v
    while work:
        pos, m, c = work.leading_term()
        hit = None
        for gm, gc, g in by_pos.get(pos, ()):
            if mono_divides(gm, m):
                hit = (gm, gc, g)
                break
        if hit is None:
            t = _make_term(module, pos, m, c)
            remainder = remainder + t
            work = work - t
        else:
            gm, gc, g = hit
            factor = Polynomial(ring, {mono_div(m, gm): c / gc})
            work = work - g * factor
    return remainder


class GroebnerBasis:
    """Reduced Groebner basis of a homogeneous submodule of a free module."""

    def __init__(self, module: FreeModule, generators, reduced=True):
        self.module = module
        self.generators = tuple(generators)
        self.reduced = reduced
        self._hilbert = None
        self._leading_by_pos = None

    def leading_monomials(self, pos: int):
        if self._leading_by_pos is None:
            by_pos = {}
            for g in self.generators:
                p, m, _ = g.leading_term()
                by_pos.setdefault(p, []).append(m)
            self._leading_by_pos = by_pos
        return self._leading_by_pos.get(pos, [])

    def normal_form(self, v: ModuleElement) -> ModuleElement:
        if v.module != self.module:
            raise RingMismatch("element of a different free module")
        return _reduce_full(v, self.generators)

    def contains(self, v: ModuleElement) -> bool:
        return not self.normal_form(v)

    def component_basis(self, k: int):
        """Standard monomials (position, monomial) of degree k of the quotient."""
        out = []
        for pos in range(self.module.rank):
            d = k - self.module.shifts[pos]
            if d < 0:
                continue
            leads = self.leading_monomials(pos)
            for m in self.module.ring.monomials_of_degree(d):
                if not any(mono_divides(lm, m) for lm in leads):
                    out.append((pos, m))
        return out

    def hilbert_data(self) -> "HilbertData":
        if self._hilbert is None:
            num = {}
            for pos in range(self.module.rank):
                shift = self.module.shifts[pos]
                for j, c in _hilbert_numerator(
                        tuple(self.leading_monomials(pos))).items():
                    num[j + shift] = num.get(j + shift, 0) + c
            self._hilbert = HilbertData(num, self.module.ring.num_vars)
        return self._hilbert

    def coordinates(self, v: ModuleElement, k: int, basis=None):
        """Coordinate vector of the class of v in the degree-k component basis."""
        if basis is None:
            basis = self.component_basis(k)
        index = {bm: i for i, bm in enumerate(basis)}
        field = self.module.ring.field
        coords = [field.zero] * len(basis)
        nf = self.normal_form(v)
        for pos, m, c in nf.terms():
            d = mono_degree(m) + self.module.shifts[pos]
            if d != k:
                raise InhomogeneousInput(
                    f"element has a term of degree {d}, expected {k}")
            coords[index[(pos, m)]] = c
        return coords

    def element_from_coordinates(self, coords, basis):
        ring = self.module.ring
        comps = [dict() for _ in range(self.module.rank)]
        for c, (pos, m) in zip(coords, basis):
            if c:
                comps[pos][m] = c
        return self.module.element(tuple(Polynomial(ring, mp) for mp in comps))

    def __repr__(self):
        return f"GroebnerBasis({len(self.generators)} gens, reduced={self.reduced})"


def buchberger(generators, module: FreeModule = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by homogeneous elements.

    S-pairs are handled in a degree-ascending queue, so every intermediate
    element stays homogeneous and truncations are safe.
    """
    gens = [g for g in generators if g]
    if module is None:
        if not gens:
            raise ValueError("empty input needs an explicit free module")
        module = gens[0].module
    for g in gens:
        if g.module != module:
            raise RingMismatch("generators from different free modules")
        if not g.is_homogeneous():
            raise InhomogeneousInput(f"inhomogeneous generator {g!r}")
    basis = []
    pairs = []

    def add_pairs(g):
        gi = len(basis)
        gpos, gm, _ = g.leading_term()
        gdeg = g.degree()
        for j, h in enumerate(basis):
            hpos, hm, _ = h.leading_term()
            if hpos != gpos:
                continue
            lcm = mono_lcm(gm, hm)
            deg = mono_degree(lcm) + module.shifts[gpos]
            # product criterion is only valid for single-component elements
            if (module.rank == 1 and lcm == mono_mul(gm, hm)):
                continue
            pairs.append((deg, j, gi, lcm))
        basis.append(g)

    for g in sorted(gens, key=lambda g: g.degree()):
        nf = _reduce_full(g, basis)
        if nf:
            add_pairs(nf)

    while pairs:
        pairs.sort(key=lambda p: p[0])
        deg, i, j, lcm = pairs.pop(0)
        f, g = basis[i], basis[j]
        fpos, fm, fc = f.leading_term()
        _, gm, gc = g.leading_term()
        ring = module.ring
        sf = f * Polynomial(ring, {mono_div(lcm, fm): fc.inv()})
        sg = g * Polynomial(ring, {mono_div(lcm, gm): gc.inv()})
        nf = _reduce_full(sf - sg, basis)
        if nf:
            add_pairs(nf)
    return _interreduce(basis, module)


def _interreduce(basis, module):
    """Minimalize and autoreduce to the unique reduced basis."""
    # drop generators whose lead is divisible by another lead
    kept = []
    leads = [g.leading_term() for g in basis]
    for i, g in enumerate(basis):
        pos, m, _ = leads[i]
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            hpos, hm, _ = leads[j]
            if hpos == pos and mono_divides(hm, m) and not (
                    hm == m and j > i):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    # tail-reduce each against the others and normalize leading coeff to 1
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        pos, m, c = g.leading_term()
        head = _make_term(module, pos, m, module.ring.field.one)
        tail = _reduce_full(g * c.inv() - head, others)
        out.append(head + tail)
    out.sort(key=lambda g: (g.degree(), g.leading_term()[0]))
    return GroebnerBasis(module, out, reduced=True)


def ideal_basis(ring: GradedRing, polys) -> GroebnerBasis:
    """Convenience wrapper: Groebner basis of a homogeneous ideal."""
    module = FreeModule(ring, (0,))
    return buchberger([module.from_polynomial(f) for f in polys], module)


def spair_reduces_to_zero(gb: GroebnerBasis, i: int, j: int) -> bool:
    """Direct Buchberger-criterion check, used by the test suite."""
    f, g = gb.generators[i], gb.generators[j]
    fpos, fm, fc = f.leading_term()
    gpos, gm, gc = g.leading_term()
    if fpos != gpos:
        return True
    lcm = mono_lcm(fm, gm)
    ring = gb.module.ring
    sf = f * Polynomial(ring, {mono_div(lcm, fm): fc.inv()})
    sg = g * Polynomial(ring, {mono_div(lcm, gm): gc.inv()})
    return not gb.normal_form(sf - sg)


# ---------------------------------------------------------------------------
# Hilbert data


def _minimalize(gens):
    """Minimal generators of a monomial ideal."""
    out = []
    for m in sorted(set(gens), key=mono_degree):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(sorted(out))


def _hilbert_numerator(gens, _cache=None):
    """Numerator of the Hilbert series of S/(monomial ideal) over (1-t)^nvars.

    Pivot-variable splitting: N(I) = N(I + (x)) + t * N(I : x), with the
    pure-power product formula as base case.  Returns {t-exponent: coeff}.
    """
    if _cache is None:
        _cache = {}
    gens = _minimalize(gens)
    key = gens
    hit = _cache.get(key)
    if hit is not None:
        return hit
    result = _hilbert_numerator_raw(gens, _cache)
    _cache[key] = result
    return result


def _hilbert_numerator_raw(gens, cache):
    if not gens:
        return {0: 1}
    if any(mono_degree(m) == 0 for m in gens):
        return {}
    impure = [m for m in gens if sum(1 for e in m if e) > 1]
    if not impure:
        # pairwise coprime pure powers: product of (1 - t^deg)
        num = {0: 1}
        for m in gens:
            d = mono_degree(m)
            new = dict(num)
            for j, c in num.items():
                new[j + d] = new.get(j + d, 0) - c
            num = {j: c for j, c in new.items() if c}
        return num
    nvars = len(gens[0])
    counts = [0] * nvars
    for m in impure:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    x = max(range(nvars), key=lambda i: counts[i])
    unit = tuple(1 if i == x else 0 for i in range(nvars))
    plus = tuple(m for m in gens if m[x] == 0) + (unit,)
    colon = tuple(tuple(e - 1 if i == x and e > 0 else e
                        for i, e in enumerate(m)) for m in gens)
    n_plus = _hilbert_numerator(plus, cache)
    n_colon = _hilbert_numerator(colon, cache)
    out = dict(n_plus)
    for j, c in n_colon.items():
        out[j + 1] = out.get(j + 1, 0) + c
    return {j: c for j, c in out.items() if c}


class HilbertData:
    """Exact Hilbert function, polynomial, and stabilization degree.

    The function is k -> sum_j num[j] * C(k - j + n, n) with n + 1 the number
    of ring variables; the polynomial agrees with the function from the
    stabilization degree on, and that degree is exact, not sampled.
    """

    def __init__(self, numerator, num_vars):
        self.numerator = {j: c for j, c in sorted(numerator.items()) if c}
        self.num_vars = num_vars
        self._n = num_vars - 1
        self.hilbert_polynomial = self._polynomial()
        self.stabilization_degree = self._stabilization()

    def function(self, k: int) -> int:
        if k < 0:
            return 0
        total = 0
        n = self._n
        for j, c in self.numerator.items():
            if j <= k:
                total += c * math.comb(k - j + n, n)
        return total

    def polynomial_value(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.hilbert_polynomial):
            acc = acc * k + c
        return acc

    def _polynomial(self):
        # sum_j num[j] * binomial polynomial C(k - j + n, n), coefficients in k
        n = self._n
        total = [Fraction(0)] * (n + 1)
        nfact = math.factorial(n)
        for j, c in self.numerator.items():
            poly = [Fraction(1)]
            for i in range(1, n + 1):
                # multiply by (k + (i - j))
                shift = Fraction(i - j)
                new = [Fraction(0)] * (len(poly) + 1)
                for d, a in enumerate(poly):
                    new[d + 1] += a
                    new[d] += a * shift
                poly = new
            for d, a in enumerate(poly):
                total[d] += Fraction(c) * a / nfact
        while total and total[-1] == 0:
            total.pop()
        return total

    def _stabilization(self):
        deg_num = max(self.numerator, default=0)
        d = max(0, deg_num - self._n)
        while d > 0 and self.function(d - 1) == self.polynomial_value(d - 1):
            d -= 1
        return d

    def is_eventually_zero(self) -> bool:
        if any(c != 0 for c in self.hilbert_polynomial):
            return False
        return all(self.function(k) == 0
                   for k in range(self.stabilization_degree,
                                  self.stabilization_degree + 1))

    def nonzero_from(self) -> int:
        """Least degree from which every component is nonzero (Long data only)."""
        if self.is_eventually_zero():
            raise InternalInconsistency("nonzero_from on eventually-zero data")
        # beyond the Cauchy bound of the Hilbert polynomial the sign is fixed
        coeffs = self.hilbert_polynomial
        lead = coeffs[-1]
        bound = 1 + max((abs(c / lead) for c in coeffs[:-1]), default=Fraction(0))
        d = max(self.stabilization_degree, math.ceil(bound) + 1)
        while d > 0 and self.function(d - 1) > 0:
            d -= 1
        return d

    def __repr__(self):
        return (f"HilbertData(poly={self.hilbert_polynomial}, "
                f"stab={self.stabilization_degree})")


def module_product_basis(gens, gb: GroebnerBasis, k: int):
    """Row-reduced basis of span{b*m : b in gens, m basis of component k}
    inside the degree-(k+1) component of the quotient.

    gens must be homogeneous of degree 1 (the subset B of variables in the
    maximal-B search); returns (rows, pivots, target_basis).
    """
    for b in gens:
        ok, d = b.is_homogeneous()
        if not ok or (b and d != 1):
            raise InhomogeneousInput(f"generator {b!r} is not of degree 1")
    target = gb.component_basis(k + 1)
    rows = []
    for pos, m in gb.component_basis(k):
        base = _make_term(gb.module, pos, m, gb.module.ring.field.one)
        for b in gens:
            rows.append(gb.coordinates(base * b, k + 1, target))
    red, pivots = linalg.rref(rows)
    return red, pivots, target
