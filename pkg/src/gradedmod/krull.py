"""Krull intersection checks on finite-dimensional commutative algebras.

Here every ideal power, product, and intersection is plain linear algebra:
the chain aM >= a^2 M >= ... stabilizes within dim(M) steps, the stable
subspace equals the full intersection, and the theorem's conclusion
N = aN is verified exactly for the largest eligible N and for sampled
R-submodules of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .errors import InternalInconsistency, NotSubmodule
from .zeros import FiniteAlgebraPresentation
from .poly import GradedRing, Polynomial
from .groebner import GroebnerBasis, ideal_basis


class FiniteAlgebra(FiniteAlgebraPresentation):
    """Structure-constant algebra with the submodule linear algebra attached."""

    def __init__(self, field, basis_labels, structure_constants, unit,
                 distinguished_images=(), check=True):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "basis_labels", tuple(basis_labels))
        object.__setattr__(self, "structure_constants", tuple(
            tuple(tuple(c) for c in row) for row in structure_constants))
        object.__setattr__(self, "unit", tuple(unit))
        object.__setattr__(self, "distinguished_images", tuple(distinguished_images))
        if check:
            self.verify_laws()

    @classmethod
    def from_presentation(cls, pres: FiniteAlgebraPresentation) -> "FiniteAlgebra":
        return cls(pres.field, pres.basis_labels, pres.structure_constants,
                   pres.unit, pres.distinguished_images)

    @classmethod
    def from_quotient(cls, ring: GradedRing, ideal_gens) -> "FiniteAlgebra":
        """S/J for a zero-dimensional (not necessarily homogeneous-saturated)
        homogeneous ideal J, basis the standard monomials, products by
        normal form."""
        gb = ideal_basis(ring, ideal_gens)
        hd = gb.hilbert_data()
        if not hd.is_eventually_zero():
            raise NotSubmodule("quotient is not finite-dimensional")
        basis = []
        k = 0
        while k <= hd.stabilization_degree or hd.function(k):
            basis.extend(gb.component_basis(k))
            k += 1
        field = ring.field
        polys = [Polynomial(ring, {m: field.one}) for _, m in basis]
        index = {bm: i for i, bm in enumerate(basis)}

        def coords(f):
            nf = gb.normal_form(gb.module.from_polynomial(f))
            out = [field.zero] * len(basis)
            for pos, m, c in nf.terms():
                out[index[(pos, m)]] = c
            return tuple(out)

        sc = tuple(tuple(coords(polys[i] * polys[j]) for j in range(len(basis)))
                   for i in range(len(basis)))
        alg = cls(field, tuple(repr(p) for p in polys), sc, coords(ring.one),
                  tuple(coords(ring.variable(i)) for i in range(ring.num_vars)),
                  check=False)
        object.__setattr__(alg, "_quotient_gb", gb)
        return alg

    def element(self, coords):
        coords = tuple(self.field.element(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        return coords

    def verify_laws(self):
        """Commutativity, associativity, and the unit law on all basis triples."""
        n = self.dim
        units = [tuple(self.field.one if t == j else self.field.zero
                       for t in range(n)) for j in range(n)]
        for i in range(n):
            ui = units[i]
            if self.multiply(self.unit, ui) != ui:
                raise InternalInconsistency("unit law fails")
            for j in range(i, n):
                uj = units[j]
                ij = self.multiply(ui, uj)
                if ij != self.multiply(uj, ui):
                    raise InternalInconsistency("multiplication not commutative")
                for t in range(n):
                    ut = units[t]
                    left = self.multiply(ij, ut)
                    right = self.multiply(ui, self.multiply(uj, ut))
                    if left != right:
                        raise InternalInconsistency("multiplication not associative")

    def full_space(self) -> "Subspace":
        rows = [[self.field.one if t == j else self.field.zero
                 for t in range(self.dim)] for j in range(self.dim)]
        return Subspace.from_rows(self, rows)


class Subspace:
    """Subspace of a FiniteAlgebra in canonical reduced-echelon form."""

    def __init__(self, algebra: FiniteAlgebra, rows, pivots):
        self.algebra = algebra
        self.rows = [list(r) for r in rows]
        self.pivots = list(pivots)

    @classmethod
    def from_rows(cls, algebra, rows):
        red, piv = linalg.rref(rows)
        return cls(algebra, red, piv)

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, [], [])

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, vec) -> bool:
        return linalg.in_span(self.rows, self.pivots, vec)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.algebra is self.algebra
                and other.rows == self.rows)

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows)

    def is_submodule(self) -> bool:
        """Closed under multiplication by every algebra basis element."""
        alg = self.algebra
        for r in self.rows:
            for j in range(alg.dim):
                ej = tuple(alg.field.one if t == j else alg.field.zero
                           for t in range(alg.dim))
                if not self.contains(alg.multiply(tuple(r), ej)):
                    return False
        return True

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.algebra.dim})"


def ideal_generate(R: FiniteAlgebra, gens) -> Subspace:
    """Smallest multiplication-closed subspace containing gens (fixpoint)."""
    rows = [list(R.element(g)) for g in gens]
    space = Subspace.from_rows(R, rows)
    while True:
        new_rows = list(space.rows)
        grew = False
        for r in space.rows:
            for j in range(R.dim):
                ej = tuple(R.field.one if t == j else R.field.zero
                           for t in range(R.dim))
                prod = R.multiply(tuple(r), ej)
                if not space.contains(prod):
                    new_rows.append(list(prod))
                    grew = True
        if not grew:
            return space
        space = Subspace.from_rows(R, new_rows)


def product(a: Subspace, U: Subspace) -> Subspace:
    """Span of pairwise products a_i * u_j; U must be an R-submodule."""
    if a.algebra is not U.algebra:
        raise NotSubmodule("subspaces of different algebras")
    if not U.is_submodule():
        raise NotSubmodule("U is not closed under the algebra action")
    R = a.algebra
    rows = [list(R.multiply(tuple(x), tuple(u))) for x in a.rows for u in U.rows]
    return Subspace.from_rows(R, rows)


def stable_intersection(a: Subspace, M: Subspace):
    """(N, i) with N = a^i M = a^(i+1) M = intersection of all a^j M.

    The chain is descending in finite dimension, so it stabilizes within
    dim(M) steps; once one step repeats, all later terms coincide.
    """
    current = product(a, M)  # a^1 M
    if current.dim > M.dim:
        raise InternalInconsistency("a M grew above M")
    i = 1
    while True:
        nxt = product(a, current)
        if nxt == current:
            return current, i
        if nxt.dim > current.dim:
            raise InternalInconsistency("a^i M grew along the chain")
        current = nxt
        i += 1
        if i > M.dim + 1:
            raise InternalInconsistency("chain failed to stabilize in dim steps")


@dataclass(frozen=True)
class KrullCase:
    description: str
    n_dim: int
    an_dim: int
    holds: bool


@dataclass(frozen=True)
class KrullReport:
    stabilized_at: int
    intersection_dim: int
    cases: tuple

    @property
    def all_hold(self):
        return all(c.holds for c in self.cases)


def krull_check(R: FiniteAlgebra, a_gens, m_gens=None,
                sample_submodules: int = 5, seed: int = 0) -> KrullReport:
    """Verify a N = N for N = intersection of a^i M and sampled submodules.

    Any failure is a theorem violation, reported as a fatal finding.
    """
    a = ideal_generate(R, a_gens)
    if m_gens is None:
        M = R.full_space()
    else:
        M = ideal_generate(R, m_gens)  # R-submodule generated by m_gens
    N, stabilized = stable_intersection(a, M)
    cases = []

    def check(N_sub: Subspace, description):
        aN = product(a, N_sub)
        holds = aN == N_sub
        cases.append(KrullCase(description=description, n_dim=N_sub.dim,
                               an_dim=aN.dim, holds=holds))

    check(N, "N = intersection of a^i M")
    rng = random.Random(seed)
    for t in range(sample_submodules):
        if N.dim == 0:
            break
        size = rng.randrange(1, N.dim + 1)
        subset = rng.sample(range(N.dim), size)
        gens = [tuple(N.rows[i]) for i in subset]
        N_sub = ideal_generate(R, gens)
        if not all(N.contains(r) for r in N_sub.rows):
            raise InternalInconsistency(
                "closure of a subset of N left N although N is a submodule")
        check(N_sub, f"random R-submodule #{t} of N (seed {seed})")
    return KrullReport(stabilized_at=stabilized, intersection_dim=N.dim,
                       cases=tuple(cases))
