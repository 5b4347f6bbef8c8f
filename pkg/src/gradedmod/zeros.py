"""Homogeneous Nullstellensatz: from a non-saturated homogeneous ideal J,
produce a projective zero over a finite extension of the coefficient field.

Route: the finiteness construction turns S/J into a finite-dimensional
commutative algebra (the colimit quotient) in which the image of the flip
variable x is the identity, so the distinguished variable images are not
all nilpotent.  A common eigenvector of the commuting multiplication
operators, found over the smallest field extensions that split the minimal
polynomials, yields the point.  A brute-force enumerator over P_n(GF(p^e))
serves as an independent oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .cartier import CartierTateCertificate, run_theorem
from .coeff import (
    ExtensionField,
    Field,
    FieldElement,
    UniPoly,
    default_extension,
    extend_field,
    factor_squarefree_unipoly,
)
from .errors import (
    AllNilpotent,
    FieldEmbeddingFailure,
    InhomogeneousInput,
    InternalInconsistency,
    NotCyclic,
    UnsupportedField,
)
from .graded import GradedModule, classify_length
from .poly import GradedRing, Polynomial, require_homogeneous


@dataclass(frozen=True)
class FiniteAlgebraPresentation:
    """Commutative unital algebra by structure constants, with the images of
    the ring variables distinguished."""

    field: Field
    basis_labels: tuple
    structure_constants: tuple  # [i][j] -> coordinate tuple of b_i * b_j
    unit: tuple  # coordinates of 1
    distinguished_images: tuple  # one coordinate tuple per ring variable

    @property
    def dim(self):
        return len(self.basis_labels)

    def multiply(self, u, v):
        field = self.field
        out = [field.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                row = self.structure_constants[i][j]
                out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def multiplication_matrix(self, u):
        """Rows: coordinates of u * b_j for each basis vector b_j."""
        field = self.field
        rows = []
        for j in range(self.dim):
            ej = tuple(field.one if t == j else field.zero for t in range(self.dim))
            rows.append(self.multiply(u, ej))
        return rows


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P_n with coordinates normalized so the first nonzero one is 1."""

    field: Field
    coordinates: tuple

    @staticmethod
    def normalized(field, coords) -> "ProjectivePoint":
        coords = tuple(coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise InternalInconsistency("projective point with all-zero coordinates")
        inv = lead.inv()
        return ProjectivePoint(field, tuple(c * inv for c in coords))

    def __repr__(self):
        return "(" + " : ".join(self.field.format_element(c)
                                for c in self.coordinates) + ")"


def algebra_from_certificate(cert: CartierTateCertificate) -> FiniteAlgebraPresentation:
    """P/(1-x)P as a structure-constant algebra, for cyclic M = S/J.

    Multiplication of two degree-D standard classes lands in degree 2D and is
    transported back along the x-bijections; the image of x is the identity.
    """
    M = cert.M
    if not M.is_cyclic:
        raise NotCyclic("the algebra construction needs M = S/J")
    P = cert.P
    colimit = cert.colimit
    D = colimit.D
    basis = colimit.basis
    n = len(basis)
    ring = M.ring
    field = ring.field
    gb = P.groebner

    def class_of(poly: Polynomial):
        return tuple(colimit.transport(P.from_polynomial(poly)))

    basis_polys = [Polynomial(ring, {m: field.one}) for _, m in basis]
    sc = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = basis_polys[i] * basis_polys[j]  # degree 2D
            row.append(class_of(prod))
        sc.append(tuple(row))
    unit = class_of(ring.one)
    images = tuple(class_of(ring.variable(i)) for i in range(ring.num_vars))
    alg = FiniteAlgebraPresentation(
        field=field,
        basis_labels=tuple(f"[{Polynomial(ring, {m: field.one})!r}]" for _, m in basis),
        structure_constants=tuple(sc),
        unit=unit,
        distinguished_images=images,
    )
    # x maps to the identity, which also certifies non-nilpotency
    if images[cert.x_index] != unit:
        raise InternalInconsistency("image of x is not the identity of P/(1-x)P")
    return alg


def _min_poly_of_operator(alg_field, rows, space_basis):
    """Minimal polynomial of an operator restricted to an invariant subspace.

    rows: operator as coordinate rows on the ambient algebra; space_basis:
    rref rows spanning the invariant subspace.  Works over any field.
    """
    field = alg_field

    def apply(vec):
        out = [field.zero] * len(rows[0]) if rows else []
        for c, row in zip(vec, rows):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return out

    # minimal polynomial of the operator on the subspace: stack iterates of a
    # cyclic-style search over all subspace basis vectors and take the lcm
    minpoly = UniPoly.constant(field, field.one)
    for start in space_basis:
        iterates = [list(start)]
        while True:
            dep = linalg.solve(iterates, apply(iterates[-1]))
            if dep is not None:
                # dep gives apply(last) = sum dep_i iterates_i, so
                # p(T)v = 0 with p = x^m - sum dep_i x^i
                poly = UniPoly(field, [-c for c in dep] + [field.one])
                break
            iterates.append(apply(iterates[-1]))
        # lcm accumulate
        g = minpoly.gcd(poly)
        minpoly = (minpoly * poly) // g
    return minpoly


def maximal_ideal_point(alg: FiniteAlgebraPresentation,
                        seed: int = 0) -> ProjectivePoint:
    """Common eigenvector of the distinguished multiplication operators.

    Processes the variable images one at a time, refining a shared
    eigenspace and extending the field by an irreducible factor of the
    minimal polynomial whenever no eigenvalue exists yet.  The image of the
    flip variable is the identity, so the resulting tuple is nonzero.
    """
    if not alg.field.is_finite:
        raise UnsupportedField("maximal-ideal extraction needs a finite field")
    if all(_is_nilpotent(alg, img) for img in alg.distinguished_images):
        raise AllNilpotent("all distinguished images are nilpotent")

    field = alg.field
    dim = alg.dim
    # current data, re-embedded on every field extension
    sc = alg.structure_constants
    images = list(alg.distinguished_images)
    space = [list(r) for r in
             linalg.rref([_unit_vector(field, dim, i) for i in range(dim)])[0]]
    eigenvalues = []

    def embed_all(new_field):
        nonlocal sc, images, space, eigenvalues, field
        emb = new_field.embed
        sc = tuple(tuple(tuple(emb(c) for c in cell) for cell in row) for row in sc)
        images = [tuple(emb(c) for c in img) for img in images]
        space = [[emb(c) for c in r] for r in space]
        eigenvalues = [emb(l) for l in eigenvalues]
        field = new_field

    def mult_rows(u):
        rows = []
        for j in range(dim):
            out = [field.zero] * dim
            for i, a in enumerate(u):
                if a:
                    row = sc[i][j]
                    out = [x + a * y for x, y in zip(out, row)]
            rows.append(out)
        return rows

    for idx in range(len(images)):
        op = mult_rows(images[idx])
        minpoly = _min_poly_of_operator(field, op, space)
        factors = factor_squarefree_unipoly(minpoly, seed=seed)
        # smallest-degree irreducible factor first: smallest extension wins
        factors.sort(key=lambda fm: (fm[0].degree, [c.value for c in fm[0].coeffs]))
        irr = factors[0][0]
        if irr.degree > 1:
            bigger = extend_field(field, irr)
            embed_all(bigger)
            lam = bigger.adjoined_root
            op = mult_rows(images[idx])
        else:
            lam = -irr.coeffs[0]
        eigenvalues.append(lam)
        # refine: kernel of (op - lam) intersected with current space
        shifted = [[r[c] - (lam if c == j else field.zero)
                    for c, _ in enumerate(r)] for j, r in enumerate(op)]
        kernel = _kernel_rows(shifted, field)
        space = [list(r) for r in linalg.intersect(space, kernel)]
        if not space:
            raise InternalInconsistency(
                "eigenspace refinement emptied the common eigenspace")
    return ProjectivePoint.normalized(field, eigenvalues)


def _unit_vector(field, n, i):
    return [field.one if j == i else field.zero for j in range(n)]


def _kernel_rows(op_rows, field):
    """Basis of {v : v applied to the operator is zero}, operators act on the
    right of row vectors (v -> sum_j v_j row_j)."""
    n = len(op_rows)
    # solve v * M = 0 where row j of M is op_rows[j]
    # transpose to standard nullspace computation
    cols = [[op_rows[j][i] for j in range(n)] for i in range(n)]
    # rref of the system cols * v^T = 0 over variables v_j
    red, pivots = linalg.rref(cols)
    free = [j for j in range(n) if j not in pivots]
    out = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        out.append(v)
    return linalg.rref(out)[0]


def _is_nilpotent(alg: FiniteAlgebraPresentation, u) -> bool:
    cur = u
    for _ in range(alg.dim + 1):
        if not any(cur):
            return True
        cur = alg.multiply(cur, u)
    return False


def verify_zero(ideal_gens, pt: ProjectivePoint) -> bool:
    """Evaluate every generator at the point, embedding coefficients as needed."""
    for f in ideal_gens:
        try:
            value = f.evaluate(list(pt.coordinates))
        except FieldEmbeddingFailure:
            raise
        if value:
            return False
    return True


def _field_listing(field):
    return list(field.elements())


def enumerate_projective_points(field, num_vars):
    """Normalized representatives in lexicographic coordinate order."""
    listing = _field_listing(field)
    one = field.one
    for coords in itertools.product(listing, repeat=num_vars):
        lead = next((c for c in coords if c), None)
        if lead is None or lead != one:
            continue
        yield coords


def brute_force_zero(ideal_gens, max_ext: int = 1, ring: GradedRing = None):
    """First common zero in P_n over GF(p^e), e = 1..max_ext, or None.

    Pure enumeration; this is the independent oracle for the certificate
    route and never touches the Groebner machinery.
    """
    if ring is None:
        ring = ideal_gens[0].ring
    base = ring.field
    if not base.is_finite:
        raise UnsupportedField("brute force needs a finite field")
    p = base.char
    if base.order != p:
        raise UnsupportedField("brute force enumerates extensions of a prime field")
    for e in range(1, max_ext + 1):
        field = base if e == 1 else default_extension(p, e)
        for coords in enumerate_projective_points(field, ring.num_vars):
            if all(not f.evaluate(list(coords)) for f in ideal_gens):
                return ProjectivePoint.normalized(field, coords)
    return None


@dataclass(frozen=True)
class NullstellensatzResult:
    status: str  # "saturated", "zero", or "algebra" (over Q)
    point: ProjectivePoint = None
    certificate: CartierTateCertificate = None
    algebra: FiniteAlgebraPresentation = None
    non_nilpotency_witness: tuple = None


def nullstellensatz(ideal_gens, ring: GradedRing = None,
                    seed: int = 0) -> NullstellensatzResult:
    """Saturated verdict, or a verified projective zero over a finite extension.

    Over Q the search stops at the finite-dimensional algebra certificate
    with a non-nilpotency witness instead of an algebraic-number point.
    """
    if ring is None:
        if not ideal_gens:
            raise ValueError("need a ring for the empty ideal")
        ring = ideal_gens[0].ring
    for f in ideal_gens:
        require_homogeneous(f, "ideal generator")
    M = GradedModule.cyclic(ring, ideal_gens)
    if classify_length(M).is_short:
        return NullstellensatzResult(status="saturated")
    cert = run_theorem(M)
    alg = algebra_from_certificate(cert)
    if not ring.field.is_finite:
        # power chain of the x-image staying equal to the unit
        witness = tuple(alg.unit for _ in range(3))
        chain = alg.distinguished_images[cert.x_index]
        for w in witness:
            if chain != w:
                raise InternalInconsistency("x-image power chain left the unit")
            chain = alg.multiply(chain, alg.distinguished_images[cert.x_index])
        return NullstellensatzResult(status="algebra", certificate=cert,
                                     algebra=alg, non_nilpotency_witness=witness)
    pt = maximal_ideal_point(alg, seed=seed)
    if not verify_zero(ideal_gens, pt):
        raise InternalInconsistency(
            "certificate-produced point failed verification")
    return NullstellensatzResult(status="zero", point=pt, certificate=cert,
                                 algebra=alg)
