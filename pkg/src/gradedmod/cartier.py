"""The finiteness construction: from a long, simply graded module M produce
a non-saturated submodule L with dim_F(M/L) finite, certifying every stage.

Pipeline: grow a maximal variable subset B whose product submodule leaves
the quotient long, pick the flip variable x, form P = M/(B*M), realize the
direct limit P_0 -> P_1 -> ... under multiplication by x as P_D (x becomes
bijective from the colimit degree D on), and read off P/(1-x)P as P_D with
explicit transport maps.  The non-saturation witness is any class with
nonzero transport: no power of x kills it, so it cannot lie in (1-x)P.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import (
    HypothesisViolated,
    InternalInconsistency,
    PIsShort,
    PreconditionUnmet,
)
from .graded import (
    DEFAULT_PROBE,
    GradedModule,
    SubmodulePresentation,
    check_simple_grading,
    classify_length,
    product_submodule,
)
from .groebner import ModuleElement, module_product_basis
from .poly import Polynomial


@dataclass(frozen=True)
class DichotomyVerdict:
    kind: str  # "eventually_equal" or "eventually_smaller"
    from_degree: int

    @property
    def eventually_equal(self):
        return self.kind == "eventually_equal"


def dichotomy_check(M: GradedModule, B) -> DichotomyVerdict:
    """For N = B*M, decide which side of the dichotomy holds and from where.

    Either N_k = M_k for all k >= from_degree, or N_k is strictly smaller
    for all k >= from_degree; no mixed verdicts exist for simply graded M.
    """
    N = product_submodule(B, M)
    length = classify_length(N.quotient())
    if length.is_short:
        return DichotomyVerdict("eventually_equal", length.zero_from)
    return DichotomyVerdict("eventually_smaller", length.nonzero_from)


def find_maximal_b(M: GradedModule):
    """Greedy maximal B in fixed variable order, plus the flip element x.

    A variable joins B only if the quotient M/(B*M) stays long; by
    monotonicity every variable outside the final B flips the quotient to
    short, which is exactly the maximality of step-by-step growth.
    Returns (B, x, x_index).
    """
    if classify_length(M).is_short:
        raise HypothesisViolated("M is short; the construction needs a long module")
    variables = M.ring.variables()
    if not variables:
        raise HypothesisViolated("S_1 = 0 with M long contradicts the hypotheses")
    B = []
    for v in variables:
        verdict = dichotomy_check(M, B + [v])
        if not verdict.eventually_equal:
            B.append(v)
    if len(B) == len(variables):
        raise InternalInconsistency(
            "all variables kept the quotient long, but B = A must give a "
            "short quotient for a simply graded long module")
    x_index = next(i for i, v in enumerate(variables) if v not in B)
    return tuple(B), variables[x_index], x_index


class ColimitData:
    """Direct limit of P_0 -x-> P_1 -x-> ... realized as P_D.

    From degree D on, multiplication by x is a bijection between components
    of constant dimension; the quotient P/(1-x)P is identified with P_D and
    transport sends a class in P_k to x^(D-k) of it (inverting x above D).
    """

    def __init__(self, P: GradedModule, x: Polynomial, D: int, verified_through: int):
        self.P = P
        self.x = x
        self.D = D
        self.verified_through = verified_through
        self.basis = P.component(D)
        self._bases = {D: self.basis}
        self._matrices = {}

    def component_basis(self, k):
        b = self._bases.get(k)
        if b is None:
            b = self.P.component(k)
            self._bases[k] = b
        return b

    def x_matrix(self, k):
        """Rows: coordinates of x*b in degree k+1, one per basis vector of P_k."""
        mat = self._matrices.get(k)
        if mat is None:
            target = self.component_basis(k + 1)
            gb = self.P.groebner
            mat = [gb.coordinates(gb.element_from_coordinates(
                _unit_coords(self.P, i, len(self.component_basis(k))),
                self.component_basis(k)) * self.x, k + 1, target)
                for i in range(len(self.component_basis(k)))]
            self._matrices[k] = mat
        return mat

    def transport_coords(self, coords, k):
        """Image in P_D of a coordinate vector over the degree-k basis."""
        field = self.P.ring.field
        coords = list(coords)
        while k < self.D:
            mat = self.x_matrix(k)
            target_len = len(self.component_basis(k + 1))
            out = [field.zero] * target_len
            for c, row in zip(coords, mat):
                if c:
                    out = [a + c * b for a, b in zip(out, row)]
            coords = out
            k += 1
        while k > self.D:
            sol = linalg.solve(self.x_matrix(k - 1), coords)
            if sol is None:
                raise InternalInconsistency(
                    f"x-multiplication not surjective onto degree {k}")
            coords = sol
            k -= 1
        return coords

    def transport(self, v: ModuleElement):
        """Class in P_D of an arbitrary element of P (sum over degrees)."""
        field = self.P.ring.field
        total = [field.zero] * len(self.basis)
        for k, piece in _split_by_degree(self.P, v).items():
            coords = self.P.coordinates(piece, k, self.component_basis(k))
            moved = self.transport_coords(coords, k)
            total = [a + b for a, b in zip(total, moved)]
        return total


def _unit_coords(P, i, n):
    field = P.ring.field
    return [field.one if j == i else field.zero for j in range(n)]


def _split_by_degree(P: GradedModule, v: ModuleElement):
    """Homogeneous pieces of a possibly inhomogeneous module element."""
    out = {}
    for pos, comp in enumerate(v.comps):
        for d, part in comp.homogeneous_components().items():
            deg = d + P.generator_degrees[pos]
            bucket = out.get(deg)
            if bucket is None:
                comps = [P.ring.zero] * P.free.rank
                bucket = comps
                out[deg] = bucket
            bucket[pos] = bucket[pos] + part
    return {d: P.free.element(tuple(c)) for d, c in out.items()}


def x_surjective_from(P: GradedModule, x: Polynomial) -> int:
    """Degree from which x*P_k = P_{k+1}, certified via the quotient P/(x)P
    being short (its components vanishing from z means surjectivity from z-1)."""
    N = product_submodule([x], P)
    length = classify_length(N.quotient())
    if not length.is_short:
        raise PreconditionUnmet(
            "multiplication by x is not eventually surjective on P")
    return max(0, length.zero_from - 1)


def colimit_quotient(P: GradedModule, x: Polynomial,
                     probe: int = DEFAULT_PROBE) -> ColimitData:
    """Compute the colimit realization of P/(1-x)P with bijectivity certificates."""
    surj_from = x_surjective_from(P, x)
    D = max(P.hilbert.stabilization_degree, surj_from)
    data = ColimitData(P, x, D, D + probe)
    # certify: constant dimensions and invertible x-multiplication on the window
    dim_d = P.dim(D)
    for k in range(D, D + probe + 1):
        if P.dim(k) != dim_d:
            raise InternalInconsistency(
                f"dimension not constant past the colimit degree: "
                f"dim P_{k} = {P.dim(k)} != {dim_d}")
        if dim_d and len(linalg.rref(data.x_matrix(k))[0]) != dim_d:
            raise InternalInconsistency(
                f"x-multiplication not bijective at degree {k}")
    return data


@dataclass(frozen=True)
class NonsaturationWitness:
    degree: int
    element: ModuleElement
    transport_image: tuple
    colimit_degree: int


def nonsaturation_certificate(P: GradedModule, x: Polynomial,
                              colimit: ColimitData,
                              threshold: int = 0) -> NonsaturationWitness:
    """A class v in P_j (j >= threshold) outside (1-x)P.

    v is built with nonzero transport; bijectivity of x beyond the colimit
    degree means no power of x annihilates v, so v = (1-x)u is impossible.
    Bijectivity is permanent, so one certificate serves every threshold.
    """
    if classify_length(P).is_short:
        raise PIsShort("P has no nonzero components in large degrees")
    D = colimit.D
    j = max(threshold, D)
    field = P.ring.field
    coords = _unit_coords(P, 0, len(colimit.basis))
    # push forward to degree j: v = x^(j-D) * b_1
    v_coords = list(coords)
    for k in range(D, j):
        mat = colimit.x_matrix(k)
        out = [field.zero] * len(colimit.component_basis(k + 1))
        for c, row in zip(v_coords, mat):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        v_coords = out
    v = P.groebner.element_from_coordinates(v_coords, colimit.component_basis(j))
    image = colimit.transport_coords(v_coords, j)
    if not any(image):
        raise InternalInconsistency("witness transported to zero")
    return NonsaturationWitness(degree=j, element=v,
                                transport_image=tuple(image), colimit_degree=D)


def solve_one_minus_x(P: GradedModule, x: Polynomial, v: ModuleElement,
                      top_degree: int):
    """Try to solve v = (1-x)u with u supported in degrees <= top_degree.

    Independent linear-algebra oracle: v is in the span of (1-x)b over all
    component basis vectors b up to the top degree, or it is not.  Returns
    the combination or None.
    """
    gb = P.groebner
    bases = {k: P.component(k) for k in range(top_degree + 2)}
    offsets = {}
    total = 0
    for k in range(top_degree + 2):
        offsets[k] = total
        total += len(bases[k])
    field = P.ring.field

    def flatten(w):
        out = [field.zero] * total
        for k, piece in _split_by_degree(P, w).items():
            if k > top_degree + 1:
                return None  # outside the truncation
            coords = P.coordinates(piece, k, bases[k])
            off = offsets[k]
            for i, c in enumerate(coords):
                out[off + i] = c
        return out

    rows = []
    for k in range(top_degree + 1):
        for pos, m in bases[k]:
            b = gb.element_from_coordinates(
                _unit_coords(P, 0, 1), [(pos, m)])
            w = gb.normal_form(b - b * x)
            flat = flatten(w)
            if flat is None:
                raise InternalInconsistency("(1-x)b left the truncation")
            rows.append(flat)
    target = flatten(v)
    if target is None:
        return None
    return linalg.solve(rows, target)


@dataclass(frozen=True)
class CartierTateCertificate:
    M: GradedModule
    B: tuple  # degree-1 polynomials
    x: Polynomial
    x_index: int
    N: SubmodulePresentation
    P: GradedModule
    simple_degree_p: int
    colimit: ColimitData
    quotient_basis: tuple
    quotient_dim: int
    witness: NonsaturationWitness
    L_generators: tuple

    @property
    def colimit_degree(self):
        return self.colimit.D


def run_theorem(M: GradedModule, probe: int = DEFAULT_PROBE) -> CartierTateCertificate:
    """Full construction of the non-saturated L with finite-dimensional M/L."""
    length = classify_length(M)
    if length.is_short:
        raise HypothesisViolated("hypothesis failed: M must be a long module")
    check_simple_grading(M, probe)  # certifies the simple-grading hypothesis

    B, x, x_index = find_maximal_b(M)
    N = product_submodule(B, M)
    P = N.quotient()
    simple_p = check_simple_grading(P, probe)

    # x is eventually surjective on P, probed explicitly past the colimit degree
    colimit = colimit_quotient(P, x, probe)
    for k in range(simple_p.first_simple_degree,
                   max(simple_p.first_simple_degree, colimit.D) + probe):
        rows, _, _ = module_product_basis([x], P.groebner, k)
        if len(rows) != P.dim(k + 1):
            if k >= colimit.D:
                raise InternalInconsistency(
                    f"x-surjectivity failed at degree {k}")

    witness = nonsaturation_certificate(P, x, colimit, colimit.D)

    one = M.ring.one
    l_gens = list(N.generators)
    for i in range(M.free.rank):
        l_gens.append(M.free.generator(i) * (one - x))

    return CartierTateCertificate(
        M=M, B=B, x=x, x_index=x_index, N=N, P=P,
        simple_degree_p=simple_p.first_simple_degree,
        colimit=colimit,
        quotient_basis=tuple(colimit.basis),
        quotient_dim=len(colimit.basis),
        witness=witness,
        L_generators=tuple(l_gens),
    )
