"""Finitely presented graded modules: simple-grading detection, short/long
classification, saturation, and product submodules B*M.

A GradedModule is a free graded module modulo a homogeneous relation
submodule, backed by a reduced Groebner basis computed eagerly together
with its Hilbert data.  "Sufficiently large k" statements are decided via
the exact stabilization degree plus the presentation bound, double-checked
over a probe window.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import InhomogeneousInput, InternalInconsistency
from .groebner import (
    FreeModule,
    GroebnerBasis,
    ModuleElement,
    buchberger,
    module_product_basis,
)
from .poly import GradedRing, Polynomial, require_homogeneous

DEFAULT_PROBE = 5


class GradedModule:
    """M = F^r(shifts) / (relations), with cached Groebner and Hilbert data."""

    def __init__(self, ring: GradedRing, generator_degrees=(0,), relations=()):
        self.ring = ring
        self.generator_degrees = tuple(generator_degrees)
        self.free = FreeModule(ring, self.generator_degrees)
        rels = []
        for r in relations:
            if isinstance(r, Polynomial):
                r = self.free.from_polynomial(r)
            if r.module != self.free:
                r = self.free.element(r.comps)
            if not r.is_homogeneous():
                raise InhomogeneousInput(f"relation {r!r} is not homogeneous")
            rels.append(r)
        self.relations = tuple(rels)
        self.groebner: GroebnerBasis = buchberger(rels, self.free)
        self.hilbert = self.groebner.hilbert_data()

    @classmethod
    def cyclic(cls, ring: GradedRing, ideal_gens=()) -> "GradedModule":
        """M = S/J for a homogeneous ideal J."""
        for f in ideal_gens:
            require_homogeneous(f, "ideal generator")
        return cls(ring, (0,), tuple(ideal_gens))

    @classmethod
    def free_module(cls, ring: GradedRing, degrees=(0,)) -> "GradedModule":
        return cls(ring, degrees, ())

    @property
    def is_cyclic(self) -> bool:
        return self.generator_degrees == (0,)

    def component(self, k: int):
        """F-basis of M_k as (position, monomial) standard pairs."""
        return self.groebner.component_basis(k)

    def dim(self, k: int) -> int:
        if k < 0:
            return 0
        return self.hilbert.function(k)

    def element(self, comps) -> ModuleElement:
        return self.free.element(comps)

    def from_polynomial(self, f: Polynomial) -> ModuleElement:
        return self.free.from_polynomial(f)

    def coordinates(self, v: ModuleElement, k: int, basis=None):
        return self.groebner.coordinates(v, k, basis)

    def presentation_bound(self) -> int:
        return max(self.generator_degrees, default=0)

    def s1_image_rows(self, k: int):
        """rref rows of S_1 * M_k inside the component basis of degree k+1."""
        rows, pivots, _ = module_product_basis(self.ring.variables(),
                                               self.groebner, k)
        return rows, pivots

    def __repr__(self):
        if self.is_cyclic:
            return f"GradedModule({self.ring}/{len(self.relations)} rels)"
        return (f"GradedModule(degrees={list(self.generator_degrees)}, "
                f"{len(self.relations)} rels)")


class SubmodulePresentation:
    """Graded submodule of a parent module, given by homogeneous generators."""

    def __init__(self, parent: GradedModule, generators):
        self.parent = parent
        self.generators = tuple(generators)
        self._quotient = None
        for g in self.generators:
            if g.module != self.parent.free:
                raise InhomogeneousInput("generator lives in a different module")
            if not g.is_homogeneous():
                raise InhomogeneousInput(f"submodule generator {g!r} not homogeneous")

    def quotient(self) -> GradedModule:
        if self._quotient is None:
            self._quotient = quotient_module(self.parent, self)
        return self._quotient

    def dim(self, k: int) -> int:
        return self.parent.dim(k) - self.quotient().dim(k)

    def __repr__(self):
        return f"SubmodulePresentation({len(self.generators)} gens)"


@dataclass(frozen=True)
class SimpleGradingReport:
    first_simple_degree: int
    verified_through: int


def check_simple_grading(M: GradedModule, probe_extent: int = DEFAULT_PROBE
                         ) -> SimpleGradingReport:
    """Least certified degree k0 with S_1 * M_k = M_{k+1} for all k >= k0.

    For a finitely presented module, equality from the presentation bound on
    is a theorem (every element of higher degree is a positive-degree
    multiple of the generators), so checking through the probe window past
    max(presentation bound, stabilization) certifies it for all k.  A
    mismatch beyond the presentation bound is a bug, not a finding.
    """
    if probe_extent < 1:
        raise ValueError("probe_extent must be >= 1")
    bound = M.presentation_bound()
    top = max(bound, M.hilbert.stabilization_degree) + probe_extent
    equal = []
    for k in range(top + 1):
        rows, _ = M.s1_image_rows(k)
        equal.append(len(rows) == M.dim(k + 1))
    first = None
    run_ok = True
    for k in range(top, -1, -1):
        if not equal[k]:
            run_ok = False
            break
        if k <= bound:
            first = k
    if not run_ok and first is None:
        # simple grading must start at or before the presentation bound
        raise InternalInconsistency(
            f"no simple-grading onset <= presentation bound {bound}; "
            f"dimension data {equal}")
    if first is None:
        raise InternalInconsistency(
            f"simple grading not certified within bound {bound}")
    return SimpleGradingReport(first_simple_degree=first, verified_through=top)


def minimal_generator_degrees(M: GradedModule):
    """Multiset of degrees where M needs new generators over S.

    Degree k contributes dim M_k - dim(S_1 * M_{k-1}) generators; finite
    because the grading becomes simple at the presentation bound.
    """
    report = check_simple_grading(M)
    out = []
    if M.dim(0):
        out.extend([0] * M.dim(0))
    for k in range(1, report.first_simple_degree + 1):
        rows, _ = M.s1_image_rows(k - 1)
        gap = M.dim(k) - len(rows)
        if gap < 0:
            raise InternalInconsistency("S_1-image larger than the component")
        out.extend([k] * gap)
    return out


@dataclass(frozen=True)
class LengthReport:
    kind: str  # "short" or "long"
    nonzero_from: int = None  # long + simply graded case only
    zero_from: int = None  # short case: all components vanish from here

    @property
    def is_short(self):
        return self.kind == "short"


def classify_length(M: GradedModule) -> LengthReport:
    """Short iff the components are eventually all zero; exact, not sampled."""
    hd = M.hilbert
    if hd.is_eventually_zero():
        d = hd.stabilization_degree
        while d > 0 and hd.function(d - 1) == 0:
            d -= 1
        return LengthReport(kind="short", zero_from=d)
    return LengthReport(kind="long", nonzero_from=hd.nonzero_from())


@dataclass(frozen=True)
class SaturationReport:
    saturated: bool
    contains_from: int = None  # degree from which M_j is inside N
    quotient_polynomial: tuple = None  # Hilbert polynomial of M/N when long


def is_saturated(N: SubmodulePresentation) -> SaturationReport:
    """A graded submodule is saturated iff the quotient module is short."""
    length = classify_length(N.quotient())
    if length.is_short:
        return SaturationReport(saturated=True, contains_from=length.zero_from)
    return SaturationReport(
        saturated=False,
        quotient_polynomial=tuple(N.quotient().hilbert.hilbert_polynomial))


def product_submodule(B, M: GradedModule) -> SubmodulePresentation:
    """N with N_0 = 0 and N_{k+1} = B*M_k, presented by {b*e_i}.

    The per-degree identity against module_product_basis is a tested
    invariant, not recomputed here.
    """
    gens = []
    for b in B:
        d = require_homogeneous(b, "product generator")
        if b and d != 1:
            raise InhomogeneousInput(f"generator {b!r} must have degree 1")
        for i in range(M.free.rank):
            gens.append(M.free.generator(i) * b)
    return SubmodulePresentation(parent=M, generators=tuple(gens))


def quotient_module(M: GradedModule, N: SubmodulePresentation) -> GradedModule:
    """M/N presented on the same free generators with concatenated relations."""
    if N.parent is not M and N.parent.free != M.free:
        raise InhomogeneousInput("submodule of a different module")
    return GradedModule(M.ring, M.generator_degrees,
                        M.relations + N.generators)
