"""Exact engine for graded rings and modules over polynomial rings.

Decides simple grading and finite generation, verifies Krull's intersection
theorem on finite-dimensional algebras, runs the finiteness construction
producing a non-saturated submodule with finite-dimensional quotient,
and extracts projective zeros of non-saturated homogeneous ideals.
"""

from .coeff import (
    QQ,
    ExtensionField,
    Field,
    FieldElement,
    PrimeField,
    UniPoly,
    default_extension,
    extend_field,
    factor_squarefree_unipoly,
    is_irreducible,
    parse_field,
)
from .poly import GradedRing, MonomialOrder, Polynomial
from .groebner import (
    FreeModule,
    GroebnerBasis,
    HilbertData,
    ModuleElement,
    buchberger,
    ideal_basis,
    module_product_basis,
)
from .graded import (
    GradedModule,
    SubmodulePresentation,
    check_simple_grading,
    classify_length,
    is_saturated,
    minimal_generator_degrees,
    product_submodule,
    quotient_module,
)
from .cartier import (
    CartierTateCertificate,
    colimit_quotient,
    dichotomy_check,
    find_maximal_b,
    nonsaturation_certificate,
    run_theorem,
)
from .zeros import (
    FiniteAlgebraPresentation,
    ProjectivePoint,
    algebra_from_certificate,
    brute_force_zero,
    maximal_ideal_point,
    nullstellensatz,
    verify_zero,
)
from .krull import FiniteAlgebra, Subspace, ideal_generate, krull_check, stable_intersection

__version__ = "0.1.0"
