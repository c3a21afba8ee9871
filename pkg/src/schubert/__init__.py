"""Schubert polynomials, balanced super labelings, Schubert functors and complexes."""

from .complex import (
    ChainComplex, FlaggedMap, LinearForm, build_complex, cokernel_fiber_rank,
    euler_characteristic, homology_ranks, term_ranks, verify_dd_zero,
)
from .functor import FunctorImage, build_functor_image, graded_character, phi, straighten
from .ideal import (
    MinorDescriptor, expected_codimension, fulton_class, ideal_generators, locus_membership,
)
from .linalg import PrimeField, Rationals
from .perm import (
    Permutation, all_permutations, border_cells, diagram, index, length, maximal_transition,
    rank_function, southeast_corners, strong_leq, weak_leq,
)
from .poly import SparsePoly, divided_difference, double_schubert, single_schubert, substitute
from .superlabel import (
    Labeling, bsl_generating_function, enumerate_bsl, factor_bsl, is_balanced, is_bsl, star,
)

__version__ = "0.1.0"
