"""Exact computations with triangular matrix algebras, tilting complexes and mates."""
from .linalg import GF, QQ
from .algebra import (
    Algebra,
    Bimodule,
    ProjectiveModule,
    RightModule,
    dual_bimodule,
    dual_regular_module,
    path_algebra,
    regular_module,
    simple_module,
    truncated_polynomial,
)
from .triangular import TriangularData, TripleModule, build_triangular, verify_gluing
from .homological import ext_groups, global_dimension, is_tilting_module, projective_resolution
from .mate import (
    build_tilting_complex,
    certify,
    check_hypotheses,
    end_ring_identification,
    mate_artin,
    mate_general,
    mate_projective,
    verify_tilting_complex,
)
from .invariants import cartan_matrix, congruent_over_Z, repetitive_shift_isomorphism, trivial_extension

__version__ = "0.1.0"
