"""Asymmetric quantum convolutional codes from nested classical codes.

The package builds classical convolutional codes by splitting parity-check
matrices of cyclic and generalized Reed-Solomon block codes, assembles
CSS-type stabilizer matrices from nested pairs, and certifies every
algebraic claim (ranks, degrees, containment, symplectic orthogonality,
distance bounds) by exact computation over small finite fields.
"""

from .block import (
    BlockCode,
    CyclicStructure,
    DistanceBound,
    GrsCode,
    bch_parity,
    cyclic_structure,
    grs_build,
    rs_parity,
)
from .certify import (
    AqccCertificate,
    Budgets,
    build_construction_i,
    build_construction_ii,
    build_construction_iii_grs,
    build_construction_iii_rs,
    certify_params,
    certify_plan,
)
from .convo import (
    PolyMatrix,
    contains,
    degree_accounting,
    dual_generator,
    format_poly_matrix,
    is_basic,
    is_reduced,
    parse_poly_matrix,
    rank_poly,
    reduce,
    smith_form,
    split_to_generator,
)
from .css import (
    AqccParameters,
    NestedPair,
    StabilizerMatrix,
    assemble_stabilizer,
    build_nested_pair,
    check_symplectic,
    derive_aqcc,
    semi_infinite_expand,
    symplectic_residual,
)
from .errors import AqccError
from .families import (
    FAMILIES,
    ExpectedTuple,
    FamilyParams,
    LayoutPlan,
    construction_i_plan,
    demo_vectors,
    enumerate_family,
    expected_tuple,
    layout,
    validate_params,
)
from .gf import FiniteField, SubfieldBasis
from .matrix import MatrixGF, field_from_order
from .trellis import FreeDistanceResult, free_distance

__version__ = "0.1.0"

__all__ = [
    "AqccCertificate",
    "AqccError",
    "AqccParameters",
    "BlockCode",
    "Budgets",
    "CyclicStructure",
    "DistanceBound",
    "ExpectedTuple",
    "FAMILIES",
    "FamilyParams",
    "FiniteField",
    "FreeDistanceResult",
    "GrsCode",
    "LayoutPlan",
    "MatrixGF",
    "NestedPair",
    "PolyMatrix",
    "StabilizerMatrix",
    "SubfieldBasis",
    "assemble_stabilizer",
    "bch_parity",
    "build_construction_i",
    "build_construction_ii",
    "build_construction_iii_grs",
    "build_construction_iii_rs",
    "build_nested_pair",
    "certify_params",
    "certify_plan",
    "check_symplectic",
    "construction_i_plan",
    "contains",
    "cyclic_structure",
    "degree_accounting",
    "demo_vectors",
    "derive_aqcc",
    "dual_generator",
    "enumerate_family",
    "expected_tuple",
    "field_from_order",
    "format_poly_matrix",
    "free_distance",
    "grs_build",
    "is_basic",
    "is_reduced",
    "layout",
    "parse_poly_matrix",
    "rank_poly",
    "reduce",
    "rs_parity",
    "semi_infinite_expand",
    "smith_form",
    "split_to_generator",
    "symplectic_residual",
    "validate_params",
    "__version__",
]
