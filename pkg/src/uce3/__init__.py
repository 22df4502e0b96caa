"""Exact universal central extensions for perfect Lie, Leibniz, and Lie
triple systems, with a machine check that the three constructions agree the
way the characteristic predicts."""

from .errors import (
    AxiomPrecondition,
    DimensionGuard,
    DimensionMismatch,
    DivisionByZero,
    FieldError,
    FieldMismatch,
    FormatError,
    InternalAssertionFailed,
    JacobiFails,
    LeibnizCheckFailed,
    ModulusTooLarge,
    NonPrimeModulus,
    NotCentral,
    NotEquivariant,
    NotLeibniz,
    NotLie,
    NotLts,
    NotOverSameBase,
    NotPerfect,
    SemanticError,
    Uce3Error,
    UnknownAlgebra,
    WellDefinednessFailed,
    WrongCategory,
    ZActionNontrivial,
)
from .fields import QQ, Field, PrimeField, Rationals, field_of
from .linalg import (
    Matrix,
    QuotientSpace,
    SpanAccumulator,
    Subspace,
    kernel,
    quotient,
    right_inverse,
    rref,
    set_gf2_packed_default,
    solve_columns,
    span_incremental,
)
from .algebra import (
    BinaryAlgebra,
    BinaryFlags,
    ModuleAction,
    TernaryAlgebra,
    TernaryFlags,
    canonical_wedge_action,
    check_binary,
    check_ternary,
    derived_lts,
    equivariant_leibniz,
    tensor_leibniz,
    verify_action,
)
from .catalog import catalog, catalog_names
from .serialize import (
    algebra_from_dict,
    algebra_to_dict,
    dumps_algebra,
    load_algebra,
    loads_algebra,
)
from .uce import (
    CentralExtension,
    HomologyReport,
    UceResult,
    homology,
    leibniz_uce,
    lie_uce,
    lts_tensor_cube,
    universal_map,
)
from .theorem import (
    LeibnizStructureCertificate,
    TheoremReport,
    induced_leibniz_structure,
    jacobiator_subspace,
    symmetric_subspace,
    verify_jacobiator_doubling,
    verify_main_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "QQ",
    "Field",
    "PrimeField",
    "Rationals",
    "field_of",
    "Matrix",
    "QuotientSpace",
    "SpanAccumulator",
    "Subspace",
    "kernel",
    "quotient",
    "right_inverse",
    "rref",
    "set_gf2_packed_default",
    "solve_columns",
    "span_incremental",
    "BinaryAlgebra",
    "TernaryAlgebra",
    "BinaryFlags",
    "TernaryFlags",
    "ModuleAction",
    "check_binary",
    "check_ternary",
    "derived_lts",
    "tensor_leibniz",
    "canonical_wedge_action",
    "verify_action",
    "equivariant_leibniz",
    "catalog",
    "catalog_names",
    "algebra_from_dict",
    "algebra_to_dict",
    "loads_algebra",
    "dumps_algebra",
    "load_algebra",
    "CentralExtension",
    "UceResult",
    "HomologyReport",
    "leibniz_uce",
    "lie_uce",
    "lts_tensor_cube",
    "homology",
    "universal_map",
    "LeibnizStructureCertificate",
    "TheoremReport",
    "induced_leibniz_structure",
    "jacobiator_subspace",
    "symmetric_subspace",
    "verify_jacobiator_doubling",
    "verify_main_theorem",
    "Uce3Error",
    "FieldError",
    "NonPrimeModulus",
    "ModulusTooLarge",
    "DivisionByZero",
    "FieldMismatch",
    "DimensionMismatch",
    "FormatError",
    "SemanticError",
    "UnknownAlgebra",
    "AxiomPrecondition",
    "NotLie",
    "NotLeibniz",
    "NotLts",
    "JacobiFails",
    "NotPerfect",
    "DimensionGuard",
    "NotEquivariant",
    "NotCentral",
    "NotOverSameBase",
    "WrongCategory",
    "WellDefinednessFailed",
    "InternalAssertionFailed",
    "ZActionNontrivial",
    "LeibnizCheckFailed",
]
