"""Exact Morita-equivalence invariants of noncommutative tori and twisted
group algebras of finitely generated abelian groups."""

from .exactlin import (
    IncompatibleField,
    IntLattice,
    NotADirectSummand,
    Scalar,
    extend_summand_basis,
    hnf,
    int_det,
    integral_solution_lattice,
    saturate,
    scalar_sign,
    snf,
)
from .hyperlattice import (
    CompatibleBasis,
    IsotropicSubspace,
    NotIsotropic,
    NotSaturated,
    choose_sign_vector,
    complete_isotropic_basis,
    pairing,
    select_transversal,
)
from .reduction import (
    ONN_MINUS,
    ONN_NO,
    ONN_SO,
    ActionUndefined,
    CanonicalForm,
    ONNElement,
    SkewMatrix,
    act,
    canonical_form,
    compose,
    inverse,
    is_in_onn,
)
from .invariants import (
    DEFAULT_SEARCH_HEIGHT,
    TraceRange,
    Verdict,
    degeneracy_subgroup,
    k_group_ranks,
    morita_equivalent,
    ordered_k0_isomorphic,
    pfaffian,
    pfaffian_from_matchings,
    range_equal_up_to_scaling,
    trace_range,
)
from .twisted import (
    Bicharacter,
    FgGroup,
    InvalidBicharacter,
    hsigma,
    k_group_ranks_tga,
    morita_equivalent_tga,
    normalize_cocycle,
    simple_quotient,
    trace_range_tga,
)

__all__ = [
    "ActionUndefined",
    "Bicharacter",
    "CanonicalForm",
    "CompatibleBasis",
    "DEFAULT_SEARCH_HEIGHT",
    "FgGroup",
    "IncompatibleField",
    "IntLattice",
    "InvalidBicharacter",
    "IsotropicSubspace",
    "NotADirectSummand",
    "NotIsotropic",
    "NotSaturated",
    "ONNElement",
    "ONN_MINUS",
    "ONN_NO",
    "ONN_SO",
    "Scalar",
    "SkewMatrix",
    "TraceRange",
    "Verdict",
    "act",
    "canonical_form",
    "choose_sign_vector",
    "complete_isotropic_basis",
    "compose",
    "degeneracy_subgroup",
    "extend_summand_basis",
    "hnf",
    "hsigma",
    "int_det",
    "integral_solution_lattice",
    "inverse",
    "is_in_onn",
    "k_group_ranks",
    "k_group_ranks_tga",
    "morita_equivalent",
    "morita_equivalent_tga",
    "normalize_cocycle",
    "ordered_k0_isomorphic",
    "pairing",
    "pfaffian",
    "pfaffian_from_matchings",
    "range_equal_up_to_scaling",
    "saturate",
    "scalar_sign",
    "select_transversal",
    "simple_quotient",
    "snf",
    "trace_range",
    "trace_range_tga",
]
