"""Verification toolkit for truncated Kac-Moody Sylow models.

Classify generalized Cartan matrices, enumerate roots, build truncated
positive parts of Serre-presented Lie algebras, and verify group-theoretic
predictions (Frattini quotients, generation, filtrations, Tits axioms) in
two finite models: truncated BCH groups over F_q and congruence-filtered
special linear groups over F_q[t]/(t^k).
"""

from .affine import (
    AffineMatrixGroup,
    TruncatedPolyRing,
    borel_subgroup,
    commutator_identity_check,
    congruence_subgroup,
    enumerate_special_linear,
    frattini_dimension_affine,
    iwahori_sylow_membership,
    monomial_subgroup,
    sylow_generators,
    sylow_order,
    sylow_table,
    verify_generation,
    weyl_representatives,
)
from .bch import bch_lyndon_terms
from .errors import (
    AsymmetricZero,
    ChainNotNested,
    CharacteristicTooSmall,
    DiagonalNotTwo,
    EnumerationCapExceeded,
    GcmError,
    HeightExceedsCutoff,
    HypothesisViolated,
    KmError,
    NotAPGroup,
    NotPositiveRealRoot,
    NotRealRoot,
    PositiveOffDiagonal,
    TruncationTooShallow,
    UnknownLabel,
    ZeroVector,
)
from .fields import FqConfig, PrimeField, RationalField
from .gcm import GcmType, GeneralizedCartanMatrix, classify, validate_gcm
from .lie import GradedLieAlgebra, bracket, build_positive_part, root_multiplicity
from .pgroup import (
    FiniteGroupTable,
    GroupOracle,
    check_filtration_lemma,
    closure,
    derived_subgroup,
    frattini_quotient_dimension,
    frattini_subgroup,
    is_perfect,
    normal_closure,
    orders_are_p_powers,
    subgroup_index,
    verify_tits_axioms,
)
from .roots import (
    IMAGINARY,
    NOT_ROOT,
    REAL,
    RootVector,
    is_prenilpotent_pair,
    positive_real_roots_up_to_height,
    positive_roots_up_to_height,
    root_status,
    roots_to_json,
    simple_root,
    weyl_apply,
)
from .unipotent import (
    UnipotentModel,
    bch_multiply,
    frattini_dimension_linear,
    height_filtration,
    root_group_element,
    standard_generators,
    verify_theorem1,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMatrixGroup",
    "AsymmetricZero",
    "ChainNotNested",
    "CharacteristicTooSmall",
    "DiagonalNotTwo",
    "EnumerationCapExceeded",
    "FiniteGroupTable",
    "FqConfig",
    "GcmError",
    "GcmType",
    "GeneralizedCartanMatrix",
    "GradedLieAlgebra",
    "GroupOracle",
    "HeightExceedsCutoff",
    "HypothesisViolated",
    "IMAGINARY",
    "KmError",
    "NOT_ROOT",
    "NotAPGroup",
    "NotPositiveRealRoot",
    "NotRealRoot",
    "PositiveOffDiagonal",
    "PrimeField",
    "RationalField",
    "REAL",
    "RootVector",
    "TruncatedPolyRing",
    "TruncationTooShallow",
    "UnipotentModel",
    "UnknownLabel",
    "ZeroVector",
    "bch_lyndon_terms",
    "bch_multiply",
    "borel_subgroup",
    "bracket",
    "build_positive_part",
    "check_filtration_lemma",
    "classify",
    "closure",
    "commutator_identity_check",
    "congruence_subgroup",
    "derived_subgroup",
    "enumerate_special_linear",
    "frattini_dimension_affine",
    "frattini_dimension_linear",
    "frattini_quotient_dimension",
    "frattini_subgroup",
    "height_filtration",
    "is_perfect",
    "is_prenilpotent_pair",
    "iwahori_sylow_membership",
    "monomial_subgroup",
    "normal_closure",
    "orders_are_p_powers",
    "positive_real_roots_up_to_height",
    "positive_roots_up_to_height",
    "root_group_element",
    "root_multiplicity",
    "root_status",
    "roots_to_json",
    "simple_root",
    "standard_generators",
    "subgroup_index",
    "sylow_generators",
    "sylow_order",
    "sylow_table",
    "validate_gcm",
    "verify_generation",
    "verify_theorem1",
    "verify_tits_axioms",
    "weyl_apply",
    "weyl_representatives",
]
