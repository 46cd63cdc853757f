"""locmat: exact-arithmetic checks for unital locally matrix algebras.

The library verifies, at finite desk scale, when the quotient Lie algebra
A / F*1 of a unital locally matrix algebra is simple and when its derivation
algebra is topologically simple, as a function of the ground field's
characteristic and the algebra's Steinitz number.  Every ingredient is an
exact computation over Q or a prime field: Steinitz arithmetic, trace-zero
subspaces, Kronecker decompositions, Lie ideal closures, derivation-space
kernels, and per-level witnesses on divisibility towers.
"""

from .steinitz import INF, ONE, SteinitzNumber, is_prime, lcm_all
from .fields import (
    Field,
    FieldElement,
    GF,
    PrimeField,
    Q,
    RationalField,
    field_for_characteristic,
    parse_field_label,
)
from .matrices import (
    Matrix,
    commutator,
    embed_unital,
    identity,
    kron,
    matrix_unit,
    random_matrix,
    zeros,
)
from .subspaces import (
    DEFAULT_RNG_SEED,
    EvidenceReport,
    MatSubspace,
    centralizer_of_embedded,
    commutator_subspace,
    default_evidence_seeds,
    lie_ideal_closure,
    plus_scalars,
    scalar_line,
    simplicity_evidence,
    sl,
    span,
)
from .derivations import (
    DerivationSpace,
    MatrixOperator,
    SplitReport,
    ad,
    central_on_commutators,
    der_equals_inder,
    derivation_space,
    inner_derivation_space,
    split_feasibility,
)
from .towers import (
    AbsorptionReport,
    NonmembershipReport,
    Tower,
    TowerElement,
    absorption_witness,
    in_commutator_plus_scalars,
    nonmembership_witness,
)
from .criteria import (
    CatalogEntry,
    CrossValidationReport,
    Reason,
    SimplicityVerdict,
    Subject,
    UnsupportedCharacteristicError,
    cross_validate,
    decide_derivations,
    decide_inner_derivations,
    decide_quotient_simplicity,
    default_catalog_path,
    load_catalog,
    run_catalog,
)

__version__ = "0.1.0"

__all__ = [
    "INF", "ONE", "SteinitzNumber", "is_prime", "lcm_all",
    "Field", "FieldElement", "GF", "PrimeField", "Q", "RationalField",
    "field_for_characteristic", "parse_field_label",
    "Matrix", "commutator", "embed_unital", "identity", "kron", "matrix_unit",
    "random_matrix", "zeros",
    "DEFAULT_RNG_SEED", "EvidenceReport", "MatSubspace", "centralizer_of_embedded",
    "commutator_subspace", "default_evidence_seeds", "lie_ideal_closure",
    "plus_scalars", "scalar_line", "simplicity_evidence", "sl", "span",
    "DerivationSpace", "MatrixOperator", "SplitReport", "ad",
    "central_on_commutators", "der_equals_inder", "derivation_space",
    "inner_derivation_space", "split_feasibility",
    "AbsorptionReport", "NonmembershipReport", "Tower", "TowerElement",
    "absorption_witness", "in_commutator_plus_scalars", "nonmembership_witness",
    "CatalogEntry", "CrossValidationReport", "Reason", "SimplicityVerdict",
    "Subject", "UnsupportedCharacteristicError", "cross_validate",
    "decide_derivations", "decide_inner_derivations", "decide_quotient_simplicity",
    "default_catalog_path", "load_catalog", "run_catalog",
]
