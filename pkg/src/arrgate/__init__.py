"""Congruence obstruction gate for line-arrangement combinatorics.

Checks whether proposed multiplicity counts or concrete incidence patterns
of a line arrangement survive the mod-16 odd-multiplicity congruence and
the mod-24 triple-point degree gate, verifies the obstruction independently
through exact blow-up lattice arithmetic, and enumerates all
only-triple-point incidence structures for small degrees.
"""

from .combinatorics import (
    RealizationClass,
    WeakCombinatorics,
    all_multiplicities_odd,
    classical_filters,
    feasible_count_vectors,
    line_parity_check,
    odd_multiplicity_congruence,
    pair_count_identity,
    triple_count_from_degree,
    triple_only_degree_gate,
)
from .enumeration import (
    EnumerationCertificate,
    are_isomorphic,
    canonical_form,
    enumerate_triple_systems,
)
from .errors import (
    ArrgateError,
    BudgetExceededError,
    CapExceededError,
    DegreeMismatchError,
    DimensionMismatchError,
    EvenMultiplicityError,
    HypothesisNotMetError,
    IncidenceFileError,
    NonIntegralTripleCountError,
)
from .lattice import (
    HomologyClass,
    IncidenceStructure,
    characteristic_by_pairing,
    complete_with_double_points,
    intersect,
    is_characteristic,
    lemma_km_residue,
    per_line_parity,
    self_intersection,
    signature,
    strict_transform_class,
    total_transform_sum,
    weak_combinatorics_of,
)
from .verdicts import ObstructionReport, Status, Verdict

__version__ = "0.1.0"

__all__ = [
    "ArrgateError",
    "BudgetExceededError",
    "CapExceededError",
    "DegreeMismatchError",
    "DimensionMismatchError",
    "EnumerationCertificate",
    "EvenMultiplicityError",
    "HomologyClass",
    "HypothesisNotMetError",
    "IncidenceFileError",
    "IncidenceStructure",
    "NonIntegralTripleCountError",
    "ObstructionReport",
    "RealizationClass",
    "Status",
    "Verdict",
    "WeakCombinatorics",
    "all_multiplicities_odd",
    "are_isomorphic",
    "canonical_form",
    "characteristic_by_pairing",
    "classical_filters",
    "complete_with_double_points",
    "enumerate_triple_systems",
    "feasible_count_vectors",
    "intersect",
    "is_characteristic",
    "lemma_km_residue",
    "line_parity_check",
    "odd_multiplicity_congruence",
    "pair_count_identity",
    "per_line_parity",
    "self_intersection",
    "signature",
    "strict_transform_class",
    "total_transform_sum",
    "triple_count_from_degree",
    "triple_only_degree_gate",
    "weak_combinatorics_of",
]
