"""熵、纠缠量与子集泛函"""

from entanglement_persistence.functionals.entropy import (
    EntropyTable,
    conditional_mutual_information,
    entropy_table,
    interaction_information,
    interaction_information_table,
    matrix_tsallis_entropy,
    mobius_transform,
    mutual_information,
    relative_entropy,
    total_correlation,
    total_correlation_as_divergence,
    total_correlation_from_interactions,
    tsallis_entropy,
)
from entanglement_persistence.functionals.functional import (
    SubsetFunctional,
    check_monotone,
    covering_pairs,
    find_monotonicity_violation,
    make_total_correlation_functional,
    require_monotone,
)
from entanglement_persistence.functionals.tangle import (
    MAX_BLOCH_QUBITS,
    BlochVector,
    bloch_vector,
    distributed_concurrence_squared,
    linear_entropy_via_bloch,
    log_negativity,
    minkowski_length,
    n_tangle_direct,
)

__all__ = [
    "EntropyTable",
    "conditional_mutual_information",
    "entropy_table",
    "interaction_information",
    "interaction_information_table",
    "matrix_tsallis_entropy",
    "mobius_transform",
    "mutual_information",
    "relative_entropy",
    "total_correlation",
    "total_correlation_as_divergence",
    "total_correlation_from_interactions",
    "tsallis_entropy",
    "SubsetFunctional",
    "check_monotone",
    "covering_pairs",
    "find_monotonicity_violation",
    "make_total_correlation_functional",
    "require_monotone",
    "MAX_BLOCH_QUBITS",
    "BlochVector",
    "bloch_vector",
    "distributed_concurrence_squared",
    "linear_entropy_via_bloch",
    "log_negativity",
    "minkowski_length",
    "n_tangle_direct",
]
