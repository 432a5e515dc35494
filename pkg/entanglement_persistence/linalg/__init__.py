"""稠密复线性代数模块

提供多体量子态数据模型、部分迹/部分转置、厄米特征分解和随机采样。
"""

from entanglement_persistence.linalg.model import (
    MAX_HILBERT_DIM,
    ComplexMatrix,
    MultipartiteState,
    SubsetLike,
    as_matrix,
    check_hermitian,
    check_hilbert_dim,
    default_labels,
)
from entanglement_persistence.linalg.ops import (
    DEFAULT_SOLVER,
    EigenSolver,
    clamp_eigenvalues,
    hermitian_eigenvalues,
    hermitian_eigh,
    jacobi_eigh,
    kron,
    marginal,
    partial_trace,
    partial_transpose,
    trace_norm,
    trace_power,
)
from entanglement_persistence.linalg.random import (
    apply_local_unitaries,
    make_rng,
    random_local_unitaries,
    random_mixed_state,
    random_pure_state,
    random_unitary,
)

__all__ = [
    "ComplexMatrix",
    "MultipartiteState",
    "SubsetLike",
    "MAX_HILBERT_DIM",
    "as_matrix",
    "check_hermitian",
    "check_hilbert_dim",
    "default_labels",
    "DEFAULT_SOLVER",
    "EigenSolver",
    "clamp_eigenvalues",
    "hermitian_eigenvalues",
    "hermitian_eigh",
    "jacobi_eigh",
    "kron",
    "marginal",
    "partial_trace",
    "partial_transpose",
    "trace_norm",
    "trace_power",
    "apply_local_unitaries",
    "make_rng",
    "random_local_unitaries",
    "random_mixed_state",
    "random_pure_state",
    "random_unitary",
]
