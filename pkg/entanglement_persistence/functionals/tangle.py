"""多量子比特纠缠量

n-tangle、广义 Bloch 向量及其 Minkowski 长度、分布式共生度和对数负性。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np
from numpy.typing import NDArray

from entanglement_persistence.errors import NotQubitState, TooLarge
from entanglement_persistence.functionals.entropy import interaction_information
from entanglement_persistence.linalg.model import MultipartiteState, SubsetLike
from entanglement_persistence.linalg.ops import DEFAULT_SOLVER, EigenSolver, partial_transpose, trace_norm

logger = logging.getLogger(__name__)

# Bloch 向量有 4ⁿ 个分量
MAX_BLOCH_QUBITS = 8

_PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

# Tr(ρ σ_i) = Σ_{r,c} ρ[r, c] σ_i[c, r]，把 (r, c) 合并为 r·2 + c
_PAULI_TRACE_MAP = _PAULI.transpose(0, 2, 1).reshape(4, 4)


def _require_qubits(state: MultipartiteState) -> None:
    if not state.is_qubits:
        raise NotQubitState(f"需要全部为量子比特的态，得到局部维度 {state.dims}")


def n_tangle_direct(state: MultipartiteState) -> float:
    """n-tangle τ_n = Tr(ρ σ_y^{⊗n} ρ* σ_y^{⊗n})

    Raises:
        NotQubitState: 存在非量子比特子系统
    """
    _require_qubits(state)
    flip = reduce(np.kron, [_PAULI[2]] * state.n_parties)
    rho = np.asarray(state.rho)
    value = complex(np.trace(rho @ flip @ rho.conj() @ flip))
    if abs(value.imag) > 1e-10:
        logger.warning("n-tangle 虚部偏大: %.3e", value.imag)
    return value.real


@dataclass(frozen=True)
class BlochVector:
    """广义 n 量子比特 Bloch 向量 Q_ι = Tr(ρ σ_{ι_1} ⊗ … ⊗ σ_{ι_n})

    Attributes:
        n: 量子比特数
        coefficients: 形状 (4,)*n 的实数组，第 k 个轴对应第 k 个子系统
    """
    n: int
    coefficients: NDArray[np.float64]

    def __getitem__(self, index: tuple[int, ...]) -> float:
        return float(self.coefficients[index])

    def weights(self) -> NDArray[np.int64]:
        """每个分量的权重 |ι|（非恒等 Pauli 的个数）"""
        nontrivial = (np.arange(4) != 0).astype(np.int64)
        return reduce(np.add.outer, [nontrivial] * self.n) if self.n > 1 else nontrivial

    def restricted(self, mask: int) -> NDArray[np.float64]:
        """只在 J 上有非平凡支撑的分量（含恒等串）"""
        index = tuple(slice(None) if mask >> k & 1 else 0 for k in range(self.n))
        return self.coefficients[index]


def bloch_vector(state: MultipartiteState) -> BlochVector:
    """逐量子比特做 Pauli 基变换得到 Bloch 向量，代价 O(4ⁿ·n)

    Raises:
        NotQubitState: 存在非量子比特子系统
        TooLarge: n > 8
    """
    _require_qubits(state)
    n = state.n_parties
    if n > MAX_BLOCH_QUBITS:
        raise TooLarge(f"Bloch 向量最多支持 {MAX_BLOCH_QUBITS} 个量子比特，得到 {n}")

    # (r_1..r_n, c_1..c_n) → (r_1, c_1, …, r_n, c_n) → (4,)*n
    tensor = np.asarray(state.rho).reshape((2,) * (2 * n))
    order = [axis for k in range(n) for axis in (k, n + k)]
    tensor = tensor.transpose(order).reshape((4,) * n)
    for k in range(n):
        tensor = np.moveaxis(np.tensordot(_PAULI_TRACE_MAP, tensor, axes=([1], [k])), 0, k)

    residue = float(np.max(np.abs(tensor.imag))) if tensor.size else 0.0
    if residue > 1e-10:
        logger.warning("Bloch 分量虚部偏大: %.3e", residue)
    return BlochVector(n, np.ascontiguousarray(tensor.real))


def minkowski_length(bloch: BlochVector) -> float:
    """Minkowski 长度 Q²_(n) = 2^{−n} Σ_ι (−1)^{|ι|} Q_ι²"""
    signs = np.where(bloch.weights() % 2 == 0, 1.0, -1.0)
    return float(np.sum(signs * bloch.coefficients**2)) / (1 << bloch.n)


def linear_entropy_via_bloch(bloch: BlochVector, subset: int) -> float:
    """S₂(J) = 1 − 2^{−|J|} Σ_{ι∈I_J} Q_ι²

    Args:
        bloch: Bloch 向量
        subset: 子集位掩码
    """
    coefficients = bloch.restricted(subset)
    return 1.0 - float(np.sum(coefficients**2)) / (1 << subset.bit_count())


def distributed_concurrence_squared(
    state: MultipartiteState,
    solver: EigenSolver | None = None,
) -> float:
    """分布式共生度平方 C_D² = 2 Σ_J (−1)^{|J|−1} S₂(J) = 2·I₂"""
    return 2.0 * interaction_information(state, 2.0, solver)


def log_negativity(
    state: MultipartiteState,
    part: SubsetLike,
    solver: EigenSolver | None = None,
) -> float:
    """对数负性 log‖ρ^{T_J}‖₁（自然对数）

    调用方负责先取出需要的约化态，例如两体约化 ρ_{A1A2}。

    Raises:
        InvalidSubset: part 为空或等于全集
    """
    norm = trace_norm(partial_transpose(state, part), solver or DEFAULT_SOLVER)
    return math.log(norm)
