"""熵与关联量

Tsallis 熵（q → 1 为 von Neumann 熵，自然对数）、总关联、交互信息、
互信息、条件互信息和量子相对熵。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from entanglement_persistence.errors import (
    DimensionMismatch,
    InvalidParameter,
    InvalidSubset,
    PartyCountMismatch,
)
from entanglement_persistence.linalg.model import (
    ArrayLikeMatrix,
    MultipartiteState,
    SubsetLike,
    as_matrix,
)
from entanglement_persistence.linalg.ops import DEFAULT_SOLVER, EigenSolver, partial_trace, trace_power

logger = logging.getLogger(__name__)

# Tr ρ^q 走矩阵乘法快速路径的最大整数 q
_MAX_FAST_POWER = 8


def _check_q(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or q <= 0.0:
        raise InvalidParameter(f"q 必须为正: q = {q}")
    return q


def _xlogx_sum(values: np.ndarray) -> float:
    positive = values[values > 0.0]
    return float(np.sum(positive * np.log(positive)))


def matrix_tsallis_entropy(
    rho: ArrayLikeMatrix,
    q: float = 2.0,
    solver: EigenSolver | None = None,
) -> float:
    """单个密度矩阵的 Tsallis 熵 S_q = (Tr ρ^q − 1)/(1 − q)

    q = 1 时为 −Σ λ log λ（0·log 0 = 0）；整数 q ≥ 2 用矩阵幂计算 Tr ρ^q，
    不做特征分解；其余 q 使用截断后的特征值。

    Raises:
        InvalidParameter: q ≤ 0
        NotHermitian: ρ 非厄米
        EigFailed: 特征值求解失败
    """
    q = _check_q(q)
    solver = solver or DEFAULT_SOLVER
    if q == 1.0:
        value = -_xlogx_sum(solver.spectrum(rho))
    elif q.is_integer() and 2 <= q <= _MAX_FAST_POWER:
        value = (trace_power(rho, int(q)) - 1.0) / (1.0 - q)
    else:
        spectrum = solver.spectrum(rho)
        value = (float(np.sum(spectrum[spectrum > 0.0] ** q)) - 1.0) / (1.0 - q)
    # 避免返回 -0.0
    return 0.0 if value == 0.0 else value


def tsallis_entropy(
    state: MultipartiteState,
    subset: SubsetLike,
    q: float = 2.0,
    solver: EigenSolver | None = None,
) -> float:
    """子系统 J 的 Tsallis 熵 S_q(J)

    Args:
        state: 多体量子态
        subset: 非空子集
        q: 形变参数，q > 0
        solver: 特征值求解设置

    Returns:
        S_q(J)

    Raises:
        EmptySubset: 子集为空
        InvalidParameter: q ≤ 0

    Example:
        >>> tsallis_entropy(ghz(3), [0], q=2)
        0.5
    """
    _check_q(q)
    return matrix_tsallis_entropy(partial_trace(state, subset), q, solver)


@dataclass(frozen=True)
class EntropyTable:
    """所有非空子集的熵 S_q(J)，按位掩码索引，S_q(∅) = 0

    Attributes:
        n_parties: 子系统数
        q: 形变参数
        values: 位掩码 → S_q(J)
    """
    n_parties: int
    q: float
    values: dict[int, float] = field(repr=False)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_parties) - 1

    def __getitem__(self, mask: int) -> float:
        if mask == 0:
            return 0.0
        return self.values[mask]

    def masks(self) -> range:
        """所有非空子集的位掩码（升序）"""
        return range(1, self.full_mask + 1)

    def total_correlation(self, mask: int) -> float:
        """C_q(J) = Σ_{v∈J} S_q(v) − S_q(J)"""
        singles = sum(self[1 << i] for i in range(self.n_parties) if mask >> i & 1)
        return singles - self[mask]

    def interaction_information(self) -> float:
        """I_q = Σ_{J≠∅} (−1)^{|J|−1} S_q(J)"""
        return math.fsum(
            (-1.0) ** (mask.bit_count() - 1) * self[mask] for mask in self.masks()
        )


def entropy_table(
    state: MultipartiteState,
    q: float = 2.0,
    solver: EigenSolver | None = None,
) -> EntropyTable:
    """计算全部 2ⁿ − 1 个子集的熵"""
    q = _check_q(q)
    values = {
        mask: tsallis_entropy(state, mask, q, solver)
        for mask in range(1, state.full_mask + 1)
    }
    logger.debug("熵表: n=%d, q=%s, %d 个子集", state.n_parties, q, len(values))
    return EntropyTable(state.n_parties, q, values)


def total_correlation(
    state: MultipartiteState,
    subset: SubsetLike,
    q: float = 2.0,
    solver: EigenSolver | None = None,
) -> float:
    """q 形变总关联 C_q(J) = Σ_{v∈J} S_q(v) − S_q(J)

    Raises:
        EmptySubset: 子集为空
    """
    mask = state.require_nonempty(subset)
    singles = sum(tsallis_entropy(state, 1 << i, q, solver) for i in state.parties_of(mask))
    return singles - tsallis_entropy(state, mask, q, solver)


def interaction_information(
    state: MultipartiteState,
    q: float = 2.0,
    solver: EigenSolver | None = None,
) -> float:
    """q 形变交互信息 I_q = Σ_{J≠∅} (−1)^{|J|−1} S_q(J)"""
    return entropy_table(state, q, solver).interaction_information()


def mutual_information(
    state: MultipartiteState,
    a: SubsetLike,
    b: SubsetLike,
    q: float = 1.0,
    solver: EigenSolver | None = None,
) -> float:
    """互信息 I(A:B) = S_q(A) + S_q(B) − S_q(AB)

    Raises:
        InvalidSubset: A、B 为空或相交
    """
    mask_a, mask_b = state.mask_of(a), state.mask_of(b)
    if mask_a == 0 or mask_b == 0 or mask_a & mask_b:
        raise InvalidSubset("互信息要求两个非空且不相交的子集")
    return (
        tsallis_entropy(state, mask_a, q, solver)
        + tsallis_entropy(state, mask_b, q, solver)
        - tsallis_entropy(state, mask_a | mask_b, q, solver)
    )


def conditional_mutual_information(
    state: MultipartiteState,
    q: float = 1.0,
    solver: EigenSolver | None = None,
) -> float:
    """三体态 (A, B, R) 的条件互信息 I(A:B|R) = S(AR) + S(BR) − S(R) − S(ABR)

    q = 1 时强次可加性保证结果 ≥ 0；其他 q 给出形变量，不保证符号。

    Raises:
        PartyCountMismatch: 子系统数不是 3
    """
    if state.n_parties != 3:
        raise PartyCountMismatch(f"条件互信息需要恰好 3 个子系统，得到 {state.n_parties}")
    table = entropy_table(state, q, solver)
    a, b, r = 0b001, 0b010, 0b100
    return table[a | r] + table[b | r] - table[r] - table[a | b | r]


def relative_entropy(
    rho: ArrayLikeMatrix,
    sigma: ArrayLikeMatrix,
    solver: EigenSolver | None = None,
    support_tol: float = 1e-12,
) -> float:
    """量子相对熵 D(ρ‖σ) = Tr ρ(log ρ − log σ)

    supp ρ ⊄ supp σ 时返回 +inf。

    Raises:
        DimensionMismatch: 形状不同
    """
    solver = solver or DEFAULT_SOLVER
    rho, sigma = as_matrix(rho), as_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"形状不一致: {rho.shape} 与 {sigma.shape}")

    p, u = solver.eigh(rho)
    s, v = solver.eigh(sigma)
    p = np.where(p < 0.0, 0.0, p)
    # overlap[i, j] = |⟨p_i|s_j⟩|²
    overlap = np.abs(u.conj().T @ v) ** 2
    weighted = p[:, None] * overlap

    kernel = s <= solver.clamp_tol
    if np.any(weighted[:, kernel] > support_tol):
        return math.inf
    log_s = np.log(np.where(kernel, 1.0, s))
    cross = float(np.sum(weighted[:, ~kernel] * log_s[None, ~kernel]))
    return _xlogx_sum(p) - cross


def total_correlation_as_divergence(
    state: MultipartiteState,
    subset: SubsetLike,
    solver: EigenSolver | None = None,
) -> float:
    """C(J) = D(ρ_J ‖ ⊗_{v∈J} ρ_v)，用作 q = 1 总关联的定义式校验"""
    mask = state.require_nonempty(subset)
    rho_j = partial_trace(state, mask)
    singles = [partial_trace(state, 1 << i) for i in state.parties_of(mask)]
    return relative_entropy(rho_j, reduce(np.kron, singles), solver)


def interaction_information_table(table: EntropyTable) -> dict[int, float]:
    """所有子集上的交互信息 I_q(J) = Σ_{K⊆J} (−1)^{|K|} C_q(K)

    单体子集上结果为 0（对应 C_q(v) = 0）。
    """
    totals = {mask: table.total_correlation(mask) for mask in table.masks()}
    return mobius_transform(totals)


def total_correlation_from_interactions(interactions: dict[int, float]) -> dict[int, float]:
    """逆变换 C_q(J) = Σ_{K⊆J} (−1)^{|K|} I_q(K)"""
    return mobius_transform(interactions)


def mobius_transform(values: dict[int, float]) -> dict[int, float]:
    """g(J) = Σ_{∅≠K⊆J} (−1)^{|K|} f(K)，该变换是自身的逆"""
    result: dict[int, float] = {}
    for mask in values:
        terms = []
        sub = mask
        while sub:
            terms.append((-1.0) ** sub.bit_count() * values.get(sub, 0.0))
            sub = (sub - 1) & mask
        result[mask] = math.fsum(terms)
    return result
