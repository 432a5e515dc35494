"""稠密复线性代数

张量积、部分迹、部分转置、厄米特征分解和范数，规模面向 ≤ 10 个量子比特。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from entanglement_persistence.errors import EigFailed, InvalidDensityMatrix, InvalidSubset
from entanglement_persistence.linalg.model import (
    ArrayLikeMatrix,
    ComplexMatrix,
    MultipartiteState,
    SubsetLike,
    as_matrix,
    check_hermitian,
)

logger = logging.getLogger(__name__)

EIG_METHODS = ("lapack", "jacobi")


def kron(a: ArrayLikeMatrix, b: ArrayLikeMatrix) -> ComplexMatrix:
    """Kronecker 积，a 为高位因子"""
    return np.kron(as_matrix(a), as_matrix(b))


def _split(state: MultipartiteState, mask: int) -> tuple[list[int], list[int]]:
    kept = state.parties_of(mask)
    traced = [i for i in range(state.n_parties) if not mask >> i & 1]
    return kept, traced


def partial_trace(state: MultipartiteState, keep: SubsetLike) -> ComplexMatrix:
    """部分迹，返回保留子系统上的约化密度矩阵 ρ_J

    保留子系统按原顺序排列。

    Args:
        state: 多体量子态
        keep: 保留的子系统

    Returns:
        约化密度矩阵

    Raises:
        EmptySubset: keep 为空
    """
    mask = state.require_nonempty(keep)
    if mask == state.full_mask:
        return np.array(state.rho)

    n = state.n_parties
    dims = list(state.dims)
    kept, traced = _split(state, mask)
    d_keep = int(np.prod([dims[i] for i in kept]))
    d_trace = int(np.prod([dims[i] for i in traced]))

    tensor = state.rho.reshape(dims + dims)
    perm = kept + traced + [n + i for i in kept] + [n + i for i in traced]
    tensor = tensor.transpose(perm).reshape(d_keep, d_trace, d_keep, d_trace)
    return np.einsum("ajbj->ab", tensor)


def marginal(state: MultipartiteState, keep: SubsetLike) -> MultipartiteState:
    """约化态，作为多体量子态返回（保留标签）"""
    mask = state.require_nonempty(keep)
    return MultipartiteState(
        partial_trace(state, mask),
        tuple(state.dims[i] for i in state.parties_of(mask)),
        tuple(state.labels_of(mask)),
    )


def partial_transpose(state: MultipartiteState, part: SubsetLike) -> ComplexMatrix:
    """对指定子系统做部分转置

    Args:
        state: 多体量子态
        part: 被转置的子系统，必须是非空真子集

    Returns:
        部分转置后的矩阵（厄米）

    Raises:
        InvalidSubset: part 为空或等于全集
    """
    mask = state.mask_of(part)
    if mask == 0 or mask == state.full_mask:
        raise InvalidSubset("部分转置要求非空真子集")

    n = state.n_parties
    dims = list(state.dims)
    axes = list(range(2 * n))
    for i in state.parties_of(mask):
        axes[i], axes[n + i] = axes[n + i], axes[i]
    tensor = state.rho.reshape(dims + dims).transpose(axes)
    return np.ascontiguousarray(tensor).reshape(state.dim, state.dim)


def jacobi_eigh(
    m: ArrayLikeMatrix,
    tol: float = 1e-12,
    max_sweeps: int = 100,
) -> tuple[NDArray[np.float64], ComplexMatrix]:
    """循环 Jacobi 法求复厄米矩阵的特征分解

    每个旋转先用相位把 (p, q) 元素变为实数，再做实 Givens 旋转消去。
    当非对角 Frobenius 范数 < tol × 矩阵 Frobenius 范数时收敛。

    Args:
        m: 厄米矩阵
        tol: 相对收敛阈值
        max_sweeps: 最大扫描次数

    Returns:
        (升序特征值, 对应的列特征向量)

    Raises:
        EigFailed: 达到扫描上限仍未收敛
    """
    a = np.array(as_matrix(m), copy=True)
    a = 0.5 * (a + a.conj().T)
    dim = a.shape[0]
    vectors = np.eye(dim, dtype=np.complex128)
    norm = float(np.linalg.norm(a))
    threshold = tol * norm

    def off_norm() -> float:
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    sweeps = 0
    while off_norm() >= threshold and threshold > 0.0:
        if sweeps >= max_sweeps:
            raise EigFailed(f"Jacobi 在 {max_sweeps} 次扫描后未收敛")
        sweeps += 1
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                theta = 0.5 * np.arctan2(2.0 * mag, (a[q, q] - a[p, p]).real)
                c, s = np.cos(theta), np.sin(theta)
                rot = np.array(
                    [[c, s], [-s * phase.conjugate(), c * phase.conjugate()]],
                    dtype=np.complex128,
                )
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                vectors[:, idx] = vectors[:, idx] @ rot
        # 旋转会累积微小的非厄米误差
        a = 0.5 * (a + a.conj().T)

    if sweeps > 0.8 * max_sweeps:
        logger.warning("Jacobi 扫描次数接近上限: %d/%d", sweeps, max_sweeps)
    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def clamp_eigenvalues(values: NDArray[np.float64], tol: float = 1e-10) -> NDArray[np.float64]:
    """将 [-tol, 0) 内的特征值截断为 0

    Raises:
        InvalidDensityMatrix: 存在小于 -tol 的特征值
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size and values.min() < -tol:
        raise InvalidDensityMatrix(f"存在负特征值: λ_min = {values.min():.3e}")
    return np.where(values < 0.0, 0.0, values)


@dataclass(frozen=True)
class EigenSolver:
    """厄米特征值求解设置

    由 ``NumericsConfig.solver()`` 创建，贯穿熵与范数计算。

    Attributes:
        method: "lapack" 或 "jacobi"
        hermitian_tol: 厄米性容差
        clamp_tol: 负特征值截断容差
        jacobi_tol: Jacobi 相对收敛阈值
        jacobi_max_sweeps: Jacobi 最大扫描次数

    Example:
        >>> solver = EigenSolver(method="jacobi")
        >>> solver.eigenvalues(np.diag([2.0, 1.0]))
        array([1., 2.])
    """
    method: str = "lapack"
    hermitian_tol: float = 1e-10
    clamp_tol: float = 1e-10
    jacobi_tol: float = 1e-12
    jacobi_max_sweeps: int = 100

    def __post_init__(self) -> None:
        if self.method not in EIG_METHODS:
            raise ValueError(f"未知的特征值求解器: {self.method!r}")

    def eigh(self, m: ArrayLikeMatrix) -> tuple[NDArray[np.float64], ComplexMatrix]:
        """特征分解，返回 (升序特征值, 列特征向量)

        Raises:
            NotHermitian: 非厄米输入
            EigFailed: 求解失败
        """
        arr = as_matrix(m)
        check_hermitian(arr, self.hermitian_tol)
        if self.method == "jacobi":
            return jacobi_eigh(arr, self.jacobi_tol, self.jacobi_max_sweeps)
        try:
            return np.linalg.eigh(0.5 * (arr + arr.conj().T))
        except np.linalg.LinAlgError as e:
            raise EigFailed(f"LAPACK 特征分解失败: {e}") from e

    def eigenvalues(self, m: ArrayLikeMatrix) -> NDArray[np.float64]:
        """升序特征值

        Raises:
            NotHermitian: 非厄米输入
            EigFailed: 求解失败
        """
        if self.method == "jacobi":
            return self.eigh(m)[0]
        arr = as_matrix(m)
        check_hermitian(arr, self.hermitian_tol)
        try:
            return np.linalg.eigvalsh(0.5 * (arr + arr.conj().T))
        except np.linalg.LinAlgError as e:
            raise EigFailed(f"LAPACK 特征值求解失败: {e}") from e

    def spectrum(self, m: ArrayLikeMatrix) -> NDArray[np.float64]:
        """密度矩阵的谱，噪声级负特征值截断为 0"""
        return clamp_eigenvalues(self.eigenvalues(m), self.clamp_tol)


DEFAULT_SOLVER = EigenSolver()


def hermitian_eigh(
    m: ArrayLikeMatrix,
    method: str = "lapack",
    hermitian_tol: float = 1e-10,
) -> tuple[NDArray[np.float64], ComplexMatrix]:
    """厄米矩阵的特征分解

    Args:
        m: 厄米矩阵
        method: "lapack" 或 "jacobi"
        hermitian_tol: 厄米性容差

    Returns:
        (升序特征值, 列特征向量)
    """
    return EigenSolver(method=method, hermitian_tol=hermitian_tol).eigh(m)


def hermitian_eigenvalues(
    m: ArrayLikeMatrix,
    method: str = "lapack",
    hermitian_tol: float = 1e-10,
) -> NDArray[np.float64]:
    """厄米矩阵的升序特征值"""
    return EigenSolver(method=method, hermitian_tol=hermitian_tol).eigenvalues(m)


def trace_norm(m: ArrayLikeMatrix, solver: EigenSolver | None = None) -> float:
    """迹范数 Σ|λ_i|（厄米矩阵）"""
    solver = solver or DEFAULT_SOLVER
    return float(np.sum(np.abs(solver.eigenvalues(m))))


def trace_power(m: ArrayLikeMatrix, power: int) -> float:
    """Tr M^k，整数 k ≥ 1，通过重复矩阵乘法计算（不做特征分解）"""
    if power < 1:
        raise ValueError("幂次必须 ≥ 1")
    arr = as_matrix(m)
    return float(np.trace(np.linalg.matrix_power(arr, power)).real)
