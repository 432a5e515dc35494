"""多体量子态数据模型

定义密度矩阵载体和多体量子态类。
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from entanglement_persistence.errors import (
    DimensionMismatch,
    EmptySubset,
    InvalidDensityMatrix,
    InvalidSubset,
    NotHermitian,
    TooLarge,
)

# 稠密复矩阵载体（complex128 方阵）
ComplexMatrix = NDArray[np.complex128]

# 子集参数：位掩码，或子系统下标/标签的可迭代对象
SubsetLike = int | Iterable[int | str]

ArrayLikeMatrix = NDArray | Sequence[Sequence[complex]]


def default_labels(n: int) -> tuple[str, ...]:
    """默认子系统标签 A1..An"""
    return tuple(f"A{i + 1}" for i in range(n))


def as_matrix(m: ArrayLikeMatrix) -> ComplexMatrix:
    """转换为 complex128 方阵

    Raises:
        DimensionMismatch: 不是方阵
    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionMismatch(f"需要非空方阵，得到形状 {arr.shape}")
    return arr


def hermiticity_defect(m: ComplexMatrix) -> float:
    """max|M − M†|"""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(m: ComplexMatrix, tol: float = 1e-10) -> None:
    """检查矩阵是否厄米

    Raises:
        NotHermitian: 偏差超出容差
    """
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"矩阵不是厄米矩阵: max|M - M†| = {defect:.3e}")


@dataclass(frozen=True)
class MultipartiteState:
    """多体量子态

    包含密度矩阵、按顺序排列的局部维度和子系统标签。
    第一个子系统是张量积中最高位的因子。

    Attributes:
        rho: 密度矩阵（只读 complex128 数组）
        dims: 局部维度 d_1..d_n，每个 ≥ 2
        labels: 子系统名称

    Example:
        >>> psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        >>> bell = MultipartiteState.from_ket(psi, (2, 2))
        >>> bell.n_parties
        2
    """
    rho: ComplexMatrix
    dims: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        rho = np.array(self.rho, dtype=np.complex128, copy=True)
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise DimensionMismatch("至少需要一个子系统")
        if any(d < 2 for d in dims):
            raise DimensionMismatch(f"局部维度必须 ≥ 2: {dims}")
        total = int(np.prod(dims))
        if rho.shape != (total, total):
            raise DimensionMismatch(
                f"密度矩阵形状 {rho.shape} 与局部维度 {dims} 不匹配（需要 {total}×{total}）"
            )
        labels = tuple(self.labels) if self.labels else default_labels(len(dims))
        if len(labels) != len(dims) or len(set(labels)) != len(labels):
            raise DimensionMismatch(f"标签必须与子系统一一对应且互不相同: {labels}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_ket(
        cls,
        psi: NDArray | Sequence[complex],
        dims: Sequence[int],
        labels: Sequence[str] | None = None,
    ) -> "MultipartiteState":
        """从（已归一化的）纯态向量创建

        Args:
            psi: 态矢量
            dims: 局部维度
            labels: 子系统标签

        Returns:
            |ψ⟩⟨ψ| 对应的多体量子态
        """
        vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
        return cls(np.outer(vec, vec.conj()), tuple(dims), tuple(labels or ()))

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def full_mask(self) -> int:
        return (1 << self.n_parties) - 1

    @property
    def is_qubits(self) -> bool:
        """是否所有子系统都是量子比特"""
        return all(d == 2 for d in self.dims)

    def mask_of(self, subset: SubsetLike) -> int:
        """将子集转换为位掩码（第 i 位对应第 i 个子系统）

        Args:
            subset: 位掩码，或下标/标签的可迭代对象

        Returns:
            位掩码

        Raises:
            InvalidSubset: 下标越界或标签不存在
        """
        if isinstance(subset, (int, np.integer)) and not isinstance(subset, bool):
            mask = int(subset)
            if mask < 0 or mask > self.full_mask:
                raise InvalidSubset(f"位掩码越界: {mask:#b}")
            return mask
        mask = 0
        for item in subset:
            if isinstance(item, str):
                if item not in self.labels:
                    raise InvalidSubset(f"未知的子系统标签: {item!r}")
                index = self.labels.index(item)
            else:
                index = int(item)
                if not 0 <= index < self.n_parties:
                    raise InvalidSubset(f"子系统下标越界: {index}")
            mask |= 1 << index
        return mask

    def parties_of(self, mask: int) -> list[int]:
        """位掩码中的子系统下标（升序）"""
        return [i for i in range(self.n_parties) if mask >> i & 1]

    def labels_of(self, mask: int) -> list[str]:
        """位掩码中的子系统标签"""
        return [self.labels[i] for i in self.parties_of(mask)]

    def require_nonempty(self, subset: SubsetLike) -> int:
        """转换为非空子集的位掩码

        Raises:
            EmptySubset: 子集为空
        """
        mask = self.mask_of(subset)
        if mask == 0:
            raise EmptySubset("子集不能为空")
        return mask

    def validate(self, hermitian_tol: float = 1e-10, clamp_tol: float = 1e-10) -> None:
        """检查密度矩阵不变量：厄米、单位迹、半正定（容差内）

        Raises:
            NotHermitian: 不是厄米矩阵
            InvalidDensityMatrix: 迹不为 1 或存在负特征值
        """
        check_hermitian(self.rho, hermitian_tol)
        trace = complex(np.trace(self.rho))
        if abs(trace - 1.0) > clamp_tol:
            raise InvalidDensityMatrix(f"迹不为 1: Tr ρ = {trace}")
        herm = 0.5 * (self.rho + self.rho.conj().T)
        min_eig = float(np.linalg.eigvalsh(herm)[0])
        if min_eig < -clamp_tol:
            raise InvalidDensityMatrix(f"存在负特征值: λ_min = {min_eig:.3e}")

    def fingerprint(self) -> str:
        """密度矩阵与局部维度的短哈希，用于泛函元数据"""
        digest = hashlib.sha256()
        digest.update(repr(self.dims).encode("utf-8"))
        digest.update(np.ascontiguousarray(self.rho).tobytes())
        return digest.hexdigest()[:16]

    def __repr__(self) -> str:
        return f"MultipartiteState(dims={self.dims}, labels={list(self.labels)})"


# 稠密表示的希尔伯特空间维度上限（10 个量子比特）
MAX_HILBERT_DIM = 1 << 10


def check_hilbert_dim(dims: Sequence[int]) -> int:
    """在分配稠密矩阵之前检查总维度

    Returns:
        总维度 Π d_i

    Raises:
        TooLarge: 超过 MAX_HILBERT_DIM
    """
    total = 1
    for d in dims:
        total *= int(d)
    if total > MAX_HILBERT_DIM:
        raise TooLarge(f"总维度 {total} 超过上限 {MAX_HILBERT_DIM}")
    return total
