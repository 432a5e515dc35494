"""可复现的随机量子态与局部幺正

所有采样都通过显式的 ``numpy.random.Generator``，同一种子得到逐位相同的结果。
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from entanglement_persistence.errors import DimensionMismatch
from entanglement_persistence.linalg.model import (
    ComplexMatrix,
    MultipartiteState,
    check_hilbert_dim,
)

SeedLike = int | np.random.Generator | None


def make_rng(seed: SeedLike = None) -> np.random.Generator:
    """从种子或已有 Generator 得到随机数生成器"""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise DimensionMismatch(f"局部维度必须非空且每个 ≥ 2: {dims}")
    check_hilbert_dim(dims)
    return dims


def _complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_pure_state(
    dims: Sequence[int],
    seed: SeedLike = None,
    labels: Sequence[str] | None = None,
) -> MultipartiteState:
    """Haar 随机纯态（i.i.d. 复高斯振幅再归一化）

    Args:
        dims: 局部维度
        seed: 随机种子或 Generator
        labels: 子系统标签

    Returns:
        随机纯态
    """
    dims = _check_dims(dims)
    rng = make_rng(seed)
    psi = _complex_gaussian(rng, (int(np.prod(dims)),))
    psi /= np.linalg.norm(psi)
    return MultipartiteState.from_ket(psi, dims, labels)


def random_mixed_state(
    dims: Sequence[int],
    seed: SeedLike = None,
    labels: Sequence[str] | None = None,
) -> MultipartiteState:
    """随机混态 G G† / Tr(G G†)，G 为复高斯方阵"""
    dims = _check_dims(dims)
    rng = make_rng(seed)
    total = int(np.prod(dims))
    g = _complex_gaussian(rng, (total, total))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return MultipartiteState(rho, dims, tuple(labels or ()))


def random_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar 随机幺正：复高斯矩阵的 QR 分解，并固定 R 对角元的相位"""
    z = _complex_gaussian(rng, (dim, dim)) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases[np.newaxis, :]


def random_local_unitaries(dims: Sequence[int], seed: SeedLike = None) -> list[ComplexMatrix]:
    """每个子系统一个独立的 Haar 随机幺正"""
    dims = _check_dims(dims)
    rng = make_rng(seed)
    return [random_unitary(d, rng) for d in dims]


def apply_local_unitaries(
    state: MultipartiteState,
    unitaries: Sequence[ComplexMatrix],
) -> MultipartiteState:
    """ρ ↦ UρU†，U = U_1 ⊗ … ⊗ U_n

    Raises:
        DimensionMismatch: 幺正个数或维度与子系统不符
    """
    if len(unitaries) != state.n_parties:
        raise DimensionMismatch(
            f"需要 {state.n_parties} 个局部幺正，得到 {len(unitaries)} 个"
        )
    mats = [np.asarray(u, dtype=np.complex128) for u in unitaries]
    for d, u in zip(state.dims, mats):
        if u.shape != (d, d):
            raise DimensionMismatch(f"局部幺正形状 {u.shape} 与维度 {d} 不符")
    big = reduce(np.kron, mats)
    return MultipartiteState(big @ state.rho @ big.conj().T, state.dims, state.labels)
