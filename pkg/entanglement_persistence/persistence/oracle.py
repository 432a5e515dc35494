"""独立的 Betti 数预言机

不做持久配对，直接在 G(ε) 上用 Z₂ 高斯消元计算
β_k(ε) = dim ker ∂_k − rank ∂_{k+1}，用于校验条形码。
"""

from __future__ import annotations

from entanglement_persistence.errors import TooLarge
from entanglement_persistence.functionals.functional import SubsetFunctional
from entanglement_persistence.persistence.filtration import _check_relative, filtration_values
from entanglement_persistence.persistence.model import (
    AUGMENTATION,
    FilteredComplex,
    FiltrationMode,
    facets,
    is_face,
    simplex_dim,
)

# 预言机的规模上限
MAX_ORACLE_PARTIES = 6


def gf2_rank(rows: list[int], n_cols: int) -> int:
    """Z₂ 上的秩（整数按位表示的行，高斯消元）"""
    work = rows[:]
    rank = 0
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and (work[r] >> col) & 1:
                work[r] ^= work[row_idx]
        rank += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank


def _boundary_rank(cells: dict[int, list[int]], dim: int) -> int:
    """∂_dim: C_dim → C_{dim−1} 的秩"""
    targets = {mask: i for i, mask in enumerate(cells.get(dim - 1, []))}
    columns = []
    for mask in cells.get(dim, []):
        column = 0
        for face in facets(mask) if mask != AUGMENTATION else []:
            index = targets.get(face)
            if index is not None:
                column |= 1 << index
        columns.append(column)
    return gf2_rank(columns, len(targets))


def oracle_betti(
    f: SubsetFunctional,
    eps: float,
    dim: int,
    mode: FiltrationMode | str = FiltrationMode.REDUCED,
    relative_to: int | None = None,
    monotone_tol: float = 1e-9,
) -> int:
    """G(ε) 上的 Betti 数 β_k(ε)

    约化模式下增广胞腔在 min_v F(v) 出现；相对模式去掉所有 J ⊆ S 的单纯形。

    Args:
        f: 子集泛函
        eps: 阈值
        dim: 维数 k
        mode: 过滤模式
        relative_to: 相对模式下的子集 S
        monotone_tol: 单调性容差

    Returns:
        β_k(ε)

    Raises:
        TooLarge: 子系统数超过 6
    """
    if f.n_parties > MAX_ORACLE_PARTIES:
        raise TooLarge(f"秩预言机最多支持 {MAX_ORACLE_PARTIES} 个子系统，得到 {f.n_parties}")
    mode = FiltrationMode.parse(mode)
    values = filtration_values(f, monotone_tol)

    subcomplex = 0
    if mode is FiltrationMode.RELATIVE:
        subcomplex = _check_relative(f, relative_to)

    cells: dict[int, list[int]] = {}
    for mask in range(1, f.full_mask + 1):
        if values[mask] > eps or (subcomplex and is_face(mask, subcomplex)):
            continue
        cells.setdefault(simplex_dim(mask), []).append(mask)
    if mode is FiltrationMode.REDUCED:
        vertex_min = min(float(values[1 << i]) for i in range(f.n_parties))
        if vertex_min <= eps:
            cells[-1] = [AUGMENTATION]

    n_cells = len(cells.get(dim, []))
    if n_cells == 0:
        return 0
    kernel = n_cells - _boundary_rank(cells, dim)
    return kernel - _boundary_rank(cells, dim + 1)


def euler_characteristic(complex_: FilteredComplex, eps: float) -> int:
    """Σ_k (−1)^k n_k(ε)，约化模式包含 −1 维的增广胞腔"""
    return sum((-1) ** (dim % 2) * count for dim, count in complex_.counts_at(eps).items())
