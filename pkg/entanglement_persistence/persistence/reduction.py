"""Z₂ 边界矩阵约化

标准的从左到右列约化：列用 Python 整数按位存储，列加法为异或，
用 low → 列 的查找表判断最低位是否唯一。
"""

from __future__ import annotations

import bisect
import logging
import math
from dataclasses import dataclass

from entanglement_persistence.persistence.model import (
    AUGMENTATION,
    Barcode,
    FilteredComplex,
    Interval,
    facets,
    simplex_dim,
)

logger = logging.getLogger(__name__)


def boundary_columns(complex_: FilteredComplex) -> list[int]:
    """按过滤顺序的 Z₂ 边界列（第 i 位表示第 i 个胞腔）

    非约化模式下顶点的边界为 0；相对模式下落在子复形 K 中的面被丢弃。
    """
    columns = []
    for mask in complex_.order:
        column = 0
        if mask != AUGMENTATION:
            for face in facets(mask):
                if face == AUGMENTATION and not complex_.is_augmented:
                    continue
                index = complex_.index_of(face)
                if index is not None:
                    column |= 1 << index
        columns.append(column)
    return columns


def compute_barcode(complex_: FilteredComplex) -> Barcode:
    """计算 Z₂ 持久条形码

    配对 (σ_i, σ_j) 给出 dim σ_i 维区间 (F(σ_i), F(σ_j))；未配对的正胞腔给出无限区间。
    零长区间保留在结果中。

    Args:
        complex_: 过滤复形

    Returns:
        条形码
    """
    columns = boundary_columns(complex_)
    pivots: dict[int, int] = {}
    paired: set[int] = set()
    intervals: list[Interval] = []
    additions = 0

    for j, column in enumerate(columns):
        while column:
            low = column.bit_length() - 1
            other = pivots.get(low)
            if other is None:
                break
            column ^= columns[other]
            additions += 1
        columns[j] = column
        if column:
            low = column.bit_length() - 1
            pivots[low] = j
            paired.update((low, j))
            intervals.append(Interval(
                dim=simplex_dim(complex_.order[low]),
                birth=complex_.values[low],
                death=complex_.values[j],
                birth_simplex=complex_.order[low],
                death_simplex=complex_.order[j],
            ))

    for i, mask in enumerate(complex_.order):
        if i not in paired:
            intervals.append(Interval(
                dim=simplex_dim(mask),
                birth=complex_.values[i],
                death=math.inf,
                birth_simplex=mask,
            ))

    logger.debug(
        "边界约化: %d 个胞腔, %d 次列加法, %d 个区间",
        len(columns), additions, len(intervals),
    )
    return Barcode(
        tuple(intervals),
        complex_.mode,
        q=complex_.q,
        epsilon_max=complex_.epsilon_max,
        relative_to=complex_.relative_to,
        rescale=complex_.rescale,
        n_parties=complex_.n_parties,
        labels=complex_.labels,
    )


@dataclass(frozen=True)
class BettiCurve:
    """分段常值的 Betti 曲线 β_k(ε)，右连续

    Attributes:
        dim: 维数 k
        breakpoints: (ε, 值) 列表，值从该 ε 起生效；第一个断点之前为 0
    """
    dim: int
    breakpoints: tuple[tuple[float, int], ...]

    def __call__(self, eps: float) -> int:
        positions = [b for b, _ in self.breakpoints]
        index = bisect.bisect_right(positions, eps) - 1
        return self.breakpoints[index][1] if index >= 0 else 0

    def integral(self, upto: float, start: float = 0.0) -> float:
        """∫_start^upto β_k(ε) dε"""
        total = 0.0
        points = list(self.breakpoints) + [(math.inf, 0)]
        for (left, value), (right, _) in zip(points, points[1:]):
            lo, hi = max(left, start), min(right, upto)
            if hi > lo:
                total += value * (hi - lo)
        return total


def betti_curve(barcode: Barcode, dim: int) -> BettiCurve:
    """由条形码得到 β_k(ε)：区间 [b, d) 在其上贡献 1"""
    changes: dict[float, int] = {}
    for interval in barcode.in_dim(dim):
        changes[interval.birth] = changes.get(interval.birth, 0) + 1
        if not interval.is_infinite:
            changes[interval.death] = changes.get(interval.death, 0) - 1

    breakpoints = []
    value = 0
    for eps in sorted(changes):
        if changes[eps] == 0:
            continue
        value += changes[eps]
        breakpoints.append((eps, value))
    return BettiCurve(dim, tuple(breakpoints))
