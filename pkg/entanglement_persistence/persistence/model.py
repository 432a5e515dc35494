"""持久同调数据模型

单纯形用位掩码表示（第 i 位对应第 i 个子系统），空掩码 0 表示约化模式中的增广胞腔。
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

# 增广胞腔（空单纯形），维数 −1
AUGMENTATION = 0


class FiltrationMode(Enum):
    """过滤模式"""
    ABSOLUTE = "absolute"  # 普通同调
    REDUCED = "reduced"    # 约化同调（增广链复形）
    RELATIVE = "relative"  # 相对于子复形 Δ_S 的同调

    @classmethod
    def parse(cls, value: "FiltrationMode | str") -> "FiltrationMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError as e:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"未知的过滤模式: {value!r}，可选: {choices}") from e


def simplex_dim(mask: int) -> int:
    """单纯形维数 |J| − 1（增广胞腔为 −1）"""
    return mask.bit_count() - 1


def simplex_vertices(mask: int) -> list[int]:
    """单纯形的顶点下标（升序）"""
    vertices = []
    index = 0
    while mask:
        if mask & 1:
            vertices.append(index)
        mask >>= 1
        index += 1
    return vertices


def facets(mask: int) -> list[int]:
    """余维 1 的面 J ∖ {v}（顶点的面是增广胞腔 0）"""
    return [mask ^ (1 << v) for v in simplex_vertices(mask)]


def is_face(face: int, simplex: int) -> bool:
    """face ⊆ simplex"""
    return face & ~simplex == 0


def filtration_key(mask: int, value: float) -> tuple[float, int, int]:
    """过滤顺序：值升序，其次维数升序，再按位掩码升序"""
    return (value, mask.bit_count(), mask)


@dataclass(frozen=True)
class FilteredComplex:
    """按过滤顺序排列的幂集单纯复形

    Attributes:
        n_parties: 子系统数
        mode: 过滤模式
        order: 过滤顺序中的单纯形（位掩码）
        values: 与 order 对齐的过滤值
        relative_to: 相对模式下生成子复形 K = Δ_S 的子集 S（其余模式为 0）
        q: 泛函的形变参数
        rescale: 泛函的缩放因子
        labels: 子系统标签
    """
    n_parties: int
    mode: FiltrationMode
    order: tuple[int, ...]
    values: tuple[float, ...]
    relative_to: int = 0
    q: float | None = None
    rescale: float = 1.0
    labels: tuple[str, ...] = ()
    _index: dict[int, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {mask: i for i, mask in enumerate(self.order)})

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[tuple[int, float]]:
        return iter(zip(self.order, self.values))

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def index_of(self, mask: int) -> int | None:
        """单纯形在过滤顺序中的位置，不在复形中时返回 None"""
        return self._index.get(mask)

    def value_of(self, mask: int) -> float:
        return self.values[self._index[mask]]

    @property
    def is_augmented(self) -> bool:
        return self.mode is FiltrationMode.REDUCED

    @property
    def epsilon_max(self) -> float:
        """最大过滤值（空复形为 0）"""
        return max(self.values, default=0.0)

    def simplices_at(self, eps: float) -> list[int]:
        """G(ε) 中的胞腔（按过滤顺序）"""
        return [mask for mask, value in self if value <= eps]

    def counts_at(self, eps: float) -> dict[int, int]:
        """各维数的胞腔数 n_k(ε)"""
        counts: dict[int, int] = {}
        for mask in self.simplices_at(eps):
            dim = simplex_dim(mask)
            counts[dim] = counts.get(dim, 0) + 1
        return counts


@dataclass(frozen=True)
class Interval:
    """持久区间 [birth, death)

    Attributes:
        dim: 同调维数（约化模式下可为 −1）
        birth: 出生值
        death: 死亡值，无限区间为 math.inf
        birth_simplex: 出生单纯形
        death_simplex: 死亡单纯形，无限区间为 None
    """
    dim: int
    birth: float
    death: float
    birth_simplex: int
    death_simplex: int | None = None

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)

    @property
    def zero_length(self) -> bool:
        """出生值与死亡值（精确比较缓存值）相同"""
        return self.birth == self.death

    @property
    def lifetime(self) -> float:
        """|death − birth|"""
        return abs(self.death - self.birth)

    def contains(self, eps: float) -> bool:
        """右开约定：birth ≤ ε < death"""
        return self.birth <= eps < self.death

    def sort_key(self) -> tuple[int, float, float, int]:
        return (self.dim, self.birth, self.death, self.birth_simplex)


@dataclass(frozen=True)
class Barcode:
    """条形码：区间的多重集

    Attributes:
        intervals: 按 (dim, birth, death) 排序的区间
        mode: 过滤模式
        q: 形变参数
        epsilon_max: 最大过滤值
        relative_to: 相对模式下的子集 S
        rescale: 缩放因子
        n_parties: 子系统数
        labels: 子系统标签

    Example:
        >>> barcode = compute_barcode(build_filtration(f, "reduced"))
        >>> [(i.birth, i.death) for i in barcode.in_dim(1)]
        [(0.5, 1.5)]
    """
    intervals: tuple[Interval, ...]
    mode: FiltrationMode
    q: float | None = None
    epsilon_max: float = 0.0
    relative_to: int = 0
    rescale: float = 1.0
    n_parties: int = 0
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "intervals", tuple(sorted(self.intervals, key=Interval.sort_key))
        )

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def in_dim(self, dim: int) -> list[Interval]:
        return [i for i in self.intervals if i.dim == dim]

    def dims(self) -> list[int]:
        """出现过的维数（升序）"""
        return sorted({i.dim for i in self.intervals})

    @property
    def has_infinite(self) -> bool:
        return any(i.is_infinite for i in self.intervals)

    def filtered(self, min_length: float = 0.0) -> "Barcode":
        """只保留长度 ≥ min_length 的区间（min_length ≤ 0 时保留全部，含零长区间）"""
        if min_length <= 0.0:
            return self
        return self._with(i for i in self.intervals if i.lifetime >= min_length)

    def nonzero(self) -> "Barcode":
        """去掉零长区间"""
        return self._with(i for i in self.intervals if not i.zero_length)

    def _with(self, intervals: Iterable[Interval]) -> "Barcode":
        return Barcode(
            tuple(intervals),
            self.mode,
            q=self.q,
            epsilon_max=self.epsilon_max,
            relative_to=self.relative_to,
            rescale=self.rescale,
            n_parties=self.n_parties,
            labels=self.labels,
        )

    def betti_at(self, eps: float, dim: int) -> int:
        """β_k(ε) = 包含 ε 的 k 维区间个数"""
        return sum(1 for i in self.intervals if i.dim == dim and i.contains(eps))

    def persistence_pairs(self) -> list[tuple[int, int | None]]:
        """(出生单纯形, 死亡单纯形) 配对"""
        return [(i.birth_simplex, i.death_simplex) for i in self.intervals]
