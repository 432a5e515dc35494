"""子集泛函

把非空子集（位掩码）映射到实数的单调集合函数，是过滤的输入。
构造时一次性算出全部 2ⁿ − 1 个值，之后只读。
"""

from __future__ import annotations

import logging
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

from entanglement_persistence.errors import InvalidParameter, MonotonicityViolation
from entanglement_persistence.functionals.entropy import entropy_table
from entanglement_persistence.linalg.model import MultipartiteState, default_labels
from entanglement_persistence.linalg.ops import EigenSolver

logger = logging.getLogger(__name__)


class SubsetFunctional:
    """已封存的子集泛函 F: 2^𝒜 ∖ ∅ → ℝ

    Attributes:
        n_parties: 子系统数
        name: 泛函名称
        q: 形变参数（自定义泛函为 None）
        fingerprint: 来源量子态的指纹
        labels: 子系统标签
        rescale: 已施加的缩放因子 s（值为 F/s）

    Example:
        >>> f = make_total_correlation_functional(ghz(4), q=2)
        >>> f(0b0011)
        0.5
        >>> check_monotone(f)
        True
    """

    def __init__(
        self,
        values: Sequence[float] | NDArray[np.float64],
        n_parties: int,
        name: str = "custom",
        q: float | None = None,
        fingerprint: str = "",
        labels: Sequence[str] | None = None,
        rescale: float = 1.0,
    ):
        """
        Args:
            values: 长度 2ⁿ 的数组，下标为位掩码，下标 0（空集）被忽略
            n_parties: 子系统数
        """
        table = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if n_parties < 1 or table.size != 1 << n_parties:
            raise InvalidParameter(f"需要 2^{n_parties} 个值，得到 {table.size} 个")
        if not np.all(np.isfinite(table[1:])):
            raise InvalidParameter("泛函值必须有限")
        table[0] = 0.0
        table.setflags(write=False)
        self._values = table
        self.n_parties = n_parties
        self.name = name
        self.q = q
        self.fingerprint = fingerprint
        self.labels = tuple(labels) if labels else default_labels(n_parties)
        self.rescale = rescale

    @classmethod
    def from_mapping(
        cls,
        values: Mapping[int, float],
        n_parties: int,
        name: str = "custom",
        labels: Sequence[str] | None = None,
    ) -> "SubsetFunctional":
        """由 {位掩码: 值} 创建，必须覆盖全部非空子集"""
        full = (1 << n_parties) - 1
        missing = [mask for mask in range(1, full + 1) if mask not in values]
        if missing:
            raise InvalidParameter(f"缺少 {len(missing)} 个子集的值，例如 {missing[0]:#b}")
        table = [0.0] + [float(values[mask]) for mask in range(1, full + 1)]
        return cls(table, n_parties, name=name, labels=labels)

    @classmethod
    def from_callable(
        cls,
        evaluate: Callable[[int], float],
        n_parties: int,
        name: str = "custom",
        labels: Sequence[str] | None = None,
    ) -> "SubsetFunctional":
        """对每个非空子集调用一次 evaluate 并封存结果"""
        full = (1 << n_parties) - 1
        table = [0.0] + [float(evaluate(mask)) for mask in range(1, full + 1)]
        return cls(table, n_parties, name=name, labels=labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_parties) - 1

    @property
    def values(self) -> NDArray[np.float64]:
        """只读值数组，下标为位掩码"""
        return self._values

    def __call__(self, mask: int) -> float:
        if not 0 < mask <= self.full_mask:
            raise KeyError(f"子集位掩码越界: {mask:#b}")
        return float(self._values[mask])

    def masks(self) -> Iterator[int]:
        """所有非空子集的位掩码（升序）"""
        return iter(range(1, self.full_mask + 1))

    @property
    def max_value(self) -> float:
        """ε_max：所有值的最大值"""
        return float(np.max(self._values[1:]))

    def vertex_values(self) -> list[float]:
        return [float(self._values[1 << i]) for i in range(self.n_parties)]

    def scaled(self, rescale: float) -> "SubsetFunctional":
        """返回 F/s

        Raises:
            InvalidParameter: s ≤ 0
        """
        if not np.isfinite(rescale) or rescale <= 0.0:
            raise InvalidParameter(f"缩放因子必须为正: {rescale}")
        return SubsetFunctional(
            self._values / rescale,
            self.n_parties,
            name=self.name,
            q=self.q,
            fingerprint=self.fingerprint,
            labels=self.labels,
            rescale=self.rescale * rescale,
        )

    def metadata(self) -> dict[str, object]:
        return {
            "name": self.name,
            "q": self.q,
            "fingerprint": self.fingerprint,
            "n_parties": self.n_parties,
            "rescale": self.rescale,
        }

    def __repr__(self) -> str:
        return f"SubsetFunctional(name={self.name!r}, q={self.q}, n_parties={self.n_parties})"


def make_total_correlation_functional(
    state: MultipartiteState,
    q: float = 2.0,
    rescale: float = 1.0,
    solver: EigenSolver | None = None,
) -> SubsetFunctional:
    """q 形变总关联泛函 C_q(J)/s

    单调性只对 q ≥ 1 有保证；q < 1 时仍会构造，过滤前需通过 check_monotone。

    Args:
        state: 多体量子态
        q: 形变参数
        rescale: 正的缩放因子 s
        solver: 特征值求解设置

    Returns:
        已封存的泛函

    Raises:
        InvalidParameter: q ≤ 0 或 s ≤ 0
    """
    if not np.isfinite(rescale) or rescale <= 0.0:
        raise InvalidParameter(f"缩放因子必须为正: {rescale}")
    if q < 1.0:
        logger.warning("q = %s < 1，总关联不保证单调", q)

    table = entropy_table(state, q, solver)
    values = np.zeros(1 << state.n_parties, dtype=np.float64)
    for mask in table.masks():
        values[mask] = table.total_correlation(mask) / rescale
    return SubsetFunctional(
        values,
        state.n_parties,
        name="total_correlation",
        q=float(q),
        fingerprint=state.fingerprint(),
        labels=state.labels,
        rescale=rescale,
    )


def covering_pairs(n_parties: int) -> Iterator[tuple[int, int]]:
    """所有覆盖关系 (J∖{v}, J)，J∖{v} 非空"""
    for mask in range(1, 1 << n_parties):
        sub = mask
        while sub:
            low = sub & -sub
            sub ^= low
            face = mask ^ low
            if face:
                yield face, mask


def find_monotonicity_violation(
    f: SubsetFunctional,
    tol: float = 1e-9,
) -> tuple[int, int] | None:
    """寻找 F(J∖{v}) > F(J) + tol 的覆盖对，返回 (face, coface)"""
    values = f.values
    for face, coface in covering_pairs(f.n_parties):
        if values[face] > values[coface] + tol:
            return face, coface
    return None


def check_monotone(f: SubsetFunctional, tol: float = 1e-9) -> bool:
    """穷举检查所有覆盖对上的单调性"""
    return find_monotonicity_violation(f, tol) is None


def require_monotone(f: SubsetFunctional, tol: float = 1e-9) -> None:
    """
    Raises:
        MonotonicityViolation: 带有违反单调性的覆盖对
    """
    witness = find_monotonicity_violation(f, tol)
    if witness is not None:
        face, coface = witness
        raise MonotonicityViolation(face, coface, f(face), f(coface))
