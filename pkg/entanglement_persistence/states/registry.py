"""状态种类注册表

把状态描述文档中的 ``kind`` 映射到对应的构造器，并记录每种类型允许的字段。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Iterator

if TYPE_CHECKING:
    from entanglement_persistence.linalg.model import MultipartiteState
    from entanglement_persistence.states.loader import SpecContext

# 构造器：接收文档和解析上下文，返回量子态
StateBuilder = Callable[[dict[str, Any], "SpecContext"], "MultipartiteState"]


@dataclass(frozen=True)
class StateKind:
    """一种状态描述

    Attributes:
        name: kind 名称
        description: 简要说明
        required: 必需字段
        optional: 可选字段（``kind`` 与 ``labels`` 对所有种类都允许）
        builder: 构造器
    """
    name: str
    description: str
    builder: StateBuilder
    required: tuple[str, ...] = ()
    optional: tuple[str, ...] = field(default=())

    @property
    def allowed(self) -> frozenset[str]:
        """所有允许出现的字段"""
        return frozenset(("kind", "labels", *self.required, *self.optional))


class StateRegistry:
    """状态种类注册表

    Example:
        >>> registry = StateRegistry()
        >>> registry.register(StateKind("ghz", "GHZ 态", build_ghz, required=("n",)))
        >>> "ghz" in registry
        True
    """

    def __init__(self):
        self._kinds: dict[str, StateKind] = {}

    def register(self, kind: StateKind, replace: bool = False) -> None:
        """注册状态种类

        Args:
            kind: 状态种类
            replace: 是否覆盖同名种类

        Raises:
            ValueError: 同名种类已存在且 replace 为 False
        """
        if kind.name in self._kinds and not replace:
            raise ValueError(f"状态种类 '{kind.name}' 已注册")
        self._kinds[kind.name] = kind

    def get(self, name: str) -> StateKind | None:
        """按名称获取状态种类，不存在则返回 None"""
        return self._kinds.get(name)

    def kinds(self) -> list[str]:
        """已注册的种类名称（按字母顺序）"""
        return sorted(self._kinds)

    def __len__(self) -> int:
        return len(self._kinds)

    def __contains__(self, name: str) -> bool:
        return name in self._kinds

    def __iter__(self) -> Iterator[StateKind]:
        return iter(self._kinds.values())

    def __repr__(self) -> str:
        return f"StateRegistry(kinds={len(self._kinds)})"
