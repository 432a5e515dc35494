"""状态描述文档解析

把 JSON 状态描述（内联字符串或 ``@path`` 文件）解析为多体量子态。
所有格式错误都以 ``ParseError`` 报告，并带上出错字段的 JSON 路径。
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from entanglement_persistence.errors import (
    DimensionMismatch,
    InvalidGraph,
    InvalidParameter,
    ParseError,
)
from entanglement_persistence.linalg.model import MultipartiteState
from entanglement_persistence.linalg.random import random_mixed_state, random_pure_state
from entanglement_persistence.states import named
from entanglement_persistence.states.registry import StateKind, StateRegistry

logger = logging.getLogger(__name__)

# 状态描述文件最大大小 (10MB)
MAX_STATE_FILE_SIZE = 10 * 1024 * 1024


@dataclass(frozen=True)
class SpecContext:
    """解析上下文

    Attributes:
        path: 当前文档的 JSON 路径
        registry: 状态种类注册表
        default_seed: 文档未给出 seed 时使用的种子
    """
    path: str
    registry: StateRegistry
    default_seed: int | None = None

    def at(self, key: str | int) -> str:
        """子字段的 JSON 路径"""
        if isinstance(key, int):
            return f"{self.path}[{key}]"
        return f"{self.path}.{key}"

    def parse(self, document: Any, path: str) -> MultipartiteState:
        """在子路径上递归解析"""
        return _parse(document, SpecContext(path, self.registry, self.default_seed))


# ==================== 字段读取 ====================


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _read_int(doc: dict[str, Any], key: str, ctx: SpecContext, minimum: int | None = None) -> int:
    value = doc[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(ctx.at(key), f"需要整数，得到 {value!r}")
    if minimum is not None and value < minimum:
        raise ParseError(ctx.at(key), f"必须 ≥ {minimum}，得到 {value}")
    return value


def _read_number(doc: dict[str, Any], key: str, ctx: SpecContext) -> float:
    value = doc[key]
    if not _is_number(value) or not math.isfinite(value):
        raise ParseError(ctx.at(key), f"需要有限实数，得到 {value!r}")
    return float(value)


def _read_complex(value: Any, path: str) -> complex:
    """复数写作 [re, im]，也接受单个实数"""
    if _is_number(value):
        return complex(float(value), 0.0)
    if isinstance(value, list) and len(value) == 2 and all(_is_number(v) for v in value):
        return complex(float(value[0]), float(value[1]))
    raise ParseError(path, f"需要 [re, im] 或实数，得到 {value!r}")


def _read_complex_list(value: Any, path: str) -> list[complex]:
    if not isinstance(value, list) or not value:
        raise ParseError(path, "需要非空的复数列表")
    return [_read_complex(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _read_dims(doc: dict[str, Any], key: str, ctx: SpecContext) -> list[int]:
    value = doc[key]
    if not isinstance(value, list) or not value:
        raise ParseError(ctx.at(key), "需要非空的局部维度列表")
    dims = []
    for i, d in enumerate(value):
        if not isinstance(d, int) or isinstance(d, bool) or d < 2:
            raise ParseError(f"{ctx.at(key)}[{i}]", f"局部维度必须是 ≥ 2 的整数，得到 {d!r}")
        dims.append(d)
    return dims


def _read_labels(doc: dict[str, Any], ctx: SpecContext) -> list[str] | None:
    if "labels" not in doc:
        return None
    value = doc["labels"]
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        raise ParseError(ctx.at("labels"), "需要非空字符串列表")
    return value


def _read_seed(doc: dict[str, Any], ctx: SpecContext) -> int:
    if "seed" in doc:
        return _read_int(doc, "seed", ctx, minimum=0)
    return ctx.default_seed if ctx.default_seed is not None else 0


def _read_list(doc: dict[str, Any], key: str, ctx: SpecContext) -> list[Any]:
    value = doc[key]
    if not isinstance(value, list):
        raise ParseError(ctx.at(key), f"需要列表，得到 {type(value).__name__}")
    return value


# ==================== 各种类的构造器 ====================


def _build_ghz(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    return named.ghz(_read_int(doc, "n", ctx, minimum=2), _read_labels(doc, ctx))


def _build_graph(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    n = _read_int(doc, "n", ctx, minimum=2)
    edges = []
    for i, edge in enumerate(_read_list(doc, "edges", ctx)):
        path = f"{ctx.at('edges')}[{i}]"
        if (
            not isinstance(edge, list)
            or len(edge) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in edge)
        ):
            raise ParseError(path, f"边必须是两个整数顶点 [i, j]，得到 {edge!r}")
        edges.append((edge[0], edge[1]))
    try:
        graph = named.validate_graph(n, edges)
    except InvalidGraph as e:
        raise ParseError(ctx.at("edges"), str(e)) from e
    return named.graph_state_from_graph(graph, _read_labels(doc, ctx))


def _build_product(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    factors = _read_list(doc, "factors", ctx)
    if not factors:
        raise ParseError(ctx.at("factors"), "至少需要一个因子")
    vectors = [_read_complex_list(f, f"{ctx.at('factors')}[{i}]") for i, f in enumerate(factors)]
    return named.product_state(vectors, _read_labels(doc, ctx))


def _build_amplitudes(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    dims = _read_dims(doc, "dims", ctx)
    values = _read_complex_list(doc["values"], ctx.at("values"))
    return named.amplitude_state(dims, values, _read_labels(doc, ctx))


def _build_density(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    dims = _read_dims(doc, "dims", ctx)
    total = math.prod(dims)
    raw = _read_list(doc, "matrix", ctx)
    if len(raw) == total and all(isinstance(row, list) and len(row) == total for row in raw):
        # 按行嵌套的写法
        entries = [
            _read_complex(v, f"{ctx.at('matrix')}[{i}][{j}]")
            for i, row in enumerate(raw)
            for j, v in enumerate(row)
        ]
    else:
        entries = _read_complex_list(raw, ctx.at("matrix"))
    if len(entries) != total * total:
        raise ParseError(ctx.at("matrix"), f"需要 {total * total} 个矩阵元，得到 {len(entries)} 个")
    matrix = [entries[i * total:(i + 1) * total] for i in range(total)]
    return named.density_state(dims, matrix, _read_labels(doc, ctx))


def _build_chi4(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    return named.chi4(_read_number(doc, "t", ctx), _read_labels(doc, ctx))


def _build_chi5(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    return named.chi5(_read_number(doc, "t", ctx), _read_labels(doc, ctx))


def _build_psi1(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    return named.psi1(_read_labels(doc, ctx))


def _build_psi2(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    return named.psi2(_read_labels(doc, ctx))


def _build_random_pure(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    return random_pure_state(_read_dims(doc, "dims", ctx), _read_seed(doc, ctx), _read_labels(doc, ctx))


def _build_random_mixed(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    return random_mixed_state(_read_dims(doc, "dims", ctx), _read_seed(doc, ctx), _read_labels(doc, ctx))


def _build_tensor(doc: dict[str, Any], ctx: SpecContext) -> MultipartiteState:
    factors = _read_list(doc, "factors", ctx)
    if not factors:
        raise ParseError(ctx.at("factors"), "至少需要一个因子")
    states = [ctx.parse(f, f"{ctx.at('factors')}[{i}]") for i, f in enumerate(factors)]
    return named.tensor_product(states, _read_labels(doc, ctx))


_DEFAULT_KINDS: list[tuple[str, str, Callable, tuple[str, ...], tuple[str, ...]]] = [
    ("ghz", "n 量子比特 GHZ 态", _build_ghz, ("n",), ()),
    ("graph", "简单无向图上的图态", _build_graph, ("n", "edges"), ()),
    ("product", "单体纯态的乘积", _build_product, ("factors",), ()),
    ("amplitudes", "显式振幅向量（自动归一化）", _build_amplitudes, ("dims", "values"), ()),
    ("density", "显式密度矩阵（按行展开）", _build_density, ("dims", "matrix"), ()),
    ("chi4", "六量子比特态 χ₄(t)", _build_chi4, ("t",), ()),
    ("chi5", "六量子比特态 χ₅(t)", _build_chi5, ("t",), ()),
    ("psi1", "三个 Bell 对组成的三体态", _build_psi1, (), ()),
    ("psi2", "两个 GHZ₃ 组成的三体态", _build_psi2, (), ()),
    ("random_pure", "Haar 随机纯态", _build_random_pure, ("dims",), ("seed",)),
    ("random_mixed", "随机混态 GG†/Tr", _build_random_mixed, ("dims",), ("seed",)),
    ("tensor", "子描述的张量积", _build_tensor, ("factors",), ()),
]


def default_registry() -> StateRegistry:
    """包含全部内置状态种类的注册表"""
    registry = StateRegistry()
    for name, description, builder, required, optional in _DEFAULT_KINDS:
        registry.register(StateKind(name, description, builder, required, optional))
    return registry


# ==================== 解析入口 ====================


def _parse(document: Any, ctx: SpecContext) -> MultipartiteState:
    if not isinstance(document, dict):
        raise ParseError(ctx.path, f"需要 JSON 对象，得到 {type(document).__name__}")
    if "kind" not in document:
        raise ParseError(ctx.at("kind"), "缺少必需字段")
    name = document["kind"]
    kind = ctx.registry.get(name) if isinstance(name, str) else None
    if kind is None:
        raise ParseError(
            ctx.at("kind"),
            f"未知的状态种类 {name!r}，可选: {', '.join(ctx.registry.kinds())}",
        )

    for key in kind.required:
        if key not in document:
            raise ParseError(ctx.at(key), "缺少必需字段")
    for key in sorted(document):
        if key not in kind.allowed:
            raise ParseError(ctx.at(key), f"种类 {name!r} 不接受该字段")

    try:
        state = kind.builder(document, ctx)
    except (InvalidParameter, InvalidGraph, DimensionMismatch) as e:
        raise ParseError(ctx.path, str(e)) from e
    logger.debug("解析 %s: %s", ctx.path, state)
    return state


def parse_state_spec(
    document: dict[str, Any],
    registry: StateRegistry | None = None,
    default_seed: int | None = None,
) -> MultipartiteState:
    """把状态描述文档解析为多体量子态

    Args:
        document: 已解码的 JSON 对象
        registry: 状态种类注册表，None 时使用内置注册表
        default_seed: 随机种类未给出 seed 时使用的种子

    Returns:
        多体量子态

    Raises:
        ParseError: 文档不符合格式（带 JSON 路径）
        ZeroState: 振幅向量为零

    Example:
        >>> state = parse_state_spec({"kind": "ghz", "n": 3})
        >>> state.dims
        (2, 2, 2)
    """
    return _parse(document, SpecContext("$", registry or default_registry(), default_seed))


def load_state_document(source: str) -> dict[str, Any]:
    """读取状态描述：内联 JSON，或以 ``@`` 开头的文件路径

    Raises:
        ParseError: 文件过大、无法读取或不是合法 JSON 对象
    """
    if source.startswith("@"):
        path = Path(source[1:]).expanduser()
        try:
            if path.stat().st_size > MAX_STATE_FILE_SIZE:
                raise ParseError("$", f"状态描述文件过大: {path}")
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise ParseError("$", f"无法读取状态描述文件 {path}: {e}") from e
    else:
        text = source

    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("$", f"不是合法的 JSON: {e}") from e
    if not isinstance(document, dict):
        raise ParseError("$", f"需要 JSON 对象，得到 {type(document).__name__}")
    return document
