"""条形码 JSON 文档

序列化时键的顺序固定，浮点数按 17 位有效数字输出，
因此 序列化 → 解析 → 序列化 的结果逐字节相同。
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from entanglement_persistence.config import MODES
from entanglement_persistence.errors import ParseError
from entanglement_persistence.persistence.model import Barcode, Interval
from entanglement_persistence.summaries.report import SummaryReport

SCHEMA_VERSION = "1"


def _labels(mask: int | None, labels: tuple[str, ...]) -> list[str] | None:
    if mask is None:
        return None
    return [labels[i] for i in range(len(labels)) if mask >> i & 1]


@dataclass
class IntervalRecord:
    """文档中的一个区间

    Attributes:
        dim: 维数
        birth: 出生值
        death: 死亡值，无限区间为 None
        birth_simplex: 出生单纯形的子系统标签
        death_simplex: 死亡单纯形的子系统标签，无限区间为 None
        zero_length: 是否零长
    """
    dim: int
    birth: float
    death: float | None
    birth_simplex: list[str]
    death_simplex: list[str] | None
    zero_length: bool

    @classmethod
    def from_interval(cls, interval: Interval, labels: tuple[str, ...]) -> "IntervalRecord":
        return cls(
            dim=interval.dim,
            birth=interval.birth,
            death=None if interval.is_infinite else interval.death,
            birth_simplex=_labels(interval.birth_simplex, labels) or [],
            death_simplex=_labels(interval.death_simplex, labels),
            zero_length=interval.zero_length,
        )

    @property
    def death_value(self) -> float:
        return math.inf if self.death is None else self.death

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "birth": self.birth,
            "death": self.death,
            "birth_simplex": list(self.birth_simplex),
            "death_simplex": None if self.death_simplex is None else list(self.death_simplex),
            "zero_length": self.zero_length,
        }


@dataclass
class DocumentSummaries:
    """文档中的摘要部分"""
    iec: float
    closed_form_iec: float
    interaction_information: float | None
    integrated_betti: list[dict[str, float]]
    total_persistence: float
    n_tangle: float | None = None
    minkowski_length: float | None = None

    @classmethod
    def from_report(cls, report: SummaryReport) -> "DocumentSummaries":
        return cls(
            iec=report.iec,
            closed_form_iec=report.closed_form_iec,
            interaction_information=report.interaction_information,
            integrated_betti=[
                {"dim": dim, "value": value}
                for dim, value in sorted(report.integrated_betti.items())
            ],
            total_persistence=report.total_persistence,
            n_tangle=report.n_tangle,
            minkowski_length=report.minkowski_length,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "iec": self.iec,
            "closed_form_iec": self.closed_form_iec,
            "interaction_information": self.interaction_information,
            "integrated_betti": [
                {"dim": int(entry["dim"]), "value": entry["value"]}
                for entry in self.integrated_betti
            ],
            "total_persistence": self.total_persistence,
            "n_tangle": self.n_tangle,
            "minkowski_length": self.minkowski_length,
        }


@dataclass
class BarcodeDocument:
    """条形码文档（schema_version "1"）

    Example:
        >>> doc = BarcodeDocument.from_barcode(barcode, report)
        >>> text = doc.dumps()
        >>> BarcodeDocument.loads(text).dumps() == text
        True
    """
    q: float | None
    mode: str
    relative_to: list[str] | None
    rescale: float
    epsilon_max: float
    intervals: list[IntervalRecord] = field(default_factory=list)
    summaries: DocumentSummaries | None = None
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def from_barcode(cls, barcode: Barcode, report: SummaryReport | None = None) -> "BarcodeDocument":
        labels = barcode.labels
        return cls(
            q=barcode.q,
            mode=barcode.mode.value,
            relative_to=_labels(barcode.relative_to, labels) if barcode.relative_to else None,
            rescale=barcode.rescale,
            epsilon_max=barcode.epsilon_max,
            intervals=[IntervalRecord.from_interval(i, labels) for i in barcode],
            summaries=DocumentSummaries.from_report(report) if report else None,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "q": self.q,
            "mode": self.mode,
            "relative_to": None if self.relative_to is None else list(self.relative_to),
            "rescale": self.rescale,
            "epsilon_max": self.epsilon_max,
            "intervals": [i.to_dict() for i in self.intervals],
            "summaries": self.summaries.to_dict() if self.summaries else None,
        }

    def dumps(self, digits: int = 17) -> str:
        """确定性的 JSON 文本（两空格缩进，以换行结尾）"""
        return encode_json(self.to_dict(), digits) + "\n"

    @classmethod
    def loads(cls, text: str) -> "BarcodeDocument":
        """
        Raises:
            ParseError: 不是合法的条形码文档（带 JSON 路径）
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError("$", f"不是合法的 JSON: {e}") from e
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Any) -> "BarcodeDocument":
        reader = _Reader(data, "$")
        version = reader.string("schema_version")
        if version != SCHEMA_VERSION:
            raise ParseError("$.schema_version", f"不支持的版本 {version!r}")
        mode = reader.string("mode")
        if mode not in MODES:
            raise ParseError("$.mode", f"未知的过滤模式 {mode!r}")
        intervals = [
            IntervalRecord(
                dim=item.integer("dim"),
                birth=item.number("birth"),
                death=item.number("death", nullable=True),
                birth_simplex=item.strings("birth_simplex"),
                death_simplex=item.strings("death_simplex", nullable=True),
                zero_length=item.boolean("zero_length"),
            )
            for item in reader.items("intervals")
        ]
        summaries = None
        if reader.data.get("summaries") is not None:
            s = reader.child("summaries")
            summaries = DocumentSummaries(
                iec=s.number("iec"),
                closed_form_iec=s.number("closed_form_iec"),
                interaction_information=s.number("interaction_information", nullable=True),
                integrated_betti=[
                    {"dim": entry.integer("dim"), "value": entry.number("value")}
                    for entry in s.items("integrated_betti")
                ],
                total_persistence=s.number("total_persistence"),
                n_tangle=s.number("n_tangle", nullable=True),
                minkowski_length=s.number("minkowski_length", nullable=True),
            )
        return cls(
            q=reader.number("q", nullable=True),
            mode=mode,
            relative_to=reader.strings("relative_to", nullable=True),
            rescale=reader.number("rescale"),
            epsilon_max=reader.number("epsilon_max"),
            intervals=intervals,
            summaries=summaries,
            schema_version=version,
        )


class _Reader:
    """带 JSON 路径的字段读取"""

    def __init__(self, data: Any, path: str):
        if not isinstance(data, dict):
            raise ParseError(path, f"需要 JSON 对象，得到 {type(data).__name__}")
        self.data = data
        self.path = path

    def _get(self, key: str, nullable: bool) -> Any:
        if key not in self.data:
            raise ParseError(f"{self.path}.{key}", "缺少必需字段")
        value = self.data[key]
        if value is None and not nullable:
            raise ParseError(f"{self.path}.{key}", "不能为 null")
        return value

    def string(self, key: str) -> str:
        value = self._get(key, False)
        if not isinstance(value, str):
            raise ParseError(f"{self.path}.{key}", "需要字符串")
        return value

    def number(self, key: str, nullable: bool = False) -> float | None:
        value = self._get(key, nullable)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{self.path}.{key}", "需要数值")
        return float(value)

    def integer(self, key: str) -> int:
        value = self._get(key, False)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"{self.path}.{key}", "需要整数")
        return value

    def boolean(self, key: str) -> bool:
        value = self._get(key, False)
        if not isinstance(value, bool):
            raise ParseError(f"{self.path}.{key}", "需要布尔值")
        return value

    def strings(self, key: str, nullable: bool = False) -> list[str] | None:
        value = self._get(key, nullable)
        if value is None:
            return None
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise ParseError(f"{self.path}.{key}", "需要字符串列表")
        return list(value)

    def child(self, key: str) -> "_Reader":
        return _Reader(self._get(key, False), f"{self.path}.{key}")

    def items(self, key: str) -> list["_Reader"]:
        value = self._get(key, False)
        if not isinstance(value, list):
            raise ParseError(f"{self.path}.{key}", "需要列表")
        return [_Reader(v, f"{self.path}.{key}[{i}]") for i, v in enumerate(value)]


def format_number(value: float, digits: int = 17) -> str:
    """按有效数字输出浮点数（JSON 合法）"""
    if not math.isfinite(value):
        raise ValueError(f"JSON 不能表示非有限数: {value}")
    if value == 0.0:
        # -0 解析后变成整数 0，统一输出 0
        return "0"
    return format(value, f".{digits}g")


def encode_json(value: Any, digits: int = 17, indent: int = 2, level: int = 0) -> str:
    """确定性的 JSON 编码：保持字典顺序，浮点数固定有效数字"""
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value, digits)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(
            f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {encode_json(v, digits, indent, level + 1)}"
            for k, v in value.items()
        )
        return "{\n" + body + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        body = ",\n".join(f"{pad}{encode_json(v, digits, indent, level + 1)}" for v in value)
        return "[\n" + body + "\n" + end + "]"
    raise TypeError(f"无法编码的类型: {type(value).__name__}")
