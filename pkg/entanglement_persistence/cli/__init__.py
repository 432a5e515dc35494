"""命令行接口：条形码文档、SVG 渲染与子命令"""

from entanglement_persistence.cli.document import (
    SCHEMA_VERSION,
    BarcodeDocument,
    DocumentSummaries,
    IntervalRecord,
    encode_json,
    format_number,
)
from entanglement_persistence.cli.svg import render_svg

__all__ = [
    "SCHEMA_VERSION",
    "BarcodeDocument",
    "DocumentSummaries",
    "IntervalRecord",
    "encode_json",
    "format_number",
    "render_svg",
]
