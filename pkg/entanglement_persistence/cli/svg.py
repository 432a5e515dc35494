"""条形码的 SVG 渲染

每个区间占一行，按维数升序分组，组内按 (birth, death) 排序；
无限区间画到右边界并带箭头；x 轴刻度位于各个不同的过滤值处。
输出只依赖文档内容，同一文档两次渲染逐字节相同。
"""

from __future__ import annotations

import html
import math

from entanglement_persistence.cli.document import BarcodeDocument, IntervalRecord

# 各维数的颜色，按 dim + 1 循环取用
PALETTE = ("#7f7f7f", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

LEFT = 60
RIGHT = 40
TOP = 30


def _escape(text: str) -> str:
    return html.escape(text, quote=True)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _sorted_rows(doc: BarcodeDocument) -> list[IntervalRecord]:
    return sorted(doc.intervals, key=lambda i: (i.dim, i.birth, i.death_value))


def render_svg(
    doc: BarcodeDocument,
    width: int = 800,
    row_height: int = 20,
    margin: int = 80,
) -> str:
    """渲染条形码

    Args:
        doc: 条形码文档
        width: 画布宽度
        row_height: 每行高度
        margin: 坐标轴与标题占用的额外高度

    Returns:
        SVG 1.1 文本，尺寸 width × (row_height·区间数 + margin)
    """
    rows = _sorted_rows(doc)
    height = row_height * len(rows) + margin
    x0, x1 = LEFT, width - RIGHT
    finite = sorted({i.birth for i in rows} | {i.death for i in rows if i.death is not None})
    top_value = max([doc.epsilon_max, *finite], default=0.0)
    span = top_value if top_value > 0 else 1.0

    def x_of(value: float) -> float:
        return x0 + (x1 - x0) * min(max(value, 0.0), span) / span

    title = f"mode={doc.mode} q={'n/a' if doc.q is None else format(doc.q, 'g')}"
    if doc.relative_to:
        title += " relative_to=" + ",".join(doc.relative_to)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{LEFT}" y="18" font-family="sans-serif" font-size="12">{_escape(title)}</text>',
    ]

    previous_dim: int | None = None
    for k, interval in enumerate(rows):
        y = TOP + k * row_height + row_height / 2
        color = PALETTE[(interval.dim + 1) % len(PALETTE)]
        if interval.dim != previous_dim:
            lines.append(
                f'<text x="8" y="{_fmt(y + 4)}" font-family="sans-serif" font-size="11">'
                f'{_escape(f"H{interval.dim}")}</text>'
            )
            previous_dim = interval.dim
        start = x_of(interval.birth)
        if interval.death is None:
            end = float(x1)
            lines.append(
                f'<line x1="{_fmt(start)}" y1="{_fmt(y)}" x2="{_fmt(end - 6)}" y2="{_fmt(y)}" '
                f'stroke="{color}" stroke-width="{row_height // 3}"/>'
            )
            lines.append(
                f'<polygon points="{_fmt(end - 8)},{_fmt(y - 6)} {_fmt(end)},{_fmt(y)} '
                f'{_fmt(end - 8)},{_fmt(y + 6)}" fill="{color}"/>'
            )
        else:
            end = max(x_of(interval.death), start + 1.0)
            lines.append(
                f'<line x1="{_fmt(start)}" y1="{_fmt(y)}" x2="{_fmt(end)}" y2="{_fmt(y)}" '
                f'stroke="{color}" stroke-width="{row_height // 3}"/>'
            )

    axis_y = TOP + len(rows) * row_height + 10
    lines.append(
        f'<line x1="{x0}" y1="{axis_y}" x2="{x1}" y2="{axis_y}" stroke="black" stroke-width="1"/>'
    )
    for value in finite:
        if not math.isfinite(value):
            continue
        x = x_of(value)
        lines.append(
            f'<line x1="{_fmt(x)}" y1="{axis_y}" x2="{_fmt(x)}" y2="{axis_y + 5}" '
            f'stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{_fmt(x)}" y="{axis_y + 18}" font-family="sans-serif" font-size="10" '
            f'text-anchor="middle">{_escape(format(value, ".4g"))}</text>'
        )
    lines.append(
        f'<text x="{x1}" y="{axis_y + 34}" font-family="sans-serif" font-size="11" '
        f'text-anchor="end">ε</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
