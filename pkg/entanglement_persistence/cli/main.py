"""命令行入口

子命令：
    barcode  计算条形码，输出 JSON 文档和/或 SVG
    summary  打印摘要表
    verify   运行随机化验证套件

退出码：0 成功；1 恒等式不成立或其他失败；2 输入错误；3 前置条件不满足；4 数值失败。
诊断信息写到 stderr，机器可读的输出写到 stdout。
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence, TextIO

from entanglement_persistence.cli.svg import render_svg
from entanglement_persistence.config import MODES, Config
from entanglement_persistence.errors import PersistenceError
from entanglement_persistence.pipeline import PersistencePipeline, PipelineResult
from entanglement_persistence.summaries.report import SummaryReport
from entanglement_persistence.summaries.suites import SUITES, SuiteResult, parse_party_range

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2


def _add_state_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--state", required=True, help="内联 JSON 状态描述，或 @文件路径")
    parser.add_argument("--q", type=float, default=None, help="形变参数（默认取配置，2.0）")
    parser.add_argument("--mode", choices=MODES, default=None, help="过滤模式（默认 reduced）")
    parser.add_argument("--relative-to", default=None, help="相对模式的子集，逗号分隔的标签或下标")
    parser.add_argument("--rescale", type=float, default=None, help="缩放因子 s，端点变为 1/s 倍")
    parser.add_argument("--seed", type=int, default=None, help="随机态未给出 seed 时使用的种子")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="配置文件路径")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="更详细的日志，可重复")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entanglement-persistence",
        description="多体量子态总关联过滤的持久同调",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    barcode = sub.add_parser("barcode", help="计算条形码")
    _add_state_arguments(barcode)
    barcode.add_argument(
        "--min-length", type=float, default=0.0, help="只输出长度 ≥ 该值的区间（默认 0，保留零长区间）"
    )
    barcode.add_argument("--json", default=None, help="JSON 输出路径，- 表示 stdout")
    barcode.add_argument("--svg", default=None, help="SVG 输出路径")
    _add_common_arguments(barcode)

    summary = sub.add_parser("summary", help="打印摘要表")
    _add_state_arguments(summary)
    _add_common_arguments(summary)

    verify = sub.add_parser("verify", help="运行验证套件")
    verify.add_argument("which", choices=list(SUITES), help="套件名称")
    verify.add_argument("--trials", type=int, default=None, help="试验次数（默认 50）")
    verify.add_argument("--seed", type=int, default=None, help="基础种子，第 i 次试验使用 seed + i")
    verify.add_argument("--parties", default=None, help='子系统数范围，如 "4" 或 "3-5"')
    verify.add_argument("--workers", type=int, default=None, help="并行线程数")
    verify.add_argument("--sequential", action="store_true", help="串行运行")
    _add_common_arguments(verify)
    return parser


def _relative_to(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [part.strip() for part in text.split(",") if part.strip()]


def _run_pipeline(pipeline: PersistencePipeline, args: argparse.Namespace) -> PipelineResult:
    state = pipeline.load_state(args.state, seed=args.seed)
    return pipeline.run(
        state,
        q=args.q,
        mode=args.mode,
        relative_to=_relative_to(args.relative_to),
        rescale=args.rescale,
    )


def _write(path: str, text: str, stdout: TextIO) -> None:
    if path == "-":
        stdout.write(text)
        stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info("已写入 %s", target)


def cmd_barcode(args: argparse.Namespace, config: Config, stdout: TextIO) -> int:
    result = _run_pipeline(PersistencePipeline(config), args)
    doc = result.to_document(args.min_length)
    json_target = args.json if args.json or args.svg else "-"
    if json_target:
        _write(json_target, doc.dumps(config.output.significant_digits), stdout)
    if args.svg:
        svg = render_svg(
            doc,
            width=config.output.svg_width,
            row_height=config.output.svg_row_height,
            margin=config.output.svg_margin,
        )
        _write(args.svg, svg, stdout)
    return EXIT_OK


def _format_value(value: float | None) -> str:
    return "n/a" if value is None else format(value, ".12g")


def format_summary(report: SummaryReport) -> str:
    """对齐的摘要表"""
    rows: list[tuple[str, str]] = [
        ("mode", report.mode.value),
        ("q", _format_value(report.q)),
        ("epsilon_max", _format_value(report.epsilon_max)),
        ("iec", _format_value(report.iec)),
        ("closed_form_iec", _format_value(report.closed_form_iec)),
        ("interaction_information", _format_value(report.interaction_information)),
        ("n_tangle", _format_value(report.n_tangle)),
        ("minkowski_length", _format_value(report.minkowski_length)),
    ]
    rows += [(f"integrated_betti[{dim}]", _format_value(v)) for dim, v in sorted(report.integrated_betti.items())]
    rows.append(("total_persistence", _format_value(report.total_persistence)))
    rows += [(f"residual[{name}]", format(v, ".3e")) for name, v in report.residuals.items()]
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows) + "\n"


def cmd_summary(args: argparse.Namespace, config: Config, stdout: TextIO) -> int:
    result = _run_pipeline(PersistencePipeline(config), args)
    stdout.write(format_summary(result.report))
    return EXIT_OK


def format_suite(result: SuiteResult) -> str:
    passed = len(result.trials) - len(result.failures())
    lines = [
        f"suite        {result.name}",
        f"trials       {passed}/{len(result.trials)} passed",
        f"tolerance    {result.tolerance:.3e}",
        f"max_residual {result.max_residual:.3e}",
    ]
    if result.max_value is not None:
        lines.append(f"max_value    {result.max_value:.12g}")
    lines.append("status       " + ("ok" if result.success else "FAILED"))
    return "\n".join(lines) + "\n"


def cmd_verify(
    args: argparse.Namespace,
    config: Config,
    stdout: TextIO,
    stderr: TextIO,
) -> int:
    if args.workers is not None:
        config.verify.workers = args.workers
    pipeline = PersistencePipeline(config)
    parties = parse_party_range(args.parties) if args.parties else None
    result = pipeline.verify(
        args.which,
        trials=args.trials,
        seed=args.seed,
        parties=parties,
        parallel=False if args.sequential else None,
    )
    stdout.write(format_suite(result))
    if result.success:
        return EXIT_OK
    for trial in result.failures():
        reason = trial.error or f"residual {trial.residual:.3e}"
        stderr.write(
            f"试验 {trial.index} 失败 (seed={trial.seed}): {reason}\n"
            f"  state: {json.dumps(trial.spec, ensure_ascii=False) if trial.spec else 'n/a'}\n"
        )
        if trial.details:
            stderr.write(f"  details: {json.dumps(trial.details, ensure_ascii=False)}\n")
    return EXIT_FAILURE


def main(
    argv: Sequence[str] | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    """命令行主函数，返回退出码"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)

    try:
        config = Config.load(args.config)
    except (OSError, ValueError) as e:
        stderr.write(f"error: 无法加载配置 {args.config}: {e}\n")
        return EXIT_INPUT
    config.logging.apply(args.verbose)

    try:
        if args.command == "barcode":
            return cmd_barcode(args, config, stdout)
        if args.command == "summary":
            return cmd_summary(args, config, stdout)
        return cmd_verify(args, config, stdout, stderr)
    except PersistenceError as e:
        stderr.write(f"error: {type(e).__name__}: {e}\n")
        return e.exit_code
    except OSError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
