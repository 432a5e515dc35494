"""PersistencePipeline 流水线

串联 状态解析 → 子集泛函 → 过滤 → 条形码 → 摘要 的主入口类。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from entanglement_persistence.cli.document import BarcodeDocument
from entanglement_persistence.config import Config
from entanglement_persistence.errors import InvalidSubset, TooLarge
from entanglement_persistence.functionals.functional import (
    SubsetFunctional,
    make_total_correlation_functional,
)
from entanglement_persistence.linalg.model import MultipartiteState
from entanglement_persistence.persistence.filtration import build_filtration
from entanglement_persistence.persistence.model import Barcode, FilteredComplex, FiltrationMode
from entanglement_persistence.persistence.reduction import compute_barcode
from entanglement_persistence.states.loader import (
    default_registry,
    load_state_document,
    parse_state_spec,
)
from entanglement_persistence.states.registry import StateRegistry
from entanglement_persistence.summaries.report import SummaryReport, summarize
from entanglement_persistence.summaries.suites import (
    RunMode,
    SuiteResult,
    VerificationSuite,
    get_suite,
)

logger = logging.getLogger(__name__)

RelativeTo = int | Sequence[str | int] | None


@dataclass
class PipelineResult:
    """一次完整运行的结果

    Attributes:
        state: 量子态
        functional: 子集泛函
        complex: 过滤复形
        barcode: 完整条形码（含零长区间）
        report: 摘要报告
    """
    state: MultipartiteState
    functional: SubsetFunctional
    complex: FilteredComplex
    barcode: Barcode
    report: SummaryReport

    def to_document(self, min_length: float = 0.0) -> BarcodeDocument:
        """生成条形码文档；min_length > 0 时只输出足够长的区间，摘要不受影响"""
        return BarcodeDocument.from_barcode(self.barcode.filtered(min_length), self.report)


class PersistencePipeline:
    """持久同调流水线

    Example:
        >>> pipeline = PersistencePipeline(Config.default())
        >>> state = pipeline.load_state('{"kind": "graph", "n": 3, "edges": [[0,1],[1,2],[0,2]]}')
        >>> result = pipeline.run(state, q=2, mode="reduced")
        >>> [(i.birth, i.death) for i in result.barcode.in_dim(1)]
        [(0.5, 1.5)]
    """

    def __init__(self, config: Config | None = None, registry: StateRegistry | None = None):
        """
        Args:
            config: 配置实例，如果为 None 则使用默认配置
            registry: 状态种类注册表，如果为 None 则使用内置注册表
        """
        self.config = config or Config.default()
        self._registry = registry or default_registry()
        self._solver = self.config.numerics.solver()

    @property
    def registry(self) -> StateRegistry:
        return self._registry

    def check_size(self, state: MultipartiteState) -> None:
        """
        Raises:
            TooLarge: 子系统数超过 pipeline.max_parties
        """
        limit = self.config.pipeline.max_parties
        if state.n_parties > limit:
            raise TooLarge(
                f"子系统数 {state.n_parties} 超过上限 {limit}"
                f"（需要 2^n − 1 个单纯形和对应的约化密度矩阵）"
            )

    def load_state(self, source: str, seed: int | None = None) -> MultipartiteState:
        """解析内联 JSON 或 @文件 形式的状态描述，并检查密度矩阵

        Raises:
            ParseError: 文档不合法
            TooLarge: 子系统过多
        """
        document = load_state_document(source)
        state = parse_state_spec(document, self._registry, default_seed=seed)
        self.check_size(state)
        state.validate(self.config.numerics.hermitian_tol, self.config.numerics.clamp_tol)
        return state

    def functional(
        self,
        state: MultipartiteState,
        q: float | None = None,
        rescale: float | None = None,
    ) -> SubsetFunctional:
        self.check_size(state)
        q = self.config.pipeline.q if q is None else q
        rescale = self.config.pipeline.rescale if rescale is None else rescale
        return make_total_correlation_functional(state, q, rescale, self._solver)

    def relative_mask(self, f: SubsetFunctional, relative_to: RelativeTo) -> int | None:
        """把标签或下标列表转换为位掩码

        Raises:
            InvalidSubset: 标签不存在或下标越界
        """
        if relative_to is None or isinstance(relative_to, int):
            return relative_to
        mask = 0
        for item in relative_to:
            if isinstance(item, str) and item in f.labels:
                index = f.labels.index(item)
            elif isinstance(item, str) and item.strip().isdigit():
                index = int(item)
            elif isinstance(item, int):
                index = item
            else:
                raise InvalidSubset(f"未知的子系统: {item!r}")
            if not 0 <= index < f.n_parties:
                raise InvalidSubset(f"子系统下标越界: {index}")
            mask |= 1 << index
        return mask

    def filtration(
        self,
        f: SubsetFunctional,
        mode: FiltrationMode | str | None = None,
        relative_to: RelativeTo = None,
    ) -> FilteredComplex:
        mode = FiltrationMode.parse(mode or self.config.pipeline.mode)
        if relative_to is not None and mode is not FiltrationMode.RELATIVE:
            raise InvalidSubset(f"relative_to 只用于 relative 模式，当前模式为 {mode.value}")
        return build_filtration(
            f, mode, self.relative_mask(f, relative_to), self.config.numerics.monotone_tol
        )

    def barcode(self, complex_: FilteredComplex) -> Barcode:
        return compute_barcode(complex_)

    def summarize(
        self,
        state: MultipartiteState,
        f: SubsetFunctional,
        barcode: Barcode,
    ) -> SummaryReport:
        return summarize(state, f, barcode, self._solver)

    def run(
        self,
        state: MultipartiteState,
        q: float | None = None,
        mode: FiltrationMode | str | None = None,
        relative_to: RelativeTo = None,
        rescale: float | None = None,
    ) -> PipelineResult:
        """运行完整流水线"""
        f = self.functional(state, q, rescale)
        complex_ = self.filtration(f, mode, relative_to)
        barcode = self.barcode(complex_)
        report = self.summarize(state, f, barcode)
        logger.info(
            "流水线完成: n=%d, mode=%s, %d 个区间", state.n_parties, barcode.mode.value, len(barcode)
        )
        return PipelineResult(state, f, complex_, barcode, report)

    def verify(
        self,
        name: str,
        trials: int | None = None,
        seed: int | None = None,
        parties: tuple[int, int] | None = None,
        parallel: bool | None = None,
    ) -> SuiteResult:
        """运行一个验证套件，未给出的参数取自配置"""
        settings = self.config.verify
        runner = VerificationSuite(
            get_suite(name),
            trials=settings.trials if trials is None else trials,
            seed=settings.seed if seed is None else seed,
            tolerance=settings.tolerance,
            parties=parties,
            solver=self._solver,
            monotone_tol=self.config.numerics.monotone_tol,
        )
        parallel = settings.parallel if parallel is None else parallel
        mode = RunMode.PARALLEL if parallel else RunMode.SEQUENTIAL
        return runner.execute(mode, settings.workers)

    def __repr__(self) -> str:
        return f"PersistencePipeline(kinds={len(self._registry)}, q={self.config.pipeline.q})"


def create_pipeline(config_path: str | None = None) -> PersistencePipeline:
    """创建流水线的便捷函数

    Args:
        config_path: 配置文件路径

    Returns:
        PersistencePipeline 实例
    """
    return PersistencePipeline(Config.load(config_path))
