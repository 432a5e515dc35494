"""随机化验证套件

每个套件对若干个随机态运行一次校验；第 i 次试验的种子为 seed + i，
因此任何失败都可以单独复现。试验中的异常被包装为失败结果，不会中断整个套件。

Example:
    >>> suite = VerificationSuite(get_suite("thm1"), trials=50, seed=7)
    >>> result = suite.run()
    >>> result.success
    True
    >>> result = await suite.run_async(workers=4)  # 线程池并行，结果顺序不变
"""

from __future__ import annotations

import asyncio
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

import numpy as np

from entanglement_persistence.errors import InvalidParameter, PartyCountMismatch
from entanglement_persistence.functionals.functional import (
    covering_pairs,
    make_total_correlation_functional,
)
from entanglement_persistence.linalg.model import MultipartiteState
from entanglement_persistence.linalg.ops import EigenSolver
from entanglement_persistence.linalg.random import (
    apply_local_unitaries,
    make_rng,
    random_local_unitaries,
)
from entanglement_persistence.persistence.filtration import (
    build_filtration,
    complex_at,
    sublevel_set_brute,
)
from entanglement_persistence.persistence.model import FiltrationMode, is_face
from entanglement_persistence.persistence.oracle import MAX_ORACLE_PARTIES, oracle_betti
from entanglement_persistence.persistence.reduction import compute_barcode
from entanglement_persistence.states.loader import parse_state_spec
from entanglement_persistence.states.named import all_degrees_odd, random_graph
from entanglement_persistence.summaries.theorems import (
    verify_corollary_bipartite,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)
from entanglement_persistence.summaries.topology import (
    barcode_residual,
    integrated_euler_characteristic,
)

logger = logging.getLogger(__name__)

Q_CHOICES = (1.0, 1.5, 2.0)


class RunMode(Enum):
    """套件执行模式"""
    SEQUENTIAL = "sequential"  # 串行执行
    PARALLEL = "parallel"      # 线程池并行


@dataclass
class TrialContext:
    """单次试验的输入

    Attributes:
        index: 试验序号
        seed: 本次试验的种子（seed + index）
        n_parties: 抽到的子系统数
        rng: 由 seed 初始化的随机数生成器
        solver: 特征值求解设置
        monotone_tol: 单调性容差
    """
    index: int
    seed: int
    n_parties: int
    rng: np.random.Generator
    solver: EigenSolver | None = None
    monotone_tol: float = 1e-9

    def random_spec(self, dims_choices: tuple[int, ...] = (2, 3), mixed: bool | None = None) -> dict[str, Any]:
        """抽取一个可复现的随机态描述"""
        dims = [int(self.rng.choice(dims_choices)) for _ in range(self.n_parties)]
        if mixed is None:
            mixed = bool(self.rng.integers(2))
        return {
            "kind": "random_mixed" if mixed else "random_pure",
            "dims": dims,
            "seed": int(self.rng.integers(2**31)),
        }

    def build(self, spec: dict[str, Any]) -> MultipartiteState:
        return parse_state_spec(spec)

    def choose_q(self) -> float:
        return float(self.rng.choice(Q_CHOICES))


@dataclass
class TrialOutcome:
    """试验函数的返回值

    Attributes:
        residual: 残差（由套件容差判定）
        value: 报告用的主值
        spec: 复现用的状态描述
        ok: 额外条件（例如符号）是否成立
        details: 其他参数（例如 q）
    """
    residual: float
    value: float | None = None
    spec: dict[str, Any] | None = None
    ok: bool = True
    details: dict[str, Any] = field(default_factory=dict)


@dataclass
class TrialResult:
    """单次试验结果

    Attributes:
        index: 试验序号
        seed: 试验种子
        success: 是否通过
        residual: 残差
        value: 主值
        spec: 状态描述
        error: 错误信息（如果失败）
    """
    index: int
    seed: int
    success: bool
    residual: float = math.nan
    value: float | None = None
    spec: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "seed": self.seed,
            "success": self.success,
            "residual": self.residual,
            "value": self.value,
            "spec": self.spec,
            "details": dict(self.details),
            "error": self.error,
        }


@dataclass
class SuiteResult:
    """套件结果

    Attributes:
        name: 套件名称
        tolerance: 残差容差
        trials: 各次试验结果（按序号排列）
    """
    name: str
    tolerance: float
    trials: list[TrialResult] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return bool(self.trials) and all(t.success for t in self.trials)

    @property
    def max_residual(self) -> float:
        """所有试验的最大残差（出错的试验为 nan 时返回 inf）"""
        residuals = [t.residual for t in self.trials]
        if any(math.isnan(r) for r in residuals):
            return math.inf
        return max(residuals, default=0.0)

    @property
    def max_value(self) -> float | None:
        values = [t.value for t in self.trials if t.value is not None]
        return max(values) if values else None

    def failures(self) -> list[TrialResult]:
        return [t for t in self.trials if not t.success]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "tolerance": self.tolerance,
            "success": self.success,
            "max_residual": self.max_residual,
            "max_value": self.max_value,
            "trials": [t.to_dict() for t in self.trials],
        }


TrialFunction = Callable[[TrialContext], TrialOutcome]


@dataclass(frozen=True)
class Suite:
    """验证套件定义

    Attributes:
        name: 套件名称
        description: 描述
        trial: 试验函数
        parties: 默认的子系统数范围 (最小, 最大)
        allowed: 子系统数的额外约束
        tolerance: 固定容差，None 时使用调用方给出的容差
    """
    name: str
    description: str
    trial: TrialFunction
    parties: tuple[int, int]
    allowed: Callable[[int], bool] = lambda n: True
    tolerance: float | None = None

    def party_counts(self, parties: tuple[int, int] | None = None) -> list[int]:
        """可用的子系统数

        Raises:
            PartyCountMismatch: 范围内没有满足约束的子系统数
        """
        low, high = parties or self.parties
        counts = [n for n in range(low, high + 1) if self.allowed(n)]
        if not counts:
            raise PartyCountMismatch(f"套件 {self.name} 不接受子系统数范围 {low}..{high}")
        return counts


# ==================== 试验函数 ====================


def _thm1_trial(ctx: TrialContext) -> TrialOutcome:
    spec = ctx.random_spec()
    q = ctx.choose_q()
    check = verify_thm1(ctx.build(spec), q, ctx.solver, ctx.monotone_tol)
    return TrialOutcome(check.max_residual, check.value, spec, details={"q": q})


def _thm2_trial(ctx: TrialContext) -> TrialOutcome:
    spec = ctx.random_spec(dims_choices=(2,), mixed=False)
    check = verify_thm2(ctx.build(spec), ctx.solver, ctx.monotone_tol)
    return TrialOutcome(check.max_residual, check.value, spec)


def _thm3_trial(ctx: TrialContext) -> TrialOutcome:
    spec = ctx.random_spec(dims_choices=(2,), mixed=True)
    check = verify_thm3(ctx.build(spec), ctx.solver, ctx.monotone_tol)
    return TrialOutcome(check.max_residual, check.value, spec, ok=bool(check.sign_ok))


def _corollary_trial(ctx: TrialContext) -> TrialOutcome:
    spec = ctx.random_spec()
    check = verify_corollary_bipartite(ctx.build(spec), ctx.solver, ctx.monotone_tol)
    return TrialOutcome(check.max_residual, check.value, spec, ok=bool(check.sign_ok))


def _monotonicity_trial(ctx: TrialContext) -> TrialOutcome:
    spec = ctx.random_spec()
    q = ctx.choose_q()
    f = make_total_correlation_functional(ctx.build(spec), q, solver=ctx.solver)
    values = f.values
    # 最大违反量 max(F(J∖v) − F(J), 0)
    margin = max(
        (float(values[face] - values[coface]) for face, coface in covering_pairs(f.n_parties)),
        default=0.0,
    )
    return TrialOutcome(max(margin, 0.0), spec=spec, details={"q": q})


def _lu_trial(ctx: TrialContext) -> TrialOutcome:
    spec = ctx.random_spec()
    q = ctx.choose_q()
    state = ctx.build(spec)
    rotated = apply_local_unitaries(state, random_local_unitaries(state.dims, ctx.rng))
    before = compute_barcode(build_filtration(
        make_total_correlation_functional(state, q, solver=ctx.solver),
        FiltrationMode.REDUCED, None, ctx.monotone_tol,
    ))
    after = compute_barcode(build_filtration(
        make_total_correlation_functional(rotated, q, solver=ctx.solver),
        FiltrationMode.REDUCED, None, ctx.monotone_tol,
    ))
    return TrialOutcome(barcode_residual(before, after), spec=spec, details={"q": q})


def _oracle_trial(ctx: TrialContext, samples: int = 20) -> TrialOutcome:
    spec = ctx.random_spec()
    q = ctx.choose_q()
    f = make_total_correlation_functional(ctx.build(spec), q, solver=ctx.solver)
    n = f.n_parties
    # 非空真子集
    relative_to = int(ctx.rng.integers(1, f.full_mask))
    mismatches = 0
    for mode in FiltrationMode:
        subset = relative_to if mode is FiltrationMode.RELATIVE else None
        complex_ = build_filtration(f, mode, subset, ctx.monotone_tol)
        barcode = compute_barcode(complex_)
        top = complex_.epsilon_max
        # 一半样本取过滤值本身，检验右连续约定
        grid = list(ctx.rng.uniform(0.0, 1.1 * top + 1e-3, samples - samples // 2))
        grid += [float(v) for v in ctx.rng.choice(complex_.values, samples // 2)]
        for eps in grid:
            for dim in range(-1, n):
                expected = oracle_betti(f, eps, dim, mode, subset, ctx.monotone_tol)
                if barcode.betti_at(eps, dim) != expected:
                    mismatches += 1
    return TrialOutcome(
        float(mismatches), spec=spec, details={"q": q, "relative_to": relative_to}
    )


def _parity_trial(ctx: TrialContext) -> TrialOutcome:
    graph = random_graph(ctx.n_parties, seed=int(ctx.rng.integers(2**31)))
    spec = {"kind": "graph", "n": ctx.n_parties, "edges": [list(e) for e in sorted(graph.edges)]}
    state = ctx.build(spec)
    f = make_total_correlation_functional(state, 2.0, solver=ctx.solver)
    iec = integrated_euler_characteristic(
        compute_barcode(build_filtration(f, FiltrationMode.REDUCED, None, ctx.monotone_tol))
    )
    expected = 1.0 if all_degrees_odd(graph) else 0.0
    return TrialOutcome(abs(iec - expected), iec, spec, details={"expected": expected})


def _lattice_trial(ctx: TrialContext) -> TrialOutcome:
    spec = ctx.random_spec()
    q = ctx.choose_q()
    f = make_total_correlation_functional(ctx.build(spec), q, solver=ctx.solver)
    eps = float(ctx.rng.uniform(0.0, f.max_value))
    walk = complex_at(f, eps)
    brute = sublevel_set_brute(f, eps, ctx.monotone_tol)
    same = walk.simplices == brute.simplices
    closure_used = any(
        small != big and is_face(small, big)
        for small in walk.simplices
        for big in walk.simplices
    )
    saved = walk.evaluations < brute.evaluations
    ok = same and (saved or not closure_used)
    return TrialOutcome(
        0.0 if ok else 1.0,
        float(walk.evaluations),
        spec,
        details={"eps": eps, "q": q, "brute_evaluations": brute.evaluations},
    )


# ==================== 套件注册 ====================


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in [
        Suite("thm1", "约化 IEC = q 形变交互信息", _thm1_trial, (3, 5)),
        Suite(
            "thm2", "约化 IEC = I₂ = Minkowski 长度 = n-tangle（纯态）", _thm2_trial, (4, 4),
            allowed=lambda n: n % 2 == 0 and 2 <= n <= 8,
        ),
        Suite("thm3", "相对 IEC = −I(A:B|R) ≤ 0", _thm3_trial, (3, 3), allowed=lambda n: n == 3),
        Suite(
            "corollary", "两体相对 IEC = I(A:B) ≥ 0", _corollary_trial, (2, 2),
            allowed=lambda n: n == 2,
        ),
        Suite("monotonicity", "总关联在覆盖对上单调", _monotonicity_trial, (2, 4), tolerance=1e-9),
        Suite("lu-invariance", "局部幺正不改变条形码", _lu_trial, (2, 4), tolerance=1e-9),
        Suite(
            "oracle", "条形码 Betti 数与秩预言机一致", _oracle_trial, (2, 5),
            allowed=lambda n: 2 <= n <= MAX_ORACLE_PARTIES, tolerance=0.0,
        ),
        Suite("parity", "图态 IEC 等于全奇度指示", _parity_trial, (6, 6)),
        Suite("lattice", "格遍历与暴力枚举一致且求值更少", _lattice_trial, (2, 5), tolerance=0.0),
    ]
}


def get_suite(name: str) -> Suite:
    """
    Raises:
        InvalidParameter: 未知的套件名称
    """
    try:
        return SUITES[name]
    except KeyError:
        raise InvalidParameter(
            f"未知的验证套件 {name!r}，可选: {', '.join(SUITES)}"
        ) from None


def parse_party_range(text: str) -> tuple[int, int]:
    """解析 "4" 或 "3-5" 形式的子系统数范围

    Raises:
        InvalidParameter: 格式错误或范围为空
    """
    try:
        if "-" in text:
            low, high = (int(part) for part in text.split("-", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise InvalidParameter(f"无法解析子系统数范围: {text!r}") from None
    if low < 1 or high < low:
        raise InvalidParameter(f"子系统数范围无效: {text!r}")
    return low, high


class VerificationSuite:
    """运行一个验证套件

    Example:
        >>> runner = VerificationSuite(get_suite("thm3"), trials=50, seed=7)
        >>> runner.run().max_value <= 1e-10
        True
    """

    def __init__(
        self,
        suite: Suite,
        trials: int = 50,
        seed: int = 7,
        tolerance: float = 1e-8,
        parties: tuple[int, int] | None = None,
        solver: EigenSolver | None = None,
        monotone_tol: float = 1e-9,
    ):
        """
        Raises:
            InvalidParameter: trials < 1
            PartyCountMismatch: 子系统数范围与套件不兼容
        """
        if trials < 1:
            raise InvalidParameter(f"试验次数必须 ≥ 1: {trials}")
        self.suite = suite
        self.trials = trials
        self.seed = seed
        self.tolerance = suite.tolerance if suite.tolerance is not None else tolerance
        self.counts = suite.party_counts(parties)
        self.solver = solver
        self.monotone_tol = monotone_tol

    def run_trial(self, index: int) -> TrialResult:
        """运行第 index 次试验，异常被包装为失败结果"""
        seed = self.seed + index
        rng = make_rng(seed)
        n = int(rng.choice(self.counts))
        ctx = TrialContext(index, seed, n, rng, self.solver, self.monotone_tol)
        try:
            outcome = self.suite.trial(ctx)
        except Exception as e:
            logger.warning("套件 %s 第 %d 次试验出错 (seed=%d): %s", self.suite.name, index, seed, e)
            return TrialResult(index, seed, success=False, error=f"{type(e).__name__}: {e}")
        success = outcome.ok and outcome.residual <= self.tolerance
        return TrialResult(
            index,
            seed,
            success=success,
            residual=outcome.residual,
            value=outcome.value,
            spec=outcome.spec,
            details=outcome.details,
        )

    def _finish(self, trials: list[TrialResult]) -> SuiteResult:
        result = SuiteResult(self.suite.name, self.tolerance, trials)
        logger.info(
            "套件 %s: %d/%d 通过, 最大残差 %.3e",
            self.suite.name,
            len(trials) - len(result.failures()),
            len(trials),
            result.max_residual,
        )
        return result

    def run(self) -> SuiteResult:
        """串行运行全部试验"""
        return self._finish([self.run_trial(i) for i in range(self.trials)])

    async def run_async(self, workers: int = 4) -> SuiteResult:
        """在线程中并行运行试验，结果按序号汇总"""
        semaphore = asyncio.Semaphore(max(1, workers))

        async def run_one(index: int) -> TrialResult:
            async with semaphore:
                return await asyncio.to_thread(self.run_trial, index)

        results = await asyncio.gather(*(run_one(i) for i in range(self.trials)))
        return self._finish(list(results))

    def execute(self, mode: RunMode = RunMode.SEQUENTIAL, workers: int = 4) -> SuiteResult:
        """同步入口；并行模式在新的事件循环中运行"""
        if mode is RunMode.PARALLEL:
            return asyncio.run(self.run_async(workers))
        return self.run()
