"""单个量子态的摘要报告"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from entanglement_persistence.functionals.entropy import interaction_information
from entanglement_persistence.functionals.functional import SubsetFunctional
from entanglement_persistence.functionals.tangle import (
    MAX_BLOCH_QUBITS,
    bloch_vector,
    minkowski_length,
    n_tangle_direct,
)
from entanglement_persistence.linalg.model import MultipartiteState
from entanglement_persistence.linalg.ops import EigenSolver, trace_power
from entanglement_persistence.persistence.model import Barcode, FiltrationMode
from entanglement_persistence.summaries.topology import (
    closed_form_iec,
    integrated_betti,
    integrated_euler_characteristic,
    relative_closed_form_iec,
    total_persistence,
)

logger = logging.getLogger(__name__)

# 判定纯态 Tr ρ² ≥ 1 − PURITY_TOL
PURITY_TOL = 1e-9


@dataclass
class SummaryReport:
    """条形码摘要与各计算路线之间的残差

    Attributes:
        mode: 过滤模式
        q: 形变参数
        epsilon_max: 积分上限
        integrated_betti: 维数 → 𝔅_k(ε_max)
        total_persistence: 𝔅
        iec: 条形码积分得到的 IEC
        closed_form_iec: 与模式对应的闭式 IEC
        interaction_information: I_q / s（仅总关联泛函）
        minkowski_length: Bloch 向量的 Minkowski 长度（仅量子比特）
        n_tangle: τ_n（仅量子比特且 n 为偶数）
        residuals: 路线名称 → 绝对差
    """
    mode: FiltrationMode
    q: float | None
    epsilon_max: float
    integrated_betti: dict[int, float]
    total_persistence: float
    iec: float
    closed_form_iec: float
    interaction_information: float | None = None
    minkowski_length: float | None = None
    n_tangle: float | None = None
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode.value,
            "q": self.q,
            "epsilon_max": self.epsilon_max,
            "integrated_betti": dict(self.integrated_betti),
            "total_persistence": self.total_persistence,
            "iec": self.iec,
            "closed_form_iec": self.closed_form_iec,
            "interaction_information": self.interaction_information,
            "minkowski_length": self.minkowski_length,
            "n_tangle": self.n_tangle,
            "residuals": dict(self.residuals),
        }


def _is_pure(state: MultipartiteState) -> bool:
    return trace_power(state.rho, 2) >= 1.0 - PURITY_TOL


def summarize(
    state: MultipartiteState,
    f: SubsetFunctional,
    barcode: Barcode,
    solver: EigenSolver | None = None,
) -> SummaryReport:
    """汇总条形码并交叉检验

    IEC 积分到 ε_max。闭式随模式变化：约化为 Σ(−1)^{|J|}F(J)，
    相对为 Σ_{J⊄S}(−1)^{|J|}F(J)，非约化为 ε_max + Σ(−1)^{|J|}F(J)。

    Args:
        state: 量子态
        f: 由 state 构造的子集泛函
        barcode: f 的条形码
        solver: 特征值求解设置

    Returns:
        摘要报告
    """
    eps = barcode.epsilon_max
    iec = integrated_euler_characteristic(barcode, eps)
    if barcode.mode is FiltrationMode.RELATIVE:
        closed = relative_closed_form_iec(f, barcode.relative_to)
    elif barcode.mode is FiltrationMode.ABSOLUTE:
        closed = eps + closed_form_iec(f)
    else:
        closed = closed_form_iec(f)

    report = SummaryReport(
        mode=barcode.mode,
        q=f.q,
        epsilon_max=eps,
        integrated_betti={dim: integrated_betti(barcode, dim, eps) for dim in barcode.dims()},
        total_persistence=total_persistence(barcode, eps),
        iec=iec,
        closed_form_iec=closed,
        residuals={"closed_form": abs(iec - closed)},
    )

    if f.name == "total_correlation" and f.q is not None:
        report.interaction_information = interaction_information(state, f.q, solver) / f.rescale
        if barcode.mode is FiltrationMode.REDUCED:
            report.residuals["interaction_information"] = abs(iec - report.interaction_information)

    if state.is_qubits and state.n_parties <= MAX_BLOCH_QUBITS:
        report.minkowski_length = minkowski_length(bloch_vector(state))
        if state.n_parties % 2 == 0:
            report.n_tangle = n_tangle_direct(state)
            report.residuals["minkowski_tangle"] = abs(report.minkowski_length - report.n_tangle)
            # 纯态、q = 2 时约化 IEC 等于 n-tangle
            if (
                f.name == "total_correlation"
                and f.q == 2.0
                and barcode.mode is FiltrationMode.REDUCED
                and _is_pure(state)
            ):
                report.residuals["tangle"] = abs(iec * f.rescale - report.n_tangle)

    logger.info("摘要: IEC=%.12g, 最大残差 %.3e", iec, report.max_residual)
    return report
