"""恒等式校验

每个校验函数独立地沿多条路线计算同一个量，返回各路线的值和两两之间的残差。
是否通过由调用方按容差判断。
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any

from entanglement_persistence.errors import NotQubitState, PartyCountMismatch
from entanglement_persistence.functionals.entropy import (
    conditional_mutual_information,
    entropy_table,
    mutual_information,
)
from entanglement_persistence.functionals.functional import make_total_correlation_functional
from entanglement_persistence.functionals.tangle import (
    bloch_vector,
    minkowski_length,
    n_tangle_direct,
)
from entanglement_persistence.linalg.model import MultipartiteState
from entanglement_persistence.linalg.ops import EigenSolver
from entanglement_persistence.persistence.filtration import build_filtration
from entanglement_persistence.persistence.model import FiltrationMode
from entanglement_persistence.persistence.reduction import compute_barcode
from entanglement_persistence.summaries.topology import (
    barcode_alternating_sum,
    closed_form_iec,
    integrated_euler_characteristic,
    relative_iec,
)

logger = logging.getLogger(__name__)

# 符号检查（≤ 0 或 ≥ 0）的默认容差
SIGN_TOL = 1e-10


@dataclass
class IdentityCheck:
    """一次恒等式校验的结果

    Attributes:
        name: 校验名称
        value: 主路线（条形码）的值
        routes: 路线名称 → 值
        residuals: "路线1~路线2" → 绝对差
        sign_ok: 符号条件是否成立（无符号条件时为 None）
    """
    name: str
    value: float
    routes: dict[str, float] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)
    sign_ok: bool | None = None

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_residual <= tol and self.sign_ok is not False

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "value": self.value,
            "routes": dict(self.routes),
            "residuals": dict(self.residuals),
            "sign_ok": self.sign_ok,
        }


def _pairwise(routes: dict[str, float]) -> dict[str, float]:
    return {
        f"{a}~{b}": abs(routes[a] - routes[b])
        for a, b in itertools.combinations(routes, 2)
    }


def _reduced_routes(
    state: MultipartiteState,
    q: float,
    solver: EigenSolver | None,
    monotone_tol: float,
) -> dict[str, float]:
    f = make_total_correlation_functional(state, q, solver=solver)
    barcode = compute_barcode(build_filtration(f, FiltrationMode.REDUCED, None, monotone_tol))
    return {
        "barcode_iec": integrated_euler_characteristic(barcode),
        "alternating_sum": barcode_alternating_sum(barcode),
        "closed_form": closed_form_iec(f),
        "interaction_information": entropy_table(state, q, solver).interaction_information(),
    }


def verify_thm1(
    state: MultipartiteState,
    q: float = 2.0,
    solver: EigenSolver | None = None,
    monotone_tol: float = 1e-9,
) -> IdentityCheck:
    """约化 IEC 等于 q 形变交互信息

    路线：条形码积分、逐条交错和、闭式、熵的交错和 I_q。
    """
    routes = _reduced_routes(state, q, solver, monotone_tol)
    check = IdentityCheck("thm1", routes["barcode_iec"], routes, _pairwise(routes))
    logger.debug("thm1: q=%s, 最大残差 %.3e", q, check.max_residual)
    return check


def verify_thm2(
    state: MultipartiteState,
    solver: EigenSolver | None = None,
    monotone_tol: float = 1e-9,
) -> IdentityCheck:
    """q = 2 时约化 IEC = I₂ = Minkowski 长度 = n-tangle

    只对偶数个量子比特的纯态成立。

    Raises:
        NotQubitState: 存在非量子比特子系统
        PartyCountMismatch: 子系统数为奇数
    """
    if not state.is_qubits:
        raise NotQubitState(f"n-tangle 只对量子比特定义，局部维度为 {state.dims}")
    if state.n_parties % 2:
        raise PartyCountMismatch(f"n-tangle 恒等式要求偶数个量子比特，得到 {state.n_parties}")
    routes = _reduced_routes(state, 2.0, solver, monotone_tol)
    routes["minkowski_length"] = minkowski_length(bloch_vector(state))
    routes["n_tangle"] = n_tangle_direct(state)
    check = IdentityCheck("thm2", routes["barcode_iec"], routes, _pairwise(routes))
    logger.debug("thm2: 最大残差 %.3e", check.max_residual)
    return check


def verify_thm3(
    state: MultipartiteState,
    solver: EigenSolver | None = None,
    monotone_tol: float = 1e-9,
    sign_tol: float = SIGN_TOL,
) -> IdentityCheck:
    """三体态相对于 Δ_{A,B} 的 IEC 等于 −I(A:B|R) ≤ 0（冯·诺依曼熵）

    Raises:
        PartyCountMismatch: 子系统数不是 3
    """
    if state.n_parties != 3:
        raise PartyCountMismatch(f"需要恰好 3 个子系统，得到 {state.n_parties}")
    f = make_total_correlation_functional(state, 1.0, solver=solver)
    result = relative_iec(f, 0b011, monotone_tol)
    routes = {
        "barcode_iec": result.barcode_value,
        "closed_form": result.closed_form,
        "negative_cmi": -conditional_mutual_information(state, 1.0, solver),
    }
    return IdentityCheck(
        "thm3",
        result.barcode_value,
        routes,
        _pairwise(routes),
        sign_ok=result.barcode_value <= sign_tol,
    )


def verify_corollary_bipartite(
    state: MultipartiteState,
    solver: EigenSolver | None = None,
    monotone_tol: float = 1e-9,
    sign_tol: float = SIGN_TOL,
) -> IdentityCheck:
    """两体态相对于 Δ_{A} 的 IEC 等于互信息 I(A:B) ≥ 0

    Raises:
        PartyCountMismatch: 子系统数不是 2
    """
    if state.n_parties != 2:
        raise PartyCountMismatch(f"需要恰好 2 个子系统，得到 {state.n_parties}")
    f = make_total_correlation_functional(state, 1.0, solver=solver)
    result = relative_iec(f, 0b01, monotone_tol)
    routes = {
        "barcode_iec": result.barcode_value,
        "closed_form": result.closed_form,
        "mutual_information": mutual_information(state, 0b01, 0b10, 1.0, solver),
    }
    return IdentityCheck(
        "corollary",
        result.barcode_value,
        routes,
        _pairwise(routes),
        sign_ok=result.barcode_value >= -sign_tol,
    )
