"""条形码的拓扑摘要

积分 Betti 数、总持久度、积分 Euler 示性数（IEC）及其闭式表达。
所有恒等式都以残差形式返回，容差由调用方决定。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from entanglement_persistence.errors import InfiniteBar, InvalidParameter
from entanglement_persistence.functionals.entropy import EntropyTable
from entanglement_persistence.functionals.functional import SubsetFunctional
from entanglement_persistence.persistence.filtration import build_filtration
from entanglement_persistence.persistence.model import (
    Barcode,
    FilteredComplex,
    FiltrationMode,
    Interval,
    is_face,
)
from entanglement_persistence.persistence.oracle import euler_characteristic
from entanglement_persistence.persistence.reduction import compute_barcode

logger = logging.getLogger(__name__)


def _upto(barcode: Barcode, upto: float | None) -> float:
    eps = barcode.epsilon_max if upto is None else float(upto)
    if not eps >= 0.0:
        raise InvalidParameter(f"积分上限必须 ≥ 0: {upto}")
    return eps


def _overlap(interval: Interval, eps: float) -> float:
    """|[b, d) ∩ [0, ε]|"""
    lo = max(interval.birth, 0.0)
    hi = min(interval.death, eps)
    return hi - lo if hi > lo else 0.0


def _sign(dim: int) -> float:
    # (−1)^{−1} = −1，增广胞腔的维数为 −1
    return -1.0 if dim % 2 else 1.0


def integrated_betti(barcode: Barcode, dim: int, upto: float | None = None) -> float:
    """积分 Betti 数 𝔅_k(ε) = ∫₀^ε β_k(ε′) dε′

    无限区间在 ε 处截断。

    Args:
        barcode: 条形码
        dim: 维数 k
        upto: 积分上限 ε，默认 ε_max

    Returns:
        Σ_{dim-k 区间} |[b, d) ∩ [0, ε]|

    Example:
        >>> integrated_betti(k3_barcode, 1)
        1.0
    """
    eps = _upto(barcode, upto)
    return math.fsum(_overlap(i, eps) for i in barcode.in_dim(dim))


def total_persistence(barcode: Barcode, upto: float | None = None) -> float:
    """总持久度 𝔅 = Σ_k 𝔅_k"""
    eps = _upto(barcode, upto)
    return math.fsum(_overlap(i, eps) for i in barcode)


def integrated_euler_characteristic(barcode: Barcode, upto: float | None = None) -> float:
    """积分 Euler 示性数 𝔛(ε) = Σ_k (−1)^k 𝔅_k(ε)

    约化模式下 −1 维区间以符号 −1 计入（实际总是零长）。默认积分到 ε_max，
    此时约化/相对同调已平凡，对应 "ε → ∞" 的值。
    """
    eps = _upto(barcode, upto)
    return math.fsum(_sign(i.dim) * _overlap(i, eps) for i in barcode)


def closed_form_iec(f: SubsetFunctional) -> float:
    """𝔛̃_F(∞) = Σ_{J≠∅} (−1)^{|J|} F(J)

    顶点值全为 0 时（C_q 总是如此）与条形码积分严格相等；否则两者相差 min_v F(v)。
    """
    values = f.values
    return math.fsum((-1.0) ** mask.bit_count() * values[mask] for mask in f.masks())


def relative_closed_form_iec(f: SubsetFunctional, relative_to: int) -> float:
    """相对 IEC 的闭式 Σ_{J⊄S} (−1)^{|J|} F(J)"""
    values = f.values
    return math.fsum(
        (-1.0) ** mask.bit_count() * values[mask]
        for mask in f.masks()
        if not is_face(mask, relative_to)
    )


def nonreduced_iec_closed_form(entropies: EntropyTable, eps: float) -> float:
    """非约化 IEC 在显式 ε 处的闭式 ε + Σ_{J≠∅} (−1)^{|J|−1} S_q(J)

    只在 ε ≥ max_J C_q(J) 时成立；结果依赖截断点，因此不提供 "ε → ∞" 的版本。

    Raises:
        InvalidParameter: ε 小于过滤的最大值
    """
    top = max(entropies.total_correlation(mask) for mask in entropies.masks())
    if eps < top:
        raise InvalidParameter(f"ε = {eps} 小于过滤最大值 {top}")
    return eps + entropies.interaction_information()


def barcode_alternating_sum(barcode: Barcode) -> float:
    """逐条求和 Σ (−1)^k (d − b)

    与积分到 ε_max 的 IEC 是同一数据的另一种遍历方式。

    Raises:
        InfiniteBar: 存在无限区间（非约化模式）
    """
    if barcode.has_infinite:
        raise InfiniteBar("存在无限长区间，交错长度和无定义；请使用约化或相对模式")
    return math.fsum(_sign(i.dim) * (i.death - i.birth) for i in barcode)


def euler_poincare_residual(
    barcode: Barcode,
    complex_: FilteredComplex,
    eps: float,
) -> float:
    """|Σ_k (−1)^k β_k(ε) − Σ_k (−1)^k n_k(ε)|"""
    betti_side = sum(
        int(_sign(dim)) * barcode.betti_at(eps, dim) for dim in barcode.dims()
    )
    return float(abs(betti_side - euler_characteristic(complex_, eps)))


@dataclass(frozen=True)
class RelativeIEC:
    """相对 IEC 的两条计算路线

    Attributes:
        relative_to: 子集 S
        barcode_value: 相对条形码积分
        closed_form: 闭式
        barcode: 相对条形码
    """
    relative_to: int
    barcode_value: float
    closed_form: float
    barcode: Barcode

    @property
    def residual(self) -> float:
        return abs(self.barcode_value - self.closed_form)


def relative_iec(
    f: SubsetFunctional,
    relative_to: int,
    monotone_tol: float = 1e-9,
) -> RelativeIEC:
    """相对于 Δ_S 的 IEC

    Args:
        f: 子集泛函
        relative_to: 真子集 S（位掩码）
        monotone_tol: 单调性容差

    Returns:
        条形码路线与闭式路线

    Raises:
        InvalidSubset: S 为空或不是真子集

    Example:
        >>> result = relative_iec(make_total_correlation_functional(ghz(3), q=1), 0b011)
        >>> round(result.barcode_value, 12)  # −I(A:B|R) = −log 2
        -0.69314718056
    """
    complex_ = build_filtration(f, FiltrationMode.RELATIVE, relative_to, monotone_tol)
    barcode = compute_barcode(complex_)
    result = RelativeIEC(
        relative_to=relative_to,
        barcode_value=integrated_euler_characteristic(barcode),
        closed_form=relative_closed_form_iec(f, relative_to),
        barcode=barcode,
    )
    logger.debug("相对 IEC: S=%#b, 残差 %.3e", relative_to, result.residual)
    return result


def _match_group(left: list[Interval], right: list[Interval], tol: float) -> bool:
    if len(left) != len(right):
        return False
    unused = list(right)
    for interval in left:
        for k, other in enumerate(unused):
            if _close(interval.birth, other.birth, tol) and _close(interval.death, other.death, tol):
                del unused[k]
                break
        else:
            return False
    return True


def _close(a: float, b: float, tol: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol


def barcodes_match(a: Barcode, b: Barcode, tol: float = 1e-9) -> bool:
    """容差意义下的条形码相等

    长度小于 tol 的区间被忽略，其余区间按维数贪心匹配，两个端点都需在 tol 以内。
    """
    for dim in sorted(set(a.dims()) | set(b.dims())):
        left = [i for i in a.in_dim(dim) if i.lifetime >= tol]
        right = [i for i in b.in_dim(dim) if i.lifetime >= tol]
        if not _match_group(left, right, tol):
            return False
    return True


def barcode_residual(a: Barcode, b: Barcode, ignore: float = 1e-9) -> float:
    """两个条形码端点的最大差

    忽略长度小于 ignore 的区间，其余按维数以 (birth, death) 排序后逐一比较；
    某一维区间个数不同时返回 inf。
    """
    worst = 0.0
    for dim in sorted(set(a.dims()) | set(b.dims())):
        left = sorted((i.birth, i.death) for i in a.in_dim(dim) if i.lifetime >= ignore)
        right = sorted((i.birth, i.death) for i in b.in_dim(dim) if i.lifetime >= ignore)
        if len(left) != len(right):
            return math.inf
        for (b1, d1), (b2, d2) in zip(left, right):
            if math.isinf(d1) or math.isinf(d2):
                if d1 != d2:
                    return math.inf
                gap = abs(b1 - b2)
            else:
                gap = max(abs(b1 - b2), abs(d1 - d2))
            worst = max(worst, gap)
    return worst
