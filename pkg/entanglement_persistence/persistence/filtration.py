"""子水平集过滤

由子集泛函构造幂集单纯复形的过滤 G(ε) = {J : F(J) ≤ ε}。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import NDArray

from entanglement_persistence.errors import InvalidParameter, InvalidSubset, MonotonicityViolation
from entanglement_persistence.functionals.functional import SubsetFunctional
from entanglement_persistence.persistence.model import (
    AUGMENTATION,
    FilteredComplex,
    FiltrationMode,
    facets,
    filtration_key,
    is_face,
)

logger = logging.getLogger(__name__)


def filtration_values(f: SubsetFunctional, monotone_tol: float = 1e-9) -> NDArray[np.float64]:
    """单调包络 F̂(J) = max(F(J), max_v F̂(J∖{v}))

    不超过 monotone_tol 的浮点噪声被修正，更大的违反抛出异常。
    过滤、格遍历和秩预言机都使用这组值。

    Returns:
        长度 2ⁿ 的数组，下标为位掩码

    Raises:
        MonotonicityViolation: 某个面的值超过余面 monotone_tol 以上
    """
    raw = f.values
    hull = np.array(raw, dtype=np.float64, copy=True)
    repairs = 0
    worst = 0.0
    # 真子集的位掩码更小，升序遍历保证面先于余面处理
    for mask in range(1, f.full_mask + 1):
        if mask.bit_count() < 2:
            continue
        face = max(facets(mask), key=lambda m: hull[m])
        gap = hull[face] - raw[mask]
        if gap > 0.0:
            if gap > monotone_tol:
                raise MonotonicityViolation(face, mask, float(hull[face]), float(raw[mask]))
            hull[mask] = hull[face]
            repairs += 1
            worst = max(worst, gap)
    if repairs:
        logger.warning("单调包络修正了 %d 个浮点噪声值（最大 %.3e）", repairs, worst)
    hull.setflags(write=False)
    return hull


def _check_relative(f: SubsetFunctional, relative_to: int | None) -> int:
    if relative_to is None or relative_to == 0:
        raise InvalidSubset("相对模式需要非空的子集 S")
    if relative_to & ~f.full_mask or relative_to == f.full_mask:
        raise InvalidSubset(f"相对子集必须是非空真子集: {relative_to:#b}")
    return relative_to


def build_filtration(
    f: SubsetFunctional,
    mode: FiltrationMode | str = FiltrationMode.REDUCED,
    relative_to: int | None = None,
    monotone_tol: float = 1e-9,
) -> FilteredComplex:
    """构造过滤复形

    排序键为 (F(J), |J|, 位掩码)。约化模式在最前面插入增广胞腔，
    其值为 min_v F(v)；相对模式删除所有 J ⊆ S 的单纯形。

    Args:
        f: 已封存的子集泛函
        mode: absolute、reduced 或 relative
        relative_to: 相对模式下的子集 S（位掩码）
        monotone_tol: 单调性容差

    Returns:
        过滤复形

    Raises:
        MonotonicityViolation: 泛函不单调
        InvalidSubset: 相对模式缺少或给出非法的 S

    Example:
        >>> complex_ = build_filtration(f, "relative", relative_to=0b011)
        >>> len(complex_)
        4
    """
    mode = FiltrationMode.parse(mode)
    values = filtration_values(f, monotone_tol)

    subcomplex = 0
    if mode is FiltrationMode.RELATIVE:
        subcomplex = _check_relative(f, relative_to)

    masks = [
        mask for mask in range(1, f.full_mask + 1)
        if not (subcomplex and is_face(mask, subcomplex))
    ]
    masks.sort(key=lambda m: filtration_key(m, float(values[m])))
    order = masks
    ordered_values = [float(values[m]) for m in masks]
    if mode is FiltrationMode.REDUCED:
        order = [AUGMENTATION, *masks]
        ordered_values = [min(float(values[1 << i]) for i in range(f.n_parties)), *ordered_values]

    complex_ = FilteredComplex(
        n_parties=f.n_parties,
        mode=mode,
        order=tuple(order),
        values=tuple(ordered_values),
        relative_to=subcomplex,
        q=f.q,
        rescale=f.rescale,
        labels=f.labels,
    )
    _check_face_order(complex_)
    logger.debug("过滤复形: mode=%s, %d 个胞腔", mode.value, len(complex_))
    return complex_


def _check_face_order(complex_: FilteredComplex) -> None:
    """每个面都必须排在余面之前"""
    for position, mask in enumerate(complex_.order):
        if mask == AUGMENTATION:
            continue
        for face in facets(mask):
            if face == AUGMENTATION and not complex_.is_augmented:
                continue
            index = complex_.index_of(face)
            if index is not None and index > position:
                raise MonotonicityViolation(
                    face, mask, complex_.values[index], complex_.values[position]
                )


@dataclass(frozen=True)
class SublevelSet:
    """子水平集 G(ε)

    Attributes:
        epsilon: 阈值
        simplices: G(ε) 中的单纯形（按位掩码升序）
        evaluations: 格遍历中读取泛函值的次数
    """
    epsilon: float
    simplices: tuple[int, ...]
    evaluations: int

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, mask: int) -> bool:
        return mask in self.simplices


def _submasks(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def complex_at(
    f: SubsetFunctional | Callable[[int], float],
    eps: float,
    n_parties: int | None = None,
) -> SublevelSet:
    """自顶向下的格遍历求 G(ε)

    按子集大小降序检查；一旦 F(K) ≤ ε，K 的所有子集直接纳入而不再求值。
    泛函按需逐个求值，f 可以是任意 位掩码 → 值 的可调用对象，此时必须给出 n_parties。
    不做单调包络：对单调泛函结果与暴力枚举相同，求值次数不超过 2ⁿ − 1。

    Raises:
        InvalidParameter: f 不是 SubsetFunctional 且未给出 n_parties
    """
    if isinstance(f, SubsetFunctional):
        n = f.n_parties
    elif n_parties is None or n_parties < 1:
        raise InvalidParameter("可调用泛函需要给出 n_parties ≥ 1")
    else:
        n = n_parties
    full = (1 << n) - 1
    admitted: set[int] = set()
    evaluations = 0
    for size in range(n, 0, -1):
        for mask in range(1, full + 1):
            if mask.bit_count() != size or mask in admitted:
                continue
            evaluations += 1
            if f(mask) <= eps:
                admitted.update(_submasks(mask))
    logger.debug("格遍历: ε=%s, %d 个单纯形, %d 次求值", eps, len(admitted), evaluations)
    return SublevelSet(float(eps), tuple(sorted(admitted)), evaluations)


def sublevel_set_brute(
    f: SubsetFunctional,
    eps: float,
    monotone_tol: float = 1e-9,
) -> SublevelSet:
    """暴力枚举 G(ε)，每个子集求值一次"""
    values = filtration_values(f, monotone_tol)
    simplices = tuple(m for m in range(1, f.full_mask + 1) if values[m] <= eps)
    return SublevelSet(float(eps), simplices, f.full_mask)
