"""命名量子态构造器

GHZ 态、图态、乘积态、χ₄/χ₅ 以及 ψ₁/ψ₂。第一个子系统是最高位的张量因子。
"""

from __future__ import annotations

from functools import reduce
from itertools import product as iter_product
from typing import Iterable, Sequence

import networkx as nx
import numpy as np
from numpy.typing import NDArray

from entanglement_persistence.errors import (
    DimensionMismatch,
    InvalidGraph,
    InvalidParameter,
    ZeroState,
)
from entanglement_persistence.linalg.model import MultipartiteState, check_hilbert_dim

Edge = tuple[int, int]


def normalize_amplitudes(values: Sequence[complex] | NDArray) -> NDArray[np.complex128]:
    """归一化振幅向量

    Raises:
        ZeroState: 零向量或含非有限值
    """
    vec = np.asarray(values, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(vec))
    if not np.isfinite(norm) or norm == 0.0:
        raise ZeroState("振幅向量为零，无法归一化")
    return vec / norm


def _qubit_ket(terms: dict[str, complex], labels: Sequence[str] | None = None) -> MultipartiteState:
    """由 {比特串: 振幅} 构造归一化的多量子比特纯态"""
    n = len(next(iter(terms)))
    psi = np.zeros(1 << n, dtype=np.complex128)
    for bits, amp in terms.items():
        psi[int(bits, 2)] += amp
    return MultipartiteState.from_ket(normalize_amplitudes(psi), (2,) * n, labels)


def _require_qubit_count(n: int) -> int:
    n = int(n)
    if n < 2:
        raise InvalidParameter(f"子系统数必须 ≥ 2: n = {n}")
    check_hilbert_dim((2,) * n)
    return n


def ghz(n: int, labels: Sequence[str] | None = None) -> MultipartiteState:
    """n 量子比特 GHZ 态 (|0…0⟩ + |1…1⟩)/√2

    Raises:
        InvalidParameter: n < 2
    """
    n = _require_qubit_count(n)
    return _qubit_ket({"0" * n: 1.0, "1" * n: 1.0}, labels)


def validate_graph(n: int, edges: Iterable[Sequence[int]]) -> nx.Graph:
    """校验并构造简单无向图

    Args:
        n: 顶点数（≥ 2），顶点编号 0..n-1
        edges: 边列表

    Returns:
        networkx 图

    Raises:
        InvalidGraph: 自环、重边或顶点越界
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for edge in edges:
        pair = tuple(edge)
        if len(pair) != 2:
            raise InvalidGraph(f"边必须由两个顶点组成: {list(pair)}")
        i, j = (int(v) for v in pair)
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidGraph(f"顶点越界: ({i}, {j})，n = {n}")
        if i == j:
            raise InvalidGraph(f"不允许自环: ({i}, {j})")
        if graph.has_edge(i, j):
            raise InvalidGraph(f"不允许重边: ({i}, {j})")
        graph.add_edge(i, j)
    return graph


def graph_state_from_graph(
    graph: nx.Graph,
    labels: Sequence[str] | None = None,
) -> MultipartiteState:
    """由 networkx 图构造图态 ∏_{(i,j)∈E} CZ_ij |+⟩^{⊗n}

    顶点按排序后的顺序映射到子系统。CZ = diag(1, 1, 1, −1)，
    所以振幅是 2^{-n/2}·(−1)^{Σ_E x_i x_j}。

    Raises:
        InvalidParameter: 顶点数 < 2
    """
    nodes = sorted(graph.nodes)
    n = _require_qubit_count(len(nodes))
    position = {v: i for i, v in enumerate(nodes)}

    # bits[k, i] 是基矢 k 中第 i 个量子比特的取值
    index = np.arange(1 << n)
    bits = (index[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    parity = np.zeros(1 << n, dtype=np.int64)
    for u, v in graph.edges:
        parity += bits[:, position[u]] * bits[:, position[v]]
    psi = np.where(parity % 2 == 0, 1.0, -1.0).astype(np.complex128) / np.sqrt(1 << n)
    return MultipartiteState.from_ket(psi, (2,) * n, labels)


def graph_state(
    n: int,
    edges: Iterable[Sequence[int]],
    labels: Sequence[str] | None = None,
) -> MultipartiteState:
    """图态，结果与边的顺序无关

    Example:
        >>> triangle = graph_state(3, [(0, 1), (1, 2), (0, 2)])
    """
    n = _require_qubit_count(n)
    return graph_state_from_graph(validate_graph(n, edges), labels)


def random_graph(n: int, seed: int, p: float = 0.5) -> nx.Graph:
    """G(n, p) 随机图（networkx）"""
    return nx.gnp_random_graph(n, p, seed=seed)


def all_degrees_odd(graph: nx.Graph) -> bool:
    """是否所有顶点的度数都是奇数"""
    return all(degree % 2 == 1 for _, degree in graph.degree)


def product_state(
    factors: Sequence[Sequence[complex]],
    labels: Sequence[str] | None = None,
) -> MultipartiteState:
    """单体纯态的乘积 |φ_1⟩⊗…⊗|φ_n⟩，每个因子单独归一化

    Raises:
        DimensionMismatch: 因子维度 < 2
        ZeroState: 某个因子为零向量
    """
    if not factors:
        raise DimensionMismatch("乘积态至少需要一个因子")
    vecs = [normalize_amplitudes(f) for f in factors]
    dims = tuple(len(v) for v in vecs)
    if any(d < 2 for d in dims):
        raise DimensionMismatch(f"局部维度必须 ≥ 2: {dims}")
    check_hilbert_dim(dims)
    return MultipartiteState.from_ket(reduce(np.kron, vecs), dims, labels)


def amplitude_state(
    dims: Sequence[int],
    values: Sequence[complex] | NDArray,
    labels: Sequence[str] | None = None,
) -> MultipartiteState:
    """由（未必归一化的）振幅向量构造纯态

    Raises:
        DimensionMismatch: 振幅个数不等于 Π d_i
        ZeroState: 零向量
    """
    dims = tuple(int(d) for d in dims)
    total = check_hilbert_dim(dims)
    vec = np.asarray(values, dtype=np.complex128).reshape(-1)
    if vec.size != total:
        raise DimensionMismatch(f"需要 {total} 个振幅，得到 {vec.size} 个")
    return MultipartiteState.from_ket(normalize_amplitudes(vec), dims, labels)


def density_state(
    dims: Sequence[int],
    matrix: NDArray | Sequence[Sequence[complex]],
    labels: Sequence[str] | None = None,
    hermitian_tol: float = 1e-10,
    clamp_tol: float = 1e-10,
) -> MultipartiteState:
    """由显式密度矩阵构造，并检查密度矩阵不变量

    Raises:
        DimensionMismatch: 形状不符
        NotHermitian: 非厄米
        InvalidDensityMatrix: 迹不为 1 或非半正定
    """
    check_hilbert_dim(dims)
    state = MultipartiteState(np.asarray(matrix, dtype=np.complex128), tuple(dims), tuple(labels or ()))
    state.validate(hermitian_tol, clamp_tol)
    return state


def _require_positive_t(t: float) -> float:
    t = float(t)
    if not np.isfinite(t) or t <= 0.0:
        raise InvalidParameter(f"参数 t 必须为正: t = {t}")
    return t


def chi4(t: float, labels: Sequence[str] | None = None) -> MultipartiteState:
    """|χ₄⟩ ∝ (1/t)|111111⟩ + (1/t)|111100⟩ + t|000010⟩ + t|000001⟩

    Raises:
        InvalidParameter: t ≤ 0
    """
    t = _require_positive_t(t)
    return _qubit_ket(
        {"111111": 1.0 / t, "111100": 1.0 / t, "000010": t, "000001": t},
        labels,
    )


def chi5(t: float, labels: Sequence[str] | None = None) -> MultipartiteState:
    """|χ₅⟩ ∝ (√2/t)|111111⟩ + (1/t)|111000⟩ + t|000100⟩ + t|000010⟩ + t|000001⟩

    Raises:
        InvalidParameter: t ≤ 0
    """
    t = _require_positive_t(t)
    return _qubit_ket(
        {
            "111111": np.sqrt(2.0) / t,
            "111000": 1.0 / t,
            "000100": t,
            "000010": t,
            "000001": t,
        },
        labels,
    )


# ψ₁/ψ₂ 的六个量子比特顺序为 (A11, A12, A21, A22, A31, A32)，
# 相邻两个量子比特组成一个 4 维子系统
_PSI1_GROUPS = ((0, 2), (1, 4), (3, 5))
_PSI2_GROUPS = ((0, 2, 4), (1, 3, 5))


def _cat_state(groups: Sequence[Sequence[int]], labels: Sequence[str] | None) -> MultipartiteState:
    """每组量子比特处于 (|0…0⟩ + |1…1⟩)/√2，各组相互独立"""
    n = sum(len(g) for g in groups)
    psi = np.zeros(1 << n, dtype=np.complex128)
    for choice in iter_product((0, 1), repeat=len(groups)):
        bits = [0] * n
        for group, value in zip(groups, choice):
            for qubit in group:
                bits[qubit] = value
        psi[int("".join(map(str, bits)), 2)] = 1.0
    psi = normalize_amplitudes(psi)
    return MultipartiteState.from_ket(psi, (4,) * (n // 2), labels)


def psi1(labels: Sequence[str] | None = None) -> MultipartiteState:
    """三个 Bell 对：(A11,A21)、(A12,A31)、(A22,A32)，局部维度 (4, 4, 4)"""
    return _cat_state(_PSI1_GROUPS, labels)


def psi2(labels: Sequence[str] | None = None) -> MultipartiteState:
    """两个 GHZ₃：(A11,A21,A31)、(A12,A22,A32)，局部维度 (4, 4, 4)"""
    return _cat_state(_PSI2_GROUPS, labels)


def tensor_product(
    states: Sequence[MultipartiteState],
    labels: Sequence[str] | None = None,
) -> MultipartiteState:
    """多体量子态的张量积，局部维度依次拼接

    标签冲突时退回默认标签 A1..An。
    """
    if not states:
        raise DimensionMismatch("张量积至少需要一个因子")
    dims = tuple(d for s in states for d in s.dims)
    check_hilbert_dim(dims)
    if labels is None:
        joined = tuple(label for s in states for label in s.labels)
        labels = joined if len(set(joined)) == len(joined) else ()
    rho = reduce(np.kron, [s.rho for s in states])
    return MultipartiteState(rho, dims, tuple(labels))
