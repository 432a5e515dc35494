"""Entanglement Persistence - 多体量子态的持久同调

以 q 形变总关联 C_q(J) 作为幂集单纯复形上的过滤函数，计算 Z₂ 持久条形码，
并用积分 Euler 示性数把条形码与交互信息、n-tangle、条件互信息联系起来。

主要功能:
- States: 命名量子态（GHZ、图态、χ₄/χ₅、ψ₁/ψ₂……）与 JSON 状态描述
- Functionals: Tsallis 熵、总关联、n-tangle、Bloch 向量、对数负性
- Persistence: 子水平集过滤、边界矩阵约化、秩预言机
- Summaries: 积分 Betti 数、IEC 及其闭式、恒等式校验与随机化验证套件
- Pipeline: 串联以上步骤的流水线

Example:
    >>> from entanglement_persistence import PersistencePipeline, Config
    >>>
    >>> pipeline = PersistencePipeline(Config.load("config.json"))
    >>> state = pipeline.load_state('{"kind": "ghz", "n": 2}')
    >>> result = pipeline.run(state, q=2, mode="reduced")
    >>> result.report.iec
    1.0
    >>>
    >>> # 随机化验证
    >>> pipeline.verify("thm1", trials=50, seed=7).success
    True
"""

from entanglement_persistence.cli.document import BarcodeDocument
from entanglement_persistence.cli.svg import render_svg
from entanglement_persistence.config import Config
from entanglement_persistence.errors import (
    EigFailed,
    EmptySubset,
    InfiniteBar,
    InputError,
    InvalidDensityMatrix,
    InvalidGraph,
    InvalidParameter,
    InvalidSubset,
    MonotonicityViolation,
    NotHermitian,
    NotQubitState,
    NumericalError,
    ParseError,
    PartyCountMismatch,
    PersistenceError,
    PreconditionError,
    TooLarge,
    ZeroState,
)
from entanglement_persistence.functionals import (
    BlochVector,
    EntropyTable,
    SubsetFunctional,
    bloch_vector,
    check_monotone,
    conditional_mutual_information,
    entropy_table,
    interaction_information,
    log_negativity,
    make_total_correlation_functional,
    minkowski_length,
    mutual_information,
    n_tangle_direct,
    relative_entropy,
    total_correlation,
    tsallis_entropy,
)
from entanglement_persistence.linalg import (
    EigenSolver,
    MultipartiteState,
    jacobi_eigh,
    marginal,
    partial_trace,
    partial_transpose,
    random_mixed_state,
    random_pure_state,
)
from entanglement_persistence.persistence import (
    Barcode,
    FilteredComplex,
    FiltrationMode,
    Interval,
    build_filtration,
    complex_at,
    compute_barcode,
    oracle_betti,
)
from entanglement_persistence.pipeline import PersistencePipeline, PipelineResult, create_pipeline
from entanglement_persistence.states import (
    StateKind,
    StateRegistry,
    chi4,
    chi5,
    ghz,
    graph_state,
    parse_state_spec,
    psi1,
    psi2,
)
from entanglement_persistence.summaries import (
    IdentityCheck,
    SummaryReport,
    VerificationSuite,
    barcode_alternating_sum,
    closed_form_iec,
    integrated_betti,
    integrated_euler_characteristic,
    relative_iec,
    summarize,
    verify_corollary_bipartite,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)

__version__ = "0.1.0"

__all__ = [
    # 版本
    "__version__",

    # 配置
    "Config",

    # 流水线
    "PersistencePipeline",
    "PipelineResult",
    "create_pipeline",

    # 异常
    "PersistenceError",
    "InputError",
    "PreconditionError",
    "NumericalError",
    "ParseError",
    "ZeroState",
    "InvalidParameter",
    "InvalidGraph",
    "EmptySubset",
    "InvalidSubset",
    "PartyCountMismatch",
    "NotHermitian",
    "InvalidDensityMatrix",
    "NotQubitState",
    "TooLarge",
    "InfiniteBar",
    "MonotonicityViolation",
    "EigFailed",

    # 线性代数
    "EigenSolver",
    "MultipartiteState",
    "jacobi_eigh",
    "marginal",
    "partial_trace",
    "partial_transpose",
    "random_mixed_state",
    "random_pure_state",

    # 量子态
    "StateKind",
    "StateRegistry",
    "chi4",
    "chi5",
    "ghz",
    "graph_state",
    "parse_state_spec",
    "psi1",
    "psi2",

    # 泛函
    "BlochVector",
    "EntropyTable",
    "SubsetFunctional",
    "bloch_vector",
    "check_monotone",
    "conditional_mutual_information",
    "entropy_table",
    "interaction_information",
    "log_negativity",
    "make_total_correlation_functional",
    "minkowski_length",
    "mutual_information",
    "n_tangle_direct",
    "relative_entropy",
    "total_correlation",
    "tsallis_entropy",

    # 持久同调
    "Barcode",
    "FilteredComplex",
    "FiltrationMode",
    "Interval",
    "build_filtration",
    "complex_at",
    "compute_barcode",
    "oracle_betti",

    # 摘要
    "IdentityCheck",
    "SummaryReport",
    "VerificationSuite",
    "barcode_alternating_sum",
    "closed_form_iec",
    "integrated_betti",
    "integrated_euler_characteristic",
    "relative_iec",
    "summarize",
    "verify_corollary_bipartite",
    "verify_thm1",
    "verify_thm2",
    "verify_thm3",

    # 输出
    "BarcodeDocument",
    "render_svg",
]
