"""拓扑摘要、恒等式校验与验证套件"""

from entanglement_persistence.summaries.report import SummaryReport, summarize
from entanglement_persistence.summaries.suites import (
    SUITES,
    RunMode,
    Suite,
    SuiteResult,
    TrialContext,
    TrialOutcome,
    TrialResult,
    VerificationSuite,
    get_suite,
    parse_party_range,
)
from entanglement_persistence.summaries.theorems import (
    IdentityCheck,
    verify_corollary_bipartite,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)
from entanglement_persistence.summaries.topology import (
    RelativeIEC,
    barcode_alternating_sum,
    barcode_residual,
    barcodes_match,
    closed_form_iec,
    euler_poincare_residual,
    integrated_betti,
    integrated_euler_characteristic,
    nonreduced_iec_closed_form,
    relative_closed_form_iec,
    relative_iec,
    total_persistence,
)

__all__ = [
    "SummaryReport",
    "summarize",
    "SUITES",
    "RunMode",
    "Suite",
    "SuiteResult",
    "TrialContext",
    "TrialOutcome",
    "TrialResult",
    "VerificationSuite",
    "get_suite",
    "parse_party_range",
    "IdentityCheck",
    "verify_corollary_bipartite",
    "verify_thm1",
    "verify_thm2",
    "verify_thm3",
    "RelativeIEC",
    "barcode_alternating_sum",
    "barcode_residual",
    "barcodes_match",
    "closed_form_iec",
    "euler_poincare_residual",
    "integrated_betti",
    "integrated_euler_characteristic",
    "nonreduced_iec_closed_form",
    "relative_closed_form_iec",
    "relative_iec",
    "total_persistence",
]
