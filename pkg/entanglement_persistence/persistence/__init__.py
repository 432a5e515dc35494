"""过滤复形与 Z₂ 持久同调"""

from entanglement_persistence.persistence.filtration import (
    SublevelSet,
    build_filtration,
    complex_at,
    filtration_values,
    sublevel_set_brute,
)
from entanglement_persistence.persistence.model import (
    AUGMENTATION,
    Barcode,
    FilteredComplex,
    FiltrationMode,
    Interval,
    facets,
    simplex_dim,
    simplex_vertices,
)
from entanglement_persistence.persistence.oracle import (
    MAX_ORACLE_PARTIES,
    euler_characteristic,
    gf2_rank,
    oracle_betti,
)
from entanglement_persistence.persistence.reduction import (
    BettiCurve,
    betti_curve,
    boundary_columns,
    compute_barcode,
)

__all__ = [
    "SublevelSet",
    "build_filtration",
    "complex_at",
    "filtration_values",
    "sublevel_set_brute",
    "AUGMENTATION",
    "Barcode",
    "FilteredComplex",
    "FiltrationMode",
    "Interval",
    "facets",
    "simplex_dim",
    "simplex_vertices",
    "MAX_ORACLE_PARTIES",
    "euler_characteristic",
    "gf2_rank",
    "oracle_betti",
    "BettiCurve",
    "betti_curve",
    "boundary_columns",
    "compute_barcode",
]
