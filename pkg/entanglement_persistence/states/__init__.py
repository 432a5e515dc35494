"""命名量子态与状态描述文档"""

from entanglement_persistence.states.loader import (
    MAX_STATE_FILE_SIZE,
    SpecContext,
    default_registry,
    load_state_document,
    parse_state_spec,
)
from entanglement_persistence.states.named import (
    all_degrees_odd,
    amplitude_state,
    chi4,
    chi5,
    density_state,
    ghz,
    graph_state,
    graph_state_from_graph,
    normalize_amplitudes,
    product_state,
    psi1,
    psi2,
    random_graph,
    tensor_product,
    validate_graph,
)
from entanglement_persistence.states.registry import StateKind, StateRegistry

__all__ = [
    "MAX_STATE_FILE_SIZE",
    "SpecContext",
    "default_registry",
    "load_state_document",
    "parse_state_spec",
    "all_degrees_odd",
    "amplitude_state",
    "chi4",
    "chi5",
    "density_state",
    "ghz",
    "graph_state",
    "graph_state_from_graph",
    "normalize_amplitudes",
    "product_state",
    "psi1",
    "psi2",
    "random_graph",
    "tensor_product",
    "validate_graph",
    "StateKind",
    "StateRegistry",
]
