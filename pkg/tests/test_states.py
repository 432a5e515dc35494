import json
from pathlib import Path

import numpy as np
import pytest
from entanglement_persistence import ParseError, chi4, chi5, ghz, graph_state, parse_state_spec, psi1, psi2
from entanglement_persistence.errors import InvalidGraph, InvalidParameter, ZeroState
from entanglement_persistence.linalg import partial_trace, trace_power
from entanglement_persistence.states import (
    StateKind,
    all_degrees_odd,
    amplitude_state,
    default_registry,
    load_state_document,
    product_state,
    random_graph,
    tensor_product,
    validate_graph,
)


def _parse_error_path(document) -> str:
    with pytest.raises(ParseError) as info:
        parse_state_spec(document)
    return info.value.path


def test_ghz_amplitudes():
    state = ghz(3)
    assert state.dims == (2, 2, 2)
    assert state.rho[0, 0].real == pytest.approx(0.5)
    assert state.rho[0, 7].real == pytest.approx(0.5)
    assert state.rho[7, 7].real == pytest.approx(0.5)
    with pytest.raises(InvalidParameter):
        ghz(1)


def test_graph_state_ignores_edge_order(k3):
    reordered = graph_state(3, [(2, 0), (1, 2), (0, 1)])
    np.testing.assert_allclose(k3.rho, reordered.rho, atol=1e-15)
    # 图态的单体约化都是最大混合态
    for i in range(3):
        np.testing.assert_allclose(partial_trace(k3, 1 << i), np.eye(2) / 2, atol=1e-12)


@pytest.mark.parametrize(
    "edges",
    [[(0, 0)], [(0, 1), (1, 0)], [(0, 3)]],
)
def test_graph_validation(edges):
    with pytest.raises(InvalidGraph):
        validate_graph(3, edges)


def test_degree_parity():
    assert all_degrees_odd(validate_graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)]))
    assert all_degrees_odd(validate_graph(6, [(0, j) for j in range(1, 6)]))
    assert not all_degrees_odd(validate_graph(6, [(i, i + 1) for i in range(5)]))
    graph = random_graph(6, seed=4)
    assert graph.number_of_nodes() == 6
    assert sorted(random_graph(6, seed=4).edges) == sorted(graph.edges)


def test_product_and_amplitude_states():
    state = product_state([[1, 0], [1, 1]])
    assert state.dims == (2, 2)
    assert trace_power(state.rho, 2) == pytest.approx(1.0)
    np.testing.assert_allclose(np.diag(state.rho).real, [0.5, 0.5, 0.0, 0.0], atol=1e-15)
    with pytest.raises(ZeroState):
        amplitude_state((2, 2), [0, 0, 0, 0])


def test_chi_states_require_positive_t():
    assert chi4(4 / 3).n_parties == 6
    assert chi5(4 / 3).n_parties == 6
    with pytest.raises(InvalidParameter):
        chi4(0.0)
    with pytest.raises(InvalidParameter):
        chi5(-1.0)


def test_psi_states_are_three_party():
    for state in (psi1(), psi2()):
        assert state.dims == (4, 4, 4)
        assert trace_power(state.rho, 2) == pytest.approx(1.0)
        # 每个 4 维子系统都是最大混合态
        np.testing.assert_allclose(partial_trace(state, 0b001), np.eye(4) / 4, atol=1e-12)


def test_tensor_product_concatenates_dims():
    state = tensor_product([ghz(2), product_state([[1, 0, 0]])])
    assert state.dims == (2, 2, 3)


def test_default_registry_kinds():
    registry = default_registry()
    assert len(registry) == 12
    assert set(registry.kinds()) >= {"ghz", "graph", "chi4", "random_pure", "tensor"}
    with pytest.raises(ValueError):
        registry.register(StateKind("ghz", "duplicate", lambda doc, ctx: ghz(2), ("n",), ()))


@pytest.mark.parametrize(
    "document, dims",
    [
        ({"kind": "ghz", "n": 4}, (2, 2, 2, 2)),
        ({"kind": "graph", "n": 3, "edges": [[0, 1], [1, 2]]}, (2, 2, 2)),
        ({"kind": "product", "factors": [[1, 0], [0, 1, 0]]}, (2, 3)),
        ({"kind": "amplitudes", "dims": [2, 2], "values": [1, 0, 0, [0, 1]]}, (2, 2)),
        ({"kind": "density", "dims": [2], "matrix": [[0.5, 0], [0, 0.5]]}, (2,)),
        ({"kind": "chi4", "t": 1.0}, (2,) * 6),
        ({"kind": "chi5", "t": 1.0}, (2,) * 6),
        ({"kind": "psi1"}, (4, 4, 4)),
        ({"kind": "psi2"}, (4, 4, 4)),
        ({"kind": "random_pure", "dims": [2, 3], "seed": 1}, (2, 3)),
        ({"kind": "random_mixed", "dims": [2, 2]}, (2, 2)),
        ({"kind": "tensor", "factors": [{"kind": "ghz", "n": 2}, {"kind": "psi1"}]}, (2, 2, 4, 4, 4)),
    ],
)
def test_parse_every_kind(document, dims):
    assert parse_state_spec(document).dims == dims


def test_parse_labels():
    state = parse_state_spec({"kind": "ghz", "n": 2, "labels": ["alice", "bob"]})
    assert state.labels == ("alice", "bob")


def test_random_kinds_use_default_seed():
    doc = {"kind": "random_pure", "dims": [2, 2]}
    a = parse_state_spec(doc, default_seed=3)
    b = parse_state_spec(doc, default_seed=3)
    c = parse_state_spec(dict(doc, seed=4), default_seed=3)
    np.testing.assert_array_equal(a.rho, b.rho)
    assert not np.allclose(a.rho, c.rho)


@pytest.mark.parametrize(
    "document, path",
    [
        ([1, 2], "$"),
        ({"n": 3}, "$.kind"),
        ({"kind": "ghz3"}, "$.kind"),
        ({"kind": "ghz"}, "$.n"),
        ({"kind": "ghz", "n": 3, "extra": 1}, "$.extra"),
        ({"kind": "ghz", "n": "3"}, "$.n"),
        ({"kind": "ghz", "n": 1}, "$.n"),
        ({"kind": "graph", "n": 3, "edges": [[0, 1], [1]]}, "$.edges[1]"),
        ({"kind": "graph", "n": 3, "edges": [[0, 0]]}, "$.edges"),
        ({"kind": "random_pure", "dims": [2, 1]}, "$.dims[1]"),
        ({"kind": "chi4", "t": True}, "$.t"),
        ({"kind": "tensor", "factors": [{"kind": "psi1"}, {"kind": "ghz"}]}, "$.factors[1].n"),
        ({"kind": "amplitudes", "dims": [2], "values": [1, "x"]}, "$.values[1]"),
    ],
)
def test_parse_errors_carry_json_path(document, path):
    assert _parse_error_path(document) == path


def test_parse_error_exit_code():
    with pytest.raises(ParseError) as info:
        parse_state_spec({"kind": "nope"})
    assert info.value.exit_code == 2


def test_load_state_document_inline_and_file(state_file: Path):
    inline = load_state_document('{"kind": "ghz", "n": 2}')
    assert inline == {"kind": "ghz", "n": 2}
    from_file = load_state_document(f"@{state_file}")
    assert from_file["kind"] == "graph"
    assert parse_state_spec(from_file).n_parties == 3


def test_load_state_document_errors(tmp_path: Path):
    with pytest.raises(ParseError):
        load_state_document("{not json")
    with pytest.raises(ParseError):
        load_state_document(f"@{tmp_path / 'missing.json'}")
    path = tmp_path / "list.json"
    path.write_text(json.dumps([1, 2]), encoding="utf-8")
    with pytest.raises(ParseError):
        load_state_document(f"@{path}")
