import math

import numpy as np
import pytest
from entanglement_persistence import (
    InfiniteBar,
    MultipartiteState,
    build_filtration,
    chi4,
    chi5,
    closed_form_iec,
    compute_barcode,
    entropy_table,
    ghz,
    graph_state,
    integrated_betti,
    integrated_euler_characteristic,
    make_total_correlation_functional,
    n_tangle_direct,
    psi1,
    psi2,
    random_mixed_state,
    random_pure_state,
    relative_iec,
    summarize,
    verify_corollary_bipartite,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)
from entanglement_persistence.errors import (
    InvalidParameter,
    NotQubitState,
    PartyCountMismatch,
)
from entanglement_persistence.states import graph_state_from_graph, product_state, random_graph
from entanglement_persistence.summaries import (
    SUITES,
    RunMode,
    VerificationSuite,
    barcode_alternating_sum,
    barcode_residual,
    barcodes_match,
    get_suite,
    nonreduced_iec_closed_form,
    parse_party_range,
    relative_closed_form_iec,
    total_persistence,
)

LOG2 = math.log(2.0)


def _reduced_barcode(state, q=2.0, rescale=1.0):
    f = make_total_correlation_functional(state, q=q, rescale=rescale)
    return f, compute_barcode(build_filtration(f, "reduced"))


def test_integrated_betti_of_k3(k3):
    _, barcode = _reduced_barcode(k3)
    assert integrated_betti(barcode, 1) == pytest.approx(1.0)
    assert integrated_betti(barcode, 0) == pytest.approx(1.0)
    assert integrated_betti(barcode, -1) == 0.0
    assert integrated_betti(barcode, 1, upto=1.0) == pytest.approx(0.5)
    assert total_persistence(barcode) == pytest.approx(2.0)
    with pytest.raises(InvalidParameter):
        integrated_betti(barcode, 1, upto=-1.0)


def test_iec_of_k3_and_bell(k3, bell):
    f, barcode = _reduced_barcode(k3)
    assert integrated_euler_characteristic(barcode) == pytest.approx(0.0, abs=1e-12)
    assert closed_form_iec(f) == pytest.approx(0.0, abs=1e-12)
    assert barcode_alternating_sum(barcode) == pytest.approx(0.0, abs=1e-12)

    f, barcode = _reduced_barcode(bell)
    assert integrated_euler_characteristic(barcode) == pytest.approx(1.0)
    assert closed_form_iec(f) == pytest.approx(1.0)


def test_iec_scales_with_rescale():
    state = random_pure_state((2, 2, 2, 2), seed=3)
    _, plain = _reduced_barcode(state)
    _, scaled = _reduced_barcode(state, rescale=2.5)
    assert integrated_euler_characteristic(scaled) * 2.5 == pytest.approx(
        integrated_euler_characteristic(plain), abs=1e-12
    )
    assert scaled.rescale == 2.5


def test_product_state_has_trivial_summaries():
    _, barcode = _reduced_barcode(product_state([[1, 0], [1, 1], [0, 1]]))
    assert all(i.lifetime < 1e-12 for i in barcode)
    assert integrated_euler_characteristic(barcode) == pytest.approx(0.0, abs=1e-12)


def test_absolute_iec_and_closed_form(k3):
    f = make_total_correlation_functional(k3, q=2)
    barcode = compute_barcode(build_filtration(f, "absolute"))
    assert integrated_euler_characteristic(barcode) == pytest.approx(1.5)
    table = entropy_table(k3, q=2)
    assert nonreduced_iec_closed_form(table, 1.5 + 1e-12) == pytest.approx(1.5)
    assert integrated_euler_characteristic(barcode, upto=3.0) == pytest.approx(
        nonreduced_iec_closed_form(table, 3.0)
    )
    with pytest.raises(InvalidParameter):
        nonreduced_iec_closed_form(table, 1.0)
    with pytest.raises(InfiniteBar):
        barcode_alternating_sum(barcode)


def test_relative_iec_of_ghz3_is_negative_cmi():
    f = make_total_correlation_functional(ghz(3), q=1)
    result = relative_iec(f, 0b011)
    assert result.barcode_value == pytest.approx(-LOG2)
    assert result.closed_form == pytest.approx(-LOG2)
    assert result.residual < 1e-12


def test_relative_iec_of_bell_is_mutual_information(bell):
    f = make_total_correlation_functional(bell, q=1)
    result = relative_iec(f, 0b01)
    assert result.barcode_value == pytest.approx(2 * LOG2)
    assert relative_closed_form_iec(f, 0b01) == pytest.approx(2 * LOG2)


@pytest.mark.parametrize("q", [1.0, 1.5, 2.0])
def test_verify_thm1_on_random_states(q):
    for seed in range(3):
        check = verify_thm1(random_mixed_state((2, 3, 2), seed=seed), q=q)
        assert check.passed(1e-8)
        assert set(check.routes) == {"barcode_iec", "alternating_sum", "closed_form", "interaction_information"}


def test_verify_thm2_on_ghz6():
    check = verify_thm2(ghz(6))
    assert check.value == pytest.approx(1.0)
    assert check.routes["n_tangle"] == pytest.approx(1.0)
    assert check.max_residual < 1e-8


def test_verify_thm2_preconditions():
    with pytest.raises(PartyCountMismatch):
        verify_thm2(ghz(3))
    with pytest.raises(NotQubitState):
        verify_thm2(random_pure_state((2, 3), seed=0))


def test_verify_thm3_sign():
    check = verify_thm3(ghz(3))
    assert check.value == pytest.approx(-LOG2)
    assert check.sign_ok
    for seed in range(3):
        check = verify_thm3(random_mixed_state((2, 2, 2), seed=seed))
        assert check.passed(1e-8)
        assert check.value <= 1e-10
    with pytest.raises(PartyCountMismatch):
        verify_thm3(ghz(2))


def test_verify_corollary_bipartite(bell):
    check = verify_corollary_bipartite(bell)
    assert check.value == pytest.approx(2 * LOG2)
    assert check.sign_ok
    assert check.passed(1e-10)
    assert check.to_dict()["name"] == "corollary"


@pytest.mark.parametrize(
    "edges, expected",
    [
        ([(i, j) for i in range(6) for j in range(i + 1, 6)], 1.0),
        ([(0, j) for j in range(1, 6)], 1.0),
        ([(i, i + 1) for i in range(5)], 0.0),
    ],
)
def test_graph_state_iec_parity(edges, expected):
    _, barcode = _reduced_barcode(graph_state(6, edges))
    assert integrated_euler_characteristic(barcode) == pytest.approx(expected, abs=1e-9)


def test_chi_states_share_tangle_but_not_barcodes():
    first, second = chi4(4 / 3), chi5(4 / 3)
    assert n_tangle_direct(first) == pytest.approx(0.0, abs=1e-8)
    assert n_tangle_direct(second) == pytest.approx(0.0, abs=1e-8)
    _, a = _reduced_barcode(first)
    _, b = _reduced_barcode(second)
    assert not barcodes_match(a, b, tol=1e-6)
    assert barcode_residual(a, b) > 1e-6


def test_psi_states_share_barcodes():
    for q in (1.0, 2.0):
        _, a = _reduced_barcode(psi1(), q=q)
        _, b = _reduced_barcode(psi2(), q=q)
        assert barcodes_match(a, b, tol=1e-9)
        assert barcode_residual(a, b) < 1e-9


def test_barcode_comparison_is_reflexive(k3):
    _, a = _reduced_barcode(k3)
    _, b = _reduced_barcode(graph_state(3, [(2, 1), (0, 2), (1, 0)]))
    assert barcodes_match(a, b)
    assert barcode_residual(a, b) < 1e-12


def test_summarize_bell(bell):
    f, barcode = _reduced_barcode(bell)
    report = summarize(bell, f, barcode)
    assert report.iec == pytest.approx(1.0)
    assert report.closed_form_iec == pytest.approx(1.0)
    assert report.interaction_information == pytest.approx(1.0)
    assert report.n_tangle == pytest.approx(1.0)
    assert report.minkowski_length == pytest.approx(1.0)
    assert report.max_residual < 1e-10
    assert {"closed_form", "interaction_information", "minkowski_tangle"} <= set(report.residuals)
    assert report.to_dict()["mode"] == "reduced"


def test_summarize_qutrits_has_no_tangle():
    state = random_pure_state((3, 3), seed=2)
    f, barcode = _reduced_barcode(state)
    report = summarize(state, f, barcode)
    assert report.n_tangle is None
    assert report.minkowski_length is None
    assert report.residuals["closed_form"] < 1e-10


def test_parse_party_range():
    assert parse_party_range("4") == (4, 4)
    assert parse_party_range("3-5") == (3, 5)
    for text in ("5-3", "x", "0"):
        with pytest.raises(InvalidParameter):
            parse_party_range(text)


def test_suite_registry():
    assert set(SUITES) >= {"thm1", "thm2", "thm3", "corollary", "monotonicity", "lu-invariance", "oracle"}
    with pytest.raises(InvalidParameter):
        get_suite("thm9")
    with pytest.raises(PartyCountMismatch):
        VerificationSuite(get_suite("thm2"), trials=1, parties=(3, 3))
    with pytest.raises(InvalidParameter):
        VerificationSuite(get_suite("thm1"), trials=0)


@pytest.mark.parametrize(
    "name, parties",
    [
        ("thm1", (3, 4)),
        ("thm2", None),
        ("thm3", None),
        ("corollary", None),
        ("monotonicity", (2, 3)),
        ("lu-invariance", (2, 3)),
        ("oracle", (2, 3)),
        ("parity", None),
        ("lattice", (2, 4)),
    ],
)
def test_suites_pass(name, parties):
    result = VerificationSuite(get_suite(name), trials=3, seed=7, parties=parties).run()
    assert result.success, [t.to_dict() for t in result.failures()]
    assert len(result.trials) == 3
    assert [t.seed for t in result.trials] == [7, 8, 9]


def test_trials_are_reproducible():
    runner = VerificationSuite(get_suite("thm1"), trials=2, seed=11, parties=(3, 3))
    first = runner.run_trial(1)
    second = runner.run_trial(1)
    assert first.spec == second.spec
    assert first.residual == second.residual


async def test_parallel_run_keeps_order():
    runner = VerificationSuite(get_suite("corollary"), trials=4, seed=3)
    parallel = await runner.run_async(workers=2)
    sequential = runner.run()
    assert [t.index for t in parallel.trials] == [0, 1, 2, 3]
    assert [t.spec for t in parallel.trials] == [t.spec for t in sequential.trials]
    assert parallel.success


def test_execute_parallel_mode():
    runner = VerificationSuite(get_suite("thm3"), trials=2, seed=5)
    result = runner.execute(RunMode.PARALLEL, workers=2)
    assert result.success
    assert result.max_value is not None and result.max_value <= 1e-10


def _depolarized(state, delta=1e-4):
    mixed = (1.0 - delta) * state.rho + delta * np.eye(state.dim) / state.dim
    return MultipartiteState(mixed, state.dims, state.labels)


@pytest.mark.parametrize(
    "state",
    [
        ghz(3),
        graph_state_from_graph(random_graph(3, seed=2, p=0.7)),
        random_pure_state((2, 2, 2), seed=4),
        random_mixed_state((2, 2, 2), seed=9),
    ],
    ids=["ghz3", "random-graph", "random-pure", "random-mixed"],
)
def test_iec_is_stable_under_small_noise(pipeline, state):
    for q in (1.0, 2.0):
        clean = pipeline.run(state, q=q).report.iec
        noisy = pipeline.run(_depolarized(state), q=q).report.iec
        assert abs(clean - noisy) <= 0.01
