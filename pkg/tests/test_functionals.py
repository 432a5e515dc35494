import math

import numpy as np
import pytest
from entanglement_persistence import (
    MonotonicityViolation,
    SubsetFunctional,
    bloch_vector,
    check_monotone,
    conditional_mutual_information,
    entropy_table,
    ghz,
    interaction_information,
    log_negativity,
    make_total_correlation_functional,
    minkowski_length,
    mutual_information,
    n_tangle_direct,
    psi1,
    psi2,
    random_mixed_state,
    random_pure_state,
    relative_entropy,
    total_correlation,
    tsallis_entropy,
)
from entanglement_persistence.errors import (
    InvalidParameter,
    InvalidSubset,
    NotQubitState,
    PartyCountMismatch,
    TooLarge,
)
from entanglement_persistence.functionals import (
    covering_pairs,
    distributed_concurrence_squared,
    interaction_information_table,
    linear_entropy_via_bloch,
    mobius_transform,
    require_monotone,
    total_correlation_as_divergence,
    total_correlation_from_interactions,
)
from entanglement_persistence.linalg import marginal

LOG2 = math.log(2.0)


@pytest.mark.parametrize(
    "q, expected",
    [(1.0, LOG2), (1.5, 2.0 - math.sqrt(2.0)), (2.0, 0.5), (3.0, 0.375)],
)
def test_tsallis_entropy_of_maximally_mixed_qubit(q, expected):
    assert tsallis_entropy(ghz(3), [0], q=q) == pytest.approx(expected)


def test_tsallis_entropy_of_pure_state_is_zero():
    state = random_pure_state((2, 3), seed=2)
    for q in (1.0, 1.5, 2.0):
        assert tsallis_entropy(state, 0b11, q=q) == pytest.approx(0.0, abs=1e-10)


def test_tsallis_entropy_rejects_bad_q():
    with pytest.raises(InvalidParameter):
        tsallis_entropy(ghz(2), [0], q=0.0)


def test_ghz4_total_correlation_table():
    table = entropy_table(ghz(4), q=2)
    assert table.total_correlation(0b0011) == pytest.approx(0.5)
    assert table.total_correlation(0b0111) == pytest.approx(1.0)
    assert table.total_correlation(0b1111) == pytest.approx(2.0)
    assert table.total_correlation(0b0100) == pytest.approx(0.0)
    assert table.interaction_information() == pytest.approx(1.0)


def test_interaction_information_parity_for_ghz():
    assert interaction_information(ghz(3), q=2) == pytest.approx(0.0, abs=1e-12)
    assert interaction_information(ghz(4), q=2) == pytest.approx(1.0)


def test_mobius_transform_round_trip():
    table = entropy_table(random_mixed_state((2, 2, 3), seed=8), q=1.5)
    interactions = interaction_information_table(table)
    assert interactions[table.full_mask] == pytest.approx(table.interaction_information())
    for i in range(3):
        assert interactions[1 << i] == pytest.approx(0.0, abs=1e-12)
    recovered = total_correlation_from_interactions(interactions)
    for mask in table.masks():
        assert recovered[mask] == pytest.approx(table.total_correlation(mask), abs=1e-12)


def test_mobius_transform_is_involution():
    values = {1: 0.3, 2: -1.0, 3: 2.5}
    twice = mobius_transform(mobius_transform(values))
    assert twice == pytest.approx(values)


def test_mutual_and_conditional_information():
    assert mutual_information(ghz(2), [0], [1]) == pytest.approx(2 * LOG2)
    assert conditional_mutual_information(ghz(3)) == pytest.approx(LOG2)
    with pytest.raises(InvalidSubset):
        mutual_information(ghz(2), [0], [0])
    with pytest.raises(PartyCountMismatch):
        conditional_mutual_information(ghz(4))


def test_strong_subadditivity_on_random_states():
    for seed in range(5):
        state = random_mixed_state((2, 2, 2), seed=seed)
        assert conditional_mutual_information(state) >= -1e-10


def test_relative_entropy():
    zero = np.diag([1.0, 0.0])
    mixed = np.eye(2) / 2
    assert relative_entropy(mixed, mixed) == pytest.approx(0.0, abs=1e-12)
    assert relative_entropy(zero, mixed) == pytest.approx(LOG2)
    assert relative_entropy(mixed, zero) == math.inf


def test_total_correlation_is_a_divergence():
    state = random_mixed_state((2, 2, 2), seed=21)
    for mask in (0b011, 0b111):
        assert total_correlation_as_divergence(state, mask) == pytest.approx(
            total_correlation(state, mask, q=1.0), abs=1e-9
        )


def test_functional_values_and_rescale(k3):
    f = make_total_correlation_functional(k3, q=2)
    assert f(0b001) == pytest.approx(0.0, abs=1e-12)
    assert f(0b011) == pytest.approx(0.5)
    assert f(0b111) == pytest.approx(1.5)
    assert f.max_value == pytest.approx(1.5)
    half = make_total_correlation_functional(k3, q=2, rescale=2.0)
    assert half(0b111) == pytest.approx(0.75)
    assert half.rescale == 2.0
    np.testing.assert_allclose(f.scaled(2.0).values, half.values, atol=1e-15)
    with pytest.raises(InvalidParameter):
        make_total_correlation_functional(k3, rescale=0.0)
    with pytest.raises(KeyError):
        f(0)


def test_functional_from_mapping_requires_every_subset():
    with pytest.raises(InvalidParameter):
        SubsetFunctional.from_mapping({1: 0.0, 2: 0.0}, n_parties=2)
    f = SubsetFunctional.from_mapping({1: 0.0, 2: 0.0, 3: -1.0}, n_parties=2)
    assert not check_monotone(f)
    with pytest.raises(MonotonicityViolation):
        require_monotone(f)


def test_total_correlation_is_monotone():
    for seed in range(4):
        state = random_mixed_state((2, 3, 2), seed=seed)
        for q in (1.0, 1.5, 2.0):
            assert check_monotone(make_total_correlation_functional(state, q=q))


def test_covering_pairs_count():
    pairs = list(covering_pairs(3))
    assert len(pairs) == 9
    assert all(face & coface == face and (coface ^ face).bit_count() == 1 for face, coface in pairs)


def test_bloch_vector_reproduces_linear_entropy():
    state = random_mixed_state((2, 2, 2), seed=13)
    bloch = bloch_vector(state)
    for mask in (0b001, 0b101, 0b111):
        assert linear_entropy_via_bloch(bloch, mask) == pytest.approx(
            tsallis_entropy(state, mask, q=2.0), abs=1e-12
        )


def test_minkowski_length_equals_n_tangle():
    assert minkowski_length(bloch_vector(ghz(4))) == pytest.approx(1.0)
    assert n_tangle_direct(ghz(4)) == pytest.approx(1.0)
    for seed in range(3):
        state = random_mixed_state((2, 2, 2, 2), seed=seed)
        assert minkowski_length(bloch_vector(state)) == pytest.approx(n_tangle_direct(state), abs=1e-12)


def test_bloch_vector_preconditions():
    with pytest.raises(NotQubitState):
        bloch_vector(random_pure_state((2, 3), seed=0))
    with pytest.raises(NotQubitState):
        n_tangle_direct(psi1())
    with pytest.raises(TooLarge):
        bloch_vector(ghz(9))


def test_log_negativity_separates_psi1_and_psi2():
    first = log_negativity(marginal(psi1(), 0b011), 0b01)
    second = log_negativity(marginal(psi2(), 0b011), 0b01)
    assert first == pytest.approx(LOG2)
    assert second == pytest.approx(0.0, abs=1e-10)
    assert first - second > 0.1


def test_distributed_concurrence_is_twice_i2():
    assert distributed_concurrence_squared(ghz(2)) == pytest.approx(2.0)
    assert distributed_concurrence_squared(ghz(6)) == pytest.approx(2.0)
    state = random_pure_state((2, 2, 2, 2), seed=6)
    assert distributed_concurrence_squared(state) == pytest.approx(2.0 * interaction_information(state, q=2))


@pytest.mark.parametrize("seed", range(6))
def test_q_near_one_matches_von_neumann(seed):
    state = random_mixed_state((2, 2, 2), seed=seed)
    for mask in (0b001, 0b011, 0b110, 0b111):
        assert tsallis_entropy(state, mask, q=1.000001) == pytest.approx(
            tsallis_entropy(state, mask, q=1.0), abs=1e-4
        )


@pytest.mark.parametrize("q", [1.0, 1.5, 2.0])
def test_tsallis_subadditivity(q):
    for seed in range(3):
        state = random_mixed_state((2, 3, 2), seed=seed)
        table = entropy_table(state, q=q)
        for joint in table.masks():
            for part in range(1, joint):
                if part & joint != part:
                    continue
                assert table[joint] <= table[part] + table[joint ^ part] + 1e-9
