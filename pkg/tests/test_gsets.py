import numpy as np
import pytest

import helpers
import oracles
from gsetfourier import (
    ActionError,
    FiniteAbelianGroup,
    GSet,
    distance,
    indicator,
    inner,
    is_unitary,
    make_gset,
    norm,
    roots_of_unity_function,
    set_distance,
)


def test_two_orbit_construction():
    X = helpers.two_orbit_gset()
    assert X.n == 4
    assert X.orbits == [(0, 1), (2, 3)]
    assert X.is_faithful()


def test_three_orbit_construction():
    X = helpers.three_orbit_gset()
    assert X.orbits == [(0, 1), (2, 3), (4, 5)]
    assert X.is_faithful()
    # stabilizers are the three distinct order-2 subgroups
    stabs = {X.stabilizer_indices(o[0]) for o in X.orbits}
    assert stabs == {(0, 2), (0, 1), (0, 3)}


def test_trivial_action():
    G = FiniteAbelianGroup([2, 2])
    X = make_gset(G, 3, [[0, 1, 2], [0, 1, 2]])
    assert X.kernel_indices == (0, 1, 2, 3)
    assert not X.is_faithful()
    assert X.orbits == [(0,), (1,), (2,)]


def test_generators_accept_mapping_keys():
    G = FiniteAbelianGroup([2, 2])
    X = GSet.from_generators(G, 4, {"e1": [0, 1, 3, 2], "e2": [1, 0, 2, 3]})
    assert np.array_equal(X.table, helpers.two_orbit_gset().table)
    with pytest.raises(ActionError):
        GSet.from_generators(G, 4, {"e1": [0, 1, 3, 2]})
    with pytest.raises(ActionError):
        GSet.from_generators(G, 4, {"e1": [0, 1, 3, 2], "e2": [1, 0, 2, 3], "e3": [0, 1, 2, 3]})


def test_generator_of_wrong_order_rejected():
    G = FiniteAbelianGroup([3])
    with pytest.raises(ActionError, match="order"):
        GSet.from_generators(G, 2, [[1, 0]])  # a transposition has order 2, not 3


def test_noncommuting_generators_rejected():
    G = FiniteAbelianGroup([2, 2])
    with pytest.raises(ActionError, match="commute"):
        GSet.from_generators(G, 3, [[1, 0, 2], [0, 2, 1]])


def test_non_permutation_rejected():
    G = FiniteAbelianGroup([2])
    with pytest.raises(ActionError, match="permutation"):
        GSet.from_generators(G, 3, [[0, 0, 1]])


def test_table_mutation_is_always_caught():
    X = helpers.three_orbit_gset()
    rng = np.random.default_rng(17)
    for _ in range(60):
        table = np.array(X.table)
        a = rng.integers(1, table.shape[0])
        x = rng.integers(table.shape[1])
        old = table[a, x]
        table[a, x] = (old + 1 + rng.integers(X.n - 1)) % X.n
        with pytest.raises(ActionError):
            GSet.from_table(X.group, table)


def test_identity_row_required():
    G = FiniteAbelianGroup([2])
    table = np.array([[1, 0], [0, 1]])
    with pytest.raises(ActionError, match="identity"):
        GSet.from_table(G, table)


def test_incompatible_table_rejected():
    # rows are permutations and the identity row is fine, but e1+e1 != e1 twice
    G = FiniteAbelianGroup([4])
    table = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    table[3] = [1, 2, 3, 0]
    with pytest.raises(ActionError, match="compatible"):
        GSet.from_table(G, table)


def test_act_examples():
    X = helpers.two_orbit_gset()
    rng = np.random.default_rng(23)
    f = helpers.random_function(rng, 4)
    assert np.allclose(X.act(0, f), f)
    # the generator e2 (= beta) swaps the first orbit, so it moves 1_{x1} to 1_{x2}
    beta = X.group.element_index((0, 1))
    assert np.allclose(X.act(beta, indicator(4, 0)), indicator(4, 1))


def test_action_preserves_inner_product():
    X = helpers.three_orbit_gset()
    rng = np.random.default_rng(29)
    for a in range(4):
        f = helpers.random_function(rng, X.n)
        g = helpers.random_function(rng, X.n)
        assert inner(X.act(a, f), X.act(a, g)) == pytest.approx(inner(f, g), abs=1e-9)
        neg = int(X.group.negation_indices[a])
        assert inner(X.act(a, f), g) == pytest.approx(inner(f, X.act(neg, g)), abs=1e-9)


def test_convolve_unit_and_regular():
    X = helpers.three_orbit_gset()
    rng = np.random.default_rng(31)
    f = helpers.random_function(rng, X.n)
    unit = np.zeros(4, dtype=complex)
    unit[0] = 1
    assert np.allclose(X.convolve(unit, f), f)
    assert np.allclose(X.convolve(X.group.regular_character, f) / 4, f)


def test_convolve_principal_orbit_averages():
    # frozen from 4-term orbit averages: each point receives (1 + w)/2
    X = helpers.three_orbit_gset()
    f = roots_of_unity_function(helpers.ALTERNATING_EXPONENTS, 3)
    omega = np.exp(2j * np.pi / 3)
    principal = X.group.char_table[0]
    assert np.allclose(X.convolve(principal, f) / 4, np.full(6, (1 + omega) / 2))


def test_convolve_matches_oracle():
    X = helpers.two_orbit_gset()
    rng = np.random.default_rng(37)
    sigma = helpers.random_function(rng, 4)
    f = helpers.random_function(rng, 4)
    expected = oracles.convolve_set(
        X.table.tolist(), X.group.negation_indices.tolist(), list(sigma), list(f)
    )
    assert np.abs(X.convolve(sigma, f) - expected).max() <= 1e-9


def test_convolve_bilinear_associative_conjugation():
    X = helpers.three_orbit_gset()
    G = X.group
    rng = np.random.default_rng(41)
    for _ in range(5):
        tau = helpers.random_function(rng, 4)
        sigma = helpers.random_function(rng, 4)
        f = helpers.random_function(rng, 6)
        g = helpers.random_function(rng, 6)
        c = complex(rng.standard_normal(), rng.standard_normal())
        assert np.abs(X.convolve(sigma, f + c * g)
                      - X.convolve(sigma, f) - c * X.convolve(sigma, g)).max() <= 1e-9
        assert np.abs(X.convolve(G.convolve(tau, sigma), f)
                      - X.convolve(tau, X.convolve(sigma, f))).max() <= 1e-9
        assert np.abs(np.conj(X.convolve(sigma, f))
                      - X.convolve(np.conj(sigma), np.conj(f))).max() <= 1e-9


def test_distance_examples():
    rng = np.random.default_rng(43)
    f = helpers.random_function(rng, 5)
    g = helpers.random_function(rng, 5)
    assert distance(f, f) == 0
    assert distance(f, g) == pytest.approx(distance(g, f))
    assert distance([1, 1], [1, -1]) == pytest.approx(2)
    assert set_distance(f, [g, f]) == 0
    with pytest.raises(ValueError):
        set_distance(f, [])


def test_norm_and_unitary_helpers():
    assert norm([3, 4]) == pytest.approx(5)
    assert is_unitary(np.exp(1j * np.linspace(0, 5, 7)))
    assert not is_unitary([1, 0.5])
    f = roots_of_unity_function([0, 1, 2, 3], 4)
    assert np.allclose(f, [1, 1j, -1, -1j])
    assert is_unitary(f)


def test_coset_unions_are_valid_gsets():
    rng = np.random.default_rng(47)
    for _ in range(25):
        X = helpers.random_gset(rng)
        assert X.n <= 12
        GSet.from_table(X.group, X.table)  # re-validation passes
        sizes = sorted(len(o) for o in X.orbits)
        assert sum(sizes) == X.n
