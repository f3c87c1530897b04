import json

import numpy as np
import pytest

import qppl
from qppl import (
    CapacityError, Environment, extend, initial_state, inner_product,
    output_distribution, state_from_json, state_to_json, to_density,
)
from conftest import RT2, assert_state_close, make_state

S = 1 / RT2


def random_two_layer(rng, n_bits, n_branches):
    names = tuple(f"v{i}" for i in range(n_bits))
    probs = rng.random(n_branches) + 0.1
    probs /= probs.sum()
    branches = []
    for p in probs:
        v = rng.standard_normal(1 << n_bits)
        v /= np.linalg.norm(v)
        branches.append((float(p), v))
    return make_state(names, branches)


class TestInitialState:
    def test_single_input(self):
        assert_state_close(initial_state(["x"]), [(1.0, [1, 0])])

    def test_two_inputs(self):
        assert_state_close(initial_state(["x", "y"]), [(1.0, [1, 0, 0, 0])])

    def test_no_inputs_is_scalar_one(self):
        assert_state_close(initial_state([]), [(1.0, [1])])

    def test_duplicate_inputs_rejected(self):
        with pytest.raises(ValueError):
            initial_state(["x", "x"])

    def test_capacity_cap(self):
        with pytest.raises(CapacityError):
            initial_state([f"v{i}" for i in range(25)])


class TestEnvironment:
    def test_first_declared_is_most_significant(self):
        env = Environment(("x", "y"))
        assert env.shift("x") == 1
        assert env.shift("y") == 0
        assert env.bit(0b10, "x") == 1
        assert env.bit(0b10, "y") == 0

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            Environment(("x",)).shift("w")


class TestInnerProduct:
    def test_norm_of_valid_branch_is_one(self):
        st = make_state(["x"], [(1.0, [S, S])])
        assert inner_product(st.branches[0].amps, st.branches[0].amps) == pytest.approx(1.0)

    def test_orthogonal_basis_states(self):
        assert inner_product(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0

    def test_opposite_sign_superpositions_are_orthogonal(self):
        # (1/sqrt2)(1) * (1/sqrt2)(1) + (1/sqrt2)(1) * (-1/sqrt2)(1) = 0
        plus = np.array([S, S])
        minus = np.array([S, -S])
        assert inner_product(plus, minus) == pytest.approx(0.0, abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(np.array([1.0]), np.array([1.0, 0.0]))

    def test_polarization_identity(self):
        # u.v == ((|u+v|^2 - |u|^2 - |v|^2) / 2 exactly as an algebraic identity.
        rng = np.random.default_rng(42)
        for _ in range(50):
            u = rng.standard_normal(8)
            v = rng.standard_normal(8)
            lhs = inner_product(u, v)
            rhs = 0.5 * (
                inner_product(u + v, u + v) - inner_product(u, u) - inner_product(v, v)
            )
            assert lhs == pytest.approx(rhs, abs=1e-12)


class TestExtend:
    def test_basis_state_gets_low_order_zero(self):
        st = make_state(["x"], [(1.0, [0, 1])])
        out = extend(st, ["y"])
        assert out.env.names == ("x", "y")
        assert_state_close(out, [(1.0, [0, 0, 1, 0])])

    def test_superposition_embeds_per_world(self):
        st = make_state(["x"], [(1.0, [S, S])])
        assert_state_close(extend(st, ["y"]), [(1.0, [S, 0, S, 0])])

    def test_zero_extension_is_identity(self):
        st = make_state(["x"], [(1.0, [S, -S])])
        out = extend(st, [])
        assert out.env.names == st.env.names
        assert_state_close(out, [(1.0, [S, -S])])

    def test_name_clash(self):
        with pytest.raises(ValueError):
            extend(make_state(["x"], [(1.0, [1, 0])]), ["x"])


class TestToDensity:
    def test_pure_zero(self):
        st = make_state(["x"], [(1.0, [1, 0])])
        np.testing.assert_array_equal(to_density(st), [[1, 0], [0, 0]])

    def test_even_mixture(self):
        st = make_state(["x"], [(0.5, [1, 0]), (0.5, [0, 1])])
        np.testing.assert_allclose(to_density(st), np.diag([0.5, 0.5]))

    def test_uniform_superposition(self):
        st = make_state(["x"], [(1.0, [S, S])])
        np.testing.assert_allclose(to_density(st), [[0.5, 0.5], [0.5, 0.5]])


class TestOutputDistribution:
    def test_uniform(self):
        st = make_state(["x"], [(1.0, [S, S])])
        dist = output_distribution(st)
        assert dist[0] == pytest.approx(0.5)
        assert dist[1] == pytest.approx(0.5)

    def test_weighted_mixture(self):
        st = make_state(["x"], [(0.5, [1, 0]), (0.5, [S, -S])])
        dist = output_distribution(st)
        assert dist[0] == pytest.approx(0.75)
        assert dist[1] == pytest.approx(0.25)

    def test_zero_weight_worlds_omitted(self):
        st = make_state(["x"], [(1.0, [1, 0])])
        assert set(output_distribution(st)) == {0}

    def test_matches_density_diagonal(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            st = random_two_layer(rng, rng.integers(1, 5), rng.integers(1, 4))
            dist = output_distribution(st)
            diag = np.diag(to_density(st))
            full = np.zeros(st.env.dim)
            for k, v in dist.items():
                full[k] = v
            np.testing.assert_allclose(full, diag, atol=1e-10)
            assert sum(dist.values()) == pytest.approx(1.0, abs=1e-10)


class TestStateInvariants:
    def test_valid_random_states_pass(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            qppl.assert_valid_state(random_two_layer(rng, 3, 3))

    def test_bad_norm_rejected(self):
        st = make_state(["x"], [(1.0, [1, 1])])
        with pytest.raises(ValueError):
            qppl.assert_valid_state(st)

    def test_bad_probability_sum_rejected(self):
        st = make_state(["x"], [(0.7, [1, 0]), (0.7, [0, 1])])
        with pytest.raises(ValueError):
            qppl.assert_valid_state(st)


class TestJson:
    def test_schema(self):
        st = make_state(["x", "y"], [(1.0, [S, 0, S, 0])])
        payload = json.loads(state_to_json(st))
        assert payload["vars"] == ["x", "y"]
        assert len(payload["branches"]) == 1
        assert payload["branches"][0]["p"] == 1.0
        assert len(payload["branches"][0]["amps"]) == 4

    def test_round_trip(self):
        rng = np.random.default_rng(11)
        st = random_two_layer(rng, 3, 2)
        back = state_from_json(state_to_json(st))
        assert back.env.names == st.env.names
        assert_state_close(back, [(b.p, b.amps) for b in st.branches], tol=1e-12)


def test_basis_label():
    assert qppl.basis_label(0, 0) == "()"
    assert qppl.basis_label(3, 2) == "11"
    assert qppl.basis_label(2, 3) == "010"
