import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bell_oracle, eigvec, inner_probability
from stsm.bloch import (
    BELL_STATE,
    BlochDirection,
    DensityMatrix,
    PureQubitState,
    TwoQubitState,
    X_AXIS,
    Z_AXIS,
    bell_joint_probability,
    born_conditional,
    eigenstate,
    pauli_contraction,
    projector,
    state_from_direction,
    transition_probability,
)

thetas = st.floats(0.0, math.pi, allow_nan=False)
phis = st.floats(-20.0, 20.0, allow_nan=False)
directions = st.builds(BlochDirection, thetas, phis)
signs = st.sampled_from([1, -1])


class TestBlochDirection:
    def test_phi_wraps_into_range(self):
        d = BlochDirection(1.0, -0.5)
        assert 0 <= d.phi < 2 * math.pi
        assert d.phi == pytest.approx(2 * math.pi - 0.5)

    @pytest.mark.parametrize("theta", [0.0, math.pi])
    def test_poles_drop_phi(self, theta):
        assert BlochDirection(theta, 1.234) == BlochDirection(theta, 0.0)
        assert BlochDirection(theta, 1.234).phi == 0.0

    @pytest.mark.parametrize("theta", [-0.1, math.pi + 0.1, float("nan")])
    def test_rejects_bad_theta(self, theta):
        with pytest.raises(ValueError):
            BlochDirection(theta, 0.0)

    @given(directions)
    def test_invariants(self, d):
        assert 0 <= d.theta <= math.pi
        assert 0 <= d.phi < 2 * math.pi
        assert np.linalg.norm(d.vector) == pytest.approx(1.0, abs=1e-12)


class TestPureQubitState:
    def test_canonical_phase(self):
        s = PureQubitState(1j / math.sqrt(2), -1 / math.sqrt(2))
        assert s.up == pytest.approx(1 / math.sqrt(2))
        assert s.up.imag == 0
        assert s.down == pytest.approx(1j / math.sqrt(2))

    def test_canonical_phase_zero_up(self):
        s = PureQubitState(0, -1j)
        assert s.up == 0 and s.down == 1

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            PureQubitState(1, 1)


class TestStateFromDirection:
    def test_north_pole(self):
        s = state_from_direction(BlochDirection(0, 0))
        assert (s.up, s.down) == (1, 0)

    def test_south_pole(self):
        s = state_from_direction(BlochDirection(math.pi, 0))
        assert abs(s.up) < 1e-16
        assert s.down == pytest.approx(1, abs=1e-15)

    def test_sigma_x_eigenvector(self):
        # oracle: direct eigen-solve of sigma_x, phase-fixed
        v = eigvec(math.pi / 2, 0.0, 1)
        v = v / (v[0] / abs(v[0]))
        s = state_from_direction(X_AXIS)
        np.testing.assert_allclose(s.vector, v, atol=1e-12)
        np.testing.assert_allclose(s.vector, [1 / math.sqrt(2)] * 2, atol=1e-12)

    @given(directions)
    def test_is_plus_one_eigenstate(self, d):
        v = state_from_direction(d).vector
        np.testing.assert_allclose(pauli_contraction(d) @ v, v, atol=1e-12)

    @given(directions)
    def test_minus_eigenstate(self, d):
        v = eigenstate(d, -1).vector
        np.testing.assert_allclose(pauli_contraction(d) @ v, -v, atol=1e-12)


class TestTransitionProbability:
    def test_same_axis(self):
        assert transition_probability(Z_AXIS, Z_AXIS, 1) == pytest.approx(1.0, abs=1e-15)

    def test_z_then_x(self):
        expected = inner_probability((0, 0), (math.pi / 2, 0), 1)
        assert expected == pytest.approx(0.5, abs=1e-12)
        assert transition_probability(Z_AXIS, X_AXIS, 1) == pytest.approx(expected, abs=1e-12)

    def test_z_then_two_thirds_pi(self):
        expected = inner_probability((0, 0), (2 * math.pi / 3, 0), 1)
        assert expected == pytest.approx(0.25, abs=1e-12)
        got = transition_probability(Z_AXIS, BlochDirection(2 * math.pi / 3, 0), 1)
        assert got == pytest.approx(expected, abs=1e-12)

    @given(directions, directions, signs)
    def test_matches_eigensolve_oracle(self, n, m, prep_sign):
        for r in (1, -1):
            got = transition_probability(n, m, r, prep_sign)
            want = inner_probability((n.theta, n.phi), (m.theta, m.phi), r, prep_sign)
            assert got == pytest.approx(want, abs=1e-12)

    @given(directions, directions)
    def test_outcomes_sum_to_one(self, n, m):
        total = transition_probability(n, m, 1) + transition_probability(n, m, -1)
        assert total == pytest.approx(1.0, abs=1e-12)

    @given(directions, directions)
    def test_symmetric(self, n, m):
        assert transition_probability(n, m, 1) == pytest.approx(
            transition_probability(m, n, 1), abs=1e-12
        )

    @given(directions, directions)
    def test_half_angle_identity(self, n, m):
        angle = math.acos(np.clip(n.vector @ m.vector, -1, 1))
        assert transition_probability(n, m, 1) == pytest.approx(
            math.cos(angle / 2) ** 2, abs=1e-12
        )


class TestBornConditional:
    def test_north_pole_plus(self):
        assert born_conditional(1, 0.0) == 1.0

    def test_equator_minus(self):
        assert born_conditional(-1, math.pi / 2) == pytest.approx(0.5, abs=1e-15)

    def test_two_thirds_pi(self):
        assert born_conditional(1, 2 * math.pi / 3) == pytest.approx(
            math.cos(math.pi / 3) ** 2, abs=1e-15
        )

    @given(thetas, phis, phis)
    def test_phi_independent_and_complete(self, theta, phi1, phi2):
        for r in (1, -1):
            assert born_conditional(r, theta, phi1) == pytest.approx(
                born_conditional(r, theta, phi2), abs=1e-15
            )
        assert born_conditional(1, theta, phi1) + born_conditional(-1, theta, phi1) == (
            pytest.approx(1.0, abs=1e-15)
        )

    def test_vectorized(self):
        th = np.linspace(0, math.pi, 7)
        np.testing.assert_allclose(born_conditional(1, th), np.cos(th / 2) ** 2, atol=1e-15)

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            born_conditional(0, 1.0)


class TestBell:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            ((0, 0), (0, 0), {(1, 1): 0.5, (1, -1): 0, (-1, 1): 0, (-1, -1): 0.5}),
            ((0, 0), (math.pi / 2, 0), {k: 0.25 for k in [(1, 1), (1, -1), (-1, 1), (-1, -1)]}),
            ((math.pi / 2, 0), (math.pi / 2, 0), {(1, 1): 0.5, (1, -1): 0, (-1, 1): 0, (-1, -1): 0.5}),
        ],
    )
    def test_examples(self, a, b, expected):
        for (ra, rb), p in expected.items():
            assert bell_oracle(a, b, ra, rb) == pytest.approx(p, abs=1e-12)
            got = bell_joint_probability(BlochDirection(*a), BlochDirection(*b), ra, rb)
            assert got == pytest.approx(p, abs=1e-12)

    @given(directions, directions)
    def test_sums_and_marginals(self, a, b):
        table = {(ra, rb): bell_joint_probability(a, b, ra, rb) for ra in (1, -1) for rb in (1, -1)}
        assert sum(table.values()) == pytest.approx(1.0, abs=1e-12)
        for r in (1, -1):
            assert table[(r, 1)] + table[(r, -1)] == pytest.approx(0.5, abs=1e-12)
            assert table[(1, r)] + table[(-1, r)] == pytest.approx(0.5, abs=1e-12)

    @settings(max_examples=100)
    @given(st.floats(0.0, math.pi))
    def test_equal_xz_directions_never_anticorrelate(self, theta):
        d = BlochDirection(theta, 0.0)
        assert bell_joint_probability(d, d, 1, -1) < 1e-12
        assert bell_joint_probability(d, d, -1, 1) < 1e-12

    def test_bell_state_norm(self):
        assert np.vdot(BELL_STATE.amplitudes, BELL_STATE.amplitudes).real == pytest.approx(1)
        with pytest.raises(ValueError):
            TwoQubitState([1, 1, 0, 0])


class TestProjector:
    def test_z_plus(self):
        rho = projector(state_from_direction(Z_AXIS))
        np.testing.assert_allclose(rho.entries, [[1, 0], [0, 0]], atol=1e-15)

    def test_x_plus(self):
        v = np.array([1, 1]) / math.sqrt(2)
        rho = projector(state_from_direction(X_AXIS))
        np.testing.assert_allclose(rho.entries, np.outer(v, v), atol=1e-12)
        np.testing.assert_allclose(rho.entries, 0.5, atol=1e-12)

    @given(directions)
    def test_rank_one_idempotent(self, d):
        s = state_from_direction(d)
        rho = projector(s)
        assert np.trace(rho.entries).real == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(rho.entries @ s.vector, s.vector, atol=1e-12)
        np.testing.assert_allclose(np.sort(rho.eigenvalues), [0, 1], atol=1e-10)

    def test_density_matrix_validation(self):
        with pytest.raises(ValueError):
            DensityMatrix([[1, 1], [0, 0]])
        with pytest.raises(ValueError):
            DensityMatrix([[0.6, 0], [0, 0.6]])
        with pytest.raises(ValueError):
            DensityMatrix([[1.5, 0], [0, -0.5]])
