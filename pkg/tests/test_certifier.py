import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from reidlab.certifier import (
    GapCertificate,
    ReidInstance,
    VIOLATION_RTOL,
    Status,
    brute_force_gap,
    certify_dominated,
    certify_reid,
    gap_function_at,
    pointwise_gap,
    reid_gap_at,
)
from reidlab.errors import DimensionMismatch, NotHermitian, NotPositive
from reidlab.generators import GenConfig, pair_selfadjoint_product, pair_unconstrained
from reidlab.linalg import operator_norm

from conftest import complex_gaussian, random_hermitian, random_unitary, shift

seeds = st.integers(0, 2**32 - 1)

# sup over unit x of |<Sx,x>| - <SS*x,x> for the n x n truncated shift.  Taking entrywise
# moduli can only increase |<Sx,x>| and leaves <SS*x,x> unchanged, so the sup is the top
# eigenvalue of the real tridiagonal (S + S^T)/2 - diag(0, 1, ..., 1); computed with mpmath
# at 30 digits and confirmed by 40-start BFGS on the complex unit sphere.
SHIFT_SUP = {
    2: 0.2071067811865475244,  # (sqrt(2) - 1) / 2
    3: 0.24059715204600781132,
    4: 0.24775382830246225189,
    8: 0.24999141542461868714,
}


def shift_pair(n):
    S = shift(n)
    return S, S @ S.conj().T


def check_certificate_invariants(cert: GapCertificate, M, P):
    assert cert.gap_lower <= cert.gap_upper + 1e-12 * max(1.0, cert.lipschitz_bound)
    assert 0.0 <= cert.theta_star < 2 * math.pi
    assert np.linalg.norm(cert.witness) == pytest.approx(1.0, abs=1e-12)
    assert pointwise_gap(M, P, cert.witness) == pytest.approx(cert.gap_lower, abs=1e-10)
    if cert.status is Status.VIOLATED:
        assert cert.gap_lower > 0
    if cert.status is Status.CERTIFIED_HOLDS:
        assert cert.gap_upper <= cert.epsilon + cert.floor


class TestReidGapAt:
    def test_two_one_vector(self):
        S, A = shift_pair(4)
        assert reid_gap_at(A, S, np.array([2, 1, 0, 0])) == pytest.approx(1.0, abs=1e-15)

    def test_zero_K(self, rng):
        G = complex_gaussian(rng, 4, 4)
        assert reid_gap_at(G.conj().T @ G, np.zeros((4, 4)), complex_gaussian(rng, 4)) == 0.0

    def test_identity(self, rng):
        x = complex_gaussian(rng, 3)
        x /= np.linalg.norm(x)
        assert reid_gap_at(np.eye(3), np.eye(3), x) == pytest.approx(0.0, abs=1e-15)

    def test_errors(self):
        with pytest.raises(NotPositive):
            reid_gap_at(-np.eye(2), np.eye(2), np.ones(2))
        with pytest.raises(DimensionMismatch):
            reid_gap_at(np.eye(2), np.eye(2), np.ones(3))


class TestGapFunction:
    def test_zero(self):
        for theta in np.linspace(0, 2 * np.pi, 7):
            assert gap_function_at(np.zeros((2, 2)), np.zeros((2, 2)), theta) == 0.0

    def test_identity_pair(self):
        for theta in np.linspace(0, 2 * np.pi, 13):
            assert gap_function_at(np.eye(3), np.eye(3), theta) == pytest.approx(
                math.cos(theta) - 1, abs=1e-15
            )
        assert gap_function_at(np.eye(3), np.eye(3), 0.0) == 0.0

    def test_shift_at_zero(self):
        S, A = shift_pair(4)
        expected = np.linalg.eigvalsh(0.5 * (S + S.T) - A)[-1]
        value = gap_function_at(S, A, 0.0)
        assert value == pytest.approx(expected, abs=1e-15)
        assert value == pytest.approx(SHIFT_SUP[4], abs=1e-14)
        assert value > 0

    def test_non_hermitian_P(self):
        with pytest.raises(NotHermitian):
            gap_function_at(np.eye(2), np.array([[0, 1], [0, 0]]), 0.0)

    @given(seeds, st.integers(1, 6), st.floats(-10, 10))
    def test_periodic(self, seed, n, theta):
        rng = np.random.default_rng(seed)
        M = complex_gaussian(rng, n, n)
        P = random_hermitian(rng, n)
        assert gap_function_at(M, P, theta) == pytest.approx(
            gap_function_at(M, P, theta + 2 * np.pi), abs=1e-12 * max(1, operator_norm(M))
        )


class TestCertifyDominated:
    @pytest.mark.parametrize("n", sorted(SHIFT_SUP))
    def test_shift_counterexample(self, n):
        S, A = shift_pair(n)
        cert = certify_dominated(S, A)
        assert cert.status is Status.VIOLATED
        assert cert.gap_lower >= 0.2
        assert cert.gap_lower <= SHIFT_SUP[n] + 1e-12
        assert cert.gap_upper >= SHIFT_SUP[n] - 1e-12
        assert cert.gap_upper - cert.gap_lower <= max(cert.epsilon, VIOLATION_RTOL * cert.gap_lower)
        check_certificate_invariants(cert, S, A)

    def test_selfadjoint_product_holds(self):
        A, K = pair_selfadjoint_product(GenConfig(dim=6, seed=11))
        inst = ReidInstance.build(A, K)
        cert = certify_dominated(inst.M, inst.P)
        assert cert.status is Status.CERTIFIED_HOLDS
        check_certificate_invariants(cert, inst.M, inst.P)
        oracle, _ = brute_force_gap(inst.M, inst.P, 10_000, seed=3)
        assert oracle <= cert.gap_upper + 1e-10

    def test_zero_boundary(self):
        Z = np.zeros((3, 3))
        cert = certify_dominated(Z, Z)
        assert cert.gap_upper == 0.0
        assert cert.status is Status.CERTIFIED_HOLDS

    def test_flat_gap_function(self):
        # f(theta) = lambda_max(diag(0, cos(theta) - 1)) = 0 for every theta
        M = P = np.diag([0.0, 1.0])
        cert = certify_dominated(M, P)
        assert cert.status is Status.CERTIFIED_HOLDS
        assert cert.theta_star == 0.0  # ties break toward the smallest angle

    def test_unitary_boundary_case(self, rng):
        U = random_unitary(rng, 5)
        cert = certify_dominated(U, np.eye(5))
        assert cert.status is Status.CERTIFIED_HOLDS
        assert cert.gap_lower == pytest.approx(0.0, abs=1e-12)

    def test_errors(self):
        with pytest.raises(NotHermitian):
            certify_dominated(np.eye(2), np.array([[1, 1], [0, 1]]))
        with pytest.raises(NotPositive):
            certify_dominated(np.eye(2), -np.eye(2))
        with pytest.raises(ValueError):
            certify_dominated(np.eye(2), np.eye(2), epsilon=0.0)
        with pytest.raises(DimensionMismatch):
            certify_dominated(np.eye(2), np.eye(3))

    def test_evaluation_cap_gives_inconclusive(self, rng):
        U = random_unitary(rng, 4)
        cert = certify_dominated(U, np.eye(4), epsilon=1e-12, max_evaluations=200)
        assert cert.status is Status.INCONCLUSIVE
        assert cert.grid_points <= 200

    def test_deterministic(self, rng):
        M = complex_gaussian(rng, 5, 5)
        G = complex_gaussian(rng, 5, 5)
        P = G.conj().T @ G
        a, b = certify_dominated(M, P), certify_dominated(M, P)
        assert a.to_dict() == b.to_dict()

    def test_json_shape(self):
        S, A = shift_pair(3)
        d = certify_dominated(S, A).to_dict()
        assert d["status"] == "VIOLATED"
        assert d["witness"]["dim"] == 3 and len(d["witness"]["data"]) == 3

    @given(seeds, st.integers(1, 6))
    def test_self_adjoint_reduction(self, seed, n):
        rng = np.random.default_rng(seed)
        M = random_hermitian(rng, n)
        G = complex_gaussian(rng, n, n)
        P = 0.5 * G.conj().T @ G
        ref = max(np.linalg.eigvalsh(M - P)[-1], np.linalg.eigvalsh(-M - P)[-1])
        cert = certify_dominated(M, P)
        assert cert.gap_upper >= ref - 1e-12
        assert cert.gap_lower >= ref - cert.epsilon

    @given(seeds, st.integers(1, 6), st.sampled_from([0.5, 3.0, 40.0]))
    def test_scaling_covariance(self, seed, n, s):
        rng = np.random.default_rng(seed)
        M = complex_gaussian(rng, n, n)
        G = complex_gaussian(rng, n, n)
        P = 0.3 * G.conj().T @ G
        eps = 1e-6 * max(1, operator_norm(M))
        a = certify_dominated(M, P, eps)
        b = certify_dominated(s * M, s * P, s * eps)
        size = s * max(1.0, operator_norm(M), operator_norm(P))
        assert b.gap_upper == pytest.approx(s * a.gap_upper, abs=1e-10 * size)
        assert b.gap_lower == pytest.approx(s * a.gap_lower, abs=1e-10 * size)
        assert a.status == b.status

    @given(seeds, st.integers(1, 6))
    def test_witness_soundness_and_sandwich(self, seed, n):
        rng = np.random.default_rng(seed)
        M = complex_gaussian(rng, n, n)
        G = complex_gaussian(rng, n, n)
        P = rng.uniform(0.1, 2) * G.conj().T @ G
        cert = certify_dominated(M, P)
        check_certificate_invariants(cert, M, P)
        oracle, _ = brute_force_gap(M, P, 2_000, seed, extra_candidates=[cert.witness])
        assert oracle <= cert.gap_upper + 1e-10
        assert cert.gap_lower <= oracle + 1e-10


class TestCertifyReid:
    def test_shift(self):
        S, A = shift_pair(4)
        assert certify_reid(ReidInstance.build(A, S)).status is Status.VIOLATED

    def test_selfadjoint_instance(self):
        A, K = pair_selfadjoint_product(GenConfig(dim=5, seed=7))
        assert certify_reid(ReidInstance.build(A, K)).status is Status.CERTIFIED_HOLDS

    def test_zero_K(self, rng):
        G = complex_gaussian(rng, 4, 4)
        cert = certify_reid(ReidInstance.build(G.conj().T @ G, np.zeros((4, 4))))
        assert cert.status is Status.CERTIFIED_HOLDS
        assert cert.gap_upper <= cert.epsilon

    def test_instance_validation(self):
        with pytest.raises(NotPositive):
            ReidInstance.build(np.array([[1.0, 2.0], [2.0, 1.0]]), np.eye(2))
        inst = ReidInstance.build(np.eye(2), 3 * np.eye(2))
        assert inst.c == pytest.approx(3.0)
        np.testing.assert_array_equal(inst.M, 3 * np.eye(2))


class TestBruteForce:
    def test_shift(self):
        S, A = shift_pair(4)
        value, x = brute_force_gap(S, A, 10_000, seed=0)
        assert value >= 0.2
        assert np.linalg.norm(x) == pytest.approx(1.0)

    def test_identity(self):
        value, _ = brute_force_gap(np.eye(3), np.eye(3), 500, seed=1)
        assert value == pytest.approx(0.0, abs=1e-15)

    def test_below_certificate(self):
        A, K = pair_unconstrained(GenConfig(dim=5, seed=99))
        inst = ReidInstance.build(A, K)
        cert = certify_reid(inst)
        value, _ = brute_force_gap(inst.M, inst.P, 10_000, seed=5)
        assert value <= cert.gap_upper + 1e-10

    def test_reproducible(self, rng):
        M = complex_gaussian(rng, 3, 3)
        assert brute_force_gap(M, np.eye(3), 100, 4)[0] == brute_force_gap(M, np.eye(3), 100, 4)[0]
