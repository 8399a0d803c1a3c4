import numpy as np
import pytest

from spinfock import fock, so_algebra as so, spin_group as sg
from spinfock.errors import DomainError, SizeError


class TestExponentials:
    def test_exp_zero_is_identity(self):
        g = sg.group_exp(so.zero_element(1))
        assert np.allclose(g.spin_matrix, np.eye(2), atol=1e-14)
        assert np.allclose(g.defining_matrix, np.eye(3), atol=1e-14)

    def test_defining_rotation_closed_form(self):
        theta = 0.8
        m = sg.rep_exp(so.basis_element(1, 1, 2, theta), so.defining_representation(1)).real
        expected = np.eye(3)
        expected[:2, :2] = [[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]]
        assert np.max(np.abs(m - expected)) < 1e-12

    def test_double_cover(self):
        # a full defining-rep turn is -1 in the spin representation
        m = sg.rep_exp(so.basis_element(1, 1, 2, 2 * np.pi), so.spin_representation(1))
        assert np.max(np.abs(m + np.eye(2))) < 1e-12
        r = sg.rep_exp(so.basis_element(1, 1, 2, 2 * np.pi), so.defining_representation(1))
        assert np.max(np.abs(r - np.eye(3))) < 1e-12

    def test_unitary_output(self):
        rng = np.random.default_rng(1)
        for n in (1, 2):
            coeffs = {s: rng.uniform(-2, 2) for s in so.symbols(n)}
            g = sg.group_exp(so.AlgebraElement(n, coeffs))
            u = g.spin_matrix
            assert np.max(np.abs(u.conj().T @ u - np.eye(1 << n))) < 1e-12

    def test_complex_coefficients_rejected(self):
        with pytest.raises(DomainError):
            sg.group_exp(so.basis_element(1, 1, 2, 1j))
        # the unchecked entry point still exponentiates them
        m = sg.matrix_exp(so.spin_rep(so.basis_element(1, 1, 2, 1j)))
        assert np.all(np.isfinite(m))


class TestGroupPoint:
    def test_rejects_non_unitary(self):
        with pytest.raises(DomainError):
            sg.GroupPoint(1, np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_rejects_reflection(self):
        with pytest.raises(DomainError):
            sg.GroupPoint(1, np.eye(2), np.diag([1.0, 1.0, -1.0]))


class TestPrincipalLog:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_roundtrip(self, n):
        rng = np.random.default_rng(10 + n)
        for _ in range(25):
            r = sg.haar_orthogonal(rng, 2 * n + 1)
            a = sg.principal_so_log(r)
            assert np.max(np.abs(a + a.T)) < 1e-12
            assert np.max(np.abs(sg.expm_antihermitian(a).real - r)) < 1e-8

    def test_angle_pi_guard_rodrigues(self):
        with pytest.raises(sg.AnglePiError):
            sg.principal_so_log(np.diag([-1.0, -1.0, 1.0]))

    def test_angle_pi_guard_schur(self):
        with pytest.raises(sg.AnglePiError):
            sg.principal_so_log(np.diag([-1.0, -1.0, 1.0, 1.0, 1.0]))

    def test_spin_lift_squares_to_rotation_consistency(self):
        # lift(r)^2 equals lift of the algebra doubled, up to deck sign freedom
        rng = np.random.default_rng(2)
        r = sg.haar_orthogonal(rng, 3)
        a = sg.principal_so_log(r)
        u = sg.spin_lift(1, r)
        doubled = sg.expm_antihermitian(2 * so.spin_rep(sg.algebra_from_antisymmetric(1, a)))
        assert np.max(np.abs(u @ u - doubled)) < 1e-10


class TestHaar:
    def test_sample_invariants(self):
        rng = np.random.default_rng(0)
        for n in (1, 2):
            for _ in range(50):
                g = sg.haar_sample(rng, n)
                u, r = g.spin_matrix, g.defining_matrix
                assert np.max(np.abs(u.conj().T @ u - np.eye(1 << n))) < 1e-10
                assert np.max(np.abs(r.T @ r - np.eye(2 * n + 1))) < 1e-10
                assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-10)

    def test_entry_mean_and_trace_moment(self):
        rng = np.random.default_rng(123)
        n_samples = 4000
        means = np.empty(n_samples)
        traces = np.empty(n_samples)
        for i in range(n_samples):
            g = sg.haar_sample(rng, 1)
            means[i] = g.defining_matrix.mean()
            traces[i] = np.trace(g.defining_matrix) ** 2
        z_mean = abs(means.mean()) / (means.std(ddof=1) / np.sqrt(n_samples))
        z_trace = abs(traces.mean() - 1.0) / (traces.std(ddof=1) / np.sqrt(n_samples))
        assert z_mean <= 3.0
        assert z_trace <= 3.0

    def test_determinism(self):
        a = sg.haar_sample(np.random.default_rng(9), 2)
        b = sg.haar_sample(np.random.default_rng(9), 2)
        assert np.array_equal(a.spin_matrix, b.spin_matrix)
        assert np.array_equal(a.defining_matrix, b.defining_matrix)


class TestMatrixCoefficients:
    def test_identity_values(self):
        e = sg.identity_point(2)
        assert sg.evaluate_coefficient(sg.MatrixCoefficient(fock.vacuum(2)), e) == 1.0
        assert sg.evaluate_coefficient(sg.MatrixCoefficient(fock.basis_vector(2, [1])), e) == 0.0
        rng = np.random.default_rng(1)
        psi = fock.FockVector(2, rng.standard_normal(4) + 1j * rng.standard_normal(4))
        value = sg.evaluate_coefficient(sg.MatrixCoefficient(psi), e)
        assert value == fock.fock_inner(fock.vacuum(2), psi)

    def test_dimension_mismatch(self):
        with pytest.raises(SizeError):
            sg.evaluate_coefficient(sg.MatrixCoefficient(fock.vacuum(1)), sg.identity_point(2))

    def test_right_translation_covariance(self):
        rng = np.random.default_rng(5)
        n = 2
        psi = fock.FockVector(n, rng.standard_normal(4) + 1j * rng.standard_normal(4))
        for _ in range(10):
            g, h = sg.haar_sample(rng, n), sg.haar_sample(rng, n)
            gh = sg.GroupPoint(n, g.spin_matrix @ h.spin_matrix)
            lhs = sg.evaluate_coefficient(sg.MatrixCoefficient(psi), gh)
            rhs = sg.evaluate_coefficient(sg.MatrixCoefficient(psi.apply(h.spin_matrix)), g)
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_deck_sign_cancellation(self):
        rng = np.random.default_rng(6)
        n = 2
        psi = fock.FockVector(n, rng.standard_normal(4) + 1j * rng.standard_normal(4))
        phi = fock.FockVector(n, rng.standard_normal(4) + 1j * rng.standard_normal(4))
        for _ in range(10):
            g = sg.haar_sample(rng, n)
            flipped = sg.deck_flip(g)
            a = sg.evaluate_coefficient(sg.MatrixCoefficient(psi), g)
            af = sg.evaluate_coefficient(sg.MatrixCoefficient(psi), flipped)
            assert af == -a
            b = sg.evaluate_coefficient(sg.MatrixCoefficient(phi), g)
            bf = sg.evaluate_coefficient(sg.MatrixCoefficient(phi), flipped)
            assert np.conj(af) * bf == pytest.approx(np.conj(a) * b, abs=1e-15)


class TestL2InnerMC:
    def test_schur_normalization_vacuum(self):
        est = sg.l2_inner_mc(fock.vacuum(1), fock.vacuum(1), 2000, np.random.default_rng(21))
        assert abs(est.mean - 0.5) <= 3 * est.std_error

    def test_orthogonal_states(self):
        est = sg.l2_inner_mc(
            fock.vacuum(1), fock.basis_vector(1, [1]), 2000, np.random.default_rng(22)
        )
        assert abs(est.mean) <= 3 * est.std_error

    def test_two_mode_top_state(self):
        top = fock.basis_vector(2, [1, 2])
        est = sg.l2_inner_mc(top, top, 1500, np.random.default_rng(23))
        assert abs(est.mean - 0.25) <= 3 * est.std_error

    def test_minimum_samples(self):
        with pytest.raises(SizeError):
            sg.l2_inner_mc(fock.vacuum(1), fock.vacuum(1), 50, np.random.default_rng(0))

    def test_left_invariance_evidence(self):
        # pre-multiplying every sample by a fixed element leaves the
        # statistics unchanged within error
        rng = np.random.default_rng(24)
        n = 1
        fixed = sg.haar_sample(rng, n)
        psi = fock.vacuum(n)
        plain = np.empty(1500, dtype=complex)
        shifted = np.empty(1500, dtype=complex)
        for i in range(1500):
            g = sg.haar_sample(rng, n)
            a = (g.spin_matrix @ psi.amplitudes)[0]
            plain[i] = np.conj(a) * a
            u = fixed.spin_matrix @ g.spin_matrix
            b = (u @ psi.amplitudes)[0]
            shifted[i] = np.conj(b) * b
        m1, s1 = sg.complex_mean_stderr(plain)
        m2, s2 = sg.complex_mean_stderr(shifted)
        assert abs(m1 - m2) <= 3 * np.hypot(s1, s2)
