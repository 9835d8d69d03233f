import numpy as np
import pytest

from conftest import fock_grid, fock_projection, random_single_mode_sigma
from wigscale import fock_space, gaussian_cv
from wigscale.moments import (
    HermitianMatrix,
    SecondMoments,
    det_bound,
    is_psd,
    leading_minors,
    moments_from_grid,
    multimode_uncertainty_matrix,
    sr_matrix,
    sr_value,
    symplectic_form,
)


def hermitian_from(entries):
    entries = np.asarray(entries, dtype=complex)
    return HermitianMatrix(entries.shape[0], entries)


class TestMomentsFromGrid:
    def test_ground_state(self):
        m = moments_from_grid(fock_grid(0))
        assert m.mean_q == pytest.approx(0.0, abs=1e-6)
        assert m.mean_p == pytest.approx(0.0, abs=1e-6)
        assert m.sigma_qq == pytest.approx(0.5, abs=1e-6)
        assert m.sigma_pp == pytest.approx(0.5, abs=1e-6)
        assert m.sigma_qp == pytest.approx(0.0, abs=1e-6)

    def test_first_excited(self):
        m = moments_from_grid(fock_grid(1))
        assert m.sigma_qq == pytest.approx(1.5, abs=1e-6)
        assert m.sigma_pp == pytest.approx(1.5, abs=1e-6)
        assert m.sigma_qp == pytest.approx(0.0, abs=1e-6)

    def test_scaled_first_excited(self):
        m = moments_from_grid(fock_grid(1, lam=0.5))
        assert m.sigma_qq == pytest.approx(6.0, abs=1e-5)
        assert m.sigma_pp == pytest.approx(6.0, abs=1e-5)
        assert m.sigma_qp == pytest.approx(0.0, abs=1e-6)

    def test_unnormalized_rejected(self):
        from wigscale.phase_space import GridWigner

        w = fock_grid(0)
        with pytest.raises(ValueError, match="not normalized"):
            moments_from_grid(GridWigner(w.spec, 0.5 * w.values))


class TestSrMatrix:
    def test_ground_state_saturates(self):
        h = sr_matrix(moments_from_grid(fock_grid(0)))
        expected = np.array([[0.5, 0.5j], [-0.5j, 0.5]])
        np.testing.assert_allclose(h.entries, expected, atol=1e-6)
        eigenvalues = np.linalg.eigvalsh(h.entries)
        np.testing.assert_allclose(eigenvalues, [0.0, 1.0], atol=1e-6)

    def test_scaled_first_excited_positive_definite(self):
        h = sr_matrix(moments_from_grid(fock_grid(1, lam=0.5)))
        expected = np.array([[6.0, 0.5j], [-0.5j, 6.0]])
        np.testing.assert_allclose(h.entries, expected, atol=1e-5)
        ok, min_eig = is_psd(h)
        assert ok and min_eig > 0.0

    def test_below_vacuum_variances_violate(self):
        h = sr_matrix(SecondMoments(0.0, 0.0, 0.4, 0.4, 0.0))
        ok, min_eig = is_psd(h)
        assert not ok
        assert min_eig == pytest.approx(-0.1, abs=1e-12)


class TestSrValue:
    def test_ground_state(self):
        assert sr_value(moments_from_grid(fock_grid(0))) == pytest.approx(0.25, abs=1e-6)

    def test_scaled_first_excited(self):
        assert sr_value(SecondMoments(0, 0, 6.0, 6.0, 0.0)) == 36.0
        assert sr_value(moments_from_grid(fock_grid(1, lam=0.5))) == pytest.approx(36.0, abs=1e-4)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 1.7])
    def test_threshold_satisfied_below_root_three(self, lam):
        sigma = 1.5 / lam**2
        assert sr_value(SecondMoments(0, 0, sigma, sigma, 0.0)) >= 0.25

    @pytest.mark.parametrize("lam", [1.8, 2.0])
    def test_threshold_violated_above_root_three(self, lam):
        sigma = 1.5 / lam**2
        assert sr_value(SecondMoments(0, 0, sigma, sigma, 0.0)) < 0.25


class TestMultimode:
    @pytest.mark.parametrize("modes", [1, 2, 3])
    def test_vacuum_saturates(self, modes):
        h = multimode_uncertainty_matrix(gaussian_cv.vacuum(modes))
        eigenvalues = np.linalg.eigvalsh(h.entries)
        assert abs(eigenvalues[0]) < 1e-12
        np.testing.assert_allclose(np.sort(eigenvalues), [0.0] * modes + [1.0] * modes, atol=1e-12)

    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    def test_two_mode_squeezed_is_valid(self, r):
        h = multimode_uncertainty_matrix(gaussian_cv.two_mode_squeezed(r))
        _, min_eig = is_psd(h)
        assert min_eig >= -1e-10

    def test_below_vacuum_single_mode(self):
        cov = gaussian_cv.CovarianceMatrix(1, 0.4 * np.eye(2))
        _, min_eig = is_psd(multimode_uncertainty_matrix(cov))
        assert min_eig == pytest.approx(-0.1, abs=1e-12)

    def test_symplectic_form_convention(self):
        j = symplectic_form(2)
        np.testing.assert_array_equal(j[:2, 2:], np.eye(2))
        np.testing.assert_array_equal(j[2:, :2], -np.eye(2))
        np.testing.assert_array_equal(j, -j.T)


class TestDetBound:
    def test_vacuum_equality(self):
        det, bound = det_bound(gaussian_cv.vacuum(2))
        assert det == pytest.approx(1.0 / 16.0, abs=1e-15)
        assert bound == 1.0 / 16.0

    def test_two_mode_squeezed_preserves_det(self):
        det, bound = det_bound(gaussian_cv.two_mode_squeezed(1.0))
        assert det == pytest.approx(1.0 / 16.0, abs=1e-9)
        assert bound == 1.0 / 16.0

    def test_violation(self):
        det, bound = det_bound(gaussian_cv.CovarianceMatrix(1, 0.4 * np.eye(2)))
        assert det == pytest.approx(0.16, abs=1e-15)
        assert bound == 0.25
        assert det < bound


class TestIsPsd:
    def test_identity(self):
        ok, min_eig = is_psd(hermitian_from(np.eye(3)))
        assert ok and min_eig == pytest.approx(1.0)

    def test_indefinite_two_by_two(self):
        ok, min_eig = is_psd(hermitian_from([[1.0, 0.5j], [-0.5j, 0.0]]))
        assert not ok
        assert min_eig == pytest.approx((1.0 - np.sqrt(2.0)) / 2.0, abs=1e-12)

    def test_saturated_boundary_accepted(self):
        ok, min_eig = is_psd(sr_matrix(moments_from_grid(fock_grid(0))))
        assert ok
        assert min_eig == pytest.approx(0.0, abs=1e-6)


class TestLeadingMinors:
    def test_scaled_first_excited(self):
        h = sr_matrix(SecondMoments(0, 0, 6.0, 6.0, 0.0))
        minors = leading_minors(h)
        assert minors[0] == pytest.approx(6.0)
        assert minors[1] == pytest.approx(35.75)

    def test_identity(self):
        assert leading_minors(hermitian_from(np.eye(3))) == pytest.approx([1.0, 1.0, 1.0])

    def test_positive_definite_agreement_with_eigensolver(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            dim = rng.integers(2, 7)
            raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            h = hermitian_from(raw @ raw.conj().T + 0.1 * np.eye(dim))
            ok, _ = is_psd(h)
            assert ok
            assert all(m > 0 for m in leading_minors(h))

    def test_sylvester_eigenvalue_equivalence(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            dim = rng.integers(2, 9)
            raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            h = hermitian_from(0.5 * (raw + raw.conj().T))
            minors_positive = all(m > 0 for m in leading_minors(h))
            min_eig = np.linalg.eigvalsh(h.entries)[0]
            assert minors_positive == (min_eig > 0)


class TestInvariants:
    @pytest.mark.parametrize("kappa", [1.0, 1.2, 2.0])
    def test_pure_gaussian_saturation(self, kappa):
        value = sr_value(moments_from_grid(fock_grid(0, kappa=kappa)))
        assert value == pytest.approx(0.25, abs=1e-6)

    def test_squeeze_congruence_preserves_verdict(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            sigma = random_single_mode_sigma(rng)
            if rng.uniform() < 0.4:
                sigma = 0.3 * sigma  # push some samples below the vacuum floor
            cov = gaussian_cv.CovarianceMatrix(1, sigma)
            before, _ = is_psd(multimode_uncertainty_matrix(cov))
            for kappa in (0.5, 2.0):
                squeezed = gaussian_cv.squeeze_symplectic(cov, 1, kappa)
                after, _ = is_psd(multimode_uncertainty_matrix(squeezed))
                assert after == before

    @pytest.mark.parametrize("lam", [0.5, 0.75])
    def test_pseudodensity_witness(self, lam):
        # uncertainty matrix positive definite, yet the operator has a
        # negative eigenvalue: the relation does not determine the state
        grid = fock_grid(1, lam=lam)
        ok, min_eig = is_psd(sr_matrix(moments_from_grid(grid)))
        assert ok and min_eig > 0.0
        spec = fock_space.spectrum(fock_projection(1, lam=lam, dim=32))
        assert spec.min_eigenvalue < -1e-8

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    @pytest.mark.parametrize("lam", [0.5, 1.0])
    def test_cross_representation_agreement(self, n, lam):
        # the scaled states spread over many levels; dim 64 puts the
        # truncation tail below the 1e-6 agreement target for n <= 3
        dim = 32 if lam == 1.0 else 64
        m = moments_from_grid(fock_grid(n, lam=lam))
        fock = fock_space.moment_matrix(
            fock_projection(n, lam=lam, dim=dim),
            fock_space.quadrature_pair_operators(dim),
        )
        assert fock.entries[0, 0].real == pytest.approx(m.sigma_qq, abs=1e-6)
        assert fock.entries[1, 1].real == pytest.approx(m.sigma_pp, abs=1e-6)
        assert fock.entries[0, 1].real == pytest.approx(m.sigma_qp, abs=1e-6)
        assert fock.entries[0, 1].imag == pytest.approx(0.5, abs=1e-6)


class TestHermitianMatrixType:
    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            hermitian_from([[1.0, 1.0], [0.0, 1.0]])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            HermitianMatrix(3, np.eye(2))
