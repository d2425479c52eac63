import numpy as np
import pytest

from compcorr.matcore import kron
from compcorr.states import (
    PHI_PLUS,
    PSI_PLUS,
    BellDiagonalParams,
    DensityMatrix,
    bd_params_of,
    bd_spectrum,
    bell_diagonal,
    bloch_decompose,
    bloch_reconstruct,
    classically_correlated,
    family_eq15,
    is_separable_bd,
    load_state,
    normal_form,
    random_bd_params,
    random_density_matrix,
    rotation_of_su2,
    save_state,
    werner,
)


def random_su2(rng):
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    u, _ = np.linalg.qr(g)
    return u / np.sqrt(np.linalg.det(u))


class TestDensityMatrix:
    def test_rejects_nonhermitian(self):
        m = np.eye(4) / 4
        m = m.astype(complex)
        m[0, 1] = 0.1
        with pytest.raises(ValueError, match="Hermitian"):
            DensityMatrix(m, (2, 2))

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix(np.eye(4) / 2, (2, 2))

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="eigenvalue"):
            DensityMatrix(np.diag([1.5, -0.5, 0, 0]).astype(complex), (2, 2))

    def test_rejects_dims_mismatch(self):
        with pytest.raises(ValueError, match="dims"):
            DensityMatrix(np.eye(4) / 4, (2, 2, 2))

    def test_immutable(self):
        rho = bell_diagonal(BellDiagonalParams(0, 0, 0))
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 9


class TestBellDiagonal:
    def test_maximally_mixed(self):
        rho = bell_diagonal(BellDiagonalParams(0, 0, 0))
        np.testing.assert_allclose(rho.matrix, np.eye(4) / 4, atol=1e-15)

    def test_unphysical_reports_eigenvalue(self):
        with pytest.raises(ValueError, match="-0.5"):
            bell_diagonal(BellDiagonalParams(1, 1, 1))

    def test_pure_bell_state(self):
        rho = bell_diagonal(BellDiagonalParams(1, -1, 1))
        np.testing.assert_allclose(rho.matrix, np.outer(PHI_PLUS, PHI_PLUS.conj()), atol=1e-14)

    def test_spectrum_examples(self):
        np.testing.assert_allclose(bd_spectrum(BellDiagonalParams(0, 0, 0)), [0.25] * 4)
        np.testing.assert_allclose(bd_spectrum(BellDiagonalParams(0, 0, 1)), [0, 0, 0.5, 0.5], atol=1e-15)

    def test_spectrum_matches_numeric(self):
        lam = bd_spectrum(BellDiagonalParams(0.5, 0.25, 0.25))
        numeric = bell_diagonal(BellDiagonalParams(0.5, 0.25, 0.25)).spectrum()
        np.testing.assert_allclose(lam, numeric, atol=1e-12)

    def test_spectrum_crosscheck_sampled(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            p = random_bd_params(rng)
            np.testing.assert_allclose(bd_spectrum(p), bell_diagonal(p).spectrum(), atol=1e-10)

    def test_separability(self):
        assert is_separable_bd(BellDiagonalParams(0, 0, 1))
        assert not is_separable_bd(BellDiagonalParams(1, -1, 1))
        # max closed-form eigenvalue is 0.475
        assert is_separable_bd(BellDiagonalParams(0.3, -0.3, 0.3))

    def test_separability_agrees_with_negativity(self):
        from compcorr.entanglement import negativity

        rng = np.random.default_rng(12)
        for _ in range(300):
            p = random_bd_params(rng)
            neg = negativity(bell_diagonal(p), 0)
            assert is_separable_bd(p) == (neg < 1e-12)


class TestBlochDecomposition:
    def test_bell_diagonal_inverse(self):
        p = BellDiagonalParams(0.4, -0.2, 0.1)
        dec = bloch_decompose(bell_diagonal(p))
        np.testing.assert_allclose(dec.a, 0, atol=1e-12)
        np.testing.assert_allclose(dec.b, 0, atol=1e-12)
        np.testing.assert_allclose(dec.T, np.diag([0.4, -0.2, 0.1]), atol=1e-12)

    def test_product_state(self):
        zero = np.zeros((2, 2), dtype=complex)
        zero[0, 0] = 1
        rho = DensityMatrix(kron(zero, np.eye(2) / 2), (2, 2))
        dec = bloch_decompose(rho)
        np.testing.assert_allclose(dec.a, [0, 0, 1], atol=1e-12)
        np.testing.assert_allclose(dec.b, 0, atol=1e-12)
        np.testing.assert_allclose(dec.T, 0, atol=1e-12)

    def test_round_trip(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            rho = random_density_matrix(rng, (2, 2))
            back = bloch_reconstruct(bloch_decompose(rho))
            np.testing.assert_allclose(back.matrix, rho.matrix, atol=1e-10)

    def test_bd_recovery_tight(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            p = random_bd_params(rng)
            dec = bloch_decompose(bell_diagonal(p))
            np.testing.assert_allclose(np.diag(dec.T), p.as_array(), atol=1e-12)


class TestNormalForm:
    def test_bell_diagonal_input_stays_diagonal(self):
        p = BellDiagonalParams(0.5, 0.2, -0.1)
        out, dec = normal_form(bell_diagonal(p))
        off = dec.T - np.diag(np.diag(dec.T))
        np.testing.assert_allclose(off, 0, atol=1e-10)
        assert sorted(np.abs(np.diag(dec.T))) == pytest.approx([0.1, 0.2, 0.5], abs=1e-10)

    def test_rotation_lift_convention(self):
        rng = np.random.default_rng(15)
        from compcorr.states import _su2_from_rotation

        for _ in range(50):
            u = random_su2(rng)
            r = rotation_of_su2(u)
            u2 = _su2_from_rotation(r)
            # SU(2) covers SO(3) twice; compare up to global sign
            assert min(np.max(np.abs(u2 - u)), np.max(np.abs(u2 + u))) < 1e-10

    def test_locally_rotated_state_recovers_coefficients(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            p = random_bd_params(rng)
            ua, ub = random_su2(rng), random_su2(rng)
            local = kron(ua, ub)
            rotated = DensityMatrix(local @ bell_diagonal(p).matrix @ local.conj().T, (2, 2))
            _, dec = normal_form(rotated)
            off = dec.T - np.diag(np.diag(dec.T))
            np.testing.assert_allclose(off, 0, atol=1e-8)
            got = sorted(np.abs(np.diag(dec.T)))
            want = sorted(np.abs(p.as_array()))
            np.testing.assert_allclose(got, want, atol=1e-8)

    def test_spectrum_preserved(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            rho = random_density_matrix(rng, (2, 2))
            out, _ = normal_form(rho)
            np.testing.assert_allclose(out.spectrum(), rho.spectrum(), atol=1e-10)


class TestFamilies:
    def test_family_pure_limit(self):
        rho = family_eq15(1.0)
        np.testing.assert_allclose(rho.matrix, np.outer(PSI_PLUS, PSI_PLUS.conj()), atol=1e-14)

    def test_family_boundary(self):
        np.testing.assert_allclose(family_eq15(0.0).spectrum(), [0, 0, 0.5, 0.5], atol=1e-12)

    def test_family_correlation_matrix(self):
        for c3 in (-0.7, 0.2, 0.5):
            dec = bloch_decompose(family_eq15(c3))
            np.testing.assert_allclose(np.diag(dec.T), [1, c3, -c3], atol=1e-12)
            np.testing.assert_allclose(dec.a, 0, atol=1e-12)

    def test_family_out_of_range(self):
        with pytest.raises(ValueError):
            family_eq15(1.2)

    def test_werner(self):
        np.testing.assert_allclose(werner(0).matrix, np.eye(4) / 4, atol=1e-14)
        assert werner(1).spectrum()[-1] == pytest.approx(1.0, abs=1e-12)
        # separability boundary at p = 1/3: max eigenvalue (1 + 3p)/4 = 1/2
        assert werner(1 / 3).spectrum()[-1] == pytest.approx(0.5, abs=1e-12)
        dec = bloch_decompose(werner(0.4))
        np.testing.assert_allclose(np.diag(dec.T), [-0.4, -0.4, -0.4], atol=1e-12)
        with pytest.raises(ValueError):
            werner(1.5)

    def test_classically_correlated(self):
        rho = classically_correlated()
        dec = bloch_decompose(rho)
        np.testing.assert_allclose(np.diag(dec.T), [0, 0, 1], atol=1e-14)
        np.testing.assert_allclose(rho.spectrum(), [0, 0, 0.5, 0.5], atol=1e-14)
        from compcorr.entanglement import negativity

        assert negativity(rho, 0) == 0.0


class TestStateFiles:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(18)
        rho = random_density_matrix(rng, (2, 2))
        path = tmp_path / "state.json"
        save_state(rho, path)
        loaded = load_state(path)
        assert loaded.dims == (2, 2)
        np.testing.assert_allclose(loaded.matrix, rho.matrix, atol=1e-15)

    def test_load_verifies(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"dims": [2], "matrix_re": [1.5, 0, 0, -0.5], "matrix_im": [0, 0, 0, 0]}'
        )
        with pytest.raises(ValueError):
            load_state(path)

    def test_bd_params_of(self):
        p = BellDiagonalParams(0.2, -0.1, 0.3)
        got = bd_params_of(bell_diagonal(p))
        assert got.as_array() == pytest.approx(p.as_array(), abs=1e-12)
        with pytest.raises(ValueError, match="marginals"):
            bd_params_of(DensityMatrix(np.diag([1, 0, 0, 0]).astype(complex), (2, 2)))
