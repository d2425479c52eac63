import numpy as np
import pytest

from compcorr.correlations import (
    JointDistribution,
    ProjectiveMeasurement,
    classical_correlation,
    complementary_correlations,
    correlation_bits,
    discord_bd,
    holevo_quantity,
    joint_distribution,
    outcome_mutual_information,
    q1,
    total_mutual_information,
)
from compcorr.matcore import kron
from compcorr.states import (
    PHI_PLUS,
    BellDiagonalParams,
    DensityMatrix,
    bell_diagonal,
    classically_correlated,
    random_bd_params,
    random_density_matrix,
)


def binary_entropy(x):
    acc = 0.0
    for t in (x, 1 - x):
        if t > 0:
            acc -= t * np.log2(t)
    return acc


class TestProjectiveMeasurement:
    def test_projector_algebra(self):
        m = ProjectiveMeasurement.from_angles(0.7, 1.3)
        p0, p1 = m.projectors()
        np.testing.assert_allclose(p0 @ p0, p0, atol=1e-12)
        np.testing.assert_allclose(p1 @ p1, p1, atol=1e-12)
        np.testing.assert_allclose(p0 @ p1, 0, atol=1e-12)
        np.testing.assert_allclose(p0 + p1, np.eye(2), atol=1e-12)

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            ProjectiveMeasurement(np.array([1.0, 1.0, 0.0]))


class TestJointDistribution:
    def test_uniform_for_maximally_mixed(self):
        rho = bell_diagonal(BellDiagonalParams(0, 0, 0))
        d = joint_distribution(rho, ProjectiveMeasurement.x(), ProjectiveMeasurement.y())
        np.testing.assert_allclose(d.p, 0.25, atol=1e-12)

    def test_bell_state_perfectly_correlated_xx(self):
        rho = DensityMatrix.from_pure(PHI_PLUS, (2, 2))
        d = joint_distribution(rho, ProjectiveMeasurement.x(), ProjectiveMeasurement.x())
        assert d.p[0, 0] + d.p[1, 1] == pytest.approx(1.0, abs=1e-12)

    def test_classically_correlated_zz(self):
        d = joint_distribution(
            classically_correlated(), ProjectiveMeasurement.z(), ProjectiveMeasurement.z()
        )
        np.testing.assert_allclose(d.p, [[0.5, 0], [0, 0.5]], atol=1e-12)

    def test_rejects_bad_table(self):
        with pytest.raises(ValueError):
            JointDistribution(np.array([[0.5, 0.5], [0.5, 0.5]]))


class TestOutcomeMutualInformation:
    def test_uniform_is_zero(self):
        assert outcome_mutual_information(JointDistribution(np.full((2, 2), 0.25))) == 0.0

    def test_perfect_correlation_is_one_bit(self):
        d = JointDistribution(np.array([[0.5, 0.0], [0.0, 0.5]]))
        assert outcome_mutual_information(d) == pytest.approx(1.0, abs=1e-12)

    def test_symmetric_in_parties(self):
        rng = np.random.default_rng(20)
        t = rng.dirichlet(np.ones(4)).reshape(2, 2)
        a = outcome_mutual_information(JointDistribution(t))
        b = outcome_mutual_information(JointDistribution(t.T))
        assert a == pytest.approx(b, abs=1e-12)

    def test_bell_diagonal_reduction(self):
        # same-axis table has uniform marginals and correlation c_i, so the
        # mutual information reduces to 1 - H2((1 + |c_i|)/2)
        rng = np.random.default_rng(21)
        axes = [ProjectiveMeasurement.x(), ProjectiveMeasurement.y(), ProjectiveMeasurement.z()]
        for _ in range(30):
            p = random_bd_params(rng)
            rho = bell_diagonal(p)
            for c, m in zip(p.as_array(), axes):
                got = outcome_mutual_information(joint_distribution(rho, m, m))
                want = 1 - binary_entropy((1 + abs(c)) / 2)
                assert got == pytest.approx(want, abs=1e-10)


class TestComplementaryCorrelations:
    def test_classically_correlated(self):
        i_x, i_y, i_z = complementary_correlations(classically_correlated())
        assert (i_x, i_y) == pytest.approx((0, 0), abs=1e-12)
        assert i_z == pytest.approx(1.0, abs=1e-12)

    def test_bell_state_saturates(self):
        rho = DensityMatrix.from_pure(PHI_PLUS, (2, 2))
        i_x, i_y, i_z = complementary_correlations(rho)
        assert (i_x, i_y, i_z) == pytest.approx((1, 1, 1), abs=1e-12)
        assert i_x + i_z == pytest.approx(2.0, abs=1e-12)

    def test_maximally_mixed(self):
        rho = bell_diagonal(BellDiagonalParams(0, 0, 0))
        assert complementary_correlations(rho) == pytest.approx((0, 0, 0), abs=1e-12)

    def test_sign_flip_invariance(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            p = random_bd_params(rng)
            base = complementary_correlations(bell_diagonal(p))
            # flipping two coefficients keeps the state physical
            flipped = BellDiagonalParams(-p.c1, -p.c2, p.c3)
            got = complementary_correlations(bell_diagonal(flipped))
            assert got == pytest.approx(base, abs=1e-12)

    def test_zero_iff_zero_coefficient(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            p = random_bd_params(rng)
            zeroed = BellDiagonalParams(p.c1, 0.0, p.c3)
            if not zeroed.is_physical():
                continue
            vals = complementary_correlations(bell_diagonal(zeroed))
            assert vals[1] == pytest.approx(0.0, abs=1e-12)
            if abs(p.c1) > 1e-6:
                assert vals[0] > 1e-12


class TestHolevo:
    def test_bell_diagonal_along_x(self):
        p = BellDiagonalParams(0.5, 0.25, 0.25)
        got = holevo_quantity(bell_diagonal(p), ProjectiveMeasurement.x())
        assert got == pytest.approx(correlation_bits(0.5), abs=1e-12)

    def test_maximally_mixed_is_zero(self):
        rho = bell_diagonal(BellDiagonalParams(0, 0, 0))
        assert holevo_quantity(rho, ProjectiveMeasurement.from_angles(1.0, 2.0)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_product_state_is_zero(self):
        rng = np.random.default_rng(24)
        ra = random_density_matrix(rng, (2,))
        rb = random_density_matrix(rng, (2,))
        rho = DensityMatrix(kron(ra.matrix, rb.matrix), (2, 2))
        assert holevo_quantity(rho, ProjectiveMeasurement.z()) == pytest.approx(0.0, abs=1e-10)


class TestClosedForms:
    def test_classical_correlation_examples(self):
        assert classical_correlation(BellDiagonalParams(0, 0, 0)) == 0.0
        assert classical_correlation(BellDiagonalParams(0, 0, 1)) == pytest.approx(1.0)

    def test_classical_correlation_uses_largest_coefficient(self):
        assert classical_correlation(BellDiagonalParams(0.1, -0.6, 0.2)) == pytest.approx(
            correlation_bits(0.6), abs=1e-15
        )

    def test_q1_examples(self):
        assert q1(BellDiagonalParams(0.3, 0.1, 0)) == 0.0
        assert q1(BellDiagonalParams(0, 0, 1)) == pytest.approx(1.0)
        assert q1(BellDiagonalParams(0, 0, -1)) == pytest.approx(1.0)

    def test_q1_matches_measured_z_correlation(self):
        rng = np.random.default_rng(25)
        for _ in range(100):
            p = random_bd_params(rng)
            i_z = complementary_correlations(bell_diagonal(p))[2]
            assert q1(p) == pytest.approx(i_z, abs=1e-12)

    def test_total_mutual_information(self):
        rng = np.random.default_rng(26)
        ra = random_density_matrix(rng, (2,))
        rb = random_density_matrix(rng, (2,))
        product = DensityMatrix(kron(ra.matrix, rb.matrix), (2, 2))
        assert total_mutual_information(product) == pytest.approx(0.0, abs=1e-10)
        assert total_mutual_information(DensityMatrix.from_pure(PHI_PLUS, (2, 2))) == pytest.approx(
            2.0, abs=1e-12
        )
        assert total_mutual_information(classically_correlated()) == pytest.approx(1.0, abs=1e-12)

    def test_bd_mutual_information_matches_measured(self):
        from compcorr.correlations import bd_mutual_information

        rng = np.random.default_rng(27)
        for _ in range(50):
            p = random_bd_params(rng)
            assert bd_mutual_information(p) == pytest.approx(
                total_mutual_information(bell_diagonal(p)), abs=1e-10
            )

    def test_discord_examples(self):
        assert discord_bd(BellDiagonalParams(0, 0, 1)) == pytest.approx(0.0, abs=1e-12)
        assert discord_bd(BellDiagonalParams(1, -1, 1)) == pytest.approx(1.0, abs=1e-12)

    def test_discord_zeroed_coefficient_comparison(self):
        d_full = discord_bd(BellDiagonalParams(0.5, 0.25, 0.25))
        d_zeroed = discord_bd(BellDiagonalParams(0.5, 0, 0.25))
        assert d_full > d_zeroed + 1e-3

    def test_discord_nonnegative_sampled(self):
        rng = np.random.default_rng(28)
        for _ in range(500):
            assert discord_bd(random_bd_params(rng)) >= 0.0

    def test_rejects_unphysical(self):
        with pytest.raises(ValueError):
            classical_correlation(BellDiagonalParams(1, 1, 1))
