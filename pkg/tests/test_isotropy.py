import numpy as np

from oracles import (
    constraint_matrix_alpha,
    constraint_matrix_phi,
    dag,
    null_space_dimension,
)
from stategeom.actions import phi
from stategeom.isotropy import (
    complement_basis_alpha,
    hermitian_basis,
    hermitian_components,
    isotropy_basis_alpha,
    isotropy_basis_phi,
    isotropy_dimension_alpha,
    isotropy_membership_alpha,
    isotropy_membership_phi,
    isotropy_report,
    orbit_dimension,
    real_gram,
)
from stategeom.linalg import frobenius, fro_scale, matrix_exp
from stategeom.sampling import random_direction, random_state
from stategeom.states import maximally_mixed, spectral_split, validate_positive
from stategeom.tangent import alpha_velocity, phi_velocity


class TestConstraintPairing:
    """The vectorized pairing agrees with the defining traces."""

    def test_alpha_components_match_explicit_traces(self):
        rng = np.random.default_rng(1)
        for n in (2, 3, 4):
            xi = random_state(rng, n).matrix * 1.7
            a = random_direction(rng, n)
            explicit = np.array([
                np.trace(xi @ (dag(a) @ b + b @ a)).real for b in hermitian_basis(n)
            ])
            np.testing.assert_allclose(
                hermitian_components(alpha_velocity(xi, a)), explicit, atol=1e-12
            )

    def test_phi_components_match_explicit_traces(self):
        rng = np.random.default_rng(2)
        for n in (2, 3):
            rho = random_state(rng, n).matrix
            a = random_direction(rng, n)
            explicit = np.array([
                (np.trace(rho @ (dag(a) @ b + b @ a))
                 - np.trace(rho @ b) * np.trace(rho @ (dag(a) + a))).real
                for b in hermitian_basis(n)
            ])
            np.testing.assert_allclose(
                hermitian_components(phi_velocity(rho, a)), explicit, atol=1e-12
            )

    def test_fast_oracle_matches_explicit_loops(self):
        from oracles import (
            constraint_matrix_alpha_fast,
            constraint_matrix_phi_fast,
        )

        rng = np.random.default_rng(99)
        for n in (2, 3, 4):
            rho = random_state(rng, n, rank=n - 1 if n > 1 else 1).matrix
            np.testing.assert_allclose(constraint_matrix_alpha_fast(rho),
                                       constraint_matrix_alpha(rho), atol=1e-12)
            np.testing.assert_allclose(constraint_matrix_phi_fast(rho),
                                       constraint_matrix_phi(rho), atol=1e-12)


class TestMembership:
    def test_imaginary_identity_is_member(self):
        rng = np.random.default_rng(3)
        xi = random_state(rng, 3)
        member, residual = isotropy_membership_alpha(1j * np.eye(3), xi)
        assert member and residual <= 1e-14

    def test_identity_never_member(self):
        rng = np.random.default_rng(4)
        for n in (2, 4):
            xi = random_state(rng, n)
            member, residual = isotropy_membership_alpha(np.eye(n), xi)
            assert not member and residual > 0.1

    def test_tracial_membership_is_skew_adjointness(self):
        rng = np.random.default_rng(5)
        tau = maximally_mixed(3)
        y = random_direction(rng, 3)
        skew = (y - dag(y)) / 2.0
        sym = (y + dag(y)) / 2.0
        assert isotropy_membership_alpha(skew, tau)[0]
        assert not isotropy_membership_alpha(sym, tau)[0]

    def test_identity_member_for_phi(self):
        rho = random_state(np.random.default_rng(6), 3)
        member, residual = isotropy_membership_phi(np.eye(3), rho)
        assert member and residual <= 1e-12

    def test_alpha_members_are_phi_members(self):
        rng = np.random.default_rng(7)
        rho = random_state(rng, 3, rank=2)
        for v in isotropy_basis_alpha(spectral_split(rho)).vectors:
            assert isotropy_membership_phi(v, rho)[0]

    def test_diagonal_traceless_direction_not_phi_member(self):
        rho = maximally_mixed(2)
        member, _ = isotropy_membership_phi(np.diag([1.0, -1.0]).astype(complex), rho)
        assert not member


class TestBasisDimensions:
    def test_dimension_formula_against_null_space(self):
        rng = np.random.default_rng(8)
        for n in range(1, 6):
            for k in range(1, n + 1):
                rho = random_state(rng, n, rank=k)
                split = spectral_split(rho)
                dim = isotropy_basis_alpha(split).dim_real
                assert dim == isotropy_dimension_alpha(k, n)
                # brute-force real null space of the constraint map
                assert null_space_dimension(constraint_matrix_alpha(rho.matrix)) == dim

    def test_full_rank_dimension(self):
        split = spectral_split(random_state(np.random.default_rng(9), 4))
        assert isotropy_basis_alpha(split).dim_real == 16

    def test_rank_one_qubit(self):
        split = spectral_split(random_state(np.random.default_rng(10), 2, rank=1))
        assert isotropy_basis_alpha(split).dim_real == 5      # 1 + 2 + 2
        assert complement_basis_alpha(split).dim_real == 3    # 8 - 5
        assert isotropy_basis_phi(split).dim_real == 6
        assert orbit_dimension(split, "phi") == 2             # real dim of CP^1

    def test_tracial_state_isotropy_is_skew(self):
        split = spectral_split(maximally_mixed(3))
        basis = isotropy_basis_alpha(split)
        assert basis.dim_real == 9
        for v in basis.vectors:
            assert frobenius(v + dag(v)) <= 1e-12

    def test_phi_dimension_exceeds_by_one(self):
        rng = np.random.default_rng(11)
        for n in (2, 3, 4):
            rho = random_state(rng, n, rank=int(rng.integers(1, n + 1)))
            split = spectral_split(rho)
            assert (isotropy_basis_phi(split).dim_real
                    == isotropy_basis_alpha(split).dim_real + 1)
            assert (null_space_dimension(constraint_matrix_phi(rho.matrix))
                    == null_space_dimension(constraint_matrix_alpha(rho.matrix)) + 1)

    def test_membership_of_constructed_bases(self):
        rng = np.random.default_rng(12)
        for n, k in ((3, 3), (4, 2), (5, 1)):
            rho = random_state(rng, n, rank=k)
            split = spectral_split(rho)
            for v in isotropy_basis_alpha(split).vectors:
                ok, residual = isotropy_membership_alpha(v, rho)
                assert ok, f"residual {residual}"
            for v in isotropy_basis_phi(split).vectors:
                ok, residual = isotropy_membership_phi(v, rho)
                assert ok, f"residual {residual}"

    def test_degenerate_spectrum_block(self):
        # two equal eigenvalues: the support pairing degenerates to skew entries
        xi = validate_positive(np.diag([0.4, 0.4, 0.2]).astype(complex))
        split = spectral_split(xi)
        basis = isotropy_basis_alpha(split)
        assert basis.dim_real == 9
        for v in basis.vectors:
            ok, residual = isotropy_membership_alpha(v, xi)
            assert ok, f"residual {residual}"


class TestDirectSum:
    def test_joint_gram_full_rank(self):
        rng = np.random.default_rng(13)
        for n, k in ((2, 1), (3, 2), (4, 4)):
            split = spectral_split(random_state(rng, n, rank=k))
            union = list(isotropy_basis_alpha(split).vectors)
            union += list(complement_basis_alpha(split).vectors)
            assert len(union) == 2 * n * n
            eigs = np.linalg.eigvalsh(real_gram(union))
            assert eigs[0] > 1e-8 * eigs[-1]

    def test_complement_of_full_rank_is_hermitian(self):
        split = spectral_split(random_state(np.random.default_rng(14), 3))
        basis = complement_basis_alpha(split)
        assert basis.dim_real == 9
        for v in basis.vectors:
            assert frobenius(v - dag(v)) <= 1e-12


class TestLieStructure:
    def test_bracket_closure_sampled(self):
        rng = np.random.default_rng(15)
        rho = random_state(rng, 3, rank=2)
        split = spectral_split(rho)
        vectors = isotropy_basis_alpha(split).vectors
        idx = rng.integers(0, len(vectors), size=(8, 2))
        for i, j in idx:
            bracket = vectors[i] @ vectors[j] - vectors[j] @ vectors[i]
            if frobenius(bracket) < 1e-12:
                continue
            ok, residual = isotropy_membership_alpha(bracket, rho)
            assert ok, f"residual {residual}"

    def test_isotropy_exponentiates_to_stabilizer(self):
        rng = np.random.default_rng(16)
        rho = random_state(rng, 3)
        split = spectral_split(rho)
        for v in isotropy_basis_phi(split).vectors:
            g = matrix_exp(v)  # ||v|| = 1 after basis normalization
            assert frobenius(phi(g, rho).matrix - rho.matrix) <= 1e-6


class TestReportAndDims:
    def test_orbit_dimensions(self):
        rng = np.random.default_rng(17)
        faithful = spectral_split(random_state(rng, 3))
        assert orbit_dimension(faithful, "alpha") == 9       # n^2
        assert orbit_dimension(faithful, "phi") == 8         # n^2 - 1

    def test_report_identities(self):
        rng = np.random.default_rng(18)
        xi = validate_positive(2.5 * random_state(rng, 3, rank=2).matrix)
        report = isotropy_report(xi)
        assert report.ambient_dim == 18
        assert report.dim_phi == report.dim_alpha + 1
        assert report.dim_alpha + report.dim_complement == report.ambient_dim
        assert report.max_residual <= 1e-9 * fro_scale(xi.matrix) * 2.0
