import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dag, eig_count, expm_series
from stategeom.errors import NotHermitian, NotPSD, Singular
from stategeom.linalg import (
    frobenius,
    fro_scale,
    hermitian_eig,
    inertia,
    matrix_exp,
    matrix_sqrt_psd,
    opnorm,
    polar,
)
from stategeom.sampling import random_hermitian, random_invertible, random_unitary


class TestHermitianEig:
    def test_identity(self):
        dec = hermitian_eig(np.eye(3, dtype=complex))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 1.0, 1.0])

    def test_diagonal_sorted_descending(self):
        dec = hermitian_eig(np.diag([1.0, 3.0]).astype(complex))
        np.testing.assert_allclose(dec.eigenvalues, [3.0, 1.0])

    def test_reconstruction_random(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            h = random_hermitian(rng, 6)
            dec = hermitian_eig(h)
            # direct multiplication oracle
            recon = dec.eigenvectors @ np.diag(dec.eigenvalues) @ dag(dec.eigenvectors)
            assert frobenius(recon - h) <= 1e-10 * fro_scale(h)

    def test_unitarity_and_ordering(self):
        rng = np.random.default_rng(12)
        for n in range(2, 17):
            h = random_hermitian(rng, n)
            dec = hermitian_eig(h)
            assert frobenius(dag(dec.eigenvectors) @ dec.eigenvectors - np.eye(n)) <= 1e-10
            assert np.all(np.diff(dec.eigenvalues) <= 0.0)

    def test_deterministic_for_identical_bits(self):
        rng = np.random.default_rng(13)
        for n in (2, 7, 16):
            h = random_hermitian(rng, n)
            a = hermitian_eig(h.copy())
            b = hermitian_eig(h.copy())
            assert a.eigenvalues.tobytes() == b.eigenvalues.tobytes()
            assert a.eigenvectors.tobytes() == b.eigenvectors.tobytes()

    def test_phase_convention(self):
        rng = np.random.default_rng(14)
        dec = hermitian_eig(random_hermitian(rng, 5))
        for j in range(5):
            col = dec.eigenvectors[:, j]
            pivot = col[np.argmax(np.abs(col))]
            assert pivot.real > 0.0
            assert abs(pivot.imag) <= 1e-12 * abs(pivot)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


class TestSqrt:
    def test_identity(self):
        np.testing.assert_allclose(matrix_sqrt_psd(np.eye(2, dtype=complex)), np.eye(2))

    def test_diagonal(self):
        s = matrix_sqrt_psd(np.diag([4.0, 9.0]).astype(complex))
        np.testing.assert_allclose(s, np.diag([2.0, 3.0]), atol=1e-12)

    def test_squaring_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
            p = m @ dag(m)
            s = matrix_sqrt_psd(p)
            assert frobenius(s @ s - p) <= 1e-9 * fro_scale(p)
            assert frobenius(s - dag(s)) <= 1e-12 * fro_scale(p)

    def test_rejects_negative(self):
        with pytest.raises(NotPSD):
            matrix_sqrt_psd(np.diag([1.0, -1e-3]).astype(complex))

    def test_clamps_tiny_negative(self):
        s = matrix_sqrt_psd(np.diag([1.0, -1e-12]).astype(complex))
        np.testing.assert_allclose(s, np.diag([1.0, 0.0]), atol=1e-10)


class TestExp:
    def test_zero(self):
        np.testing.assert_allclose(matrix_exp(np.zeros((3, 3))), np.eye(3))

    def test_diagonal(self):
        e = matrix_exp(np.diag([np.log(2.0), 0.0]))
        np.testing.assert_allclose(e, np.diag([2.0, 1.0]), atol=1e-12)

    def test_series_oracle(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            a /= opnorm(a)  # ||a|| = 1
            assert frobenius(matrix_exp(a) - expm_series(a)) <= 1e-8

    def test_group_law(self):
        rng = np.random.default_rng(32)
        for n in (2, 8, 16):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            a /= opnorm(a) / 1.5
            err = frobenius(matrix_exp(a) @ matrix_exp(-a) - np.eye(n))
            assert err <= 1e-8 * np.exp(2.0 * opnorm(a))


class TestPolar:
    def test_unitary_input(self):
        u = random_unitary(np.random.default_rng(41), 4)
        uu, pp = polar(u)
        np.testing.assert_allclose(uu, u, atol=1e-10)
        np.testing.assert_allclose(pp, np.eye(4), atol=1e-10)

    def test_psd_input(self):
        uu, pp = polar(np.diag([2.0, 3.0]).astype(complex))
        np.testing.assert_allclose(uu, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(pp, np.diag([2.0, 3.0]), atol=1e-12)

    def test_reconstruction_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            g = random_invertible(rng, 5)
            u, p = polar(g)
            assert frobenius(u @ p - g) <= 1e-9 * fro_scale(g)
            assert frobenius(dag(u) @ u - np.eye(5)) <= 1e-10
            # P agrees with the PSD square root of g†g
            assert frobenius(p - matrix_sqrt_psd(dag(g) @ g)) <= 1e-9 * fro_scale(g)

    def test_rejects_singular(self):
        with pytest.raises(Singular):
            polar(np.diag([1.0, 0.0]).astype(complex))


class TestInertia:
    def test_identity(self):
        assert inertia(np.eye(4, dtype=complex), 1e-12) == (4, 0, 0)

    def test_mixed_signature(self):
        assert inertia(np.diag([1.0, 0.0, -2.0]).astype(complex), 1e-12) == (1, 1, 1)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 6))
    def test_congruence_invariance(self, seed, n):
        rng = np.random.default_rng(seed)
        h = random_hermitian(rng, n)
        g = random_invertible(rng, n)
        tol = 1e-10 * fro_scale(h)
        # Sylvester: congruence preserves the signature (brute-force eigencount)
        assert eig_count(g @ h @ dag(g), tol * opnorm(g) ** 2) == eig_count(h, tol)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            inertia(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), 1e-12)
