"""Tangent vectors of both actions, covariance pairing and one-parameter flows.

Differentiating t -> exp(ta) xi exp(ta)† at t = 0 gives the congruence
velocity a xi + xi a†, which splits as {xi, x} - i[xi, y] for a = x + iy with
x, y Hermitian.  The normalized action adds the trace correction
-Tr(a rho + rho a†) rho, making the velocity traceless.  Flows evaluate
exp(ta) exactly per grid point rather than stepping an ODE.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .actions import group_element, phi
from .errors import ValidationError
from .linalg import as_operator, dagger, frobenius, matrix_exp, require_hermitian
from .states import PositiveFunctional, StateDensity

__all__ = [
    "TangentVector",
    "alpha_velocity",
    "phi_velocity",
    "tangent_alpha",
    "tangent_phi",
    "covariance",
    "flow",
    "fd_tangent_check",
    "tangent_map_rank",
    "realification_basis",
]


@dataclass(frozen=True)
class TangentVector:
    """Velocity of a one-parameter flow through ``base`` generated by ``generator``."""

    base: PositiveFunctional
    value: np.ndarray
    generator: np.ndarray


def alpha_velocity(xi: np.ndarray, a: np.ndarray) -> np.ndarray:
    """d/dt exp(ta) xi exp(ta)† at t=0, i.e. a xi + xi a† (Hermitian)."""
    v = a @ xi + xi @ dagger(a)
    return (v + dagger(v)) / 2.0


def phi_velocity(rho: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Velocity of the normalized flow: alpha velocity minus its trace times rho."""
    v = alpha_velocity(rho, a)
    return v - np.trace(v).real * rho


def tangent_alpha(xi: PositiveFunctional, a) -> TangentVector:
    """Tangent vector of the congruence action at ``xi`` along generator ``a``."""
    gen = as_operator(a, "generator")
    return TangentVector(base=xi, value=alpha_velocity(xi.matrix, gen), generator=gen)


def tangent_phi(rho: StateDensity, a) -> TangentVector:
    """Tangent vector of the normalized action at ``rho``; always traceless."""
    gen = as_operator(a, "generator")
    return TangentVector(base=rho, value=phi_velocity(rho.matrix, gen), generator=gen)


def covariance(rho: StateDensity, a, b) -> float:
    """Symmetrized covariance Tr(rho(ab+ba)) - 2 Tr(rho a) Tr(rho b).

    Defined for Hermitian a, b; symmetric in its arguments, zero when either
    argument is a multiple of the identity, and nonnegative on the diagonal.
    """
    am = require_hermitian(a, "a")
    bm = require_hermitian(b, "b")
    m = rho.matrix
    quad = float(np.trace(m @ (am @ bm + bm @ am)).real)
    return quad - 2.0 * float(np.trace(m @ am).real) * float(np.trace(m @ bm).real)


def flow(rho0: StateDensity, a, t_grid) -> list[StateDensity]:
    """Trajectory t -> phi(exp(ta), rho0) over the given parameter grid."""
    gen = as_operator(a, "generator")
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise ValidationError(f"t_grid must be a nonempty 1-d array, got shape {ts.shape}")
    return [phi(group_element(matrix_exp(t * gen)), rho0) for t in ts]


def fd_tangent_check(rho: StateDensity, a, h: float = config.FD_STEP) -> float:
    """Relative error between the central difference of the flow and tangent_phi.

    Returns ||fd - value||_F / (1 + ||value||_F) with the symmetric
    difference (phi(exp(ha)) - phi(exp(-ha))) / 2h.
    """
    gen = as_operator(a, "generator")
    value = phi_velocity(rho.matrix, gen)
    fwd = phi(group_element(matrix_exp(h * gen)), rho).matrix
    bwd = phi(group_element(matrix_exp(-h * gen)), rho).matrix
    fd = (fwd - bwd) / (2.0 * h)
    return frobenius(fd - value) / (1.0 + frobenius(value))


def realification_basis(n: int) -> list[np.ndarray]:
    """Real basis {E_jk, i E_jk} of the algebra viewed as a 2n^2-real space."""
    basis = []
    for j in range(n):
        for k in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[j, k] = 1.0
            basis.append(e)
            basis.append(1j * e)
    return basis


def tangent_map_rank(rho: StateDensity, rel_tol: float = 1e-8) -> int:
    """Rank of the real-linear map a -> phi_velocity(rho, a).

    Equals the orbit dimension of the normalized action at rho: singular
    values below ``rel_tol`` times the largest count as zero.
    """
    m = rho.matrix
    cols = []
    for b in realification_basis(m.shape[0]):
        v = phi_velocity(m, b)
        cols.append(np.concatenate([v.real.ravel(), v.imag.ravel()]))
    s = np.linalg.svd(np.array(cols).T, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))
