"""Finite-dimensional GNS construction for states on the full matrix algebra.

The semi-inner product <a, b> = rho(a†b) on the algebra has Gram matrix
G = I kron rho^T over the matrix-unit basis (row-major vectorization), so
its rank is n * rank(rho).  Quotienting the null space and orthonormalizing
yields a Hilbert space on which left multiplication is a unital
*-representation, with the class of the identity as cyclic vector:
rho(a) = <psi| pi(a) |psi>.  The representation is irreducible (trivial
commutant) exactly for pure states, and an invertible element g transports
the cyclic vector to pi(g)|psi> / sqrt(<psi|pi(g†g)|psi>), implementing the
normalized action inside a fixed representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .actions import group_element
from .errors import NumericalError, NumericallySingular, ValidationError
from .linalg import as_operator, dagger, hermitian_eig
from .states import ProbabilityVector, StateDensity, spectral_split

__all__ = [
    "GnsTriple",
    "AbelianGnsTriple",
    "gns_construct",
    "gns_transform",
    "purity_check",
    "commutant_dimension",
    "gns_construct_abelian",
]


def _vec(m: np.ndarray) -> np.ndarray:
    """Row-major vectorization matching the matrix-unit basis order."""
    return m.ravel()


@dataclass(frozen=True)
class GnsTriple:
    """GNS data: Hilbert-space dimension, representation, cyclic vector.

    ``embed`` maps GNS coordinates to coefficient vectors of algebra-class
    representatives over the matrix-unit basis; its columns are orthonormal
    for the Gram pairing.  ``rep`` extends by linearity from the stored
    projection, so any algebra element can be represented, not only basis
    elements.
    """

    n: int
    dim: int
    embed: np.ndarray      # n^2 x d
    gram: np.ndarray       # n^2 x n^2
    cyclic: np.ndarray     # length d, unit norm

    def rep(self, a) -> np.ndarray:
        """Represent left multiplication by ``a`` on the GNS space."""
        m = as_operator(a, "algebra element")
        if m.shape[0] != self.n:
            raise NumericalError(f"element has dimension {m.shape[0]}, expected {self.n}")
        lift = np.kron(m, np.eye(self.n, dtype=complex))
        return dagger(self.embed) @ self.gram @ lift @ self.embed

    def vector_of(self, a) -> np.ndarray:
        """GNS coordinates of the class of ``a``."""
        m = as_operator(a, "algebra element")
        return dagger(self.embed) @ self.gram @ _vec(m)

    def expectation(self, a) -> complex:
        """Vector expectation <psi| rep(a) |psi>; equals rho(a) for the source state."""
        return complex(np.conjugate(self.cyclic) @ self.rep(a) @ self.cyclic)

    def rep_matrices(self) -> list[np.ndarray]:
        """Images of the n^2 matrix units, in row-major order."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                e = np.zeros((self.n, self.n), dtype=complex)
                e[i, j] = 1.0
                out.append(self.rep(e))
        return out


def gns_construct(rho: StateDensity) -> GnsTriple:
    """Build the GNS triple of a state on the full matrix algebra.

    The Gram matrix over the matrix-unit basis is quotiented at the relative
    threshold 1e-12 * ||G||_2; the resulting dimension is n * rank(rho).
    """
    m = rho.matrix
    n = m.shape[0]
    gram = np.kron(np.eye(n, dtype=complex), m.T)
    dec = hermitian_eig(gram)
    w = dec.eigenvalues
    cut = config.scaled(config.GNS_NULLSPACE_RTOL) * max(w[0], 0.0)
    d = int(np.sum(w > cut))
    if d == 0:
        raise NumericalError("Gram matrix is numerically zero")
    embed = dec.eigenvectors[:, :d] / np.sqrt(w[:d])
    cyclic = dagger(embed) @ gram @ _vec(np.eye(n, dtype=complex))
    return GnsTriple(n=n, dim=d, embed=embed, gram=gram, cyclic=cyclic)


def gns_transform(triple: GnsTriple, g, rho: StateDensity) -> GnsTriple:
    """Transport the cyclic vector by an invertible element.

    The new vector pi(g)|psi> / sqrt(<psi|pi(g†g)|psi>) represents the
    normalized action of g on the source state inside the same
    representation.  ``rho`` must be the state the triple was built from.
    """
    ge = group_element(g)
    gram_g = dagger(ge.matrix) @ ge.matrix
    norm_sq = triple.expectation(gram_g).real
    # the vector expectation of g†g must reproduce rho(g†g)
    from_state = float(np.trace(rho.matrix @ gram_g).real)
    if abs(norm_sq - from_state) > 1e-8 * (1.0 + abs(from_state)):
        raise ValidationError(
            f"triple does not represent the given state: {norm_sq!r} vs {from_state!r}"
        )
    if norm_sq <= config.scaled(config.DENOMINATOR_FLOOR):
        raise NumericallySingular(f"<psi|pi(g†g)|psi> = {norm_sq:.3e} is numerically zero")
    moved = triple.rep(ge.matrix) @ triple.cyclic
    return GnsTriple(
        n=triple.n,
        dim=triple.dim,
        embed=triple.embed,
        gram=triple.gram,
        cyclic=moved / np.sqrt(norm_sq),
    )


def commutant_dimension(triple: GnsTriple, rel_tol: float = 1e-10) -> int:
    """Complex dimension of the commutant of the represented algebra.

    A cyclic shift and a diagonal with distinct entries generate the full
    matrix algebra, so it is enough to solve [pi(s), X] = [pi(d), X] = 0.
    """
    n = triple.n
    shift = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    diag = np.diag(np.arange(n, dtype=complex))
    d = triple.dim
    eye = np.eye(d, dtype=complex)
    rows = []
    for gen in (shift, diag):
        r = triple.rep(gen)
        rows.append(np.kron(r, eye) - np.kron(eye, r.T))
    s = np.linalg.svd(np.vstack(rows), compute_uv=False)
    cut = rel_tol * max(float(s[0]), 1.0)
    return int(np.sum(s <= cut))


def purity_check(rho: StateDensity, cross_check: bool = True) -> bool:
    """Whether the state is pure (rank one).

    With ``cross_check`` the rank decision is verified against the commutant
    of the GNS representation, which is trivial exactly for pure states.
    """
    pure = spectral_split(rho).support_dim == 1
    if cross_check:
        cd = commutant_dimension(gns_construct(rho))
        if (cd == 1) != pure:
            raise NumericalError(
                f"purity disagreement: rank says {pure}, commutant dimension is {cd}"
            )
    return pure


@dataclass(frozen=True)
class AbelianGnsTriple:
    """GNS data for the diagonal subalgebra acting on a classical state.

    The Gram matrix over the diagonal matrix units is diag(p), so the GNS
    dimension is the support size; a Dirac vector yields a one-dimensional
    space on which the representation is scalar.
    """

    m: int
    dim: int
    support: np.ndarray    # indices of the support, ascending
    cyclic: np.ndarray     # sqrt of the supported probabilities

    def rep(self, f) -> np.ndarray:
        values = np.asarray(f, dtype=complex)
        if values.shape != (self.m,):
            raise NumericalError(f"expected a length-{self.m} diagonal element")
        return np.diag(values[self.support])

    def expectation(self, f) -> complex:
        return complex(np.conjugate(self.cyclic) @ self.rep(f) @ self.cyclic)


def gns_construct_abelian(p: ProbabilityVector) -> AbelianGnsTriple:
    """GNS construction restricted to the diagonal (classical) subalgebra."""
    weights = p.p
    cut = config.scaled(config.GNS_NULLSPACE_RTOL) * float(weights.max())
    support = np.flatnonzero(weights > cut)
    return AbelianGnsTriple(
        m=weights.shape[0],
        dim=int(support.size),
        support=support,
        cyclic=np.sqrt(weights[support]),
    )
