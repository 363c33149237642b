"""The two actions of the invertible group on functionals and states.

The linear congruence action sends xi to g xi g†; it preserves positivity,
rank and faithfulness but not the unit trace.  Its normalized deformation
phi(g, rho) = g rho g† / Tr(g rho g†) is a left action on states that agrees
with the unitary coadjoint action on the unitary subgroup and is non-affine
elsewhere.  The classical specialization acts on probability vectors by
q_j = |w_j|^2 p_j / sum_k |w_k|^2 p_k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import NotUnitary, NumericallySingular, Singular, ZeroWeight
from .linalg import as_operator, dagger, frobenius, require_hermitian
from .states import (
    PositiveFunctional,
    ProbabilityVector,
    StateDensity,
    validate_positive,
    validate_probability,
    validate_state,
)

__all__ = [
    "GroupElement",
    "group_element",
    "alpha",
    "denominator",
    "phi",
    "unitary_phi",
    "classical_phi",
    "nonconvexity_witness",
    "mix_states",
]


@dataclass(frozen=True)
class GroupElement:
    """An invertible algebra element with its invertibility certificate.

    ``sigma_min``/``sigma_max`` are the extreme singular values computed at
    construction; 1/sigma_min bounds the operator norm of the inverse.
    """

    matrix: np.ndarray
    sigma_min: float
    sigma_max: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def inverse_norm_bound(self) -> float:
        return 1.0 / self.sigma_min


def group_element(g) -> GroupElement:
    """Certify invertibility: sigma_min > 1e-12*(1+opnorm).  Raises Singular."""
    if isinstance(g, GroupElement):
        return g
    m = as_operator(g, "group element")
    s = np.linalg.svd(m, compute_uv=False)
    smin, smax = float(s[-1]), float(s[0])
    if smin <= config.scaled(config.SINGULAR_RTOL) * (1.0 + smax):
        raise Singular(f"group element is numerically singular: sigma_min = {smin:.3e}")
    frozen = np.array(m)
    frozen.flags.writeable = False
    return GroupElement(matrix=frozen, sigma_min=smin, sigma_max=smax)


def alpha(g, xi):
    """Congruence action xi -> g xi g† on self-adjoint functionals.

    Accepts a PositiveFunctional (returned as PositiveFunctional) or a bare
    Hermitian matrix (returned as a matrix).  The action is linear and sends
    PSD inputs to PSD outputs of the same rank.
    """
    ge = group_element(g)
    if isinstance(xi, PositiveFunctional):
        return validate_positive(ge.matrix @ xi.matrix @ dagger(ge.matrix))
    m = require_hermitian(xi, "functional")
    out = ge.matrix @ m @ dagger(ge.matrix)
    return (out + dagger(out)) / 2.0


def denominator(g, rho: StateDensity) -> float:
    """Normalization Tr(rho g†g), strictly positive for invertible g.

    Raises NumericallySingular when the value falls at or below 1e-14; the
    action fails loudly there instead of renormalizing noise.
    """
    ge = group_element(g)
    value = float(np.trace(rho.matrix @ dagger(ge.matrix) @ ge.matrix).real)
    if value <= config.scaled(config.DENOMINATOR_FLOOR):
        raise NumericallySingular(f"Tr(rho g†g) = {value:.3e} is numerically zero")
    return value


def phi(g, rho: StateDensity) -> StateDensity:
    """Normalized action g rho g† / Tr(g rho g†).

    Preserves unit trace, positivity, rank and faithfulness; invariant under
    rescaling g -> lambda g.
    """
    ge = group_element(g)
    num = ge.matrix @ rho.matrix @ dagger(ge.matrix)
    den = float(np.trace(num).real)
    if den <= config.scaled(config.DENOMINATOR_FLOOR):
        raise NumericallySingular(f"Tr(g rho g†) = {den:.3e} is numerically zero")
    return validate_state(num / den)


def unitary_phi(u, rho: StateDensity) -> StateDensity:
    """Coadjoint action u rho u† of the unitary subgroup (spectrum preserving)."""
    m = as_operator(u, "unitary")
    defect = frobenius(dagger(m) @ m - np.eye(m.shape[0]))
    if defect > config.scaled(config.UNITARY_ATOL):
        raise NotUnitary(f"u†u - I has norm {defect:.3e}")
    return validate_state(m @ rho.matrix @ dagger(m))


def classical_phi(w, p) -> ProbabilityVector:
    """Classical action q_j = |w_j|^2 p_j / sum_k |w_k|^2 p_k.

    Weights must all be nonzero (ZeroWeight otherwise).  Dirac vectors are
    exact fixed points.
    """
    prob = p if isinstance(p, ProbabilityVector) else validate_probability(p)
    weights = np.asarray(w, dtype=complex)
    if weights.shape != (prob.m,):
        raise ZeroWeight(f"expected {prob.m} weights, got shape {weights.shape}")
    mags = np.abs(weights) ** 2
    if np.any(mags == 0.0):
        raise ZeroWeight("weight vector has a zero entry")
    scaled = mags * prob.p
    return validate_probability(scaled / scaled.sum())


def mix_states(rho1: StateDensity, rho2: StateDensity, lam: float) -> StateDensity:
    """Convex combination lam*rho1 + (1-lam)*rho2."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {lam}")
    return validate_state(lam * rho1.matrix + (1.0 - lam) * rho2.matrix)


def nonconvexity_witness(g, rho1: StateDensity, rho2: StateDensity, lam: float) -> float:
    """Affinity defect ||phi(g, mix) - lam phi(g,rho1) - (1-lam) phi(g,rho2)||_F.

    Zero on the unitary subgroup and at the endpoints lam in {0, 1};
    generically positive otherwise.
    """
    ge = group_element(g)
    mixed_image = phi(ge, mix_states(rho1, rho2, lam)).matrix
    image_mix = lam * phi(ge, rho1).matrix + (1.0 - lam) * phi(ge, rho2).matrix
    return frobenius(mixed_image - image_mix)
