"""Orbit connectivity for both actions.

Two positive functionals of equal rank are connected by the explicit element
g = sum_j sqrt(p1_j/p0_j) |e1_j><e0_j| + sum_k |f1_k><f0_k| built from their
matched spectral decompositions; its operator norm is bounded by sqrt(C+1)
where C is the largest eigenvalue ratio.  For unit-trace inputs the same
element realizes the normalized action without rescaling.  At finite
dimension congruence orbits are decided completely by Sylvester inertia.
The tracial orbit is in bijection with positive invertible unit-trace
elements and is convex, with an explicit square-root recombiner; the
truncation sweep tracks how the bound constant behaves as the dimension
grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import config
from .actions import GroupElement, group_element, phi
from .errors import NotTracial, NumericalError, RankMismatch, ValidationError
from .linalg import (
    dagger,
    frobenius,
    fro_scale,
    inertia,
    matrix_sqrt_psd,
    require_hermitian,
)
from .states import (
    OrbitClass,
    PositiveFunctional,
    ProbabilityVector,
    SpectralSplit,
    StateDensity,
    default_rank_tol,
    gibbs_spectrum,
    maximally_mixed,
    spectral_split,
    validate_positive,
    validate_probability,
    validate_state,
)
from .actions import classical_phi

__all__ = [
    "ConnectCertificate",
    "bound_constant",
    "connect_alpha",
    "connect_phi",
    "same_orbit_alpha",
    "tracial_orbit_point",
    "require_tracial",
    "convex_recombine",
    "convex_recombine_classical",
    "SpectrumGenerator",
    "make_spectrum_generator",
    "TruncationReport",
    "truncation_sweep",
]


@dataclass(frozen=True)
class ConnectCertificate:
    """An orbit-connecting element together with its norm certificate.

    ``bound_constant`` is the largest eigenvalue ratio C; the element is
    guaranteed to satisfy ||g||_op <= sqrt(C+1) and to reproduce the target
    within ``achieved_residual``.
    """

    g: GroupElement
    bound_constant: float
    norm_bound: float
    achieved_residual: float


def _matched_splits(rho0, rho1, permutation=None,
                    rank_tol=None) -> tuple[SpectralSplit, SpectralSplit, np.ndarray]:
    split0 = spectral_split(rho0, rank_tol=rank_tol)
    split1 = spectral_split(rho1, rank_tol=rank_tol)
    k = split0.support_dim
    if k != split1.support_dim or split0.ambient_dim != split1.ambient_dim:
        raise RankMismatch(
            f"rank {split0.support_dim} (dim {split0.ambient_dim}) vs "
            f"rank {split1.support_dim} (dim {split1.ambient_dim})"
        )
    if permutation is None:
        perm = np.arange(k)
    else:
        perm = np.asarray(permutation, dtype=int)
        if sorted(perm.tolist()) != list(range(k)):
            raise ValidationError(f"permutation must reorder range({k})")
    return split0, split1, perm


def bound_constant(rho0, rho1, permutation=None, rank_tol=None) -> float:
    """Largest eigenvalue ratio C = max_j p1_j / p0_j over matched spectra.

    Spectra are matched in non-increasing order unless an explicit
    permutation of the target spectrum is given.  Raises RankMismatch.
    """
    split0, split1, perm = _matched_splits(rho0, rho1, permutation, rank_tol)
    return float(np.max(split1.eigenvalues[perm] / split0.eigenvalues))


def _connect(rho0, rho1, permutation, rank_tol=None):
    split0, split1, perm = _matched_splits(rho0, rho1, permutation, rank_tol)
    ratios = split1.eigenvalues[perm] / split0.eigenvalues
    e0, e1 = split0.support_basis, split1.support_basis[:, perm]
    g = (e1 * np.sqrt(ratios)) @ dagger(e0) + split1.kernel_basis @ dagger(split0.kernel_basis)
    c = float(np.max(ratios))
    element = group_element(g)
    bound = float(np.sqrt(c + 1.0))
    if element.sigma_max > bound * (1.0 + config.scaled(config.NORM_BOUND_SLACK)):
        raise NumericalError(
            f"connecting element norm {element.sigma_max:.6e} exceeds bound {bound:.6e}"
        )
    return element, c, bound


def _residual_guard(residual: float, target: np.ndarray) -> float:
    tol = config.scaled(config.CONNECT_RESIDUAL_RTOL) * fro_scale(target)
    if residual > tol:
        raise NumericalError(f"connection residual {residual:.3e} exceeds {tol:.3e}")
    return residual


def connect_alpha(rho0: PositiveFunctional, rho1: PositiveFunctional,
                  permutation=None, rank_tol=None) -> ConnectCertificate:
    """Element g with g rho0 g† = rho1, for equal-rank positive functionals."""
    element, c, bound = _connect(rho0, rho1, permutation, rank_tol)
    image = element.matrix @ rho0.matrix @ dagger(element.matrix)
    residual = _residual_guard(frobenius(image - rho1.matrix), rho1.matrix)
    return ConnectCertificate(g=element, bound_constant=c, norm_bound=bound,
                              achieved_residual=residual)


def connect_phi(rho0: StateDensity, rho1: StateDensity,
                permutation=None, rank_tol=None) -> ConnectCertificate:
    """Element g realizing rho1 under the normalized action, for equal ranks.

    Unit traces make the congruence element exact without rescaling.
    """
    element, c, bound = _connect(rho0, rho1, permutation, rank_tol)
    image = phi(element, rho0).matrix
    residual = _residual_guard(frobenius(image - rho1.matrix), rho1.matrix)
    return ConnectCertificate(g=element, bound_constant=c, norm_bound=bound,
                              achieved_residual=residual)


def same_orbit_alpha(xi0, xi1, zero_tol: float | None = None) -> bool:
    """Complete finite-dimensional congruence-orbit decision via inertia.

    Two Hermitian matrices are congruent iff their signatures agree
    (Sylvester); for positive functionals this reduces to equal rank.
    """
    m0 = require_hermitian(xi0, "first functional")
    m1 = require_hermitian(xi1, "second functional")
    if m0.shape != m1.shape:
        return False
    tol0 = default_rank_tol(m0) if zero_tol is None else zero_tol
    tol1 = default_rank_tol(m1) if zero_tol is None else zero_tol
    return inertia(m0, tol0) == inertia(m1, tol1)


def tracial_orbit_point(g, n: int) -> StateDensity:
    """Point g g† / Tr(g g†) of the orbit through the tracial state I/n.

    Every faithful state arises this way (take g = sqrt of the state).
    """
    element = group_element(g)
    if element.n != n:
        raise ValidationError(f"group element has dimension {element.n}, expected {n}")
    return phi(element, maximally_mixed(n))


def require_tracial(tau: StateDensity) -> None:
    """Check Tr(tau ab) = Tr(tau ba) on the matrix-unit basis, i.e. that tau
    commutes with every matrix unit.  Raises NotTracial."""
    m = tau.matrix
    n = m.shape[0]
    # [tau, E_ij] has column j equal to tau[:, i] and row i equal to -tau[j, :];
    # its largest entry over all (i, j) is max |tau_kl| off the scalar part.
    worst = 0.0
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            worst = max(worst, float(np.max(np.abs(m @ e - e @ m))))
    if worst > config.scaled(config.TRACIAL_ATOL):
        raise NotTracial(f"commutator residual {worst:.3e} on the matrix-unit sample")


def convex_recombine(tau: StateDensity, g1, g2, lam: float) -> tuple[GroupElement, float]:
    """Square-root recombiner for mixtures on the tracial orbit.

    For tracial tau the mixture lam*phi(g1,tau) + (1-lam)*phi(g2,tau) equals
    phi(p, tau) with p the PSD square root of
    lam*g1 g1†/tau(g1 g1†) + (1-lam)*g2 g2†/tau(g2 g2†).
    Returns the recombiner and the achieved Frobenius residual.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValidationError(f"mixing weight must lie in [0, 1], got {lam}")
    require_tracial(tau)
    e1 = group_element(g1)
    e2 = group_element(g2)
    m = tau.matrix
    p1 = e1.matrix @ dagger(e1.matrix)
    p2 = e2.matrix @ dagger(e2.matrix)
    combined = (lam * p1 / np.trace(m @ p1).real
                + (1.0 - lam) * p2 / np.trace(m @ p2).real)
    recombiner = group_element(matrix_sqrt_psd(combined))
    target = lam * phi(e1, tau).matrix + (1.0 - lam) * phi(e2, tau).matrix
    residual = frobenius(phi(recombiner, tau).matrix - target)
    return recombiner, residual


def convex_recombine_classical(p: ProbabilityVector, w1, w2,
                               lam: float) -> tuple[np.ndarray, float]:
    """Componentwise recombiner on the simplex (every classical state is tracial).

    Returns the weight vector sqrt(lam*|w1|^2/<p,|w1|^2> + ...) and the
    max-norm residual against the mixture of the two images.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValidationError(f"mixing weight must lie in [0, 1], got {lam}")
    prob = p if isinstance(p, ProbabilityVector) else validate_probability(p)
    a1 = np.abs(np.asarray(w1, dtype=complex)) ** 2
    a2 = np.abs(np.asarray(w2, dtype=complex)) ** 2
    combined = lam * a1 / float(a1 @ prob.p) + (1.0 - lam) * a2 / float(a2 @ prob.p)
    weights = np.sqrt(combined)
    target = (lam * classical_phi(w1, prob).p
              + (1.0 - lam) * classical_phi(w2, prob).p)
    residual = float(np.max(np.abs(classical_phi(weights, prob).p - target)))
    return weights, residual


@dataclass(frozen=True)
class SpectrumGenerator:
    """Produces a strictly positive spectrum for each truncation dimension."""

    kind: str
    params: dict = field(default_factory=dict)
    declared_limit: str | None = None

    def spectrum(self, n: int, rng: np.random.Generator | None = None) -> np.ndarray:
        if self.kind == "gibbs":
            return gibbs_spectrum(n, self.params["ratio"])
        if self.kind == "uniform":
            return np.full(n, 1.0 / n)
        if self.kind == "power":
            raw = np.arange(1, n + 1, dtype=float) ** (-float(self.params["exponent"]))
            return raw / raw.sum()
        if self.kind == "dirichlet":
            if rng is None:
                raise ValidationError("dirichlet spectra need a seeded generator")
            raw = np.sort(rng.dirichlet(np.full(n, float(self.params.get("alpha", 1.0)))))[::-1]
            floor = 1e-6 / n
            raw = np.maximum(raw, floor)
            return raw / raw.sum()
        raise ValidationError(f"unknown spectrum kind {self.kind!r}")


def make_spectrum_generator(mapping: dict) -> SpectrumGenerator:
    """Build a generator from a config mapping like {"kind": "gibbs", "ratio": 0.5}."""
    if not isinstance(mapping, dict) or "kind" not in mapping:
        raise ValidationError("spectrum config must be a mapping with a 'kind' key")
    params = {k: v for k, v in mapping.items() if k not in ("kind", "declared_limit")}
    declared = mapping.get("declared_limit")
    if declared is None and mapping["kind"] in ("gibbs", "uniform", "power"):
        declared = "FullSupport"
    return SpectrumGenerator(kind=mapping["kind"], params=params, declared_limit=declared)


@dataclass(frozen=True)
class TruncationReport:
    """Per-dimension bound constants, norms and residuals of a truncation sweep."""

    dims: tuple
    bound_constants: tuple
    opnorms: tuple
    residuals: tuple
    orbit_class_tags: tuple
    flags: tuple
    ceiling: float

    @property
    def diverged(self) -> bool:
        return any(self.flags)


def truncation_sweep(gen0: SpectrumGenerator, gen1: SpectrumGenerator, dims,
                     ceiling: float = 1e6, action: str = "phi",
                     rng: np.random.Generator | None = None) -> TruncationReport:
    """Connect truncated spectra at each dimension and track the bound constant.

    ``action`` selects the normalized connection on unit-trace truncations
    ("phi") or the raw congruence connection on the fixed spectra ("alpha",
    where nested truncations make C non-decreasing).  A row is flagged when
    C exceeds ``ceiling``.
    """
    if action not in ("alpha", "phi"):
        raise ValidationError(f"unknown action {action!r}, expected 'alpha' or 'phi'")
    if ceiling <= 0.0:
        raise ValidationError(f"ceiling must be positive, got {ceiling}")
    dims = [int(n) for n in dims]
    if not dims or any(n < 1 for n in dims):
        raise ValidationError("dims must be a nonempty list of positive integers")

    cs, norms, residuals, tags, flags = [], [], [], [], []
    for n in dims:
        s0 = np.asarray(gen0.spectrum(n, rng), dtype=float)
        s1 = np.asarray(gen1.spectrum(n, rng), dtype=float)
        if s0.shape != (n,) or s1.shape != (n,) or np.any(s0 <= 0.0) or np.any(s1 <= 0.0):
            raise ValidationError(f"generators must produce positive length-{n} spectra")
        # Deep truncations carry eigenvalues far below the generic support
        # threshold but are full rank by construction, so the split runs at
        # rank_tol = 0 and the class label comes from the generator.
        if action == "phi":
            rho0 = validate_state(np.diag((s0 / s0.sum()).astype(complex)))
            rho1 = validate_state(np.diag((s1 / s1.sum()).astype(complex)))
            cert = connect_phi(rho0, rho1, rank_tol=0.0)
        else:
            rho0 = validate_positive(np.diag(s0.astype(complex)))
            rho1 = validate_positive(np.diag(s1.astype(complex)))
            cert = connect_alpha(rho0, rho1, rank_tol=0.0)
        cs.append(cert.bound_constant)
        norms.append(cert.g.sigma_max)
        residuals.append(cert.achieved_residual)
        tags.append(OrbitClass(rank=n, corank=0, tag=f"FiniteRank({n})",
                               declared_limit=gen1.declared_limit).label())
        flags.append(cert.bound_constant > ceiling)

    return TruncationReport(
        dims=tuple(dims),
        bound_constants=tuple(cs),
        opnorms=tuple(norms),
        residuals=tuple(residuals),
        orbit_class_tags=tuple(tags),
        flags=tuple(flags),
        ceiling=float(ceiling),
    )
