"""Group actions of invertible elements on density operators, at finite dimension.

The congruence action xi -> g xi g† on positive functionals and its
state-preserving normalization rho -> g rho g† / Tr(g rho g†), with orbit
classification and explicit connecting elements, isotropy algebras and their
complements, tangent/flow machinery, the classical (simplex) specialization,
and a numerical GNS construction, everything verified by executable
invariants in the test suite.
"""

from .actions import (
    GroupElement,
    alpha,
    classical_phi,
    denominator,
    group_element,
    mix_states,
    nonconvexity_witness,
    phi,
    unitary_phi,
)
from .errors import (
    NotHermitian,
    NotPSD,
    NotTracial,
    NotUnitary,
    NumericalError,
    NumericallySingular,
    RankMismatch,
    Singular,
    StateGeomError,
    TraceError,
    ValidationError,
    ZeroFunctional,
    ZeroWeight,
)
from .gns import (
    AbelianGnsTriple,
    GnsTriple,
    commutant_dimension,
    gns_construct,
    gns_construct_abelian,
    gns_transform,
    purity_check,
)
from .isotropy import (
    IsotropyReport,
    RealBasis,
    complement_basis_alpha,
    hermitian_basis,
    isotropy_basis_alpha,
    isotropy_basis_phi,
    isotropy_dimension_alpha,
    isotropy_membership_alpha,
    isotropy_membership_phi,
    isotropy_report,
    orbit_dimension,
)
from .linalg import (
    SpectralDecomposition,
    hermitian_eig,
    inertia,
    matrix_exp,
    matrix_sqrt_psd,
    polar,
)
from .orbits import (
    ConnectCertificate,
    SpectrumGenerator,
    TruncationReport,
    bound_constant,
    connect_alpha,
    connect_phi,
    convex_recombine,
    convex_recombine_classical,
    make_spectrum_generator,
    same_orbit_alpha,
    tracial_orbit_point,
    truncation_sweep,
)
from .states import (
    OrbitClass,
    PositiveFunctional,
    ProbabilityVector,
    SpectralSplit,
    StateDensity,
    classify_orbit,
    embed_classical,
    gibbs_family,
    gibbs_spectrum,
    maximally_mixed,
    spectral_split,
    validate_positive,
    validate_probability,
    validate_state,
)
from .tangent import (
    TangentVector,
    covariance,
    fd_tangent_check,
    flow,
    tangent_alpha,
    tangent_map_rank,
    tangent_phi,
)

__version__ = "0.1.0"
