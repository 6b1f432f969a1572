"""Numerics for linear pre-metric electrodynamics in uniaxial birefringent media.

Causal structure from the Fresnel quartic (hyperbolicity cones, observer
classification), classical energy-density positivity, worldline-averaged
lower bounds on the quantized energy density, and the interluminal
wave-packet construction that rules such bounds out beyond the slow-light
cone.  Everything is verified against independent quadrature and
root-finding oracles; see :mod:`premetric.verify`.
"""

from .causal import (
    CovectorClass,
    VectorClass,
    classify_covector,
    classify_vector,
    frequencies,
    legendre_map,
)
from .energy import (
    EnergyMatrices,
    chi12_split,
    classical_rho,
    em_basis,
    energy_matrices,
    sum_of_squares_fields,
    swec_check,
)
from .errors import (
    DegenerateInput,
    GridTooCoarse,
    NearNullCovector,
    NewtonDiverged,
    NonConvergent,
    NotPositive,
    NotSubluminal,
    NotTimelike,
    OnExtraordinaryCone,
    PolesMerged,
    PremetricError,
    ZeroMomentum,
)
from .fresnel import (
    FresnelContext,
    fresnel_eval,
    in_hyperbolicity_cone,
    is_hyperbolic,
    quasi_inverse,
    second_adjugate,
    uniaxial_context,
)
from .normalization import NormalizationResult, aleph_uc, pstar
from .numerics import QuadratureSpec
from .qei import (
    C_coefficient,
    GaussianSmearing,
    QEIBoundResult,
    SampledSmearing,
    cone_moment_identity,
    gpp_norm_sq,
    qei_bound,
    qei_bound_pipeline,
)
from .tensors import (
    ETA,
    ETA_INV,
    Frame,
    build_uniaxial_chi,
    frame_from_worldline,
    principal_symbol,
    zeta_inverse,
    zeta_metric,
)
from .uniaxial import ModeData, mode_data, q_covector, residue_check, vacuum_mode_weight
from .wavepacket import (
    WavePacketSpec,
    field_strength_origin,
    n_particle_energy,
    packet_norm_sq,
    packet_profile,
    pair_kernel_diagonal,
    rho_origin,
)

__version__ = "0.1.0"
