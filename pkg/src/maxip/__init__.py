"""Maximum inner product search toolkit.

Exact quadratic-time oracles, deterministic and randomized approximation
algorithms, Chinese-remainder dimensionality reductions with orthogonality
certificates, exact-arithmetic geometric embeddings, verifier-protocol
simulations with transcript-level cost accounting, and sign-vector gap
reductions. Every pipeline is verifiable against the oracles at desk scale.
"""

from .core import (
    ArgPair,
    Instance,
    VectorSet,
    boolean_set,
    gen_planted_orthogonal,
    gen_random,
    gen_random_instance,
    integer_set,
    max_ip_exact,
    orthogonal_decide,
    power_sum_estimate,
    rational_set,
)
from .crt import (
    CrtReduction,
    apply_reduction,
    build_reduction,
    brute_force_search_reduction,
    certificate_values,
    decode_dot,
    level_sets,
    maxip_via_crt_queries,
    ov_to_zov,
    validate_candidate_reduction,
    witnesses_orthogonality,
)
from .geometry import (
    GeometryInstance,
    geometry_extreme_pair,
    ov_to_geometry_decide,
    zmaxip_to_geometry,
    zov_to_zmaxip_tensor,
)
from .orpoly import (
    PM1GapInstance,
    build_or_approx_poly,
    compile_standard_coeffs,
    fourier_transform,
    implicit_pm1_dot,
    ov_to_pm1_gap,
    pm1_encode_lhs,
    pm1_encode_rhs,
)
from .powersum import (
    all_pair_approx_mult,
    approx_mult,
    batch_power_sums,
    compute_power_coeffs,
)
from .protocol import (
    AdvicePackage,
    CostReport,
    ma_disj_improved,
    np_upp_family,
    ov_to_maxip_gap,
    protocol_cost,
    rs_ip_mod_protocol,
    upp_reduction_decide,
    upp_simulate,
)
from .sampling import all_pair_additive, approx_additive

__all__ = [name for name in dir() if not name.startswith("_")]
