"""Finite dual-affine-plane geometry, MUB operators and the finite Radon transform (odd prime d)."""
from .geometry import (
    CB,
    AxiomReport,
    DapgLine,
    DapgPoint,
    ApgPoint,
    Sloped,
    Vertical,
    apg_common_dapg_point,
    apg_line_points,
    duality_map,
    incidence,
    line_points,
    lines_through_point,
    verify_apg_axioms,
    verify_dapg_axioms,
)
from .modmath import PrimeDim, inv2, mod_inv, omega_pow, validate_dim
from .operators import (
    apg_line_operator,
    line_operator,
    line_operator_by_sum,
    line_projector,
    line_state_matrix,
    mub_state,
    point_operator,
)
from .phase_space import (
    ProbabilityTable,
    QuasiDist,
    apg_quasi,
    overlap_via_quasi,
    quasi_dist,
    radon_forward,
    radon_inverse,
    reconstruct_state,
    state_from_quasi,
)
from .tomography_sim import ExperimentConfig, random_mixed, random_pure, run_experiment, sample_table

__version__ = "0.1.0"
