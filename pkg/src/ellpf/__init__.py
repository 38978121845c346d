"""Twelve-family theta pfaffians with their lattice-model counterparts.

The core objects are the families P_n evaluated on 2n-point
configurations, the theta/q-series kernel underneath them, and the
solvable-lattice quantities they govern: the dynamical square-ice
partition function with domain wall boundaries, the three-colour model,
and the odd eight-vertex transfer matrix with its TQ solutions.
"""

from .errors import (
    ContourError,
    DegeneracyError,
    DomainError,
    EllpfError,
    NumericalLimitError,
    PoleError,
    RangeError,
    TruncationError,
)
from .nome import DEFAULT_POLICY, Nome, TruncationPolicy, nome_from_p
from .theta import (
    legendre3,
    q_pochhammer,
    theta_jacobi,
    theta_p,
    theta_prod,
    theta_series,
)
from .linalg import bordered_pfaffian, determinant, hankel_determinant, pfaffian
from .sympoly import elementary, schur, sundquist_check
from .pfaffians import (
    ALL_SIGMAS,
    PointConfig,
    SIGMA_BASES,
    SigmaLabel,
    kernel_spec,
    p_sigma,
    sample_config,
)
from .identities import (
    classical_p,
    hat_cross_check,
    modular_check,
    modular_target,
    shift_constants,
)
from .expansions import laurent_coefficient, pi_sigma, schur_expansion, trig_leading_check
from .moments import coincident_limit_check, glaisher_t, lambert_moment, moment_hankel
from .lattice import (
    ThreeColourWeights,
    colour_weights,
    ik_determinant,
    partition_z,
    state_count,
    three_colour_z,
)
from .eightvertex import EVParams, phi, q_sigma, tq_residual, transfer_matrix
from .report import CheckCase, CheckReport
from .suites import SUITE_NAMES, run_suite

__version__ = "0.1.0"

__all__ = [
    "ALL_SIGMAS",
    "CheckCase",
    "CheckReport",
    "ContourError",
    "DEFAULT_POLICY",
    "DegeneracyError",
    "DomainError",
    "EVParams",
    "EllpfError",
    "Nome",
    "NumericalLimitError",
    "PointConfig",
    "PoleError",
    "RangeError",
    "SIGMA_BASES",
    "SUITE_NAMES",
    "SigmaLabel",
    "ThreeColourWeights",
    "TruncationError",
    "TruncationPolicy",
    "bordered_pfaffian",
    "classical_p",
    "coincident_limit_check",
    "colour_weights",
    "determinant",
    "elementary",
    "glaisher_t",
    "hankel_determinant",
    "hat_cross_check",
    "ik_determinant",
    "kernel_spec",
    "lambert_moment",
    "laurent_coefficient",
    "legendre3",
    "modular_check",
    "modular_target",
    "moment_hankel",
    "nome_from_p",
    "p_sigma",
    "partition_z",
    "pfaffian",
    "phi",
    "pi_sigma",
    "q_pochhammer",
    "q_sigma",
    "run_suite",
    "sample_config",
    "schur",
    "schur_expansion",
    "shift_constants",
    "state_count",
    "sundquist_check",
    "theta_jacobi",
    "theta_p",
    "theta_prod",
    "theta_series",
    "three_colour_z",
    "tq_residual",
    "transfer_matrix",
    "trig_leading_check",
]
