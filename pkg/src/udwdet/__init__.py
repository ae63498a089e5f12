"""Vacuum-fluctuation correlators of a moving Unruh-DeWitt detector.

Closed-form two-point functions <Q^2> and <Qdot^2> for uniformly
accelerated and inertial detectors coupled to a massless scalar field,
cross-validated against a brute-force frequency-integral oracle.
"""

from .closedform import (CorrelatorOptions, CorrelatorValue, RenormOffsets,
                         appendix_terms_uad_v1, appendix_terms_uad_v2,
                         pp_inertial, pp_uad, pp_uad_v1, pp_uad_v2,
                         qq_inertial, qq_uad, qq_uad_v1, qq_uad_v2)
from .errors import (ConvergenceError, DomainError, NonPositiveInputError,
                     OverDampedError, PoleError, QuadratureFailure,
                     UdwError, UndefinedRetardedTimeError, UnknownFigureError)
from .model import (DetectorParams, Inertial, SpacetimePoint, Trajectory,
                    UniformAcceleration, ValidationReport, derive_params,
                    params_from_omega, retarded_kinematics,
                    trajectory_position, validate_params)
from .modes import (OscillatorConstants, oscillator_constants, q_a,
                    response_kernel, response_kernel_dot)
from .oracle import (OracleCorrelator, OracleResult, QuadratureConfig,
                     inertial_full_line, pp_inertial_oracle, pp_uad_oracle,
                     qq_inertial_oracle, qq_uad_oracle,
                     raw_truncated_integral, thermal_factor)
from .special import coth, digamma, gamma0, hyp_f

__version__ = "0.1.0"

__all__ = [
    "CorrelatorOptions", "CorrelatorValue", "RenormOffsets",
    "appendix_terms_uad_v1", "appendix_terms_uad_v2",
    "pp_inertial", "pp_uad", "pp_uad_v1", "pp_uad_v2",
    "qq_inertial", "qq_uad", "qq_uad_v1", "qq_uad_v2",
    "ConvergenceError", "DomainError", "NonPositiveInputError",
    "OverDampedError", "PoleError", "QuadratureFailure", "UdwError",
    "UndefinedRetardedTimeError", "UnknownFigureError",
    "DetectorParams", "Inertial", "SpacetimePoint", "Trajectory",
    "UniformAcceleration", "ValidationReport", "derive_params",
    "params_from_omega", "retarded_kinematics", "trajectory_position",
    "validate_params",
    "OscillatorConstants", "oscillator_constants", "q_a",
    "response_kernel", "response_kernel_dot",
    "OracleCorrelator", "OracleResult", "QuadratureConfig",
    "inertial_full_line", "pp_inertial_oracle", "pp_uad_oracle",
    "qq_inertial_oracle", "qq_uad_oracle", "raw_truncated_integral",
    "thermal_factor",
    "coth", "digamma", "gamma0", "hyp_f",
    "__version__",
]
