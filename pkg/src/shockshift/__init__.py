"""Shock tracking and shift-aligned stochastic collocation for 1D scalar
conservation laws with random initial data."""

from .problem import (FluxModel, InitialDataFamily, ProblemSpec, GridField,
                      burgers, convex_flux, logistic_step, perturbed_logistic,
                      base_problem, perturbed_problem, validate_problem,
                      sample_initial)
from .solver import SolverConfig, weno5_reconstruct, spatial_rhs, ssp_rk3_step, advance_to
from .hodograph import (InverseInitialData, CriticalData, ShockTrack,
                        SensitivityTrack, invert_initial, synthetic_inverse,
                        critical_point, asymptotic_start, track_shock,
                        exact_solution_at, exact_field, shock_sensitivity,
                        critical_sensitivities)
from .detect import DetectionConfig, detect_xc, detect_tstar, extract_u12
from .collocate import (CollocationEnsemble, NodeData, InterpolationReport,
                        chebyshev_nodes, chebyshev_bary_weights, barycentric_eval,
                        chebyshev_coeffs, direct_interpolate, method1_interpolate,
                        method2_interpolate, error_metrics, shift_field_values)

__version__ = "0.1.0"
