"""Cycle-averaged photon transport between parametrically coupled leads.

Thin python layer over the C++ engine: lead spectra, transmission kernels,
the analytic current decomposition, and the time-domain covariance oracle.
"""

from ._core import (
    BathState,
    CenterModel,
    ConfigError,
    CouplingModel,
    CovarianceState,
    CurrentBreakdown,
    CurrentFit,
    DomainError,
    DosModel,
    Integrator,
    LeadSpectrum,
    NumericalError,
    OracleComparison,
    OracleOptions,
    OracleSystem,
    PumpDrive,
    QuadratureOptions,
    RatePair,
    RunConfig,
    Side,
    SideOccupation,
    SweepAxis,
    SweepPoint,
    Table2D,
    TermResult,
    TransmissionKernel,
    TransportProblem,
    bose_occupation,
    center_greens_retarded,
    compare,
    coupling_amplitude,
    current_left,
    current_right,
    dos,
    golden_rule_rates,
    initial_covariance,
    lambda_matrix,
    load_config,
    measure_current,
    mode_occupations,
    parse_config,
    physicality_margin,
    propagate,
    side_occupations,
    sweep,
    transmission_center,
    transmission_trivial,
)

__version__ = "0.1.0"

__all__ = [
    "BathState",
    "CenterModel",
    "ConfigError",
    "CouplingModel",
    "CovarianceState",
    "CurrentBreakdown",
    "CurrentFit",
    "DomainError",
    "DosModel",
    "Integrator",
    "LeadSpectrum",
    "NumericalError",
    "OracleComparison",
    "OracleOptions",
    "OracleSystem",
    "PumpDrive",
    "QuadratureOptions",
    "RatePair",
    "RunConfig",
    "Side",
    "SideOccupation",
    "SweepAxis",
    "SweepPoint",
    "Table2D",
    "TermResult",
    "TransmissionKernel",
    "TransportProblem",
    "bose_occupation",
    "center_greens_retarded",
    "compare",
    "coupling_amplitude",
    "current_left",
    "current_right",
    "dos",
    "golden_rule_rates",
    "initial_covariance",
    "lambda_matrix",
    "load_config",
    "measure_current",
    "mode_occupations",
    "parse_config",
    "physicality_margin",
    "propagate",
    "side_occupations",
    "sweep",
    "transmission_center",
    "transmission_trivial",
    "__version__",
]
