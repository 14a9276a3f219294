"""Count-resolved master equation for a charge qubit read out by a quantum point contact."""

from ._core import (
    ConfigError,
    DetectorParams,
    FilterMode,
    Model,
    QubitParams,
    SolverError,
    __version__,
    analytic_current,
    analytic_peak_to_pedestal,
    analytic_spectrum,
    counting_distribution,
    run_config,
    s1_prefactor,
    spectrum,
)

__all__ = [
    "ConfigError",
    "DetectorParams",
    "FilterMode",
    "Model",
    "QubitParams",
    "SolverError",
    "__version__",
    "analytic_current",
    "analytic_peak_to_pedestal",
    "analytic_spectrum",
    "counting_distribution",
    "run_config",
    "s1_prefactor",
    "spectrum",
]
