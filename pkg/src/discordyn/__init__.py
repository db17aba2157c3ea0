"""Dissipative two-qubit dynamics in Lorentzian reservoirs.

Integrates the time-local second-order master equation for two independent
atoms, tracks quantum discord and entanglement of formation along the
trajectory, and detects the discord/entanglement crossover and entanglement
sudden death.
"""

from .analysis import (
    EventReport,
    MeasureSeries,
    RunResult,
    detect_crossing,
    detect_esd,
    event_report,
    measure_series,
    run_config,
    sweep,
)
from .config import ConfigError, RunConfig, parse_config
from .correlations import (
    CorrelationMeasures,
    MeasurementBasis,
    NonXStateError,
    binary_entropy,
    concurrence_general,
    concurrence_x,
    discord_oracle,
    discord_x,
    eof,
    von_neumann_entropy,
)
from .dynamics import (
    InitialState,
    IntegrationError,
    IntegratorConfig,
    StepSizeError,
    Trajectory,
    initial_density,
    integrate,
    liouvillian_apply,
)
from .figures import PRESETS, FigurePreset, get_preset
from .reservoir import (
    CorrelationCoefficients,
    QuadratureError,
    ReservoirParams,
    correlation_f,
    correlation_k,
    correlation_kf,
    correlation_quadrature,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CorrelationCoefficients",
    "CorrelationMeasures",
    "EventReport",
    "FigurePreset",
    "InitialState",
    "IntegrationError",
    "IntegratorConfig",
    "MeasureSeries",
    "MeasurementBasis",
    "NonXStateError",
    "PRESETS",
    "QuadratureError",
    "ReservoirParams",
    "RunConfig",
    "RunResult",
    "StepSizeError",
    "Trajectory",
    "binary_entropy",
    "concurrence_general",
    "concurrence_x",
    "correlation_f",
    "correlation_k",
    "correlation_kf",
    "correlation_quadrature",
    "detect_crossing",
    "detect_esd",
    "discord_oracle",
    "discord_x",
    "eof",
    "event_report",
    "get_preset",
    "initial_density",
    "integrate",
    "liouvillian_apply",
    "measure_series",
    "parse_config",
    "run_config",
    "sweep",
    "von_neumann_entropy",
]
