from burgers_series.models.grid import GridField, chebyshev_levels
from burgers_series.models.series import (
    ColeHopfSpec,
    DomainSpec,
    ErrorRecord,
    EvalPoint,
    HeatKernelParams,
    QuadratureSpec,
    SolverConfig,
)

__all__ = [
    "ColeHopfSpec",
    "DomainSpec",
    "ErrorRecord",
    "EvalPoint",
    "GridField",
    "HeatKernelParams",
    "QuadratureSpec",
    "SolverConfig",
    "chebyshev_levels",
]
