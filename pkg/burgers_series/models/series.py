import math
from dataclasses import dataclass, field
import numpy as np
from burgers_series import constants
from burgers_series.exceptions import ValidationError


@dataclass(frozen=True)
class SolverConfig:
    """
    Viscosity and truncation order of a partial sum U_N.

    :ivar nu: Viscosity, strictly positive.
    :ivar order: Number of series terms N, at least one.
    """
    nu: float
    order: int = constants.DEFAULT_ORDER

    def __post_init__(self):
        if not (self.nu > 0 and math.isfinite(self.nu)):
            raise ValidationError(f"nu must be a positive finite number, got {self.nu}")
        if int(self.order) != self.order or self.order < 1:
            raise ValidationError(f"order must be an integer >= 1, got {self.order}")


@dataclass(frozen=True)
class EvalPoint:
    x: float
    t: float

    def __post_init__(self):
        if not self.t >= 0:
            raise ValidationError(f"t must be >= 0, got {self.t}")


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Node counts and tolerance for the Green's-function integrals.

    :ivar hermite_nodes: Gauss-Hermite order of the spatial convolution.
    :ivar time_nodes: Gauss-Legendre order of the time integral.
    :ivar sub_tol: Target absolute tolerance of every term.
    """
    hermite_nodes: int = constants.HERMITE_NODES
    time_nodes: int = constants.TIME_NODES
    sub_tol: float = constants.SUB_TOL

    def __post_init__(self):
        if self.hermite_nodes < constants.MIN_HERMITE_NODES:
            raise ValidationError(f"hermite_nodes must be >= {constants.MIN_HERMITE_NODES}")
        if self.time_nodes < constants.MIN_TIME_NODES:
            raise ValidationError(f"time_nodes must be >= {constants.MIN_TIME_NODES}")
        if not self.sub_tol > 0:
            raise ValidationError("sub_tol must be positive")


@dataclass(frozen=True)
class ColeHopfSpec:
    """
    Integration window and tolerance of the Cole-Hopf quadrature.

    The window is ``[x - R*sqrt(4*nu*t), x + R*sqrt(4*nu*t)]`` with
    ``R = truncation_radius``.
    """
    truncation_radius: float = constants.TRUNCATION_RADIUS
    tol: float = constants.COLE_HOPF_TOL
    max_subdivisions: int = constants.MAX_SUBDIVISIONS

    def __post_init__(self):
        if self.truncation_radius < constants.MIN_TRUNCATION_RADIUS:
            raise ValidationError(
                f"truncation_radius must be >= {constants.MIN_TRUNCATION_RADIUS}"
            )
        if not self.tol > 0:
            raise ValidationError("tol must be positive")
        if self.max_subdivisions < 1:
            raise ValidationError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class HeatKernelParams:
    nu: float
    x: float
    t: float
    x0: float
    t0: float

    def __post_init__(self):
        if not self.nu > 0:
            raise ValidationError(f"nu must be positive, got {self.nu}")


@dataclass(frozen=True)
class DomainSpec:
    """
    Rectangular sampling of Λ = [x_min, x_max] x [t_min, t_max].

    A degenerate time range (``t_min == t_max``) is accepted and sampled with a
    single time level.
    """
    x_min: float = constants.DOMAIN_X_MIN
    x_max: float = constants.DOMAIN_X_MAX
    t_min: float = constants.DOMAIN_T_MIN
    t_max: float = constants.DOMAIN_T_MAX
    nx: int = constants.DOMAIN_NX
    nt: int = constants.DOMAIN_NT

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValidationError("x_min must be smaller than x_max")
        if not 0 <= self.t_min <= self.t_max:
            raise ValidationError("time range must satisfy 0 <= t_min <= t_max")
        if self.nx < 2 or self.nt < 1:
            raise ValidationError("domain needs nx >= 2 and nt >= 1")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ts(self) -> np.ndarray:
        if self.t_min == self.t_max:
            return np.array([self.t_min])
        return np.linspace(self.t_min, self.t_max, self.nt)

    def refined(self) -> "DomainSpec":
        """Same domain with twice the node spacing resolution."""
        return DomainSpec(
            self.x_min, self.x_max, self.t_min, self.t_max,
            2 * self.nx - 1, max(2 * self.nt - 1, 1)
        )


@dataclass(frozen=True)
class ErrorRecord:
    """
    One cell of an error sweep.

    ``flagged`` marks cells where the partial sum blew up or the reference
    could not be evaluated; their ``sup_error`` may be ``inf``.
    """
    order: int
    nu: float
    sup_error: float
    flagged: bool = field(default=False)
