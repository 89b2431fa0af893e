"""
Independent solutions of the viscous Burgers equation for the complex
initial condition u(x, 0) = exp(ix).

``cole_hopf`` linearizes the problem with the Cole-Hopf transformation. The
inner integral of the initial condition is taken in closed form,
integral_0^x0 exp(ix') dx' = -i (exp(ix0) - 1), and the outer heat-kernel
integrals are computed with adaptive Gauss-Kronrod quadrature after the
substitution x0 = x + 2 sqrt(nu t) u.

``fd_solve`` is a pseudo-spectral time stepper (integrating factor for the
diffusion, classical RK4 for the nonlinear term) that makes no use of the
transformation at all.
"""
import math
import warnings
from typing import Optional, Sequence
import numpy as np
from scipy.integrate import IntegrationWarning, quad_vec
from burgers_series.constants import RK4_IMAG_LIMIT, SINGULAR_DENOMINATOR, TWO_PI
from burgers_series.exceptions import (
    AccuracyError,
    BlowUpError,
    DomainError,
    NearSingularError,
    ValidationError,
)
from burgers_series.models.grid import GridField
from burgers_series.models.series import ColeHopfSpec
from burgers_series.utils.helpers import get_logger

logger = get_logger("reference")


def _check_nu(nu: float) -> None:
    if not (nu > 0 and math.isfinite(nu)):
        raise ValidationError(f"nu must be a positive finite number, got {nu}")


def cole_hopf_row(nu: float, xs, t: float, spec: ColeHopfSpec = ColeHopfSpec()) -> np.ndarray:
    """
    Cole-Hopf solution at every x of ``xs`` on one time level.

    Both integrands are divided by the constant exp((i/2nu)(exp(ix) - 1)),
    which cancels in the ratio and keeps them of order one. The numerator
    uses u (w - exp(-u^2)), whose extra term integrates to zero, so the
    leading cancellation is removed analytically.

    :param nu: Viscosity.
    :param xs: Abscissae; a scalar is accepted.
    :param t: Time, ``t >= 0``. At ``t == 0`` the initial condition is returned.
    :param spec: Truncation radius, relative tolerance and subdivision limit.
    :return: Complex array shaped like ``xs``.
    :raises NearSingularError: If the denominator magnitude drops below 1e-14.
    :raises AccuracyError: If the quadrature error estimate exceeds ``spec.tol``.
    """
    _check_nu(nu)
    if not t >= 0:
        raise DomainError(f"t must be >= 0, got {t}")
    xs = np.asarray(xs, dtype=float)
    shape = xs.shape
    xs = np.atleast_1d(xs)
    if t == 0:
        return np.exp(1j * xs).reshape(shape)

    spread = 2.0 * math.sqrt(nu * t)
    origin = np.exp(1j * xs)
    scale = 0.5j / nu
    nx = len(xs)

    def integrand(u: float) -> np.ndarray:
        gauss = math.exp(-u * u)
        excess = gauss * np.expm1(scale * (np.exp(1j * (xs + spread * u)) - origin))
        numerator = u * excess
        denominator = gauss + excess
        return np.concatenate((numerator.real, numerator.imag, denominator.real, denominator.imag))

    radius = spec.truncation_radius
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        result, error = quad_vec(
            integrand, -radius, radius,
            epsrel=spec.tol, epsabs=0.0, norm="max", limit=spec.max_subdivisions
        )
    numerator = result[:nx] + 1j * result[nx:2 * nx]
    denominator = result[2 * nx:3 * nx] + 1j * result[3 * nx:]

    weakest = int(np.argmin(np.abs(denominator)))
    if abs(denominator[weakest]) < SINGULAR_DENOMINATOR:
        raise NearSingularError(
            f"Cole-Hopf denominator {abs(denominator[weakest]):.2e} at x={xs[weakest]:.4f}, t={t}",
            location=(float(xs[weakest]), float(t)),
            estimate=float(abs(denominator[weakest]))
        )
    achieved = spec.tol * float(np.max(np.abs(result)))
    if error > achieved:
        raise AccuracyError(
            f"Cole-Hopf quadrature error {error:.2e} above {achieved:.2e} at t={t}",
            location=(float(xs[0]), float(t)),
            estimate=float(error)
        )
    return ((-spread / t) * numerator / denominator).reshape(shape)


def cole_hopf(nu: float, x: float, t: float, spec: ColeHopfSpec = ColeHopfSpec()) -> complex:
    """Cole-Hopf solution at a single point; see :func:`cole_hopf_row`."""
    return complex(cole_hopf_row(nu, float(x), t, spec))


def _target_times(t_end: float, outputs: Optional[Sequence[float]]) -> np.ndarray:
    if not t_end >= 0:
        raise ValidationError(f"t_end must be >= 0, got {t_end}")
    targets = np.asarray(outputs if outputs is not None else [t_end], dtype=float)
    if targets.ndim != 1 or len(targets) == 0:
        raise ValidationError("outputs must be a non-empty list of times")
    if np.any(np.diff(targets) <= 0):
        raise ValidationError("outputs must be strictly increasing")
    if targets[0] < 0 or targets[-1] > t_end:
        raise ValidationError(f"outputs must lie in [0, {t_end}]")
    return targets


def fd_solve(
        ic,
        nu: float,
        t_end: float,
        dt: float,
        outputs: Optional[Sequence[float]] = None,
        period: float = TWO_PI,
        nonlinear: bool = True
) -> GridField:
    """
    Advances u_t = nu u_xx - u u_x on the periodic grid x_j = j * period / nx.

    The diffusion is integrated exactly by the factor exp(-nu k^2 t); the
    nonlinear term -(1/2) d(u^2)/dx is advanced with RK4 (Lawson form). Step
    sizes are shortened so every output time is hit exactly.

    Stability is limited by the advective term only:
    ``dt * k_max * max|u0| <= 2.8``, the extent of the RK4 stability region on
    the imaginary axis.

    :param ic: Complex samples of the initial condition, power-of-two length.
    :param nu: Viscosity.
    :param t_end: Final time.
    :param dt: Maximum step.
    :param outputs: Increasing times in ``[0, t_end]``; defaults to ``[t_end]``.
    :param period: Spatial period.
    :param nonlinear: ``False`` drops the nonlinear term (pure heat equation).
    :return: Samples at the output times.
    :raises ValidationError: On a bad grid size or an unstable ``dt``.
    :raises BlowUpError: If non-finite values appear; carries the time reached.
    """
    _check_nu(nu)
    u0 = np.asarray(ic, dtype=complex)
    nx = len(u0)
    if u0.ndim != 1 or nx < 4 or nx & (nx - 1):
        raise ValidationError(f"grid size must be a power of two >= 4, got {nx}")
    if not np.all(np.isfinite(u0)):
        raise ValidationError("initial condition has non-finite samples")
    if not dt > 0:
        raise ValidationError(f"dt must be positive, got {dt}")
    targets = _target_times(t_end, outputs)

    k = 2.0 * np.pi * np.fft.fftfreq(nx, d=period / nx)
    k_max = float(np.max(np.abs(k)))
    amplitude = float(np.max(np.abs(u0)))
    if nonlinear and dt * k_max * amplitude > RK4_IMAG_LIMIT:
        raise ValidationError(
            f"dt={dt} is unstable; need dt <= {RK4_IMAG_LIMIT / (k_max * amplitude):.3e}"
        )

    advect = -0.5j * k
    advect[nx // 2] = 0.0
    if not nonlinear:
        advect[:] = 0.0

    def rhs(spectrum: np.ndarray) -> np.ndarray:
        field = np.fft.ifft(spectrum)
        return advect * np.fft.fft(field * field)

    xs = np.arange(nx) * (period / nx)
    values = np.zeros((len(targets), nx), dtype=complex)
    spectrum = np.fft.fft(u0)
    now = 0.0
    steps = 0
    for level, target in enumerate(targets):
        span = target - now
        count = int(math.ceil(span / dt - 1e-12)) if span > 0 else 0
        if count:
            h = span / count
            half = np.exp(-nu * k * k * h / 2.0)
            full = half * half
            for step in range(count):
                a = h * rhs(spectrum)
                b = h * rhs(half * (spectrum + a / 2.0))
                c = h * rhs(half * spectrum + b / 2.0)
                d = h * rhs(full * spectrum + half * c)
                spectrum = full * spectrum + (full * a + 2.0 * half * (b + c) + d) / 6.0
                if not np.all(np.isfinite(spectrum)):
                    failed = now + (step + 1) * h
                    logger.warning("fd solution blew up at t=%.6g", failed)
                    raise BlowUpError(f"non-finite values at t={failed:.6g}", failed)
            steps += count
        now = target
        values[level] = np.fft.ifft(spectrum)
    logger.debug("fd solve finished after %d steps", steps)
    return GridField(xs, targets, values, period)
