"""
Recursive Green's-function solution for an arbitrary initial condition.

f_1 carries the initial data (heat-kernel convolution of the IC); every
f_m with m >= 2 is the Duhamel integral of the nonlinear source
sum_{l=1}^{m-1} f_l d f_{m-l}/dx against the free-space heat kernel.

Two backends evaluate the spatial convolution of a sampled source:

``spectral``
    each Fourier mode of the source is damped by exp(-nu k^2 (t - t0)),
    the exact heat propagator on a periodic grid;
``hermite``
    Gauss-Hermite quadrature after x0 = x + 2 sqrt(nu (t - t0)) u, with the
    source evaluated off-grid through its trigonometric interpolant.

The time integral uses t0 = t - sigma^2 followed by Gauss-Legendre in sigma;
an embedded rule with half the nodes provides the error estimate.
"""
import math
import warnings
from dataclasses import dataclass
from typing import Callable, List, Tuple
import numpy as np
from scipy.special import roots_hermite, roots_legendre
from burgers_series.exceptions import (
    AccuracyError,
    DependencyError,
    DomainError,
    NearSingularKernelWarning,
    ValidationError,
)
from burgers_series.models.grid import GridField
from burgers_series.models.series import EvalPoint, HeatKernelParams, QuadratureSpec
from burgers_series.utils.helpers import get_logger

logger = get_logger("greens_engine")

InitialCondition = Callable[[np.ndarray], np.ndarray]

BACKENDS = ("spectral", "hermite")


@dataclass
class RecursionResult:
    """Terms f_1 .. f_N on a common grid and their partial sum."""
    terms: List[GridField]
    partial_sum: GridField


def heat_kernel(params: HeatKernelParams) -> float:
    """
    Free-space heat kernel G(x, t; x0, t0).

    Returns 0 for ``t <= t0``; at ``t == t0`` a
    :class:`NearSingularKernelWarning` is issued since callers must handle the
    delta limit themselves.
    """
    elapsed = params.t - params.t0
    if elapsed < 0:
        return 0.0
    if elapsed == 0:
        warnings.warn(
            f"heat kernel evaluated at t == t0 = {params.t0}",
            NearSingularKernelWarning,
            stacklevel=2
        )
        return 0.0
    spread = 4.0 * params.nu * elapsed
    return math.exp(-(params.x - params.x0) ** 2 / spread) / math.sqrt(math.pi * spread)


def _hermite_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    u, w = roots_hermite(nodes)
    return u, w / math.sqrt(math.pi)


def sampled_ic(xs: np.ndarray, values: np.ndarray) -> InitialCondition:
    """
    Periodic initial condition from uniform samples over one period.

    Off-node values come from the trigonometric interpolant (Nyquist mode as a
    cosine), so the result can be fed to the Gauss-Hermite backend.
    """
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=complex)
    nx = len(xs)
    if nx < 4 or len(values) != nx:
        raise ValidationError("a sampled initial condition needs >= 4 matching samples")
    period = (xs[1] - xs[0]) * nx
    k = 2.0 * np.pi * np.fft.fftfreq(nx, d=period / nx)
    coefficients = np.fft.fft(values) / nx

    def ic(x):
        phase = np.multiply.outer(np.asarray(x, dtype=float) - xs[0], k)
        modes = np.exp(1j * phase)
        if nx % 2 == 0:
            modes[..., nx // 2] = np.cos(phase[..., nx // 2])
        return modes @ coefficients

    return ic


def first_term(ic: InitialCondition, nu: float, p: EvalPoint, q: QuadratureSpec):
    """
    f_1(x, t) = integral G(x, t; x0, 0) ic(x0) dx0 by Gauss-Hermite.

    ``p.x`` may be an array; the result then has the same shape. A rule with
    half the nodes provides the error estimate.

    :raises ValidationError: If ``ic`` returns a non-finite sample.
    :raises AccuracyError: If the estimate exceeds ``q.sub_tol``; the error
        carries the worst ``(x, t)``.
    """
    if not nu > 0:
        raise ValidationError(f"nu must be positive, got {nu}")
    x = np.asarray(p.x, dtype=float)
    if p.t == 0:
        samples = np.asarray(ic(x), dtype=complex)
        if not np.all(np.isfinite(samples)):
            raise ValidationError("initial condition returned a non-finite sample")
        return samples if samples.ndim else complex(samples)
    fine = _hermite_convolution(ic, nu, x, p.t, q.hermite_nodes)
    coarse = _hermite_convolution(ic, nu, x, p.t, q.hermite_nodes // 2)
    estimate = np.atleast_1d(np.abs(fine - coarse))
    worst = int(np.argmax(estimate))
    if estimate[worst] > q.sub_tol:
        location = (float(np.atleast_1d(x)[worst]), float(p.t))
        raise AccuracyError(
            f"first term: estimated quadrature error {estimate[worst]:.3e} exceeds "
            f"{q.sub_tol:.1e} at x={location[0]:.4f}, t={location[1]:.4f}",
            location=location,
            estimate=float(estimate[worst])
        )
    return fine if np.ndim(fine) else complex(fine)


def _hermite_convolution(ic: InitialCondition, nu: float, x: np.ndarray, t: float, nodes: int):
    u, w = _hermite_rule(nodes)
    samples = np.asarray(ic(x[..., None] + 2.0 * math.sqrt(nu * t) * u), dtype=complex)
    if not np.all(np.isfinite(samples)):
        raise ValidationError("initial condition returned a non-finite sample")
    return samples @ w


def first_term_field(
        ic: InitialCondition,
        nu: float,
        grid: GridField,
        q: QuadratureSpec,
        backend: str = "spectral"
) -> GridField:
    """f_1 on every node of ``grid``."""
    _check_backend(backend)
    if backend == "hermite":
        values = np.array([first_term(ic, nu, EvalPoint(grid.xs, t), q) for t in grid.ts])
        return grid.with_values(values)
    samples = np.asarray(ic(grid.xs), dtype=complex)
    if not np.all(np.isfinite(samples)):
        raise ValidationError("initial condition returned a non-finite sample")
    k = grid.wavenumbers()
    damping = np.exp(-nu * np.multiply.outer(grid.ts, k ** 2))
    values = np.fft.ifft(damping * np.fft.fft(samples), axis=1)
    return grid.with_values(values)


def source_field(terms: List[GridField], m: int) -> np.ndarray:
    """
    sum_{l=1}^{m-1} f_l d f_{m-l}/dx on the common grid of ``terms``.

    :raises DependencyError: If fewer than ``m - 1`` terms are supplied.
    """
    if int(m) != m or m < 2:
        raise DomainError(f"the source is defined for m >= 2, got {m}")
    if len(terms) < m - 1:
        raise DependencyError(f"source of term {m} needs terms 1..{m - 1}, got {len(terms)}")
    derivatives = [f.x_derivative() for f in terms[:m - 1]]
    total = np.zeros(terms[0].shape, dtype=complex)
    for l in range(1, m):
        total += terms[l - 1].values * derivatives[m - l - 1]
    return total


def source(terms: List[GridField], m: int, node: Tuple[int, int]) -> complex:
    """Source of term ``m`` at ``node = (x_index, t_level)``."""
    x_index, level = node
    return complex(source_field(terms, m)[level, x_index])


def _check_backend(backend: str) -> None:
    if backend not in BACKENDS:
        raise ValidationError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def _propagator(backend: str, k: np.ndarray, nu: float, sigma: np.ndarray, q: QuadratureSpec) -> np.ndarray:
    """Per-mode action of the spatial convolution after elapsed time sigma^2."""
    if backend == "spectral":
        return np.exp(-nu * np.multiply.outer(sigma ** 2, k ** 2))
    u, w = _hermite_rule(q.hermite_nodes)
    shifts = 2.0 * math.sqrt(nu) * np.multiply.outer(sigma, u)
    return np.exp(1j * np.multiply.outer(shifts, k)).transpose(0, 2, 1) @ w


def _duhamel(
        interpolant: Callable,
        k: np.ndarray,
        nu: float,
        t: float,
        nodes: int,
        backend: str,
        q: QuadratureSpec
) -> np.ndarray:
    """-integral_0^t (propagated source) dt0 in Fourier space, sigma substitution."""
    z, w = roots_legendre(nodes)
    half = 0.5 * math.sqrt(t)
    sigma = half * (z + 1.0)
    weights = half * w * 2.0 * sigma
    modes = interpolant(t - sigma ** 2)
    return -(weights[:, None] * _propagator(backend, k, nu, sigma, q) * modes).sum(axis=0)


def next_term(
        m: int,
        prior: List[GridField],
        nu: float,
        grid: GridField,
        q: QuadratureSpec,
        backend: str = "spectral"
) -> GridField:
    """
    f_m(x, t) = -integral_0^t integral G(x, t; x0, t0) source(x0, t0) dx0 dt0.

    :param m: Term index, ``m >= 2``.
    :param prior: Terms f_1 .. f_{m-1} on ``grid``.
    :param nu: Viscosity.
    :param grid: Periodic grid template.
    :param q: Quadrature orders and tolerance.
    :param backend: ``"spectral"`` or ``"hermite"``.
    :raises AccuracyError: If the embedded error estimate exceeds ``q.sub_tol``
        anywhere; the error carries the worst node.
    """
    _check_backend(backend)
    if not nu > 0:
        raise ValidationError(f"nu must be positive, got {nu}")
    spectrum = np.fft.fft(source_field(prior, m), axis=1)
    interpolant = grid.with_values(spectrum).time_interpolant()
    k = grid.wavenumbers()

    values = np.zeros(grid.shape, dtype=complex)
    estimate = np.zeros(grid.shape)
    for level, t in enumerate(grid.ts):
        if t == 0:
            continue
        fine = _duhamel(interpolant, k, nu, t, q.time_nodes, backend, q)
        coarse = _duhamel(interpolant, k, nu, t, q.time_nodes // 2, backend, q)
        values[level] = np.fft.ifft(fine)
        estimate[level] = np.abs(np.fft.ifft(fine - coarse))

    worst = np.unravel_index(int(np.argmax(estimate)), estimate.shape)
    if estimate[worst] > q.sub_tol:
        location = (float(grid.xs[worst[1]]), float(grid.ts[worst[0]]))
        raise AccuracyError(
            f"term {m}: estimated quadrature error {estimate[worst]:.3e} exceeds "
            f"{q.sub_tol:.1e} at x={location[0]:.4f}, t={location[1]:.4f}",
            location=location,
            estimate=float(estimate[worst])
        )
    logger.debug("term %d done, worst estimate %.3e", m, estimate[worst])
    return grid.with_values(values)


def recurse(
        ic: InitialCondition,
        nu: float,
        grid: GridField,
        order: int,
        q: QuadratureSpec,
        backend: str = "spectral"
) -> RecursionResult:
    """
    Builds f_1 .. f_N and their partial sum on ``grid``.

    :raises AccuracyError: Propagated from :func:`next_term`.
    """
    if int(order) != order or order < 1:
        raise ValidationError(f"order must be an integer >= 1, got {order}")
    if grid.period is None:
        raise ValidationError("the Green's engine needs a periodic grid")
    terms = [first_term_field(ic, nu, grid, q, backend)]
    logger.info("f_1 ready (%s backend)", backend)
    for m in range(2, order + 1):
        terms.append(next_term(m, terms, nu, grid, q, backend))
        logger.info("f_%d ready", m)
    total = np.sum([f.values for f in terms], axis=0)
    return RecursionResult(terms, grid.with_values(total))


def recursion_residual(terms: List[GridField], m: int, nu: float, h: float = 1e-4) -> np.ndarray:
    """
    Residual of d f_m/dt - nu d2 f_m/dx2 + source_m on interior time levels.

    The time derivative is a central difference of the time interpolant, the
    x-derivatives are spectral. Levels closer than ``h`` to either end are
    skipped; the result has shape ``(n_interior, nx)``.
    """
    field = terms[m - 1]
    interpolant = field.time_interpolant()
    inside = (field.ts - h >= field.ts[0]) & (field.ts + h <= field.ts[-1])
    ts = field.ts[inside]
    dt = (interpolant(ts + h) - interpolant(ts - h)) / (2.0 * h)
    dxx = field.x_derivative(2)[inside]
    forcing = source_field(terms, m)[inside] if m >= 2 else 0.0
    return dt - nu * dxx + forcing
