"""
Closed-form series solution for the initial condition f(x, 0) = exp(ix).

Every term has the form f_m(x, t) = a_m(t) exp(imx). The coefficient is

    a_m(t) = i^(m-1) / (2^(m-1) nu^(m-1) (m-1)!)
             * sum_k (-1)^(k-1) (k-1)! B_{m,k}(y_1, ..., y_{m-k+1}),

with y_l = exp(-nu t l^2). This is the Bell-polynomial form with arguments
mu_l = exp(l nu t (m - l)) after the prefactor exp(-nu m^2 t) has been moved
inside the polynomial (B_{m,k} is homogeneous of weight m in the argument
index), so no intermediate exceeds the Stirling sums themselves.
"""
import math
import threading
from functools import lru_cache, partial
from math import comb, factorial
from typing import Sequence
import mpmath
import numpy as np
from burgers_series.constants import (
    CANCELLATION_LIMIT,
    DEFAULT_FD_STEP,
    PRECISE_GUARD_DIGITS,
    PRECISE_RETRIES,
    UNDERFLOW_CUTOFF,
)
from burgers_series.core.combinatorics import (
    alternating_stirling_sum,
    bell_row,
    log_factorial,
    weighted_stirling_sum,
)
from burgers_series.core.transform import TruncatedSequence, cauchy_convolve, untag_samples
from burgers_series.exceptions import DomainError, InternalOverflowError, SamplingError
from burgers_series.models.series import EvalPoint, SolverConfig
from burgers_series.utils.helpers import get_logger

logger = get_logger("closed_form")

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


def _check_index(m: int) -> None:
    if int(m) != m or m < 1:
        raise DomainError(f"term index must be a positive integer, got {m}")


def _log_prefactor(m: int, nu: float) -> float:
    return (m - 1) * math.log(2.0 * nu) + log_factorial(m - 1)


def _compensated_sum(parts: Sequence[np.ndarray]) -> np.ndarray:
    """Neumaier summation, element-wise over equally shaped arrays."""
    total = np.zeros_like(parts[0])
    correction = np.zeros_like(parts[0])
    for part in parts:
        updated = total + part
        correction += np.where(
            np.abs(total) >= np.abs(part),
            (total - updated) + part,
            (part - updated) + total,
        )
        total = updated
    return total + correction


_precise = threading.local()


def _mp_context() -> mpmath.MPContext:
    """One extended-precision context per thread."""
    ctx = getattr(_precise, "ctx", None)
    if ctx is None:
        ctx = _precise.ctx = mpmath.MPContext()
    return ctx


@lru_cache(maxsize=16384)
def _precise_weight(m: int, nu: float, t: float, digits: int) -> float:
    """
    Alternating Bell sum sum_k (-1)^(k-1) (k-1)! B_{m,k}(y) in extended precision.

    The sum is the m-th cumulant of the moments y_l = exp(-nu t l^2), which the
    recursion kappa_n = y_n - sum_j C(n-1, j-1) kappa_j y_{n-j} produces in
    O(m^2) operations. ``digits`` is the decimal magnitude of the largest part
    of the double precision sum. The working precision grows until the result
    keeps ``PRECISE_GUARD_DIGITS`` significant digits.
    """
    ctx = _mp_context()
    dps = max(digits, 0) + 2 * PRECISE_GUARD_DIGITS
    result = ctx.zero
    for _ in range(PRECISE_RETRIES):
        ctx.dps = dps
        rate = ctx.mpf(nu) * ctx.mpf(t)
        ys = [ctx.exp(-rate * (l * l)) for l in range(1, m + 1)]
        cumulants = []
        for n in range(1, m + 1):
            value = ys[n - 1]
            for j in range(1, n):
                value -= comb(n - 1, j - 1) * cumulants[j - 1] * ys[n - j - 1]
            cumulants.append(value)
        result = cumulants[-1]
        if result == 0:
            lost = dps
        else:
            lost = digits - int(ctx.floor(ctx.log10(abs(result))))
        if lost + PRECISE_GUARD_DIGITS <= dps:
            return float(result)
        dps = max(lost, dps) + 2 * PRECISE_GUARD_DIGITS
    logger.warning("term %d at t=%g kept fewer than %d digits", m, t, PRECISE_GUARD_DIGITS)
    return float(result)


def term_coefficient(m: int, cfg: SolverConfig, ts) -> np.ndarray:
    """
    Time coefficient a_m(t) of the m-th term, vectorized over ``ts``.

    At ``t == 0`` the Bell sum is replaced by its exact integer value, so
    every term with ``m >= 2`` vanishes exactly there. Close to ``t = 0`` the
    parts of the sum nearly cancel; wherever more than ``CANCELLATION_LIMIT``
    is lost the sum is redone in extended precision.

    :raises InternalOverflowError: If a coefficient is not finite.
    """
    _check_index(m)
    ts = np.asarray(ts, dtype=float)
    shape = ts.shape
    ts = np.atleast_1d(ts)
    nu = cfg.nu
    try:
        ys = [np.exp(-nu * ts * (l * l)) for l in range(1, m + 1)]
        row = bell_row(m, ys)
        parts = [((-1) ** (k - 1) * float(factorial(k - 1))) * row[k - 1] for k in range(1, m + 1)]
        weighted = _compensated_sum(parts)
        scale = sum(np.abs(part) for part in parts)
        magnitude = math.exp(-_log_prefactor(m, nu))
    except OverflowError as exc:
        raise InternalOverflowError(f"term {m} overflows double precision", m) from exc

    cancelled = (ts > 0) & (scale > CANCELLATION_LIMIT * np.abs(weighted))
    for index in np.flatnonzero(cancelled):
        digits = math.ceil(math.log10(scale[index]))
        weighted[index] = _precise_weight(m, nu, float(ts[index]), digits)

    at_origin = ts == 0.0
    if np.any(at_origin):
        weighted = np.where(at_origin, float(alternating_stirling_sum(m)), weighted)
    coefficient = _I_POWERS[(m - 1) % 4] * magnitude * weighted
    if not np.all(np.isfinite(coefficient)):
        raise InternalOverflowError(f"term {m} is not finite", m)
    return coefficient.reshape(shape)


def term(m: int, cfg: SolverConfig, p: EvalPoint) -> complex:
    """
    The m-th series term f_m(x, t).

    :param m: Term index, ``m >= 1``.
    :param cfg: Viscosity (the truncation order is not used).
    :param p: Evaluation point on the real line.
    :rtype: complex
    """
    coefficient = term_coefficient(m, cfg, p.t)
    return complex(coefficient * np.exp(1j * m * p.x))


def term_field(m: int, cfg: SolverConfig, xs, ts) -> np.ndarray:
    """f_m sampled on the grid ``ts x xs``; shape ``(len(ts), len(xs))``."""
    coefficient = term_coefficient(m, cfg, np.atleast_1d(ts))
    return np.multiply.outer(coefficient, np.exp(1j * m * np.asarray(xs, dtype=float)))


def series_coefficients(cfg: SolverConfig, ts) -> np.ndarray:
    """
    Coefficients a_1 .. a_N at every time in ``ts``; shape ``(N, len(ts))``.

    Once a whole coefficient row falls below the underflow cutoff the
    remaining rows are left at zero.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    coefficients = np.zeros((cfg.order, len(ts)), dtype=complex)
    for m in range(1, cfg.order + 1):
        coefficients[m - 1] = term_coefficient(m, cfg, ts)
        if np.all(np.abs(coefficients[m - 1]) < UNDERFLOW_CUTOFF):
            logger.debug("series short-circuited after term %d", m)
            break
    return coefficients


def partial_sum(cfg: SolverConfig, p: EvalPoint) -> complex:
    """
    U_N(x, t) = sum_{m=1}^N f_m(x, t).

    Summation stops at the first term whose magnitude is below 1e-300.
    """
    total = 0j
    for m in range(1, cfg.order + 1):
        value = term(m, cfg, p)
        if abs(value) < UNDERFLOW_CUTOFF:
            break
        total += value
    return total


def partial_sum_field(cfg: SolverConfig, xs, ts) -> np.ndarray:
    """U_N sampled on ``ts x xs``; shape ``(len(ts), len(xs))``."""
    coefficients = series_coefficients(cfg, ts)
    ms = np.arange(1, cfg.order + 1)
    modes = np.exp(1j * np.multiply.outer(ms, np.asarray(xs, dtype=float)))
    return coefficients.T @ modes


def _log_bound(m: int, nu: float, t: float) -> float:
    return -nu * m * t + math.log(weighted_stirling_sum(m)) - _log_prefactor(m, nu)


def term_bound(m: int, cfg: SolverConfig, t: float) -> float:
    """
    Majorant exp(-nu m t) S(m) / (2^(m-1) nu^(m-1) (m-1)!) of |f_m(x, t)|.

    S(m) is the exact weighted Stirling sum; the product is formed in log
    space.
    """
    _check_index(m)
    return math.exp(_log_bound(m, cfg.nu, t))


def bound_ratio(m: int, cfg: SolverConfig, t: float) -> float:
    """term_bound(m + 1) / term_bound(m); tends to r exp(-nu t) / (2 nu)."""
    _check_index(m)
    return math.exp(_log_bound(m + 1, cfg.nu, t) - _log_bound(m, cfg.nu, t))


def _time_stencil(t: float, h: float):
    """Times and weights of a second-order first derivative at ``t``."""
    if t >= h:
        return np.array([t - h, t + h]), np.array([-1.0, 1.0]) / (2.0 * h)
    return np.array([t, t + h, t + 2.0 * h]), np.array([-3.0, 4.0, -1.0]) / (2.0 * h)


def residual(cfg: SolverConfig, p: EvalPoint, h: float = DEFAULT_FD_STEP) -> complex:
    """
    Burgers operator A[U_N] = dU/dt - nu d2U/dx2 + U dU/dx at ``p``.

    x-derivatives are exact (each term is proportional to exp(imx)); the time
    derivative is a central difference of step ``h`` (second-order one-sided
    when ``t < h``).
    """
    ms = np.arange(1, cfg.order + 1)
    phase = np.exp(1j * ms * p.x)
    stencil_times, weights = _time_stencil(p.t, h)
    coefficients = series_coefficients(cfg, np.concatenate(([p.t], stencil_times)))
    now = coefficients[:, 0] * phase
    value = now.sum()
    dx = (1j * ms * now).sum()
    dxx = (-(ms ** 2) * now).sum()
    dt = (weights @ (coefficients[:, 1:].T @ phase))
    return complex(dt - cfg.nu * dxx + value * dx)


def closed_form_sequence(cfg: SolverConfig) -> TruncatedSequence:
    """f_1 .. f_N as a truncated sequence of point evaluators."""
    return TruncatedSequence([partial(_term_at, m, cfg) for m in range(1, cfg.order + 1)])


def derivative_sequence(cfg: SolverConfig) -> TruncatedSequence:
    """x-derivatives d f_m / dx = i m f_m as a truncated sequence."""
    return TruncatedSequence([partial(_term_dx_at, m, cfg) for m in range(1, cfg.order + 1)])


def _term_at(m: int, cfg: SolverConfig, x: float, t: float) -> complex:
    return term(m, cfg, EvalPoint(x, t))


def _term_dx_at(m: int, cfg: SolverConfig, x: float, t: float) -> complex:
    return 1j * m * term(m, cfg, EvalPoint(x, t))


def term_recursion_residual(
        m: int,
        cfg: SolverConfig,
        p: EvalPoint,
        h: float = DEFAULT_FD_STEP
) -> complex:
    """
    Residual of the linear diffusion equation satisfied by f_m:

        d f_m/dt - nu d2 f_m/dx2 + sum_{l=1}^{m-1} f_l d f_{m-l}/dx.

    The source is the Cauchy product of the terms with their x-derivatives.
    """
    _check_index(m)
    stencil_times, weights = _time_stencil(p.t, h)
    coefficients = term_coefficient(m, cfg, np.concatenate(([p.t], stencil_times)))
    phase = np.exp(1j * m * p.x)
    dt = weights @ coefficients[1:] * phase
    diffusion = cfg.nu * m * m * coefficients[0] * phase
    source = 0j
    if m >= 2:
        prior = SolverConfig(cfg.nu, m - 1)
        source = cauchy_convolve(
            closed_form_sequence(prior), derivative_sequence(prior), m, (p.x, p.t)
        )
    return complex(dt + diffusion + source)


def tagged_residual(
        cfg: SolverConfig,
        p: EvalPoint,
        m: int,
        s_nodes: int,
        h: float = DEFAULT_FD_STEP
) -> complex:
    """
    Applies the Burgers operator to the tagged series sum_n f_n exp(ins) and
    un-tags the m-th element.

    For ``m <= N`` the result is the residual of the m-th linear recursion, the
    nonlinear product having been split by the Cauchy product in ``s``.

    :raises SamplingError: If ``s_nodes < 4 * N``.
    """
    _check_index(m)
    if s_nodes < 4 * cfg.order:
        raise SamplingError(f"tagged residual needs at least {4 * cfg.order} s-nodes")
    ms = np.arange(1, cfg.order + 1)
    s = -math.pi + 2.0 * math.pi * np.arange(s_nodes) / s_nodes
    tags = np.exp(1j * np.multiply.outer(s, ms))
    stencil_times, weights = _time_stencil(p.t, h)
    coefficients = series_coefficients(cfg, np.concatenate(([p.t], stencil_times)))
    phase = np.exp(1j * ms * p.x)
    now = coefficients[:, 0] * phase
    tagged = tags @ now
    tagged_dx = tags @ (1j * ms * now)
    tagged_dxx = tags @ (-(ms ** 2) * now)
    tagged_dt = tags @ ((coefficients[:, 1:] @ weights) * phase)
    operator = tagged_dt - cfg.nu * tagged_dxx + tagged * tagged_dx
    return untag_samples(operator, s, m)
