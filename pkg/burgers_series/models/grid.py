from dataclasses import dataclass
from typing import Callable, Optional
import numpy as np
from scipy.interpolate import BarycentricInterpolator, CubicSpline
from burgers_series import constants
from burgers_series.exceptions import DomainError, ValidationError


def chebyshev_levels(nt: int, t_max: float) -> np.ndarray:
    """
    Chebyshev-Lobatto time levels on ``[0, t_max]`` in increasing order.

    :param nt: Number of levels, at least two.
    :param t_max: Final time.
    :return: Array of ``nt`` levels, the first being exactly 0 and the last
        exactly ``t_max``.
    :rtype: np.ndarray
    """
    if nt < 2:
        raise ValidationError("Chebyshev levels need nt >= 2")
    j = np.arange(nt)
    levels = 0.5 * t_max * (1.0 - np.cos(np.pi * j / (nt - 1)))
    levels[0], levels[-1] = 0.0, t_max
    return levels


def _is_chebyshev(ts: np.ndarray) -> bool:
    if len(ts) < 3 or ts[0] != 0.0:
        return False
    return bool(np.allclose(ts, chebyshev_levels(len(ts), ts[-1]), rtol=0, atol=1e-12 * ts[-1]))


class _ComplexInterpolant:
    """Interpolates real and imaginary parts along the time axis."""

    def __init__(self, ts: np.ndarray, values: np.ndarray, factory: Callable):
        self._real = factory(ts, values.real)
        self._imag = factory(ts, values.imag)

    def __call__(self, t) -> np.ndarray:
        return self._real(t) + 1j * self._imag(t)


@dataclass
class GridField:
    """
    Complex samples on a rectangular (x, t) grid.

    ``values[n, j]`` is the sample at ``(xs[j], ts[n])``. When ``period`` is
    set, ``xs`` must be the uniform nodes of one period ``[x0, x0 + period)``
    and x-derivatives are taken spectrally.
    """
    xs: np.ndarray
    ts: np.ndarray
    values: np.ndarray
    period: Optional[float] = None

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=float)
        self.ts = np.asarray(self.ts, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (len(self.ts), len(self.xs)):
            raise DomainError(
                f"values shape {self.values.shape} does not match grid "
                f"({len(self.ts)}, {len(self.xs)})"
            )
        if len(self.xs) > 1:
            steps = np.diff(self.xs)
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
                raise DomainError("x nodes must be uniformly spaced")
            if self.period is not None and not np.isclose(steps[0] * len(self.xs), self.period):
                raise DomainError("x nodes must cover exactly one period")
        if len(self.ts) > 1 and np.any(np.diff(self.ts) <= 0):
            raise DomainError("time levels must be strictly increasing")

    @classmethod
    def template(
            cls,
            nx: int = constants.GRID_NX,
            nt: int = constants.GRID_NT,
            t_max: float = constants.GRID_T_MAX,
            period: float = constants.TWO_PI
    ) -> 'GridField':
        """
        Zero field on ``nx`` periodic nodes and ``nt`` Chebyshev-Lobatto levels.
        """
        xs = np.arange(nx) * (period / nx)
        ts = chebyshev_levels(nt, t_max)
        return cls(xs, ts, np.zeros((nt, nx), dtype=complex), period)

    @property
    def shape(self):
        return self.values.shape

    def with_values(self, values: np.ndarray) -> 'GridField':
        return GridField(self.xs, self.ts, values, self.period)

    def same_grid(self, other: 'GridField') -> bool:
        return (
            self.shape == other.shape
            and np.allclose(self.xs, other.xs, rtol=0, atol=1e-12)
            and np.allclose(self.ts, other.ts, rtol=0, atol=1e-12)
        )

    def wavenumbers(self) -> np.ndarray:
        if self.period is None:
            raise DomainError("spectral operations need a periodic grid")
        nx = len(self.xs)
        return 2.0 * np.pi * np.fft.fftfreq(nx, d=self.period / nx)

    def x_derivative(self, order: int = 1) -> np.ndarray:
        """Spectral x-derivative of every time level."""
        k = self.wavenumbers()
        factor = (1j * k) ** order
        if order % 2 == 1 and len(self.xs) % 2 == 0:
            factor[len(self.xs) // 2] = 0.0
        return np.fft.ifft(factor * np.fft.fft(self.values, axis=1), axis=1)

    def time_interpolant(self) -> Callable:
        """
        Returns ``f(t) -> values`` interpolating along the time axis.

        Chebyshev-Lobatto levels use barycentric interpolation, anything else
        a cubic spline.
        """
        if len(self.ts) == 1:
            level = self.values[0]
            return lambda t: np.broadcast_to(level, np.shape(t) + level.shape).copy()
        if _is_chebyshev(self.ts):
            factory = lambda ts, ys: BarycentricInterpolator(ts, ys, axis=0)
        else:
            factory = lambda ts, ys: CubicSpline(ts, ys, axis=0)
        return _ComplexInterpolant(self.ts, self.values, factory)
