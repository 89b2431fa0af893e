"""
Error sweeps against the Cole-Hopf reference and the ratio-test constant.
"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar
import numpy as np
from burgers_series.constants import BLOW_UP_MAGNITUDE, RATIO_M_MAX, RESOLUTION_DRIFT
from burgers_series.core.closed_form import series_coefficients
from burgers_series.core.combinatorics import weighted_stirling_sum
from burgers_series.core.reference import cole_hopf_row
from burgers_series.exceptions import AccuracyError, DomainError, InternalOverflowError
from burgers_series.models.grid import GridField
from burgers_series.models.series import ColeHopfSpec, DomainSpec, ErrorRecord, SolverConfig
from burgers_series.utils.helpers import get_logger

logger = get_logger("analysis")

T = TypeVar("T")
R = TypeVar("R")


def _ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int) -> List[R]:
    """Maps ``func`` over ``items``; results keep the input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def sup_error(a: GridField, b: GridField) -> float:
    """
    max over all nodes of |a - b|.

    :raises DomainError: If the fields are sampled on different grids.
    """
    if not a.same_grid(b):
        raise DomainError(f"grid mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a.values - b.values)))


def reference_field(
        nu: float,
        dom: DomainSpec,
        spec: ColeHopfSpec = ColeHopfSpec(),
        workers: int = 1,
        flag: bool = False
) -> GridField:
    """
    Cole-Hopf solution on the nodes of ``dom``, one quadrature call per level.

    :param flag: When set, a level whose quadrature fails is filled with NaN
        instead of raising.
    :raises AccuracyError: If a level fails and ``flag`` is not set.
    """
    xs = dom.xs

    def level(t: float) -> np.ndarray:
        try:
            return cole_hopf_row(nu, xs, float(t), spec)
        except AccuracyError as exc:
            if not flag:
                raise
            logger.warning("reference failed at nu=%g: %s", nu, exc)
            return np.full(len(xs), np.nan + 0j)

    rows = _ordered_map(level, dom.ts, workers)
    return GridField(xs, dom.ts, np.array(rows))


def series_fields(nu: float, orders: Sequence[int], dom: DomainSpec) -> Dict[int, GridField]:
    """
    Partial sums U_N on ``dom`` for every N in ``orders``.

    The coefficients are computed once for ``max(orders)`` and accumulated.
    """
    orders = sorted(set(int(n) for n in orders))
    if not orders or orders[0] < 1:
        raise DomainError("orders must be positive integers")
    coefficients = series_coefficients(SolverConfig(nu, orders[-1]), dom.ts)
    ms = np.arange(1, orders[-1] + 1)
    modes = np.exp(1j * np.multiply.outer(ms, dom.xs))
    fields = {}
    total = np.zeros((len(dom.ts), len(dom.xs)), dtype=complex)
    for m in ms:
        total = total + np.multiply.outer(coefficients[m - 1], modes[m - 1])
        if m in orders:
            fields[int(m)] = GridField(dom.xs, dom.ts, total)
    return fields


def convergence_threshold(r: float) -> float:
    """Smallest viscosity nu = r/2 for which the series bound converges for all t."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    return r / 2.0


def estimate_r(m_max: int) -> List[Tuple[int, float]]:
    """
    Ratio-test sequence r_m = S(m + 1) / (m S(m)) for m = 1 .. m_max.

    S is the exact weighted Stirling sum; each ratio is formed as a
    ``Fraction`` and only the final value is rounded. r_m settles near
    1.4427 but is not monotone (r_4 < r_5).

    :raises DomainError: Unless ``2 <= m_max <= 300``.
    """
    if int(m_max) != m_max or not 2 <= m_max <= RATIO_M_MAX:
        raise DomainError(f"m_max must be an integer in 2..{RATIO_M_MAX}, got {m_max}")
    return [
        (m, float(Fraction(weighted_stirling_sum(m + 1), m * weighted_stirling_sum(m))))
        for m in range(1, m_max + 1)
    ]


def richardson_limit(rows: Sequence[Tuple[int, float]]) -> float:
    """2 r_m - r_(m/2) for the largest even m available in ``rows``."""
    values = dict(rows)
    m = max(values)
    if m % 2:
        m -= 1
    if m < 2 or m // 2 not in values:
        raise DomainError("Richardson extrapolation needs r_m and r_(m/2)")
    return 2.0 * values[m] - values[m // 2]


@lru_cache(maxsize=1)
def ratio_constant() -> float:
    """Extrapolated ratio-test constant r."""
    return richardson_limit(estimate_r(RATIO_M_MAX))


def sweep_n(
        nu: float,
        n_max: int,
        dom: DomainSpec = DomainSpec(),
        spec: ColeHopfSpec = ColeHopfSpec(),
        workers: int = 1
) -> List[ErrorRecord]:
    """
    sup-norm error of U_N against Cole-Hopf for N = 1 .. n_max.

    :raises AccuracyError: A reference failure propagates with its location.
    """
    if int(n_max) != n_max or n_max < 1:
        raise DomainError(f"n_max must be a positive integer, got {n_max}")
    threshold = convergence_threshold(ratio_constant())
    if nu <= threshold:
        logger.warning("nu=%g is below the convergence threshold %.5f", nu, threshold)
    reference = reference_field(nu, dom, spec, workers)
    fields = series_fields(nu, range(1, n_max + 1), dom)
    records = [ErrorRecord(n, nu, sup_error(reference, fields[n])) for n in range(1, n_max + 1)]
    logger.info("sweep over N done for nu=%g", nu)
    return records


def _cell(reference: GridField, approximation: Optional[GridField], order: int, nu: float) -> ErrorRecord:
    if approximation is None:
        return ErrorRecord(order, nu, float("inf"), True)
    values = approximation.values
    blown = (not np.all(np.isfinite(values))) or np.max(np.abs(values)) > BLOW_UP_MAGNITUDE
    missing = not np.all(np.isfinite(reference.values))
    error = np.abs(reference.values - values)
    finite = error[np.isfinite(error)]
    if blown or finite.size == 0:
        return ErrorRecord(order, nu, float("inf"), True)
    return ErrorRecord(order, nu, float(finite.max()), missing)


def sweep_nu(
        orders: Sequence[int],
        nus: Sequence[float],
        dom: DomainSpec = DomainSpec(),
        spec: ColeHopfSpec = ColeHopfSpec(),
        workers: int = 1
) -> List[ErrorRecord]:
    """
    sup-norm error for every (nu, N) cell, ordered by nu then N.

    Cells never abort the sweep: a partial sum above 1e10 or non-finite, or a
    reference level that could not be evaluated, marks the cell as flagged.
    A flagged cell with no usable node has ``sup_error = inf``.
    """
    orders = [int(n) for n in orders]
    if not orders or min(orders) < 1:
        raise DomainError("orders must be positive integers")
    if any(not nu > 0 for nu in nus):
        raise DomainError("every nu must be positive")

    def column(nu: float) -> List[ErrorRecord]:
        reference = reference_field(nu, dom, spec, flag=True)
        try:
            fields = series_fields(nu, orders, dom)
        except InternalOverflowError as exc:
            logger.warning("series overflow at nu=%g: %s", nu, exc)
            fields = {}
        return [_cell(reference, fields.get(n), n, nu) for n in orders]

    columns = _ordered_map(column, [float(nu) for nu in nus], workers)
    return [record for records in columns for record in records]


def fit_log_slope(records: Sequence[ErrorRecord]) -> Tuple[float, float]:
    """
    Least-squares line through (N, log10 sup_error).

    Records with a zero, non-finite or flagged error are skipped.

    :return: ``(slope, r_squared)``.
    :raises DomainError: If fewer than two usable records remain.
    """
    usable = [r for r in records if not r.flagged and np.isfinite(r.sup_error) and r.sup_error > 0]
    if len(usable) < 2:
        raise DomainError("a slope fit needs at least two usable records")
    orders = np.array([r.order for r in usable], dtype=float)
    logs = np.log10([r.sup_error for r in usable])
    slope, intercept = np.polyfit(orders, logs, 1)
    residuals = logs - (slope * orders + intercept)
    spread = np.sum((logs - logs.mean()) ** 2)
    r_squared = 1.0 - np.sum(residuals ** 2) / spread if spread > 0 else 1.0
    return float(slope), float(r_squared)


def upturn_onset(records: Sequence[ErrorRecord]) -> float:
    """
    Viscosity where the error jumps the most when nu is decreased.

    ``records`` must belong to one order N. Returns the smaller nu of the
    neighbouring pair with the largest drop of log10 error towards larger nu.
    """
    ordered = sorted(records, key=lambda r: r.nu)
    if len(ordered) < 2:
        raise DomainError("upturn detection needs at least two viscosities")
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log10([r.sup_error for r in ordered])
        drops = logs[:-1] - logs[1:]
    drops = np.where(np.isnan(drops), -np.inf, drops)
    return ordered[int(np.argmax(drops))].nu


def resolution_drift(
        nu: float,
        orders: Sequence[int],
        dom: DomainSpec = DomainSpec(),
        spec: ColeHopfSpec = ColeHopfSpec(),
        workers: int = 1
) -> float:
    """
    Largest relative change of the sup-norm error when ``dom`` is refined.

    Every order is evaluated on ``dom`` and on ``dom.refined()``, which keeps
    the original nodes and adds the midpoints. Cells flagged on either grid
    and cells with a zero error on the refined grid are skipped.

    :return: ``max |e_fine - e_coarse| / e_fine``, 0.0 when no cell is usable.
    """
    def errors(grid: DomainSpec) -> List[ErrorRecord]:
        reference = reference_field(nu, grid, spec, workers, flag=True)
        try:
            fields = series_fields(nu, orders, grid)
        except InternalOverflowError as exc:
            logger.warning("series overflow at nu=%g: %s", nu, exc)
            fields = {}
        return [_cell(reference, fields.get(n), n, nu) for n in sorted(set(int(n) for n in orders))]

    drift = 0.0
    for coarse, fine in zip(errors(dom), errors(dom.refined())):
        if coarse.flagged or fine.flagged or not fine.sup_error > 0:
            continue
        drift = max(drift, abs(fine.sup_error - coarse.sup_error) / fine.sup_error)
    if drift > RESOLUTION_DRIFT:
        logger.warning("nu=%g: sup error moves by %.1f%% under refinement", nu, 100 * drift)
    return drift
