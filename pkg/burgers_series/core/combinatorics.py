"""
Stirling numbers, factorial sums and partial exponential Bell polynomials.

Exact quantities are plain Python integers. The Stirling table is shared by
all callers, grown lazily under a lock and never mutated once a row exists.
"""
import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Callable, List, Sequence, Union
import numpy as np
from scipy.special import gammaln
from burgers_series.constants import MAX_EXACT_ORDER
from burgers_series.exceptions import DomainError

Number = Union[int, float, complex, np.ndarray]

_table_lock = threading.Lock()
_stirling_rows: List[List[int]] = [[1]]


@dataclass(frozen=True)
class BellArguments:
    """Ordered arguments x_1, ..., x_n of a partial Bell polynomial."""
    xs: tuple

    def __init__(self, xs: Sequence):
        object.__setattr__(self, "xs", tuple(xs))

    def __len__(self) -> int:
        return len(self.xs)


def _check_order(m: int) -> None:
    if int(m) != m or not 1 <= m <= MAX_EXACT_ORDER:
        raise DomainError(f"m must be an integer in 1..{MAX_EXACT_ORDER}, got {m}")


def _grow_table(m: int) -> None:
    with _table_lock:
        while len(_stirling_rows) <= m:
            previous = _stirling_rows[-1]
            n = len(_stirling_rows)
            row = [0] * (n + 1)
            for k in range(1, n + 1):
                upper = previous[k] if k < n else 0
                row[k] = k * upper + previous[k - 1]
            _stirling_rows.append(row)


def stirling2(m: int, k: int) -> int:
    """
    Stirling number of the second kind {m brace k}.

    :param m: Set size, ``1 <= m <= 500``.
    :param k: Number of blocks, ``1 <= k <= m``.
    :return: The exact number of partitions of an m-set into k blocks.
    :rtype: int
    :raises DomainError: If ``(m, k)`` is out of range.
    """
    _check_order(m)
    if int(k) != k or not 1 <= k <= m:
        raise DomainError(f"k must be an integer in 1..{m}, got {k}")
    if len(_stirling_rows) <= m:
        _grow_table(m)
    return _stirling_rows[m][k]


@lru_cache(maxsize=None)
def weighted_stirling_sum(m: int) -> int:
    """S(m) = sum over k of (k-1)! {m brace k}."""
    _check_order(m)
    return sum(factorial(k - 1) * stirling2(m, k) for k in range(1, m + 1))


@lru_cache(maxsize=None)
def alternating_stirling_sum(m: int) -> int:
    """
    sum over k of (-1)^(k-1) (k-1)! {m brace k}.

    Equals 1 for m = 1 and 0 for every m >= 2.
    """
    _check_order(m)
    return sum((-1) ** (k - 1) * factorial(k - 1) * stirling2(m, k) for k in range(1, m + 1))


def bell_number(m: int) -> int:
    """Total number of partitions of an m-set (row sum of the Stirling table)."""
    _check_order(m)
    return sum(stirling2(m, k) for k in range(1, m + 1))


def log_factorial(n: int) -> float:
    """
    Natural logarithm of n!.

    :param n: Non-negative integer.
    :rtype: float
    """
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    return float(gammaln(n + 1.0))


def _bell_recurrence(
        xs: Sequence,
        m: int,
        k_max: int,
        width: int,
        one,
        zero,
        coefficient: Callable[[int], Number]
) -> dict:
    """
    Table of B_{n,j} for ``j <= k_max`` and ``n - j <= width``.

    Uses B_{n,j} = sum_{i=1}^{n-j+1} C(n-1, i-1) x_i B_{n-i, j-1} with
    B_{0,0} = 1 and B_{n,0} = 0 for n > 0. Only x_1 .. x_{width+1} are read.
    """
    table = {(0, 0): one}
    for n in range(1, width + 1):
        table[(n, 0)] = zero
    for j in range(1, k_max + 1):
        for n in range(j, min(j + width, m) + 1):
            total = zero
            for i in range(1, n - j + 2):
                total = total + coefficient(comb(n - 1, i - 1)) * xs[i - 1] * table[(n - i, j - 1)]
            table[(n, j)] = total
    return table


def _check_arguments(m: int, k: int, xs: Sequence) -> None:
    _check_order(m)
    if int(k) != k or not 1 <= k <= m:
        raise DomainError(f"k must be an integer in 1..{m}, got {k}")
    if len(xs) != m - k + 1:
        raise DomainError(f"B_{{{m},{k}}} takes {m - k + 1} arguments, got {len(xs)}")


def bell_partial(m: int, k: int, xs: Union[BellArguments, Sequence]) -> complex:
    """
    Partial exponential Bell polynomial B_{m,k}(x_1, ..., x_{m-k+1}).

    Floating-point backend: arguments are promoted to complex.

    :param m: Degree, ``m >= 1``.
    :param k: Number of blocks, ``1 <= k <= m``.
    :param xs: Exactly ``m - k + 1`` arguments.
    :rtype: complex
    :raises DomainError: On a length mismatch.
    """
    xs = tuple(xs.xs if isinstance(xs, BellArguments) else xs)
    _check_arguments(m, k, xs)
    values = [complex(x) for x in xs]
    table = _bell_recurrence(values, m, k, m - k, 1.0 + 0j, 0j, float)
    return table[(m, k)]


def bell_partial_exact(m: int, k: int, xs: Union[BellArguments, Sequence]):
    """
    Exact backend of :func:`bell_partial` for ``int`` or ``Fraction`` arguments.
    """
    xs = tuple(xs.xs if isinstance(xs, BellArguments) else xs)
    _check_arguments(m, k, xs)
    table = _bell_recurrence(xs, m, k, m - k, 1, 0, int)
    return table[(m, k)]


def bell_row(m: int, xs: Sequence[np.ndarray]) -> List[np.ndarray]:
    """
    All partial Bell polynomials of degree m at once.

    :param m: Degree.
    :param xs: ``m`` arguments x_1 .. x_m; scalars or equally shaped arrays.
        B_{m,k} only reads the first ``m - k + 1`` of them.
    :return: ``[B_{m,1}, ..., B_{m,m}]``.
    """
    _check_order(m)
    if len(xs) != m:
        raise DomainError(f"bell_row({m}) needs {m} arguments, got {len(xs)}")
    table = _bell_recurrence(list(xs), m, m, m - 1, 1.0, 0.0, float)
    return [table[(m, k)] for k in range(1, m + 1)]
