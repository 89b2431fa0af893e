"""
Cauchy product and the tag/untag sequence transformation on truncated sequences.

A sequence element is any callable ``(x, t) -> complex``. Indices are 1-based:
``seq.term(1)`` is the first element.
"""
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple
import numpy as np
from burgers_series.exceptions import DomainError, SamplingError

SeriesTerm = Callable[[float, float], complex]
Point = Tuple[float, float]


@dataclass(frozen=True)
class TruncatedSequence:
    """The first N elements f_1 .. f_N of a sequence."""
    terms: Tuple[SeriesTerm, ...]

    def __init__(self, terms: Sequence[SeriesTerm]):
        terms = tuple(terms)
        if not terms:
            raise DomainError("a truncated sequence needs at least one term")
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> SeriesTerm:
        if not 1 <= n <= len(self.terms):
            raise DomainError(f"index {n} outside 1..{len(self.terms)}")
        return self.terms[n - 1]

    def values(self, point: Point) -> np.ndarray:
        """``[f_1(point), ..., f_N(point)]``."""
        x, t = point
        return np.array([complex(f(x, t)) for f in self.terms])


@dataclass(frozen=True)
class TagVariable:
    s: float

    def __post_init__(self):
        if not -math.pi <= self.s <= math.pi:
            raise DomainError(f"tag variable must lie in [-pi, pi], got {self.s}")


def cauchy_convolve(a: TruncatedSequence, b: TruncatedSequence, n: int, point: Point) -> complex:
    """
    n-th element of the Cauchy product, sum_{m=1}^{n-1} a_m b_{n-m}.

    :raises DomainError: Unless ``2 <= n <= min(len(a), len(b)) + 1``.
    """
    if int(n) != n or not 2 <= n <= min(len(a), len(b)) + 1:
        raise DomainError(f"n must be in 2..{min(len(a), len(b)) + 1}, got {n}")
    av = a.values(point)
    bv = b.values(point)
    return complex(sum(av[m - 1] * bv[n - m - 1] for m in range(1, n)))


def _tagged(values: np.ndarray, s: np.ndarray) -> np.ndarray:
    n = np.arange(1, len(values) + 1)
    return np.exp(1j * np.multiply.outer(s, n)) @ values


def tag(seq: TruncatedSequence, point: Point, s: TagVariable) -> complex:
    """Tagged series sum_n f_n(point) exp(i n s)."""
    return complex(_tagged(seq.values(point), np.array([s.s]))[0])


def untag(seq: TruncatedSequence, point: Point, m: int, s_nodes: int) -> complex:
    """
    Recovers f_m from the tagged series.

    ``(1/2pi) * integral tag(s) exp(-i m s) ds`` over ``[-pi, pi]`` by the
    trapezoid rule on ``s_nodes`` uniform nodes. The rule is exact for the
    trigonometric polynomial of a truncated sequence, so the result is f_m up
    to rounding.

    :return: f_m(point); 0 when ``m`` exceeds the truncation length.
    :raises SamplingError: If ``s_nodes < 4 * len(seq)``.
    """
    if s_nodes < 4 * len(seq):
        raise SamplingError(f"untag needs at least {4 * len(seq)} s-nodes, got {s_nodes}")
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    if m > len(seq):
        return 0j
    s = -math.pi + 2.0 * math.pi * np.arange(s_nodes) / s_nodes
    tagged = _tagged(seq.values(point), s)
    return complex(np.mean(tagged * np.exp(-1j * m * s)))


def untag_samples(samples: np.ndarray, s: np.ndarray, m: int) -> complex:
    """Trapezoid inverse transform of already tagged samples on uniform ``s``."""
    return complex(np.mean(np.asarray(samples) * np.exp(-1j * m * np.asarray(s))))
