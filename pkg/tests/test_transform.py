import math
from functools import partial
import numpy as np
import pytest
from burgers_series.core.closed_form import closed_form_sequence, partial_sum, term
from burgers_series.core.transform import (
    TagVariable,
    TruncatedSequence,
    cauchy_convolve,
    tag,
    untag,
)
from burgers_series.exceptions import DomainError, SamplingError
from burgers_series.models.series import EvalPoint, SolverConfig


def _mode(coefficient, n, x, t):
    return coefficient * np.exp(1j * n * x - 0.3 * n * t)


def random_sequence(rng, length):
    coefficients = rng.normal(size=length) + 1j * rng.normal(size=length)
    return TruncatedSequence([partial(_mode, c, n) for n, c in enumerate(coefficients, 1)])


class TestTruncatedSequence:

    def test_indexing_is_one_based(self):
        seq = TruncatedSequence([lambda x, t: 1.0, lambda x, t: 2.0])
        assert seq.term(1)(0, 0) == 1.0
        assert len(seq) == 2
        with pytest.raises(DomainError):
            seq.term(0)
        with pytest.raises(DomainError):
            seq.term(3)

    def test_empty(self):
        with pytest.raises(DomainError):
            TruncatedSequence([])


def test_tag_variable_range():
    TagVariable(math.pi)
    with pytest.raises(DomainError):
        TagVariable(3.2)


class TestCauchy:

    def test_constant_sequences(self):
        a = TruncatedSequence([partial(lambda m, x, t: m, m) for m in range(1, 5)])
        b = TruncatedSequence([lambda x, t: 1.0] * 4)
        assert cauchy_convolve(a, b, 3, (0.0, 0.0)) == 3
        assert cauchy_convolve(a, b, 5, (0.0, 0.0)) == 10

    def test_symmetric(self, rng):
        a, b = random_sequence(rng, 6), random_sequence(rng, 6)
        for n in range(2, 8):
            assert cauchy_convolve(a, b, n, (0.4, 0.9)) == pytest.approx(cauchy_convolve(b, a, n, (0.4, 0.9)), abs=1e-13)

    def test_bilinear(self, rng):
        a, b, c = (random_sequence(rng, 5) for _ in range(3))
        alpha, beta = 0.7 - 0.2j, -1.3
        combined = TruncatedSequence([
            partial(lambda f, g, x, t: alpha * f(x, t) + beta * g(x, t), f, g) for f, g in zip(a.terms, b.terms)
        ])
        point = (1.1, 0.3)
        for n in range(2, 7):
            expected = alpha * cauchy_convolve(a, c, n, point) + beta * cauchy_convolve(b, c, n, point)
            assert cauchy_convolve(combined, c, n, point) == pytest.approx(expected, abs=1e-12)

    def test_index_range(self):
        a = TruncatedSequence([lambda x, t: 1.0] * 3)
        with pytest.raises(DomainError):
            cauchy_convolve(a, a, 1, (0.0, 0.0))
        with pytest.raises(DomainError):
            cauchy_convolve(a, a, 5, (0.0, 0.0))


class TestUntag:

    def test_recovers_every_term(self, rng):
        seq = random_sequence(rng, 8)
        for x, t in zip(rng.uniform(-2 * np.pi, 2 * np.pi, 20), rng.uniform(0, 3, 20)):
            for m in range(1, 9):
                expected = seq.term(m)(x, t)
                assert abs(untag(seq, (x, t), m, 32) - expected) <= 1e-12

    def test_beyond_truncation_is_zero(self, rng):
        seq = random_sequence(rng, 4)
        assert untag(seq, (0.3, 1.0), 7, 16) == 0

    def test_too_few_nodes(self, rng):
        seq = random_sequence(rng, 8)
        with pytest.raises(SamplingError):
            untag(seq, (0.0, 0.0), 1, 31)

    def test_tag_is_the_tagged_series(self, rng):
        seq = random_sequence(rng, 5)
        s = 0.7
        expected = sum(seq.term(n)(0.2, 0.5) * np.exp(1j * n * s) for n in range(1, 6))
        assert tag(seq, (0.2, 0.5), TagVariable(s)) == pytest.approx(expected, abs=1e-13)


class TestBurgersTerms:

    def test_untag_recovers_closed_form_term(self):
        cfg = SolverConfig(1.0, 5)
        seq = closed_form_sequence(cfg)
        expected = term(3, cfg, EvalPoint(0.7, 0.5))
        assert untag(seq, (0.7, 0.5), 3, 32) == pytest.approx(expected, abs=1e-14)

    def test_tag_at_origin_is_partial_sum(self):
        cfg = SolverConfig(1.0, 5)
        seq = closed_form_sequence(cfg)
        expected = partial_sum(cfg, EvalPoint(0.7, 0.5))
        assert tag(seq, (0.7, 0.5), TagVariable(0.0)) == pytest.approx(expected, abs=1e-14)
