import numpy as np
import pytest
from burgers_series.core.closed_form import partial_sum, partial_sum_field
from burgers_series.core.reference import cole_hopf, cole_hopf_row, fd_solve
from burgers_series.exceptions import (
    AccuracyError,
    BlowUpError,
    DomainError,
    NearSingularError,
    ValidationError,
)
from burgers_series.models.series import ColeHopfSpec, EvalPoint, SolverConfig


def periodic_nodes(nx):
    return np.arange(nx) * (2 * np.pi / nx)


class TestColeHopf:

    def test_small_time_reproduces_ic(self):
        for x in (-1.0, 0.0, 2.5):
            assert abs(cole_hopf(1.0, x, 1e-6) - np.exp(1j * x)) <= 1e-4

    def test_initial_time_is_exact(self):
        assert cole_hopf(0.3, 0.7, 0.0) == np.exp(0.7j)

    def test_agrees_with_series(self):
        expected = partial_sum(SolverConfig(1.0, 25), EvalPoint(0.5, 1.0))
        assert abs(cole_hopf(1.0, 0.5, 1.0) - expected) <= 1e-8

    def test_periodic(self):
        for x in (0.2, 1.9):
            assert abs(cole_hopf(0.8, x + 2 * np.pi, 1.3) - cole_hopf(0.8, x, 1.3)) <= 1e-11

    def test_window_is_wide_enough(self):
        xs = np.linspace(-3, 3, 7)
        narrow = cole_hopf_row(0.75, xs, 2.0)
        wide = cole_hopf_row(0.75, xs, 2.0, ColeHopfSpec(truncation_radius=16.0))
        assert np.max(np.abs(narrow - wide)) <= 1e-10

    def test_row_matches_points(self):
        xs = np.array([-1.0, 0.0, 0.4])
        row = cole_hopf_row(1.0, xs, 0.5)
        for x, value in zip(xs, row):
            assert value == pytest.approx(cole_hopf(1.0, x, 0.5), abs=1e-13)

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            cole_hopf(1.0, 0.0, -1.0)
        with pytest.raises(ValidationError):
            cole_hopf(0.0, 0.0, 1.0)

    def test_vanishing_denominator(self, mocker):
        mocker.patch("burgers_series.core.reference.quad_vec", return_value=(np.zeros(4), 0.0))
        with pytest.raises(NearSingularError) as exc:
            cole_hopf(0.3, 0.0, 1.0)
        assert exc.value.location == (0.0, 1.0)

    def test_tolerance_not_met(self, mocker):
        mocker.patch(
            "burgers_series.core.reference.quad_vec",
            return_value=(np.array([0.0, 0.0, 1.0, 0.0]), 1e-3)
        )
        with pytest.raises(AccuracyError):
            cole_hopf(0.3, 0.0, 1.0)


class TestTimeStepping:

    def test_linear_part_is_exact(self):
        xs = periodic_nodes(32)
        field = fd_solve(np.exp(1j * xs), 0.7, 2.0, 0.1, [0.5, 2.0], nonlinear=False)
        for t, row in zip(field.ts, field.values):
            assert np.max(np.abs(row - np.exp(1j * xs - 0.7 * t))) <= 1e-12

    def test_matches_cole_hopf(self):
        xs = periodic_nodes(64)
        field = fd_solve(np.exp(1j * xs), 1.0, 1.0, 0.01)
        assert np.max(np.abs(field.values[0] - cole_hopf_row(1.0, xs, 1.0))) <= 1e-6

    def test_mean_is_conserved(self):
        xs = periodic_nodes(64)
        u0 = np.exp(1j * xs) + 0.25
        field = fd_solve(u0, 0.5, 2.0, 0.01, np.linspace(0.0, 2.0, 5))
        assert np.max(np.abs(field.values.mean(axis=1) - 0.25)) <= 1e-10

    def test_fourth_order(self):
        xs = periodic_nodes(32)
        u0 = np.exp(1j * xs)
        fine = fd_solve(u0, 1.0, 1.0, 0.005).values
        coarse = np.max(np.abs(fd_solve(u0, 1.0, 1.0, 0.1).values - fine))
        halved = np.max(np.abs(fd_solve(u0, 1.0, 1.0, 0.05).values - fine))
        assert coarse / halved > 10

    def test_hits_output_times(self):
        field = fd_solve(np.exp(1j * periodic_nodes(16)), 1.0, 1.0, 0.3, [0.0, 0.25, 1.0])
        assert list(field.ts) == [0.0, 0.25, 1.0]
        assert field.period == pytest.approx(2 * np.pi)

    def test_grid_must_be_power_of_two(self):
        with pytest.raises(ValidationError):
            fd_solve(np.ones(24, dtype=complex), 1.0, 1.0, 0.01)

    def test_unstable_step(self):
        with pytest.raises(ValidationError):
            fd_solve(np.exp(1j * periodic_nodes(64)), 1.0, 1.0, 0.5)

    def test_bad_outputs(self):
        with pytest.raises(ValidationError):
            fd_solve(np.ones(8, dtype=complex), 1.0, 1.0, 0.01, [0.5, 0.2])
        with pytest.raises(ValidationError):
            fd_solve(np.ones(8, dtype=complex), 1.0, 1.0, 0.01, [2.0])

    def test_blow_up_reports_time(self):
        u0 = 1e160 * np.exp(1j * periodic_nodes(8))
        with np.errstate(all="ignore"):
            with pytest.raises(BlowUpError) as exc:
                fd_solve(u0, 1.0, 1e-160, 1e-162)
        assert exc.value.time > 0


@pytest.mark.parametrize("nu", [0.75, 1.0])
def test_three_solutions_agree(nu):
    xs = periodic_nodes(64)
    times = [0.1, 0.5, 1.0, 2.0, 3.0]
    series = partial_sum_field(SolverConfig(nu, 25), xs, times)
    exact = np.array([cole_hopf_row(nu, xs, t) for t in times])
    stepped = fd_solve(np.exp(1j * xs), nu, 3.0, 1e-3, times).values
    assert np.max(np.abs(series - exact)) <= 1e-5
    assert np.max(np.abs(series - stepped)) <= 1e-5
    assert np.max(np.abs(exact - stepped)) <= 1e-5
