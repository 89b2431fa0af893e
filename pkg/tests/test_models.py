import numpy as np
import pytest
from burgers_series.exceptions import DomainError, ValidationError
from burgers_series.models import (
    ColeHopfSpec,
    DomainSpec,
    EvalPoint,
    GridField,
    QuadratureSpec,
    SolverConfig,
    chebyshev_levels,
)


class TestValidation:

    @pytest.mark.parametrize("nu, order", [(0.0, 5), (-1.0, 5), (float("inf"), 5), (1.0, 0), (1.0, 2.5)])
    def test_solver_config(self, nu, order):
        with pytest.raises(ValidationError):
            SolverConfig(nu, order)

    def test_negative_time(self):
        with pytest.raises(ValidationError):
            EvalPoint(0.0, -1e-9)

    def test_specs(self):
        with pytest.raises(ValidationError):
            QuadratureSpec(hermite_nodes=4)
        with pytest.raises(ValidationError):
            ColeHopfSpec(truncation_radius=5.0)
        with pytest.raises(ValidationError):
            DomainSpec(1.0, 0.0)


class TestDomain:

    def test_default_sampling(self):
        dom = DomainSpec()
        assert dom.xs[0] == pytest.approx(-2 * np.pi)
        assert len(dom.xs) == 65 and len(dom.ts) == 31

    def test_degenerate_time_range(self):
        assert list(DomainSpec(t_min=1.0, t_max=1.0).ts) == [1.0]

    def test_refined_keeps_nodes(self):
        dom = DomainSpec(nx=5, nt=3)
        assert np.allclose(dom.refined().xs[::2], dom.xs)
        assert np.allclose(dom.refined().ts[::2], dom.ts)


class TestGridField:

    def test_chebyshev_levels(self):
        levels = chebyshev_levels(5, 2.0)
        assert levels[0] == 0.0 and levels[-1] == 2.0
        assert np.all(np.diff(levels) > 0)

    def test_shape_check(self):
        with pytest.raises(DomainError):
            GridField([0.0, 1.0], [0.0], np.zeros((2, 2)))

    def test_period_must_match(self):
        with pytest.raises(DomainError):
            GridField(np.arange(4) * 0.5, [0.0], np.zeros((1, 4)), period=3.0)

    def test_spectral_derivative(self):
        grid = GridField.template(16, 3, 1.0)
        field = grid.with_values(np.tile(np.exp(3j * grid.xs), (3, 1)))
        assert np.allclose(field.x_derivative(), 3j * field.values, atol=1e-12)
        assert np.allclose(field.x_derivative(2), -9 * field.values, atol=1e-11)

    def test_time_interpolant(self):
        grid = GridField.template(8, 24, 1.0)
        field = grid.with_values(np.outer(np.exp(-grid.ts), np.ones(8)))
        assert field.time_interpolant()(0.3)[0] == pytest.approx(np.exp(-0.3), abs=1e-12)

    def test_non_periodic_has_no_wavenumbers(self):
        field = GridField([0.0, 1.0], [0.0], np.array([[1.0, 2.0]]))
        with pytest.raises(DomainError):
            field.wavenumbers()
