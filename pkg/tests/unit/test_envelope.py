"""
Unit Tests for Envelope Curves
"""
import pytest
import numpy as np


class TestGrid:
    """Test radius grids."""

    def test_uniform_grid(self):
        from app.pipelines.lindblad.envelope import uniform_grid

        grid = uniform_grid(4)

        assert np.allclose(grid, [0.25, 0.5, 0.75, 1.0])
        assert grid[-1] == 1.0

    def test_uniform_grid_size(self):
        from app.pipelines.lindblad.envelope import uniform_grid

        with pytest.raises(ValueError):
            uniform_grid(0)

    @pytest.mark.parametrize("grid", [
        [],
        [0.0, 0.5, 1.0],
        [0.5, 1.5],
        [0.5, 0.4, 1.0],
    ])
    def test_invalid_grids(self, axial_system, grid):
        from app.pipelines.lindblad.envelope import envelope_curve

        with pytest.raises(ValueError):
            envelope_curve(axial_system, grid=np.array(grid))


class TestEnvelopeCurve:
    """Test sampling f_M, f_m over a grid."""

    def test_axial_closed_form(self, axial_system):
        """f_M = 12 - 20 r below 0.6, 36 / (10 r) - 10 r above; f_m = -12 - 20 r."""
        from app.pipelines.lindblad.envelope import envelope_curve, uniform_grid

        curve = envelope_curve(axial_system, grid=uniform_grid(100))
        r = curve.r_grid

        expected = np.where(r < 0.6, 12 - 20 * r, 144 / (40 * r) - 10 * r)
        assert curve.analytic
        assert np.allclose(curve.f_max, expected, atol=1e-12)
        assert np.allclose(curve.f_min, -12 - 20 * r, atol=1e-12)
        assert curve.is_monotone()

    def test_generic_uses_stationary_points(self, generic_system):
        from app.pipelines.lindblad.envelope import envelope_curve, uniform_grid

        curve = envelope_curve(generic_system, grid=uniform_grid(50))

        assert not curve.analytic
        assert len(curve) == 50
        assert curve.f_max[0] > 0 > curve.f_max[-1]
        assert np.all(curve.f_min <= curve.f_max)

    def test_workers_do_not_change_results(self, generic_system):
        from app.pipelines.lindblad.envelope import envelope_curve, uniform_grid

        grid = uniform_grid(40)
        sequential = envelope_curve(generic_system, grid=grid, workers=1)
        threaded = envelope_curve(generic_system, grid=grid, workers=4)

        assert np.array_equal(sequential.f_max, threaded.f_max)
        assert np.array_equal(sequential.argmax_dirs, threaded.argmax_dirs)

    def test_default_grid(self, generic_system, monkeypatch):
        from app.config.settings import settings
        from app.pipelines.lindblad.envelope import envelope_curve

        monkeypatch.setattr(settings, "DEFAULT_GRID_SIZE", 25)
        curve = envelope_curve(generic_system)

        assert len(curve) == 25
        assert curve.r_grid[0] == pytest.approx(0.04)

    def test_rows_layout(self, axial_system):
        from app.pipelines.lindblad.envelope import envelope_curve, uniform_grid

        rows = envelope_curve(axial_system, grid=uniform_grid(10)).rows()

        assert rows.shape == (10, 9)
        assert np.allclose(np.linalg.norm(rows[:, 3:6], axis=1), 1.0)
        assert np.allclose(np.linalg.norm(rows[:, 6:9], axis=1), 1.0)

    def test_closed_form_mismatch_is_fatal(self, axial_system, monkeypatch):
        from app.models.envelope import EnvelopePoint
        from app.pipelines.lindblad.envelope import envelope_curve, uniform_grid
        from app.pipelines.lindblad.extremal import ExtremalSolver
        from app.utils.errors import EnvelopeMismatchError

        original = ExtremalSolver.analytic_axial_point

        def shifted(p, r):
            point = original(p, r)
            return EnvelopePoint(r, point.f_max + 1e-6, point.f_min, point.argmax, point.argmin)

        monkeypatch.setattr(ExtremalSolver, "analytic_axial_point", staticmethod(shifted))
        with pytest.raises(EnvelopeMismatchError):
            envelope_curve(axial_system, grid=uniform_grid(10))


class TestRateEnvelope:
    """Test the envelope container."""

    def test_monotone_check(self):
        from app.models.envelope import RateEnvelope

        dirs = np.tile([0.0, 0.0, 1.0], (3, 1))
        good = RateEnvelope(np.array([0.1, 0.2, 0.3]), np.array([1.0, 0.5, 0.0]),
                            np.array([-1.0, -2.0, -3.0]), dirs, dirs)
        bad = RateEnvelope(np.array([0.1, 0.2, 0.3]), np.array([1.0, 1.5, 0.0]),
                           np.array([-1.0, -2.0, -3.0]), dirs, dirs)

        assert good.is_monotone()
        assert not bad.is_monotone()

    def test_zero_radius_limits(self, generic_system):
        from app.pipelines.lindblad.envelope import zero_radius_limits

        upper, lower = zero_radius_limits(generic_system)

        assert upper == pytest.approx(generic_system.b_norm)
        assert lower == -upper
