import pytest
from assertpy import assert_that

from memsmatch.analysis import (
    HEAVY_LOSS_CORNER,
    LIGHT_LOSS_CORNER,
    calibrate_loss_factor,
    interpolate_loss,
    loss_grid,
    loss_sweep,
)
from memsmatch.types import ComponentTable, CouplerMode, LossModel

F = 620e6
TABLE = ComponentTable()


class TestLossGrid:
    """Unit tests for loss-grid construction."""

    def test_lossless_point_comes_first(self) -> None:
        """Test the cartesian product preceded by the lossless model."""
        # Act
        grid = loss_grid([10.0, 30.0], [50.0], [1.0], [0.0])

        # Assert
        assert_that(grid).is_length(3)
        assert_that(grid[0].lossless).is_true()
        assert_that([m.q_l for m in grid[1:]]).is_equal_to([10.0, 30.0])

    def test_without_lossless_point(self) -> None:
        """Test that the lossless point can be left out."""
        assert_that(loss_grid([10.0], [50.0, 100.0], [1.0], [0.0], include_lossless=False)).is_length(2)


class TestInterpolateLoss:
    """Unit tests for the light-to-heavy loss path."""

    def test_end_points_are_the_corners(self) -> None:
        """Test t = 0 and t = 1."""
        # Act
        light = interpolate_loss(0.0)
        heavy = interpolate_loss(1.0)

        # Assert
        assert_that((light.q_l, light.q_c, light.r_on)).is_equal_to(LIGHT_LOSS_CORNER)
        assert_that((heavy.q_l, heavy.q_c, heavy.r_on)).is_equal_to(HEAVY_LOSS_CORNER)

    def test_midpoint_is_geometric(self) -> None:
        """Test that t = 0.5 lands on the geometric mean of the corners."""
        # Act
        mid = interpolate_loss(0.5)

        # Assert
        assert_that(mid.q_l).is_close_to(1000.0**0.5, 1e-9)
        assert_that(mid.r_on).is_close_to(2.5**0.5, 1e-12)
        assert_that(mid.lossless).is_false()

    def test_keeps_the_base_coupling_capacitance(self) -> None:
        """Test that fields outside the path come from the base model."""
        assert_that(interpolate_loss(0.3, LossModel(c_off=80e-15)).c_off).is_equal_to(80e-15)


@pytest.mark.slow
class TestLossSweep:
    """Coverage radius under loss."""

    def test_lossless_ratio_is_one_and_loss_shrinks_the_radius(self) -> None:
        """Test the reference row and that lower Q_L never enlarges the coverage radius."""
        # Arrange
        grid = [LossModel.ideal(), LossModel(q_l=100.0), LossModel(q_l=10.0)]

        # Act
        rows = loss_sweep(TABLE, CouplerMode.IDEAL, F, grid)

        # Assert
        assert_that(rows[0].radius_ratio).is_equal_to(1.0)
        assert_that(rows[1].radius_ratio).is_less_than_or_equal_to(1.0)
        assert_that(rows[2].radius_ratio).is_less_than_or_equal_to(rows[1].radius_ratio)

    def test_calibration_finds_the_target_ratio_on_the_plausible_grid(self) -> None:
        """Test that calibration reaches a radius ratio of 0.90 ± 0.03 with Q_L, Q_C and R_on inside the plausible grid."""
        # Act
        row = calibrate_loss_factor(TABLE, CouplerMode.IDEAL, F)

        # Assert
        assert_that(row.loss.lossless).is_false()
        assert_that(row.radius_ratio).is_close_to(0.9, 0.03)
        assert_that(row.loss.q_l).is_between(10.0, 100.0)
        assert_that(row.loss.q_c).is_between(50.0, 500.0)
        assert_that(row.loss.r_on).is_between(0.5, 5.0)

    def test_default_model_ratio(self) -> None:
        """Test the regression value of the default loss model's radius ratio, reported against the 0.9 target."""
        # Act
        rows = loss_sweep(TABLE, CouplerMode.IDEAL, F, [LossModel()])

        # Assert
        assert_that(rows[0].radius_ratio).is_close_to(0.7425, 0.01)
        assert_that(abs(rows[0].radius_ratio - 0.9)).is_greater_than(0.03)
