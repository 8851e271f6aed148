
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from luxforge.errors import BadSpacing, EmptyGrid
from luxforge.lumen_method import RoomGeometry
from luxforge.photometry import Luminaire, isotropic, total_flux
from luxforge.point_grid import (
    GridStatistics,
    IlluminanceGrid,
    LuminairePlacement,
    compute_grid,
    direct_illuminance_at,
    grid_statistics,
    suggest_layout,
)


def iso_placement(candela: float, x: float, y: float, height: float) -> LuminairePlacement:
    return LuminairePlacement(Luminaire(isotropic(candela), 1, 550.0), x, y, height)

SQUARE = RoomGeometry(4.0, 4.0, 2.8, 1.6, 0.0)


class TestDirectIlluminance:
    def test_on_axis_inverse_square(self):
        value = direct_illuminance_at((0.0, 0.0), [iso_placement(100.0, 0.0, 0.0, 2.0)])
        assert value == pytest.approx(25.0, abs=1e-9)

    def test_offset_hand_value(self):
        # 100 * cos(45 deg) / 8 with slant r^2 = 4 + 4
        value = direct_illuminance_at((2.0, 0.0), [iso_placement(100.0, 0.0, 0.0, 2.0)])
        assert value == pytest.approx(8.8388, abs=1e-4)

    def test_no_placements(self):
        assert direct_illuminance_at((1.0, 1.0), []) == 0.0

    def test_maintenance_divides(self):
        one = direct_illuminance_at((0.0, 0.0), [iso_placement(100.0, 0.0, 0.0, 2.0)], 1.0)
        two = direct_illuminance_at((0.0, 0.0), [iso_placement(100.0, 0.0, 0.0, 2.0)], 2.0)
        assert two == one / 2.0

    def test_rejects_maintenance_below_one(self):
        with pytest.raises(ValueError):
            direct_illuminance_at((0.0, 0.0), [], 0.5)


class TestComputeGrid:
    def test_centered_source_mirror_symmetric(self):
        grid = compute_grid(SQUARE, [iso_placement(100.0, 2.0, 2.0, 1.2)], 0.5)
        values = grid.values
        ny, nx = len(values), len(values[0])
        for iy in range(ny):
            for ix in range(nx):
                assert values[iy][ix] == pytest.approx(values[iy][nx - 1 - ix], abs=1e-9)
                assert values[iy][ix] == pytest.approx(values[ny - 1 - iy][ix], abs=1e-9)

    def test_zero_placements_all_zero(self):
        grid = compute_grid(SQUARE, [], 0.5)
        assert all(v == 0.0 for row in grid.values for v in row)

    def test_cells_cover_room(self):
        grid = compute_grid(RoomGeometry(4.8, 4.2, 2.8), [], 0.25)
        assert grid.nx == 20 and grid.ny == 17
        assert grid.xs[0] == pytest.approx(4.8 / 20 / 2)
        assert grid.xs[-1] == pytest.approx(4.8 - 4.8 / 20 / 2)

    def test_convergence_under_refinement(self):
        placements = [iso_placement(100.0, 2.0, 2.0, 1.2)]
        coarse = grid_statistics(compute_grid(SQUARE, placements, 0.5)).average
        fine = grid_statistics(compute_grid(SQUARE, placements, 0.25)).average
        assert abs(fine - coarse) / fine < 0.02

    def test_convergence_on_bundled_room(self, duplex_ctx):
        room = duplex_ctx.project.room("Big room tip 2")
        placements = duplex_ctx.placements_for(room)
        coarse = grid_statistics(
            compute_grid(room.geometry, placements, 0.5)
        ).average
        fine = grid_statistics(
            compute_grid(room.geometry, placements, 0.25)
        ).average
        assert abs(fine - coarse) / fine < 0.02

    def test_bad_spacing(self):
        with pytest.raises(BadSpacing):
            compute_grid(SQUARE, [], 0.0)
        with pytest.raises(BadSpacing):
            compute_grid(SQUARE, [], 4.5)

    def test_superposition(self):
        a = [iso_placement(100.0, 1.0, 1.0, 1.2)]
        b = [iso_placement(60.0, 3.0, 2.0, 1.5)]
        combined = compute_grid(SQUARE, a + b, 0.5)
        ga = compute_grid(SQUARE, a, 0.5)
        gb = compute_grid(SQUARE, b, 0.5)
        for row_c, row_a, row_b in zip(combined.values, ga.values, gb.values):
            for vc, va, vb in zip(row_c, row_a, row_b):
                assert vc == pytest.approx(va + vb, abs=1e-9)

    def test_maintenance_scaling_exact(self):
        placements = [iso_placement(100.0, 2.0, 2.0, 1.2)]
        g1 = compute_grid(SQUARE, placements, 0.5, maintenance=1.0)
        g2 = compute_grid(SQUARE, placements, 0.5, maintenance=2.0)
        for row1, row2 in zip(g1.values, g2.values):
            for v1, v2 in zip(row1, row2):
                assert v2 == v1 / 2.0

    def test_mirrored_placements_mirror_the_grid(self):
        left = compute_grid(SQUARE, [iso_placement(100.0, 1.0, 2.0, 1.2)], 0.5)
        right = compute_grid(SQUARE, [iso_placement(100.0, 3.0, 2.0, 1.2)], 0.5)
        nx = left.nx
        for row_l, row_r in zip(left.values, right.values):
            for ix in range(nx):
                assert row_l[ix] == pytest.approx(row_r[nx - 1 - ix], abs=1e-9)

    def test_direct_flux_cannot_exceed_emitted(self):
        dist = isotropic(100.0)
        placements = [
            LuminairePlacement(Luminaire(dist, 1, 550.0), x, y, 1.2)
            for x, y in [(1.0, 1.0), (3.0, 3.0)]
        ]
        stats = grid_statistics(compute_grid(SQUARE, placements, 0.25))
        area = SQUARE.length * SQUARE.width
        emitted = len(placements) * total_flux(dist, 2.0)
        assert stats.average * area <= emitted


class TestGridStatistics:
    def test_constant_grid(self):
        grid = IlluminanceGrid((0.5, 1.5), (0.5,), ((50.0, 50.0),), 1.0, 1.6)
        stats = grid_statistics(grid)
        assert stats == GridStatistics(50.0, 50.0, 50.0, 1.0)

    def test_two_point_grid(self):
        grid = IlluminanceGrid((0.5, 1.5), (0.5,), ((0.0, 100.0),), 1.0, 1.6)
        stats = grid_statistics(grid)
        assert (stats.minimum, stats.average, stats.maximum) == (0.0, 50.0, 100.0)
        assert stats.uniformity == 0.0

    def test_zero_average_uniformity(self):
        grid = IlluminanceGrid((0.5,), (0.5,), ((0.0,),), 1.0, 1.6)
        assert grid_statistics(grid).uniformity == 0.0

    def test_empty_grid(self):
        grid = IlluminanceGrid((), (), (), 1.0, 1.6)
        with pytest.raises(EmptyGrid):
            grid_statistics(grid)

    def test_statistics_match_independent_recomputation(self):
        placements = [iso_placement(100.0, 2.0, 2.0, 1.2)]
        grid = compute_grid(SQUARE, placements, 0.5)
        stats = grid_statistics(grid)
        # oracle: recompute from scratch off the raw point evaluations
        samples = [
            direct_illuminance_at((x, y), placements)
            for y in grid.ys
            for x in grid.xs
        ]
        assert stats.minimum == min(samples)
        assert stats.maximum == max(samples)
        assert stats.average == pytest.approx(sum(samples) / len(samples), rel=1e-12)


class TestSuggestLayout:
    def test_single_at_center(self):
        assert suggest_layout(SQUARE, 1) == [(2.0, 2.0)]

    def test_two_by_two(self):
        assert suggest_layout(SQUARE, 4) == [(1.0, 1.0), (3.0, 1.0), (1.0, 3.0), (3.0, 3.0)]

    def test_three_in_a_row_along_longer_axis(self):
        room = RoomGeometry(6.0, 2.0, 2.8)
        assert suggest_layout(room, 3) == [(1.0, 1.0), (3.0, 1.0), (5.0, 1.0)]
        tall = RoomGeometry(2.0, 6.0, 2.8)
        assert suggest_layout(tall, 3) == [(1.0, 1.0), (1.0, 3.0), (1.0, 5.0)]

    def test_mirror_symmetric(self):
        def canon(points):
            return {(round(x, 9), round(y, 9)) for x, y in points}

        for count in (1, 2, 3, 4, 6, 9, 12):
            positions = suggest_layout(SQUARE, count)
            mirrored_x = [(SQUARE.length - x, y) for x, y in positions]
            mirrored_y = [(x, SQUARE.width - y) for x, y in positions]
            assert canon(positions) == canon(mirrored_x)
            assert canon(positions) == canon(mirrored_y)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            suggest_layout(SQUARE, 0)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.2, 3.8),
    st.floats(0.2, 3.8),
    st.floats(0.5, 3.0),
    st.floats(10.0, 500.0),
)
def test_translation_coherence(x, y, height, candela):
    # moving room and placement together leaves values unchanged
    base_room = RoomGeometry(4.0, 4.0, 2.8, 1.6, 0.0)
    placement = iso_placement(candela, x, y, height)
    grid = compute_grid(base_room, [placement], 0.5)
    # translation: evaluate the same relative offsets directly
    shift = 11.25
    moved = iso_placement(candela, x + shift, y + shift, height)
    for iy, gy in enumerate(grid.ys):
        for ix, gx in enumerate(grid.xs):
            direct = direct_illuminance_at((gx + shift, gy + shift), [moved])
            assert direct == pytest.approx(grid.values[iy][ix], rel=1e-9, abs=1e-12)
