"""Multi-well geometry construction and grid sampling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiwell import Grid, GeometryError, GridMismatchError, MultiWellSpec, build_multiwell, sample
from multiwell.potential import well_coverage_weights


def test_single_well_is_the_bare_box():
    profile = build_multiwell(MultiWellSpec(100.0, 1, 0.0, 0.0))
    assert profile.segments == ((0.0, 100.0, 0.0),)
    assert profile.well_regions == ((0.0, 100.0),)


def test_two_well_paper_geometry():
    # equal split of 100 nm around a 4.2 nm barrier
    profile = build_multiwell(MultiWellSpec(100.0, 2, 4.2, 0.5))
    (w1s, w1e), (w2s, w2e) = profile.well_regions
    assert (w1s, w1e) == (0.0, pytest.approx(47.9))
    assert (w2s, w2e) == (pytest.approx(52.1), 100.0)
    barrier = profile.segments[1]
    assert barrier[0] == pytest.approx(47.9)
    assert barrier[1] == pytest.approx(52.1)
    assert barrier[2] == 0.5


def test_four_well_equal_widths():
    profile = build_multiwell(MultiWellSpec(100.0, 4, 4.2, 0.5))
    widths = [e - s for s, e in profile.well_regions]
    assert widths == pytest.approx([21.85] * 4)
    # segments tile [0, L]
    total = sum(e - s for s, e, _ in profile.segments)
    assert total == pytest.approx(100.0, abs=1e-12)
    assert profile.segments[-1][1] == 100.0


def test_geometry_error_names_dimension():
    with pytest.raises(GeometryError, match="barrier_width"):
        MultiWellSpec(10.0, 3, 6.0, 0.5)


def test_flat_profile_samples_zero():
    grid = Grid(length=100.0, points=500)
    values = sample(build_multiwell(MultiWellSpec(100.0, 1, 0.0, 0.0)), grid)
    assert np.all(values == 0.0)


def test_midpoint_node_samples_barrier_height():
    grid = Grid(length=100.0, points=1999)  # node 1000 exactly at x=50
    profile = build_multiwell(MultiWellSpec(100.0, 2, 4.2, 0.5))
    values = sample(profile, grid)
    i_mid = np.argmin(np.abs(grid.positions() - 50.0))
    assert values[i_mid] == 0.5


def test_barrier_node_count_matches_width():
    grid = Grid(length=100.0, points=2000)
    profile = build_multiwell(MultiWellSpec(100.0, 2, 4.2, 0.5))
    values = sample(profile, grid)
    count = int(np.sum(values == 0.5))
    expected = 4.2 / grid.spacing
    assert abs(count - expected) <= 1.0 + 1.0  # interior cells only, two edge cells may be fractional


def test_sampled_profile_exactly_symmetric():
    for wells, pts in [(2, 2000), (3, 1999), (4, 2000), (6, 777)]:
        grid = Grid(length=100.0, points=pts)
        profile = build_multiwell(MultiWellSpec(100.0, wells, 4.2, 0.37))
        values = sample(profile, grid)
        assert np.array_equal(values, values[::-1])


def test_sample_length_mismatch():
    grid = Grid(length=90.0, points=100)
    profile = build_multiwell(MultiWellSpec(100.0, 2, 4.2, 0.5))
    with pytest.raises(GridMismatchError):
        sample(profile, grid)


def test_well_widths_plus_barriers_fill_length():
    profile = build_multiwell(MultiWellSpec(100.0, 6, 4.2, 0.5))
    well_total = sum(e - s for s, e in profile.well_regions)
    assert well_total + 5 * 4.2 == pytest.approx(100.0, abs=1e-12)


def test_coverage_weights_tile_cells():
    grid = Grid(length=100.0, points=503)
    profile = build_multiwell(MultiWellSpec(100.0, 3, 4.2, 0.5))
    weights = well_coverage_weights(profile, grid)
    # every node cell is covered by wells + barriers; well coverage alone
    # never exceeds 1 and matches the mirror well exactly
    assert np.all(weights >= 0.0) and np.all(weights <= 1.0)
    assert np.array_equal(weights[0], weights[2][::-1])
    values = sample(profile, grid)
    in_barrier = values == 0.5
    assert np.all(weights[:, in_barrier].sum(axis=0) == 0.0)


@settings(max_examples=30, deadline=None)
@given(
    wells=st.integers(min_value=1, max_value=7),
    barrier=st.floats(min_value=0.5, max_value=6.0),
    height=st.floats(min_value=0.0, max_value=2.0),
    points=st.integers(min_value=50, max_value=900),
)
def test_symmetry_and_tiling_properties(wells, barrier, height, points):
    length = 100.0
    if (wells - 1) * barrier >= length:
        return
    profile = build_multiwell(
        MultiWellSpec(length, wells, barrier if wells > 1 else 0.0, height)
    )
    # segments tile exactly
    edges = [s for s, _, _ in profile.segments] + [length]
    assert edges[0] == 0.0
    for (s0, e0, _), s1 in zip(profile.segments, edges[1:]):
        assert e0 == s1
    grid = Grid(length=length, points=points)
    values = sample(profile, grid)
    assert np.array_equal(values, values[::-1])
    assert values.min() >= 0.0
    assert values.max() <= height + 1e-12
