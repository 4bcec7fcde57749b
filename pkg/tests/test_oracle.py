import itertools

import pytest

from twolevel.oracle import (
    DegenerateConfiguration,
    affine_rank,
    brute_force_two_level,
    cube_points,
    facet_description,
    hyperplane_through,
    is_two_level_hull,
    orbit_representatives,
)


def test_square():
    h = facet_description([(0, 0), (0, 1), (1, 0), (1, 1)])
    assert len(h.facets) == 4 and len(h.vertices) == 4
    assert is_two_level_hull(h)


def test_cube():
    h = facet_description(cube_points(3))
    assert len(h.facets) == 6 and len(h.vertices) == 8


def test_cube_minus_vertex():
    h = facet_description(cube_points(3)[:-1])
    assert len(h.facets) == 7 and len(h.vertices) == 7
    assert not is_two_level_hull(h)


def test_non_vertices_detected():
    h = facet_description([(0, 0), (2, 0), (0, 2), (1, 0), (1, 1)])
    assert sorted(h.vertices) == [(0, 0), (0, 2), (2, 0)]
    assert len(h.facets) == 3


def test_degenerate():
    with pytest.raises(DegenerateConfiguration):
        facet_description([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(DegenerateConfiguration):
        facet_description([])


def test_primitives():
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 2
    assert hyperplane_through([(2, 0), (0, 2)]) == ((1, 1), 2)
    assert hyperplane_through([(1, 1), (2, 2)]) == ((1, -1), 0)
    assert hyperplane_through([(1, 1), (1, 1)]) is None


def test_orbit_counts():
    # subsets of the square, the 3-cube and the 4-cube up to symmetry
    assert len(orbit_representatives(2)) == 6
    assert len(orbit_representatives(3)) == 22
    assert len(orbit_representatives(4)) == 402


@pytest.mark.parametrize("d, count", [(1, 1), (2, 2), (3, 5)])
def test_class_counts(d, count):
    assert len(brute_force_two_level(d)) == count


def test_dimension_limit():
    with pytest.raises(ValueError):
        brute_force_two_level(5)
