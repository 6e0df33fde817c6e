"""Tests for grid/explicit spaces and observation containers."""

import math

import pytest

from beliefmap import (
    EmptyValueSetError,
    ExplicitSpace,
    GridSpace,
    Observation,
    ObservationSet,
    OutOfBoundsError,
    SpaceError,
    TrivialObservationError,
    ValueDomain,
)

DOM = ValueDomain(["white", "black", "gray"])


def test_grid_basics():
    g = GridSpace(4, 3)
    assert g.size == 12
    assert g.contains((0, 0)) and g.contains((3, 2))
    assert not g.contains((4, 0)) and not g.contains((0, -1))
    assert g.distance((0, 0), (3, 4)) == 5.0
    assert g.distance((1, 1), (1, 1)) == 0.0
    cells = list(g.cells())
    assert cells[0] == (0, 0) and cells[1] == (1, 0) and cells[-1] == (3, 2)
    coords = g.cell_coordinates()
    assert coords.shape == (12, 2)
    assert tuple(coords[1]) == (1, 0)


def test_grid_cell_size_scales_distances():
    g = GridSpace(4, 4, cell_size=2.5)
    assert g.distance((0, 0), (3, 4)) == pytest.approx(12.5)


def test_grid_validation():
    with pytest.raises(SpaceError):
        GridSpace(0, 5)
    with pytest.raises(SpaceError):
        GridSpace(5, 5, cell_size=0.0)


def test_explicit_space_from_mapping():
    sp = ExplicitSpace(["x", "y", "z"], {("x", "y"): 1.0, ("x", "z"): 2.0, ("y", "z"): 2.5})
    assert sp.distance("x", "y") == 1.0
    assert sp.distance("y", "x") == 1.0
    assert sp.distance("z", "z") == 0.0
    assert sp.sort_key("y") < sp.sort_key("z")
    with pytest.raises(OutOfBoundsError):
        sp.distance("x", "w")


def test_explicit_space_triangle_inequality_not_required():
    # wildly non-metric but symmetric distances are accepted
    sp = ExplicitSpace(["a", "b", "c"], {("a", "b"): 1.0, ("b", "c"): 1.0, ("a", "c"): 100.0})
    assert sp.distance("a", "c") == 100.0


def test_explicit_space_from_matrix():
    sp = ExplicitSpace(["p", "q"], [[0.0, 3.0], [3.0, 0.0]])
    assert sp.distance("p", "q") == 3.0


def test_explicit_space_validation():
    with pytest.raises(SpaceError):
        ExplicitSpace(["p", "q"], [[0.0, 3.0], [2.0, 0.0]])  # asymmetric
    with pytest.raises(SpaceError):
        ExplicitSpace(["p", "q"], [[0.5, 3.0], [3.0, 0.0]])  # nonzero diagonal
    with pytest.raises(SpaceError):
        ExplicitSpace(["p", "q"], {("p", "q"): -1.0})  # negative
    with pytest.raises(SpaceError):
        ExplicitSpace(["p", "q", "r"], {("p", "q"): 1.0})  # missing pair
    with pytest.raises(SpaceError):
        ExplicitSpace(["p", "p"], {})  # duplicate points
    with pytest.raises(SpaceError):
        ExplicitSpace(["p", "q"], {("p", "q"): math.inf})


def test_observation_value_coercion():
    o = Observation((1, 2), "black")
    assert o.value == frozenset({"black"})
    assert o == Observation([1, 2], ["black"])


def test_observation_set_validation():
    obs = ObservationSet(DOM, [Observation((0, 0), "black"), Observation((1, 1), ("white", "gray"))])
    assert len(obs) == 2
    with pytest.raises(TrivialObservationError):
        ObservationSet(DOM, [Observation((0, 0), ("white", "black", "gray"))])
    with pytest.raises(EmptyValueSetError):
        ObservationSet(DOM, [Observation((0, 0), ())])


def test_observation_set_growth_and_bounds():
    obs = ObservationSet(DOM, [Observation((0, 0), "black")])
    grown = obs.with_observation(Observation((1, 0), "white"))
    assert len(obs) == 1 and len(grown) == 2
    grown.check_inside(GridSpace(2, 1))
    with pytest.raises(OutOfBoundsError):
        grown.check_inside(GridSpace(1, 1))
