"""Spaces, points, and located observations.

Two kinds of space are supported:

* :class:`GridSpace` -- a rectangular grid of cells addressed by integer
  ``(x, y)`` coordinates with top-left origin; distances are Euclidean in
  cell units, scaled by ``cell_size``.
* :class:`ExplicitSpace` -- an arbitrary finite point set with a
  user-supplied symmetric distance table.  The triangle inequality is not
  required, only symmetry and ``d(p, q) = 0`` exactly for ``p == q``.

An :class:`Observation` records that the value at a location belongs to a
nonempty set of domain values.  Observations covering the whole domain say
nothing and are rejected up front rather than silently treated as vacuous.
"""

from __future__ import annotations

import math
from collections.abc import Hashable, Iterable, Mapping, Sequence
from typing import Union

import numpy as np

from .errors import (
    EmptyValueSetError,
    OutOfBoundsError,
    SpaceError,
    TrivialObservationError,
)
from .evidence import ValueDomain

__all__ = ["GridSpace", "ExplicitSpace", "Space", "Observation", "ObservationSet"]

GridPoint = tuple[int, int]


class GridSpace:
    """``width x height`` grid of cells; points are integer ``(x, y)`` pairs."""

    __slots__ = ("width", "height", "cell_size")

    def __init__(self, width: int, height: int, cell_size: float = 1.0):
        if width < 1 or height < 1:
            raise SpaceError(f"grid dimensions must be positive, got {width}x{height}")
        if not (cell_size > 0.0 and math.isfinite(cell_size)):
            raise SpaceError(f"cell size must be a positive finite number, got {cell_size!r}")
        self.width = int(width)
        self.height = int(height)
        self.cell_size = float(cell_size)

    @property
    def size(self) -> int:
        return self.width * self.height

    def contains(self, point: GridPoint) -> bool:
        x, y = point
        return 0 <= x < self.width and 0 <= y < self.height

    def distance(self, p: GridPoint, q: GridPoint) -> float:
        return math.hypot(p[0] - q[0], p[1] - q[1]) * self.cell_size

    def sort_key(self, point: GridPoint) -> tuple:
        # Deterministic total order on points, used to break distance ties.
        return (point[0], point[1])

    def cells(self) -> Iterable[GridPoint]:
        """All cells in row-major order (top-left origin)."""
        for y in range(self.height):
            for x in range(self.width):
                yield (x, y)

    def cell_coordinates(self) -> np.ndarray:
        """(N, 2) array of ``(x, y)`` cell coordinates in row-major order."""
        xs, ys = np.meshgrid(np.arange(self.width), np.arange(self.height))
        return np.column_stack([xs.ravel(), ys.ravel()])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GridSpace)
            and (self.width, self.height, self.cell_size)
            == (other.width, other.height, other.cell_size)
        )

    def __repr__(self) -> str:
        return f"GridSpace({self.width}, {self.height}, cell_size={self.cell_size})"


class ExplicitSpace:
    """Finite point set with an explicit distance table.

    *distances* is either a full ``n x n`` matrix (row/column order matching
    *points*) or a mapping from unordered point pairs to distances; each
    pair may be given in either orientation, and both orientations must
    agree when given twice.
    """

    __slots__ = ("points", "_index", "_dist")

    def __init__(
        self,
        points: Sequence[Hashable],
        distances: Union[Mapping, np.ndarray, Sequence[Sequence[float]]],
    ):
        pts = tuple(points)
        if len(pts) < 1:
            raise SpaceError("an explicit space needs at least one point")
        if len(set(pts)) != len(pts):
            raise SpaceError("points must be distinct")
        index = {p: i for i, p in enumerate(pts)}
        n = len(pts)
        mat = np.zeros((n, n), dtype=float)
        if isinstance(distances, Mapping):
            seen = np.zeros((n, n), dtype=bool)
            for (p, q), d in distances.items():
                if p not in index or q not in index:
                    raise SpaceError(f"distance given for unknown pair ({p!r}, {q!r})")
                i, j = index[p], index[q]
                if seen[i, j] and mat[i, j] != d:
                    raise SpaceError(f"conflicting distances for pair ({p!r}, {q!r})")
                mat[i, j] = mat[j, i] = d
                seen[i, j] = seen[j, i] = True
            np.fill_diagonal(seen, True)
            if not seen.all():
                missing = np.argwhere(~seen)[0]
                raise SpaceError(
                    f"missing distance for pair ({pts[missing[0]]!r}, {pts[missing[1]]!r})"
                )
        else:
            arr = np.asarray(distances, dtype=float)
            if arr.shape != (n, n):
                raise SpaceError(f"distance matrix must be {n}x{n}, got {arr.shape}")
            mat = arr.copy()
        if not np.allclose(mat, mat.T, rtol=0.0, atol=0.0):
            raise SpaceError("distance table must be symmetric")
        if np.diag(mat).any():
            raise SpaceError("self-distances must be zero")
        off = ~np.eye(n, dtype=bool)
        if np.any(mat[off] <= 0.0) or not np.all(np.isfinite(mat)):
            raise SpaceError("distances between distinct points must be positive and finite")
        self.points = pts
        self._index = index
        self._dist = mat

    def contains(self, point: Hashable) -> bool:
        return point in self._index

    def distance(self, p: Hashable, q: Hashable) -> float:
        try:
            return float(self._dist[self._index[p], self._index[q]])
        except KeyError:
            raise OutOfBoundsError(f"point not in space: {p!r} or {q!r}") from None

    def sort_key(self, point: Hashable) -> tuple:
        return (self._index[point],)

    def __repr__(self) -> str:
        return f"ExplicitSpace({len(self.points)} points)"


Space = Union[GridSpace, ExplicitSpace]


class Observation:
    """A located, set-valued measurement: the value at *location* is in *value*."""

    __slots__ = ("location", "value")

    def __init__(self, location, value: str | Iterable[str]):
        if isinstance(value, str):
            value = (value,)
        self.location = tuple(location) if isinstance(location, (list, tuple)) else location
        self.value = frozenset(value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Observation):
            return NotImplemented
        return self.location == other.location and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.location, self.value))

    def __repr__(self) -> str:
        return f"Observation({self.location!r}, {set(self.value)!r})"


class ObservationSet:
    """Observations over a shared :class:`ValueDomain`.

    Construction validates every observation: values must be known domain
    labels, value sets must be nonempty, and whole-domain (trivial)
    observations are rejected.  Duplicate locations are allowed; repeated
    or contradictory measurements at one spot are meaningful inputs.
    """

    __slots__ = ("domain", "observations")

    def __init__(self, domain: ValueDomain, observations: Iterable[Observation] = ()):
        obs = tuple(observations)
        for o in obs:
            if not o.value:
                raise EmptyValueSetError(f"observation at {o.location!r} has an empty value set")
            bits = domain.bits(o.value)
            if bits == domain.full_bits:
                raise TrivialObservationError(
                    f"observation at {o.location!r} covers the whole domain and carries no evidence"
                )
        self.domain = domain
        self.observations = obs

    def __len__(self) -> int:
        return len(self.observations)

    def __iter__(self):
        return iter(self.observations)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ObservationSet):
            return NotImplemented
        return self.domain == other.domain and self.observations == other.observations

    def locations(self) -> tuple:
        return tuple(o.location for o in self.observations)

    def with_observation(self, obs: Observation) -> "ObservationSet":
        """New set with *obs* appended."""
        return ObservationSet(self.domain, self.observations + (obs,))

    def check_inside(self, space: Space) -> None:
        """Raise :class:`OutOfBoundsError` unless every location lies in *space*."""
        for o in self.observations:
            if not space.contains(o.location):
                raise OutOfBoundsError(f"observation location {o.location!r} outside {space!r}")

    def __repr__(self) -> str:
        return f"ObservationSet({self.domain!r}, {len(self.observations)} observations)"
