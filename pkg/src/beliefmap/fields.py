"""Whole-grid extrapolation and the maps derived from it.

:func:`extrapolate_field` evaluates the focus-point combination at every
cell of a grid and returns a :class:`BeliefField` holding one mass
assignment per cell.  Cells are independent, and the per-cell numbers are
bit-identical to calling :func:`~beliefmap.combination.combine_at_focus`
on that cell.

Derived maps reduce the field to scalars or values per cell:

* entropy of the per-cell pignistic distribution (natural log);
* information level ``1 - H / ln|S|`` in ``[0, 1]``, which is low both
  where evidence is missing and where it is balanced-contradictory;
* contradiction mass per cell (unnormalized fields only);
* the most plausible value per cell, with a belief threshold below which
  a cell stays undetermined;
* a ranking of candidate measurement locations by expected one-step drop
  in total grid entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combination import CombinationConfig, InteractionModel, _grid_masses, _require_interaction
from .errors import (
    NoEvidenceError,
    TotalConflictError,
    UnsupportedDomainSizeError,
    WrongModeError,
)
from .evidence import TOTAL_CONFLICT_EPS, MassAssignment, ValueDomain
from .persistence import DecayModel
from .spaces import GridSpace, Observation, ObservationSet

__all__ = [
    "BeliefField",
    "ScalarField",
    "ValueField",
    "extrapolate_field",
    "entropy_map",
    "information_map",
    "binary_information_map",
    "conflict_map",
    "plausible_map",
    "suggest_next_measurement",
]

UNDETERMINED = -1


@dataclass(frozen=True, eq=False)
class ScalarField:
    """One real value per grid cell, indexed ``values[y, x]``."""

    space: GridSpace
    values: np.ndarray

    def at(self, point) -> float:
        return float(self.values[point[1], point[0]])


@dataclass(frozen=True, eq=False)
class ValueField:
    """One domain value (or undetermined) per cell, as indices into the domain.

    ``indices[y, x]`` is the value's position in the domain ordering, or
    :data:`UNDETERMINED` (-1).
    """

    space: GridSpace
    domain: ValueDomain
    indices: np.ndarray

    def label_at(self, point) -> str | None:
        idx = int(self.indices[point[1], point[0]])
        return None if idx == UNDETERMINED else self.domain.values[idx]


@dataclass(frozen=True, eq=False)
class BeliefField:
    """Combined mass assignment for every cell of a grid.

    ``masses[y, x, c]`` is the mass of the subset whose bitmask is
    ``subset_bits[c]``.  In normalized mode, cells where combination met
    total conflict are flagged in ``conflicted`` and keep their raw
    unnormalized masses; such cells carry no usable information.  The
    decay, interaction and combination settings the field was built with
    are kept for provenance and for follow-up computations.
    """

    space: GridSpace
    domain: ValueDomain
    subset_bits: tuple[int, ...]
    masses: np.ndarray
    conflicted: np.ndarray
    decay: DecayModel
    interaction: InteractionModel | None
    config: CombinationConfig

    def mass_at(self, point) -> MassAssignment:
        """The cell's assignment; raises on conflict-flagged cells."""
        x, y = point
        if self.conflicted[y, x]:
            raise TotalConflictError(f"total conflict at cell {point!r}")
        row = self.masses[y, x]
        return MassAssignment(
            self.domain, {b: float(v) for b, v in zip(self.subset_bits, row) if v != 0.0}
        )

    def is_conflicted(self, point) -> bool:
        return bool(self.conflicted[point[1], point[0]])


def extrapolate_field(
    space: GridSpace,
    obs: ObservationSet,
    decay_model: DecayModel,
    interaction: InteractionModel | None = None,
    cfg: CombinationConfig = CombinationConfig(),
) -> BeliefField:
    """Combine all observation supports at every cell of *space*."""
    if not isinstance(space, GridSpace):
        raise TypeError("extrapolate_field needs a GridSpace")
    _require_interaction(cfg, interaction)
    if len(obs) == 0:
        raise NoEvidenceError("no observations to extrapolate from")
    obs.check_inside(space)
    bits, masses, conflicted = _grid_masses(
        obs, space.cell_coordinates(), space, decay_model, interaction, cfg
    )
    h, w = space.height, space.width
    return BeliefField(
        space=space,
        domain=obs.domain,
        subset_bits=bits,
        masses=masses.reshape(h, w, len(bits)),
        conflicted=conflicted.reshape(h, w),
        decay=decay_model,
        interaction=interaction,
        config=cfg,
    )


# ---------------------------------------------------------------------------
# per-cell pignistic machinery shared by the derived maps
# ---------------------------------------------------------------------------


def _normalized_masses(field: BeliefField) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell normalized masses plus a mask of cells that cannot be normalized."""
    m = field.masses
    if field.config.mode == "normalized":
        return m, field.conflicted.copy()
    empty = m[..., 0]
    surviving = 1.0 - empty
    bad = surviving <= TOTAL_CONFLICT_EPS
    out = m.copy()
    out[..., 0] = 0.0
    ok = ~bad
    out[ok] /= surviving[ok][:, None]
    return out, bad


def _pignistic_probs(field: BeliefField) -> tuple[np.ndarray, np.ndarray]:
    """(H, W, |S|) pignistic probabilities; conflict-flagged cells get uniform."""
    m, bad = _normalized_masses(field)
    size = field.domain.size
    weights = np.zeros((len(field.subset_bits), size))
    for c, bits in enumerate(field.subset_bits):
        if bits == 0:
            continue
        share = 1.0 / bits.bit_count()
        for i in range(size):
            if bits >> i & 1:
                weights[c, i] = share
    probs = m @ weights
    probs[bad] = 1.0 / size
    return probs, bad


def entropy_map(field: BeliefField) -> ScalarField:
    """Entropy (natural log) of each cell's pignistic distribution.

    Cells flagged as total conflict carry no usable information and get the
    maximal entropy ``ln|S|``.
    """
    probs, bad = _pignistic_probs(field)
    safe = np.where(probs > 0.0, probs, 1.0)
    h = -(np.where(probs > 0.0, probs * np.log(safe), 0.0)).sum(axis=-1)
    h[bad] = math.log(field.domain.size)
    return ScalarField(field.space, h)


def information_map(field: BeliefField) -> ScalarField:
    """Information level ``1 - H / ln|S|`` in ``[0, 1]`` per cell."""
    h = entropy_map(field).values
    return ScalarField(field.space, 1.0 - h / math.log(field.domain.size))


def binary_information_map(field: BeliefField) -> ScalarField:
    """Rendering-oriented information shade for binary domains.

    Twice the distance of the pignistic probability from one half: 0 at a
    balanced cell, 1 at a certain one.  Orders cells like
    :func:`information_map` but spreads mid values more evenly, which is
    the conventional shade for two-valued maps.
    """
    if field.domain.size != 2:
        raise UnsupportedDomainSizeError(
            f"binary information shade needs a 2-value domain, got {field.domain.size}"
        )
    probs, _ = _pignistic_probs(field)
    return ScalarField(field.space, np.abs(probs[..., 0] - 0.5) * 2.0)


def conflict_map(field: BeliefField) -> ScalarField:
    """Contradiction mass per cell.  Only meaningful for unnormalized fields."""
    if field.config.mode != "unnormalized":
        raise WrongModeError(
            "conflict map needs a field built in unnormalized mode; "
            "normalization discards the contradiction mass"
        )
    return ScalarField(field.space, field.masses[..., 0].copy())


def plausible_map(field: BeliefField, threshold: float = 0.0) -> ValueField:
    """Most plausible value per cell, or undetermined.

    A cell is undetermined when its best singleton belief stays below
    *threshold* (so weak leanings are not mistaken for knowledge), when the
    pignistic maximum is tied, or when the cell is conflict-flagged.
    """
    if not 0.0 <= threshold < 1.0:
        raise ValueError(f"threshold must lie in [0, 1), got {threshold!r}")
    m, bad = _normalized_masses(field)
    size = field.domain.size
    col_of = {b: i for i, b in enumerate(field.subset_bits)}
    bel = np.zeros(m.shape[:2] + (size,))
    for i in range(size):
        c = col_of.get(1 << i)
        if c is not None:
            bel[..., i] = m[..., c]
    probs, _ = _pignistic_probs(field)
    best = probs.max(axis=-1)
    tied = (probs == best[..., None]).sum(axis=-1) > 1
    undetermined = bad | tied | (bel.max(axis=-1) < threshold)
    indices = probs.argmax(axis=-1).astype(np.int16)
    indices[undetermined] = UNDETERMINED
    return ValueField(field.space, field.domain, indices)


def suggest_next_measurement(
    space: GridSpace,
    obs: ObservationSet,
    decay_model: DecayModel,
    interaction: InteractionModel | None = None,
    cfg: CombinationConfig = CombinationConfig(),
    k: int = 5,
    stride: int = 1,
) -> list[tuple[tuple[int, int], float]]:
    """Rank candidate measurement cells by expected drop in total entropy.

    One-step lookahead: for each candidate cell, each possible single-value
    measurement outcome is weighted by the cell's current pignistic
    probability, the whole field is recomputed with that observation added,
    and the expected remaining total entropy is compared with the current
    one.  Returns the top *k* ``((x, y), expected_loss)`` pairs, best
    first; ties fall back to row-major cell order.

    *stride* evaluates every stride-th cell along both axes, trading
    completeness for speed (the lookahead costs one field evaluation per
    candidate and value).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    field0 = extrapolate_field(space, obs, decay_model, interaction, cfg)
    total0 = float(entropy_map(field0).values.sum())
    probs0, _ = _pignistic_probs(field0)

    ranked: list[tuple[float, int, tuple[int, int]]] = []
    index = 0
    for y in range(0, space.height, stride):
        for x in range(0, space.width, stride):
            expected_after = 0.0
            for vi, value in enumerate(field0.domain.values):
                p = float(probs0[y, x, vi])
                if p == 0.0:
                    continue
                grown = obs.with_observation(Observation((x, y), value))
                field_v = extrapolate_field(space, grown, decay_model, interaction, cfg)
                expected_after += p * float(entropy_map(field_v).values.sum())
            ranked.append((total0 - expected_after, index, (x, y)))
            index += 1
    ranked.sort(key=lambda t: (-t[0], t[1]))
    return [(cell, loss) for loss, _, cell in ranked[:k]]
