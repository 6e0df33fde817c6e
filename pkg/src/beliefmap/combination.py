"""Aggregation of all observation supports at a focus point.

Naive conjunctive pooling treats every observation as an independent
source, which overcounts clusters: three measurements a metre apart are
nearly one source, not three.  The remedy implemented here weighs each
observation by a conditional importance in ``[0, 1]`` before combining:
observations are sorted by distance to the focus point, and the i-th one
is discounted according to how close it sits to the ones already counted.
The importance comes from a set measure over observation locations that
behaves like an effective number of independent sources:

* ``measure(empty) = 0`` and ``measure({p}) = 1``;
* n points, pairwise far apart, measure n (no discount);
* n copies of the same point measure exactly 1 (duplicates are free).

Discounting raises the complement of a support's strength to the power of
the importance, so importance 1 keeps the support and importance 0 turns
it vacuous.

Two equivalent evaluation routes exist: a readable scalar route used for
explicit distance-table spaces, and a vectorized route over grids that
evaluates many focus cells at once.  Grid requests always take the
vectorized route, so evaluating one cell and evaluating the whole field
produce bit-identical numbers.  For single-valued observations there is
additionally a closed-form fast path, verified against the generic route.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import (
    NoEvidenceError,
    NonSingletonObservationError,
    OutOfBoundsError,
    TotalConflictError,
)
from .evidence import (
    TOTAL_CONFLICT_EPS,
    MassAssignment,
    ValueDomain,
    combine_many,
    simple_support,
)
from .persistence import DecayModel, decay, lambda_of_set
from .spaces import GridSpace, Observation, ObservationSet, Space

__all__ = [
    "InteractionModel",
    "CombinationConfig",
    "interaction_measure",
    "conditional_importance",
    "combine_at_focus",
    "combine_at_focus_precise",
]

_CHUNK = 4096


@dataclass(frozen=True)
class InteractionModel:
    """Distance scale on which nearby observations stop counting separately."""

    lambda_mu: float

    def __post_init__(self):
        if not (self.lambda_mu > 0.0 and math.isfinite(self.lambda_mu)):
            raise ValueError(f"interaction scale must be positive and finite, got {self.lambda_mu!r}")


@dataclass(frozen=True)
class CombinationConfig:
    """How supports are pooled.

    ``mode`` chooses whether contradiction mass is redistributed
    (``"normalized"``) or kept on the empty set (``"unnormalized"``).
    ``discount`` chooses between naive independent pooling (``"plain"``)
    and dependence-aware discounting (``"interaction"``).

    Equidistant observations are ordered deterministically by location
    (lexicographic coordinates, or registration order in explicit spaces)
    and then by value subset, so results are reproducible regardless of
    input order.
    """

    mode: str = "normalized"
    discount: str = "interaction"

    def __post_init__(self):
        if self.mode not in ("normalized", "unnormalized"):
            raise ValueError(f"mode must be 'normalized' or 'unnormalized', got {self.mode!r}")
        if self.discount not in ("plain", "interaction"):
            raise ValueError(f"discount must be 'plain' or 'interaction', got {self.discount!r}")


def interaction_measure(points: Iterable, space: Space, model: InteractionModel) -> float:
    """Effective number of independent sources among a set of *points*.

    This is a set function: repeated mentions of the same point collapse
    before anything is computed.  For ``n >= 2`` distinct points the value
    is ``n - (2/n) * sum over unordered pairs of exp(-d/lambda_mu)``, which
    interpolates between ``n`` (all far apart) and ``1`` (all clustered at
    one spot).
    """
    pts = list(dict.fromkeys(points))
    n = len(pts)
    if n == 0:
        return 0.0
    if n == 1:
        return 1.0
    pair_sum = math.fsum(
        math.exp(-space.distance(pts[i], pts[j]) / model.lambda_mu)
        for i in range(n)
        for j in range(i + 1, n)
    )
    return n - (2.0 * pair_sum) / n


def conditional_importance(point, counted: Iterable, space: Space, model: InteractionModel) -> float:
    """Importance in ``[0, 1]`` of *point* once *counted* points are known.

    The raw increment of :func:`interaction_measure` is clamped into
    ``[0, 1]``: a point far from everything counted keeps full weight, and
    a point that is already counted gets exactly zero, so repeating a
    measurement location never changes anything.  (The lower clamp matters
    in spaces without the triangle inequality, where a tight crowd can
    push the raw increment negative; a negative exponent would amplify
    evidence instead of discounting it.)
    """
    pts = list(dict.fromkeys(counted))
    if point in pts:
        return 0.0
    base = interaction_measure(pts, space, model)
    grown = interaction_measure(pts + [point], space, model)
    return min(1.0, max(0.0, grown - base))


# ---------------------------------------------------------------------------
# shared ordering and discount helpers (scalar route)
# ---------------------------------------------------------------------------


def _sorted_entries(obs: ObservationSet, focus, space: Space):
    """Observations sorted by (distance to focus, location order, value bits)."""
    domain = obs.domain
    entries = [
        (space.distance(o.location, focus), space.sort_key(o.location), domain.bits(o.value), o)
        for o in obs
    ]
    entries.sort(key=lambda e: e[:3])
    return entries


def _discount_exponents(entries, space: Space, interaction: InteractionModel | None, discount: str):
    if discount == "plain":
        return [1.0] * len(entries)
    mus = []
    counted: list = []
    for _, _, _, o in entries:
        mus.append(conditional_importance(o.location, counted, space, interaction))
        counted.append(o.location)
    return mus


def _require_interaction(cfg: CombinationConfig, interaction: InteractionModel | None):
    if cfg.discount == "interaction" and interaction is None:
        raise ValueError("interaction discount requested but no InteractionModel given")


# ---------------------------------------------------------------------------
# vectorized grid route
# ---------------------------------------------------------------------------


def _intersection_closure(domain: ValueDomain, masks: Iterable[int]) -> list[int]:
    """All subsets reachable by intersecting observation value sets, plus 0 and S."""
    universe = {0, domain.full_bits} | set(masks)
    frontier = set(universe)
    while frontier:
        new = set()
        for a in frontier:
            for b in universe:
                c = a & b
                if c not in universe:
                    new.add(c)
        universe |= new
        frontier = new
    return sorted(universe)


def _grid_masses(
    obs: ObservationSet,
    points: np.ndarray,
    space: GridSpace,
    decay_model: DecayModel,
    interaction: InteractionModel | None,
    cfg: CombinationConfig,
) -> tuple[tuple[int, ...], np.ndarray, np.ndarray]:
    """Combined masses at many grid points at once.

    *points* is an ``(N, 2)`` integer array of cell coordinates.  Returns
    ``(subset_bits, masses, conflicted)`` where ``subset_bits`` lists the
    subset bitmasks the mass columns refer to (ascending, so the empty set
    is column 0 and the full domain the last column), ``masses`` is
    ``(N, C)`` and ``conflicted`` flags cells whose surviving mass was too
    small to normalize (only possible in normalized mode; such rows keep
    their unnormalized masses).

    Each row is processed with the exact same sequence of elementwise and
    per-row operations regardless of how many rows are evaluated together,
    so single-cell and whole-field calls agree bitwise.
    """
    domain = obs.domain
    n_obs = len(obs)
    vbits = np.array([domain.bits(o.value) for o in obs], dtype=np.int64)
    oxi = np.array([o.location[0] for o in obs], dtype=np.int64)
    oyi = np.array([o.location[1] for o in obs], dtype=np.int64)
    ox = oxi.astype(np.float64)
    oy = oyi.astype(np.float64)
    lam = np.array([lambda_of_set(o.value, decay_model) for o in obs], dtype=np.float64)
    loc_key = (oxi << 32) | oyi

    interact = cfg.discount == "interaction" and n_obs > 1
    if interact:
        pair_dist = np.hypot(ox[:, None] - ox[None, :], oy[:, None] - oy[None, :]) * space.cell_size
        pair_e = np.exp(-pair_dist / interaction.lambda_mu)

    universe = _intersection_closure(domain, vbits.tolist())
    col_of = {b: i for i, b in enumerate(universe)}
    n_cols = len(universe)
    full_col = col_of[domain.full_bits]
    # column each (subset, observation) intersection lands in
    inter_col = np.array(
        [[col_of[b & int(v)] for v in vbits] for b in universe], dtype=np.intp
    )

    total = len(points)
    masses = np.empty((total, n_cols), dtype=np.float64)
    conflicted = np.zeros(total, dtype=bool)

    for start in range(0, total, _CHUNK):
        blk = points[start : start + _CHUNK]
        n = len(blk)
        px = blk[:, :1].astype(np.float64)
        py = blk[:, 1:2].astype(np.float64)
        dist = np.hypot(px - ox[None, :], py - oy[None, :]) * space.cell_size

        order = np.lexsort(
            (
                np.broadcast_to(vbits, dist.shape),
                np.broadcast_to(loc_key, dist.shape),
                dist,
            ),
            axis=-1,
        )
        d_s = np.take_along_axis(dist, order, axis=1)
        lam_s = lam[order]

        alpha = np.zeros_like(d_s)
        finite = np.isfinite(lam_s) & (lam_s > 0.0)
        alpha[finite] = np.exp(-d_s[finite] / lam_s[finite])
        alpha[np.isinf(lam_s)] = 1.0
        zero = lam_s == 0.0
        alpha[zero] = (d_s[zero] == 0.0).astype(np.float64)

        if interact:
            # the importance measure is a set function over locations, so
            # repeats must collapse; same-location observations always sort
            # adjacently (equal distance and location key), which makes a
            # first-occurrence mask sufficient
            loc_s = loc_key[order]
            counted = np.ones_like(d_s)
            counted[:, 1:] = (loc_s[:, 1:] != loc_s[:, :-1]).astype(np.float64)
            pairs = pair_e[order[:, :, None], order[:, None, :]]
            cross = (np.tril(pairs, k=-1) * counted[:, None, :]).sum(axis=2)
            c_incl = np.cumsum(counted, axis=1)
            q_incl = np.cumsum(counted * cross, axis=1)

            def measure(count, pair_sum):
                multi = count >= 2.0
                denom = np.where(multi, count, 1.0)
                return np.where(
                    multi,
                    count - (2.0 * pair_sum) / denom,
                    np.where(count == 1.0, 1.0, 0.0),
                )

            grown = measure(c_incl, q_incl)
            base = measure(c_incl - counted, q_incl - counted * cross)
            mu = counted * np.clip(grown - base, 0.0, 1.0)
        else:
            mu = np.ones_like(d_s)

        keep = np.power(1.0 - alpha, mu)  # complement of the discounted support

        m = np.zeros((n, n_cols), dtype=np.float64)
        m[:, full_col] = 1.0
        rows = np.arange(n)
        for i in range(n_obs):
            which = order[:, i]
            w = keep[:, i]
            b = 1.0 - w
            nxt = np.zeros_like(m)
            for c in range(n_cols):
                col = m[:, c]
                if not col.any():
                    continue
                nxt[rows, inter_col[c][which]] += col * b
                nxt[:, c] += col * w
            m = nxt

        if cfg.mode == "normalized":
            surviving = 1.0 - m[:, 0]
            bad = surviving <= TOTAL_CONFLICT_EPS
            ok = ~bad
            m[ok] /= surviving[ok][:, None]
            m[ok, 0] = 0.0
            conflicted[start : start + n] = bad
        masses[start : start + n] = m

    return tuple(universe), masses, conflicted


# ---------------------------------------------------------------------------
# public focus-point operations
# ---------------------------------------------------------------------------


def combine_at_focus(
    obs: ObservationSet,
    focus,
    space: Space,
    decay_model: DecayModel,
    interaction: InteractionModel | None = None,
    cfg: CombinationConfig = CombinationConfig(),
) -> MassAssignment:
    """Pool the supports of all observations at one focus point.

    Observations are sorted by distance to *focus*; under the interaction
    discount each one's importance is conditioned on the closer ones, the
    support complements are raised to those importances, and everything is
    pooled conjunctively.  Plain discount keeps every importance at 1.
    Raises :class:`TotalConflictError` in normalized mode when contradictory
    certain evidence leaves no mass to rescale.
    """
    _require_interaction(cfg, interaction)
    if len(obs) == 0:
        raise NoEvidenceError("no observations to combine")
    obs.check_inside(space)
    if isinstance(space, GridSpace):
        if not space.contains(focus):
            raise OutOfBoundsError(f"focus {focus!r} outside {space!r}")
        point = np.array([[focus[0], focus[1]]], dtype=np.int64)
        bits, m, bad = _grid_masses(obs, point, space, decay_model, interaction, cfg)
        if bad[0]:
            raise TotalConflictError(f"total conflict at focus {focus!r}")
        return MassAssignment(obs.domain, {b: v for b, v in zip(bits, m[0]) if v != 0.0})

    entries = _sorted_entries(obs, focus, space)
    mus = _discount_exponents(entries, space, interaction, cfg.discount)
    supports = []
    for (d, _, bits, o), mu in zip(entries, mus):
        strength = decay(o.value, d, decay_model)
        supports.append(simple_support(obs.domain, bits, 1.0 - (1.0 - strength) ** mu))
    pooled = combine_many(supports, mode="unnormalized")
    return pooled if cfg.mode == "unnormalized" else pooled.normalize()


def combine_at_focus_precise(
    obs: ObservationSet,
    focus,
    space: Space,
    decay_model: DecayModel,
    interaction: InteractionModel | None = None,
    cfg: CombinationConfig = CombinationConfig(),
) -> MassAssignment:
    """Closed-form pooling for single-valued observations.

    With every observed value a singleton, the pooled masses have a product
    form: writing ``w_k`` for the discounted complement of observation k's
    support, a value ``v`` gets ``(1 - prod of w_k over supporters of v) *
    (prod of w_k over the rest)``, the whole domain keeps ``prod of all
    w_k`` and the remainder is contradiction mass.  This is a verified fast
    path: it must match :func:`combine_at_focus` for the same inputs.
    """
    _require_interaction(cfg, interaction)
    if len(obs) == 0:
        raise NoEvidenceError("no observations to combine")
    obs.check_inside(space)
    domain = obs.domain
    for o in obs:
        if len(o.value) != 1:
            raise NonSingletonObservationError(
                f"observation at {o.location!r} has {len(o.value)} values; "
                "the closed form needs single-valued observations"
            )
    entries = _sorted_entries(obs, focus, space)
    mus = _discount_exponents(entries, space, interaction, cfg.discount)

    keep: list[float] = []
    value_bits: list[int] = []
    for (d, _, bits, o), mu in zip(entries, mus):
        strength = decay(o.value, d, decay_model)
        keep.append((1.0 - strength) ** mu)
        value_bits.append(bits)

    observed = sorted(set(value_bits))
    entries_out: list[tuple[int, float]] = []
    for bits in observed:
        inside = math.prod(w for w, b in zip(keep, value_bits) if b == bits)
        outside = math.prod(w for w, b in zip(keep, value_bits) if b != bits)
        entries_out.append((bits, (1.0 - inside) * outside))
    all_keep = math.prod(keep)
    entries_out.append((domain.full_bits, all_keep))
    residual = 1.0 - math.fsum(v for _, v in entries_out)
    entries_out.append((0, max(0.0, residual)))

    pooled = MassAssignment(domain, entries_out)
    return pooled if cfg.mode == "unnormalized" else pooled.normalize()
