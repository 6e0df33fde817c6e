"""Distance decay of evidential support.

A value observed at one point supports believing the same value at nearby
points, with a strength that falls off with distance.  The fall-off is an
exponential ``exp(-d / lam)`` whose scale ``lam`` is the value's
persistence: ``lam = 0`` means the value carries no support beyond its own
location, ``lam = inf`` means it supports itself everywhere.  Any decay
function used here must be non-increasing in distance, equal to 1 exactly
at distance 0, and vanish at infinity; the exponential family is currently
the only built-in member.

For a set of values the weakest member governs: ``lam(V) = min over v in V``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .errors import (
    DomainMismatchError,
    EmptyValueSetError,
    NegativeDistanceError,
    NonPositiveDistanceError,
    TrivialObservationError,
)
from .evidence import MassAssignment, ValueDomain, simple_support
from .spaces import Observation, Space

__all__ = [
    "DecayModel",
    "lambda_of_set",
    "decay",
    "lambda_from_half_distance",
    "support_from_observation",
]


@dataclass(frozen=True)
class DecayModel:
    """Per-value persistence scales plus the decay family to apply.

    ``lambda_per_value`` maps each value label to a scale in ``[0, inf]``
    (both limits are accepted and handled exactly).
    """

    lambda_per_value: Mapping[str, float]
    decay_kind: str = "exponential"

    def __post_init__(self):
        lam = dict(self.lambda_per_value)
        for v, s in lam.items():
            s = float(s)
            if math.isnan(s) or s < 0.0:
                raise NegativeDistanceError(f"persistence scale for {v!r} must be >= 0, got {s!r}")
            lam[v] = s
        object.__setattr__(self, "lambda_per_value", lam)
        if self.decay_kind != "exponential":
            raise ValueError(f"unsupported decay kind {self.decay_kind!r}")

    @staticmethod
    def uniform(values: Iterable[str] | ValueDomain, scale: float) -> "DecayModel":
        """Same persistence scale for every value."""
        if isinstance(values, ValueDomain):
            values = values.values
        return DecayModel({v: scale for v in values})

    def scale_of(self, value: str) -> float:
        try:
            return self.lambda_per_value[value]
        except KeyError:
            raise DomainMismatchError(f"no persistence scale for value {value!r}") from None


def lambda_of_set(value_set: Iterable[str], model: DecayModel) -> float:
    """Persistence scale of a value set: the minimum over its members."""
    if isinstance(value_set, str):
        value_set = (value_set,)
    scales = [model.scale_of(v) for v in value_set]
    if not scales:
        raise EmptyValueSetError("cannot take the persistence scale of an empty value set")
    return min(scales)


def decay(value_set: Iterable[str], dist: float, model: DecayModel) -> float:
    """Support strength in ``[0, 1]`` for *value_set* at distance *dist*.

    Limit cases: a zero scale gives full support at distance 0 and none
    beyond; an infinite scale gives full support everywhere.
    """
    dist = float(dist)
    if math.isnan(dist) or dist < 0.0:
        raise NegativeDistanceError(f"distance must be >= 0, got {dist!r}")
    lam = lambda_of_set(value_set, model)
    if lam == math.inf:
        return 1.0
    if lam == 0.0:
        return 1.0 if dist == 0.0 else 0.0
    return math.exp(-dist / lam)


def lambda_from_half_distance(d_half: float) -> float:
    """Scale at which support has dropped to one half at distance *d_half*."""
    d_half = float(d_half)
    if math.isnan(d_half) or d_half <= 0.0:
        raise NonPositiveDistanceError(f"half-support distance must be > 0, got {d_half!r}")
    return d_half / math.log(2.0)


def support_from_observation(
    obs: Observation,
    focus,
    space: Space,
    model: DecayModel,
    domain: ValueDomain,
) -> MassAssignment:
    """Simple support carried by one observation toward a focus point.

    The observed value set gets mass equal to the decayed strength at the
    focus distance, the rest stays on the whole domain.  At the observation
    location itself the support is certainty.
    """
    bits = domain.bits(obs.value)
    if bits == domain.full_bits:
        raise TrivialObservationError(
            f"observation at {obs.location!r} covers the whole domain and carries no evidence"
        )
    strength = decay(obs.value, space.distance(obs.location, focus), model)
    return simple_support(domain, bits, strength)
