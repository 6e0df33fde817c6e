"""Spatial extrapolation of pointwise observations with belief functions.

Observed values spread their support to nearby locations with a strength
that decays with distance; supports are pooled per location with a
combination rule that discounts clustered (hence dependent) observations.
The result is a belief field over a grid, from which entropy, information,
conflict, and plausible-value maps are derived, along with a ranking of
where to measure next.
"""

from .errors import (
    BeliefMapError,
    DomainMismatchError,
    EmptyValueSetError,
    InvalidSubsetError,
    MassSumError,
    NegativeDistanceError,
    NegativeMassError,
    NoEvidenceError,
    NonPositiveDistanceError,
    NonSingletonObservationError,
    ObservationParseError,
    OutOfBoundsError,
    SpaceError,
    TotalConflictError,
    TrivialObservationError,
    UnknownValueError,
    UnnormalizedMassError,
    UnsupportedDomainSizeError,
    WrongModeError,
)
from .evidence import (
    MassAssignment,
    ValueDomain,
    combine,
    combine_many,
    conflict_degree,
    make_mass,
    simple_support,
    vacuous,
)
from .spaces import ExplicitSpace, GridSpace, Observation, ObservationSet
from .persistence import (
    DecayModel,
    decay,
    lambda_from_half_distance,
    lambda_of_set,
    support_from_observation,
)
from .combination import (
    CombinationConfig,
    InteractionModel,
    combine_at_focus,
    combine_at_focus_precise,
    conditional_importance,
    interaction_measure,
)
from .fields import (
    BeliefField,
    ScalarField,
    ValueField,
    binary_information_map,
    conflict_map,
    entropy_map,
    extrapolate_field,
    information_map,
    plausible_map,
    suggest_next_measurement,
)
from .obsio import (
    belief_shades,
    masses_csv_text,
    parse_observations,
    pgm_bytes,
    plausible_csv_text,
    plausible_shades,
    quantize_gray,
    scalar_csv_text,
    serialize_observations,
    suggestions_csv_text,
    value_shades,
    write_pgm,
)

__version__ = "0.1.0"
