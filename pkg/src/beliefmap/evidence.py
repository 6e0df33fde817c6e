"""Belief algebra over a finite domain of qualitative values.

A :class:`ValueDomain` fixes an ordered tuple of value labels (at most 16,
so every subset fits in an int bitmask: bit ``i`` set means the ``i``-th
value is a member).  A :class:`MassAssignment` allocates unit mass to
subsets of the domain; subsets with positive mass are its focal elements.
Assignments may carry mass on the empty set, which records the degree of
contradiction accumulated by unnormalized combination.

All values are immutable and every operation is a pure function, so they
can be shared freely across threads.
"""

from __future__ import annotations

import math
import operator
from collections.abc import Iterable, Mapping

from .errors import (
    DomainMismatchError,
    InvalidSubsetError,
    MassSumError,
    NegativeMassError,
    NoEvidenceError,
    TotalConflictError,
    UnnormalizedMassError,
)

__all__ = [
    "MASS_SUM_TOL",
    "TOTAL_CONFLICT_EPS",
    "ValueDomain",
    "MassAssignment",
    "make_mass",
    "vacuous",
    "simple_support",
    "combine",
    "combine_many",
    "conflict_degree",
]

#: Tolerance on the total mass of a constructed assignment.
MASS_SUM_TOL = 1e-9

#: Below this much surviving mass, normalization is treated as total conflict.
TOTAL_CONFLICT_EPS = 1e-12

MAX_DOMAIN_SIZE = 16

# Accepted spellings of a subset argument: a ready-made bitmask, a single
# label, or an iterable of labels.
SubsetLike = int | str | Iterable[str]


class ValueDomain:
    """Ordered, finite set of distinct value labels.

    The ordering is significant: it defines which bit of a subset mask
    corresponds to which value, and it is the canonical order used by
    renderers and serializers.
    """

    __slots__ = ("values", "_index")

    def __init__(self, values: Iterable[str]):
        vals = tuple(values)
        if not 2 <= len(vals) <= MAX_DOMAIN_SIZE:
            raise InvalidSubsetError(
                f"domain must have between 2 and {MAX_DOMAIN_SIZE} values, got {len(vals)}"
            )
        index: dict[str, int] = {}
        for i, v in enumerate(vals):
            if not isinstance(v, str) or not v:
                raise InvalidSubsetError(f"value labels must be nonempty strings, got {v!r}")
            if v in index:
                raise InvalidSubsetError(f"duplicate value label {v!r}")
            index[v] = i
        self.values = vals
        self._index = index

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def full_bits(self) -> int:
        """Bitmask of the whole domain."""
        return (1 << len(self.values)) - 1

    def bits(self, subset: SubsetLike) -> int:
        """Canonical bitmask for *subset* (labels, a single label, or a mask)."""
        if isinstance(subset, str):
            labels: Iterable[str] = (subset,)
        else:
            try:
                mask = operator.index(subset)
            except TypeError:
                labels = subset
            else:
                if not 0 <= mask <= self.full_bits:
                    raise InvalidSubsetError(f"bitmask {mask:#x} out of range for {self}")
                return mask
        mask = 0
        for label in labels:
            try:
                mask |= 1 << self._index[label]
            except (KeyError, TypeError):
                raise InvalidSubsetError(f"{label!r} is not a value of {self}") from None
        return mask

    def labels(self, bits: int) -> frozenset[str]:
        """Value labels of the subset encoded by *bits*."""
        bits = self.bits(bits)
        return frozenset(v for i, v in enumerate(self.values) if bits >> i & 1)

    def subset_str(self, bits: int) -> str:
        """Readable rendering of a subset, in domain order."""
        bits = self.bits(bits)
        return "{" + ",".join(v for i, v in enumerate(self.values) if bits >> i & 1) + "}"

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ValueDomain) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"ValueDomain({list(self.values)!r})"


class MassAssignment:
    """Allocation of unit mass to subsets of a :class:`ValueDomain`.

    Construction validates that every mass is nonnegative and that the
    total is one within :data:`MASS_SUM_TOL`.  Duplicate subsets in the
    input are merged by summation; zero-mass entries are dropped, so the
    stored entries are exactly the focal elements.  Subsets absent from
    the mapping have mass zero.
    """

    __slots__ = ("domain", "_m")

    def __init__(
        self,
        domain: ValueDomain,
        masses: Mapping[SubsetLike, float] | Iterable[tuple[SubsetLike, float]],
    ):
        if isinstance(masses, Mapping):
            masses = masses.items()
        merged: dict[int, float] = {}
        for subset, value in masses:
            bits = domain.bits(subset)
            value = float(value)
            if value < 0.0:
                raise NegativeMassError(
                    f"mass of {domain.subset_str(bits)} is negative: {value}"
                )
            merged[bits] = merged.get(bits, 0.0) + value
        total = math.fsum(merged.values())
        if abs(total - 1.0) > MASS_SUM_TOL:
            raise MassSumError(f"masses sum to {total!r} (deviation {total - 1.0:+.3e})")
        self.domain = domain
        self._m = {bits: v for bits, v in merged.items() if v > 0.0}

    # -- access ---------------------------------------------------------

    def mass(self, subset: SubsetLike) -> float:
        """Mass of *subset* (zero when it is not focal)."""
        return self._m.get(self.domain.bits(subset), 0.0)

    __getitem__ = mass

    @property
    def focals(self) -> dict[int, float]:
        """Copy of the focal elements as a ``bitmask -> mass`` dict."""
        return dict(self._m)

    @property
    def is_normalized(self) -> bool:
        return 0 not in self._m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassAssignment):
            return NotImplemented
        return self.domain == other.domain and self._m == other._m

    def approx_equal(self, other: "MassAssignment", tol: float = 1e-9) -> bool:
        """True when every subset's mass matches within *tol* (same domain)."""
        if self.domain != other.domain:
            return False
        keys = self._m.keys() | other._m.keys()
        return all(
            abs(self._m.get(k, 0.0) - other._m.get(k, 0.0)) <= tol for k in keys
        )

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{self.domain.subset_str(b)}: {v:.6g}"
            for b, v in sorted(self._m.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
        )
        return f"MassAssignment({parts})"

    # -- derived set functions -------------------------------------------

    def belief(self, subset: SubsetLike) -> float:
        """Total mass committed to nonempty subsets of *subset*.

        The same sum is computed for unnormalized assignments, but its
        reading as a probability of provability only applies once the
        contradiction mass is gone; interpreting it on unnormalized input
        is the caller's concern.
        """
        bits = self.domain.bits(subset)
        return math.fsum(v for b, v in self._m.items() if b and b & bits == b)

    def plausibility(self, subset: SubsetLike) -> float:
        """Total mass not contradicting *subset* (focal elements meeting it)."""
        bits = self.domain.bits(subset)
        return math.fsum(v for b, v in self._m.items() if b & bits)

    def pignistic(self) -> dict[str, float]:
        """Probability distribution splitting each focal mass among its members.

        Only defined for normalized assignments; combine first, transform
        at decision time.
        """
        if not self.is_normalized:
            raise UnnormalizedMassError(
                "pignistic transform requires a normalized assignment "
                f"(empty-set mass is {self._m[0]!r})"
            )
        probs = [0.0] * self.domain.size
        for bits, v in self._m.items():
            share = v / bits.bit_count()
            for i in range(self.domain.size):
                if bits >> i & 1:
                    probs[i] += share
        return dict(zip(self.domain.values, probs))

    def normalize(self) -> "MassAssignment":
        """Move the empty-set mass onto the other subsets by rescaling.

        Returns ``self`` unchanged when already normalized.  Raises
        :class:`TotalConflictError` when (almost) all mass sits on the
        empty set, leaving nothing to rescale.
        """
        conflict = self._m.get(0, 0.0)
        if conflict == 0.0:
            return self
        remaining = 1.0 - conflict
        if remaining <= TOTAL_CONFLICT_EPS:
            raise TotalConflictError(
                f"cannot normalize: empty-set mass is {conflict!r}"
            )
        scaled = {b: v / remaining for b, v in self._m.items() if b != 0}
        return MassAssignment(self.domain, scaled)


def make_mass(
    domain: ValueDomain,
    entries: Mapping[SubsetLike, float] | Iterable[tuple[SubsetLike, float]],
) -> MassAssignment:
    """Build a validated assignment from ``(subset, mass)`` pairs or a mapping."""
    return MassAssignment(domain, entries)


def vacuous(domain: ValueDomain) -> MassAssignment:
    """The all-ignorance assignment ``m(S) = 1``, neutral for combination."""
    return MassAssignment(domain, {domain.full_bits: 1.0})


def simple_support(domain: ValueDomain, subset: SubsetLike, weight: float) -> MassAssignment:
    """Single piece of evidence of strength *weight* for a nonempty *subset*.

    Yields ``m(subset) = weight`` and ``m(S) = 1 - weight``; the two merge
    when *subset* is the whole domain.
    """
    bits = domain.bits(subset)
    if bits == 0:
        raise InvalidSubsetError("a simple support needs a nonempty focal subset")
    if not 0.0 <= weight <= 1.0:
        raise NegativeMassError(f"support weight must lie in [0, 1], got {weight!r}")
    return MassAssignment(domain, [(bits, weight), (domain.full_bits, 1.0 - weight)])


def _check_same_domain(m1: MassAssignment, m2: MassAssignment) -> None:
    if m1.domain != m2.domain:
        raise DomainMismatchError(
            f"operands live on different domains: {m1.domain} vs {m2.domain}"
        )


def _check_mode(mode: str) -> None:
    if mode not in ("normalized", "unnormalized"):
        raise ValueError(f"mode must be 'normalized' or 'unnormalized', got {mode!r}")


def combine(m1: MassAssignment, m2: MassAssignment, mode: str = "normalized") -> MassAssignment:
    """Conjunctive pooling of two assignments over the same domain.

    Every pair of focal elements contributes the product of its masses to
    their intersection.  In ``"unnormalized"`` mode the mass landing on the
    empty set is kept (it measures the conflict between the operands); in
    ``"normalized"`` mode both inputs must be normalized, the empty-set
    mass is discarded and the rest rescaled by the surviving fraction.
    """
    _check_same_domain(m1, m2)
    _check_mode(mode)
    if mode == "normalized" and not (m1.is_normalized and m2.is_normalized):
        raise UnnormalizedMassError("normalized combination requires normalized inputs")
    acc: dict[int, float] = {}
    for b1, v1 in m1._m.items():
        for b2, v2 in m2._m.items():
            inter = b1 & b2
            acc[inter] = acc.get(inter, 0.0) + v1 * v2
    if mode == "unnormalized":
        return MassAssignment(m1.domain, acc)
    conflict = acc.pop(0, 0.0)
    surviving = 1.0 - conflict
    if surviving <= TOTAL_CONFLICT_EPS:
        raise TotalConflictError(
            f"total conflict between operands (surviving mass {surviving!r})"
        )
    return MassAssignment(m1.domain, {b: v / surviving for b, v in acc.items()})


def combine_many(ms: Iterable[MassAssignment], mode: str = "normalized") -> MassAssignment:
    """Left fold of :func:`combine`; a single assignment is returned as is.

    In unnormalized mode the result does not depend on the order of the
    inputs (the operation is commutative and associative).
    """
    _check_mode(mode)
    ms = list(ms)
    if not ms:
        raise NoEvidenceError("cannot combine an empty list of assignments")
    result = ms[0]
    for m in ms[1:]:
        result = combine(result, m, mode)
    return result


def conflict_degree(m1: MassAssignment, m2: MassAssignment) -> float:
    """Mass the unnormalized combination would place on the empty set."""
    _check_same_domain(m1, m2)
    return math.fsum(
        v1 * v2
        for b1, v1 in m1._m.items()
        for b2, v2 in m2._m.items()
        if b1 & b2 == 0
    )
