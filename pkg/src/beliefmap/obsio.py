"""File formats: observation documents, PGM rasters, CSV tables.

Observation documents are line-oriented text:

.. code-block:: text

    # lines starting with '#' are comments
    values: white,black,gray
    10,12,black
    3,4,white
    7,7,black|white

One header line names the domain values in order; every following row is
``x,y,value`` with multiple values joined by ``|``.  Rows naming every
domain value are rejected (they carry no evidence), as are unknown values
and, when grid bounds are known, out-of-range coordinates.

Rasters are binary PGM (P5, maxval 255), row-major with top-left origin.
Pixel levels come from ``floor(v * 255 + 0.5)`` on values in ``[0, 1]``;
a  1e-9 nudge absorbs float rounding so values whose exact level is a
half (for instance 0.7, with 0.7 * 255 = 178.5) land on the upper level
as the rule intends.  Identical field values always produce identical
bytes.

All writers are atomic: content goes to a temporary file in the target
directory which is then renamed over the destination.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import (
    BeliefMapError,
    ObservationParseError,
    UnknownValueError,
    UnsupportedDomainSizeError,
)
from .evidence import ValueDomain
from .fields import UNDETERMINED, BeliefField, ScalarField, ValueField, _normalized_masses
from .spaces import GridSpace, Observation, ObservationSet

__all__ = [
    "parse_observations",
    "serialize_observations",
    "quantize_gray",
    "pgm_bytes",
    "write_pgm",
    "belief_shades",
    "value_shades",
    "masses_csv_text",
    "scalar_csv_text",
    "plausible_csv_text",
    "plausible_shades",
    "suggestions_csv_text",
    "write_text",
    "write_bytes",
]

_QUANT_EPS = 1e-9


# ---------------------------------------------------------------------------
# observation documents
# ---------------------------------------------------------------------------


def parse_observations(
    text: str, grid: GridSpace | None = None
) -> tuple[ValueDomain, ObservationSet]:
    """Parse an observation document into a domain and observation set.

    When *grid* is given, coordinates are checked against its bounds.
    Errors carry the offending 1-based line number.
    """
    domain: ValueDomain | None = None
    observations: list[Observation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if domain is None:
            if not line.startswith("values:"):
                raise ObservationParseError(
                    lineno, "expected a 'values: v1,v2,...' header before any observation"
                )
            labels = [v.strip() for v in line[len("values:") :].split(",")]
            try:
                domain = ValueDomain(labels)
            except BeliefMapError as exc:
                raise ObservationParseError(lineno, str(exc)) from None
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ObservationParseError(
                lineno, f"expected 'x,y,value[|value...]', got {line!r}"
            )
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise ObservationParseError(
                lineno, f"coordinates must be integers, got {parts[0]!r},{parts[1]!r}"
            ) from None
        if grid is not None and not grid.contains((x, y)):
            raise ObservationParseError(
                lineno,
                f"coordinates ({x},{y}) outside the {grid.width}x{grid.height} grid",
            )
        labels = [v.strip() for v in parts[2].split("|")]
        if any(not v for v in labels):
            raise ObservationParseError(lineno, "empty value label")
        for v in labels:
            if v not in domain:
                raise UnknownValueError(lineno, f"unknown value {v!r}")
        value = frozenset(labels)
        if len(value) == domain.size:
            raise ObservationParseError(
                lineno, "trivial observation: it names every domain value"
            )
        observations.append(Observation((x, y), value))
    if domain is None:
        raise ObservationParseError(1, "document has no 'values:' header")
    return domain, ObservationSet(domain, observations)


def serialize_observations(obs: ObservationSet) -> str:
    """Round-trippable text form of *obs* (see :func:`parse_observations`)."""
    domain = obs.domain
    lines = ["values: " + ",".join(domain.values)]
    for o in obs:
        ordered = [v for v in domain.values if v in o.value]
        lines.append(f"{o.location[0]},{o.location[1]}," + "|".join(ordered))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# rasters
# ---------------------------------------------------------------------------


def quantize_gray(values: np.ndarray) -> np.ndarray:
    """Map ``[0, 1]`` values to ``uint8`` levels by floor(v*255 + 0.5)."""
    q = np.floor(np.asarray(values, dtype=np.float64) * 255.0 + 0.5 + _QUANT_EPS)
    return np.clip(q, 0.0, 255.0).astype(np.uint8)


def pgm_bytes(values: np.ndarray) -> bytes:
    """Binary PGM (P5) encoding of a ``[0, 1]`` scalar raster."""
    levels = quantize_gray(values)
    if levels.ndim != 2:
        raise ValueError(f"raster must be 2-D, got shape {levels.shape}")
    h, w = levels.shape
    return b"P5\n%d %d\n255\n" % (w, h) + levels.tobytes()


def write_pgm(values: np.ndarray, path) -> None:
    write_bytes(path, pgm_bytes(values))


def belief_shades(field: BeliefField, obs: ObservationSet | None = None) -> np.ndarray:
    """Gray levels in ``[0, 1]`` for a binary-domain belief field.

    The shade is ``(m(second) - m(first) + 1) / 2`` on per-cell normalized
    masses, so cells leaning to the second domain value render light and
    cells leaning to the first render dark; balanced or ignorant cells are
    middle gray.  When *obs* is given, cells holding unanimous single-value
    observations are forced to the opposite extreme (first value -> white,
    second -> black) so measurement points stand out against the inverted
    field around them.
    """
    if field.domain.size != 2:
        raise UnsupportedDomainSizeError(
            "belief shades are defined for binary domains; "
            "emit one raster per value instead"
        )
    m, bad = _normalized_masses(field)
    col_of = {b: i for i, b in enumerate(field.subset_bits)}
    first = m[..., col_of[1]] if 1 in col_of else np.zeros(m.shape[:2])
    second = m[..., col_of[2]] if 2 in col_of else np.zeros(m.shape[:2])
    shades = (second - first + 1.0) / 2.0
    shades[bad] = 0.5
    if obs is not None:
        forced: dict[tuple[int, int], set[str]] = {}
        for o in obs:
            forced.setdefault(tuple(o.location), set()).update(o.value)
        for (x, y), vals in forced.items():
            if len(vals) == 1:
                shades[y, x] = 1.0 if vals == {field.domain.values[0]} else 0.0
    return shades


def value_shades(field: BeliefField, value: str) -> np.ndarray:
    """Normalized singleton mass of *value* per cell, in ``[0, 1]``."""
    bits = field.domain.bits(value)
    m, bad = _normalized_masses(field)
    col_of = {b: i for i, b in enumerate(field.subset_bits)}
    c = col_of.get(bits)
    shades = m[..., c].copy() if c is not None else np.zeros(m.shape[:2])
    shades[bad] = 0.0
    return shades


# ---------------------------------------------------------------------------
# CSV tables
# ---------------------------------------------------------------------------


def _subset_column_name(domain: ValueDomain, bits: int) -> str:
    if bits == 0:
        return "m_empty"
    if bits == domain.full_bits:
        return "m_S"
    return "m_" + "|".join(v for i, v in enumerate(domain.values) if bits >> i & 1)


def _format_millionths(units: int) -> str:
    return f"{units // 1_000_000}.{units % 1_000_000:06d}"


def masses_csv_text(field: BeliefField) -> str:
    """Per-cell masses, one row per cell in row-major order.

    For domains of up to four values every subset gets a column; larger
    domains get the empty set, the singletons, the full domain, and an
    ``m_other`` column aggregating whatever composite subsets carry.  Rows
    are rounded to six decimals with the residue folded into the largest
    entry, so every row sums to exactly 1.000000.
    """
    domain = field.domain
    col_of = {b: i for i, b in enumerate(field.subset_bits)}
    if domain.size <= 4:
        columns = sorted(range(domain.full_bits + 1), key=lambda b: (b.bit_count(), b))
        groups = [[col_of[b]] if b in col_of else [] for b in columns]
        names = [_subset_column_name(domain, b) for b in columns]
    else:
        columns = [0] + [1 << i for i in range(domain.size)] + [domain.full_bits]
        groups = [[col_of[b]] if b in col_of else [] for b in columns]
        names = [_subset_column_name(domain, b) for b in columns]
        listed = set(columns)
        leftovers = [c for b, c in col_of.items() if b not in listed]
        groups.append(leftovers)
        names.append("m_other")

    lines = ["x,y," + ",".join(names)]
    h, w, _ = field.masses.shape
    for y in range(h):
        for x in range(w):
            row = field.masses[y, x]
            amounts = [float(sum(row[c] for c in g)) if g else 0.0 for g in groups]
            units = [round(a * 1_000_000) for a in amounts]
            units[max(range(len(units)), key=units.__getitem__)] += 1_000_000 - sum(units)
            lines.append(f"{x},{y}," + ",".join(_format_millionths(u) for u in units))
    return "\n".join(lines) + "\n"


def scalar_csv_text(scalar: ScalarField, name: str) -> str:
    lines = [f"x,y,{name}"]
    h, w = scalar.values.shape
    for y in range(h):
        for x in range(w):
            lines.append(f"{x},{y},{scalar.values[y, x]:.6f}")
    return "\n".join(lines) + "\n"


def plausible_csv_text(vf: ValueField) -> str:
    """Per-cell plausible values; undetermined cells encode as ``-``."""
    lines = ["x,y,value"]
    h, w = vf.indices.shape
    for y in range(h):
        for x in range(w):
            idx = int(vf.indices[y, x])
            label = "-" if idx == UNDETERMINED else vf.domain.values[idx]
            lines.append(f"{x},{y},{label}")
    return "\n".join(lines) + "\n"


def suggestions_csv_text(ranked: list[tuple[tuple[int, int], float]]) -> str:
    lines = ["x,y,expected_loss"]
    for (x, y), loss in ranked:
        lines.append(f"{x},{y},{loss:.9f}")
    return "\n".join(lines) + "\n"


def plausible_shades(vf: ValueField) -> np.ndarray:
    """Gray levels for a plausible-value map.

    Undetermined cells are black; value ``i`` renders at level
    ``(i + 1) / |S|`` so distinct values get distinct, evenly spaced
    shades.
    """
    size = len(vf.domain.values)
    shades = (vf.indices.astype(np.float64) + 1.0) / size
    shades[vf.indices == UNDETERMINED] = 0.0
    return shades


# ---------------------------------------------------------------------------
# atomic writers
# ---------------------------------------------------------------------------


def write_bytes(path, data: bytes) -> None:
    """Write *data* to *path* atomically (temp file + rename)."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_text(path, text: str) -> None:
    write_bytes(path, text.encode("utf-8"))
