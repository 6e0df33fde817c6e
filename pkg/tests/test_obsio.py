"""Tests for observation documents, PGM emission, and CSV tables."""

import math

import numpy as np
import pytest

from beliefmap import (
    CombinationConfig,
    DecayModel,
    GridSpace,
    InteractionModel,
    Observation,
    ObservationParseError,
    ObservationSet,
    UnknownValueError,
    UnsupportedDomainSizeError,
    ValueDomain,
    belief_shades,
    extrapolate_field,
    parse_observations,
    pgm_bytes,
    quantize_gray,
    serialize_observations,
    value_shades,
)
from beliefmap.fields import UNDETERMINED, ValueField, plausible_map
from beliefmap.obsio import (
    masses_csv_text,
    plausible_csv_text,
    plausible_shades,
    scalar_csv_text,
    suggestions_csv_text,
    write_bytes,
    write_text,
)

from test_fields import field_from_cell_masses

TF = ValueDomain(["white", "black"])

DOC = """\
# two opposing measurements
values: white,black
10,12,black
3,4,white
"""


# ---------------------------------------------------------------------------
# observation documents
# ---------------------------------------------------------------------------


def test_parse_basic_document():
    domain, obs = parse_observations(DOC)
    assert domain.values == ("white", "black")
    assert len(obs) == 2
    assert obs.observations[0] == Observation((10, 12), "black")


def test_parse_set_valued_rows():
    text = "values: a,b,c\n1,1,a|b\n"
    domain, obs = parse_observations(text)
    assert obs.observations[0].value == frozenset({"a", "b"})


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ObservationParseError) as err:
        parse_observations("values: white,black\n3,4,black|white\n")
    assert err.value.line == 2 and "trivial" in err.value.reason

    with pytest.raises(UnknownValueError) as err:
        parse_observations("values: white,black\n3,4,green\n")
    assert err.value.line == 2

    with pytest.raises(ObservationParseError) as err:
        parse_observations("values: white,black\nx,4,black\n")
    assert err.value.line == 2

    with pytest.raises(ObservationParseError) as err:
        parse_observations("3,4,black\n")
    assert err.value.line == 1 and "header" in err.value.reason

    with pytest.raises(ObservationParseError) as err:
        parse_observations("values: white,white\n")
    assert err.value.line == 1

    with pytest.raises(ObservationParseError):
        parse_observations("# nothing\n")


def test_parse_bounds_check():
    parse_observations(DOC, grid=GridSpace(16, 16))
    with pytest.raises(ObservationParseError) as err:
        parse_observations(DOC, grid=GridSpace(8, 8))
    assert err.value.line == 3  # (10, 12) does not fit an 8x8 grid


def test_roundtrip():
    domain, obs = parse_observations("values: a,b,c\n1,2,b\n0,0,a|c\n4,4,c\n")
    text = serialize_observations(obs)
    domain2, obs2 = parse_observations(text)
    assert domain2 == domain and obs2 == obs
    assert serialize_observations(obs2) == text


# ---------------------------------------------------------------------------
# quantization and PGM
# ---------------------------------------------------------------------------


def test_quantize_rule():
    assert quantize_gray(np.array([0.0]))[0] == 0
    assert quantize_gray(np.array([1.0]))[0] == 255
    assert quantize_gray(np.array([0.5]))[0] == 128  # 127.5 + 0.5 floors to 128
    assert quantize_gray(np.array([0.7]))[0] == 179  # exact half rounds up
    assert quantize_gray(np.array([-0.1, 1.5])).tolist() == [0, 255]


def test_pgm_layout():
    data = pgm_bytes(np.array([[0.0, 1.0]]))
    assert data == b"P5\n2 1\n255\n" + bytes([0, 255])


def test_pgm_is_deterministic():
    values = np.linspace(0.0, 1.0, 64).reshape(8, 8)
    assert pgm_bytes(values) == pgm_bytes(values.copy())


# ---------------------------------------------------------------------------
# shading rules
# ---------------------------------------------------------------------------


def test_belief_shades_reference_values():
    worked = field_from_cell_masses(
        TF, {TF.bits("black"): 0.6, TF.bits("white"): 0.2, TF.full_bits: 0.2}
    )
    shades = belief_shades(worked)
    assert shades[0, 0] == pytest.approx(0.7, abs=1e-12)
    assert quantize_gray(shades)[0, 0] == 179
    ignorant = field_from_cell_masses(TF, {TF.full_bits: 1.0})
    assert quantize_gray(belief_shades(ignorant))[0, 0] == 128


def test_belief_shades_forces_observation_cells():
    g = GridSpace(5, 1)
    obs = ObservationSet(TF, [Observation((0, 0), "black"), Observation((4, 0), "white")])
    field = extrapolate_field(
        g, obs, DecayModel.uniform(TF, 3.0), InteractionModel(3.0),
        CombinationConfig("normalized", "interaction"),
    )
    shades = belief_shades(field, obs)
    assert shades[0, 0] == 0.0  # black measurement renders black
    assert shades[0, 4] == 1.0  # white measurement renders white
    # around the black observation the field leans black, rendered light
    assert shades[0, 1] > 0.5


def test_belief_shades_rejects_large_domains():
    d3 = ValueDomain(["a", "b", "c"])
    field = field_from_cell_masses(d3, {d3.full_bits: 1.0})
    with pytest.raises(UnsupportedDomainSizeError):
        belief_shades(field)
    assert value_shades(field, "a")[0, 0] == 0.0


def test_value_shades():
    d3 = ValueDomain(["a", "b", "c"])
    field = field_from_cell_masses(d3, {d3.bits("b"): 0.75, d3.full_bits: 0.25})
    assert value_shades(field, "b")[0, 0] == pytest.approx(0.75)
    assert value_shades(field, "a")[0, 0] == 0.0


def test_plausible_shades_levels():
    d3 = ValueDomain(["a", "b", "c"])
    vf = ValueField(GridSpace(4, 1), d3, np.array([[UNDETERMINED, 0, 1, 2]], dtype=np.int16))
    shades = plausible_shades(vf)
    assert shades.tolist() == [[0.0, 1 / 3, 2 / 3, 1.0]]


# ---------------------------------------------------------------------------
# CSV tables
# ---------------------------------------------------------------------------


def make_unnormalized_field():
    g = GridSpace(4, 3)
    obs = ObservationSet(
        TF, [Observation((0, 0), "black"), Observation((3, 2), "white")]
    )
    return extrapolate_field(
        g, obs, DecayModel.uniform(TF, 2.0), InteractionModel(3.0),
        CombinationConfig("unnormalized", "interaction"),
    )


def test_masses_csv_schema_and_sums():
    field = make_unnormalized_field()
    text = masses_csv_text(field)
    lines = text.strip().split("\n")
    assert lines[0] == "x,y,m_empty,m_white,m_black,m_S"
    assert len(lines) == 1 + 12
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "0"
    for row in lines[1:]:
        cells = row.split(",")
        total = sum(float(v) for v in cells[2:])
        assert total == pytest.approx(1.0, abs=1e-9)  # exact by construction
        assert all(len(v.split(".")[1]) == 6 for v in cells[2:])


def test_masses_csv_row_order_is_row_major():
    field = make_unnormalized_field()
    lines = masses_csv_text(field).strip().split("\n")[1:]
    coords = [tuple(map(int, r.split(",")[:2])) for r in lines]
    assert coords == [(x, y) for y in range(3) for x in range(4)]


def test_masses_csv_large_domain_other_column():
    d5 = ValueDomain(["a", "b", "c", "d", "e"])
    field = field_from_cell_masses(
        d5, {d5.bits(("a", "b")): 0.5, d5.bits("c"): 0.25, d5.full_bits: 0.25}
    )
    text = masses_csv_text(field)
    header = text.strip().split("\n")[0]
    assert header.endswith("m_S,m_other")
    row = text.strip().split("\n")[1].split(",")
    assert row[-1] == "0.500000"  # the composite {a,b} mass
    assert sum(float(v) for v in row[2:]) == pytest.approx(1.0, abs=1e-9)


def test_scalar_and_plausible_csv():
    field = make_unnormalized_field()
    text = scalar_csv_text(
        __import__("beliefmap").entropy_map(field), "entropy"
    )
    assert text.startswith("x,y,entropy\n0,0,")
    vf = plausible_map(field, threshold=0.1)
    ptext = plausible_csv_text(vf)
    assert ptext.splitlines()[0] == "x,y,value"
    assert ptext.splitlines()[1] == "0,0,black"
    # a cell whose best singleton belief stays under the threshold encodes as '-'
    weak = field_from_cell_masses(
        TF, {TF.bits("white"): 0.05, TF.bits("black"): 0.04, TF.full_bits: 0.91}
    )
    weak_text = plausible_csv_text(plausible_map(weak, threshold=0.1))
    assert weak_text.splitlines()[1] == "0,0,-"


def test_suggestions_csv():
    text = suggestions_csv_text([((3, 1), 0.25), ((0, 0), 0.125)])
    assert text == "x,y,expected_loss\n3,1,0.250000000\n0,0,0.125000000\n"


def test_golden_belief_raster():
    # frozen bytes of a small end-to-end render; guards the whole pipeline
    # (kernel, normalization, shading, forcing, quantization) against drift
    g = GridSpace(4, 3)
    obs = ObservationSet(TF, [Observation((0, 0), "black"), Observation((3, 2), "white")])
    field = extrapolate_field(
        g, obs, DecayModel.uniform(TF, 2.0), InteractionModel(3.0),
        CombinationConfig("normalized", "interaction"),
    )
    data = pgm_bytes(belief_shades(field, obs))
    assert data == b"P5\n4 3\n255\n\x00\xbd\x91d\xc0\xa4[?\x9bnB\xff"


def test_pgm_rejects_non_2d():
    with pytest.raises(ValueError):
        pgm_bytes(np.zeros(4))


def test_atomic_writers(tmp_path):
    target = tmp_path / "out.pgm"
    write_bytes(target, b"abc")
    assert target.read_bytes() == b"abc"
    write_text(target, "xyz")
    assert target.read_text() == "xyz"
    assert list(tmp_path.iterdir()) == [target]  # no temp files left behind
