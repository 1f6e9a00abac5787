from __future__ import annotations

import dataclasses
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.geometry_model import (
    NOTCHED,
    PLAIN,
    Segment,
    SegmentError,
    build_translation_quiver,
    check_translation_iso,
    parse_segment,
    polygon_d,
    polygon_svg,
)
from artifact.quiver_core import REFERENCE_DIRS

from conftest import PROPERTY_SETTINGS, polygons

PD5 = polygon_d(5, REFERENCE_DIRS[5])


def test_vertex_a_coordinates():
    x, y = PD5.pa.point(5)
    assert x == pytest.approx(0.9035, abs=1e-4)
    assert y == pytest.approx(0.4286, abs=1e-4)


def test_counterclockwise_order_of_running_example():
    assert PD5.ccw_order == (-4, -3, -1, 2, 4, 3, 1, -2)
    assert sorted(PD5.labels) == [-4, -3, -2, -1, 1, 2, 3, 4]


def test_arc_lengths():
    assert PD5.arc_length(1, 4) == 7
    assert PD5.arc_length(-4, -1) == 3
    assert PD5.arc_length(-2, 4) == 6


def test_segment_count_and_boundary():
    assert len(PD5.omega) == 20
    assert [g.text() for g in PD5.boundary] == ["-4:-3", "-3:-1", "-1:2", "2:4"]
    assert [PD5.functor(g) for g in PD5.boundary] == [(1, 0), (1, 1), (1, 2), (1, 3)]


def test_functor_on_long_chord():
    g = PD5.normalize(Segment(1, 4))
    assert g == Segment(-4, -1)
    assert PD5.functor(g) == (2, 0)


def test_rotation_flips_diameter_tag():
    assert PD5.rotate(Segment(-4, 4, PLAIN)) == Segment(-2, 2, NOTCHED)


def test_rotation_undefined_exactly_on_projectives():
    none = [g for g in PD5.omega if PD5.rotate(g) is None]
    assert len(none) == 5
    assert sorted(PD5.functor(g) for g in none) == [(i, 0) for i in range(1, 6)]


def test_pivots_of_running_example():
    assert PD5.pivots(Segment(-3, 4)) == [Segment(-3, 3, PLAIN), Segment(-3, 3, NOTCHED), Segment(-1, 4)]
    assert PD5.pivots(Segment(2, 3)) == []


@pytest.mark.parametrize(
    "seg, dim",
    [
        (Segment(-3, 3, PLAIN), (0, 1, 1, 1, 0)),
        (Segment(-3, 3, NOTCHED), (0, 1, 1, 0, 1)),
        (Segment(-3, 4), (1, 2, 2, 1, 1)),
    ],
)
def test_dimension_formula_values(seg, dim):
    assert PD5.dim_formula(seg) == dim
    assert PD5.ar_d.dims[PD5.functor(seg)] == dim


def test_parse_segment():
    assert parse_segment("-3:3:+1") == Segment(-3, 3, PLAIN)
    assert parse_segment("-3:3:-1") == Segment(-3, 3, NOTCHED)
    assert parse_segment(" 2:4 ") == Segment(2, 4)
    for bad in ("2", "a:b", "-3:3", "2:4:+1", "-3:3:2", "1:2:3:4"):
        with pytest.raises(SegmentError):
            parse_segment(bad)


def test_validate_rejects_bad_segments():
    with pytest.raises(SegmentError):
        PD5.validate(Segment(4, 2))
    with pytest.raises(SegmentError):
        PD5.validate(Segment(-3, 3))
    with pytest.raises(SegmentError):
        PD5.canonical(2, 2)


def test_corrupted_functor_fails_translation_check():
    tq = build_translation_quiver(PD5)
    table = dict(PD5.functor_table)
    assert check_translation_iso(tq, PD5.ar_d, table)
    a, b = PD5.omega[3], PD5.omega[7]
    table[a], table[b] = table[b], table[a]
    assert not check_translation_iso(tq, PD5.ar_d, table)
    broken = dataclasses.replace(tq, arrows=tq.arrows[1:])
    assert not check_translation_iso(broken, PD5.ar_d, PD5.functor_table)


def test_segment_dot_names():
    dot = build_translation_quiver(PD5).to_dot()
    assert '"S-3_4" -> "S-3_3[+1]";' in dot
    assert dot == build_translation_quiver(PD5).to_dot()


def test_svg_is_well_formed_and_deterministic():
    svg = polygon_svg(PD5, [Segment(-3, 4), Segment(-2, 2, NOTCHED)])
    assert svg == polygon_svg(PD5, [Segment(-3, 4), Segment(-2, 2, NOTCHED)])
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert root.get("width") == "600"


@PROPERTY_SETTINGS
@given(polygons(4, 8))
def test_arc_lengths_complement(pd):
    for s in pd.labels:
        assert pd.ccw(pd.cw(s)) == s
        for t in pd.labels:
            if s != t:
                assert pd.arc_length(s, t) + pd.arc_length(t, s) == 2 * pd.n
                assert pd.arc_length(s, t) == pd.arc_length(-s, -t)


@PROPERTY_SETTINGS
@given(polygons(4, 8))
def test_segments_and_functor_are_bijective(pd):
    assert len(pd.omega) == pd.n * (pd.n - 1)
    assert len(pd.boundary) == pd.n - 1
    images = [pd.functor(g) for g in pd.omega]
    assert sorted(images) == sorted(pd.ar_d.dims)
    for g in pd.omega:
        assert pd.normalize(g) == g
        assert pd.normalize(g.other()) == g
        assert pd.segment_of(pd.functor(g)) == g


@PROPERTY_SETTINGS
@given(polygons(4, 8))
def test_dimension_formula_matches_knitting(pd):
    for g in pd.omega:
        assert pd.dim_formula(g) == pd.ar_d.dims[pd.functor(g)]


@PROPERTY_SETTINGS
@given(polygons(4, 8))
def test_translation_quiver_isomorphism(pd):
    assert check_translation_iso(build_translation_quiver(pd), pd.ar_d, pd.functor_table)
    for g in pd.omega:
        assert len(pd.pivots(g)) == len(pd.ar_d.out_arrows(pd.functor(g)))
        r = pd.rotate(g)
        if r is not None and g.is_diameter:
            assert r.tag == -g.tag


@PROPERTY_SETTINGS
@given(polygons(4, 8), st.data())
def test_segment_text_and_json_round_trip(pd, data):
    g = data.draw(st.sampled_from(pd.omega))
    assert parse_segment(g.text()) == g
    assert Segment.from_json(g.to_json()) == g
    assert (g.to_json()["tag"] is None) == (not g.is_diameter)
