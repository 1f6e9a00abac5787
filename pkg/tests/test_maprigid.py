from __future__ import annotations

from itertools import combinations
from math import comb

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.geometry_model import Segment, polygon_d
from artifact.maprigid import (
    TaggedTriangulation,
    TriangulationError,
    catalan_type_d,
    compatibility_graph,
    dbar_ar,
    enumerate_maprs,
    enumerate_triangulations,
    flip,
    gd_object_dims,
    gd_on_index,
    is_almost_prerigid,
    is_mapr,
    is_maximal_noncrossing,
    is_tilting_image,
    is_triangulation,
    mapr_to_triangulation,
    orbit_of_first_projective,
    segments_cross,
    triangulation_to_mapr,
    worker_count,
)
from artifact.quiver_core import REFERENCE_DIRS

from conftest import PROPERTY_SETTINGS, polygons

PD4 = polygon_d(4, REFERENCE_DIRS[4])
PD5 = polygon_d(5, REFERENCE_DIRS[5])


def _flip_graph(pd) -> nx.Graph:
    g = nx.Graph()
    tris = enumerate_triangulations(pd)
    g.add_nodes_from(t.interior for t in tris)
    for t in tris:
        for seg in t.interior:
            g.add_edge(t.interior, flip(pd, t, seg)[0].interior)
    return g


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_catalan_numbers(n):
    assert catalan_type_d(n) == (3 * n - 5) * comb(2 * n - 4, n - 2) // (n - 1)
    assert catalan_type_d(n) == [14, 50, 182, 672, 2508][n - 4]


def test_counts_at_n4_and_n5():
    assert len(enumerate_triangulations(PD4)) == len(enumerate_maprs(PD4)) == 14
    assert len(enumerate_triangulations(PD5)) == len(enumerate_maprs(PD5)) == 50


def test_minimal_mapr_of_running_example():
    want = frozenset([(1, 0), (1, 1), (1, 2), (1, 3), (2, 0), (3, 0), (4, 0), (5, 0)])
    assert want in enumerate_maprs(PD5)
    assert is_mapr(PD5, want)


def test_projectives_are_almost_prerigid():
    projectives = frozenset((i, 0) for i in range(1, 6))
    assert is_almost_prerigid(PD5, projectives)
    assert not is_mapr(PD5, projectives)


def test_non_modules_are_rejected():
    assert not is_almost_prerigid(PD5, frozenset([(9, 0)]))


def test_flip_graph_is_regular_with_expected_edges():
    g = _flip_graph(PD5)
    assert g.number_of_nodes() == 50
    assert g.number_of_edges() == 100
    assert {d for _, d in g.degree()} == {4}


def test_flip_rejects_foreign_segment():
    t = enumerate_triangulations(PD5)[0]
    outside = next(g for g in PD5.interior if g not in t.interior)
    with pytest.raises(TriangulationError):
        flip(PD5, t, outside)


def test_triangulation_round_trip_at_n5():
    for t in enumerate_triangulations(PD5):
        assert mapr_to_triangulation(PD5, triangulation_to_mapr(PD5, t)) == t


def test_cliques_equal_images_of_triangulations():
    images = {triangulation_to_mapr(PD5, t) for t in enumerate_triangulations(PD5)}
    assert images == set(enumerate_maprs(PD5))


def test_triangulation_json_round_trip():
    for t in enumerate_triangulations(PD4):
        assert TaggedTriangulation.from_json(t.to_json()) == t
        assert t.dumps() == TaggedTriangulation.from_json(t.to_json()).dumps()


def test_gd_dimension_rules_match_knitting():
    ar = dbar_ar(PD5)
    for x in PD5.ar_d.nodes:
        want = dict(zip(ar.quiver.vertices, ar.dims[gd_on_index(x, 5)]))
        assert gd_object_dims(PD5.ar_d.dims[x], 5) == want
    with pytest.raises(ValueError):
        gd_on_index((6, 0), 5)


def test_all_maprs_tilt_at_n4():
    maprs = enumerate_maprs(PD4)
    assert len(maprs) == 14
    assert all(is_tilting_image(PD4, t) for t in maprs)
    assert not is_tilting_image(PD4, frozenset(list(maprs[0])[:-1]))


def test_worker_count_reads_environment(monkeypatch):
    monkeypatch.setenv("ARTIFACT_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("ARTIFACT_WORKERS", "x")
    assert worker_count() == 1
    monkeypatch.delenv("ARTIFACT_WORKERS")
    assert worker_count() == 1


@PROPERTY_SETTINGS
@given(polygons(4, 6), st.data())
def test_flip_is_an_involution(pd, data):
    t = data.draw(st.sampled_from(enumerate_triangulations(pd)))
    g = data.draw(st.sampled_from(t.sorted_interior()))
    t2, h = flip(pd, t, g)
    assert h != g and is_triangulation(pd, t2.interior)
    back, g2 = flip(pd, t2, h)
    assert back == t and g2 == g


@PROPERTY_SETTINGS
@given(polygons(4, 6), st.data())
def test_enumerated_triangulations_are_maximal(pd, data):
    t = data.draw(st.sampled_from(enumerate_triangulations(pd)))
    assert is_triangulation(pd, t.interior)
    assert is_maximal_noncrossing(pd, t.interior)
    assert len(t.interior) == pd.n - 1


@PROPERTY_SETTINGS
@given(polygons(4, 6), st.data())
def test_crossing_is_symmetric_and_irreflexive(pd, data):
    g = data.draw(st.sampled_from(pd.omega))
    assert not segments_cross(pd, g, g)
    for h in pd.omega:
        assert segments_cross(pd, g, h) == segments_cross(pd, h, g)
        if pd.is_boundary(h):
            assert not segments_cross(pd, g, h)


@PROPERTY_SETTINGS
@given(polygons(4, 6), st.data())
def test_maprs_have_expected_shape(pd, data):
    t = data.draw(st.sampled_from(enumerate_maprs(pd)))
    assert len(t) == 2 * pd.n - 2
    assert orbit_of_first_projective(pd) <= t
    assert is_mapr(pd, t)
    graph = compatibility_graph(pd)
    assert all(graph.has_edge(x, y) for x, y in combinations(sorted(t), 2))
