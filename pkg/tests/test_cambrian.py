from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.cambrian import (
    AlmostPositiveRoot,
    HassePoset,
    PosetError,
    cluster_of,
    covers_mapr,
    covers_triangulation,
    expected_max_mapr,
    expected_min_mapr,
    is_order_isomorphic_via_functor,
    mapr_json,
    mapr_label,
    mapr_poset,
    perp_compare,
    root_label,
    triangulation_poset,
    type_b_expected_size,
    type_b_subposet,
)
from artifact.geometry_model import Segment, SegmentError, polygon_d
from artifact.maprigid import enumerate_triangulations, flip, mapr_to_triangulation, triangulation_to_mapr
from artifact.quiver_core import REFERENCE_DIRS
from artifact.verify import ROOT_LABELS

from conftest import PROPERTY_SETTINGS, polygons

PD5 = polygon_d(5, REFERENCE_DIRS[5])


def test_cover_count_equals_flip_edges():
    tp, mp = triangulation_poset(PD5), mapr_poset(PD5)
    assert len(tp.covers) == len(mp.covers) == 100
    assert tp.is_transitively_reduced()


def test_each_flip_is_oriented_exactly_one_way():
    for t in enumerate_triangulations(PD5):
        for g in t.interior:
            t2, _ = flip(PD5, t, g)
            assert covers_triangulation(PD5, t, t2) != covers_triangulation(PD5, t2, t)
            m1, m2 = triangulation_to_mapr(PD5, t), triangulation_to_mapr(PD5, t2)
            assert covers_mapr(PD5, m1, m2) == covers_triangulation(PD5, t, t2)


def test_extremes_of_running_example():
    mp = mapr_poset(PD5)
    (lo,), (hi,) = mp.minimal(), mp.maximal()
    assert mp.elements[lo] == expected_min_mapr(PD5)
    assert mp.elements[hi] == expected_max_mapr(PD5)
    assert mp.out_degree(lo) == 4
    assert mp.is_lattice()
    assert is_order_isomorphic_via_functor(PD5)


def test_table_of_root_labels():
    for key, want in ROOT_LABELS:
        g = PD5.normalize(Segment(*key))
        assert root_label(PD5, g).as_dict() == want
    with pytest.raises(SegmentError):
        root_label(PD5, PD5.boundary[0])


def test_root_label_strings():
    assert str(AlmostPositiveRoot.from_dict({2: -1})) == "-pi2"
    assert str(AlmostPositiveRoot.from_dict({2: 1, 3: 2, 4: 1, 5: 1})) == "pi2+2pi3+pi4+pi5"
    with pytest.raises(ValueError):
        AlmostPositiveRoot.from_dict({2: -1, 3: -1})
    with pytest.raises(ValueError):
        AlmostPositiveRoot(())


def test_clusters_at_n5():
    clusters = [cluster_of(PD5, t) for t in enumerate_triangulations(PD5)]
    assert len(clusters) == 50
    assert all(len(c) == 4 for c in clusters)
    assert len(set(clusters)) == 50


@pytest.mark.parametrize("n", [4, 6])
def test_clusters_are_injective(n):
    pd = polygon_d(n, REFERENCE_DIRS[n])
    tris = enumerate_triangulations(pd)
    assert len({cluster_of(pd, t) for t in tris}) == len(tris)


def test_type_b_subposet_at_n5():
    poset = type_b_subposet(PD5)
    assert len(poset.elements) == 20 == type_b_expected_size(5)
    assert poset.is_lattice()
    assert len(poset.minimal()) == len(poset.maximal()) == 1
    for t in poset.elements:
        diams = [g for g in mapr_to_triangulation(PD5, t).interior if g.is_diameter]
        assert len(diams) == 2 and diams[0].t == diams[1].t


def test_perpendicular_comparison_is_antisymmetric():
    segs = [g for g in PD5.interior if not g.is_diameter]
    for a in segs:
        for b in segs:
            assert perp_compare(PD5, a, b) == -perp_compare(PD5, b, a)


def test_poset_rejects_cycles():
    with pytest.raises(PosetError):
        HassePoset(["a", "b"], {(0, 1), (1, 0)})


def test_dot_and_json_are_deterministic():
    mp = mapr_poset(PD5)
    assert mp.to_dot(mapr_label) == mp.to_dot(mapr_label)
    assert mp.to_dot(mapr_label).startswith("digraph Hasse {")
    data = mp.to_json(mapr_json)
    back = HassePoset.from_json(data)
    assert back.covers == mp.covers
    assert back.dumps() == mp.dumps(mapr_json)


def test_non_lattice_is_detected():
    # two minimal elements below two maximal ones: no joins
    bowtie = HassePoset(list("abcd"), {(0, 2), (0, 3), (1, 2), (1, 3)})
    assert not bowtie.is_lattice()
    chain = HassePoset(list("abc"), {(0, 1), (1, 2)})
    assert chain.is_lattice()
    assert chain.join(0, 2) == 2 and chain.meet(0, 2) == 0


_DAG = st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=20).map(
    lambda edges: {(a, b) for a, b in edges if a < b}
)


@PROPERTY_SETTINGS
@given(_DAG)
def test_order_relation_matches_reachability(edges):
    poset = HassePoset(list(range(8)), edges)
    g = nx.DiGraph()
    g.add_nodes_from(range(8))
    g.add_edges_from(edges)
    for a in range(8):
        reach = nx.descendants(g, a) | {a}
        assert {b for b in range(8) if poset.leq(a, b)} == reach
    for a in range(8):
        for b in range(8):
            j = poset.join(a, b)
            if j is not None:
                assert poset.leq(a, j) and poset.leq(b, j)
                assert all(poset.leq(j, c) for c in range(8) if poset.leq(a, c) and poset.leq(b, c))


@PROPERTY_SETTINGS
@given(polygons(4, 6), st.data())
def test_meets_and_joins_in_mapr_lattice(pd, data):
    mp = mapr_poset(pd)
    size = len(mp.elements)
    a = data.draw(st.integers(0, size - 1))
    b = data.draw(st.integers(0, size - 1))
    j, m = mp.join(a, b), mp.meet(a, b)
    assert j is not None and m is not None
    assert mp.leq(a, j) and mp.leq(b, j)
    assert mp.leq(m, a) and mp.leq(m, b)
    assert mp.join(a, a) == a == mp.meet(a, a)


@PROPERTY_SETTINGS
@given(polygons(4, 6))
def test_flip_graph_degree_and_isomorphism(pd):
    tp = triangulation_poset(pd)
    assert all(tp.degree(i) == pd.n - 1 for i in range(len(tp.elements)))
    assert is_order_isomorphic_via_functor(pd)
    (lo,) = mapr_poset(pd).minimal()
    assert mapr_poset(pd).elements[lo] == expected_min_mapr(pd)
