"""Almost pre-rigid representations, tagged triangulations, flips and the tilting check over the subdivided quiver."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import networkx as nx

from .ar_knitting import ARQuiver, Index, module_ar
from .ext_crossing import crossing_number, interleave, middle_term
from .geometry_model import PolygonD, Segment, SegmentError
from .quiver_core import dbar_label, subdivide_to_dbar
from .rep_oracle import ext1_dim, realize

ReprSum = frozenset  # frozenset[Index], basic by construction


class TriangulationError(RuntimeError):
    pass


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("ARTIFACT_WORKERS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class TaggedTriangulation:
    n: int
    interior: frozenset[Segment]

    def sorted_interior(self) -> list[Segment]:
        return sorted(self.interior)

    def to_json(self) -> dict:
        return {"interior": [g.to_json() for g in self.sorted_interior()], "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> TaggedTriangulation:
        return cls(data["n"], frozenset(Segment.from_json(g) for g in data["interior"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _reps(g: Segment) -> list[tuple[int, int]]:
    if g.is_diameter:
        return [(g.s, g.t)]
    return [(g.s, g.t), (-g.t, -g.s)]


def segments_cross(pd: PolygonD, g1: Segment, g2: Segment) -> bool:
    """Geometric crossing of tagged segments (ignoring shared endpoints)."""
    g1, g2 = pd.validate(g1), pd.validate(g2)
    if g1 == g2:
        return False
    if g1.is_diameter and g2.is_diameter:
        return g1.t != g2.t and g1.tag != g2.tag
    for a, b in _reps(g1):
        for c, d in _reps(g2):
            if len({a, b, c, d}) == 4 and interleave(pd, a, b, c, d):
                return True
    return False


@lru_cache(maxsize=None)
def _compat_masks(pd: PolygonD) -> tuple[tuple[Segment, ...], tuple[int, ...]]:
    segs = pd.interior
    masks = []
    for g in segs:
        m = 0
        for j, h in enumerate(segs):
            if h != g and not segments_cross(pd, g, h):
                m |= 1 << j
        masks.append(m)
    return segs, tuple(masks)


def enumerate_triangulations(pd: PolygonD) -> list[TaggedTriangulation]:
    """All sets of n-1 pairwise non-crossing interior segments, in lexicographic order."""
    segs, masks = _compat_masks(pd)
    target = pd.n - 1
    out: list[TaggedTriangulation] = []

    def grow(chosen: list[int], allowed: int, start: int) -> None:
        if len(chosen) == target:
            out.append(TaggedTriangulation(pd.n, frozenset(segs[j] for j in chosen)))
            return
        for j in range(start, len(segs)):
            if allowed >> j & 1:
                chosen.append(j)
                grow(chosen, allowed & masks[j], j + 1)
                chosen.pop()

    grow([], (1 << len(segs)) - 1, 0)
    return out


def is_triangulation(pd: PolygonD, interior: frozenset[Segment]) -> bool:
    segs = [pd.validate(g) for g in interior]
    if any(pd.is_boundary(g) for g in segs) or len(set(segs)) != pd.n - 1:
        return False
    return not any(segments_cross(pd, a, b) for a, b in combinations(segs, 2))


def is_maximal_noncrossing(pd: PolygonD, interior: frozenset[Segment]) -> bool:
    """Completion test: no further interior segment can be added."""
    return not any(
        g not in interior and all(not segments_cross(pd, g, h) for h in interior) for g in pd.interior
    )


def flip(pd: PolygonD, tt: TaggedTriangulation, g: Segment) -> tuple[TaggedTriangulation, Segment]:
    if g not in tt.interior:
        raise TriangulationError(f"{g} is not in the triangulation")
    rest = tt.interior - {g}
    found = [h for h in pd.interior if h not in tt.interior and all(not segments_cross(pd, h, x) for x in rest)]
    if len(found) != 1:
        raise TriangulationError(f"flip of {g} has {len(found)} replacements")
    h = found[0]
    return TaggedTriangulation(tt.n, rest | {h}), h


def triangulation_to_mapr(pd: PolygonD, tt: TaggedTriangulation) -> ReprSum:
    return frozenset(pd.functor(g) for g in tuple(tt.interior) + pd.boundary)


def mapr_to_triangulation(pd: PolygonD, t: ReprSum) -> TaggedTriangulation:
    segs = [pd.segment_of(x) for x in t]
    return TaggedTriangulation(pd.n, frozenset(g for g in segs if not pd.is_boundary(g)))


def is_branch(x: Index, n: int) -> bool:
    return x[0] in (n - 1, n)


def _branch_pair(summands: list[Index], n: int) -> bool:
    if len(summands) != 2:
        return False
    (a, k1), (b, k2) = sorted(summands)
    return k1 == k2 and (a, b) == (n - 1, n)


def pair_ok(pd: PolygonD, x: Index, y: Index) -> bool:
    """The almost pre-rigid condition on extensions 0 -> y -> E -> x -> 0."""
    n = pd.n
    gx, gy = pd.segment_of(x), pd.segment_of(y)
    e = crossing_number(pd, gx, gy)
    if e == 0:
        return True
    if is_branch(x, n) and is_branch(y, n):
        return False
    if e > 1:
        return False
    mid = middle_term(pd, gx, gy)
    return len(mid) == 1 or _branch_pair(mid, n)


def compatible(pd: PolygonD, x: Index, y: Index) -> bool:
    return x == y or (pair_ok(pd, x, y) and pair_ok(pd, y, x))


def is_almost_prerigid(pd: PolygonD, t: ReprSum) -> bool:
    items = sorted(set(t))
    if any(x not in pd.ar_d.dims for x in items):
        return False
    return all(compatible(pd, x, y) for x, y in combinations(items, 2))


@lru_cache(maxsize=None)
def compatibility_graph(pd: PolygonD) -> nx.Graph:
    g = nx.Graph()
    nodes = pd.ar_d.nodes
    g.add_nodes_from(nodes)
    for x, y in combinations(nodes, 2):
        if compatible(pd, x, y):
            g.add_edge(x, y)
    return g


def enumerate_maprs(pd: PolygonD) -> list[ReprSum]:
    """Maximal almost pre-rigid sums as the maximal cliques of the compatibility graph."""
    cliques = [frozenset(c) for c in nx.find_cliques(compatibility_graph(pd))]
    return sorted(cliques, key=lambda c: sorted(c))


def is_mapr(pd: PolygonD, t: ReprSum) -> bool:
    if not is_almost_prerigid(pd, t):
        return False
    return all(x in t or not all(compatible(pd, x, y) for y in t) for x in pd.ar_d.nodes)


def catalan_type_d(n: int) -> int:
    from math import comb

    value = (3 * n - 5) * comb(2 * n - 4, n - 2)
    if value % (n - 1):
        raise ArithmeticError("generalized Catalan number is not an integer")
    return value // (n - 1)


def orbit_of_first_projective(pd: PolygonD) -> frozenset[Index]:
    return frozenset(x for x in pd.ar_d.dims if x[0] == 1)


# Subdivided quiver and the functor G_D


def gd_on_index(x: Index, n: int) -> Index:
    """Image of tau^{-k} P_i under G_D, as an index over the subdivided quiver."""
    i, k = x
    if not 1 <= i <= n or not 0 <= k <= n - 2:
        raise ValueError(f"bad index {x} for n={n}")
    if i >= n - 1 and k % 2 == 1:
        i = 2 * n - 1 - i
    return (dbar_label(i), 2 * k)


def gd_object_dims(dim: tuple[int, ...], n: int) -> dict[int, int]:
    """Dimension vector of G_D(X) built vertex by vertex from that of X."""
    x = dict(zip(range(1, n + 1), dim))
    out = {dbar_label(i): x[i] for i in range(1, n + 1)}
    for i in range(1, n - 2):
        out[dbar_label(i, half=True)] = x[i] if x[i + 1] else 0
    hub = dbar_label(n - 2, half=True)
    out[hub] = x[n - 2] if (x[n - 1] or x[n]) else 0
    return out


@lru_cache(maxsize=None)
def dbar_ar(pd: PolygonD) -> ARQuiver:
    return module_ar(subdivide_to_dbar(pd.qd))


def is_tilting_image(pd: PolygonD, t: ReprSum) -> bool:
    ar = dbar_ar(pd)
    if len(t) != 2 * pd.n - 2:
        return False
    images = {gd_on_index(x, pd.n) for x in t}
    if len(images) != len(t) or not images <= set(ar.dims):
        return False
    reps = [realize(ar.quiver, ar.dims[y]) for y in sorted(images)]
    return all(ext1_dim(a, b) == 0 for a in reps for b in reps)
