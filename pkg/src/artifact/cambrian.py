"""Covering relations, Hasse posets and lattices on triangulations and maximal almost pre-rigid sums."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Hashable, Sequence

import networkx as nx

from .ar_knitting import Index
from .ext_crossing import _direction, crossing_number, interleave, middle_term_candidates, sign_of_root_sum
from .geometry_model import PolygonD, Segment, SegmentError
from .maprigid import (
    ReprSum,
    TaggedTriangulation,
    enumerate_maprs,
    enumerate_triangulations,
    flip,
    is_branch,
    mapr_to_triangulation,
    triangulation_to_mapr,
)


class PosetError(RuntimeError):
    pass


@dataclass
class HassePoset:
    elements: list[Any]
    covers: set[tuple[int, int]]
    _up: list[int] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        self._up = self._closure()

    def _closure(self) -> list[int]:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.elements)))
        g.add_edges_from(self.covers)
        if not nx.is_directed_acyclic_graph(g):
            raise PosetError("covering relation has a cycle")
        up = [0] * len(self.elements)
        for v in reversed(list(nx.topological_sort(g))):
            m = 1 << v
            for w in g.successors(v):
                m |= up[w]
            up[v] = m
        return up

    def leq(self, a: int, b: int) -> bool:
        return bool(self._up[a] >> b & 1)

    def is_transitively_reduced(self) -> bool:
        for a, b in self.covers:
            for c in range(len(self.elements)):
                if c not in (a, b) and self.leq(a, c) and self.leq(c, b):
                    return False
        return True

    def minimal(self) -> list[int]:
        has_lower = {b for _, b in self.covers}
        return [i for i in range(len(self.elements)) if i not in has_lower]

    def maximal(self) -> list[int]:
        has_upper = {a for a, _ in self.covers}
        return [i for i in range(len(self.elements)) if i not in has_upper]

    def _down(self) -> list[int]:
        down = [0] * len(self.elements)
        for a, m in enumerate(self._up):
            for b in _bits(m):
                down[b] |= 1 << a
        return down

    def join(self, a: int, b: int) -> int | None:
        common = self._up[a] & self._up[b]
        for c in _bits(common):
            if self._up[c] & common == common:
                return c
        return None

    def meet(self, a: int, b: int) -> int | None:
        down = self._down()
        common = down[a] & down[b]
        for c in _bits(common):
            if down[c] & common == common:
                return c
        return None

    def is_lattice(self) -> bool:
        size = len(self.elements)
        down = self._down()
        for a in range(size):
            for b in range(a + 1, size):
                for table in (self._up, down):
                    common = table[a] & table[b]
                    if not any(table[c] & common == common for c in _bits(common)):
                        return False
        return True

    def out_degree(self, a: int) -> int:
        return sum(1 for x, _ in self.covers if x == a)

    def degree(self, a: int) -> int:
        return sum(1 for x, y in self.covers if a in (x, y))

    def ranks(self) -> list[int]:
        g = nx.DiGraph(list(self.covers))
        g.add_nodes_from(range(len(self.elements)))
        rank = [0] * len(self.elements)
        for v in nx.topological_sort(g):
            for w in g.successors(v):
                rank[w] = max(rank[w], rank[v] + 1)
        return rank

    def to_json(self, encode: Callable[[Any], Any] = lambda x: x) -> dict:
        return {
            "elements": [encode(e) for e in self.elements],
            "covers": [list(c) for c in sorted(self.covers)],
        }

    def dumps(self, encode: Callable[[Any], Any] = lambda x: x) -> str:
        return json.dumps(self.to_json(encode), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> HassePoset:
        return cls(list(data["elements"]), {(a, b) for a, b in data["covers"]})

    def to_dot(self, label: Callable[[Any], str] = str) -> str:
        lines = ["digraph Hasse {", "  rankdir=BT;"]
        rank = self.ranks()
        for r in sorted(set(rank)):
            members = " ".join(f"e{i};" for i in range(len(self.elements)) if rank[i] == r)
            lines.append(f"  {{ rank=same; {members} }}")
        for i, e in enumerate(self.elements):
            text = label(e).replace('"', "'")
            lines.append(f'  e{i} [label="{text}"];')
        for a, b in sorted(self.covers):
            lines.append(f"  e{a} -> e{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def build_lattice(
    elems: Sequence[Hashable],
    covers_fn: Callable[[Any, Any], bool],
    neighbours: Callable[[Any], list[Any]] | None = None,
) -> HassePoset:
    """Hasse poset from a covering predicate, checked over all pairs or over the given neighbours."""
    if not elems:
        raise PosetError("empty poset")
    index = {e: i for i, e in enumerate(elems)}
    covers = set()
    for i, a in enumerate(elems):
        cands = neighbours(a) if neighbours else elems
        for b in cands:
            if b != a and covers_fn(a, b):
                covers.add((i, index[b]))
    return HassePoset(list(elems), covers)


# Perpendicular-slope order on segments


def perp_compare(pd: PolygonD, g1: Segment, g2: Segment) -> int:
    """-1, 0 or 1 as the slope of the perpendicular of g1 is below, equal to or above that of g2.

    Every chord runs from lower to higher y, so the perpendicular slope -dx/dy is
    finite and the comparison reduces to the sign of dx2*dy1 - dx1*dy2.
    """
    dx1, dy1 = _direction(pd, g1.s, g1.t)
    dx2, dy2 = _direction(pd, g2.s, g2.t)
    terms = [(c * dy1, r) for c, r in dx2] + [(-c * dy2, r) for c, r in dx1]
    return sign_of_root_sum(terms)


def covers_triangulation(pd: PolygonD, t1: TaggedTriangulation, t2: TaggedTriangulation) -> bool:
    d1, d2 = t1.interior - t2.interior, t2.interior - t1.interior
    if len(d1) != 1 or len(d2) != 1:
        return False
    (g1,), (g2,) = d1, d2
    c = perp_compare(pd, g1, g2)
    if c == 0:
        raise PosetError(f"{g1} and {g2} have parallel perpendiculars")
    return c < 0


def covers_mapr(pd: PolygonD, t1: ReprSum, t2: ReprSum) -> bool:
    d1, d2 = t1 - t2, t2 - t1
    if len(d1) != 1 or len(d2) != 1:
        return False
    (m1,), (m2,) = d1, d2
    g1, g2 = pd.segment_of(m1), pd.segment_of(m2)
    shared = t1 & t2
    for cand in middle_term_candidates(pd, g2, g1):
        if {pd.functor(g) for g in cand} <= shared:
            return True
    return False


def flip_neighbours(pd: PolygonD, tt: TaggedTriangulation) -> list[TaggedTriangulation]:
    return [flip(pd, tt, g)[0] for g in sorted(tt.interior)]


@lru_cache(maxsize=None)
def triangulation_poset(pd: PolygonD) -> HassePoset:
    elems = enumerate_triangulations(pd)
    return build_lattice(elems, lambda a, b: covers_triangulation(pd, a, b), lambda a: flip_neighbours(pd, a))


@lru_cache(maxsize=None)
def mapr_poset(pd: PolygonD) -> HassePoset:
    elems = enumerate_maprs(pd)
    by_tri = {mapr_to_triangulation(pd, t): t for t in elems}

    def neighbours(t: ReprSum) -> list[ReprSum]:
        return [by_tri[x] for x in flip_neighbours(pd, mapr_to_triangulation(pd, t))]

    return build_lattice(elems, lambda a, b: covers_mapr(pd, a, b), neighbours)


def expected_min_mapr(pd: PolygonD) -> ReprSum:
    ar = pd.ar_d
    return frozenset({(i, 0) for i in range(2, pd.n + 1)} | {x for x in ar.dims if x[0] == 1})


def expected_max_mapr(pd: PolygonD) -> ReprSum:
    ar = pd.ar_d
    inj = {x for x in ar.dims if ar.is_injective(x)}
    return frozenset(inj | {x for x in ar.dims if x[0] == 1})


def is_order_isomorphic_via_functor(pd: PolygonD) -> bool:
    tp, mp = triangulation_poset(pd), mapr_poset(pd)
    pos = {e: i for i, e in enumerate(mp.elements)}
    perm = [pos[triangulation_to_mapr(pd, t)] for t in tp.elements]
    return {(perm[a], perm[b]) for a, b in tp.covers} == mp.covers


# Almost positive roots


@dataclass(frozen=True, order=True)
class AlmostPositiveRoot:
    coeffs: tuple[tuple[int, int], ...]
    negative: bool = False

    def __post_init__(self) -> None:
        vals = [c for _, c in self.coeffs if c]
        if self.negative:
            if vals != [-1]:
                raise ValueError("a negative simple root has a single coefficient -1")
        elif not vals or any(c < 0 for c in vals):
            raise ValueError("positive roots have nonnegative coefficients, not all zero")

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> AlmostPositiveRoot:
        coeffs = tuple(sorted((v, c) for v, c in d.items() if c))
        return cls(coeffs, any(c < 0 for _, c in coeffs))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def support(self) -> list[int]:
        return [v for v, c in self.coeffs if c]

    def __str__(self) -> str:
        parts = []
        for v, c in self.coeffs:
            if c == -1:
                parts.append(f"-pi{v}")
            elif c == 1:
                parts.append(f"pi{v}")
            elif c:
                parts.append(f"{c}pi{v}")
        return "+".join(parts)


def delta_segments(pd: PolygonD) -> dict[int, Segment]:
    """The segment of each projective P_i for i = 2..n."""
    return {i: pd.segment_of((i, 0)) for i in range(2, pd.n + 1)}


def interior_crossings(pd: PolygonD, g: Segment, h: Segment) -> int:
    """Crossing points of the centrally symmetric figures of g and h, away from the puncture, halved."""
    if g == h:
        return 0
    if g.is_diameter and h.is_diameter:
        return int(g.t != h.t and g.tag != h.tag)
    reps_g = [(g.s, g.t)] if g.is_diameter else [(g.s, g.t), (-g.t, -g.s)]
    reps_h = [(h.s, h.t)] if h.is_diameter else [(h.s, h.t), (-h.t, -h.s)]
    count = 0
    for a, b in reps_g:
        for c, d in reps_h:
            if len({a, b, c, d}) == 4 and interleave(pd, a, b, c, d):
                count += 1
    return count // 2


def root_label(pd: PolygonD, g: Segment) -> AlmostPositiveRoot:
    g = pd.validate(g)
    if pd.is_boundary(g):
        raise SegmentError(f"{g} is a boundary segment and carries no root")
    deltas = delta_segments(pd)
    for i, d in deltas.items():
        if d == g:
            return AlmostPositiveRoot.from_dict({i: -1})
    return AlmostPositiveRoot.from_dict({i: interior_crossings(pd, g, d) for i, d in deltas.items()})


def cluster_of(pd: PolygonD, tt: TaggedTriangulation) -> frozenset[AlmostPositiveRoot]:
    return frozenset(root_label(pd, g) for g in tt.interior)


# Type B


def _branch_pairs(t: ReprSum, n: int) -> list[int]:
    return sorted(k for (i, k) in t if i == n - 1 and (n, k) in t)


def covers_type_b(pd: PolygonD, t1: ReprSum, t2: ReprSum) -> bool:
    n = pd.n
    d1, d2 = sorted(t1 - t2), sorted(t2 - t1)
    single = len(d1) == len(d2) == 1 and not is_branch(d1[0], n) and not is_branch(d2[0], n)
    paired = (
        len(d1) == len(d2) == 2
        and all(is_branch(x, n) for x in d1 + d2)
        and d1[0][1] == d1[1][1]
        and d2[0][1] == d2[1][1]
    )
    if not (single or paired):
        return False
    ext = sum(crossing_number(pd, pd.segment_of(m2), pd.segment_of(m1)) for m2 in d2 for m1 in d1)
    return ext != 0


@lru_cache(maxsize=None)
def type_b_subposet(pd: PolygonD) -> HassePoset:
    elems = [t for t in enumerate_maprs(pd) if _branch_pairs(t, pd.n)]
    rel = build_lattice(elems, lambda a, b: covers_type_b(pd, a, b))
    g = nx.transitive_reduction(nx.DiGraph(list(rel.covers)))
    return HassePoset(rel.elements, set(g.edges()))


def type_b_expected_size(n: int) -> int:
    from math import comb

    return comb(2 * n - 4, n - 2)


def mapr_label(t: ReprSum) -> str:
    return " ".join(f"({i},{k})" for i, k in sorted(t))


def mapr_json(t: ReprSum) -> list[list[int]]:
    return [list(x) for x in sorted(t)]


def index_label(x: Index) -> str:
    return f"({x[0]},{x[1]})"
