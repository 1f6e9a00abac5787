"""Geometric Ext^1 on the punctured polygon: positive intersections, crossing numbers and middle terms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

from .ar_knitting import Index
from .geometry_model import NOTCHED, PLAIN, PolygonD, Segment, SegmentError

FLOAT_MARGIN = 1e-9


class IntersectionError(ValueError):
    pass


@dataclass(frozen=True)
class OrientedChord:
    segment: Segment
    start: int
    end: int


def chord(g: Segment) -> OrientedChord:
    return OrientedChord(g, g.s, g.t)


def _squarefree(r: int) -> tuple[int, int]:
    """r = k^2 * f with f squarefree; returns (k, f)."""
    k, f, p = 1, r, 2
    while p * p <= f:
        while f % (p * p) == 0:
            f //= p * p
            k *= p
        p += 1
    return k, f


def sign_of_root_sum(terms: list[tuple[int, int]]) -> int:
    """Exact sign of sum c * sqrt(r) over integer pairs (c, r) with r >= 0."""
    grouped: dict[int, int] = {}
    for c, r in terms:
        if c == 0 or r == 0:
            continue
        k, f = _squarefree(r)
        grouped[f] = grouped.get(f, 0) + c * k
    grouped = {f: c for f, c in grouped.items() if c}
    if not grouped:
        return 0
    approx = sum(c * math.sqrt(f) for f, c in grouped.items())
    scale = sum(abs(c) * math.sqrt(f) for f, c in grouped.items())
    if abs(approx) > FLOAT_MARGIN * max(1.0, scale):
        return 1 if approx > 0 else -1
    # square roots of distinct squarefree integers are linearly independent, so
    # the sum is nonzero and enough digits will settle its sign
    prec = 50
    while True:
        with localcontext() as ctx:
            ctx.prec = prec
            val = sum(Decimal(c) * Decimal(f).sqrt() for f, c in grouped.items())
            if abs(val) > Decimal(10) ** (-(prec - 10)) * Decimal(scale + 1):
                return 1 if val > 0 else -1
        prec *= 2


def _direction(pd: PolygonD, a: int, b: int) -> tuple[list[tuple[int, int]], int]:
    """Vector b - a (scaled by 2n-3): x as a root sum, y as an integer."""
    sa, ra, ya = pd.exact_point(a)
    sb, rb, yb = pd.exact_point(b)
    return [(2 * sb, rb), (-2 * sa, ra)], yb - ya


def cross_sign(pd: PolygonD, c1: OrientedChord, c2: OrientedChord) -> int:
    """Sign of the cross product d1 x d2 of the chord directions."""
    x1, y1 = _direction(pd, c1.start, c1.end)
    x2, y2 = _direction(pd, c2.start, c2.end)
    terms = [(c * y2, r) for c, r in x1] + [(-c * y1, r) for c, r in x2]
    return sign_of_root_sum(terms)


def _strictly_between(pd: PolygonD, a: int, x: int, b: int) -> bool:
    """x lies on the open counterclockwise arc from a to b."""
    if x in (a, b):
        return False
    return pd.arc_length(a, x) < pd.arc_length(a, b)


def interleave(pd: PolygonD, a: int, b: int, c: int, d: int) -> bool:
    """The chords {a,b} and {c,d} (four distinct endpoints) cross in the interior."""
    return _strictly_between(pd, a, c, b) != _strictly_between(pd, a, d, b)


def have_common_point(pd: PolygonD, c1: OrientedChord, c2: OrientedChord) -> bool:
    e1, e2 = {c1.start, c1.end}, {c2.start, c2.end}
    if e1 == e2:
        return False
    shared = e1 & e2
    if shared:
        return c1.end == c2.start or c2.end == c1.start
    return interleave(pd, c1.start, c1.end, c2.start, c2.end)


def positive_intersections(pd: PolygonD, c1: OrientedChord, c2: OrientedChord) -> int:
    """1 when the chords meet away from a common start or end and c2 turns clockwise from c1."""
    if not have_common_point(pd, c1, c2):
        return 0
    return int(cross_sign(pd, c2, c1) > 0)


def crossing_number(pd: PolygonD, g1: Segment, g2: Segment) -> int:
    g1, g2 = pd.validate(g1), pd.validate(g2)
    if g1.is_diameter and g2.is_diameter:
        return positive_intersections(pd, chord(g1), chord(g2)) * abs(g1.tag - g2.tag) // 2
    if g1.is_diameter or g2.is_diameter:
        return positive_intersections(pd, chord(g1), chord(g2))
    c2 = chord(g2)
    return positive_intersections(pd, chord(g1), c2) + positive_intersections(pd, chord(g1.other()), c2)


def ext_dim_geometric(pd: PolygonD, m: Index, n_: Index) -> int:
    return crossing_number(pd, pd.segment_of(m), pd.segment_of(n_))


def _join(pd: PolygonD, a: int, b: int) -> list[Segment]:
    """Canonical segment between Y_a and Y_b; empty when the endpoints coincide."""
    if a == b:
        return []
    return [pd.canonical(a, b, PLAIN if a == -b else 0)]


def _diam(t: int, tag: int) -> Segment:
    t = abs(t)
    return Segment(-t, t, tag)


def _resolve(pd: PolygonD, g1: Segment, s: int, t: int, g2: Segment) -> list[Segment]:
    """Segments obtained by resolving the positive intersection of (s, t) with g2."""
    l1 = g1.tag
    u, v, l2 = g2.s, g2.t, g2.tag
    out: list[Segment] = []
    if g1.is_diameter and g2.is_diameter:
        out += _join(pd, u, t)
    elif g1.is_diameter:
        out += [_diam(u, l1)] + _join(pd, s, v)
    elif g2.is_diameter:
        out += [_diam(t, l2)] + _join(pd, s, v)
    elif s == -v:
        out += _join(pd, u, t) + [_diam(v, PLAIN), _diam(v, NOTCHED)]
    elif u == -t:
        out += [_diam(t, PLAIN), _diam(t, NOTCHED)] + _join(pd, s, v)
    else:
        out += _join(pd, u, t) + _join(pd, s, v)
    return sorted(out)


def middle_term_candidates(pd: PolygonD, g1: Segment, g2: Segment) -> list[list[Segment]]:
    """One middle term per positive intersection of g1 (quotient side) with g2 (sub side)."""
    g1, g2 = pd.validate(g1), pd.validate(g2)
    if crossing_number(pd, g1, g2) == 0:
        return []
    if g1.is_diameter or g2.is_diameter:
        return [_resolve(pd, g1, g1.s, g1.t, g2)]
    c2 = chord(g2)
    out = []
    for s, t in ((g1.s, g1.t), (-g1.t, -g1.s)):
        if positive_intersections(pd, OrientedChord(g1, s, t), c2):
            out.append(_resolve(pd, g1, s, t, g2))
    return out


def middle_term_segments(pd: PolygonD, g1: Segment, g2: Segment) -> list[Segment]:
    """Middle-term segments of the non-split sequence 0 -> F(g2) -> E -> F(g1) -> 0."""
    g1, g2 = pd.validate(g1), pd.validate(g2)
    if crossing_number(pd, g1, g2) != 1:
        raise IntersectionError(f"crossing number of {g1} and {g2} is not 1")
    return middle_term_candidates(pd, g1, g2)[0]


def middle_term(pd: PolygonD, g1: Segment, g2: Segment) -> list[Index]:
    return sorted(pd.functor(g) for g in middle_term_segments(pd, g1, g2))
