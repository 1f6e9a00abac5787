"""Punctured-polygon model for type D: tagged segments, pivots, rotation and the functor to modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .ar_knitting import ARQuiver, Index, interval_module_typeA, module_ar, psi_parity
from .quiver_core import Kind, Quiver, QuiverError, fold_source_quiver_a, quiver_d

PLAIN = 1
NOTCHED = -1


class SegmentError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Segment:
    """Tagged segment gamma_s^t; tag is +1/-1 on diameters (t = -s) and 0 otherwise."""

    s: int
    t: int
    tag: int = 0

    @property
    def is_diameter(self) -> bool:
        return self.s == -self.t

    def other(self) -> Segment:
        """The centrally symmetric representative gamma_{-t}^{-s}."""
        return Segment(-self.t, -self.s, self.tag)

    def text(self) -> str:
        if self.is_diameter:
            return f"{self.s}:{self.t}:{self.tag:+d}"
        return f"{self.s}:{self.t}"

    def to_json(self) -> dict:
        return {"s": self.s, "t": self.t, "tag": self.tag if self.is_diameter else None}

    @classmethod
    def from_json(cls, data: dict) -> Segment:
        return cls(data["s"], data["t"], data["tag"] or 0)

    def __str__(self) -> str:
        if self.is_diameter:
            return f"g[{self.s},{self.t};{self.tag:+d}]"
        return f"g[{self.s},{self.t}]"


def parse_segment(text: str) -> Segment:
    parts = text.strip().split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError as exc:
        raise SegmentError(f"cannot parse segment {text!r}") from exc
    if len(nums) == 2:
        s, t = nums
        if s == -t:
            raise SegmentError("diameters need a tag, write s:t:+1 or s:t:-1")
        return Segment(s, t)
    if len(nums) == 3:
        s, t, tag = nums
        if s != -t or tag not in (PLAIN, NOTCHED):
            raise SegmentError(f"bad tagged diameter {text!r}")
        return Segment(s, t, tag)
    raise SegmentError(f"cannot parse segment {text!r}")


@dataclass(frozen=True)
class PolygonA:
    n: int
    signs: tuple[int, ...]

    @property
    def size(self) -> int:
        return 2 * self.n - 3

    def y(self, s: int) -> float:
        return -1 + 2 * s / self.size

    def x(self, s: int) -> float:
        y = self.y(s)
        return self.signs[s] * math.sqrt(max(0.0, 1 - y * y))

    def point(self, s: int) -> tuple[float, float]:
        return (self.x(s), self.y(s))

    def exact_point(self, s: int) -> tuple[int, int, int]:
        """(sign, radicand, y) with the point equal to (sign*2*sqrt(radicand), y) / (2n-3)."""
        m = self.size
        return (self.signs[s], s * (m - s), 2 * s - m)


def build_polygon_a(qa: Quiver) -> PolygonA:
    if qa.kind is not Kind.A:
        raise QuiverError("expected a type A quiver")
    m = len(qa.vertices)
    signs = [0] * (m + 1)
    for s in range(1, m):
        signs[s] = 1 if qa.arrow(f"a{s}").src == s else -1
    return PolygonA(qa.n, tuple(signs))


@dataclass(frozen=True)
class PolygonD:
    n: int
    dirs: str
    pa: PolygonA = field(compare=False, repr=False)

    @cached_property
    def qd(self) -> Quiver:
        return quiver_d(self.n, self.dirs)

    @cached_property
    def qa(self) -> Quiver:
        return fold_source_quiver_a(self.qd)

    @property
    def labels(self) -> list[int]:
        return [h for h in range(-(self.n - 1), self.n) if h]

    def x_index(self, h: int) -> int:
        """Index s of X_s relabelled as Y_h."""
        if h == 0 or abs(h) > self.n - 1:
            raise SegmentError(f"no vertex Y_{h} for n={self.n}")
        return h + self.n - 1 if h < 0 else h + self.n - 2

    def label(self, s: int) -> int:
        return s - self.n + 1 if s <= self.n - 2 else s - self.n + 2

    @cached_property
    def ccw_order(self) -> tuple[int, ...]:
        m = self.pa.size
        right = [s for s in range(1, m) if self.pa.signs[s] > 0]
        left = [s for s in range(1, m) if self.pa.signs[s] < 0]
        order = [0] + right + [m] + left[::-1]
        return tuple(self.label(s) for s in order)

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {h: p for p, h in enumerate(self.ccw_order)}

    def ccw(self, h: int) -> int:
        order = self.ccw_order
        return order[(self._pos[h] + 1) % len(order)]

    def cw(self, h: int) -> int:
        order = self.ccw_order
        return order[(self._pos[h] - 1) % len(order)]

    def arc_length(self, s: int, t: int) -> int:
        if s == t:
            raise SegmentError("arc length needs distinct endpoints")
        for h in (s, t):
            self.x_index(h)
        return (self._pos[t] - self._pos[s]) % len(self.ccw_order) + 1

    def point(self, h: int) -> tuple[float, float]:
        return self.pa.point(self.x_index(h))

    def exact_point(self, h: int) -> tuple[int, int, int]:
        return self.pa.exact_point(self.x_index(h))

    # segments

    def canonical(self, s: int, t: int, tag: int = 0) -> Segment:
        """Canonical representative of the chord between Y_s and Y_t (either order)."""
        if s == t:
            raise SegmentError("degenerate segment")
        s, t = min(s, t), max(s, t)
        if s == -t:
            if tag not in (PLAIN, NOTCHED):
                raise SegmentError("a diameter needs a tag")
            return Segment(s, t, tag)
        seg = Segment(s, t)
        if self.arc_length(s, t) > self.n:
            seg = seg.other()
        return seg

    def normalize(self, g: Segment) -> Segment:
        return self.canonical(g.s, g.t, g.tag)

    def validate(self, g: Segment) -> Segment:
        if g.s >= g.t:
            raise SegmentError(f"{g} must have s < t")
        if g.is_diameter != (g.tag != 0):
            raise SegmentError(f"{g} has a tag inconsistent with its endpoints")
        return self.normalize(g)

    @cached_property
    def omega(self) -> tuple[Segment, ...]:
        out = set()
        labs = self.labels
        for a in labs:
            for b in labs:
                if a < b:
                    if a == -b:
                        out.add(Segment(a, b, PLAIN))
                        out.add(Segment(a, b, NOTCHED))
                    else:
                        out.add(self.canonical(a, b))
        return tuple(sorted(out))

    def is_boundary(self, g: Segment) -> bool:
        return not g.is_diameter and self.arc_length(g.s, g.t) == 2

    @cached_property
    def interior(self) -> tuple[Segment, ...]:
        return tuple(g for g in self.omega if not self.is_boundary(g))

    @cached_property
    def boundary(self) -> tuple[Segment, ...]:
        return tuple(g for g in self.omega if self.is_boundary(g))

    def pivots(self, g: Segment) -> list[Segment]:
        g = self.validate(g)
        s, t = g.s, g.t
        u, v = self.ccw(s), self.ccw(t)
        length = self.arc_length(s, t)
        out: list[Segment] = []
        if g.is_diameter:
            u = self.ccw(-t)
            if u < t:
                out.append(self.canonical(u, t))
            return out
        if length <= self.n - 2:
            if s < v:
                out.append(self.canonical(s, v))
        elif s < v:
            # v is the antipode of s: both tagged diameters through Y_s
            out += [Segment(-abs(s), abs(s), PLAIN), Segment(-abs(s), abs(s), NOTCHED)]
        if u < t and u != t:
            out.append(self.canonical(u, t))
        return out

    def rotate(self, g: Segment) -> Segment | None:
        """Clockwise rotation; None when the rotated segment leaves the s < t chart."""
        g = self.validate(g)
        if g.is_diameter:
            t = self.cw(g.t)
            return Segment(-t, t, -g.tag) if t > 0 else None
        s, t = self.cw(g.s), self.cw(g.t)
        return Segment(s, t) if s < t else None

    def f_map(self, g: Segment, variant: int = 1) -> tuple[int, int]:
        g = self.validate(g)
        if g.is_diameter:
            if (variant == 1 and g.tag != PLAIN) or (variant == 2 and g.tag != NOTCHED):
                raise SegmentError(f"{g} is outside the domain of f{variant}")
            tp = self.x_index(g.t)
            return (2 * self.n - 3 - tp, tp)
        return (self.x_index(g.s), self.x_index(g.t))

    @cached_property
    def ar_d(self) -> ARQuiver:
        return module_ar(self.qd)

    @cached_property
    def ar_a(self) -> ARQuiver:
        return module_ar(self.qa)

    def functor(self, g: Segment) -> Index:
        g = self.validate(g)
        variant = 2 if g.tag == NOTCHED else 1
        sp, tp = self.f_map(g, variant)
        i, k = interval_module_typeA(self.ar_a, sp + 1, tp)
        if i > self.n - 1:
            raise SegmentError(f"{g} maps outside the folded range")
        return psi_parity((i, k), self.n, variant)

    @cached_property
    def functor_table(self) -> dict[Segment, Index]:
        return {g: self.functor(g) for g in self.omega}

    @cached_property
    def inverse_table(self) -> dict[Index, Segment]:
        inv = {x: g for g, x in self.functor_table.items()}
        if len(inv) != len(self.omega):
            raise SegmentError("segment functor is not injective")
        return inv

    def segment_of(self, x: Index) -> Segment:
        return self.inverse_table[x]

    def dim_formula(self, g: Segment) -> tuple[int, ...]:
        g = self.validate(g)
        n, s, t = self.n, g.s, g.t
        dim = [0] * n

        def add(lo: int, hi: int) -> None:
            for i in range(lo, hi + 1):
                dim[i - 1] += 1

        if g.is_diameter:
            if g.tag == PLAIN:
                add(n - t, n - 1)
            else:
                add(n - t, n - 2)
                dim[n - 1] += 1
        elif t < 0:
            add(n + s, n + t - 1)
        elif s < 0:
            add(n + s, n)
            add(n - t, n - 2)
        else:
            add(n - t, n - s - 1)
        return tuple(dim)


@lru_cache(maxsize=None)
def polygon_d(n: int, dirs: str) -> PolygonD:
    qa = fold_source_quiver_a(quiver_d(n, dirs))
    return PolygonD(n, dirs, build_polygon_a(qa))


def relabel_to_d(pa: PolygonA, dirs: str) -> PolygonD:
    return PolygonD(pa.n, dirs, pa)


@dataclass(frozen=True)
class TranslationQuiverD:
    nodes: tuple[Segment, ...]
    arrows: tuple[tuple[Segment, Segment], ...]
    translation: tuple[tuple[Segment, Segment], ...]

    def to_dot(self) -> str:
        def name(g: Segment) -> str:
            return f"S{g.s}_{g.t}[{g.tag:+d}]" if g.is_diameter else f"S{g.s}_{g.t}"

        lines = ["digraph Segments {", "  rankdir=LR;"]
        lines += [f'  "{name(g)}";' for g in self.nodes]
        lines += [f'  "{name(a)}" -> "{name(b)}";' for a, b in self.arrows]
        lines += [f'  "{name(a)}" -> "{name(b)}" [style=dashed, constraint=false];' for a, b in self.translation]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_translation_quiver(pd: PolygonD) -> TranslationQuiverD:
    arrows = tuple((g, h) for g in pd.omega for h in pd.pivots(g))
    trans = tuple((g, r) for g in pd.omega if (r := pd.rotate(g)) is not None)
    return TranslationQuiverD(pd.omega, arrows, trans)


def check_translation_iso(tq: TranslationQuiverD, ar: ARQuiver, fmap: dict[Segment, Index]) -> bool:
    if len(set(fmap[g] for g in tq.nodes)) != len(tq.nodes) or set(fmap.values()) != set(ar.dims):
        return False
    mapped = sorted((fmap[a], fmap[b]) for a, b in tq.arrows)
    if mapped != sorted(ar.arrows) or len(set(mapped)) != len(mapped):
        return False
    tau_map = dict(tq.translation)
    for g in tq.nodes:
        x = fmap[g]
        r = tau_map.get(g)
        want = ar.tau(x)
        if (r is None) != (want is None):
            return False
        if r is not None and fmap[r] != want:
            return False
    return True


def enumerate_omega(pd: PolygonD) -> tuple[Segment, ...]:
    return pd.omega


def arc_length(pd: PolygonD, s: int, t: int) -> int:
    return pd.arc_length(s, t)


def pivots(pd: PolygonD, g: Segment) -> list[Segment]:
    return pd.pivots(g)


def rotate_rd(pd: PolygonD, g: Segment) -> Segment | None:
    return pd.rotate(g)


def f_map(pd: PolygonD, g: Segment, variant: int = 1) -> tuple[int, int]:
    return pd.f_map(g, variant)


def F_D(pd: PolygonD, g: Segment) -> Index:
    return pd.functor(g)


def F_D_inverse(pd: PolygonD, x: Index) -> Segment:
    return pd.segment_of(x)


def dim_formula(pd: PolygonD, g: Segment) -> tuple[int, ...]:
    return pd.dim_formula(g)


def polygon_svg(
    pd: PolygonD,
    segments: list[Segment] = (),
    size: int = 600,
    radius: float = 260.0,
    tick: float = 14.0,
    segment_color: str = "#c0392b",
    outline_color: str = "#222222",
) -> str:
    """SVG drawing of the punctured polygon with optional segments; notched diameters get a tick."""
    c = size / 2

    def px(h: int) -> tuple[float, float]:
        x, y = pd.point(h)
        return (c + radius * x, c - radius * y)

    order = pd.ccw_order
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(px, order))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<polygon points="{pts}" fill="none" stroke="{outline_color}" stroke-width="2"/>',
        f'<circle cx="{c:.2f}" cy="{c:.2f}" r="4" fill="{outline_color}"/>',
    ]
    for h in order:
        x, y = px(h)
        dx, dy = x - c, y - c
        norm = math.hypot(dx, dy) or 1.0
        lx, ly = x + 18 * dx / norm, y + 18 * dy / norm
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{outline_color}"/>')
        out.append(
            f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="14" text-anchor="middle" '
            f'dominant-baseline="middle">Y{h}</text>'
        )
    for g in segments:
        g = pd.validate(g)
        reps = [(g.s, g.t)] if g.is_diameter else [(g.s, g.t), (-g.t, -g.s)]
        for a, b in reps:
            (x1, y1), (x2, y2) = px(a), px(b)
            out.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                f'stroke="{segment_color}" stroke-width="2"/>'
            )
        if g.tag == NOTCHED:
            (x1, y1), (x2, y2) = px(g.s), px(g.t)
            # tick across the diameter, a quarter of the way from the centre to Y_t
            mx, my = c + (x2 - c) / 4, c + (y2 - c) / 4
            dx, dy = x2 - x1, y2 - y1
            norm = math.hypot(dx, dy) or 1.0
            nx_, ny_ = -dy / norm * tick / 2, dx / norm * tick / 2
            out.append(
                f'<line x1="{mx - nx_:.2f}" y1="{my - ny_:.2f}" x2="{mx + nx_:.2f}" y2="{my + ny_:.2f}" '
                f'stroke="{segment_color}" stroke-width="3"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
