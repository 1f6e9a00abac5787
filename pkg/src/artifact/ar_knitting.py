"""Auslander-Reiten quivers of Dynkin quivers by knitting from projectives.

``knit`` works with ordinary representations of the quiver it is given
(a map V_s -> V_t for every arrow s -> t), so the projective at a sink is
simple.  The type-D model composes paths left to right, which makes its
modules the representations of the opposite quiver; ``module_ar`` applies
that switch once so every downstream index (i, k) = tau^{-k} P_i follows the
model's own labelling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .quiver_core import Kind, Quiver, QuiverError

Index = tuple[int, int]


class KnitError(RuntimeError):
    """Knitting produced something impossible for a Dynkin quiver."""


@dataclass(frozen=True)
class ARQuiver:
    quiver: Quiver
    dims: dict[Index, tuple[int, ...]]
    arrows: tuple[tuple[Index, Index], ...]

    @property
    def nodes(self) -> list[Index]:
        return sorted(self.dims, key=lambda x: (x[1], x[0]))

    def dim_vector(self, x: Index) -> dict[int, int]:
        if x not in self.dims:
            raise KeyError(f"no indecomposable {x}")
        return dict(zip(self.quiver.vertices, self.dims[x]))

    def tau(self, x: Index) -> Index | None:
        i, k = x
        return (i, k - 1) if k > 0 else None

    def tau_inv(self, x: Index) -> Index | None:
        y = (x[0], x[1] + 1)
        return y if y in self.dims else None

    def orbit_length(self, i: int) -> int:
        return sum(1 for (j, _) in self.dims if j == i)

    def is_projective(self, x: Index) -> bool:
        return x[1] == 0

    def is_injective(self, x: Index) -> bool:
        return self.tau_inv(x) is None

    def by_dim(self, dim: tuple[int, ...]) -> Index:
        for x, d in self.dims.items():
            if d == dim:
                return x
        raise KeyError(f"no indecomposable with dimension vector {dim}")

    def simple(self, v: int) -> Index:
        pos = self.quiver.vertices.index(v)
        return self.by_dim(tuple(int(j == pos) for j in range(len(self.quiver.vertices))))

    def out_arrows(self, x: Index) -> list[Index]:
        return [b for a, b in self.arrows if a == x]

    def in_arrows(self, x: Index) -> list[Index]:
        return [a for a, b in self.arrows if b == x]

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "nodes": [{"i": i, "k": k, "dim": list(self.dims[(i, k)])} for i, k in self.nodes],
            "arrows": [[list(a), list(b)] for a, b in self.arrows],
        }

    def to_dot(self) -> str:
        lines = ["digraph AR {", "  rankdir=LR;"]
        for i, k in self.nodes:
            dim = "".join(str(d) for d in self.dims[(i, k)])
            lines.append(f'  P{i}k{k} [label="T^-{k} P_{i}", tooltip="{dim}"];')
        for (i, k), (j, l) in self.arrows:
            lines.append(f"  P{i}k{k} -> P{j}k{l};")
        for i, k in self.nodes:
            if k > 0:
                lines.append(f"  P{i}k{k} -> P{i}k{k - 1} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def projective_dim(q: Quiver, i: int) -> tuple[int, ...]:
    return tuple(q.paths_count(i, v) for v in q.vertices)


def injective_dim(q: Quiver, i: int) -> tuple[int, ...]:
    return tuple(q.paths_count(v, i) for v in q.vertices)


def euler_form(q: Quiver, a: tuple[int, ...], b: tuple[int, ...]) -> int:
    pos = {v: p for p, v in enumerate(q.vertices)}
    val = sum(x * y for x, y in zip(a, b))
    return val - sum(a[pos[ar.src]] * b[pos[ar.tgt]] for ar in q.arrows)


def _sinks_first(q: Quiver) -> list[int]:
    # j must come after every l with j -> l
    return list(reversed(q.topological_order()))


def knit(q: Quiver) -> ARQuiver:
    """Preprojective component (the whole AR quiver for Dynkin q) via the mesh rule."""
    verts = q.vertices
    inj = {injective_dim(q, i) for i in verts}
    dims: dict[Index, tuple[int, ...]] = {(i, 0): projective_dim(q, i) for i in verts}
    order = _sinks_first(q)
    k = 0
    while True:
        level: dict[int, tuple[int, ...]] = {}
        for j in order:
            if (j, k) not in dims or dims[(j, k)] in inj:
                continue
            total = [0] * len(verts)
            for i in q.predecessors(j):
                for p, x in enumerate(dims.get((i, k), ())):
                    total[p] += x
            for l in q.successors(j):
                for p, x in enumerate(level.get(l, ())):
                    total[p] += x
            new = tuple(t - d for t, d in zip(total, dims[(j, k)]))
            if any(x < 0 for x in new):
                raise KnitError(f"negative dimension at tau^-{k + 1} P_{j}")
            if not any(new):
                raise KnitError(f"zero module at tau^-{k + 1} P_{j} before reaching an injective")
            level[j] = new
        if not level:
            break
        k += 1
        for j, d in level.items():
            dims[(j, k)] = d
        if k > 4 * len(verts):
            raise KnitError("knitting did not terminate")
    arrows = []
    for a in q.arrows:
        i, j = a.src, a.tgt
        for kk in range(k + 1):
            if (j, kk) in dims and (i, kk) in dims:
                arrows.append(((j, kk), (i, kk)))
            if (i, kk) in dims and (j, kk + 1) in dims:
                arrows.append(((i, kk), (j, kk + 1)))
    arrows.sort(key=lambda e: (e[0][1], e[0][0], e[1][1], e[1][0]))
    ar = ARQuiver(q, dims, tuple(arrows))
    _check(ar, inj)
    return ar


def _check(ar: ARQuiver, inj: set[tuple[int, ...]]) -> None:
    q = ar.quiver
    ends = {ar.dims[(i, max(k for (j, k) in ar.dims if j == i))] for i in q.vertices}
    if ends != inj:
        raise KnitError("tau-orbits do not end at the injectives")
    for x, d in ar.dims.items():
        if euler_form(q, d, d) != 1:
            raise KnitError(f"{x} has a non-root dimension vector {d}")
    seen = set(ar.dims.values())
    if len(seen) != len(ar.dims):
        raise KnitError("two nodes share a dimension vector")
    if q.kind in (Kind.A, Kind.D):
        for i in q.vertices:
            if ar.orbit_length(i) != q.n - 1:
                raise KnitError(f"orbit of P_{i} has length {ar.orbit_length(i)}, expected {q.n - 1}")


@lru_cache(maxsize=None)
def module_ar(q: Quiver) -> ARQuiver:
    """AR quiver of kQ-modules with paths composed left to right (= rep of the opposite quiver)."""
    return knit(q.opposite())


def positive_root_count(kind: Kind, rank: int) -> int:
    if kind is Kind.A:
        return rank * (rank + 1) // 2
    return rank * (rank - 1)


def interval_module_typeA(ar: ARQuiver, a: int, b: int) -> Index:
    """The indecomposable supported exactly on vertices a..b of a type A quiver."""
    m = len(ar.quiver.vertices)
    if not 1 <= a <= b <= m:
        raise QuiverError(f"bad interval [{a},{b}]")
    dim = tuple(int(a <= v <= b) for v in ar.quiver.vertices)
    try:
        return ar.by_dim(dim)
    except KeyError as exc:
        raise KnitError(str(exc)) from exc


def fg_on_index(x: Index, n: int) -> Index:
    i, k = x
    return (2 * n - 2 - i, k)


def fold_psi(x: Index, n: int) -> list[Index]:
    i, k = x
    if i == n - 1:
        return [(n - 1, k), (n, k)]
    if i > n - 1:
        i = 2 * n - 2 - i
    return [(i, k)]


def psi_parity(x: Index, n: int, variant: int) -> Index:
    i, k = x
    if i > n - 1:
        raise QuiverError(f"psi is only defined for i <= n-1, got i={i}")
    if variant not in (1, 2):
        raise QuiverError("variant must be 1 or 2")
    if i <= n - 2:
        return (i, k)
    even = k % 2 == 0
    if variant == 2:
        even = not even
    return (n - 1, k) if even else (n, k)


def _grid_positions(ar: ARQuiver) -> dict[Index, tuple[int, int]]:
    """Place a type A AR quiver on a grid: arrows raising the vertex label add (1, 0), lowering adds (0, 1)."""
    start = ar.nodes[0]
    pos = {start: (0, 0)}
    stack = [start]
    while stack:
        x = stack.pop()
        ux, wx = pos[x]
        for y in ar.out_arrows(x):
            step = (1, 0) if y[0] > x[0] else (0, 1)
            if y not in pos:
                pos[y] = (ux + step[0], wx + step[1])
                stack.append(y)
        for y in ar.in_arrows(x):
            step = (1, 0) if x[0] > y[0] else (0, 1)
            if y not in pos:
                pos[y] = (ux - step[0], wx - step[1])
                stack.append(y)
    return pos


def sectional_paths(ar: ARQuiver, m: Index) -> tuple[list[Index], list[Index]]:
    """The two maximal sectional paths leaving m (label-raising ray, label-lowering ray)."""
    pos = _grid_positions(ar)
    at = {p: x for x, p in pos.items()}
    rays: list[list[Index]] = []
    for step in ((1, 0), (0, 1)):
        ray = [m]
        u, w = pos[m]
        while (u + step[0], w + step[1]) in at:
            u, w = u + step[0], w + step[1]
            ray.append(at[(u, w)])
        rays.append(ray)
    return rays[0], rays[1]


def slanted_rectangle(ar: ARQuiver, m: Index) -> set[Index]:
    pos = _grid_positions(ar)
    at = {p: x for x, p in pos.items()}
    up, down = sectional_paths(ar, m)
    u, w = pos[m]
    rect = set()
    for r in range(len(up)):
        for s in range(len(down)):
            y = at.get((u + r, w + s))
            if y is not None:
                rect.add(y)
    return rect


def hom_dim_rectangle_typeA(ar: ARQuiver, m: Index, target: Index) -> int:
    """1 iff target lies in the maximal slanted rectangle spanned forward from m."""
    if ar.quiver.kind is not Kind.A:
        raise QuiverError("rectangle Hom rule is for type A")
    return int(target in slanted_rectangle(ar, m))
