"""Type-D quivers with directional symmetry and the quivers derived from them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Union


class QuiverError(ValueError):
    """Raised for malformed orientations, sizes or lookups."""


class Kind(str, Enum):
    A = "A"
    D = "D"
    DBAR = "Dbar"
    DPRIME = "Dprime"
    B = "B"


@dataclass(frozen=True, order=True)
class Arrow:
    src: int
    tgt: int
    name: str


@dataclass(frozen=True)
class Orientation:
    """Directions of beta_1..beta_{n-2}; '>' points from i to i+1 (toward n-1 and n at the branch)."""

    n: int
    dirs: str

    def __post_init__(self) -> None:
        if self.n < 4:
            raise QuiverError(f"type D needs n >= 4, got n={self.n}")
        if len(self.dirs) != self.n - 2:
            raise QuiverError(f"orientation must have length n-2={self.n - 2}, got {self.dirs!r}")
        if set(self.dirs) - {">", "<"}:
            raise QuiverError(f"orientation may only contain '>' and '<', got {self.dirs!r}")

    def forward(self, i: int) -> bool:
        """Direction of beta_i for 1 <= i <= n-1; beta_{n-1} copies beta_{n-2}."""
        if not 1 <= i <= self.n - 1:
            raise QuiverError(f"no arrow beta_{i} for n={self.n}")
        return self.dirs[min(i, self.n - 2) - 1] == ">"


# The running n=5 example: 1->2, 3->2, 3->4, 3->5.
REFERENCE_DIRS = {4: "<>", 5: "><>", 6: "><>>", 7: "><>>>", 8: "><>>>>"}


def all_orientations(n: int) -> list[str]:
    out = [""]
    for _ in range(n - 2):
        out = [s + c for s in out for c in "><"]
    return sorted(out)


@dataclass(frozen=True)
class Quiver:
    kind: Kind
    n: int
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    meta: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise QuiverError("repeated vertex")
        edges = set()
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise QuiverError(f"arrow {a.name} leaves the vertex set")
            if a.src == a.tgt:
                raise QuiverError(f"loop at {a.src}")
            e = frozenset((a.src, a.tgt))
            if e in edges:
                raise QuiverError(f"multiple edge {sorted(e)}")
            edges.add(e)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverError(f"no arrow named {name!r}")

    def successors(self, v: int) -> list[int]:
        return [a.tgt for a in self.arrows if a.src == v]

    def predecessors(self, v: int) -> list[int]:
        return [a.src for a in self.arrows if a.tgt == v]

    def neighbours(self, v: int) -> list[int]:
        return self.successors(v) + self.predecessors(v)

    def sinks(self) -> list[int]:
        return [v for v in self.vertices if not self.successors(v)]

    def sources(self) -> list[int]:
        return [v for v in self.vertices if not self.predecessors(v)]

    def opposite(self) -> Quiver:
        arrows = tuple(Arrow(a.tgt, a.src, a.name) for a in self.arrows)
        return Quiver(self.kind, self.n, self.vertices, arrows, self.meta)

    def reflect(self, v: int) -> Quiver:
        """Reverse every arrow incident to v."""
        arrows = tuple(Arrow(a.tgt, a.src, a.name) if v in (a.src, a.tgt) else a for a in self.arrows)
        return Quiver(self.kind, self.n, self.vertices, arrows, self.meta)

    def paths_count(self, start: int, end: int) -> int:
        """Number of paths start ~> end (0 or 1 on a tree)."""
        count = {v: 0 for v in self.vertices}
        count[start] = 1
        for v in self.topological_order():
            for w in self.successors(v):
                count[w] += count[v]
        return count[end]

    def topological_order(self) -> list[int]:
        indeg = {v: len(self.predecessors(v)) for v in self.vertices}
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order: list[int] = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in self.successors(v):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
                    ready.sort()
        if len(order) != len(self.vertices):
            raise QuiverError("quiver has an oriented cycle")
        return order

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "vertices": list(self.vertices),
            "arrows": [{"src": a.src, "tgt": a.tgt, "name": a.name} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data: dict) -> Quiver:
        arrows = tuple(Arrow(a["src"], a["tgt"], a["name"]) for a in data["arrows"])
        return cls(Kind(data["kind"]), data["n"], tuple(data["vertices"]), arrows)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_dot(self) -> str:
        lines = [f'digraph Q{self.kind.value}{self.n} {{']
        lines += [f"  {v};" for v in self.vertices]
        lines += [f'  {a.src} -> {a.tgt} [label="{a.name}"];' for a in self.arrows]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _oriented(i: int, j: int, forward: bool, name: str) -> Arrow:
    return Arrow(i, j, name) if forward else Arrow(j, i, name)


def build_quiver_d(orient: Orientation) -> Quiver:
    n = orient.n
    arrows = [_oriented(i, i + 1, orient.forward(i), f"b{i}") for i in range(1, n - 2)]
    arrows.append(_oriented(n - 2, n - 1, orient.forward(n - 2), f"b{n - 2}"))
    arrows.append(_oriented(n - 2, n, orient.forward(n - 1), f"b{n - 1}"))
    return Quiver(Kind.D, n, tuple(range(1, n + 1)), tuple(arrows))


def quiver_d(n: int, dirs: str) -> Quiver:
    return build_quiver_d(Orientation(n, dirs))


def orientation_of(qd: Quiver) -> Orientation:
    if qd.kind is not Kind.D:
        raise QuiverError("expected a type D quiver")
    dirs = "".join(">" if qd.arrow(f"b{i}").src == i else "<" for i in range(1, qd.n - 1))
    return Orientation(qd.n, dirs)


def fold_source_quiver_a(qd: Quiver) -> Quiver:
    """The directionally symmetric A_{2n-3} quiver whose skew group algebra gives qd."""
    orient = orientation_of(qd)
    n = qd.n
    m = 2 * n - 3
    arrows = []
    for i in range(1, m):
        if i <= n - 2:
            fwd = orient.forward(i)
        else:
            fwd = not orient.forward(m - i)
        arrows.append(_oriented(i, i + 1, fwd, f"a{i}"))
    return Quiver(Kind.A, n, tuple(range(1, m + 1)), tuple(arrows))


def quiver_a(n: int, dirs: str) -> Quiver:
    return fold_source_quiver_a(quiver_d(n, dirs))


VertexOrArrow = Union[int, str]


def symmetry_g(qa: Quiver, x: VertexOrArrow) -> VertexOrArrow:
    """Order-two symmetry on Q_A: vertex i -> 2n-2-i, arrow a_i -> a_{2n-3-i}."""
    if qa.kind is not Kind.A:
        raise QuiverError("symmetry_g acts on type A quivers")
    n = qa.n
    if isinstance(x, str):
        qa.arrow(x)
        return f"a{2 * n - 3 - int(x[1:])}"
    if x not in qa.vertices:
        raise QuiverError(f"vertex {x} not in quiver")
    return 2 * n - 2 - x


def dbar_label(i: int, half: bool = False) -> int:
    """Internal label of vertex i, or of (2i+1)/2 when half is set."""
    return 2 * i + 1 if half else 2 * i


def dbar_display(label: int) -> str:
    return str(label // 2) if label % 2 == 0 else f"{label}/2"


def subdivide_to_dbar(qd: Quiver) -> Quiver:
    """Subdivide each non-branch arrow and merge the branch pair through a new vertex."""
    orient = orientation_of(qd)
    n = qd.n
    arrows: list[Arrow] = []
    for i in range(1, n - 2):
        mid = dbar_label(i, half=True)
        if orient.forward(i):
            arrows.append(Arrow(dbar_label(i), mid, f"b({i})"))
            arrows.append(Arrow(mid, dbar_label(i + 1), f"b({2 * i + 1}/2)"))
        else:
            arrows.append(Arrow(mid, dbar_label(i), f"b({i})"))
            arrows.append(Arrow(dbar_label(i + 1), mid, f"b({2 * i + 1}/2)"))
    hub = dbar_label(n - 2, half=True)
    legs = [(dbar_label(n - 1), f"b({2 * n - 3}/2)"), (dbar_label(n), f"b({2 * n - 1}/2)")]
    if orient.forward(n - 2):
        arrows.append(Arrow(dbar_label(n - 2), hub, f"b({n - 2})"))
        arrows += [Arrow(hub, leg, name) for leg, name in legs]
    else:
        arrows.append(Arrow(hub, dbar_label(n - 2), f"b({n - 2})"))
        arrows += [Arrow(leg, hub, name) for leg, name in legs]
    vertices = sorted({a.src for a in arrows} | {a.tgt for a in arrows})
    return Quiver(Kind.DBAR, n, tuple(vertices), tuple(arrows))


def derive_qdprime_and_qb(qd: Quiver) -> tuple[Quiver, Quiver]:
    orient = orientation_of(qd)
    n = qd.n
    prime = Quiver(
        Kind.DPRIME,
        n,
        tuple(range(2, n + 1)),
        tuple(a for a in qd.arrows if a.name != "b1"),
    )
    b_arrows = tuple(_oriented(i, i + 1, orient.forward(i), f"b{i}") for i in range(2, n - 1))
    first = f"{n - 2}-{n - 1}"
    qb = Quiver(Kind.B, n, tuple(range(2, n)), b_arrows, meta=(("weight4_edge", first),))
    return prime, qb
