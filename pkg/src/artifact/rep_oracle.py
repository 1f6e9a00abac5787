"""Explicit representations of Dynkin quivers and exact Hom/Ext dimensions.

Representations here are ordinary ones: an arrow s -> t carries a matrix of
shape dim_t x dim_s.  Root representations are built with reflection
functors, so nothing in this module knows about the polygon model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .ar_knitting import euler_form
from .quiver_core import Quiver


class NotARootError(ValueError):
    pass


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class MatrixRep:
    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...]

    def dim_at(self, v: int) -> int:
        return self.dims[self.quiver.vertices.index(v)]

    def matrix(self, name: str) -> tuple[tuple[int, ...], ...]:
        return dict(self.maps)[name]

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "dims": list(self.dims),
            "maps": {name: [list(r) for r in m] for name, m in self.maps},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _check_shapes(rep: MatrixRep) -> None:
    for a in rep.quiver.arrows:
        m = rep.matrix(a.name)
        rows, cols = rep.dim_at(a.tgt), rep.dim_at(a.src)
        if len(m) != rows or any(len(r) != cols for r in m):
            raise OracleError(f"map {a.name} has the wrong shape")


def _reflect_dim(q: Quiver, d: dict[int, int], i: int) -> dict[int, int]:
    out = dict(d)
    out[i] = sum(d[j] for j in q.neighbours(i)) - d[i]
    return out


def _reflection_sequence(q: Quiver, d: dict[int, int]) -> tuple[int, list[tuple[int, Quiver]]]:
    """Reflect at sinks (smallest unused label first within each round) until d is simple."""
    steps: list[tuple[int, Quiver]] = []
    cur = q
    done: set[int] = set()
    for _ in range(4 * len(q.vertices) ** 2 + 8):
        if len(done) == len(q.vertices):
            done = set()
        i = min(v for v in cur.sinks() if v not in done)
        if d[i] == sum(d.values()) == 1:
            return i, steps
        nd = _reflect_dim(cur, d, i)
        if nd[i] < 0:
            raise NotARootError(f"{d} is not a positive root")
        steps.append((i, cur))
        cur = cur.reflect(i)
        d = nd
        done.add(i)
    raise NotARootError("reflection sequence did not reach a simple root")


def _source_reflection(cur: Quiver, dims: dict[int, int], maps: dict[str, list[list[Fraction]]], i: int) -> tuple[dict[int, int], dict[str, list[list[Fraction]]]]:
    """Inverse reflection at the source i: replace W_i by the cokernel of W_i -> sum W_j."""
    out_arrows = [a for a in cur.arrows if a.src == i]
    total = sum(dims[a.tgt] for a in out_arrows)
    stacked: list[list[Fraction]] = []
    for a in out_arrows:
        stacked.extend(maps[a.name])
    coker = linalg.left_nullspace(stacked, total, dims[i]) if dims[i] else linalg.identity(total)
    new_maps = dict(maps)
    offset = 0
    for a in out_arrows:
        w = dims[a.tgt]
        new_maps[a.name] = [row[offset:offset + w] for row in coker]
        offset += w
    new_dims = dict(dims)
    new_dims[i] = len(coker)
    return new_dims, new_maps


@lru_cache(maxsize=None)
def realize(q: Quiver, d: tuple[int, ...]) -> MatrixRep:
    """An indecomposable representation of q with dimension vector d (a positive root)."""
    if len(d) != len(q.vertices) or any(x < 0 for x in d) or not any(d):
        raise NotARootError(f"{d} is not a positive dimension vector for {len(q.vertices)} vertices")
    if euler_form(q, d, d) != 1:
        raise NotARootError(f"{d} is not a root")
    dv = dict(zip(q.vertices, d))
    base, steps = _reflection_sequence(q, dv)
    cur = steps[-1][1].reflect(steps[-1][0]) if steps else q
    dims = {v: int(v == base) for v in q.vertices}
    maps = {a.name: [[] for _ in range(dims[a.tgt])] for a in cur.arrows}
    for i, prev in reversed(steps):
        dims, maps = _source_reflection(cur, dims, maps, i)
        cur = prev
    if tuple(dims[v] for v in q.vertices) != tuple(d):
        raise OracleError(f"reflection functors produced {dims}, expected {d}")
    # A tree quiver lets each arrow be rescaled independently up to isomorphism.
    int_maps = []
    for a in q.arrows:
        rows = maps[a.name]
        flat = [x for r in rows for x in r]
        scaled = linalg.integer_row(flat) if flat else []
        cols = dims[a.src]
        int_maps.append((a.name, tuple(tuple(scaled[r * cols:(r + 1) * cols]) for r in range(dims[a.tgt]))))
    rep = MatrixRep(q, tuple(d), tuple(int_maps))
    _check_shapes(rep)
    return rep


def simple_rep(q: Quiver, v: int) -> MatrixRep:
    return realize(q, tuple(int(w == v) for w in q.vertices))


def _hom_system(m: MatrixRep, n_: MatrixRep) -> tuple[list[list[int]], int]:
    q = m.quiver
    var: dict[int, int] = {}
    count = 0
    for v in q.vertices:
        var[v] = count
        count += m.dim_at(v) * n_.dim_at(v)
    rows: list[list[int]] = []
    for a in q.arrows:
        s, t = a.src, a.tgt
        ms, mt, ns, nt = m.dim_at(s), m.dim_at(t), n_.dim_at(s), n_.dim_at(t)
        if ms == 0 or nt == 0:
            continue
        ma, na = m.matrix(a.name), n_.matrix(a.name)
        # (N_a f_s - f_t M_a)[p][c] = 0, f_v stored row-major as n_v x m_v
        for p in range(nt):
            for c in range(ms):
                row = [0] * count
                for r in range(ns):
                    if na[p][r]:
                        row[var[s] + r * ms + c] += na[p][r]
                for r in range(mt):
                    if ma[r][c]:
                        row[var[t] + p * mt + r] -= ma[r][c]
                if any(row):
                    rows.append(row)
    return rows, count


def hom_dim(m: MatrixRep, n_: MatrixRep) -> int:
    if m.quiver != n_.quiver:
        raise ValueError("representations live on different quivers")
    rows, count = _hom_system(m, n_)
    return count - linalg.rank_bareiss(rows, count)


def ext1_dim(m: MatrixRep, n_: MatrixRep) -> int:
    """dim Ext^1(m, n_) = dim Hom(m, n_) - <dim m, dim n_> for a hereditary path algebra."""
    val = hom_dim(m, n_) - euler_form(m.quiver, m.dims, n_.dims)
    if val < 0:
        raise OracleError(f"negative Ext dimension between {m.dims} and {n_.dims}")
    return val


def direct_sum(reps: list[MatrixRep]) -> MatrixRep:
    q = reps[0].quiver
    dims = tuple(sum(r.dims[p] for r in reps) for p in range(len(q.vertices)))
    maps = []
    for a in q.arrows:
        rows_total = sum(r.dim_at(a.tgt) for r in reps)
        cols_total = sum(r.dim_at(a.src) for r in reps)
        block = [[0] * cols_total for _ in range(rows_total)]
        ro = co = 0
        for r in reps:
            mat = r.matrix(a.name)
            for i, row in enumerate(mat):
                for j, x in enumerate(row):
                    block[ro + i][co + j] = x
            ro += r.dim_at(a.tgt)
            co += r.dim_at(a.src)
        maps.append((a.name, tuple(tuple(r) for r in block)))
    return MatrixRep(q, dims, tuple(maps))


def _cocycle_space(x: MatrixRep, y: MatrixRep) -> tuple[list[tuple[str, int, int]], list[list[int]]]:
    """Coordinates of sum_a Hom(x_s, y_t) and the columns of the coboundary map into it."""
    q = x.quiver
    coords: list[tuple[str, int, int]] = []
    for a in q.arrows:
        for p in range(y.dim_at(a.tgt)):
            for c in range(x.dim_at(a.src)):
                coords.append((a.name, p, c))
    image_cols: list[list[int]] = []
    for v in q.vertices:
        for r in range(y.dim_at(v)):
            for c in range(x.dim_at(v)):
                col = []
                for name, p, cc in coords:
                    a = q.arrow(name)
                    val = 0
                    if a.src == v and cc == c:
                        val += y.matrix(name)[p][r]
                    if a.tgt == v and p == r:
                        val -= x.matrix(name)[c][cc]
                    col.append(val)
                image_cols.append(col)
    return coords, image_cols


def extension_basis(x: MatrixRep, y: MatrixRep) -> list[list[int]]:
    """Cocycles (unit vectors) whose classes form a basis of Ext^1(x, y)."""
    coords, image_cols = _cocycle_space(x, y)
    if not coords:
        return []
    rank = linalg.rank_bareiss(image_cols, len(coords))
    basis: list[list[int]] = []
    for idx in range(len(coords)):
        unit = [0] * len(coords)
        unit[idx] = 1
        if linalg.rank_bareiss(image_cols + basis + [unit], len(coords)) > rank + len(basis):
            basis.append(unit)
    return basis


def extension_from_cocycle(x: MatrixRep, y: MatrixRep, cocycle: list[int]) -> MatrixRep:
    """Middle term E of the extension 0 -> y -> E -> x -> 0 with arrow maps [[y_a, c_a], [0, x_a]]."""
    q = x.quiver
    coords, _ = _cocycle_space(x, y)
    if len(cocycle) != len(coords):
        raise OracleError("cocycle has the wrong length")
    extra = {(name, p, c): val for (name, p, c), val in zip(coords, cocycle) if val}
    maps = []
    for a in q.arrows:
        ys, yt, xs, xt = y.dim_at(a.src), y.dim_at(a.tgt), x.dim_at(a.src), x.dim_at(a.tgt)
        block = [[0] * (ys + xs) for _ in range(yt + xt)]
        ya, xa = y.matrix(a.name), x.matrix(a.name)
        for i in range(yt):
            for j in range(ys):
                block[i][j] = ya[i][j]
        for i in range(xt):
            for j in range(xs):
                block[yt + i][ys + j] = xa[i][j]
        for (name, p, c), val in extra.items():
            if name == a.name:
                block[p][ys + c] = val
        maps.append((a.name, tuple(tuple(r) for r in block)))
    dims = tuple(a + b for a, b in zip(y.dims, x.dims))
    return MatrixRep(q, dims, tuple(maps))


def nonsplit_extension(x: MatrixRep, y: MatrixRep) -> MatrixRep | None:
    """Middle term of some non-split 0 -> y -> E -> x -> 0, or None when Ext^1(x, y) = 0."""
    basis = extension_basis(x, y)
    if not basis:
        return None
    return extension_from_cocycle(x, y, basis[0])
