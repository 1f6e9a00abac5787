"""One-shot verification suite: every check compares the geometric model with an independent computation."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import comb
from typing import Callable

from .ar_knitting import fg_on_index, module_ar
from .cambrian import (
    cluster_of,
    expected_max_mapr,
    expected_min_mapr,
    is_order_isomorphic_via_functor,
    mapr_poset,
    root_label,
    triangulation_poset,
    type_b_expected_size,
    type_b_subposet,
)
from .ext_crossing import crossing_number, middle_term
from .geometry_model import PolygonD, Segment, build_translation_quiver, check_translation_iso, polygon_d
from .maprigid import (
    TaggedTriangulation,
    catalan_type_d,
    enumerate_maprs,
    enumerate_triangulations,
    is_tilting_image,
    orbit_of_first_projective,
    triangulation_to_mapr,
)
from .quiver_core import REFERENCE_DIRS, all_orientations, quiver_a
from .rep_oracle import ext1_dim, hom_dim, nonsplit_extension, realize

SEED = 20240521


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def reference_dirs(n: int) -> str:
    if n in REFERENCE_DIRS:
        return REFERENCE_DIRS[n]
    return "><" + ">" * (n - 4)


def sample_orientations(n: int, extra: int, seed: int = SEED) -> list[str]:
    """The reference orientation plus `extra` distinct others drawn with a fixed seed."""
    rng = random.Random(seed * 100 + n)
    base = reference_dirs(n)
    others = [d for d in all_orientations(n) if d != base]
    return [base] + rng.sample(others, min(extra, len(others)))


def _oracle_reps(pd: PolygonD) -> dict:
    ar = pd.ar_d
    return {x: realize(ar.quiver, ar.dims[x]) for x in ar.dims}


def check_ext(nmax: int = 7) -> tuple[bool, str]:
    pairs = mismatches = 0
    for n in range(4, min(nmax, 7) + 1):
        dirs_list = all_orientations(n) if n <= 5 else sample_orientations(n, 3)
        for dirs in dirs_list:
            pd = polygon_d(n, dirs)
            reps = _oracle_reps(pd)
            for g1 in pd.omega:
                m = reps[pd.functor(g1)]
                for g2 in pd.omega:
                    pairs += 1
                    if crossing_number(pd, g1, g2) != ext1_dim(m, reps[pd.functor(g2)]):
                        mismatches += 1
    return mismatches == 0, f"{pairs} ordered pairs, {mismatches} mismatches"


def check_catalan(nmax: int = 8) -> tuple[bool, str]:
    parts, ok = [], True
    for n in range(4, min(nmax, 8) + 1):
        pd = polygon_d(n, reference_dirs(n))
        expected = (3 * n - 5) * comb(2 * n - 4, n - 2) // (n - 1)
        tri = len(enumerate_triangulations(pd))
        mapr = len(enumerate_maprs(pd))
        ok &= tri == mapr == expected == catalan_type_d(n)
        parts.append(f"n={n}:{tri}/{mapr}/{expected}")
    return ok, " ".join(parts)


def check_summands(nmax: int = 7) -> tuple[bool, str]:
    total = bad = 0
    for n in range(4, min(nmax, 7) + 1):
        pd = polygon_d(n, reference_dirs(n))
        orbit = orbit_of_first_projective(pd)
        for t in enumerate_maprs(pd):
            total += 1
            if len(t) != 2 * n - 2 or not orbit <= t:
                bad += 1
    return bad == 0, f"{total} MAPRs, {bad} violations"


def check_translation(nmax: int = 8) -> tuple[bool, str]:
    runs = bad = 0
    for n in range(4, min(nmax, 8) + 1):
        for dirs in sample_orientations(n, 3):
            pd = polygon_d(n, dirs)
            runs += 1
            if not check_translation_iso(build_translation_quiver(pd), pd.ar_d, pd.functor_table):
                bad += 1
    return bad == 0, f"{runs} polygons, {bad} failures"


def check_dims(nmax: int = 8) -> tuple[bool, str]:
    segs = bad = 0
    for n in range(4, min(nmax, 8) + 1):
        for dirs in sample_orientations(n, 3):
            pd = polygon_d(n, dirs)
            for g in pd.omega:
                segs += 1
                if pd.dim_formula(g) != pd.ar_d.dims[pd.functor(g)]:
                    bad += 1
    return bad == 0, f"{segs} segments, {bad} mismatches"


ROOT_LABELS = [
    ((1, 4, 0), {2: -1}),
    ((1, 2, 0), {3: -1}),
    ((-2, 2, 1), {4: -1}),
    ((-2, 2, -1), {5: -1}),
    ((2, 3, 0), {2: 1}),
    ((-2, 4, 0), {3: 1}),
    ((-1, 1, -1), {4: 1}),
    ((-1, 1, 1), {5: 1}),
    ((-2, 3, 0), {2: 1, 3: 1}),
    ((-4, 4, -1), {3: 1, 4: 1}),
    ((-4, 4, 1), {3: 1, 5: 1}),
    ((-3, 3, -1), {2: 1, 3: 1, 4: 1}),
    ((-3, 3, 1), {2: 1, 3: 1, 5: 1}),
    ((-1, 4, 0), {3: 1, 4: 1, 5: 1}),
    ((-1, 3, 0), {2: 1, 3: 1, 4: 1, 5: 1}),
    ((-3, 4, 0), {2: 1, 3: 2, 4: 1, 5: 1}),
]

TRIANGULATION_FIXTURES = [
    [(1, 4, 0), (1, 2, 0), (-2, 2, 1), (-2, 2, -1)],
    [(1, 4, 0), (1, 2, 0), (-2, 2, -1), (-1, 1, -1)],
    [(1, 4, 0), (1, 2, 0), (-2, 2, 1), (-1, 1, 1)],
    [(-1, 1, 1), (-2, 2, 1), (-3, 3, 1), (-4, 4, 1)],
]


def check_fixtures(nmax: int = 5) -> tuple[bool, str]:
    pd = polygon_d(5, REFERENCE_DIRS[5])
    S = lambda s, t, tag: pd.normalize(Segment(s, t, tag))
    failures = []
    if pd.arc_length(-2, 4) != 6:
        failures.append("arc length")
    pivot_facts = {
        (-2, -1, 0): {S(-2, 2, -1), S(-2, 2, 1), S(-4, -1, 0)},
        (-3, 2, 0): {S(-3, 4, 0), S(-1, 2, 0)},
        (-4, 4, -1): {S(-3, 4, 0)},
        (2, 3, 0): set(),
    }
    for key, want in pivot_facts.items():
        if set(pd.pivots(S(*key))) != want:
            failures.append(f"pivots{key}")
    tris = {t.interior for t in enumerate_triangulations(pd)}
    for k, fx in enumerate(TRIANGULATION_FIXTURES, 1):
        if frozenset(S(*g) for g in fx) not in tris:
            failures.append(f"triangulation {k}")
    for key, want in ROOT_LABELS:
        if root_label(pd, S(*key)).as_dict() != want:
            failures.append(f"root{key}")
    first = TaggedTriangulation(5, frozenset(S(*g) for g in TRIANGULATION_FIXTURES[0]))
    cluster = {str(r) for r in cluster_of(pd, first)}
    if cluster != {"-pi2", "-pi3", "-pi4", "-pi5"}:
        failures.append("cluster")
    return not failures, "all fixtures reproduced" if not failures else "failed: " + ", ".join(failures)


def check_lattice(nmax: int = 6) -> tuple[bool, str]:
    parts, ok = [], True
    for n in range(4, min(nmax, 6) + 1):
        pd = polygon_d(n, reference_dirs(n))
        tp, mp = triangulation_poset(pd), mapr_poset(pd)
        size = len(tp.elements)
        regular = all(tp.degree(i) == n - 1 for i in range(size))
        edges = len(tp.covers) == size * (n - 1) // 2 == len(mp.covers)
        lo, hi = mp.minimal(), mp.maximal()
        extremes = (
            len(lo) == len(hi) == 1
            and mp.elements[lo[0]] == expected_min_mapr(pd)
            and mp.elements[hi[0]] == expected_max_mapr(pd)
            and len(tp.minimal()) == len(tp.maximal()) == 1
        )
        lattices = tp.is_lattice() and mp.is_lattice()
        iso = is_order_isomorphic_via_functor(pd)
        good = regular and edges and extremes and lattices and iso
        ok &= good
        parts.append(f"n={n}:{size} elems/{len(tp.covers)} covers {'ok' if good else 'BAD'}")
    return ok, " ".join(parts)


def check_parity(nmax: int = 7) -> tuple[bool, str]:
    branch = sym = bad = 0
    for n in range(4, min(nmax, 7) + 1):
        dirs_list = all_orientations(n) if n <= 5 else [reference_dirs(n)]
        for dirs in dirs_list:
            pd = polygon_d(n, dirs)
            reps = _oracle_reps(pd)
            for i in (n - 1, n):
                for j in (n - 1, n):
                    for k in range(n - 1):
                        for l in range(k):
                            want = (k - l) % 2 if i == j else 1 - (k - l) % 2
                            x, y = (i, k), (j, l)
                            branch += 1
                            geo = crossing_number(pd, pd.segment_of(x), pd.segment_of(y))
                            if not want == geo == ext1_dim(reps[x], reps[y]):
                                bad += 1
    for n in range(4, min(nmax, 6) + 1):
        for dirs in all_orientations(n):
            ar = module_ar(quiver_a(n, dirs))
            reps = {x: realize(ar.quiver, ar.dims[x]) for x in ar.dims}
            for m in ar.nodes:
                gm = fg_on_index(m, n)
                if ext1_dim(reps[m], reps[gm]) or ext1_dim(reps[gm], reps[m]):
                    bad += 1
                for x in ar.nodes:
                    sym += 1
                    e = ext1_dim(reps[m], reps[x])
                    if e > 1 or e != ext1_dim(reps[gm], reps[fg_on_index(x, n)]):
                        bad += 1
    return bad == 0, f"{branch} branch-orbit pairs, {sym} type-A pairs, {bad} violations"


def _hom_signature(ar, reps, module) -> tuple[int, ...]:
    return tuple(hom_dim(reps[z], module) for z in ar.nodes)


def check_middle_terms(nmax: int = 6) -> tuple[bool, str]:
    pairs = bad = 0
    for n in range(5, min(nmax, 6) + 1):
        pd = polygon_d(n, reference_dirs(n))
        ar = pd.ar_d
        reps = _oracle_reps(pd)
        for g1 in pd.omega:
            for g2 in pd.omega:
                if crossing_number(pd, g1, g2) != 1:
                    continue
                pairs += 1
                x, y = pd.functor(g1), pd.functor(g2)
                mid = middle_term(pd, g1, g2)
                total = tuple(a + b for a, b in zip(ar.dims[x], ar.dims[y]))
                summed = tuple(sum(ar.dims[z][p] for z in mid) for p in range(n))
                ok = total == summed and ext1_dim(reps[x], reps[y]) == 1
                ok = ok and all(ext1_dim(reps[z], reps[z]) == 0 for z in mid)
                if ok:
                    e = nonsplit_extension(reps[x], reps[y])
                    want = _hom_signature(ar, reps, e)
                    got = tuple(sum(hom_dim(reps[w], reps[z]) for z in mid) for w in ar.nodes)
                    ok = want == got
                bad += not ok
    return bad == 0, f"{pairs} positively intersecting pairs, {bad} failures"


def check_tilting(nmax: int = 6) -> tuple[bool, str]:
    checked = bad = 0
    for n in range(4, min(nmax, 6) + 1):
        pd = polygon_d(n, reference_dirs(n))
        maprs = enumerate_maprs(pd)
        if n >= 6:
            maprs = random.Random(SEED + n).sample(maprs, 20)
        for t in maprs:
            checked += 1
            bad += not is_tilting_image(pd, t)
    return bad == 0, f"{checked} MAPRs, {bad} not tilting"


def check_type_b(nmax: int = 6) -> tuple[bool, str]:
    parts, ok = [], True
    for n in range(5, min(nmax, 6) + 1):
        pd = polygon_d(n, reference_dirs(n))
        poset = type_b_subposet(pd)
        size, want = len(poset.elements), type_b_expected_size(n)
        good = size == want and len(poset.minimal()) == len(poset.maximal()) == 1 and poset.is_lattice()
        ok &= good
        parts.append(f"n={n}: {size} elements (expected {want}) {'lattice' if good else 'BAD'}")
    return ok, "; ".join(parts)


SUITE: dict[str, tuple[str, Callable[[int], tuple[bool, str]]]] = {
    "ext": ("1 crossing number equals oracle Ext^1", check_ext),
    "catalan": ("2 generalized Catalan counts", check_catalan),
    "summands": ("3 summand structure of MAPRs", check_summands),
    "translation": ("4 translation quiver isomorphism", check_translation),
    "dims": ("5 dimension formulas", check_dims),
    "fixtures": ("6 worked-example fixtures", check_fixtures),
    "lattice": ("7 lattice structure and order isomorphism", check_lattice),
    "parity": ("8 branch parity tables and F_g symmetry", check_parity),
    "middle": ("9 middle terms of non-split sequences", check_middle_terms),
    "tilting": ("10 G_D images are tilting", check_tilting),
    "typeb": ("11 type-B subposet", check_type_b),
}


def run_check(key: str, nmax: int = 8) -> CheckResult:
    name, fn = SUITE[key]
    start = time.perf_counter()
    try:
        ok, detail = fn(nmax)
    except Exception as exc:  # a crash is a failed check, reported with its message
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, detail, time.perf_counter() - start)


def run_suite(suite: str = "all", nmax: int = 8) -> list[CheckResult]:
    keys = list(SUITE) if suite == "all" else [suite]
    return [run_check(k, nmax) for k in keys]
