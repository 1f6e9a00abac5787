"""Command-line interface: quivers, AR quivers, segments, Ext, MAPRs, lattices, figures and the verify suite."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable

from .ar_knitting import Index, module_ar
from .cambrian import (
    mapr_json,
    mapr_label,
    mapr_poset,
    root_label,
    triangulation_poset,
    type_b_subposet,
)
from .ext_crossing import crossing_number, middle_term_candidates
from .geometry_model import PolygonD, Segment, SegmentError, parse_segment, polygon_d, polygon_svg
from .maprigid import enumerate_maprs, enumerate_triangulations, is_almost_prerigid, is_mapr
from .quiver_core import Kind, Orientation, QuiverError, derive_qdprime_and_qb, quiver_a, quiver_d, subdivide_to_dbar
from .rep_oracle import ext1_dim, realize
from .verify import SUITE, run_suite

EXIT_USAGE = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


def _polygon(args: argparse.Namespace) -> PolygonD:
    try:
        Orientation(args.n, args.dirs)
    except QuiverError as exc:
        raise UsageError(str(exc)) from exc
    return polygon_d(args.n, args.dirs)


def _segment(pd: PolygonD, text: str) -> Segment:
    try:
        return pd.validate(parse_segment(text))
    except SegmentError as exc:
        raise UsageError(str(exc)) from exc


def _quiver(args: argparse.Namespace):
    _polygon(args)
    qd = quiver_d(args.n, args.dirs)
    kind = Kind(args.kind)
    if kind is Kind.D:
        return qd
    if kind is Kind.A:
        return quiver_a(args.n, args.dirs)
    if kind is Kind.DBAR:
        return subdivide_to_dbar(qd)
    prime, qb = derive_qdprime_and_qb(qd)
    return prime if kind is Kind.DPRIME else qb


def _parse_summands(text: str) -> frozenset[Index]:
    pairs = re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", text)
    if not pairs:
        raise UsageError(f"cannot parse summands {text!r}; write \"(i,k),(i,k),...\"")
    return frozenset((int(i), int(k)) for i, k in pairs)


def cmd_quiver(args: argparse.Namespace) -> str:
    q = _quiver(args)
    return q.to_dot() if args.format == "dot" else q.dumps() + "\n"


def cmd_arq(args: argparse.Namespace) -> str:
    q = _quiver(args)
    if q.kind is Kind.B:
        raise UsageError("the type-B quiver is a valued quiver; knitting is not provided for it")
    ar = module_ar(q)
    return ar.to_dot() if args.format == "dot" else ar.dumps() + "\n"


def cmd_omega(args: argparse.Namespace) -> str:
    pd = _polygon(args)
    if args.format == "json":
        return json.dumps([g.to_json() for g in pd.omega], sort_keys=True) + "\n"
    lines = []
    for g in pd.omega:
        i, k = pd.functor(g)
        kind = "boundary" if pd.is_boundary(g) else "interior"
        lines.append(f"{g.text():>8}  -> ({i},{k})  dim {''.join(map(str, pd.dim_formula(g)))}  {kind}")
    return "\n".join(lines) + "\n"


def cmd_dimvec(args: argparse.Namespace) -> str:
    pd = _polygon(args)
    g = _segment(pd, args.seg)
    x = pd.functor(g)
    out = {"segment": g.to_json(), "index": list(x), "dim": list(pd.dim_formula(g))}
    if args.dump_rep:
        out["rep"] = realize(pd.ar_d.quiver, pd.ar_d.dims[x]).to_json()
    return json.dumps(out, sort_keys=True) + "\n"


def cmd_ext(args: argparse.Namespace) -> str:
    pd = _polygon(args)
    g1, g2 = _segment(pd, args.seg1), _segment(pd, args.seg2)
    x, y = pd.functor(g1), pd.functor(g2)
    ar = pd.ar_d
    rx, ry = realize(ar.quiver, ar.dims[x]), realize(ar.quiver, ar.dims[y])
    geo = crossing_number(pd, g1, g2)
    oracle = ext1_dim(rx, ry)
    lines = [
        f"Int = {geo}",
        f"dim Ext^1 geometric = {geo}",
        f"dim Ext^1 oracle = {oracle}",
    ]
    for cand in middle_term_candidates(pd, g1, g2):
        summands = " + ".join(f"{g.text()} ({i},{k})" for g in cand for i, k in [pd.functor(g)])
        lines.append(f"middle term: {summands or '0'}")
    if args.dump_rep:
        lines.append(rx.dumps())
        lines.append(ry.dumps())
    if geo != oracle:
        raise RuntimeError(f"geometric Ext ({geo}) disagrees with the oracle ({oracle})")
    return "\n".join(lines) + "\n"


def cmd_mapr(args: argparse.Namespace) -> str:
    pd = _polygon(args)
    if args.action == "count":
        return f"{len(enumerate_maprs(pd))}\n"
    if args.action == "list":
        if args.json:
            data = [t.to_json() for t in enumerate_triangulations(pd)]
            return json.dumps(data, sort_keys=True) + "\n"
        return "".join(mapr_label(t) + "\n" for t in enumerate_maprs(pd))
    if not args.summands:
        raise UsageError("mapr check needs --summands")
    t = _parse_summands(args.summands)
    if any(x not in pd.ar_d.dims for x in t):
        raise UsageError("summand index out of range")
    return f"almost pre-rigid: {is_almost_prerigid(pd, t)}\nmaximal: {is_mapr(pd, t)}\n"


def cmd_hasse(args: argparse.Namespace) -> str:
    pd = _polygon(args)
    if args.typeb:
        poset, encode, label = type_b_subposet(pd), mapr_json, mapr_label
    elif args.triangulations:
        poset = triangulation_poset(pd)
        encode = lambda t: t.to_json()
        label = lambda t: " ".join(g.text() for g in t.sorted_interior())
    else:
        poset, encode, label = mapr_poset(pd), mapr_json, mapr_label
    return poset.to_dot(label) if args.format == "dot" else poset.dumps(encode) + "\n"


def cmd_polygon(args: argparse.Namespace) -> str:
    pd = _polygon(args)
    segs = [_segment(pd, s) for s in args.seg or []]
    return polygon_svg(pd, segs, size=args.size, radius=args.radius, tick=args.tick, segment_color=args.color)


def cmd_roots(args: argparse.Namespace) -> str:
    pd = _polygon(args)
    rows = [(g, root_label(pd, g)) for g in pd.interior]
    rows.sort(key=lambda r: (r[1].negative is False, sum(c for _, c in r[1].coeffs), r[1].coeffs))
    return "".join(f"{g.text():>8}  {r}\n" for g, r in rows)


def cmd_verify(args: argparse.Namespace) -> str:
    results = run_suite(args.suite, args.nmax)
    text = "".join(r.line() + "\n" for r in results)
    if not all(r.ok for r in results):
        sys.stdout.write(text)
        raise SystemExit(1)
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable[[argparse.Namespace], str], help_: str, polygon: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        if polygon:
            p.add_argument("--n", type=int, required=True, help="number of vertices of the type-D quiver")
            p.add_argument("--dirs", required=True, help="'>'/'<' string of length n-2")
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.set_defaults(func=fn)
        return p

    kinds = [k.value for k in Kind]
    p = add("quiver", cmd_quiver, "print a quiver")
    p.add_argument("--kind", choices=kinds, default="D")
    p.add_argument("--format", choices=["dot", "json"], default="json")

    p = add("arq", cmd_arq, "print the Auslander-Reiten quiver")
    p.add_argument("--kind", choices=kinds, default="D")
    p.add_argument("--format", choices=["dot", "json"], default="json")

    p = add("omega", cmd_omega, "list the tagged segments")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("dimvec", cmd_dimvec, "index and dimension vector of a segment")
    p.add_argument("--seg", required=True, help='segment "s:t" or "s:t:+1"/"s:t:-1"')
    p.add_argument("--dump-rep", action="store_true", help="also print the matrix representation")

    p = add("ext", cmd_ext, "crossing number, Ext^1 and middle terms of two segments")
    p.add_argument("--seg1", required=True)
    p.add_argument("--seg2", required=True)
    p.add_argument("--dump-rep", action="store_true")

    p = add("mapr", cmd_mapr, "maximal almost pre-rigid representations")
    p.add_argument("action", choices=["count", "list", "check"])
    p.add_argument("--json", action="store_true", help="list triangulations as JSON")
    p.add_argument("--summands", help='"(i,k),(i,k),..." for check')

    p = add("hasse", cmd_hasse, "Hasse diagram of the lattice")
    p.add_argument("--typeb", action="store_true", help="restrict to the type-B subposet")
    p.add_argument("--triangulations", action="store_true", help="use triangulations as elements")
    p.add_argument("--format", choices=["dot", "json"], default="dot")

    p = add("polygon", cmd_polygon, "SVG of the punctured polygon")
    p.add_argument("--seg", action="append", help="segment to draw (repeatable)")
    p.add_argument("--size", type=int, default=600)
    p.add_argument("--radius", type=float, default=260.0)
    p.add_argument("--tick", type=float, default=14.0)
    p.add_argument("--color", default="#c0392b")

    add("roots", cmd_roots, "almost positive root labels of interior segments")

    p = add("verify", cmd_verify, "run the verification suite", polygon=False)
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--suite", choices=["all", *SUITE], default="all")
    return parser


VALUE_FLAGS = {"--seg", "--seg1", "--seg2", "--summands", "--dirs"}


def _attach_values(argv: list[str]) -> list[str]:
    """Turn "--seg1 -3:3:+1" into "--seg1=-3:3:+1" so negative labels are not read as options."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        text = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
