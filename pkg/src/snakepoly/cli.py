"""Command line front end.  Reports are JSON Lines."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import SnakePolyError
from .laurent import expand
from .polytope import RationalPolytope, lattice_points, newton_polytope, vertex_set
from .snake import build_snake_graph, parse_raw_snake_graph
from .surface import (MarkedSurface, TaggedArc, TaggedTriangulation, enumerate_tagged_arcs,
                      enumerate_tagged_triangulations, loop_around, tagged_to_ideal)
from .verify import (DESK_BOUNDS, check_instance, explain_instance, load_counterexample,
                     parity_report, run_corpus, run_counterexample)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _surface(args) -> MarkedSurface:
    if not args.surface:
        raise _Usage("--surface is required")
    return MarkedSurface.parse(args.surface[0] if isinstance(args.surface, list) else args.surface)


def _triangulation(args, surface) -> TaggedTriangulation:
    if not args.triangulation:
        raise _Usage("--triangulation is required")
    return TaggedTriangulation.parse(surface, args.triangulation)


def _arc(args, surface) -> TaggedArc:
    if not args.arc:
        raise _Usage("--arc is required")
    return TaggedArc.parse(surface, args.arc)


def _frac_list(p):
    return [str(x) for x in p]


def cmd_arcs(args, out):
    arcs = enumerate_tagged_arcs(_surface(args))
    for a in arcs:
        out.write(json.dumps({"name": a.name, **a.to_json()}) + "\n")
    out.write(json.dumps({"summary": {"arcs": len(arcs)}}) + "\n")
    return EXIT_OK


def cmd_triangulations(args, out):
    Ts = enumerate_tagged_triangulations(_surface(args))
    for T in Ts:
        out.write(json.dumps({"triangulation": str(T)}) + "\n")
    out.write(json.dumps({"summary": {"triangulations": len(Ts)}}) + "\n")
    return EXIT_OK


def cmd_snake(args, out):
    surface = _surface(args)
    T, gamma = _triangulation(args, surface), _arc(args, surface)
    ordinary = loop_around(gamma.plain()) if gamma.notched else gamma
    G = build_snake_graph(tagged_to_ideal(T), ordinary)
    out.write(json.dumps({"arc": ordinary.name, "snake_graph": G.to_json()}) + "\n")
    return EXIT_OK


def cmd_expand(args, out):
    surface = _surface(args)
    L = expand(_triangulation(args, surface), _arc(args, surface), args.mode)
    out.write(json.dumps({"mode": args.mode, "text": str(L), **L.to_json()}) + "\n")
    return EXIT_OK


def _polytope_report(P: RationalPolytope, support=None) -> dict:
    pts = lattice_points(P)
    verts = vertex_set(P)
    rep = {"dim": P.dim, "generators": len(P.generators),
           "lattice_points": [list(p) for p in pts],
           "vertices": [_frac_list(v) for v in verts]}
    if support is not None:
        supp = {tuple(s) for s in support}
        rep["saturated"] = all(p in supp for p in pts)
    vset = {tuple(v) for v in verts}
    rep["empty"] = all(tuple(p) in vset for p in pts)
    return rep


def cmd_newton(args, out):
    surface = _surface(args)
    L = expand(_triangulation(args, surface), _arc(args, surface), args.mode)
    rep = _polytope_report(newton_polytope(L), L.support())
    out.write(json.dumps({"mode": args.mode, "vars": list(L.vars), **rep}) + "\n")
    return EXIT_OK


def cmd_polytope(args, out):
    if not args.raw:
        raise _Usage("--raw <polytope json file> is required")
    P = RationalPolytope.from_json(Path(args.raw).read_text())
    out.write(json.dumps(_polytope_report(P)) + "\n")
    return EXIT_OK


def cmd_check(args, out):
    surface = _surface(args)
    v = check_instance(surface, _triangulation(args, surface), _arc(args, surface), args.mode)
    out.write(json.dumps(v.to_json()) + "\n")
    return EXIT_OK if v.ok else EXIT_VIOLATION


def cmd_verify(args, out):
    if not args.surface:
        raise _Usage("--surface is required (repeat it for several surfaces)")
    entries = []
    for text in args.surface:
        s = MarkedSurface.parse(text)
        bound = DESK_BOUNDS[s.kind.value]
        if s.m > bound:
            print(f"warning: {s} is above the desk-scale bound m <= {bound}; this may take long",
                  file=sys.stderr)
        entry = {"surface": text}
        if args.modes:
            entry["modes"] = args.modes
        entries.append(entry)
    report = run_corpus({"surfaces": entries}, jobs=args.jobs)
    for v in report["verdicts"]:
        out.write(json.dumps(v.to_json(timing=args.timing)) + "\n")
    out.write(json.dumps({"summary": report["summary"]}) + "\n")
    return EXIT_OK if report["summary"]["failures"] == 0 else EXIT_VIOLATION


def cmd_counterexample(args, out):
    if args.raw:
        G = parse_raw_snake_graph(Path(args.raw).read_text())
    elif args.name:
        G = load_counterexample(args.name)
    else:
        raise _Usage("give --raw <file> or --name annulus|punctured_torus|twice_punctured_torus")
    v = run_counterexample(G, args.mode)
    rec = v.to_json(timing=False)
    rec["labels"] = list(G.labels)
    rec["parity"] = {k: val for k, val in parity_report(G, args.mode).items() if k != "weight_vectors"}
    out.write(json.dumps(rec) + "\n")
    return EXIT_OK


def cmd_explain(args, out):
    surface = _surface(args)
    T, gamma = _triangulation(args, surface), _arc(args, surface)
    modes = [args.mode] if args.mode_given else ()
    out.write(json.dumps(explain_instance(surface, T, gamma, modes), indent=1) + "\n")
    return EXIT_OK


COMMANDS = {
    "arcs": cmd_arcs, "triangulations": cmd_triangulations, "snake": cmd_snake,
    "expand": cmd_expand, "newton": cmd_newton, "polytope": cmd_polytope, "check": cmd_check,
    "verify": cmd_verify, "counterexample": cmd_counterexample, "explain": cmd_explain,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="snakepoly",
                                description="Cluster variable Newton polytopes from snake graphs.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--surface", action="append",
                   help="polygon:M or punctured:M (repeatable for verify)")
    p.add_argument("--mode", choices=("bd", "nf", "pc"), default=None)
    p.add_argument("--modes", nargs="+", choices=("bd", "nf", "pc"),
                   help="modes for verify (default: bd nf pc on polygons, bd pc on punctured)")
    p.add_argument("--arc", help="arc name (c1_4, c0_2L, r3, r3n) or arc JSON")
    p.add_argument("--triangulation", help="comma separated arc names or triangulation JSON")
    p.add_argument("--raw", help="raw snake graph JSON file (counterexample) or polytope JSON (polytope)")
    p.add_argument("--name", help="built-in counterexample graph")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    p.add_argument("--timing", action="store_true", help="include elapsed times in verify output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.mode_given = args.mode is not None
    if args.mode is None:
        args.mode = "bd"
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        return COMMANDS[args.command](args, out)
    except _Usage as exc:
        print(f"snakepoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SnakePolyError, OSError) as exc:
        print(f"snakepoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.out:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
