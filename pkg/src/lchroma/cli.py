"""Command-line front end.

Subcommands: generate, color, verify, oracle, render, bench.  Exit codes:
0 ok, 1 verification failure, 2 input error, 3 internal invariant breach.
The LCHROMA_SEED environment variable overrides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .colorer import audit_bound, color_collection, verify_coloring
from .errors import InputError, InvariantBroken, LchromaError, VerificationFailed
from .extend import complete_pillar_assignment
from .geometry import collection_from_json, collection_to_json
from .graph import build_intersection_graph, chromatic_number_exact, clique_number
from .instances import (
    GADGETS,
    PROFILES,
    gadget_gl_representation,
    gadget_graph,
    random_collection,
)
from .render import render_svg

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _fail(code: int, kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump_json(path: str | None, payload: dict):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _default_seed() -> int:
    return int(os.environ.get("LCHROMA_SEED", "1"))


def cmd_generate(args) -> int:
    profile = args.profile
    if profile.startswith("gadget:"):
        name = profile.split(":", 1)[1]
        if name == "gl-not-if":
            collection = gadget_gl_representation(args.n)
        elif name in GADGETS:
            graph = gadget_graph(name, n=args.n if name == "gl-not-if" else None)
            _dump_json(args.output, graph.to_edge_list())
            return EXIT_OK
        else:
            raise InputError(f"unknown gadget {name!r}")
    elif profile in PROFILES:
        collection = random_collection(args.n, args.seed, profile)
    else:
        raise InputError(f"unknown profile {profile!r}")
    _dump_json(args.output, collection_to_json(collection))
    return EXIT_OK


def cmd_color(args) -> int:
    collection = collection_from_json(_load_json(args.input))
    trace: list | None = [] if args.trace else None
    coloring = color_collection(collection, omega_override=args.omega_override, trace=trace)
    _dump_json(args.output, coloring.to_json())
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for row in trace:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    collection = collection_from_json(_load_json(args.input))
    payload = _load_json(args.coloring)
    color_of = {str(k): int(v) for k, v in payload.get("colors", {}).items()}
    report = verify_coloring(collection, color_of)
    audit = payload.get("audit", {})
    palette = len(set(color_of.values()))
    omega = audit.get("omega")
    bound_ok = True
    if omega is not None and omega >= 1:
        fresh = audit_bound(int(omega), int(audit.get("pillar_colors_used", 0)), palette)
        bound_ok = fresh["within_pipeline_bound"] and fresh["within_theorem_bound"]
    out = {"proper": report["proper"], "bound_ok": bound_ok}
    if report["violating_pair"]:
        out["violating_pair"] = report["violating_pair"]
    if report["missing"]:
        out["missing"] = report["missing"]
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK if report["proper"] and not report["missing"] and bound_ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    collection = collection_from_json(_load_json(args.input))
    graph = build_intersection_graph(collection)
    omega, witness = clique_number(graph)
    chi = chromatic_number_exact(graph) if graph.n <= 16 else None
    coloring = color_collection(collection)
    used = coloring.palette_used
    bound = coloring.audit["pipeline_bound"]
    chi_text = str(chi) if chi is not None else "n/a(n>16)"
    print(f"omega={omega} chi={chi_text} colors-used={used} bound={bound}")
    if chi is not None and not (chi <= used <= max(bound, used)):
        return EXIT_VERIFY
    if chi is not None and used < chi:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_render(args) -> int:
    collection = collection_from_json(_load_json(args.input))
    color_of = None
    if args.coloring:
        payload = _load_json(args.coloring)
        color_of = {str(k): int(v) for k, v in payload.get("colors", {}).items()}
    pillars = None
    if args.pillars:
        # Redraw the dumped bases against the collection; geometry is exact,
        # so the redrawn pillars equal the dumped ones.
        state = _load_json(args.pillars)
        from .geometry import as_coord
        from .pillars import draw_all

        pillars = draw_all(collection, [as_coord(b) for b in state.get("bases", [])])
    svg = render_svg(collection, pillars=pillars, color_of=color_of)
    if args.output is None or args.output == "-":
        print(svg)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.suite != "desk":
        raise InputError(f"unknown suite {args.suite!r}")
    rows = []
    t_total = time.perf_counter()
    for profile in ("uniform", "flat", "dense"):
        for n in (10, 20, 40):
            seed = _default_seed() + n
            collection = random_collection(n, seed, profile)
            t0 = time.perf_counter()
            coloring = color_collection(collection)
            dt = time.perf_counter() - t0
            rows.append(
                (
                    profile,
                    n,
                    coloring.audit["omega"],
                    coloring.palette_used,
                    coloring.audit["pipeline_bound"],
                    dt,
                )
            )
    print(f"{'profile':8} {'n':>4} {'omega':>5} {'used':>5} {'bound':>6} {'sec':>8}")
    for profile, n, omega, used, bound, dt in rows:
        print(f"{profile:8} {n:>4} {omega:>5} {used:>5} {bound:>6} {dt:>8.3f}")
    print(f"total {time.perf_counter() - t_total:.3f}s")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lchroma")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit an instance JSON file")
    p.add_argument("--profile", required=True,
                   help=f"{'|'.join(PROFILES)} or gadget:<{'|'.join(GADGETS)}>")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("color", help="color an instance")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--omega-override", type=int, default=None)
    p.add_argument("--trace", default=None, help="write a JSONL per-class trace")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a coloring against an instance")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--coloring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact clique/chromatic numbers for small inputs")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", help="emit an SVG figure")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--coloring", default=None)
    p.add_argument("--pillars", default=None, help="pillar state JSON (bases are redrawn)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="run the desk-scale benchmark matrix")
    p.add_argument("--suite", default="desk")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        return _fail(EXIT_VERIFY, "verification", str(exc))
    except (InputError, FileNotFoundError, json.JSONDecodeError) as exc:
        return _fail(EXIT_INPUT, "input", str(exc))
    except InvariantBroken as exc:
        return _fail(EXIT_INTERNAL, "invariant", str(exc))
    except LchromaError as exc:
        return _fail(EXIT_INTERNAL, "internal", str(exc))


if __name__ == "__main__":
    sys.exit(main())
