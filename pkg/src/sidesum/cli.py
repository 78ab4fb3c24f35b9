"""Command-line interface tying the package together.

Exit codes are stable for scripting: 0 ok, 1 usage, 2 geometric violation,
3 coverage violation, 4 resource budget, 5 parse error, 6 audit violation.
Tilings travel as JSON ({"n": ..., "tiles": [{"x": "p/q", ...}, ...]});
every rational is printed in canonical "p/q" form, decimals are advisory
and labeled as such.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from gmpy2 import mpq

from . import __version__
from .bounds import BoundCurve, cs_bound, maximize_curve
from .constructions import build, parse_construction_id
from .errors import DomainError, ParseError, ResourceLimitError, SidesumError, StructureError
from .geometry import (
    Tiling,
    big_pair_sides,
    coastal_report,
    from_json,
    is_corner_tile,
    sigma,
    to_json_dict,
    verify,
)
from .numerics import decimal_str, format_rational, parse_rational
from .oracle import grid_enumerate, grid_to_tiling
from .render import RenderSpec, render_svg
from .search import enumerate_max

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GEOMETRY = 2
EXIT_COVERAGE = 3
EXIT_RESOURCE = 4
EXIT_PARSE = 5
EXIT_AUDIT = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_tiling(path) -> Tiling:
    text = sys.stdin.read() if path in (None, "-") else open(path).read()
    return from_json(text)


def _write(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_verify(args) -> int:
    t = _read_tiling(args.file)
    v = verify(t, require_full_cover=args.full_cover)
    if v.ok:
        print(f"ok sigma={format_rational(sigma(t))} n={t.n}")
        return EXIT_OK
    print(json.dumps({"ok": False, "reason": v.reason, "tiles": list(v.tile_indices), "detail": v.detail}))
    return EXIT_COVERAGE if v.reason == "coverage" else EXIT_GEOMETRY


def _cmd_sigma(args) -> int:
    t = _read_tiling(args.file)
    v = verify(t)
    if not v.ok:
        print(json.dumps({"ok": False, "reason": v.reason, "tiles": list(v.tile_indices), "detail": v.detail}))
        return EXIT_GEOMETRY
    print(format_rational(sigma(t)))
    return EXIT_OK


def _cmd_audit(args) -> int:
    t = _read_tiling(args.file)
    v = verify(t, require_full_cover=True)
    if not v.ok:
        print(json.dumps({"ok": False, "reason": v.reason, "tiles": list(v.tile_indices), "detail": v.detail}))
        return EXIT_COVERAGE if v.reason == "coverage" else EXIT_GEOMETRY
    rep = coastal_report(t)
    sig = sigma(t)
    print(f"n={t.n} sigma={format_rational(sig)}")
    inland_ok = rep.inland_sigma < 1
    print(f"inland tiles={list(rep.inland)} inland_sigma={format_rational(rep.inland_sigma)} "
          f"({'<' if inland_ok else '>='} 1)")
    pair = big_pair_sides(t, rep)
    pair_ok = corner_ok = False
    if pair is not None:
        i, j = rep.big_pair
        pair_sum = pair[0] + pair[1]
        pair_ok = pair_sum == 1
        corner_ok = is_corner_tile(t.tiles[i]) or is_corner_tile(t.tiles[j])
        print(f"big_pair tiles=({i}, {j}) sides=({format_rational(pair[0])}, {format_rational(pair[1])}) "
              f"sum={format_rational(pair_sum)} corner_member={'yes' if corner_ok else 'no'}")
    counts = sorted(rep.size_class_counts.items())
    print("size_classes " + " ".join(f"{format_rational(s)}:{c}" for s, c in counts))
    if t.n != 8:
        print(f"note: structural checks target 8-tile tilings; this one has n={t.n}")
        return EXIT_OK
    big = max((t.tiles[i].s for i in range(t.n) if is_corner_tile(t.tiles[i])), default=None)
    mirror_count = rep.size_class_counts.get(1 - big, 0) if big is not None else 0
    print(f"largest_corner_side={format_rational(big) if big is not None else 'none'} "
          f"count_of_complement={mirror_count}")
    if not (inland_ok and pair_ok and corner_ok):
        print("audit: VIOLATION")
        return EXIT_AUDIT
    print("audit: ok")
    return EXIT_OK


def _cmd_construct(args) -> int:
    cid = parse_construction_id(args.id)
    t = build(cid)
    _write(json.dumps(to_json_dict(t)) + "\n", args.output)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("SIDESUM_WORKERS", "1"))
    result = enumerate_max(
        args.n,
        all_optima=args.all_optima,
        workers=workers,
        node_budget=args.budget,
        max_n=args.max_n,
    )
    doc = {
        "n": result.n,
        "max_sigma": None if result.infeasible else format_rational(result.max_sigma),
        "infeasible": result.infeasible,
        "witnesses": [to_json_dict(w) for w in result.witnesses],
        "witness_face_dims": list(result.witness_face_dims),
        "nodes_explored": result.nodes_explored,
        "leaves": result.leaves,
    }
    _write(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    r = grid_enumerate(args.n, args.denominator)
    if r.max_sum is None:
        print(f"infeasible: no tiling of the {args.denominator}x{args.denominator} board into {args.n} squares")
        return EXIT_OK
    scaled = mpq(r.max_sum, args.denominator)
    print(f"max_sum={r.max_sum} scaled={format_rational(scaled)} tilings={r.count} maximizers={len(r.witnesses)}")
    if args.all:
        for w in r.witnesses:
            print(json.dumps(to_json_dict(grid_to_tiling(w, args.denominator))))
    return EXIT_OK


def _cmd_bound(args) -> int:
    if args.kind == "cs":
        value = cs_bound(args.n, parse_rational(args.area))
        print(f"bound={value} decimal~{value.to_decimal(12)}")
        return EXIT_OK
    curve = BoundCurve(
        parse_rational(args.alpha),
        parse_rational(args.beta),
        parse_rational(args.gamma),
        parse_rational(args.delta),
        parse_rational(args.lo),
        parse_rational(args.hi),
    )
    t_star, value = maximize_curve(curve)
    print(f"t_star={t_star} decimal~{t_star.to_decimal(12)}")
    print(f"value={value} decimal~{value.to_decimal(12)}")
    return EXIT_OK


def _cmd_render(args) -> int:
    t = _read_tiling(args.file)
    spec = RenderSpec(
        canvas_px=args.canvas,
        stroke_width_px=parse_rational(args.stroke),
        label_sides=args.labels,
    )
    _write(render_svg(t, spec), args.output)
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.k_max < 3:
        raise DomainError("k_max must be at least 3")
    print("k,n,lower_bound,decimal_approx,note")
    for k in range(3, args.k_max + 1):
        bound = mpq(k) - mpq(1, k - 1)
        note = ""
        if k == 3:
            note = "exact optimum for n=8 is 13/5 > 5/2"
        print(f"{k},{k * k - 1},{format_rational(bound)},{decimal_str(bound, 12)},{note}")
    return EXIT_OK


def _build_parser() -> _Parser:
    p = _Parser(prog="sidesum", description="Exact tilings of the unit square by n squares, maximizing the total side length.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("verify", help="check a tiling JSON file")
    q.add_argument("file", nargs="?", help="tiling JSON (default: stdin)")
    q.add_argument("--full-cover", action="store_true", help="also require the exact area identity")
    q.set_defaults(func=_cmd_verify)

    q = sub.add_parser("sigma", help="print the exact side sum of a tiling")
    q.add_argument("file", nargs="?")
    q.set_defaults(func=_cmd_sigma)

    q = sub.add_parser("audit", help="coastal/inland structural report of a full tiling")
    q.add_argument("file", nargs="?")
    q.set_defaults(func=_cmd_audit)

    q = sub.add_parser("construct", help="emit a named construction as tiling JSON")
    q.add_argument("id", help="figure8 | packing8 | grid:K | note:K")
    q.add_argument("-o", "--output", help="output file (default: stdout)")
    q.set_defaults(func=_cmd_construct)

    q = sub.add_parser("enumerate", help="exact maximum side sum over all n-tile tilings")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--all-optima", action="store_true", help="collect every optimum up to symmetry")
    q.add_argument("--workers", type=int, default=None, help="default: $SIDESUM_WORKERS or 1")
    q.add_argument("--budget", type=int, default=10**8, help="node budget")
    q.add_argument("--max-n", type=int, default=9, help="resource guard on n")
    q.add_argument("-o", "--output")
    q.set_defaults(func=_cmd_enumerate)

    q = sub.add_parser("oracle", help="integer-grid brute force on a DxD board")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--denominator", type=int, required=True, metavar="D")
    q.add_argument("--all", action="store_true", help="also print the maximizing tilings")
    q.set_defaults(func=_cmd_oracle)

    q = sub.add_parser("bound", help="closed-form side-sum bounds")
    bsub = q.add_subparsers(dest="kind", required=True)
    qc = bsub.add_parser("cs", help="sqrt(n * area) bound")
    qc.add_argument("--n", type=int, required=True)
    qc.add_argument("--area", required=True, help='rational, e.g. "45/144"')
    qc.set_defaults(func=_cmd_bound, kind="cs")
    qv = bsub.add_parser("curve", help="maximize alpha + beta*t + sqrt(gamma*t + delta*t^2)")
    for name in ("alpha", "beta", "gamma", "delta", "lo", "hi"):
        qv.add_argument(f"--{name}", required=True, help="rational")
    qv.set_defaults(func=_cmd_bound, kind="curve")

    q = sub.add_parser("render", help="render a tiling as deterministic SVG")
    q.add_argument("file", nargs="?")
    q.add_argument("--canvas", type=int, default=500)
    q.add_argument("--stroke", default="1", help="stroke width in px, rational")
    q.add_argument("--labels", action="store_true", help="label tiles with their sides")
    q.add_argument("-o", "--output")
    q.set_defaults(func=_cmd_render)

    q = sub.add_parser("table", help="lower-bound table for n = k^2 - 1 tilings")
    q.add_argument("--k-max", type=int, default=12)
    q.set_defaults(func=_cmd_table)

    return p


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SidesumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
