"""Command-line interface: ``sectour <command> SPEC [options]``.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from pathlib import Path
from typing import Optional

from . import coloring, complex as cx, homology, morse, structure
from .config import DEFAULT_LIMITS, Limits
from .corpus import CorpusConfig, generate
from .dsl import format_spec, parse_spec
from .errors import ConstructionError, InvalidParameter, ResourceLimit
from .tournament import Compose, format_edge_list, members, parse_edge_list, realize
from .verify import verify_spec

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

SPEC_OR_EDGES = {"faces", "morse", "chi", "betti"}


class _Usage(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _emit(args, payload, text: Optional[str] = None) -> None:
    if args.format == "json" or (text is None and args.format == "text"):
        print(_dumps(payload))
    elif args.format == "tsv":
        rows = payload if isinstance(payload, list) else [payload]
        if rows and isinstance(rows[0], dict):
            keys = list(dict.fromkeys(k for row in rows for k in row))
            print("\t".join(keys))
            for row in rows:
                print("\t".join(_cell(row.get(k)) for k in keys))
        else:
            for row in rows:
                print("\t".join(map(_cell, row)) if isinstance(row, (list, tuple)) else _cell(row))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cell(v) -> str:
    return _dumps(v) if isinstance(v, (dict, list, tuple, bool)) or v is None else str(v)


def _spec(args):
    if not args.spec:
        raise _Usage(f"{args.command} needs a SPEC argument")
    return parse_spec(args.spec)


def _tournament(args):
    if getattr(args, "edges", None):
        if args.spec:
            raise _Usage("give either SPEC or --edges, not both")
        return None, parse_edge_list(Path(args.edges).read_text())
    spec = _spec(args)
    return spec, realize(spec)


def _limits(args) -> Limits:
    return Limits(max_n=args.max_n, chromatic_n=args.max_chi_n, betti_faces=args.max_faces)


def _face_lists(F) -> list:
    return [list(s) for s in F.sets()]


# ---------------------------------------------------------------------------
# commands; each returns an exit code


def cmd_build(args) -> int:
    T = realize(_spec(args))
    _emit(args, {"n": T.n, "edges": T.edges()}, format_edge_list(T))
    return EXIT_PASS


def cmd_faces(args) -> int:
    _, T = _tournament(args)
    F = cx.acyclic_complex(T, args.max_n)
    if args.facets:
        F = cx.facets(F)
    _emit(args, _face_lists(F), F.dump())
    return EXIT_PASS


def _parse_pivots(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise _Usage(f"--pivots expects comma-separated integers, got {text!r}") from None


def cmd_morse(args) -> int:
    spec, T = _tournament(args)
    F = cx.acyclic_complex(T, args.max_n)
    if args.pivots:
        pivots = _parse_pivots(args.pivots)
    elif spec is not None:
        pivots = list(morse.canonical_pivots(spec))
    else:
        raise _Usage("--pivots is required with --edges")
    M, C = morse.run_pivots(F, pivots)
    ok = morse.verify_acyclic(M, F)
    payload = {"pivots": pivots, "pairs": len(M.pairs),
               "critical": _face_lists(C.cells),
               "histogram": {str(k): v for k, v in C.histogram.items()},
               "acyclic": ok}
    if spec is not None and args.pivots:
        canon = morse.run_pivots(F, morse.canonical_pivots(spec))[1].histogram
        payload["differs_from_canonical"] = canon != C.histogram
    text = M.dump() + "".join(f"critical {morse.format_face(f)}\n" for f in C.cells)
    if not M.pairs and not C.cells.members:
        text = "\n"
    _emit(args, payload, text)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_cs(args) -> int:
    h = morse.cs_recursive(_spec(args))
    _emit(args, {str(k): v for k, v in h.items()})
    return EXIT_PASS


def _int_command(fn):
    def run(args) -> int:
        value = fn(_spec(args))
        _emit(args, value, str(value))
        return EXIT_PASS
    return run


cmd_depth = _int_command(structure.depth_formula)
cmd_dim = _int_command(structure.dim_formula)
cmd_width = _int_command(structure.width)


def cmd_triangles(args) -> int:
    tri = structure.deep_triangles(_spec(args))
    rows = [{"blocks": list(I), "vertices": list(t)} for I, t in tri]
    text = "".join(",".join(map(str, I)) + "\t" + " ".join(map(str, t)) + "\n"
                   for I, t in tri) or "\n"
    _emit(args, rows, text)
    return EXIT_PASS


def cmd_normalize(args) -> int:
    out = format_spec(structure.normalize(_spec(args)))
    _emit(args, out, out)
    return EXIT_PASS


def cmd_color(args) -> int:
    spec = _spec(args)
    if not isinstance(spec, Compose):
        raise _Usage("color needs a composition R m(...)")
    res = coloring.color_spec(spec, args.max_chi_n)
    valid = coloring.validate_coloring(realize(spec), res.coloring)
    count = res.coloring.color_count
    payload = {"spec": format_spec(spec), "construction": res.construction, "case": res.case,
               "block_chi": list(res.block_chi), "colors": count,
               "promised": res.promised, "valid": valid,
               "coloring": res.coloring.to_json()}
    _emit(args, payload)
    return EXIT_PASS if valid and count <= res.promised else EXIT_FAIL


def cmd_chi(args) -> int:
    _, T = _tournament(args)
    k, cert = coloring.chromatic_exact(T, args.max_chi_n)
    _emit(args, {"chi": k, "coloring": cert.to_json()} if args.format == "json" else k, str(k))
    return EXIT_PASS


def cmd_bound(args) -> int:
    rep = coloring.verify_bound(_spec(args), args.max_chi_n)
    _emit(args, rep.to_json())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_betti(args) -> int:
    _, T = _tournament(args)
    b = homology.betti_numbers(cx.acyclic_complex(T, args.max_n), args.max_faces)
    _emit(args, b)
    return EXIT_PASS


def cmd_verify(args) -> int:
    rep = verify_spec(_spec(args), _limits(args))
    _emit(args, rep.to_json())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _batch_row(text: str, limits: Limits) -> tuple[dict, int]:
    """Verify one batch line; returns the JSON row and its exit status."""
    try:
        row = verify_spec(parse_spec(text), limits).to_json()
        return row, EXIT_PASS if row["pass"] else EXIT_FAIL
    except ResourceLimit as exc:
        return {"spec": text, "error": str(exc), "pass": None}, EXIT_LIMIT
    except InvalidParameter as exc:
        return {"spec": text, "error": str(exc), "pass": False}, EXIT_FAIL


def cmd_batch(args) -> int:
    if args.spec == "gen":
        cfg = CorpusConfig(max_n=min(args.max_n, args.gen_max_n))
        specs = generate(args.count, args.seed, cfg)
        for s in specs:
            print(format_spec(s))
        return EXIT_PASS
    if not args.spec:
        raise _Usage("batch needs a FILE (or '-' for stdin, or 'gen')")
    if args.jobs < 1:
        raise _Usage("--jobs must be at least 1")
    src = sys.stdin.read() if args.spec == "-" else Path(args.spec).read_text()
    lines = [t for t in (line.split("#")[0].strip() for line in src.splitlines()) if t]
    limits = _limits(args)
    seen = set()
    rows = []
    # Executor.map keeps input order, so rows stream out deterministically
    with ProcessPoolExecutor(args.jobs) if args.jobs > 1 else nullcontext() as pool:
        mapper = pool.map if pool else map
        for row, code in mapper(_batch_row, lines, [limits] * len(lines)):
            seen.add(code)
            rows.append(row)
            if args.format != "tsv":
                print(_dumps(row), flush=True)
    if args.format == "tsv":
        _emit(args, rows)
    # a failed check outranks a skipped one
    return EXIT_FAIL if EXIT_FAIL in seen else (EXIT_LIMIT if EXIT_LIMIT in seen else EXIT_PASS)


COMMANDS = {
    "build": (cmd_build, "print the realized tournament as an edge list"),
    "faces": (cmd_faces, "list the acyclic faces (or facets)"),
    "morse": (cmd_morse, "run the pivot matching and dump pairs and critical cells"),
    "cs": (cmd_cs, "critical-cell histogram from the window recursion"),
    "depth": (cmd_depth, "depth from the closed form"),
    "dim": (cmd_dim, "dimension from the closed form"),
    "width": (cmd_width, "longest cyclic run of non-transitive blocks"),
    "triangles": (cmd_triangles, "deep triangles with block sequences"),
    "normalize": (cmd_normalize, "shrink leaves to R1 / R3"),
    "color": (cmd_color, "constructive coloring from optimal block colorings"),
    "chi": (cmd_chi, "exact acyclic chromatic number"),
    "bound": (cmd_bound, "check chi against the dimension bound"),
    "betti": (cmd_betti, "reduced Betti numbers of the acyclic complex"),
    "verify": (cmd_verify, "full consistency suite for one spec"),
    "batch": (cmd_batch, "verify specs from FILE, one per line; 'batch gen' prints a corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", nargs="?", help="spec text such as 'R5(R1,R1,R3,R3,R1)'")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json",
                     help="machine-readable JSON output")
    fmt.add_argument("--tsv", dest="format", action="store_const", const="tsv",
                     help="tab-separated output")
    common.set_defaults(format="text")
    common.add_argument("--max-n", type=int, default=DEFAULT_LIMITS.max_n,
                        help="vertex cap for face enumeration (default %(default)s)")
    common.add_argument("--max-chi-n", type=int, default=DEFAULT_LIMITS.chromatic_n,
                        help="vertex cap for exact coloring (default %(default)s)")
    common.add_argument("--max-faces", type=int, default=DEFAULT_LIMITS.betti_faces,
                        help="face cap for homology (default %(default)s)")

    p = argparse.ArgumentParser(prog="sectour", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name in SPEC_OR_EDGES:
            sp.add_argument("--edges", metavar="PATH", help="read a tournament edge list instead of a spec")
        if name == "morse":
            sp.add_argument("--pivots", metavar="v1,v2,...", help="override the canonical pivot order")
        if name == "faces":
            sp.add_argument("--facets", action="store_true", help="print only the facets")
        if name == "batch":
            sp.add_argument("--seed", type=int, default=0, help="corpus seed for 'batch gen' (default 0)")
            sp.add_argument("--count", type=int, default=100, help="specs to generate (default 100)")
            sp.add_argument("--jobs", type=int, default=1,
                            help="worker processes; output order is preserved (default 1)")
            sp.add_argument("--gen-max-n", type=int, default=14,
                            help="vertex budget of generated specs (default 14)")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command][0](args)
    except ResourceLimit as exc:
        print(f"sectour: resource limit: {exc} (size {exc.size}, cap {exc.cap}; raise with {exc.flag})",
              file=sys.stderr)
        return EXIT_LIMIT
    except (InvalidParameter, _Usage, OSError) as exc:
        print(f"sectour: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        print(f"sectour: construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
