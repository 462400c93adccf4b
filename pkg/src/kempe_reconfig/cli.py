"""Command-line front end.

Exit codes: 0 success, 1 sequence rejected, 2 invalid input, 3 internal
invariant violated (a reproduction record goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators
from .coloring import Coloring, is_proper, replay, sequence_from_dict, sequence_to_dict, verify_sequence
from .errors import KempeError, PaperViolation, SequenceError
from .fisk_mohar import fisk_reduce, prop_m1
from .main_algo import theorem_main
from .oracle import DEFAULT_CAP, build_reconfiguration_graph, summary
from .plane_graph import PlaneGraph

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str | None, what: str) -> dict:
    if path is None:
        raise InputError(f"--{what} is required")
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path} is not valid JSON: {exc}") from exc


def _graph(args) -> PlaneGraph:
    return PlaneGraph.from_dict(_load(args.graph, "graph"))


def _coloring(path: str | None, what: str, g: PlaneGraph) -> Coloring:
    phi = Coloring.from_dict(_load(path, what))
    if len(phi) != g.n:
        raise InputError(f"{what} coloring has {len(phi)} entries for {g.n} vertices")
    return phi


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        Path(path).write_text(text + "\n")


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def cmd_solve(args) -> int:
    g = _graph(args)
    alpha = _coloring(args.from_, "from", g)
    beta = _coloring(args.to, "to", g)
    ledgers: list = []
    seq = theorem_main(g, alpha, beta, ledgers=ledgers)
    stats = verify_sequence(g, alpha, seq, beta)
    _emit(_dump(sequence_to_dict(seq)), args.seq)
    if args.stats:
        out = {"seed": args.seed, "length": stats.length, "max_recolors": stats.max_count,
               "per_vertex": stats.per_vertex, "ledgers": [lg.to_dict() for lg in ledgers]}
        Path(args.stats).write_text(_dump(out) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _graph(args)
    alpha = _coloring(args.from_, "from", g)
    beta = _coloring(args.to, "to", g)
    seq = sequence_from_dict(_load(args.seq, "seq"))
    for what, phi in (("from", alpha), ("to", beta)):
        if not is_proper(g, phi):
            raise InputError(f"{what} coloring is not proper")
    try:
        stats = verify_sequence(g, alpha, seq, beta)
    except SequenceError as exc:
        print(json.dumps({"ok": False, "index": exc.index, "error": str(exc)}))
        return EXIT_REJECTED
    if args.stats:
        Path(args.stats).write_text(_dump(stats.to_dict()) + "\n")
    print(json.dumps({"ok": True, "length": stats.length, "max_recolors": stats.max_count}))
    return EXIT_OK


def cmd_fisk(args) -> int:
    """Fisk reduction of --from, or with --to a full recoloring between 4-colorings."""
    g = _graph(args)
    alpha = _coloring(args.from_, "from", g)
    info: dict = {}
    if args.to is not None:
        beta = _coloring(args.to, "to", g)
        seq = prop_m1(g, alpha, beta, info=info)
    else:
        res = fisk_reduce(g, alpha)
        seq = res.moves
        info["nonsingular_history"] = list(res.history)
    end, stats = replay(g, alpha, seq)
    _emit(_dump(sequence_to_dict(seq)), args.seq)
    if args.stats:
        out = {"seed": args.seed, "length": stats.length, "max_recolors": stats.max_count,
               "end": end.to_dict(), "info": info}
        Path(args.stats).write_text(_dump(out) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _graph(args)
    rg = build_reconfiguration_graph(g, args.k, cap=args.cap)
    _emit(_dump(summary(rg)), args.stats)
    return EXIT_OK


_KINDS = {
    "triangulation": lambda n, seed: generators.random_triangulation(n, seed=seed),
    "eulerian": lambda n, seed: generators.eulerian_triangulation(n, seed=seed),
    "plane": lambda n, seed: generators.random_plane_graph(n, seed=seed),
}


def cmd_gen(args) -> int:
    if args.kind not in _KINDS:
        raise InputError(f"unsupported kind {args.kind!r}; choose from {sorted(_KINDS)}")
    if args.n < 3:
        raise InputError("n must be at least 3")
    g = _KINDS[args.kind](args.n, args.seed)
    _emit(_dump(g.to_dict()), args.graph)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kempe-reconfig", description="Kempe recoloring of plane graphs")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, colorings: bool = True) -> None:
        sp.add_argument("--graph", help="graph JSON file")
        if colorings:
            sp.add_argument("--from", dest="from_", help="start coloring JSON")
            sp.add_argument("--to", help="target coloring JSON")
        sp.add_argument("--seq", help="sequence JSON file (written by solve/fisk, read by verify)")
        sp.add_argument("--stats", help="write statistics JSON here")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP)

    for name, fn, help_ in (
        ("solve", cmd_solve, "recolor between two 5-colorings"),
        ("verify", cmd_verify, "check a sequence"),
        ("fisk", cmd_fisk, "Fisk reduction, or recoloring between 4-colorings with --to"),
    ):
        sp = sub.add_parser(name, help=help_)
        common(sp)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("oracle", help="summarise the reconfiguration graph")
    common(sp, colorings=False)
    sp.add_argument("--k", type=int, default=5)
    sp.set_defaults(func=cmd_oracle)
    sp = sub.add_parser("gen", help="generate a graph (written to --graph or stdout)")
    common(sp, colorings=False)
    sp.add_argument("--kind", default="triangulation")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as exc:
        record = {"command": args.command, "error": str(exc),
                  "args": {k: v for k, v in vars(args).items() if k != "func"}}
        if isinstance(exc, PaperViolation):
            record["payload"] = exc.payload
        sys.stderr.write("invariant violated; reproduction record:\n" + json.dumps(record, default=str) + "\n")
        return EXIT_VIOLATION
    except (InputError, KempeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
