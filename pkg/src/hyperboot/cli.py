"""Command-line entry point.

Every subcommand prints a JSON report on stdout (``eval`` prints one vertex
per line instead) that embeds the fully resolved run configuration.
Auxiliary files are only written under ``--out``.

Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage or
precondition error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import dsl, io
from .construction import double_config, lower_bound_witness, pad_for_r
from .cube import WordSet, vertex_to_str
from .engine import InfectionState, is_stable
from .extremal import (
    brute_force_max_time,
    check_upper_bound,
    mc_percolation_time,
    upper_bound,
    write_histogram_csv,
)
from .snake import check_local_isometry, search_longest, verify

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _binding(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=int, got {text!r}")
    try:
        return name.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"binding {text!r} is not an integer") from None


def _set_binding(text: str) -> tuple[str, str]:
    name, sep, path = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=path, got {text!r}")
    return name.strip(), path


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperboot", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, out: bool = True) -> None:
        p.add_argument("--threads", type=int, default=1, help="worker processes (results do not depend on it)")
        p.add_argument("--allow-large", action="store_true", help="lift the dimension guards")
        if out:
            p.add_argument("--out", type=Path, help="directory for auxiliary files")

    p = sub.add_parser("eval", help="evaluate a subcube expression")
    p.add_argument("expr")
    p.add_argument("--d", type=int, help="expected dimension of the result")
    p.add_argument("--let", type=_binding, action="append", default=[], metavar="NAME=INT")
    p.add_argument("--bind", type=_set_binding, action="append", default=[], metavar="NAME=FILE",
                   help="bind a name to a vertex-set file")
    common(p, out=False)

    for name, help_ in (("run", "run the dynamics from a vertex-set file"),
                        ("stable", "test whether a set is stable")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--input", type=Path, required=True)
        if name == "run":
            p.add_argument("--times", action="store_true", help="include per-vertex times")
        common(p, out=False)

    p = sub.add_parser("snake-search", help="search for a long k-snake")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--mode", choices=("exhaustive", "budget"), default="exhaustive")
    p.add_argument("--node-limit", type=int)
    common(p)

    p = sub.add_parser("snake-verify", help="verify a snake file")
    p.add_argument("input", type=Path)
    p.add_argument("--k", type=int, help="override the spread from the file header")
    common(p, out=False)

    p = sub.add_parser("construct", help="build and check the snake witness for odd d >= 15")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--snake-mode", choices=("exhaustive", "budget"), default="exhaustive")
    p.add_argument("--node-limit", type=int)
    p.add_argument("--snake-file", type=Path, help="use this dimension d-10 3-snake instead of searching")
    p.add_argument("--trajectory", action="store_true", help="write trajectory.csv under --out")
    common(p)

    p = sub.add_parser("brute-max-time", help="exhaustive maximal percolation time")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    common(p, out=False)

    p = sub.add_parser("check-bound", help="compare a time with (4r+2) 2^d / d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    common(p, out=False)

    p = sub.add_parser("mc-time", help="Monte Carlo percolation time")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p)

    p = sub.add_parser("double", help="[*]A: lift a set one dimension up")
    p.add_argument("--d", type=int, required=True, help="dimension of the input set")
    p.add_argument("--input", type=Path, required=True)
    common(p)

    p = sub.add_parser("pad-r", help="embed a 3-neighbour configuration for threshold r")
    p.add_argument("--d", type=int, required=True, help="dimension of the input set")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--input", type=Path, required=True)
    common(p)
    return ap


def _config(args: argparse.Namespace) -> dict:
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if isinstance(value, Path):
            value = str(value)
        elif key == "let":
            value = {n: v for n, v in value}
        elif key == "bind":
            value = {n: p for n, p in value}
        cfg[key] = value
    return cfg


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _out_dir(args: argparse.Namespace) -> Path | None:
    if getattr(args, "out", None) is None:
        return None
    args.out.mkdir(parents=True, exist_ok=True)
    return args.out


def _set_report(ws: WordSet) -> dict:
    return {"d": ws.dim, "size": len(ws), "vertices": ws.texts()}


def cmd_eval(args) -> int:
    env = dsl.Env(ints=dict(args.let), sets={n: io.read_vertex_set(p) for n, p in args.bind})
    ws = dsl.evaluate(args.expr, env)
    if args.d is not None and ws.dim != args.d:
        raise UsageError(f"expression has dimension {ws.dim}, expected {args.d}")
    for text in ws.texts():
        print(text)
    return 0


def cmd_run(args) -> int:
    initial = io.read_vertex_set(args.input, args.d)
    out = InfectionState(args.d, args.r, initial, allow_large=args.allow_large).run()
    _emit({"config": _config(args), "outcome": out.to_report(include_times=args.times)})
    return 0


def cmd_stable(args) -> int:
    initial = io.read_vertex_set(args.input, args.d)
    stable = is_stable(args.d, args.r, initial, allow_large=args.allow_large)
    _emit({"config": _config(args), "stable": stable})
    return 0 if stable else 1


def cmd_snake_search(args) -> int:
    res = search_longest(args.d, args.k, args.mode, args.node_limit, allow_large=args.allow_large)
    out = _out_dir(args)
    if out:
        io.write_snake(out / "snake.txt", res.snake)
    _emit({
        "config": _config(args),
        "d": args.d,
        "k": args.k,
        "length": res.snake.length,
        "exhaustive": res.exhaustive,
        "attempts": res.attempts,
        "sites": res.snake.texts(),
    })
    return 0


def cmd_snake_verify(args) -> int:
    snake = io.read_snake(args.input)
    if args.k is not None:
        snake = replace(snake, k=args.k)
    k = snake.k
    bad = verify(snake)
    iso = None
    if bad is None and snake.length >= k:
        iso = check_local_isometry(snake)
    _emit({
        "config": _config(args),
        "k": k,
        "d": snake.d,
        "length": snake.length,
        "ok": bad is None,
        "violation": None if bad is None else {"kind": bad.kind, "i": bad.i, "j": bad.j,
                                               "distance": bad.distance, "message": str(bad)},
        "local_isometry": None if bad is not None or snake.length < k else iso is None,
    })
    return 0 if bad is None else 1


def cmd_construct(args) -> int:
    snake = io.read_snake(args.snake_file) if args.snake_file else None
    w = lower_bound_witness(args.d, snake=snake, mode=args.snake_mode, node_limit=args.node_limit,
                            allow_large=args.allow_large)
    report = {"config": _config(args), **w.to_report()}
    report["upper_bound_holds"] = check_upper_bound(args.d, 3, w.outcome.total_time)
    out = _out_dir(args)
    if out:
        parts = w.parts
        io.write_snake(out / "input_snake.txt", w.input_snake)
        io.write_snake(out / "snake.txt", w.snake)
        io.write_vertex_set(out / "seed.txt", WordSet(parts.d, {parts.seed}), "seed")
        for name in ("I0", "J1", "J2", "J3"):
            io.write_vertex_set(out / f"{name}.txt", getattr(parts, name), name)
        (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
        if args.trajectory:
            state = InfectionState(parts.d, 3, parts.initial_set())
            with open(out / "trajectory.csv", "w", newline="") as fh:
                cw = csv.writer(fh)
                cw.writerow(["round", "newly_infected_count", "new_vertices"])
                for t, fresh in state.rounds():
                    cw.writerow([t, fresh.size, " ".join(vertex_to_str(int(v), parts.d) for v in fresh)])
    _emit(report)
    return 0 if w.certified else 1


def cmd_brute(args) -> int:
    res = brute_force_max_time(args.d, args.r, allow_large=args.allow_large, threads=args.threads)
    _emit({"config": _config(args), **res.to_dict()})
    return 0


def cmd_check_bound(args) -> int:
    bound = upper_bound(args.d, args.r)
    holds = check_upper_bound(args.d, args.r, args.t)
    _emit({"config": _config(args), "t": args.t, "bound": str(bound), "bound_float": float(bound),
           "holds": holds})
    return 0 if holds else 1


def cmd_mc(args) -> int:
    stats = mc_percolation_time(args.d, args.r, args.p, args.samples, args.seed,
                                threads=args.threads, allow_large=args.allow_large)
    out = _out_dir(args)
    if out:
        write_histogram_csv(out / "histogram.csv", stats)
    _emit({"config": _config(args), **stats.to_dict()})
    return 0


def cmd_double(args) -> int:
    res = double_config(io.read_vertex_set(args.input, args.d))
    out = _out_dir(args)
    if out:
        io.write_vertex_set(out / "doubled.txt", res)
    _emit({"config": _config(args), **_set_report(res)})
    return 0


def cmd_pad(args) -> int:
    res = pad_for_r(io.read_vertex_set(args.input, args.d), args.r)
    out = _out_dir(args)
    if out:
        io.write_vertex_set(out / "padded.txt", res)
    _emit({"config": _config(args), **_set_report(res)})
    return 0


COMMANDS = {
    "eval": cmd_eval,
    "run": cmd_run,
    "stable": cmd_stable,
    "snake-search": cmd_snake_search,
    "snake-verify": cmd_snake_verify,
    "construct": cmd_construct,
    "brute-max-time": cmd_brute,
    "check-bound": cmd_check_bound,
    "mc-time": cmd_mc,
    "double": cmd_double,
    "pad-r": cmd_pad,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"hyperboot {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
