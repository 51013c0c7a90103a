"""Command-line entry point: ``decapsp gen | run | verify | bench``.

Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import BadParams, DecApspError, VerificationFailure
from .harness import ADVERSARIES, STRUCTURES, run
from .trace import DeletionTrace, layered_trace, lower_bound, random_trace


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> DeletionTrace:
    try:
        with open(path) as fh:
            return DeletionTrace.parse(fh.read())
    except OSError as exc:
        raise BadParams(f"cannot read trace: {exc}") from None


ACCEPTS = {
    "exact": ("small_cutoff",),
    "approx_det": ("d_threshold",),
    "approx_rand": ("d_threshold", "p"),
    "es_baseline": (),
}


def _overrides(structure: str, args) -> dict:
    """Constructor overrides given on the command line that ``structure`` understands."""
    given = {"small_cutoff": args.small_cutoff, "d_threshold": args.d_threshold, "p": args.p}
    return {k: v for k, v in given.items() if v is not None and k in ACCEPTS[structure]}


def cmd_gen(args) -> int:
    if args.kind == "lower_bound":
        tr = lower_bound(args.n, args.extra, args.seed)
    elif args.kind == "random":
        tr = random_trace(args.n, args.m, args.seed, queries=args.queries)
    else:
        tr = layered_trace(args.layers, args.width, args.edge_p, args.seed)
    _emit(tr.serialize(), args.out)
    return 0


def _run_one(structure: str, args, verify: bool, stride: int) -> tuple[int, str]:
    trace = _load(args.trace)
    try:
        m = run(structure, trace, eps=args.eps, seed=args.seed, verify=verify, stride=stride,
                adversary=args.adversary, **_overrides(structure, args))
    except VerificationFailure as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return 1, exc.metrics.document()
    return 0, m.document()


def cmd_run(args) -> int:
    stride = args.verify_stride
    code, doc = _run_one(args.structure, args, stride > 0, stride)
    _emit(doc, args.out)
    return code


def cmd_verify(args) -> int:
    code, doc = _run_one(args.structure, args, True, args.verify_stride)
    _emit(doc, args.out)
    return code


def cmd_bench(args) -> int:
    names = STRUCTURES if args.structure == "all" else (args.structure,)
    stride = args.verify_stride
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_one, names, [args] * len(names), [stride > 0] * len(names), [stride] * len(names)))
    else:
        results = [_run_one(nm, args, stride > 0, stride) for nm in names]
    lines = []
    for nm, (_, doc) in zip(names, results):
        lines += [f"{nm}.{line}\n" for line in doc.splitlines()]
    _emit("".join(lines), args.out)
    return max(code for code, _ in results)


def _common(p: argparse.ArgumentParser, structure_default: str | None) -> None:
    p.add_argument("--trace", required=True, help="trace file")
    if structure_default is None:
        p.add_argument("--structure", required=True, choices=STRUCTURES)
    else:
        p.add_argument("--structure", default=structure_default, choices=STRUCTURES + ("all",))
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--adversary", choices=ADVERSARIES, default=None)
    p.add_argument("--out", default=None, help="write metrics here instead of stdout")
    p.add_argument("--small-cutoff", type=int, default=None, help="exact: override the ES-tree depth cutoff")
    p.add_argument("--d-threshold", type=int, default=None, help="approx: override the ES-tree threshold")
    p.add_argument("--p", type=float, default=None, help="approx_rand: override the sampling probability")


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="decapsp", description="Decremental APSP structures and test harness.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a deletion trace")
    g.add_argument("kind", choices=("lower_bound", "random", "layered"))
    g.add_argument("--n", type=int, default=9)
    g.add_argument("--m", type=int, default=20)
    g.add_argument("--extra", type=int, default=0, help="lower_bound: extra edges deleted first")
    g.add_argument("--layers", type=int, default=4)
    g.add_argument("--width", type=int, default=3)
    g.add_argument("--edge-p", type=float, default=0.5, help="layered: edge probability")
    g.add_argument("--queries", action="store_true", help="random: interleave point queries")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="replay a trace and print metrics")
    _common(r, None)
    r.add_argument("--verify-stride", type=int, default=0, help="check the full matrix every k deletions (0: off)")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="replay with oracle verification")
    _common(v, None)
    v.add_argument("--verify-stride", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run several structures on one trace")
    _common(b, "all")
    b.add_argument("--verify-stride", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (BadParams, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DecApspError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
