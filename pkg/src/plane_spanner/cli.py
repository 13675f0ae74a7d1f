"""Command line driver: gen, build, verify, stretch, svg, bench.

Exit codes: 0 all checks pass, 1 a violation was found, 2 bad input or degenerate instance.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .errors import InputError, SpannerError
from .geometry import MAX_COORD

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
EXAMPLE = "example"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args) -> io.InstanceFile:
    inst = io.worked_example() if args.instance == EXAMPLE else io.read_instance(args.instance)
    if getattr(args, "perturb_seed", None) is not None:
        inst = io.perturb(inst, args.perturb_seed)
    return inst


def _n_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    try:
        a, b = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None
    if not 1 <= a <= b:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return a, b


def cmd_gen(args) -> int:
    _emit(io.gen(args.n, args.seed, args.max_coord).dumps(), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    _emit(io.build(_load(args), args.stage).dumps(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import full_certificate

    cert = full_certificate(_load(args).points)
    if args.format == "json":
        _emit(json.dumps(cert.to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = [f"n = {cert.n}"]
        if cert.error:
            lines.append(f"ERROR {cert.error}")
        lines += [f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({d})" if d else "") for name, ok, d in cert.checks]
        lines += [f"stretch {k} = {v:.6f}" for k, v in sorted(cert.stretch.items())]
        lines += [f"WARNING {w}" for w in cert.warnings]
        _emit("\n".join(lines) + "\n", args.out)
    if cert.error:
        return EXIT_INPUT if cert.error.split(":")[0] in _input_error_names() else EXIT_VIOLATION
    return EXIT_OK if cert.passed else EXIT_VIOLATION


def _input_error_names() -> set[str]:
    from . import errors

    return {name for name, obj in vars(errors).items() if isinstance(obj, type) and issubclass(obj, InputError)}


def cmd_stretch(args) -> int:
    from .verify import H4_STRETCH_BOUND, stretch_factor

    inst = _load(args)
    g = io.build(inst, args.stage)
    rep = stretch_factor(g.all_edges, inst.pointset(), tag=args.stage)
    if args.format == "json":
        text = json.dumps({"stage": args.stage, "stretch": rep.max_ratio,
                           "argmax": list(rep.argmax) if rep.argmax else None}, sort_keys=True) + "\n"
    else:
        text = f"{args.stage} stretch {rep.max_ratio:.6f} at {rep.argmax}\n"
    _emit(text, args.out)
    if args.stage == "h4" and rep.max_ratio > H4_STRETCH_BOUND * (1 + 1e-9):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_svg(args) -> int:
    from .render import svg

    inst = _load(args)
    graph = io.read_graph(args.graph) if args.graph else io.build(inst, args.stage)
    _emit(svg(inst, graph), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import bench, write_report

    lo, hi = args.n
    summary = bench(args.trials, lo, hi, args.seed, args.max_coord, workers=args.workers)
    if args.out:
        write_report(summary, args.out, figures=not args.no_figures)
    if args.format == "json":
        sys.stdout.write(json.dumps({"summary": summary.aggregate(), "warnings": summary.warnings},
                                    indent=2, sort_keys=True) + "\n")
    else:
        for k, v in summary.aggregate().items():
            sys.stdout.write(f"{k}\t{v}\n")
    for w in summary.warnings:
        print(f"WARNING {w}", file=sys.stderr)
    return EXIT_OK if summary.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plane-spanner", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def instance_args(sp):
        sp.add_argument("instance", help=f"instance JSON file, or '{EXAMPLE}' for the bundled 29-point example")
        sp.add_argument("--perturb-seed", type=int, default=None, help="break coordinate ties with a seeded jitter")

    sp = sub.add_parser("gen", help="random instance in general position")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-coord", type=int, default=MAX_COORD)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("build", help="build one stage and print its graph file")
    instance_args(sp)
    sp.add_argument("--stage", choices=io.STAGES, default="h4")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="run every certification check")
    instance_args(sp)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("stretch", help="measured stretch of one stage")
    instance_args(sp)
    sp.add_argument("--stage", choices=io.STAGES, default="h4")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_stretch)

    sp = sub.add_parser("svg", help="render a stage as SVG")
    instance_args(sp)
    sp.add_argument("graph", nargs="?", help="graph JSON file; built from the instance when omitted")
    sp.add_argument("--stage", choices=io.STAGES, default="h4")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_svg)

    sp = sub.add_parser("bench", help="batch certification over random instances")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--n", type=_n_range, default=(5, 200), help="N or LO:HI")
    sp.add_argument("--seed", type=int, default=0, help="seed of the first trial")
    sp.add_argument("--max-coord", type=int, default=MAX_COORD)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="directory for trials.csv, summary.json and PNG figures")
    sp.add_argument("--no-figures", action="store_true")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        where = f" [{exc.stage}]" if exc.stage else ""
        print(f"error{where}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SpannerError as exc:
        where = f" [{exc.stage}]" if exc.stage else ""
        print(f"violation{where}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
