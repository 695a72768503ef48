"""Command-line frontend.

Exit codes form a stable contract for CI:

* 0  success / all verifications pass
* 1  a verification experiment failed
* 2  usage, parameter or relator-file errors
* 3  analysis produced structural findings (covering failure, untypable
     component, width excess, centralizer anomaly)
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import full_report
from .engine import compute, load_algebra, save_algebra, thin_core
from .harness import EXPERIMENTS, load_grid, run_all, run_experiment
from .presentations import (
    RelatorSyntaxError,
    build_minus1,
    build_theorem41,
    parse_relators,
)

COMPUTE_SCHEMA = "thinlie.compute/1"


def _add_source_options(sub, with_algebra: bool = False) -> None:
    sub.add_argument("--preset", choices=["theorem41", "minus1"],
                     help="build one of the canonical presentations")
    sub.add_argument("-p", type=int, help="odd prime modulus")
    sub.add_argument("-n", type=int, default=1, help="exponent with q = p^n")
    sub.add_argument("-s", type=int, help="theorem41 parameter s >= 1")
    sub.add_argument("-a", type=int, help="minus1 parameter a >= 3")
    sub.add_argument("--lambda", dest="lam", type=int, default=1,
                     help="type of the last prescribed diamond (minus1)")
    sub.add_argument("--include-odd-k", action="store_true",
                     help="also impose the superfluous odd-k chain relations")
    sub.add_argument("--relators", metavar="FILE",
                     help="read a relator file instead of using a preset")
    if with_algebra:
        sub.add_argument("--algebra", metavar="FILE",
                         help="load a previously saved algebra instead of computing")


def _add_output_options(sub) -> None:
    sub.add_argument("--format", choices=["text", "json"], default="text")
    sub.add_argument("--output", metavar="PATH",
                     help="write the report here instead of standard output")


def _presentation_from_args(args):
    if args.relators:
        with open(args.relators, "r", encoding="utf-8") as fh:
            return parse_relators(fh.read())
    if args.preset == "theorem41":
        if args.p is None or args.s is None:
            raise ValueError("preset theorem41 needs -p and -s (and -n, default 1)")
        return build_theorem41(args.p, args.n, args.s)
    if args.preset == "minus1":
        if args.p is None or args.a is None:
            raise ValueError("preset minus1 needs -p and -a (and -n, default 1)")
        return build_minus1(args.p, args.n, args.a, args.lam,
                            include_odd_k=args.include_odd_k)
    raise ValueError("no presentation source: use --preset or --relators")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_compute(args) -> int:
    pres = _presentation_from_args(args)
    alg = compute(pres, args.max_degree)
    if args.save_algebra:
        save_algebra(alg, args.save_algebra)
    dims = list(alg.dims())
    if args.format == "json":
        payload = {
            "schema": COMPUTE_SCHEMA,
            "p": alg.p,
            "max_degree": alg.max_degree,
            "provenance": pres.provenance,
            "dims": dims,
        }
        _emit(json.dumps(payload, sort_keys=True) + "\n", args.output)
    else:
        _emit(
            f"p = {alg.p}, degrees 1..{alg.max_degree}\n"
            "dims: " + ",".join(map(str, dims)) + "\n",
            args.output,
        )
    return 0


def _cmd_analyze(args) -> int:
    if getattr(args, "algebra", None):
        alg = load_algebra(args.algebra)
    else:
        if args.max_degree is None:
            raise ValueError("--max-degree is required unless --algebra is given")
        pres = _presentation_from_args(args)
        alg = compute(pres, args.max_degree)
    rb = args.reliable_bound
    core = thin_core(alg, rb)
    report = full_report(core, line_cap=args.line_cap)
    if args.format == "json":
        _emit(report.to_json() + "\n", args.output)
    else:
        _emit(report.to_text(), args.output)
    return 3 if report.has_findings() else 0


def _cmd_verify(args) -> int:
    if args.experiment == "all":
        results = run_all(load_grid())
    else:
        params = {"p": args.p, "n": args.n, "max_degree": args.max_degree}
        if args.experiment in ("theorem41", "identities", "chains",
                               "second-diamond", "determinism"):
            if args.p is None or args.s is None:
                raise ValueError(f"experiment {args.experiment} needs -p and -s")
            params["s"] = args.s
        elif args.experiment in ("ldies", "superfluity"):
            if args.p is None or args.a is None:
                raise ValueError(f"experiment {args.experiment} needs -p and -a")
            params["a"] = args.a
        if args.max_degree is None:
            raise ValueError("--max-degree is required")
        results = [run_experiment(args.experiment, **params)]
    if args.format == "json":
        payload = [r.to_jsonable(include_runtime=args.timings) for r in results]
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.output)
    else:
        blocks = [r.to_text() for r in results]
        passed = sum(r.verdict for r in results)
        blocks.append(f"{passed}/{len(results)} experiments passed")
        _emit("\n".join(blocks) + "\n", args.output)
    return 0 if all(r.verdict for r in results) else 1


def _cmd_free_dims(args) -> int:
    from .fields import PrimeField
    from .presentations import Presentation

    alg = compute(Presentation(PrimeField(args.p), ()), args.max_degree)
    dims = list(alg.dims())
    if args.format == "json":
        _emit(json.dumps({"p": args.p, "dims": dims}, sort_keys=True) + "\n",
              args.output)
    else:
        _emit(",".join(map(str, dims)) + "\n", args.output)
    return 0


def _cmd_binom(args) -> int:
    from .fields import PrimeField, lucas_binomial

    value = lucas_binomial(args.a, args.b, PrimeField(args.p))
    _emit(f"{value.value}\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thin-lie",
        description="Graded Lie algebras over F_p: construction, thin-core "
                    "analysis and verification experiments.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("compute", help="build an algebra and print its dimensions")
    _add_source_options(sub)
    sub.add_argument("--max-degree", type=int, required=True)
    sub.add_argument("--save-algebra", metavar="PATH",
                     help="also save the full algebra as JSON")
    _add_output_options(sub)
    sub.set_defaults(fn=_cmd_compute)

    sub = subs.add_parser("analyze",
                          help="compute, reduce to the centerless core and report")
    _add_source_options(sub, with_algebra=True)
    sub.add_argument("--max-degree", type=int)
    sub.add_argument("--reliable-bound", type=int, default=None,
                     help="trusted degree range (default: max degree minus 2)")
    sub.add_argument("--line-cap", type=int, default=97,
                     help="largest p for exhaustive line enumeration")
    _add_output_options(sub)
    sub.set_defaults(fn=_cmd_analyze)

    sub = subs.add_parser("verify", help="run named experiments or the whole grid")
    sub.add_argument("experiment", choices=sorted(EXPERIMENTS) + ["all"])
    sub.add_argument("-p", type=int)
    sub.add_argument("-n", type=int, default=1)
    sub.add_argument("-s", type=int)
    sub.add_argument("-a", type=int)
    sub.add_argument("--max-degree", type=int)
    sub.add_argument("--timings", action="store_true",
                     help="include wall-clock runtimes in JSON output")
    _add_output_options(sub)
    sub.set_defaults(fn=_cmd_verify)

    sub = subs.add_parser("free-dims",
                          help="dimensions of the relator-free algebra")
    sub.add_argument("-p", type=int, required=True)
    sub.add_argument("--max-degree", type=int, required=True)
    _add_output_options(sub)
    sub.set_defaults(fn=_cmd_free_dims)

    sub = subs.add_parser("binom", help="binomial coefficient mod p")
    sub.add_argument("a", type=int)
    sub.add_argument("b", type=int)
    sub.add_argument("-p", type=int, required=True)
    _add_output_options(sub)
    sub.set_defaults(fn=_cmd_binom)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (RelatorSyntaxError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
