"""``graphsep`` command line.

Exit codes: 0 success (``check``: separable), 1 entangled, 2 PPT
inconclusive, 64 usage error, 65 bad input data, 66 missing input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__, lgr
from .classify import classify, find_generator
from .constructions import bowtie, m_union
from .errors import GraphSepError, ParseError
from .graph import gtpt
from .properties import PropertyConfig, ledger, run_all
from .quantum import density, werner_graph
from .report import analyze

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit JSON on stdout")
    p.add_argument("--exact", action="store_true", help="decide PSD with exact integer arithmetic only")
    p.add_argument("--seed", type=int, default=42, help="seed for randomised commands")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="graphsep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"graphsep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="full separability report for a graph file")
    p.add_argument("path")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = sub.add_parser("gtpt", parents=[common], help="graph partial transpose")
    p.add_argument("path")
    p.add_argument("-o", "--out")

    p = sub.add_parser("product", parents=[common], help="bowtie product of an inner graph and a scaffold")
    p.add_argument("g_path")
    p.add_argument("h_path")
    p.add_argument("-o", "--out")
    p.add_argument("--permissive", action="store_true", help="only require empty diagonal blocks in the scaffold")

    p = sub.add_parser("union", parents=[common], help="m disjoint copies, one per layer")
    p.add_argument("g_path")
    p.add_argument("m", type=int)
    p.add_argument("-o", "--out")

    p = sub.add_parser("werner", parents=[common], help="graph of the antisymmetric Werner state")
    p.add_argument("d", type=int)
    p.add_argument("-o", "--out")

    p = sub.add_parser("classify", parents=[common], help="E/S/ES class over all vertex labellings")
    p.add_argument("path")
    p.add_argument("kind", nargs="?", default="laplacian", choices=("laplacian", "signless"))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-exhaustive", type=int, default=8)
    p.add_argument("--samples", type=int, help="sample this many labellings when the graph exceeds the guard")

    p = sub.add_parser("generator", parents=[common], help="relabelling that turns a separable state entangled")
    p.add_argument("path")
    p.add_argument("--kind", default="laplacian", choices=("laplacian", "signless"))

    p = sub.add_parser("density", parents=[common], help="print the density matrix")
    p.add_argument("path")
    p.add_argument("--kind", default="laplacian", choices=("laplacian", "signless"))
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("-o", "--out")

    p = sub.add_parser("selftest", parents=[common], help="run the property suite")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--ppt-samples", type=int, default=10_000)
    p.add_argument("--only", action="append", help="run just this property (repeatable)")
    return parser


def _emit(text: str, out=None):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _graph_json(g) -> str:
    return json.dumps({"m": g.m, "n": g.n, "edges": [list(e) for e in g.sorted_edges()]}) + "\n"


def _write_graph(args, g) -> int:
    if args.json:
        _emit(_graph_json(g), args.out)
    else:
        _emit(lgr.dumps(g), args.out)
    return 0


def _mode(args) -> str:
    return "exact" if args.exact else "auto"


def cmd_check(args) -> int:
    report = analyze(lgr.load(args.path), mode=_mode(args), timing=args.timing)
    sys.stdout.write(report.to_json() if args.json else report.render())
    return report.exit_code()


def cmd_gtpt(args) -> int:
    return _write_graph(args, gtpt(lgr.load(args.path)))


def cmd_product(args) -> int:
    g, h = lgr.load(args.g_path), lgr.load(args.h_path)
    return _write_graph(args, bowtie(g, h, strict=not args.permissive).graph)


def cmd_union(args) -> int:
    return _write_graph(args, m_union(lgr.load(args.g_path), args.m))


def cmd_werner(args) -> int:
    return _write_graph(args, werner_graph(args.d))


def cmd_classify(args) -> int:
    verdict = classify(
        lgr.load(args.path), args.kind, mode=_mode(args), workers=args.workers,
        max_exhaustive=args.max_exhaustive, samples=args.samples, seed=args.seed,
    )
    if args.json:
        sys.stdout.write(json.dumps({
            "class": verdict.graph_class.value,
            "separable": verdict.num_separable,
            "entangled": verdict.num_entangled,
            "inconclusive": verdict.num_inconclusive,
            "total": verdict.total_labellings,
            "conclusive": verdict.conclusive,
            "sampled": verdict.sampled,
        }) + "\n")
    else:
        sys.stdout.write(verdict.summary() + "\n")
    return 0


def cmd_generator(args) -> int:
    cert = find_generator(lgr.load(args.path), args.kind, mode=_mode(args))
    if args.json:
        payload = None if cert is None else {
            "permutation": list(cert.permutation),
            "source": [list(e) for e in cert.source.sorted_edges()],
            "target": [list(e) for e in cert.target.sorted_edges()],
            "source_verdict": cert.source_verdict.classification.value,
            "target_verdict": cert.target_verdict.classification.value,
        }
        sys.stdout.write(json.dumps({"generator": payload}) + "\n")
    elif cert is None:
        sys.stdout.write("none\n")
    else:
        sys.stdout.write(f"permutation {' '.join(map(str, cert.permutation))}\n")
        sys.stdout.write(lgr.dumps(cert.target))
    return 0


def cmd_density(args) -> int:
    rho = density(lgr.load(args.path), args.kind)
    if args.format == "json" or args.json:
        payload = {
            "m": rho.m, "n": rho.n, "kind": args.kind,
            "matrix": [[repr(x) for x in row] for row in rho.matrix.tolist()],
            "numerator": rho.numerator.tolist(), "denominator": rho.denominator,
        }
        _emit(json.dumps(payload) + "\n", args.out)
    else:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows([repr(x) for x in row] for row in rho.matrix.tolist())
        _emit(buf.getvalue(), args.out)
    return 0


def cmd_selftest(args) -> int:
    cfg = PropertyConfig(seed=args.seed, trials=args.trials, ppt_samples=args.ppt_samples)
    results = run_all(cfg, only=args.only)
    if args.json:
        sys.stdout.write(json.dumps(ledger(results), indent=2) + "\n")
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            sys.stdout.write(f"{status} {r.name} ({r.trials} cases, {r.seconds:.2f}s) {r.detail}\n")
            if r.counterexample:
                sys.stdout.write(r.counterexample)
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "check": cmd_check,
    "gtpt": cmd_gtpt,
    "product": cmd_product,
    "union": cmd_union,
    "werner": cmd_werner,
    "classify": cmd_classify,
    "generator": cmd_generator,
    "density": cmd_density,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EX_USAGE
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"graphsep: {exc}\n")
        return EX_NOINPUT
    except ParseError as exc:
        sys.stderr.write(f"graphsep: parse error: {exc}\n")
        return EX_DATAERR
    except GraphSepError as exc:
        sys.stderr.write(f"graphsep: {type(exc).__name__}: {exc}\n")
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
