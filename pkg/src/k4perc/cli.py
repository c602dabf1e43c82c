"""Command-line front end: ``k4perc <command> [options]``.

Exit codes: 0 success, 1 ``percolate`` answered no, 2 usage error,
3 I/O error, 4 resource guard. ``--threads`` defaults to ``$K4PERC_THREADS``
(or 1) and never changes output bytes.
"""

import argparse
import json
import os
import sys

from . import __version__
from .asymptotics import proof_constants
from .bootstrap import k4_closure_naive, percolates
from .clique_process import closure_from_state, k4_closure_fast, run_clique_process
from .enumeration import census_table, census_to_json, enumerate_census, three_core_records
from .experiments import (ExperimentConfig, largest_clique_scan, percolation_fractions,
                          percolation_probability_scan, rows_to_csv, rows_to_json,
                          seed_edge_census)
from .graph import GraphError, ResourceGuardError, read_edge_list, sample_gnp, write_edge_list
from .structure import core_decomposition

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_IO, EXIT_GUARD = 0, 1, 2, 3, 4
THREADS_ENV = "K4PERC_THREADS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


class _InputError(Exception):
    pass


def _read(args):
    try:
        return read_edge_list(args.input, strict=args.strict)
    except (GraphError, ValueError) as exc:
        raise _InputError(f"{args.input}: {exc}") from exc


def _default_threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _alphas(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _common(suppress):
    """Global flags; subcommands repeat them with suppressed defaults so a flag
    given before the command is not reset by the subparser."""
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=d(0), help="master seed (64-bit)")
    common.add_argument("--threads", type=int, default=d(None),
                        help=f"worker count (default ${THREADS_ENV} or 1)")
    common.add_argument("--out", default=d(None), help="output path (default stdout)")
    common.add_argument("--format", choices=["json", "csv"], default=d(None))
    common.add_argument("--strict", action=argparse.BooleanOptionalAction, default=d(True),
                        help="reject duplicate edges when reading edge lists")
    return common


def build_parser():
    common = _common(suppress=True)
    ap = _Parser(prog="k4perc", description=__doc__.splitlines()[0],
                 parents=[_common(suppress=False)])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("gnp", parents=[common], help="sample G(n, p) as an edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)

    p = sub.add_parser("closure", parents=[common], help="K4-closure of an edge list")
    p.add_argument("input")
    p.add_argument("--algo", choices=["naive", "fast"], default="fast")
    p.add_argument("--trace", default=None, help="write the merge trace (JSON) here")

    p = sub.add_parser("percolate", parents=[common], help="exit 0 iff the graph percolates")
    p.add_argument("input")

    p = sub.add_parser("core", parents=[common], help="seed-edge / 3-core decomposition")
    p.add_argument("input")

    p = sub.add_parser("enumerate", parents=[common], help="census of irreducible graphs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell-max", type=int, default=0)
    p.add_argument("--table", action="store_true", help="text table instead of JSON")

    p = sub.add_parser("constants", parents=[common], help="numeric constants report")
    p.add_argument("--k", type=int, default=8)

    for name, helptext in (("scan-threshold", "percolation fraction across alpha"),
                           ("scan-clique", "largest percolating cluster / log n")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--alpha", type=_alphas, required=True, help="comma-separated grid")
        p.add_argument("--trials", type=int, default=10)
        p.add_argument("--timing", action="store_true", help="fill runtime_ms")
        p.add_argument("--summary", default=None, help="write summary JSON here")

    p = sub.add_parser("seed-census", parents=[common], help="count seed edges")
    p.add_argument("input")
    p.add_argument("--cap", type=int, default=0)
    return ap


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scan_cfg(args, threads):
    return ExperimentConfig(n=args.n, alphas=args.alpha, trials=args.trials,
                            master_seed=args.seed, threads=threads, timing=args.timing)


def _rows_out(args, rows):
    if args.format == "json":
        return rows_to_json(rows, indent=1) + "\n"
    return rows_to_csv(rows)


def _dispatch(args):
    threads = args.threads if args.threads is not None else _default_threads()
    if threads < 1:
        raise _UsageError("--threads must be at least 1")
    cmd = args.command

    if cmd == "gnp":
        g = sample_gnp(args.n, args.p, args.seed)
        if args.out:
            write_edge_list(g, args.out)
        else:
            write_edge_list(g, sys.stdout)
        return EXIT_OK

    if cmd == "closure":
        g = _read(args)
        if args.algo == "naive":
            h = k4_closure_naive(g)
        elif args.trace:
            st = run_clique_process(g)
            with open(args.trace, "w") as fh:
                fh.write(st.trace_json(indent=1) + "\n")
            h = closure_from_state(st)
        else:
            h = k4_closure_fast(g)
        if args.out:
            write_edge_list(h, args.out)
        else:
            write_edge_list(h, sys.stdout)
        return EXIT_OK

    if cmd == "percolate":
        g = _read(args)
        ok = percolates(g)
        _emit(args, "true\n" if ok else "false\n")
        return EXIT_OK if ok else EXIT_NO

    if cmd == "core":
        g = _read(args)
        _emit(args, core_decomposition(g).to_json(indent=1) + "\n")
        return EXIT_OK

    if cmd == "enumerate":
        recs = enumerate_census(args.k, args.ell_max, threads=threads)
        if args.table:
            _emit(args, census_table(recs))
        else:
            payload = {
                "k": args.k,
                "ell_max": args.ell_max,
                "records": json.loads(census_to_json(recs)),
                "three_core_classes": sum(r.unlabeled_count for r in three_core_records(recs)),
            }
            _emit(args, json.dumps(payload, indent=1) + "\n")
        return EXIT_OK

    if cmd == "constants":
        rep = proof_constants(args.k)
        _emit(args, rep.to_json(indent=1) + "\n")
        return EXIT_OK

    if cmd == "scan-threshold":
        cfg = _scan_cfg(args, threads)
        rows = percolation_probability_scan(cfg)
        _emit(args, _rows_out(args, rows))
        if args.summary:
            fr = percolation_fractions(rows)
            summ = [{"alpha": a, "fraction": f, "trials": t} for a, (f, t) in fr.items()]
            with open(args.summary, "w") as fh:
                fh.write(json.dumps(summ, indent=1) + "\n")
        return EXIT_OK

    if cmd == "scan-clique":
        cfg = _scan_cfg(args, threads)
        summary, rows = largest_clique_scan(cfg)
        _emit(args, _rows_out(args, rows))
        if args.summary:
            with open(args.summary, "w") as fh:
                fh.write(json.dumps(summary, indent=1) + "\n")
        return EXIT_OK

    if cmd == "seed-census":
        g = _read(args)
        _emit(args, f"{seed_edge_census(g, args.cap)}\n")
        return EXIT_OK

    raise _UsageError("a command is required")


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return _dispatch(args)
    except _UsageError as exc:
        print(f"k4perc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"k4perc: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, _InputError) as exc:
        print(f"k4perc: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GraphError, ValueError) as exc:
        print(f"k4perc: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
