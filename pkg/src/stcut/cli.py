"""Command-line front end.

    stcut bound    --config sparse.json --out bound.csv
    stcut simulate --config sparse.json --seed 7 --samples 10000 [--global]
    stcut compare  --config sparse.json --seed 7 [--global]
    stcut oracle   --max-n 10
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

from . import __version__
from .bound import CutBound, format_rational
from .config import PRESETS, EnsembleSpec, SpecError
from .ensemble import MODES, EnsembleError, RejectionCapExceeded
from .experiment import (compare, compare_tails, run_global_experiment,
                         run_paired_experiment, run_st_experiment)
from .oracle import SUITES, run_suite


class CommandError(Exception):
    pass


def _load_spec(args) -> EnsembleSpec:
    if args.config is None:
        raise CommandError("--config is required")
    if args.config in PRESETS and not Path(args.config).exists():
        spec = PRESETS[args.config]
    else:
        try:
            spec = EnsembleSpec.load(args.config)
        except OSError as exc:
            raise CommandError(f"cannot read config {args.config}: {exc}") from None
    data = spec.to_dict()
    for key in ("samples", "seed", "mode", "delta_max"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    return EnsembleSpec.from_dict(data)


def _require_seed(spec: EnsembleSpec) -> int:
    if spec.seed is None:
        raise CommandError("randomized commands need an explicit --seed (or a seed in the config)")
    return spec.seed


def _writer(handle) -> csv.writer:
    return csv.writer(handle, lineterminator="\n")


def _metadata(handle, **items) -> None:
    for key, value in items.items():
        handle.write(f"# {key}={value}\n")


def _num(x: float) -> str:
    return format(x, ".15g")


@contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
        return
    buf = io.StringIO()
    yield buf
    Path(path).write_text(buf.getvalue())


def cmd_bound(args) -> int:
    spec = _load_spec(args)
    dd, mu = spec.degree_distribution(), spec.weight_distribution()
    curve = CutBound(dd, mu).tail_lower_bound(spec.delta_max)
    with _output(args.out) as out:
        _metadata(out, n=dd.n, m=dd.num_edges(), q=mu.q, version=__version__)
        w = _writer(out)
        w.writerow(["delta", "raw_bound", "clamped_bound"])
        for e in curve.entries:
            w.writerow([e.delta, format_rational(e.raw_bound), format_rational(e.clamped_bound)])
    return 0


def _tail_rows(writer, tail) -> None:
    writer.writerow(["delta", "count_geq", "estimate", "stderr", "num_samples", "seed", "mode"])
    for r in tail.rows:
        writer.writerow([r.delta, r.count_geq, _num(r.estimate), _num(r.stderr),
                         tail.num_samples, tail.seed, tail.mode])


def cmd_simulate(args) -> int:
    spec = _load_spec(args)
    seed = _require_seed(spec)
    dd, mu = spec.degree_distribution(), spec.weight_distribution()
    run = run_global_experiment if args.global_cut else run_st_experiment
    tail = run(dd, mu, spec.samples, seed, spec.mode, spec.delta_max, workers=args.workers)
    with _output(args.out) as out:
        _metadata(out, n=dd.n, m=dd.num_edges(), seed=seed, mode=spec.mode,
                  cut="global" if args.global_cut else "st", version=__version__)
        _tail_rows(_writer(out), tail)
    return 0


def cmd_compare(args) -> int:
    spec = _load_spec(args)
    seed = _require_seed(spec)
    dd, mu = spec.degree_distribution(), spec.weight_distribution()
    meta = dict(n=dd.n, m=dd.num_edges(), seed=seed, mode=spec.mode,
                samples=spec.samples, version=__version__)
    if args.global_cut:
        st, gl = run_paired_experiment(dd, mu, spec.samples, seed, spec.mode,
                                       spec.delta_max, workers=args.workers)
        rows = compare_tails(st, gl)
        with _output(args.out) as out:
            _metadata(out, **meta)
            w = _writer(out)
            w.writerow(["delta", "st_estimate", "global_estimate", "violation"])
            for r in rows:
                w.writerow([r.delta, _num(r.st_estimate), _num(r.global_estimate), int(r.violation)])
    else:
        curve = CutBound(dd, mu).tail_lower_bound(spec.delta_max)
        tail = run_st_experiment(dd, mu, spec.samples, seed, spec.mode,
                                 spec.delta_max, workers=args.workers)
        rows = compare(curve, tail)
        with _output(args.out) as out:
            _metadata(out, **meta)
            w = _writer(out)
            w.writerow(["delta", "raw_bound", "clamped_bound", "estimate", "stderr",
                        "bound_minus_estimate", "violation"])
            for r in rows:
                w.writerow([r.delta, format_rational(r.raw_bound), format_rational(r.clamped_bound),
                            _num(r.estimate), _num(r.stderr), _num(r.bound_minus_estimate),
                            int(r.violation)])
    bad = [r.delta for r in rows if r.violation]
    if bad:
        print(f"violations at delta = {', '.join(map(str, bad))}", file=sys.stderr)
        return 1
    return 0


def cmd_oracle(args) -> int:
    names = list(SUITES) if args.checks is None else [c for c in args.checks.split(",") if c]
    results = run_suite(names, max_n=args.max_n)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stcut", description="Minimum s-t cut bounds and simulations for random graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, randomized):
        p.add_argument("--config", help="ensemble JSON file, or a preset: "
                       + ", ".join(PRESETS))
        p.add_argument("--out", help="output CSV path (default stdout)")
        p.add_argument("--delta-max", type=int, dest="delta_max")
        if randomized:
            p.add_argument("--samples", type=int)
            p.add_argument("--seed", type=int)
            p.add_argument("--mode", choices=MODES)
            p.add_argument("--workers", type=int, default=1)
            p.add_argument("--global", action="store_true", dest="global_cut",
                           help="use the global minimum cut")

    common(sub.add_parser("bound", help="analytic lower bound on Pr[lambda >= delta]"), False)
    common(sub.add_parser("simulate", help="Monte Carlo tail estimate"), True)
    common(sub.add_parser("compare", help="bound versus simulation"), True)
    p = sub.add_parser("oracle", help="exhaustive small-instance checks")
    p.add_argument("--max-n", type=int, default=10, dest="max_n")
    p.add_argument("--checks", help="comma-separated subset of: " + ", ".join(SUITES))
    return parser


COMMANDS = {"bound": cmd_bound, "simulate": cmd_simulate,
            "compare": cmd_compare, "oracle": cmd_oracle}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CommandError, SpecError, EnsembleError, RejectionCapExceeded, ValueError) as exc:
        print(f"stcut {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
