"""Experiment command line: group inspection, bound reports, norm estimation,
scaling sweeps, and coloring searches.

Every command is a pure function of its arguments: seeds are explicit,
floats are serialized with repr (shortest round-trip), JSON keys are sorted,
and CSV column order is fixed, so identical invocations produce identical
bytes. Exit codes: 0 success, 2 validation/parse failure, 3 numerical
non-convergence.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bounds import BoundsReport, bounds_report, m_of_group
from .errors import ConvergenceError, GroupError, ValidationError
from .groups import make_group
from .regular import load_or_compute_spectrum
from .sampling import GaussianSeries, estimate_expected_norm
from .spencer import (abelian_reduction, brute_force, local_search,
                      random_best_of_k)

SWEEP_CSV_HEADER = "group,n,mean,std_error,m,ratio_sqrt_n,ratio_sqrt_nlogn"


def _derived_seed(master: int, index: int) -> int:
    return int(np.random.SeedSequence((master, index)).generate_state(1)[0])


def cmd_group_info(spec: str, seed: int) -> str:
    G = make_group(spec)
    spectrum = load_or_compute_spectrum(G, seed)
    degrees = spectrum.degrees
    logn = np.log(G.n) if G.n > 1 else 0.0
    doc = {
        "class_sizes": G.classes.sizes,
        "degrees": degrees,
        "degrees_below_2log_n": int(sum(d < 2 * logn for d in degrees)),
        "degrees_below_log_n": int(sum(d < logn for d in degrees)),
        "group": G.name,
        "n_classes": len(G.classes.classes),
        "n_linear": int(sum(d == 1 for d in degrees)),
        "order": G.n,
        "sum_degree_squares": int(sum(d * d for d in degrees)),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def cmd_estimate(spec: str, trials: int, method: str, seed: int) -> str:
    G = make_group(spec)
    if method == "direct_real":
        series = GaussianSeries.real_cayley(G)
        spectrum = None
    else:
        series = GaussianSeries.complex_cayley(G)
        spectrum = load_or_compute_spectrum(G, 0) if method == "block" else None
    est = estimate_expected_norm(series, trials, method, seed, spectrum=spectrum)
    return est.to_json() + "\n"


def cmd_bounds(spec: str, seed: int, fmt: str) -> str:
    rep = bounds_report(make_group(spec), seed)
    if fmt == "csv":
        return BoundsReport.CSV_HEADER + "\n" + rep.to_csv_row() + "\n"
    return rep.to_json() + "\n"


def cmd_theorem1_sweep(family: str, sizes, trials: int, seed: int, fmt: str) -> str:
    if family == "cyclic_powers":
        specs = [f"cyclic:{s}" for s in sizes]
    else:
        specs = [f"alt:{s}" for s in sizes]
    built = [make_group(s) for s in specs]
    if any(g.n < 2 for g in built):
        raise GroupError("sweep needs group order >= 2 (log-normalized ratios)")
    built.sort(key=lambda g: g.n)
    rows = []
    for idx, G in enumerate(built):
        spectrum = load_or_compute_spectrum(G, 0)
        series = GaussianSeries.complex_cayley(G)
        est = estimate_expected_norm(
            series, trials, "block", _derived_seed(seed, idx), spectrum=spectrum
        )
        m, _ = m_of_group(spectrum)
        n = G.n
        rows.append(
            {
                "group": G.name,
                "n": n,
                "mean": est.mean,
                "std_error": est.std_error,
                "m": m,
                "ratio_sqrt_n": est.mean / np.sqrt(n),
                "ratio_sqrt_nlogn": est.mean / np.sqrt(n * np.log(n)),
            }
        )
    if fmt == "json":
        out = [
            {k: (v if isinstance(v, (str, int)) else float(v)) for k, v in r.items()}
            for r in rows
        ]
        return json.dumps(out, sort_keys=True, separators=(",", ":")) + "\n"
    lines = [SWEEP_CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r["group"],
                    str(r["n"]),
                    repr(float(r["mean"])),
                    repr(float(r["std_error"])),
                    repr(float(r["m"])),
                    repr(float(r["ratio_sqrt_n"])),
                    repr(float(r["ratio_sqrt_nlogn"])),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def cmd_spencer(spec: str, method: str, budget: int, seed: int) -> str:
    G = make_group(spec)
    if method == "brute":
        col = brute_force(G)
    elif method == "random":
        col = random_best_of_k(G, budget, seed)
    elif method == "local":
        col = local_search(G, random_best_of_k(G, budget, seed), seed)
    else:
        col = abelian_reduction(G, seed, restarts=budget)
    return col.to_json() + "\n"


def _add_spec_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", nargs="?", default=None,
                   help="group spec, e.g. cyclic:4, abelian:2x2x3, alt:5")
    p.add_argument("--group", dest="group_flag", default=None,
                   help="alternative to the positional group spec")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write output to a file")


def _resolve_spec(args) -> str:
    spec = args.group_flag or args.spec
    if spec is None:
        raise GroupError("missing group spec (positional or --group)")
    return spec


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cayleylab",
        description="Gaussian series over finite-group regular representations:"
                    " bounds, sampling, and coloring experiments.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="order, classes, irrep degrees")
    _add_spec_arguments(p)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("estimate", help="Monte Carlo E||X|| estimate")
    _add_spec_arguments(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--method",
                   choices=["direct_real", "direct_complex", "block"],
                   default="block")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("bounds", help="sigma / v / w-certificate / m report")
    _add_spec_arguments(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("theorem1-sweep", help="scaling table across a family")
    p.add_argument("--family", required=True,
                   choices=["cyclic_powers", "alternating_range"])
    p.add_argument("--sizes", required=True,
                   help="comma-separated orders (cyclic) or degrees (alt)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("spencer", help="sign-vector discrepancy search")
    _add_spec_arguments(p)
    p.add_argument("--method", choices=["brute", "random", "local", "abelian"],
                   default="local")
    p.add_argument("--budget", type=int, default=50)
    p.add_argument("--format", choices=["json"], default="json")

    return ap


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "group-info":
            text = cmd_group_info(_resolve_spec(args), args.seed)
        elif args.command == "estimate":
            text = cmd_estimate(_resolve_spec(args), args.trials, args.method,
                                args.seed)
        elif args.command == "bounds":
            text = cmd_bounds(_resolve_spec(args), args.seed, args.format)
        elif args.command == "theorem1-sweep":
            sizes = [int(s) for s in args.sizes.split(",") if s]
            text = cmd_theorem1_sweep(args.family, sizes, args.trials,
                                      args.seed, args.format)
        else:
            text = cmd_spencer(_resolve_spec(args), args.method, args.budget,
                               args.seed)
    except (GroupError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
