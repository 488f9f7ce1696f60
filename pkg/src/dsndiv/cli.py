"""Command line: ``dsndiv {compute,estimate,layout,study}``.

Exit codes: 0 success, 2 invalid input, 1 computation or output failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from dsndiv.core import (
    dsn,
    hill_number,
    leinster_diversity,
    network_density,
    network_power_series,
    parse_q,
)
from dsndiv.errors import DSNError, InputUnreadable, IoFailure, ValidationError
from dsndiv.estimation.estimate import CORRELATION_KINDS, estimate_weights
from dsndiv.io import load_population, load_study, write_json
from dsndiv.layout import make_layout, render_svg
from dsndiv.similarity import KERNELS
from dsndiv.study import (
    DEFAULT_Q_GRID,
    MODELS,
    comparison_table,
    format_q,
    generate_design,
    synthesize_preferences,
)

log = logging.getLogger("dsndiv")

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_INPUT = 2


def _q_list(text: str) -> list[float]:
    try:
        return [parse_q(part) for part in text.split(",") if part.strip()]
    except (ValueError, ValidationError) as exc:
        raise argparse.ArgumentTypeError(f"invalid q list {text!r}: {exc}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _power_series(text: str) -> tuple[int, float]:
    try:
        n, rho = text.split(",")
        return int(n), float(rho)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,RHO (e.g. 3,0.5), got {text!r}") from None


def _g(v: float) -> str:
    return "nan" if math.isnan(v) else f"{v:.6g}"


def _print_rows(header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    print("\t".join(header))
    for row in rows:
        print("\t".join(row))


def cmd_compute(args: argparse.Namespace) -> int:
    pop = load_population(args.population, args.kernel)
    if args.power_series:
        n_terms, rho = args.power_series
        pop = pop.with_E(network_power_series(pop.E, n_terms, rho, clamp=True))
    density = network_density(pop.E)
    header = ("q", "dsn", "hill", "leinster", "network_density")
    rows, full = [], []
    for q in args.q:
        values = (dsn(pop, q), hill_number(pop.p, q), leinster_diversity(pop.p, pop.Z, q), density)
        rows.append([format_q(q)] + [_g(v) for v in values])
        full.append([format_q(q)] + [repr(v) for v in values])
    _print_rows(header, rows)
    if args.out:
        _write_text(args.out, "\n".join(",".join(r) for r in [list(header)] + full) + "\n")
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace) -> int:
    ds, settings = load_study(args.study, args.kernel)
    kind = args.kind or settings["kind"]
    starts = args.starts if args.starts is not None else settings["starts"]
    seed = args.seed if args.seed is not None else settings["seed"]
    result = estimate_weights(ds, kind, starts, seed)
    print(f"kind\t{kind}")
    print(f"q\t{format_q(ds.q)}")
    print("w_star\t" + "\t".join(_g(v) for v in result.w_star))
    print(f"objective\t{_g(result.objective_value)}")
    print(f"starts\t{result.starts_used}")
    _print_rows(
        ("start", "initial", "converged", "objective"),
        [
            [
                str(i),
                ",".join(_g(v) for v in rec.initial),
                "failed" if rec.converged is None else ",".join(_g(v) for v in rec.converged),
                rec.error or _g(rec.objective),
            ]
            for i, rec in enumerate(result.per_start_log)
        ],
    )
    if args.out:
        doc = result.to_dict()
        doc["q"] = "inf" if math.isinf(ds.q) else ds.q
        write_json(doc, args.out)
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    pop = load_population(args.population, args.kernel)
    layout = make_layout(pop, args.scale)
    render_svg(layout, args.out)
    _print_rows(
        ("category", "x", "y", "diameter"),
        [[layout.labels[i], _g(x), _g(y), _g(d)] for i, ((x, y), d) in enumerate(zip(layout.coords, layout.diameters))],
    )
    print(f"eigenvalues\t{_g(layout.eigenvalues_used[0])}\t{_g(layout.eigenvalues_used[1])}")
    if args.figure:
        from dsndiv.plotting import plot_layout

        plot_layout(layout, args.figure, title=pop.label or None)
    return EXIT_OK


def cmd_study(args: argparse.Namespace) -> int:
    design = generate_design()
    ys = synthesize_preferences(design, args.model, args.weights, args.q, args.noise, args.seed, args.kernel or "exp")
    table = comparison_table(design, ys, args.weights, args.q_grid, kernel=args.kernel or "exp")
    _print_rows(
        ("index_name", "q", "pearson", "spearman", "mic"),
        [[r.index_name, format_q(r.q), _g(r.pearson), _g(r.spearman), _g(r.mic)] for r in table.rows],
    )
    if args.out:
        table.write_csv(args.out)
    if args.figure:
        from dsndiv.plotting import plot_comparison

        plot_comparison(table, args.figure)
    return EXIT_OK


def _write_text(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dsndiv", description="Similarity- and network-sensitive diversity.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="DSN, Hill, similarity-only diversity and density per q")
    p.add_argument("population", help="population JSON file")
    p.add_argument("--q", type=_q_list, default=[0.0, 1.0, 2.0, math.inf], help="comma list, e.g. 0,1,2,inf")
    p.add_argument("--power-series", type=_power_series, metavar="N,RHO",
                   help="replace E by its discounted series, truncated to [0, 1]")
    p.add_argument("--kernel", choices=KERNELS)
    p.add_argument("--out", help="also write full-precision CSV here")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("estimate", help="estimate attribute weights from a study file")
    p.add_argument("study", help="study JSON file")
    p.add_argument("--kind", choices=CORRELATION_KINDS)
    p.add_argument("--starts", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--kernel", choices=KERNELS)
    p.add_argument("--out", help="write the result as JSON")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("layout", help="render the 2-D layout of a population as SVG")
    p.add_argument("population")
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--scale", type=float, default=0.5, help="diameter of a category with p=1")
    p.add_argument("--kernel", choices=KERNELS)
    p.add_argument("--figure", help="also render a matplotlib figure (png/pdf/svg)")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("study", help="synthetic 56-organization correlation comparison")
    p.add_argument("--model", choices=MODELS, default="dsn_linear")
    p.add_argument("--weights", type=_float_list, default=[0.5, 0.5])
    p.add_argument("--q", type=parse_q, default=2.0, help="order used to generate preferences")
    p.add_argument("--q-grid", type=_q_list, default=list(DEFAULT_Q_GRID))
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kernel", choices=KERNELS)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--figure", help="bar chart of the table (png/pdf/svg)")
    p.set_defaults(func=cmd_study)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValidationError, InputUnreadable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DSNError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
