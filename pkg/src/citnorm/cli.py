"""Command-line interface.

One binary with subcommands covering the full pipeline: simulate or ingest a
corpus, compute baselines, score units, correlate indicators, export
trajectories and age-correlation matrices, plot scatter figures, and print
rankings. Exit codes: 0 success, 1 validation error, 2 I/O error. All
randomness is seed-controlled through the simulation config; no environment
variables are consulted.
"""
from __future__ import annotations

import argparse
import sys

from . import baseline, corpus, indicators, report, simulate, stats
from .errors import ValidationError


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # treat bad usage as a validation error
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="citnorm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("baselines", help="compute the expected-citations table")
    p.add_argument("--corpus", required=True, help="publication JSONL file")
    p.add_argument("--census", required=True, type=int, help="census year")
    p.add_argument("--first-year", type=int, default=None,
                   help="earliest admissible publication year (default: min in file)")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("score", help="score units (CPP/FCSm, MNCS1, MNCS2)")
    p.add_argument("--corpus", required=True)
    p.add_argument("--census", required=True, type=int)
    p.add_argument("--first-year", type=int, default=None)
    p.add_argument("--units", required=True,
                   help="'all' or a comma-separated list of unit ids")
    p.add_argument("--baselines", default=None,
                   help="optional baseline CSV; default: compute from the corpus")
    p.add_argument("--out", required=True)

    p = sub.add_parser("correlate", help="indicator cross-correlations over a scores CSV")
    p.add_argument("--scores", required=True)
    p.add_argument("--min-pubs", type=int, default=0,
                   help="ignore units with fewer total publications")
    p.add_argument("--out", required=True)

    p = sub.add_parser("trajectory", help="mean cumulative citations per year for a field cohort")
    p.add_argument("--corpus", required=True)
    p.add_argument("--census", type=int, default=None,
                   help="census year (default: inferred from the file)")
    p.add_argument("--first-year", type=int, default=None)
    p.add_argument("--field", required=True)
    p.add_argument("--pub-year", required=True, type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("age-corr", help="cross-year citation-count correlation matrix")
    p.add_argument("--corpus", required=True)
    p.add_argument("--census", type=int, default=None,
                   help="census year (default: inferred from the file)")
    p.add_argument("--first-year", type=int, default=None)
    p.add_argument("--field", required=True)
    p.add_argument("--pub-year", required=True, type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("simulate", help="generate a synthetic corpus")
    p.add_argument("--config", required=True, help="simulation config JSON")
    p.add_argument("--out", required=True, help="output corpus JSONL")

    p = sub.add_parser("plot", help="scatter plot of two indicators as SVG")
    p.add_argument("--scores", required=True)
    p.add_argument("--x", required=True, choices=indicators.INDICATOR_NAMES)
    p.add_argument("--y", required=True, choices=indicators.INDICATOR_NAMES)
    p.add_argument("--threshold", type=int, default=50,
                   help="red-square cutoff on publications with a full citation year")
    p.add_argument("--axis-max", type=float, default=None,
                   help="cap both axes; units beyond it are omitted and tallied")
    p.add_argument("--out", required=True)

    p = sub.add_parser("rank", help="print the top units by one indicator as CSV")
    p.add_argument("--scores", required=True)
    p.add_argument("--by", required=True, choices=indicators.INDICATOR_NAMES)
    p.add_argument("--top", required=True, type=int)

    return parser


def _load_corpus(args) -> corpus.Corpus:
    census = args.census
    if census is None:
        census = corpus.infer_census_year(args.corpus)
    return corpus.parse_corpus(args.corpus, census_year=census,
                               first_year=args.first_year)


def _cohort(args) -> list[corpus.Publication]:
    data = _load_corpus(args)
    return [p for p in data.publications
            if args.field in p.field_ids and p.pub_year == args.pub_year]


def _run(args) -> None:
    if args.command == "baselines":
        table = baseline.compute_baselines(_load_corpus(args))
        baseline.write_baselines(table, args.out)

    elif args.command == "score":
        data = _load_corpus(args)
        if args.baselines is not None:
            table = baseline.read_baselines(args.baselines, census_year=args.census)
        else:
            table = baseline.compute_baselines(data)
        unit_ids = None if args.units == "all" else [
            u for u in args.units.split(",") if u
        ]
        if unit_ids is not None and not unit_ids:
            raise ValidationError("--units got an empty list")
        scores = indicators.score_units(data, table, unit_ids)
        indicators.write_scores(scores, args.out)

    elif args.command == "correlate":
        scores = indicators.read_scores(args.scores)
        report_ = stats.correlate_indicators(scores, min_pubs=args.min_pubs)
        stats.write_correlation_report(report_, args.out)

    elif args.command == "trajectory":
        traj = stats.trajectory(_cohort(args), args.field, args.pub_year)
        stats.write_trajectory(traj, args.out)

    elif args.command == "age-corr":
        matrix = stats.age_correlation_matrix(_cohort(args))
        stats.write_age_matrix(matrix, args.out)

    elif args.command == "simulate":
        config = simulate.load_config(args.config)
        corpus.write_corpus(simulate.generate_corpus(config), args.out)

    elif args.command == "plot":
        scores = indicators.read_scores(args.scores)
        spec = report.ScatterSpec(
            x_indicator=args.x, y_indicator=args.y,
            threshold=args.threshold, axis_max=args.axis_max, out_path=args.out,
        )
        svg = report.render_scatter(scores, spec)
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(svg)

    elif args.command == "rank":
        scores = indicators.read_scores(args.scores)
        sys.stdout.write(report.render_ranking(scores, by=args.by, top=args.top))

    else:  # pragma: no cover - argparse enforces the choices
        raise ValidationError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _run(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
