"""Command-line front end.

Subcommands: ``returns`` (monthly mean-return tables), ``correlate``
(price and return correlation matrices), ``decompose`` (per-currency
seasonal decomposition with the consensus sign column), ``report`` (all of
the above, optionally writing chart CSVs), and ``synth`` (synthetic
fixture generation).

Exit codes: 0 success, 1 usage error, 2 data validation error,
3 numeric failure on degenerate input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decompose import ADDITIVE, MEAN, MEDIAN, MULTIPLICATIVE, decompose
from .errors import DataError, GoldseasonError, NumericError
from .report import (
    FORMAT_JSON,
    FORMAT_MARKDOWN,
    ReportConfig,
    analyze_panel,
    classify_month_signs,
    decomposition_payload,
    emit_chart_data,
    markdown_correlation_section,
    markdown_decomposition_section,
    markdown_returns_section,
    matrix_payload,
    render_json,
    render_markdown,
    summary_payload,
)
from .series import MonthStamp, SeriesPanel, parse_panel_csv, render_panel_csv, slice_span, to_returns
from .stats import PRICES, RETURNS, correlation_matrix, monthly_mean_returns
from .synth import GeneratorSpec, generate_series


class UsageError(GoldseasonError):
    """Bad invocation: unknown flags, missing files, malformed flag values."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="goldseason", description="Calendar-month anomaly analysis for monthly price panels.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--input", required=True, help="CSV panel file (header date,<CODE>,...)")
    common.add_argument("--group", default="panel", help="panel label used in output")
    common.add_argument("--start", default=None, help="first month to analyze, YYYY-MM")
    common.add_argument("--end", default=None, help="last month to analyze, YYYY-MM")
    common.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    common.add_argument("--format", dest="fmt", choices=[FORMAT_MARKDOWN, FORMAT_JSON],
                        default=FORMAT_MARKDOWN, help="output format (default md)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    seasonal = _Parser(add_help=False)
    seasonal.add_argument("--model", choices=[ADDITIVE, MULTIPLICATIVE], default=MULTIPLICATIVE,
                          help="decomposition model (default multiplicative)")
    seasonal.add_argument("--period", type=int, default=12, help="seasonal length (default 12)")
    seasonal.add_argument("--aggregator", choices=[MEDIAN, MEAN], default=MEDIAN,
                          help="per-month aggregator for raw seasonals (default median)")
    seasonal.add_argument("--quorum", type=int, default=None,
                          help="currencies needed on one side for a +/- sign (default: all)")

    sub.add_parser("returns", parents=[common], help="monthly mean returns with significance stars")
    sub.add_parser("correlate", parents=[common], help="price and return correlation matrices")
    sub.add_parser("decompose", parents=[common, seasonal], help="seasonal decomposition per currency")
    report = sub.add_parser("report", parents=[common, seasonal], help="full analysis report")
    report.add_argument("--charts", default=None, help="directory for seasonal-deviation chart CSVs")

    synth = sub.add_parser("synth", help="generate a synthetic monthly series as CSV")
    synth.add_argument("--model", choices=[ADDITIVE, MULTIPLICATIVE], default=MULTIPLICATIVE)
    synth.add_argument("--intercept", type=float, required=True, help="trend value at t=1 (minus one slope)")
    synth.add_argument("--slope", type=float, default=0.0, help="trend slope per month")
    synth.add_argument("--indices", default=None,
                       help="12 comma-separated seasonal indices (default: flat)")
    synth.add_argument("--noise-sd", type=float, default=0.0, dest="noise_sd")
    synth.add_argument("--length", type=int, default=240)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--start", default="2000-01", help="first month, YYYY-MM")
    synth.add_argument("--currency", default="SYN", help="three-letter column label")
    synth.add_argument("--out", default=None, help="write CSV here instead of stdout")
    return parser


def _parse_stamp_flag(value: str | None, flag: str) -> MonthStamp | None:
    if value is None:
        return None
    try:
        return MonthStamp.parse(value)
    except DataError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _load_panel(args) -> SeriesPanel:
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"input file not found: {path}")
    panel = parse_panel_csv(path.read_text(encoding="utf-8"), args.group)
    start = _parse_stamp_flag(args.start, "--start") or panel.start
    end = _parse_stamp_flag(args.end, "--end") or panel.end
    if (start, end) != (panel.start, panel.end):
        panel = SeriesPanel(args.group, tuple(slice_span(s, start, end) for s in panel.series))
    return panel


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_returns(args) -> str:
    panel = _load_panel(args)
    summaries = tuple(monthly_mean_returns(to_returns(s), args.alpha) for s in panel.series)
    if args.fmt == FORMAT_JSON:
        payload = {"group": panel.group, "alpha": args.alpha,
                   "returns": {s.currency: summary_payload(s) for s in summaries}}
        return json.dumps(payload, indent=2) + "\n"
    return markdown_returns_section(summaries, args.alpha) + "\n"


def _cmd_correlate(args) -> str:
    panel = _load_panel(args)
    price_corr = correlation_matrix(panel, PRICES, args.alpha)
    return_corr = correlation_matrix(panel, RETURNS, args.alpha)
    if args.fmt == FORMAT_JSON:
        payload = {"group": panel.group, "alpha": args.alpha,
                   "correlations": {PRICES: matrix_payload(price_corr), RETURNS: matrix_payload(return_corr)}}
        return json.dumps(payload, indent=2) + "\n"
    return markdown_correlation_section(price_corr, return_corr) + "\n"


def _cmd_decompose(args) -> str:
    panel = _load_panel(args)
    results = tuple(
        (s.currency, decompose(s, model=args.model, period=args.period, aggregator=args.aggregator))
        for s in panel.series
    )
    signs = classify_month_signs({code: r.indices for code, r in results}, args.quorum)
    if args.fmt == FORMAT_JSON:
        payload = {"group": panel.group, "model": args.model, "aggregator": args.aggregator,
                   "decomposition": {code: decomposition_payload(r) for code, r in results},
                   "signs": list(signs)}
        return json.dumps(payload, indent=2) + "\n"
    return markdown_decomposition_section(results, signs, args.model, args.aggregator) + "\n"


def _cmd_report(args) -> str:
    panel = _load_panel(args)
    config = ReportConfig(
        input_path=Path(args.input),
        group=args.group,
        model=args.model,
        period=args.period,
        aggregator=args.aggregator,
        alpha=args.alpha,
        quorum=args.quorum,
        fmt=args.fmt,
        charts_dir=Path(args.charts) if args.charts else None,
    )
    analysis = analyze_panel(panel, config)
    if config.charts_dir is not None:
        emit_chart_data(panel.group, dict(analysis.decompositions), config.charts_dir)
    if config.fmt == FORMAT_JSON:
        return render_json(analysis)
    return render_markdown(analysis)


def _cmd_synth(args) -> str:
    if args.indices is None:
        indices = (1.0,) * 12 if args.model == MULTIPLICATIVE else (0.0,) * 12
    else:
        parts = args.indices.split(",")
        if len(parts) != 12:
            raise UsageError(f"--indices needs 12 comma-separated values, got {len(parts)}")
        try:
            indices = tuple(float(p) for p in parts)
        except ValueError as exc:
            raise UsageError(f"--indices: {exc}") from None
    spec = GeneratorSpec(
        model=args.model,
        intercept=args.intercept,
        slope=args.slope,
        indices=indices,
        noise_sd=args.noise_sd,
        length=args.length,
        seed=args.seed,
        start=_parse_stamp_flag(args.start, "--start"),
        currency=args.currency,
    )
    series = generate_series(spec)
    return render_panel_csv(SeriesPanel("synthetic", (series,)))


_COMMANDS = {
    "returns": _cmd_returns,
    "correlate": _cmd_correlate,
    "decompose": _cmd_decompose,
    "report": _cmd_report,
    "synth": _cmd_synth,
}


def run_cli(argv=None) -> int:
    """Parse arguments, run one subcommand, and map errors to exit codes."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        text = _COMMANDS[args.command](args)
        _emit(text, args.out)
        return 0
    except UsageError as exc:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except DataError as exc:
        sys.stderr.write(f"data error: {exc}\n")
        return 2
    except NumericError as exc:
        sys.stderr.write(f"numeric error: {exc}\n")
        return 3
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
