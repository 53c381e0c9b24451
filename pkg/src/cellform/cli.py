"""Command-line entry points: infer | standardize | evaluate | serve."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .annotator import (
    CandidateTypes,
    DEFAULT_SAMPLE_SIZE,
    DEFAULT_THRESHOLD,
    build_annotator_prompt,
    infer_types_rules,
    parse_annotation_reply,
)
from .coltypes import ColumnType
from .errors import CellformError
from .evaluation import cell_match_rate
from .llm import ChatMessage, DEFAULT_MODEL, LlmConfig, MockBackend, complete
from .orchestrator import SessionState, SessionStatus, run_workflow
from .standardizers import CleanOptions
from .table import IngestOptions, Table, load_csv, save_csv


def _add_ingest_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--nan-token",
        default="",
        help='what a missing cell looks like on disk (default: empty field; try "NaN")',
    )


def _add_clean_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--default-region",
        default="+1",
        help="country calling code assumed for bare national phone numbers",
    )
    parser.add_argument(
        "--date-order",
        choices=("mdy", "dmy"),
        default="mdy",
        help="how to read ambiguous numeric dates like 03/04/2020",
    )
    parser.add_argument(
        "--reference-year",
        type=int,
        default=None,
        help="fill year-less dates with this year instead of dropping them",
    )


def _add_llm_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--llm",
        choices=("rules", "mock", "openai"),
        default="rules",
        help="backend: deterministic rules (default), scripted mock, or a live model",
    )
    parser.add_argument("--model", default=DEFAULT_MODEL)
    parser.add_argument("--temperature", type=float, default=0.0)
    parser.add_argument("--timeout", type=float, default=60.0)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--base-url", default=None, help="OpenAI-compatible server base URL")
    parser.add_argument("--cache-dir", default=None, help="directory for cached replies")
    parser.add_argument(
        "--candidates",
        default=None,
        help="comma-separated candidate types (default: all ten)",
    )
    parser.add_argument("--sample-size", type=int, default=DEFAULT_SAMPLE_SIZE)


def _options(args: argparse.Namespace) -> CleanOptions:
    return CleanOptions(
        default_country_code=args.default_region,
        day_month_order=args.date_order == "dmy",
        reference_year=args.reference_year,
    )


def _llm_config(args: argparse.Namespace) -> LlmConfig:
    return LlmConfig(
        backend=args.llm,
        model=args.model,
        temperature=args.temperature,
        timeout=args.timeout,
        seed=args.seed,
        base_url=args.base_url,
        cache_dir=args.cache_dir,
        mock=MockBackend() if args.llm == "mock" else None,
    )


def _candidates(args: argparse.Namespace) -> CandidateTypes:
    if args.candidates:
        return CandidateTypes.from_labels(args.candidates)
    return CandidateTypes()


def _load_table(path: str, ingest: IngestOptions) -> Table:
    with open(path, "rb") as f:
        return load_csv(f, ingest)


def cmd_infer(args: argparse.Namespace) -> int:
    ingest = IngestOptions(nan_token=args.nan_token)
    table = _load_table(args.input, ingest)
    candidates = _candidates(args)
    if args.llm == "openai":
        prompt = build_annotator_prompt(table, candidates, args.sample_size)
        reply = complete(
            [ChatMessage("system", prompt), ChatMessage("user", "Annotate the table.")],
            _llm_config(args),
        )
        result = parse_annotation_reply(reply, list(table.columns), candidates)
    else:
        result = infer_types_rules(
            table, candidates, args.sample_size, args.threshold, _options(args)
        )
    for name, ctype in result.assignments.items():
        print(f"{name}: {ctype.value}")
    return 0


def _parse_overrides(pairs: "list[str]") -> "dict[str, tuple[ColumnType, str | None]]":
    overrides: dict = {}
    for pair in pairs:
        column, sep, spec = pair.partition("=")
        if not sep or not column or not spec:
            raise ValueError(f"--set wants col=type[:format], got {pair!r}")
        label, _, fmt = spec.partition(":")
        overrides[column] = (ColumnType.from_label(label), fmt.strip() or None)
    return overrides


def cmd_standardize(args: argparse.Namespace) -> int:
    ingest = IngestOptions(nan_token=args.nan_token)
    table = _load_table(args.input, ingest)
    session = SessionState(
        table,
        requirements=args.requirements or "",
        source_name=args.input,
        candidates=_candidates(args),
        options=_options(args),
        sample_size=args.sample_size,
        max_retries=args.max_retries,
    )
    for column, (ctype, fmt) in _parse_overrides(args.set or []).items():
        session.set_override(column, ctype, fmt)
    session = run_workflow(session, _llm_config(args))
    for i, entry in enumerate(session.chat_memory.entries):
        print(f"[{i}] ({entry.step}) {entry.role.value}: {entry.content}", file=sys.stderr)
    if session.status is not SessionStatus.SUCCEEDED:
        errors = session.error_history()
        last = errors[-1] if errors else "unknown error"
        print(f"standardization failed after {session.attempts} attempt(s): {last}", file=sys.stderr)
        return 1
    with open(args.output, "wb") as f:
        save_csv(session.result, f, ingest)
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    ingest = IngestOptions(nan_token=args.nan_token)
    cleaned = _load_table(args.cleaned, ingest)
    truth = _load_table(args.truth, ingest)
    report = cell_match_rate(cleaned, truth, per_row_denominator=args.per_row_denominator)
    if args.json:
        print(report.render_json())
    else:
        print(report.render())
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceSettings, create_app

    ui_dir = args.ui_dir
    if ui_dir is None:
        bundled = Path.cwd() / "frontend" / "dist"
        ui_dir = bundled if bundled.is_dir() else None
    settings = ServiceSettings(
        llm=_llm_config(args),
        candidates=_candidates(args),
        options=_options(args),
        ingest=IngestOptions(nan_token=args.nan_token),
        max_retries=args.max_retries,
        sample_size=args.sample_size,
        session_ttl_s=args.session_ttl,
        ui_dir=ui_dir,
    )
    uvicorn.run(create_app(settings), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellform",
        description="Standardize heterogeneous cell formats per column.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    infer = sub.add_parser("infer", help="annotate the type of each column")
    infer.add_argument("input", help="CSV file")
    infer.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    _add_ingest_flags(infer)
    _add_clean_flags(infer)
    _add_llm_flags(infer)
    infer.set_defaults(func=cmd_infer)

    std = sub.add_parser("standardize", help="run the full workflow on a CSV")
    std.add_argument("input", help="CSV file")
    std.add_argument("--output", default="cleaned_data.csv")
    std.add_argument("--requirements", default=None, help="extra natural-language requirements")
    std.add_argument(
        "--set",
        action="append",
        metavar="COL=TYPE[:FORMAT]",
        help="force a column's type (and, for dates, its target format)",
    )
    std.add_argument("--max-retries", type=int, default=3)
    _add_ingest_flags(std)
    _add_clean_flags(std)
    _add_llm_flags(std)
    std.set_defaults(func=cmd_standardize)

    ev = sub.add_parser("evaluate", help="score a cleaned CSV against ground truth")
    ev.add_argument("cleaned")
    ev.add_argument("truth")
    ev.add_argument("--json", action="store_true", help="emit the machine-readable report")
    ev.add_argument(
        "--per-row-denominator",
        action="store_true",
        help="divide the match count by m instead of m*n",
    )
    _add_ingest_flags(ev)
    ev.set_defaults(func=cmd_evaluate)

    srv = sub.add_parser("serve", help="run the HTTP API and web console")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--ui-dir", default=None, help="static console assets to serve")
    srv.add_argument("--session-ttl", type=float, default=3600.0)
    srv.add_argument("--max-retries", type=int, default=3)
    _add_ingest_flags(srv)
    _add_clean_flags(srv)
    _add_llm_flags(srv)
    srv.set_defaults(func=cmd_serve)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CellformError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
