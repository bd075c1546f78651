"""Command line: features, validate, calibrate, flag, lexicon and fixture subcommands.

Exit codes: 0 success, 1 input error, 2 numerical failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.config import DEFAULT_ALPHA_GRID, DEFAULT_QUANTILE, WORD_CLASSES, AnalysisConfig, normalize_transform
from app.errors import InputError, HeadlineError
from app.ingest import FORMATS, ingest, write_records
from app.lexicon_loader import BUNDLED_LEXICONS, resolve_lexicons
from app.lexicons import dump_lexicon
from app.models.headline_models import HeadlineRecord
from app.pos_features import load_tagger_model, make_tagger
from app.report import REPORT_FORMATS, render_features, render_flags, render_report
from app.services.pipeline_service import calibrate_thresholds, extract_features, flag_many, validate
from app.synthetic import generate_fixture
from app.thresholds import load_thresholds, save_thresholds

logger = logging.getLogger("app.cli")

REPORT_FILES = {"markdown": "tukey_report.md", "csv": "tukey_report.csv"}


class _Parser(argparse.ArgumentParser):
    """Bad arguments are input errors: exit 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -----------------------------
# ARGUMENT TYPES
# -----------------------------

def quantile_arg(raw: str) -> float:
    try:
        q = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {raw!r}")
    if not 0.0 < q < 1.0:
        raise argparse.ArgumentTypeError(f"quantile must lie strictly between 0 and 1, got {raw}")
    return q


def alpha_grid_arg(raw: str) -> List[float]:
    try:
        levels = [float(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {raw!r}")
    if not levels or any(not 0.0 < a < 1.0 for a in levels):
        raise argparse.ArgumentTypeError("alpha levels must lie in (0, 1)")
    return sorted(levels)


def transform_arg(raw: str) -> Tuple[str, Dict[str, str]]:
    """`signed-log1p` or `identity,class:verb=signed-log1p,simplicity=identity`."""
    default = "signed_log1p"
    overrides: Dict[str, str] = {}
    for part in (p.strip() for p in raw.split(",")):
        if not part:
            continue
        if "=" in part:
            metric, _, kind = part.rpartition("=")
            overrides[metric.strip()] = normalize_transform(kind)
        else:
            default = normalize_transform(part)
    for kind in [default, *overrides.values()]:
        if kind not in ("identity", "signed_log1p"):
            raise argparse.ArgumentTypeError(f"unknown transform {kind!r}; use identity or signed-log1p")
    return default, overrides


def direction_arg(raw: str) -> Tuple[str, str]:
    cls, sep, direction = raw.partition("=")
    if not sep or cls not in WORD_CLASSES or direction not in ("above", "below"):
        raise argparse.ArgumentTypeError(f"expected CLASS=above|below with CLASS in {list(WORD_CLASSES)}")
    return cls, direction


# -----------------------------
# PARSER
# -----------------------------

def _add_dataset_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--input", type=Path, required=required, help="Dataset file (id,text,label[,tags])")
    p.add_argument("--format", choices=FORMATS, default=None, help="Dataset format (default: from extension)")
    p.add_argument(
        "--lexicon", action="append", default=[], metavar="NAME=PATH",
        help="Polarity lexicon; repeatable. A bare bundled name (LM, GENERIC) uses the bundled file",
    )
    p.add_argument("--tagger", choices=("builtin", "pretagged"), default="builtin")
    p.add_argument("--tagger-model", type=Path, default=None, help="'word TAG' lexicon for the builtin tagger")
    p.add_argument("--workers", type=int, default=1, help="Processes for feature extraction")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="headline-cues", description="Headline cue measurement, validation and flagging")
    parser.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    parser.add_argument("-v", "--verbose", action="store_true", help="Shortcut for --log-level INFO")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("features", help="Emit one feature row per headline as CSV")
    _add_dataset_args(p)
    p.add_argument("--out", type=Path, default=None, help="CSV file (default: stdout)")

    p = sub.add_parser("validate", help="Tukey pairwise matrices per metric")
    _add_dataset_args(p)
    p.add_argument("--transform", type=transform_arg, default=("signed_log1p", {}),
                   help="identity|signed-log1p[,METRIC=KIND...]")
    p.add_argument("--simplicity-metric", choices=("letters-per-word", "coleman-liau"), default="letters-per-word")
    p.add_argument("--out", type=Path, required=True, help="Output directory")
    p.add_argument("--report", choices=REPORT_FORMATS, default="markdown")
    p.add_argument("--alpha-grid", type=alpha_grid_arg, default=list(DEFAULT_ALPHA_GRID),
                   help="Annotation levels, comma-separated")
    p.add_argument("--full-precision", action="store_true", help="Write p-values with full float precision")

    p = sub.add_parser("calibrate", help="Cue thresholds from true-labelled headlines")
    _add_dataset_args(p)
    p.add_argument("--quantile", type=quantile_arg, default=DEFAULT_QUANTILE)
    p.add_argument("--class-direction", type=direction_arg, action="append", default=[],
                   metavar="CLASS=above|below")
    p.add_argument("--source", default=None, help="Recorded as calibration.source (default: input file name)")
    p.add_argument("--out", type=Path, required=True, help="Threshold file")

    p = sub.add_parser("flag", help="Cue flags per headline as JSON lines")
    _add_dataset_args(p, required=False)
    p.add_argument("--thresholds", type=Path, required=True)
    p.add_argument("--text", default=None, help="Single headline to flag")
    p.add_argument("--out", type=Path, default=None, help="JSONL file (default: stdout)")

    p = sub.add_parser("lexicon", help="Lexicon utilities")
    lex_sub = p.add_subparsers(dest="lexicon_command", required=True, parser_class=_Parser)
    d = lex_sub.add_parser("dump", help="Write a lexicon in canonical form")
    d.add_argument("spec", metavar="NAME=PATH", help="Lexicon file, or a bundled name")
    d.add_argument("--out", type=Path, default=None)
    lex_sub.add_parser("list", help="Bundled lexicons with entry counts")

    p = sub.add_parser("fixture", help="Generate the synthetic labelled dataset")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--null", action="store_true", help="No planted simplicity shift")
    p.add_argument("--planted-shift", type=float, default=1.0, help="Letters per word added to the true block")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--format", choices=FORMATS, default=None)

    return parser


# -----------------------------
# COMMANDS
# -----------------------------

def _tagger(args):
    model = load_tagger_model(args.tagger_model) if args.tagger_model else None
    return make_tagger(args.tagger, model)


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)


def cmd_features(args) -> int:
    records = ingest(args.input, args.format)
    lexicons = resolve_lexicons(args.lexicon)
    rows = extract_features(records, lexicons, _tagger(args), workers=args.workers)
    _emit(render_features(rows, [lex.name for lex in lexicons]), args.out)
    return 0


def cmd_validate(args) -> int:
    transform, overrides = args.transform
    config = AnalysisConfig(
        lexicons=args.lexicon,
        tagger=args.tagger,
        transform=transform,
        transform_overrides=overrides,
        simplicity_metric=args.simplicity_metric.replace("-", "_"),
        alpha_grid=args.alpha_grid,
        workers=args.workers,
        full_precision=args.full_precision,
    )
    records = ingest(args.input, args.format)
    matrices = validate(records, resolve_lexicons(config.lexicons), _tagger(args), config)
    args.out.mkdir(parents=True, exist_ok=True)
    target = args.out / REPORT_FILES[args.report]
    render_report(matrices, target, args.report, full_precision=config.full_precision, alpha_grid=config.alpha_grid)
    for m in matrices:
        for w in m.warnings:
            logger.warning(w)
    return 0


def cmd_calibrate(args) -> int:
    records = ingest(args.input, args.format)
    rows = extract_features(records, resolve_lexicons(args.lexicon), _tagger(args), workers=args.workers)
    thresholds = calibrate_thresholds(
        records,
        rows,
        args.quantile,
        source=args.source if args.source is not None else args.input.name,
        class_directions=dict(args.class_direction),
    )
    save_thresholds(thresholds, args.out)
    return 0


def cmd_flag(args) -> int:
    if (args.text is None) == (args.input is None):
        raise InputError("flag needs exactly one of --text or --input")
    thresholds = load_thresholds(args.thresholds)
    if args.text is not None:
        records = [HeadlineRecord(id="text", text=args.text)]
    else:
        records = ingest(args.input, args.format)
    results = flag_many(records, thresholds, resolve_lexicons(args.lexicon), _tagger(args), workers=args.workers)
    _emit(render_flags(results), args.out)
    return 0


def cmd_lexicon(args) -> int:
    if args.lexicon_command == "list":
        for name, lex in BUNDLED_LEXICONS.items():
            sys.stdout.write(f"{name}\t{len(lex.positive)} positive\t{len(lex.negative)} negative\n")
        return 0
    (lexicon,) = resolve_lexicons([args.spec])
    _emit(dump_lexicon(lexicon), args.out)
    return 0


def cmd_fixture(args) -> int:
    shift = 0.0 if args.null else args.planted_shift
    records = generate_fixture(args.seed, planted_shift=shift)
    write_records(records, args.out, args.format)
    return 0


COMMANDS = {
    "features": cmd_features,
    "validate": cmd_validate,
    "calibrate": cmd_calibrate,
    "flag": cmd_flag,
    "lexicon": cmd_lexicon,
    "fixture": cmd_fixture,
}


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    logging.captureWarnings(True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("INFO" if args.verbose else args.log_level)
    try:
        return COMMANDS[args.command](args)
    except HeadlineError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code
    except ValidationError as e:
        logger.error("invalid configuration: %s", e)
        return 1
    except OSError as e:
        logger.error("I/O error: %s", e)
        return 1
