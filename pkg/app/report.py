"""Rendering of pairwise matrices, feature rows and flag results."""

import io
import json
import logging
from pathlib import Path
from typing import IO, List, Optional, Sequence, Union

import pandas as pd

from app.config import DEFAULT_ALPHA_GRID, REPORT_DECIMALS, WORD_CLASSES
from app.models.headline_models import LABEL_ORDER, TRUE_BLOCK, FeatureRow, FlagResult, PairwiseMatrix, TruthLabel
from app.stats import block_separation, isolated_categories

logger = logging.getLogger(__name__)

REPORT_FORMATS = ("markdown", "csv")

Sink = Union[str, Path, IO[str], None]


def format_p(p: float, full_precision: bool = False) -> str:
    return repr(float(p)) if full_precision else f"{p:.{REPORT_DECIMALS}f}"


def _emit(text: str, sink: Sink) -> str:
    if sink is None:
        return text
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
        logger.info("wrote %s", sink)
    else:
        sink.write(text)
    return text


# ============================================================
# MATRICES
# ============================================================

def _csv_report(matrices: Sequence[PairwiseMatrix], full_precision: bool) -> str:
    rows = []
    for m in matrices:
        for label, row in zip(m.labels, m.p):
            rows.append([m.metric_name, label] + [format_p(p, full_precision) for p in row])
    header = list(matrices[0].labels) if matrices else LABEL_ORDER
    frame = pd.DataFrame(rows, columns=["metric", "category"] + header, dtype=str)
    return frame.to_csv(index=False, lineterminator="\n")


def _title(label: str) -> str:
    return TruthLabel(label).display if label in LABEL_ORDER else label


def _stars(p: float, alpha_grid: Sequence[float]) -> str:
    return "*" * sum(1 for a in alpha_grid if p < a)


def _annotations(m: PairwiseMatrix, alpha_grid: Sequence[float]) -> List[str]:
    notes = []
    for category in m.labels:
        levels = [a for a in alpha_grid if category in isolated_categories(m, a)]
        if levels:
            notes.append(f"{_title(category)} differs from every other category at alpha = {min(levels)}.")
    block_levels = [a for a in alpha_grid if block_separation(m, TRUE_BLOCK, a)]
    if block_levels:
        names = " and ".join(_title(c) for c in TRUE_BLOCK)
        notes.append(f"{names} separate from the other categories at alpha = {min(block_levels)}.")
    notes.extend(f"Warning: {w}" for w in m.warnings)
    return notes


def _markdown_report(matrices: Sequence[PairwiseMatrix], full_precision: bool, alpha_grid: Sequence[float]) -> str:
    grid = sorted(alpha_grid)
    legend = ", ".join(f"{'*' * (len(grid) - i)} p < {a}" for i, a in enumerate(grid))
    out = ["# Tukey pairwise p-values", "", f"Significance marks: {legend}.", ""]
    for m in matrices:
        titles = [_title(label) for label in m.labels]
        out.append(f"## {m.metric_name} (transform: {m.transform})")
        out.append("")
        out.append("| | " + " | ".join(titles) + " |")
        out.append("|---|" + "---:|" * len(titles))
        for i, title in enumerate(titles):
            cells = []
            for j, p in enumerate(m.p[i]):
                mark = "" if i == j else _stars(p, grid)
                cells.append(format_p(p, full_precision) + mark)
            out.append(f"| {title} | " + " | ".join(cells) + " |")
        notes = _annotations(m, grid)
        if notes:
            out.append("")
            out.extend(f"- {n}" for n in notes)
        out.append("")
    return "\n".join(out)


def render_report(
    matrices: Sequence[PairwiseMatrix],
    sink: Sink = None,
    fmt: str = "markdown",
    *,
    full_precision: bool = False,
    alpha_grid: Optional[Sequence[float]] = None,
) -> str:
    """One table per matrix, categories in truth-label order; returns the text written."""
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")
    ordered = [m.reordered(LABEL_ORDER) if set(m.labels) <= set(LABEL_ORDER) else m for m in matrices]
    if fmt == "csv":
        text = _csv_report(ordered, full_precision)
    else:
        text = _markdown_report(ordered, full_precision, alpha_grid or DEFAULT_ALPHA_GRID)
    return _emit(text, sink)


# ============================================================
# FEATURES AND FLAGS
# ============================================================

def render_features(rows: Sequence[FeatureRow], lexicon_names: Sequence[str], sink: Sink = None) -> str:
    columns = ["id"] + [f"sentiment:{n}" for n in lexicon_names] + ["simplicity", "cli_full"]
    columns += [f"class:{c}" for c in WORD_CLASSES]
    records = [
        [row.id]
        + [repr(row.sentiment[n]) for n in lexicon_names]
        + [repr(row.simplicity), repr(row.cli_full)]
        + [repr(row.classes[c]) for c in WORD_CLASSES]
        for row in rows
    ]
    text = pd.DataFrame(records, columns=columns, dtype=str).to_csv(index=False, lineterminator="\n")
    return _emit(text, sink)


def render_flags(results: Sequence[FlagResult], sink: Sink = None) -> str:
    buf = io.StringIO()
    for r in results:
        buf.write(json.dumps(r.model_dump(), sort_keys=False) + "\n")
    return _emit(buf.getvalue(), sink)
