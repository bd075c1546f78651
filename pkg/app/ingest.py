"""Dataset files: CSV (`id,text,label[,tags]`) and JSON lines with the same field names."""

import json
import logging
from collections import Counter
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

import pandas as pd
from pydantic import ValidationError

from app.errors import DuplicateId, EmptyText, InputError, ParseError, UnknownLabel
from app.models.headline_models import LABEL_ORDER, HeadlineRecord, parse_label

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("id", "text")
OPTIONAL_COLUMNS = ("label", "tags")
FORMATS = ("csv", "jsonl")


def detect_format(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix in ("jsonl", "ndjson", "json"):
        return "jsonl"
    return "csv"


# -----------------------------
# READERS
# -----------------------------

def _csv_rows(path: Path) -> Iterator[Tuple[int, Dict[str, str]]]:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path} is empty", line=1)
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise ParseError(f"{path}: {e}")

    frame.columns = [str(c).strip().lower() for c in frame.columns]
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise ParseError(f"{path}: missing columns {missing}", line=1)
    extra = [c for c in frame.columns if c not in REQUIRED_COLUMNS + OPTIONAL_COLUMNS]
    if extra:
        logger.warning("%s: ignoring columns %s", path, extra)

    keep = [c for c in REQUIRED_COLUMNS + OPTIONAL_COLUMNS if c in frame.columns]
    for offset, row in enumerate(frame[keep].to_dict(orient="records")):
        # header is line 1
        yield offset + 2, row


def _jsonl_rows(path: Path) -> Iterator[Tuple[int, Dict[str, str]]]:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not UTF-8 ({e.reason})")
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", line=lineno)
        if not isinstance(obj, dict):
            raise ParseError("each line must be a JSON object", line=lineno)
        missing = [c for c in REQUIRED_COLUMNS if c not in obj]
        if missing:
            raise ParseError(f"missing fields {missing}", line=lineno)
        yield lineno, obj


def read_rows(path: Union[str, Path], fmt: Optional[str] = None) -> Iterator[Tuple[int, Dict[str, str]]]:
    path = Path(path)
    fmt = fmt or detect_format(path)
    if fmt not in FORMATS:
        raise InputError(f"unknown dataset format {fmt!r}; expected one of {FORMATS}")
    if not path.exists():
        raise InputError(f"{path} does not exist")
    return _csv_rows(path) if fmt == "csv" else _jsonl_rows(path)


# -----------------------------
# RECORDS
# -----------------------------

def record_from_row(row: Dict[str, object], line: Optional[int] = None) -> HeadlineRecord:
    record_id = str(row.get("id", "")).strip()
    if not record_id:
        raise ParseError("empty id", line=line)
    text = row.get("text")
    if not isinstance(text, str) or not text.strip():
        raise EmptyText("headline text is empty", record_id=record_id)

    label = row.get("label")
    if isinstance(label, str) and label.strip():
        label = parse_label(label)
    elif label is None or isinstance(label, str):
        label = None
    else:
        raise UnknownLabel(f"truth label must be a string, got {label!r}", record_id=record_id)

    tags = row.get("tags")
    if isinstance(tags, list):
        tags = " ".join(str(t) for t in tags)

    try:
        return HeadlineRecord(id=record_id, text=text, label=label, tags=tags or None)
    except ValidationError as e:
        raise ParseError(f"invalid record: {e.errors()[0]['msg']}", line=line, record_id=record_id)


def records_from_rows(rows: Iterable[Tuple[int, Dict[str, object]]]) -> List[HeadlineRecord]:
    records: List[HeadlineRecord] = []
    seen: Dict[str, int] = {}
    for line, row in rows:
        try:
            record = record_from_row(row, line)
        except ParseError:
            raise
        except InputError as e:
            raise type(e)(f"line {line}: {e}") from e
        if record.id in seen:
            raise DuplicateId(f"id {record.id!r} on line {line} already used on line {seen[record.id]}")
        seen[record.id] = line
        records.append(record)
    return records


def label_counts(records: Iterable[HeadlineRecord]) -> Dict[str, int]:
    """Counts in truth-label order; unlabelled records are not counted."""
    counts = Counter(r.label.value for r in records if r.label is not None)
    return {label: counts.get(label, 0) for label in LABEL_ORDER}


def ingest(path: Union[str, Path], fmt: Optional[str] = None) -> List[HeadlineRecord]:
    records = records_from_rows(read_rows(path, fmt))
    if not records:
        raise ParseError(f"{path} contains no records", line=1)
    counts = label_counts(records)
    logger.info(
        "ingested %d records from %s: %s",
        len(records), path, ", ".join(f"{k}={v}" for k, v in counts.items()),
    )
    return records


# -----------------------------
# WRITERS
# -----------------------------

def write_records(records: Iterable[HeadlineRecord], path: Union[str, Path], fmt: Optional[str] = None) -> None:
    path = Path(path)
    fmt = fmt or detect_format(path)
    rows = [
        {
            "id": r.id,
            "text": r.text,
            "label": r.label.value if r.label is not None else "",
            "tags": r.tags or "",
        }
        for r in records
    ]
    if fmt == "csv":
        pd.DataFrame(rows, columns=["id", "text", "label", "tags"]).to_csv(path, index=False, lineterminator="\n")
    elif fmt == "jsonl":
        with path.open("w", encoding="utf-8") as f:
            for row in rows:
                f.write(json.dumps({k: v for k, v in row.items() if v != ""}, ensure_ascii=False) + "\n")
    else:
        raise InputError(f"unknown dataset format {fmt!r}; expected one of {FORMATS}")
    logger.info("wrote %d records to %s", len(rows), path)
