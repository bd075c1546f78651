"""Flat `key = value` threshold files.

    calibration.source = fixture-seed-7
    calibration.quantile = 0.9
    sentiment_abs_cut = 0.16666666666666666
    simplicity_cut = 5.0
    class_cut.adjective = 0.0
    class_direction.adjective = above
    ...

Floats are written with `repr`, so reading a written file gives back the same values.
"""

import logging
from pathlib import Path
from typing import Dict, Union

from pydantic import ValidationError

from app.config import WORD_CLASSES
from app.errors import ParseError
from app.models.headline_models import FlagThresholds

logger = logging.getLogger(__name__)


def write_thresholds(t: FlagThresholds) -> str:
    lines = [
        "# flag thresholds: cue fires when |sentiment| > cut, letters/word < cut,",
        "# or a class proportion is beyond its cut in the listed direction",
        f"calibration.source = {t.source}",
        f"calibration.quantile = {t.quantile!r}",
        f"sentiment_abs_cut = {t.sentiment_abs_cut!r}",
        f"simplicity_cut = {t.simplicity_cut!r}",
    ]
    for c in WORD_CLASSES:
        lines.append(f"class_cut.{c} = {t.class_cuts[c]!r}")
    for c in WORD_CLASSES:
        lines.append(f"class_direction.{c} = {t.class_directions.get(c, 'above')}")
    return "\n".join(lines) + "\n"


def _float(key: str, raw: str, lineno: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"{key} must be a number, got {raw!r}", line=lineno)


def parse_thresholds(text: str) -> FlagThresholds:
    values: Dict[str, object] = {"class_cuts": {}, "class_directions": {}}
    seen = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"expected 'key = value', got {line!r}", line=lineno)
        key, value = key.strip(), value.strip()
        if key in seen:
            raise ParseError(f"duplicate key {key!r}", line=lineno)
        seen.add(key)

        if key == "calibration.source":
            values["source"] = value
        elif key == "calibration.quantile":
            values["quantile"] = _float(key, value, lineno)
        elif key in ("sentiment_abs_cut", "simplicity_cut"):
            values[key] = _float(key, value, lineno)
        elif key.startswith("class_cut."):
            values["class_cuts"][key.split(".", 1)[1]] = _float(key, value, lineno)
        elif key.startswith("class_direction."):
            values["class_directions"][key.split(".", 1)[1]] = value
        else:
            raise ParseError(f"unknown key {key!r}", line=lineno)

    try:
        return FlagThresholds(**values)
    except ValidationError as e:
        err = e.errors()[0]
        where = ".".join(str(p) for p in err["loc"])
        raise ParseError(f"invalid thresholds ({where}): {err['msg']}")


def save_thresholds(t: FlagThresholds, path: Union[str, Path]) -> None:
    Path(path).write_text(write_thresholds(t), encoding="utf-8")
    logger.info("wrote thresholds to %s", path)


def load_thresholds(path: Union[str, Path]) -> FlagThresholds:
    return parse_thresholds(Path(path).read_text(encoding="utf-8"))
