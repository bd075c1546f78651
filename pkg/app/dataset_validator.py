from typing import Any, Dict, List, Optional

from app.errors import InputError
from app.models.headline_models import LABEL_ORDER, parse_label
from app.pos_features import PretaggedTagger, tag
from app.text_core import tokenize


def inspect_dataset(rows: Any, tagger_kind: Optional[str] = None) -> Dict[str, Any]:
    """Collect every problem in a list of raw headline rows instead of stopping at the first."""
    errors: List[Dict[str, str]] = []
    warnings: List[Dict[str, str]] = []

    summary = {
        "total_rows": 0,
        "usable_rows": 0,
        "label_counts": {label: 0 for label in LABEL_ORDER},
        "unlabelled": 0,
        "pretagged": 0,
    }

    # What the rows can be used for
    compatibility = {
        "can_extract": True,
        "can_validate": True,
        "can_calibrate": True,
    }

    if not isinstance(rows, list):
        errors.append({"path": "$", "message": "Dataset must be a list of headline objects."})
        for k in compatibility:
            compatibility[k] = False
        return {
            "valid": False,
            "errors": errors,
            "warnings": warnings,
            "summary": summary,
            "compatibility": compatibility,
        }

    seen_ids: Dict[str, int] = {}
    pretagged = PretaggedTagger()

    for i, row in enumerate(rows):
        path = f"$[{i}]"
        summary["total_rows"] += 1

        if not isinstance(row, dict):
            errors.append({"path": path, "message": "Row must be an object with id and text."})
            continue

        missing = [f for f in ("id", "text") if f not in row]
        if missing:
            errors.append({"path": path, "message": f"Missing required fields: {', '.join(missing)}"})
            continue

        record_id = str(row["id"]).strip()
        if not record_id:
            errors.append({"path": f"{path}.id", "message": "id must be a non-empty string."})
            continue
        if record_id in seen_ids:
            errors.append({
                "path": f"{path}.id",
                "message": f"Duplicate id '{record_id}' (first seen at $[{seen_ids[record_id]}]).",
            })
            continue
        seen_ids[record_id] = i

        text = row["text"]
        if not isinstance(text, str) or not text.strip():
            errors.append({"path": f"{path}.text", "message": "Headline text is empty."})
            continue
        tokens = tokenize(text)
        if tokens.word_count() == 0:
            errors.append({"path": f"{path}.text", "message": "Headline has no word tokens."})
            continue

        label = row.get("label")
        if label is None or (isinstance(label, str) and not label.strip()):
            summary["unlabelled"] += 1
            warnings.append({"path": f"{path}.label", "message": "No truth label; row is usable for flagging only."})
        elif not isinstance(label, str):
            errors.append({"path": f"{path}.label", "message": f"truth label must be a string, got {label!r}"})
            continue
        else:
            try:
                summary["label_counts"][parse_label(label).value] += 1
            except InputError as e:
                errors.append({"path": f"{path}.label", "message": str(e)})
                continue

        tags = row.get("tags")
        if isinstance(tags, list):
            tags = " ".join(str(t) for t in tags)
        if tags:
            summary["pretagged"] += 1
            try:
                tag(tokens, pretagged, tags)
            except InputError as e:
                errors.append({"path": f"{path}.tags", "message": str(e)})
                continue
        elif tagger_kind == "pretagged":
            errors.append({"path": f"{path}.tags", "message": "Pretagged mode needs tags on every row."})
            continue

        summary["usable_rows"] += 1

    short = [label for label in LABEL_ORDER if summary["label_counts"][label] < 2]
    if short:
        compatibility["can_validate"] = False
        warnings.append({
            "path": "$",
            "message": f"Labels with fewer than 2 rows: {', '.join(short)}; validation needs every label.",
        })
    if summary["label_counts"]["true"] == 0:
        compatibility["can_calibrate"] = False
    if summary["unlabelled"]:
        compatibility["can_validate"] = False

    if errors:
        for k in compatibility:
            compatibility[k] = False

    return {
        "valid": not errors,
        "errors": errors,
        "warnings": warnings,
        "summary": summary,
        "compatibility": compatibility,
    }
