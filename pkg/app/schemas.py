from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from app.config import DEFAULT_QUANTILE, CueDirection, SimplicityMetric, TaggerKind, TransformKind
from app.errors import InputError
from app.ingest import records_from_rows
from app.lexicon_loader import BUNDLED_LEXICONS, default_lexicons
from app.lexicons import PolarityLexicon
from app.models.headline_models import FlagThresholds, HeadlineRecord

# -----------------------------
# HEADLINES
# -----------------------------

class HeadlineIn(BaseModel):
    id: str = Field(description="Unique within the request")
    text: str = Field(description="Headline text")
    label: Optional[str] = Field(
        default=None,
        description="Truth label; 'Pants on Fire', 'pants-on-fire' and 'pants_on_fire' are accepted",
    )
    tags: Optional[str] = Field(
        default=None,
        description="Space-separated Penn tags for pretagged mode",
    )


# -----------------------------
# BASE ANALYSIS REQUEST
# -----------------------------

class AnalysisRequest(BaseModel):
    records: List[HeadlineIn] = Field(description="Headlines to analyse")
    lexicons: Optional[List[str]] = Field(
        default=None,
        description="Bundled lexicon names (default: all bundled lexicons, in bundled order)",
    )
    tagger: TaggerKind = Field(default="builtin", description="builtin or pretagged")

    @field_validator("records")
    @classmethod
    def non_empty(cls, v):
        if len(v) == 0:
            raise ValueError("records list cannot be empty")
        return v

    def to_records(self) -> List[HeadlineRecord]:
        return records_from_rows((i + 1, r.model_dump()) for i, r in enumerate(self.records))

    def resolve_lexicons(self) -> List[PolarityLexicon]:
        if not self.lexicons:
            return default_lexicons()
        unknown = [n for n in self.lexicons if n not in BUNDLED_LEXICONS]
        if unknown:
            raise InputError(f"unknown lexicons {unknown}; bundled: {list(BUNDLED_LEXICONS)}")
        return [BUNDLED_LEXICONS[n] for n in self.lexicons]


# -----------------------------
# VALIDATE
# -----------------------------

class ValidateRequest(AnalysisRequest):
    transform: TransformKind = Field(
        default="signed_log1p",
        description="Transform applied before the Tukey test",
    )
    transform_overrides: Dict[str, TransformKind] = Field(
        default_factory=dict,
        description="Per-metric transform, e.g. {'class:verb': 'identity'}",
    )
    simplicity_metric: SimplicityMetric = Field(default="letters_per_word")


# -----------------------------
# CALIBRATE
# -----------------------------

class CalibrateRequest(AnalysisRequest):
    quantile: float = Field(default=DEFAULT_QUANTILE, gt=0.0, lt=1.0)
    class_directions: Dict[str, CueDirection] = Field(default_factory=dict)
    source: str = Field(default="request", description="Recorded as calibration.source")


# -----------------------------
# FLAG
# -----------------------------

class FlagRequest(AnalysisRequest):
    thresholds: FlagThresholds


# -----------------------------
# DATASET CHECK
# -----------------------------

class DatasetCheckRequest(BaseModel):
    rows: Any = Field(description="Raw headline rows, checked without stopping at the first problem")
    tagger: Optional[TaggerKind] = None

    model_config = {
        "json_schema_extra": {
            "example": {
                "rows": [
                    {"id": "1", "text": "Obama says the economy has added 200,000 jobs", "label": "half-true"},
                    {"id": "2", "text": "Shocking! Evil liar bans ALL 999 guns", "label": "Pants on Fire"},
                ],
                "tagger": "builtin",
            }
        }
    }
