import math
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from app.config import CUE_CLASSES, WORD_CLASSES
from app.errors import UnknownLabel


class TruthLabel(str, Enum):
    pants_on_fire = "pants_on_fire"
    false = "false"
    barely_true = "barely_true"
    half_true = "half_true"
    mostly_true = "mostly_true"
    true = "true"

    @classmethod
    def ordered(cls) -> List["TruthLabel"]:
        """Least to most truthful."""
        return list(cls)

    @property
    def display(self) -> str:
        return self.value.replace("_", " ").title()


LABEL_ORDER: List[str] = [label.value for label in TruthLabel]
TRUE_BLOCK = (TruthLabel.mostly_true.value, TruthLabel.true.value)


def parse_label(raw: str) -> TruthLabel:
    """'Pants on Fire', 'pants-on-fire' and 'pants_on_fire' are the same label."""
    key = "_".join(str(raw).strip().lower().replace("-", " ").replace("_", " ").split())
    if key == "pants_fire":
        key = "pants_on_fire"
    try:
        return TruthLabel(key)
    except ValueError:
        raise UnknownLabel(f"unknown truth label {raw!r}; expected one of {LABEL_ORDER}")


# -----------------------------
# RECORDS
# -----------------------------

class HeadlineRecord(BaseModel):
    id: str = Field(..., min_length=1, description="Unique within a dataset")
    text: str = Field(..., description="Headline text")
    label: Optional[TruthLabel] = Field(default=None, description="Omitted in flag-only mode")
    tags: Optional[str] = Field(
        default=None,
        description="Space-separated Penn tags, one per word/numeric token (pretagged mode)",
    )

    @field_validator("label", mode="before")
    @classmethod
    def _normalize_label(cls, v):
        if v is None or isinstance(v, TruthLabel):
            return v
        if isinstance(v, str) and not v.strip():
            return None
        return parse_label(v)

    @field_validator("tags", mode="before")
    @classmethod
    def _blank_tags(cls, v):
        if isinstance(v, str) and not v.strip():
            return None
        return v


class FeatureRow(BaseModel):
    id: str
    sentiment: Dict[str, float] = Field(..., description="Lexicon name -> (pos - neg) / words")
    simplicity: float = Field(..., gt=0, description="Letters per word")
    cli_full: float = Field(..., description="Full Coleman-Liau grade")
    classes: Dict[str, float] = Field(..., description="Word class -> proportion of tokens")

    @field_validator("classes")
    @classmethod
    def _all_classes(cls, v):
        missing = [c for c in WORD_CLASSES if c not in v]
        if missing:
            raise ValueError(f"missing word classes: {missing}")
        return {c: v[c] for c in WORD_CLASSES}


# -----------------------------
# FLAGGING
# -----------------------------

class FlagThresholds(BaseModel):
    sentiment_abs_cut: float = Field(..., ge=0, allow_inf_nan=False)
    simplicity_cut: float = Field(..., gt=0, allow_inf_nan=False, description="Flag when letters/word is BELOW")
    class_cuts: Dict[str, float] = Field(..., description="Per word class; modal included but never a cue")
    class_directions: Dict[str, str] = Field(default_factory=dict)
    source: str = Field(default="", description="Calibration dataset id")
    quantile: float = Field(..., gt=0, lt=1)

    @field_validator("class_cuts")
    @classmethod
    def _finite_cuts(cls, v):
        missing = [c for c in WORD_CLASSES if c not in v]
        if missing:
            raise ValueError(f"missing class cuts: {missing}")
        for c, cut in v.items():
            if c not in WORD_CLASSES:
                raise ValueError(f"unknown word class {c!r}")
            if not math.isfinite(cut) or cut < 0:
                raise ValueError(f"class cut for {c} must be finite and nonnegative")
        return {c: float(v[c]) for c in WORD_CLASSES}

    @field_validator("class_directions")
    @classmethod
    def _directions(cls, v):
        for c, d in v.items():
            if c not in WORD_CLASSES:
                raise ValueError(f"unknown word class {c!r}")
            if d not in ("above", "below"):
                raise ValueError(f"direction for {c} must be 'above' or 'below'")
        return {c: v.get(c, "above") for c in WORD_CLASSES}


class FlagResult(BaseModel):
    id: str
    cue_emotion: bool
    cue_simplicity: bool
    cue_lexical: bool
    triggered_classes: List[str] = Field(default_factory=list)
    score: int = Field(..., ge=0, le=3)
    sentiment: Dict[str, float] = Field(default_factory=dict)
    simplicity: float
    classes: Dict[str, float] = Field(default_factory=dict, description="Measured proportions, modal included")

    @model_validator(mode="after")
    def _score_counts_cues(self):
        if self.score != int(self.cue_emotion) + int(self.cue_simplicity) + int(self.cue_lexical):
            raise ValueError("score must equal the number of triggered cues")
        if any(c not in CUE_CLASSES for c in self.triggered_classes):
            raise ValueError("triggered classes must be cue classes")
        if bool(self.triggered_classes) != self.cue_lexical:
            raise ValueError("cue_lexical must match triggered_classes")
        return self


# -----------------------------
# VALIDATION OUTPUT
# -----------------------------

class PairwiseMatrix(BaseModel):
    metric_name: str
    labels: List[str]
    p: List[List[float]]
    transform: str = "identity"
    warnings: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _structure(self):
        k = len(self.labels)
        if len(self.p) != k or any(len(row) != k for row in self.p):
            raise ValueError(f"p must be {k}x{k}")
        for i in range(k):
            if self.p[i][i] != 1.0:
                raise ValueError("diagonal must be 1")
            for j in range(k):
                if not 0.0 <= self.p[i][j] <= 1.0:
                    raise ValueError(f"p[{i}][{j}] = {self.p[i][j]} outside [0, 1]")
                if self.p[i][j] != self.p[j][i]:
                    raise ValueError("p must be symmetric")
        return self

    def value(self, a: str, b: str) -> float:
        return self.p[self.labels.index(a)][self.labels.index(b)]

    def reordered(self, order: List[str]) -> "PairwiseMatrix":
        idx = [self.labels.index(label) for label in order if label in self.labels]
        return PairwiseMatrix(
            metric_name=self.metric_name,
            labels=[self.labels[i] for i in idx],
            p=[[self.p[i][j] for j in idx] for i in idx],
            transform=self.transform,
            warnings=list(self.warnings),
        )
