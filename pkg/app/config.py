from typing import Dict, List, Literal, Tuple

from pydantic import BaseModel, Field, field_validator

# -----------------------------
# WORD CLASSES
# -----------------------------

# Tables order: adjective, modal, name, number, verb.
WORD_CLASSES: Tuple[str, ...] = ("adjective", "modal", "name", "number", "verb")

# Modal is measured but is not one of the three reader cues.
CUE_CLASSES: Tuple[str, ...] = ("verb", "adjective", "name", "number")

CLASS_TAGS: Dict[str, frozenset] = {
    "verb": frozenset({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"}),
    "adjective": frozenset({"JJ", "JJR", "JJS"}),
    "modal": frozenset({"MD"}),
    "name": frozenset({"NNP", "NNPS"}),
    "number": frozenset({"CD"}),
}

# -----------------------------
# DEFAULTS
# -----------------------------

DEFAULT_QUANTILE = 0.90
DEFAULT_ALPHA_GRID: Tuple[float, ...] = (0.01, 0.05, 0.10)
REPORT_DECIMALS = 3

# Studentized range quadrature: absolute tolerance per CDF value, max panels.
QUADRATURE_TOLERANCE = 1e-7
QUADRATURE_PANEL_BUDGET = 512

SIMPLICITY_METRIC = "simplicity"

TransformKind = Literal["identity", "signed_log1p"]
SimplicityMetric = Literal["letters_per_word", "coleman_liau"]
CueDirection = Literal["above", "below"]
TaggerKind = Literal["builtin", "pretagged"]


def sentiment_metric(lexicon_name: str) -> str:
    return f"sentiment:{lexicon_name}"


def class_metric(word_class: str) -> str:
    return f"class:{word_class}"


def normalize_transform(name: str) -> str:
    """CLI spelling `signed-log1p` and code spelling `signed_log1p` are both accepted."""
    return name.strip().lower().replace("-", "_")


class AnalysisConfig(BaseModel):
    """Every tunable of a features/validate/calibrate/flag run."""

    lexicons: List[str] = Field(
        default_factory=list,
        description="NAME=PATH specs or bundled names; empty means every bundled lexicon",
    )
    tagger: TaggerKind = Field(
        default="builtin",
        description="builtin: rule tagger; pretagged: tags come with each record",
    )
    transform: TransformKind = Field(
        default="signed_log1p",
        description="Transform applied to every metric before the Tukey test",
    )
    transform_overrides: Dict[str, TransformKind] = Field(
        default_factory=dict,
        description="Per-metric transform, keyed by metric name (e.g. 'simplicity', 'class:verb')",
    )
    simplicity_metric: SimplicityMetric = "letters_per_word"
    quantile: float = Field(default=DEFAULT_QUANTILE, gt=0.0, lt=1.0)
    class_directions: Dict[str, CueDirection] = Field(default_factory=dict)
    alpha_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_ALPHA_GRID))
    quadrature_tolerance: float = Field(default=QUADRATURE_TOLERANCE, gt=0.0, le=1e-3)
    panel_budget: int = Field(default=QUADRATURE_PANEL_BUDGET, ge=1)
    workers: int = Field(default=1, ge=1)
    full_precision: bool = False

    @field_validator("transform", mode="before")
    @classmethod
    def _normalize_transform(cls, v):
        return normalize_transform(v) if isinstance(v, str) else v

    @field_validator("transform_overrides", mode="before")
    @classmethod
    def _normalize_overrides(cls, v):
        if isinstance(v, dict):
            return {k: normalize_transform(t) if isinstance(t, str) else t for k, t in v.items()}
        return v

    @field_validator("class_directions")
    @classmethod
    def _known_classes(cls, v):
        unknown = set(v) - set(WORD_CLASSES)
        if unknown:
            raise ValueError(f"unknown word classes: {sorted(unknown)}")
        return v

    @field_validator("alpha_grid")
    @classmethod
    def _alpha_range(cls, v):
        if not v or any(not 0.0 < a < 1.0 for a in v):
            raise ValueError("alpha levels must lie in (0, 1)")
        return sorted(v)

    def transform_for(self, metric: str) -> str:
        return self.transform_overrides.get(metric, self.transform)

    def direction_for(self, word_class: str) -> str:
        return self.class_directions.get(word_class, "above")
