import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

import numpy as np

from app.config import (
    CUE_CLASSES,
    SIMPLICITY_METRIC,
    WORD_CLASSES,
    AnalysisConfig,
    class_metric,
    sentiment_metric,
)
from app.errors import HeadlineError, MissingLabel, with_record
from app.lexicons import PolarityLexicon, score_sentiment
from app.models.headline_models import (
    LABEL_ORDER,
    FeatureRow,
    FlagResult,
    FlagThresholds,
    HeadlineRecord,
    PairwiseMatrix,
    TruthLabel,
)
from app.pos_features import Tagger, tag, word_class_proportions
from app.readability import coleman_liau
from app.stats import MetricSamples, Transform, tukey_pairwise
from app.text_core import RawText, tokenize

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

COLEMAN_LIAU_METRIC = "coleman_liau"


# ============================================================
# FEATURES
# ============================================================

def features_for(record: HeadlineRecord, lexicons: Sequence[PolarityLexicon], tagger: Tagger) -> FeatureRow:
    try:
        text = tokenize(RawText(record.text))
        readability = coleman_liau(text)
        tagged = tag(text, tagger, record.tags)
        return FeatureRow(
            id=record.id,
            sentiment={lex.name: score_sentiment(text, lex).value for lex in lexicons},
            simplicity=readability.letters_per_word,
            cli_full=readability.cli_full,
            classes=word_class_proportions(tagged).as_dict(),
        )
    except HeadlineError as e:
        raise with_record(e, record.id) from e


def _map(func: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    chunksize = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))


def extract_features(
    records: Sequence[HeadlineRecord],
    lexicons: Sequence[PolarityLexicon],
    tagger: Tagger,
    *,
    workers: int = 1,
) -> List[FeatureRow]:
    """One FeatureRow per record, in record order."""
    rows = _map(partial(features_for, lexicons=list(lexicons), tagger=tagger), list(records), workers)
    logger.info("extracted features for %d records (%d lexicons, tagger=%s)", len(rows), len(lexicons), tagger.kind)
    return rows


# ============================================================
# VALIDATION
# ============================================================

def metric_names(lexicons: Sequence[PolarityLexicon], simplicity_metric: str = "letters_per_word") -> List[str]:
    """Report order: lexicons as configured, then simplicity, then word classes."""
    names = [sentiment_metric(lex.name) for lex in lexicons]
    names.append(SIMPLICITY_METRIC if simplicity_metric == "letters_per_word" else COLEMAN_LIAU_METRIC)
    names.extend(class_metric(c) for c in WORD_CLASSES)
    return names


def metric_value(row: FeatureRow, metric: str) -> float:
    kind, _, name = metric.partition(":")
    if kind == "sentiment":
        return row.sentiment[name]
    if kind == "class":
        return row.classes[name]
    if metric == SIMPLICITY_METRIC:
        return row.simplicity
    if metric == COLEMAN_LIAU_METRIC:
        return row.cli_full
    raise ValueError(f"unknown metric {metric!r}")


def require_labels(records: Iterable[HeadlineRecord], minimum: int = 2) -> Dict[str, int]:
    counts: Counter = Counter()
    for r in records:
        if r.label is None:
            raise MissingLabel("record has no truth label", record_id=r.id)
        counts[r.label.value] += 1
    short = [label for label in LABEL_ORDER if counts[label] < minimum]
    if short:
        raise MissingLabel(
            "every truth label needs at least "
            f"{minimum} records; too few for: {', '.join(short)}"
        )
    return {label: counts[label] for label in LABEL_ORDER}


def validate(
    records: Sequence[HeadlineRecord],
    lexicons: Sequence[PolarityLexicon],
    tagger: Tagger,
    config: Optional[AnalysisConfig] = None,
    *,
    features: Optional[Sequence[FeatureRow]] = None,
) -> List[PairwiseMatrix]:
    config = config or AnalysisConfig()
    require_labels(records)
    if features is None:
        features = extract_features(records, lexicons, tagger, workers=config.workers)

    labels = [r.label.value for r in records]
    matrices = []
    for metric in metric_names(lexicons, config.simplicity_metric):
        samples = MetricSamples.from_pairs(
            metric,
            ((label, metric_value(row, metric)) for label, row in zip(labels, features)),
            LABEL_ORDER,
        )
        matrices.append(
            tukey_pairwise(
                samples,
                Transform(config.transform_for(metric)),
                tol=config.quadrature_tolerance,
                panel_budget=config.panel_budget,
            )
        )
    logger.info("produced %d pairwise matrices over %d records", len(matrices), len(records))
    return matrices


# ============================================================
# CALIBRATION AND FLAGGING
# ============================================================

def nearest_rank(values: Sequence[float], q: float) -> float:
    """Smallest value with at least a fraction `q` of the sample at or below it."""
    return float(np.quantile(np.asarray(values, dtype=float), q, method="inverted_cdf"))


def calibrate_thresholds(
    records: Sequence[HeadlineRecord],
    features: Sequence[FeatureRow],
    quantile: float,
    *,
    source: str = "",
    class_directions: Optional[Dict[str, str]] = None,
) -> FlagThresholds:
    if not 0.0 < quantile < 1.0:
        raise ValueError(f"quantile must lie in (0, 1), got {quantile}")
    directions = {c: (class_directions or {}).get(c, "above") for c in WORD_CLASSES}

    by_id = {row.id: row for row in features}
    true_rows = [by_id[r.id] for r in records if r.label is TruthLabel.true and r.id in by_id]
    if not true_rows:
        raise MissingLabel("calibration needs records labelled true")

    # one cut for every lexicon; the emotion cue fires when any lexicon exceeds it
    strongest = [max((abs(v) for v in row.sentiment.values()), default=0.0) for row in true_rows]
    cuts = {}
    for c in WORD_CLASSES:
        q = quantile if directions[c] == "above" else 1.0 - quantile
        cuts[c] = nearest_rank([row.classes[c] for row in true_rows], q)

    thresholds = FlagThresholds(
        sentiment_abs_cut=nearest_rank(strongest, quantile),
        simplicity_cut=nearest_rank([row.simplicity for row in true_rows], 1.0 - quantile),
        class_cuts=cuts,
        class_directions=directions,
        source=source,
        quantile=quantile,
    )
    logger.info(
        "calibrated thresholds on %d true rows at quantile %s: sentiment>%s simplicity<%s",
        len(true_rows), quantile, thresholds.sentiment_abs_cut, thresholds.simplicity_cut,
    )
    return thresholds


def cues_for(row: FeatureRow, thresholds: FlagThresholds) -> FlagResult:
    cue_emotion = any(abs(v) > thresholds.sentiment_abs_cut for v in row.sentiment.values())
    cue_simplicity = row.simplicity < thresholds.simplicity_cut

    triggered = []
    for c in WORD_CLASSES:
        if c not in CUE_CLASSES:
            continue
        value, cut = row.classes[c], thresholds.class_cuts[c]
        if thresholds.class_directions.get(c, "above") == "above":
            hit = value > cut
        else:
            hit = value < cut
        if hit:
            triggered.append(c)

    cue_lexical = bool(triggered)
    return FlagResult(
        id=row.id,
        cue_emotion=cue_emotion,
        cue_simplicity=cue_simplicity,
        cue_lexical=cue_lexical,
        triggered_classes=triggered,
        score=int(cue_emotion) + int(cue_simplicity) + int(cue_lexical),
        sentiment=dict(row.sentiment),
        simplicity=row.simplicity,
        classes=dict(row.classes),
    )


def flag(
    headline: HeadlineRecord,
    thresholds: FlagThresholds,
    lexicons: Sequence[PolarityLexicon],
    tagger: Tagger,
) -> FlagResult:
    return cues_for(features_for(headline, lexicons, tagger), thresholds)


def flag_many(
    headlines: Sequence[HeadlineRecord],
    thresholds: FlagThresholds,
    lexicons: Sequence[PolarityLexicon],
    tagger: Tagger,
    *,
    workers: int = 1,
) -> List[FlagResult]:
    rows = extract_features(headlines, lexicons, tagger, workers=workers)
    return [cues_for(row, thresholds) for row in rows]
