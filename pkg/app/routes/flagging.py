from typing import List

from fastapi import APIRouter

from app.models.headline_models import FlagResult, FlagThresholds
from app.pos_features import make_tagger
from app.schemas import CalibrateRequest, FlagRequest
from app.services.pipeline_service import calibrate_thresholds, extract_features, flag_many

router = APIRouter(tags=["Flagging"])


@router.post(
    "/calibrate",
    response_model=FlagThresholds,
    summary="Cue thresholds from the true-labelled headlines",
)
def calibrate_endpoint(req: CalibrateRequest):
    records = req.to_records()
    features = extract_features(records, req.resolve_lexicons(), make_tagger(req.tagger))
    return calibrate_thresholds(
        records,
        features,
        req.quantile,
        source=req.source,
        class_directions=req.class_directions,
    )


@router.post(
    "/flag",
    response_model=List[FlagResult],
    summary="Count the emotion, simplicity and lexical cues per headline",
)
def flag_endpoint(req: FlagRequest):
    return flag_many(req.to_records(), req.thresholds, req.resolve_lexicons(), make_tagger(req.tagger))
