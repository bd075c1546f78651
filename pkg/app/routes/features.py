from typing import List

from fastapi import APIRouter

from app.models.headline_models import FeatureRow
from app.pos_features import make_tagger
from app.schemas import AnalysisRequest
from app.services.pipeline_service import extract_features

router = APIRouter(prefix="/features", tags=["Features"])


@router.post(
    "",
    response_model=List[FeatureRow],
    summary="Sentiment, simplicity and word-class proportions per headline",
)
def features_endpoint(req: AnalysisRequest):
    return extract_features(req.to_records(), req.resolve_lexicons(), make_tagger(req.tagger))
