from typing import List

from fastapi import APIRouter

from app.config import AnalysisConfig
from app.models.headline_models import PairwiseMatrix
from app.pos_features import make_tagger
from app.schemas import ValidateRequest
from app.services.pipeline_service import validate

router = APIRouter(prefix="/validate", tags=["Validation"])


@router.post(
    "",
    response_model=List[PairwiseMatrix],
    summary="Tukey pairwise p-value matrix per metric",
    description="One matrix per lexicon, one for simplicity and one per word class, categories in truth-label order.",
)
def validate_endpoint(req: ValidateRequest):
    config = AnalysisConfig(
        tagger=req.tagger,
        transform=req.transform,
        transform_overrides=req.transform_overrides,
        simplicity_metric=req.simplicity_metric,
    )
    return validate(req.to_records(), req.resolve_lexicons(), make_tagger(req.tagger), config)
