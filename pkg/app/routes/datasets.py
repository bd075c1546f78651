from fastapi import APIRouter

from app.dataset_validator import inspect_dataset
from app.schemas import DatasetCheckRequest

router = APIRouter(prefix="/datasets", tags=["Datasets"])


@router.post(
    "/check",
    response_model=dict,
    summary="Report every problem in a dataset",
    description="Returns errors, warnings, per-label counts and which runs the rows can feed.",
)
def check_dataset(req: DatasetCheckRequest):
    return inspect_dataset(req.rows, req.tagger)
