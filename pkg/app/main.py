from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from app.config import WORD_CLASSES
from app.errors import InputError, HeadlineError, NumericalFailure
from app.lexicon_loader import BUILTIN_TAGGER, BUNDLED_LEXICONS
from app.models.headline_models import LABEL_ORDER
from app.routes import datasets, features, flagging, lexicons, validation

VERSION = "1.0.0"

app = FastAPI(
    title="Headline Cue API",
    description="Lexical structure, simplicity and emotion measurements for headlines: "
                "Tukey validation across truth categories and a three-cue flagger.",
    version=VERSION,
)

# ============================================================
# ERRORS
# ============================================================

def _error_body(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "detail": str(exc)}


@app.exception_handler(InputError)
def input_error_handler(request: Request, exc: InputError):
    return JSONResponse(status_code=400, content=_error_body(exc))


@app.exception_handler(ValidationError)
def config_error_handler(request: Request, exc: ValidationError):
    return JSONResponse(status_code=400, content=_error_body(exc))


@app.exception_handler(NumericalFailure)
def numerical_failure_handler(request: Request, exc: NumericalFailure):
    return JSONResponse(status_code=500, content=_error_body(exc))


@app.exception_handler(HeadlineError)
def headline_error_handler(request: Request, exc: HeadlineError):
    return JSONResponse(status_code=500, content=_error_body(exc))


# ============================================================
# HEALTH CHECK
# ============================================================

@app.get("/health", tags=["Health"], response_model=dict)
def health_check():
    return {"status": "ok"}


# ============================================================
# METADATA
# ============================================================

@app.get(
    "/info",
    tags=["Metadata"],
    summary="API info and bundled resources",
    description="Version, truth labels in report order, word classes and bundled lexicons.",
    response_model=dict,
)
def info():
    return {
        "name": "Headline Cue API",
        "version": VERSION,
        "labels": LABEL_ORDER,
        "word_classes": list(WORD_CLASSES),
        "lexicons": list(BUNDLED_LEXICONS),
        "tagger_lexicon_size": len(BUILTIN_TAGGER),
    }


app.include_router(features.router)
app.include_router(validation.router)
app.include_router(flagging.router)
app.include_router(lexicons.router)
app.include_router(datasets.router)
