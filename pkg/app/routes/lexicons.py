from fastapi import APIRouter, HTTPException
from fastapi.responses import PlainTextResponse

from app.lexicon_loader import BUNDLED_LEXICONS
from app.lexicons import dump_lexicon

router = APIRouter(prefix="/lexicons", tags=["Lexicons"])


@router.get("", response_model=dict, summary="Bundled lexicons with entry counts")
def list_lexicons():
    return {
        name: {"positive": len(lex.positive), "negative": len(lex.negative)}
        for name, lex in BUNDLED_LEXICONS.items()
    }


@router.get("/{name}/dump", response_class=PlainTextResponse, summary="Canonical file form of a bundled lexicon")
def dump_endpoint(name: str):
    if name not in BUNDLED_LEXICONS:
        raise HTTPException(404, f"Unknown lexicon '{name}'")
    return dump_lexicon(BUNDLED_LEXICONS[name])
