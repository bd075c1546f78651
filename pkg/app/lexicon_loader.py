from pathlib import Path
from typing import Dict, List, Tuple

from app.errors import InputError
from app.lexicons import PolarityLexicon, load_lexicon
from app.pos_features import BuiltinTagger, load_tagger_model

DATA_DIR = Path(__file__).parent / "data"
LEXICON_DIR = DATA_DIR / "lexicons"
TAGGER_LEXICON_PATH = DATA_DIR / "tagger_lexicon.txt"
GOLD_TAGS_PATH = DATA_DIR / "gold_tags.jsonl"

# Bundled lexicons, in report order.
BUNDLED_LEXICON_FILES: Dict[str, Path] = {
    "LM": LEXICON_DIR / "lm.txt",
    "GENERIC": LEXICON_DIR / "generic.txt",
}

BUNDLED_LEXICONS: Dict[str, PolarityLexicon] = {
    name: load_lexicon(path, name) for name, path in BUNDLED_LEXICON_FILES.items()
}

BUILTIN_TAGGER: BuiltinTagger = load_tagger_model(TAGGER_LEXICON_PATH)


def default_lexicons() -> List[PolarityLexicon]:
    return list(BUNDLED_LEXICONS.values())


def parse_lexicon_spec(spec: str) -> Tuple[str, str]:
    """`NAME=PATH` -> (NAME, PATH)."""
    name, sep, path = spec.partition("=")
    if not sep or not name.strip() or not path.strip():
        raise InputError(f"lexicon spec {spec!r} must look like NAME=PATH")
    return name.strip(), path.strip()


def resolve_lexicons(specs: List[str]) -> List[PolarityLexicon]:
    """Load `NAME=PATH` specs; a bare bundled name (e.g. `LM`) picks the bundled file."""
    if not specs:
        return default_lexicons()
    lexicons = []
    seen = set()
    for spec in specs:
        if "=" not in spec and spec in BUNDLED_LEXICONS:
            lexicon = BUNDLED_LEXICONS[spec]
        else:
            name, path = parse_lexicon_spec(spec)
            lexicon = load_lexicon(path, name)
        if lexicon.name in seen:
            raise InputError(f"lexicon {lexicon.name!r} given twice")
        seen.add(lexicon.name)
        lexicons.append(lexicon)
    return lexicons
