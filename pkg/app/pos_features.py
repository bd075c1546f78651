"""Part-of-speech tagging and word-class proportions (the Lexical structure dimension)."""

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

from app.config import CLASS_TAGS
from app.errors import MalformedLexicon, TagCountMismatch, UnknownTag
from app.text_core import Token, TokenizedText, TokenKind, count_words

logger = logging.getLogger(__name__)


class PosTag(str, Enum):
    NN = "NN"
    NNS = "NNS"
    NNP = "NNP"
    NNPS = "NNPS"
    VB = "VB"
    VBD = "VBD"
    VBG = "VBG"
    VBN = "VBN"
    VBP = "VBP"
    VBZ = "VBZ"
    MD = "MD"
    JJ = "JJ"
    JJR = "JJR"
    JJS = "JJS"
    CD = "CD"
    DT = "DT"
    IN = "IN"
    PRP = "PRP"
    RB = "RB"
    CC = "CC"
    TO = "TO"
    OTHER = "OTHER"


# Penn Treebank tags outside the inventory; they collapse to OTHER.
PENN_OTHER = frozenset({
    "EX", "FW", "LS", "PDT", "POS", "PRP$", "RBR", "RBS", "RP", "SYM", "UH",
    "WDT", "WP", "WP$", "WRB", "$", "#", "``", "''", "(", ")", ",", ".", ":",
    "-LRB-", "-RRB-", "HYPH", "NFP", "ADD", "AFX", "GW", "XX",
})

_BY_VALUE = {t.value: t for t in PosTag}


def parse_tag(raw: str) -> PosTag:
    value = raw.strip().upper()
    if value in _BY_VALUE:
        return _BY_VALUE[value]
    if value in PENN_OTHER:
        return PosTag.OTHER
    raise UnknownTag(f"tag {raw!r} is not a Penn Treebank tag")


@dataclass(frozen=True)
class TaggedText:
    text: TokenizedText
    tags: Tuple[PosTag, ...]

    def pairs(self) -> List[Tuple[str, PosTag]]:
        return [(t.surface, tag) for t, tag in zip(self.text.countable(), self.tags)]


@dataclass(frozen=True)
class WordClassProportions:
    verb: float
    adjective: float
    modal: float
    name: float
    number: float

    def as_dict(self) -> Dict[str, float]:
        return {
            "adjective": self.adjective,
            "modal": self.modal,
            "name": self.name,
            "number": self.number,
            "verb": self.verb,
        }


# -----------------------------
# TAGGERS
# -----------------------------

class Tagger(Protocol):
    kind: str

    def tag_tokens(self, text: TokenizedText, pretags: Optional[str]) -> List[PosTag]:
        ...


FUNCTION_TAGS = frozenset({PosTag.DT, PosTag.IN, PosTag.CC, PosTag.TO, PosTag.PRP, PosTag.MD})
AUXILIARIES = frozenset({"has", "have", "had", "having", "is", "are", "was", "were", "be", "been", "being", "'s"})
_BASE_VERB_TAGS = frozenset({PosTag.VB, PosTag.VBP})
_PLURAL_SUBJECT_TAGS = frozenset({PosTag.NNS, PosTag.NNPS, PosTag.PRP})

_ADJECTIVE_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ish")
_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ism", "ance", "ence", "ship", "ist")


class BuiltinTagger:
    """Lexicon lookup plus suffix, capitalization and context rules.

    `lexicon` maps lowercase words to their most frequent tag.
    """

    kind = "builtin"

    def __init__(self, lexicon: Mapping[str, PosTag]):
        self.lexicon: Dict[str, PosTag] = dict(lexicon)

    def __len__(self) -> int:
        return len(self.lexicon)

    def tag_tokens(self, text: TokenizedText, pretags: Optional[str] = None) -> List[PosTag]:
        tags: List[PosTag] = []
        prev_word: Optional[str] = None
        for sentence in text.sentences():
            first = True
            for tok in sentence:
                if not tok.is_countable:
                    continue
                prev_tag = tags[-1] if tags else None
                tag = self._tag_one(tok, first, prev_tag, prev_word)
                tags.append(tag)
                prev_word = tok.surface.lower()
                first = False
        return tags

    def _tag_one(self, tok: Token, initial: bool, prev_tag: Optional[PosTag], prev_word: Optional[str]) -> PosTag:
        if tok.kind is TokenKind.numeric or any(ch.isdigit() for ch in tok.surface):
            return PosTag.CD

        surface = tok.surface
        lower = surface.lower()
        known = self.lexicon.get(lower)
        capitalized = surface[:1].isupper()

        if capitalized and not initial:
            if known in FUNCTION_TAGS:
                return known
            return PosTag.NNPS if self._plural_name(lower) else PosTag.NNP

        if known is not None:
            return self._in_context(known, prev_tag, prev_word)

        if capitalized:
            # sentence-initial: plurals of common words fall through to the suffix rules
            stem = self._stem_of_plural(lower) if lower.endswith("s") else None
            if stem is PosTag.NNP:
                return PosTag.NNPS
            if stem is None:
                return PosTag.NNP

        return self._in_context(self._by_suffix(lower), prev_tag, prev_word)

    def _plural_name(self, lower: str) -> bool:
        return lower.endswith("s") and self.lexicon.get(lower[:-1]) is PosTag.NNP

    def _by_suffix(self, lower: str) -> PosTag:
        if lower.endswith("ing") and len(lower) > 4:
            return PosTag.VBG
        if lower.endswith("ed") and len(lower) > 3:
            return PosTag.VBD
        if lower.endswith("ly") and len(lower) > 3:
            return PosTag.RB
        if lower.endswith("est") and len(lower) > 4 and self.lexicon.get(lower[:-3]) is PosTag.JJ:
            return PosTag.JJS
        if lower.endswith("er") and len(lower) > 3 and self.lexicon.get(lower[:-2]) is PosTag.JJ:
            return PosTag.JJR
        if lower.endswith("s") and not lower.endswith("ss") and len(lower) > 2:
            stem = self._stem_of_plural(lower)
            if stem in _BASE_VERB_TAGS:
                return PosTag.VBZ
            return PosTag.NNS
        if lower.endswith(_NOUN_SUFFIXES):
            return PosTag.NN
        if lower.endswith(_ADJECTIVE_SUFFIXES):
            return PosTag.JJ
        return PosTag.NN

    def _stem_of_plural(self, lower: str) -> Optional[PosTag]:
        candidates = [lower[:-1]]
        if lower.endswith("es"):
            candidates.append(lower[:-2])
        if lower.endswith("ies"):
            candidates.append(lower[:-3] + "y")
        for stem in candidates:
            tag = self.lexicon.get(stem)
            if tag is not None:
                return tag
        return None

    @staticmethod
    def _in_context(tag: PosTag, prev_tag: Optional[PosTag], prev_word: Optional[str]) -> PosTag:
        if tag in _BASE_VERB_TAGS:
            if prev_tag in (PosTag.MD, PosTag.TO):
                return PosTag.VB
            if prev_tag in _PLURAL_SUBJECT_TAGS:
                return PosTag.VBP
            return tag
        if tag is PosTag.VBD and prev_word in AUXILIARIES:
            return PosTag.VBN
        return tag


class PretaggedTagger:
    """Tags come with the record as a space-separated string aligned with word/numeric tokens."""

    kind = "pretagged"

    def tag_tokens(self, text: TokenizedText, pretags: Optional[str] = None) -> List[PosTag]:
        expected = count_words(text)
        raw = pretags.split() if pretags else []
        if len(raw) != expected:
            raise TagCountMismatch(f"{len(raw)} tags supplied for {expected} word/numeric tokens")
        tags = [parse_tag(t) for t in raw]
        for tok, t in zip(text.countable(), tags):
            if tok.kind is TokenKind.numeric and t is not PosTag.CD:
                raise UnknownTag(f"numeric token {tok.surface!r} must carry CD, got {t.value}")
        return tags


def load_tagger_model(source: Union[str, Path]) -> BuiltinTagger:
    """`word TAG` per line, `#` comments."""
    lexicon: Dict[str, PosTag] = {}
    path = Path(source)
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLexicon(f"{path} line {lineno}: expected 'word TAG'")
        lexicon[parts[0].lower()] = parse_tag(parts[1])
    logger.info("loaded tagger model from %s: %d words", path, len(lexicon))
    return BuiltinTagger(lexicon)


def make_tagger(kind: str, model: Optional[BuiltinTagger] = None) -> Tagger:
    if kind == "pretagged":
        return PretaggedTagger()
    if kind == "builtin":
        if model is None:
            from app.lexicon_loader import BUILTIN_TAGGER
            model = BUILTIN_TAGGER
        return model
    raise ValueError(f"unknown tagger {kind!r}")


# -----------------------------
# OPERATIONS
# -----------------------------

def tag(text: TokenizedText, tagger: Tagger, pretags: Optional[str] = None) -> TaggedText:
    count_words(text)
    return TaggedText(text=text, tags=tuple(tagger.tag_tokens(text, pretags)))


def proportions_of(tags: Sequence[PosTag]) -> WordClassProportions:
    total = len(tags)
    counts = {cls: 0 for cls in CLASS_TAGS}
    for t in tags:
        for cls, members in CLASS_TAGS.items():
            if t.value in members:
                counts[cls] += 1
                break
    return WordClassProportions(**{cls: counts[cls] / total for cls in counts})


def word_class_proportions(tagged: TaggedText) -> WordClassProportions:
    return proportions_of(tagged.tags)
