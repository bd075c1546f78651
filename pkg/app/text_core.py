"""Tokenization, sentence segmentation and letter counting shared by every metric."""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Tuple, Union

from app.errors import EmptyText, NoWords


class TokenKind(str, Enum):
    word = "word"
    numeric = "numeric"
    punctuation = "punctuation"


@dataclass(frozen=True)
class RawText:
    content: str

    def __post_init__(self):
        if not isinstance(self.content, str) or not self.content.strip():
            raise EmptyText("headline text is empty")


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind
    char_span: Tuple[int, int]

    @property
    def is_countable(self) -> bool:
        return self.kind is not TokenKind.punctuation


@dataclass(frozen=True)
class TokenizedText:
    source: RawText
    tokens: Tuple[Token, ...]
    sentence_breaks: Tuple[int, ...]

    def word_count(self) -> int:
        return sum(1 for t in self.tokens if t.kind is TokenKind.word)

    def countable(self) -> List[Token]:
        """Word and numeric tokens, in order; the unit of tagging and of every ratio."""
        return [t for t in self.tokens if t.is_countable]

    def sentence_count(self) -> int:
        """Closed sentences plus a trailing unpunctuated one; at least 1."""
        last = self.sentence_breaks[-1] if self.sentence_breaks else 0
        trailing = any(t.is_countable for t in self.tokens[last:])
        return max(1, len(self.sentence_breaks) + int(trailing))

    def sentences(self) -> Iterator[Tuple[Token, ...]]:
        start = 0
        for end in self.sentence_breaks:
            yield self.tokens[start:end]
            start = end
        if start < len(self.tokens):
            yield self.tokens[start:]


# -----------------------------
# TOKEN RULES
# -----------------------------

_LETTER = r"[^\W\d_]"
_ALNUM = r"[^\W_]"

_TOKEN_RE = re.compile(
    rf"(?P<acronym>(?:{_LETTER}\.){{2,}})"
    rf"|(?P<numeric>\$?\d+(?:[.,]\d+)*%?(?!{_ALNUM}|['’\-]{_ALNUM}))"
    rf"|(?P<word>{_ALNUM}+(?:['’\-]{_ALNUM}+)*)"
    r"|(?P<punct>\S)"
)

_NUMERIC_PART_RE = re.compile(r"\$?\d+(?:[.,]\d+)*%?|\S")

SENTENCE_TERMINATORS = frozenset(".!?")

ABBREVIATIONS = frozenset({
    "mr", "mrs", "ms", "dr", "prof", "sen", "rep", "gov", "gen", "lt", "col",
    "sgt", "st", "jr", "sr", "vs", "etc", "inc", "co", "corp", "ltd", "no",
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct",
    "nov", "dec", "mt", "ft", "pres",
})


def _has_letter(s: str) -> bool:
    return any(ch.isalpha() for ch in s)


def _split_digit_compound(surface: str, offset: int) -> Iterator[Token]:
    # "2020-21": alnum run with no letters; numerals and separators stay apart
    for m in _NUMERIC_PART_RE.finditer(surface):
        kind = TokenKind.numeric if m.group()[-1:].isdigit() or m.group().endswith("%") else TokenKind.punctuation
        yield Token(m.group(), kind, (offset + m.start(), offset + m.end()))


def _scan(content: str) -> Iterator[Token]:
    for m in _TOKEN_RE.finditer(content):
        span = m.span()
        surface = m.group()
        if m.lastgroup == "numeric":
            yield Token(surface, TokenKind.numeric, span)
        elif m.lastgroup in ("word", "acronym"):
            if _has_letter(surface):
                yield Token(surface, TokenKind.word, span)
            else:
                yield from _split_digit_compound(surface, span[0])
        else:
            yield Token(surface, TokenKind.punctuation, span)


def _sentence_breaks(content: str, tokens: List[Token]) -> List[int]:
    breaks = []
    for i, tok in enumerate(tokens):
        if tok.kind is not TokenKind.punctuation or tok.surface not in SENTENCE_TERMINATORS:
            continue
        end = tok.char_span[1]
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        # "?!" and "..." close once, after the last terminator of the run
        if nxt is not None and nxt.surface in SENTENCE_TERMINATORS and nxt.char_span[0] == end:
            continue
        if end < len(content) and not content[end].isspace():
            continue
        if tok.surface == "." and i > 0:
            prev = tokens[i - 1]
            if (
                prev.kind is TokenKind.word
                and prev.char_span[1] == tok.char_span[0]
                and prev.surface.lower() in ABBREVIATIONS
            ):
                continue
        breaks.append(i + 1)
    return breaks


def tokenize(text: Union[RawText, str]) -> TokenizedText:
    raw = text if isinstance(text, RawText) else RawText(text)
    tokens = list(_scan(raw.content))
    breaks = _sentence_breaks(raw.content, tokens)
    return TokenizedText(source=raw, tokens=tuple(tokens), sentence_breaks=tuple(breaks))


def count_letters(text: TokenizedText) -> int:
    return sum(
        sum(1 for ch in t.surface if ch.isalpha())
        for t in text.tokens
        if t.kind is TokenKind.word
    )


def count_words(text: TokenizedText) -> int:
    n = sum(1 for t in text.tokens if t.is_countable)
    if n == 0:
        raise NoWords("text contains no word or numeric tokens")
    return n
