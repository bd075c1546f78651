"""Polarity word lists and the dictionary-ratio sentiment score (the Emotion dimension)."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, Iterable, Union

from app.errors import ConflictingEntry, MalformedLexicon
from app.text_core import TokenizedText, TokenKind, count_words

logger = logging.getLogger(__name__)

SECTIONS = ("positive", "negative")


@dataclass(frozen=True)
class PolarityLexicon:
    name: str
    positive: FrozenSet[str]
    negative: FrozenSet[str]

    def __post_init__(self):
        if not self.positive and not self.negative:
            raise MalformedLexicon(f"lexicon {self.name!r} has no entries")
        both = self.positive & self.negative
        if both:
            raise ConflictingEntry(
                f"lexicon {self.name!r}: listed as positive and negative: {', '.join(sorted(both))}"
            )
        for entry in self.positive | self.negative:
            if not entry or entry != entry.lower() or any(ch.isspace() for ch in entry):
                raise MalformedLexicon(f"lexicon {self.name!r}: bad entry {entry!r}")

    @classmethod
    def from_words(cls, name: str, positive: Iterable[str] = (), negative: Iterable[str] = ()) -> "PolarityLexicon":
        return cls(name, frozenset(w.lower() for w in positive), frozenset(w.lower() for w in negative))

    def swapped(self) -> "PolarityLexicon":
        return PolarityLexicon(self.name, self.negative, self.positive)

    def __len__(self) -> int:
        return len(self.positive) + len(self.negative)


@dataclass(frozen=True)
class SentimentScore:
    value: float
    positive_hits: int
    negative_hits: int
    token_count: int


# -----------------------------
# FILE FORMAT
# -----------------------------

def parse_lexicon(text: str, name: str) -> PolarityLexicon:
    """Read the `[positive]` / `[negative]` line format."""
    sets = {s: set() for s in SECTIONS}
    section = None
    seen_header = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            header = line[1:-1].strip().lower()
            if header not in sets:
                raise MalformedLexicon(f"lexicon {name!r} line {lineno}: unknown section [{header}]")
            section = header
            seen_header = True
            continue
        if section is None:
            raise MalformedLexicon(f"lexicon {name!r} line {lineno}: entry before any section header")
        if any(ch.isspace() for ch in line):
            raise MalformedLexicon(f"lexicon {name!r} line {lineno}: multi-word entry {line!r}")
        sets[section].add(line.lower())

    if not seen_header or not (sets["positive"] or sets["negative"]):
        raise MalformedLexicon(f"lexicon {name!r} is empty")

    conflicts = sets["positive"] & sets["negative"]
    if conflicts:
        raise ConflictingEntry(
            f"lexicon {name!r}: listed as positive and negative: {', '.join(sorted(conflicts))}"
        )
    return PolarityLexicon(name, frozenset(sets["positive"]), frozenset(sets["negative"]))


def load_lexicon(source: Union[str, Path], name: str) -> PolarityLexicon:
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise MalformedLexicon(f"lexicon {name!r}: {path} is not UTF-8 ({e.reason})")
    except OSError as e:
        raise MalformedLexicon(f"lexicon {name!r}: cannot read {path} ({e.strerror or e})")
    lexicon = parse_lexicon(text, name)
    logger.info("loaded lexicon %s from %s: %d positive, %d negative",
                name, path, len(lexicon.positive), len(lexicon.negative))
    return lexicon


def dump_lexicon(lexicon: PolarityLexicon) -> str:
    """Canonical file form; `parse_lexicon(dump_lexicon(x))` rebuilds x and dumps identically."""
    lines = [f"# lexicon: {lexicon.name}", "[positive]"]
    lines.extend(sorted(lexicon.positive))
    lines.append("")
    lines.append("[negative]")
    lines.extend(sorted(lexicon.negative))
    return "\n".join(lines) + "\n"


# -----------------------------
# SCORING
# -----------------------------

def score_sentiment(text: TokenizedText, lexicon: PolarityLexicon) -> SentimentScore:
    total = count_words(text)
    pos = neg = 0
    for tok in text.tokens:
        if tok.kind is not TokenKind.word:
            continue
        w = tok.surface.lower()
        if w in lexicon.positive:
            pos += 1
        elif w in lexicon.negative:
            neg += 1
    return SentimentScore(
        value=(pos - neg) / total,
        positive_hits=pos,
        negative_hits=neg,
        token_count=total,
    )
