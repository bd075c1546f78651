from dataclasses import dataclass

from app.errors import NoWords
from app.text_core import TokenizedText, count_letters, count_words

CLI_L_WEIGHT = 0.0588
CLI_S_WEIGHT = 0.296
CLI_CONSTANT = 15.8


@dataclass(frozen=True)
class ReadabilityResult:
    cli_full: float
    letters_per_word: float
    L: float
    S: float

    @property
    def cli_reduced(self) -> float:
        """Headline grade with the sentence and constant terms dropped: 0.0588·L."""
        return CLI_L_WEIGHT * self.L


def coleman_liau_from_counts(letters: int, words: int, sentences: int) -> ReadabilityResult:
    """S is sentences per 100 words, the Coleman-Liau definition."""
    lpw = letters / words
    L = 100.0 * lpw
    S = 100.0 * sentences / words
    return ReadabilityResult(
        cli_full=CLI_L_WEIGHT * L - CLI_S_WEIGHT * S - CLI_CONSTANT,
        letters_per_word=lpw,
        L=L,
        S=S,
    )


def _require_word(text: TokenizedText) -> None:
    if text.word_count() == 0:
        raise NoWords("text contains no word tokens, only numbers or punctuation")


def coleman_liau(text: TokenizedText) -> ReadabilityResult:
    _require_word(text)
    return coleman_liau_from_counts(count_letters(text), count_words(text), text.sentence_count())


def headline_simplicity(text: TokenizedText) -> float:
    """Letters per word: the Simplicity metric used for headlines."""
    _require_word(text)
    return count_letters(text) / count_words(text)
