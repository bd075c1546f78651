import pytest
from hypothesis import given, strategies as st

from app.errors import NoWords
from app.readability import coleman_liau, coleman_liau_from_counts, headline_simplicity
from app.text_core import tokenize


def test_grade_from_counts():
    r = coleman_liau_from_counts(letters=450, words=100, sentences=4)
    assert r.L == 450
    assert r.S == 4
    assert r.cli_full == pytest.approx(9.476, abs=1e-9)


def test_single_letter_grade_is_negative():
    r = coleman_liau(tokenize("a"))
    assert (r.L, r.S) == (100, 100)
    assert r.cli_full == pytest.approx(-39.52, abs=1e-9)


def test_reduced_grade_keeps_letter_term_only():
    r = coleman_liau(tokenize("Trump won"))
    assert r.cli_reduced == pytest.approx(0.0588 * 400)
    assert r.letters_per_word == 4.0


@pytest.mark.parametrize(
    "text,expected",
    [("Trump won", 4.0), ("a", 1.0), ("Cut 2,300 jobs", 7 / 3)],
)
def test_simplicity(text, expected):
    assert headline_simplicity(tokenize(text)) == expected


def test_sentences_lower_the_full_grade():
    one = coleman_liau(tokenize("Taxes rose sharply again"))
    two = coleman_liau(tokenize("Taxes rose. Sharply again."))
    assert one.letters_per_word == two.letters_per_word
    assert two.cli_full < one.cli_full


@given(st.sampled_from(["", ".", "!", "?!", ",", " ..."]))
def test_punctuation_does_not_change_simplicity(tail):
    assert headline_simplicity(tokenize("Walker cut 300 jobs" + tail)) == 13 / 4


@pytest.mark.parametrize("text", ["2,300 999", "$5 20%!"])
def test_numbers_without_words_are_rejected(text):
    t = tokenize(text)
    with pytest.raises(NoWords):
        headline_simplicity(t)
    with pytest.raises(NoWords):
        coleman_liau(t)
