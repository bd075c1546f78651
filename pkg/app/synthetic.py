"""Labelled synthetic headline datasets with a controllable simplicity effect.

Every headline has six word/numeric tokens built from a slot template. Letter
totals per headline cycle through a fixed pattern inside each category, so
categories in the same block share the same mean letters-per-word; the
mostly_true/true block adds `6 * planted_shift` letters to every headline.
Pretags are attached so the datasets also drive the pretagged tagger.
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.models.headline_models import LABEL_ORDER, TRUE_BLOCK, HeadlineRecord
from app.rng import get_rng

logger = logging.getLogger(__name__)

DEFAULT_COUNTS: Dict[str, int] = {
    "pants_on_fire": 955,
    "false": 2257,
    "barely_true": 1891,
    "half_true": 2362,
    "mostly_true": 2213,
    "true": 1845,
}

# Letters per headline before the planted shift; ascending so leftovers start at the low end.
LETTER_PATTERN: Tuple[int, ...] = (24, 26, 27, 28, 28, 29, 30, 31, 32, 34)
WORDS_PER_HEADLINE = 6

# ============================================================
# WORD POOLS (by slot, keyed by letter count)
# ============================================================

def _by_length(words: Sequence[str]) -> Dict[int, List[str]]:
    pool: Dict[int, List[str]] = {}
    for w in words:
        pool.setdefault(sum(ch.isalpha() for ch in w), []).append(w)
    return pool


POOLS: Dict[str, Dict[int, List[str]]] = {
    "NAME": _by_length([
        "Lee", "Kim", "Roy",
        "Cruz", "Paul", "Ryan", "Bush",
        "Obama", "Trump", "Biden", "Perry",
        "Romney", "Walker", "Pelosi", "Kasich",
        "Clinton", "Sanders",
        "Santorum", "Gingrich",
    ]),
    "VBD": _by_length([
        "led", "won", "ran", "met",
        "said", "told", "sold", "held", "paid",
        "voted", "fired", "hired", "wrote", "ruled",
        "blamed", "signed", "passed", "vetoed", "raised",
        "claimed", "slashed", "refused", "doubled", "tripled",
        "proposed", "approved", "rejected", "admitted", "declared",
        "announced", "requested", "supported",
        "introduced", "questioned", "considered",
    ]),
    "VB": _by_length([
        "cut", "ban", "end", "add",
        "stop", "veto", "hike", "push",
        "raise", "block", "close", "limit",
        "repeal", "expand", "reduce", "defend",
        "abolish", "require", "protect", "replace",
        "increase", "restrict", "overturn",
    ]),
    "NN": _by_length([
        "tax", "law", "job", "gas", "oil",
        "bill", "plan", "vote", "debt", "rent",
        "state", "court", "price", "board", "party",
        "budget", "county", "senate", "worker", "school",
        "program", "economy", "pension", "company", "teacher",
        "taxpayer", "election", "property", "military", "hospital",
        "president", "insurance", "education", "community", "committee",
        "government", "healthcare", "employment", "department", "population",
        "legislature", "immigration", "corporation", "opportunity",
        "unemployment", "construction", "neighborhood",
    ]),
    "IN": _by_length(["in", "on", "at", "of", "by", "for", "with", "from", "over", "into"]),
    "JJ": _by_length([
        "new", "big", "top", "old",
        "full", "main", "real", "rich",
        "local", "major", "early", "total", "large",
        "public", "recent", "senior", "annual", "former",
        "federal", "foreign", "private", "massive",
        "national", "economic", "official", "personal",
        "financial", "political", "secretive", "universal",
    ]),
    "MD": _by_length(["will"]),
    "CD": {0: ["2", "10", "45", "100", "300", "1,000", "20%"]},
    "NEG": _by_length(["lie", "scam", "fraud", "crisis", "scandal", "disaster", "nightmare", "corruption"]),
    "POS": _by_length(["win", "gain", "boost", "growth", "success", "progress", "advantage", "prosperity"]),
}

SLOT_TAGS: Dict[str, str] = {
    "NAME": "NNP", "VBD": "VBD", "VB": "VB", "NN": "NN", "IN": "IN",
    "JJ": "JJ", "MD": "MD", "CD": "CD", "NEG": "NN", "POS": "NN",
}


def slot_range(slot: str) -> Tuple[int, int]:
    lengths = POOLS[slot].keys()
    return min(lengths), max(lengths)


# ============================================================
# TEMPLATES
# ============================================================

TRUE_TEMPLATES: List[Dict] = [
    {"slots": ("NAME", "VBD", "NN", "IN", "NN", "NN"), "weight": 1},
    {"slots": ("NN", "NN", "VBD", "NN", "IN", "NN"), "weight": 1},
]

FAKE_TEMPLATES: List[Dict] = [
    {"slots": ("NAME", "VBD", "JJ", "NN", "IN", "NAME"), "weight": 3},
    {"slots": ("NAME", "MD", "VB", "JJ", "CD", "NN"), "weight": 2},
    {"slots": ("JJ", "NAME", "VBD", "CD", "JJ", "NN"), "weight": 2},
    {"slots": ("NN", "VBD", "NAME", "JJ", "NN", "NN"), "weight": 3},
]

# Chance that one noun slot carries a polar noun, and that it is negative.
POLAR_RATE: Dict[str, float] = {
    "pants_on_fire": 0.8,
    "false": 0.6,
    "barely_true": 0.55,
    "half_true": 0.5,
    "mostly_true": 0.2,
    "true": 0.2,
}
NEGATIVE_SHARE = 0.75

# Rare extras in the true block: one noun slot becomes an adjective or a number.
TRUE_EXTRA_RATES: Dict[str, float] = {"JJ": 0.05, "CD": 0.05}


def build_pool(templates: Sequence[Dict]) -> List[Dict]:
    pool = []
    for template in templates:
        pool.extend([template] * template["weight"])
    return pool


def roll_template(pool: Sequence[Dict], rng: np.random.Generator) -> Tuple[str, ...]:
    if not pool:
        raise ValueError("template pool is empty")
    return pool[int(rng.integers(len(pool)))]["slots"]


# ============================================================
# HEADLINES
# ============================================================

def _decorate(slots: Tuple[str, ...], label: str, rng: np.random.Generator) -> List[str]:
    slots = list(slots)
    nouns = [i for i, s in enumerate(slots) if s == "NN"]
    rng.shuffle(nouns)

    if label in TRUE_BLOCK:
        for extra, rate in TRUE_EXTRA_RATES.items():
            if nouns and rng.random() < rate:
                slots[nouns.pop()] = extra

    if nouns and rng.random() < POLAR_RATE[label]:
        slots[nouns.pop()] = "NEG" if rng.random() < NEGATIVE_SHARE else "POS"
    return slots


def _split_letters(slots: Sequence[str], total: int, rng: np.random.Generator) -> List[int]:
    lows = [slot_range(s)[0] for s in slots]
    highs = [slot_range(s)[1] for s in slots]
    if not sum(lows) <= total <= sum(highs):
        raise ValueError(f"cannot spread {total} letters over {list(slots)}")
    lengths = list(lows)
    for _ in range(total - sum(lows)):
        open_slots = [i for i, n in enumerate(lengths) if n < highs[i]]
        lengths[open_slots[int(rng.integers(len(open_slots)))]] += 1
    return lengths


def make_headline(slots: Sequence[str], total_letters: int, rng: np.random.Generator) -> Tuple[str, str]:
    """Text and space-separated pretags for a slot sequence with exactly `total_letters` letters."""
    lengths = _split_letters(slots, total_letters, rng)
    words = []
    for slot, n in zip(slots, lengths):
        choices = POOLS[slot][n]
        words.append(choices[int(rng.integers(len(choices)))])
    words[0] = words[0][:1].upper() + words[0][1:]
    return " ".join(words), " ".join(SLOT_TAGS[s] for s in slots)


def letter_totals(n: int, shift: int, rng: np.random.Generator) -> np.ndarray:
    base = np.array([LETTER_PATTERN[i % len(LETTER_PATTERN)] for i in range(n)]) + shift
    return rng.permutation(base)


def generate_fixture(
    seed: int,
    counts: Optional[Mapping[str, int]] = None,
    planted_shift: float = 1.0,
) -> List[HeadlineRecord]:
    counts = dict(DEFAULT_COUNTS if counts is None else counts)
    unknown = set(counts) - set(LABEL_ORDER)
    if unknown:
        raise ValueError(f"unknown labels in counts: {sorted(unknown)}")
    shift = int(round(WORDS_PER_HEADLINE * planted_shift))

    rng = get_rng(seed)
    true_pool = build_pool(TRUE_TEMPLATES)
    fake_pool = build_pool(FAKE_TEMPLATES)

    rows = []
    for label in LABEL_ORDER:
        n = counts.get(label, 0)
        in_true_block = label in TRUE_BLOCK
        totals = letter_totals(n, shift if in_true_block else 0, rng)
        for total in totals:
            slots = roll_template(true_pool if in_true_block else fake_pool, rng)
            slots = _decorate(slots, label, rng)
            text, tags = make_headline(slots, int(total), rng)
            rows.append((label, text, tags))

    order = rng.permutation(len(rows))
    records = [
        HeadlineRecord(id=f"h{i + 1:05d}", text=rows[j][1], label=rows[j][0], tags=rows[j][2])
        for i, j in enumerate(order)
    ]
    logger.info("generated %d synthetic headlines (seed=%d, planted_shift=%s)", len(records), seed, planted_shift)
    return records
