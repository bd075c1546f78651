import json

import pytest

from app.lexicon_loader import BUILTIN_TAGGER, GOLD_TAGS_PATH, default_lexicons
from app.lexicons import PolarityLexicon
from app.pos_features import PretaggedTagger
from app.services.pipeline_service import extract_features
from app.synthetic import generate_fixture

FIXTURE_SEED = 7


@pytest.fixture
def good_bad():
    return PolarityLexicon.from_words("GB", positive=["good"], negative=["bad"])


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture(scope="session")
def builtin_tagger():
    return BUILTIN_TAGGER


@pytest.fixture(scope="session")
def pretagged():
    return PretaggedTagger()


@pytest.fixture(scope="session")
def gold_rows():
    with GOLD_TAGS_PATH.open(encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


@pytest.fixture(scope="session")
def planted_records():
    return generate_fixture(FIXTURE_SEED)


@pytest.fixture(scope="session")
def planted_features(planted_records, lexicons, pretagged):
    return extract_features(planted_records, lexicons, pretagged)


@pytest.fixture(scope="session")
def null_records():
    return generate_fixture(FIXTURE_SEED, planted_shift=0.0)


@pytest.fixture
def small_dataset_rows():
    """Two headlines per label, enough for validate and calibrate."""
    texts = {
        "pants_on_fire": ["Evil liar Obama bans all guns", "Shocking scam by Perry"],
        "false": ["Walker will cut 300 jobs", "Fake crisis hits the state"],
        "barely_true": ["Perry raised taxes twice", "Budget cuts hurt schools"],
        "half_true": ["Crime fell in Milwaukee last year", "Gas prices are higher now"],
        "mostly_true": ["The governor signed the budget", "Unemployment fell to its lowest level"],
        "true": ["The senate passed the education bill", "Teachers earn less than the national average"],
    }
    rows = []
    for label, pair in texts.items():
        for i, text in enumerate(pair):
            rows.append({"id": f"{label}-{i}", "text": text, "label": label})
    return rows
