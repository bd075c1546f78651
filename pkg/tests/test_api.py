import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.models.headline_models import LABEL_ORDER

client = TestClient(app)

CONSTRUCTED = "Shocking! Evil liar Obama bans ALL 999 guns"


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_info():
    body = client.get("/info").json()
    assert body["labels"] == LABEL_ORDER
    assert body["lexicons"] == ["LM", "GENERIC"]
    assert body["tagger_lexicon_size"] > 0


def test_lexicons():
    body = client.get("/lexicons").json()
    assert set(body) == {"LM", "GENERIC"}
    assert body["GENERIC"]["negative"] > 0


def test_lexicon_dump():
    r = client.get("/lexicons/GENERIC/dump")
    assert r.status_code == 200
    assert r.text.startswith("# lexicon: GENERIC\n[positive]\n")
    assert client.get("/lexicons/NOPE/dump").status_code == 404


def test_features():
    r = client.post("/features", json={"records": [{"id": "x", "text": CONSTRUCTED}]})
    assert r.status_code == 200
    (row,) = r.json()
    assert row["simplicity"] == 4.0
    assert row["sentiment"]["GENERIC"] == pytest.approx(-0.375)


def test_features_unknown_lexicon():
    r = client.post("/features", json={"records": [{"id": "x", "text": "Taxes rose"}], "lexicons": ["NOPE"]})
    assert r.status_code == 400
    assert r.json()["error"] == "InputError"


def test_features_bad_label():
    r = client.post("/features", json={"records": [{"id": "x", "text": "Taxes rose", "label": "maybe"}]})
    assert r.status_code == 400
    assert r.json()["error"] == "UnknownLabel"


def test_features_punctuation_only():
    r = client.post("/features", json={"records": [{"id": "p", "text": "?!"}]})
    assert r.status_code == 400
    assert r.json()["error"] == "NoWords"
    assert "'p'" in r.json()["detail"]


def test_validate(small_dataset_rows):
    r = client.post("/validate", json={"records": small_dataset_rows, "transform": "identity"})
    assert r.status_code == 200
    matrices = r.json()
    assert [m["metric_name"] for m in matrices][:3] == ["sentiment:LM", "sentiment:GENERIC", "simplicity"]
    assert all(m["labels"] == LABEL_ORDER for m in matrices)
    assert all(m["transform"] == "identity" for m in matrices)


def test_validate_missing_labels(small_dataset_rows):
    rows = [r for r in small_dataset_rows if r["label"] != "true"]
    r = client.post("/validate", json={"records": rows})
    assert r.status_code == 400
    assert r.json()["error"] == "MissingLabel"


def test_calibrate_then_flag(small_dataset_rows):
    r = client.post("/calibrate", json={"records": small_dataset_rows, "quantile": 0.5})
    assert r.status_code == 200
    thresholds = r.json()
    assert thresholds["quantile"] == 0.5
    assert thresholds["source"] == "request"

    r = client.post("/flag", json={"records": [{"id": "x", "text": CONSTRUCTED}], "thresholds": thresholds})
    assert r.status_code == 200
    (result,) = r.json()
    assert result["score"] == int(result["cue_emotion"]) + int(result["cue_simplicity"]) + int(result["cue_lexical"])


def test_calibrate_rejects_quantile_one(small_dataset_rows):
    r = client.post("/calibrate", json={"records": small_dataset_rows, "quantile": 1.0})
    assert r.status_code == 422


def test_dataset_check():
    rows = [
        {"id": "1", "text": "Taxes rose", "label": "true"},
        {"id": "1", "text": "Taxes fell", "label": "false"},
        {"id": "2", "text": "...", "label": "false"},
        {"id": "3", "text": "Jobs grew", "label": "sometimes"},
        {"id": "4", "text": "Jobs grew", "tags": "NNS"},
    ]
    body = client.post("/datasets/check", json={"rows": rows}).json()
    assert body["valid"] is False
    paths = [e["path"] for e in body["errors"]]
    assert paths == ["$[1].id", "$[2].text", "$[3].label", "$[4].tags"]
    assert body["summary"]["total_rows"] == 5
    assert body["compatibility"]["can_validate"] is False


def test_dataset_check_clean(small_dataset_rows):
    body = client.post("/datasets/check", json={"rows": small_dataset_rows}).json()
    assert body["valid"] is True
    assert body["summary"]["label_counts"] == {label: 2 for label in LABEL_ORDER}
    assert body["compatibility"] == {"can_extract": True, "can_validate": True, "can_calibrate": True}


def test_dataset_check_not_a_list():
    body = client.post("/datasets/check", json={"rows": {"id": "1"}}).json()
    assert body["valid"] is False
    assert body["errors"][0]["path"] == "$"


def test_dataset_check_numbers_only_and_numeric_label():
    rows = [
        {"id": "1", "text": "2,300 999", "label": "true"},
        {"id": "2", "text": "Jobs grew", "label": 5},
    ]
    body = client.post("/datasets/check", json={"rows": rows}).json()
    assert [e["path"] for e in body["errors"]] == ["$[0].text", "$[1].label"]


def test_features_numbers_only_is_400():
    r = client.post("/features", json={"records": [{"id": "n1", "text": "2,300 999"}]})
    assert r.status_code == 400
    assert "n1" in r.json()["detail"]
