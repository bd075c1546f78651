import io

import numpy as np
import pandas as pd
import pytest

from app.models.headline_models import LABEL_ORDER, FeatureRow, FlagResult, PairwiseMatrix
from app.report import format_p, render_features, render_flags, render_report


def matrix(p, name="simplicity", labels=LABEL_ORDER, warnings=()):
    return PairwiseMatrix(metric_name=name, labels=list(labels), p=p, transform="signed_log1p",
                          warnings=list(warnings))


def identity(k=6):
    return np.ones((k, k)).tolist()


def with_cell(value, i=0, j=5):
    p = np.ones((6, 6))
    p[i, j] = p[j, i] = value
    return p.tolist()


def blocks(cross=0.001):
    p = np.ones((6, 6))
    p[:4, 4:] = cross
    p[4:, :4] = cross
    return p.tolist()


def test_format_p():
    assert format_p(0.0016) == "0.002"
    assert format_p(1.0) == "1.000"
    assert format_p(0.0016, full_precision=True) == "0.0016"


class TestMarkdown:
    def test_identity_prints_one_everywhere(self):
        text = render_report([matrix(identity())])
        body = [line for line in text.splitlines() if line.startswith("| ") and not line.startswith("| |")]
        assert len(body) == 6
        for line in body:
            assert line.count("1.000") == 6
            assert "*" not in line

    def test_headers_use_display_titles(self):
        text = render_report([matrix(identity())])
        assert "| | Pants On Fire | False | Barely True | Half True | Mostly True | True |" in text
        assert "## simplicity (transform: signed_log1p)" in text

    def test_rounding_and_stars(self):
        text = render_report([matrix(with_cell(0.0016))])
        assert "0.002***" in text
        assert "0.0016" not in text

    def test_full_precision(self):
        text = render_report([matrix(with_cell(0.0016))], full_precision=True)
        assert "0.0016***" in text

    def test_block_note(self):
        text = render_report([matrix(blocks())])
        assert "Mostly True and True separate from the other categories at alpha = 0.01." in text

    def test_isolated_category_note(self):
        p = np.ones((6, 6))
        p[5, :5] = p[:5, 5] = 0.03
        text = render_report([matrix(p.tolist())])
        assert "True differs from every other category at alpha = 0.05." in text

    def test_warnings_are_listed(self):
        text = render_report([matrix(identity(), warnings=["zero pooled variance"])])
        assert "- Warning: zero pooled variance" in text

    def test_reorders_to_label_order(self):
        labels = list(reversed(LABEL_ORDER))
        text = render_report([matrix(identity(), labels=labels)])
        assert "| | Pants On Fire |" in text

    def test_empty_has_header_only(self):
        text = render_report([])
        assert text.startswith("# Tukey pairwise p-values")
        assert "##" not in text

    def test_custom_alpha_grid(self):
        text = render_report([matrix(with_cell(0.0016))], alpha_grid=[0.001, 0.01])
        assert "Significance marks: ** p < 0.001, * p < 0.01." in text
        assert "0.002*" in text and "0.002**" not in text


class TestCsv:
    def test_layout(self):
        text = render_report([matrix(with_cell(0.0016)), matrix(identity(), name="class:verb")], fmt="csv")
        frame = pd.read_csv(io.StringIO(text), dtype=str)
        assert list(frame.columns) == ["metric", "category"] + LABEL_ORDER
        assert len(frame) == 12
        assert frame.loc[0, "true"] == "0.002"

    def test_empty_has_header_only(self):
        assert render_report([], fmt="csv") == "metric,category," + ",".join(LABEL_ORDER) + "\n"

    def test_repeatable_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        render_report([matrix(blocks(0.0123456))], a, "csv")
        render_report([matrix(blocks(0.0123456))], b, "csv")
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_report([], fmt="html")


def test_features_csv():
    row = FeatureRow(id="r1", sentiment={"LM": 0.0, "GENERIC": -0.375}, simplicity=4.0, cli_full=-1.5,
                     classes={"adjective": 0.25, "modal": 0.0, "name": 0.125, "number": 0.125, "verb": 0.125})
    text = render_features([row], ["LM", "GENERIC"])
    header, line = text.splitlines()
    assert header == ("id,sentiment:LM,sentiment:GENERIC,simplicity,cli_full,"
                      "class:adjective,class:modal,class:name,class:number,class:verb")
    assert line == "r1,0.0,-0.375,4.0,-1.5,0.25,0.0,0.125,0.125,0.125"


def test_flags_jsonl():
    result = FlagResult(id="x", cue_emotion=True, cue_simplicity=False, cue_lexical=True,
                        triggered_classes=["number"], score=2, simplicity=4.0)
    sink = io.StringIO()
    render_flags([result, result], sink)
    lines = sink.getvalue().splitlines()
    assert len(lines) == 2
    assert '"score": 2' in lines[0]
