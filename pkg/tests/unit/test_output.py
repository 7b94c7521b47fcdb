"""
Unit tests for report serialisation.
"""

import csv
import io
import json
import math

from hmi.commands.output import DISCLAIMER, dumps, fmt, render, to_csv, to_markdown
from hmi.schemas.claims import ClaimReport


def _reports():
    return [
        ClaimReport(
            claim_id="D1", status="pass", kind="POINTWISE", domain=[0.0001, 0.999],
            grid={"n": 2000, "spacing": "log", "eps": 1e-4}, min_margin=0.1,
            argmin_x=1.0 / 3.0, points=2100, paper_ref='Theorem psi, "x | y"',
            notes="ok",
        ),
        ClaimReport(
            claim_id="S3", status="fail", kind="ROOT_COUNT", domain=[0.0, 1.0],
            min_margin=-1.0, paper_ref="x^4 + 4x^2 - 1",
        ),
    ]


def test_fmt_is_stable():
    for x in (0.1, 1.0 / 3.0, 1e-300, -2.5e17, 1.0):
        text = fmt(x)
        assert float(text) == x
        assert fmt(float(text)) == text


def test_dumps_is_deterministic():
    obj = {"b": [1.0, math.nan, None, True], "a": {"y": 0.1, "x": "s"}, "c": math.inf}
    text = dumps(obj)
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    parsed = json.loads(text)
    assert parsed["b"] == [1, None, None, True]
    assert parsed["c"] is None
    assert dumps(parsed) == text


def test_json_report_round_trip():
    text = render(_reports(), "json")
    rows = json.loads(text)
    assert [r["claim_id"] for r in rows] == ["D1", "S3"]
    assert "points" not in rows[0]
    assert rows[0]["argmin_x"] == 1.0 / 3.0
    assert rows[1]["argmin_x"] is None
    assert dumps(rows) == text


def test_csv_report():
    rows = list(csv.DictReader(io.StringIO(to_csv(_reports()))))
    assert rows[0]["claim_id"] == "D1"
    assert json.loads(rows[0]["domain"]) == [0.0001, 0.999]
    assert json.loads(rows[0]["grid"]) == {"eps": 0.0001, "n": 2000, "spacing": "log"}
    assert float(rows[0]["argmin_x"]) == 1.0 / 3.0
    assert rows[1]["argmin_x"] == ""
    assert rows[0]["paper_ref"] == 'Theorem psi, "x | y"'


def test_markdown_report():
    text = to_markdown(_reports())
    lines = text.splitlines()
    assert lines[0].startswith("| claim | status |")
    assert lines[2].startswith("| D1 | pass | POINTWISE |")
    assert "x \\| y" in lines[2]
    assert f"_{DISCLAIMER}_" in text
