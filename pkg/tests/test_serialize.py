import math

import numpy as np
import pytest

from solvable1d import canonical_json, csv_text, fmt_float


def test_float_format_is_fixed_width():
    assert fmt_float(0.0) == "0.0000000000000000e+00"
    assert fmt_float(-1.0 / 3.0) == "-3.3333333333333331e-01"
    assert fmt_float(12.0) == "1.2000000000000000e+01"
    with pytest.raises(ValueError):
        fmt_float(math.nan)
    with pytest.raises(ValueError):
        fmt_float(math.inf)


def test_canonical_json_layout():
    doc = {
        "n": 3,
        "ok": True,
        "missing": None,
        "value": 0.5,
        "tags": ["a", "b"],
        "empty": {},
        "arr": np.array([1.0, 2.0]),
    }
    text = canonical_json(doc)
    assert text == canonical_json(doc)  # stable across calls
    assert '"n": 3' in text
    assert '"ok": true' in text
    assert '"missing": null' in text
    assert "5.0000000000000000e-01" in text
    assert text.endswith("}\n")
    import json

    parsed = json.loads(text)
    assert parsed["arr"] == [1.0, 2.0]


def test_canonical_json_rejects_unknown_types():
    with pytest.raises(TypeError):
        canonical_json({"x": object()})


def test_csv_escaping_and_order():
    rows = [
        {"name": "plain", "v": 1.0, "k": 2},
        {"name": 'tri,cky"', "v": None, "k": True},
    ]
    text = csv_text(["name", "v", "k"], rows)
    lines = text.splitlines()
    assert lines[0] == "name,v,k"
    assert lines[1] == "plain,1.0000000000000000e+00,2"
    assert lines[2] == '"tri,cky""",,true'
