"""Serialization round trips and byte determinism of artifacts."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from almostnormal import load_matrix, read_csv, save_matrix, write_csv, write_report
from almostnormal.fileio import format_float


def test_save_load_bit_exact(tmp_path):
    a = np.array(
        [
            [1 / 3 + 1e-300j, -0.0 + 2j],
            [math.pi - 1j / 7, 123456789.123456789 + 0j],
        ]
    )
    path = tmp_path / "m.json"
    save_matrix(path, a, metadata={"tag": "case"})
    b, meta = load_matrix(path)
    assert np.array_equal(a, b)
    assert b.dtype == complex
    assert meta == {"tag": "case"}


def test_save_is_deterministic(tmp_path):
    a = np.array([[0.1 + 0.2j, 0], [1, 2]], dtype=complex)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_matrix(p1, a, metadata={"z": 1, "a": 2})
    save_matrix(p2, a, metadata={"a": 2, "z": 1})
    assert p1.read_bytes() == p2.read_bytes()


def test_load_rejects_dim_mismatch(tmp_path):
    path = tmp_path / "bad.json"
    doc = {"dim": 3, "data": [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="dim"):
        load_matrix(path)


def test_load_rejects_bad_cells(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"data": [[0.5]]}))
    with pytest.raises(ValueError, match="pair"):
        load_matrix(path)
    path.write_text("")
    with pytest.raises(ValueError, match="empty"):
        load_matrix(path)


def test_load_csv_matrix(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text('0,"1,-2"\n"0,1",3.5\n')
    a, meta = load_matrix(path)
    assert np.array_equal(a, np.array([[0, 1 - 2j], [1j, 3.5]]))
    assert meta == {}


def test_load_csv_rejects_rectangular(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("1,2,3\n4,5,6\n")
    with pytest.raises(ValueError, match="square"):
        load_matrix(path)
    path.write_text("1,apple\n2,3\n")
    with pytest.raises(ValueError, match="cell"):
        load_matrix(path)


def test_write_csv_round_trip(tmp_path):
    path = tmp_path / "t.csv"
    write_csv(
        path,
        ("x", "flag", "k"),
        [[0.1, True, 3], [float("nan") if False else 2.5, False, -1]],
        comments=["alpha", "beta=1"],
    )
    cols, rows, comments = read_csv(path)
    assert cols == ["x", "flag", "k"]
    assert rows == [["0.10000000000000001", "1", "3"], ["2.5", "0", "-1"]]
    assert comments == ["alpha", "beta=1"]
    # floats survive the text round trip exactly
    assert float(rows[0][0]) == 0.1


def test_read_csv_requires_header(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("# only a comment\n")
    with pytest.raises(ValueError, match="header"):
        read_csv(path)


def test_write_report_handles_special_values(tmp_path):
    path = tmp_path / "r.json"
    write_report(
        path,
        {
            "d": math.inf,
            "neg": -math.inf,
            "z": 1 + 2j,
            "arr": np.array([1.0, 2.0]),
            "n": np.int64(4),
        },
    )
    doc = json.loads(path.read_text())
    assert doc["d"] == "inf"
    assert doc["neg"] == "-inf"
    assert doc["z"] == [1.0, 2.0]
    assert doc["arr"] == [1.0, 2.0]
    assert doc["n"] == 4


def test_write_report_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    write_report(p1, {"b": 1.5, "a": {"y": 2, "x": 3}})
    write_report(p2, {"a": {"x": 3, "y": 2}, "b": 1.5})
    assert p1.read_bytes() == p2.read_bytes()


@pytest.mark.parametrize(
    "x", [0.1, 1 / 3, 1e-300, 1e300, -0.0, 2.0, math.pi, 5e-324]
)
def test_format_float_round_trips(x):
    assert float(format_float(x)) == x
