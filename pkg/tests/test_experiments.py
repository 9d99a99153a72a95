"""Truncation inequalities, counting functions, pseudospectra, and scatter runs."""

from __future__ import annotations

import io
import math

import numpy as np
import pytest

from almostnormal import (
    EmptyTruncation,
    EnsembleSpec,
    GridSpec,
    SCALING_COLUMNS,
    SCATTER_COLUMNS,
    counting_functions,
    f_scatter,
    laurent_truncation_model,
    pseudospectrum,
    read_csv,
    truncate,
    truncation_model,
    truncation_scaling,
    verify_truncation_bounds,
)


def test_truncation_model_sorts_and_freezes():
    g = [2.0, 0.0, 1.0]
    a = np.arange(9, dtype=complex).reshape(3, 3)
    model = truncation_model(g, a)
    assert model.g.tolist() == [0.0, 1.0, 2.0]
    # permutation carries A along: old row 1 and old col 2 land at (0, 1)
    assert model.a[0, 1] == a[1, 2]
    assert model.dim == 3
    with pytest.raises(ValueError):
        model.g[0] = 5.0
    with pytest.raises(ValueError):
        truncation_model([-1.0, 0.0], np.eye(2))
    with pytest.raises(ValueError):
        truncation_model([0.0, 1.0], np.eye(3))


def test_counting_functions_oracle():
    g = [0.0, 1.0, 1.0, 2.0, 2.0]
    rep = counting_functions(g, [0.5, 1.0, 1.5, 2.5])
    assert rep.n.tolist() == [1, 1, 3, 5]
    # unit half-open windows (mu - 1, mu]... largest count up to each level
    rep1 = counting_functions(g, [0.5, 1.5, 2.5])
    assert rep1.n1.tolist() == [1, 2, 2]


def test_counting_functions_empty_and_validation():
    rep = counting_functions([], [0.5, 1.0])
    assert rep.n.tolist() == [0, 0]
    assert rep.n1.tolist() == [0, 0]
    with pytest.raises(ValueError):
        counting_functions([1.0, 0.0], [0.5])
    with pytest.raises(ValueError):
        counting_functions([0.0, 1.0], [1.0, 0.5])


def test_truncate_block():
    model = laurent_truncation_model([0, 0, 1], 3)
    # g = (0, 1, 1, 2, 2, 3, 3) after sorting |k| for k = -3..3
    block = truncate(model, 1.5)
    assert block.shape == (3, 3)
    with pytest.raises(EmptyTruncation):
        truncate(model, 0.0)
    with pytest.raises(EmptyTruncation):
        truncate(model, -1.0)


def test_truncated_shift_commutator_trace_norm():
    # the truncated shift loses one unit of weight at each end of the band,
    # so the symmetrized commutator has trace norm exactly 2
    model = laurent_truncation_model([0, 0, 1], 8)
    check = verify_truncation_bounds(model, 4.0)
    assert abs(check.lhs3 - 2.0) < 1e-12
    assert check.passed
    assert check.rhs3 == pytest.approx((2.0 + math.pi ** 2 / 3.0) * check.n1)
    assert check.lhs2 <= check.rhs2


def test_verify_truncation_empty():
    model = laurent_truncation_model([0, 0, 1], 3)
    with pytest.raises(EmptyTruncation):
        verify_truncation_bounds(model, 0.0)


def test_truncation_scaling_rows_and_csv():
    model = laurent_truncation_model([0, 0, 1], 8)
    buf = io.StringIO()
    rows = truncation_scaling(
        model, [2.0, 4.0, 6.0], buf, seed=3, restarts=1, max_sweeps=30,
        header_lines=["run=test"],
    )
    assert len(rows) == 3
    for r in rows:
        assert set(r) == set(SCALING_COLUMNS)
        assert r["ratio"] == pytest.approx(r["dist1_witness"] / r["N"])
        assert r["lhs3"] <= r["rhs3"]
    # the normalized distance shrinks as the window grows
    assert rows[2]["ratio"] < rows[0]["ratio"]
    buf.seek(0)
    cols, data, comments = read_csv(buf)
    assert cols == list(SCALING_COLUMNS)
    assert len(data) == 3
    assert "run=test" in comments


def test_grid_spec():
    grid = GridSpec(center=1 + 1j, half_width=2.0, resolution=5)
    pts = grid.points()
    assert pts.size == 25
    assert pts[0] == -1 - 1j        # corner: center - (hw + hw i)
    assert pts[-1] == 3 + 3j
    assert grid.step() == 1.0
    with pytest.raises(ValueError):
        GridSpec(center=0j, half_width=0.0)
    with pytest.raises(ValueError):
        GridSpec(center=0j, half_width=1.0, resolution=1)


def test_pseudospectrum_scalar_oracle():
    # for A = [3], sigma_min(A - z) = |3 - z|: membership is the open disc
    a = np.array([[3.0 + 0j]])
    grid = GridSpec(center=3 + 0j, half_width=1.0, resolution=41)
    rep = pseudospectrum(a, 0.5, grid, reference=[3 + 0j])
    assert rep.members.size > 0
    assert (np.abs(rep.members - 3.0) < 0.5).all()
    want = grid.points()[np.abs(grid.points() - 3.0) < 0.5]
    assert np.array_equal(np.sort_complex(rep.members), np.sort_complex(want))
    assert np.allclose(rep.sigma_min, np.abs(rep.members - 3.0))
    assert rep.d_eps <= 0.5


def test_pseudospectrum_reference_semantics():
    a = np.array([[0j]])
    grid = GridSpec(center=0j, half_width=1.0, resolution=21)
    far = pseudospectrum(a, 0.05, GridSpec(center=10 + 0j, half_width=1.0, resolution=11))
    assert far.members.size == 0 and far.d_eps == 0.0
    noref = pseudospectrum(a, 0.5, grid)
    assert noref.members.size > 0 and noref.d_eps == math.inf
    with pytest.raises(ValueError):
        pseudospectrum(a, 0.0, grid)


def test_pseudospectrum_threads_bitwise_equal():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    grid = GridSpec(center=0j, half_width=4.0, resolution=129)  # > 1 chunk
    serial = pseudospectrum(a, 1.0, grid, threads=1)
    threaded = pseudospectrum(a, 1.0, grid, threads=4)
    assert np.array_equal(serial.members, threaded.members)
    assert np.array_equal(serial.sigma_min, threaded.sigma_min)


def test_f_scatter_rows_and_csv():
    specs = [
        EnsembleSpec(kind="shift_example", params={"m": 4}),
        EnsembleSpec(kind="perturbed_normal", params={"dim": 4, "delta": 0.2}, seed=3),
    ]
    buf = io.StringIO()
    rows = f_scatter(specs, buf, seed=0, restarts=1, max_sweeps=40)
    assert len(rows) == 2
    for r in rows:
        assert set(r) == set(SCATTER_COLUMNS)
        assert r["lower_bound_op"] == pytest.approx(r["defect"] / 4.0)
        assert r["dist_op_witness"] >= r["lower_bound_op"] - 1e-9
    # shift: defect 1, frobenius distance exactly 1 for m = 4
    assert rows[0]["defect"] == pytest.approx(1.0)
    assert rows[0]["dist_frob_exact"] == pytest.approx(1.0, abs=1e-7)
    buf.seek(0)
    cols, data, _ = read_csv(buf)
    assert cols == list(SCATTER_COLUMNS)
    assert len(data) == 2


def test_f_scatter_rejects_non_spec():
    with pytest.raises(ValueError):
        f_scatter([{"kind": "shift_example"}], seed=0)
