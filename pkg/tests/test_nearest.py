"""Diagonal maximization, distance panels, and the commutator lower bound."""

from __future__ import annotations

import math

import numpy as np
import pytest

from almostnormal import (
    adjoint,
    commutator_lower_bound,
    maximize_diagonal,
    nearest_normal,
    operator_norm,
    self_commutator,
    shift_example,
)
from util import random_contraction

SHIFT2 = np.array([[0, 1], [0, 0]], dtype=complex)


def test_normal_input_reaches_zero_distance():
    a = np.diag([1 + 2j, -0.5 + 0j, 3j])
    rep = nearest_normal(a, seed=0, restarts=1)
    assert rep.frobenius_exact < 1e-7
    assert rep.distances[2] < 1e-7
    assert operator_norm(rep.witness - a) < 1e-7


def test_single_jordan_block_hand_value():
    # [[0, 2], [0, 0]]: best diagonal is zero in any basis that beats
    # sqrt(2), and the Frobenius distance is ||offdiag||_F / sqrt(2)
    a = 2.0 * SHIFT2
    rep = nearest_normal(a, seed=1)
    assert abs(rep.frobenius_exact - math.sqrt(2.0)) < 1e-9


@pytest.mark.parametrize("m", [2, 4, 8])
def test_shift_distance_exact_value(m):
    rep = nearest_normal(shift_example(m), seed=5, restarts=2)
    assert abs(rep.frobenius_exact - math.sqrt(m / 4.0)) < 1e-9 * math.sqrt(m)


def test_seed_determinism_bitwise():
    a = random_contraction(5, 77)
    r1 = nearest_normal(a, seed=9, restarts=2, max_sweeps=40)
    r2 = nearest_normal(a, seed=9, restarts=2, max_sweeps=40)
    assert np.array_equal(r1.witness, r2.witness)
    assert r1.objective == r2.objective
    assert r1.objective_history == r2.objective_history


def test_seed_required():
    with pytest.raises(ValueError):
        nearest_normal(SHIFT2, seed=None)
    with pytest.raises(TypeError):
        nearest_normal(SHIFT2)  # keyword-only, no default
    with pytest.raises(ValueError):
        nearest_normal(SHIFT2, seed=0, restarts=0)


def test_objective_history_monotone():
    a = random_contraction(6, 3)
    rep = nearest_normal(a, seed=2, restarts=1, max_sweeps=60)
    hist = np.asarray(rep.objective_history)
    assert (np.diff(hist) >= -1e-12).all()
    assert rep.sweeps == len(hist) - 1   # history starts before sweep one
    assert rep.objective == pytest.approx(hist[-1])


def test_witness_is_normal_and_certified():
    a = random_contraction(5, 21)
    rep = nearest_normal(a, seed=4, restarts=2, max_sweeps=120)
    w = rep.witness
    assert operator_norm(self_commutator(w)) < 1e-10
    # the witness keeps exactly the rotated diagonal, so the squared
    # Frobenius identity is tight: dist^2 + objective = ||A||_F^2
    fro2 = float(np.linalg.norm(a) ** 2)
    assert abs(rep.frobenius_exact ** 2 + rep.objective - fro2) < 1e-10
    assert abs(np.linalg.norm(a - w) - rep.frobenius_exact) < 1e-10
    # basis is unitary
    u = rep.basis
    assert operator_norm(u @ adjoint(u) - np.eye(5)) < 1e-10


@pytest.mark.parametrize("seed", range(10))
def test_sandwich_bounds(seed):
    n = 3 + seed % 4
    a = random_contraction(n, 1000 + seed)
    rep = nearest_normal(a, seed=seed, restarts=1, max_sweeps=30, obj_tol=1e-9)
    for p in (1, 2, math.inf):
        assert rep.lower_bounds[p] <= rep.distances[p] + 1e-9
    assert rep.lower_bounds[2] <= rep.frobenius_exact + 1e-9
    assert rep.frobenius_exact <= rep.distances[2] + 1e-10


def test_commutator_lower_bound_hand_values():
    # [S, S*] = diag(1, -1): trace norm 2, Frobenius sqrt(2), operator 1;
    # ||S|| = 1 so the bounds are the norms over 4
    assert abs(commutator_lower_bound(SHIFT2, 1) - 0.5) < 1e-12
    assert abs(commutator_lower_bound(SHIFT2, 2) - math.sqrt(2) / 4) < 1e-12
    assert abs(commutator_lower_bound(SHIFT2, math.inf) - 0.25) < 1e-12
    assert commutator_lower_bound(np.zeros((3, 3)), 2) == 0.0


def test_maximize_diagonal_returns_unitary():
    a = random_contraction(4, 8)
    u = maximize_diagonal(a, seed=0, restarts=1, max_sweeps=40)
    assert operator_norm(u @ adjoint(u) - np.eye(4)) < 1e-10


def brute_force_two_by_two(a: np.ndarray, grid: int = 400, rounds: int = 12) -> float:
    """Independent check: scan U = [[c, -s e^{-ip}], [s e^{ip}, c]] directly."""
    a11, a12, a21, a22 = complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1])
    fro2 = abs(a11) ** 2 + abs(a12) ** 2 + abs(a21) ** 2 + abs(a22) ** 2

    def objective(theta, phi):
        c, s = np.cos(theta), np.sin(theta)
        e = np.exp(1j * phi)
        d1 = c * c * a11 + c * s * e * a12 + c * s * np.conj(e) * a21 + s * s * a22
        d2 = s * s * a11 - c * s * e * a12 - c * s * np.conj(e) * a21 + c * c * a22
        return np.abs(d1) ** 2 + np.abs(d2) ** 2

    t_lo, t_hi = 0.0, math.pi
    p_lo, p_hi = 0.0, 2.0 * math.pi
    best = -1.0
    bt = bp = 0.0
    for _ in range(rounds):
        ts = np.linspace(t_lo, t_hi, grid)
        ps = np.linspace(p_lo, p_hi, grid)
        vals = objective(ts[:, None], ps[None, :])
        k = int(np.argmax(vals))
        i, j = divmod(k, grid)
        if vals[i, j] > best:
            best, bt, bp = float(vals[i, j]), float(ts[i]), float(ps[j])
        dt = (t_hi - t_lo) / (grid - 1)
        dp = (p_hi - p_lo) / (grid - 1)
        t_lo, t_hi = bt - 2 * dt, bt + 2 * dt
        p_lo, p_hi = bp - 2 * dp, bp + 2 * dp
    return math.sqrt(max(fro2 - best, 0.0))


@pytest.mark.parametrize("seed", range(5))
def test_two_by_two_matches_brute_force(seed):
    a = random_contraction(2, 500 + seed)
    rep = nearest_normal(a, seed=seed, restarts=2)
    bf = brute_force_two_by_two(a)
    assert abs(rep.frobenius_exact - bf) < 1e-6
