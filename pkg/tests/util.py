"""Shared test fixtures: seeded random matrices with known structure."""

from __future__ import annotations

import numpy as np
import numpy.linalg as npl


def assert_close_multiset(got, want, tol: float) -> None:
    """Greedy nearest matching of two complex multisets within tol."""
    got = [complex(z) for z in np.asarray(got).ravel()]
    want = [complex(z) for z in np.asarray(want).ravel()]
    assert len(got) == len(want)
    for w in want:
        i = min(range(len(got)), key=lambda k: abs(got[k] - w))
        assert abs(got[i] - w) <= tol, f"no match for {w}: nearest {got[i]}"
        got.pop(i)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = npl.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_contraction(n: int, seed: int) -> np.ndarray:
    """Dense complex matrix scaled to operator norm exactly <= 1."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return z / npl.norm(z, 2)


def random_normal_with_spectrum(n: int, seed: int, radius: float = 1.0):
    """(A, eigenvalues, basis): A = U diag(lam) U* with Haar U.

    Eigenvalues are drawn uniformly from the radius disc, kept well separated
    so spectral computations downstream are unambiguous.
    """
    rng = np.random.default_rng(seed)
    lam = np.empty(n, dtype=complex)
    count = 0
    while count < n:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) > radius:
            continue
        if count and np.abs(lam[:count] - z).min() < 1e-3 * radius:
            continue
        lam[count] = z
        count += 1
    u = haar_unitary(n, rng)
    a = (u * lam) @ u.conj().T
    return a, lam, u
