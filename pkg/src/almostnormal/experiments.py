"""Paper-scale experiments: spectral truncations, pseudospectra, scatter data.

A truncation model is a pair (G, A) with G diagonal nonnegative; cutting at
level lambda keeps the eigenvectors with g_j < lambda.  The counting
function N and the unit-window count N1 control both the Frobenius leakage
of the cut and the trace norm of the truncated self-commutator:

    ||(I-P)BP||_F^2     <= (||B||^2 + (pi^2/6) ||[G,B]||^2) N1      (B = A, A*)
    ||[A_l*, A_l]||_1   <= (2||A||^2 + (pi^2/3) ||[G,A]||^2) N1

Both inequalities are evaluated exactly as stated, no fitted constants.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl

from .core import adjoint, as_cmatrix, hermitian_part, operator_norm, schatten_norm, self_commutator
from .errors import EmptyTruncation
from .gallery import EnsembleSpec, laurent_multiplication, materialize
from .nearest import nearest_normal
from . import fileio


@dataclass(frozen=True)
class TruncationModel:
    """Window operator A written in the eigenbasis of G = diag(g), g ascending."""

    g: np.ndarray
    a: np.ndarray
    norm_a: float
    norm_comm: float

    def __post_init__(self):
        self.g.setflags(write=False)
        self.a.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.g.shape[0]


def truncation_model(g, a) -> TruncationModel:
    """Sort g ascending (stable) and carry A along; store the ambient norms."""
    g = np.asarray(g, dtype=float).ravel()
    a = as_cmatrix(a)
    if g.shape[0] != a.shape[0]:
        raise ValueError("g and A dimensions disagree")
    if (g < 0).any():
        raise ValueError("g must be nonnegative")
    order = np.argsort(g, kind="stable")
    gs = g[order]
    asq = a[np.ix_(order, order)]
    comm = (gs[:, None] - gs[None, :]) * asq  # exact [G, A] for diagonal G
    return TruncationModel(
        g=gs, a=asq, norm_a=operator_norm(asq), norm_comm=operator_norm(comm)
    )


def laurent_truncation_model(coeffs, big_k: int) -> TruncationModel:
    """Truncation model of the banded multiplication window."""
    g, a = laurent_multiplication(coeffs, big_k)
    return truncation_model(np.real(np.diagonal(g)), a)


@dataclass(frozen=True)
class CountingReport:
    lambda_grid: np.ndarray
    n: np.ndarray
    n1: np.ndarray


def counting_functions(g, lambda_grid) -> CountingReport:
    """N(lambda) = #{j : g_j < lambda} and the unit-window supremum
    N1(lambda) = max_{mu <= lambda} (N(mu) - N(mu - 1)).

    The supremum is exact: a unit window holding the most points can slide
    until its left edge touches some g_i, so it suffices to evaluate at
    mu = g_i + 1 and at the grid points themselves.
    """
    g = np.asarray(g, dtype=float).ravel()
    grid = np.atleast_1d(np.asarray(lambda_grid, dtype=float))
    if g.size and (np.diff(g) < 0).any():
        raise ValueError("g must be sorted ascending")
    if grid.size and (np.diff(grid) < 0).any():
        raise ValueError("lambda grid must be sorted ascending")

    n = np.searchsorted(g, grid, side="left").astype(int)

    cands = np.unique(np.concatenate([g + 1.0, grid]))
    counts = np.searchsorted(g, cands, side="left") - np.searchsorted(
        g, cands - 1.0, side="left"
    )
    prefix = np.maximum.accumulate(counts)
    pos = np.searchsorted(cands, grid, side="right") - 1
    n1 = np.where(pos >= 0, prefix[np.clip(pos, 0, None)], 0).astype(int)
    return CountingReport(lambda_grid=grid, n=n, n1=n1)


def truncate(model: TruncationModel, lam: float) -> np.ndarray:
    """Restriction of A to span{e_j : g_j < lambda}, at its reduced dimension."""
    k = int(np.searchsorted(model.g, float(lam), side="left"))
    if k == 0:
        raise EmptyTruncation(lam)
    return model.a[:k, :k].copy()


@dataclass(frozen=True)
class TruncationCheck:
    lam: float
    n: int
    n1: int
    lhs2: float
    rhs2: float
    lhs3: float
    rhs3: float
    passed: bool


def verify_truncation_bounds(model: TruncationModel, lam: float) -> TruncationCheck:
    """Evaluate both truncation inequalities at level lambda.

    lhs2 is the worse of the two leakage branches (B = A and B = A*); the
    ambient constants ||A|| and ||[G, A]|| come from the model.
    """
    lam = float(lam)
    k = int(np.searchsorted(model.g, lam, side="left"))
    if k == 0:
        raise EmptyTruncation(lam)
    n1 = int(counting_functions(model.g, [lam]).n1[0])

    a = model.a
    lhs2_a = float(npl.norm(a[k:, :k]) ** 2)
    lhs2_astar = float(npl.norm(a[:k, k:]) ** 2)
    lhs2 = max(lhs2_a, lhs2_astar)
    rhs2 = (model.norm_a ** 2 + (math.pi ** 2 / 6.0) * model.norm_comm ** 2) * n1

    al = a[:k, :k]
    comm = hermitian_part(adjoint(al) @ al - al @ adjoint(al))
    lhs3 = schatten_norm(comm, 1)
    c_a = 2.0 * model.norm_a ** 2 + (math.pi ** 2 / 3.0) * model.norm_comm ** 2
    rhs3 = c_a * n1

    slack = 1e-9
    passed = lhs2 <= rhs2 * (1 + slack) + 1e-12 and lhs3 <= rhs3 * (1 + slack) + 1e-12
    return TruncationCheck(
        lam=lam, n=k, n1=n1, lhs2=lhs2, rhs2=rhs2, lhs3=lhs3, rhs3=rhs3, passed=passed
    )


SCALING_COLUMNS = ("lambda", "N", "N1", "lhs3", "rhs3", "dist1_witness", "ratio")


def truncation_scaling(
    model: TruncationModel,
    lambda_grid,
    out=None,
    *,
    seed: int,
    restarts: int = 2,
    max_sweeps: int = 80,
    obj_tol: float = 1e-10,
    header_lines=(),
) -> list[dict]:
    """Scaling table: trace-norm witness distance of A_lambda against N(lambda).

    Emits one CSV row per grid level with the inequality data and the
    normalized distance ratio dist1_witness / N.
    """
    rows = []
    for idx, lam in enumerate(lambda_grid):
        check = verify_truncation_bounds(model, lam)
        block = truncate(model, lam)
        rep = nearest_normal(
            block,
            p_list=(1,),
            seed=int(seed) + idx,
            restarts=restarts,
            max_sweeps=max_sweeps,
            obj_tol=obj_tol,
        )
        dist1 = rep.distances[1]
        rows.append(
            {
                "lambda": float(lam),
                "N": check.n,
                "N1": check.n1,
                "lhs3": check.lhs3,
                "rhs3": check.rhs3,
                "dist1_witness": dist1,
                "ratio": dist1 / check.n,
            }
        )
    if out is not None:
        fileio.write_csv(
            out, SCALING_COLUMNS, [[r[c] for c in SCALING_COLUMNS] for r in rows],
            comments=header_lines,
        )
    return rows


@dataclass(frozen=True)
class GridSpec:
    """Square sampling grid: resolution x resolution points centered at center."""

    center: complex
    half_width: float
    resolution: int = 201

    def __post_init__(self):
        if not (self.half_width > 0 and math.isfinite(self.half_width)):
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")

    def points(self) -> np.ndarray:
        xs = np.linspace(self.center.real - self.half_width, self.center.real + self.half_width, self.resolution)
        ys = np.linspace(self.center.imag - self.half_width, self.center.imag + self.half_width, self.resolution)
        return (xs[None, :] + 1j * ys[:, None]).ravel()

    def step(self) -> float:
        return 2.0 * self.half_width / (self.resolution - 1)


@dataclass(frozen=True)
class PseudospectrumReport:
    epsilon: float
    grid: GridSpec
    members: np.ndarray
    sigma_min: np.ndarray
    d_eps: float


def _sigma_min_batch(a: np.ndarray, zs: np.ndarray) -> np.ndarray:
    eye = np.eye(a.shape[0], dtype=complex)
    shifted = a[None, :, :] - zs[:, None, None] * eye[None, :, :]
    return npl.svd(shifted, compute_uv=False)[:, -1]


def pseudospectrum(
    a, eps: float, grid: GridSpec, reference=(), threads: int | None = None
) -> PseudospectrumReport:
    """Grid points z with sigma_min(A - zI) < eps, and their spread d_eps.

    d_eps is the largest distance from a member to the finite reference set
    (0 when there are no members; +inf when members exist but the reference
    is empty).  The caller should size the grid to cover the closed disc of
    radius ||A|| + eps, where the entire pseudospectrum lives.
    """
    a = as_cmatrix(a)
    if not (eps > 0 and math.isfinite(eps)):
        raise ValueError(f"eps must be positive, got {eps}")
    zs = grid.points()
    chunks = [zs[i : i + 4096] for i in range(0, zs.size, 4096)]
    if threads is not None and threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            smin = np.concatenate(list(pool.map(lambda c: _sigma_min_batch(a, c), chunks)))
    else:
        smin = np.concatenate([_sigma_min_batch(a, c) for c in chunks])
    mask = smin < eps
    members = zs[mask]
    ref = np.asarray(reference, dtype=complex).ravel()
    if members.size == 0:
        d_eps = 0.0
    elif ref.size == 0:
        d_eps = math.inf
    else:
        d_eps = float(np.abs(members[:, None] - ref[None, :]).min(axis=1).max())
    return PseudospectrumReport(
        epsilon=float(eps), grid=grid, members=members, sigma_min=smin[mask], d_eps=d_eps
    )


SCATTER_COLUMNS = ("defect", "dist_op_witness", "dist_frob_exact", "lower_bound_op")


def f_scatter(
    specs,
    out=None,
    *,
    seed: int,
    restarts: int = 2,
    max_sweeps: int = 80,
    obj_tol: float = 1e-10,
    header_lines=(),
) -> list[dict]:
    """Defect-versus-distance scatter rows over an ensemble of gallery matrices.

    Every member is rescaled to a contraction on ingestion, so the row-wise
    floor dist_op_witness >= defect / 4 is asserted (a violation would mean
    a broken optimizer or norm, and raises).
    """
    rows = []
    for idx, spec in enumerate(specs):
        if not isinstance(spec, EnsembleSpec):
            raise ValueError(f"expected EnsembleSpec, got {type(spec).__name__}")
        raw = materialize(spec)
        nrm = operator_norm(raw)
        a = raw / nrm if nrm > 1.0 else raw
        defect = operator_norm(self_commutator(a))
        rep = nearest_normal(
            a,
            p_list=(math.inf,),
            seed=int(seed) + idx,
            restarts=restarts,
            max_sweeps=max_sweeps,
            obj_tol=obj_tol,
        )
        dist_op = rep.distances[math.inf]
        floor = defect / 4.0
        if dist_op < floor - 1e-9:
            raise ArithmeticError(
                f"scatter row {idx} ({spec.kind}): witness distance "
                f"{dist_op:.17g} fell below the commutator floor {floor:.17g}"
            )
        rows.append(
            {
                "defect": defect,
                "dist_op_witness": dist_op,
                "dist_frob_exact": rep.frobenius_exact,
                "lower_bound_op": floor,
            }
        )
    if out is not None:
        fileio.write_csv(
            out, SCATTER_COLUMNS, [[r[c] for c in SCATTER_COLUMNS] for r in rows],
            comments=header_lines,
        )
    return rows
