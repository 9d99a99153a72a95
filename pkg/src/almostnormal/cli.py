"""Command line front end.

Every artifact (matrix JSON, report JSON, CSV table) embeds the resolved
configuration that produced it, so a rerun with the same arguments is byte
identical.  Exit codes: 0 success, 2 usage or validation failure, 3 domain
failure (input violates a mathematical precondition, e.g. not normal).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import fileio
from .core import (
    normal_spectral_decomp,
    normality_defect,
    operator_norm,
    self_commutator,
    NORMAL_TOL,
)
from .errors import DomainError, NotNormal
from .experiments import (
    GridSpec,
    laurent_truncation_model,
    pseudospectrum,
    truncation_scaling,
    verify_truncation_bounds,
    f_scatter,
)
from .fileio import ARTIFACT_VERSION
from .gallery import (
    EnsembleSpec,
    almost_commuting_pair,
    laurent_multiplication,
    perturbed_normal,
    shift_example,
)
from .nearest import nearest_normal
from .partition import Cover, OpenDisc, OpenSquare, finite_spectrum_approx, square_cover
from .surgery import (
    Affine,
    BoundaryPush,
    RadialCollapse,
    graph_normal_approx,
    remove_arc,
    remove_region,
    transport,
)


# ---------------------------------------------------------------- argument types

def _complex_arg(text: str) -> complex:
    """'re' or 're,im'."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def _complex_list_arg(text: str) -> list[complex]:
    """Semicolon-separated complex values: 're,im;re,im;...'."""
    return [_complex_arg(tok) for tok in text.split(";") if tok.strip()]


def _coeff_list_arg(text: str) -> list[complex]:
    """Symbol coefficients: '0,0,1' (reals) or '1,0;0,0;1,0' (complex)."""
    if ";" in text:
        return _complex_list_arg(text)
    try:
        return [complex(float(tok), 0.0) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse coefficients {text!r}")


def _float_list_arg(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse float list {text!r}")


def _int_list_arg(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse int list {text!r}")


def _p_list_arg(text: str) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.lower() in ("inf", "infinity", "oo"):
            out.append(math.inf)
            continue
        try:
            val = float(tok)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad Schatten index {tok!r}")
        out.append(int(val) if val == int(val) else val)
    if not out:
        raise argparse.ArgumentTypeError("empty p list")
    return out


# ---------------------------------------------------------------- config echo

def _config(args: argparse.Namespace, **resolved) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    cfg.update(resolved)
    return fileio._sanitize(cfg)


def _config_line(cfg: dict) -> str:
    return "config=" + json.dumps(cfg, sort_keys=True, separators=(",", ":"))


def _comments(cfg: dict, extra=()) -> list[str]:
    return [f"version={ARTIFACT_VERSION}", _config_line(cfg), *extra]


def _meta(cfg: dict, **extra) -> dict:
    return {"version": ARTIFACT_VERSION, "config": cfg, **extra}


# ---------------------------------------------------------------- gallery

def cmd_gallery_shift(args) -> None:
    a = shift_example(args.m)
    cfg = _config(args)
    fileio.save_matrix(args.out, a, metadata=_meta(cfg))
    print(f"wrote {args.out} (shift contraction, dim {a.shape[0]})")


def cmd_gallery_pair(args) -> None:
    a, b = almost_commuting_pair(args.m)
    cfg = _config(args)
    fileio.save_matrix(args.out_a, a, metadata=_meta(cfg, role="A"))
    fileio.save_matrix(args.out_b, b, metadata=_meta(cfg, role="B"))
    m = args.m
    # dense recomputation, independent of the structural certificates
    norm_a = operator_norm(a)
    norm_b = operator_norm(b)
    comm_bb = operator_norm(self_commutator(b))
    comm_ab = operator_norm(a @ b - b @ a)
    slack = 1e-9
    passed = (
        abs(norm_a - 1.0) <= 1e-12
        and norm_b <= 1.0 + 1e-12
        and comm_bb <= 4.0 / m + slack
        and comm_ab <= 2.0 / m + slack
    )
    payload = {
        "config": cfg,
        "version": ARTIFACT_VERSION,
        "m": m,
        "dim": a.shape[0],
        "norm_a": norm_a,
        "norm_b": norm_b,
        "comm_self_b": comm_bb,
        "comm_self_b_bound": 4.0 / m,
        "comm_ab": comm_ab,
        "comm_ab_bound": 2.0 / m,
        "passed": passed,
    }
    if args.report:
        fileio.write_report(args.report, payload)
    print(
        f"wrote {args.out_a}, {args.out_b} (dim {a.shape[0]}); "
        f"||[B*,B]||={comm_bb:.6g} <= {4.0 / m:.6g}, "
        f"||[A,B]||={comm_ab:.6g} <= {2.0 / m:.6g}, passed={passed}"
    )
    if not passed:
        raise ArithmeticError("almost-commuting pair failed dense verification")


def cmd_gallery_perturbed(args) -> None:
    if args.delta < 0:
        raise ValueError(f"delta must be nonnegative, got {args.delta}")
    a = perturbed_normal(args.dim, args.delta, args.seed)
    cfg = _config(args)
    fileio.save_matrix(args.out, a, metadata=_meta(cfg))
    print(f"wrote {args.out} (perturbed normal, dim {args.dim}, delta {args.delta})")


def cmd_gallery_laurent(args) -> None:
    g, a = laurent_multiplication(args.coeffs, args.K)
    d = (len(args.coeffs) - 1) // 2
    bound = float(sum(abs(s) * abs(c) for s, c in zip(range(-d, d + 1), args.coeffs)))
    cfg = _config(args)
    fileio.save_matrix(args.out_a, a, metadata=_meta(cfg, role="A", comm_bound=bound))
    fileio.save_matrix(args.out_g, g, metadata=_meta(cfg, role="G"))
    print(f"wrote {args.out_a}, {args.out_g} (dim {a.shape[0]}, ||[G,A]|| <= {bound:.6g})")


# ---------------------------------------------------------------- nearest

def cmd_nearest(args) -> None:
    a, _ = fileio.load_matrix(args.matrix)
    rep = nearest_normal(
        a,
        p_list=tuple(args.p),
        seed=args.seed,
        restarts=args.restarts,
        max_sweeps=args.max_sweeps,
        obj_tol=args.obj_tol,
    )
    cfg = _config(args)
    payload = {
        "config": cfg,
        "version": ARTIFACT_VERSION,
        "dim": a.shape[0],
        "objective": rep.objective,
        "frobenius_exact": rep.frobenius_exact,
        "sweeps": rep.sweeps,
        "converged": rep.converged,
        "objective_history": list(rep.objective_history),
        "distances": {str(p): v for p, v in rep.distances.items()},
        "lower_bounds": {str(p): v for p, v in rep.lower_bounds.items()},
    }
    fileio.write_report(args.report, payload)
    if args.witness:
        fileio.save_matrix(args.witness, rep.witness, metadata=_meta(cfg))
    shown = ", ".join(f"p={p}: {v:.6g}" for p, v in rep.distances.items())
    print(
        f"wrote {args.report} (dim {a.shape[0]}, sweeps {rep.sweeps}, "
        f"frobenius_exact {rep.frobenius_exact:.6g}; witness distances {shown})"
    )


# ---------------------------------------------------------------- partition

def _cover_from_file(path) -> Cover:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "regions" not in doc:
        raise ValueError("cover JSON must be an object with a 'regions' list")
    regions = []
    for i, item in enumerate(doc["regions"]):
        kind = item.get("kind")
        center = complex(float(item["center"][0]), float(item["center"][1]))
        if kind == "disc":
            regions.append(OpenDisc(center=center, radius=float(item["radius"])))
        elif kind == "square":
            regions.append(OpenSquare(center=center, side=float(item["side"])))
        else:
            raise ValueError(f"region {i}: unknown kind {kind!r} (want disc|square)")
    if not regions:
        raise ValueError("cover has no regions")
    return Cover(tuple(regions))


def _region_doc(region) -> dict:
    if isinstance(region, OpenDisc):
        return {
            "kind": "disc",
            "center": [region.center.real, region.center.imag],
            "radius": region.radius,
            "diameter": region.diameter(),
        }
    return {
        "kind": "square",
        "center": [region.center.real, region.center.imag],
        "side": region.side,
        "diameter": region.diameter(),
    }


def cmd_partition(args) -> None:
    a, _ = fileio.load_matrix(args.matrix)
    dec = normal_spectral_decomp(a)
    if args.side is not None:
        cover = square_cover(dec.eigenvalues, args.side)
    else:
        cover = _cover_from_file(args.cover)
    fsa = finite_spectrum_approx(dec, cover)
    roi = fsa.resolution
    ranks = [int(round(float(np.real(np.trace(p))))) for p in roi.projections]
    cfg = _config(args)
    payload = {
        "config": cfg,
        "version": ARTIFACT_VERSION,
        "dim": a.shape[0],
        "regions": [_region_doc(r) for r in cover.regions],
        "labels": [[z.real, z.imag] for z in roi.labels],
        "assignment": [int(k) for k in roi.assignment],
        "ranks": ranks,
        "multiplicity": cover.multiplicity(dec.eigenvalues),
        "max_diameter": cover.max_diameter(),
        "error_bound": fsa.error_bound,
        "error_actual": fsa.error_actual,
    }
    fileio.write_report(args.report, payload)
    if args.approx:
        fileio.save_matrix(args.approx, fsa.matrix, metadata=_meta(cfg))
    print(
        f"wrote {args.report} ({len(cover.regions)} regions, "
        f"error {fsa.error_actual:.6g} <= bound {fsa.error_bound:.6g})"
    )


# ---------------------------------------------------------------- surgery

def _surgery_common(args) -> tuple[np.ndarray, "object", dict]:
    a, _ = fileio.load_matrix(args.matrix)
    dec = normal_spectral_decomp(a)
    return a, dec, _config(args)


def _write_surgery(args, cfg, out, payload) -> None:
    fileio.save_matrix(args.out, out, metadata=_meta(cfg))
    payload = {"config": cfg, "version": ARTIFACT_VERSION, **payload}
    if args.report:
        fileio.write_report(args.report, payload)


def cmd_surgery_remove_disc(args) -> None:
    _, dec, cfg = _surgery_common(args)
    disc = OpenDisc(center=args.center, radius=args.radius)
    mu = args.mu if args.mu is not None else disc.center
    res = remove_region(dec, disc, mu)
    _write_surgery(
        args,
        cfg,
        res.output,
        {
            "moved_count": res.moved_count,
            "perturbation_norm": res.perturbation_norm,
            "bound": res.bound,
        },
    )
    print(
        f"wrote {args.out} (moved {res.moved_count} eigenvalues, "
        f"perturbation {res.perturbation_norm:.6g} <= {res.bound:.6g})"
    )


def cmd_surgery_remove_arc(args) -> None:
    _, dec, cfg = _surgery_common(args)
    disc = OpenDisc(center=args.center, radius=args.radius)
    res = remove_arc(dec, disc, args.e_minus, args.e_plus)
    _write_surgery(
        args,
        cfg,
        res.output,
        {
            "moved_count": res.moved_count,
            "perturbation_norm": res.perturbation_norm,
            "bound": res.bound,
        },
    )
    print(
        f"wrote {args.out} (moved {res.moved_count} eigenvalues, "
        f"perturbation {res.perturbation_norm:.6g} <= {res.bound:.6g})"
    )


def cmd_surgery_transport(args) -> None:
    _, dec, cfg = _surgery_common(args)
    if args.map == "affine":
        if args.a is None or args.b is None:
            raise ValueError("--map affine requires --a and --b")
        phi = Affine(a=args.a, b=args.b)
    elif args.map == "radial-collapse":
        if args.center is None or args.radius is None:
            raise ValueError("--map radial-collapse requires --center and --radius")
        phi = RadialCollapse(disc=OpenDisc(center=args.center, radius=args.radius))
    else:  # boundary-push
        if args.center is None or args.radius is None or args.anchor is None:
            raise ValueError("--map boundary-push requires --center, --radius, --anchor")
        phi = BoundaryPush(
            disc=OpenDisc(center=args.center, radius=args.radius), anchor=args.anchor
        )
    out = transport(dec, phi)
    new_eigs = phi(dec.eigenvalues)
    pert = float(np.abs(new_eigs - dec.eigenvalues).max()) if dec.dim else 0.0
    _write_surgery(args, cfg, out, {"perturbation_norm": pert, "map": args.map})
    print(f"wrote {args.out} (map {args.map}, perturbation {pert:.6g})")


def cmd_surgery_graph(args) -> None:
    _, dec, cfg = _surgery_common(args)
    out, rep = graph_normal_approx(dec, args.eps)
    _write_surgery(
        args,
        cfg,
        out,
        {
            "eps": rep.eps,
            "r": rep.r,
            "scale": rep.scale,
            "max_shift": rep.max_shift,
            "perturbation_norm": rep.perturbation_norm,
            "bound": rep.bound,
            "output_defect": normality_defect(out),
            "output_norm": operator_norm(out),
        },
    )
    print(
        f"wrote {args.out} (graph approx, perturbation {rep.perturbation_norm:.6g} "
        f"<= {rep.bound:.6g}, output norm {operator_norm(out):.6g})"
    )


# ---------------------------------------------------------------- truncate

TRUNCATE_COLUMNS = (
    "lambda", "N", "N1", "lhs2", "rhs2", "lhs3", "rhs3", "passed",
    "dist1_witness", "ratio",
)


def cmd_truncate(args) -> None:
    model = laurent_truncation_model(args.coeffs, args.K)
    grid = args.grid
    checks = [verify_truncation_bounds(model, lam) for lam in grid]
    cfg = _config(args)
    scaling = truncation_scaling(
        model,
        grid,
        out=None,
        seed=args.seed,
        restarts=args.restarts,
        max_sweeps=args.max_sweeps,
        obj_tol=args.obj_tol,
    )
    rows = []
    for check, srow in zip(checks, scaling):
        rows.append(
            [
                check.lam, check.n, check.n1, check.lhs2, check.rhs2,
                check.lhs3, check.rhs3, check.passed,
                srow["dist1_witness"], srow["ratio"],
            ]
        )
    fileio.write_csv(args.out, TRUNCATE_COLUMNS, rows, comments=_comments(cfg))
    n_pass = sum(c.passed for c in checks)
    print(f"wrote {args.out} ({len(rows)} levels, {n_pass}/{len(rows)} passed)")
    if n_pass != len(rows):
        raise ArithmeticError("a truncation inequality failed; see the CSV")


# ---------------------------------------------------------------- pseudospec

def cmd_pseudospec(args) -> None:
    a, _ = fileio.load_matrix(args.matrix)
    nrm = operator_norm(a)
    center = args.center if args.center is not None else 0j
    half_width = (
        args.half_width if args.half_width is not None else abs(center) + nrm + 2.0 * args.eps
    )
    grid = GridSpec(center=center, half_width=half_width, resolution=args.resolution)
    if args.reference is not None:
        ref = args.reference
    else:
        try:
            ref = normal_spectral_decomp(a).eigenvalues
        except NotNormal:
            ref = ()
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    rep = pseudospectrum(a, args.eps, grid, reference=ref, threads=threads)
    cfg = _config(
        args,
        center=center,
        half_width=half_width,
        threads=threads,
        reference=list(np.asarray(ref, dtype=complex)),
    )
    extra = [
        f"members={rep.members.size}",
        f"d_eps={fileio.format_float(rep.d_eps)}",
        f"grid_step={fileio.format_float(grid.step())}",
    ]
    rows = [
        [z.real, z.imag, s] for z, s in zip(rep.members, rep.sigma_min)
    ]
    fileio.write_csv(args.out, ("re", "im", "sigma_min"), rows, comments=_comments(cfg, extra))
    print(
        f"wrote {args.out} ({rep.members.size} members of the {args.eps:g}-pseudospectrum, "
        f"d_eps {rep.d_eps:.6g}, grid step {grid.step():.6g})"
    )


# ---------------------------------------------------------------- scatter

def _specs_from_file(path) -> list[EnsembleSpec]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, list) or not doc:
        raise ValueError("ensemble spec JSON must be a nonempty list")
    specs = []
    for i, item in enumerate(doc):
        if not isinstance(item, dict) or "kind" not in item:
            raise ValueError(f"spec {i}: expected an object with a 'kind' field")
        seed = item.get("seed")
        specs.append(
            EnsembleSpec(
                kind=str(item["kind"]),
                params=dict(item.get("params") or {}),
                seed=None if seed is None else int(seed),
            )
        )
    return specs


def cmd_scatter(args) -> None:
    if args.shift is not None:
        specs = [EnsembleSpec(kind="shift_example", params={"m": m}) for m in args.shift]
    else:
        specs = _specs_from_file(args.spec)
    cfg = _config(args)
    rows = f_scatter(
        specs,
        out=args.out,
        seed=args.seed,
        restarts=args.restarts,
        max_sweeps=args.max_sweeps,
        obj_tol=args.obj_tol,
        header_lines=_comments(cfg),
    )
    print(f"wrote {args.out} ({len(rows)} scatter rows)")


# ---------------------------------------------------------------- parser

def _add_optimizer_args(p, restarts: int) -> None:
    p.add_argument("--restarts", type=int, default=restarts, help="random restarts")
    p.add_argument("--max-sweeps", type=int, default=200, dest="max_sweeps")
    p.add_argument("--obj-tol", type=float, default=1e-12, dest="obj_tol")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="almostnormal",
        description="Distance to normality: witnesses, bounds, spectrum surgery.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    # gallery
    g = sub.add_parser("gallery", help="generate benchmark matrices")
    gs = g.add_subparsers(dest="generator", required=True, metavar="generator")

    shift = gs.add_parser("shift", help="paired-shift contraction (even dim)")
    shift.add_argument("--m", type=int, required=True, help="dimension, even")
    shift.add_argument("--out", required=True, help="output matrix JSON")
    shift.set_defaults(func=cmd_gallery_shift)

    pair = gs.add_parser("pair", help="almost-commuting Hermitian/contraction pair")
    pair.add_argument("--m", type=int, required=True, help="commutator scale 1/m")
    pair.add_argument("--out-a", required=True, dest="out_a")
    pair.add_argument("--out-b", required=True, dest="out_b")
    pair.add_argument("--report", help="certificate report JSON")
    pair.set_defaults(func=cmd_gallery_pair)

    pert = gs.add_parser("perturbed", help="random normal plus a norm-delta bump")
    pert.add_argument("--dim", type=int, required=True)
    pert.add_argument("--delta", type=float, required=True)
    pert.add_argument("--seed", type=int, required=True)
    pert.add_argument("--out", required=True)
    pert.set_defaults(func=cmd_gallery_perturbed)

    lau = gs.add_parser("laurent", help="banded multiplication window (G, A)")
    lau.add_argument(
        "--coeffs", type=_coeff_list_arg, required=True,
        help="symbol coefficients c_-d..c_d: '0,0,1' or 're,im;re,im;...'",
    )
    lau.add_argument("--K", type=int, required=True, help="window half-size")
    lau.add_argument("--out-a", required=True, dest="out_a")
    lau.add_argument("--out-g", required=True, dest="out_g")
    lau.set_defaults(func=cmd_gallery_laurent)

    # nearest
    ne = sub.add_parser("nearest", help="witness distance to the normal matrices")
    ne.add_argument("--matrix", required=True, help="input matrix (JSON or CSV)")
    ne.add_argument("--p", type=_p_list_arg, default=[1, 2, math.inf],
                    help="Schatten indices, e.g. '1,2,inf'")
    ne.add_argument("--seed", type=int, required=True)
    _add_optimizer_args(ne, restarts=4)
    ne.add_argument("--report", required=True, help="output report JSON")
    ne.add_argument("--witness", help="optional output matrix JSON for the witness")
    ne.set_defaults(func=cmd_nearest)

    # partition
    pa = sub.add_parser("partition", help="finite-spectrum approximant from a cover")
    pa.add_argument("--matrix", required=True, help="normal input matrix")
    grp = pa.add_mutually_exclusive_group(required=True)
    grp.add_argument("--side", type=float, help="lattice square side for an automatic cover")
    grp.add_argument("--cover", help="cover JSON ({'regions': [...]})")
    pa.add_argument("--report", required=True)
    pa.add_argument("--approx", help="optional output matrix JSON for the approximant")
    pa.set_defaults(func=cmd_partition)

    # surgery
    su = sub.add_parser("surgery", help="move spectrum of a normal matrix")
    ss = su.add_subparsers(dest="op", required=True, metavar="op")

    rd = ss.add_parser("remove-disc", help="push spectrum out of an open disc")
    rd.add_argument("--matrix", required=True)
    rd.add_argument("--center", type=_complex_arg, required=True)
    rd.add_argument("--radius", type=float, required=True)
    rd.add_argument("--mu", type=_complex_arg, help="push anchor, default the center")
    rd.add_argument("--out", required=True)
    rd.add_argument("--report")
    rd.set_defaults(func=cmd_surgery_remove_disc)

    ra = ss.add_parser("remove-arc", help="snap chord spectrum to the chord endpoints")
    ra.add_argument("--matrix", required=True)
    ra.add_argument("--center", type=_complex_arg, required=True)
    ra.add_argument("--radius", type=float, required=True)
    ra.add_argument("--e-minus", type=_complex_arg, required=True, dest="e_minus")
    ra.add_argument("--e-plus", type=_complex_arg, required=True, dest="e_plus")
    ra.add_argument("--out", required=True)
    ra.add_argument("--report")
    ra.set_defaults(func=cmd_surgery_remove_arc)

    tr = ss.add_parser("transport", help="apply a plane map to the spectrum")
    tr.add_argument("--matrix", required=True)
    tr.add_argument("--map", choices=("affine", "radial-collapse", "boundary-push"),
                    required=True)
    tr.add_argument("--a", type=_complex_arg, help="affine scale")
    tr.add_argument("--b", type=_complex_arg, help="affine offset")
    tr.add_argument("--center", type=_complex_arg)
    tr.add_argument("--radius", type=float)
    tr.add_argument("--anchor", type=_complex_arg)
    tr.add_argument("--out", required=True)
    tr.add_argument("--report")
    tr.set_defaults(func=cmd_surgery_transport)

    gr = ss.add_parser("graph", help="normal approximant with norm control")
    gr.add_argument("--matrix", required=True)
    gr.add_argument("--eps", type=float, required=True)
    gr.add_argument("--out", required=True)
    gr.add_argument("--report")
    gr.set_defaults(func=cmd_surgery_graph)

    # truncate
    tu = sub.add_parser("truncate", help="spectral truncation inequalities and scaling")
    tu.add_argument("--coeffs", type=_coeff_list_arg, required=True,
                    help="symbol coefficients c_-d..c_d")
    tu.add_argument("--K", type=int, required=True)
    tu.add_argument("--grid", type=_float_list_arg, required=True,
                    help="ascending cutoff levels, e.g. '4,8,12,16'")
    tu.add_argument("--seed", type=int, required=True)
    _add_optimizer_args(tu, restarts=2)
    tu.add_argument("--out", required=True, help="output CSV")
    tu.set_defaults(func=cmd_truncate)

    # pseudospec
    ps = sub.add_parser("pseudospec", help="grid members of the eps-pseudospectrum")
    ps.add_argument("--matrix", required=True)
    ps.add_argument("--eps", type=float, required=True)
    ps.add_argument("--center", type=_complex_arg,
                    help="grid center, default 0")
    ps.add_argument("--half-width", type=float, dest="half_width",
                    help="default |center| + ||A|| + 2 eps")
    ps.add_argument("--resolution", type=int, default=201)
    ps.add_argument("--reference", type=_complex_list_arg,
                    help="reference set 're,im;re,im;...'; default sigma(A) when A is normal")
    ps.add_argument("--threads", type=int, help="worker threads, default cpu count")
    ps.add_argument("--out", required=True, help="output CSV")
    ps.set_defaults(func=cmd_pseudospec)

    # scatter
    sc = sub.add_parser("scatter", help="defect versus witness distance over an ensemble")
    grp = sc.add_mutually_exclusive_group(required=True)
    grp.add_argument("--spec", help="ensemble spec JSON (list of {kind, params, seed})")
    grp.add_argument("--shift", type=_int_list_arg,
                     help="shift-family dims, e.g. '2,4,8,16'")
    sc.add_argument("--seed", type=int, required=True)
    _add_optimizer_args(sc, restarts=2)
    sc.add_argument("--out", required=True, help="output CSV")
    sc.set_defaults(func=cmd_scatter)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
