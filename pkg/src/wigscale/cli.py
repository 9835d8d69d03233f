"""Command-line front end exposing the toolkit's experiments as batch runs.

Every run is deterministic: identical arguments produce byte-identical
output. Tables carry the hbar = m = omega = 1 convention in their header,
CSV uses '.' decimals with 12 significant digits, and exit codes encode
only success (0) or input errors (2), never a physics verdict.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import fock_space, gaussian_cv, moments, phase_space

__all__ = ["main", "entry"]

_CONVENTION = "hbar = m = omega = 1"
_SR_BOUND = 0.25


def _fmt(value: float) -> str:
    return f"{float(value):.12g}"


def _render(columns, rows, meta, fmt: str) -> str:
    if fmt == "json":
        payload = {"convention": _CONVENTION}
        payload.update(meta)
        payload["columns"] = list(columns)
        payload["rows"] = [[_jsonable(v) for v in row] for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    lines = [f"# {_CONVENTION}"]
    for key, value in meta.items():
        lines.append(f"# {key} = {_cell(value)}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return _fmt(value)
    return str(value)


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _parse_state(token: str) -> int:
    match = re.fullmatch(r"fock(\d+)", token)
    if not match:
        raise ValueError(f"unknown state spec {token!r}; expected fockN (e.g. fock1)")
    return int(match.group(1))


def _make_grid(args, scale: float) -> phase_space.GridSpec:
    points = args.grid if args.grid is not None else phase_space.DEFAULT_POINTS
    extent = args.extent if args.extent is not None else 8.0 * max(1.0, 1.0 / abs(scale))
    return phase_space.GridSpec(extent, points)


def _state_pipeline(args):
    """Shared state -> grid -> moments plumbing for uncertainty/spectrum runs."""
    index = _parse_state(args.state)
    state = phase_space.AnalyticWigner(index, args.lam, args.kappa)
    spec = _make_grid(args, args.lam)
    grid = phase_space.sample_to_grid(state, spec)
    return state, grid


def _sr_report(m: moments.SecondMoments):
    value = moments.sr_value(m)
    eigenvalues = np.linalg.eigvalsh(moments.sr_matrix(m).entries)
    verdict = "satisfied" if value >= _SR_BOUND - 1e-9 else "violated"
    return value, eigenvalues, verdict


def _closed_form_fidelity(lam: float) -> float:
    return 2.0 * lam**2 * (lam**2 - 1.0) / (1.0 + lam**2) ** 2


def _run_fidelity(args) -> str:
    if not (0.0 < args.lam_min < args.lam_max):
        raise ValueError("need 0 < --lambda-min < --lambda-max")
    if args.steps < 2:
        raise ValueError("--steps must be at least 2")
    rows = []
    for lam in np.linspace(args.lam_min, args.lam_max, args.steps):
        spec = _make_grid(args, lam)
        ground = phase_space.sample_to_grid(phase_space.AnalyticWigner(0), spec)
        scaled = phase_space.sample_to_grid(phase_space.AnalyticWigner(1, lam), spec)
        quad = phase_space.overlap(ground, scaled)
        rows.append([lam, quad, _closed_form_fidelity(lam), -2.0 * lam**2])
    columns = ["lambda", "overlap_quadrature", "overlap_closed_form", "small_lambda_leading_term"]
    return _render(columns, rows, {}, args.format)


def _run_uncertainty(args) -> str:
    _, grid = _state_pipeline(args)
    m = moments.moments_from_grid(grid)
    value, eigenvalues, verdict = _sr_report(m)
    columns = [
        "sigma_qq",
        "sigma_pp",
        "sigma_qp",
        "sr_value",
        "matrix_eigenvalue_min",
        "matrix_eigenvalue_max",
        "sr_verdict",
    ]
    rows = [[m.sigma_qq, m.sigma_pp, m.sigma_qp, value, eigenvalues[0], eigenvalues[-1], verdict]]
    meta = {"state": args.state, "lambda": args.lam, "kappa": args.kappa}
    return _render(columns, rows, meta, args.format)


def _run_spectrum(args) -> str:
    _, grid = _state_pipeline(args)
    m = moments.moments_from_grid(grid)
    value, _, verdict = _sr_report(m)
    density = phase_space.wigner_to_density(grid)
    projected = fock_space.project_state(density, args.dim)
    spec = fock_space.spectrum(projected)
    meta = {
        "state": args.state,
        "lambda": args.lam,
        "kappa": args.kappa,
        "dim": args.dim,
        "trace": spec.trace,
        "truncation_deficit": spec.truncation_deficit,
        "min_eigenvalue": spec.min_eigenvalue,
        "sr_value": value,
        "sr_verdict": verdict,
    }
    rows = [[k, v] for k, v in enumerate(spec.eigenvalues)]
    return _render(["index", "eigenvalue"], rows, meta, args.format)


def _parse_lambda_grid(token: str) -> np.ndarray:
    if token == "default":
        return gaussian_cv.default_lambda_grid()
    if re.fullmatch(r"[^:,]+:[^:,]+:\d+", token):
        start, stop, count = token.split(":")
        values = np.linspace(float(start), float(stop), int(count))
    else:
        values = np.array([float(part) for part in token.split(",")])
    if values.size == 0:
        raise ValueError("lambda grid is empty")
    if np.any(values == 0.0):
        raise ValueError("lambda grid must not contain 0 (degenerate map)")
    return np.sort(values)


def _load_covariance(path: str) -> gaussian_cv.CovarianceMatrix:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    for key in ("modes", "ordering", "matrix"):
        if key not in payload:
            raise ValueError(f"covariance file missing key {key!r}")
    modes = int(payload["modes"])
    ordering = payload["ordering"]
    if ordering not in ("q-block-p-block", "interleaved"):
        raise ValueError(f"unknown ordering {ordering!r}")
    matrix = np.asarray(payload["matrix"], dtype=float)
    if matrix.shape != (2 * modes, 2 * modes):
        raise ValueError(
            f"matrix shape {matrix.shape} does not match modes={modes} (expected {2 * modes}x{2 * modes})"
        )
    asym = np.abs(matrix - matrix.T).max()
    if asym > 1e-9:
        raise ValueError("matrix not symmetric within 1e-9")
    matrix = 0.5 * (matrix + matrix.T)
    if ordering == "interleaved":
        matrix = gaussian_cv.interleaved_to_block(matrix)
    return gaussian_cv.CovarianceMatrix(modes, matrix)


def _run_separability(args) -> str:
    cov = _load_covariance(args.cov)
    modes = {int(part) for part in args.modes.split(",")}
    lam_grid = _parse_lambda_grid(args.lambda_grid)
    report = gaussian_cv.separability_scan(cov, modes, lam_grid, tol=args.tol)
    meta = {
        "verdict": report.verdict,
        "tolerance": report.tol,
        "scaled_modes": ",".join(str(m) for m in sorted(modes)),
    }
    rows = [
        [lam, low, lam in report.violations, abs(lam) <= 1.0 + 1e-12]
        for lam, low in zip(report.lam_grid, report.min_eigenvalues)
    ]
    columns = ["lambda", "min_eigenvalue", "violation", "within_criterion"]
    return _render(columns, rows, meta, args.format)


def _run_tmsv(args) -> str:
    cov = gaussian_cv.two_mode_squeezed(args.r)
    payload = {
        "modes": cov.modes,
        "ordering": "q-block-p-block",
        "matrix": [[float(v) for v in row] for row in cov.matrix],
    }
    return json.dumps(payload, indent=2) + "\n"


def _run_roundtrip(args) -> str:
    _, grid = _state_pipeline(args)
    density = phase_space.wigner_to_density(grid)
    back = phase_space.density_to_wigner(density)
    n = grid.spec.points_per_axis
    inner = slice(n // 4, 3 * n // 4)
    max_error = float(np.abs(back.values[inner, inner] - grid.values[inner, inner]).max())
    norm_drift = abs(back.norm() - grid.norm())
    meta = {
        "state": args.state,
        "lambda": args.lam,
        "kappa": args.kappa,
        "grid_points": grid.spec.points_per_axis,
        "extent": grid.spec.extent,
    }
    rows = [[max_error, norm_drift]]
    return _render(["max_abs_error_interior", "norm_drift"], rows, meta, args.format)


def _add_common(parser, default_format="csv"):
    parser.add_argument("--format", choices=("csv", "json"), default=default_format)
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_grid_options(parser):
    parser.add_argument("--grid", type=int, default=None, help="points per axis")
    parser.add_argument("--extent", type=float, default=None, help="half-width of the grid")


def _add_state_options(parser):
    parser.add_argument("--state", required=True, help="state spec, e.g. fock1")
    parser.add_argument("--lambda", dest="lam", type=float, default=1.0, help="scaling parameter")
    parser.add_argument("--kappa", type=float, default=1.0, help="squeeze parameter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wigscale",
        description="Phase-space toolkit runs: fidelity sweeps, uncertainty "
        "matrices, pseudodensity spectra, and the partial-scaling "
        "separability scan.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fid = sub.add_parser("fidelity", help="overlap of the ground state with the scaled first excited state")
    fid.add_argument("--lambda-min", dest="lam_min", type=float, required=True)
    fid.add_argument("--lambda-max", dest="lam_max", type=float, required=True)
    fid.add_argument("--steps", type=int, required=True)
    _add_grid_options(fid)
    _add_common(fid)
    fid.set_defaults(func=_run_fidelity)

    unc = sub.add_parser("uncertainty", help="second moments and the uncertainty-matrix verdict")
    _add_state_options(unc)
    _add_grid_options(unc)
    _add_common(unc)
    unc.set_defaults(func=_run_uncertainty)

    spe = sub.add_parser("spectrum", help="Fock-basis eigenvalues next to the uncertainty verdict")
    _add_state_options(spe)
    spe.add_argument("--dim", type=int, default=fock_space.DEFAULT_DIM)
    _add_grid_options(spe)
    _add_common(spe)
    spe.set_defaults(func=_run_spectrum)

    sep = sub.add_parser("separability", help="partial-scaling scan of a covariance file")
    sep.add_argument("--cov", required=True, help="covariance JSON path")
    sep.add_argument("--modes", required=True, help="comma-separated 1-based mode indices to scale")
    sep.add_argument("--lambda-grid", dest="lambda_grid", default="default",
                     help="'default', 'start:stop:count', or comma-separated values")
    sep.add_argument("--tol", type=float, default=gaussian_cv.SCAN_TOL)
    _add_common(sep, default_format="json")
    sep.set_defaults(func=_run_separability)

    tms = sub.add_parser("tmsv", help="write a two-mode squeezed vacuum covariance file")
    tms.add_argument("--r", type=float, required=True, help="squeezing strength")
    tms.add_argument("--out", default=None, help="output path (default: stdout)")
    tms.set_defaults(func=_run_tmsv)

    rtr = sub.add_parser("roundtrip", help="Wigner -> density -> Wigner self-consistency")
    _add_state_options(rtr)
    _add_grid_options(rtr)
    _add_common(rtr)
    rtr.set_defaults(func=_run_roundtrip)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(text, args.out)
    return 0


def entry() -> None:
    raise SystemExit(main())
