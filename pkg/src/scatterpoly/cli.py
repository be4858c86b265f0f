"""Command line front end: construction, verification, Gram matrices,
moment ladders, expansion, and the diagonal solve as batch commands.

Every command writes its primary result to a file (CSV or JSON) and a
one-line summary to stdout.  Output is deterministic byte for byte:
floats are always rendered through the same 17-significant-digit format,
orderings are fixed, and no timestamps or environment state leak in.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .poly_algebra import NotDivisibleError
from .scattering import (
    PQIndex,
    basis_indices,
    eigencheck,
    jacobi_form,
    norm_sq,
    profile_value,
    radial_profile,
    radial_sum,
    rodrigues,
    sign_resolution,
)
from .quadrature import DEFAULT_EPS_LADDER, gram, moment_ladder, moment_slope
from .transform import (
    ExpansionTable,
    basis_function,
    boundary_value_check,
    expand,
    expansion_residual,
    grid_interpolant,
    GridSample,
    polar_grid,
    reconstruct,
    solve_weighted_poisson,
)


class CLIError(Exception):
    """Bad invocation or bad input data; maps to exit code 2."""


def format_float(x: float) -> str:
    """Fixed 17-significant-digit rendering; -0.0 collapses to 0."""
    x = float(x)
    if x == 0.0:
        x = 0.0
    return "%.17g" % x


def render_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats through :func:`format_float`."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(
            f"{pad}  {json.dumps(str(key))}: {render_json(value, indent + 1)}"
            for key, value in obj.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(f"{pad}  {render_json(item, indent + 1)}" for item in obj)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc}") from exc


def _write_csv(path: str, rows: Sequence[Sequence[str]]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh).writerows(rows)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc}") from exc


def _parse_index(p: int, q: int) -> PQIndex:
    try:
        return PQIndex(p, q)
    except ValueError as exc:
        raise CLIError(str(exc)) from exc


def _parse_grid_spec(spec: str) -> tuple[int, int]:
    match = re.fullmatch(r"(\d+)x(\d+)", spec)
    if not match:
        raise CLIError(f"grid must look like NRxNT, got '{spec}'")
    n_radial, n_angular = int(match.group(1)), int(match.group(2))
    if n_radial < 2 or n_angular < 2:
        raise CLIError("grid must be at least 2x2")
    return n_radial, n_angular


def _load_grid_csv(path: str) -> GridSample:
    """Read an r,theta,re,im grid file, reporting the offending line."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc}") from exc
    if not rows or [cell.strip() for cell in rows[0]] != ["r", "theta", "re", "im"]:
        raise CLIError(f"{path}: line 1: expected header r,theta,re,im")
    table: dict[tuple[float, float], complex] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 4:
            raise CLIError(f"{path}: line {line_no}: expected 4 fields, got {len(row)}")
        try:
            r, theta, re_part, im_part = (float(cell) for cell in row)
        except ValueError as exc:
            raise CLIError(f"{path}: line {line_no}: {exc}") from exc
        table[(r, theta)] = complex(re_part, im_part)
    if not table:
        raise CLIError(f"{path}: no data rows")
    r_nodes = sorted({key[0] for key in table})
    theta_nodes = sorted({key[1] for key in table})
    values = np.empty((len(r_nodes), len(theta_nodes)), dtype=complex)
    for i, r in enumerate(r_nodes):
        for j, theta in enumerate(theta_nodes):
            if (r, theta) not in table:
                raise CLIError(
                    f"{path}: grid is not a full rectangle; missing r={r}, theta={theta}"
                )
            values[i, j] = table[(r, theta)]
    try:
        return GridSample(
            radial_nodes=np.array(r_nodes),
            angular_nodes=np.array(theta_nodes),
            values=values,
        )
    except ValueError as exc:
        raise CLIError(f"{path}: {exc}") from exc


_BUILTIN_PATTERN = re.compile(r"phi_(\d+)_(\d+)")


def _resolve_input(spec: str) -> tuple[Callable[[float, float], complex], str]:
    """Turn an input spec into a disk function.

    'builtin:phi_P_Q', 'builtin:radial_bump', and 'builtin:one' need no
    external data; anything else is a path to an r,theta,re,im CSV grid,
    resampled by bilinear interpolation.
    """
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name == "one":
            return (lambda r, theta: 1.0 + 0.0j), spec
        if name == "radial_bump":
            return (lambda r, theta: complex((1.0 - r * r) ** 2)), spec
        match = _BUILTIN_PATTERN.fullmatch(name)
        if match:
            idx = _parse_index(int(match.group(1)), int(match.group(2)))
            return basis_function(idx), spec
        raise CLIError(
            f"unknown builtin '{name}' (available: phi_P_Q, radial_bump, one)"
        )
    return grid_interpolant(_load_grid_csv(spec)), spec


def _grid_rows(sample_r, sample_theta, values) -> list[list[str]]:
    rows = [["r", "theta", "re", "im"]]
    for i, r in enumerate(sample_r):
        for j, theta in enumerate(sample_theta):
            value = values[i, j]
            rows.append(
                [
                    format_float(r),
                    format_float(theta),
                    format_float(value.real),
                    format_float(value.imag),
                ]
            )
    return rows


# -- subcommands -----------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    idx = _parse_index(args.p, args.q)
    n_radial, n_angular = _parse_grid_spec(args.grid)
    r, theta = polar_grid(n_radial, n_angular)
    form = jacobi_form(idx)
    values = np.outer(
        form.radial_value(r), np.exp(1j * form.angular_frequency * theta)
    )
    out = args.out or f"phi_{idx.p}_{idx.q}_grid.{args.format}"
    if args.format == "csv":
        _write_csv(out, _grid_rows(r, theta, values))
    else:
        records = [
            {
                "r": float(ri),
                "theta": float(tj),
                "re": float(values[i, j].real),
                "im": float(values[i, j].imag),
            }
            for i, ri in enumerate(r)
            for j, tj in enumerate(theta)
        ]
        payload = {"p": idx.p, "q": idx.q, "grid": records}
        _write_text(out, render_json(payload) + "\n")
    print(f"wrote {out} ({n_radial}x{n_angular} polar grid of phi_{idx.p}_{idx.q})")
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    idx = _parse_index(args.p, args.q)
    text = rodrigues(idx).to_text()
    if args.out:
        _write_text(args.out, text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


_VERIFY_RADII = tuple(Fraction(k, 11) for k in range(1, 11))


def _sign_mismatch(idx: PQIndex) -> float:
    """Scaled deviation of the factored route from the exact polynomial."""
    _, profile = radial_profile(rodrigues(idx))
    form = jacobi_form(idx)
    exact = [float(profile_value(profile, r)) for r in _VERIFY_RADII]
    scale = max(1.0, max(abs(v) for v in exact))
    worst = max(
        abs(form.radial_value(float(r)) - v) for r, v in zip(_VERIFY_RADII, exact)
    )
    return worst / scale


def cmd_verify(args: argparse.Namespace) -> int:
    if args.max_sum < 2:
        raise CLIError("max_sum must be >= 2")
    indices = basis_indices(args.max_sum)

    route_bad = [i for i in indices if rodrigues(i) != radial_sum(i)]
    eigen_bad = [i for i in indices if not eigencheck(i)]
    boundary_bad = []
    for idx in indices:
        try:
            rodrigues(idx).divide_by_boundary_factor()
        except NotDivisibleError:
            boundary_bad.append(idx)

    sign_table = []
    worst_mismatch = 0.0
    for idx in indices:
        entry = sign_resolution(idx)
        entry["mismatch"] = _sign_mismatch(idx)
        worst_mismatch = max(worst_mismatch, entry["mismatch"])
        sign_table.append(entry)
    sign_ok = worst_mismatch <= 1e-12

    matrix = gram(indices)
    off_diag = matrix.max_off_diagonal()
    diag_err = float(
        max(
            abs(matrix.entries[i, i].real - norm_sq(idx)) / norm_sq(idx)
            for i, idx in enumerate(matrix.indices)
        )
    )
    gram_ok = bool(off_diag < 1e-11 and diag_err < 1e-12)

    checks = {
        "route_equivalence": {
            "pass": not route_bad,
            "indices_checked": len(indices),
            "failures": [[i.p, i.q] for i in route_bad],
        },
        "eigenrelation": {
            "pass": not eigen_bad,
            "failures": [[i.p, i.q] for i in eigen_bad],
        },
        "boundary_vanishing": {
            "pass": not boundary_bad,
            "failures": [[i.p, i.q] for i in boundary_bad],
        },
        "jacobi_sign": {"pass": sign_ok, "max_mismatch": worst_mismatch},
        "gram_diagonality": {
            "pass": gram_ok,
            "max_off_diagonal": off_diag,
            "max_diagonal_relative_error": diag_err,
        },
    }
    all_pass = all(check["pass"] for check in checks.values())
    report = {
        "max_sum": args.max_sum,
        "checks": checks,
        "sign_table": sign_table,
        "all_pass": all_pass,
    }
    out = args.out or "verify_report.json"
    _write_text(out, render_json(report) + "\n")
    for name, check in checks.items():
        print(f"{name}: {'pass' if check['pass'] else 'FAIL'}")
    print(f"wrote {out}")
    return 0 if all_pass else 1


def cmd_gram(args: argparse.Namespace) -> int:
    if args.max_sum < 2:
        raise CLIError("max_sum must be >= 2")
    indices = basis_indices(args.max_sum)
    matrix = gram(indices)
    labels = [f"{idx.p},{idx.q}" for idx in indices]
    out = args.out or f"gram_{args.max_sum}.{args.format}"
    if args.format == "csv":
        rows = [["index"] + labels]
        for i, label in enumerate(labels):
            # entries are real: the angular integral kills imaginary parts
            rows.append(
                [label] + [format_float(matrix.entries[i, j].real) for j in range(len(labels))]
            )
        _write_csv(out, rows)
    else:
        payload = {
            "indices": [[idx.p, idx.q] for idx in indices],
            "entries": [
                [float(matrix.entries[i, j].real) for j in range(len(labels))]
                for i in range(len(labels))
            ],
        }
        _write_text(out, render_json(payload) + "\n")
    print(
        f"wrote {out} ({len(labels)}x{len(labels)}); "
        f"max off-diagonal {format_float(matrix.max_off_diagonal())}"
    )
    return 0


def _parse_eps_ladder(spec: Optional[str]) -> tuple[float, ...]:
    if spec is None:
        return DEFAULT_EPS_LADDER
    try:
        values = tuple(float(part) for part in spec.split(",") if part.strip())
    except ValueError as exc:
        raise CLIError(f"bad --eps-ladder: {exc}") from exc
    if not values:
        raise CLIError("--eps-ladder must list at least one value")
    if any(not 0.0 < eps < 1.0 for eps in values):
        raise CLIError("--eps-ladder values must lie in (0, 1)")
    return values


def cmd_moments(args: argparse.Namespace) -> int:
    if args.m < 0 or args.n < 0:
        raise CLIError("moment exponents must be nonnegative")
    ladder = _parse_eps_ladder(args.eps_ladder)
    estimate = moment_ladder(args.m, args.n, ladder)
    slope = moment_slope(estimate)
    out = args.out or f"moments_{args.m}_{args.n}.{args.format}"
    if args.format == "csv":
        rows = [["eps", "value"]]
        rows += [
            [format_float(eps), format_float(value)]
            for eps, value in zip(estimate.cutoffs, estimate.values)
        ]
        _write_csv(out, rows)
    else:
        payload = {
            "m": args.m,
            "n": args.n,
            "ladder": [
                {"eps": eps, "value": value}
                for eps, value in zip(estimate.cutoffs, estimate.values)
            ],
            "slope": slope,
        }
        _write_text(out, render_json(payload) + "\n")
    print(f"wrote {out}; slope vs ln(1/eps): {format_float(slope)}")
    return 0


def _coefficient_records(table: ExpansionTable) -> list[dict]:
    return [
        {"p": idx.p, "q": idx.q, "re": c.real, "im": c.imag}
        for idx, c in table.items()
    ]


def _write_table(out: str, fmt: str, payload: dict, table: ExpansionTable) -> None:
    if fmt == "csv":
        rows = [["p", "q", "re", "im"]]
        rows += [
            [str(idx.p), str(idx.q), format_float(c.real), format_float(c.imag)]
            for idx, c in table.items()
        ]
        _write_csv(out, rows)
    else:
        _write_text(out, render_json(payload) + "\n")


def _maybe_write_grid(args: argparse.Namespace, out: str, table: ExpansionTable) -> None:
    if not args.grid:
        return
    n_radial, n_angular = _parse_grid_spec(args.grid)
    r, theta = polar_grid(n_radial, n_angular)
    sample = reconstruct(table, r, theta)
    grid_out = re.sub(r"\.[^.]*$", "", out) + "_grid.csv"
    _write_csv(grid_out, _grid_rows(r, theta, sample.values))
    print(f"wrote {grid_out}")


def cmd_expand(args: argparse.Namespace) -> int:
    if args.trunc < 2:
        raise CLIError("--trunc must be >= 2")
    f, label = _resolve_input(args.input)
    table = expand(f, args.trunc)
    residual = expansion_residual(f, table)
    out = args.out or ("expansion.json" if args.format == "json" else "expansion.csv")
    payload = {
        "input": label,
        "truncation": args.trunc,
        "coefficients": _coefficient_records(table),
        "l2_residual": residual,
        "boundary_max": boundary_value_check(table, 256),
    }
    _write_table(out, args.format, payload, table)
    print(f"wrote {out}; L2 residual {format_float(residual)}")
    _maybe_write_grid(args, out, table)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    if args.trunc < 2:
        raise CLIError("--trunc must be >= 2")
    f, label = _resolve_input(args.input)
    table = solve_weighted_poisson(f, args.trunc)
    out = args.out or ("solution.json" if args.format == "json" else "solution.csv")
    payload = {
        "input": label,
        "truncation": args.trunc,
        "coefficients": _coefficient_records(table),
        "boundary_max": boundary_value_check(table, 256),
    }
    _write_table(out, args.format, payload, table)
    print(f"wrote {out}")
    _maybe_write_grid(args, out, table)
    return 0


# -- wiring ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scatterpoly",
        description="Orthogonal eigenbasis of the weighted unit disk: "
        "evaluate, verify, and expand.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, fmt_default: str) -> None:
        p.add_argument("--out", help="output path (default depends on command)")
        p.add_argument(
            "--format", choices=("csv", "json"), default=fmt_default,
            help=f"output format (default {fmt_default})",
        )

    p_eval = sub.add_parser("eval", help="sample one basis function on a polar grid")
    p_eval.add_argument("p", type=int)
    p_eval.add_argument("q", type=int)
    p_eval.add_argument("--grid", default="32x64", help="NRxNT polar resolution")
    add_common(p_eval, "csv")
    p_eval.set_defaults(func=cmd_eval)

    p_table = sub.add_parser("table", help="print one basis polynomial exactly")
    p_table.add_argument("p", type=int)
    p_table.add_argument("q", type=int)
    p_table.add_argument("--out", help="write instead of printing")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run the full verification battery")
    p_verify.add_argument("max_sum", type=int)
    p_verify.add_argument("--out", help="report path (default verify_report.json)")
    p_verify.set_defaults(func=cmd_verify)

    p_gram = sub.add_parser("gram", help="Gram matrix of the truncated basis")
    p_gram.add_argument("max_sum", type=int)
    add_common(p_gram, "csv")
    p_gram.set_defaults(func=cmd_gram)

    p_moments = sub.add_parser("moments", help="divergent-moment cutoff ladder")
    p_moments.add_argument("m", type=int)
    p_moments.add_argument("n", type=int)
    p_moments.add_argument(
        "--eps-ladder", help="comma-separated cutoffs, e.g. 1e-2,1e-3,1e-4"
    )
    add_common(p_moments, "csv")
    p_moments.set_defaults(func=cmd_moments)

    for name, handler, blurb in (
        ("expand", cmd_expand, "expand a disk function in the basis"),
        ("solve", cmd_solve, "solve the weighted Poisson problem"),
    ):
        p_cmd = sub.add_parser(name, help=blurb)
        p_cmd.add_argument(
            "input",
            help="builtin:phi_P_Q | builtin:radial_bump | builtin:one | grid CSV path",
        )
        p_cmd.add_argument("--trunc", type=int, default=8, help="max p+q (default 8)")
        p_cmd.add_argument("--grid", help="also write a NRxNT reconstruction grid")
        add_common(p_cmd, "json")
        p_cmd.set_defaults(func=handler)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())
