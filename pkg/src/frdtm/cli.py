"""Command-line front end: solve a bundled problem, write tables and plots,
optionally verify the run against residuals and closed forms.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 solver or
I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from .engine import (Family, PROBLEM_NAMES, ProblemSpec, Spectrum,
                     named_problem, solve_problem)
from .errors import DomainError, OutputIOError, SolverError, UsageError
from .series import (FractionalSeries, SolutionTable, oracle,
                     residual_spectrum, sample)

__all__ = [
    "RunConfig",
    "build_config",
    "run",
    "main",
    "emit_csv",
    "emit_json",
    "emit_svg",
    "read_csv",
    "verify_run",
]

RESIDUAL_THRESHOLD = 1e-9
ORACLE_THRESHOLD_LINEAR = 1e-10
ORACLE_THRESHOLD_ALPHA1 = 1e-8

_FORMATS = ("csv", "json", "svg")

_DEFAULT_GRIDS = {
    "lse-cosh": ((-math.pi, math.pi, 33), (0.0, 0.01, 11)),
    "lse-exp": ((-math.pi, math.pi, 33), (0.0, 0.01, 11)),
    "nlse-plane": ((-math.pi, math.pi, 33), (0.0, 0.1, 11)),
    "nlse-trap": ((-2 * math.pi, 2 * math.pi, 65), (0.0, 0.1, 11)),
    "coupled": ((-10.0, 10.0, 41), (0.0, 1.0, 11)),
}

_CONFIG_KEYS = {"problem", "alpha", "sigma", "a", "b", "n", "m", "terms",
                "x", "t", "out", "verify", "output"}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters: defaults, config file, and flags merged."""

    problem: str
    alpha: float
    sigma: float
    a: float
    b: float
    n: float
    m: float
    terms: int
    x_grid: tuple[float, float, int]
    t_grid: tuple[float, float, int]
    outputs: tuple[str, ...]
    verify: bool
    output: str
    corrupt_index: int | None = None

    def meta(self) -> dict:
        """Input echo embedded in JSON artifacts and verification reports."""
        return {
            "problem": self.problem,
            "alpha": self.alpha,
            "sigma": self.sigma,
            "a": self.a,
            "b": self.b,
            "n": self.n,
            "m": self.m,
            "terms": self.terms,
            "x": list(self.x_grid),
            "t": list(self.t_grid),
            "out": list(self.outputs),
            "verify": self.verify,
            "output": self.output,
        }


def _as_grid(value, label: str) -> tuple[float, float, int]:
    try:
        raw_lo, raw_hi, raw_count = value
        lo, hi, fcount = float(raw_lo), float(raw_hi), float(raw_count)
    except (TypeError, ValueError):
        raise UsageError(f"{label} must be MIN MAX COUNT, got {value!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError(f"{label} bounds must be finite, got {value!r}")
    if not (math.isfinite(fcount) and fcount.is_integer()):
        raise UsageError(f"{label} count must be an integer, got {raw_count!r}")
    count = int(fcount)
    if count < 2:
        raise UsageError(f"{label} needs at least 2 points, got {count}")
    if hi < lo:
        raise UsageError(f"{label} needs MAX >= MIN, got {value!r}")
    return lo, hi, count


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("the config file must hold a JSON object")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    return data


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge per-problem defaults, an optional config file, and CLI flags.

    Flags win over the file, the file wins over defaults. Also constructs the
    ProblemSpec once so every parameter problem is reported as a usage error.
    """
    file_cfg = _load_config_file(args.config) if args.config else {}
    problem = args.problem or file_cfg.get("problem")
    if not problem:
        raise UsageError("name a problem via --problem or the config file")
    if problem not in PROBLEM_NAMES:
        raise UsageError(f"unknown problem {problem!r}; expected one of: "
                         f"{', '.join(PROBLEM_NAMES)}")

    def pick(name: str, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        return file_cfg.get(name, default)

    base = named_problem(problem)
    try:
        alpha = float(pick("alpha", base.alpha))
        sigma = float(pick("sigma", base.sigma))
        a = float(pick("a", base.a))
        b = float(pick("b", base.b))
        n = float(pick("n", base.n))
        m = float(pick("m", base.m))
        terms_f = float(pick("terms", base.K))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"non-numeric parameter: {exc}") from None
    if not terms_f.is_integer():
        raise UsageError(f"--terms must be an integer, got {terms_f!r}")
    terms = int(terms_f)

    grid_x_default, grid_t_default = _DEFAULT_GRIDS[problem]
    x_grid = _as_grid(pick("x", grid_x_default), "--x")
    t_grid = _as_grid(pick("t", grid_t_default), "--t")
    if t_grid[0] < 0:
        raise UsageError(f"--t must start at t >= 0, got {t_grid[0]!r}")

    raw_out = pick("out", ["csv"])
    if isinstance(raw_out, str):
        raw_out = [raw_out]
    outputs = []
    for fmt in raw_out:
        if fmt not in _FORMATS:
            raise UsageError(f"unknown output format {fmt!r}; expected one of: "
                             f"{', '.join(_FORMATS)}")
        if fmt not in outputs:
            outputs.append(fmt)

    config = RunConfig(
        problem=problem, alpha=alpha, sigma=sigma, a=a, b=b, n=n, m=m,
        terms=terms, x_grid=x_grid, t_grid=t_grid, outputs=tuple(outputs),
        verify=bool(pick("verify", False)),
        output=str(pick("output", problem)),
        corrupt_index=getattr(args, "inject_corruption", None),
    )
    try:
        _problem_spec(config)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    return config


def _problem_spec(config: RunConfig) -> ProblemSpec:
    return named_problem(config.problem, alpha=config.alpha, K=config.terms,
                         sigma=config.sigma, a=config.a, b=config.b,
                         n=config.n, m=config.m)


def _corrupt(solved, index: int):
    """Testing hook: scale one stored coefficient by 1.1 to trip verification."""

    def bump(spectrum: Spectrum) -> Spectrum:
        if not 0 <= index < len(spectrum):
            raise UsageError(f"corruption index {index} is outside "
                             f"0..{len(spectrum) - 1}")
        coeffs = list(spectrum.coeffs)
        coeffs[index] = coeffs[index].scale(1.1)
        return Spectrum(spectrum.alpha, tuple(coeffs))

    if isinstance(solved, tuple):
        return bump(solved[0]), solved[1]
    return bump(solved)


def run(config: RunConfig) -> int:
    """Solve, write the requested artifacts, verify when asked.

    Returns the process exit code.
    """
    spec = _problem_spec(config)
    solved = solve_problem(spec)
    if config.corrupt_index is not None:
        solved = _corrupt(solved, config.corrupt_index)
    if spec.family is Family.COUPLED:
        series = (FractionalSeries(solved[0]), FractionalSeries(solved[1]))
    else:
        series = FractionalSeries(solved)
    table = sample(spec, series, config.x_grid, config.t_grid)

    base = config.output
    parent = os.path.dirname(base)
    if parent:
        try:
            os.makedirs(parent, exist_ok=True)
        except OSError as exc:
            raise OutputIOError(f"cannot create {parent}: {exc}") from exc
    for fmt in config.outputs:
        path = f"{base}.{fmt}"
        if fmt == "csv":
            emit_csv(table, path)
        elif fmt == "json":
            emit_json(table, path, meta=config.meta())
        else:
            emit_svg(table, path)
        print(f"wrote {path}")

    if not config.verify:
        return 0
    report = verify_run(config, spec, solved, table)
    report_path = f"{base}.verify.json"
    _write_text(report_path, json.dumps(report, indent=2) + "\n")
    print(f"wrote {report_path}")
    print(f"verify: max residual coefficient {report['max_residual']:.3e} "
          f"(threshold {report['residual_threshold']:.1e})")
    if report["max_oracle_error"] is None:
        print("verify: no closed form at this setting; residual check only")
    else:
        print(f"verify: max closed-form error {report['max_oracle_error']:.3e} "
              f"(threshold {report['oracle_threshold']:.1e})")
    print(f"verify: {'PASS' if report['passed'] else 'FAIL'}")
    return 0 if report["passed"] else 1


def verify_run(config: RunConfig, spec: ProblemSpec, solved,
               table: SolutionTable) -> dict:
    """Residual magnitudes always; closed-form comparison when one exists."""
    if spec.family is Family.COUPLED:
        residuals = residual_spectrum(spec, solved[0], solved[1])
    else:
        residuals = residual_spectrum(spec, solved)
    max_residual = max((f.max_coeff() for f in residuals), default=0.0)

    has_oracle = spec.family is Family.LSE or spec.alpha == 1.0
    oracle_threshold = (ORACLE_THRESHOLD_LINEAR if spec.family is Family.LSE
                        else ORACLE_THRESHOLD_ALPHA1)
    max_err = None
    if has_oracle:
        max_err = 0.0
        for row in table.rows:
            ref = oracle(spec, row[0], row[1])
            if spec.family is Family.COUPLED:
                ref_u, ref_v = ref
                err = max(abs(complex(row[2], row[3]) - ref_u),
                          abs(complex(row[5], row[6]) - ref_v))
            else:
                err = abs(complex(row[2], row[3]) - ref)
            if err > max_err:
                max_err = err
    passed = (max_residual <= RESIDUAL_THRESHOLD
              and (max_err is None or max_err <= oracle_threshold))
    return {
        "config": config.meta(),
        "max_residual": max_residual,
        "residual_threshold": RESIDUAL_THRESHOLD,
        "max_oracle_error": max_err,
        "oracle_threshold": oracle_threshold if has_oracle else None,
        "passed": passed,
    }


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputIOError(f"cannot write {path}: {exc}") from exc


def emit_csv(table: SolutionTable, path: str) -> None:
    """Header plus one row per sample, 17 significant digits, LF endings."""
    if not table.rows:
        raise UsageError("refusing to write an empty table")
    lines = [",".join(table.columns)]
    lines.extend(",".join(_fmt(v) for v in row) for row in table.rows)
    _write_text(path, "\n".join(lines) + "\n")


def read_csv(path: str) -> SolutionTable:
    """Parse a table previously written by emit_csv."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            lines = [line for line in fh.read().split("\n") if line]
    except OSError as exc:
        raise OutputIOError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise UsageError(f"{path} holds no table")
    columns = tuple(lines[0].split(","))
    if len(columns) not in (5, 8):
        raise UsageError(f"{path} has {len(columns)} columns, expected 5 or 8")
    rows = tuple(tuple(float(cell) for cell in line.split(","))
                 for line in lines[1:])
    return SolutionTable(columns, rows)


def emit_json(table: SolutionTable, path: str, meta: dict | None = None) -> None:
    """Object with the input echo, column names, and row-major samples."""
    payload = {
        "meta": meta or {},
        "columns": list(table.columns),
        "rows": [list(row) for row in table.rows],
    }
    _write_text(path, json.dumps(payload, indent=2) + "\n")


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f")


def emit_svg(table: SolutionTable, path: str) -> None:
    """Line plot of re_u (solid) and im_u (dashed) against x, one pair of
    polylines per time slice. Self-contained SVG, no external assets."""
    if not table.rows:
        raise UsageError("refusing to plot an empty table")
    slices: dict[float, list[tuple[float, float, float]]] = {}
    for row in table.rows:
        slices.setdefault(row[1], []).append((row[0], row[2], row[3]))

    width, height = 840, 520
    left, right, top, bottom = 64, 150, 16, 44
    x_lo = min(row[0] for row in table.rows)
    x_hi = max(row[0] for row in table.rows)
    ys = [v for row in table.rows for v in (row[2], row[3])]
    y_lo, y_hi = min(ys), max(ys)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    span_x = (width - left - right) / (x_hi - x_lo)
    span_y = (height - top - bottom) / (y_hi - y_lo)

    def sx(x: float) -> float:
        return left + (x - x_lo) * span_x

    def sy(y: float) -> float:
        return height - bottom - (y - y_lo) * span_y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" '
        f'font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" '
        f'y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" '
        f'stroke="black"/>',
        f'<text x="{left}" y="{height - bottom + 16}">{x_lo:.4g}</text>',
        f'<text x="{width - right}" y="{height - bottom + 16}" '
        f'text-anchor="end">{x_hi:.4g}</text>',
        f'<text x="{left - 6}" y="{height - bottom}" '
        f'text-anchor="end">{y_lo:.4g}</text>',
        f'<text x="{left - 6}" y="{top + 10}" text-anchor="end">{y_hi:.4g}</text>',
        f'<text x="{(left + width - right) / 2:.1f}" y="{height - 8}" '
        f'text-anchor="middle">x</text>',
        '<text x="14" y="24">u</text>',
    ]
    for idx, (t, points) in enumerate(slices.items()):
        color = _PALETTE[idx % len(_PALETTE)]
        for column, dash in ((1, ""), (2, ' stroke-dasharray="6 4"')):
            coords = " ".join(f"{sx(p[0]):.3f},{sy(p[column]):.3f}"
                              for p in points)
            parts.append(f'<polyline fill="none" stroke="{color}"{dash} '
                         f'points="{coords}"/>')
        legend_y = top + 14 + 16 * idx
        parts.append(f'<text x="{width - right + 10}" y="{legend_y}" '
                     f'fill="{color}">t = {t:.6g}</text>')
    parts.append('<text x="%d" y="%d">solid: re_u, dashed: im_u</text>'
                 % (width - right + 10, height - bottom - 6))
    parts.append("</svg>")
    _write_text(path, "\n".join(parts) + "\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frdtm",
        description="Semi-analytic fractional power-series solver for linear, "
                    "cubic, and coupled Schrodinger-type evolution problems.")
    parser.add_argument("--problem", choices=PROBLEM_NAMES,
                        help="bundled problem to solve")
    parser.add_argument("--config", metavar="FILE",
                        help="JSON file with the same keys as the flags; "
                             "flags take precedence")
    parser.add_argument("--alpha", type=float,
                        help="fractional time order in (0, 1]")
    parser.add_argument("--sigma", type=float, help="cubic coupling strength")
    parser.add_argument("--a", type=float, help="amplitude / width parameter")
    parser.add_argument("--b", type=float,
                        help="second amplitude (coupled family)")
    parser.add_argument("--n", type=float, help="wavenumber of u")
    parser.add_argument("--m", type=float,
                        help="wavenumber of v (coupled family)")
    parser.add_argument("--terms", type=int, metavar="K",
                        help="truncation order: coefficients U_0..U_K")
    parser.add_argument("--x", nargs=3, type=float,
                        metavar=("MIN", "MAX", "COUNT"),
                        help="spatial sampling grid")
    parser.add_argument("--t", nargs=3, type=float,
                        metavar=("MIN", "MAX", "COUNT"),
                        help="temporal sampling grid, MIN >= 0")
    parser.add_argument("--out", action="append", choices=_FORMATS,
                        help="artifact format, repeatable (default: csv)")
    parser.add_argument("--verify", action="store_true", default=None,
                        help="check residuals and closed forms; "
                             "exit 1 on failure")
    parser.add_argument("--output", metavar="BASE",
                        help="base path for artifacts (default: problem name)")
    parser.add_argument("--inject-corruption", type=int, metavar="K",
                        help="testing hook: scale stored coefficient K by 1.1 "
                             "before output and verification")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return run(build_config(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3
