"""Command-line driver for the verification suites.

Usage::

    python -m splitcauchy --command reconstruct --z0 0.3,0.1 --format json --out r.json
    python -m splitcauchy --config run.cfg --seed 7

A config file holds ``key=value`` lines whose keys are the long flag names
without dashes (``eps-schedule=0.1,0.01``); flags given on the command line
override it.  Each suite writes one row per (eps, S) or per property case;
the pass threshold of every row is part of its experiment id.  The exit
status is 0 only if every row passes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import splitnum as sn
from .cauchy_kernel import K_eps
from .contour import (
    LimitSchedule, QuadratureConfig, QuadratureError, line_integral, poisson_limit_check,
    reconstruct, reconstruct_windowed, rectangle, stokes_residual,
)
from .wavefield import bump_window, dbar_fd, family, make_solution

COMMANDS = ("verify-algebra", "verify-solutions", "green-check", "reconstruct",
            "sweep", "poisson-check")

HEADER = ("experiment", "epsilon", "S", "est_re_plus", "est_im_plus", "est_re_minus",
          "est_im_minus", "ref_plus", "ref_minus", "abs_error", "imag_residual", "evals",
          "wall_time_s")

ULP = 2.0 ** -52


class ReportError(OSError):
    """Writing or reading a report failed."""


@dataclass
class ReportRow:
    experiment: str
    epsilon: float = math.nan
    S: float = math.nan
    est_re_plus: float = math.nan
    est_im_plus: float = math.nan
    est_re_minus: float = math.nan
    est_im_minus: float = math.nan
    ref_plus: float = math.nan
    ref_minus: float = math.nan
    abs_error: float = math.nan
    imag_residual: float = math.nan
    evals: int = 0
    wall_time_s: float = 0.0


@dataclass
class ExperimentConfig:
    command: str = "reconstruct"
    R: float = 1.0
    z0: Tuple[float, float] = (0.3, 0.1)
    family: str = "gaussian"
    eps_schedule: Tuple[float, ...] = LimitSchedule().epsilons
    delta: float = LimitSchedule().delta
    abs_tol: float = QuadratureConfig().abs_tol
    rel_tol: float = QuadratureConfig().rel_tol
    window: Optional[str] = None
    seed: int = 42
    format: str = "csv"
    out: str = "-"
    t0: float = 0.0
    T: float = 1e4
    timing: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}; choose from {COMMANDS}")
        if not self.R > 0:
            raise ValueError("R must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.command in ("reconstruct", "sweep"):
            x, y = self.z0
            if self.command == "reconstruct" and not abs(x * x - y * y) < self.R:
                raise ValueError(f"z0 {self.z0} must satisfy |N(z0)| < R = {self.R}")

    @property
    def schedule(self) -> LimitSchedule:
        return LimitSchedule(tuple(self.eps_schedule), self.delta)

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(abs_tol=self.abs_tol, rel_tol=self.rel_tol)


# -- report I/O --------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return "%.17g" % value


def _json_number(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return "%.17g" % value


def emit_report(rows: Sequence[ReportRow], fmt: str, path: str) -> None:
    """Write rows as CSV (fixed header) or a JSON array; ``-`` is stdout."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(HEADER)
        for row in rows:
            d = asdict(row)
            writer.writerow([d["experiment"]] + [_fmt(d[k]) for k in HEADER[1:]])
        text = buf.getvalue()
    elif fmt == "json":
        items = []
        for row in rows:
            d = asdict(row)
            parts = [f'"experiment": {json.dumps(d["experiment"])}']
            parts += [f'"{k}": {_json_number(d[k])}' for k in HEADER[1:]]
            items.append("  {" + ", ".join(parts) + "}")
        text = "[\n" + ",\n".join(items) + "\n]\n" if items else "[]\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportError(f"cannot write report to {path}: {exc}") from exc


def read_report(path: str, fmt: str) -> List[ReportRow]:
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise ReportError(f"cannot read report {path}: {exc}") from exc
    if fmt == "json":
        records = json.loads(text)
    else:
        records = list(csv.DictReader(io.StringIO(text)))
    rows = []
    for rec in records:
        kwargs = {}
        for f in fields(ReportRow):
            raw = rec[f.name]
            if f.name == "experiment":
                kwargs[f.name] = raw
            elif f.name == "evals":
                kwargs[f.name] = int(raw)
            else:
                kwargs[f.name] = float(raw)
        rows.append(ReportRow(**kwargs))
    return rows


# -- suites --------------------------------------------------------------------


@dataclass
class SuiteResult:
    rows: List[ReportRow] = field(default_factory=list)
    passed: bool = True

    def add(self, row: ReportRow, ok: bool) -> None:
        self.rows.append(row)
        self.passed = self.passed and bool(ok)


def _random_split(rng, n, lo=-10.0, hi=10.0):
    xy = rng.uniform(lo, hi, size=(n, 2))
    return sn.SplitComplex(xy[:, 0], xy[:, 1])


def suite_algebra(cfg: ExperimentConfig) -> SuiteResult:
    rng = np.random.default_rng(cfg.seed)
    n = 10_000
    zw = rng.uniform(-10.0, 10.0, size=(n, 4))
    z = sn.SplitComplex(zw[:, 0], zw[:, 1])
    w = sn.SplitComplex(zw[:, 2], zw[:, 3])
    c = _random_split(rng, n)
    res = SuiteResult()

    lhs = sn.norm(sn.mul(z, w))
    rhs = sn.norm(z) * sn.norm(w)
    rel = float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))
    res.add(ReportRow("algebra/norm_multiplicative[rtol=1e-12]", abs_error=rel, evals=n),
            rel <= 1e-12)

    ok = np.abs(sn.norm(z)) >= 1e-6
    zs = sn.SplitComplex(z.x[ok], z.y[ok])
    prod = sn.mul(zs, sn.inverse(zs))
    err = float(np.max(np.hypot(prod.x - 1.0, prod.y)))
    res.add(ReportRow("algebra/inverse[atol=1e-12;|N|>=1e-6]", abs_error=err,
                      evals=int(ok.sum())), err <= 1e-12)

    # ring axioms, measured against the magnitude of the terms involved
    mz, mw, mc = sn.modulus(z), sn.modulus(w), sn.modulus(c)
    checks = [
        ("associativity", sn.mul(sn.mul(z, w), c) - sn.mul(z, sn.mul(w, c)), mz * mw * mc),
        ("commutativity", sn.mul(z, w) - sn.mul(w, z), mz * mw),
        ("distributivity", sn.mul(z, w + c) - (sn.mul(z, w) + sn.mul(z, c)), mz * (mw + mc)),
    ]
    for name, diff, scale in checks:
        rel = float(np.max(sn.modulus(diff) / scale))
        res.add(ReportRow(f"algebra/{name}[rtol=8ulp]", abs_error=rel, evals=n),
                rel <= 8 * ULP)

    ep, em = sn.SplitComplex(0.5, 0.5), sn.SplitComplex(0.5, -0.5)
    idem = [sn.mul(ep, ep) - ep, sn.mul(em, em) - em, sn.mul(ep, em),
            ep + em - sn.ONE, ep - em - sn.J]
    worst = max(float(sn.modulus(d)) for d in idem)
    res.add(ReportRow("algebra/idempotents[exact]", abs_error=worst), worst == 0.0)

    emb = sn.bicomplex_mul(sn.bicomplex_embed(z), sn.bicomplex_embed(w)) - sn.bicomplex_embed(sn.mul(z, w))
    rel = float(np.max(abs(emb) / (mz * mw)))
    res.add(ReportRow("algebra/embed_homomorphism[rtol=8ulp]", abs_error=rel, evals=n),
            rel <= 8 * ULP)
    return res


SOLUTION_FAMILIES = ("gaussian", "sech", "sinbump", "linear", "quadratic")


def suite_solutions(cfg: ExperimentConfig) -> SuiteResult:
    rng = np.random.default_rng(cfg.seed)
    res = SuiteResult()
    h = 1e-5
    for name in SOLUTION_FAMILIES:
        F = make_solution(family(name))
        z = _random_split(rng, 100, -3.0, 3.0)
        r1 = sn.modulus(dbar_fd(F, z, h))
        r2 = sn.modulus(dbar_fd(F, z, h / 2))
        worst = float(np.max(r1))
        res.add(ReportRow(f"solutions/{name}/residual[atol=1e-6;h=1e-5]", abs_error=worst,
                          evals=400), worst <= 1e-6)
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = float(np.max(r1) / np.max(r2))
        res.add(ReportRow(f"solutions/{name}/order[ratio in 3.5..4.5]", abs_error=ratio,
                          evals=400), 3.5 <= ratio <= 4.5)
    return res


def _random_rectangles(rng, n, lo, hi, min_side=0.05):
    rects = []
    while len(rects) < n:
        a, b = np.sort(rng.uniform(lo, hi, 2))
        c, d = np.sort(rng.uniform(lo, hi, 2))
        if b - a > min_side and d - c > min_side:
            rects.append((a, b, c, d))
    return rects


def suite_green(cfg: ExperimentConfig) -> SuiteResult:
    rng = np.random.default_rng(cfg.seed)
    qcfg = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)
    res = SuiteResult()
    for name in SOLUTION_FAMILIES + ("constant",):
        F = make_solution(family(name))
        worst = 0.0
        for rect in _random_rectangles(rng, 20, -3.0, 3.0):
            worst = max(worst, abs(line_integral(F, rectangle(*rect), qcfg)))
        res.add(ReportRow(f"green/{name}[atol=1e-9]", abs_error=worst), worst <= 1e-9)

    # the regularized kernel is a solution on each quadrant u > 0, v > 0 etc.
    worst = 0.0
    for rect in _random_rectangles(rng, 20, 0.2, 3.0):
        x0, x1, y0, y1 = rect
        # shift into u > 0, v > 0: x > |y|
        x0, x1 = x0 + 3.0, x1 + 3.0
        y0, y1 = y0 - 3.0, y1 - 3.0
        worst = max(worst, abs(line_integral(lambda z: K_eps(z, 0.1), rectangle(x0, x1, y0, y1), qcfg)))
    res.add(ReportRow("green/K_eps[atol=1e-9]", abs_error=worst), worst <= 1e-9)

    ratios = stokes_order_ratios()
    for k, ratio in enumerate(ratios):
        res.add(ReportRow(f"green/stokes_order_{k}[ratio in 3.5..4.5]", abs_error=ratio),
                3.5 <= ratio <= 4.5)
    return res


def _nonsolution(z):
    # smooth field with dbar F != 0
    return sn.SplitComplex(np.sin(z.x) * np.cos(2 * z.y), z.x * z.y * z.y)


def stokes_order_ratios(sides=(0.4, 0.2, 0.1), centre=(0.3, -0.2), h=1e-4) -> List[float]:
    """Successive ratios of |stokes_residual| / area as the cell is halved."""
    cx, cy = centre
    normalized = []
    for s in sides:
        cell = (cx - s / 2, cx + s / 2, cy - s / 2, cy + s / 2)
        r = stokes_residual(_nonsolution, cell, h)
        normalized.append(float(sn.modulus(r)) / (s * s))
    return [a / b for a, b in zip(normalized, normalized[1:])]


def _window(cfg: ExperimentConfig):
    if not cfg.window:
        return None
    name, _, radius = cfg.window.partition(":")
    if name != "bump":
        raise ValueError(f"unknown window {name!r}; only 'bump' is available")
    return bump_window(float(radius) if radius else 1.0)


def _reconstruction_rows(report, label: str, timing: bool) -> Tuple[List[ReportRow], bool]:
    ref = report.reference
    rows = []
    for est in report.estimates:
        err = float(sn.modulus(est.value.real - ref))
        rows.append(ReportRow(
            f"{label}/eps", est.eps, est.S,
            est.value.plus.real, est.value.plus.imag, est.value.minus.real, est.value.minus.imag,
            float(ref.u), float(ref.v), err, float(sn.modulus(est.value.imag)), est.evals,
            est.wall_time if timing else 0.0))
    lim = report.extrapolated
    ok = report.abs_error <= 1e-3 and report.residual_imaginary_part <= 1e-3
    rows.append(ReportRow(
        f"{label}/extrapolated[atol=1e-3;imag<=1e-3]", 0.0, math.inf,
        lim.plus.real, lim.plus.imag, lim.minus.real, lim.minus.imag,
        float(ref.u), float(ref.v), report.abs_error, report.residual_imaginary_part,
        report.evals, sum(e.wall_time for e in report.estimates) if timing else 0.0))
    return rows, ok


def _run_reconstruction(cfg: ExperimentConfig, z0: sn.SplitComplex):
    F = make_solution(family(cfg.family))
    window = _window(cfg)
    if window is None:
        return reconstruct(F, z0, cfg.R, cfg.schedule, cfg.quadrature)
    return reconstruct_windowed(F, z0, cfg.R, window, cfg.schedule, cfg.quadrature)


def suite_reconstruct(cfg: ExperimentConfig) -> SuiteResult:
    z0 = sn.SplitComplex(*cfg.z0)
    report = _run_reconstruction(cfg, z0)
    rows, ok = _reconstruction_rows(report, f"reconstruct/{cfg.family}", cfg.timing)
    res = SuiteResult()
    for row in rows[:-1]:
        res.add(row, True)
    res.add(rows[-1], ok)
    return res


def sweep_grid(R: float) -> List[Tuple[float, float]]:
    """3 x 3 grid of points with |N| <= R/2."""
    a = 0.4 * math.sqrt(R)
    return [(x, y) for x in (-a, 0.0, a) for y in (-a, 0.0, a)]


def suite_sweep(cfg: ExperimentConfig) -> SuiteResult:
    res = SuiteResult()
    for x, y in sweep_grid(cfg.R):
        report = _run_reconstruction(cfg, sn.SplitComplex(x, y))
        rows, ok = _reconstruction_rows(report, f"sweep/{cfg.family}/z0={x:g}{y:+g}j",
                                        cfg.timing)
        for row in rows[:-1]:
            res.add(row, True)
        res.add(rows[-1], ok)
    return res


def _profile(name: str) -> Callable:
    base, _, param = name.partition(":")
    if base == "constant":
        c = float(param) if param else 1.0
        return lambda t: np.full_like(np.asarray(t, dtype=float), c)
    if base == "gaussian":
        return lambda t: np.exp(-np.asarray(t, dtype=float) ** 2)
    raise ValueError(f"poisson-check profile must be 'constant' or 'gaussian', got {name!r}")


def suite_poisson(cfg: ExperimentConfig) -> SuiteResult:
    profile = _profile(cfg.family)
    target = 2 * math.pi * float(profile(np.array([cfg.t0]))[0])
    res = SuiteResult()
    values = []
    for eps in cfg.eps_schedule:
        start = time.perf_counter()
        val = poisson_limit_check(profile, cfg.t0, eps, cfg.T)
        wall = time.perf_counter() - start if cfg.timing else 0.0
        values.append(val)
        res.add(ReportRow(f"poisson/{cfg.family}/eps", eps, cfg.T, val.real, val.imag,
                          ref_plus=target, abs_error=abs(val - 1j * target),
                          imag_residual=abs(val.real), wall_time_s=wall), True)
    if len(values) >= 2:
        e1, e2 = cfg.eps_schedule[-2], cfg.eps_schedule[-1]
        lim = (e1 * values[-1] - e2 * values[-2]) / (e1 - e2)
    else:
        lim = values[-1]
    err = abs(lim - 1j * target)
    res.add(ReportRow(f"poisson/{cfg.family}/extrapolated[rtol=1e-6]", 0.0, cfg.T,
                      lim.real, lim.imag, ref_plus=target, abs_error=err,
                      imag_residual=abs(lim.real)), err <= 1e-6 * abs(target))
    return res


SUITES = {
    "verify-algebra": suite_algebra,
    "verify-solutions": suite_solutions,
    "green-check": suite_green,
    "reconstruct": suite_reconstruct,
    "sweep": suite_sweep,
    "poisson-check": suite_poisson,
}


# suites that draw random points; their rows carry the seed
SEEDED = ("verify-algebra", "verify-solutions", "green-check")


def run(cfg: ExperimentConfig) -> Tuple[int, List[ReportRow]]:
    """Run the configured suite, write its report, return (exit status, rows)."""
    try:
        result = SUITES[cfg.command](cfg)
    except (ValueError, QuadratureError, ArithmeticError) as exc:
        result = SuiteResult()
        result.add(ReportRow(f"{cfg.command}/error: {type(exc).__name__}: {exc}"), False)
    if cfg.command in SEEDED:
        for row in result.rows:
            row.experiment += f"[seed={cfg.seed}]"
    emit_report(result.rows, cfg.format, cfg.out)
    return (0 if result.passed else 1), result.rows


# -- argument parsing ------------------------------------------------------------


def _floats(text: str) -> Tuple[float, ...]:
    return tuple(float(p) for p in text.split(",") if p.strip())


def _pair(text: str) -> Tuple[float, float]:
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    return vals


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


_OPTIONS = [
    # flag, type, help
    ("--command", str, "suite to run: " + ", ".join(COMMANDS)),
    ("--R", float, "level R of the hyperbolas |N(Z)| = R"),
    ("--z0", _pair, "interior point as x,y"),
    ("--family", str, "characteristic-data family name[:param] (poisson-check: profile)"),
    ("--eps-schedule", _floats, "comma-separated decreasing eps values"),
    ("--delta", float, "truncation target: S = R / (eps * delta)"),
    ("--abs-tol", float, "quadrature absolute tolerance"),
    ("--rel-tol", float, "quadrature relative tolerance"),
    ("--window", str, "window profile name:radius, e.g. bump:1"),
    ("--seed", int, "RNG seed for random-point suites"),
    ("--format", str, "csv or json"),
    ("--out", str, "output path ('-' for stdout)"),
    ("--t0", float, "poisson-check: peak location"),
    ("--T", float, "poisson-check: half-length of the integration interval"),
    ("--timing", _bool, "record wall-clock times (breaks byte-for-byte reproducibility)"),
]


def read_config_file(path: str) -> dict:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    types = {flag[2:]: typ for flag, typ, _ in _OPTIONS}
    values = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ReportError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or key not in types:
            raise ValueError(f"{path}:{lineno}: unrecognized line {line!r}")
        values[key.replace("-", "_")] = types[key](val.strip())
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitcauchy", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="key=value file; flags override it")
    for flag, typ, help_text in _OPTIONS:
        parser.add_argument(flag, type=typ, help=help_text,
                            dest=flag[2:].replace("-", "_"), default=None)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> ExperimentConfig:
    args = build_parser().parse_args(argv)
    values = read_config_file(args.config) if args.config else {}
    values.update({k: v for k, v in vars(args).items() if v is not None and k != "config"})
    return ExperimentConfig(**values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
    except ValueError as exc:
        print(f"splitcauchy: {exc}", file=sys.stderr)
        return 2
    try:
        status, _ = run(cfg)
    except ReportError as exc:
        print(f"splitcauchy: {exc}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
