"""Monte Carlo experiments, bound verification, sweeps, CSV output and SVG plots.

Trial ``i`` draws its randomness from
``np.random.default_rng(np.random.SeedSequence([seed, i]))``, so results
do not depend on how trials are scheduled across workers.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .channels import AdditiveGaussian, BinarySymmetric, ChannelSpec, FiniteConditional
from .core import as_target_sequence, load_target_sequence
from .experts import ConstantExperts, ExpertClass, c_f, l_star_constant
from .forecaster import resolve_eta, run_vectorized
from .oracle import greedy_adversary

__all__ = [
    "ExperimentConfig",
    "TrialResult",
    "RegretReport",
    "trial_rng",
    "resolve_target",
    "run_experiment",
    "verify_bounds",
    "sweep",
    "write_csv",
    "emit_plot",
    "CSV_HEADER",
    "SWEEP_PARAMS",
]

CSV_HEADER = ["param", "trial", "n", "N", "eta", "forecaster_loss", "best_expert_loss",
              "ssi_loss", "regret", "upper_bound", "lower_bound"]
SWEEP_PARAMS = ("delta", "sigma", "n", "trials", "eta")
Z95 = 1.96


@dataclass(frozen=True)
class ExperimentConfig:
    """``target`` is one of zeros, ones, random, greedy or ``file:<path>``."""

    channel: ChannelSpec
    experts: ExpertClass
    n: int
    target: str = "zeros"
    trials: int = 1000
    seed: int = 0
    eta: object = "auto"
    out: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        kind = self.target.split(":", 1)[0]
        if kind not in ("zeros", "ones", "random", "greedy", "file"):
            raise ValueError(f"unknown target {self.target!r}")
        resolve_eta(self.eta, self.experts.size + 1, self.n)


@dataclass(frozen=True)
class TrialResult:
    trial: int
    forecaster_loss: float
    best_expert_loss: float
    ssi_loss: float
    regret: float


@dataclass
class RegretReport:
    config: ExperimentConfig
    eta: float
    trials: list[TrialResult] = field(repr=False)
    bounds: dict[str, bounds.BoundReport] = field(default_factory=dict)
    flags: dict[str, bool] = field(default_factory=dict)
    param: object = ""

    @property
    def regrets(self) -> np.ndarray:
        return np.array([t.regret for t in self.trials])

    @property
    def mean_regret(self) -> float:
        return float(np.mean(self.regrets))

    @property
    def std_regret(self) -> float:
        r = self.regrets
        return float(np.std(r, ddof=1)) if r.size > 1 else 0.0

    @property
    def ci_half_width(self) -> float:
        return Z95 * self.std_regret / math.sqrt(len(self.trials))

    @property
    def passed(self) -> bool:
        return all(self.flags.values())

    @property
    def upper(self) -> bounds.BoundReport | None:
        return self.bounds.get("theorem1")

    @property
    def lower(self) -> bounds.BoundReport | None:
        return self.bounds.get("theorem2")

    def summary(self) -> str:
        lines = [
            f"trials={len(self.trials)}",
            f"n={self.config.n}",
            f"N={self.config.experts.size}",
            f"eta={self.eta:.12g}",
            f"mean_regret={self.mean_regret:.12g}",
            f"std_regret={self.std_regret:.12g}",
            f"ci95_half_width={self.ci_half_width:.12g}",
        ]
        for name, b in self.bounds.items():
            lines.append(f"{name}_{b.kind}={b.total:.12g}")
        for name, ok in self.flags.items():
            lines.append(f"flag_{name}={'pass' if ok else 'FAIL'}")
        return "\n".join(lines)


def trial_rng(seed: int, i: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(i)]))


def resolve_target(config: ExperimentConfig) -> np.ndarray | None:
    """The fixed target for ``config``, or ``None`` when each trial draws its own."""
    kind, _, arg = config.target.partition(":")
    n = config.n
    if kind == "zeros":
        return as_target_sequence(np.zeros(n))
    if kind == "ones":
        return as_target_sequence(np.ones(n))
    if kind == "file":
        return load_target_sequence(arg, n=n)
    if kind == "greedy":
        # the seed sequence [seed] never collides with the per-trial [seed, i]
        rng = np.random.default_rng(np.random.SeedSequence([int(config.seed)]))
        return greedy_adversary(config.channel, config.experts, n, config.eta, rng)
    return None


def _run_trial(config: ExperimentConfig, target: np.ndarray | None, i: int) -> TrialResult:
    rng = trial_rng(config.seed, i)
    if target is None:
        target = as_target_sequence(rng.integers(0, 2, config.n).astype(np.float64))
    traj = run_vectorized(config.channel, config.experts, target, config.eta, rng)
    return TrialResult(i, traj.forecaster_loss, traj.best_expert_loss, traj.ssi_loss, traj.regret)


def theorem_bounds(config: ExperimentConfig) -> dict[str, bounds.BoundReport]:
    """Theorem-level upper and lower bounds for a constant expert class."""
    if not isinstance(config.experts, ConstantExperts):
        return {}
    n, N = config.n, config.experts.size
    C_S = n * config.channel.expected_ml_loss_per_step()
    return {
        "theorem1": bounds.upper_bound(n, N, C_S, l_star_constant(config.experts, n)),
        "theorem2": bounds.lower_bound(n, N, bounds.xi_star(config.channel)),
    }


def run_experiment(config: ExperimentConfig) -> RegretReport:
    """Run ``config.trials`` independent trials of the forecaster.

    Fixed targets are shared by all trials so only the side sequence is
    resampled; ``random`` targets are redrawn per trial.
    """
    target = resolve_target(config)
    indices = range(config.trials)
    if config.workers == 1:
        results = [_run_trial(config, target, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(lambda i: _run_trial(config, target, i), indices))
    eta = resolve_eta(config.eta, config.experts.size + 1, config.n)
    report = RegretReport(config, eta, results, theorem_bounds(config))
    if config.out:
        write_csv([report], config.out)
    return report


def verify_bounds(config: ExperimentConfig) -> RegretReport:
    """Run ``config`` and compare the empirical regret with every applicable upper bound.

    An upper bound passes when ``mean - 3 * CI <= bound``.  Lower bounds
    concern the best possible forecaster, not this one, and are reported
    without a flag.
    """
    if not isinstance(config.experts, ConstantExperts):
        raise ValueError("verify-bounds needs constant experts; use the oracle for other classes")
    if isinstance(config.channel, FiniteConditional):
        raise ValueError("no closed-form corollary for finite channels; use the oracle subcommand")
    report = run_experiment(config)
    n, N, cf = config.n, config.experts.size, c_f(config.experts)
    if isinstance(config.channel, BinarySymmetric):
        d = config.channel.delta
        report.bounds["corollary1"] = bounds.corollary1_upper(n, N, d, cf)
        report.bounds["corollary2"] = bounds.corollary2_lower(n, N, d)
    elif isinstance(config.channel, AdditiveGaussian):
        s = config.channel.sigma
        report.bounds["corollary3"] = bounds.corollary3_upper(n, N, s, cf)
        report.bounds["corollary4"] = bounds.corollary4_lower(n, N, s)
    slack = report.mean_regret - 3.0 * report.ci_half_width
    for name, b in report.bounds.items():
        if b.kind == "upper":
            report.flags[name] = slack <= b.total
    return report


def _with_param(config: ExperimentConfig, param: str, value) -> ExperimentConfig:
    if param == "delta":
        return dataclasses.replace(config, channel=BinarySymmetric(float(value)))
    if param == "sigma":
        return dataclasses.replace(config, channel=AdditiveGaussian(float(value)))
    if param in ("n", "trials"):
        return dataclasses.replace(config, **{param: int(value)})
    if param == "eta":
        return dataclasses.replace(config, eta=value if value == "auto" else float(value))
    raise ValueError(f"unknown sweep parameter {param!r}; choose from {', '.join(SWEEP_PARAMS)}")


def sweep(config: ExperimentConfig, param: str, values, verify: bool = False) -> list[RegretReport]:
    """One report per value of ``param``; with ``config.out`` set, all rows go to one CSV."""
    if param not in SWEEP_PARAMS:
        raise ValueError(f"unknown sweep parameter {param!r}; choose from {', '.join(SWEEP_PARAMS)}")
    reports = []
    for value in values:
        cfg = dataclasses.replace(_with_param(config, param, value), out=None)
        rep = verify_bounds(cfg) if verify else run_experiment(cfg)
        rep.param = value
        reports.append(rep)
    if config.out:
        write_csv(reports, config.out)
    return reports


def _fmt(x) -> str:
    return "" if x is None else f"{x:.12g}"


def csv_text(reports: list[RegretReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rep in reports:
        up, lo = rep.upper, rep.lower
        for t in rep.trials:
            writer.writerow([
                rep.param if isinstance(rep.param, str) else _fmt(rep.param),
                t.trial, rep.config.n, rep.config.experts.size, _fmt(rep.eta),
                _fmt(t.forecaster_loss), _fmt(t.best_expert_loss), _fmt(t.ssi_loss),
                _fmt(t.regret),
                _fmt(up.total if up else None), _fmt(lo.total if lo else None),
            ])
    return buf.getvalue()


def write_csv(reports: list[RegretReport], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(reports))


def _read_plot_rows(csv_path):
    with open(csv_path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ValueError(f"{csv_path}: line 1: header does not match the expected schema")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise ValueError(f"{csv_path}: line {lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
            rec = dict(zip(CSV_HEADER, row))
            try:
                parsed = {
                    "param": float(rec["param"]) if rec["param"] else None,
                    "trial": int(rec["trial"]),
                    "regret": float(rec["regret"]),
                    "upper": float(rec["upper_bound"]) if rec["upper_bound"] else None,
                    "lower": float(rec["lower_bound"]) if rec["lower_bound"] else None,
                }
            except ValueError as exc:
                raise ValueError(f"{csv_path}: line {lineno}: {exc}") from None
            rows.append(parsed)
    if not rows:
        raise ValueError(f"{csv_path}: no data rows")
    return rows


def _plot_series(rows):
    """Collapse rows to (x, mean regret, upper, lower) points."""
    if all(r["param"] is not None for r in rows):
        groups: dict[float, list] = {}
        for r in rows:
            groups.setdefault(r["param"], []).append(r)
        xlabel = "parameter"
    else:
        groups = {float(r["trial"]): [r] for r in rows}
        xlabel = "trial"
    points = []
    for x in sorted(groups):
        g = groups[x]
        ups = [r["upper"] for r in g if r["upper"] is not None]
        los = [r["lower"] for r in g if r["lower"] is not None]
        points.append((x, float(np.mean([r["regret"] for r in g])),
                       ups[0] if ups else None, los[0] if los else None))
    return xlabel, points


def emit_plot(csv_path: str | os.PathLike, out_path: str | os.PathLike,
              width: int = 640, height: int = 400) -> None:
    """Write a standalone SVG line chart of regret with bound overlays."""
    rows = _read_plot_rows(csv_path)
    xlabel, points = _plot_series(rows)
    xs = [p[0] for p in points]
    ys = [v for p in points for v in p[1:] if v is not None]
    margin = 60
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    def polyline(vals, cls, color, dash=""):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in vals)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return f'<polyline class="{cls}" fill="none" stroke="{color}" stroke-width="1.5"{extra} points="{pts}"/>'

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<text class="xlabel" x="{width / 2:.1f}" y="{height - 15}" text-anchor="middle">{xlabel}</text>',
        f'<text class="ylabel" x="15" y="{height / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {height / 2:.1f})">regret</text>',
        f'<text x="{margin}" y="{height - margin + 15}" font-size="10">{x0:.6g}</text>',
        f'<text x="{width - margin}" y="{height - margin + 15}" font-size="10" text-anchor="end">{x1:.6g}</text>',
        f'<text x="{margin - 5}" y="{height - margin}" font-size="10" text-anchor="end">{y0:.6g}</text>',
        f'<text x="{margin - 5}" y="{margin}" font-size="10" text-anchor="end">{y1:.6g}</text>',
        polyline([(p[0], p[1]) for p in points], "regret", "steelblue"),
    ]
    for x, y, _, _ in points:
        parts.append(f'<circle class="point" cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="steelblue"/>')
    for idx, cls, color in ((2, "upper-bound", "firebrick"), (3, "lower-bound", "seagreen")):
        vals = [(p[0], p[idx]) for p in points if p[idx] is not None]
        if vals:
            parts.append(polyline(vals, cls, color, dash="6,3"))
    parts.append("</svg>")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
