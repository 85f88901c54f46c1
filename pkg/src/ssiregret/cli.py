"""Command line entry point: ``ssiregret {run,verify-bounds,sweep,oracle,plot}``.

Exit codes: 0 success, 1 usage error, 2 bound verification failure.
"""

from __future__ import annotations

import argparse
import sys

from . import bounds
from .channels import AdditiveGaussian, BinarySymmetric, load_finite_channel
from .core import load_target_sequence
from .experts import ConstantExperts, l_star_constant, parse_constant_experts
from .harness import SWEEP_PARAMS, ExperimentConfig, emit_plot, run_experiment, sweep, verify_bounds
from .oracle import exact_expected_regret_detail, minimax_regret_bruteforce, xi_star_oracle

DEFAULTS = {
    "channel": "bsc",
    "delta": "0.1",
    "sigma": "1.0",
    "experts": "0.1,0.7",
    "target": "zeros",
    "n": "100",
    "trials": "1000",
    "seed": "0",
    "eta": "auto",
    "out": None,
    "workers": "1",
    "param": None,
    "values": None,
}
OPTION_KEYS = tuple(DEFAULTS)


class UsageError(Exception):
    pass


def read_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` file mirroring the long flags; '#' starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key = key.strip().lstrip("-").replace("-", "_")
            if key not in OPTION_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--channel", help="bsc, gauss or file:<path> (default bsc)")
    p.add_argument("--delta", help="BSC flip probability (default 0.1)")
    p.add_argument("--sigma", help="Gaussian noise std (default 1.0)")
    p.add_argument("--experts", help="comma separated constant experts (default 0.1,0.7)")
    p.add_argument("--target", help="zeros, ones, random, greedy or file:<path> (default zeros)")
    p.add_argument("--n", help="horizon (default 100)")
    p.add_argument("--trials", help="Monte Carlo trials (default 1000)")
    p.add_argument("--seed", help="base seed (default 0)")
    p.add_argument("--eta", help="learning rate or auto (default auto)")
    p.add_argument("--out", help="output path")
    p.add_argument("--workers", help="concurrent trial workers (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssiregret", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("run", "Monte Carlo run, per-trial CSV"),
                        ("verify-bounds", "Monte Carlo run checked against the upper bounds"),
                        ("oracle", "exact enumeration for small n")):
        _add_common(sub.add_parser(name, help=help_))
    p = sub.add_parser("sweep", help="run once per value of one parameter")
    _add_common(p)
    p.add_argument("--param", help=f"one of {', '.join(SWEEP_PARAMS)}")
    p.add_argument("--values", help="comma separated values")
    p = sub.add_parser("plot", help="SVG chart from a CSV written by run or sweep")
    p.add_argument("csv")
    p.add_argument("--out", required=True)
    return parser


def _options(args: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    if getattr(args, "config", None):
        opts.update(read_config_file(args.config))
    for key in OPTION_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    return opts


def _channel(opts):
    kind = opts["channel"]
    if kind == "bsc":
        return BinarySymmetric(float(opts["delta"]))
    if kind == "gauss":
        return AdditiveGaussian(float(opts["sigma"]))
    if kind.startswith("file:"):
        return load_finite_channel(kind[5:])
    raise UsageError(f"unknown channel {kind!r}")


def _config(opts) -> ExperimentConfig:
    eta = opts["eta"]
    return ExperimentConfig(
        channel=_channel(opts),
        experts=parse_constant_experts(opts["experts"]),
        n=int(opts["n"]),
        target=opts["target"],
        trials=int(opts["trials"]),
        seed=int(opts["seed"]),
        eta=eta if eta == "auto" else float(eta),
        out=opts["out"],
        workers=int(opts["workers"]),
    )


def _cmd_oracle(opts, explicit_target: bool) -> int:
    channel = _channel(opts)
    experts = parse_constant_experts(opts["experts"])
    n = int(opts["n"])
    eta = opts["eta"] if opts["eta"] == "auto" else float(opts["eta"])
    lines = []
    if explicit_target:
        kind, _, arg = opts["target"].partition(":")
        if kind == "zeros":
            target = [0.0] * n
        elif kind == "ones":
            target = [1.0] * n
        elif kind == "file":
            target = load_target_sequence(arg, n=n)
        else:
            raise UsageError("oracle accepts --target zeros, ones or file:<path>")
        res = exact_expected_regret_detail(channel, experts, target, eta)
        lines.append("mode=fixed-target")
    else:
        res = minimax_regret_bruteforce(channel, experts, n, eta)
        lines.append("mode=minimax")
    lines += [
        f"expected_regret={res.expected_regret:.12g}",
        f"worst_target={''.join(str(int(b)) for b in res.worst_target)}",
        f"enumerated_paths={res.enumerated_paths}",
        f"total_probability={res.total_probability:.12g}",
        f"xi_star_oracle={xi_star_oracle(channel):.12g}",
    ]
    N = experts.size
    ub = bounds.upper_bound(n, N, n * channel.expected_ml_loss_per_step(), l_star_constant(experts, n))
    lines.append(f"theorem1_upper={ub.total:.12g}")
    lines.append(f"within_upper={'yes' if res.expected_regret <= ub.total + 1e-9 else 'no'}")
    print("\n".join(lines))
    return 0


def _parse_values(text: str | None) -> list:
    if not text:
        raise UsageError("--values is required for sweep")
    out = []
    for v in text.split(","):
        v = v.strip()
        out.append(v if v == "auto" else float(v))
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.command == "plot":
            emit_plot(args.csv, args.out)
            print(f"wrote {args.out}")
            return 0
        opts = _options(args)
        if args.command == "oracle":
            explicit = args.target is not None or "target" in (
                read_config_file(args.config) if args.config else {})
            return _cmd_oracle(opts, explicit)
        config = _config(opts)
        if args.command == "run":
            report = run_experiment(config)
            print(report.summary())
            return 0
        if args.command == "verify-bounds":
            report = verify_bounds(config)
            if config.out:
                from .harness import write_csv
                write_csv([report], config.out)
            print(report.summary())
            return 0 if report.passed else 2
        if args.command == "sweep":
            param = opts["param"]
            if param not in SWEEP_PARAMS:
                raise UsageError(f"--param must be one of {', '.join(SWEEP_PARAMS)}")
            reports = sweep(config, param, _parse_values(opts["values"]))
            for rep in reports:
                print(f"{param}={rep.param} mean_regret={rep.mean_regret:.12g} "
                      f"ci95={rep.ci_half_width:.12g}")
            return 0
    except (UsageError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
