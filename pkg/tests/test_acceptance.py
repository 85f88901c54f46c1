"""Acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed as it runs and again in
the terminal summary.
"""

import itertools
import math
import time

import mpmath
import numpy as np

from ssiregret import bounds
from ssiregret.channels import AdditiveGaussian, BinarySymmetric
from ssiregret.cli import main
from ssiregret.experts import ConstantExperts, FixedSequenceExperts, l_star_constant
from ssiregret.forecaster import run, run_plain_ewa
from ssiregret.harness import ExperimentConfig, run_experiment
from ssiregret.oracle import minimax_regret_bruteforce, xi_star_oracle
from ssiregret.special import normal_cdf

SQRT_TERM_1E4 = 74.11519036837555  # sqrt(5000 ln 3), 40-digit mpmath


def _random_experts(rng, N, n):
    if rng.random() < 0.5:
        return ConstantExperts(tuple(rng.random(N)))
    return FixedSequenceExperts(rng.random((N, n)))


def test_criterion_01_ml_adviser_equivalence(criterion):
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    n = 50
    for _ in range(100):
        N = int(rng.choice([1, 2, 5]))
        channel = BinarySymmetric(float(rng.choice([0.0, 0.1, 0.3, 0.5])))
        experts = _random_experts(rng, N, n)
        target = rng.integers(0, 2, n)
        eta = "auto" if rng.random() < 0.5 else float(rng.uniform(0.05, 3.0))
        traj = run(channel, experts, target, eta, rng)
        pooled = FixedSequenceExperts(np.vstack([experts.advice(n).T, traj.ssi_predictions]))
        plain = run_plain_ewa(pooled, target, traj.eta)
        worst = max(worst, float(np.max(np.abs(traj.predictions - plain.predictions))))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 5.0
    criterion(1, "forecaster equals plain EWA with the ML adviser appended", ok,
              f"max diff {worst:.2e}, {elapsed:.2f}s")
    assert ok


def test_criterion_02_per_realization_bound(criterion):
    rng = np.random.default_rng(202)
    channels = [BinarySymmetric(0.0), BinarySymmetric(0.1), BinarySymmetric(0.3), BinarySymmetric(0.5),
                BinarySymmetric(0.8), AdditiveGaussian(0.3), AdditiveGaussian(1.5)]
    worst_slack = math.inf
    for _ in range(10_000):
        n = int(rng.integers(1, 201))
        N = int(rng.integers(1, 6))
        channel = channels[rng.integers(len(channels))]
        experts = _random_experts(rng, N, n)
        target = rng.integers(0, 2, n)
        eta = "auto" if rng.random() < 0.3 else float(np.exp(rng.uniform(np.log(0.01), np.log(5.0))))
        traj = run(channel, experts, target, eta, rng)
        best = min(traj.ssi_loss, float(traj.expert_losses.min()))
        limit = math.log(N + 1) / traj.eta + n * traj.eta / 8 + 1e-9
        worst_slack = min(worst_slack, limit - (traj.forecaster_loss - best))
    ok = worst_slack >= 0
    criterion(2, "loss minus best adviser within ln(N+1)/eta + n eta/8", ok,
              f"min slack {worst_slack:.3g}")
    assert ok


def test_criterion_03_bruteforce_under_upper_bound(criterion):
    start = time.perf_counter()
    worst_gap = -math.inf
    for values, delta, n in itertools.product([(0.1, 0.7), (0.5,)], [0.0, 0.1, 0.25, 0.5], range(2, 11)):
        experts = ConstantExperts(values)
        N = experts.size
        res = minimax_regret_bruteforce(BinarySymmetric(delta), experts, n)
        ub = bounds.upper_bound(n, N, n * min(delta, 1 - delta), l_star_constant(experts, n)).total
        worst_gap = max(worst_gap, res.expected_regret - ub)
    elapsed = time.perf_counter() - start
    ok = worst_gap <= 1e-9 and elapsed < 60.0
    criterion(3, "brute-force minimax regret below the upper bound", ok,
              f"max(regret - bound) {worst_gap:.3f}, {elapsed:.1f}s")
    assert ok


def _mc(channel, experts, workers=4):
    cfg = ExperimentConfig(channel=channel, experts=ConstantExperts(experts), n=10_000,
                           target="zeros", trials=1000, seed=0, workers=workers)
    return run_experiment(cfg)


def test_criterion_04_negative_regret_bsc(criterion):
    start = time.perf_counter()
    rep = _mc(BinarySymmetric(0.05), (0.1, 0.7))
    elapsed = time.perf_counter() - start
    top = rep.mean_regret + 3 * rep.ci_half_width
    ok = top < -400 and elapsed < 120
    criterion(4, "BSC 0.05 regret clearly negative", ok,
              f"mean {rep.mean_regret:.2f}, CI {rep.ci_half_width:.3f}, {elapsed:.1f}s")
    assert ok


def test_criterion_05_useless_side_information(criterion):
    rep = _mc(BinarySymmetric(0.5), (0.1, 0.7))
    ci = rep.ci_half_width
    ok = -3 * ci <= rep.mean_regret <= SQRT_TERM_1E4 + 3 * ci
    criterion(5, "BSC 0.5 regret within the baseline guarantee", ok,
              f"mean {rep.mean_regret:.2f}, CI {ci:.3f}")
    assert ok


def test_criterion_06_negative_regret_gaussian(criterion):
    rep = _mc(AdditiveGaussian(0.5), (0.25, 0.75))
    top = rep.mean_regret + 3 * rep.ci_half_width
    ok = top < -700
    criterion(6, "Gaussian 0.5 regret clearly negative", ok,
              f"mean {rep.mean_regret:.2f}, CI {rep.ci_half_width:.3f}")
    assert ok


def test_criterion_07_normal_cdf(criterion):
    mpmath.mp.dps = 40
    density = lambda x: mpmath.exp(-x * x / 2) / mpmath.sqrt(2 * mpmath.pi)
    worst = max(abs(normal_cdf(z) - float(mpmath.quad(density, [-mpmath.inf, 0, z])))
                for z in range(-5, 6))
    symmetry = max(abs(normal_cdf(z) + normal_cdf(-z) - 1.0) for z in np.linspace(-8, 8, 1601))
    ok = worst <= 1e-12 and normal_cdf(0.0) == 0.5 and symmetry <= 1e-14
    criterion(7, "normal CDF accuracy", ok, f"max err {worst:.1e}, symmetry {symmetry:.1e}")
    assert ok


def test_criterion_08_xi_star(criterion):
    deltas = [round(0.05 * k, 2) for k in range(21)]
    bsc_err = max(abs(bounds.xi_star(BinarySymmetric(d)) - xi_star_oracle(BinarySymmetric(d))) for d in deltas)
    bsc_exact = all(bounds.xi_star(BinarySymmetric(d)) == min(d, 1 - d) for d in deltas)
    sigmas = [0.1, 0.25, 0.5, 1.0, 2.0]
    gauss_err = max(abs(bounds.xi_star(AdditiveGaussian(s)) - xi_star_oracle(AdditiveGaussian(s))) for s in sigmas)
    ok = bsc_err <= 1e-9 and bsc_exact and gauss_err <= 1e-6
    criterion(8, "closed-form single-step loss matches direct computation", ok,
              f"BSC err {bsc_err:.1e}, Gaussian err {gauss_err:.1e}")
    assert ok


def test_criterion_09_bound_sandwich(criterion):
    violations = 0
    checked = 0
    c_fs = [0.0, 0.1, 0.25, 0.5]
    for n, N, delta, cf in itertools.product(range(2, 11), [1, 2], [0.0, 0.1, 0.25, 0.5], c_fs):
        checked += 1
        violations += bounds.corollary2_lower(n, N, delta).total > bounds.corollary1_upper(n, N, delta, cf).total
    for n, N, sigma, cf in itertools.product(range(2, 11), [1, 2], [0.1, 0.25, 0.5, 1.0, 2.0], c_fs):
        checked += 1
        violations += bounds.corollary4_lower(n, N, sigma).total > bounds.corollary3_upper(n, N, sigma, cf).total
    ok = violations == 0
    criterion(9, "lower bounds never exceed upper bounds", ok, f"{checked} cells, {violations} violations")
    assert ok


def test_criterion_10_concurrency_reproducible(tmp_path, criterion, capsys):
    a, b = tmp_path / "w1.csv", tmp_path / "w8.csv"
    common = ["run", "--delta", "0.1", "--experts", "0.1,0.7", "--target", "random",
              "--n", "2000", "--trials", "200", "--seed", "7"]
    codes = (main(common + ["--workers", "1", "--out", str(a)]),
             main(common + ["--workers", "8", "--out", str(b)]))
    capsys.readouterr()
    ok = codes == (0, 0) and a.read_bytes() == b.read_bytes()
    criterion(10, "1-way and 8-way runs write identical CSVs", ok, f"{a.stat().st_size} bytes")
    assert ok
