"""How much does a noisy side channel reveal about the target?

For each channel we sample a long side sequence, decode it with the
maximum-likelihood rule and compare the empirical per-step loss with the
closed-form value.
"""

import numpy as np

from ssiregret.channels import AdditiveGaussian, BinarySymmetric, FiniteConditional, c_s

rng = np.random.default_rng(0)
target = rng.integers(0, 2, 50_000).astype(float)

channels = {
    "BSC delta=0.05": BinarySymmetric(0.05),
    "BSC delta=0.5 (pure noise)": BinarySymmetric(0.5),
    "Gaussian sigma=0.5": AdditiveGaussian(0.5),
    "three-symbol channel": FiniteConditional((-1.0, 0.0, 1.0), [[0.7, 0.2, 0.1], [0.1, 0.2, 0.7]]),
}

print(f"{'channel':28s} {'empirical':>10s} {'closed form':>12s}")
for name, ch in channels.items():
    side = ch.sample_sequence(target, rng)
    empirical = np.abs(ch.ml_estimates(side) - target).mean()
    print(f"{name:28s} {empirical:10.4f} {c_s(ch, 1):12.4f}")

# the three-symbol channel reports its worst target, so the empirical mix sits below it
