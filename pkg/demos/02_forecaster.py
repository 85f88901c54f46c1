"""Side information lets the forecaster beat the best expert.

Two constant experts (0.1 and 0.7) predict an all-zeros target. The best
of them loses 0.1 per step. A binary symmetric side channel with flip
probability 0.05 feeds the forecaster a decoded guess that loses 0.05 per
step, so the forecaster's regret against the experts becomes negative.
"""

import numpy as np

from ssiregret import BinarySymmetric, ConstantExperts, run, run_plain_ewa

n = 5_000
experts = ConstantExperts((0.1, 0.7))
target = np.zeros(n)
rng = np.random.default_rng(1)

with_side = run(BinarySymmetric(0.05), experts, target, rng=rng)
without = run_plain_ewa(experts, target)

print(f"learning rate           {with_side.eta:.4f}")
print(f"best expert loss        {with_side.best_expert_loss:9.2f}")
print(f"plain EWA loss          {without.forecaster_loss:9.2f}   regret {without.regret:8.2f}")
print(f"with side information   {with_side.forecaster_loss:9.2f}   regret {with_side.regret:8.2f}")
print(f"ML decoder alone        {with_side.ssi_loss:9.2f}")
