"""Exact regret at small horizons, by enumeration.

For a short horizon every side sequence can be enumerated, and for an
even shorter one every binary target as well. This gives the exact
worst-case expected regret of the forecaster to hold against the upper
guarantee.
"""

from ssiregret import BinarySymmetric, ConstantExperts, l_star_constant, upper_bound
from ssiregret.oracle import exact_expected_regret_detail, minimax_regret_bruteforce, xi_star_oracle

experts = ConstantExperts((0.1, 0.7))
channel = BinarySymmetric(0.1)

for n in (4, 6, 8):
    res = minimax_regret_bruteforce(channel, experts, n)
    ub = upper_bound(n, experts.size, n * 0.1, l_star_constant(experts, n)).total
    worst = "".join(str(int(b)) for b in res.worst_target)
    print(f"n={n}  worst target {worst:8s}  exact regret {res.expected_regret:7.4f}  upper {ub:7.4f}")

fixed = exact_expected_regret_detail(channel, experts, [0] * 12)
print(f"\nall-zeros target, n=12: regret {fixed.expected_regret:.4f} over {fixed.enumerated_paths} side paths")
print(f"one-step optimum for this channel: {xi_star_oracle(channel):.4f}")
