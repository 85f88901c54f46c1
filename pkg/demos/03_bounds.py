"""Upper and lower regret guarantees as the side channel degrades.

The upper guarantee is the usual square-root term plus a negative
correction whenever the decoded side sequence beats the best expert. The
lower guarantee says no forecaster can do much better than the channel
allows.
"""

from ssiregret import corollary1_upper, corollary2_lower, corollary3_upper, corollary4_lower

n, N, cf = 10_000, 2, 0.1

print("binary symmetric channel, c_f = 0.1")
print(f"{'delta':>6s} {'lower':>10s} {'upper':>10s}")
for delta in (0.0, 0.02, 0.05, 0.1, 0.2, 0.5):
    lo, up = corollary2_lower(n, N, delta), corollary1_upper(n, N, delta, cf)
    print(f"{delta:6.2f} {lo.total:10.2f} {up.total:10.2f}")

print("\nGaussian channel, c_f = 0.25")
print(f"{'sigma':>6s} {'lower':>10s} {'upper':>10s}")
for sigma in (0.1, 0.25, 0.5, 1.0, 2.0):
    lo, up = corollary4_lower(n, N, sigma), corollary3_upper(n, N, sigma, 0.25)
    print(f"{sigma:6.2f} {lo.total:10.2f} {up.total:10.2f}")
