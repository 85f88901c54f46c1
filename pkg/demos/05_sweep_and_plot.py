"""Sweep the flip probability and draw the regret curve.

Writes ``sweep.csv`` and ``sweep.svg`` into the current directory. The
same result is available from the command line:

    ssiregret sweep --param delta --values 0,0.05,0.1,0.2,0.3,0.5 --n 2000 --trials 200 --out sweep.csv
    ssiregret plot sweep.csv --out sweep.svg
"""

from ssiregret import BinarySymmetric, ConstantExperts, ExperimentConfig, sweep
from ssiregret.harness import emit_plot, write_csv

config = ExperimentConfig(channel=BinarySymmetric(0.1), experts=ConstantExperts((0.1, 0.7)),
                          n=2_000, trials=200, seed=0, workers=4)
reports = sweep(config, "delta", [0.0, 0.05, 0.1, 0.2, 0.3, 0.5], verify=True)

for rep in reports:
    print(f"delta={rep.param:<5}  mean regret {rep.mean_regret:8.2f} +- {rep.ci_half_width:5.2f}"
          f"   bounds [{rep.lower.total:8.2f}, {rep.upper.total:7.2f}]")

write_csv(reports, "sweep.csv")
emit_plot("sweep.csv", "sweep.svg")
print("wrote sweep.csv and sweep.svg")
