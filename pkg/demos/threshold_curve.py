"""Frequency of an induced projective plane in random flag complexes.

Writes ``threshold.csv`` and ``threshold.dat`` (gnuplot) in the current directory.
"""

from flagtorsion.experiments import ExperimentConfig, run_threshold_experiment, summarize

cfg = ExperimentConfig(
    pattern="rp2",
    n_values=(60, 120),
    p_values=("0.2", "0.3", "0.4", "0.5"),
    trials=20,
    seed=1,
)
result = run_threshold_experiment(cfg)
print(summarize(result.points))
print("threshold reference uses m(G) =", result.pattern_density)

with open("threshold.csv", "w") as fh:
    fh.write(result.to_csv())
with open("threshold.dat", "w") as fh:
    fh.write(result.to_gnuplot())
