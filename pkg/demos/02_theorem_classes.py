"""
Certifying the inequality on random constrained pairs
=====================================================

Three hypothesis classes guarantee the inequality: ``AK`` self-adjoint,
``AK`` normal, and ``(AK)*`` hyponormal.  Random pairs from each class are
certified, and an unconstrained class shows what happens without a hypothesis.
"""

from reidlab.campaigns import run_fuzz

dims = range(2, 9)
for klass in ("selfadjoint", "normal", "cohypo", "unconstrained"):
    rep = run_fuzz(klass, dims, trials=200, seed=1)
    worst = max(v["gap_upper"] for v in rep.verdicts)
    print(f"{klass:<14} {rep.summary}  largest gap_upper {worst:.2e}  ({rep.wall_time_ms} ms)")

# The hyponormal class collapses: every sample is also normal.
rep = run_fuzz("cohypo", [6], trials=5, seed=3)
for v in rep.verdicts:
    print("normality defect", f"{v['defects']['normality_defect']:.1e}",
          " co-hyponormal lambda_min", f"{v['defects']['cohyponormal_lambda_min']:.1e}")

# A single violating pair from the unconstrained class, replayable by its seed.
rep = run_fuzz("unconstrained", [3], trials=20, seed=1)
bad = next(v for v in rep.verdicts if v["status"] == "VIOLATED")
print("violating trial", bad["trial"], "seed", bad["seed"], "gap_lower", f"{bad['gap_lower']:.4f}")
