"""
The truncated shift breaks the inequality
=========================================

``|<AKx, x>| <= ||K|| <Ax, x>`` fails for ``A = SS*`` and ``K = S`` with the
forward shift ``S``.  This walk-through computes the chain of values exactly,
then lets the certifier find the violation on its own.
"""

import numpy as np

from reidlab import certify_reid
from reidlab.shift import build_shift_instance, finite_dim_hyponormality_note, paper_counterexample

# Integer matrices, so every number below is exact.
inst = build_shift_instance(5)
print("S =\n", inst.S)
print("A = SS* =\n", inst.A)

x = inst.x_paper
print("x =", x)
print("<Sx, x>     =", x @ inst.S @ x)
print("||S* x||^2  =", (inst.S.T @ x) @ (inst.S.T @ x))

# A K = SS*S = S, so the product is the shift again.
print("AK == S:", np.array_equal(inst.A @ inst.K, inst.S))

# The vector is supported on the first two coordinates, so truncation does not matter.
for n in (2, 3, 8, 32):
    rep = paper_counterexample(n)
    print(f"n={n:2d}  lhs={rep.lhs} rhs={rep.rhs} gap={rep.gap}  certifier: {rep.certificate.status}")

# The certifier does not know about x; it finds its own witness.
cert = certify_reid(inst.reid_instance())
print("gap bracket:", cert.gap_lower, "<= sup <=", cert.gap_upper)
print("witness:", np.round(cert.witness, 4))

# Normalizing x gives gap 1/5; the best unit vector does better, close to 1/4.
print("x / ||x|| gives", 1 / 5)

# In finite dimension the truncated shift is not hyponormal at all.
rep = finite_dim_hyponormality_note(inst)
print("S*S - SS* =", np.real(np.diag(rep.defect_matrix)), " lambda_min =", rep.lambda_min)
