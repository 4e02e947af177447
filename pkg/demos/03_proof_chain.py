"""
Running the argument step by step
=================================

For a positive ``A`` with ``(AK)*`` hyponormal, the inequality follows from

    KK* <= ||K||^2 I
    |(AK)*|^2 = AKK*A <= ||K||^2 A^2
    |(AK)*| <= ||K|| A                  (square roots preserve order)
    |<AKx, x>| = |<(AK)*x, x>|
    |<Tx, x>| <= <|T|x, x>               (T hyponormal)

Each step is checked numerically, first on a valid pair, then on the shift.
"""

import numpy as np

from reidlab.generators import GenConfig, pair_normal_product
from reidlab.proofsteps import jordan_falsification, run_proof_chain
from reidlab.shift import build_shift_instance

pair = pair_normal_product(GenConfig(dim=5, seed=4))
x = np.arange(1, 6) + 0j
chain = run_proof_chain(pair.A, pair.K, x)
for s in chain.steps:
    print(f"{s.step_name:<22} holds={s.holds!s:<5} defect={s.defect:.2e} floor={s.floor:.2e}")
print("conclusion:", chain.certificate.status)

# On the shift every step survives except the last one:
# (AK)* = S* is not hyponormal, and the lemma does not apply.
inst = build_shift_instance(4)
chain = run_proof_chain(inst.A, inst.K, inst.x_paper)
print()
for s in chain.steps:
    print(f"{s.step_name:<22} holds={s.holds}")
print("conclusion:", chain.certificate.status)

# The smallest case where the lemma fails: a 2x2 Jordan block.
j = jordan_falsification()
print()
print("|T| =\n", np.real(j["abs_T"]))
print(f"|<Tx,x>| = {j['lhs']:.3f}  >  <|T|x,x> = {j['rhs']:.3f}")
