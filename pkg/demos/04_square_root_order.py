"""
Square roots preserve order, squares do not
===========================================

If ``0 <= X <= Y`` then ``sqrt(X) <= sqrt(Y)``.  The converse direction for
squares fails already for 2x2 matrices.
"""

import numpy as np

from reidlab.linalg import psd_sqrt
from reidlab.predicates import loewner_leq, loewner_margin

X = np.array([[1.0, 0.0], [0.0, 0.0]])
Y = np.array([[2.0, 1.0], [1.0, 1.0]])

print("X <= Y            ", loewner_leq(X, Y))
print("X^2 <= Y^2        ", loewner_leq(X @ X, Y @ Y), " margin", loewner_margin(X @ X, Y @ Y))
print("sqrt X <= sqrt Y  ", loewner_leq(psd_sqrt(X), psd_sqrt(Y)))

# Many random ordered pairs; X and Y - X are often singular, so the margin gets close to 0.
rng = np.random.default_rng(0)
worst = np.inf
for t in range(2000):
    n = 2 + t % 7
    G = rng.standard_normal((n, 1 + t % n)) + 1j * rng.standard_normal((n, 1 + t % n))
    k = 1 + (t // 7) % n
    H = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    X = G @ G.conj().T
    Y = X + H @ H.conj().T
    worst = min(worst, loewner_margin(psd_sqrt(X), psd_sqrt(Y)))
print("smallest lambda_min(sqrt Y - sqrt X) over 2000 pairs:", worst)
