"""The truncated unilateral shift counterexample.

``S`` sends ``e_i`` to ``e_{i+1}`` and ``e_n`` to zero (ones on the
subdiagonal).  With ``A = SS* = diag(0, 1, ..., 1)``, ``K = S`` and
``x = (2, 1, 0, ..., 0)``:

    |<Sx, x>| = 2,   ||K|| <Ax, x> = ||S* x||^2 = 1.

``x`` is supported on the first two coordinates, so these integers are the
same for every truncation size ``n >= 2``.  The truncated shift itself is not
hyponormal (``S*S - SS* = diag(1, 0, ..., 0, -1)``); hyponormality of the
shift is a property of the infinite-dimensional operator only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .certifier import GapCertificate, ReidInstance, Status, certify_reid
from .errors import BadDimension
from .linalg import DEFAULT_TOL, TolerancePolicy, operator_norm
from .predicates import DefectReport, normality_defect

__all__ = [
    "ShiftInstance",
    "ViolationReport",
    "shift_matrix",
    "build_shift_instance",
    "verify_AK_equals_S",
    "paper_counterexample",
    "finite_dim_hyponormality_note",
]


def shift_matrix(n: int) -> np.ndarray:
    """Integer ``n x n`` forward shift (ones at ``(i+1, i)``)."""
    return np.eye(n, k=-1, dtype=np.int64)


@dataclass(frozen=True)
class ShiftInstance:
    n: int
    S: np.ndarray
    A: np.ndarray
    K: np.ndarray
    x_paper: np.ndarray

    def reid_instance(self, tol: TolerancePolicy = DEFAULT_TOL) -> ReidInstance:
        return ReidInstance.build(self.A, self.K, tol)


@dataclass(frozen=True)
class ViolationReport:
    n: int
    lhs: int
    rhs: int
    gap: int
    norm_K: int
    norm_S_adj_x_sq: int
    norm_K_float: float
    exact_match: bool
    certificate: GapCertificate

    @property
    def agrees(self) -> bool:
        """Exact integers match and the certifier independently reports a violation."""
        return self.exact_match and self.certificate.status is Status.VIOLATED

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "norm_K": self.norm_K,
            "norm_S_adj_x_sq": self.norm_S_adj_x_sq,
            "norm_K_float": self.norm_K_float,
            "exact_match": self.exact_match,
            "certificate": self.certificate.to_dict(),
        }


def _check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise BadDimension(f"the truncated shift needs an integer n >= 2, got {n!r}")
    return int(n)


def build_shift_instance(n: int) -> ShiftInstance:
    n = _check_n(n)
    S = shift_matrix(n)
    x = np.zeros(n, dtype=np.int64)
    x[:2] = (2, 1)
    return ShiftInstance(n, S, S @ S.T, S, x)


def verify_AK_equals_S(inst: ShiftInstance) -> bool:
    """Exact integer check of ``SS*S = S``."""
    return bool(np.array_equal(inst.A @ inst.K, inst.S))


def _exact_norm(S: np.ndarray) -> int:
    # S*S is a diagonal 0/1 matrix for a partial isometry, so ||S||^2 is its largest entry
    G = S.T @ S
    if np.count_nonzero(G - np.diag(np.diag(G))) or not set(np.diag(G).tolist()) <= {0, 1}:
        raise ValueError("S is not a partial isometry with diagonal S*S")
    return math.isqrt(int(np.diag(G).max()))


def paper_counterexample(
    n: int, epsilon: float | None = None, tol: TolerancePolicy = DEFAULT_TOL
) -> ViolationReport:
    """Exact values of the counterexample at truncation ``n`` plus an independent certificate."""
    inst = build_shift_instance(n)
    S, A, x = inst.S, inst.A, inst.x_paper
    lhs = abs(int(x @ (S @ x)))
    norm_K = _exact_norm(inst.K)
    quad_A = int(x @ (A @ x))
    s_adj_x = S.T @ x
    norm_sq = int(s_adj_x @ s_adj_x)
    rhs = norm_K * quad_A
    gap = lhs - rhs
    exact = (lhs, rhs, gap, norm_K, norm_sq) == (2, 1, 1, 1, 1)
    cert = certify_reid(inst.reid_instance(tol), epsilon, tol)
    return ViolationReport(
        inst.n, lhs, rhs, gap, norm_K, norm_sq, operator_norm(inst.K), exact, cert
    )


def finite_dim_hyponormality_note(inst: ShiftInstance) -> DefectReport:
    """``S*S - SS*`` for the truncation; its ``lambda_min`` is ``-1`` for every ``n``."""
    return normality_defect(inst.S)
