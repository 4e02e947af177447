"""Executable checks for each step of the co-hyponormal Reid inequality argument.

For ``A >= 0`` and ``K != 0`` the chain is

1. ``KK* <= ||K||^2 I``                           (:func:`check_contraction_bound`)
2. ``|(AK)*|^2 = AKK*A <= ||K||^2 A^2``           (:func:`check_abs_adjoint_identity`)
3. ``|(AK)*| <= ||K|| A`` by square-root monotonicity (:func:`check_abs_adjoint_bound`,
   :func:`check_sqrt_monotone`)
4. ``|<AKx,x>| = |<(AK)*x,x>|``                   (:func:`check_conjugation_identity`)
5. ``|<Tx,x>| <= <|T|x,x>`` for hyponormal ``T = (AK)*`` (:func:`check_kittaneh`)

and together they give ``|<AKx,x>| <= ||K|| <Ax,x>``.  Each check reports a
non-negative ``defect`` and the ``floor = atol + rtol * scale`` it is compared
with, where ``scale`` is the natural size of the quantities in that step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certifier import GapCertificate, ReidInstance, Status, certify_dominated, certify_reid
from .errors import DimensionMismatch, NotPositive, OrderViolated
from .linalg import (
    TolerancePolicy,
    adjoint,
    as_matrix,
    as_vector,
    eigvalsh,
    operator_norm,
    psd_sqrt,
    quadratic_form,
)
from .predicates import absolute_value, is_positive

__all__ = [
    "STEP_TOL",
    "ProofStepResult",
    "check_contraction_bound",
    "check_abs_adjoint_identity",
    "check_abs_adjoint_bound",
    "check_sqrt_monotone",
    "check_conjugation_identity",
    "check_kittaneh",
    "kittaneh_step",
    "ChainResult",
    "run_proof_chain",
    "jordan_falsification",
]

STEP_TOL = TolerancePolicy(atol=0.0, rtol=1e-8)
CONJUGATION_RTOL = 1e-12


@dataclass(frozen=True)
class ProofStepResult:
    step_name: str
    holds: bool
    defect: float
    floor: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "step": self.step_name,
            "holds": self.holds,
            "defect": self.defect,
            "floor": self.floor,
            "detail": self.detail,
        }


def _result(name: str, defect: float, floor: float, detail: str) -> ProofStepResult:
    defect = max(0.0, float(defect))
    return ProofStepResult(name, bool(defect <= floor), defect, float(floor), detail)


def _order_defect(X: np.ndarray, Y: np.ndarray) -> float:
    """``max(0, -lambda_min(Y - X))``."""
    D = Y - X
    return max(0.0, -float(eigvalsh(0.5 * (D + D.conj().T))[0]))


def _require_positive(A: np.ndarray, tol: TolerancePolicy, name: str = "A") -> None:
    ok, lam = is_positive(A, tol)
    if not ok:
        raise NotPositive(f"{name} is not positive (lambda_min = {lam:.3e})")


def check_contraction_bound(K, tol: TolerancePolicy = STEP_TOL) -> ProofStepResult:
    """``KK* <= ||K||^2 I``."""
    K = as_matrix(K, name="K")
    c = operator_norm(K)
    X = K @ adjoint(K)
    Y = c * c * np.eye(K.shape[0])
    return _result(
        "contraction_bound",
        _order_defect(X, Y),
        tol.floor(max(1.0, c * c)),
        f"||K|| = {c:.6g}",
    )


def check_abs_adjoint_identity(A, K, tol: TolerancePolicy = STEP_TOL) -> ProofStepResult:
    """``|(AK)*|^2 = AKK*A`` and ``AKK*A <= ||K||^2 A^2``.

    Both sub-checks share the scale ``max(1, ||K||^2 ||A||^2)``; the reported
    defect is the larger of the two.
    """
    A = as_matrix(A, name="A")
    K = as_matrix(K, name="K")
    if A.shape != K.shape:
        raise DimensionMismatch(f"A is {A.shape} but K is {K.shape}")
    _require_positive(A, tol)
    c = operator_norm(K)
    M = A @ K
    G = M @ adjoint(M)
    B = absolute_value(adjoint(M), tol)
    identity_defect = operator_norm(B @ B - G)
    order_defect = _order_defect(G, c * c * (A @ A))
    floor = tol.floor(max(1.0, (c * operator_norm(A)) ** 2))
    return _result(
        "abs_adjoint_identity",
        max(identity_defect, order_defect),
        floor,
        f"|| |(AK)*|^2 - AKK*A || = {identity_defect:.3e}; "
        f"AKK*A <= ||K||^2 A^2 defect = {order_defect:.3e}",
    )


def check_abs_adjoint_bound(A, K, tol: TolerancePolicy = STEP_TOL) -> ProofStepResult:
    """``|(AK)*| <= ||K|| A``, the square-root form of step 2."""
    A = as_matrix(A, name="A")
    K = as_matrix(K, name="K")
    if A.shape != K.shape:
        raise DimensionMismatch(f"A is {A.shape} but K is {K.shape}")
    _require_positive(A, tol)
    c = operator_norm(K)
    B = absolute_value(adjoint(A @ K), tol)
    return _result(
        "abs_adjoint_bound",
        _order_defect(B, c * A),
        tol.floor(max(1.0, c * operator_norm(A))),
        "|(AK)*| <= ||K|| A",
    )


def check_sqrt_monotone(X, Y, tol: TolerancePolicy = STEP_TOL) -> ProofStepResult:
    """``0 <= X <= Y`` implies ``sqrt(X) <= sqrt(Y)``.

    Raises
    ------
    NotPositive
        If ``X`` is not positive within ``tol``.
    OrderViolated
        If ``X <= Y`` fails within ``tol``.
    """
    X = as_matrix(X, name="X")
    Y = as_matrix(Y, name="Y")
    if X.shape != Y.shape:
        raise DimensionMismatch(f"X is {X.shape} but Y is {Y.shape}")
    _require_positive(X, tol, "X")
    pre = _order_defect(X, Y)
    if pre > tol.floor(max(1.0, operator_norm(Y - X))):
        raise OrderViolated(f"X <= Y fails: lambda_min(Y - X) = {-pre:.3e}")
    rX, rY = psd_sqrt(X, tol), psd_sqrt(Y, tol)
    return _result(
        "sqrt_monotone",
        _order_defect(rX, rY),
        tol.floor(max(1.0, operator_norm(rY))),
        "sqrt(X) <= sqrt(Y)",
    )


def check_conjugation_identity(A, K, x) -> ProofStepResult:
    """``|<AKx,x>| = |<(AK)*x,x>|`` to ``1e-12`` relative.

    An algebraic identity, so it holds for arbitrary (even non-positive) ``A``.
    """
    A = as_matrix(A, name="A")
    K = as_matrix(K, name="K")
    x = as_vector(x, name="x")
    M = A @ K
    lhs = abs(quadratic_form(M, x))
    rhs = abs(quadratic_form(adjoint(M), x))
    size = max(lhs, rhs, operator_norm(M) * float(np.vdot(x, x).real))
    return _result(
        "conjugation_identity",
        abs(lhs - rhs),
        CONJUGATION_RTOL * size,
        f"|<AKx,x>| = {lhs:.12g}, |<(AK)*x,x>| = {rhs:.12g}",
    )


def check_kittaneh(T, epsilon: float | None = None, tol: TolerancePolicy = STEP_TOL) -> GapCertificate:
    """Certify ``|<Tx,x>| <= <|T|x,x>`` for all ``x``.

    Guaranteed for hyponormal (at finite dimension: normal) ``T``; for other
    ``T`` either outcome is possible.
    """
    T = as_matrix(T, name="T")
    return certify_dominated(T, absolute_value(T, tol), epsilon, tol)


def kittaneh_step(T, epsilon: float | None = None, tol: TolerancePolicy = STEP_TOL) -> ProofStepResult:
    """:func:`check_kittaneh` as a proof step.

    The defect is the witness gap when violated, otherwise the part of
    ``gap_upper`` exceeding ``epsilon``.
    """
    cert = check_kittaneh(T, epsilon, tol)
    if cert.status is Status.VIOLATED:
        defect = cert.gap_lower
    else:
        defect = max(0.0, cert.gap_upper - cert.epsilon)
    return ProofStepResult(
        "kittaneh",
        cert.status is Status.CERTIFIED_HOLDS,
        defect,
        cert.floor,
        f"{cert.status}: gap_upper = {cert.gap_upper:.3e}, gap_lower = {cert.gap_lower:.3e}",
    )


@dataclass(frozen=True)
class ChainResult:
    steps: tuple
    certificate: GapCertificate

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.steps) and self.certificate.status is Status.CERTIFIED_HOLDS

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "steps": [s.to_dict() for s in self.steps],
            "certificate": self.certificate.to_dict(),
        }


def run_proof_chain(
    A, K, x, tol: TolerancePolicy = STEP_TOL, epsilon: float | None = None
) -> ChainResult:
    """Run every step on one instance, then certify the conclusion directly."""
    A = as_matrix(A, name="A")
    K = as_matrix(K, name="K")
    T = adjoint(A @ K)
    steps = (
        check_contraction_bound(K, tol),
        check_abs_adjoint_identity(A, K, tol),
        check_abs_adjoint_bound(A, K, tol),
        check_conjugation_identity(A, K, x),
        kittaneh_step(T, epsilon, tol),
    )
    cert = certify_reid(ReidInstance.build(A, K, tol), epsilon, tol)
    return ChainResult(steps, cert)


def jordan_falsification(tol: TolerancePolicy = STEP_TOL) -> dict:
    """The 2x2 Jordan block shows hyponormality cannot be dropped from the lemma.

    With ``T = [[0, 1], [0, 0]]``, ``|T| = diag(0, 1)`` and
    ``x = (sqrt(0.9), sqrt(0.1))``: ``|<Tx,x>| = 0.3 > 0.1 = <|T|x,x>``.
    """
    T = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    x = np.array([np.sqrt(0.9), np.sqrt(0.1)], dtype=np.complex128)
    absT = absolute_value(T, tol)
    lhs = abs(quadratic_form(T, x))
    rhs = quadratic_form(absT, x).real
    cert = check_kittaneh(T, None, tol)
    return {"lhs": lhs, "rhs": rhs, "abs_T": absT, "certificate": cert}
