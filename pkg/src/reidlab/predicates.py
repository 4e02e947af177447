"""Tolerance-gated predicates for the operator classes used by Reid-type inequalities.

Every class-membership test is decided on a Hermitian *defect* matrix (for
instance ``T*T - TT*`` for hyponormality) and the tolerance floor is scaled by
the norm of that defect, not by the norm of ``T``.

On a finite-dimensional space the commutator ``T*T - TT*`` has zero trace, so
a hyponormal matrix is automatically normal.  Hyponormality and
co-hyponormality are still implemented as stated so that the collapse can be
observed numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NumericalFailure
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    adjoint,
    as_matrix,
    eigvalsh,
    operator_norm,
)

__all__ = [
    "DefectReport",
    "is_positive",
    "loewner_margin",
    "loewner_leq",
    "normality_defect",
    "is_hyponormal",
    "is_cohyponormal",
    "absolute_value",
]


@dataclass(frozen=True)
class DefectReport:
    """Spectral summary of a Hermitian defect matrix."""

    defect_matrix: np.ndarray
    lambda_min: float
    lambda_max: float
    norm: float

    @classmethod
    def of(cls, D: np.ndarray) -> "DefectReport":
        D = 0.5 * (D + D.conj().T)
        w = eigvalsh(D)
        lo, hi = float(w[0]), float(w[-1])
        return cls(D, lo, hi, max(abs(lo), abs(hi)))

    def to_dict(self) -> dict:
        return {"lambda_min": self.lambda_min, "lambda_max": self.lambda_max, "norm": self.norm}


def require_hermitian(X: np.ndarray, tol: TolerancePolicy, name: str) -> None:
    D = X - X.conj().T
    if D.any():
        d = operator_norm(D)
        if not tol.negligible(d, X):
            raise NotHermitian(f"{name} is not Hermitian: ||{name} - {name}*|| = {d:.3e}")


def is_positive(A, tol: TolerancePolicy = DEFAULT_TOL) -> tuple[bool, float]:
    """Decide ``A >= 0``.

    Returns
    -------
    (bool, float)
        The verdict and ``lambda_min`` of the Hermitian part of ``A``.  A matrix
        that is not Hermitian within tolerance is never positive.
    """
    A = as_matrix(A, name="A")
    H = 0.5 * (A + A.conj().T)
    w = eigvalsh(H)
    lam = float(w[0])
    scale = max(1.0, float(np.max(np.abs(w))))
    D = A - A.conj().T
    hermitian = (not D.any()) or operator_norm(D) <= tol.floor(max(scale, operator_norm(A)))
    return bool(hermitian and lam >= -tol.floor(scale)), lam


def loewner_margin(X, Y) -> float:
    """``lambda_min(Y - X)``; non-negative exactly when ``X <= Y``."""
    D = np.asarray(Y, dtype=np.complex128) - np.asarray(X, dtype=np.complex128)
    return float(eigvalsh(0.5 * (D + D.conj().T))[0])


def loewner_leq(X, Y, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Decide ``X <= Y`` in the Loewner order."""
    X = as_matrix(X, name="X")
    Y = as_matrix(Y, name="Y")
    if X.shape != Y.shape:
        raise DimensionMismatch(f"shapes differ: {X.shape} vs {Y.shape}")
    require_hermitian(X, tol, "X")
    require_hermitian(Y, tol, "Y")
    D = Y - X
    D = 0.5 * (D + D.conj().T)
    w = eigvalsh(D)
    scale = max(1.0, float(np.max(np.abs(w))))
    return bool(w[0] >= -tol.floor(scale))


def normality_defect(T) -> DefectReport:
    """Report on ``T*T - TT*``."""
    T = as_matrix(T, name="T")
    return DefectReport.of(adjoint(T) @ T - T @ adjoint(T))


def is_hyponormal(T, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Decide ``TT* <= T*T``."""
    rep = normality_defect(T)
    return bool(rep.lambda_min >= -tol.floor(max(1.0, rep.norm)))


def is_cohyponormal(T, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Decide whether ``T*`` is hyponormal."""
    return is_hyponormal(adjoint(as_matrix(T, name="T")), tol)


def absolute_value(T, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """``|T|``, the positive square root of ``T*T``.

    The eigenvectors ``v_i`` of ``T*T`` are taken from the Hermitian
    eigensolver, but the square-rooted eigenvalues are recomputed as
    ``||T v_i||``.  Taking ``sqrt`` of an eigenvalue of ``T*T`` that roundoff
    left at ``1e-16`` would produce ``1e-8``; the column norms stay accurate
    to machine precision relative to ``||T||``.
    """
    T = as_matrix(T, name="T")
    G = adjoint(T) @ T
    try:
        _, V = np.linalg.eigh(0.5 * (G + G.conj().T))
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver did not converge: {exc}") from exc
    sigma = np.linalg.norm(T @ V, axis=0)
    B = (V * sigma) @ V.conj().T
    return 0.5 * (B + B.conj().T)
