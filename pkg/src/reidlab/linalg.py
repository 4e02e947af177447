"""Dense complex matrix kernel.

Operators are plain ``numpy`` arrays of dtype ``complex128``; every other
module in the package goes through the helpers here for adjoints, the
Hermitian eigendecomposition, operator norms and positive square roots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPositive, NumericalFailure

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOL",
    "SpectralDecomposition",
    "as_matrix",
    "as_vector",
    "adjoint",
    "hermitian_eig",
    "eigvalsh",
    "lambda_min",
    "lambda_max",
    "operator_norm",
    "psd_sqrt",
    "quadratic_form",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Absolute/relative tolerance pair used to gate exact operator statements.

    A defect ``d`` is negligible for ``M`` iff ``|d| <= atol + rtol * scale(M)``
    with ``scale(M) = max(1, ||M||)``.
    """

    atol: float = 1e-10
    rtol: float = 1e-10

    def __post_init__(self):
        if not (self.atol >= 0 and self.rtol >= 0):
            raise ValueError(f"tolerances must be non-negative, got {self}")

    @staticmethod
    def scale(M) -> float:
        return max(1.0, operator_norm(M))

    def floor(self, scale: float) -> float:
        """Tolerance floor ``atol + rtol * scale`` for a precomputed scale."""
        return self.atol + self.rtol * scale

    def floor_for(self, M) -> float:
        return self.floor(self.scale(M))

    def negligible(self, defect: float, M) -> bool:
        return abs(defect) <= self.floor_for(M)


DEFAULT_TOL = TolerancePolicy()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and unitary eigenvector columns of a Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def as_matrix(M, *, square: bool = True, name: str = "matrix") -> np.ndarray:
    """Coerce ``M`` to a finite 2-D complex128 array."""
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_vector(x, *, name: str = "vector") -> np.ndarray:
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 1-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def adjoint(M) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(M).conj().T


def eigvalsh(H) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (or a stack of them).

    Only the lower triangle is read; callers are responsible for Hermitian-ness.
    """
    try:
        return np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver did not converge: {exc}") from exc


def _hermitian_defect(H: np.ndarray) -> float:
    D = H - H.conj().T
    if not D.any():
        return 0.0
    return operator_norm(D)


def hermitian_eig(H, tol: TolerancePolicy = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises
    ------
    NotHermitian
        If ``||H - H*||`` is not negligible for ``H``.
    NumericalFailure
        If LAPACK fails to converge.
    """
    H = as_matrix(H)
    defect = _hermitian_defect(H)
    if not tol.negligible(defect, H):
        raise NotHermitian(f"||H - H*|| = {defect:.3e} exceeds tolerance")
    Hs = 0.5 * (H + H.conj().T)
    try:
        w, V = np.linalg.eigh(Hs)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver did not converge: {exc}") from exc
    return SpectralDecomposition(w, V)


def lambda_min(H) -> float:
    """Smallest eigenvalue of the Hermitian part of ``H``."""
    H = np.asarray(H)
    return float(eigvalsh(0.5 * (H + H.conj().T))[0])


def lambda_max(H) -> float:
    """Largest eigenvalue of the Hermitian part of ``H``."""
    H = np.asarray(H)
    return float(eigvalsh(0.5 * (H + H.conj().T))[-1])


def operator_norm(T) -> float:
    """Largest singular value, computed as ``sqrt(lambda_max(T* T))``."""
    T = np.asarray(T, dtype=np.complex128)
    if not T.any():
        return 0.0
    G = T.conj().T @ T
    top = eigvalsh(0.5 * (G + G.conj().T))[-1]
    return float(np.sqrt(max(top, 0.0)))


def psd_sqrt(P, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Positive square root of a positive semidefinite matrix.

    Eigenvalues in ``[-floor, 0)`` are treated as roundoff and clamped to zero,
    where ``floor = tol.atol + tol.rtol * max(1, ||P||)``.  Positive eigenvalues
    below the eigensolver's resolution ``n * eps * ||P||`` are zeroed as well:
    they carry no information, and their square roots (around ``1e-8 ||P||^(1/2)``)
    would otherwise swamp every downstream order check on singular ``P``.

    Raises
    ------
    NotPositive
        If the smallest eigenvalue lies below ``-floor``.
    """
    dec = hermitian_eig(P, tol)
    w = dec.eigenvalues
    floor = tol.floor(max(1.0, float(np.max(np.abs(w)))))
    if w[0] < -floor:
        raise NotPositive(f"lambda_min = {w[0]:.3e} is below -{floor:.3e}")
    V = dec.eigenvectors
    resolution = w.shape[0] * np.finfo(np.float64).eps * float(np.max(np.abs(w)))
    root = np.sqrt(np.where(w > resolution, w, 0.0))
    B = (V * root) @ V.conj().T
    return 0.5 * (B + B.conj().T)


def quadratic_form(M, x) -> complex:
    """``<Mx, x> = sum_i conj(x_i) (Mx)_i``."""
    M = np.asarray(M, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    if M.ndim != 2 or x.ndim != 1 or M.shape[1] != x.shape[0] or M.shape[0] != x.shape[0]:
        raise DimensionMismatch(f"cannot form <Mx, x> with M {M.shape} and x {x.shape}")
    return complex(np.vdot(x, M @ x))
