"""Seeded random operator pairs ``(A, K)`` satisfying each theorem's hypotheses.

All randomness flows from ``numpy.random.default_rng(cfg.seed)``; a campaign
derives per-trial seeds with :func:`mix_seed` so results never depend on
scheduling.

Seed mixing
-----------
``mix_seed(seed, index)`` is the SplitMix64 finaliser applied to
``seed + (index + 1) * 0x9E3779B97F4A7C15 (mod 2**64)``::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

with every product reduced mod ``2**64``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalFailure
from .linalg import TolerancePolicy, operator_norm
from .predicates import is_cohyponormal, normality_defect

__all__ = [
    "GenConfig",
    "GeneratedPair",
    "mix_seed",
    "random_ginibre",
    "random_unitary",
    "random_positive",
    "pair_selfadjoint_product",
    "pair_normal_product",
    "pair_cohyponormal_product",
    "pair_unconstrained",
    "pair_adversarial",
    "GENERATORS",
]

_MASK64 = (1 << 64) - 1
POST_CHECK_RTOL = 1e-8


def mix_seed(seed: int, index: int) -> int:
    """Derive the 64-bit seed of sub-draw ``index`` from a campaign seed."""
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class GenConfig:
    dim: int
    seed: int
    cond_cap: float = 1e3
    spectrum_scale: float = 1.0

    def __post_init__(self):
        if not (isinstance(self.dim, (int, np.integer)) and 1 <= self.dim <= 64):
            raise ValueError(f"dim must be an integer in [1, 64], got {self.dim!r}")
        if not (0 <= int(self.seed) <= _MASK64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not self.cond_cap > 1:
            raise ValueError(f"cond_cap must exceed 1, got {self.cond_cap}")
        if not self.spectrum_scale > 0:
            raise ValueError(f"spectrum_scale must be positive, got {self.spectrum_scale}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(int(self.seed))


@dataclass(frozen=True)
class GeneratedPair:
    """Generator output; unpacks as ``A, K = pair``."""

    A: np.ndarray
    K: np.ndarray
    hypothesis: str
    strategy: str
    notes: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.A, self.K))


# rng-level building blocks; the public functions below wrap them per config


def _ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def _unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(_ginibre(rng, n))
    d = np.diag(R)
    phases = np.where(d == 0, 1.0, d / np.abs(d))
    return Q * phases


def _positive_spectrum(rng, n, cond_cap, scale, allow_singular) -> np.ndarray:
    a = rng.uniform(scale / cond_cap, scale, size=n)
    if allow_singular and rng.random() < 0.5:
        a[0] = 0.0
    return a


def _conjugate(U: np.ndarray, d: np.ndarray) -> np.ndarray:
    X = (U * d) @ U.conj().T
    if np.isrealobj(d):
        X = 0.5 * (X + X.conj().T)
    return X


def _positive(rng, cfg: GenConfig, allow_singular: bool) -> np.ndarray:
    U = _unitary(rng, cfg.dim)
    a = _positive_spectrum(rng, cfg.dim, cfg.cond_cap, cfg.spectrum_scale, allow_singular)
    return _conjugate(U, a)


def random_ginibre(cfg: GenConfig) -> np.ndarray:
    """I.i.d. complex standard normal entries (``E|z|^2 = 1``)."""
    return _ginibre(cfg.rng(), cfg.dim)


def random_unitary(cfg: GenConfig) -> np.ndarray:
    """Haar unitary from the QR factorisation of a Ginibre matrix."""
    U = _unitary(cfg.rng(), cfg.dim)
    if np.linalg.norm(U.conj().T @ U - np.eye(cfg.dim), 2) > 1e-12:
        raise NumericalFailure("QR factor is not unitary to 1e-12")
    return U


def random_positive(cfg: GenConfig, allow_singular: bool = False) -> np.ndarray:
    """``U diag(a) U*`` with ``a_i`` in ``[scale/cond_cap, scale]``.

    With ``allow_singular`` one eigenvalue is zeroed with probability 1/2.
    """
    return _positive(cfg.rng(), cfg, allow_singular)


def _scale(X: np.ndarray) -> float:
    return max(1.0, operator_norm(X))


def _selfadjoint_defect(A, K) -> float:
    M = A @ K
    return operator_norm(M - M.conj().T) / _scale(M)


def _normal_defect(A, K) -> float:
    M = A @ K
    return normality_defect(M).norm / _scale(M)


def _draw_selfadjoint(rng, cfg: GenConfig) -> GeneratedPair:
    n = cfg.dim
    if rng.integers(2) == 0:
        A = _positive(rng, cfg, allow_singular=False)
        G = _ginibre(rng, n)
        S = 0.5 * (G + G.conj().T)
        K = np.linalg.solve(A, S)
        strategy = "inverse"
    else:
        U = _unitary(rng, n)
        a = _positive_spectrum(rng, n, cfg.cond_cap, cfg.spectrum_scale, allow_singular=True)
        k = rng.standard_normal(n)
        A, K = _conjugate(U, a), _conjugate(U, k)
        strategy = "commuting"
    return GeneratedPair(A, K, "selfadjoint", strategy)


def _draw_normal(rng, cfg: GenConfig) -> GeneratedPair:
    n = cfg.dim
    if rng.integers(2) == 0:
        A = _positive(rng, cfg, allow_singular=False)
        U = _unitary(rng, n)
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        K = np.linalg.solve(A, (U * z) @ U.conj().T)
        strategy = "inverse"
    else:
        U = _unitary(rng, n)
        a = _positive_spectrum(rng, n, cfg.cond_cap, cfg.spectrum_scale, allow_singular=True)
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        A, K = _conjugate(U, a), (U * z) @ U.conj().T
        strategy = "commuting"
    return GeneratedPair(A, K, "normal", strategy)


def _with_post_check(draw, check, cfg: GenConfig, what: str) -> GeneratedPair:
    rng = cfg.rng()
    for _ in range(2):
        pair = draw(rng, cfg)
        defect = check(pair.A, pair.K)
        if defect <= POST_CHECK_RTOL:
            return pair
    raise NumericalFailure(f"{what} post-check failed twice (relative defect {defect:.3e})")


def pair_selfadjoint_product(cfg: GenConfig) -> GeneratedPair:
    """``A >= 0`` and ``AK`` self-adjoint.

    One seeded bit picks the strategy: ``inverse`` (``K = A^{-1} S``, ``A``
    invertible) or ``commuting`` (``A``, ``K`` diagonal in a common unitary
    basis, ``A`` possibly singular).
    """
    return _with_post_check(_draw_selfadjoint, _selfadjoint_defect, cfg, "self-adjoint product")


def pair_normal_product(cfg: GenConfig) -> GeneratedPair:
    """``A >= 0`` and ``AK`` normal; same two strategies as the self-adjoint class."""
    return _with_post_check(_draw_normal, _normal_defect, cfg, "normal product")


def pair_cohyponormal_product(cfg: GenConfig) -> GeneratedPair:
    """``A >= 0`` and ``(AK)*`` hyponormal.

    In finite dimension ``T*T - TT*`` is traceless, so co-hyponormal matrices
    are exactly the normal ones; this delegates to :func:`pair_normal_product`
    and records the fact in ``notes``.
    """
    base = pair_normal_product(cfg)
    M = base.A @ base.K
    if not is_cohyponormal(M, TolerancePolicy(atol=POST_CHECK_RTOL * _scale(M), rtol=0.0)):
        raise NumericalFailure("generated product is not co-hyponormal")
    notes = {
        "finite_dimensional_collapse": (
            "co-hyponormal implies normal in finite dimension (trace of T*T - TT* is 0); "
            "instances are drawn from the normal-product class"
        )
    }
    return GeneratedPair(base.A, base.K, "cohyponormal", base.strategy, notes)


def pair_unconstrained(cfg: GenConfig) -> GeneratedPair:
    """Positive ``A`` (possibly singular) with an unrelated Ginibre ``K``."""
    rng = cfg.rng()
    A = _positive(rng, cfg, allow_singular=True)
    return GeneratedPair(A, _ginibre(rng, cfg.dim), "unconstrained", "ginibre")


def pair_adversarial(cfg: GenConfig) -> GeneratedPair:
    """Shift-like pairs: ``K = U N U*`` with ``N`` strictly lower triangular and
    ``A`` vanishing on ``U e_1``, mimicking ``A = SS*`` and ``K = S``."""
    rng = cfg.rng()
    n = cfg.dim
    U = _unitary(rng, n)
    N = np.tril(_ginibre(rng, n), -1)
    a = _positive_spectrum(rng, n, cfg.cond_cap, cfg.spectrum_scale, allow_singular=False)
    a[0] = 0.0
    return GeneratedPair(_conjugate(U, a), U @ N @ U.conj().T, "adversarial", "nilpotent")


GENERATORS = {
    "selfadjoint": pair_selfadjoint_product,
    "normal": pair_normal_product,
    "cohypo": pair_cohyponormal_product,
    "unconstrained": pair_unconstrained,
    "adversarial": pair_adversarial,
}
