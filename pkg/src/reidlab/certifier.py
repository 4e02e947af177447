"""Certified decision procedure for ``|<Mx,x>| <= <Px,x>`` over all vectors ``x``.

The quantifier over the unit sphere is traded for a one-dimensional problem:
since ``|z| = max_theta Re(e^{i theta} z)``,

    sup_{||x||=1} |<Mx,x>| - <Px,x>  =  max_theta f(theta),
    f(theta) = lambda_max(Re(e^{i theta} M) - P),

where ``Re(X) = (X + X*)/2``.  Writing ``Re(e^{i theta} M) = cos(theta) H1 +
sin(theta) H2`` shows that ``f`` is the restriction to the unit circle of the
convex function ``g(c, s) = lambda_max(c H1 + s H2 - P)``.  Two upper bounds on
``f`` over an arc ``[a, b]`` follow:

* Lipschitz: ``(f(a) + f(b))/2 + L (b - a)/2`` with ``L = ||M||``;
* convexity: the arc lies in the triangle spanned by its endpoints and the
  intersection of the end tangents, so ``max f <= max(f(a), f(b), g(q))`` where
  ``q`` is that intersection point.

The certifier runs a deterministic branch-and-bound on a uniform starting grid,
bisecting every arc whose bound exceeds the best value seen by more than
``epsilon / 2``.  Once the best value exceeds the tolerance floor the verdict
is settled, and arcs are only refined to ``VIOLATION_RTOL`` relative to the
best value; this keeps flat gap functions (the shift is rotation invariant)
cheap.  The returned ``gap_upper`` is the largest surviving arc bound,
so the true supremum never exceeds it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotPositive
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    as_vector,
    eigvalsh,
    operator_norm,
    quadratic_form,
)
from .matrix_io import vector_to_json
from .predicates import is_positive, require_hermitian

__all__ = [
    "Status",
    "GapCertificate",
    "ReidInstance",
    "pointwise_gap",
    "reid_gap_at",
    "gap_function_at",
    "certify_dominated",
    "certify_reid",
    "brute_force_gap",
    "default_epsilon",
    "MAX_EVALUATIONS",
    "VIOLATION_RTOL",
]

TWO_PI = 2.0 * math.pi
INITIAL_GRID = 64
MAX_EVALUATIONS = 1_000_000
GOLDEN_ITERATIONS = 60
VIOLATION_RTOL = 1e-3
_BATCH_BYTES = 32 * 2**20


class Status(str, enum.Enum):
    CERTIFIED_HOLDS = "CERTIFIED_HOLDS"
    VIOLATED = "VIOLATED"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GapCertificate:
    """Outcome of a certified check of ``|<Mx,x>| <= <Px,x>`` for all ``x``.

    ``gap_upper`` bounds ``sup_{||x||=1} |<Mx,x>| - <Px,x>`` from above;
    ``gap_lower`` is that quantity evaluated at the unit ``witness``.
    ``grid_points`` counts evaluations of the eigenvalue gap function.
    """

    status: Status
    gap_upper: float
    gap_lower: float
    theta_star: float
    witness: np.ndarray
    grid_points: int
    lipschitz_bound: float
    epsilon: float = 0.0
    floor: float = 0.0

    def to_dict(self) -> dict:
        return {
            "status": str(self.status),
            "gap_upper": self.gap_upper,
            "gap_lower": self.gap_lower,
            "theta_star": self.theta_star,
            "witness": vector_to_json(self.witness),
            "grid_points": self.grid_points,
            "lipschitz_bound": self.lipschitz_bound,
            "epsilon": self.epsilon,
            "floor": self.floor,
        }


@dataclass(frozen=True)
class ReidInstance:
    """A positive ``A`` and arbitrary ``K`` with ``M = AK`` and ``c = ||K||`` cached."""

    A: np.ndarray
    K: np.ndarray
    M: np.ndarray = field(repr=False)
    c: float

    @classmethod
    def build(cls, A, K, tol: TolerancePolicy = DEFAULT_TOL) -> "ReidInstance":
        A = as_matrix(A, name="A")
        K = as_matrix(K, name="K")
        if A.shape != K.shape:
            raise DimensionMismatch(f"A is {A.shape} but K is {K.shape}")
        ok, lam = is_positive(A, tol)
        if not ok:
            raise NotPositive(f"A is not positive (lambda_min = {lam:.3e})")
        return cls(A, K, A @ K, operator_norm(K))

    @property
    def P(self) -> np.ndarray:
        return self.c * self.A


def default_epsilon(M) -> float:
    return 1e-6 * max(1.0, operator_norm(M))


def pointwise_gap(M, P, x) -> float:
    """``|<Mx,x>| - <Px,x>`` at the given (not necessarily unit) vector."""
    return abs(quadratic_form(M, x)) - quadratic_form(P, x).real


def reid_gap_at(A, K, x, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """``|<AKx,x>| - ||K|| <Ax,x>``; the Reid inequality holds at ``x`` iff this is ``<= 0``."""
    inst = ReidInstance.build(A, K, tol)
    x = as_vector(x, name="x")
    return pointwise_gap(inst.M, inst.P, x)


def _real_parts(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    Mh = M.conj().T
    return 0.5 * (M + Mh), 0.5j * (M - Mh)


def _top_eigenvalues(H1, H2, P, thetas, radii=None) -> np.ndarray:
    """``lambda_max(r (cos t H1 + sin t H2) - P)`` for each ``t`` (and radius ``r``)."""
    thetas = np.asarray(thetas, dtype=float)
    n = P.shape[0]
    c, s = np.cos(thetas), np.sin(thetas)
    if radii is not None:
        c, s = c * radii, s * radii
    out = np.empty(thetas.shape[0])
    step = max(1, _BATCH_BYTES // (16 * n * n))
    for lo in range(0, thetas.shape[0], step):
        hi = lo + step
        stack = c[lo:hi, None, None] * H1 + s[lo:hi, None, None] * H2 - P
        out[lo:hi] = eigvalsh(stack)[:, -1]
    return out


def gap_function_at(M, P, theta: float, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """``lambda_max(Re(e^{i theta} M) - P)``."""
    M = as_matrix(M, name="M")
    P = as_matrix(P, name="P")
    if M.shape != P.shape:
        raise DimensionMismatch(f"M is {M.shape} but P is {P.shape}")
    require_hermitian(P, tol, "P")
    Ph = 0.5 * (P + P.conj().T)
    H1, H2 = _real_parts(M)
    return float(_top_eigenvalues(H1, H2, Ph, [theta])[0])


def _arc_bounds(H1, H2, P, L, a, b, fa, fb):
    """Upper bounds of the gap function over arcs ``[a, b]``; returns (bounds, evaluations)."""
    half = 0.5 * (b - a)
    centre = 0.5 * (a + b)
    g = _top_eigenvalues(H1, H2, P, centre, 1.0 / np.cos(half))
    convex = np.maximum(np.maximum(fa, fb), g)
    lipschitz = 0.5 * (fa + fb) + L * half
    ub = np.minimum(convex, lipschitz)
    return np.maximum(ub, np.maximum(fa, fb)), a.shape[0]


def _golden_section(f, lo: float, hi: float, iterations: int):
    """Maximise ``f`` on ``[lo, hi]``; returns every (theta, value) probed."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    probes = [(x1, f1), (x2, f2)]
    for _ in range(iterations):
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
            probes.append((x1, f1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
            probes.append((x2, f2))
    return probes


def certify_dominated(
    M,
    P,
    epsilon: float | None = None,
    tol: TolerancePolicy = DEFAULT_TOL,
    *,
    max_evaluations: int = MAX_EVALUATIONS,
) -> GapCertificate:
    """Decide ``|<Mx,x>| <= <Px,x>`` for every ``x``.

    Parameters
    ----------
    M : array_like
        Arbitrary square matrix.
    P : array_like
        Positive semidefinite matrix of the same size.
    epsilon : float, optional
        Resolution of the certificate; defaults to ``1e-6 * max(1, ||M||)``.
    tol : TolerancePolicy
        Supplies the floor ``atol + rtol * max(1, ||M||, ||P||)``.

    Returns
    -------
    GapCertificate
        ``VIOLATED`` when the witness gap exceeds the floor,
        ``CERTIFIED_HOLDS`` when ``gap_upper <= epsilon + floor`` (the
        inequality holds up to the requested resolution), otherwise
        ``INCONCLUSIVE``.  Exhausting ``max_evaluations`` without a violation
        also yields ``INCONCLUSIVE``.
    """
    M = as_matrix(M, name="M")
    P = as_matrix(P, name="P")
    if M.shape != P.shape:
        raise DimensionMismatch(f"M is {M.shape} but P is {P.shape}")
    require_hermitian(P, tol, "P")
    ok, lam = is_positive(P, tol)
    if not ok:
        raise NotPositive(f"P is not positive (lambda_min = {lam:.3e})")
    P = 0.5 * (P + P.conj().T)

    L = operator_norm(M)
    if epsilon is None:
        epsilon = 1e-6 * max(1.0, L)
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    floor = tol.floor(max(1.0, L, operator_norm(P)))
    H1, H2 = _real_parts(M)

    if L == 0.0:
        # f is constant: lambda_max(-P).
        w, V = np.linalg.eigh(-P)
        x = V[:, -1]
        value = float(w[-1])
        gl = pointwise_gap(M, P, x)
        status = Status.VIOLATED if gl > floor else (
            Status.CERTIFIED_HOLDS if value <= epsilon + floor else Status.INCONCLUSIVE)
        return GapCertificate(status, max(value, gl), gl, 0.0, x, 1, 0.0, epsilon, floor)

    a = np.arange(INITIAL_GRID) * (TWO_PI / INITIAL_GRID)
    fa = _top_eigenvalues(H1, H2, P, a)
    evaluations = INITIAL_GRID
    b = np.append(a[1:], TWO_PI)
    fb = np.roll(fa, -1)
    ub, used = _arc_bounds(H1, H2, P, L, a, b, fa, fb)
    evaluations += used
    pts_t = [a]
    pts_f = [fa]
    best = float(fa.max())
    exhausted = False

    while True:
        target = 0.5 * epsilon
        if best > floor:
            # the verdict is already VIOLATED; only the upper bound is being sharpened
            target = max(target, VIOLATION_RTOL * best)
        active = ub > best + target
        k = int(active.sum())
        if k == 0:
            break
        if evaluations + 3 * k > max_evaluations:
            exhausted = True
            break
        ka, kb, kfa, kfb = a[active], b[active], fa[active], fb[active]
        mid = 0.5 * (ka + kb)
        fm = _top_eigenvalues(H1, H2, P, mid)
        evaluations += k
        pts_t.append(mid)
        pts_f.append(fm)
        best = max(best, float(fm.max()))
        na = np.concatenate([ka, mid])
        nb = np.concatenate([mid, kb])
        nfa = np.concatenate([kfa, fm])
        nfb = np.concatenate([fm, kfb])
        nub, used = _arc_bounds(H1, H2, P, L, na, nb, nfa, nfb)
        evaluations += used
        keep = ~active
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        fa = np.concatenate([fa[keep], nfa])
        fb = np.concatenate([fb[keep], nfb])
        ub = np.concatenate([ub[keep], nub])

    gap_upper = float(ub.max())

    # Best probe, ties toward the smallest theta.
    t_all = np.concatenate(pts_t)
    f_all = np.concatenate(pts_f)
    order = np.argsort(t_all, kind="stable")
    t_all, f_all = t_all[order], f_all[order]
    i = int(np.argmax(f_all))
    t_best, f_best = float(t_all[i]), float(f_all[i])

    if not exhausted:
        lo = float(t_all[i - 1]) if i > 0 else float(t_all[-1]) - TWO_PI
        hi = float(t_all[i + 1]) if i + 1 < t_all.shape[0] else TWO_PI
        f = lambda t: float(_top_eigenvalues(H1, H2, P, [t])[0])  # noqa: E731
        for t, v in _golden_section(f, lo, hi, GOLDEN_ITERATIONS):
            if v > f_best:
                t_best, f_best = t, v
        evaluations += GOLDEN_ITERATIONS + 2

    theta_star = float(t_best % TWO_PI)
    c, s = math.cos(theta_star), math.sin(theta_star)
    _, V = np.linalg.eigh(c * H1 + s * H2 - P)
    witness = V[:, -1]
    witness = witness / np.linalg.norm(witness)
    gap_lower = pointwise_gap(M, P, witness)
    gap_upper = max(gap_upper, gap_lower)

    if gap_lower > floor:
        status = Status.VIOLATED
    elif not exhausted and gap_upper <= epsilon + floor:
        status = Status.CERTIFIED_HOLDS
    else:
        status = Status.INCONCLUSIVE
    return GapCertificate(
        status, gap_upper, gap_lower, theta_star, witness, evaluations, L, epsilon, floor
    )


def certify_reid(
    instance: ReidInstance, epsilon: float | None = None, tol: TolerancePolicy = DEFAULT_TOL
) -> GapCertificate:
    """Certify ``|<AKx,x>| <= ||K|| <Ax,x>`` for all ``x``."""
    return certify_dominated(instance.M, instance.P, epsilon, tol)


def brute_force_gap(
    M, P, samples: int, seed: int, extra_candidates=None
) -> tuple[float, np.ndarray]:
    """Maximum of ``|<Mx,x>| - <Px,x>`` over sampled unit vectors.

    Candidates are ``samples`` normalised complex Gaussian vectors, the
    standard basis, the normalised vector ``(2, 1, 0, ..., 0)`` when the
    dimension is at least 2, and any ``extra_candidates`` (normalised here).
    Independent of the angular reduction used by :func:`certify_dominated`.
    """
    M = as_matrix(M, name="M")
    P = as_matrix(P, name="P")
    if M.shape != P.shape:
        raise DimensionMismatch(f"M is {M.shape} but P is {P.shape}")
    if samples < 1:
        raise ValueError("samples must be positive")
    n = M.shape[0]
    rng = np.random.default_rng(seed)
    parts = [rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))]
    parts.append(np.eye(n, dtype=np.complex128))
    if n >= 2:
        v = np.zeros((1, n), dtype=np.complex128)
        v[0, :2] = (2.0, 1.0)
        parts.append(v)
    if extra_candidates is not None:
        parts.append(np.atleast_2d(np.asarray(extra_candidates, dtype=np.complex128)))
    X = np.concatenate(parts)
    X = X / np.linalg.norm(X, axis=1, keepdims=True)
    qm = np.einsum("ki,ki->k", X.conj(), X @ M.T)
    qp = np.einsum("ki,ki->k", X.conj(), X @ P.T).real
    gaps = np.abs(qm) - qp
    i = int(np.argmax(gaps))
    return float(gaps[i]), X[i]
