"""Seeded randomized campaigns and their JSON reports.

Trial ``t`` of a campaign with seed ``s`` uses ``mix_seed(s, t)`` as its seed
and dimension ``dims[t % len(dims)]``, so any single trial can be replayed in
isolation.  Records are ordered by trial index; ``wall_time_ms`` is the only
field that varies between identical runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .certifier import ReidInstance, Status, certify_reid
from .errors import ReidLabError
from .generators import GENERATORS, GenConfig, mix_seed
from .linalg import DEFAULT_TOL, TolerancePolicy, adjoint, operator_norm
from .matrix_io import save_matrix
from .predicates import is_positive, normality_defect
from .proofsteps import STEP_TOL, jordan_falsification, run_proof_chain

__all__ = [
    "SCHEMA_VERSION",
    "THEOREM_CLASSES",
    "FuzzReport",
    "hypothesis_defects",
    "run_fuzz",
    "ProofStepsReport",
    "run_proofsteps",
]

SCHEMA_VERSION = 1
THEOREM_CLASSES = ("selfadjoint", "normal", "cohypo")


def hypothesis_defects(A: np.ndarray, K: np.ndarray) -> dict:
    """Continuous class-membership defects of a pair, for reports."""
    M = A @ K
    normal = normality_defect(M)
    cohypo = normality_defect(adjoint(M))
    return {
        "A_lambda_min": is_positive(A)[1],
        "selfadjoint_defect": operator_norm(M - adjoint(M)),
        "normality_defect": normal.norm,
        "cohyponormal_lambda_min": cohypo.lambda_min,
    }


def _summary(records: list) -> dict:
    counts = {str(s): 0 for s in Status}
    for r in records:
        counts[r["status"]] += 1
    return counts


@dataclass
class FuzzReport:
    campaign_name: str
    dims: list
    trials: int
    seed: int
    epsilon: float | None
    verdicts: list = field(default_factory=list)
    wall_time_ms: int = 0

    @property
    def summary(self) -> dict:
        return _summary(self.verdicts)

    @property
    def all_certified(self) -> bool:
        return all(r["status"] == str(Status.CERTIFIED_HOLDS) for r in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "campaign_name": self.campaign_name,
            "dims": list(self.dims),
            "trials": self.trials,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "summary": self.summary,
            "verdicts": self.verdicts,
            "wall_time_ms": self.wall_time_ms,
        }


def _trial_config(seed: int, t: int, dims) -> GenConfig:
    return GenConfig(dim=int(dims[t % len(dims)]), seed=mix_seed(seed, t))


def run_fuzz(
    klass: str,
    dims,
    trials: int,
    seed: int,
    epsilon: float | None = None,
    tol: TolerancePolicy = DEFAULT_TOL,
    dump_dir: str | Path | None = None,
) -> FuzzReport:
    """Generate ``trials`` pairs of class ``klass`` and certify each one."""
    if klass not in GENERATORS:
        raise ValueError(f"unknown class {klass!r}; choose from {sorted(GENERATORS)}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    gen = GENERATORS[klass]
    start = time.perf_counter()
    report = FuzzReport(f"fuzz-{klass}", list(dims), trials, seed, epsilon)
    if dump_dir is not None:
        Path(dump_dir).mkdir(parents=True, exist_ok=True)
    for t in range(trials):
        cfg = _trial_config(seed, t, dims)
        pair = gen(cfg)
        if dump_dir is not None:
            save_matrix(Path(dump_dir) / f"trial{t:05d}_A.json", pair.A)
            save_matrix(Path(dump_dir) / f"trial{t:05d}_K.json", pair.K)
        cert = certify_reid(ReidInstance.build(pair.A, pair.K, tol), epsilon, tol)
        report.verdicts.append(
            {
                "trial": t,
                "seed": cfg.seed,
                "dim": cfg.dim,
                "strategy": pair.strategy,
                "status": str(cert.status),
                "gap_upper": cert.gap_upper,
                "gap_lower": cert.gap_lower,
                "defects": hypothesis_defects(pair.A, pair.K),
            }
        )
    report.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
    return report


@dataclass
class ProofStepsReport:
    dims: list
    trials: int
    seed: int
    tol: TolerancePolicy
    records: list = field(default_factory=list)
    jordan: dict = field(default_factory=dict)
    wall_time_ms: int = 0

    @property
    def failures(self) -> list:
        """``(trial, step, defect, floor, detail)`` for every check that did not hold."""
        out = []
        for r in self.records:
            for s in r["steps"]:
                if not s["holds"]:
                    out.append((r["trial"], s["step"], s["defect"], s["floor"], s["detail"]))
            if r["certificate_status"] != str(Status.CERTIFIED_HOLDS):
                out.append((r["trial"], "certificate", r["gap_upper"], None,
                            r["certificate_status"]))
        return out

    @property
    def ok(self) -> bool:
        return not self.failures and self.jordan.get("status") == str(Status.VIOLATED)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "campaign_name": "proofsteps",
            "dims": list(self.dims),
            "trials": self.trials,
            "seed": self.seed,
            "atol": self.tol.atol,
            "rtol": self.tol.rtol,
            "ok": self.ok,
            "failures": len(self.failures),
            "jordan_falsification": self.jordan,
            "records": self.records,
            "wall_time_ms": self.wall_time_ms,
        }


def run_proofsteps(
    dims,
    trials: int,
    seed: int,
    tol: TolerancePolicy = STEP_TOL,
    epsilon: float | None = None,
) -> ProofStepsReport:
    """Run the whole proof chain on theorem-class instances.

    Trials cycle through the self-adjoint, normal and co-hyponormal product
    classes; all three satisfy the co-hyponormal hypothesis.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    start = time.perf_counter()
    report = ProofStepsReport(list(dims), trials, seed, tol)
    for t in range(trials):
        cfg = _trial_config(seed, t, dims)
        klass = THEOREM_CLASSES[t % len(THEOREM_CLASSES)]
        pair = GENERATORS[klass](cfg)
        rng = np.random.default_rng(mix_seed(cfg.seed, 0))
        x = rng.standard_normal(cfg.dim) + 1j * rng.standard_normal(cfg.dim)
        record = {"trial": t, "seed": cfg.seed, "dim": cfg.dim, "class": klass}
        try:
            chain = run_proof_chain(pair.A, pair.K, x, tol, epsilon)
        except ReidLabError as exc:
            # an over-strict tolerance can reject the instance's own hypotheses
            record.update(
                steps=[{"step": "precondition", "holds": False, "defect": None,
                        "floor": None, "detail": f"{type(exc).__name__}: {exc}"}],
                certificate_status=str(Status.INCONCLUSIVE),
                gap_upper=None,
            )
        else:
            record.update(
                steps=[s.to_dict() for s in chain.steps],
                certificate_status=str(chain.certificate.status),
                gap_upper=chain.certificate.gap_upper,
            )
        report.records.append(record)
    j = jordan_falsification(tol)
    report.jordan = {
        "lhs": j["lhs"],
        "rhs": j["rhs"],
        "status": str(j["certificate"].status),
        "gap_lower": j["certificate"].gap_lower,
    }
    report.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
    return report
