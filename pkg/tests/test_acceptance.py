"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]`` / ``[FAIL]`` line with the measured
numbers next to the stated tolerance, then asserts.
"""

import time

import numpy as np
import pytest

from conftest import complex_gaussian, random_unitary
from reidlab.campaigns import run_fuzz, run_proofsteps
from reidlab.certifier import ReidInstance, Status, brute_force_gap, certify_reid, pointwise_gap
from reidlab.cli import main
from reidlab.generators import GENERATORS, GenConfig, mix_seed
from reidlab.linalg import TolerancePolicy, operator_norm, psd_sqrt
from reidlab.predicates import is_hyponormal, normality_defect
from reidlab.proofsteps import STEP_TOL, jordan_falsification
from reidlab.shift import paper_counterexample

DIMS = list(range(2, 9))


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")
        assert ok, detail

    return emit


def test_counterexample_exactness(report, capsys):
    start = time.perf_counter()
    rows = []
    for n in range(2, 17):
        rep = paper_counterexample(n)
        code = main(["counterexample", str(n), "--json"])
        rows.append((rep.lhs, rep.rhs, rep.gap, rep.norm_K, rep.certificate.status, code))
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    exact = all(r[:4] == (2, 1, 1, 1) and all(type(v) is int for v in r[:4]) for r in rows)
    agrees = all(r[4] is Status.VIOLATED and r[5] == 0 for r in rows)
    report(
        1, "shift counterexample exact for n = 2..16",
        exact and agrees and elapsed < 1.0,
        f"|<Sx,x>| = 2, ||K|| <Ax,x> = 1, gap = 1 (integers, zero tolerance) at all 15 sizes: {exact}; "
        f"certifier VIOLATED and exit 0: {agrees}; runtime {elapsed:.3f} s (limit 1 s)",
    )


def _campaign(klass):
    start = time.perf_counter()
    rep = run_fuzz(klass, DIMS, 500, seed=42)
    elapsed = time.perf_counter() - start
    worst = 0.0
    for t, v in enumerate(rep.verdicts):
        pair = GENERATORS[klass](GenConfig(dim=v["dim"], seed=v["seed"]))
        scale = max(1.0, operator_norm(pair.A @ pair.K))
        worst = max(worst, v["gap_upper"] / (1e-6 * scale))
    return rep.summary["CERTIFIED_HOLDS"], worst, elapsed


@pytest.mark.parametrize(
    "number, klass",
    [(2, "selfadjoint"), (3, "normal"), (3, "cohypo")],
)
def test_theorem_class_campaign(report, number, klass):
    holds, worst, elapsed = _campaign(klass)
    report(
        number, f"{klass} campaign, 500 trials, dims 2-8, seed 42",
        holds == 500 and worst <= 1.0 and elapsed < 60.0,
        f"{holds}/500 CERTIFIED_HOLDS; max gap_upper / (1e-6 scale) = {worst:.3f} (limit 1); "
        f"runtime {elapsed:.2f} s (limit 60 s)",
    )


def test_certifier_soundness_sandwich(report):
    classes = ["selfadjoint", "normal", "cohypo", "unconstrained"]
    worst_upper = -np.inf
    worst_witness = 0.0
    statuses = {str(s): 0 for s in Status}
    for t in range(200):
        cfg = GenConfig(dim=DIMS[t % len(DIMS)], seed=mix_seed(2024, t))
        pair = GENERATORS[classes[t % len(classes)]](cfg)
        inst = ReidInstance.build(pair.A, pair.K)
        cert = certify_reid(inst)
        statuses[str(cert.status)] += 1
        oracle, _ = brute_force_gap(inst.M, inst.P, 10_000, seed=t)
        worst_upper = max(worst_upper, oracle - cert.gap_upper)
        worst_witness = max(worst_witness, abs(pointwise_gap(inst.M, inst.P, cert.witness) - cert.gap_lower))
    report(
        4, "oracle sandwich on 200 mixed instances",
        worst_upper <= 1e-10 and worst_witness <= 1e-10,
        f"max(brute_force_gap(1e4) - gap_upper) = {worst_upper:.2e} (limit 1e-10); "
        f"max |witness gap - gap_lower| = {worst_witness:.2e} (limit 1e-10); statuses {statuses}",
    )


def test_proof_chain_coherence(report, capsys):
    rep = run_proofsteps(DIMS, 200, seed=0, tol=STEP_TOL)
    holds = sum(r["certificate_status"] == "CERTIFIED_HOLDS" for r in rep.records)
    worst = max(
        s["defect"] / s["floor"] if s["floor"] else (0.0 if s["defect"] == 0 else np.inf)
        for r in rep.records for s in r["steps"]
    )
    code = main(["proofsteps", "--trials", "200", "--json"])
    capsys.readouterr()
    report(
        5, "proof chain on 200 theorem-class instances",
        not rep.failures and holds == 200 and code == 0,
        f"failing steps {len(rep.failures)}; worst defect / (1e-8 scale) = {worst:.2e} (limit 1); "
        f"{holds}/200 certificates CERTIFIED_HOLDS; CLI exit {code}",
    )


def test_square_root_monotonicity(report):
    rng = np.random.default_rng(7)
    worst = 0.0
    for t in range(1000):
        n = DIMS[t % len(DIMS)]
        G = complex_gaussian(rng, n, 1 + t % n)
        H = complex_gaussian(rng, n, 1 + (t // 7) % n)
        X = G @ G.conj().T
        Y = X + H @ H.conj().T
        rX, rY = psd_sqrt(X), psd_sqrt(Y)
        D = rY - rX
        lam = np.linalg.eigvalsh(0.5 * (D + D.conj().T))[0]
        scale = max(1.0, operator_norm(rY))
        worst = max(worst, -lam / (1e-8 * scale))
    report(
        6, "sqrt(X) <= sqrt(Y) on 1000 pairs 0 <= X <= Y, dims 2-8",
        worst <= 1.0,
        f"max(-lambda_min(sqrt(Y) - sqrt(X))) / (1e-8 scale) = {worst:.2e} (limit 1)",
    )


def test_lemma_necessity_regression(report):
    j = jordan_falsification()
    err = max(abs(j["lhs"] - 0.3), abs(j["rhs"] - 0.1))
    status = j["certificate"].status
    report(
        7, "Jordan block breaks the lemma without hyponormality",
        err <= 1e-12 and j["lhs"] > j["rhs"] and status is Status.VIOLATED,
        f"|<Tx,x>| = {j['lhs']:.15f}, <|T|x,x> = {j['rhs']:.15f} (error {err:.1e}, limit 1e-12); "
        f"check_kittaneh -> {status}",
    )


def _matrix_zoo(rng, t):
    n = 1 + t % 8
    kind = t % 4
    if kind == 0:
        return complex_gaussian(rng, n, n)
    U = random_unitary(rng, n)
    N = U @ np.diag(complex_gaussian(rng, n, 1).ravel()) @ U.conj().T
    if kind == 1:
        return N
    # normal matrices with a non-normal perturbation of varying size
    return N + 10.0 ** rng.uniform(-12, -2) * complex_gaussian(rng, n, n)


def test_finite_dimensional_collapse(report):
    rng = np.random.default_rng(11)
    worst_trace = 0.0
    worst_bound = 0.0
    passing = 0
    thresholds = (1e-10, 1e-6, 1e-3)
    for t in range(200):
        T = _matrix_zoo(rng, t)
        n = T.shape[0]
        rep = normality_defect(T)
        scale = max(1.0, operator_norm(T))
        worst_trace = max(worst_trace, abs(np.trace(rep.defect_matrix)) / (1e-12 * scale))
        for thr in thresholds:
            if is_hyponormal(T, TolerancePolicy(0.0, thr)):
                passing += 1
                bound = (n - 1) * thr * max(1.0, rep.norm)
                worst_bound = max(worst_bound, rep.norm / bound if bound else (0.0 if rep.norm == 0 else np.inf))
    report(
        8, "hyponormal collapses to normal in finite dimension (200 matrices)",
        worst_trace <= 1.0 and worst_bound <= 1.0 and passing > 0,
        f"max |trace(T*T - TT*)| / (1e-12 scale) = {worst_trace:.2e} (limit 1); "
        f"{passing} (matrix, t) pairs pass is_hyponormal, max ||D|| / ((n-1) t scale) = "
        f"{worst_bound:.2e} (limit 1)",
    )
