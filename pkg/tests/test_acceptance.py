"""End-to-end acceptance suite.

One test per criterion; each prints a PASS/FAIL line so a -s run reads as a
checklist. Heavier scenario runs are shared through session fixtures.
"""

import math
import time

import numpy as np
import pytest

from olspice import (
    BatchProblem,
    CovParams,
    OnlineLasso,
    OnlineRls,
    OnlineSpice,
    LambdaSchedule,
    Sample,
    ScenarioSpec,
    SufficientStats,
    batch_weighted_sqrt_lasso,
    concentrated_cost,
    covmatch_cost,
    covmatch_cost_frobenius,
    ingest,
    init_aux,
    lmmse,
)
from olspice.harness import run_experiment, run_snr_sweep
from olspice.oracle import sqrt_lasso_cost
from olspice.scenarios import stream
from olspice.spice import coordinate_minimize, coordinate_stats, phase_source
from olspice.core import apply_coordinate_delta
from helpers import random_samples


def report(name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


# ---------------------------------------------------------------- fixtures

FIG1_SPEC = ScenarioSpec(
    kind="iid_gaussian",
    p=100,
    support=(9, 19, 89),
    amplitudes=(1.0, 1.0, 3.0),
    snr_db=20.0,
    n_max=2000,
    seed=42,
    trials=50,
)
FIG1_TAGS = [
    "olspice:L=1",
    "olspice:L=10",
    "ollasso:feasible",
    "ollasso:infeasible",
    "olrls:lambda=1",
]


@pytest.fixture(scope="session")
def fig1_results():
    summary = run_experiment(FIG1_SPEC, FIG1_TAGS, zero_hold=20)
    curves = {}
    for row in summary.rows:
        curves.setdefault(row["estimator"], {})[row["n"]] = row["nmse_db"]
    return curves


# ---------------------------------------------------------------- criteria


def test_oracle_equivalence():
    # 50 random instances, real and complex, p <= 10, n <= 40, SNR 20 dB;
    # OL-SPICE with L = 200 sweeps per sample vs the batch minimizer
    rng = np.random.default_rng(100)
    t0 = time.perf_counter()
    worst = 0.0
    for k in range(50):
        p = int(rng.integers(2, 11))
        n = int(rng.integers(max(p, 5), 41))
        complex_data = bool(k % 2)
        theta = np.zeros(p, dtype=complex)
        nnz = int(rng.integers(1, max(2, p // 2)))
        idx = rng.choice(p, size=nnz, replace=False)
        theta[idx] = rng.standard_normal(nnz) + (
            1j * rng.standard_normal(nnz) if complex_data else 0.0
        )
        sigma = math.sqrt(float(np.min(np.abs(theta[idx]) ** 2)) / 100.0)  # 20 dB
        samples = random_samples(rng, p, n, complex_data=complex_data, theta=theta, noise=sigma)
        est = OnlineSpice(p, sweeps=200)
        for s in samples:
            out = est.process_sample(s)
        ref, converged = batch_weighted_sqrt_lasso(BatchProblem.from_stream(samples))
        assert converged
        worst = max(worst, float(np.max(np.abs(out - ref))))
    elapsed = time.perf_counter() - t0
    report(
        "oracle equivalence (50 instances, L=200)",
        worst < 1e-5 and elapsed < 60,
        f"max coord err {worst:.2e}, {elapsed:.1f}s",
    )


def test_descent_suites():
    # 10^4 randomized committed coordinate updates for each estimator,
    # cost evaluated on retained history, slack 1e-12 * cost
    rng = np.random.default_rng(101)
    violations = 0
    updates = 0
    while updates < 10_000:
        p = int(rng.integers(2, 7))
        n = int(rng.integers(3, 25))
        complex_data = bool(rng.integers(0, 2))
        samples = random_samples(rng, p, n, complex_data=complex_data)
        prob = BatchProblem.from_stream(samples)

        spice = OnlineSpice(p)
        for s in samples:
            ingest(spice.stats, s)
        spice.theta = rng.standard_normal(p) + (
            1j * rng.standard_normal(p) if complex_data else 0.0
        )
        spice.theta = spice.theta.astype(complex)
        spice.aux = init_aux(spice.stats, spice.theta)

        lasso = OnlineLasso(p, LambdaSchedule.feasible())
        lasso.stats = spice.stats.copy()
        lasso.theta = spice.theta.copy()
        lasso.zeta = lasso.stats.rho - lasso.stats.gamma @ lasso.theta
        lam = lasso.schedule.value(n, p)

        spice_cost = sqrt_lasso_cost(prob, spice.theta)
        resid = prob.y - prob.hmat @ lasso.theta
        lasso_cost = float(np.vdot(resid, resid).real + lam * np.abs(lasso.theta).sum())

        for _ in range(int(rng.integers(5, 15))):
            i = int(rng.integers(0, p))
            # spice update
            cs = coordinate_stats(spice, i)
            new = coordinate_minimize(cs, phase_source(spice, i), n)
            apply_coordinate_delta(spice.aux, spice.stats, i, spice.theta[i], new)
            spice.theta[i] = new
            c = sqrt_lasso_cost(prob, spice.theta)
            if c > spice_cost + 1e-12 * max(spice_cost, 1.0):
                violations += 1
            spice_cost = c
            # lasso update
            from olspice import lasso_coordinate_minimize

            new_l = lasso_coordinate_minimize(lasso, i, lam)
            lasso.zeta += lasso.stats.gamma[:, i] * (lasso.theta[i] - new_l)
            lasso.theta[i] = new_l
            resid = prob.y - prob.hmat @ lasso.theta
            c = float(np.vdot(resid, resid).real + lam * np.abs(lasso.theta).sum())
            if c > lasso_cost + 1e-12 * max(lasso_cost, 1.0):
                violations += 1
            lasso_cost = c
            updates += 2
    report("descent suites (10^4 updates)", violations == 0, f"{violations} violations")


def test_recursion_consistency():
    # streaming (gamma, rho, kappa, eta, zeta) vs batch recomputation
    rng = np.random.default_rng(102)
    worst_gram = 0.0
    worst_aux = 0.0
    for k in range(100):
        p = int(rng.integers(2, 65))
        n = int(rng.integers(p + 1, 513))
        complex_data = bool(k % 2)
        samples = random_samples(rng, p, n, complex_data=complex_data)
        st = SufficientStats(p)
        for s in samples:
            ingest(st, s)
        prob = BatchProblem.from_stream(samples)
        g = prob.hmat.conj().T @ prob.hmat
        r = prob.hmat.conj().T @ prob.y
        kappa = float(np.vdot(prob.y, prob.y).real)
        tol = 1e-11 if complex_data else 1e-12
        scale = max(np.abs(g).max(), 1.0)
        err = max(
            np.abs(st.gamma - g).max() / scale,
            np.abs(st.rho - r).max() / max(np.abs(r).max(), 1.0),
            abs(st.kappa - kappa) / kappa,
        )
        worst_gram = max(worst_gram, err / tol)
        theta = rng.standard_normal(p).astype(complex)
        aux = init_aux(st, theta)
        z = prob.y - prob.hmat @ theta
        eta_ref = float(np.vdot(z, z).real)
        zeta_ref = prob.hmat.conj().T @ z
        aerr = max(
            abs(aux.eta - eta_ref) / max(eta_ref, 1.0),
            np.abs(aux.zeta - zeta_ref).max() / max(np.abs(zeta_ref).max(), 1.0),
        )
        worst_aux = max(worst_aux, aerr / 1e-8)
    report(
        "recursion consistency (100 streams)",
        worst_gram <= 1.0 and worst_aux <= 1.0,
        f"gram {worst_gram:.2f}x tol, aux {worst_aux:.2f}x tol",
    )


def test_rls_exactness():
    rng = np.random.default_rng(103)
    worst = 0.0
    for k in range(100):
        p = int(rng.integers(2, 17))
        n = int(rng.integers(5, 61))
        lam = float(rng.uniform(0.2, 3.0))
        complex_data = bool(k % 2)
        est = OnlineRls(p, lam=lam)
        st = SufficientStats(p)
        for s in random_samples(rng, p, n, complex_data=complex_data):
            out = est.process_sample(s)
            ingest(st, s)
            ref = np.linalg.solve(st.gamma + lam * np.eye(p), st.rho)
            denom = max(float(np.abs(ref).max()), 1e-12)
            worst = max(worst, float(np.abs(out - ref).max()) / denom)
    report("RLS exactness (100 streams)", worst < 1e-8, f"worst rel err {worst:.2e}")


def test_appendix_a_suite():
    rng = np.random.default_rng(104)
    # (i) c J(c phi) = J'(phi) with c = 1/||y||, 10^3 random phi
    worst_scale = 0.0
    for _ in range(1000):
        n, p = int(rng.integers(2, 7)), int(rng.integers(1, 5))
        H = rng.standard_normal((n, p)) + 1j * rng.standard_normal((n, p))
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        prob = BatchProblem(H, y)
        cp = CovParams(rng.uniform(0.2, 3.0, p), float(rng.uniform(0.1, 2.0)))
        c = 1.0 / float(np.linalg.norm(y))
        lhs = c * concentrated_cost(prob, cp.scaled(c))
        rhs = covmatch_cost(prob, cp)
        worst_scale = max(worst_scale, abs(lhs - rhs) / abs(rhs))
    ok_scale = worst_scale < 1e-10

    # (ii) LMMSE invariance under phi -> c phi
    worst_lmmse = 0.0
    for _ in range(50):
        n, p = 6, 4
        H = rng.standard_normal((n, p)) + 1j * rng.standard_normal((n, p))
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        prob = BatchProblem(H, y)
        cp = CovParams(rng.uniform(0.2, 3.0, p), float(rng.uniform(0.1, 2.0)))
        base = lmmse(prob, cp)
        for c in (0.1, 7.3, float(rng.uniform(0.05, 20.0))):
            worst_lmmse = max(
                worst_lmmse, float(np.abs(lmmse(prob, cp.scaled(c)) - base).max())
            )
    ok_lmmse = worst_lmmse < 1e-10

    # (iii) Frobenius vs expanded constant -2||y||^2
    worst_frob = 0.0
    for _ in range(50):
        n, p = 5, 3
        H = rng.standard_normal((n, p)) + 1j * rng.standard_normal((n, p))
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        prob = BatchProblem(H, y)
        cp = CovParams(rng.uniform(0.2, 3.0, p), float(rng.uniform(0.1, 2.0)))
        r = (H * cp.pdiag) @ H.conj().T + cp.sigma2 * np.eye(n)
        ynorm2 = float(np.vdot(y, y).real)
        expanded = float(np.vdot(y, np.linalg.solve(r, y)).real) * ynorm2 + float(
            np.trace(r).real
        )
        diff = covmatch_cost_frobenius(prob, cp) - expanded
        worst_frob = max(worst_frob, abs(diff + 2.0 * ynorm2) / (2.0 * ynorm2))
    ok_frob = worst_frob < 1e-9

    # (iv) grid argmins of J and J' related by 1/||y|| on a p=1 instance
    H = rng.standard_normal((4, 1)).astype(complex)
    y = (H @ np.array([1.5]) + 0.3 * rng.standard_normal(4)).astype(complex)
    prob = BatchProblem(H, y)
    ynorm = float(np.linalg.norm(y))
    grid = np.geomspace(1e-3, 30.0, 200)
    best_j = best_jp = None
    for p1 in grid:
        for s2 in grid:
            cp = CovParams(np.array([p1]), float(s2))
            j = concentrated_cost(prob, cp)
            jp = covmatch_cost(prob, cp)
            if best_j is None or j < best_j[0]:
                best_j = (j, p1, s2)
            if best_jp is None or jp < best_jp[0]:
                best_jp = (jp, p1, s2)
    ratio_tol = 2 * (grid[1] / grid[0] - 1.0)
    ok_grid = (
        abs(best_j[1] / best_jp[1] - 1.0 / ynorm) <= ratio_tol / ynorm
        and abs(best_j[2] / best_jp[2] - 1.0 / ynorm) <= ratio_tol / ynorm
    )

    report(
        "Appendix A suite",
        ok_scale and ok_lmmse and ok_frob and ok_grid,
        f"scale {worst_scale:.1e}, lmmse {worst_lmmse:.1e}, frob {worst_frob:.1e}, grid {ok_grid}",
    )


def test_fig1_reduced_orderings(fig1_results):
    spice = fig1_results["olspice:L=1"]
    feas = fig1_results["ollasso:feasible"]
    infeas = fig1_results["ollasso:infeasible"]
    rls = fig1_results["olrls:lambda=1"]
    ns = sorted(spice)
    ok_a = all(spice[n] < feas[n] for n in ns if n >= 200)
    # within the zero-hold window all curves coincide at 0 dB
    ok_b = all(infeas[n] < feas[n] for n in ns if n > 20) and all(
        infeas[n] <= feas[n] for n in ns
    )
    final = ns[-1]
    ok_c = rls[final] < feas[final]
    report(
        "Fig.1 reduced orderings",
        ok_a and ok_b and ok_c,
        f"(a) spice<feasible n>=200: {ok_a}, (b) infeasible<feasible: {ok_b}, "
        f"(c) rls<feasible at n={final}: {ok_c}",
    )


def test_fig3_snr_sweep():
    spec = ScenarioSpec(
        kind="iid_gaussian",
        p=100,
        support=(9, 19, 89),
        amplitudes=(1.0, 1.0, 3.0),
        snr_db=20.0,
        n_max=50,
        seed=43,
        trials=50,
    )
    # n/p = 0.5 keeps the ridge baseline in its bias-dominated regime; at
    # n = p the noise term alone moves its NMSE by ~6 dB across this sweep
    summary = run_snr_sweep(
        spec,
        ["olspice:L=1", "olrls:lambda=1"],
        [5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
        fixed_n=50,
        zero_hold=20,
    )
    spice = [r["nmse_db"] for r in summary.rows if r["estimator"] == "olspice:L=1"]
    rls = [r["nmse_db"] for r in summary.rows if r["estimator"] == "olrls:lambda=1"]
    ok_spice = all(b < a for a, b in zip(spice, spice[1:]))
    rls_range = max(rls) - min(rls)
    report(
        "Fig.3 SNR sweep",
        ok_spice and rls_range < 2.0,
        f"spice strictly decreasing: {ok_spice}, rls range {rls_range:.2f} dB",
    )


def test_l_insensitivity(fig1_results):
    l1 = fig1_results["olspice:L=1"]
    l10 = fig1_results["olspice:L=10"]
    gaps = {n: abs(l1[n] - l10[n]) for n in l1 if n > 200}
    worst = max(gaps.values())
    report("L-insensitivity (L=1 vs L=10)", worst < 1.5, f"max gap {worst:.2f} dB")


def test_sar_desk_scale():
    spec = ScenarioSpec(
        kind="sar",
        p=256,
        support=(17, 60, 130, 190, 240),
        amplitudes=(1.0,) * 5,
        snr_db=25.0,
        n_max=128,
        seed=44,
        trials=20,
    )
    t0 = time.perf_counter()
    hits = 0
    for trial in range(spec.trials):
        theta, samples = stream(spec, trial)
        est = OnlineSpice(spec.p)
        for s in samples:
            out = est.process_sample(s)
        top = set(np.argsort(np.abs(out))[-5:])
        hits += top == set(spec.support)
    elapsed = time.perf_counter() - t0
    rate = hits / spec.trials
    report(
        "SAR desk scale support recovery",
        rate >= 0.8 and elapsed < 300,
        f"{rate:.0%} of trials, {elapsed:.1f}s",
    )


def test_exact_recovery_micro():
    est = OnlineSpice(1)
    est.process_sample(Sample(3.0, [1.0]))
    out = est.process_sample(Sample(3.0, [1.0]))
    report("exact-recovery micro-test", out[0] == 3.0 + 0.0j, f"theta = {out[0]}")
