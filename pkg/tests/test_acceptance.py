"""Acceptance criteria.

Every criterion runs at its stated tolerance and prints one pass/fail
line (run pytest with -s to see them live).  Runtime budgets are stated
for 8 threads; on smaller machines they are scaled by 8/cores.

Heavy computations are shared through session fixtures; their wall time
is charged to the criterion whose budget covers them.
"""

import math
import os
import subprocess
import sys
import time

import pytest

import fordspheres.constants as cn
import fordspheres.moments as mo
import fordspheres.verification as vf
from fordspheres.verification import VerificationContext

BUDGET_SCALE = 8.0 / min(8, os.cpu_count() or 1)


def report(num: int, name: str, results, extra: str = "") -> None:
    hard = [r for r in results if r.hard]
    ok = all(r.passed for r in hard)
    print(f"\nACCEPTANCE {num} ({name}): {'PASS' if ok else 'FAIL'} {extra}")
    for r in results:
        print("   ", r.line())
    failed = [r for r in hard if not r.passed]
    assert not failed, f"criterion {num} failed: {[r.name for r in failed]}"


@pytest.fixture(scope="session")
def ctx():
    return VerificationContext()


@pytest.fixture(scope="session")
def heavy_moments(ctx):
    """Batches for k=2,3(,4) over the doubling grid up to S=256, timed."""
    t0 = time.perf_counter()
    for S in ctx.moment_grid:
        ctx.batch23(S)
    return time.perf_counter() - t0


@pytest.fixture(scope="session")
def m1_moments(ctx):
    t0 = time.perf_counter()
    for S in ctx.m1_grid:
        ctx.batch((1,), S)
    return time.perf_counter() - t0


@pytest.fixture(scope="session")
def lemma_results(ctx, heavy_moments):
    return vf.suite_lemmas(ctx)


def test_criterion_01_identity_suite(ctx):
    report(1, "exact identity suite", vf.suite_identities(ctx))


def test_criterion_02_brute_force_oracles(ctx):
    results = []
    t0 = time.perf_counter()
    import fordspheres.gaussint as gi
    from fordspheres.lattice import r2, r2_scan

    bad = sum(
        1
        for q in gi.canonical_elements(144)
        if vf.residue_phi_oracle(q) != gi.phi_i(q)
    )
    results.append(vf._check("criterion2.phi_residues", bad == 0, f"{bad} failures", "0"))
    bad = vf._gcd_scan_check(400)
    results.append(vf._check("criterion2.gcd_scan", bad == 0, f"{bad} failures", "0"))
    bad = sum(1 for n in range(1, 10_001) if r2(n) != r2_scan(n))
    results.append(vf._check("criterion2.r2_scan", bad == 0, f"{bad} failures", "0"))
    report(2, "brute-force oracles", results, f"[{time.perf_counter()-t0:.1f}s]")


def test_criterion_03_moment_oracle_equivalence(ctx):
    t0 = time.perf_counter()
    mismatches = []
    for S in range(1, 7):
        for k in range(1, 5):
            if mo.moment_exact(k, S).value != mo.moment_oracle(k, S).value:
                mismatches.append((k, S))
    units_ok = all(mo.moment_exact(k, 1).value == 4 for k in range(1, 6))
    elapsed = time.perf_counter() - t0
    results = [
        vf._check("criterion3.oracle_equality", not mismatches, f"{mismatches}", "none"),
        vf._check("criterion3.unit_moments", units_ok, "M_k(1), k=1..5", "= 4"),
        vf._check(
            "criterion3.runtime",
            elapsed < 300 * BUDGET_SCALE,
            f"{elapsed:.1f}s",
            f"< {300 * BUDGET_SCALE:.0f}s",
        ),
    ]
    report(3, "moment oracle equivalence", results)


def test_criterion_04_decomposition_identity(ctx, heavy_moments):
    results = []
    bad = []
    for S in (8, 16, 32, 64):
        batch = ctx.batch23(S)
        for k in (2, 3, 4):
            t = batch[k]
            if t["sigma1"] + t["sigma2"] != t["moment"]:
                bad.append((k, S))
    results.append(vf._check("criterion4.split_exact", not bad, f"{bad}", "none"))
    r2_ratios, r3_ratios = [], []
    for S in ctx.moment_grid:
        batch = ctx.batch23(S)
        r2_ratios.append(float(batch[2]["sigma2"]) / math.log(S) ** 2)
        r3_ratios.append(float(batch[3]["sigma2"]) / math.log(S))
    ok2 = max(r2_ratios) <= vf.SIGMA2_RATIO_BOUND_K2 and r2_ratios[-1] <= 1.25 * max(
        r2_ratios[:-1]
    )
    ok3 = max(r3_ratios) <= vf.SIGMA2_RATIO_BOUND_K3 and r3_ratios[-1] <= 1.25 * max(
        r3_ratios[:-1]
    )
    results.append(
        vf._check(
            "criterion4.sigma2_bounded_k2",
            ok2,
            f"max {max(r2_ratios):.4f}",
            f"<= {vf.SIGMA2_RATIO_BOUND_K2}, non-growing",
            detail=str(["%.3f" % r for r in r2_ratios]),
        )
    )
    results.append(
        vf._check(
            "criterion4.sigma2_bounded_k3",
            ok3,
            f"max {max(r3_ratios):.4f}",
            f"<= {vf.SIGMA2_RATIO_BOUND_K3}, non-growing",
            detail=str(["%.3f" % r for r in r3_ratios]),
        )
    )
    report(4, "decomposition identity", results)


def test_criterion_05_lemma_suite(lemma_results):
    # sigma checks belong to criterion 4, the coprime count to criterion 6
    results = [
        r
        for r in lemma_results
        if not r.name.startswith("lemma.sigma") and r.name != "lemma.coprime_main_term"
    ]
    report(5, "growth-law lemma suite", results)


def test_criterion_06_coprime_main_term(lemma_results):
    results = [r for r in lemma_results if r.name == "lemma.coprime_main_term"]
    assert results, "coprime check missing"
    report(6, "coprime lattice count main term", results)


def test_criterion_07_first_moment_asymptotic(ctx, m1_moments):
    t0 = time.perf_counter()
    coeff, coeff_err = cn.m1_coefficient(ctx.config)
    devs = {}
    for S in ctx.m1_grid:
        v = float(ctx.batch((1,), S)[1]["moment"])
        devs[S] = abs(v / S**2 - coeff)
    rel = devs[200] / coeff
    elapsed = m1_moments + (time.perf_counter() - t0)
    budget = 600 * BUDGET_SCALE
    results = [
        vf._check(
            "criterion7.m1_within_5pct",
            rel <= 0.05,
            f"rel dev {rel:.5f} at S=200",
            "<= 0.05",
            detail=f"coefficient {coeff:.8f} +- {coeff_err:.1e}",
        ),
        vf._check(
            "criterion7.deviation_decreases",
            devs[200] < devs[50],
            f"{devs[200]:.6f} at 200 vs {devs[50]:.6f} at 50",
            "smaller at S=200",
        ),
        vf._check(
            "criterion7.runtime", elapsed < budget, f"{elapsed:.0f}s", f"< {budget:.0f}s"
        ),
    ]
    report(7, "first-moment quadratic law", results)


def _theorem_check(ctx, k: int, tol: float, heavy_time: float, budget_s: float):
    t0 = time.perf_counter()
    xi, xi_err = cn.xi_k(k, ctx.config)
    values = [(S, float(ctx.batch23(S)[k]["moment"])) for S in ctx.residual_grid]
    s_top, v_top = values[-1]
    rel = abs(v_top / s_top - xi) / xi
    residual_checks = vf.residual_exponent_checks(k, values, xi)
    elapsed = heavy_time + (time.perf_counter() - t0)
    budget = budget_s * BUDGET_SCALE
    return [
        vf._check(
            f"criterion.linear_law_k{k}",
            rel <= tol,
            f"|M/S - xi|/xi = {rel:.5f} at S={s_top}",
            f"<= {tol}",
            detail=f"xi_{k} = {xi:.7f} +- {xi_err:.1e}, M_{k}({s_top})/{s_top} = {v_top/s_top:.7f}",
        ),
        *residual_checks,
        vf._check(
            f"criterion.runtime_k{k}",
            elapsed < budget,
            f"{elapsed:.0f}s",
            f"< {budget:.0f}s",
        ),
    ]


def test_criterion_08_theorem_k2(ctx, heavy_moments):
    report(8, "linear growth theorem, k=2", _theorem_check(ctx, 2, 0.20, heavy_moments, 1800))


def test_criterion_09_theorem_k3(ctx, heavy_moments):
    # the batches are shared with k=2, so no extra heavy time is charged
    report(9, "linear growth theorem, k=3", _theorem_check(ctx, 3, 0.25, 0.0, 1800))


def test_criterion_10_positivity(ctx):
    detail = []
    ok = True
    for k in range(2, 7):
        xi, _ = cn.xi_k(k, ctx.config)
        detail.append(f"xi_{k}={xi:.6f}")
        ok &= xi > 0
    cv, _ = cn.c_constant(ctx.config.tol)
    results = [
        vf._check("criterion10.xi_positive", ok, "; ".join(detail), "> 0 for k=2..6"),
        vf._check("criterion10.two_C", 2 * cv > 1, f"2C = {2 * cv:.8f}", "> 1"),
    ]
    report(10, "positivity of the growth constants", results)


def test_criterion_11_determinism(ctx):
    results = []
    batches = []
    for threads in (1, 4, 8):
        mo._BATCH_CACHE.clear()
        batches.append(mo.moment_batch([2, 3], 32, threads=threads))
    mo._BATCH_CACHE.clear()
    same = all(
        batches[0][k][f] == batches[1][k][f] == batches[2][k][f]
        for k in (2, 3)
        for f in ("moment", "sigma1", "sigma2")
    )
    results.append(
        vf._check("criterion11.exact_values", same, "1/4/8 workers", "bit-identical")
    )

    def cli_bytes(args):
        proc = subprocess.run(
            [sys.executable, "-m", "fordspheres", *args], capture_output=True
        )
        assert proc.returncode == 0, proc.stderr.decode()
        return proc.stdout

    moment_outs = {
        t: cli_bytes(["moments", "--k", "2", "--grid", "32", "--threads", str(t)])
        for t in (1, 4, 8)
    }
    results.append(
        vf._check(
            "criterion11.cli_moments_bytes",
            moment_outs[1] == moment_outs[4] == moment_outs[8],
            "stdout bytes across --threads 1/4/8",
            "identical",
        )
    )
    const_outs = {
        t: cli_bytes(["constants", "--kmax", "2", "--rmax", "150", "--threads", str(t)])
        for t in (1, 4, 8)
    }
    results.append(
        vf._check(
            "criterion11.cli_constants_bytes",
            const_outs[1] == const_outs[4] == const_outs[8],
            "stdout bytes across --threads 1/4/8",
            "identical",
        )
    )
    report(11, "determinism across thread counts", results)
