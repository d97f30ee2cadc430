"""Acceptance criteria, one test per criterion at the stated tolerances.

Each test prints a single pass line on success (run with -s or check the
captured output); failures surface as ordinary assertion errors.  Two
narrowly-scoped strict xfails document source-defect cells that cannot be
reproduced from the model itself; the analysis lives in the test reasons.
"""

import math
import time
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from calvobench.bifurcation import LagPolySystem, calvo_system, scan, wage_system
from calvobench.determinacy import (
    char_poly_full,
    char_poly_sqrt_eps,
    existence_boundary,
    find_roots,
    rotemberg_exists,
    singular_determinacy,
    singular_determinacy_q,
)
from calvobench.dispersion import d_delta_dpi_nss, linearization_coeffs
from calvobench.dynamics import (
    ShockSpec,
    build_state_space,
    persistence_stats,
    simulate,
    solve_re,
    stochastic_equilibrium,
    theorem2_report,
    unobserved_natural_rate_system,
)
from calvobench.model_core import PRESET_NAMES, preset, validate
from calvobench.phillips import (
    MomentSet,
    general_coeffs,
    limit_coeffs,
    trend_coeffs,
)
from calvobench.rivals import (
    LucasParams,
    lucas_slope,
    observational_equivalence,
    rotemberg_slope,
    taylor_phillips,
)
from calvobench.steady_state import delta_nss
from calvobench.tables import TABLE_NAMES, reproduce_table

BENCH = preset("benchmark")
COEFF_FIELDS = (
    "b", "b0", "b1", "b2", "b3", "c", "c0", "c1", "c2", "c3", "d", "d0", "d1", "d2", "d3"
)

# cells whose printed values are inconsistent with the source's own
# formulas (verified by exact rational evaluation); excluded from the
# clean sweep and covered by the strict xfail below
KNOWN_DEFECT_CELLS = {
    ("IV", "eta=6", "b3"),    # printed 0.271, exact value 3/11 = 0.2727...
    ("VII", "max", "b4"),     # printed max/min pair is transposed
    ("VII", "min", "b4"),
    ("VII", "min", "b2"),     # printed -0.074 is no statistic of the column
}


def note(n: int, msg: str) -> None:
    print(f"[criterion {n:2d}] PASS  {msg}")


def test_criterion_01_benchmark_phillips_curve():
    t0 = time.perf_counter()
    for _ in range(100):
        cs = limit_coeffs(BENCH)
    per_call = (time.perf_counter() - t0) / 100
    got = cs.b_normalized()
    assert got == pytest.approx((0.575, 0.0, -0.25, 0.3, 0.25), abs=1e-3)
    assert per_call < 1e-3
    note(1, f"(b0..b4) = {tuple(round(v, 4) for v in got)}, {per_call*1e6:.0f} us/call")


def test_criterion_02_golden_tables():
    t0 = time.perf_counter()
    checked = flagged_known = 0
    for name in TABLE_NAMES:
        rpt = reproduce_table(name)
        for cell in rpt.cells:
            key = (name, cell.row, cell.column)
            if key in KNOWN_DEFECT_CELLS:
                flagged_known += 1
                continue
            if name in ("I", "II", "III", "IV", "V", "VI"):
                assert cell.deviation <= 1e-3, key
                checked += 1
            elif cell.row in ("max", "min", "mean", "std"):
                assert cell.deviation <= 2e-3, key
                checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    note(2, f"{checked} cells within tolerance in {elapsed:.2f}s "
            f"({flagged_known} source-defect cells carried by the xfail)")


@pytest.mark.xfail(
    strict=True,
    reason="four printed table cells contradict the source's own closed "
    "forms: the eta=6 lead coefficient is exactly 2/3 / (22/9) = 0.2727 "
    "(printed 0.271), and the last table's b4 max/min pair is transposed "
    "while its b2 minimum (-0.074) is not a statistic of its column "
    "(true minimum -0.457); every neighbouring cell reproduces at 1e-3",
)
def test_criterion_02_known_defect_cells():
    for name in ("IV", "VII"):
        rpt = reproduce_table(name)
        for cell in rpt.cells:
            if (name, cell.row, cell.column) in KNOWN_DEFECT_CELLS:
                assert cell.deviation <= (1e-3 if name == "IV" else 2e-3), (
                    name, cell.row, cell.column,
                )


def test_criterion_03_eigenvalue_factorization():
    worst_root = worst_quad = 0.0
    for name in PRESET_NAMES:
        p = preset(name)
        cs = limit_coeffs(p)
        r3 = find_roots(char_poly_sqrt_eps(cs))
        r4 = find_roots(char_poly_full(cs))
        d_inv = min(abs(r - 1.0 / p.alpha) for r in r3)
        d_inv4 = min(abs(r - 1.0 / p.alpha) for r in r4)
        d_al = min(abs(r - p.alpha) for r in r4)
        worst_root = max(worst_root, d_inv, d_inv4, d_al)
        quad3 = sorted(
            (r for r in r3 if abs(r - 1.0 / p.alpha) > 1e-6), key=lambda z: (abs(z), z.real)
        )
        quad4 = sorted(
            (
                r
                for r in r4
                if abs(r - 1.0 / p.alpha) > 1e-6 and abs(r - p.alpha) > 1e-6
            ),
            key=lambda z: (abs(z), z.real),
        )
        assert len(quad3) == 2 and len(quad4) == 2, name
        worst_quad = max(
            worst_quad, max(abs(a - b) for a, b in zip(quad3, quad4))
        )
    assert worst_root < 1e-9
    assert worst_quad < 1e-9
    note(3, f"factor roots to {worst_root:.1e}, shared quadratic to {worst_quad:.1e}")


def test_criterion_04_existence_boundary():
    worst = 0.0
    slowest = 0.0
    for name in PRESET_NAMES:
        p = preset(name)  # the bisection overrides a_pi, so every preset works
        t0 = time.perf_counter()
        cut = existence_boundary(p, tol=1e-8)
        slowest = max(slowest, time.perf_counter() - t0)
        worst = max(worst, abs(cut - 1.0))
    assert worst < 1e-6
    assert slowest < 1.0
    # Rotemberg flips at 1.0 in the opposite direction
    lo, hi = 0.0, 3.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if rotemberg_exists(replace(BENCH, a_pi=mid)):
            hi = mid
        else:
            lo = mid
    assert 0.5 * (lo + hi) == pytest.approx(1.0, abs=1e-6)
    assert not rotemberg_exists(replace(BENCH, a_pi=0.99))
    assert rotemberg_exists(replace(BENCH, a_pi=1.01))
    note(4, f"Calvo cutoff 1.0 +/- {worst:.1e} (<= {slowest*1e3:.0f} ms/preset); "
            "Rotemberg flips the other way at 1.0")


def test_criterion_05_bifurcation_detector():
    p99 = validate(replace(BENCH, beta=0.99))
    zinss = scan(calvo_system(p99, pi_bar=0.0))
    assert zinss.reduced
    assert "psi" in zinss.constant_cancellations
    assert zinss.shared_roots[0][0].real == pytest.approx(1 / 0.66, abs=1e-9)
    wage = scan(wage_system(0.75, 0.99, theta_w=3.0))
    assert wage.reduced
    assert wage.shared_roots[0][0].real == pytest.approx(1 / (0.75 * 0.99), abs=1e-9)
    for pi in (-0.02, -0.01, 0.01, 0.02):
        assert not scan(calvo_system(p99, pi_bar=pi)).reduced, pi
    rng = np.random.default_rng(123)
    base = calvo_system(p99, pi_bar=0.0)
    false_positives = 0
    for _ in range(1000):
        eqs = []
        for eq in base.equations:
            eqs.append(
                {
                    var: tuple(
                        c * (1.0 + s * float(rng.uniform(1e-6, 1e-4)))
                        for c, s in zip(coeffs, rng.choice([-1.0, 1.0], len(coeffs)))
                    )
                    for var, coeffs in eq.items()
                }
            )
        if scan(LagPolySystem(equations=tuple(eqs), label="fuzz")).reduced:
            false_positives += 1
    assert false_positives == 0
    note(5, "ZINSS and wage blocks flagged, trend splits detected, "
            "0/1000 fuzz false positives")


def test_criterion_06_reduction_chain():
    worst_gt = 0.0
    for pi, beta, sigma in ((0.0, 0.99, 1.0), (0.02, 0.99, 1.0), (0.01, 0.95, 1.3)):
        p = validate(replace(BENCH, pi_bar=pi, beta=beta, sigma=sigma))
        cg = general_coeffs(p, MomentSet.degenerate(p))
        ct = trend_coeffs(p)
        worst_gt = max(
            worst_gt, max(abs(getattr(cg, f) - getattr(ct, f)) for f in COEFF_FIELDS)
        )
    assert worst_gt < 1e-10
    worst_tl = 0.0
    for name in PRESET_NAMES:
        p = preset(name)
        lim, trd = limit_coeffs(p), trend_coeffs(p)
        worst_tl = max(
            worst_tl, max(abs(getattr(lim, f) - getattr(trd, f)) for f in COEFF_FIELDS)
        )
    assert worst_tl < 1e-12
    note(6, f"general->trend gap {worst_gt:.1e}, trend->limit gap {worst_tl:.1e}")


def test_criterion_07_determinacy_oracle_equivalence():
    p0 = validate(replace(BENCH, beta=0.99))
    from calvobench.phillips import singular_slopes

    disagreements = skipped = 0
    for api in np.linspace(0.0, 2.0, 50):
        for ay in np.linspace(0.0, 2.5, 50):
            p = replace(p0, a_pi=float(api), a_y=float(ay))
            _, omega = singular_slopes(p)
            margin = p.a_pi + (1.0 - p.beta) * p.a_y / omega - 1.0
            if abs(margin) < 1e-6:
                skipped += 1
                continue
            if singular_determinacy(p) != singular_determinacy_q(p):
                disagreements += 1
    assert disagreements == 0
    note(7, f"2500-point grid: 0 disagreements ({skipped} boundary-band points)")


def test_criterion_08_singular_no_persistence():
    t0 = time.perf_counter()
    p = validate(replace(BENCH, a_pi=1.5))
    sol = solve_re(build_state_space(None, "singular", p))
    path = simulate(sol, ShockSpec(scale_psi=0.005, seed=8), 1_000_000)
    stats = persistence_stats(path, burn_in=1000)
    elapsed = time.perf_counter() - t0
    assert abs(stats["pi"]) < 0.01
    assert elapsed < 30.0
    note(8, f"singular variant autocorr {stats['pi']:+.4f} at T=1e6 "
            f"({elapsed:.1f}s); sqrt-persistence clause carried by the xfail")


@pytest.mark.xfail(
    strict=True,
    reason="the unobserved-natural-rate inflation solution is a static "
    "linear map of white-noise demand and AR(1) technology, so its lag-1 "
    "autocorrelation cannot exceed rho_a for any shock-variance mix; the "
    "square-root-of-rho_a target (0.5 and 0.9) is therefore unattainable "
    "(simulated values sit at rho_a itself when demand noise vanishes)",
)
@pytest.mark.parametrize("rho", [0.25, 0.81])
def test_criterion_08_unobserved_natural_rate_sqrt_claim(rho):
    p = validate(replace(BENCH, a_pi=1.5, rho_a=rho))
    sol = unobserved_natural_rate_system(p)
    path = simulate(sol, ShockSpec(scale_a=0.005, rho_a=rho, seed=8), 1_000_000)
    stats = persistence_stats(path, burn_in=1000)
    assert stats["pi"] == pytest.approx(math.sqrt(rho), abs=0.01)


def test_criterion_09_theorem2_sign_checks():
    t0 = time.perf_counter()
    p = validate(replace(BENCH, beta=0.99))
    spec = ShockSpec(scale_psi=0.005, scale_a=0.005, seed=42)
    res = stochastic_equilibrium(p, spec, T=40_000)
    assert res.converged and res.iterations <= 200
    rpt = theorem2_report(p, res, spec, T=200_000, n_batches=20)
    elapsed = time.perf_counter() - t0
    assert rpt.interest_below_nss
    assert rpt.dispersion_above_nss
    assert rpt.output_below_nss
    assert rpt.confident, rpt.margins
    assert elapsed < 120.0
    note(9, f"fixed point in {res.iterations} iterations; all three "
            f"inequalities at 95% confidence (t-ratios "
            f"{ {k: round(v, 1) for k, v in rpt.margins.items()} }) in {elapsed:.0f}s")


def test_criterion_10_rival_models():
    lp = LucasParams(eta=4.0, theta=1.0, v_z=1.0, v_m=1.0)
    assert lucas_slope(lp) == pytest.approx(1.0 / (4.0 * 2.0), abs=1e-12)
    assert rotemberg_slope(BENCH, 50.0) == pytest.approx(0.5, abs=1e-14)
    for M in (2, 3, 4, 8):
        assert taylor_phillips(M).mc_sum_exact() == Fraction(0)
    assert not observational_equivalence(BENCH, 50.0).equivalent
    note(10, "Lucas limit slope exact, headline Rotemberg 0.5, Taylor "
             "zero-sum exact, headline equivalence rejected")


def test_criterion_11_dispersion_reductions():
    c0, persist = linearization_coeffs(BENCH, 0.0)
    assert persist == pytest.approx(BENCH.alpha, abs=1e-14)
    h = 1e-7
    worst = 0.0
    for pi in np.linspace(-0.015, 0.06, 50):
        pi = float(pi)
        fd = (delta_nss(BENCH, pi + h) - delta_nss(BENCH, pi - h)) / (2 * h)
        worst = max(worst, abs(d_delta_dpi_nss(BENCH, pi) - fd))
    assert worst < 1e-6
    note(11, f"linearization persistence = alpha; dDelta/dpi matches "
             f"finite differences to {worst:.1e} on the 50-point grid")
