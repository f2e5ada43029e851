"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here, none deferred.
"""

import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from conftest import interior_extrema, match_locations, zero_crossings
from dunklfp import (HalfLineGrid, Kind, Parity, ParityFunction, Scheme,
                     Superpotential, bessel_j, bessel_j_signed,
                     build_sector_operator, decay_rate, eval_descriptor, evolve,
                     generate_table1, generate_table2, laguerre,
                     laguerre_coefficients, make_params,
                     oscillator_solution, residual_norm, weighted_rms,
                     half_line_rule, weighted_inner_product)
from dunklfp.cli import main
from dunklfp.verification import (check_anticommutation, check_spectral_match,
                                  check_square_closed_forms,
                                  check_specializations, check_stationary_state,
                                  rational_draws)

GOLDEN = Path(__file__).parent / "golden"
F = Fraction


def report(num: int, label: str, ok: bool, metric: str):
    print(f"ACCEPTANCE {num} {label}: {'PASS' if ok else 'FAIL'} ({metric})")
    assert ok, f"criterion {num} failed: {metric}"


def test_criterion_1_operator_identities():
    draws = rational_draws(50)
    start = time.perf_counter()
    anti = check_anticommutation(draws)
    squares = check_square_closed_forms(draws)
    elapsed = time.perf_counter() - start
    ok = anti.passed and squares.passed and elapsed < 1.0
    report(1, "operator identities (Eq.9, Eq.14-15)", ok,
           f"worst residual {max(anti.worst, squares.worst):.1e}, {elapsed:.2f}s")


def test_criterion_2_specializations():
    draws = rational_draws(50)
    start = time.perf_counter()
    result = check_specializations(draws)
    elapsed = time.perf_counter() - start
    ok = result.passed and elapsed < 1.0
    report(2, "specialization chain Yang/Dunkl/CH/TP", ok,
           f"worst residual {result.worst:.1e}, {elapsed:.2f}s")


def test_criterion_3_table1_reproduction(tmp_path):
    out = tmp_path / "table1.csv"
    code = main(["table", "1", "--out", str(out)])
    bytes_match = out.read_bytes() == (GOLDEN / "table1.csv").read_bytes()
    rows = generate_table1()
    content = [(int(r.even.order), int(r.odd.order), int(r.even.power)) for r in rows]
    expected = [(2, 1, 0), (7, 4, -1), (6, 3, -2)]
    ok = code == 0 and bytes_match and content == expected
    report(3, "table 1 byte-identical golden", ok,
           f"orders/powers {content}")


def test_criterion_4_table2_reproduction():
    alpha = F(9, 4)
    rows = generate_table2()
    recurrence_ok = all(
        coeff.value(alpha) == laguerre_coefficients(row.n, alpha)[j]
        for row in rows for j, coeff in enumerate(row.coefficients))
    printed = {
        0: [F(1)],
        1: [alpha + 1, F(-1)],
        3: [(alpha + 1) * (alpha + 2) * (alpha + 3) / 6,
            -(alpha + 2) * (alpha + 3) / 2,
            (alpha + 2) * (alpha + 3) / (2 * alpha + 4),
            -(alpha + 2) * (alpha + 3) / ((2 * alpha + 4) * (3 * alpha + 9))],
    }
    printed_ok = all([c.value(alpha) for c in rows[n].coefficients] == printed[n]
                     for n in (0, 1, 3))
    # row n=2: the reference shows +(alpha+2) x^2/beta; the recurrence says minus
    row2_flag = rows[2].coefficients[1].value(alpha) == -(alpha + 2)
    ok = recurrence_ok and printed_ok and row2_flag
    report(4, "table 2 rows vs printed forms + recurrence oracle", ok,
           "rows 0,1,3 printed forms exact; n=2 middle-sign typo flagged")


def test_criterion_5_spectrum():
    metrics = []
    ok = True
    for parity in (Parity.EVEN, Parity.ODD):
        start = time.perf_counter()
        result = check_spectral_match(parity, n=4000, xmax=12.0, k=4)
        elapsed = time.perf_counter() - start
        ok = ok and result.passed and elapsed < 30.0
        metrics.append(f"{parity.name.lower()} err {result.worst:.1e} in {elapsed:.1f}s")
    report(5, "spectra 4n(1-gamma) / 4n(1+gamma) at 0.5%", ok, "; ".join(metrics))


def test_criterion_6_residuals_and_convergence():
    import warnings
    from dunklfp import SigmaBoundWarning
    s = Superpotential.centrifugal(2.0)
    rels = {}
    for n in (1000, 2000, 4000):
        grid = HalfLineGrid(n, 12.0)
        values = []
        for row in generate_table1():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", SigmaBoundWarning)
                params = make_params(Kind.CH, row.sigma, row.mu)
            for parity, d in ((Parity.EVEN, row.even), (Parity.ODD, row.odd)):
                op = build_sector_operator(params, s, parity, grid)
                psi = ParityFunction(grid, parity, eval_descriptor(d, grid.nodes))
                values.append(residual_norm(op, psi, 4.0)
                              / weighted_rms(grid, 4.0 * psi.samples,
                                             op.weight_exponent))
        rels[n] = np.array(values)
    factors = np.concatenate([rels[1000] / rels[2000], rels[2000] / rels[4000]])
    ok = float(np.max(rels[4000])) < 1e-4 and float(np.min(factors)) >= 3.5
    report(6, "table 1 residuals + second-order convergence", ok,
           f"max rel residual {np.max(rels[4000]):.1e}, "
           f"min halving factor {np.min(factors):.2f}")


def test_criterion_7_evolution_decay_and_stationarity():
    params = make_params(Kind.TP, None, F(3, 5), F(13, 30))
    s = Superpotential.oscillator_centrifugal(4.3)
    grid = HalfLineGrid(4000, 12.0)
    op = build_sector_operator(params, s, Parity.EVEN, grid)
    d1 = oscillator_solution(Parity.EVEN, F(43, 10), params, 1)
    lam = float(d1.lam)
    psi = eval_descriptor(d1, grid.nodes)
    p0 = ParityFunction(grid, Parity.EVEN, psi / np.max(np.abs(psi)))
    dt = 0.01 / lam
    steps = 200                                   # covers t in [0, 2/lambda]
    traj = evolve(op, p0, dt, steps, Scheme.CRANK_NICOLSON, store_every=5)
    measured = decay_rate(traj, p0, weight_exponent=op.weight_exponent)
    decay_err = abs(measured - lam) / lam

    stationary = check_stationary_state()         # n=16000, dt=2e-6, 1000 steps
    ok = decay_err < 0.01 and stationary.passed
    report(7, "Crank-Nicolson decay + stationary mode", ok,
           f"decay rel err {decay_err:.2e}; {stationary.detail}")


def test_criterion_8_special_functions():
    worst_rec = 0.0
    for nu in range(1, 9):
        for x in (0.5, 1.0, 2.0, 5.0, 10.0):
            lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x)
            rhs = 2.0 * nu / x * bessel_j(nu, x)
            worst_rec = max(worst_rec, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    worst_orth = 0.0
    rule = half_line_rule(256)
    for alpha in (0.5, 2.0, 3.5):
        for n in range(7):
            for m in range(n + 1, 7):
                value, _ = weighted_inner_product(
                    lambda u: laguerre(n, alpha, u),
                    lambda u: laguerre(m, alpha, u),
                    lambda u: u**alpha * np.exp(-u), rule)
                worst_orth = max(worst_orth, abs(value))
    parity_ok = all(
        bessel_j_signed(m, -x) == (-1) ** m * bessel_j_signed(m, x)
        for m in range(9) for x in (0.7, 2.0, 5.5))
    ok = worst_rec < 1e-9 and worst_orth < 1e-8 and parity_ok
    report(8, "Bessel recurrence, Laguerre orthogonality, parity", ok,
           f"recurrence {worst_rec:.1e}, orthogonality {worst_orth:.1e}")


def test_criterion_9_figure_shape_stability(tmp_path):
    ok = True
    details = []
    for which in ("1a", "1b", "2a", "2b"):
        coarse_p = tmp_path / f"{which}_c.csv"
        fine_p = tmp_path / f"{which}_f.csv"
        main(["figure", which, "--points", "1000", "--out", str(coarse_p)])
        main(["figure", which, "--points", "2000", "--out", str(fine_p)])

        def load(path):
            lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
            return np.array([[float(v) for v in l.split(",")] for l in lines[1:]])

        coarse, fine = load(coarse_p), load(fine_p)
        h = 10.0 / 1000
        panel_ok = True
        for col in (1, 2, 3):
            wc = (coarse[:, 0] > 0.3) & (coarse[:, 0] < 9.7)
            wf = (fine[:, 0] > 0.3) & (fine[:, 0] < 9.7)
            cz = zero_crossings(coarse[wc, 0], coarse[wc, col])
            fz = zero_crossings(fine[wf, 0], fine[wf, col])
            ce = interior_extrema(coarse[wc, 0], coarse[wc, col])
            fe = interior_extrema(fine[wf, 0], fine[wf, col])
            panel_ok = panel_ok and match_locations(cz, fz, 2 * h) \
                and match_locations(ce, fe, 2 * h)
        details.append(f"{which}:{'ok' if panel_ok else 'UNSTABLE'}")
        ok = ok and panel_ok
    report(9, "figure curves stable under 2x refinement", ok, ", ".join(details))
