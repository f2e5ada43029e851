"""Machine-checkable property suites behind ``dunkl-fp verify``.

Each check returns a CheckResult with its worst residual; failures are data.
Operator-identity checks draw random *rational* parameters so that both
sides of every identity evaluate in exact arithmetic and the 1e-13
coefficient tolerance is decisive rather than rounding-limited.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional

import numpy as np

from .analytic import (centrifugal_admissible_mu, centrifugal_admissible_sigma,
                       descriptor_series, eval_descriptor, generate_table1,
                       generate_table2, oscillator_gamma_for_parity,
                       oscillator_solution)
from .core import (HALF, HalfLineGrid, Kind, Parity, ParityFunction,
                   SigmaBoundWarning, Superpotential, make_params)
from .numeric import (Scheme, build_sector_operator, decay_rate, evolve,
                      grid_inner_product, lowest_eigenpairs, residual_norm,
                      sector_coefficients, weighted_rms)
from .opalg import (LaurentPolynomial, apply_fp_operator, apply_reflection,
                    laurent_max_diff, verify_anticommutation,
                    verify_specialization, verify_square_closed_form,
                    verify_tp_rewrite)
from .specfun import laguerre_coefficients

MAX_DEGREE = 30
IDENTITY_TOL = 1e-13


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  [{self.detail}]" if self.detail else ""
        return f"{status}  {self.name:<42s} worst {self.worst:.3e}{tail}"


def _aggregate(name: str, reports) -> CheckResult:
    worst = max((r.worst for r in reports), default=0.0)
    bad = [r for r in reports if not r.passed]
    detail = "; ".join(f"{r.identity}: {len(r.violations)} violations" for r in bad)
    return CheckResult(name, not bad, worst, detail)


# ---------------------------------------------------------------------------
# Algebra suite
# ---------------------------------------------------------------------------

def rational_draws(count: int, seed: int = 2024) -> List[tuple]:
    """Random (sigma, mu, gamma) as small-denominator rationals in range."""
    rng = random.Random(seed)
    draws = []
    for _ in range(count):
        sigma = Fraction(rng.randint(-31, 256), 64)   # > -1/2
        mu = Fraction(rng.randint(-31, 256), 64)
        gamma = Fraction(rng.randint(-63, 63), 64)    # in (-1, 1)
        draws.append((sigma, mu, gamma))
    return draws


def _ch_params(sigma, mu):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SigmaBoundWarning)
        return make_params(Kind.CH, sigma, mu)


def _corrupted_tp_square(params, p: LaurentPolynomial) -> LaurentPolynomial:
    # Deliberate defect: reflection term of the TP closed-form square sign-flipped.
    out = {}
    gamma, eta = params.gamma, params.eta
    for k, c in p.terms.items():
        e = k + p.shift
        r = p.shift_sign if k % 2 == 0 else -p.shift_sign
        coeff = (1 - gamma**2) * (e * (e - 1) + 2 * eta * e - eta - eta * r)
        if coeff != 0:
            out[k - 2] = out.get(k - 2, 0) + coeff * c
    return LaurentPolynomial(out, p.shift, p.shift_sign)


def check_anticommutation(draws) -> CheckResult:
    reports = []
    for sigma, mu, gamma in draws:
        for params in (make_params(Kind.YANG, None, mu),
                       make_params(Kind.DUNKL, None, mu),
                       _ch_params(sigma, mu),
                       make_params(Kind.TP, None, mu, gamma)):
            reports.append(verify_anticommutation(params, MAX_DEGREE, IDENTITY_TOL))
    return _aggregate("anticommutation R D = -D R", reports)


def check_square_closed_forms(draws, corrupt_tp: bool = False) -> CheckResult:
    reports = []
    for sigma, mu, gamma in draws:
        reports.append(verify_square_closed_form(_ch_params(sigma, mu),
                                                 MAX_DEGREE, IDENTITY_TOL))
        tp = make_params(Kind.TP, None, mu, gamma)
        if corrupt_tp:
            reports.append(verify_square_closed_form(
                tp, MAX_DEGREE, IDENTITY_TOL, closed_form=_corrupted_tp_square))
        else:
            reports.append(verify_square_closed_form(tp, MAX_DEGREE, IDENTITY_TOL))
    return _aggregate("square closed forms (CH, TP)", reports)


def check_tp_rewrite(draws) -> CheckResult:
    reports = [verify_tp_rewrite(make_params(Kind.TP, None, mu, gamma),
                                 MAX_DEGREE, IDENTITY_TOL)
               for _, mu, gamma in draws]
    return _aggregate("TP eta-form rewrite", reports)


def check_specializations(draws) -> CheckResult:
    reports = []
    for _, mu, _ in draws:
        yang = make_params(Kind.YANG, None, mu)
        dunkl = make_params(Kind.DUNKL, None, mu)
        reports.append(verify_specialization(_ch_params(Fraction(0), mu), yang,
                                             MAX_DEGREE, IDENTITY_TOL,
                                             label="CH(sigma=0) = Yang"))
        reports.append(verify_specialization(_ch_params(mu, mu), dunkl,
                                             MAX_DEGREE, IDENTITY_TOL,
                                             label="CH(sigma=mu) = Dunkl"))
        reports.append(verify_specialization(make_params(Kind.TP, None, mu, Fraction(0)),
                                             dunkl, MAX_DEGREE, IDENTITY_TOL,
                                             label="TP(gamma=0) = Dunkl"))
    return _aggregate("specialization chain", reports)


def check_product_parity(seed: int = 11) -> CheckResult:
    """R(w p) = (R w)(R p) for the centrifugal w and random Laurent p."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(20):
        a = Fraction(rng.randint(-40, 40), 8)
        w = LaurentPolynomial.monomial(-1, a)
        p = LaurentPolynomial({rng.randint(-10, 10): Fraction(rng.randint(-50, 50), 4)
                               for _ in range(6)})
        worst = max(worst, laurent_max_diff(apply_reflection(w * p),
                                            apply_reflection(w) * apply_reflection(p)))
    return CheckResult("product parity R(w psi) = (Rw)(R psi)", worst <= IDENTITY_TOL, worst)


def check_fp_series_residual(n_terms: int = 12) -> CheckResult:
    """Truncated Bessel series satisfy the exact FP operator to the last order.

    L(series) - lambda*series must reduce to the single unbalanced top term
    -lambda * c_{N-1} x^(p + m + 2N - 2); with rational data the match is exact.
    """
    s = Superpotential.centrifugal(Fraction(2))
    worst = 0.0
    ok = True
    for row in generate_table1():
        for parity, d in ((Parity.EVEN, row.even), (Parity.ODD, row.odd)):
            params = _ch_params(row.sigma, row.mu)
            series = descriptor_series(d, n_terms)
            resid = apply_fp_operator(params, s, series) - series.scale(Fraction(4))
            top_k = max(series.terms)        # exponent p+m+2(N-1)
            expected = LaurentPolynomial.monomial(top_k, -Fraction(4) * series.terms[top_k])
            gap = laurent_max_diff(resid, expected)
            worst = max(worst, gap)
            ok = ok and gap <= IDENTITY_TOL
    return CheckResult("FP operator on truncated Bessel series", ok, worst)


def algebra_checks(draws_count: int = 50, seed: int = 2024,
                   corrupt_tp_square: bool = False) -> List[CheckResult]:
    draws = rational_draws(draws_count, seed)
    return [check_anticommutation(draws),
            check_square_closed_forms(draws, corrupt_tp=corrupt_tp_square),
            check_tp_rewrite(draws),
            check_specializations(draws),
            check_product_parity(),
            check_fp_series_residual()]


# ---------------------------------------------------------------------------
# Analytic suite
# ---------------------------------------------------------------------------

def check_table1() -> CheckResult:
    rows = generate_table1()
    expected = (((2, 0), (1, 0)), ((7, -1), (4, -1)), ((6, -2), (3, -2)))
    ok = True
    for row, (even_om, odd_om) in zip(rows, expected):
        for d, (order, power) in ((row.even, even_om), (row.odd, odd_om)):
            ok = ok and d.admissible and d.order == order and d.power == power
    return CheckResult("table 1 orders and powers", ok, 0.0)


def check_table2() -> CheckResult:
    """Rows follow the standard Laguerre recurrence; the printed middle term
    of row n=2 differs by exactly one sign (suspected typo, flagged)."""
    alpha = Fraction(7, 2)
    worst = 0.0
    for row in generate_table2():
        recurrence = laguerre_coefficients(row.n, alpha)
        for j, coeff in enumerate(row.coefficients):
            worst = max(worst, abs(float(coeff.value(alpha) - recurrence[j])))
    row2_mid = generate_table2()[2].coefficients[1].value(alpha)
    printed_row2_mid = alpha + 2          # reference table shows a plus sign
    flagged = row2_mid == -printed_row2_mid
    return CheckResult("table 2 standard-Laguerre rows", worst <= IDENTITY_TOL and flagged,
                       worst, "row n=2 middle-term sign difference flagged")


def check_admissible_parameters() -> CheckResult:
    ok = centrifugal_admissible_mu(Parity.EVEN, 2, 4) == [HALF, Fraction(3, 2),
                                                          Fraction(5, 2), Fraction(7, 2)]
    ok = ok and centrifugal_admissible_sigma(2, 0, 3) == [Fraction(5, 2),
                                                          Fraction(3, 2), HALF]
    ok = ok and centrifugal_admissible_sigma(2, 1, 4) == [Fraction(7, 2), Fraction(5, 2),
                                                          Fraction(3, 2), HALF]
    return CheckResult("admissible mu/sigma lists (a=2)", ok, 0.0)


def check_quantized_gammas() -> CheckResult:
    a, mu = Fraction(43, 10), Fraction(3, 5)
    ge = oscillator_gamma_for_parity(Parity.EVEN, a, None, 3)
    go = oscillator_gamma_for_parity(Parity.ODD, a, mu, 2)
    ok = ge == Fraction(13, 30) and go == Fraction(-12, 25)
    params_e = make_params(Kind.TP, None, mu, ge)
    params_o = make_params(Kind.TP, None, mu, go)
    de = oscillator_solution(Parity.EVEN, a, params_e, 0)
    do = oscillator_solution(Parity.ODD, a, params_o, 0)
    ok = ok and de.power == 6 and de.alpha == Fraction(121, 34) and de.admissible
    ok = ok and do.power == 5 and do.alpha == 2 and do.admissible
    return CheckResult("quantized gammas and alphas (a=4.3)", ok, 0.0,
                       "alpha_e = 121/34, alpha_o = 2 exactly")


def _sample_descriptors():
    rows = generate_table1()
    ds = [r.even for r in rows] + [r.odd for r in rows]
    for parity, gamma, m in ((Parity.EVEN, Fraction(13, 30), 3),
                             (Parity.ODD, Fraction(-12, 25), 2)):
        params = make_params(Kind.TP, None, Fraction(3, 5), gamma)
        ds += [oscillator_solution(parity, Fraction(43, 10), params, n)
               for n in range(3)]
    return ds


def check_descriptor_parity(n_points: int = 1000) -> CheckResult:
    x = np.linspace(0.013, 9.2, n_points)
    worst = 0.0
    for d in _sample_descriptors():
        plus = eval_descriptor(d, x)
        minus = eval_descriptor(d, -x)
        scale = np.max(np.abs(plus)) or 1.0
        worst = max(worst, float(np.max(np.abs(minus - d.parity.sign * plus))) / scale)
    return CheckResult("descriptor parity extension", worst <= 1e-12, worst)


def check_regularity_at_origin() -> CheckResult:
    x = 1e-6
    worst = 0.0
    ok = True
    for row in generate_table1():
        for d in (row.even, row.odd):
            lead = int(d.power) + int(d.order)
            bound = 2.0 * abs(d.amplitude) * float(d.scale / 2) ** int(d.order) \
                / math.factorial(int(d.order)) * x ** lead
            value = abs(eval_descriptor(d, x))
            ok = ok and value <= bound and math.isfinite(value)
            worst = max(worst, value)
    return CheckResult("regularity as x -> 0+", ok, worst)


def check_spectrum_nonnegative(seed: int = 5) -> CheckResult:
    rng = random.Random(seed)
    ok = True
    for _ in range(40):
        mu = Fraction(rng.randint(-31, 128), 64)
        gamma = Fraction(rng.randint(-63, 63), 64)
        a = Fraction(rng.randint(1, 120), 16)
        if a == 1:
            continue
        params = make_params(Kind.TP, None, mu, gamma)
        for parity in (Parity.EVEN, Parity.ODD):
            try:
                d = oscillator_solution(parity, a, params, rng.randint(0, 6))
            except Exception:
                continue
            ok = ok and d.lam >= 0
    return CheckResult("oscillator spectrum lambda >= 0", ok, 0.0)


def check_gamma_zero_reduction() -> CheckResult:
    """gamma = 0 collapses the TP formulas to the standard-Dunkl limit."""
    a, mu = Fraction(7, 2), Fraction(3, 4)
    params = make_params(Kind.TP, None, mu, Fraction(0))
    ok = True
    for n in range(4):
        de = oscillator_solution(Parity.EVEN, a, params, n)
        do = oscillator_solution(Parity.ODD, a, params, n)
        ok = ok and de.alpha == mu - HALF + a and de.lam == 4 * n
        ok = ok and do.alpha == a - mu - HALF and do.lam == 4 * n
    return CheckResult("gamma = 0 reduction of oscillator formulas", ok, 0.0)


def analytic_checks() -> List[CheckResult]:
    return [check_table1(),
            check_table2(),
            check_admissible_parameters(),
            check_quantized_gammas(),
            check_descriptor_parity(),
            check_regularity_at_origin(),
            check_spectrum_nonnegative(),
            check_gamma_zero_reduction()]


# ---------------------------------------------------------------------------
# Numeric suite
# ---------------------------------------------------------------------------

OSC_A = Fraction(43, 10)
OSC_MU = Fraction(3, 5)


def _tp_operator(parity: Parity, grid: HalfLineGrid):
    gamma = Fraction(13, 30) if parity is Parity.EVEN else Fraction(-12, 25)
    params = make_params(Kind.TP, None, OSC_MU, gamma)
    s = Superpotential.oscillator_centrifugal(float(OSC_A))
    return build_sector_operator(params, s, parity, grid), params


def _table1_residual(n: int, xmax: float) -> List[float]:
    grid = HalfLineGrid(n, xmax)
    s = Superpotential.centrifugal(2.0)
    out = []
    for row in generate_table1():
        params = _ch_params(row.sigma, row.mu)
        for parity, d in ((Parity.EVEN, row.even), (Parity.ODD, row.odd)):
            op = build_sector_operator(params, s, parity, grid)
            psi = ParityFunction(grid, parity, eval_descriptor(d, grid.nodes))
            denom = weighted_rms(grid, 4.0 * psi.samples, op.weight_exponent)
            out.append(residual_norm(op, psi, 4.0) / denom)
    return out


def check_table1_residuals(n: int = 4000, xmax: float = 12.0) -> CheckResult:
    rel = _table1_residual(n, xmax)
    worst = max(rel)
    return CheckResult(f"table 1 residuals at n={n}", worst < 1e-4, worst)


def check_residual_convergence(n: int = 4000, xmax: float = 12.0) -> CheckResult:
    """Residuals of exact eigenpairs drop >= 3.5x per grid halving."""
    seq = [np.array(_table1_residual(m, xmax)) for m in (n // 4, n // 2, n)]
    factors = [seq[0] / seq[1], seq[1] / seq[2]]
    worst = float(min(np.min(f) for f in factors))
    return CheckResult("second-order residual convergence", worst >= 3.5, worst,
                       "worst halving factor (>= 3.5 required)")


def check_spectral_match(parity: Parity, n: int = 4000, xmax: float = 12.0,
                         k: int = 4) -> CheckResult:
    grid = HalfLineGrid(n, xmax)
    op, params = _tp_operator(parity, grid)
    spacing = 4.0 * (1.0 - float(params.gamma)) if parity is Parity.EVEN \
        else 4.0 * (1.0 + float(params.gamma))
    pairs = lowest_eigenpairs(op, k)
    lam0 = abs(pairs[0][0])
    worst = lam0 / spacing
    ok = lam0 < 1e-3 * spacing
    for j in range(1, k):
        rel = abs(pairs[j][0] - j * spacing) / (j * spacing)
        worst = max(worst, rel)
        ok = ok and rel < 5e-3
    name = f"spectrum 4n(1{'-' if parity is Parity.EVEN else '+'}gamma), {parity.name.lower()}"
    return CheckResult(name, ok, worst, "max relative eigenvalue error")


def check_eigenvector_match(n: int = 4000, xmax: float = 12.0) -> CheckResult:
    grid = HalfLineGrid(n, xmax)
    op, params = _tp_operator(Parity.EVEN, grid)
    pairs = lowest_eigenpairs(op, 2)
    d = oscillator_solution(Parity.EVEN, OSC_A, params, 1)
    target = eval_descriptor(d, grid.nodes)
    w = op.weights
    vec = pairs[1][1].samples
    target = target / math.sqrt(float(np.sum(w * target * target)))
    if float(np.sum(w * target * vec)) < 0:
        vec = -vec
    err = math.sqrt(float(np.sum(w * (vec - target) ** 2) / np.sum(w * target * target)))
    return CheckResult("eigenvector matches closed form (n=1 even)", err < 1e-3, err)


def check_decay_rate(n: int = 4000, xmax: float = 12.0) -> CheckResult:
    grid = HalfLineGrid(n, xmax)
    op, params = _tp_operator(Parity.EVEN, grid)
    d1 = oscillator_solution(Parity.EVEN, OSC_A, params, 1)
    lam = float(d1.lam)
    psi = eval_descriptor(d1, grid.nodes)
    p0 = ParityFunction(grid, Parity.EVEN, psi / np.max(np.abs(psi)))
    dt = 0.01 / lam
    steps = int(math.ceil((2.0 / lam) / dt / 10.0)) * 10
    traj = evolve(op, p0, dt, steps, Scheme.CRANK_NICOLSON, store_every=steps // 40)
    measured = decay_rate(traj, p0, weight_exponent=op.weight_exponent)
    rel = abs(measured - lam) / lam
    return CheckResult("Crank-Nicolson decay rate (n=1 even)", rel < 0.01, rel,
                       f"measured {measured:.6g} vs analytic {lam:.6g}")


def _drift(traj) -> float:
    ref = traj.states[0].samples
    scale = float(np.max(np.abs(ref)))
    return max(float(np.max(np.abs(st.samples - ref))) / scale
               for st in traj.states[1:])


def check_stationary_state(n: int = 16000, xmax: float = 8.0, dt: float = 2e-6,
                           steps: int = 1000) -> CheckResult:
    """The lambda = 0 mode stays put and its weighted mass is conserved."""
    grid = HalfLineGrid(n, xmax)
    op, params = _tp_operator(Parity.EVEN, grid)
    d0 = oscillator_solution(Parity.EVEN, OSC_A, params, 0)
    psi = eval_descriptor(d0, grid.nodes)
    p0 = ParityFunction(grid, Parity.EVEN, psi / np.max(np.abs(psi)))
    traj = evolve(op, p0, dt, steps, Scheme.CRANK_NICOLSON, store_every=steps // 10)
    drift = _drift(traj)
    eta = op.weight_exponent
    ones = np.ones(n)
    masses = [grid_inner_product(grid, st.samples, ones, eta) for st in traj.states]
    mass_drift = max(abs(m - masses[0]) / abs(masses[0]) for m in masses[1:])
    worst = max(drift, mass_drift)
    return CheckResult("stationary mode drift and mass", worst < 1e-8, worst,
                       f"state drift {drift:.2e}, mass drift {mass_drift:.2e}")


def check_classical_limit(n: int = 12000, xmax: float = 6.0, dt: float = 2e-6,
                          steps: int = 1000) -> CheckResult:
    """sigma = mu = gamma = 0, w = -x: the Gaussian e^{-x^2} is preserved."""
    params = make_params(Kind.DUNKL, None, 0.0)
    s = Superpotential.oscillator_centrifugal(0.0)
    grid = HalfLineGrid(n, xmax)
    op = build_sector_operator(params, s, Parity.EVEN, grid)
    p0 = ParityFunction(grid, Parity.EVEN, np.exp(-grid.nodes**2))
    traj = evolve(op, p0, dt, steps, Scheme.CRANK_NICOLSON, store_every=steps // 10)
    drift = _drift(traj)
    return CheckResult("classical Gaussian stationarity", drift < 1e-8, drift)


def check_classical_assembly(n: int = 500, xmax: float = 6.0) -> CheckResult:
    """At sigma = mu = gamma = 0 the sector coefficients are the classical
    FP ones: -psi'' + 2w psi' + 2w' psi (drift 2w, unit diffusion)."""
    grid = HalfLineGrid(n, xmax)
    x = grid.nodes
    s = Superpotential.centrifugal(0.7)
    worst = 0.0
    for params in (make_params(Kind.DUNKL, None, 0.0),
                   make_params(Kind.TP, None, 0.0, 0.0)):
        a2, b, c = sector_coefficients(params, s, Parity.EVEN, x)
        w = 0.7 / x
        worst = max(worst,
                    abs(a2 + 1.0),
                    float(np.max(np.abs(b - 2.0 * w))),
                    float(np.max(np.abs(c - 2.0 * (-0.7 / x**2)))))
    return CheckResult("classical-limit assembly", worst <= 1e-14, worst)


def numeric_checks(n: int = 4000, xmax: float = 12.0) -> List[CheckResult]:
    return [check_classical_assembly(),
            check_table1_residuals(n, xmax),
            check_residual_convergence(n, xmax),
            check_spectral_match(Parity.EVEN, n, xmax),
            check_spectral_match(Parity.ODD, n, xmax),
            check_eigenvector_match(n, xmax),
            check_decay_rate(n, xmax),
            check_stationary_state(),
            check_classical_limit()]


# ---------------------------------------------------------------------------
# Suite runner
# ---------------------------------------------------------------------------

def run_suite(suite: str, grid_n: int = 4000, xmax: float = 12.0,
              inject_defect: Optional[str] = None,
              emit: Callable[[str], None] = print) -> bool:
    """Run one named suite (or 'all'), print one line per check, return success."""
    corrupt = inject_defect == "tp-square-sign"
    suites = {
        "algebra": lambda: algebra_checks(corrupt_tp_square=corrupt),
        "analytic": analytic_checks,
        "numeric": lambda: numeric_checks(grid_n, xmax),
    }
    if suite != "all" and suite not in suites:
        raise ValueError(f"unknown suite {suite!r}")
    names = list(suites) if suite == "all" else [suite]
    all_ok = True
    for name in names:
        emit(f"== suite {name}")
        for result in suites[name]():
            emit(result.line())
            all_ok = all_ok and result.passed
    return all_ok
