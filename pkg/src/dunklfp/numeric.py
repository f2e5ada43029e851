"""Parity-sector discretization, spectra and time evolution.

Substituting R psi = +/- psi and R w = -w reduces each generalized
Fokker-Planck operator to a scalar ODE operator per parity sector,

    CH:  L = -psi'' + (2w - 2 sigma/x) psi'
             + [2w' + 2(sigma + eps*mu) w/x - (sigma^2 - mu^2 - sigma + eps*mu)/x^2] psi
    TP:  L = -(1-gamma^2) psi'' + [2(1 - gamma*eps) w - 2(1-gamma^2) eta/x] psi'
             + [(1-gamma^2)(1-eps) eta/x^2 + 2(1 - gamma*eps) w'
                + 2(1+eps)(1-gamma) eta w/x] psi,

discretized with second-order central differences on the staggered
half-line grid; the inner boundary closes with the parity ghost
psi(-h/2) = eps * psi(h/2) and the outer one with homogeneous Dirichlet.

The operator is non-self-adjoint in this raw form.  Eigenvalues come from
shift-invert inverse iteration on the tridiagonal matrix with Gram-Schmidt
deflation under the weighted inner product; shifts are seeded at the
analytic spacing 4n(1 -/+ gamma) when the TP spectrum applies.  On odd
sectors the attractive 1/x^2 coefficient also puts unphysical negative
eigenvalues into the matrix (a near-origin mode at O(-1/h^2) plus
weighted-norm-infinite branch modes); candidates converging below zero are
rejected and deflated away, since the physical spectrum is nonnegative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import solve_banded

from .core import (ConvergenceError, DunklParams, Family, FamilyError,
                   HalfLineGrid, Kind, Parity, ParityFunction, ParityMismatch,
                   RangeError, SignalError, SolveError, SpectrumError,
                   Superpotential)

_RESIDUAL_INNER_BUFFER = 2   # first nodes: low-power modes behave like x^p, p < 1
_RESIDUAL_OUTER_BUFFER = 5   # last nodes: Dirichlet truncation dominates


class Scheme(enum.Enum):
    BACKWARD_EULER = "backward_euler"
    CRANK_NICOLSON = "crank_nicolson"


@dataclass(frozen=True)
class SectorOperator:
    """Tridiagonal discretization of one parity-restricted FP operator."""

    grid: HalfLineGrid
    parity: Parity
    params: DunklParams
    superpotential: Superpotential
    sub: np.ndarray    # coefficient of psi_{i-1}; entry 0 unused
    diag: np.ndarray
    sup: np.ndarray    # coefficient of psi_{i+1}; last entry unused

    @property
    def weight_exponent(self) -> float:
        """Exponent e of the sector measure |x|^{2e}: sigma, or eta for TP."""
        if self.params.kind is Kind.TP:
            return float(self.params.eta)
        return float(self.params.sigma)

    @property
    def weights(self) -> np.ndarray:
        return self.grid.nodes ** (2.0 * self.weight_exponent)

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[1:] += self.sub[1:] * v[:-1]
        out[:-1] += self.sup[:-1] * v[1:]
        return out

    def banded(self, shift: float = 0.0, scale: float = 1.0) -> np.ndarray:
        """LAPACK band storage of scale * L + shift * I for solve_banded."""
        n = self.grid.n
        ab = np.zeros((3, n))
        ab[0, 1:] = scale * self.sup[:-1]
        ab[1] = scale * self.diag + shift
        ab[2, :-1] = scale * self.sub[1:]
        return ab

    def dense(self) -> np.ndarray:
        n = self.grid.n
        m = np.diag(self.diag)
        m += np.diag(self.sub[1:], -1)
        m += np.diag(self.sup[:-1], 1)
        return m


def sector_coefficients(params: DunklParams, s: Superpotential, parity: Parity,
                        x: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    """(a2, b, c) of the scalar sector operator a2 psi'' + b psi' + c psi."""
    eps = parity.sign
    w = np.asarray(s.w(x), dtype=float)
    wp = np.asarray(s.w_prime(x), dtype=float)
    if params.kind is Kind.TP:
        gamma, eta = float(params.gamma), float(params.eta)
        a2 = -(1.0 - gamma**2)
        b = 2.0 * (1.0 - gamma * eps) * w - 2.0 * (1.0 - gamma**2) * eta / x
        c = ((1.0 - gamma**2) * (1.0 - eps) * eta / x**2
             + 2.0 * (1.0 - gamma * eps) * wp
             + 2.0 * (1.0 + eps) * (1.0 - gamma) * eta * w / x)
    else:
        sig, mu = float(params.sigma), float(params.mu)
        a2 = -1.0
        b = 2.0 * w - 2.0 * sig / x
        c = (-(sig**2 - mu**2 - sig + eps * mu) / x**2
             + 2.0 * wp + 2.0 * (sig + eps * mu) * w / x)
    return a2, b, c


def build_sector_operator(params: DunklParams, s: Superpotential,
                          parity: Parity, grid: HalfLineGrid) -> SectorOperator:
    """Assemble the tridiagonal sector operator on the staggered grid."""
    x = grid.nodes
    h = grid.h
    a2, b, c = sector_coefficients(params, s, parity, x)
    sub = a2 / h**2 - b / (2.0 * h)
    diag = -2.0 * a2 / h**2 + c
    sup = a2 / h**2 + b / (2.0 * h)
    diag = diag.copy()
    diag[0] += parity.sign * sub[0]    # ghost psi(-h/2) = eps psi(h/2)
    return SectorOperator(grid, parity, params, s, sub, diag, sup)


# ---------------------------------------------------------------------------
# Residuals and weighted norms
# ---------------------------------------------------------------------------

def weighted_rms(grid: HalfLineGrid, values: np.ndarray, exponent: float,
                 inner_buffer: int = _RESIDUAL_INNER_BUFFER,
                 outer_buffer: int = _RESIDUAL_OUTER_BUFFER) -> float:
    """Root-mean-square under the |x|^{2 exponent} measure, buffers excluded."""
    sel = slice(inner_buffer, grid.n - outer_buffer)
    w = grid.nodes[sel] ** (2.0 * exponent)
    v = np.asarray(values, dtype=float)[sel]
    return math.sqrt(float(np.sum(w * v * v) / np.sum(w)))


def _check_compatible(op: SectorOperator, psi: ParityFunction):
    if psi.parity is not op.parity:
        raise ParityMismatch(
            f"operator parity {op.parity.name} but function parity {psi.parity.name}")
    if psi.grid != op.grid:
        raise ParityMismatch("sampled function lives on a different grid")


def residual_norm(op: SectorOperator, psi: ParityFunction, lam: float,
                  inner_buffer: int = _RESIDUAL_INNER_BUFFER,
                  outer_buffer: int = _RESIDUAL_OUTER_BUFFER) -> float:
    """Weighted RMS of (L psi - lambda psi) over buffered interior nodes."""
    _check_compatible(op, psi)
    r = op.apply(psi.samples) - lam * psi.samples
    return weighted_rms(op.grid, r, op.weight_exponent, inner_buffer, outer_buffer)


def grid_inner_product(grid: HalfLineGrid, f: np.ndarray, g: np.ndarray,
                       exponent: float = 0.0) -> float:
    """Midpoint-rule half-line inner product with weight |x|^{2 exponent}."""
    w = grid.nodes ** (2.0 * exponent) if exponent else 1.0
    return float(grid.h * np.sum(w * np.asarray(f) * np.asarray(g)))


# ---------------------------------------------------------------------------
# Eigenpairs by shift-invert iteration
# ---------------------------------------------------------------------------

def _analytic_spacing(op: SectorOperator) -> Optional[float]:
    if op.params.kind is Kind.TP:
        gamma = float(op.params.gamma)
        return 4.0 * (1.0 - gamma) if op.parity is Parity.EVEN else 4.0 * (1.0 + gamma)
    return None


def _solve_shifted(op: SectorOperator, shift: float, v: np.ndarray) -> np.ndarray:
    try:
        return solve_banded((1, 1), op.banded(shift=-shift), v)
    except np.linalg.LinAlgError as exc:
        raise SolveError(f"singular shifted system at shift {shift:g}") from exc


def _deflate(v: np.ndarray, basis: Sequence[np.ndarray], w: np.ndarray) -> np.ndarray:
    for u in basis:
        v = v - np.sum(w * u * v) / np.sum(w * u * u) * u
    return v


def lowest_eigenpairs(op: SectorOperator, k: int, tol: float = 1e-10,
                      max_iter: int = 500) -> List[Tuple[float, ParityFunction]]:
    """The k lowest physical eigenpairs, eigenvectors at unit weighted norm.

    Shifts are seeded at the analytic spectrum for TP parameters and walked
    upward from zero otherwise.  Iteration stops when the Rayleigh quotient
    changes by less than ``tol`` relative; candidates converging to negative
    eigenvalues (unphysical for this operator) are deflated and retried.
    """
    if op.superpotential.family is not Family.OSCILLATOR_CENTRIFUGAL:
        raise FamilyError("the centrifugal family has a continuous spectrum; "
                          "use residual verification instead")
    if k < 1:
        raise RangeError("k must be at least 1")
    n = op.grid.n
    if k > n // 4:
        raise SpectrumError(f"{k} modes cannot be resolved on {n} nodes")

    spacing = _analytic_spacing(op)
    scale = spacing if spacing else 4.0
    if spacing is not None and (k - 1) * spacing > 0:
        # Dirichlet truncation must sit below discretization error: demand the
        # Gaussian factor of the top requested mode to be negligible at xmax.
        beta = float(1 + op.params.gamma) if op.parity is Parity.EVEN \
            else float(1 - op.params.gamma)
        if math.exp(-op.grid.xmax**2 / beta) > 1e-10:
            raise SpectrumError("xmax too small for the requested modes")

    weights = op.weights
    rng = np.random.default_rng(176)
    found: List[Tuple[float, np.ndarray]] = []
    deflation: List[np.ndarray] = []

    def iterate(shift: float, v: np.ndarray, deflate: bool) -> Tuple[float, np.ndarray]:
        theta_old = math.inf
        for _ in range(max_iter):
            v = _solve_shifted(op, shift, v)
            if deflate:
                v = _deflate(v, deflation, weights)
            norm = math.sqrt(float(np.sum(weights * v * v)))
            if norm == 0.0 or not math.isfinite(norm):
                raise ConvergenceError("iteration vector collapsed")
            v = v / norm
            theta = float(np.sum(weights * v * op.apply(v)))
            if abs(theta - theta_old) <= tol * max(1.0, abs(theta)):
                return theta, v
            theta_old = theta
        raise ConvergenceError(f"eigenvalue iteration stalled at shift {shift:g}")

    def is_duplicate(theta: float) -> bool:
        return any(abs(theta - prev) <= 1e-6 * max(1.0, abs(theta), scale)
                   for prev, _ in found)

    for j in range(k):
        if spacing is not None:
            shift = j * spacing - 0.02 * spacing
        elif not found:
            shift = -0.02 * scale     # physical spectrum is nonnegative
        else:
            # walk upward by the last observed gap (half a scale to start)
            gap = found[-1][0] - found[-2][0] if len(found) >= 2 else 0.5 * scale
            shift = found[-1][0] + gap
        attempts = 0
        while True:
            # Locate the mode with the deflated iteration (robust against
            # re-converging onto modes already found), then strip projection
            # pollution by plain inverse iteration at a fixed shift: the
            # projection is not invariant for this non-self-adjoint operator,
            # so the deflated fixed point is contaminated, while the shift is
            # closest to the wanted eigenvalue by construction of the seeds.
            theta, v = iterate(shift, rng.standard_normal(n), deflate=True)
            refine_shift = shift if spacing is not None else theta
            theta, v = iterate(refine_shift, v, deflate=False)
            if theta < -0.05 * scale:
                # Unphysical negative mode: remove it from play, retry nearby.
                deflation.append(v.copy())
                shift += 0.05 * scale
            elif is_duplicate(theta):
                shift = found[-1][0] + 1.7 * (shift - found[-1][0])
            else:
                break
            attempts += 1
            if attempts > 8:
                raise ConvergenceError(
                    f"no new eigenvalue found near shift {shift:g}")
        deflation.append(v.copy())
        found.append((theta, v.copy()))

    found.sort(key=lambda pair: pair[0])
    return [(lam, ParityFunction(op.grid, op.parity, vec))
            for lam, vec in found]


# ---------------------------------------------------------------------------
# Time evolution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trajectory:
    """Stored states of one evolution run; times uniformly spaced by dt."""

    times: np.ndarray
    states: Tuple[ParityFunction, ...]
    dt: float
    scheme: Scheme

    def write_csv(self, path: str):
        """Row-major (time, then node) CSV with header t,x,value."""
        grid = self.states[0].grid
        with open(path, "w", newline="\n") as fh:
            fh.write("t,x,value\n")
            for t, state in zip(self.times, self.states):
                for x, v in zip(grid.nodes, state.samples):
                    fh.write(f"{t:.12g},{x:.12g},{v:.12g}\n")


def evolve(op: SectorOperator, p0: ParityFunction, dt: float, steps: int,
           scheme: Scheme = Scheme.CRANK_NICOLSON,
           store_every: int = 1) -> Trajectory:
    """March dP/dt = -L P from p0 with an implicit one-step scheme.

    Backward Euler solves (I + dt L) P+ = P; Crank-Nicolson solves
    (I + dt/2 L) P+ = (I - dt/2 L) P.  ``store_every`` thins the stored
    states (the returned Trajectory.dt is the stored spacing).
    """
    if dt <= 0:
        raise RangeError(f"dt must be positive, got {dt}")
    if steps < 1 or steps % store_every:
        raise RangeError("steps must be a positive multiple of store_every")
    _check_compatible(op, p0)
    if scheme is Scheme.BACKWARD_EULER:
        lhs = op.banded(shift=1.0, scale=dt)
        rhs_apply = None
    else:
        lhs = op.banded(shift=1.0, scale=0.5 * dt)
        rhs_apply = lambda v: v - 0.5 * dt * op.apply(v)

    v = p0.samples.copy()
    times = [0.0]
    states = [ParityFunction(op.grid, op.parity, v.copy())]
    for step in range(1, steps + 1):
        rhs = v if rhs_apply is None else rhs_apply(v)
        try:
            v = solve_banded((1, 1), lhs, rhs)
        except np.linalg.LinAlgError as exc:
            raise SolveError(f"singular implicit system at step {step}") from exc
        if not np.all(np.isfinite(v)):
            raise SolveError(f"non-finite state at step {step}")
        if step % store_every == 0:
            times.append(step * dt)
            states.append(ParityFunction(op.grid, op.parity, v.copy()))
    return Trajectory(np.asarray(times), tuple(states), dt * store_every, scheme)


def decay_rate(traj: Trajectory, probe: ParityFunction,
               weight_exponent: float = 0.0, floor: float = 1e-12) -> float:
    """Decay rate lambda from the slope of log |<probe, P(t)>| versus t.

    An eigenmode trajectory decays as e^{-lambda t} in any fixed inner
    product, so the weight only matters for mixed states.
    """
    grid = traj.states[0].grid
    overlaps = np.array([grid_inner_product(grid, probe.samples, s.samples,
                                            weight_exponent)
                         for s in traj.states])
    usable = np.abs(overlaps) > floor
    if not usable[0]:
        raise SignalError("probe does not overlap the initial state")
    cut = int(np.argmin(usable)) if not usable.all() else len(overlaps)
    if cut < 10:
        raise SignalError(f"overlap fell below {floor:g} after {cut} samples")
    t = traj.times[:cut]
    y = np.log(np.abs(overlaps[:cut]))
    slope = float(np.polyfit(t, y, 1)[0])
    return -slope
