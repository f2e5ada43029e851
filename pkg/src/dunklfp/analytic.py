"""Closed-form eigensystems of the two exactly solved drift families.

Centrifugal drift (w = a/x): power-prefactored Bessel functions
x^(a - sigma + 1/2) J_nu(sqrt(lambda) x) with a continuous spectrum; the
order is |a + mu - 1/2| on the even sector and |a - mu - 1/2| on the odd
one.  A formal solution is *admissible* (genuine definite parity, regular
at the origin) only when the order is a nonnegative integer m, the
prefactor power an integer n >= -m, and n + m has the parity's sign.

Oscillator-plus-centrifugal drift (w = a/x - x, TP derivative): Laguerre
eigenfunctions e^{-x^2/beta} x^power L_n^alpha(x^2/beta) with the discrete
spectra lambda = 4 n (1 - gamma) (even) and lambda = 4 n (1 + gamma) (odd);
admissibility demands an even prefactor power >= 2, or an odd positive one.

Quantized parameters (gamma = a/m - 1 and friends) are computed exactly as
rationals whenever the inputs are rational, and only rounded for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from .core import (HALF, AlphaError, DomainError, DunklParams, FamilyError, Kind,
                   KindError, Number, Parity, RangeError, make_params)
from .opalg import LaurentPolynomial
from .specfun import bessel_j, gamma_fn, half_line_rule, laguerre, weighted_inner_product

_INT_TOL = 1e-9


def _as_integer(value: Number, tol: float = _INT_TOL) -> Optional[int]:
    """The integer a value represents, or None; exact for rational inputs."""
    if isinstance(value, (int, Fraction)):
        frac = Fraction(value)
        return int(frac) if frac.denominator == 1 else None
    rounded = round(float(value))
    return rounded if abs(float(value) - rounded) <= tol else None


def _sqrt_exact(value: Number) -> Number:
    """sqrt(value), returned as a Fraction when value is a rational square."""
    if isinstance(value, (int, Fraction)):
        frac = Fraction(value)
        rn, rd = math.isqrt(frac.numerator), math.isqrt(frac.denominator)
        if rn * rn == frac.numerator and rd * rd == frac.denominator:
            return Fraction(rn, rd)
    return math.sqrt(float(value))


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BesselDescriptor:
    """amplitude * x^power * J_order(sqrt(lam) * x), carried with its parity."""

    parity: Parity
    power: Number
    order: Number
    lam: Number
    amplitude: float = 1.0
    admissible: bool = False

    @property
    def scale(self) -> Number:
        """Argument scale sqrt(lambda)."""
        return _sqrt_exact(self.lam)


@dataclass(frozen=True)
class LaguerreDescriptor:
    """amplitude * e^{-x^2/beta} * x^power * L_n^alpha(x^2/beta)."""

    parity: Parity
    beta: Number
    power: Number
    alpha: Number
    n: int
    lam: Number
    amplitude: float = 1.0
    admissible: bool = False


Descriptor = Union[BesselDescriptor, LaguerreDescriptor]


# ---------------------------------------------------------------------------
# Centrifugal family (continuous spectrum)
# ---------------------------------------------------------------------------

def centrifugal_solution(parity: Parity, a: Number, sigma: Number, mu: Number,
                         lam: Number, amplitude: float = 1.0) -> BesselDescriptor:
    """Formal sector solution for w = a/x, with its admissibility flag.

    Non-admissible descriptors are still evaluable; admissibility records
    whether the integer/parity/regularity restrictions all hold.
    """
    if not lam > 0:
        raise RangeError(f"lambda must be positive, got {lam}")
    if a == 1:
        raise RangeError("superpotential parameter a = 1 is excluded")
    power = a - sigma + HALF
    order = abs(a + mu - HALF) if parity is Parity.EVEN else abs(a - mu - HALF)
    m, n = _as_integer(order), _as_integer(power)
    admissible = (m is not None and n is not None and n >= -m
                  and (n + m) % 2 == (0 if parity is Parity.EVEN else 1))
    return BesselDescriptor(parity, power, order, lam, amplitude, admissible)


def centrifugal_admissible_mu(parity: Parity, a: Number, count: int) -> List[Number]:
    """First ``count`` admissible mu > -1/2, both branches of the modulus merged."""
    if count < 1:
        raise RangeError("count must be at least 1")
    values = set()
    for m in range(count + int(abs(float(a))) + 2):
        if parity is Parity.EVEN:
            branches = (m + HALF - a, -m + HALF - a)
        else:
            branches = (a - HALF - m, a - HALF + m)
        for mu in branches:
            if mu > -HALF:
                values.add(mu)
    return sorted(values)[:count]


def centrifugal_admissible_sigma(a: Number, m: int, count: int) -> List[Number]:
    """sigma values making x^(a - sigma + 1/2) J_m regular at the origin.

    Powers run over -m, -m+1, ...; equivalently sigma descends from
    m + a + 1/2 in integer steps while sigma > -1/2.  Fewer than ``count``
    values may exist.
    """
    if m < 0 or m != int(m):
        raise RangeError(f"order m must be a nonnegative integer, got {m}")
    out: List[Number] = []
    sigma = m + a + HALF
    while sigma > -HALF and len(out) < count:
        out.append(sigma)
        sigma = sigma - 1
    return out


# ---------------------------------------------------------------------------
# Oscillator-plus-centrifugal family (discrete spectrum, TP derivative)
# ---------------------------------------------------------------------------

def oscillator_solution(parity: Parity, a: Number, params: DunklParams,
                        n: int, amplitude: float = 1.0) -> LaguerreDescriptor:
    """Laguerre-form sector solution for w = a/x - x under the TP derivative."""
    if params.kind is not Kind.TP:
        raise KindError("oscillator solutions are derived for the TP derivative")
    if n < 0 or n != int(n):
        raise RangeError(f"quantum number must be a nonnegative integer, got {n}")
    if a == 1:
        raise RangeError("superpotential parameter a = 1 is excluded")
    gamma, eta = params.gamma, params.eta
    if parity is Parity.EVEN:
        beta = 1 + gamma
        power = 2 * a / beta
        alpha = eta - HALF + a / beta
        lam = 4 * n * (1 - gamma)
    else:
        beta = 1 - gamma
        power = 2 * a / beta - 2 * eta
        alpha = a / beta - eta - HALF
        lam = 4 * n * (1 + gamma)
    if not alpha > -1:
        raise AlphaError(f"derived Laguerre parameter alpha = {alpha} is <= -1")
    p = _as_integer(power)
    if parity is Parity.EVEN:
        admissible = p is not None and p >= 2 and p % 2 == 0
    else:
        admissible = p is not None and p >= 1 and p % 2 == 1
    return LaguerreDescriptor(parity, beta, power, alpha, int(n), lam,
                              amplitude, admissible)


def oscillator_gamma_for_parity(parity: Parity, a: Number,
                                mu: Optional[Number], m: int) -> Number:
    """The gamma that quantizes the prefactor power to 2m (even) or 2m+1 (odd).

    Exact rational arithmetic when a (and mu) are rational; RangeError when
    the resulting gamma falls outside (-1, 1).
    """
    if m != int(m):
        raise RangeError(f"m must be an integer, got {m}")
    if parity is Parity.EVEN:
        if m < 1:
            raise RangeError("even quantization needs m >= 1")
        ratio = a / m            # power 2a/(1+gamma) = 2m  =>  gamma = a/m - 1
        if not 0 < ratio < 2:
            raise RangeError(f"a/m = {ratio} outside (0, 2): no gamma in (-1, 1)")
        return ratio - 1
    if m < 0:
        raise RangeError("odd quantization needs m >= 0")
    if mu is None:
        raise RangeError("odd quantization requires mu")
    if not a > mu:
        raise RangeError(f"odd quantization requires a > mu, got a={a}, mu={mu}")
    ratio = 2 * (a - mu) / (2 * m + 1)   # 1 - gamma
    if not 0 < ratio < 2:
        raise RangeError(f"2(a-mu)/(2m+1) = {ratio} outside (0, 2)")
    return 1 - ratio


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _eval_positive(d: Descriptor, x: float) -> float:
    if isinstance(d, BesselDescriptor):
        return d.amplitude * x ** float(d.power) \
            * bessel_j(float(d.order), float(d.scale) * x)
    u = x * x / float(d.beta)
    return d.amplitude * math.exp(-u) * x ** float(d.power) \
        * laguerre(d.n, float(d.alpha), u)


def _eval_at_zero(d: Descriptor) -> float:
    power = float(d.power)
    if power < 0:
        raise DomainError("descriptor with negative power is singular at x = 0")
    if power > 0:
        return 0.0
    if isinstance(d, BesselDescriptor):
        return d.amplitude * (1.0 if float(d.order) == 0 else 0.0)
    return d.amplitude * laguerre(d.n, float(d.alpha), 0.0)


def eval_descriptor(d: Descriptor, x):
    """Pointwise value; x < 0 is served through the parity extension."""
    if np.ndim(x) > 0:
        return np.array([eval_descriptor(d, float(xi)) for xi in np.asarray(x).ravel()]
                        ).reshape(np.shape(x))
    x = float(x)
    if x == 0.0:
        return _eval_at_zero(d)
    if x < 0:
        return d.parity.sign * _eval_positive(d, -x)
    return _eval_positive(d, x)


def normalized(d: LaguerreDescriptor, weight_exponent: float) -> LaguerreDescriptor:
    """Amplitude rescaled to unit full-line norm under weight |x|^(2 exponent).

    Offered for the discrete (Laguerre) family only; Bessel solutions of the
    continuous spectrum are not square-normalizable.
    """
    if not isinstance(d, LaguerreDescriptor):
        raise FamilyError("normalization is defined for Laguerre descriptors only")
    unit = replace(d, amplitude=1.0)

    def psi(x):
        return eval_descriptor(unit, x)

    total, _ = weighted_inner_product(psi, psi, lambda x: x ** (2 * weight_exponent),
                                      half_line_rule(512))
    return replace(d, amplitude=1.0 / math.sqrt(2.0 * total))


# ---------------------------------------------------------------------------
# Truncated series as exact Laurent data (cross-check with the operator algebra)
# ---------------------------------------------------------------------------

def bessel_series_laurent(power: Number, order: Number, sqrt_lam: Number,
                          n_terms: int, parity_sign: int = 1,
                          amplitude: Number = 1) -> LaurentPolynomial:
    """Truncated ascending series of amplitude * x^power * J_order(sqrt_lam x).

    Exact (Fraction coefficients) when power, order, sqrt_lam are rational
    with integer order; otherwise float coefficients.  The exponent offset
    power + order is carried as the Laurent shift with declared reflection
    sign ``parity_sign``.
    """
    exact = (isinstance(sqrt_lam, (int, Fraction))
             and _as_integer(order) is not None)
    terms = {}
    for j in range(n_terms):
        if exact:
            m = _as_integer(order)
            # Fraction(amplitude) is lossless even for float amplitudes.
            c = Fraction(amplitude) * (-1) ** j * (Fraction(sqrt_lam) / 2) ** (m + 2 * j) \
                / (math.factorial(j) * math.factorial(m + j))
        else:
            c = float(amplitude) * (-1.0) ** j \
                * (float(sqrt_lam) / 2.0) ** (float(order) + 2 * j) \
                / (math.factorial(j) * gamma_fn(float(order) + j + 1.0))
        terms[2 * j] = c
    return LaurentPolynomial(terms, power + order, parity_sign)


def descriptor_series(d: BesselDescriptor, n_terms: int) -> LaurentPolynomial:
    """Truncated series of an admissible Bessel descriptor (integer exponents)."""
    if not d.admissible:
        raise RangeError("series cross-check requires an admissible descriptor")
    return bessel_series_laurent(d.power, d.order, d.scale, n_terms,
                                 d.parity.sign, d.amplitude)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def format_number(value: Number) -> str:
    """Exact p/q for rationals, integers bare, floats at 12 significant digits."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else \
            f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if float(value).is_integer():
        return str(int(value))
    return f"{float(value):.12g}"


def _grouped(value: Number) -> str:
    text = format_number(value)
    return f"({text})" if "/" in text else text


def describe(d: Descriptor) -> str:
    """Canonical display string for a descriptor."""
    if isinstance(d, BesselDescriptor):
        return (f"x^{{{format_number(d.power)}}} J_{{{format_number(d.order)}}}"
                f"({format_number(d.scale)} x)")
    return (f"e^{{-x^2/{_grouped(d.beta)}}} x^{{{format_number(d.power)}}} "
            f"L_{{{d.n}}}^{{{_grouped(d.alpha)}}}(x^2/{_grouped(d.beta)})")


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Row:
    mu: Fraction
    sigma: Fraction
    even: BesselDescriptor
    odd: BesselDescriptor


TABLE1_A = Fraction(2)
TABLE1_LAMBDA = Fraction(4)
_TABLE1_PARAMS = ((Fraction(1, 2), Fraction(5, 2)),
                  (Fraction(11, 2), Fraction(7, 2)),
                  (Fraction(9, 2), Fraction(9, 2)))


def generate_table1() -> List[Table1Row]:
    """The three (mu, sigma) rows of eigenfunctions for a = 2, lambda = 4."""
    rows = []
    for mu, sigma in _TABLE1_PARAMS:
        rows.append(Table1Row(
            mu, sigma,
            centrifugal_solution(Parity.EVEN, TABLE1_A, sigma, mu, TABLE1_LAMBDA),
            centrifugal_solution(Parity.ODD, TABLE1_A, sigma, mu, TABLE1_LAMBDA)))
    return rows


@dataclass(frozen=True)
class SymbolicLaguerreCoefficient:
    """Coefficient of u^j in L_n^alpha(u), kept symbolic in alpha.

    Value: (-1)^j / (j! (n-j)!) * product_{i=j+1..n} (alpha + i).
    """

    n: int
    j: int

    def value(self, alpha: Number) -> Number:
        prod: Number = Fraction(1)
        for i in range(self.j + 1, self.n + 1):
            prod = prod * (alpha + i)
        sign = -1 if self.j % 2 else 1
        return sign * prod / (math.factorial(self.j) * math.factorial(self.n - self.j))

    def __str__(self) -> str:
        den = math.factorial(self.j) * math.factorial(self.n - self.j)
        factors = "".join(f"(alpha+{i})" for i in range(self.j + 1, self.n + 1))
        body = factors or "1"
        if den != 1:
            body = f"{body}/{den}"
        return f"-{body}" if self.j % 2 else body


@dataclass(frozen=True)
class Table2Row:
    n: int
    power: int
    coefficients: Tuple[SymbolicLaguerreCoefficient, ...]


def generate_table2(m: int = 3, parity: Parity = Parity.EVEN,
                    n_max: int = 3) -> List[Table2Row]:
    """Symbolic eigenfunction rows e^{-x^2/beta} x^power L_n^alpha(x^2/beta).

    The prefactor power is 2m on the even sector and 2m+1 on the odd one;
    the default m = 3 yields the printed even table (power 6), and the odd
    variant with m = 2 carries power 5.
    """
    if parity is Parity.EVEN:
        if m < 1:
            raise RangeError("even rows need m >= 1")
        power = 2 * m
    else:
        if m < 0:
            raise RangeError("odd rows need m >= 0")
        power = 2 * m + 1
    return [Table2Row(n, power,
                      tuple(SymbolicLaguerreCoefficient(n, j) for j in range(n + 1)))
            for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# Figure data
# ---------------------------------------------------------------------------

FIGURE2_A = Fraction(43, 10)
FIGURE2_MU = Fraction(3, 5)
FIGURE2_GAMMA_EVEN = Fraction(13, 30)    # = a/m - 1 at m = 3, exact
FIGURE2_GAMMA_ODD = Fraction(-12, 25)    # = 1 - 2(a-mu)/(2m+1) at m = 2


def figure_descriptors(which: str) -> Tuple[List[Descriptor], dict]:
    """Descriptors for one figure panel plus parameter metadata.

    Panels 1a/1b are the even/odd Bessel curves of the a = 2, lambda = 4
    table; 2a/2b are the first three even/odd oscillator eigenfunctions at
    a = 4.3, mu = 0.6 with exactly quantized gamma.
    """
    rows = generate_table1()
    if which == "1a":
        return [r.even for r in rows], {"a": TABLE1_A, "lambda": TABLE1_LAMBDA}
    if which == "1b":
        return [r.odd for r in rows], {"a": TABLE1_A, "lambda": TABLE1_LAMBDA}
    if which in ("2a", "2b"):
        parity = Parity.EVEN if which == "2a" else Parity.ODD
        gamma = FIGURE2_GAMMA_EVEN if which == "2a" else FIGURE2_GAMMA_ODD
        params = make_params(Kind.TP, None, FIGURE2_MU, gamma)
        ds = [oscillator_solution(parity, FIGURE2_A, params, n) for n in range(3)]
        key = "alpha_e" if which == "2a" else "alpha_o"
        return ds, {"a": FIGURE2_A, "mu": FIGURE2_MU, "gamma": gamma,
                    key: ds[0].alpha}
    raise RangeError(f"unknown figure panel {which!r}")
