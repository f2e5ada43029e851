"""Exact calculus for reflection-augmented derivatives on Laurent polynomials.

All four derivative kinds act term-wise on monomials and lower the exponent
by exactly one, so a finite Laurent polynomial is a closed, exact carrier
for operator-identity verification.  With ``fractions.Fraction``
coefficients and parameters, every identity below is checked with zero
rounding error; with floats, comparisons use the Report tolerance.

A monomial basis element is x^(k + shift) where k is an integer key and
``shift`` is a global real exponent offset (used for prefactors such as
x^(a - sigma + 1/2)).  Reflection acts as

    R x^(k + shift) = shift_sign * (-1)^k * x^(k + shift),

where ``shift_sign`` is the declared reflection eigenvalue of x^shift; it
is forced to (-1)^shift for integer shifts and must be supplied (+1 or -1,
i.e. an even or odd prefactor convention) for fractional ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Union

from .core import DunklParams, Family, FamilyError, Kind, Number, Superpotential


def _is_integral(value: Number) -> bool:
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    return float(value).is_integer()


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finite sum of c_k x^(k + shift) with integer k (negative allowed)."""

    terms: Mapping[int, Number]
    shift: Number = 0
    shift_sign: int = 1

    def __post_init__(self):
        terms = {int(k): c for k, c in self.terms.items() if c != 0}
        shift, sign = self.shift, self.shift_sign
        if _is_integral(shift):
            # Fold an integer shift into the keys; canonical form has shift=0.
            s = int(shift)
            terms = {k + s: c for k, c in terms.items()}
            shift, sign = 0, 1
        elif sign not in (-1, 1):
            raise ValueError("shift_sign must be +1 or -1 for fractional shifts")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "shift_sign", sign)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls({})

    @classmethod
    def monomial(cls, k: int, coeff: Number = 1, shift: Number = 0,
                 shift_sign: int = 1) -> "LaurentPolynomial":
        return cls({k: coeff}, shift, shift_sign)

    # -- ring operations ----------------------------------------------------

    def _compatible(self, other: "LaurentPolynomial"):
        if self.terms and other.terms and (
                self.shift != other.shift or self.shift_sign != other.shift_sign):
            raise ValueError("cannot add Laurent polynomials with different shifts")

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        shift, sign = (self.shift, self.shift_sign) if self.terms else (other.shift, other.shift_sign)
        return LaurentPolynomial(out, shift, sign)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({k: -c for k, c in self.terms.items()},
                                 self.shift, self.shift_sign)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def scale(self, factor: Number) -> "LaurentPolynomial":
        return LaurentPolynomial({k: factor * c for k, c in self.terms.items()},
                                 self.shift, self.shift_sign)

    def __mul__(self, other: Union["LaurentPolynomial", Number]) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return self.scale(other)
        out: dict[int, Number] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPolynomial(out, self.shift + other.shift,
                                 self.shift_sign * other.shift_sign)

    __rmul__ = __mul__

    # -- queries ------------------------------------------------------------

    def coefficient(self, k: int) -> Number:
        return self.terms.get(k, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def evaluate(self, x: float) -> float:
        return sum(float(c) * x ** float(k + self.shift)
                   for k, c in self.terms.items())


def laurent_max_diff(p: LaurentPolynomial, q: LaurentPolynomial) -> float:
    """Largest absolute coefficient difference between two polynomials."""
    return (p - q).max_abs_coeff()


# ---------------------------------------------------------------------------
# Operator actions
# ---------------------------------------------------------------------------

def apply_reflection(p: LaurentPolynomial) -> LaurentPolynomial:
    """R p, i.e. the coefficient of x^(k+shift) picks up shift_sign*(-1)^k."""
    return LaurentPolynomial(
        {k: (p.shift_sign if k % 2 == 0 else -p.shift_sign) * c
         for k, c in p.terms.items()},
        p.shift, p.shift_sign)


def derivative_coefficient(params: DunklParams, exponent: Number,
                           reflection_sign: int) -> Number:
    """Scalar multiplier sending x^e to (...) x^(e-1) for one basis element.

    One formula covers all four kinds because sigma stores 0 / mu / sigma /
    mu and gamma is nonzero only for TP:

        e + sigma - mu*r + gamma*e*r,   r = reflection eigenvalue of x^e.
    """
    coeff = exponent + params.sigma - params.mu * reflection_sign
    if params.gamma != 0:
        coeff = coeff + params.gamma * exponent * reflection_sign
    return coeff


def apply_derivative(params: DunklParams, p: LaurentPolynomial) -> LaurentPolynomial:
    """Apply the derivative of ``params.kind`` term-wise; exact on coefficients."""
    out = {}
    for k, c in p.terms.items():
        r = p.shift_sign if k % 2 == 0 else -p.shift_sign
        coeff = derivative_coefficient(params, k + p.shift, r)
        if coeff != 0:
            out[k - 1] = out.get(k - 1, 0) + coeff * c
    return LaurentPolynomial(out, p.shift, p.shift_sign)


def apply_square_closed_form(params: DunklParams, p: LaurentPolynomial) -> LaurentPolynomial:
    """The closed second-order form of D^2, applied term-wise.

    CH family (and its Yang/Dunkl specializations):
        d^2 + (2 sigma / x) d + (sigma^2 - mu^2 - sigma)/x^2 + (mu/x^2) R
    TP:
        (1 - gamma^2) (d^2 + (2 eta / x) d - eta/x^2 + (eta/x^2) R)
    """
    out = {}
    for k, c in p.terms.items():
        e = k + p.shift
        r = p.shift_sign if k % 2 == 0 else -p.shift_sign
        if params.kind is Kind.TP:
            eta = params.eta
            coeff = (1 - params.gamma ** 2) * (e * (e - 1) + 2 * eta * e - eta + eta * r)
        else:
            s, m = params.sigma, params.mu
            coeff = e * (e - 1) + 2 * s * e + (s * s - m * m - s) + m * r
        if coeff != 0:
            out[k - 2] = out.get(k - 2, 0) + coeff * c
    return LaurentPolynomial(out, p.shift, p.shift_sign)


def apply_tp_rewrite(params: DunklParams, p: LaurentPolynomial) -> LaurentPolynomial:
    """The TP derivative written through eta, with (1-gamma) eta in place of mu."""
    if params.kind is not Kind.TP:
        raise FamilyError("the eta rewrite applies to the TP derivative only")
    me = (1 - params.gamma) * params.eta
    out = {}
    for k, c in p.terms.items():
        e = k + p.shift
        r = p.shift_sign if k % 2 == 0 else -p.shift_sign
        coeff = e + me - me * r + params.gamma * e * r
        if coeff != 0:
            out[k - 1] = out.get(k - 1, 0) + coeff * c
    return LaurentPolynomial(out, p.shift, p.shift_sign)


def apply_fp_operator(params: DunklParams, s: Superpotential,
                      p: LaurentPolynomial) -> LaurentPolynomial:
    """Exact Fokker-Planck eigen-operator  -D^2 p + 2 D(w p)  for w = a/x.

    Only the centrifugal family keeps w*p inside the Laurent ring; the
    oscillator family carries a Gaussian factor and is handled numerically
    in :mod:`dunklfp.numeric`.
    """
    if s.family is not Family.CENTRIFUGAL:
        raise FamilyError("exact FP application requires the centrifugal family")
    w = LaurentPolynomial.monomial(-1, s.a)
    second = apply_derivative(params, apply_derivative(params, p))
    drift = apply_derivative(params, w * p)
    return -second + drift.scale(2)


# ---------------------------------------------------------------------------
# Identity verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Report:
    """Outcome of checking one operator identity on a monomial range.

    Violations are data, not exceptions: each entry is (k, |residual|) for a
    monomial x^k whose residual coefficients exceeded the tolerance.
    """

    identity: str
    max_degree: int
    tol: float
    violations: tuple = field(default_factory=tuple)
    worst: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return f"{self.identity}: {status}, worst residual {self.worst:.3e}"


def _scan_monomials(identity: str, max_degree: int, tol: float,
                    residual_for: Callable[[int], LaurentPolynomial]) -> Report:
    violations = []
    worst = 0.0
    for k in range(-max_degree, max_degree + 1):
        size = residual_for(k).max_abs_coeff()
        worst = max(worst, size)
        if size > tol:
            violations.append((k, size))
    return Report(identity, max_degree, tol, tuple(violations), worst)


def verify_anticommutation(params: DunklParams, max_degree: int, tol: float = 1e-13,
                           derivative: Callable = apply_derivative,
                           reflection: Callable = apply_reflection) -> Report:
    """Check R o D + D o R = 0 on every monomial x^k, |k| <= max_degree.

    ``derivative`` and ``reflection`` are injectable so mutation tests can
    corrupt one side and confirm the report catches it.
    """
    def residual(k: int) -> LaurentPolynomial:
        p = LaurentPolynomial.monomial(k)
        return reflection(derivative(params, p)) + derivative(params, reflection(p))

    return _scan_monomials(f"anticommutation[{params.kind.value}]",
                           max_degree, tol, residual)


def verify_square_closed_form(params: DunklParams, max_degree: int, tol: float = 1e-13,
                              closed_form: Callable = apply_square_closed_form) -> Report:
    """Check D(D p) against the closed second-order form, monomial-wise."""
    def residual(k: int) -> LaurentPolynomial:
        p = LaurentPolynomial.monomial(k)
        return apply_derivative(params, apply_derivative(params, p)) - closed_form(params, p)

    return _scan_monomials(f"square_closed_form[{params.kind.value}]",
                           max_degree, tol, residual)


def verify_tp_rewrite(params: DunklParams, max_degree: int, tol: float = 1e-13) -> Report:
    """Check the mu-form and eta-form of the TP derivative agree monomial-wise."""
    def residual(k: int) -> LaurentPolynomial:
        p = LaurentPolynomial.monomial(k)
        return apply_derivative(params, p) - apply_tp_rewrite(params, p)

    return _scan_monomials("tp_rewrite", max_degree, tol, residual)


def verify_specialization(params_a: DunklParams, params_b: DunklParams,
                          max_degree: int, tol: float = 1e-13,
                          label: Optional[str] = None) -> Report:
    """Check two parameter sets act identically on the monomial range."""
    def residual(k: int) -> LaurentPolynomial:
        p = LaurentPolynomial.monomial(k)
        return apply_derivative(params_a, p) - apply_derivative(params_b, p)

    name = label or f"specialization[{params_a.kind.value}={params_b.kind.value}]"
    return _scan_monomials(name, max_degree, tol, residual)
