"""Shared domain types: derivative parameters, superpotentials, parity, grids.

Everything here is immutable after construction and safe for concurrent
shared reads.  Parameters may be supplied as ``int``, ``float`` or
``fractions.Fraction``; exact rational inputs stay exact through derived
quantities such as ``eta``.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Union

import numpy as np

Number = Union[int, float, Fraction]

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class DunklFPError(Exception):
    """Base class for every error raised by this package."""


class RangeError(DunklFPError, ValueError):
    """A parameter lies outside its validity range."""


class KindError(DunklFPError, ValueError):
    """Parameters are inconsistent with the requested derivative kind."""


class DomainError(DunklFPError, ValueError):
    """An evaluation point lies outside the function's domain."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class FamilyError(DunklFPError, TypeError):
    """The superpotential family is unsupported by the requested operation."""


class ParityMismatch(DunklFPError, ValueError):
    """Operands carry incompatible parity or grids."""


class AlphaError(RangeError):
    """A derived Laguerre parameter fell outside alpha > -1."""


class NonConvergence(DunklFPError, RuntimeError):
    """A quadrature value kept changing under node doubling."""


class ConvergenceError(DunklFPError, RuntimeError):
    """An eigenvalue iteration stalled."""


class SpectrumError(DunklFPError, ValueError):
    """Requested more spectral data than the discretization resolves."""


class SolveError(DunklFPError, RuntimeError):
    """A linear solve failed or produced non-finite values."""


class SignalError(DunklFPError, RuntimeError):
    """A measured signal decayed below the usable floor too early."""


class SigmaBoundWarning(UserWarning):
    """CH parameter sigma lies in the contested band (-1/2, 1/2].

    The adopted validity bound is sigma > -1/2 (the weight |x|^{2 sigma} is
    locally integrable there), but sigma <= 1/2 is flagged rather than
    silently accepted.
    """


# ---------------------------------------------------------------------------
# Parity and derivative parameters
# ---------------------------------------------------------------------------

class Parity(enum.Enum):
    """Reflection eigenvalue sector: R psi = +psi (even) or -psi (odd)."""

    EVEN = 1
    ODD = -1

    @property
    def sign(self) -> int:
        return self.value


class Kind(enum.Enum):
    """The four reflection-augmented derivatives."""

    YANG = "yang"
    DUNKL = "dunkl"
    CH = "ch"
    TP = "tp"


@dataclass(frozen=True)
class DunklParams:
    """Validated parameter set (kind, sigma, mu, gamma) for one derivative.

    ``sigma`` always stores the coefficient of the 1/x drift term so that a
    single coefficient formula covers all four kinds: 0 for Yang, mu for
    Dunkl and TP, the free value for CH.  ``gamma`` is nonzero only for TP.
    """

    kind: Kind
    sigma: Number
    mu: Number
    gamma: Number

    @property
    def eta(self) -> Number:
        """Combined TP parameter mu / (1 - gamma); exact for rational inputs."""
        return self.mu / (1 - self.gamma)


def make_params(kind: Kind, sigma: Optional[Number] = None,
                mu: Number = 0, gamma: Optional[Number] = None) -> DunklParams:
    """Validate raw parameters and return an immutable DunklParams.

    Raises
    ------
    RangeError
        mu <= -1/2, sigma <= -1/2, or |gamma| >= 1 for the TP kind.
    KindError
        sigma/gamma supplied where fixed by the kind (sigma != 0 for Yang,
        sigma != mu for Dunkl, gamma != 0 for Yang/Dunkl/CH, sigma given
        for TP), or sigma missing for CH.
    """
    if not isinstance(kind, Kind):
        raise KindError(f"unknown derivative kind: {kind!r}")
    if not mu > -HALF:
        raise RangeError(f"mu must satisfy mu > -1/2, got {mu}")

    if kind is Kind.TP:
        if sigma is not None:
            raise KindError("TP derivative takes no sigma parameter")
        if gamma is None:
            raise KindError("TP derivative requires gamma")
        if not -1 < gamma < 1:
            raise RangeError(f"gamma must lie in (-1, 1), got {gamma}")
        return DunklParams(kind, mu, mu, gamma)

    if gamma not in (None, 0):
        raise KindError(f"{kind.value} derivative has gamma = 0, got {gamma}")

    if kind is Kind.YANG:
        if sigma not in (None, 0):
            raise KindError(f"Yang derivative has sigma = 0, got {sigma}")
        sigma = 0
    elif kind is Kind.DUNKL:
        if sigma is None:
            sigma = mu
        elif sigma != mu:
            raise KindError(f"Dunkl derivative has sigma = mu, got sigma={sigma}")
    else:  # CH
        if sigma is None:
            raise KindError("CH derivative requires sigma")
        if not sigma > -HALF:
            raise RangeError(f"sigma must satisfy sigma > -1/2, got {sigma}")
        if sigma <= HALF:
            warnings.warn(
                f"CH sigma={sigma} lies in (-1/2, 1/2]; accepted under the "
                "sigma > -1/2 bound", SigmaBoundWarning, stacklevel=2)

    return DunklParams(kind, sigma, mu, 0)


# ---------------------------------------------------------------------------
# Superpotentials (drift = 2 w)
# ---------------------------------------------------------------------------

class Family(enum.Enum):
    CENTRIFUGAL = "centrifugal"                      # w = a/x
    OSCILLATOR_CENTRIFUGAL = "oscillator_centrifugal"  # w = a/x - x


@dataclass(frozen=True)
class Superpotential:
    """Odd drift-defining function w(x), restricted to the two solved families.

    Both families are odd in x, which is what makes definite-parity
    eigenfunctions possible; arbitrary callables are deliberately not
    accepted.  a = 1 would collapse the a(a-1)/x^2 potential and is rejected.
    """

    family: Family
    a: Number

    def __post_init__(self):
        if self.a == 1:
            raise RangeError("superpotential parameter a = 1 is excluded")

    @classmethod
    def centrifugal(cls, a: Number) -> "Superpotential":
        return cls(Family.CENTRIFUGAL, a)

    @classmethod
    def oscillator_centrifugal(cls, a: Number) -> "Superpotential":
        return cls(Family.OSCILLATOR_CENTRIFUGAL, a)

    def w(self, x):
        self._check_domain(x)
        if self.family is Family.CENTRIFUGAL:
            return self.a / x
        return self.a / x - x

    def w_prime(self, x):
        self._check_domain(x)
        if self.family is Family.CENTRIFUGAL:
            return -self.a / x**2
        return -self.a / x**2 - (1.0 if isinstance(x, (float, np.ndarray)) else 1)

    def potential(self, x):
        """w^2 + w': a(a-1)/x^2, plus x^2 - 2a - 1 for the oscillator family."""
        self._check_domain(x)
        if self.family is Family.CENTRIFUGAL:
            return self.a * (self.a - 1) / x**2
        return self.a * (self.a - 1) / x**2 + x**2 - 2 * self.a - 1

    @staticmethod
    def _check_domain(x):
        if np.any(np.asarray(x) == 0):
            raise DomainError("superpotential is singular at x = 0")


class SuperpotentialValues(NamedTuple):
    w: Number
    w_prime: Number
    rw: Number          # w(-x)
    potential: Number   # w^2 + w'


def superpotential_eval(s: Superpotential, x: Number) -> SuperpotentialValues:
    """Evaluate w, w', w(-x) and w^2 + w' at one point x != 0."""
    return SuperpotentialValues(s.w(x), s.w_prime(x), s.w(-x), s.potential(x))


# ---------------------------------------------------------------------------
# Grids and parity-marked samples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfLineGrid:
    """Uniform staggered grid x_i = (i + 1/2) h on (0, xmax), xmax = n h.

    Staggering keeps every node strictly positive, so 1/x and 1/x^2
    coefficients are always finite; parity supplies the ghost value at
    -h/2 when an operator stencil reaches below the first node.
    """

    n: int
    xmax: float

    def __post_init__(self):
        if self.n < 3:
            raise RangeError(f"grid needs at least 3 nodes, got {self.n}")
        if not self.xmax > 0:
            raise RangeError(f"xmax must be positive, got {self.xmax}")

    @property
    def h(self) -> float:
        return self.xmax / self.n

    @cached_property
    def nodes(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5) * self.h


@dataclass(frozen=True)
class ParityFunction:
    """Samples of a definite-parity function at HalfLineGrid nodes.

    The full-line function is psi(-x) = parity.sign * psi(x); only the
    positive-x samples are stored.
    """

    grid: HalfLineGrid
    parity: Parity
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.shape != (self.grid.n,):
            raise ParityMismatch(
                f"expected {self.grid.n} samples, got shape {samples.shape}")
        object.__setattr__(self, "samples", samples)

    def full_line(self) -> tuple[np.ndarray, np.ndarray]:
        """Node positions and values extended to the negative axis."""
        x = self.grid.nodes
        return (np.concatenate([-x[::-1], x]),
                np.concatenate([self.parity.sign * self.samples[::-1], self.samples]))

    def ghost_value(self) -> float:
        """Value the parity extension assigns at -h/2."""
        return self.parity.sign * float(self.samples[0])
