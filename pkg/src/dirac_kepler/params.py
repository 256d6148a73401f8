"""Couplings, unit conventions, and angular-channel bookkeeping.

The model is a Dirac particle in an attractive Coulomb potential
U(r) = -e^2/r whose mass carries a 1/r slope, m*(r) = m (1 + a/r).  The
mass slope is equivalent to a scalar Coulomb coupling, so the whole
problem is controlled by two dimensionless numbers:

    alpha  = e^2 / (hbar c)        vector (Coulomb) strength
    beta_s = m c a / hbar          scalar strength from the mass slope

Everything downstream runs in natural units hbar = c = m = 1;
:class:`PhysicalInputs` exists only to convert dimensionful inputs into
``(alpha, beta_s)`` at the boundary.

Angular channels are labeled by the nonzero integer kappa, the standard
spin-orbit quantum number: kappa = -(l+1) for j = l + 1/2 ("upper" sign
channel) and kappa = +l for j = l - 1/2 ("lower").  Each subcritical
channel carries the small-r exponent gamma = sqrt(kappa^2 + beta_s^2 -
alpha^2) and the generally non-integer effective angular momentum
l_star (gamma - 1 for kappa < 0, gamma for kappa > 0).

All types are immutable and all operations pure, so everything here is
safe to share across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

NATURAL = "natural"
SI_LIKE = "si-like"

# hbar*c in eV nm, for the si-like unit mode (masses in eV/c^2 given as
# rest energies in eV, lengths in nm, e^2 in eV nm).
HBARC_EV_NM = 197.3269804


class SupercriticalCouplingError(ValueError):
    """Raised when kappa^2 + beta_s^2 <= alpha^2.

    The small-r exponent gamma would be imaginary: the effective 1/r^2
    coupling is overcritical and the point spectrum is not defined.
    Carries the critical vector strength for the offending channel.
    """

    def __init__(self, kappa: int, alpha: float, beta_s: float):
        self.kappa = kappa
        self.alpha = alpha
        self.beta_s = beta_s
        self.critical_alpha = math.sqrt(kappa * kappa + beta_s * beta_s)
        super().__init__(
            f"supercritical couplings for kappa={kappa}: alpha={alpha} >= "
            f"critical alpha={self.critical_alpha:.12g} (beta_s={beta_s})"
        )


@dataclass(frozen=True)
class PhysicalInputs:
    """Dimensionful model inputs.

    mass is the rest energy m c^2 (eV in si-like mode, units of the
    reference mass in natural mode); e2 is the Coulomb strength e^2
    (eV nm / dimensionless); a is the mass-slope length (nm /
    dimensionless).  units selects the conversion constants.
    """

    mass: float
    e2: float
    a: float
    units: str = NATURAL

    def __post_init__(self):
        if self.units not in (NATURAL, SI_LIKE):
            raise ValueError(f"unknown unit system {self.units!r}")
        for name in ("mass", "e2", "a"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass!r}")
        if self.e2 < 0:
            raise ValueError(f"e2 must be nonnegative, got {self.e2!r}")

    @property
    def hbar_c(self) -> float:
        return 1.0 if self.units == NATURAL else HBARC_EV_NM


@dataclass(frozen=True)
class CouplingParams:
    """The two dimensionless couplings (natural units)."""

    alpha: float
    beta_s: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta_s)):
            raise ValueError("couplings must be finite")
        if self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha!r}")


@dataclass(frozen=True)
class Channel:
    """One angular channel with its derived exponents.

    sign is "upper" for j = l + 1/2 (kappa < 0) and "lower" for
    j = l - 1/2 (kappa > 0); gamma^2 = kappa^2 + beta_s^2 - alpha^2.
    """

    kappa: int
    j: float
    l: int
    sign: str
    gamma: float
    l_star: float


def derive_couplings(inputs: PhysicalInputs) -> CouplingParams:
    """Convert dimensionful inputs to (alpha, beta_s).

    alpha = e^2/(hbar c); beta_s = (m c^2) a/(hbar c).  In natural mode
    with m = 1 this is the identity (alpha = e^2, beta_s = a).
    """
    hc = inputs.hbar_c
    return CouplingParams(alpha=inputs.e2 / hc, beta_s=inputs.mass * inputs.a / hc)


def channel_from_kappa(kappa: int, c: CouplingParams) -> Channel:
    """Build the angular channel for a spin-orbit label kappa.

    Requires subcriticality kappa^2 + beta_s^2 - alpha^2 > 0; the
    effective angular momentum is l_star = gamma - 1 for kappa < 0 and
    l_star = gamma for kappa > 0.
    """
    if not isinstance(kappa, (int,)) or isinstance(kappa, bool):
        raise TypeError(f"kappa must be an integer, got {kappa!r}")
    if kappa == 0:
        raise ValueError("kappa must be a nonzero integer")
    disc = kappa * kappa + c.beta_s * c.beta_s - c.alpha * c.alpha
    if disc <= 0:
        raise SupercriticalCouplingError(kappa, c.alpha, c.beta_s)
    gamma = math.sqrt(disc)
    j = abs(kappa) - 0.5
    if kappa < 0:
        l = -kappa - 1
        sign = "upper"
        l_star = gamma - 1.0
    else:
        l = kappa
        sign = "lower"
        l_star = gamma
    return Channel(kappa=kappa, j=j, l=l, sign=sign, gamma=gamma, l_star=l_star)
