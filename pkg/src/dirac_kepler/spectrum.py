"""Closed-form bound-state spectrum and analytic radial functions.

The second-order reduction of the radial problem is hydrogen-like with a
non-integer angular momentum l_star and an energy-dependent Coulomb
strength

    q_eff(E) = alpha E - beta_s        (natural units),

so the quantization N = n_r + l_star + 1 together with the Bohr-form
identity (E^2 - 1)/2 = -q_eff^2 / (2 N^2) turns into a quadratic in E:

    E^2 (N^2 + alpha^2) - 2 alpha beta_s E + (beta_s^2 - N^2) = 0.

Both roots are returned for every level: a state is physical (a true
eigenvalue of the first-order radial system, confirmed by the numeric
solver) exactly when |E| < 1 and q_eff(E) > 0.  The q_eff > 0 rule is
the energy-dependent binding condition beta_s < alpha E; the weaker,
energy-free comparison beta_s < alpha is also exposed because the two
disagree in part of the parameter space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import Channel, CouplingParams, channel_from_kappa
from .special import laguerre_values, radial_norm

__all__ = [
    "SpectrumLine",
    "NoRealBranchError",
    "InadmissibleStateError",
    "effective_coulomb",
    "effective_principal",
    "energy_branches",
    "binding_condition",
    "binding_condition_static",
    "sommerfeld_reference",
    "analytic_radial_function",
    "count_nodes",
]


class NoRealBranchError(ValueError):
    """Negative branch discriminant: no real bound solutions in this channel."""


class InadmissibleStateError(ValueError):
    """Requested a radial function for a root that is not a bound state."""


@dataclass(frozen=True)
class SpectrumLine:
    """One labeled root of the energy quadratic.

    energy is in units of m c^2; n_eff = n_r + l_star + 1; admissible
    means |E| < 1 and q_eff > 0 (both required for a bound state).
    """

    channel: Channel
    n_r: int
    branch: str          # "+" or "-"
    energy: float
    q_eff: float
    admissible: bool
    n_eff: float


def effective_coulomb(energy: float, c: CouplingParams) -> float:
    """Energy-dependent Coulomb strength q_eff = alpha E - beta_s."""
    return c.alpha * energy - c.beta_s


def effective_principal(n_r: int, channel: Channel) -> float:
    """Effective principal number N = n_r + l_star + 1.

    Equals n_r + gamma for kappa < 0 and n_r + gamma + 1 for kappa > 0.
    """
    if n_r < 0:
        raise ValueError(f"n_r must be nonnegative, got {n_r!r}")
    return n_r + channel.l_star + 1.0


def binding_condition(energy: float, c: CouplingParams) -> bool:
    """Energy-dependent binding condition beta_s < alpha E (q_eff > 0)."""
    return c.beta_s < c.alpha * energy


def binding_condition_static(c: CouplingParams) -> bool:
    """The energy-free comparison beta_s < alpha.

    Correct only in the E -> 1 limit; kept for comparison against the
    energy-dependent condition.
    """
    return c.beta_s < c.alpha


def energy_branches(n_r: int, channel: Channel,
                    c: CouplingParams) -> tuple[SpectrumLine, SpectrumLine]:
    """Both roots of the energy quadratic for one level, flagged.

    Returns (E+, E-) lines.  Inadmissible roots are returned flagged
    rather than suppressed; a negative discriminant raises.
    """
    n_eff = effective_principal(n_r, channel)
    alpha, beta_s = c.alpha, c.beta_s
    disc = n_eff * n_eff + alpha * alpha - beta_s * beta_s
    if disc < 0:
        raise NoRealBranchError(
            f"no real energy roots: N^2 + alpha^2 - beta_s^2 = {disc:.6g} < 0 "
            f"(kappa={channel.kappa}, n_r={n_r})"
        )
    den = n_eff * n_eff + alpha * alpha
    spread = n_eff * math.sqrt(disc)
    lines = []
    for branch, energy in (("+", (alpha * beta_s + spread) / den),
                           ("-", (alpha * beta_s - spread) / den)):
        q = effective_coulomb(energy, c)
        admissible = abs(energy) < 1.0 and q > 0.0
        lines.append(SpectrumLine(channel=channel, n_r=n_r, branch=branch,
                                  energy=energy, q_eff=q, admissible=admissible,
                                  n_eff=n_eff))
    return lines[0], lines[1]


def sommerfeld_reference(n_r: int, kappa: int, alpha: float) -> float:
    """Pure-vector (beta_s = 0) bound-state energy, for cross-checking.

    E = [1 + alpha^2 / (n + gamma_0)^2]^(-1/2) with gamma_0 =
    sqrt(kappa^2 - alpha^2) and n = n_r for kappa < 0, n_r + 1 for
    kappa > 0 (n_r counts radial nodes).
    """
    if n_r < 0:
        raise ValueError("n_r must be nonnegative")
    channel = channel_from_kappa(kappa, CouplingParams(alpha=alpha, beta_s=0.0))
    n = n_r if kappa < 0 else n_r + 1
    return 1.0 / math.sqrt(1.0 + alpha * alpha / (n + channel.gamma) ** 2)


def analytic_radial_function(line: SpectrumLine, r: np.ndarray) -> np.ndarray:
    """Closed-form radial function of the second-order reduction, normalized.

    R(r) = C rho^l* e^(-rho/2) L_{n_r}^(2 l* + 1)(rho) with rho = 2 lambda r
    and lambda = q_eff / N (equal to sqrt(1 - E^2) on a root).  Normalized
    so that the integral of R^2 r^2 dr over the given grid is 1; has
    exactly n_r sign changes on (0, inf).
    """
    if not line.admissible:
        raise InadmissibleStateError(
            f"not a bound state: E={line.energy:.6g}, q_eff={line.q_eff:.6g}"
        )
    r = np.asarray(r, dtype=float)
    lam = line.q_eff / line.n_eff
    l_star = line.channel.l_star
    rho = 2.0 * lam * r
    values = rho**l_star * np.exp(-rho / 2.0) * laguerre_values(line.n_r, 2.0 * l_star + 1.0, rho)
    norm2 = radial_norm(values, r)
    return values / math.sqrt(norm2)


def count_nodes(values: np.ndarray) -> int:
    """Strict sign changes of a sampled function (zeros do not count)."""
    v = np.asarray(values)
    return int(np.sum(v[1:] * v[:-1] < 0))
