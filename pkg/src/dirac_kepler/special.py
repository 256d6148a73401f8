"""Scalar special functions for the closed-form radial solutions.

The bound-state radial functions are Coulomb-like with a generally
non-integer effective angular momentum, so the Laguerre functions here
must accept arbitrary real order nu > -1.  Double precision only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

# Lanczos approximation, g = 7, 9 coefficients.  Relative accuracy is a
# few 1e-15 over the positive real axis once arguments below 1/2 are
# lifted by one recurrence step.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def ln_gamma(x: float) -> float:
    """log of the gamma function for x > 0 (Lanczos approximation)."""
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        # one recurrence step keeps the series argument away from the pole
        return ln_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    series = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        series += _LANCZOS_COEFFS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(series)


@dataclass(frozen=True)
class LaguerreParams:
    """Degree n (nonnegative integer), real order nu > -1, argument x >= 0."""

    n: int
    nu: float
    x: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValueError(f"degree must be a nonnegative integer, got {self.n!r}")
        if not math.isfinite(self.nu) or self.nu <= -1.0:
            raise ValueError(f"order must be a real number > -1, got {self.nu!r}")
        if not math.isfinite(self.x) or self.x < 0.0:
            raise ValueError(f"argument must be >= 0, got {self.x!r}")


def generalized_laguerre(p: LaguerreParams) -> float:
    """L_n^(nu)(x) for real order nu > -1."""
    return float(laguerre_values(p.n, p.nu, np.asarray(p.x, dtype=float)))


def laguerre_values(n: int, nu: float, x: np.ndarray) -> np.ndarray:
    """Vectorized L_n^(nu) over an array of arguments.

    Upward three-term recurrence in the degree; exact at n = 0, 1 and
    stable for the bound-state range used here (n <= a few tens).
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if nu <= -1.0:
        raise ValueError("order must be > -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + nu - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + nu - x) * cur - (k + nu) * prev) / (k + 1)
    return cur


def radial_norm(f: np.ndarray, r: np.ndarray, *, reduced: bool = False,
                method: str = "simpson") -> float:
    """Squared radial norm of a sampled function.

    Integrates f(r)^2 r^2 dr for a full radial function, or f(r)^2 dr in
    reduced mode (functions already multiplied by r).  Simpson is
    O(h^4) on smooth integrands; trapezoid is O(h^2).
    """
    f = np.asarray(f, dtype=float)
    r = np.asarray(r, dtype=float)
    if f.shape != r.shape or r.ndim != 1:
        raise ValueError("f and grid must be 1-d arrays of equal length")
    if r.size < 3 or np.any(np.diff(r) <= 0):
        raise ValueError("grid must be strictly increasing with >= 3 points")
    if not np.all(np.isfinite(f)):
        raise ValueError("sampled function must be finite")
    w = f * f if reduced else f * f * r * r
    if method == "simpson":
        return float(simpson(w, x=r))
    if method == "trapezoid":
        return float(np.trapezoid(w, x=r))
    raise ValueError(f"unknown quadrature method {method!r}")
