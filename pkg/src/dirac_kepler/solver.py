"""Independent numeric bound-state solver for the coupled radial equations.

Two-sided shooting on a log-spaced grid: outward integration from a
power-series start G, F ~ r^gamma at r_min, inward integration from an
exponential-decay start at the tail, and a scale-invariant Wronskian
defect

    defect(E) = (G_out F_in - G_in F_out) / (|out| |in|)   at r_match

whose zeros in E are the eigenvalues.  The Wronskian of two solutions of
the first-order system is r-independent, so the match radius only
affects conditioning, never the root location.

Bracketing uses Sturm-style node counting on the full outward pass:
counting G nodes gives a staircase that is nondecreasing in E on the
positive side of the gap, and counting F nodes gives the mirror
staircase toward E = -1 (the F component is the large one for the
negative-energy branch).  Each staircase jump is localized by bisection
and polished by a bracketed secant iteration on the defect.

The search never consults the closed-form spectrum: seeds, brackets and
refinements are all internal, so agreement with the analytic branch
energies is a genuine two-route check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from ._integrate import kernel_mode, rk4_scan, rk4_trace, warm_up
from .params import Channel, CouplingParams, channel_from_kappa

__all__ = [
    "RadialGrid",
    "ShootResult",
    "DiracRadialSolution",
    "dirac_rhs",
    "default_grid",
    "shoot_and_match",
    "find_eigenvalues",
    "small_r_exponent",
    "kernel_mode",
    "warm_up",
]

# Inward integrations start where the bound tail has decayed by e^-33;
# beyond that the seed's asymptotic error is far below the defect noise.
_TAIL_EXPONENT = 33.0
# Node-counting staircases are sampled no closer to E = 0 than this; the
# two branches are separated by the gap interior on the whole subcritical
# domain with alpha < |kappa|.
_EDGE = 1e-4
_DEFAULT_WINDOW = (-0.999, 0.999)


@dataclass(frozen=True)
class RadialGrid:
    """Radial mesh; the shooting kernels require log spacing.

    r_min ~ 1e-6 (in units hbar/(m c)) keeps the power-series start
    error negligible; r_max must cover the slowest relevant decay,
    r_max >= 33/lambda for lambda = sqrt(1 - E^2).
    """

    r_min: float
    r_max: float
    n: int
    spacing: str = "log"

    def __post_init__(self):
        if not (0.0 < self.r_min < self.r_max):
            raise ValueError("need 0 < r_min < r_max")
        if self.n < 64:
            raise ValueError("grid too coarse (n < 64)")
        if self.spacing not in ("log", "uniform"):
            raise ValueError(f"unknown spacing {self.spacing!r}")

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.exp(np.linspace(math.log(self.r_min), math.log(self.r_max), self.n))
        return np.linspace(self.r_min, self.r_max, self.n)


def default_grid(window: tuple[float, float] = _DEFAULT_WINDOW, *,
                 r_min: float = 1e-6, points_per_decade: int = 500) -> RadialGrid:
    """Log grid sized for every |E| inside the window."""
    _validate_window(window)
    edge = max(abs(window[0]), abs(window[1]))
    lam_min = math.sqrt(1.0 - edge * edge)
    r_max = (_TAIL_EXPONENT + 2.0) / lam_min
    n = max(1200, int(math.ceil(math.log10(r_max / r_min) * points_per_decade)))
    return RadialGrid(r_min=r_min, r_max=r_max, n=n, spacing="log")


def _validate_window(window) -> None:
    lo, hi = window
    if not (-1.0 < lo < hi < 1.0):
        raise ValueError(f"window must satisfy -1 < lo < hi < 1, got {window!r}")


def dirac_rhs(r, g, f, energy: float, kappa: int, c: CouplingParams):
    """Right-hand side of the reduced radial system at radius r > 0.

    G' = -(kappa/r) G + (E + m*(r) - U(r)) F
    F' = +(kappa/r) F - (E - m*(r) - U(r)) G

    with m*(r) = 1 + beta_s/r and U(r) = -alpha/r.  The sign convention
    reproduces the standard pure-vector spectrum at beta_s = 0.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    m_star = 1.0 + c.beta_s / r
    u_pot = -c.alpha / r
    dg = -(kappa / r) * g + (energy + m_star - u_pot) * f
    df = (kappa / r) * f - (energy - m_star - u_pot) * g
    return dg, df


@dataclass(frozen=True)
class ShootResult:
    """One defect evaluation: match defect plus outward node counts."""

    defect: float
    nodes_g: int
    nodes_f: int
    r_match: float


@dataclass
class DiracRadialSolution:
    """A converged bound state on its grid.

    g and f are the reduced radial components, normalized so that the
    integral of (G^2 + F^2) dr is 1.  node_index is the excitation label
    within the state's branch (0 for the branch ground state); nodes_g
    and nodes_f are raw sign-change counts of the assembled components.
    """

    grid: RadialGrid
    r: np.ndarray
    g: np.ndarray
    f: np.ndarray
    energy: float
    kappa: int
    nodes_g: int
    nodes_f: int
    node_index: int
    branch: str
    defect: float


class _ChannelContext:
    """Per-(channel, grid) data shared by every defect evaluation."""

    def __init__(self, kappa: int, c: CouplingParams, grid: RadialGrid):
        if grid.spacing != "log":
            raise ValueError("shooting requires a log-spaced grid")
        self.kappa = kappa
        self.c = c
        self.grid = grid
        self.channel = channel_from_kappa(kappa, c)
        self.t0 = math.log(grid.r_min)
        self.t1 = math.log(grid.r_max)
        self.h = (self.t1 - self.t0) / (grid.n - 1)
        self.bpa = c.beta_s + c.alpha
        self.bma = c.beta_s - c.alpha
        # regular-solution direction at the origin, from the indicial system
        a0, b0 = self.bpa, self.channel.gamma + kappa
        if max(abs(a0), abs(b0)) < 1e-14:
            a0, b0 = self.channel.gamma - kappa, self.bma
        s = math.hypot(a0, b0)
        self.seed_g = a0 / s
        self.seed_f = b0 / s
        # potential-insensitive match radius |U| + |m* - 1| ~ 1/2, clamped
        # into the grid interior and below every inward start
        r_match = max(2.0 * (c.alpha + abs(c.beta_s)), 20.0 * grid.r_min)
        r_match = min(r_match, (_TAIL_EXPONENT - 2.0) / 3.0)
        i_match = int(round((math.log(r_match) - self.t0) / self.h))
        self.i_match = min(max(i_match, 8), grid.n - 16)
        self.r_match = math.exp(self.t0 + self.i_match * self.h)

    def i_start(self, energy: float) -> int:
        lam = math.sqrt(max(1.0 - energy * energy, 1e-300))
        t_start = math.log(_TAIL_EXPONENT / lam)
        i = int(math.ceil((t_start - self.t0) / self.h))
        return min(max(i, self.i_match + 8), self.grid.n - 1)

    def shoot(self, energy: float) -> ShootResult:
        i_start = self.i_start(energy)
        _, _, nodes_g, nodes_f, g_out, f_out = rk4_scan(
            self.t0, self.h, i_start, self.seed_g, self.seed_f,
            self.kappa, energy, self.bpa, self.bma, self.i_match)
        t_start = self.t0 + i_start * self.h
        f_over_g = -math.sqrt((1.0 - energy) / (1.0 + energy))
        s = math.hypot(1.0, f_over_g)
        g_in, f_in, _, _, _, _ = rk4_scan(
            t_start, -self.h, i_start - self.i_match, 1.0 / s, f_over_g / s,
            self.kappa, energy, self.bpa, self.bma, -1)
        w = g_out * f_in - g_in * f_out
        defect = w / (math.hypot(g_out, f_out) * math.hypot(g_in, f_in))
        return ShootResult(defect=defect, nodes_g=nodes_g, nodes_f=nodes_f,
                           r_match=self.r_match)


def shoot_and_match(energy: float, kappa: int, c: CouplingParams,
                    grid: RadialGrid | None = None) -> ShootResult:
    """Match defect and outward node counts at one probe energy."""
    if not (-1.0 < energy < 1.0):
        raise ValueError(f"probe energy must lie in (-1, 1), got {energy!r}")
    if grid is None:
        grid = default_grid()
    return _ChannelContext(kappa, c, grid).shoot(energy)


def _refine_root(ctx: _ChannelContext, lo: float, hi: float,
                 tol: float = 1e-12) -> tuple[float, float] | None:
    """Bracketed secant iteration on the defect; returns (E, defect)."""
    lo = max(lo, -1.0 + 1e-9)
    hi = min(hi, 1.0 - 1e-9)
    f_lo = ctx.shoot(lo).defect
    f_hi = ctx.shoot(hi).defect
    if f_lo == 0.0:
        return lo, 0.0
    if f_hi == 0.0:
        return hi, 0.0
    # expand the bracket a little if the node jump sits marginally off it
    width = hi - lo
    tries = 0
    while f_lo * f_hi > 0.0 and tries < 12:
        lo = max(lo - width, -1.0 + 1e-9)
        hi = min(hi + width, 1.0 - 1e-9)
        width *= 2.0
        f_lo = ctx.shoot(lo).defect
        f_hi = ctx.shoot(hi).defect
        tries += 1
    if f_lo * f_hi > 0.0:
        return None
    a, b, fa, fb = lo, hi, f_lo, f_hi
    x, fx = a, fa
    for _ in range(120):
        x = b - fb * (b - a) / (fb - fa)
        if not (a < x < b):
            x = 0.5 * (a + b)
        fx = ctx.shoot(x).defect
        if fx == 0.0 or (b - a) < tol:
            break
        if fa * fx < 0.0:
            b, fb = x, fx
        else:
            a, fa = x, fx
    return x, fx


def _locate_jump(count, lo: float, hi: float, level: int,
                 tol: float = 1e-7) -> tuple[float, float]:
    """Bisect the step (<= level) -> (> level) of a monotone staircase.

    count must be nondecreasing from lo to hi (callers orient the
    interval accordingly; hi may be below lo for the negative branch).
    """
    a, b = lo, hi
    while abs(b - a) > tol:
        mid = 0.5 * (a + b)
        if count(mid) <= level:
            a = mid
        else:
            b = mid
    return (a, b) if a < b else (b, a)


def _assemble(ctx: _ChannelContext, energy: float, defect: float,
              node_index: int, branch: str) -> DiracRadialSolution:
    """Trace both half-solutions at a converged energy and glue them."""
    n = ctx.grid.n
    i_m = ctx.i_match
    i_s = ctx.i_start(energy)
    out_g = np.empty(i_m + 1)
    out_f = np.empty(i_m + 1)
    rk4_trace(ctx.t0, ctx.h, i_m, ctx.seed_g, ctx.seed_f,
              ctx.kappa, energy, ctx.bpa, ctx.bma, out_g, out_f)
    n_in = i_s - i_m
    in_g = np.empty(n_in + 1)
    in_f = np.empty(n_in + 1)
    f_over_g = -math.sqrt((1.0 - energy) / (1.0 + energy))
    s0 = math.hypot(1.0, f_over_g)
    t_start = ctx.t0 + i_s * ctx.h
    rk4_trace(t_start, -ctx.h, n_in, 1.0 / s0, f_over_g / s0,
              ctx.kappa, energy, ctx.bpa, ctx.bma, in_g, in_f)
    in_g = in_g[::-1]  # now indexed i_m .. i_s
    in_f = in_f[::-1]
    # least-squares gluing scale at the match point
    denom = in_g[0] ** 2 + in_f[0] ** 2
    scale = (out_g[i_m] * in_g[0] + out_f[i_m] * in_f[0]) / denom
    g = np.zeros(n)
    f = np.zeros(n)
    g[:i_m + 1] = out_g
    f[:i_m + 1] = out_f
    g[i_m:i_s + 1] = scale * in_g
    f[i_m:i_s + 1] = scale * in_f
    r = ctx.grid.points()
    norm2 = simpson(g * g + f * f, x=r)
    g /= math.sqrt(norm2)
    f /= math.sqrt(norm2)
    if g[np.argmax(np.abs(g))] < 0:  # fix the overall sign deterministically
        g = -g
        f = -f
    nodes_g = int(np.sum(g[1:] * g[:-1] < 0))
    nodes_f = int(np.sum(f[1:] * f[:-1] < 0))
    return DiracRadialSolution(grid=ctx.grid, r=r, g=g, f=f, energy=energy,
                               kappa=ctx.kappa, nodes_g=nodes_g, nodes_f=nodes_f,
                               node_index=node_index, branch=branch, defect=defect)


def find_eigenvalues(kappa: int, c: CouplingParams,
                     window: tuple[float, float] = _DEFAULT_WINDOW,
                     n_max: int = 5,
                     grid: RadialGrid | None = None) -> list[DiracRadialSolution]:
    """All bound states of one channel inside the energy window.

    Positive-energy states are bracketed by the G-node staircase, the
    negative-energy branch by the F-node staircase (mirror roles of the
    large component); up to n_max + 1 excitations are returned per
    branch, labeled by node_index = 0, 1, ... from each branch's ground
    state.  An empty list is a valid outcome.  Results are sorted by
    energy and never seeded from the closed-form spectrum.
    """
    _validate_window(window)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    lo, hi = window
    if grid is None:
        grid = default_grid(window)
    ctx = _ChannelContext(kappa, c, grid)
    found: list[DiracRadialSolution] = []

    def harvest(side_lo: float, side_hi: float, count, branch: str) -> None:
        # staircase oriented so that count is nondecreasing lo -> hi
        c_lo = count(side_lo)
        c_hi = count(side_hi)
        for rel, level in enumerate(range(c_lo, min(c_hi, c_lo + n_max + 1))):
            a, b = _locate_jump(count, side_lo, side_hi, level)
            got = _refine_root(ctx, a - 1e-6, b + 1e-6)
            if got is None:
                continue
            energy, defect = got
            if lo < energy < hi:
                found.append(_assemble(ctx, energy, defect, rel, branch))

    if hi > _EDGE:
        harvest(max(lo, _EDGE), hi, lambda e: ctx.shoot(e).nodes_g, "+")
    if lo < -_EDGE:
        harvest(min(hi, -_EDGE), lo, lambda e: ctx.shoot(e).nodes_f, "-")
    found.sort(key=lambda sol: sol.energy)
    return found


def small_r_exponent(sol: DiracRadialSolution, n_points: int = 50,
                     skip: int = 4) -> float:
    """Fitted power-law exponent of G near the origin (should be gamma)."""
    r = sol.r[skip:skip + n_points]
    g = np.abs(sol.g[skip:skip + n_points])
    if np.any(g == 0):
        raise ValueError("G vanishes inside the fit window")
    slope = np.polyfit(np.log(r), np.log(g), 1)[0]
    return float(slope)
