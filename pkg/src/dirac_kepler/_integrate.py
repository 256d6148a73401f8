"""Fixed-step RK4 kernels for the coupled radial equations, in ln r.

With t = ln r the reduced radial system

    G' = -(kappa/r) G + (E + 1 + (beta_s + alpha)/r) F
    F' = +(kappa/r) F - (E - 1 - (beta_s - alpha)/r) G

becomes division-free:

    dG/dt = -kappa G + ((E + 1) r + beta_s + alpha) F
    dF/dt = +kappa F - ((E - 1) r - (beta_s - alpha)) G,   r = e^t.

The kernels are compiled with numba when available (they dominate the
run time of eigenvalue searches); a pure-python fallback keeps the
package functional without it.  Both passes guard against overflow by
rescaling, which is harmless because every consumer is scale-invariant.
"""
from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


_RESCALE_LIMIT = 1e100


def _rk4_scan_py(t0, h, n_steps, g0, f0, kappa, energy, bpa, bma, i_rec):
    """Integrate n_steps of RK4; count sign changes; sample step i_rec.

    Returns (g_end, f_end, nodes_g, nodes_f, g_rec, f_rec) where the
    recorded pair is the state at t0 + i_rec*h (the initial state if
    i_rec <= 0, the final one if i_rec >= n_steps).
    """
    cgf = energy + 1.0
    cff = energy - 1.0
    g = g0
    f = f0
    g_rec = g0
    f_rec = f0
    nodes_g = 0
    nodes_f = 0
    t = t0
    for i in range(n_steps):
        if i == i_rec:
            g_rec = g
            f_rec = f
        r1 = math.exp(t)
        k1g = -kappa * g + (cgf * r1 + bpa) * f
        k1f = kappa * f - (cff * r1 - bma) * g
        r2 = math.exp(t + 0.5 * h)
        g2 = g + 0.5 * h * k1g
        f2 = f + 0.5 * h * k1f
        k2g = -kappa * g2 + (cgf * r2 + bpa) * f2
        k2f = kappa * f2 - (cff * r2 - bma) * g2
        g3 = g + 0.5 * h * k2g
        f3 = f + 0.5 * h * k2f
        k3g = -kappa * g3 + (cgf * r2 + bpa) * f3
        k3f = kappa * f3 - (cff * r2 - bma) * g3
        r4 = math.exp(t + h)
        g4 = g + h * k3g
        f4 = f + h * k3f
        k4g = -kappa * g4 + (cgf * r4 + bpa) * f4
        k4f = kappa * f4 - (cff * r4 - bma) * g4
        gn = g + (h / 6.0) * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        fn = f + (h / 6.0) * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        if gn * g < 0.0:
            nodes_g += 1
        if fn * f < 0.0:
            nodes_f += 1
        g = gn
        f = fn
        t = t0 + (i + 1) * h
        m = abs(g)
        if abs(f) > m:
            m = abs(f)
        if m > _RESCALE_LIMIT:
            g /= m
            f /= m
            if i >= i_rec:
                # keep the recorded pair on the same scale as the running state
                g_rec /= m
                f_rec /= m
    if i_rec >= n_steps:
        g_rec = g
        f_rec = f
    return g, f, nodes_g, nodes_f, g_rec, f_rec


def _rk4_trace_py(t0, h, n_steps, g0, f0, kappa, energy, bpa, bma, out_g, out_f):
    """Integrate and store all n_steps + 1 states into the output arrays.

    On overflow the stored prefix is rescaled together with the running
    state, so the trace stays a single consistent solution.
    """
    cgf = energy + 1.0
    cff = energy - 1.0
    g = g0
    f = f0
    out_g[0] = g
    out_f[0] = f
    t = t0
    for i in range(n_steps):
        r1 = math.exp(t)
        k1g = -kappa * g + (cgf * r1 + bpa) * f
        k1f = kappa * f - (cff * r1 - bma) * g
        r2 = math.exp(t + 0.5 * h)
        g2 = g + 0.5 * h * k1g
        f2 = f + 0.5 * h * k1f
        k2g = -kappa * g2 + (cgf * r2 + bpa) * f2
        k2f = kappa * f2 - (cff * r2 - bma) * g2
        g3 = g + 0.5 * h * k2g
        f3 = f + 0.5 * h * k2f
        k3g = -kappa * g3 + (cgf * r2 + bpa) * f3
        k3f = kappa * f3 - (cff * r2 - bma) * g3
        r4 = math.exp(t + h)
        g4 = g + h * k3g
        f4 = f + h * k3f
        k4g = -kappa * g4 + (cgf * r4 + bpa) * f4
        k4f = kappa * f4 - (cff * r4 - bma) * g4
        g = g + (h / 6.0) * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        f = f + (h / 6.0) * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        t = t0 + (i + 1) * h
        m = abs(g)
        if abs(f) > m:
            m = abs(f)
        if m > _RESCALE_LIMIT:
            g /= m
            f /= m
            for k in range(i + 1):
                out_g[k] /= m
                out_f[k] /= m
        out_g[i + 1] = g
        out_f[i + 1] = f


if HAVE_NUMBA:
    rk4_scan = _njit(cache=True)(_rk4_scan_py)
    rk4_trace = _njit(cache=True)(_rk4_trace_py)
else:  # pragma: no cover
    rk4_scan = _rk4_scan_py
    rk4_trace = _rk4_trace_py


def kernel_mode() -> str:
    return "numba" if HAVE_NUMBA else "python"


def warm_up() -> None:
    """Trigger JIT compilation once (no-op for the python fallback)."""
    rk4_scan(math.log(1e-6), 0.01, 8, 0.5, 0.5, -1, 0.5, 0.1, -0.1, 2)
    buf_g = np.empty(9)
    buf_f = np.empty(9)
    rk4_trace(math.log(1e-6), 0.01, 8, 0.5, 0.5, -1, 0.5, 0.1, -0.1, buf_g, buf_f)
