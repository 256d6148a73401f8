import math

import numpy as np
import pytest
from scipy.integrate import simpson

from dirac_kepler import LaguerreParams, generalized_laguerre, laguerre_values, ln_gamma, radial_norm


# --- independent oracle: finite-series Laguerre ---------------------------

def _binom_real(top: float, k: int) -> float:
    out = 1.0
    for i in range(1, k + 1):
        out *= (top - k + i) / i
    return out


def laguerre_series(n: int, nu: float, x: float) -> float:
    """sum_k (-1)^k C(n + nu, n - k) x^k / k!"""
    return sum((-1) ** k * _binom_real(n + nu, n - k) * x**k / math.factorial(k)
               for k in range(n + 1))


# --- ln_gamma --------------------------------------------------------------

def test_ln_gamma_at_one():
    assert abs(ln_gamma(1.0)) <= 1e-13


def test_ln_gamma_half():
    # Gamma(1/2) = sqrt(pi)
    assert ln_gamma(0.5) == pytest.approx(0.5723649429247001, abs=1e-13)


def test_ln_gamma_factorial():
    # Gamma(11) = 10!
    assert ln_gamma(11.0) == pytest.approx(15.104412573075516, rel=1e-13)


def test_ln_gamma_against_stdlib():
    for x in np.logspace(-3, 2.5, 200):
        assert ln_gamma(float(x)) == pytest.approx(math.lgamma(x), rel=1e-13, abs=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, float("nan"), float("inf")])
def test_ln_gamma_rejects(x):
    with pytest.raises(ValueError):
        ln_gamma(x)


# --- generalized Laguerre ---------------------------------------------------

@pytest.mark.parametrize("nu", [-0.5, 0.0, 1.1, 4.2])
@pytest.mark.parametrize("x", [0.0, 0.7, 13.0])
def test_laguerre_degree_zero(nu, x):
    assert generalized_laguerre(LaguerreParams(0, nu, x)) == 1.0


def test_laguerre_degree_one():
    # L_1^(nu)(x) = 1 + nu - x
    assert generalized_laguerre(LaguerreParams(1, 0.2, 0.5)) == pytest.approx(0.7, abs=1e-15)


def test_laguerre_against_series_frozen():
    # series oracle value for n=3, nu=1.1, x=2.0
    assert laguerre_series(3, 1.1, 2.0) == pytest.approx(-1.394833333333332, rel=1e-14)
    got = generalized_laguerre(LaguerreParams(3, 1.1, 2.0))
    assert got == pytest.approx(-1.394833333333332, rel=1e-12)


@pytest.mark.parametrize("nu", [-0.9, -0.5, 0.2, 1.1, 3.7, 5.0])
@pytest.mark.parametrize("x", [0.0, 0.3, 1.7, 12.5, 50.0])
def test_laguerre_recurrence_matches_series(nu, x):
    for n in range(11):
        ref = laguerre_series(n, nu, x)
        got = generalized_laguerre(LaguerreParams(n, nu, x))
        assert got == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(ref)))


def test_laguerre_orthogonality():
    # integral of x^nu e^-x L_m L_n dx vanishes for m != n
    nu = 0.7
    x = np.linspace(1e-8, 60.0, 200001)
    w = x**nu * np.exp(-x)
    funcs = [laguerre_values(n, nu, x) for n in range(4)]
    norms = [simpson(w * f * f, x=x) for f in funcs]
    for m in range(4):
        for n in range(m + 1, 4):
            cross = simpson(w * funcs[m] * funcs[n], x=x)
            assert abs(cross) / math.sqrt(norms[m] * norms[n]) < 1e-6


@pytest.mark.parametrize("args", [(-1, 0.2, 0.5), (2, -1.0, 0.5), (2, -1.5, 0.5),
                                  (2, 0.2, -0.5)])
def test_laguerre_params_rejects(args):
    with pytest.raises(ValueError):
        LaguerreParams(*args)


# --- radial quadrature -------------------------------------------------------

def test_radial_norm_constant_reduced():
    r = np.linspace(0.0, 1.0, 1001)
    assert radial_norm(np.ones_like(r), r, reduced=True) == pytest.approx(1.0, abs=1e-12)


def test_radial_norm_exponential_reduced():
    r = np.linspace(0.0, 40.0, 40001)
    f = np.exp(-r)
    assert radial_norm(f, r, reduced=True) == pytest.approx(0.5, abs=1e-8)


def test_radial_norm_full_vs_reduced():
    # f(r) = e^-r in r^2 measure equals g(r) = r e^-r in the reduced one;
    # closed form: integral of r^2 e^-2r dr = Gamma(3)/2^3 = 1/4
    r = np.linspace(0.0, 50.0, 50001)
    full = radial_norm(np.exp(-r), r)
    reduced = radial_norm(r * np.exp(-r), r, reduced=True)
    assert full == pytest.approx(0.25, abs=1e-9)
    assert reduced == pytest.approx(full, rel=1e-12)


def test_radial_norm_quadrature_orders():
    # halving h must shrink the error ~4x for trapezoid, ~16x for simpson
    exact = 0.5 * (1.0 - math.exp(-20.0))

    def err(n, method):
        r = np.linspace(0.0, 10.0, n)
        return abs(radial_norm(np.exp(-r), r, reduced=True, method=method) - exact)

    assert err(201, "trapezoid") / err(401, "trapezoid") == pytest.approx(4.0, rel=0.15)
    assert err(201, "simpson") / err(401, "simpson") == pytest.approx(16.0, rel=0.3)


def test_radial_norm_rejects():
    r = np.linspace(0.0, 1.0, 101)
    with pytest.raises(ValueError):
        radial_norm(np.ones_like(r), r[::-1])
    with pytest.raises(ValueError):
        radial_norm(np.full_like(r, np.nan), r)
    with pytest.raises(ValueError):
        radial_norm(np.ones_like(r), r, method="midpoint")
    bad = r.copy()
    bad[50] = bad[49]  # repeated point
    with pytest.raises(ValueError):
        radial_norm(np.ones_like(r), bad)
