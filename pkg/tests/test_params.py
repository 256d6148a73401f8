import math

import pytest

from dirac_kepler import (
    CouplingParams,
    PhysicalInputs,
    SupercriticalCouplingError,
    channel_from_kappa,
    derive_couplings,
)
from dirac_kepler.params import HBARC_EV_NM

# published constants used as oracle for the si-like mode
E2_HYDROGEN_EV_NM = 1.4399645      # q^2/(4 pi eps0)
ALPHA_FS = 0.0072973525693         # CODATA fine-structure constant


def test_natural_units_identity():
    c = derive_couplings(PhysicalInputs(mass=1.0, e2=0.2, a=-0.5))
    assert c.alpha == 0.2
    assert c.beta_s == -0.5


def test_free_particle():
    c = derive_couplings(PhysicalInputs(mass=1.0, e2=0.0, a=0.0))
    assert c.alpha == 0.0 and c.beta_s == 0.0


def test_si_like_hydrogen_alpha():
    inputs = PhysicalInputs(mass=510998.95, e2=E2_HYDROGEN_EV_NM, a=0.0, units="si-like")
    c = derive_couplings(inputs)
    assert c.alpha == pytest.approx(ALPHA_FS, rel=2e-7)
    assert 1.0 / c.alpha == pytest.approx(137.036, abs=1e-3)


def test_si_like_beta_s():
    # beta_s = (m c^2) a / (hbar c)
    inputs = PhysicalInputs(mass=1000.0, e2=0.0, a=-0.1, units="si-like")
    c = derive_couplings(inputs)
    assert c.beta_s == pytest.approx(-100.0 / HBARC_EV_NM, rel=1e-15)


def test_scale_consistency():
    # the same (alpha, beta_s) reached through different unit systems
    natural = derive_couplings(PhysicalInputs(mass=1.0, e2=0.2, a=-0.5))
    mc2 = 3121.7
    si = derive_couplings(PhysicalInputs(
        mass=mc2, e2=0.2 * HBARC_EV_NM, a=-0.5 * HBARC_EV_NM / mc2, units="si-like"))
    assert si.alpha == pytest.approx(natural.alpha, rel=1e-15)
    assert si.beta_s == pytest.approx(natural.beta_s, rel=1e-15)


@pytest.mark.parametrize("kwargs", [
    dict(mass=1.0, e2=-0.1, a=0.0),
    dict(mass=0.0, e2=0.1, a=0.0),
    dict(mass=-2.0, e2=0.1, a=0.0),
    dict(mass=float("nan"), e2=0.1, a=0.0),
    dict(mass=1.0, e2=float("inf"), a=0.0),
    dict(mass=1.0, e2=0.1, a=float("nan")),
    dict(mass=1.0, e2=0.1, a=0.0, units="cgs"),
])
def test_invalid_physical_inputs(kwargs):
    with pytest.raises(ValueError):
        PhysicalInputs(**kwargs)


def test_coupling_validation():
    with pytest.raises(ValueError):
        CouplingParams(alpha=-0.1, beta_s=0.0)
    with pytest.raises(ValueError):
        CouplingParams(alpha=float("nan"), beta_s=0.0)


def test_channel_flagship():
    c = CouplingParams(alpha=0.2, beta_s=-0.5)
    ch = channel_from_kappa(-1, c)
    # discriminant is exactly 1 + 0.25 - 0.04 = 1.21
    assert ch.gamma == pytest.approx(1.1, abs=1e-12)
    assert ch.l_star == pytest.approx(0.1, abs=1e-12)
    assert ch.j == 0.5 and ch.l == 0 and ch.sign == "upper"
    ch_plus = channel_from_kappa(1, c)
    assert ch_plus.gamma == pytest.approx(1.1, abs=1e-12)
    assert ch_plus.l_star == pytest.approx(1.1, abs=1e-12)
    assert ch_plus.j == 0.5 and ch_plus.l == 1 and ch_plus.sign == "lower"


def test_channel_equal_strength_is_integer():
    # |beta_s| = alpha collapses gamma to |kappa| exactly
    c = CouplingParams(alpha=0.3, beta_s=0.3)
    ch = channel_from_kappa(-1, c)
    assert ch.gamma == 1.0
    assert ch.l_star == 0.0
    c = CouplingParams(alpha=0.3, beta_s=-0.3)
    assert channel_from_kappa(-2, c).gamma == 2.0


def test_supercritical_raises_with_critical_alpha():
    c = CouplingParams(alpha=2.0, beta_s=0.5)
    with pytest.raises(SupercriticalCouplingError) as err:
        channel_from_kappa(-1, c)
    assert err.value.critical_alpha == pytest.approx(math.sqrt(1.25), rel=1e-15)
    # the boundary itself (gamma = 0) is also rejected
    with pytest.raises(SupercriticalCouplingError):
        channel_from_kappa(-1, CouplingParams(alpha=math.sqrt(1.25), beta_s=0.5))


def test_kappa_validation():
    c = CouplingParams(alpha=0.1, beta_s=0.0)
    with pytest.raises(ValueError):
        channel_from_kappa(0, c)
    with pytest.raises(TypeError):
        channel_from_kappa(1.5, c)


@pytest.mark.parametrize("kappa", [-4, -3, -2, -1, 1, 2, 3, 4])
def test_kappa_bijection(kappa):
    c = CouplingParams(alpha=0.2, beta_s=-0.5)
    ch = channel_from_kappa(kappa, c)
    assert abs(kappa) == ch.j + 0.5
    if kappa < 0:
        assert ch.sign == "upper" and kappa == -(ch.l + 1) and ch.j == ch.l + 0.5
    else:
        assert ch.sign == "lower" and kappa == ch.l and ch.j == ch.l - 0.5


@pytest.mark.parametrize("alpha,beta_s", [
    (0.1, -0.5), (0.2, -0.5), (0.5, -0.1), (0.3, 0.3), (0.0, 0.0), (0.4, 0.7),
])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_lstar_relations(alpha, beta_s, k):
    c = CouplingParams(alpha=alpha, beta_s=beta_s)
    lo = channel_from_kappa(-k, c)
    hi = channel_from_kappa(k, c)
    # l*(kappa<0) + 1 = l*(kappa>0) = gamma for equal |kappa|
    assert lo.l_star + 1 == pytest.approx(hi.l_star, abs=1e-14)
    assert hi.l_star == pytest.approx(lo.gamma, abs=1e-14)
    # integer l* exactly when gamma is integer
    gamma_int = abs(lo.gamma - round(lo.gamma)) < 1e-12
    lstar_int = abs(lo.l_star - round(lo.l_star)) < 1e-12
    assert gamma_int == lstar_int
