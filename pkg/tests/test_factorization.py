import numpy as np
import pytest

from dirac_kepler import CouplingParams, UNCORRECTED_SPIN_NOTE, smooth_test_pair, verify_factorization

FLAGSHIP = CouplingParams(alpha=0.2, beta_s=-0.5)


@pytest.mark.parametrize("kappa", [-1, 2])
def test_second_order_convergence(kappa):
    rep = verify_factorization(kappa, FLAGSHIP)
    assert rep.residual_half < rep.residual
    assert rep.order == pytest.approx(2.0, abs=0.2)


def test_free_field_composition_is_exact():
    # with the couplings off both sides reduce to the same discrete stencils
    rep = verify_factorization(-1, CouplingParams(alpha=0.0, beta_s=0.0), n=7801)
    assert rep.h == pytest.approx(1e-3, rel=1e-10)
    assert rep.residual <= 1e-10


def test_richardson_ratio_near_four():
    rep = verify_factorization(-1, FLAGSHIP)
    assert rep.residual / rep.residual_half == pytest.approx(4.0, rel=0.35)


def test_flaw_flag_reports_dimension_mismatch():
    rep = verify_factorization(-1, FLAGSHIP, reproduce_flaw=True)
    assert rep.notes == (UNCORRECTED_SPIN_NOTE,)
    assert "(2, 2)" in rep.notes[0] and "(4, 4)" in rep.notes[0]
    assert "not computed" in rep.notes[0]
    # without the flag the note is absent
    assert verify_factorization(-1, FLAGSHIP).notes == ()


def test_deterministic_given_seed():
    a = verify_factorization(-1, FLAGSHIP, seed=3)
    b = verify_factorization(-1, FLAGSHIP, seed=3)
    other = verify_factorization(-1, FLAGSHIP, seed=4)
    assert a == b
    assert a.residual != other.residual


def test_parameter_validation():
    with pytest.raises(ValueError):
        verify_factorization(0, FLAGSHIP)
    with pytest.raises(ValueError):
        verify_factorization(-1, FLAGSHIP, n=100)


def test_test_pair_is_compactly_supported():
    r = np.linspace(0.2, 8.0, 1601)
    u, v = smooth_test_pair(r, seed=0, support=(1.0, 7.0))
    assert np.all(u[r <= 1.0] == 0.0) and np.all(u[r >= 7.0] == 0.0)
    assert np.any(u != 0.0) and np.any(v != 0.0)
    # smooth: the bump decays to zero with all small increments at the edges
    assert np.max(np.abs(np.diff(u))) < 0.2
