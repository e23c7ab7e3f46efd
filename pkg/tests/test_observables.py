import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_state
from spinring.errors import AmbiguityError, RDMStructureError
from spinring.hamiltonian import CouplingParams, StateVector
from spinring.mg_analytics import dimer_pair
from spinring.observables import (
    bond_sums,
    correlation_matrix,
    correlator_report,
    energy_derivative_check,
    isotropic_correlator,
    reduced_density_matrix,
)
from spinring.spectra import lowest_levels


def _two_site(amps):
    """Four sites: pair (0, 1) in the given state, sites 2, 3 up."""
    full = np.zeros(16, complex)
    # amps in (uu, ud, du, dd) order for (site0, site1)
    for idx, (s0, s1) in enumerate([(1, 1), (1, 0), (0, 1), (0, 0)]):
        full[s0 | (s1 << 1) | 0b1100] = amps[idx]
    return StateVector(4, full)


def test_singlet_rdm():
    s = _two_site(np.array([0, 1, -1, 0]) / np.sqrt(2))
    rdm = reduced_density_matrix(s, 0, 1)
    assert rdm.v == pytest.approx(0) and rdm.w == pytest.approx(0.5)
    assert rdm.z == pytest.approx(-0.5)
    assert isotropic_correlator(s, 0, 1) == pytest.approx(-3)


def test_triplet_correlator():
    s = _two_site(np.array([1, 0, 0, 0]))
    assert isotropic_correlator(s, 0, 1) == pytest.approx(1)


def test_structure_check_carries_matrix():
    s = _two_site(np.array([1, 0, 0, 0]))  # uu only: v != rho[dd, dd]
    with pytest.raises(RDMStructureError) as info:
        reduced_density_matrix(s, 0, 1)
    assert info.value.matrix.shape == (4, 4)
    assert reduced_density_matrix(s, 0, 1, check=False).trace == pytest.approx(1)


def test_random_state_rdm_axioms(rng):
    s = random_state(rng, 8)
    for i, j in [(0, 1), (2, 5), (7, 3)]:
        rdm = reduced_density_matrix(s, i, j, check=False)
        assert rdm.trace == pytest.approx(1, abs=1e-12)
        assert np.allclose(rdm.matrix, rdm.matrix.conj().T, atol=1e-12)
        assert rdm.eigenvalues().min() > -1e-12


def test_bond_sums_reproduce_energy():
    p = CouplingParams.uniform(6, 0.5)
    g = lowest_levels(p, 1).ground
    h0, h = bond_sums(g.vector)
    assert p.j0 * h0 + p.j * h == pytest.approx(-2.25, abs=1e-12)


def test_bond_sums_polarized():
    amps = np.zeros(1 << 8)
    amps[-1] = 1
    assert bond_sums(StateVector(8, amps)) == pytest.approx((2.0, 2.0))


def test_mg_dimer_energy():
    phi1, _ = dimer_pair(8)
    h0, h = bond_sums(phi1)
    assert h0 + 0.5 * h == pytest.approx(-3.0, abs=1e-12)


def test_correlation_matrix_matches_rdm_route(rng):
    s = random_state(rng, 8)
    c = correlation_matrix(s)
    for i, j in [(0, 1), (1, 4), (6, 2)]:
        assert c[i, j] == pytest.approx(isotropic_correlator(s, i, j), abs=1e-12)
    assert np.allclose(np.diag(c), 3.0)


def test_correlator_report_ground_state():
    g = lowest_levels(CouplingParams.uniform(6, 0.0), 1).ground
    rep = correlator_report(g.vector)
    assert len(rep.g_dot) == 3
    assert rep.pair_sum == pytest.approx(-3 * 6 / 8, abs=1e-10)


@pytest.mark.parametrize("n, j", [(6, 0.2), (8, 0.2)])
def test_hellmann_feynman(n, j):
    d = energy_derivative_check(CouplingParams.uniform(n, j), 1e-4)
    assert abs(d.dE_dj0 - d.h0) < 1e-6
    assert abs(d.dE_dj - d.h) < 1e-6


def test_hellmann_feynman_refuses_degenerate_point():
    with pytest.raises(AmbiguityError):
        energy_derivative_check(CouplingParams.uniform(6, 0.5))


@given(st.integers(0, 10**6))
def test_rdm_and_correlator_agree(seed):
    s = random_state(np.random.default_rng(seed), 6)
    rho = reduced_density_matrix(s, 0, 3, check=False).matrix
    sigma = np.array([[1, 0, 0, 0], [0, -1, 2, 0], [0, 2, -1, 0], [0, 0, 0, 1]])
    assert np.trace(rho @ sigma).real == pytest.approx(isotropic_correlator(s, 0, 3), abs=1e-12)
