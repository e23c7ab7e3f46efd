import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinring.basis import SymmetrySector, enumerate_sz_sector
from spinring.errors import NotMomentumEigenstateError, SolverError
from spinring.hamiltonian import CouplingParams, StateVector, hamiltonian_matrix, sparse_block
from spinring.spectra import (
    degenerate,
    lanczos,
    lowest_levels,
    measure_momentum,
    sector_ground,
    spin_from_s2,
    total_spin,
)


def _full_ground(p):
    return np.linalg.eigvalsh(hamiltonian_matrix(p, None))[0]


def test_mg_point_six_sites():
    res = lowest_levels(CouplingParams.uniform(6, 0.5), 2)
    g = res.ground_group
    assert len(g) == 2
    assert {lv.momentum_index for lv in g} == {0, 3}
    assert all(np.isclose(lv.energy, -2.25, atol=1e-12) for lv in g)


def test_six_sites_zero_j_has_momentum_pi():
    res = lowest_levels(CouplingParams.uniform(6, 0.0), 2)
    assert len(res.ground_group) == 1
    assert res.ground.momentum_index == 3
    assert np.isclose(res.ground.energy, _full_ground(CouplingParams.uniform(6, 0.0)), atol=1e-12)
    assert res.first_excited.energy > res.ground.energy


def test_eight_sites_large_j_against_dense():
    p = CouplingParams.uniform(8, 2.0)
    assert abs(lowest_levels(p, 1).ground.energy - _full_ground(p)) < 1e-10


def test_dimerized_uses_sz_blocks():
    p = CouplingParams(8, 1.0, 0.2, 0.9)
    res = lowest_levels(p, 3)
    assert res.ground.momentum_index is None
    assert abs(res.ground.energy - _full_ground(p)) < 1e-10


def test_lanczos_matches_dense_on_large_block():
    p = CouplingParams.uniform(12, 0.8)
    sec = SymmetrySector(0, 0)
    lz = sector_ground(p, sec, method="lanczos")
    dense = sector_ground(p, sec, method="dense")
    assert lz.residual < 1e-10
    assert abs(lz.energy - dense.energy) < 1e-10


def test_lanczos_direct(rng):
    h = sparse_block(CouplingParams.uniform(10, 0.3), 0).toarray()
    r = lanczos(lambda x: h @ x, h.shape[0], 2)
    assert np.allclose(r.values, np.linalg.eigvalsh(h)[:2], atol=1e-10)
    assert r.residuals.max() < 1e-9
    assert r.ground_history[-1] == pytest.approx(r.values[0])


def test_lanczos_failure_reports_residual(monkeypatch):
    import spinring.spectra as spectra

    monkeypatch.setattr(spectra, "MAX_LANCZOS_ITER", 3)
    real = spectra.lanczos

    def short(*a, **kw):
        kw["max_iter"] = 3
        return real(*a, **kw)

    monkeypatch.setattr(spectra, "lanczos", short)
    with pytest.raises(SolverError) as info:
        sector_ground(CouplingParams.uniform(12, 0.8), SymmetrySector(0, 0), method="lanczos")
    assert info.value.best_residual > 0


def test_lanczos_is_deterministic():
    p = CouplingParams.uniform(14, 0.6)
    a = sector_ground(p, SymmetrySector(0, 7))
    b = sector_ground(p, SymmetrySector(0, 7))
    assert a.energy == b.energy


def test_threads_give_identical_levels():
    p = CouplingParams.uniform(10, 0.7)
    a = lowest_levels(p, 4, threads=1)
    b = lowest_levels(p, 4, threads=4)
    assert [lv.energy for lv in a.levels] == [lv.energy for lv in b.levels]


def test_multiplets_reported_once():
    # J = 0 ring of 4: triplet above the singlet ground state
    res = lowest_levels(CouplingParams.uniform(4, 0.0), 3)
    assert [lv.sz_twice for lv in res.levels[:2]] == [0, 0]
    assert all(lv.sz_twice == 0 for lv in res.levels)


def test_measure_momentum_neel_combinations():
    configs = enumerate_sz_sector(6, 0)
    amps = np.zeros(len(configs), complex)
    i, j = np.searchsorted(configs, [0b010101, 0b101010])
    amps[i] = amps[j] = 1 / np.sqrt(2)
    assert measure_momentum(StateVector(6, amps, 0)) == (0, pytest.approx(1.0))
    amps[j] *= -1
    assert measure_momentum(StateVector(6, amps, 0)) == (3, pytest.approx(1.0))


def test_measure_momentum_strict():
    configs = enumerate_sz_sector(6, 0)
    amps = np.zeros(len(configs), complex)
    amps[0] = 1
    with pytest.raises(NotMomentumEigenstateError) as info:
        measure_momentum(StateVector(6, amps, 0), strict=True)
    assert info.value.fidelity < 0.999


def test_total_spin_examples():
    n = 6
    up = np.zeros(1 << n)
    up[-1] = 1
    assert np.isclose(total_spin(StateVector(n, up)), 12.0)
    g = lowest_levels(CouplingParams.uniform(10, 0.8), 1).ground
    assert abs(total_spin(g.vector)) < 1e-10
    assert spin_from_s2(12.0) == pytest.approx(3.0)


def test_degenerate_helper():
    assert degenerate(-2.25, -2.25 + 1e-10)
    assert not degenerate(-2.25, -2.25 + 1e-6)


@given(st.floats(0.0, 2.0), st.sampled_from([6, 8]))
def test_ground_energy_matches_dense(j, n):
    p = CouplingParams.uniform(n, j)
    res = lowest_levels(p, 1)
    assert abs(res.ground.energy - _full_ground(p)) < 1e-9
    idx, fid = measure_momentum(res.ground.vector)
    assert idx == res.ground.momentum_index and fid == pytest.approx(1.0, abs=1e-10)
