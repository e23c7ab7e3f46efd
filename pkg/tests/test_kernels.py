"""The compiled kernels and the numpy fallback must agree to rounding."""

import os
import subprocess
import sys

import numpy as np
import pytest

from spinring import _pykernels, kernels
from spinring.basis import SymmetrySector, build_momentum_basis, enumerate_sz_sector
from spinring.hamiltonian import CouplingParams, bonds

ck = pytest.importorskip("spinring._ckernels")


@pytest.mark.parametrize("n, up", [(6, 3), (8, 4), (10, 3), (12, 6)])
def test_enumeration_and_orbits(n, up):
    a = ck.fixed_popcount_states(n, up)
    b = _pykernels.fixed_popcount_states(n, up)
    assert np.array_equal(a, b)
    for x, y in zip(ck.find_representatives(a, n), _pykernels.find_representatives(a, n)):
        assert np.array_equal(x, y)
    assert np.array_equal(ck.orbit_periods(a, n), _pykernels.orbit_periods(a, n))


@pytest.mark.parametrize("n", [6, 8, 10])
def test_matvecs_and_coo(n, rng):
    p = CouplingParams(n, 1.0, 0.37, 0.81)
    bi, bj, bc = bonds(p)
    configs = enumerate_sz_sector(n, 0)
    x = rng.standard_normal(len(configs)) + 1j * rng.standard_normal(len(configs))
    assert np.allclose(ck.sz_matvec(configs, n, bi, bj, bc, x),
                       _pykernels.sz_matvec(configs, n, bi, bj, bc, x), atol=1e-12)
    for k in (0, 1, n // 2):
        mb = build_momentum_basis(SymmetrySector(0, k), n)
        y = rng.standard_normal(mb.dim) + 0j
        q = CouplingParams.uniform(n, 0.6)
        qi, qj, qc = bonds(q)
        args = (mb.representatives, mb.periods, n, k, qi, qj, qc)
        assert np.allclose(ck.momentum_matvec(*args, y), _pykernels.momentum_matvec(*args, y), atol=1e-12)
        dense = []
        for mod in (ck, _pykernels):
            r, c, v = mod.momentum_coo(*args)
            m = np.zeros((mb.dim, mb.dim), complex)
            np.add.at(m, (r, c), v)
            dense.append(m)
        assert np.allclose(*dense, atol=1e-12)


def test_pair_correlations(rng):
    n = 8
    configs = enumerate_sz_sector(n, 0)
    a = rng.standard_normal(len(configs)) + 1j * rng.standard_normal(len(configs))
    b = rng.standard_normal(len(configs)) + 1j * rng.standard_normal(len(configs))
    assert np.allclose(ck.pair_correlations(configs, n, a, b),
                       _pykernels.pair_correlations(configs, n, a, b), atol=1e-10)


def test_backend_switch():
    env = dict(os.environ, SPINRING_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import spinring.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_spectrum_matches():
    code = (
        "from spinring.spectra import lowest_levels;"
        "from spinring.hamiltonian import CouplingParams;"
        "print(repr(lowest_levels(CouplingParams.uniform(10, 0.8), 1).ground.energy))"
    )
    env = dict(os.environ, SPINRING_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    from spinring.spectra import lowest_levels

    e = lowest_levels(CouplingParams.uniform(10, 0.8), 1).ground.energy
    assert abs(float(out.stdout) - e) < 1e-10


def test_full_basis_lookup(rng):
    n = 8
    configs = np.arange(1 << n, dtype=np.int64)
    p = CouplingParams(n, 1.0, 0.4, 0.2)
    bi, bj, bc = bonds(p)
    x = rng.standard_normal(len(configs)) + 1j * rng.standard_normal(len(configs))
    assert np.allclose(ck.sz_matvec(configs, n, bi, bj, bc, x),
                       _pykernels.sz_matvec(configs, n, bi, bj, bc, x), atol=1e-12)
    assert np.allclose(ck.pair_correlations(configs, n, x, x),
                       _pykernels.pair_correlations(configs, n, x, x), atol=1e-10)


def test_rank_lookup_beyond_table_size(rng):
    # 24 sites with 2 up spins: too many sites for the dense table, small sector
    n = 24
    configs = ck.fixed_popcount_states(n, 2)
    i = np.arange(n, dtype=np.int64)
    bi, bj, bc = i, (i + 1) % n, np.ones(n)
    x = rng.standard_normal(len(configs)) + 0j
    assert np.allclose(ck.sz_matvec(configs, n, bi, bj, bc, x),
                       _pykernels.sz_matvec(configs, n, bi, bj, bc, x), atol=1e-12)
    assert np.allclose(ck.pair_correlations(configs, n, x, x),
                       _pykernels.pair_correlations(configs, n, x, x), atol=1e-10)
