"""Two-site reduced density matrices and spin correlators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import AmbiguityError, RDMStructureError
from .hamiltonian import CouplingParams, StateVector, spin_exchange_matrix
from .spectra import lowest_levels

STRUCTURE_TOL = 1e-10


@dataclass(frozen=True)
class TwoSiteRDM:
    """rho_ij in the basis (uu, ud, du, dd), with v = rho[uu,uu], w = rho[ud,ud],
    z = rho[ud,du]."""

    v: float
    w: float
    z: complex
    sites: tuple
    matrix: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def _pair_view(amps: np.ndarray, n_sites: int, i: int, j: int) -> np.ndarray:
    """Reshape full-basis amplitudes to (4, rest) with rows uu, ud, du, dd."""
    t = amps.reshape((2,) * n_sites)
    x = np.moveaxis(t, [n_sites - 1 - i, n_sites - 1 - j], [0, 1]).reshape(4, -1)
    return x[::-1]


def two_site_operator_trace(bra: StateVector, ket: StateVector, i: int, j: int) -> np.ndarray:
    """Tr_{rest} |ket><bra| on sites (i, j): a 4x4 matrix in (uu, ud, du, dd)."""
    n = ket.n_sites
    xk = _pair_view(ket.full_amplitudes(), n, i, j)
    xb = xk if bra is ket else _pair_view(bra.full_amplitudes(), n, i, j)
    return xk @ xb.conj().T


def reduced_density_matrix(state: StateVector, i: int, j: int, check: bool = True) -> TwoSiteRDM:
    """Two-site reduced density matrix of ``state`` (normalized internally).

    With ``check`` the symmetric form (equal uu/dd and ud/du diagonals, no
    other off-diagonals) is enforced; the raised error carries the matrix.
    """
    if i == j:
        raise ValueError("need two distinct sites")
    n = state.n_sites
    i, j = i % n, j % n
    rho = two_site_operator_trace(state, state, i, j) / state.norm() ** 2
    if check:
        off = rho.copy()
        off[1, 2] = off[2, 1] = 0
        np.fill_diagonal(off, 0)
        bad = (
            abs(rho[0, 0] - rho[3, 3]) > STRUCTURE_TOL
            or abs(rho[1, 1] - rho[2, 2]) > STRUCTURE_TOL
            or np.abs(off).max() > STRUCTURE_TOL
        )
        if bad:
            raise RDMStructureError(f"rho_({i},{j}) lacks the (v, w, z) form", rho)
    return TwoSiteRDM(float(rho[0, 0].real), float(rho[1, 1].real), complex(rho[1, 2]), (i, j), rho)


def isotropic_correlator(state: StateVector, i: int, j: int) -> float:
    """<sigma_i . sigma_j> = 4 Tr(rho_ij S.S)."""
    rho = reduced_density_matrix(state, i, j, check=False).matrix
    return float(4.0 * np.trace(rho @ spin_exchange_matrix()).real)


def correlation_matrix(state: StateVector, other: StateVector | None = None) -> np.ndarray:
    """All <sigma_i . sigma_j> at once (diagonal 3); with ``other`` the
    transition elements <state| sigma_i . sigma_j |other>."""
    a = state.in_configuration_basis()
    if other is None:
        m = kernels.pair_correlations(a.configs, a.n_sites, a.amplitudes, a.amplitudes)
        return m.real / a.norm() ** 2
    b = other.in_configuration_basis()
    if a.sz_twice != b.sz_twice:
        a, b = a.in_full_basis(), b.in_full_basis()
    return kernels.pair_correlations(a.configs, a.n_sites, a.amplitudes, b.amplitudes)


def bond_sums(state: StateVector) -> tuple[float, float]:
    """(h0, h): ring sums of <S_i.S_{i+1}> and <S_i.S_{i+2}> over all N sites."""
    c = correlation_matrix(state) / 4.0
    n = state.n_sites
    i = np.arange(n)
    return float(c[i, (i + 1) % n].sum()), float(c[i, (i + 2) % n].sum())


@dataclass(frozen=True)
class CorrelatorReport:
    g_dot: np.ndarray  # g_dot[a - 1] = ring average of <sigma_i . sigma_{i+a}>, a = 1..N/2
    h0: float
    h: float
    pair_sum: float  # sum over unordered pairs of <S_i . S_j>

    @property
    def alphas(self) -> np.ndarray:
        return np.arange(1, len(self.g_dot) + 1)


def correlator_report(state: StateVector) -> CorrelatorReport:
    c = correlation_matrix(state)
    n = state.n_sites
    i = np.arange(n)
    g = np.array([c[i, (i + a) % n].mean() for a in range(1, n // 2 + 1)])
    h0 = c[i, (i + 1) % n].sum() / 4.0
    h = c[i, (i + 2) % n].sum() / 4.0
    pair_sum = np.triu(c, 1).sum() / 4.0
    return CorrelatorReport(g, float(h0), float(h), float(pair_sum))


@dataclass(frozen=True)
class DerivativeCheck:
    """Finite-difference slopes of E_g next to the bond sums they should equal."""

    dE_dj0: float
    h0: float
    dE_dj: float
    h: float

    @property
    def pairs(self):
        return (self.dE_dj0, self.h0), (self.dE_dj, self.h)


def _ground(params: CouplingParams):
    res = lowest_levels(params, 2)
    if len(res.ground_group) > 1:
        raise AmbiguityError(f"ground state degenerate at j1={params.j1}, j2={params.j2}")
    return res.ground


def energy_derivative_check(params: CouplingParams, delta: float = 1e-4) -> DerivativeCheck:
    """Central differences of E_g in J0 and in J (J1 and J2 moved together)
    against h0 and h of the ground state."""
    g = _ground(params)
    shifted = {
        "j0+": params.with_j0(params.j0 + delta),
        "j0-": params.with_j0(params.j0 - delta),
        "j+": CouplingParams(params.n_sites, params.j0, params.j1 + delta, params.j2 + delta),
        "j-": CouplingParams(params.n_sites, params.j0, params.j1 - delta, params.j2 - delta),
    }
    e = {}
    for key, p in shifted.items():
        lv = _ground(p)
        if (lv.sz_twice, lv.momentum_index) != (g.sz_twice, g.momentum_index):
            raise AmbiguityError(f"ground sector changes within delta={delta} ({key})")
        e[key] = lv.energy
    h0, h = bond_sums(g.vector)
    return DerivativeCheck(
        (e["j0+"] - e["j0-"]) / (2 * delta), h0, (e["j+"] - e["j-"]) / (2 * delta), h
    )
