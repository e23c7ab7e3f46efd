"""Closed forms at and near the Majumdar-Ghosh point J = J0/2.

Dimer products phi1 = [01][23]...[N-2 N-1] and phi2 = [12][34]...[N-1 0],
their momentum combinations, the exact six-site ground states, rotated
degenerate pairs and the nearest-neighbour concurrence difference between
them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import enumerate_sz_sector, rotate_bits
from .concurrence import (
    DEFAULT_CONVENTION,
    convention_weights,
)
from .errors import InvalidCoveringError, NotDegenerateError, UnsupportedSizeError
from .hamiltonian import CouplingParams, StateVector, apply_hamiltonian
from .observables import two_site_operator_trace
from .spectra import measure_momentum


@dataclass(frozen=True)
class DimerCovering:
    """Disjoint singlet pairs; [i j] = (|u_i d_j> - |d_i u_j>)/sqrt 2, i listed first."""

    pairs: tuple
    n_sites: int

    def __post_init__(self):
        sites = [s for p in self.pairs for s in p]
        if sorted(sites) != list(range(self.n_sites)):
            raise InvalidCoveringError(f"{self.pairs} is not a perfect matching of {self.n_sites} sites")

    @classmethod
    def even_bonds(cls, n_sites: int) -> "DimerCovering":
        return cls(tuple((i, i + 1) for i in range(0, n_sites, 2)), n_sites)

    @classmethod
    def odd_bonds(cls, n_sites: int) -> "DimerCovering":
        # the wrap-around pair keeps site N-1 first
        return cls(tuple((i, (i + 1) % n_sites) for i in range(1, n_sites, 2)), n_sites)


def build_dimer_state(covering: DimerCovering) -> StateVector:
    n = covering.n_sites
    pairs = np.array(covering.pairs, dtype=np.int64)
    npairs = len(pairs)
    choice = np.arange(1 << npairs, dtype=np.int64)
    flips = (choice[:, None] >> np.arange(npairs)) & 1  # 1: down on the first site
    first_up = np.int64(1) << pairs[:, 0]
    second_up = np.int64(1) << pairs[:, 1]
    configs = np.where(flips, second_up, first_up).sum(axis=1)
    signs = np.where(flips.sum(axis=1) % 2, -1.0, 1.0)
    basis = enumerate_sz_sector(n, 0)
    amps = np.zeros(len(basis), dtype=np.complex128)
    amps[np.searchsorted(basis, configs)] = signs * 2.0 ** (-npairs / 2)
    return StateVector(n, amps, 0)


def dimer_pair(n_sites: int) -> tuple[StateVector, StateVector]:
    return (
        build_dimer_state(DimerCovering.even_bonds(n_sites)),
        build_dimer_state(DimerCovering.odd_bonds(n_sites)),
    )


def mg_ground_states(n_sites: int) -> tuple[StateVector, StateVector]:
    """psi1 = (phi1 - phi2)/sqrt(Omega1), psi2 = (phi1 + phi2)/sqrt(Omega2).

    Which of the two carries k = 0 depends on the dimer sign convention;
    read it off with ``measure_momentum`` (see ``mg_momenta``).
    """
    if n_sites < 6 or n_sites % 2:
        raise UnsupportedSizeError(f"need even N >= 6, got {n_sites}")
    phi1, phi2 = dimer_pair(n_sites)
    return (phi1 - phi2).normalized(), (phi1 + phi2).normalized()


def mg_momenta(n_sites: int) -> tuple[int, int]:
    psi1, psi2 = mg_ground_states(n_sites)
    return measure_momentum(psi1, strict=True)[0], measure_momentum(psi2, strict=True)[0]


@dataclass(frozen=True)
class MGConstants:
    xi: float
    chi: float

    @property
    def max_difference(self) -> float:
        """3 xi chi^2: the nearest-neighbour difference at theta = 0 or pi."""
        return 3.0 * self.xi * self.chi ** 2


def mg_constants(n_sites: int) -> MGConstants:
    xi = 0.5 ** (n_sites / 2 - 2)
    return MGConstants(xi, (4.0 - xi ** 2) ** -0.5)


@dataclass(frozen=True)
class N6ExactSolution:
    eta: float
    omega3: float
    e1: float
    e2: float
    branch: str  # "J_above_half" or "J_below_half"
    c1_pair: float  # nearest-neighbour concurrence of the ground state

    @property
    def ground_energy(self) -> float:
        return self.e1 if self.branch == "J_above_half" else self.e2


def n6_eta(j: float, j0: float = 1.0) -> float:
    """eta(J); written as 2(2J - J0)/(3J0 - J + sqrt D), which equals
    (J - 3J0 + sqrt D)/(2(J - J0)) with D = 9J^2 - 18 J J0 + 13 J0^2 and
    stays finite at J = J0 (value 1/2)."""
    root = np.sqrt(9 * j * j - 18 * j * j0 + 13 * j0 * j0)
    return 2.0 * (2 * j - j0) / (3 * j0 - j + root)


def n6_eta_textbook(j: float, j0: float = 1.0) -> float:
    """The unsimplified quotient; singular at J = J0."""
    root = np.sqrt(9 * j * j - 18 * j * j0 + 13 * j0 * j0)
    return (j - 3 * j0 + root) / (2 * (j - j0))


def n6_exact(params: CouplingParams) -> N6ExactSolution:
    if params.n_sites != 6 or not params.translation_invariant:
        raise UnsupportedSizeError("the exact solution covers N = 6 with J1 = J2")
    j0, j = params.j0, params.j
    eta = n6_eta(j, j0)
    omega3 = 8 * eta ** 2 - 8 * eta + 20
    e1 = -1.5 * (j0 + j)
    e2 = (eta - 2.5) * j0 + (0.5 - eta) * j
    above = j >= 0.5 * j0
    c1 = 0.0 if above else -4.0 * (eta ** 2 + 2 * eta - 2) / omega3
    return N6ExactSolution(eta, omega3, e1, e2, "J_above_half" if above else "J_below_half", c1)


def build_psi_e() -> StateVector:
    """(1 - T + T^2 - T^3 + T^4 - T^5)|uuuddd> - (1 - T)|ududud>, normalized;
    zero-energy, k = pi eigenstate of H(J0, J0) for N = 6."""
    return StateVector(6, _psi_e_unit() / np.sqrt(8.0), 0)


def _psi_e_unit() -> np.ndarray:
    basis = enumerate_sz_sector(6, 0)
    amps = np.zeros(len(basis), dtype=np.complex128)
    for r in range(6):
        amps[np.searchsorted(basis, rotate_bits(0b000111, r, 6))] += (-1) ** r
    amps[np.searchsorted(basis, 0b010101)] -= 1
    amps[np.searchsorted(basis, rotate_bits(0b010101, 1, 6))] += 1
    return amps


def n6_ground_state(params: CouplingParams) -> StateVector:
    """Analytic six-site ground state on either side of J0/2.

    Below J0/2 it is (phi1 - phi2) + eta psi_e with the dimer products and
    psi_e in +-1 amplitude units; its squared norm is Omega3.
    """
    sol = n6_exact(params)
    phi1, phi2 = dimer_pair(6)
    k0 = (phi1 + phi2).normalized()
    if sol.branch == "J_above_half":
        return k0
    unit = np.sqrt(8.0) * (phi1 - phi2).amplitudes + sol.eta * _psi_e_unit()
    return StateVector(6, unit / np.sqrt(sol.omega3), 0)


def reconstructed_states(psi1: StateVector, psi2: StateVector, theta: float, phi: float):
    """Psi1 = cos(t/2) psi1 + e^{i p} sin(t/2) psi2,
    Psi2 = e^{-i p} sin(t/2) psi1 - cos(t/2) psi2."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    big1 = c * psi1 + (np.exp(1j * phi) * s) * psi2
    big2 = (np.exp(-1j * phi) * s) * psi1 - c * psi2
    return big1, big2


def heaviside(x):
    """1 for x > 0, 0 otherwise (including x = 0)."""
    return (np.asarray(x) > 0).astype(float)


def bond_q(n_sites: int, theta, phi):
    """Q[i-1][j-1] for state i in {1, 2} and bond parity j in {1, 2}."""
    k = mg_constants(n_sites)
    theta, phi = np.asarray(theta, float), np.asarray(phi, float)
    q = {}
    for i in (1, 2):
        for j in (1, 2):
            q[i, j] = (
                1 - 2 * k.chi ** 2
                + (-1) ** i * k.xi * k.chi ** 2 * np.cos(theta)
                + (-1) ** (i + j) * k.chi * np.cos(phi) * np.sin(theta)
            )
    return q


def nn_difference_closed_form(n_sites: int, theta, phi):
    """|C1[1] - C2[1]| per site from the eps_ij = H(3Q-1)(3Q-1)/4 expression.

    The step is gated on 3Q_ij - 1 itself: with C(bond) = max(0, 3Q - 1)/2
    this is exactly the nearest-neighbour concurrence of each bond parity.
    """
    if n_sites <= 6:
        raise UnsupportedSizeError("the closed form holds for N >= 8")
    q = bond_q(n_sites, theta, phi)
    eps = {key: 0.25 * heaviside(3 * v - 1) * (3 * v - 1) for key, v in q.items()}
    return np.abs(eps[1, 1] + eps[1, 2] - eps[2, 1] - eps[2, 2])


def gate_boundary_hits(n_sites: int, theta, phi, tol: float = 1e-12):
    """True where some 3Q_ij - 1 sits on the step (|3Q - 1| <= tol), i.e.
    where the H(0) = 0 choice decides the value."""
    q = bond_q(n_sites, theta, phi)
    return np.logical_or.reduce([np.abs(3 * v - 1) <= tol for v in q.values()])


def difference_bound(n_sites: int, theta):
    k = mg_constants(n_sites)
    return k.max_difference * np.abs(np.cos(theta))


@dataclass
class DifferenceSurface:
    theta: np.ndarray
    phi: np.ndarray
    per_alpha: np.ndarray  # (N/2, n_theta, n_phi)
    total: np.ndarray  # (n_theta, n_phi)
    convention: str

    def argmax_theta(self, values: np.ndarray) -> np.ndarray:
        """theta of the maximum in every phi column."""
        return self.theta[np.argmax(values, axis=0)]


class _PairTerms:
    """v and z of the two-site blocks Tr|a><b| for a, b in {psi1, psi2}."""

    def __init__(self, psi1: StateVector, psi2: StateVector):
        n = psi1.n_sites
        self.n_sites = n
        half = n // 2
        shape = (half, n)
        names = ("11", "22", "12", "21")
        self.v = {k: np.zeros(shape, complex) for k in names}
        self.z = {k: np.zeros(shape, complex) for k in names}
        states = {"1": psi1.normalized().in_full_basis(), "2": psi2.normalized().in_full_basis()}
        for a in range(1, half + 1):
            for i in range(n):
                j = (i + a) % n
                for key in names:
                    # Tr |ket><bra|, key = ket + bra
                    m = two_site_operator_trace(states[key[1]], states[key[0]], i, j)
                    self.v[key][a - 1, i] = m[0, 0]
                    self.z[key][a - 1, i] = m[1, 2]

    def concurrences(self, a1, a2):
        """Pair concurrences of a1 psi1 + a2 psi2 for arrays of coefficients.

        Output shape: coefficient shape + (N/2, N).
        """
        a1 = np.asarray(a1)[..., None, None]
        a2 = np.asarray(a2)[..., None, None]
        w = {"11": abs(a1) ** 2, "22": abs(a2) ** 2, "12": a1 * np.conj(a2), "21": a2 * np.conj(a1)}
        v = sum(w[k] * self.v[k] for k in w).real
        z = sum(w[k] * self.z[k] for k in w)
        return np.maximum(0.0, 2.0 * (np.abs(z) - v))


def difference_surface(psi1: StateVector, psi2: StateVector, params: CouplingParams,
                       grid=(101, 101), convention: str = "site-average",
                       degeneracy_tol: float = 1e-8) -> DifferenceSurface:
    """|C1[a] - C2[a]| and |C_T1 - C_T2| of the rotated pair over (theta, phi).

    ``theta`` spans [0, pi] and ``phi`` [0, 2 pi], endpoints included.
    ``psi1`` and ``psi2`` must be degenerate under ``params``.
    """
    energies = []
    for psi in (psi1, psi2):
        psi = psi.normalized()
        hpsi = apply_hamiltonian(params, psi)
        energies.append(psi.vdot(hpsi).real)
    if abs(energies[0] - energies[1]) > degeneracy_tol * max(1.0, abs(energies[0])):
        raise NotDegenerateError(f"energies {energies[0]!r} and {energies[1]!r} differ")
    n_theta, n_phi = grid
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(0.0, 2 * np.pi, n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    c, s, e = np.cos(tt / 2), np.sin(tt / 2), np.exp(1j * pp)
    terms = _PairTerms(psi1, psi2)
    w = convention_weights(psi1.n_sites, convention)
    c1 = (terms.concurrences(c, e * s) * w).sum(axis=-1)
    c2 = (terms.concurrences(np.conj(e) * s, -c) * w).sum(axis=-1)
    per_alpha = np.moveaxis(np.abs(c1 - c2), -1, 0)
    total = np.abs(c1.sum(axis=-1) - c2.sum(axis=-1))
    return DifferenceSurface(theta, phi, per_alpha, total, convention)


__all__ = [
    "DEFAULT_CONVENTION",
    "DimerCovering",
    "DifferenceSurface",
    "MGConstants",
    "N6ExactSolution",
    "build_dimer_state",
    "build_psi_e",
    "difference_bound",
    "difference_surface",
    "dimer_pair",
    "gate_boundary_hits",
    "heaviside",
    "mg_constants",
    "mg_ground_states",
    "mg_momenta",
    "n6_eta",
    "n6_exact",
    "n6_ground_state",
    "nn_difference_closed_form",
    "reconstructed_states",
]
