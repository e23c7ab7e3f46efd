"""Pairwise concurrence, separation-resolved sums C[a], total C_T and jumps.

Summation conventions for C[a] = sum_i C(i, i+a), a = 1..N/2:

``ring``           i over all N sites (periodic); reproduces the tabulated
                   point-B jumps and is the default.
``paper-literal``  i = 0..N-2 only (N-1 terms, wrap-around still applied).
``unique-pairs``   every unordered pair once; differs from ``ring`` only at
                   a = N/2, where ``ring`` counts each pair twice.
``site-average``   ``ring`` divided by N, i.e. the concurrence of a single
                   pair in a translation-invariant state; the closed-form
                   expressions at the Majumdar-Ghosh point use this one.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import NoCrossingError
from .hamiltonian import CouplingParams, StateVector
from .observables import correlation_matrix, reduced_density_matrix
from .spectra import lowest_levels, sector_ground

CONVENTIONS = ("ring", "paper-literal", "unique-pairs", "site-average")
DEFAULT_CONVENTION = "ring"


def pairwise_concurrence(rdm) -> float:
    """C = max(0, 2(|z| - v)) for the symmetric two-site form."""
    return max(0.0, 2.0 * (abs(rdm.z) - rdm.v))


def concurrence_from_correlator(sigma_dot):
    """C = max(0, -<sigma.sigma> - 1) / 2; valid for total-spin-zero states."""
    return 0.5 * np.maximum(0.0, -np.asarray(sigma_dot, dtype=float) - 1.0)


def convention_weights(n_sites: int, convention: str = DEFAULT_CONVENTION) -> np.ndarray:
    """Weights w[a-1, i] such that C[a] = sum_i w[a-1, i] C(i, i+a)."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; choose from {CONVENTIONS}")
    half = n_sites // 2
    w = np.ones((half, n_sites))
    if convention == "paper-literal":
        w[:, -1] = 0.0
    elif convention == "unique-pairs":
        w[half - 1, half:] = 0.0
    elif convention == "site-average":
        w /= n_sites
    return w


def pair_concurrences(state: StateVector, route: str = "rdm") -> np.ndarray:
    """c[a-1, i] = C(i, i+a) for a = 1..N/2 and every site i.

    ``route="rdm"`` goes through the two-site density matrix;
    ``route="correlator"`` uses <sigma_i . sigma_j> and assumes spin zero.
    """
    n = state.n_sites
    out = np.zeros((n // 2, n))
    if route == "correlator":
        c = correlation_matrix(state)
        for a in range(1, n // 2 + 1):
            i = np.arange(n)
            out[a - 1] = concurrence_from_correlator(c[i, (i + a) % n])
        return out
    if route != "rdm":
        raise ValueError(f"unknown route {route!r}")
    for a in range(1, n // 2 + 1):
        for i in range(n):
            out[a - 1, i] = pairwise_concurrence(reduced_density_matrix(state, i, (i + a) % n))
    return out


@dataclass(frozen=True)
class ConcurrenceReport:
    per_alpha: np.ndarray  # C[a] for a = 1..N/2
    total: float
    convention: str

    @property
    def alphas(self) -> np.ndarray:
        return np.arange(1, len(self.per_alpha) + 1)


def report_from_pairs(pairs: np.ndarray, convention: str = DEFAULT_CONVENTION) -> ConcurrenceReport:
    w = convention_weights(pairs.shape[1], convention)
    per_alpha = (w * pairs).sum(axis=1)
    return ConcurrenceReport(per_alpha, float(per_alpha.sum()), convention)


def alpha_concurrences(state: StateVector, convention: str = DEFAULT_CONVENTION,
                       route: str = "rdm") -> ConcurrenceReport:
    return report_from_pairs(pair_concurrences(state, route), convention)


@dataclass(frozen=True)
class JumpReport:
    j_critical: float
    delta_per_alpha: np.ndarray
    delta_total: float
    left_momentum: int | None
    right_momentum: int | None
    left: ConcurrenceReport
    right: ConcurrenceReport
    j_left: float
    j_right: float


def _jump(left_state, right_state, j_left, j_right, convention):
    cl = alpha_concurrences(left_state, convention)
    cr = alpha_concurrences(right_state, convention)
    return JumpReport(
        j_critical=0.5 * (j_left + j_right),
        delta_per_alpha=np.abs(cl.per_alpha - cr.per_alpha),
        delta_total=abs(cl.total - cr.total),
        left_momentum=None,
        right_momentum=None,
        left=cl,
        right=cr,
        j_left=j_left,
        j_right=j_right,
    )


def concurrence_jump(params_left: CouplingParams, params_right: CouplingParams,
                     convention: str = DEFAULT_CONVENTION) -> JumpReport:
    """Jumps between the ground states at two couplings bracketing a crossing.

    Raises NoCrossingError when both sides have the same ground momentum.
    """
    gl = lowest_levels(params_left, 1).ground
    gr = lowest_levels(params_right, 1).ground
    if gl.momentum_index == gr.momentum_index:
        raise NoCrossingError(
            f"ground momentum {gl.momentum_index} on both sides of "
            f"[{params_left.j1}, {params_right.j1}]"
        )
    rep = _jump(gl.vector, gr.vector, params_left.j1, params_right.j1, convention)
    return _with_momenta(rep, gl.momentum_index, gr.momentum_index)


def jump_between_sectors(params: CouplingParams, left_sector, right_sector,
                         convention: str = DEFAULT_CONVENTION) -> JumpReport:
    """Concurrence difference between the lowest states of two sectors at one
    coupling (both sides evaluated at the same J)."""
    gl = sector_ground(params, left_sector)
    gr = sector_ground(params, right_sector)
    rep = _jump(gl.vector, gr.vector, params.j1, params.j1, convention)
    return _with_momenta(rep, left_sector.momentum_index, right_sector.momentum_index)


def _with_momenta(rep: JumpReport, left, right) -> JumpReport:
    return replace(rep, left_momentum=left, right_momentum=right)
