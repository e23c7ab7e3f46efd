"""Frustrated Heisenberg ring

    H = J0 sum_i S_i.S_{i+1} + sum_i J(i) S_i.S_{i+2},   J(i) = J1 (i even), J2 (i odd)

on a periodic ring of N sites (0-based site labels), applied matrix-free to
state vectors in the full, fixed-Sz or momentum basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from . import kernels
from .basis import (
    MomentumBasis,
    SymmetrySector,
    build_momentum_basis,
    enumerate_sz_sector,
    full_basis,
)
from .errors import InvalidSectorError, ShapeError, TooLargeError

DENSE_CAP = 4096


@dataclass(frozen=True)
class CouplingParams:
    n_sites: int
    j0: float = 1.0
    j1: float = 0.0
    j2: float = 0.0

    def __post_init__(self):
        if self.n_sites % 2 or not 4 <= self.n_sites <= 32:
            raise InvalidSectorError(f"n_sites must be even and in [4, 32], got {self.n_sites}")

    @classmethod
    def uniform(cls, n_sites: int, j: float, j0: float = 1.0) -> "CouplingParams":
        """The J1 = J2 = J ring."""
        return cls(n_sites, float(j0), float(j), float(j))

    @property
    def j(self) -> float:
        if self.j1 != self.j2:
            raise ValueError("j1 != j2, no single NNN coupling")
        return self.j1

    @property
    def translation_invariant(self) -> bool:
        return self.j1 == self.j2

    def with_j(self, j: float) -> "CouplingParams":
        return CouplingParams(self.n_sites, self.j0, float(j), float(j))

    def with_j0(self, j0: float) -> "CouplingParams":
        return CouplingParams(self.n_sites, float(j0), self.j1, self.j2)


def bonds(params: CouplingParams):
    """(site_i, site_j, coupling) arrays for every exchange term."""
    n = params.n_sites
    i = np.arange(n, dtype=np.int64)
    nnn_c = np.where(i % 2 == 0, params.j1, params.j2)
    bi = np.concatenate([i, i])
    bj = np.concatenate([(i + 1) % n, (i + 2) % n])
    bc = np.concatenate([np.full(n, float(params.j0)), nnn_c]).astype(np.float64)
    keep = bc != 0.0
    return bi[keep], bj[keep], bc[keep]


def spin_exchange_matrix() -> np.ndarray:
    """S_1.S_2 on two spins in the basis (uu, ud, du, dd)."""
    return np.array(
        [[0.25, 0, 0, 0], [0, -0.25, 0.5, 0], [0, 0.5, -0.25, 0], [0, 0, 0, 0.25]]
    )


@dataclass(eq=False)
class StateVector:
    """Amplitudes over one of three bases.

    ``sz_twice is None``: the full 2^N configuration basis.
    ``momentum_index is None``: the sorted configurations with fixed 2*Sz.
    Otherwise: the momentum basis of ``SymmetrySector(sz_twice, momentum_index)``.
    """

    n_sites: int
    amplitudes: np.ndarray
    sz_twice: int | None = None
    momentum_index: int | None = None

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.sz_twice is None and self.momentum_index is not None:
            raise ValueError("momentum basis needs a definite Sz")
        if self.amplitudes.shape != (self.dim,):
            raise ShapeError(f"expected {self.dim} amplitudes, got shape {self.amplitudes.shape}")

    @property
    def sector(self) -> SymmetrySector | None:
        if self.momentum_index is None:
            return None
        return SymmetrySector(self.sz_twice, self.momentum_index)

    @property
    def momentum_basis(self) -> MomentumBasis:
        return build_momentum_basis(self.sector, self.n_sites)

    @property
    def configs(self) -> np.ndarray:
        """Configurations indexing the amplitudes (after expansion for momentum states)."""
        if self.sz_twice is None:
            return full_basis(self.n_sites)
        return enumerate_sz_sector(self.n_sites, self.sz_twice)

    @property
    def dim(self) -> int:
        if self.momentum_index is not None:
            return self.momentum_basis.dim
        return len(self.configs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        return self._like(self.amplitudes / self.norm())

    def _like(self, amps) -> "StateVector":
        return StateVector(self.n_sites, amps, self.sz_twice, self.momentum_index)

    def in_configuration_basis(self) -> "StateVector":
        """Same state over plain configurations (Sz sector or full basis)."""
        if self.momentum_index is None:
            return self
        amps = self.momentum_basis.to_sz_amplitudes(self.amplitudes)
        return StateVector(self.n_sites, amps, self.sz_twice)

    def in_full_basis(self) -> "StateVector":
        if self.sz_twice is None:
            return self
        st = self.in_configuration_basis()
        amps = np.zeros(1 << self.n_sites, dtype=np.complex128)
        amps[st.configs] = st.amplitudes
        return StateVector(self.n_sites, amps)

    def full_amplitudes(self) -> np.ndarray:
        return self.in_full_basis().amplitudes

    def vdot(self, other: "StateVector") -> complex:
        """<self|other>, converting bases as needed."""
        if (self.sz_twice, self.momentum_index) == (other.sz_twice, other.momentum_index):
            return complex(np.vdot(self.amplitudes, other.amplitudes))
        if self.sz_twice is not None and self.sz_twice == other.sz_twice:
            a, b = self.in_configuration_basis(), other.in_configuration_basis()
        else:
            a, b = self.in_full_basis(), other.in_full_basis()
        return complex(np.vdot(a.amplitudes, b.amplitudes))

    def __add__(self, other: "StateVector") -> "StateVector":
        a, b = _common(self, other)
        return a._like(a.amplitudes + b.amplitudes)

    def __sub__(self, other: "StateVector") -> "StateVector":
        a, b = _common(self, other)
        return a._like(a.amplitudes - b.amplitudes)

    def __mul__(self, scalar) -> "StateVector":
        return self._like(self.amplitudes * scalar)

    __rmul__ = __mul__


def _common(a: StateVector, b: StateVector):
    if (a.sz_twice, a.momentum_index) == (b.sz_twice, b.momentum_index):
        return a, b
    if a.sz_twice is not None and a.sz_twice == b.sz_twice:
        return a.in_configuration_basis(), b.in_configuration_basis()
    return a.in_full_basis(), b.in_full_basis()


def _require_momentum_ok(params: CouplingParams) -> None:
    if not params.translation_invariant:
        raise InvalidSectorError("j1 != j2 breaks one-site translation; use an Sz or full basis")


def apply_hamiltonian(params: CouplingParams, state: StateVector) -> StateVector:
    """H|state> (not normalized), in the state's own basis."""
    if state.n_sites != params.n_sites:
        raise ShapeError(f"state has {state.n_sites} sites, couplings have {params.n_sites}")
    bi, bj, bc = bonds(params)
    if state.momentum_index is not None:
        _require_momentum_ok(params)
        mb = state.momentum_basis
        y = kernels.momentum_matvec(
            mb.representatives, mb.periods, params.n_sites, state.momentum_index,
            bi, bj, bc, state.amplitudes,
        )
    else:
        y = kernels.sz_matvec(state.configs, params.n_sites, bi, bj, bc, state.amplitudes)
    return state._like(y)


def _basis_key(sector):
    if sector is None:
        return None
    if isinstance(sector, SymmetrySector):
        return (sector.sz_twice, sector.momentum_index)
    return (int(sector), None)


def sector_dim(n_sites: int, sector) -> int:
    key = _basis_key(sector)
    if key is None:
        return 1 << n_sites
    if key[1] is None:
        return len(enumerate_sz_sector(n_sites, key[0]))
    return build_momentum_basis(SymmetrySector(*key), n_sites).dim


@lru_cache(maxsize=512)
def _block_parts(n_sites: int, key) -> tuple:
    """Unit-coupling pieces (NN, NNN-even, NNN-odd) of one block; the two NNN
    pieces are merged for momentum blocks, where only their sum is defined."""
    i = np.arange(n_sites, dtype=np.int64)
    groups = [
        (i, (i + 1) % n_sites),
        (i[::2], (i[::2] + 2) % n_sites),
        (i[1::2], (i[1::2] + 2) % n_sites),
    ]
    if key is not None and key[1] is not None:
        groups = [groups[0], (i, (i + 2) % n_sites)]
    parts = []
    for gi, gj in groups:
        gi, gj = np.ascontiguousarray(gi), np.ascontiguousarray(gj)
        gc = np.ones(len(gi))
        if key is None:
            configs = full_basis(n_sites)
            rows, cols, vals = kernels.sz_coo(configs, n_sites, gi, gj, gc)
            dim = len(configs)
        elif key[1] is None:
            configs = enumerate_sz_sector(n_sites, key[0])
            rows, cols, vals = kernels.sz_coo(configs, n_sites, gi, gj, gc)
            dim = len(configs)
        else:
            mb = build_momentum_basis(SymmetrySector(*key), n_sites)
            rows, cols, vals = kernels.momentum_coo(
                mb.representatives, mb.periods, n_sites, key[1], gi, gj, gc
            )
            dim = mb.dim
        parts.append(sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=np.complex128))
    return tuple(parts)


def sparse_block(params: CouplingParams, sector=None) -> sp.csr_matrix:
    """Sparse H restricted to a block.

    ``sector`` is a SymmetrySector (momentum block), an int 2*Sz (Sz block)
    or None (full space). Built from cached unit-coupling pieces, so sweeping
    J costs one sparse sum per point.
    """
    key = _basis_key(sector)
    if key is not None:
        SymmetrySector(key[0], key[1] or 0).validate(params.n_sites)
    parts = _block_parts(params.n_sites, key)
    if len(parts) == 2:
        _require_momentum_ok(params)
        return params.j0 * parts[0] + params.j1 * parts[1]
    return params.j0 * parts[0] + params.j1 * parts[1] + params.j2 * parts[2]


def hamiltonian_matrix(params: CouplingParams, sector=None, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense block of H, meant as an oracle for small blocks."""
    dim = sector_dim(params.n_sites, sector)
    if dim > cap:
        raise TooLargeError(f"block dimension {dim} exceeds dense cap {cap}")
    return sparse_block(params, sector).toarray()
