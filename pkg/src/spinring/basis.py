"""Bit-packed spin-1/2 configurations, Sz sectors and momentum bases.

A configuration is an integer whose bit ``i`` is 1 when site ``i`` is up.
The translation T moves the spin on site i to site i+1 (cyclically),
which is a left rotation of the bit pattern.

Momentum basis states follow the usual construction

    |a(k)> = 1/sqrt(N_a) sum_r exp(-i k r) T^r |s_a>,   N_a = N^2 / R_a,

with ``s_a`` the numerically smallest pattern of its orbit and ``R_a`` its
period, so that T|a(k)> = exp(i k)|a(k)>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import kernels
from .errors import InvalidSectorError

MAX_SITES = 32


def _check_sites(n_sites: int) -> None:
    if n_sites % 2 or not 2 <= n_sites <= MAX_SITES:
        raise InvalidSectorError(f"n_sites must be even and in [2, {MAX_SITES}], got {n_sites}")


def rotate_bits(bits, shift: int, n_sites: int):
    """Cyclic left rotation by ``shift`` of an int or an int64 array."""
    shift %= n_sites
    if shift == 0:
        return bits
    mask = (1 << n_sites) - 1
    return ((bits << shift) | (bits >> (n_sites - shift))) & mask


@dataclass(frozen=True)
class SpinConfiguration:
    bits: int
    n_sites: int

    def __post_init__(self):
        if self.bits >> self.n_sites:
            raise ValueError(f"bits {self.bits:#b} exceed {self.n_sites} sites")

    @property
    def n_up(self) -> int:
        return bin(self.bits).count("1")

    @property
    def sz_twice(self) -> int:
        return 2 * self.n_up - self.n_sites

    def __str__(self):
        # site 0 first, as in |up down ...>
        return "".join("u" if (self.bits >> i) & 1 else "d" for i in range(self.n_sites))


def translate(config: SpinConfiguration, shift: int) -> SpinConfiguration:
    """Apply T^shift; a pure permutation of sites, no sign."""
    return SpinConfiguration(rotate_bits(config.bits, shift, config.n_sites), config.n_sites)


@dataclass(frozen=True)
class SymmetrySector:
    sz_twice: int
    momentum_index: int = 0

    def validate(self, n_sites: int) -> None:
        _check_sites(n_sites)
        if abs(self.sz_twice) > n_sites or (self.sz_twice - n_sites) % 2:
            raise InvalidSectorError(f"2Sz={self.sz_twice} impossible for N={n_sites}")
        if not 0 <= self.momentum_index < n_sites:
            raise InvalidSectorError(f"momentum index {self.momentum_index} outside 0..{n_sites - 1}")

    def momentum(self, n_sites: int) -> float:
        return 2 * np.pi * self.momentum_index / n_sites


@dataclass(frozen=True)
class TranslationOrbit:
    representative: int
    period: int


@lru_cache(maxsize=64)
def _sz_sector(n_sites: int, sz_twice: int) -> np.ndarray:
    out = kernels.fixed_popcount_states(n_sites, (n_sites + sz_twice) // 2)
    out.setflags(write=False)
    return out


def enumerate_sz_sector(n_sites: int, sz_twice: int) -> np.ndarray:
    """All configurations with 2*Sz = ``sz_twice``, strictly increasing.

    The returned array is shared and read-only.
    """
    SymmetrySector(sz_twice).validate(n_sites)
    return _sz_sector(n_sites, sz_twice)


def sector_dimension(n_sites: int, sz_twice: int) -> int:
    return comb(n_sites, (n_sites + sz_twice) // 2)


@lru_cache(maxsize=4)
def full_basis(n_sites: int) -> np.ndarray:
    out = np.arange(1 << n_sites, dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class MomentumBasis:
    sector: SymmetrySector
    n_sites: int
    representatives: np.ndarray = field(repr=False)
    periods: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @property
    def orbits(self) -> list[TranslationOrbit]:
        return [TranslationOrbit(int(r), int(p)) for r, p in zip(self.representatives, self.periods)]

    def to_sz_amplitudes(self, coeffs: np.ndarray) -> np.ndarray:
        """Expand momentum-basis coefficients onto the Sz-sector configurations."""
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        configs = enumerate_sz_sector(self.n_sites, self.sector.sz_twice)
        out = np.zeros(len(configs), dtype=np.complex128)
        k = self.sector.momentum(self.n_sites)
        norm = coeffs / np.sqrt(self.periods)
        for r in range(self.n_sites):
            live = self.periods > r
            images = rotate_bits(self.representatives[live], r, self.n_sites)
            out[np.searchsorted(configs, images)] += norm[live] * np.exp(-1j * k * r)
        return out

    def from_sz_amplitudes(self, amps: np.ndarray) -> np.ndarray:
        """Project Sz-sector amplitudes onto this momentum basis (adjoint of the expansion)."""
        amps = np.asarray(amps, dtype=np.complex128)
        configs = enumerate_sz_sector(self.n_sites, self.sector.sz_twice)
        k = self.sector.momentum(self.n_sites)
        out = np.zeros(self.dim, dtype=np.complex128)
        for r in range(self.n_sites):
            live = self.periods > r
            images = rotate_bits(self.representatives[live], r, self.n_sites)
            out[live] += amps[np.searchsorted(configs, images)] * np.exp(1j * k * r)
        return out / np.sqrt(self.periods)


@lru_cache(maxsize=256)
def _momentum_basis(n_sites: int, sector: SymmetrySector) -> MomentumBasis:
    configs = _sz_sector(n_sites, sector.sz_twice)
    reps, _ = kernels.find_representatives(configs, n_sites)
    reps = configs[reps == configs]
    periods = kernels.orbit_periods(reps, n_sites)
    keep = (sector.momentum_index * periods) % n_sites == 0
    reps, periods = reps[keep], periods[keep]
    reps.setflags(write=False)
    periods.setflags(write=False)
    return MomentumBasis(sector, n_sites, reps, periods)


def build_momentum_basis(sector: SymmetrySector, n_sites: int) -> MomentumBasis:
    """Orbit representatives compatible with the sector's momentum."""
    sector.validate(n_sites)
    return _momentum_basis(n_sites, sector)


def orbit_of(config: SpinConfiguration) -> TranslationOrbit:
    reps, _ = kernels.find_representatives(np.array([config.bits], dtype=np.int64), config.n_sites)
    period = kernels.orbit_periods(reps, config.n_sites)
    return TranslationOrbit(int(reps[0]), int(period[0]))


def compatible_momenta(orbit: TranslationOrbit, n_sites: int) -> list[int]:
    return [n for n in range(n_sites) if (n * orbit.period) % n_sites == 0]
