"""Scans in J/J0, level-crossing search and the point-B jump table."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .basis import SymmetrySector
from .concurrence import (
    DEFAULT_CONVENTION,
    ConcurrenceReport,
    JumpReport,
    alpha_concurrences,
    concurrence_jump,
)
from .errors import NoCrossingError, SolverError
from .hamiltonian import CouplingParams
from .spectra import default_threads, lowest_levels, sector_ground

CROSSING_TOL = 1e-10
CROSSING_EPS = 1e-6
MAX_BISECTIONS = 60
B_BRACKET = (0.55, 3.0)
B_SEARCH_STEP = 0.01

# Reference point-B jumps, alpha -> value; "total" is the reference Delta_T.
REFERENCE_JUMPS = {
    8: {1: 0.7660, 2: 1.8228, "total": 1.0568},
    10: {1: 1.2755, "total": 1.2755},
    12: {1: 0.6228, "total": 0.6288},
}


@dataclass(frozen=True)
class ScanPoint:
    j_over_j0: float
    e_ground: float
    e_first_excited: float
    ground_momentum: int
    concurrences: ConcurrenceReport | None


def _scan_one(template: CouplingParams, j: float, convention, with_concurrence) -> ScanPoint:
    params = template.with_j(j * template.j0)
    try:
        res = lowest_levels(params, 2, threads=1)
    except SolverError as exc:
        raise SolverError(f"J/J0 = {j!r}: {exc}", exc.best_residual) from exc
    g = res.ground
    ex = res.first_excited
    conc = alpha_concurrences(g.vector, convention) if with_concurrence else None
    return ScanPoint(
        float(j), g.energy, g.energy if ex is None else ex.energy, g.momentum_index, conc
    )


def scan(template: CouplingParams, j_grid, convention: str = DEFAULT_CONVENTION,
         with_concurrence: bool = True, threads: int | None = None) -> list:
    """Ground energy, first excited energy, ground momentum and concurrences
    at every J/J0 in ``j_grid`` (which must be sorted).

    When the ground level is degenerate the first excited energy equals the
    ground energy and the reported momentum is the smallest index.
    """
    grid = np.asarray(j_grid, dtype=float)
    if np.any(np.diff(grid) < 0):
        raise ValueError("j_grid must be sorted")
    threads = threads or default_threads()

    def run(j):
        return _scan_one(template, j, convention, with_concurrence)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(run, grid))
    return [run(j) for j in grid]


def grid_from_spec(spec: str) -> np.ndarray:
    """``"lo:hi:step"`` -> inclusive grid, e.g. 0:2:0.01 has 201 points."""
    lo, hi, step = (float(x) for x in spec.split(":"))
    if step <= 0 or hi < lo:
        raise ValueError(f"bad grid {spec!r}")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def ground_sector(params: CouplingParams) -> SymmetrySector:
    """Momentum sector of the (Sz = 0) ground state; the lowest index on ties."""
    g = lowest_levels(params, 1, sz_values=[0]).ground
    return SymmetrySector(0, g.momentum_index)


@dataclass(frozen=True)
class CrossingPoint:
    label: str  # "A", "B" or "other"
    j_c: float
    left_sector: SymmetrySector
    right_sector: SymmetrySector
    jump: JumpReport | None
    gap: float  # |E_left - E_right| at j_c
    iterations: int


def _label(template: CouplingParams, j_c: float, left: SymmetrySector) -> str:
    j0 = template.j0
    if abs(j_c - 0.5 * j0) <= 1e-6 * j0:
        return "A"
    if j_c > 0.5 * j0:
        # B is the first switch above A: the phase just above A must be the left one
        after_a = ground_sector(template.with_j(0.5 * j0 + 1e-3 * j0))
        return "B" if after_a == left else "other"
    return "other"


def locate_crossing(template: CouplingParams, bracket, convention: str = DEFAULT_CONVENTION,
                    eps: float = CROSSING_EPS, tol: float = CROSSING_TOL,
                    max_iter: int = MAX_BISECTIONS, with_jump: bool = True) -> CrossingPoint:
    """Bisect E_left(J) - E_right(J) between the ground sectors at the bracket ends.

    ``bracket`` is in units of J0. The jump is evaluated between the ground
    states at J_c - eps*J0 and J_c + eps*J0.
    """
    j0 = template.j0
    lo, hi = (float(b) * j0 for b in bracket)
    if not lo < hi:
        raise ValueError(f"empty bracket {bracket}")
    left = ground_sector(template.with_j(lo))
    right = ground_sector(template.with_j(hi))
    if left == right:
        raise NoCrossingError(
            f"ground momentum index {left.momentum_index} at both ends of {tuple(bracket)}"
        )

    def gap(j):
        p = template.with_j(j)
        return sector_ground(p, left).energy - sector_ground(p, right).energy

    f_lo = gap(lo)
    it = 0
    mid, f_mid = lo, f_lo
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        f_mid = gap(mid)
        if abs(f_mid) < tol * j0:
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    else:
        if abs(f_mid) >= tol * j0:
            raise SolverError(f"bisection stalled at J = {mid!r} with gap {f_mid!r}", abs(f_mid))
    jump = None
    if with_jump:
        jump = concurrence_jump(
            template.with_j(mid - eps * j0), template.with_j(mid + eps * j0), convention
        )
    return CrossingPoint(_label(template, mid, left), mid, left, right, jump, abs(f_mid), it)


def momentum_switches(template: CouplingParams, lo: float, hi: float,
                      step: float = B_SEARCH_STEP) -> list:
    """Sub-brackets (a, b) of [lo, hi], in J0 units, where the ground momentum changes."""
    grid = np.append(np.arange(lo, hi, step), hi)
    sectors = [ground_sector(template.with_j(j * template.j0)) for j in grid]
    return [
        (float(grid[q]), float(grid[q + 1]))
        for q in range(len(grid) - 1)
        if sectors[q] != sectors[q + 1]
    ]


def locate_point_b(template: CouplingParams, bracket=B_BRACKET,
                   convention: str = DEFAULT_CONVENTION, step: float = B_SEARCH_STEP,
                   **kw) -> CrossingPoint:
    """First momentum switch above ``bracket[0]``.

    The ground momentum can switch more than once inside the default
    bracket (N = 12 switches twice), so the ends of ``bracket`` alone do not
    identify B; a coarse momentum scan picks the first sub-bracket.
    """
    switches = momentum_switches(template, bracket[0], bracket[1], step)
    if not switches:
        raise NoCrossingError(f"no ground-momentum change in {tuple(bracket)}")
    return locate_crossing(template, switches[0], convention, **kw)


def epsilon_drift(template: CouplingParams, crossing: CrossingPoint,
                  convention: str = DEFAULT_CONVENTION, eps: float = CROSSING_EPS) -> float:
    """Largest relative change of the jumps when eps shrinks tenfold."""
    j0 = template.j0
    a = crossing.jump
    b = concurrence_jump(
        template.with_j(crossing.j_c - 0.1 * eps * j0),
        template.with_j(crossing.j_c + 0.1 * eps * j0),
        convention,
    )
    va = np.append(a.delta_per_alpha, a.delta_total)
    vb = np.append(b.delta_per_alpha, b.delta_total)
    scale = np.maximum(np.abs(va), 1e-12)
    big = np.abs(va) > 1e-8
    if not big.any():
        return 0.0
    return float((np.abs(va - vb) / scale)[big].max())


@dataclass(frozen=True)
class Table1Row:
    n_sites: int
    crossing: CrossingPoint
    reference: dict

    @property
    def jump(self) -> JumpReport:
        return self.crossing.jump

    def deviations(self) -> dict:
        """computed - reference for every tabulated entry."""
        out = {}
        for key, ref in self.reference.items():
            if key == "total":
                out[key] = self.jump.delta_total - ref
            else:
                out[key] = float(self.jump.delta_per_alpha[key - 1]) - ref
        return out

    def matches_reference(self, tol: float = 5e-4) -> list:
        """Reference entries that the computed Delta[1] or Delta_T agrees with."""
        hits = []
        computed = (float(self.jump.delta_per_alpha[0]), self.jump.delta_total)
        for key in (1, "total"):
            ref = self.reference.get(key)
            if ref is not None and any(abs(c - ref) <= tol for c in computed):
                hits.append(key)
        return hits


def table1(n_values=(8, 10, 12), convention: str = DEFAULT_CONVENTION, j0: float = 1.0,
           bracket=B_BRACKET) -> list:
    """Point-B jumps for each ring size next to the reference values."""
    rows = []
    for n in n_values:
        template = CouplingParams.uniform(n, 0.0, j0)
        crossing = locate_point_b(template, bracket, convention)
        rows.append(Table1Row(n, crossing, REFERENCE_JUMPS.get(n, {})))
    return rows
