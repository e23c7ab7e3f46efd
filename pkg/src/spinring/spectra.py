"""Low-lying spectrum by symmetry sector, plus momentum and total-spin probes."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .basis import SymmetrySector, build_momentum_basis, rotate_bits
from .errors import NotMomentumEigenstateError, SolverError
from .hamiltonian import (
    CouplingParams,
    StateVector,
    apply_hamiltonian,
    sector_dim,
    sparse_block,
)

RESIDUAL_TOL = 1e-10
DEGENERACY_TOL = 1e-8
DENSE_THRESHOLD = 256
MAX_LANCZOS_ITER = 300
MOMENTUM_FIDELITY_MIN = 0.999


def degenerate(e1: float, e2: float, tol: float = DEGENERACY_TOL) -> bool:
    return abs(e1 - e2) <= tol * max(1.0, abs(e1))


@dataclass
class LanczosResult:
    values: np.ndarray
    vectors: np.ndarray  # columns
    residuals: np.ndarray
    iterations: int
    ground_history: list = field(default_factory=list)


def lanczos(matvec, dim: int, n_eig: int = 1, tol: float = RESIDUAL_TOL,
            max_iter: int = MAX_LANCZOS_ITER, seed: int = 12345, v0=None) -> LanczosResult:
    """Lowest ``n_eig`` eigenpairs of a Hermitian operator given as ``matvec``.

    Single-vector Lanczos with full (twice-applied Gram-Schmidt)
    reorthogonalization and no restarts. Exactly degenerate eigenvalues
    inside one block show up once.
    """
    n_eig = min(n_eig, dim)
    max_iter = min(max_iter, dim)
    if v0 is None:
        rng = np.random.default_rng(seed)
        v0 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v = np.asarray(v0, dtype=np.complex128)
    basis = np.zeros((max_iter + 1, dim), dtype=np.complex128)
    basis[0] = v / np.linalg.norm(v)
    alphas, betas = [], []
    history = []
    it = 0
    for it in range(1, max_iter + 1):
        w = matvec(basis[it - 1])
        alpha = np.vdot(basis[it - 1], w).real
        w = w - alpha * basis[it - 1]
        if it > 1:
            w -= betas[-1] * basis[it - 2]
        for _ in range(2):
            w -= basis[:it].T @ (basis[:it].conj() @ w)
        beta = np.linalg.norm(w)
        alphas.append(alpha)
        theta, s = _tridiag_eigh(alphas, betas)
        history.append(theta[0])
        est = beta * np.abs(s[-1, :n_eig])
        scale = np.maximum(1.0, np.abs(theta[:n_eig]))
        if it >= n_eig and np.all(est <= 0.01 * tol * scale):
            break
        if beta < 1e-13 * max(1.0, abs(theta).max()):
            break
        betas.append(beta)
        basis[it] = w / beta
    theta, s = _tridiag_eigh(alphas, betas[: len(alphas) - 1])
    n_eig = min(n_eig, len(theta))
    vecs = basis[: len(alphas)].T @ s[:, :n_eig]
    vecs /= np.linalg.norm(vecs, axis=0)
    res = np.array([
        np.linalg.norm(matvec(vecs[:, q]) - theta[q] * vecs[:, q]) for q in range(n_eig)
    ])
    return LanczosResult(theta[:n_eig], vecs, res, it, history)


def _tridiag_eigh(alphas, betas):
    k = len(alphas)
    t = np.diag(alphas)
    if k > 1:
        off = np.asarray(betas[: k - 1])
        t += np.diag(off, 1) + np.diag(off, -1)
    return np.linalg.eigh(t)


@dataclass
class EigenLevel:
    energy: float
    sz_twice: int
    momentum_index: int | None
    vector: StateVector = field(repr=False)
    residual: float = 0.0
    degeneracy_group: int = -1

    @property
    def sector(self) -> SymmetrySector | None:
        if self.momentum_index is None:
            return None
        return SymmetrySector(self.sz_twice, self.momentum_index)


@dataclass
class SpectrumResult:
    levels: list
    n_requested: int

    @property
    def ground(self) -> EigenLevel:
        return self.levels[0]

    @property
    def ground_group(self) -> list:
        return [lv for lv in self.levels if lv.degeneracy_group == 0]

    @property
    def first_excited(self) -> EigenLevel | None:
        """Lowest level strictly above the ground degeneracy group."""
        for lv in self.levels:
            if lv.degeneracy_group > 0:
                return lv
        return None


def _solve_block(params, sz_twice, n, m, method, dense_threshold):
    sector = sz_twice if n is None else SymmetrySector(sz_twice, n)
    dim = sector_dim(params.n_sites, sector)
    if dim == 0:
        return []
    make = (lambda a: StateVector(params.n_sites, a, sz_twice, n))
    use_dense = method == "dense" or (method == "auto" and dim <= dense_threshold)
    if use_dense:
        h = sparse_block(params, sector).toarray()
        vals, vecs = np.linalg.eigh(h)
        out = []
        for q in range(min(m, dim)):
            st = make(vecs[:, q])
            res = np.linalg.norm(apply_hamiltonian(params, st).amplitudes - vals[q] * vecs[:, q])
            out.append(EigenLevel(float(vals[q]), sz_twice, n, st, float(res)))
        return out

    def matvec(x):
        return apply_hamiltonian(params, make(x)).amplitudes

    r = lanczos(matvec, dim, m)
    scale = np.maximum(1.0, np.abs(r.values))
    if np.any(r.residuals > RESIDUAL_TOL * scale):
        raise SolverError(
            f"Lanczos did not converge in sector 2Sz={sz_twice}, n={n} (dim {dim})",
            best_residual=float(r.residuals.max()),
        )
    return [
        EigenLevel(float(r.values[q]), sz_twice, n, make(r.vectors[:, q]), float(r.residuals[q]))
        for q in range(len(r.values))
    ]


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SPINRING_THREADS", "1")))
    except ValueError:
        return 1


def lowest_levels(params: CouplingParams, m: int = 2, *, method: str = "auto",
                  dense_threshold: int = DENSE_THRESHOLD, sz_values=None,
                  momenta=None, threads: int | None = None) -> SpectrumResult:
    """The ``m`` lowest levels over all sectors with Sz >= 0.

    Sectors are (2Sz, n) momentum blocks when J1 = J2 and plain Sz blocks
    otherwise. Copies of one SU(2) multiplet in several Sz sectors are
    reported once, at the smallest Sz.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n_sites = params.n_sites
    if sz_values is None:
        sz_values = range(0, n_sites + 1, 2)
    if params.translation_invariant:
        ks = range(n_sites) if momenta is None else momenta
        jobs = [(sz, n) for sz in sz_values for n in ks]
    else:
        jobs = [(sz, None) for sz in sz_values]
    threads = threads or default_threads()

    def run(job):
        return _solve_block(params, job[0], job[1], m, method, dense_threshold)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    found = [lv for block in results for lv in block]
    found.sort(key=lambda lv: (lv.energy, lv.sz_twice, -1 if lv.momentum_index is None else lv.momentum_index))
    levels = _group_and_dedupe(found)
    return SpectrumResult(levels[:m], m)


def _group_and_dedupe(levels):
    groups = []
    for lv in levels:
        if groups and degenerate(groups[-1][0].energy, lv.energy):
            groups[-1].append(lv)
        else:
            groups.append([lv])
    out = []
    for g, members in enumerate(groups):
        lowest_sz = {}
        for lv in members:
            lowest_sz[lv.momentum_index] = min(lowest_sz.get(lv.momentum_index, lv.sz_twice), lv.sz_twice)
        kept = [lv for lv in members if lv.sz_twice == lowest_sz[lv.momentum_index]]
        kept.sort(key=lambda lv: (lv.sz_twice, -1 if lv.momentum_index is None else lv.momentum_index))
        for lv in kept:
            lv.degeneracy_group = g
            out.append(lv)
    return out


def sector_ground(params: CouplingParams, sector: SymmetrySector, **kw) -> EigenLevel:
    """Lowest level inside one momentum sector."""
    method = kw.pop("method", "auto")
    threshold = kw.pop("dense_threshold", DENSE_THRESHOLD)
    return _solve_block(params, sector.sz_twice, sector.momentum_index, 1, method, threshold)[0]


def translate_state(state: StateVector, shift: int = 1) -> StateVector:
    """T^shift |state> in the configuration basis."""
    st = state.in_configuration_basis()
    configs = st.configs
    dest = np.searchsorted(configs, rotate_bits(configs, shift, st.n_sites))
    out = np.zeros_like(st.amplitudes)
    out[dest] = st.amplitudes
    return st._like(out)


def measure_momentum(state: StateVector, strict: bool = False) -> tuple[int, float]:
    """(n, |<psi|T|psi>|) with k = 2 pi n / N read off the phase of <psi|T|psi>.

    Fidelity below 0.999 means ``state`` is not a momentum eigenstate; that
    raises only with ``strict=True``.
    """
    st = state.in_configuration_basis()
    c = np.vdot(st.amplitudes, translate_state(st).amplitudes) / np.vdot(st.amplitudes, st.amplitudes).real
    n_sites = st.n_sites
    index = int(round(n_sites * np.angle(c) / (2 * np.pi))) % n_sites
    fidelity = float(abs(c))
    if strict and fidelity < MOMENTUM_FIDELITY_MIN:
        raise NotMomentumEigenstateError(
            f"|<T>| = {fidelity:.6f} < {MOMENTUM_FIDELITY_MIN}", index, fidelity
        )
    return index, fidelity


def total_spin(state: StateVector) -> float:
    """<S^2>; a spin-s state gives s(s+1)."""
    st = state.in_configuration_basis()
    corr = kernels.pair_correlations(st.configs, st.n_sites, st.amplitudes, st.amplitudes)
    return float(corr.sum().real / 4.0 / st.norm() ** 2)


def spin_from_s2(s2: float) -> float:
    return 0.5 * (-1.0 + np.sqrt(1.0 + 4.0 * max(s2, 0.0)))


def momentum_basis_dim(params: CouplingParams, sector: SymmetrySector) -> int:
    return build_momentum_basis(sector, params.n_sites).dim
