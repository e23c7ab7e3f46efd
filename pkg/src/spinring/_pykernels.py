"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``.

Same signatures and results; vectorized over basis states, looping only
over bonds, rotations and site pairs.
"""

from itertools import combinations

import numpy as np


def _rotl(s, r, n, mask):
    if r == 0:
        return s
    return ((s << r) | (s >> (n - r))) & mask


def _lookup(configs, targets):
    """Index of each target in sorted ``configs``, -1 where absent."""
    idx = np.searchsorted(configs, targets)
    idx = np.minimum(idx, len(configs) - 1)
    found = configs[idx] == targets
    return np.where(found, idx, -1)


def fixed_popcount_states(n_sites, n_up):
    if n_sites <= 22:
        allstates = np.arange(1 << n_sites, dtype=np.int64)
        counts = np.zeros_like(allstates)
        for i in range(n_sites):
            counts += (allstates >> i) & 1
        return allstates[counts == n_up]
    out = np.fromiter(
        (sum(1 << i for i in c) for c in combinations(range(n_sites), n_up)),
        dtype=np.int64,
    )
    out.sort()
    return out


def find_representatives(states, n_sites):
    states = np.asarray(states, dtype=np.int64)
    mask = (1 << n_sites) - 1
    reps = states.copy()
    shifts = np.zeros_like(states)
    t = states.copy()
    for r in range(1, n_sites):
        t = _rotl(t, 1, n_sites, mask)
        better = t < reps
        reps = np.where(better, t, reps)
        shifts = np.where(better, r, shifts)
    return reps, shifts


def orbit_periods(states, n_sites):
    states = np.asarray(states, dtype=np.int64)
    mask = (1 << n_sites) - 1
    out = np.zeros_like(states)
    t = states.copy()
    for r in range(1, n_sites + 1):
        t = _rotl(t, 1, n_sites, mask)
        hit = (t == states) & (out == 0)
        out[hit] = r
    return out


def _bond_terms(configs, bi, bj):
    mi = np.int64(1) << np.int64(bi)
    mj = np.int64(1) << np.int64(bj)
    aligned = ((configs & mi) != 0) == ((configs & mj) != 0)
    return aligned, configs ^ mi ^ mj


def sz_matvec(configs, n_sites, bond_i, bond_j, bond_c, x):
    configs = np.asarray(configs, dtype=np.int64)
    x = np.asarray(x, dtype=np.complex128)
    y = np.zeros(len(configs), dtype=np.complex128)
    for bi, bj, c in zip(bond_i, bond_j, bond_c):
        aligned, flipped = _bond_terms(configs, bi, bj)
        y += np.where(aligned, 0.25 * c, -0.25 * c) * x
        src = np.nonzero(~aligned)[0]
        dst = _lookup(configs, flipped[src])
        ok = dst >= 0
        np.add.at(y, dst[ok], 0.5 * c * x[src[ok]])
    return y


def sz_coo(configs, n_sites, bond_i, bond_j, bond_c):
    configs = np.asarray(configs, dtype=np.int64)
    dim = len(configs)
    diag = np.zeros(dim)
    rows, cols, vals = [], [], []
    for bi, bj, c in zip(bond_i, bond_j, bond_c):
        aligned, flipped = _bond_terms(configs, bi, bj)
        diag += np.where(aligned, 0.25 * c, -0.25 * c)
        src = np.nonzero(~aligned)[0]
        dst = _lookup(configs, flipped[src])
        ok = dst >= 0
        rows.append(dst[ok])
        cols.append(src[ok])
        vals.append(np.full(ok.sum(), 0.5 * c))
    ar = np.arange(dim, dtype=np.int64)
    rows.append(ar)
    cols.append(ar)
    vals.append(diag)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def _momentum_offdiag(reps, periods, n_sites, k_index, bi, bj, c):
    aligned, flipped = _bond_terms(reps, bi, bj)
    src = np.nonzero(~aligned)[0]
    rep, shift = find_representatives(flipped[src], n_sites)
    dst = _lookup(reps, rep)
    ok = dst >= 0
    src, dst, shift = src[ok], dst[ok], shift[ok]
    k = 2.0 * np.pi * k_index / n_sites
    amp = 0.5 * c * np.sqrt(periods[src] / periods[dst]) * np.exp(-1j * k * shift)
    return aligned, src, dst, amp


def momentum_matvec(reps, periods, n_sites, k_index, bond_i, bond_j, bond_c, x):
    reps = np.asarray(reps, dtype=np.int64)
    x = np.asarray(x, dtype=np.complex128)
    y = np.zeros(len(reps), dtype=np.complex128)
    for bi, bj, c in zip(bond_i, bond_j, bond_c):
        aligned, src, dst, amp = _momentum_offdiag(reps, periods, n_sites, k_index, bi, bj, c)
        y += np.where(aligned, 0.25 * c, -0.25 * c) * x
        np.add.at(y, dst, amp * x[src])
    return y


def momentum_coo(reps, periods, n_sites, k_index, bond_i, bond_j, bond_c):
    reps = np.asarray(reps, dtype=np.int64)
    dim = len(reps)
    diag = np.zeros(dim)
    rows, cols, vals = [], [], []
    for bi, bj, c in zip(bond_i, bond_j, bond_c):
        aligned, src, dst, amp = _momentum_offdiag(reps, periods, n_sites, k_index, bi, bj, c)
        diag += np.where(aligned, 0.25 * c, -0.25 * c)
        rows.append(dst)
        cols.append(src)
        vals.append(amp)
    ar = np.arange(dim, dtype=np.int64)
    rows.append(ar)
    cols.append(ar)
    vals.append(diag.astype(np.complex128))
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def pair_correlations(configs, n_sites, bra, ket):
    configs = np.asarray(configs, dtype=np.int64)
    bra = np.asarray(bra, dtype=np.complex128)
    ket = np.asarray(ket, dtype=np.complex128)
    weights = bra.conj() * ket
    out = np.zeros((n_sites, n_sites), dtype=np.complex128)
    np.fill_diagonal(out, 3.0 * weights.sum())
    for i in range(n_sites):
        for j in range(i + 1, n_sites):
            aligned, flipped = _bond_terms(configs, i, j)
            val = np.sum(np.where(aligned, weights, -weights))
            src = np.nonzero(~aligned)[0]
            dst = _lookup(configs, flipped[src])
            ok = dst >= 0
            val += 2.0 * np.sum(bra[dst[ok]].conj() * ket[src[ok]])
            out[i, j] = out[j, i] = val
    return out
