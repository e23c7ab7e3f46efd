# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for bit-packed spin-1/2 bases.

Every function here has a numpy twin in ``_pykernels`` with the same
signature; ``spinring.kernels`` picks one at import.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, M_PI

cnp.import_array()

ctypedef cnp.int64_t i64


cdef inline i64 _rotl(i64 s, int r, int n, i64 mask) noexcept nogil:
    if r == 0:
        return s
    return ((s << r) | (s >> (n - r))) & mask


cdef inline Py_ssize_t _search(const i64[::1] arr, i64 x) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        elif arr[mid] > x:
            hi = mid - 1
        else:
            return mid
    return -1


cdef i64 _BINOM[65][65]


cdef void _init_binom():
    cdef int a, b
    for a in range(65):
        for b in range(65):
            _BINOM[a][b] = 0
        _BINOM[a][0] = 1
        for b in range(1, a + 1):
            _BINOM[a][b] = _BINOM[a - 1][b - 1] + _BINOM[a - 1][b]


_init_binom()
_DUMMY = np.zeros(1, dtype=np.int32)

# Lookup modes for a sorted configuration list
DEF SEARCH = 0   # arbitrary sorted list: binary search
DEF RANK = 1     # complete fixed-popcount list: combinatorial rank
DEF IDENTITY = 2  # all 2^N configurations: the index is the bit pattern
DEF TABLE = 3    # dense config -> index table (N <= TABLE_MAX_SITES)

TABLE_MAX_SITES = 22
_tables = {}


def _index_table(configs, int n_sites):
    """Cached int32 array t with t[configs[a]] = a, or None when too large."""
    if n_sites > TABLE_MAX_SITES:
        return None
    key = (n_sites, configs.shape[0], int(configs[0]), int(configs[configs.shape[0] - 1]))
    t = _tables.get(key)
    if t is None:
        if len(_tables) >= 8:
            _tables.clear()
        t = np.full(1 << n_sites, -1, dtype=np.int32)
        t[np.asarray(configs)] = np.arange(configs.shape[0], dtype=np.int32)
        _tables[key] = t
    return t


cdef inline Py_ssize_t _rank(i64 s) noexcept nogil:
    """Position of s among integers with the same popcount (colex order)."""
    cdef Py_ssize_t r = 0
    cdef int p = 0, t = 0
    while s:
        if s & 1:
            t += 1
            r += _BINOM[p][t]
        s >>= 1
        p += 1
    return r


cdef int _lookup_mode(const i64[::1] configs, int n_sites):
    cdef Py_ssize_t dim = configs.shape[0]
    cdef i64 first
    cdef int pop = 0
    if dim == 0:
        return SEARCH
    if dim == (<i64>1 << n_sites):
        return IDENTITY
    first = configs[0]
    while first:
        pop += first & 1
        first >>= 1
    if dim == _BINOM[n_sites][pop]:
        return RANK
    return SEARCH


cdef inline Py_ssize_t _index(const i64[::1] configs, const int[::1] table, i64 s, int mode) noexcept nogil:
    if mode == TABLE:
        return table[s]
    if mode == IDENTITY:
        return s
    if mode == RANK:
        return _rank(s)
    return _search(configs, s)


cdef inline void _rep_of(i64 s, int n, i64 mask, i64* rep, int* shift) noexcept nogil:
    cdef i64 t = s, best = s
    cdef int r, l = 0
    for r in range(1, n):
        t = _rotl(t, 1, n, mask)
        if t < best:
            best = t
            l = r
    rep[0] = best
    shift[0] = l


def fixed_popcount_states(int n_sites, int n_up):
    """All n_sites-bit integers with n_up set bits, increasing (Gosper's hack)."""
    from math import comb
    cdef Py_ssize_t count = comb(n_sites, n_up), k
    out = np.empty(count, dtype=np.int64)
    cdef i64[::1] o = out
    cdef i64 s, c, r
    if count == 0:
        return out
    if n_up == 0:
        o[0] = 0
        return out
    s = (<i64>1 << n_up) - 1
    with nogil:
        for k in range(count):
            o[k] = s
            c = s & -s
            r = s + c
            s = (((r ^ s) >> 2) // c) | r
    return out


def find_representatives(const i64[::1] states, int n_sites):
    """Smallest rotation of each state and the shift l with T^l s = rep."""
    cdef Py_ssize_t m = states.shape[0], a
    cdef i64 mask = (<i64>1 << n_sites) - 1
    reps = np.empty(m, dtype=np.int64)
    shifts = np.empty(m, dtype=np.int64)
    cdef i64[::1] rv = reps
    cdef i64[::1] sv = shifts
    cdef i64 rep
    cdef int l
    with nogil:
        for a in range(m):
            _rep_of(states[a], n_sites, mask, &rep, &l)
            rv[a] = rep
            sv[a] = l
    return reps, shifts


def orbit_periods(const i64[::1] states, int n_sites):
    cdef Py_ssize_t m = states.shape[0], a
    cdef i64 mask = (<i64>1 << n_sites) - 1
    cdef i64 t
    cdef int r
    out = np.empty(m, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for a in range(m):
            t = states[a]
            for r in range(1, n_sites + 1):
                t = _rotl(t, 1, n_sites, mask)
                if t == states[a]:
                    o[a] = r
                    break
    return out


def sz_matvec(const i64[::1] configs, int n_sites, const i64[::1] bond_i,
              const i64[::1] bond_j, const double[::1] bond_c,
              const double complex[::1] x):
    """y = H x over a sorted configuration list closed under spin exchange."""
    cdef Py_ssize_t dim = configs.shape[0], nb = bond_i.shape[0], a, b, q
    y = np.zeros(dim, dtype=np.complex128)
    cdef double complex[::1] yv = y
    cdef i64 s, mi, mj
    cdef double diag
    cdef int mode = _lookup_mode(configs, n_sites)
    cdef const int[::1] table = _DUMMY
    if mode == RANK:
        tab = _index_table(configs, n_sites)
        if tab is not None:
            table = tab
            mode = TABLE
    with nogil:
        for a in range(dim):
            s = configs[a]
            diag = 0.0
            for q in range(nb):
                mi = (<i64>1) << bond_i[q]
                mj = (<i64>1) << bond_j[q]
                if ((s & mi) != 0) == ((s & mj) != 0):
                    diag = diag + 0.25 * bond_c[q]
                else:
                    diag = diag - 0.25 * bond_c[q]
                    b = _index(configs, table, s ^ mi ^ mj, mode)
                    if b >= 0:
                        yv[b] = yv[b] + 0.5 * bond_c[q] * x[a]
            yv[a] = yv[a] + diag * x[a]
    return y


def sz_coo(const i64[::1] configs, int n_sites, const i64[::1] bond_i,
           const i64[::1] bond_j, const double[::1] bond_c):
    """COO triplets (row, col, value) of H over a sorted configuration list."""
    cdef Py_ssize_t dim = configs.shape[0], nb = bond_i.shape[0], a, b, q
    cdef Py_ssize_t cap = dim * (nb + 1), k = 0
    rows = np.empty(cap, dtype=np.int64)
    cols = np.empty(cap, dtype=np.int64)
    vals = np.empty(cap, dtype=np.float64)
    cdef i64[::1] rv = rows
    cdef i64[::1] cv = cols
    cdef double[::1] vv = vals
    cdef i64 s, mi, mj
    cdef double diag
    cdef int mode = _lookup_mode(configs, n_sites)
    cdef const int[::1] table = _DUMMY
    if mode == RANK:
        tab = _index_table(configs, n_sites)
        if tab is not None:
            table = tab
            mode = TABLE
    with nogil:
        for a in range(dim):
            s = configs[a]
            diag = 0.0
            for q in range(nb):
                mi = (<i64>1) << bond_i[q]
                mj = (<i64>1) << bond_j[q]
                if ((s & mi) != 0) == ((s & mj) != 0):
                    diag = diag + 0.25 * bond_c[q]
                else:
                    diag = diag - 0.25 * bond_c[q]
                    b = _index(configs, table, s ^ mi ^ mj, mode)
                    if b >= 0:
                        rv[k] = b
                        cv[k] = a
                        vv[k] = 0.5 * bond_c[q]
                        k += 1
            rv[k] = a
            cv[k] = a
            vv[k] = diag
            k += 1
    return rows[:k], cols[:k], vals[:k]


def momentum_matvec(const i64[::1] reps, const i64[::1] periods, int n_sites,
                    int k_index, const i64[::1] bond_i, const i64[::1] bond_j,
                    const double[::1] bond_c, const double complex[::1] x):
    """y = H x in the momentum basis spanned by ``reps``; matrix-free."""
    cdef Py_ssize_t dim = reps.shape[0], nb = bond_i.shape[0], a, b, q
    cdef i64 mask = (<i64>1 << n_sites) - 1
    cdef double k = 2.0 * M_PI * k_index / n_sites
    y = np.zeros(dim, dtype=np.complex128)
    cdef double complex[::1] yv = y
    cdef i64 s, mi, mj, rep
    cdef int l
    cdef double diag, amp
    cdef double complex ph
    with nogil:
        for a in range(dim):
            s = reps[a]
            diag = 0.0
            for q in range(nb):
                mi = (<i64>1) << bond_i[q]
                mj = (<i64>1) << bond_j[q]
                if ((s & mi) != 0) == ((s & mj) != 0):
                    diag = diag + 0.25 * bond_c[q]
                else:
                    diag = diag - 0.25 * bond_c[q]
                    _rep_of(s ^ mi ^ mj, n_sites, mask, &rep, &l)
                    b = _search(reps, rep)
                    if b >= 0:
                        amp = 0.5 * bond_c[q] * sqrt(<double>periods[a] / <double>periods[b])
                        ph = cos(k * l) - 1j * sin(k * l)
                        yv[b] = yv[b] + amp * ph * x[a]
            yv[a] = yv[a] + diag * x[a]
    return y


def momentum_coo(const i64[::1] reps, const i64[::1] periods, int n_sites,
                 int k_index, const i64[::1] bond_i, const i64[::1] bond_j,
                 const double[::1] bond_c):
    cdef Py_ssize_t dim = reps.shape[0], nb = bond_i.shape[0], a, b, q
    cdef Py_ssize_t cap = dim * (nb + 1), n = 0
    cdef i64 mask = (<i64>1 << n_sites) - 1
    cdef double k = 2.0 * M_PI * k_index / n_sites
    rows = np.empty(cap, dtype=np.int64)
    cols = np.empty(cap, dtype=np.int64)
    vals = np.empty(cap, dtype=np.complex128)
    cdef i64[::1] rv = rows
    cdef i64[::1] cv = cols
    cdef double complex[::1] vv = vals
    cdef i64 s, mi, mj, rep
    cdef int l
    cdef double diag, amp
    with nogil:
        for a in range(dim):
            s = reps[a]
            diag = 0.0
            for q in range(nb):
                mi = (<i64>1) << bond_i[q]
                mj = (<i64>1) << bond_j[q]
                if ((s & mi) != 0) == ((s & mj) != 0):
                    diag = diag + 0.25 * bond_c[q]
                else:
                    diag = diag - 0.25 * bond_c[q]
                    _rep_of(s ^ mi ^ mj, n_sites, mask, &rep, &l)
                    b = _search(reps, rep)
                    if b >= 0:
                        amp = 0.5 * bond_c[q] * sqrt(<double>periods[a] / <double>periods[b])
                        rv[n] = b
                        cv[n] = a
                        vv[n] = amp * (cos(k * l) - 1j * sin(k * l))
                        n += 1
            rv[n] = a
            cv[n] = a
            vv[n] = diag
            n += 1
    return rows[:n], cols[:n], vals[:n]


def pair_correlations(const i64[::1] configs, int n_sites,
                      const double complex[::1] bra,
                      const double complex[::1] ket):
    """Matrix of <bra| sigma_i . sigma_j |ket> for all site pairs.

    The diagonal holds 3 <bra|ket>. ``configs`` must be sorted and closed
    under exchanging any two spins.
    """
    cdef Py_ssize_t dim = configs.shape[0], a, b
    cdef int i, j
    out = np.zeros((n_sites, n_sites), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef double complex diag_amp, overlap = 0
    cdef i64 s, mi, mj
    cdef int mode = _lookup_mode(configs, n_sites)
    cdef const int[::1] table = _DUMMY
    if mode == RANK:
        tab = _index_table(configs, n_sites)
        if tab is not None:
            table = tab
            mode = TABLE
    with nogil:
        for a in range(dim):
            s = configs[a]
            diag_amp = bra[a].conjugate() * ket[a]
            overlap = overlap + diag_amp
            for i in range(n_sites):
                mi = (<i64>1) << i
                for j in range(i + 1, n_sites):
                    mj = (<i64>1) << j
                    if ((s & mi) != 0) == ((s & mj) != 0):
                        ov[i, j] = ov[i, j] + diag_amp
                    else:
                        ov[i, j] = ov[i, j] - diag_amp
                        b = _index(configs, table, s ^ mi ^ mj, mode)
                        if b >= 0:
                            ov[i, j] = ov[i, j] + 2.0 * bra[b].conjugate() * ket[a]
    for i in range(n_sites):
        out[i, i] = 3.0 * overlap
        for j in range(i + 1, n_sites):
            out[j, i] = out[i, j]
    return out
