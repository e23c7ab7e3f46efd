"""Kernel backend selection.

The compiled extension ``spinring._ckernels`` is used when it was built;
otherwise the numpy implementation in ``spinring._pykernels`` takes over.
Setting ``SPINRING_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("SPINRING_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

fixed_popcount_states = _impl.fixed_popcount_states
find_representatives = _impl.find_representatives
orbit_periods = _impl.orbit_periods
sz_matvec = _impl.sz_matvec
sz_coo = _impl.sz_coo
momentum_matvec = _impl.momentum_matvec
momentum_coo = _impl.momentum_coo
pair_correlations = _impl.pair_correlations

__all__ = [
    "BACKEND",
    "fixed_popcount_states",
    "find_representatives",
    "orbit_periods",
    "sz_matvec",
    "sz_coo",
    "momentum_matvec",
    "momentum_coo",
    "pair_correlations",
]
