"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--n-sites 16] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from spinring import _pykernels
from spinring.basis import SymmetrySector, build_momentum_basis, enumerate_sz_sector
from spinring.hamiltonian import CouplingParams, bonds

try:
    from spinring import _ckernels
except ImportError:
    _ckernels = None


def cases(n):
    p = CouplingParams.uniform(n, 0.5)
    bi, bj, bc = bonds(p)
    configs = np.asarray(enumerate_sz_sector(n, 0))
    mb = build_momentum_basis(SymmetrySector(0, n // 2), n)
    rng = np.random.default_rng(0)
    x = rng.standard_normal(len(configs)) + 0j
    y = rng.standard_normal(mb.dim) + 0j
    return {
        "enumerate": lambda k: k.fixed_popcount_states(n, n // 2),
        "representatives": lambda k: k.find_representatives(configs, n),
        "sz_matvec": lambda k: k.sz_matvec(configs, n, bi, bj, bc, x),
        "momentum_matvec": lambda k: k.momentum_matvec(
            mb.representatives, mb.periods, n, n // 2, bi, bj, bc, y),
        "momentum_coo": lambda k: k.momentum_coo(
            mb.representatives, mb.periods, n, n // 2, bi, bj, bc),
        "pair_correlations": lambda k: k.pair_correlations(configs, n, x, x),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n-sites", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"N = {args.n_sites}, best of {args.repeat}")
    print(f"{'kernel':<20}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn in cases(args.n_sites).items():
        times = [min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) for _, mod in backends]
        speed = f"{times[-1] / times[0]:9.1f}x" if len(times) == 2 else ""
        print(f"{label:<20}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + f" {speed}")


if __name__ == "__main__":
    main()
