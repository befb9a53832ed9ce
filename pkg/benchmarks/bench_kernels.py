"""Compare the numba and pure-numpy paths of the finite-table kernels.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is warmed up
once (so numba compilation is excluded) and then timed as the best of a few
repeats on the same input. Both paths must return identical results.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from twisted_zeta import _kernels
from twisted_zeta.grouporacle import AbelianCharEndo


def _best(fn, *args, repeat: int = 5) -> float:
    fn(*args)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_twisted(order: int) -> tuple[float, float | None]:
    g = AbelianCharEndo((order,), ((3,),)).to_group()
    args = (g.table, g.inverse, g.endomorphism)
    t_np = _best(_kernels.twisted_class_count_numpy, *args)
    if not _kernels.HAVE_NUMBA:
        return t_np, None
    assert _kernels.twisted_class_count_numpy(*args) == _kernels.twisted_class_count_numba(*args)
    return t_np, _best(_kernels.twisted_class_count_numba, *args)


def bench_cycles(size: int, seed: int) -> tuple[float, float | None]:
    f = np.random.default_rng(seed).integers(0, size, size=size, dtype=np.int64)
    t_np = _best(_kernels.cycle_structure_numpy, f)
    if not _kernels.HAVE_NUMBA:
        return t_np, None
    a, b = _kernels.cycle_structure_numpy(f), _kernels.cycle_structure_numba(f)
    assert np.array_equal(a[0], b[0]) and a[1] == b[1]
    return t_np, _best(_kernels.cycle_structure_numba, f)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--group-orders", type=int, nargs="+", default=[64, 256, 1024])
    parser.add_argument("--map-sizes", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"numba available: {_kernels.HAVE_NUMBA}")
    print(f"{'kernel':<22}{'size':>10}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    rows = [("twisted_class_count", n, *bench_twisted(n)) for n in args.group_orders]
    rows += [("cycle_structure", n, *bench_cycles(n, args.seed)) for n in args.map_sizes]
    for name, n, t_np, t_nb in rows:
        nb = "-" if t_nb is None else f"{1e3 * t_nb:.3f}"
        sp = "-" if t_nb is None else f"{t_np / t_nb:.1f}x"
        print(f"{name:<22}{n:>10}{1e3 * t_np:>14.3f}{nb:>14}{sp:>10}")


if __name__ == "__main__":
    main()
