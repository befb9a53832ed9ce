"""Table-driven inner loops for the finite-group and finite-map oracles.

Each kernel has a numba ``@njit`` version and a pure-numpy version. The numba
path is used when numba imports and ``TWISTED_ZETA_DISABLE_NUMBA`` is unset
(or ``0``); otherwise the numpy path is used. Both are exact integer code and
must agree on every input, which the test-suite checks.

Tables are ``int64`` arrays of indices: a Cayley table ``mul[i, j]`` and maps
``f[i]``.
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "TWISTED_ZETA_DISABLE_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _numba_requested() -> bool:
    return HAVE_NUMBA and os.environ.get(DISABLE_ENV, "").strip() in ("", "0")


BACKEND = "numba" if _numba_requested() else "numpy"


# --------------------------------------------------------------------- numpy


def compose_power_numpy(f: np.ndarray, n: int) -> np.ndarray:
    """The table of ``f`` iterated ``n`` times (``n >= 0``)."""
    result = np.arange(f.shape[0], dtype=np.int64)
    base = f.astype(np.int64, copy=True)
    while n:
        if n & 1:
            result = base[result]
        n >>= 1
        if n:
            base = base[base]
    return result


def twisted_class_count_numpy(mul: np.ndarray, inv: np.ndarray, phi: np.ndarray) -> int:
    # Orbit of x under x -> g x phi(g)^-1 is column x of Y; its minimum labels it.
    n = mul.shape[0]
    g = np.arange(n)
    gx = mul[g[:, None], g[None, :]]
    Y = mul[gx, inv[phi][:, None]]
    return int(np.unique(Y.min(axis=0)).size)


def cycle_structure_numpy(f: np.ndarray) -> tuple[np.ndarray, int]:
    n = f.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0
    periodic = np.unique(compose_power_numpy(f, n))
    length = np.zeros(periodic.size, dtype=np.int64)
    cur = f[periodic]
    for k in range(1, periodic.size + 1):
        hit = (cur == periodic) & (length == 0)
        length[hit] = k
        if np.all(length):
            break
        cur = f[cur]
    lengths, counts = np.unique(length, return_counts=True)
    cycles = np.repeat(lengths, counts // lengths)
    return cycles.astype(np.int64), int(n - periodic.size)


# --------------------------------------------------------------------- numba

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _find(parent, x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            nxt = parent[x]
            parent[x] = root
            x = nxt
        return root

    @numba.njit(cache=True)
    def twisted_class_count_numba(mul, inv, phi):
        n = mul.shape[0]
        parent = np.arange(n)
        classes = n
        for g in range(n):
            right = inv[phi[g]]
            for x in range(n):
                y = mul[mul[g, x], right]
                a = _find(parent, x)
                b = _find(parent, y)
                if a != b:
                    parent[a] = b
                    classes -= 1
        return classes

    @numba.njit(cache=True)
    def _cycle_structure_numba(f):
        n = f.shape[0]
        # 0 = unseen, 1 = on current path, 2 = finished
        state = np.zeros(n, dtype=np.int64)
        pos = np.zeros(n, dtype=np.int64)
        path = np.zeros(n, dtype=np.int64)
        cycles = np.zeros(n, dtype=np.int64)
        ncyc = 0
        periodic = 0
        for start in range(n):
            if state[start] != 0:
                continue
            depth = 0
            x = start
            while state[x] == 0:
                state[x] = 1
                pos[x] = depth
                path[depth] = x
                depth += 1
                x = f[x]
            if state[x] == 1:
                ell = depth - pos[x]
                cycles[ncyc] = ell
                ncyc += 1
                periodic += ell
            for k in range(depth):
                state[path[k]] = 2
        return cycles[:ncyc], n - periodic

    def cycle_structure_numba(f):
        cycles, transient = _cycle_structure_numba(f)
        return np.sort(cycles), int(transient)

else:  # pragma: no cover
    twisted_class_count_numba = None
    cycle_structure_numba = None


def _pick(name: str):
    if BACKEND == "numba":
        return globals()[f"{name}_numba"]
    return globals()[f"{name}_numpy"]


def twisted_class_count(mul: np.ndarray, inv: np.ndarray, phi: np.ndarray) -> int:
    """Number of orbits of ``x -> g x phi(g)^-1`` on a Cayley table."""
    return int(_pick("twisted_class_count")(mul, inv, phi))


def cycle_structure(f: np.ndarray) -> tuple[np.ndarray, int]:
    """Sorted cycle lengths (one entry per cycle) and number of transient points."""
    return _pick("cycle_structure")(f)


compose_power = compose_power_numpy
