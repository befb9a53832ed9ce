"""Shared fixtures: small non-abelian groups, random matrices and endomorphisms."""

from __future__ import annotations

import random
from math import gcd

import numpy as np

from twisted_zeta.fgab import FgAbEndo, FgAbGroup


def permutation_group(generators: list[tuple[int, ...]]):
    """Closure of ``generators`` under composition; returns (elements, Cayley table)."""
    n = len(generators[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = tuple(g[x[i]] for i in range(n))
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    index = {x: k for k, x in enumerate(elems)}
    table = [[index[tuple(a[b[i]] for i in range(n))] for b in elems] for a in elems]
    return elems, table


def s3():
    return permutation_group([(1, 0, 2), (1, 2, 0)])


def d4():
    return permutation_group([(1, 2, 3, 0), (0, 3, 2, 1)])


def q8():
    # regular representation of the quaternion group on 8 points
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mult = {
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }

    def mul(a, b):
        sa, ua = (a[0] == "-"), a.lstrip("-")
        sb, ub = (b[0] == "-"), b.lstrip("-")
        if ua == "1":
            r = ub
        elif ub == "1":
            r = ua
        else:
            r = mult[(ua, ub)]
        neg = sa ^ sb ^ (r[0] == "-")
        r = r.lstrip("-")
        return ("-" if neg else "") + r

    index = {x: k for k, x in enumerate(names)}
    table = [[index[mul(a, b)] for b in names] for a in names]
    return names, table


def conjugation(table, g: int) -> list[int]:
    """Inner automorphism ``x -> g x g^-1`` as an index table."""
    n = len(table)
    inv = next(h for h in range(n) if table[g][h] == 0)
    return [table[table[g][x]][inv] for x in range(n)]


def is_hyperbolic(A) -> bool:
    ev = np.linalg.eigvals(np.array(A, dtype=float))
    return bool(np.all(np.abs(np.abs(ev) - 1.0) > 1e-6))


def random_hyperbolic(rng: random.Random, size: int, bound: int = 3):
    while True:
        A = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        if is_hyperbolic(A):
            return A


TORSION_CHAINS = [(), (2,), (4,), (2, 4), (3,), (3, 9), (2, 2), (6,), (2, 6)]


def random_fgab(rng: random.Random, max_rank: int = 2, force_singular: float = 0.3) -> FgAbEndo:
    r = rng.randint(0, max_rank)
    t = rng.choice(TORSION_CHAINS)
    s = len(t)
    A = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)]
    if r and rng.random() < force_singular:
        A[0] = [0] * r
    B = [[rng.randrange(t[i]) for _ in range(r)] for i in range(s)]
    C = [[rng.randrange(0, t[i], t[i] // gcd(t[i], t[j])) for j in range(s)] for i in range(s)]
    return FgAbEndo(FgAbGroup(r, t), tuple(map(tuple, A)), tuple(map(tuple, B)), tuple(map(tuple, C)))


def brute_twisted_classes(table, endo) -> int:
    """Orbit count of ``x -> g x phi(g)^-1`` by plain set closure (no union-find)."""
    n = len(table)
    e = _identity(table)
    inv = [next(h for h in range(n) if table[g][h] == e) for g in range(n)]
    remaining = set(range(n))
    classes = 0
    while remaining:
        x = remaining.pop()
        orbit = {table[table[g][x]][inv[endo[g]]] for g in range(n)}
        remaining -= orbit
        classes += 1
    return classes


def _identity(table) -> int:
    n = len(table)
    return next(e for e in range(n) if list(table[e]) == list(range(n)))


def iterate(table_map, x, n):
    for _ in range(n):
        x = table_map[x]
    return x
