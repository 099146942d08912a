"""Enumeration of small Kleene algebras up to isomorphism, and the test fleet.

Distributive lattices come from Birkhoff's correspondence: every finite
distributive lattice is the lattice of down-sets of its poset of join
irreducibles. Posets are grown one new maximal element at a time, which
reaches every poset through a natural labelling, and growth stops as soon as
the down-set count exceeds the size bound (it never shrinks).
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .algebra import (
    FiniteKleeneAlgebra,
    FiniteLattice,
    check_kleene_axioms,
    interval_algebra,
    power_algebra,
    powerset_algebra,
    three,
)


def _downsets(m: int, below: list[int]) -> list[int]:
    """Down-sets of a poset on ``range(m)`` as bitmasks; ``below[i]`` is the strict down-set of i."""
    out = []
    for mask in range(1 << m):
        if all(not (mask >> i) & 1 or (below[i] & ~mask) == 0 for i in range(m)):
            out.append(mask)
    return out


def _poset_key(m: int, below: list[int]) -> tuple:
    """Canonical form: lexicographically least strict-order matrix over all relabellings."""
    best = None
    for perm in itertools.permutations(range(m)):
        rows = []
        for i in range(m):
            src = perm[i]
            rows.append(tuple(int(bool(below[src] >> perm[j] & 1)) for j in range(m)))
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return (m, best)


def posets_with_few_downsets(max_downsets: int) -> list[tuple[int, list[int]]]:
    """Posets (up to isomorphism) with at most ``max_downsets`` down-sets."""
    seen = {}
    frontier = [(0, [])]
    while frontier:
        m, below = frontier.pop()
        key = _poset_key(m, below)
        if key in seen:
            continue
        seen[key] = (m, below)
        for d in _downsets(m, below):
            grown = below + [d]
            if len(_downsets(m + 1, grown)) <= max_downsets:
                frontier.append((m + 1, grown))
    return sorted(seen.values(), key=lambda p: (len(_downsets(*p)), p[0], p[1]))


def _element_names(n: int) -> list[str]:
    middle = [chr(ord("a") + i) for i in range(n - 2)]
    return ["0"] + middle + ["1"] if n >= 2 else ["0"]


def downset_lattice(m: int, below: list[int]) -> FiniteLattice:
    ds = sorted(_downsets(m, below), key=lambda d: (bin(d).count("1"), d))
    n = len(ds)
    index = {d: i for i, d in enumerate(ds)}
    arr = np.array(ds)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    join = np.vectorize(index.get)(arr[:, None] | arr[None, :])
    meet = np.vectorize(index.get)(arr[:, None] & arr[None, :])
    return FiniteLattice(leq, join.astype(np.int32), meet.astype(np.int32), 0, n - 1,
                         labels=ds, names=_element_names(n))


def distributive_lattices(max_size: int) -> list[FiniteLattice]:
    """All distributive lattices with at most ``max_size`` elements, up to isomorphism."""
    return [downset_lattice(m, below) for m, below in posets_with_few_downsets(max_size)]


def _order_maps(leq: np.ndarray, reverse: bool, involutive: bool):
    """Bijections ``s`` with ``x <= y  iff  s(x) <= s(y)`` (or ``s(y) <= s(x)`` when reversed)."""
    n = leq.shape[0]
    img = [-1] * n
    used = [False] * n

    def consistent(x, y):
        for z in range(n):
            w = img[z]
            if w == -1:
                continue
            if reverse:
                if leq[x, z] != leq[w, y] or leq[z, x] != leq[y, w]:
                    return False
            elif leq[x, z] != leq[y, w] or leq[z, x] != leq[w, y]:
                return False
        return True

    def search():
        try:
            x = img.index(-1)
        except ValueError:
            yield tuple(img)
            return
        for y in range(n):
            if used[y] or not consistent(x, y):
                continue
            if involutive and y != x and img[y] != -1:
                continue
            img[x] = y
            used[y] = True
            paired = involutive and y != x
            if paired:
                if used[x] or not consistent(y, x):
                    img[x] = -1
                    used[y] = False
                    continue
                img[y] = x
                used[x] = True
            yield from search()
            img[x] = -1
            used[y] = False
            if paired:
                img[y] = -1
                used[x] = False

    yield from search()


def involutive_dual_automorphisms(L: FiniteLattice) -> list[tuple[int, ...]]:
    leq = np.asarray(L.leq)
    out = []
    for s in _order_maps(leq, reverse=True, involutive=True):
        sa = np.array(s)
        if (leq == leq[sa][:, sa].T).all() and (sa[sa] == np.arange(len(sa))).all():
            out.append(s)
    return out


def lattice_automorphisms(L: FiniteLattice) -> list[tuple[int, ...]]:
    return list(_order_maps(np.asarray(L.leq), reverse=False, involutive=False))


def kleene_negations(L: FiniteLattice) -> list[tuple[int, ...]]:
    """Kleene negations on ``L``, one per isomorphism class of the resulting algebra."""
    autos = [np.array(a) for a in lattice_automorphisms(L)]
    seen = set()
    out = []
    for s in involutive_dual_automorphisms(L):
        K = FiniteKleeneAlgebra(L, list(s))
        if not check_kleene_axioms(K).ok:
            continue
        sa = np.array(s)
        orbit = set()
        for a in autos:
            inv = np.argsort(a)
            orbit.add(tuple(int(v) for v in a[sa[inv]]))
        if orbit & seen:
            continue
        seen |= orbit
        out.append(s)
    return out


@lru_cache(maxsize=None)
def kleene_algebras(max_size: int = 8, min_size: int = 2) -> tuple[FiniteKleeneAlgebra, ...]:
    """Every Kleene algebra with ``min_size..max_size`` elements, up to isomorphism."""
    out = []
    for L in distributive_lattices(max_size):
        if L.size < min_size:
            continue
        for k, s in enumerate(kleene_negations(L)):
            out.append(FiniteKleeneAlgebra(L, list(s), name=f"K{L.size}.{len(out)}"))
    # stable numbering: by size, then discovery order
    out.sort(key=lambda K: K.size)
    for i, K in enumerate(out):
        K.name = f"K{K.size}#{i}"
    return tuple(out)


@lru_cache(maxsize=None)
def algebra_fleet(max_enumerated: int = 8) -> tuple[FiniteKleeneAlgebra, ...]:
    """Interval algebras of ``2^0..2^4``, ``3^1..3^3`` and every Kleene algebra up to ``max_enumerated``."""
    fleet = [interval_algebra(powerset_algebra(n)) for n in range(5)]
    fleet += [power_algebra(three(), n) for n in range(1, 4)]
    fleet += list(kleene_algebras(max_enumerated))
    return tuple(fleet)
