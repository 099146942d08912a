"""Brute-force reference implementations.

Deliberately naive: plain Python sets, tuples and loops, no numpy and nothing
imported from the package, so they fail independently of it.
"""
from __future__ import annotations

import itertools

# --------------------------------------------------------------------------
# lattices and Kleene algebras given by an order relation on range(n)


def lub(n, leq, a, b):
    ups = [u for u in range(n) if leq(a, u) and leq(b, u)]
    least = [u for u in ups if all(leq(u, v) for v in ups)]
    return least[0] if len(least) == 1 else None


def glb(n, leq, a, b):
    downs = [d for d in range(n) if leq(d, a) and leq(d, b)]
    great = [d for d in downs if all(leq(v, d) for v in downs)]
    return great[0] if len(great) == 1 else None


def is_kleene(n, leq, neg) -> bool:
    """Every Kleene axiom, checked on all tuples."""
    for a, b in itertools.product(range(n), repeat=2):
        if lub(n, leq, a, b) is None or glb(n, leq, a, b) is None:
            return False
    join = lambda a, b: lub(n, leq, a, b)
    meet = lambda a, b: glb(n, leq, a, b)
    for a, b, c in itertools.product(range(n), repeat=3):
        if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)):
            return False
    for a, b in itertools.product(range(n), repeat=2):
        if neg[neg[a]] != a:
            return False
        if neg[join(a, b)] != meet(neg[a], neg[b]):
            return False
        if not leq(meet(a, neg[a]), join(b, neg[b])):
            return False
    return True


def kleene_algebra_count(size: int) -> int:
    """Kleene algebras with ``size`` elements up to isomorphism.

    Orders are enumerated with a natural labelling (i <= j only if i < j as
    integers), which reaches every finite poset.
    """
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    seen = set()
    for bits in range(1 << len(pairs)):
        rel = {(i, i) for i in range(size)}
        rel |= {p for k, p in enumerate(pairs) if bits >> k & 1}
        if any((a, d) not in rel for (a, b) in rel for (c, d) in rel if b == c):
            continue
        leq = lambda a, b, rel=rel: (a, b) in rel
        if not all(lub(size, leq, a, b) is not None and glb(size, leq, a, b) is not None
                   for a, b in itertools.combinations(range(size), 2)):
            continue
        for neg in itertools.permutations(range(size)):
            if not all(leq(neg[b], neg[a]) for a, b in rel):
                continue
            if not is_kleene(size, leq, neg):
                continue
            seen.add(_iso_key(size, rel, neg))
    return len(seen)


def _iso_key(n, rel, neg):
    best = None
    for perm in itertools.permutations(range(n)):
        key = (tuple(sorted((perm[a], perm[b]) for a, b in rel)),
               tuple(perm[neg[x]] for x in sorted(range(n), key=lambda x: perm[x])))
        if best is None or key < best:
            best = key
    return best


# --------------------------------------------------------------------------
# rough sets with Python sets

def approximations(blocks, subset):
    subset = set(subset)
    lower = set().union(*[set(b) for b in blocks if set(b) <= subset])
    upper = set().union(*[set(b) for b in blocks if set(b) & subset])
    return frozenset(lower), frozenset(upper)


def rough_sets(universe, blocks):
    out = set()
    for r in range(len(universe) + 1):
        for subset in itertools.combinations(universe, r):
            out.add(approximations(blocks, subset))
    return out


def definable(universe, blocks):
    out = set()
    for r in range(len(blocks) + 1):
        for chosen in itertools.combinations(blocks, r):
            out.add(frozenset(x for b in chosen for x in b))
    return out


def generalized_pairs(universe, blocks):
    ds = definable(universe, blocks)
    return {(a, b) for a in ds for b in ds if a <= b}


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


# --------------------------------------------------------------------------
# 3-valued logic on formula trees, values 0 (f), 1 (u), 2 (t)

def eval3(phi, v):
    kind = type(phi).__name__
    if kind == "Top":
        return 2
    if kind == "Bot":
        return 0
    if kind == "Var":
        return v[phi.name]
    if kind == "Neg":
        return 2 - eval3(phi.child, v)
    if kind == "And":
        return min(eval3(phi.left, v), eval3(phi.right, v))
    return max(eval3(phi.left, v), eval3(phi.right, v))


def tf_valid(c, names) -> bool:
    for values in itertools.product(range(3), repeat=len(names)):
        v = dict(zip(names, values))
        lo, hi = eval3(c.lhs, v), eval3(c.rhs, v)
        if (lo == 2 and hi != 2) or (hi == 0 and lo != 0):
            return False
    return True


def leq_valid_3(c, names) -> bool:
    """Validity in 3 as an algebra: v(lhs) <= v(rhs) everywhere."""
    return all(eval3(c.lhs, dict(zip(names, vs))) <= eval3(c.rhs, dict(zip(names, vs)))
               for vs in itertools.product(range(3), repeat=len(names)))


# --------------------------------------------------------------------------
# frames with Python sets

def is_partial_order(n, leq):
    return (all((x, x) in leq for x in range(n))
            and all(not ((x, y) in leq and (y, x) in leq) or x == y for x in range(n) for y in range(n))
            and all((x, z) in leq for (x, y) in leq for (y2, z) in leq if y == y2))


def is_down_closed(n, leq, C):
    return all((xp, yp) in C
               for (x, y) in C for xp in range(n) for yp in range(n)
               if (xp, x) in leq and (yp, y) in leq)


def upsets(n, leq):
    out = []
    for r in range(n + 1):
        for s in itertools.combinations(range(n), r):
            s = set(s)
            if all(y in s for x in s for y in range(n) if (x, y) in leq):
                out.append(frozenset(s))
    return out


def force(n, C, ext, x, phi):
    kind = type(phi).__name__
    if kind == "Top":
        return True
    if kind == "Bot":
        return False
    if kind == "Var":
        return x in ext[phi.name]
    if kind == "Neg":
        return all(not force(n, C, ext, y, phi.child) for y in range(n) if (x, y) in C)
    if kind == "And":
        return force(n, C, ext, x, phi.left) and force(n, C, ext, x, phi.right)
    return force(n, C, ext, x, phi.left) or force(n, C, ext, x, phi.right)


def frame_valid(n, leq, C, c, names) -> bool:
    ups = upsets(n, leq)
    for exts in itertools.product(ups, repeat=len(names)):
        ext = dict(zip(names, exts))
        for x in range(n):
            if force(n, C, ext, x, c.lhs) and not force(n, C, ext, x, c.rhs):
                return False
    return True


def kleene_condition(n, leq, C):
    return all((x, x) in C or all((y, x) in leq for y in range(n) if (x, y) in C) for x in range(n))


def dni_condition(n, C):
    return all((y, x) in C for (x, y) in C)


def dne_condition(n, leq, C):
    return all(any((x, y) in C and all((z, x) in leq for z in range(n) if (y, z) in C)
                   for y in range(n)) for x in range(n))


def labelled_frames(n):
    """Every (leq, C) pair on range(n): all partial orders, all down-closed C."""
    cells = [(x, y) for x in range(n) for y in range(n)]
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    for bits in range(1 << len(off)):
        leq = {(x, x) for x in range(n)} | {p for k, p in enumerate(off) if bits >> k & 1}
        if not is_partial_order(n, leq):
            continue
        for cbits in range(1 << len(cells)):
            C = {p for k, p in enumerate(cells) if cbits >> k & 1}
            if is_down_closed(n, leq, C):
                yield leq, C


def frame_key(n, leq, C):
    best = None
    for perm in itertools.permutations(range(n)):
        key = (tuple(sorted((perm[a], perm[b]) for a, b in leq)),
               tuple(sorted((perm[a], perm[b]) for a, b in C)))
        if best is None or key < best:
            best = key
    return best
