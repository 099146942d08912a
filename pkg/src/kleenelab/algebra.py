"""Finite lattice-based algebras and the interval (``B^[2]``) representation.

Elements are identified by index ``0..size-1``. Every algebra carries a tuple
of ``labels`` (hashable descriptors such as coordinate tuples or ``(lo, hi)``
pairs) and a tuple of printable ``names``. All tables are read-only numpy
arrays, computed once at construction.

On finite carriers "completely join irreducible" coincides with "join
irreducible" and the join-infinite distributive law holds in every
distributive lattice, so no separate JID check exists here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Sequence

import numpy as np


class StructureError(ValueError):
    """Malformed tables: non-total, out of range, or not a lattice at all."""


class SizeError(ValueError):
    """A brute-force enumeration bound was exceeded."""


class PreconditionError(ValueError):
    pass


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int32 if np.asarray(a).dtype != bool else bool)
    arr.setflags(write=False)
    return arr


class FiniteLattice:
    """A bounded lattice given by its order and its join/meet tables."""

    def __init__(self, leq, join, meet, bottom: int, top: int,
                 labels: Sequence[Hashable] | None = None,
                 names: Sequence[str] | None = None):
        leq = np.asarray(leq, dtype=bool)
        join = np.asarray(join)
        meet = np.asarray(meet)
        n = leq.shape[0] if leq.ndim == 2 else -1
        if n <= 0 or leq.shape != (n, n):
            raise StructureError(f"order relation must be a square matrix, got shape {leq.shape}")
        for tname, table in (("join", join), ("meet", meet)):
            if table.shape != (n, n):
                raise StructureError(f"{tname} table has shape {table.shape}, expected {(n, n)}")
            if not np.issubdtype(table.dtype, np.integer):
                raise StructureError(f"{tname} table must hold element indices")
            if table.min() < 0 or table.max() >= n:
                raise StructureError(f"{tname} table has out-of-range entries")
        for bname, b in (("bottom", bottom), ("top", top)):
            if not 0 <= int(b) < n:
                raise StructureError(f"{bname} index {b} out of range")
        self.leq = _frozen(leq)
        self.join = _frozen(join)
        self.meet = _frozen(meet)
        self.bottom = int(bottom)
        self.top = int(top)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.names = tuple(names) if names is not None else tuple(str(x) for x in self.labels)
        if len(self.labels) != n or len(self.names) != n:
            raise StructureError("labels/names must have one entry per element")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"{type(self).__name__}(size={self.size})"

    @classmethod
    def from_order(cls, leq, labels=None, names=None) -> "FiniteLattice":
        """Derive join/meet from a partial order, failing if it is not a lattice."""
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n) or n == 0:
            raise StructureError("order relation must be a non-empty square matrix")
        witness = partial_order_violation(leq)
        if witness is not None:
            raise StructureError(f"not a partial order: {witness}")
        join = np.empty((n, n), dtype=np.int32)
        meet = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            for b in range(a, n):
                ub = np.flatnonzero(leq[a] & leq[b])
                lub = [u for u in ub if leq[u, ub].all()]
                lb = np.flatnonzero(leq[:, a] & leq[:, b])
                glb = [l for l in lb if leq[lb, l].all()]
                if len(lub) != 1 or len(glb) != 1:
                    raise StructureError(f"elements {a} and {b} lack a least upper or greatest lower bound")
                join[a, b] = join[b, a] = lub[0]
                meet[a, b] = meet[b, a] = glb[0]
        bottoms = [x for x in range(n) if leq[x].all()]
        tops = [x for x in range(n) if leq[:, x].all()]
        return cls(leq, join, meet, bottoms[0], tops[0], labels, names)

    def join_all(self, elements) -> int:
        acc = self.bottom
        for x in elements:
            acc = int(self.join[acc, x])
        return acc

    def meet_all(self, elements) -> int:
        acc = self.top
        for x in elements:
            acc = int(self.meet[acc, x])
        return acc


def partial_order_violation(leq: np.ndarray):
    """First violation of reflexivity/antisymmetry/transitivity, or None."""
    n = leq.shape[0]
    for x in range(n):
        if not leq[x, x]:
            return ("reflexivity", x)
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        a, b = map(int, np.argwhere(both)[0])
        return ("antisymmetry", a, b)
    comp = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    bad = comp & ~leq
    if bad.any():
        a, c = map(int, np.argwhere(bad)[0])
        b = int(np.flatnonzero(leq[a] & leq[:, c])[0])
        return ("transitivity", a, b, c)
    return None


class _Delegating:
    lattice: FiniteLattice

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def leq(self):
        return self.lattice.leq

    @property
    def join(self):
        return self.lattice.join

    @property
    def meet(self):
        return self.lattice.meet

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def labels(self):
        return self.lattice.labels

    @property
    def names(self):
        return self.lattice.names

    def index(self, label) -> int:
        return self.lattice.index(label)

    def __len__(self) -> int:
        return self.lattice.size


def _unary(table, n: int, what: str) -> np.ndarray:
    table = np.asarray(table)
    if table.shape != (n,) or not np.issubdtype(table.dtype, np.integer):
        raise StructureError(f"{what} table must list one index per element")
    if n and (table.min() < 0 or table.max() >= n):
        raise StructureError(f"{what} table has out-of-range entries")
    return _frozen(table)


class FiniteKleeneAlgebra(_Delegating):
    """Lattice plus a negation table.

    Construction only validates shape; the axioms are checked by
    :func:`check_kleene_axioms`, so deliberately broken candidates can exist.
    """

    def __init__(self, lattice: FiniteLattice, neg, name: str | None = None):
        self.lattice = lattice
        self.neg = _unary(neg, lattice.size, "negation")
        self.name = name

    def __repr__(self) -> str:
        return f"FiniteKleeneAlgebra({self.name or '?'}, size={self.size})"

    @classmethod
    def from_order(cls, leq, neg, labels=None, names=None, name=None):
        return cls(FiniteLattice.from_order(leq, labels, names), neg, name)


class FiniteBooleanAlgebra(_Delegating):
    def __init__(self, lattice: FiniteLattice, complement, atoms: Sequence[int] | None = None,
                 name: str | None = None):
        self.lattice = lattice
        self.complement = _unary(complement, lattice.size, "complement")
        if atoms is None:
            atoms = [x for x in range(lattice.size) if _is_atom(lattice, x)]
        self.atoms = tuple(int(a) for a in atoms)
        self.name = name

    def __repr__(self) -> str:
        return f"FiniteBooleanAlgebra({self.name or '?'}, size={self.size})"

    def as_kleene(self) -> FiniteKleeneAlgebra:
        """Boolean complement is a Kleene negation."""
        return FiniteKleeneAlgebra(self.lattice, self.complement, self.name)


def _is_atom(L: FiniteLattice, x: int) -> bool:
    if x == L.bottom:
        return False
    below = np.flatnonzero(L.leq[:, x])
    return len(below) == 2


# --------------------------------------------------------------------------
# axiom checking

@dataclass
class AxiomReport:
    """Per-axiom outcome; a ``None`` entry means the axiom holds."""

    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.results.values())

    def failures(self) -> dict:
        return {k: w for k, w in self.results.items() if w is not None}

    def __str__(self) -> str:
        lines = []
        for axiom, witness in self.results.items():
            lines.append(f"{axiom}: " + ("pass" if witness is None else f"FAIL witness={witness}"))
        return "\n".join(lines)


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _lattice_witness(L) -> tuple | None:
    leq, join, meet = np.asarray(L.leq), np.asarray(L.join), np.asarray(L.meet)
    po = partial_order_violation(leq)
    if po is not None:
        return po
    n = leq.shape[0]
    idx = np.arange(n)
    # join[a,b] is an upper bound and lies below every common upper bound
    upper = leq[idx[:, None], join] & leq[idx[None, :], join]
    if not upper.all():
        return ("join-upper-bound",) + _first(~upper)
    lower = leq[meet, idx[:, None]] & leq[meet, idx[None, :]]
    if not lower.all():
        return ("meet-lower-bound",) + _first(~lower)
    for a in range(n):
        common_ub = leq[a][None, :] & leq            # [b, u]: a<=u and b<=u
        bad = common_ub & ~leq[join[a]][:, :]        # join[a,b] <= u must hold
        if bad.any():
            b, u = _first(bad)
            return ("join-least", a, b, u)
        common_lb = leq[:, a][None, :] & leq.T       # [b, l]: l<=a and l<=b
        bad = common_lb & ~leq.T[meet[a]][:, :]
        if bad.any():
            b, l = _first(bad)
            return ("meet-greatest", a, b, l)
    return None


def _distributivity_witness(A) -> tuple | None:
    join, meet = np.asarray(A.join), np.asarray(A.meet)
    for a in range(join.shape[0]):
        lhs = meet[a][join]
        ma = meet[a]
        rhs = join[ma[:, None], ma[None, :]]
        w = _first(lhs != rhs)
        if w is not None:
            return (a,) + w
    return None


def _bounds_witness(A) -> tuple | None:
    leq = np.asarray(A.leq)
    for x in range(leq.shape[0]):
        if not (leq[A.bottom, x] and leq[x, A.top]):
            return (x,)
    return None


def check_kleene_axioms(K: FiniteKleeneAlgebra) -> AxiomReport:
    """Check lattice structure, bounds, distributivity, involution,
    De Morgan laws and the Kleene inequality ``a & ~a <= b | ~b``.

    Each failing axiom carries the lexicographically first counterexample.
    """
    report = AxiomReport()
    report.results["lattice"] = _lattice_witness(K)
    report.results["bounds"] = _bounds_witness(K)
    report.results["distributivity"] = _distributivity_witness(K)
    neg, join, meet, leq = K.neg, np.asarray(K.join), np.asarray(K.meet), np.asarray(K.leq)
    report.results["involution"] = _first(neg[neg] != np.arange(K.size))
    dm_meet = neg[meet] != join[neg[:, None], neg[None, :]]
    dm_join = neg[join] != meet[neg[:, None], neg[None, :]]
    report.results["de_morgan"] = _first(dm_meet | dm_join)
    contra = meet[np.arange(K.size), neg]
    excl = join[np.arange(K.size), neg]
    report.results["kleene"] = _first(~leq[contra[:, None], excl[None, :]])
    return report


def check_boolean_axioms(B: FiniteBooleanAlgebra) -> AxiomReport:
    report = AxiomReport()
    report.results["lattice"] = _lattice_witness(B)
    report.results["bounds"] = _bounds_witness(B)
    report.results["distributivity"] = _distributivity_witness(B)
    n = np.arange(B.size)
    c = B.complement
    bad = (np.asarray(B.join)[n, c] != B.top) | (np.asarray(B.meet)[n, c] != B.bottom)
    report.results["complement"] = _first(bad)
    expected_atoms = tuple(x for x in range(B.size) if _is_atom(B.lattice, x))
    report.results["atoms"] = None if set(expected_atoms) == set(B.atoms) else (B.atoms, expected_atoms)
    atomic = None
    for x in range(B.size):
        if B.lattice.join_all(a for a in B.atoms if B.leq[a, x]) != x:
            atomic = (x,)
            break
    report.results["atomic"] = atomic
    return report


# --------------------------------------------------------------------------
# standard small algebras and constructions

def chain(n: int, names: Sequence[str] | None = None) -> FiniteLattice:
    idx = np.arange(n)
    leq = idx[:, None] <= idx[None, :]
    join = np.maximum(idx[:, None], idx[None, :])
    meet = np.minimum(idx[:, None], idx[None, :])
    return FiniteLattice(leq, join, meet, 0, n - 1, names=names)


def chain_kleene(n: int, names: Sequence[str] | None = None) -> FiniteKleeneAlgebra:
    """The n-element chain with the order-reversing negation."""
    return FiniteKleeneAlgebra(chain(n, names), np.arange(n)[::-1].copy(), name=f"chain{n}")


def two() -> FiniteKleeneAlgebra:
    return FiniteKleeneAlgebra(chain(2, ["0", "1"]), [1, 0], name="2")


def three() -> FiniteKleeneAlgebra:
    """The chain ``0 < a < 1`` with ``~a = a``; its indices double as f, u, t."""
    return FiniteKleeneAlgebra(chain(3, ["0", "a", "1"]), [2, 1, 0], name="3")


def de_morgan_four() -> FiniteKleeneAlgebra:
    """The diamond ``f < n, b < t`` with both middle elements fixed by negation."""
    leq = np.eye(4, dtype=bool)
    leq[0, :] = True
    leq[:, 3] = True
    L = FiniteLattice.from_order(leq, names=["f", "n", "b", "t"])
    return FiniteKleeneAlgebra(L, [3, 1, 2, 0], name="4DM")


def _coordinate_label(values: tuple, base_names: Sequence[str]) -> str:
    if len(values) == 1:
        return base_names[values[0]]
    return "(" + ",".join(base_names[v] for v in values) + ")"


def power_lattice_tables(base, n: int):
    """Pointwise tables for ``base**n``; carrier in ``itertools.product`` order."""
    m = base.size
    coords = np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int32).reshape(-1, n)
    weights = m ** np.arange(n - 1, -1, -1)
    N = coords.shape[0]
    leq = np.ones((N, N), dtype=bool)
    join = np.zeros((N, N), dtype=np.int64)
    meet = np.zeros((N, N), dtype=np.int64)
    bj, bm, bl = np.asarray(base.join), np.asarray(base.meet), np.asarray(base.leq)
    for k in range(n):
        col = coords[:, k]
        leq &= bl[col[:, None], col[None, :]]
        join += bj[col[:, None], col[None, :]] * weights[k]
        meet += bm[col[:, None], col[None, :]] * weights[k]
    bottom = int(np.dot(np.full(n, base.bottom), weights)) if n else 0
    top = int(np.dot(np.full(n, base.top), weights)) if n else 0
    labels = [tuple(int(v) for v in row) for row in coords]
    names = [_coordinate_label(lab, base.names) for lab in labels] if n else ["()"]
    L = FiniteLattice(leq, join.astype(np.int32), meet.astype(np.int32), bottom, top, labels, names)
    return L, coords, weights


def power_algebra(base: FiniteKleeneAlgebra, index_size: int) -> FiniteKleeneAlgebra:
    """``base ** index_size`` with pointwise operations."""
    if index_size < 1:
        raise ValueError("index_size must be at least 1")
    L, coords, weights = power_lattice_tables(base, index_size)
    neg = (base.neg[coords] * weights).sum(axis=1)
    name = f"{base.name or 'K'}^{index_size}"
    return FiniteKleeneAlgebra(L, neg.astype(np.int32), name=name)


def powerset_algebra(n: int) -> FiniteBooleanAlgebra:
    """``2**n``; labels are 0/1 coordinate tuples, atoms the unit vectors ``g_i``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    base = two()
    if n == 0:
        L = FiniteLattice([[True]], [[0]], [[0]], 0, 0, labels=[()], names=["()"])
        return FiniteBooleanAlgebra(L, [0], atoms=[], name="2^0")
    L, coords, weights = power_lattice_tables(base, n)
    comp = ((1 - coords) * weights).sum(axis=1)
    atoms = [L.index(tuple(int(k == i) for k in range(n))) for i in range(n)]
    return FiniteBooleanAlgebra(L, comp.astype(np.int32), atoms=atoms, name=f"2^{n}")


def boolean_from_lattice(L: FiniteLattice, name: str | None = None) -> FiniteBooleanAlgebra:
    """Recover complements from a lattice; raises if some element has none."""
    comp = np.empty(L.size, dtype=np.int32)
    for x in range(L.size):
        cands = np.flatnonzero((L.join[x] == L.top) & (L.meet[x] == L.bottom))
        if len(cands) != 1:
            raise StructureError(f"element {L.names[x]} has {len(cands)} complements")
        comp[x] = cands[0]
    return FiniteBooleanAlgebra(L, comp, name=name)


def interval_algebra(B: FiniteBooleanAlgebra) -> FiniteKleeneAlgebra:
    """Pairs ``(lo, hi)`` with ``lo <= hi``; componentwise lattice operations and
    ``~(lo, hi) = (hi^c, lo^c)``."""
    pairs = np.argwhere(np.asarray(B.leq))          # row-major: sorted by (lo, hi)
    lo, hi = pairs[:, 0], pairs[:, 1]
    lookup = np.full((B.size, B.size), -1, dtype=np.int64)
    lookup[lo, hi] = np.arange(len(pairs))
    bj, bm, bl = np.asarray(B.join), np.asarray(B.meet), np.asarray(B.leq)
    join = lookup[bj[lo[:, None], lo[None, :]], bj[hi[:, None], hi[None, :]]]
    meet = lookup[bm[lo[:, None], lo[None, :]], bm[hi[:, None], hi[None, :]]]
    leq = bl[lo[:, None], lo[None, :]] & bl[hi[:, None], hi[None, :]]
    c = B.complement
    neg = lookup[c[hi], c[lo]]
    labels = [(B.labels[a], B.labels[b]) for a, b in pairs]
    names = [f"({B.names[a]},{B.names[b]})" for a, b in pairs]
    L = FiniteLattice(leq, join.astype(np.int32), meet.astype(np.int32),
                      int(lookup[B.bottom, B.bottom]), int(lookup[B.top, B.top]), labels, names)
    K = FiniteKleeneAlgebra(L, neg.astype(np.int32), name=f"({B.name or 'B'})^[2]")
    K.interval_pairs = tuple((int(a), int(b)) for a, b in pairs)
    K.base = B
    return K


# --------------------------------------------------------------------------
# join irreducibles and the * operation

def join_irreducibles(L) -> list[int]:
    """Nonzero elements that are not the join of the elements strictly below them.

    In a finite lattice these are exactly the elements with one lower cover.
    """
    leq = np.asarray(L.leq)
    out = []
    for x in range(L.size):
        if x == L.bottom:
            continue
        below = np.flatnonzero(leq[:, x])
        below = below[below != x]
        if _join_all(L, below) != x:
            out.append(x)
    return out


def _join_all(L, elements) -> int:
    lat = L.lattice if hasattr(L, "lattice") else L
    return lat.join_all(int(e) for e in elements)


def _meet_all(L, elements) -> int:
    lat = L.lattice if hasattr(L, "lattice") else L
    return lat.meet_all(int(e) for e in elements)


class DensityError(RuntimeError):
    pass


def join_decompose(L, x: int, irreducibles: Sequence[int] | None = None) -> list[int]:
    """``J(x)``: the join irreducibles below ``x``; their join is checked to be ``x``."""
    ji = join_irreducibles(L) if irreducibles is None else irreducibles
    parts = [j for j in ji if L.leq[j, x]]
    if _join_all(L, parts) != x:
        raise DensityError(f"join irreducibles are not join dense at {L.names[x]}")
    return parts


def star(K: FiniteKleeneAlgebra, j: int, irreducibles: Sequence[int] | None = None) -> int:
    """``j* = meet{x : x not<= ~j}``; both input and result must be join irreducible."""
    ji = join_irreducibles(K) if irreducibles is None else irreducibles
    if j not in ji:
        raise PreconditionError(f"{K.names[j]} is not join irreducible")
    nj = K.neg[j]
    result = _meet_all(K, np.flatnonzero(~np.asarray(K.leq)[:, nj]))
    if result not in ji:
        raise RuntimeError(f"{K.names[j]}* = {K.names[result]} is not join irreducible")
    return result


# --------------------------------------------------------------------------
# order isomorphisms between join-irreducible posets and their extension

@dataclass
class OrderIso:
    source: FiniteKleeneAlgebra
    target: FiniteKleeneAlgebra
    mapping: dict

    def __call__(self, j: int) -> int:
        return self.mapping[j]

    def violation(self):
        """First reason this is not an order isomorphism of join irreducibles, or None."""
        src = join_irreducibles(self.source)
        tgt = join_irreducibles(self.target)
        if sorted(self.mapping) != src:
            return ("domain", sorted(self.mapping), src)
        if sorted(self.mapping.values()) != tgt:
            return ("not onto join irreducibles", sorted(self.mapping.values()), tgt)
        for a in src:
            for b in src:
                if bool(self.source.leq[a, b]) != bool(self.target.leq[self.mapping[a], self.mapping[b]]):
                    return ("order", a, b)
        return None

    def star_violation(self):
        """First ``j`` with ``phi(j*) != phi(j)*``, or None."""
        src = join_irreducibles(self.source)
        tgt = join_irreducibles(self.target)
        for j in src:
            if self.mapping[star(self.source, j, src)] != star(self.target, self.mapping[j], tgt):
                return j
        return None

    def inverse(self) -> "OrderIso":
        return OrderIso(self.target, self.source, {v: k for k, v in self.mapping.items()})


def canonical_iso_3I(n: int) -> OrderIso:
    """``f_i^a -> (0, g_i)`` and ``f_i^1 -> (g_i, g_i)`` from ``J(3^n)`` to ``J((2^n)^[2])``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    src = power_algebra(three(), n)
    B = powerset_algebra(n)
    tgt = interval_algebra(B)
    zero = tuple([0] * n)
    mapping = {}
    for i in range(n):
        g_i = tuple(int(k == i) for k in range(n))
        f_a = tuple(1 if k == i else 0 for k in range(n))
        f_1 = tuple(2 if k == i else 0 for k in range(n))
        mapping[src.index(f_a)] = tgt.index((zero, g_i))
        mapping[src.index(f_1)] = tgt.index((g_i, g_i))
    return OrderIso(src, tgt, mapping)


def extend_iso(phi: OrderIso, L: FiniteKleeneAlgebra | None = None,
               M: FiniteKleeneAlgebra | None = None) -> np.ndarray:
    """Extend ``phi`` to the whole carrier by ``x -> join(phi(J(x)))``."""
    L = phi.source if L is None else L
    M = phi.target if M is None else M
    bad = OrderIso(L, M, phi.mapping).violation()
    if bad is not None:
        raise PreconditionError(f"not an order isomorphism of join irreducibles: {bad}")
    ji = sorted(phi.mapping)
    leq = np.asarray(L.leq)
    out = np.empty(L.size, dtype=np.int64)
    for x in range(L.size):
        out[x] = _join_all(M, (phi.mapping[j] for j in ji if leq[j, x]))
    return out


# --------------------------------------------------------------------------
# homomorphisms

@dataclass
class HomCheck:
    ok: bool
    clause: str | None = None
    args: tuple = ()

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "pass" if self.ok else f"fail: {self.clause} at {self.args}"


def verify_homomorphism(f, L, M, negation: bool = True) -> HomCheck:
    """Check bounds, join, meet and (optionally) negation preservation of ``f``."""
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (L.size,):
        raise PreconditionError("map must be total on the source carrier")
    if f[L.bottom] != M.bottom:
        return HomCheck(False, "bottom", (L.bottom,))
    if f[L.top] != M.top:
        return HomCheck(False, "top", (L.top,))
    mj, mm = np.asarray(M.join), np.asarray(M.meet)
    w = _first(f[np.asarray(L.join)] != mj[f[:, None], f[None, :]])
    if w is not None:
        return HomCheck(False, "join", w)
    w = _first(f[np.asarray(L.meet)] != mm[f[:, None], f[None, :]])
    if w is not None:
        return HomCheck(False, "meet", w)
    if negation:
        w = _first(f[L.neg] != M.neg[f])
        if w is not None:
            return HomCheck(False, "negation", w)
    return HomCheck(True)


def is_injective(f) -> bool:
    f = np.asarray(f)
    return len(np.unique(f)) == len(f)


def kleene_homomorphisms(K, M, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """All Kleene homomorphisms ``K -> M`` by backtracking.

    Images of 0 and 1 are fixed first; each assignment propagates through
    negation and through joins/meets with every already-assigned element.
    """
    n = K.size
    kj, km, kn = np.asarray(K.join), np.asarray(K.meet), K.neg
    mj, mm, mn = np.asarray(M.join), np.asarray(M.meet), M.neg
    img = [-1] * n
    assigned: list[int] = []

    def assign(x: int, v: int, trail: list[int]) -> bool:
        work = [(x, v)]
        while work:
            x, v = work.pop()
            cur = img[x]
            if cur == v:
                continue
            if cur != -1:
                return False
            img[x] = v
            trail.append(x)
            work.append((int(kn[x]), int(mn[v])))
            for y in assigned:
                w = img[y]
                work.append((int(kj[x, y]), int(mj[v, w])))
                work.append((int(km[x, y]), int(mm[v, w])))
            assigned.append(x)
        return True

    def undo(trail: list[int]) -> None:
        for x in reversed(trail):
            img[x] = -1
            assigned.remove(x)

    count = 0

    def search() -> Iterator[tuple[int, ...]]:
        nonlocal count
        try:
            x = img.index(-1)
        except ValueError:
            count += 1
            yield tuple(img)
            return
        for v in range(M.size):
            trail: list[int] = []
            if assign(x, v, trail):
                yield from search()
                if limit is not None and count >= limit:
                    undo(trail)
                    return
            undo(trail)

    trail: list[int] = []
    if assign(K.bottom, M.bottom, trail) and assign(K.top, M.top, trail):
        yield from search()


def find_isomorphism(K, M) -> tuple[int, ...] | None:
    if K.size != M.size:
        return None
    for h in kleene_homomorphisms(K, M):
        if is_injective(h):
            return h
    return None


@dataclass
class IntervalEmbedding:
    """An injective Kleene homomorphism ``source -> boolean^[2]``."""

    source: FiniteKleeneAlgebra
    boolean: FiniteBooleanAlgebra
    target: FiniteKleeneAlgebra
    map: np.ndarray
    homomorphisms: list

    def image_pair(self, x: int) -> tuple[int, int]:
        """``(lo, hi)`` element indices in :attr:`boolean`."""
        return self.target.interval_pairs[int(self.map[x])]


def embed_into_interval(K: FiniteKleeneAlgebra, max_size: int = 10) -> IntervalEmbedding:
    """Embed ``K`` into ``(2^n)^[2]`` through the product of all homomorphisms into 3.

    Raises :class:`SizeError` above ``max_size`` and :class:`RuntimeError` if
    the product map is not injective or not a homomorphism.
    """
    if K.size > max_size:
        raise SizeError(f"algebra has {K.size} elements, bound is {max_size}")
    report = check_kleene_axioms(K)
    if not report.ok:
        raise PreconditionError(f"not a Kleene algebra: {report.failures()}")
    T = three()
    homs = list(kleene_homomorphisms(K, T))
    n = len(homs)
    B = powerset_algebra(n)
    target = interval_algebra(B)
    if n == 0:
        # only the one-element algebra has no homomorphism onto 3
        f = np.zeros(K.size, dtype=np.int64)
    else:
        phi = canonical_iso_3I(n)
        big = extend_iso(phi)
        src = phi.source
        product = np.array([src.index(tuple(h[x] for h in homs)) for x in range(K.size)])
        f = big[product]
        # canonical_iso_3I builds its own copy of the target; align indices with ours
        f = np.array([target.index(phi.target.labels[int(y)]) for y in f])
    if not is_injective(f):
        raise RuntimeError("product of homomorphisms into 3 is not injective")
    check = verify_homomorphism(f, K, target)
    if not check.ok:
        raise RuntimeError(f"embedding is not a homomorphism: {check}")
    return IntervalEmbedding(K, B, target, f, homs)


def map_from_function(L, M, fn: Callable[[Hashable], Hashable]) -> np.ndarray:
    """Index-level table of a label-level map."""
    return np.array([M.index(fn(lab)) for lab in L.labels], dtype=np.int64)
