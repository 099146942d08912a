"""Pawlak approximation spaces and the rough-set Kleene algebras.

Subsets of the universe are int bitmasks over universe positions. The
equivalence relation is stored as its partition into blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .algebra import (
    FiniteBooleanAlgebra,
    FiniteKleeneAlgebra,
    FiniteLattice,
    HomCheck,
    SizeError,
    interval_algebra,
    is_injective,
    verify_homomorphism,
)

PRIME = "'"
MAX_UNIVERSE = 20


class SpaceError(ValueError):
    pass


class RoughPair(NamedTuple):
    """``(lower, upper)`` definable sets as bitmasks, ``lower <= upper``."""

    lower: int
    upper: int


@dataclass(frozen=True)
class ApproximationSpace:
    universe: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(set(self.universe)) != len(self.universe):
            raise SpaceError("duplicate element names in universe")
        seen: list[str] = []
        for b in self.blocks:
            if not b:
                raise SpaceError("empty block")
            seen.extend(b)
        if len(seen) != len(set(seen)):
            raise SpaceError("blocks overlap")
        if set(seen) != set(self.universe):
            raise SpaceError("blocks do not cover the universe exactly")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable], universe: Sequence | None = None):
        blocks = tuple(tuple(str(x) for x in b) for b in blocks)
        if universe is None:
            universe = [x for b in blocks for x in b]
        return cls(tuple(str(x) for x in universe), blocks)

    @classmethod
    def from_relation(cls, universe: Sequence, pairs: Iterable[tuple]):
        """Close an equivalence relation given as pairs into its partition.

        The relation must already be an equivalence; anything else is rejected.
        """
        universe = [str(x) for x in universe]
        rel = {(str(a), str(b)) for a, b in pairs}
        for x in universe:
            if (x, x) not in rel:
                raise SpaceError(f"relation is not reflexive at {x}")
        for a, b in rel:
            if (b, a) not in rel:
                raise SpaceError(f"relation is not symmetric at ({a}, {b})")
            for c, d in rel:
                if b == c and (a, d) not in rel:
                    raise SpaceError(f"relation is not transitive at ({a}, {b}, {d})")
        blocks = []
        placed = set()
        for x in universe:
            if x in placed:
                continue
            block = tuple(y for y in universe if (x, y) in rel)
            placed.update(block)
            blocks.append(block)
        return cls(tuple(universe), tuple(blocks))

    @classmethod
    def discrete(cls, names: Sequence) -> "ApproximationSpace":
        return cls.from_blocks([[x] for x in names], names)

    # --- bitmask helpers

    @property
    def size(self) -> int:
        return len(self.universe)

    def position(self, name: str) -> int:
        return self.universe.index(name)

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for x in names:
            if x not in self.universe:
                raise SpaceError(f"{x!r} is not in the universe")
            m |= 1 << self.position(x)
        return m

    def members(self, mask: int) -> list[str]:
        return sorted(x for i, x in enumerate(self.universe) if mask >> i & 1)

    @property
    def block_masks(self) -> tuple[int, ...]:
        return tuple(self.mask(b) for b in self.blocks)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def render_set(self, mask: int) -> str:
        return "{" + ",".join(self.members(mask)) + "}"

    def render(self, pair: RoughPair) -> str:
        return f"({self.render_set(pair.lower)}, {self.render_set(pair.upper)})"

    def is_definable(self, mask: int) -> bool:
        return all((mask & b) in (0, b) for b in self.block_masks)


def approximations(space: ApproximationSpace, subset: int | Iterable[str]) -> RoughPair:
    """Lower approximation = union of blocks inside the set; upper = union of blocks meeting it."""
    a = subset if isinstance(subset, int) else space.mask(subset)
    if a & ~space.full:
        raise SpaceError("subset is not contained in the universe")
    lower = upper = 0
    for b in space.block_masks:
        if b & a == b:
            lower |= b
        if b & a:
            upper |= b
    return RoughPair(lower, upper)


def definable_sets(space: ApproximationSpace) -> list[int]:
    """All unions of blocks, ascending by (size, bitmask)."""
    blocks = space.block_masks
    out = []
    for choice in range(1 << len(blocks)):
        m = 0
        for k, b in enumerate(blocks):
            if choice >> k & 1:
                m |= b
        out.append(m)
    return sorted(out, key=lambda m: (bin(m).count("1"), m))


def rough_set_family(space: ApproximationSpace, max_universe: int = MAX_UNIVERSE) -> list[RoughPair]:
    """``RS``: the distinct ``(lower, upper)`` pairs over all subsets, sorted."""
    if space.size > max_universe:
        raise SizeError(f"universe has {space.size} elements, bound is {max_universe}")
    found = {approximations(space, a) for a in range(1 << space.size)}
    return sorted(found)


def generalized_pairs(space: ApproximationSpace) -> list[RoughPair]:
    """``R``: all pairs of definable sets ``D1 <= D2``."""
    ds = definable_sets(space)
    return sorted(RoughPair(a, b) for a in ds for b in ds if a & ~b == 0)


def definable_algebra(space: ApproximationSpace) -> FiniteBooleanAlgebra:
    """The Boolean algebra of definable sets; labels are universe bitmasks."""
    ds = definable_sets(space)
    index = {d: i for i, d in enumerate(ds)}
    arr = np.array(ds, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    join = np.vectorize(index.__getitem__)(arr[:, None] | arr[None, :]) if len(ds) > 1 else np.zeros((1, 1), int)
    meet = np.vectorize(index.__getitem__)(arr[:, None] & arr[None, :]) if len(ds) > 1 else np.zeros((1, 1), int)
    comp = [index[space.full & ~d] for d in ds]
    L = FiniteLattice(leq, np.asarray(join, dtype=np.int32), np.asarray(meet, dtype=np.int32),
                      index[0], index[space.full], labels=ds,
                      names=[space.render_set(d) for d in ds])
    atoms = [index[b] for b in space.block_masks]
    return FiniteBooleanAlgebra(L, comp, atoms=atoms, name="D")


def _relabel_as_pairs(K: FiniteKleeneAlgebra, space: ApproximationSpace) -> FiniteKleeneAlgebra:
    """Swap ``(lo_label, hi_label)`` labels for :class:`RoughPair` labels and set-based names."""
    labels = [RoughPair(*lab) for lab in K.labels]
    names = [space.render(p) for p in labels]
    L = FiniteLattice(K.leq, K.join, K.meet, K.bottom, K.top, labels, names)
    out = FiniteKleeneAlgebra(L, K.neg, name=K.name)
    out.interval_pairs = K.interval_pairs
    out.base = K.base
    out.space = space
    return out


def generalized_family(space: ApproximationSpace) -> FiniteKleeneAlgebra:
    """``R = D^[2]`` with componentwise joins/meets and ``~(D1, D2) = (D2^c, D1^c)``."""
    K = interval_algebra(definable_algebra(space))
    K = _relabel_as_pairs(K, space)
    K.name = "R"
    return K


def rough_set_algebra(space: ApproximationSpace, max_universe: int = MAX_UNIVERSE) -> FiniteKleeneAlgebra:
    """``RS`` as a subalgebra of ``R``.

    Raises if ``RS`` is not closed under the componentwise operations of
    ``R``; :func:`rs_closure_report` reports closure without raising.
    """
    R = generalized_family(space)
    rs = rough_set_family(space, max_universe)
    report = rs_closure_report(space, R, rs)
    if report is not None:
        raise SpaceError(f"RS is not closed under {report[0]} at {report[1:]}")
    keep = [R.index(p) for p in rs]
    pos = {old: new for new, old in enumerate(keep)}
    sub = np.array(keep)
    join = np.vectorize(pos.__getitem__)(np.asarray(R.join)[sub[:, None], sub[None, :]])
    meet = np.vectorize(pos.__getitem__)(np.asarray(R.meet)[sub[:, None], sub[None, :]])
    leq = np.asarray(R.leq)[sub[:, None], sub[None, :]]
    neg = [pos[int(R.neg[k])] for k in keep]
    L = FiniteLattice(leq, np.asarray(join, dtype=np.int32), np.asarray(meet, dtype=np.int32),
                      pos[R.bottom], pos[R.top], labels=rs, names=[space.render(p) for p in rs])
    K = FiniteKleeneAlgebra(L, neg, name="RS")
    K.space = space
    return K


def rs_closure_report(space: ApproximationSpace, R: FiniteKleeneAlgebra | None = None,
                      rs: list[RoughPair] | None = None):
    """None if ``RS`` is closed under join, meet and negation of ``R``, else the first failure."""
    R = generalized_family(space) if R is None else R
    rs = rough_set_family(space) if rs is None else rs
    member = np.zeros(R.size, dtype=bool)
    idx = np.array([R.index(p) for p in rs])
    member[idx] = True
    for opname, table in (("join", R.join), ("meet", R.meet)):
        out = np.asarray(table)[idx[:, None], idx[None, :]]
        bad = np.argwhere(~member[out])
        if len(bad):
            i, j = bad[0]
            return (opname, rs[i], rs[j])
    bad = np.flatnonzero(~member[R.neg[idx]])
    if len(bad):
        return ("negation", rs[bad[0]])
    return None


# --------------------------------------------------------------------------
# saturation with dummy elements

@dataclass
class Saturation:
    source: ApproximationSpace
    target: ApproximationSpace
    singles: tuple[str, ...]

    def dash(self, mask: int) -> int:
        """``D -> D'``: add the dummy twin of every singleton-block element of ``D``."""
        names = self.source.members(mask)
        names += [x + PRIME for x in names if x in self.singles]
        return self.target.mask(names)

    def __call__(self, pair: RoughPair) -> RoughPair:
        return RoughPair(self.dash(pair.lower), self.dash(pair.upper))


def saturate_space(space: ApproximationSpace) -> tuple[ApproximationSpace, Saturation]:
    """Give every singleton block a primed dummy twin so that ``RS' = R'``.

    The number of blocks is unchanged. Dummy names that collide with existing
    names are rejected.
    """
    singles = tuple(b[0] for b in space.blocks if len(b) == 1)
    dummies = [x + PRIME for x in singles]
    clash = set(dummies) & set(space.universe)
    if clash:
        raise SpaceError(f"dummy names collide with universe elements: {sorted(clash)}")
    universe = space.universe + tuple(dummies)
    blocks = tuple(b + (b[0] + PRIME,) if len(b) == 1 else b for b in space.blocks)
    target = ApproximationSpace(universe, blocks)
    return target, Saturation(space, target, singles)


def verify_kleene_iso_saturation(space: ApproximationSpace) -> HomCheck:
    """Check that the saturation map is a Kleene isomorphism ``R(S) -> RS(S')``."""
    target, phi = saturate_space(space)
    R = generalized_family(space)
    rs_t = rough_set_family(target)
    if rs_t != generalized_pairs(target):
        return HomCheck(False, "RS' != R'", ())
    RS = rough_set_algebra(target)
    f = np.array([RS.index(phi(p)) for p in R.labels])
    if not is_injective(f) or len(f) != RS.size:
        return HomCheck(False, "bijection", ())
    return verify_homomorphism(f, R, RS)


# --------------------------------------------------------------------------
# Boolean algebras as definable sets

@dataclass
class BooleanAsRough:
    boolean: FiniteBooleanAlgebra
    space: ApproximationSpace
    definable_map: np.ndarray          # index in B -> index in D(space)

    def pair_map(self, interval: FiniteKleeneAlgebra, R: FiniteKleeneAlgebra) -> np.ndarray:
        """Index map ``B^[2] -> R`` induced by :attr:`definable_map`."""
        D = definable_algebra(self.space)
        out = []
        for lo, hi in interval.interval_pairs:
            out.append(R.index(RoughPair(D.labels[self.definable_map[lo]], D.labels[self.definable_map[hi]])))
        return np.array(out, dtype=np.int64)


def boolean_to_rough(B: FiniteBooleanAlgebra, atom_names: Sequence[str] | None = None) -> BooleanAsRough:
    """The space whose points are the atoms of ``B`` under the identity partition.

    ``b`` corresponds to the set of atoms below it; that map is checked to be
    a Boolean isomorphism onto the definable sets.
    """
    names = list(atom_names) if atom_names is not None else [f"u{k}" for k in range(len(B.atoms))]
    space = ApproximationSpace.discrete(names)
    D = definable_algebra(space)
    m = []
    for x in range(B.size):
        below = [names[k] for k, a in enumerate(B.atoms) if B.leq[a, x]]
        m.append(D.index(space.mask(below)))
    m = np.array(m, dtype=np.int64)
    if not is_injective(m) or len(m) != D.size:
        raise RuntimeError("atoms do not represent B faithfully")
    check = verify_homomorphism(m, B, D, negation=False)
    if not check.ok or not (m[B.complement] == D.complement[m]).all():
        raise RuntimeError(f"atom map is not a Boolean isomorphism: {check}")
    return BooleanAsRough(B, space, m)
