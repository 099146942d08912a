"""Compatibility frames: forcing with the hereditary condition, frame validity,
the three frame conditions and exhaustive enumeration of small frames.

Sets of worlds are bitmasks (bit ``i`` is world ``i``). ``xCy`` reads "x is
compatible with y"; the perp relation is its complement and is never stored.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import SizeError, StructureError, partial_order_violation
from .catalog import _poset_key
from .syntax import And, Bot, Consequent, Formula, Neg, Or, Top, Var

MAX_EVALUATIONS = 1_000_000


class FrameError(StructureError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


def _closure_violation(leq: np.ndarray, C: np.ndarray):
    """First ``(x', x, y', y)`` with ``x' <= x``, ``y' <= y``, ``xCy`` but not ``x'Cy'``."""
    below = [np.flatnonzero(leq[:, x]) for x in range(len(leq))]
    for x, y in zip(*np.nonzero(C)):
        for xp in below[x]:
            bad = below[y][~C[xp, below[y]]]
            if len(bad):
                return int(xp), int(x), int(bad[0]), int(y)
    return None


class CompatibilityFrame:
    def __init__(self, worlds, leq, C, name: str | None = None):
        self.worlds = tuple(str(w) for w in worlds)
        n = len(self.worlds)
        if len(set(self.worlds)) != n:
            raise FrameError("duplicate world names")
        self.leq = np.array(leq, dtype=bool)
        self.C = np.array(C, dtype=bool)
        if self.leq.shape != (n, n) or self.C.shape != (n, n):
            raise FrameError(f"relations must be {n}x{n}")
        bad = partial_order_violation(self.leq)
        if bad is not None:
            raise FrameError(f"order fails {bad[0]} at {[self.worlds[i] for i in bad[1:]]}", bad)
        bad = _closure_violation(self.leq, self.C)
        if bad is not None:
            xp, x, yp, y = (self.worlds[i] for i in bad)
            raise FrameError(
                f"compatibility is not downward closed: {xp} <= {x}, {yp} <= {y}, "
                f"{x} C {y} but not {xp} C {yp}", bad)
        self.leq.setflags(write=False)
        self.C.setflags(write=False)
        self.name = name
        self.size = n
        self.full = (1 << n) - 1
        self._compatible = [int(sum(1 << y for y in np.flatnonzero(self.C[x]))) for x in range(n)]
        self._up = [int(sum(1 << y for y in np.flatnonzero(self.leq[x]))) for x in range(n)]

    @classmethod
    def from_pairs(cls, worlds, leq_pairs, c_pairs, name=None) -> "CompatibilityFrame":
        """Build from named pairs; the order gets its reflexive closure."""
        worlds = list(worlds)
        index = {w: i for i, w in enumerate(worlds)}
        n = len(worlds)
        leq = np.eye(n, dtype=bool)
        C = np.zeros((n, n), dtype=bool)
        for rel, pairs in ((leq, leq_pairs), (C, c_pairs)):
            for a, b in pairs:
                try:
                    rel[index[a], index[b]] = True
                except KeyError as exc:
                    raise FrameError(f"unknown world {exc.args[0]!r}") from None
        return cls(worlds, leq, C, name)

    def __repr__(self):
        return f"CompatibilityFrame({self.name or '?'}, worlds={self.size})"

    def index(self, world) -> int:
        return self.worlds.index(str(world))

    def mask(self, worlds) -> int:
        return sum(1 << self.index(w) for w in worlds)

    def members(self, mask: int) -> list[str]:
        return [w for i, w in enumerate(self.worlds) if mask >> i & 1]

    def is_upset(self, mask: int) -> bool:
        return all(not mask >> x & 1 or self._up[x] & ~mask == 0 for x in range(self.size))

    def upsets(self) -> list[int]:
        """Up-sets ordered by size, then by mask."""
        return _upsets(self.size, tuple(self._up))

    def negate(self, ext):
        """Worlds whose compatible worlds all avoid ``ext``; accepts an int or an array of masks."""
        if isinstance(ext, np.ndarray):
            out = np.zeros_like(ext)
            for x, comp in enumerate(self._compatible):
                out |= np.where((ext & comp) == 0, 1 << x, 0)
            return out
        return sum(1 << x for x, comp in enumerate(self._compatible) if ext & comp == 0)

    def pairs(self, rel: np.ndarray, strict=False) -> list[tuple[str, str]]:
        return [(self.worlds[a], self.worlds[b]) for a, b in zip(*np.nonzero(rel)) if not strict or a != b]

    def signature(self) -> tuple:
        """Canonical form under renaming of worlds."""
        return canonical_form(self.leq, self.C)


@lru_cache(maxsize=None)
def _upsets(n: int, up: tuple) -> list[int]:
    out = [m for m in range(1 << n) if all(not m >> x & 1 or up[x] & ~m == 0 for x in range(n))]
    return sorted(out, key=lambda m: (bin(m).count("1"), m))


@dataclass(frozen=True)
class HereditaryEvaluation:
    frame: CompatibilityFrame
    ext: dict   # variable -> bitmask up-set

    def __post_init__(self):
        for p, m in self.ext.items():
            if not self.frame.is_upset(m):
                raise FrameError(f"extension of {p} is not an up-set: {self.frame.members(m)}")

    @classmethod
    def from_worlds(cls, frame, ext: dict) -> "HereditaryEvaluation":
        return cls(frame, {p: frame.mask(ws) for p, ws in ext.items()})

    def describe(self) -> dict[str, list[str]]:
        return {p: self.frame.members(m) for p, m in sorted(self.ext.items())}


def extension(F: CompatibilityFrame, e: HereditaryEvaluation, phi: Formula) -> int:
    """The set of worlds forcing ``phi``."""
    if isinstance(phi, Top):
        return F.full
    if isinstance(phi, Bot):
        return 0
    if isinstance(phi, Var):
        try:
            return e.ext[phi.name]
        except KeyError:
            raise KeyError(f"variable {phi.name!r} has no extension") from None
    if isinstance(phi, Neg):
        return F.negate(extension(F, e, phi.child))
    if isinstance(phi, And):
        return extension(F, e, phi.left) & extension(F, e, phi.right)
    if isinstance(phi, Or):
        return extension(F, e, phi.left) | extension(F, e, phi.right)
    raise TypeError(f"not a formula: {phi!r}")


def forces(F: CompatibilityFrame, e: HereditaryEvaluation, x, phi: Formula) -> bool:
    i = x if isinstance(x, (int, np.integer)) else F.index(x)
    return bool(extension(F, e, phi) >> i & 1)


def _extensions_all(F: CompatibilityFrame, phis, columns: dict) -> list[np.ndarray]:
    n = len(next(iter(columns.values()))) if columns else 1
    memo = {}

    def go(phi):
        if phi in memo:
            return memo[phi]
        if isinstance(phi, Top):
            out = np.full(n, F.full, dtype=np.int64)
        elif isinstance(phi, Bot):
            out = np.zeros(n, dtype=np.int64)
        elif isinstance(phi, Var):
            out = columns[phi.name]
        elif isinstance(phi, Neg):
            out = F.negate(go(phi.child))
        elif isinstance(phi, And):
            out = go(phi.left) & go(phi.right)
        else:
            out = go(phi.left) | go(phi.right)
        memo[phi] = out
        return out

    return [go(p) for p in phis]


@dataclass
class FrameVerdict:
    valid: bool
    evaluation: HereditaryEvaluation | None = None
    world: str | None = None

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "VALID"
        ext = ", ".join(f"{p}={{{','.join(ws)}}}" for p, ws in self.evaluation.describe().items())
        return f"INVALID at {self.world}" + (f" with {ext}" if ext else "")


def frame_valid(F: CompatibilityFrame, c: Consequent, max_evaluations: int = MAX_EVALUATIONS) -> FrameVerdict:
    """Every world forcing the left side forces the right side, in every model on ``F``."""
    names = c.variables
    ups = np.array(F.upsets(), dtype=np.int64)
    total = len(ups) ** len(names)
    if total > max_evaluations:
        raise SizeError(f"{total} evaluations exceed the bound {max_evaluations}")
    grid = np.indices((len(ups),) * len(names)).reshape(len(names), -1) if names else np.zeros((0, 1), int)
    columns = {p: ups[grid[k]] for k, p in enumerate(names)}
    lhs, rhs = _extensions_all(F, [c.lhs, c.rhs], columns)
    bad = lhs & ~rhs
    hits = np.flatnonzero(bad)
    if not len(hits):
        return FrameVerdict(True)
    row = int(hits[0])
    world = (int(bad[row]) & -int(bad[row])).bit_length() - 1
    e = HereditaryEvaluation(F, {p: int(columns[p][row]) for p in names})
    return FrameVerdict(False, e, F.worlds[world])


# --------------------------------------------------------------------------
# frame conditions; each witness function returns None when the condition holds

def dni_witness(F: CompatibilityFrame):
    """A pair ``x C y`` without ``y C x``."""
    bad = np.argwhere(F.C & ~F.C.T)
    return None if not len(bad) else tuple(F.worlds[i] for i in bad[0])


def dne_witness(F: CompatibilityFrame):
    """A world ``x`` with no ``y`` such that ``xCy`` and everything compatible with ``y`` is below ``x``."""
    for x in range(F.size):
        down = ~F.leq[:, x]
        if not any(F.C[x, y] and not (F.C[y] & down).any() for y in range(F.size)):
            return F.worlds[x]
    return None


def kleene_witness(F: CompatibilityFrame):
    """``(x, y)`` with ``x`` not self-compatible, ``xCy`` and ``y`` not below ``x``."""
    for x in range(F.size):
        if F.C[x, x]:
            continue
        for y in range(F.size):
            if F.C[x, y] and not F.leq[y, x]:
                return F.worlds[x], F.worlds[y]
    return None


def check_condition_dni(F: CompatibilityFrame) -> bool:
    return dni_witness(F) is None


def check_condition_dne(F: CompatibilityFrame) -> bool:
    return dne_witness(F) is None


def check_condition_kleene(F: CompatibilityFrame) -> bool:
    return kleene_witness(F) is None


def is_kleene_frame(F: CompatibilityFrame) -> bool:
    return check_condition_dni(F) and check_condition_dne(F) and check_condition_kleene(F)


CONDITIONS = {
    "dni": dni_witness,
    "dne": dne_witness,
    "kleene": kleene_witness,
}


# --------------------------------------------------------------------------
# enumeration

def canonical_form(leq: np.ndarray, C: np.ndarray) -> tuple:
    n = len(leq)
    best = None
    for perm in itertools.permutations(range(n)):
        p = list(perm)
        key = (tuple(leq[np.ix_(p, p)].ravel()), tuple(C[np.ix_(p, p)].ravel()))
        if best is None or key < best:
            best = key
    return (n, best)


def posets(n: int) -> list[np.ndarray]:
    """Partial orders on ``n`` points up to isomorphism, as reflexive ``leq`` matrices."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = {}
    for bits in range(1 << len(pairs)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                leq[i, j] = True
        if partial_order_violation(leq) is not None:
            continue
        below = [int(sum(1 << i for i in np.flatnonzero(leq[:, j]) if i != j)) for j in range(n)]
        seen.setdefault(_poset_key(n, below), leq)
    return list(seen.values())


def _automorphisms(leq: np.ndarray) -> list[tuple[int, ...]]:
    n = len(leq)
    return [p for p in itertools.permutations(range(n))
            if (leq[np.ix_(p, p)] == leq).all()]


def _compatibility_relations(leq: np.ndarray) -> np.ndarray:
    """Masks of every downward-closed relation on ``W x W`` (bit ``x*n+y`` for ``xCy``), one per orbit."""
    n = len(leq)
    bits = n * n
    masks = np.arange(1 << bits, dtype=np.int64)
    ok = np.ones(len(masks), dtype=bool)
    for x, y in itertools.product(range(n), repeat=2):
        below = 0
        for xp in np.flatnonzero(leq[:, x]):
            for yp in np.flatnonzero(leq[:, y]):
                below |= 1 << (int(xp) * n + int(yp))
        has = (masks >> (x * n + y)) & 1
        ok &= (has == 0) | ((masks & below) == below)
    masks = masks[ok]
    rep = masks.copy()
    for perm in _automorphisms(leq):
        moved = np.zeros_like(masks)
        for x, y in itertools.product(range(n), repeat=2):
            moved |= ((masks >> (x * n + y)) & 1) << (perm[x] * n + perm[y])
        rep = np.minimum(rep, moved)
    return masks[rep == masks]


def world_names(n: int) -> list[str]:
    return ["w"] if n == 1 else [f"w{i}" for i in range(n)]


@lru_cache(maxsize=None)
def enumerate_frames(n: int) -> tuple[CompatibilityFrame, ...]:
    """Every compatibility frame with exactly ``n`` worlds, up to isomorphism."""
    out = []
    names = world_names(n)
    for p, leq in enumerate(posets(n)):
        for mask in _compatibility_relations(leq):
            C = np.array([[mask >> (x * n + y) & 1 for y in range(n)] for x in range(n)], dtype=bool)
            out.append(CompatibilityFrame(names, leq, C, name=f"F{n}.{len(out)}"))
    return tuple(out)


def frames_up_to(k: int) -> list[CompatibilityFrame]:
    return [F for n in range(1, k + 1) for F in enumerate_frames(n)]


@lru_cache(maxsize=None)
def kleene_frames(k: int) -> tuple[CompatibilityFrame, ...]:
    return tuple(F for F in frames_up_to(k) if is_kleene_frame(F))


@dataclass
class Countermodel:
    frame: CompatibilityFrame
    evaluation: HereditaryEvaluation
    world: str


def countermodel_search(c: Consequent, max_worlds: int = 4) -> Countermodel | None:
    """First Kleene frame (smallest first) with a model refuting ``c``.

    A heuristic probe: finding nothing is not a proof of derivability.
    """
    for F in kleene_frames(max_worlds):
        v = frame_valid(F, c)
        if not v.valid:
            return Countermodel(F, v.evaluation, v.world)
    return None


def classify(F: CompatibilityFrame) -> dict:
    from .syntax import parse_consequent

    out = {name: fn(F) for name, fn in CONDITIONS.items()}
    report = {name: (w is None, w) for name, w in out.items()}
    report["kleene_frame"] = (all(w is None for w in out.values()), None)
    for label, text in SPECIAL_CONSEQUENTS.items():
        report[label] = (frame_valid(F, parse_consequent(text)).valid, None)
    return report


SPECIAL_CONSEQUENTS = {
    "validates_dni": "p |- ~~p",
    "validates_dne": "~~p |- p",
    "validates_kleene": "p & ~p |- q | ~q",
}
