"""Valuations into finite Kleene algebras and the 3-valued consequence relations.

Witness policy: assignments are searched with variables sorted by name and
values by element index (f < u < t on the 3-chain). Assignments that use
only complemented ("classical") values are tried before the rest, so an
invalid consequent with a two-valued counterexample always reports one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteKleeneAlgebra, SizeError, chain_kleene
from .syntax import And, Bot, Consequent, Formula, Neg, Or, Top, Var, subformulas

VALUE_NAMES = ("f", "u", "t")
THREE = chain_kleene(3, VALUE_NAMES)
THREE.name = "3"
F, U, T = 0, 1, 2
MAX_ASSIGNMENTS = 2_000_000


class UnassignedVariable(KeyError):
    pass


@dataclass
class Valuation:
    target: FiniteKleeneAlgebra
    assignment: dict

    def __call__(self, phi: Formula) -> int:
        return evaluate(self, phi)


def evaluate(v: Valuation, phi: Formula) -> int:
    K = v.target
    if isinstance(phi, Top):
        return K.top
    if isinstance(phi, Bot):
        return K.bottom
    if isinstance(phi, Var):
        try:
            return int(v.assignment[phi.name])
        except KeyError:
            raise UnassignedVariable(f"variable {phi.name!r} is not assigned") from None
    if isinstance(phi, Neg):
        return int(K.neg[evaluate(v, phi.child)])
    if isinstance(phi, And):
        return int(K.meet[evaluate(v, phi.left), evaluate(v, phi.right)])
    if isinstance(phi, Or):
        return int(K.join[evaluate(v, phi.left), evaluate(v, phi.right)])
    raise TypeError(f"not a formula: {phi!r}")


def evaluate_all(K: FiniteKleeneAlgebra, phis: list[Formula], names: list[str],
                 columns: np.ndarray) -> list[np.ndarray]:
    """Evaluate formulas under every assignment at once.

    ``columns[:, k]`` holds the value of ``names[k]`` in each assignment.
    Shared subformulas are evaluated once.
    """
    n = columns.shape[0]
    join = np.asarray(K.join).ravel()
    meet = np.asarray(K.meet).ravel()
    size = K.size
    memo: dict = {}
    col_of = {name: k for k, name in enumerate(names)}

    def go(phi):
        hit = memo.get(phi)
        if hit is not None:
            return hit
        if isinstance(phi, Top):
            out = np.full(n, K.top, dtype=np.int32)
        elif isinstance(phi, Bot):
            out = np.full(n, K.bottom, dtype=np.int32)
        elif isinstance(phi, Var):
            out = columns[:, col_of[phi.name]]
        elif isinstance(phi, Neg):
            out = K.neg[go(phi.child)]
        elif isinstance(phi, And):
            out = meet[go(phi.left) * size + go(phi.right)]
        else:
            out = join[go(phi.left) * size + go(phi.right)]
        memo[phi] = out
        return out

    return [go(phi) for phi in phis]


def assignment_table(size: int, k: int) -> np.ndarray:
    """All ``size**k`` assignments in lexicographic order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int32)
    grids = np.indices((size,) * k, dtype=np.int32).reshape(k, -1).T
    return np.ascontiguousarray(grids)


def classical_elements(K: FiniteKleeneAlgebra) -> np.ndarray:
    """Elements with a lattice complement."""
    join, meet = np.asarray(K.join), np.asarray(K.meet)
    return ((join == K.top) & (meet == K.bottom)).any(axis=1)


@dataclass
class Verdict:
    valid: bool
    witness: dict | None = None
    names: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid

    def render_witness(self) -> str:
        if self.witness is None:
            return ""
        if not self.witness:
            return "(empty assignment)"
        return ", ".join(f"{k}={self.names.get(k, {}).get(v, v) if self.names else v}"
                         for k, v in self.witness.items())

    def __str__(self):
        if self.valid:
            return "VALID"
        return f"INVALID witness: {self.render_witness()}"


def _pick_witness(fail: np.ndarray, columns: np.ndarray, classical: np.ndarray) -> int:
    tier1 = fail & classical[columns].all(axis=1)
    hits = np.flatnonzero(tier1)
    if len(hits):
        return int(hits[0])
    return int(np.flatnonzero(fail)[0])


def entails_algebra(K: FiniteKleeneAlgebra, c: Consequent,
                    max_assignments: int = MAX_ASSIGNMENTS) -> Verdict:
    """``v(lhs) <= v(rhs)`` for every assignment of the consequent's variables into ``K``."""
    names = c.variables
    total = K.size ** len(names)
    if total > max_assignments:
        raise SizeError(f"{total} assignments exceed the bound {max_assignments}")
    columns = assignment_table(K.size, len(names))
    lhs, rhs = evaluate_all(K, [c.lhs, c.rhs], names, columns)
    fail = ~np.asarray(K.leq)[lhs, rhs]
    if not fail.any():
        return Verdict(True)
    row = _pick_witness(fail, columns, classical_elements(K))
    witness = {name: int(columns[row, k]) for k, name in enumerate(names)}
    labels = {name: dict(enumerate(K.names)) for name in names}
    return Verdict(False, witness, labels)


def _three_valued(c: Consequent):
    names = c.variables
    columns = assignment_table(3, len(names))
    lhs, rhs = evaluate_all(THREE, [c.lhs, c.rhs], names, columns)
    return names, columns, lhs, rhs


def _three_verdict(names, columns, fail) -> Verdict:
    if not fail.any():
        return Verdict(True)
    classical = np.array([True, False, True])
    row = _pick_witness(fail, columns, classical)
    witness = {name: VALUE_NAMES[columns[row, k]] for k, name in enumerate(names)}
    return Verdict(False, witness)


def entails_t(c: Consequent) -> Verdict:
    """Truth preservation: ``v(lhs) = t`` forces ``v(rhs) = t``."""
    names, columns, lhs, rhs = _three_valued(c)
    return _three_verdict(names, columns, (lhs == T) & (rhs != T))


def entails_f(c: Consequent) -> Verdict:
    """Falsity preservation: ``v(rhs) = f`` forces ``v(lhs) = f``."""
    names, columns, lhs, rhs = _three_valued(c)
    return _three_verdict(names, columns, (rhs == F) & (lhs != F))


def entails_tf(c: Consequent) -> Verdict:
    names, columns, lhs, rhs = _three_valued(c)
    fail = ((lhs == T) & (rhs != T)) | ((rhs == F) & (lhs != F))
    return _three_verdict(names, columns, fail)


def decide(c: Consequent) -> Verdict:
    """Derivability, decided through the 3-valued truth-and-falsity semantics."""
    return entails_tf(c)


@dataclass
class Decision:
    consequent: Consequent
    tf: Verdict
    t: Verdict
    f: Verdict

    @property
    def valid(self) -> bool:
        return self.tf.valid


def analyse(c: Consequent) -> Decision:
    return Decision(c, entails_tf(c), entails_t(c), entails_f(c))


# --------------------------------------------------------------------------
# pointwise transfer from pairs of sets to 3

def point_value(pair, x: int) -> int:
    """Read a ``(lower, upper)`` pair of bitmasks at point ``x`` as t, u or f."""
    lo, hi = pair
    if lo >> x & 1:
        return T
    if hi >> x & 1:
        return U
    return F


def _as_mask(label) -> int:
    if isinstance(label, tuple):
        return sum(int(b) << k for k, b in enumerate(label))
    return int(label)


def set_pair(K: FiniteKleeneAlgebra, element: int) -> tuple[int, int]:
    """The pair of point-sets behind an element of a powerset interval algebra.

    Accepts labels that are ``(lo, hi)`` with 0/1 coordinate tuples (from
    ``interval_algebra(powerset_algebra(n))``) or bitmasks (rough-set algebras).
    """
    lo, hi = K.labels[element]
    return _as_mask(lo), _as_mask(hi)


def pointwise_transfer(v: Valuation, x: int) -> Valuation:
    """The valuation into 3 that reads each variable's pair of sets at point ``x``."""
    return Valuation(THREE, {p: point_value(set_pair(v.target, e), x) for p, e in v.assignment.items()})


def transfer_violation(v: Valuation, x: int, phi: Formula):
    """First subformula where reading ``v`` at ``x`` disagrees with the transferred valuation."""
    vx = pointwise_transfer(v, x)
    for sub in subformulas(phi):
        if point_value(set_pair(v.target, evaluate(v, sub)), x) != evaluate(vx, sub):
            return sub
    return None


def all_valuations(K: FiniteKleeneAlgebra, names: list[str]):
    for values in itertools.product(range(K.size), repeat=len(names)):
        yield Valuation(K, dict(zip(names, values)))
