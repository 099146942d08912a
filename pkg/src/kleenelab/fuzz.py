"""Random consequents and a cross-semantics agreement harness.

The 3-valued decision procedure is compared against four independent
semantics:

* every algebra of the fleet: a consequent accepted by ``decide`` holds in
  each algebra, and on non-Boolean algebras (which all map onto 3) validity
  coincides with ``decide`` exactly;
* validity over the whole fleet, which must coincide with ``decide``;
* rough-set algebras of every approximation space with at most four points,
  with the same split between Boolean and non-Boolean members;
* Kleene frames with at most four worlds, in the sound direction only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteKleeneAlgebra
from .catalog import algebra_fleet
from .perp import frame_valid, kleene_frames
from .roughsets import ApproximationSpace, rough_set_algebra
from .semantics import classical_elements, decide, entails_algebra
from .syntax import And, Bot, Consequent, Formula, Neg, Or, Top, Var

VARIABLES = ("p", "q", "r")


def random_formula(rng: random.Random, depth: int, names=VARIABLES) -> Formula:
    """A formula of depth at most ``depth``; constants are rare leaves."""
    if depth == 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.05:
            return Top()
        if roll < 0.10:
            return Bot()
        return Var(rng.choice(names))
    op = rng.choice((Neg, And, Or, And, Or))
    if op is Neg:
        return Neg(random_formula(rng, depth - 1, names))
    return op(random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names))


def random_consequent(rng: random.Random, depth: int = 5, max_vars: int = 3) -> Consequent:
    names = VARIABLES[:rng.randint(1, max_vars)]
    return Consequent(random_formula(rng, depth, names), random_formula(rng, depth, names))


def consequent_corpus(n: int, seed: int = 0, depth: int = 5, max_vars: int = 3) -> list[Consequent]:
    rng = random.Random(seed)
    return [random_consequent(rng, depth, max_vars) for _ in range(n)]


def is_boolean(K: FiniteKleeneAlgebra) -> bool:
    return bool(classical_elements(K).all())


def partitions(items: list[str]):
    """Every set partition of ``items``, blocks in order of first element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def small_spaces(max_points: int = 4) -> list[ApproximationSpace]:
    """One space per integer partition of 1..max_points (block shapes up to renaming)."""
    out = {}
    for n in range(1, max_points + 1):
        names = [str(k) for k in range(1, n + 1)]
        for part in partitions(names):
            shape = tuple(sorted((len(b) for b in part), reverse=True))
            if shape not in out:
                blocks, k = [], 1
                for size in shape:
                    blocks.append([str(x) for x in range(k, k + size)])
                    k += size
                out[shape] = ApproximationSpace.from_blocks(blocks, names)
    return list(out.values())


def corrupt_negation(K: FiniteKleeneAlgebra) -> FiniteKleeneAlgebra:
    """Copy of ``K`` whose negation sends the bottom to itself."""
    neg = np.array(K.neg).copy()
    neg[K.bottom] = K.bottom
    return FiniteKleeneAlgebra(K.lattice, neg, name=f"{K.name}*mutant")


@dataclass
class Disagreement:
    index: int
    consequent: str
    semantics: str
    expected: str
    found: str

    def __str__(self):
        return (f"#{self.index} {self.consequent}: {self.semantics} gave {self.found}, "
                f"decide implies {self.expected}")


@dataclass
class FuzzReport:
    seed: int
    depth: int
    total: int
    agreed: int = 0
    valid: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.agreed == self.total

    def summary(self) -> str:
        return f"agreement: {self.agreed}/{self.total}"


class Harness:
    def __init__(self, algebras=None, spaces=None, frames=None):
        self.algebras = list(algebra_fleet() if algebras is None else algebras)
        self.spaces = list(small_spaces() if spaces is None else spaces)
        self.rough = [rough_set_algebra(s) for s in self.spaces]
        for S, R in zip(self.spaces, self.rough):
            R.name = "RS" + "|".join(",".join(b) for b in S.blocks)
        self.frames = list(kleene_frames(4) if frames is None else frames)

    def check(self, c: Consequent, index: int = 0) -> list[Disagreement]:
        verdict = decide(c).valid
        text = str(c)
        expected = "VALID" if verdict else "INVALID"
        out = []
        for family, members in (("fleet", self.algebras), ("rough", self.rough)):
            any_invalid = False
            for K in members:
                v = entails_algebra(K, c).valid
                any_invalid |= not v
                if verdict and not v:
                    out.append(Disagreement(index, text, K.name, expected, "INVALID"))
                elif not verdict and v and not is_boolean(K):
                    out.append(Disagreement(index, text, K.name, expected, "VALID"))
            if any_invalid == verdict:
                out.append(Disagreement(index, text, f"{family} (all members)", expected,
                                        "INVALID" if any_invalid else "VALID"))
        if verdict:
            for F in self.frames:
                if not frame_valid(F, c).valid:
                    out.append(Disagreement(index, text, f"frame {F.name}", expected, "INVALID"))
        return out

    def run(self, n: int, seed: int = 0, depth: int = 5, max_vars: int = 3) -> FuzzReport:
        report = FuzzReport(seed, depth, n)
        for i, c in enumerate(consequent_corpus(n, seed, depth, max_vars)):
            bad = self.check(c, i)
            report.valid += decide(c).valid
            if bad:
                report.disagreements.extend(bad)
            else:
                report.agreed += 1
        return report


def run_fuzz(n: int = 200, seed: int = 0, depth: int = 5, mutant: bool = False) -> FuzzReport:
    algebras = list(algebra_fleet())
    if mutant:
        algebras = [corrupt_negation(K) if K.size == 3 and K.name == "3^1" else K for K in algebras]
    return Harness(algebras=algebras).run(n, seed, depth)
