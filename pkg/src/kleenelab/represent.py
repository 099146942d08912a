"""Rough-set representation of a finite Kleene algebra.

``K -> B^[2]`` (product of homomorphisms into 3), ``B^[2] -> R`` (atoms of
``B`` as points of a discrete space) and ``R -> RS'`` (saturation with dummy
points). Every stage and the composite are verified before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteKleeneAlgebra, HomCheck, embed_into_interval, IntervalEmbedding, is_injective, verify_homomorphism
from .roughsets import (
    ApproximationSpace,
    RoughPair,
    Saturation,
    boolean_to_rough,
    generalized_family,
    rough_set_algebra,
    saturate_space,
)


@dataclass
class RoughRepresentation:
    algebra: FiniteKleeneAlgebra
    embedding: IntervalEmbedding
    base_space: ApproximationSpace
    space: ApproximationSpace            # saturated
    saturation: Saturation
    rough_sets: FiniteKleeneAlgebra      # RS of the saturated space
    map: np.ndarray                      # algebra index -> rough_sets index

    def pair(self, x: int) -> RoughPair:
        return self.rough_sets.labels[int(self.map[x])]

    def table(self) -> dict[str, RoughPair]:
        return {self.algebra.names[x]: self.pair(x) for x in range(self.algebra.size)}


def represent(K: FiniteKleeneAlgebra, max_size: int = 10) -> RoughRepresentation:
    emb = embed_into_interval(K, max_size=max_size)
    as_rough = boolean_to_rough(emb.boolean)
    R = generalized_family(as_rough.space)
    to_r = as_rough.pair_map(emb.target, R)
    check = verify_homomorphism(to_r, emb.target, R)
    if not check.ok or not is_injective(to_r):
        raise RuntimeError(f"B^[2] -> R is not an isomorphism: {check}")
    sat_space, phi = saturate_space(as_rough.space)
    RS = rough_set_algebra(sat_space)
    to_rs = np.array([RS.index(phi(p)) for p in R.labels], dtype=np.int64)
    composite = to_rs[to_r[emb.map]]
    check = verify_rough_embedding(K, RS, composite)
    if not check.ok:
        raise RuntimeError(f"composite map K -> RS' failed verification: {check}")
    return RoughRepresentation(K, emb, as_rough.space, sat_space, phi, RS, composite)


def verify_rough_embedding(K: FiniteKleeneAlgebra, RS: FiniteKleeneAlgebra, f) -> HomCheck:
    f = np.asarray(f, dtype=np.int64)
    if not is_injective(f):
        return HomCheck(False, "injectivity", ())
    return verify_homomorphism(f, K, RS)


def representation_tables(rep: RoughRepresentation) -> dict[str, dict]:
    """JSON-ready documents describing every stage of a representation."""
    from .formats import algebra_to_dict, space_to_dict

    K, emb, space = rep.algebra, rep.embedding, rep.space
    B = emb.boolean
    embedding = {K.names[x]: [B.names[lo], B.names[hi]] for x, (lo, hi) in
                 ((x, emb.image_pair(x)) for x in range(K.size))}
    rough = {name: {"lower": space.members(p.lower), "upper": space.members(p.upper)}
             for name, p in rep.table().items()}
    return {
        "algebra": algebra_to_dict(K),
        "boolean": algebra_to_dict(B),
        "embedding": embedding,
        "base_space": space_to_dict(rep.base_space),
        "space": space_to_dict(space),
        "map": rough,
    }


def verify_representation(K: FiniteKleeneAlgebra, space: ApproximationSpace, table: dict) -> HomCheck:
    """Re-check a stored element -> rough pair table against the rough sets of ``space``."""
    RS = rough_set_algebra(space)
    try:
        f = [RS.index(RoughPair(space.mask(table[name]["lower"]), space.mask(table[name]["upper"])))
             for name in K.names]
    except KeyError as exc:
        return HomCheck(False, f"missing or non-rough entry {exc.args[0]!r}", ())
    return verify_rough_embedding(K, RS, f)
