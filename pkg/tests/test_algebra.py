import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from kleenelab.algebra import (
    FiniteKleeneAlgebra,
    FiniteLattice,
    OrderIso,
    PreconditionError,
    SizeError,
    StructureError,
    canonical_iso_3I,
    chain_kleene,
    check_boolean_axioms,
    check_kleene_axioms,
    de_morgan_four,
    embed_into_interval,
    extend_iso,
    find_isomorphism,
    interval_algebra,
    is_injective,
    join_decompose,
    join_irreducibles,
    kleene_homomorphisms,
    power_algebra,
    powerset_algebra,
    star,
    three,
    two,
    verify_homomorphism,
)
from kleenelab.catalog import kleene_algebras


def names(K, idx):
    return {K.names[i] for i in idx}


def oracle_kleene(K):
    leq = np.asarray(K.leq)
    return oracles.is_kleene(K.size, lambda a, b: bool(leq[a, b]), [int(v) for v in K.neg])


# --------------------------------------------------------------------------
# lattices and axiom checks

def test_from_order_rejects_non_lattice():
    leq = np.eye(4, dtype=bool)
    leq[0, 2] = leq[0, 3] = leq[1, 2] = leq[1, 3] = True   # two minimal, two maximal
    with pytest.raises(StructureError):
        FiniteLattice.from_order(leq)


def test_from_order_rejects_cycle():
    leq = np.ones((2, 2), dtype=bool)
    with pytest.raises(StructureError, match="antisymmetry"):
        FiniteLattice.from_order(leq)


@pytest.mark.parametrize("K", [two(), three(), chain_kleene(5), power_algebra(three(), 2)],
                         ids=lambda K: K.name)
def test_small_algebras_are_kleene(K):
    assert check_kleene_axioms(K).ok


def test_de_morgan_four_fails_only_the_kleene_inequality():
    K = de_morgan_four()
    report = check_kleene_axioms(K)
    assert set(report.failures()) == {"kleene"}
    a, b = report.failures()["kleene"]
    assert (K.names[a], K.names[b]) == ("n", "b")
    # n & ~n = n is not below b | ~b = b
    assert not K.leq[K.meet[a, K.neg[a]], K.join[b, K.neg[b]]]


def test_broken_involution_is_reported():
    L = three().lattice
    K = FiniteKleeneAlgebra(L, [2, 0, 0])
    assert "involution" in check_kleene_axioms(K).failures()


@given(st.data())
def test_axiom_checker_matches_oracle_on_random_negations(data):
    lattices = [K.lattice for K in kleene_algebras(6)]
    L = data.draw(st.sampled_from(lattices))
    neg = data.draw(st.permutations(range(L.size)))
    K = FiniteKleeneAlgebra(L, list(neg))
    assert check_kleene_axioms(K).ok == oracle_kleene(K)


@pytest.mark.parametrize("n", range(5))
def test_powerset_algebras_are_boolean(n):
    B = powerset_algebra(n)
    assert B.size == 2 ** n
    assert len(B.atoms) == n
    assert check_boolean_axioms(B).ok


# --------------------------------------------------------------------------
# interval algebras

@pytest.mark.parametrize("n", range(5))
def test_interval_algebra_size_and_axioms(n):
    K = interval_algebra(powerset_algebra(n))
    assert K.size == 3 ** n
    assert check_kleene_axioms(K).ok


def test_two_interval_elements_and_fixed_point():
    K = interval_algebra(powerset_algebra(1))
    assert set(K.names) == {"(0,0)", "(0,1)", "(1,1)"}
    mid = K.names.index("(0,1)")
    assert K.neg[mid] == mid
    assert K.names[K.neg[K.names.index("(0,0)")]] == "(1,1)"


def test_interval_negation_formula():
    B = powerset_algebra(3)
    K = interval_algebra(B)
    for x, (lo, hi) in enumerate(K.interval_pairs):
        assert K.interval_pairs[K.neg[x]] == (B.complement[hi], B.complement[lo])


# --------------------------------------------------------------------------
# join irreducibles and star

def test_join_irreducibles_of_three():
    K = three()
    assert names(K, join_irreducibles(K)) == {"a", "1"}


def test_join_irreducibles_of_three_cubed():
    K = power_algebra(three(), 3)
    expected = {"(a,0,0)", "(1,0,0)", "(0,a,0)", "(0,1,0)", "(0,0,a)", "(0,0,1)"}
    assert names(K, join_irreducibles(K)) == expected


def test_join_set_follows_definition():
    K = power_algebra(three(), 3)
    x = K.index((0, 2, 1))
    parts = join_decompose(K, x)
    assert names(K, parts) == {"(0,a,0)", "(0,1,0)", "(0,0,a)"}
    assert K.lattice.join_all(parts) == x


def test_join_irreducibles_of_four_interval():
    K = interval_algebra(powerset_algebra(2))
    # atoms of 2^2 are (0,1) and (1,0)
    expected = {"((0,0),(0,1))", "((0,1),(0,1))", "((0,0),(1,0))", "((1,0),(1,0))"}
    assert names(K, join_irreducibles(K)) == expected


def test_interval_element_is_join_of_its_irreducibles():
    K = interval_algebra(powerset_algebra(2))
    a, one = (0, 1), (1, 1)
    parts = [K.index(p) for p in [((0, 1), (0, 1)), ((0, 0), (0, 1)), ((0, 0), (1, 0))]]
    assert K.lattice.join_all(parts) == K.index((a, one))


def test_join_irreducibles_by_lower_covers():
    for K in kleene_algebras(8):
        leq = np.asarray(K.leq)
        strict = leq & ~np.eye(K.size, dtype=bool)
        covers = strict & ~((strict.astype(int) @ strict.astype(int)) > 0)
        one_cover = [x for x in range(K.size) if covers[:, x].sum() == 1]
        assert join_irreducibles(K) == one_cover


def test_star_on_three_and_two_interval():
    K = three()
    assert K.names[star(K, K.names.index("a"))] == "1"
    assert K.names[star(K, K.names.index("1"))] == "a"
    M = interval_algebra(powerset_algebra(1))
    assert M.names[star(M, M.names.index("(0,1)"))] == "(1,1)"
    assert M.names[star(M, M.names.index("(1,1)"))] == "(0,1)"


def test_star_on_three_squared():
    K = power_algebra(three(), 2)
    expected = {"(0,a)": "(0,1)", "(0,1)": "(0,a)", "(a,0)": "(1,0)", "(1,0)": "(a,0)"}
    for j, s in expected.items():
        assert K.names[star(K, K.names.index(j))] == s


def test_star_on_four_interval():
    K = interval_algebra(powerset_algebra(2))
    for g in [(0, 1), (1, 0)]:
        low, high = K.index(((0, 0), g)), K.index((g, g))
        assert star(K, low) == high
        assert star(K, high) == low


def test_star_rejects_non_irreducible():
    K = power_algebra(three(), 2)
    with pytest.raises(PreconditionError):
        star(K, K.index((1, 1)))


def test_star_brute_force():
    for K in kleene_algebras(8):
        for j in join_irreducibles(K):
            outside = [x for x in range(K.size) if not K.leq[x, K.neg[j]]]
            meet = K.top
            for x in outside:
                meet = K.meet[meet, x]
            assert star(K, j) == meet


# --------------------------------------------------------------------------
# the isomorphism 3^n -> (2^n)^[2]

def test_canonical_iso_for_one_coordinate():
    phi = canonical_iso_3I(1)
    f = extend_iso(phi)
    src, tgt = phi.source, phi.target
    assert {src.names[x]: tgt.names[f[x]] for x in range(3)} == {"0": "(0,0)", "a": "(0,1)", "1": "(1,1)"}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_canonical_iso_is_order_iso_commuting_with_star(n):
    phi = canonical_iso_3I(n)
    assert phi.violation() is None
    assert phi.star_violation() is None
    f = extend_iso(phi)
    assert is_injective(f) and len(f) == 3 ** n
    assert verify_homomorphism(f, phi.source, phi.target).ok


def test_extend_iso_refuses_non_iso():
    phi = canonical_iso_3I(2)
    keys = sorted(phi.mapping)
    broken = dict(phi.mapping)
    broken[keys[0]], broken[keys[1]] = broken[keys[1]], broken[keys[0]]
    bad = OrderIso(phi.source, phi.target, broken)
    assert bad.violation() is not None
    with pytest.raises(PreconditionError):
        extend_iso(bad)


def test_three_squared_matches_four_interval():
    assert find_isomorphism(power_algebra(three(), 2), interval_algebra(powerset_algebra(2))) is not None


def test_find_isomorphism_rejects_non_isomorphic():
    K6 = [K for K in kleene_algebras(6) if K.size == 6]
    assert find_isomorphism(K6[0], K6[1]) is None


# --------------------------------------------------------------------------
# homomorphisms

def _brute_homs(K, M):
    out = []
    for f in itertools.product(range(M.size), repeat=K.size):
        if verify_homomorphism(np.array(f), K, M).ok:
            out.append(f)
    return out


@pytest.mark.parametrize("K", [K for K in kleene_algebras(6)], ids=lambda K: K.name)
def test_homomorphisms_into_three_match_brute_force(K):
    assert sorted(kleene_homomorphisms(K, three())) == _brute_homs(K, three())


def test_verify_homomorphism_names_the_broken_clause():
    K = three()
    assert verify_homomorphism(np.array([0, 0, 2]), K, K).clause == "negation"
    assert not verify_homomorphism(np.array([1, 1, 2]), K, K).ok


@given(st.data())
def test_corrupting_a_homomorphism_is_detected(data):
    K = data.draw(st.sampled_from(kleene_algebras(7)))
    emb = embed_into_interval(K)
    f = emb.map.copy()
    x = data.draw(st.integers(0, K.size - 1))
    y = data.draw(st.integers(0, emb.target.size - 1))
    f[x] = y
    still_hom = all(
        emb.target.join[f[a], f[b]] == f[K.join[a, b]] and emb.target.meet[f[a], f[b]] == f[K.meet[a, b]]
        for a in range(K.size) for b in range(K.size)
    ) and all(emb.target.neg[f[a]] == f[K.neg[a]] for a in range(K.size)) \
        and f[K.bottom] == emb.target.bottom and f[K.top] == emb.target.top
    assert verify_homomorphism(f, K, emb.target).ok == still_hom


# --------------------------------------------------------------------------
# embedding

def test_embedding_of_all_small_kleene_algebras():
    for K in kleene_algebras(8):
        emb = embed_into_interval(K)
        assert is_injective(emb.map)
        assert verify_homomorphism(emb.map, K, emb.target).ok
        assert emb.target.size == 3 ** len(emb.homomorphisms)


def test_embedding_of_two_is_diagonal():
    emb = embed_into_interval(two())
    pairs = [emb.image_pair(x) for x in range(2)]
    assert all(lo == hi for lo, hi in pairs)


def test_embedding_of_trivial_algebra():
    L = FiniteLattice([[True]], [[0]], [[0]], 0, 0)
    emb = embed_into_interval(FiniteKleeneAlgebra(L, [0]))
    assert emb.target.size == 1


def test_embedding_bound():
    with pytest.raises(SizeError):
        embed_into_interval(power_algebra(three(), 3), max_size=10)


def test_embedding_requires_kleene():
    with pytest.raises(PreconditionError):
        embed_into_interval(de_morgan_four())
