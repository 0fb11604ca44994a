import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sftgroups import perm as P
from sftgroups.permgroup import (
    BlockError,
    PermutationGroup,
    ResourceError,
    abelian_invariants,
    all_subgroups,
    brute_force_isomorphic,
    conjugacy_class_sizes,
    fingerprint,
)
from sftgroups.tree import TreeAutomorphism, vertex_swaps


def G(cycles, degree, **kw):
    return PermutationGroup([P.parse_cycles(c, degree) for c in cycles], degree, **kw)


def closure(gens, degree):
    """Oracle: all products of generators, by plain set iteration."""
    e = P.identity(degree)
    out = {e}
    frontier = [e]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = P.mul(x, s)
                if y not in out:
                    out.add(y)
                    new.append(y)
        frontier = new
    return out


def derived_oracle(elements, degree):
    comms = {P.comm(a, b) for a in elements for b in elements}
    return closure(list(comms), degree)


SYM4 = ["(1,2,3,4)", "(1,2)"]
SMALL = [
    (["(1,2,3)", "(1,2)"], 3),
    (SYM4, 4),
    (["(1,2,3,4)", "(1,3)"], 4),
    (["(1,2,3)(4,5,6)", "(1,4)"], 6),
    (["(1,2,3,4,5)", "(1,2,3)"], 5),
    (["(1,5,3,7)(2,8,4,6)", "(1,2,3,4)(5,6,7,8)"], 8),
]


# -- permutations -----------------------------------------------------

def test_cycle_notation():
    p = P.parse_cycles("(1,9)(2,10)", 16)
    assert P.format_cycles(p) == "(1,9)(2,10)"
    assert P.format_cycles(P.identity(5)) == "()"
    assert P.parse_cycles("()", 3) == (0, 1, 2)
    # rightmost cycle acts first
    assert P.parse_cycles("(1,2)(2,3)", 3) == P.mul(P.parse_cycles("(1,2)", 3), P.parse_cycles("(2,3)", 3))


def test_cycle_notation_errors():
    with pytest.raises(P.CycleSyntaxError) as info:
        P.parse_cycles("(1,2)(3,", 4)
    assert info.value.column == 6
    with pytest.raises(ValueError):
        P.parse_cycles("(1,1)", 3)
    with pytest.raises(ValueError):
        P.parse_cycles("(1,9)", 4)


@given(st.permutations(range(9)))
def test_cycle_round_trip(p):
    p = tuple(p)
    assert P.parse_cycles(P.format_cycles(p), 9) == p
    assert P.mul(p, P.inv(p)) == P.identity(9)
    assert P.power(p, P.order(p)) == P.identity(9)


# -- orders and membership against enumeration --------------------------

@pytest.mark.parametrize("cycles,degree", SMALL)
def test_order_and_membership(cycles, degree):
    grp = G(cycles, degree)
    elems = closure(grp.generators, degree)
    assert grp.order() == len(elems)
    assert set(grp.elements()) == elems
    for p in itertools.islice(itertools.permutations(range(degree)), 2000):
        assert grp.contains(p) == (p in elems)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.permutations([(0, 1), (1, 0)]), min_size=7, max_size=7), min_size=1, max_size=3))
def test_backends_agree_on_tree_groups(portraits):
    gens = [TreeAutomorphism(2, 3, [p[0] for p in por]).to_leaf_permutation() for por in portraits]
    layer = PermutationGroup(gens, 8, backend="layer")
    schreier = PermutationGroup(gens, 8, backend="schreier")
    elems = closure(gens, 8)
    assert layer.order() == schreier.order() == len(elems)
    for p in elems:
        assert layer.contains(p) and schreier.contains(p)


def test_layer_backend_random_depth6(rng):
    gens = [TreeAutomorphism.random(2, 6, rng).to_leaf_permutation() for _ in range(3)]
    a = PermutationGroup(gens, 64, backend="layer")
    b = PermutationGroup(gens, 64, backend="schreier")
    assert a.order() == b.order()
    assert a.derived_subgroup().order() == b.derived_subgroup().order()


def test_prescribed_base():
    from sftgroups.permgroup import StabChain

    ch = StabChain(4, base=[3, 2])
    for g in G(SYM4, 4).generators:
        ch.add(g)
    assert ch.base[:2] == [3, 2]
    assert ch.order() == 24


def test_big_order_is_exact():
    gens = [g.to_leaf_permutation() for g in vertex_swaps(2, 7)]
    assert PermutationGroup(gens, 128).order() == 2**127


def test_elements_bound():
    with pytest.raises(ResourceError):
        G(SYM4, 4).elements(limit=10)


# -- subgroup constructions ------------------------------------------

@pytest.mark.parametrize("cycles,degree", SMALL)
def test_derived_subgroup(cycles, degree):
    grp = G(cycles, degree)
    elems = closure(grp.generators, degree)
    assert set(grp.derived_subgroup().elements()) == derived_oracle(elems, degree)


def test_derived_subgroup_examples():
    assert G(SYM4, 4).derived_subgroup().order() == 12
    assert G(["(1,2,3,4,5)", "(1,2,3)"], 5).is_perfect()
    D = PermutationGroup([g.to_leaf_permutation() for g in vertex_swaps(2, 2)], 4).derived_subgroup()
    assert D.order() == 2


def test_normal_closure():
    S4 = G(SYM4, 4)
    t = P.parse_cycles("(1,2)(3,4)", 4)
    N = S4.normal_closure([t])
    assert N.order() == 4
    conj = {P.conj(g, t) for g in S4.elements()}
    assert set(N.elements()) == closure(list(conj), 4)
    with pytest.raises(ValueError):
        G(["(1,2,3)"], 4).normal_closure([P.parse_cycles("(1,2)", 4)])


def test_nilpotency_and_derived_length():
    assert G(["(1,2,3,4)", "(1,3)"], 4).is_nilpotent()
    assert not G(SYM4, 4).is_nilpotent()
    assert G(SYM4, 4).derived_length() == 3
    assert G(["(1,2,3,4,5)", "(1,2,3)"], 5).derived_length() is None


@pytest.mark.parametrize("cycles,blocks", [
    (["(1,2,3,4)", "(1,3)"], [[0, 2], [1, 3]]),
    (["(1,3)(2,4)", "(1,2)"], [[0, 1], [2, 3]]),
    (SYM4, [[0, 1, 2, 3]]),
    (["(1,2)(3,4)(5,6)", "(1,3,5)(2,4,6)", "(1,2)"], [[0, 1], [2, 3], [4, 5]]),
])
def test_induced_action_kernel(cycles, blocks):
    grp = G(cycles, max(max(b) for b in blocks) + 1)
    oracle = {g for g in grp.elements() if all({g[x] for x in b} == set(b) for b in blocks)}
    assert set(grp.induced_action_kernel(blocks).elements()) == oracle


def test_induced_action_kernel_rejects_split_blocks():
    with pytest.raises(BlockError):
        G(["(1,2,3,4)"], 4).induced_action_kernel([[0, 1], [2, 3]])
    with pytest.raises(ValueError):
        G(["(1,2,3,4)"], 4).induced_action_kernel([[0, 1], [1, 2, 3]])


def test_level_stabilizer_matches_kernel(rng):
    gens = [TreeAutomorphism.random(2, 4, rng).to_leaf_permutation() for _ in range(3)]
    grp = PermutationGroup(gens, 16)
    for j in range(5):
        size = 16 >> j
        blocks = [list(range(s, s + size)) for s in range(0, 16, size)]
        generic = PermutationGroup(gens, 16, backend="schreier").induced_action_kernel(blocks)
        assert grp.level_stabilizer(j) == PermutationGroup(generic.generators, 16)


# -- subgroup enumeration ---------------------------------------------

@pytest.mark.parametrize("cycles,degree,count", [
    (["(1,2,3)", "(1,2)"], 3, 6),
    (SYM4, 4, 30),
    (["(1,2,3,4)", "(1,3)"], 4, 10),
    (["(1,5,3,7)(2,8,4,6)", "(1,2,3,4)(5,6,7,8)"], 8, 6),
    (["(1,2)", "(3,4)", "(5,6)"], 6, 16),
])
def test_subgroup_counts(cycles, degree, count):
    subs = all_subgroups(G(cycles, degree))
    assert len(subs) == count
    keys = {frozenset(H.elements()) for H in subs}
    assert len(keys) == count
    for H in subs:
        elems = set(H.elements())
        assert closure(H.generators, degree) == elems


def test_subgroups_of_aut2():
    aut2 = PermutationGroup([g.to_leaf_permutation() for g in vertex_swaps(2, 2)], 4)
    assert len(all_subgroups(aut2)) == 10


# -- fingerprints ----------------------------------------------------

def test_fingerprint_separates_small_groups():
    assert fingerprint(G(["(1,2)", "(3,4)"], 4)) != fingerprint(G(["(1,2,3,4)"], 4))
    d8 = fingerprint(G(["(1,2,3,4)", "(1,3)"], 4))
    q8 = fingerprint(G(["(1,5,3,7)(2,8,4,6)", "(1,2,3,4)(5,6,7,8)"], 8))
    assert d8 != q8
    assert d8.abelian_invariants == q8.abelian_invariants == (2, 2)


def test_fingerprint_fields():
    fp = fingerprint(G(SYM4, 4))
    assert fp.order == 24
    assert fp.abelian_invariants == (2,)
    assert fp.exponent == 12
    assert fp.derived_length == 3
    assert dict(fp.element_orders) == {1: 1, 2: 9, 3: 8, 4: 6}
    assert sorted(conjugacy_class_sizes(G(SYM4, 4))) == [1, 3, 6, 6, 8]
    assert fp.to_json().startswith("[24,[2],12,3,")


def test_abelian_invariants():
    assert abelian_invariants(G(["(1,2,3,4)", "(5,6)"], 6)) == (2, 4)
    assert abelian_invariants(G(["(1,2,3,4,5,6,7,8)", "(9,10,11)"], 11)) == (3, 8)
    assert abelian_invariants(G(["(1,2,3,4,5)", "(1,2,3)"], 5)) == ()


def test_brute_force_isomorphism():
    C4xC2 = G(["(1,2,3,4)", "(5,6)"], 6)
    other = G(["(1,3,2,4)(5,6)", "(5,6)"], 6)
    assert brute_force_isomorphic(C4xC2, other)
    assert not brute_force_isomorphic(C4xC2, G(["(1,2)", "(3,4)", "(5,6)"], 6))
    assert brute_force_isomorphic(G(["(1,2,3)", "(1,2)"], 3), G(["(1,2)(3,4)(5,6)", "(1,3,5)(2,6,4)"], 6))


def test_fingerprint_soundness_on_aut3_subgroups():
    aut3 = PermutationGroup([g.to_leaf_permutation() for g in vertex_swaps(2, 3)], 8)
    reps = {}
    for H in all_subgroups(aut3):
        if H.order() <= 16:
            reps.setdefault(fingerprint(H), H)
    by_order = Counter(fp.order for fp in reps)
    assert by_order[8] >= 3
    for (f1, h1), (f2, h2) in itertools.combinations(reps.items(), 2):
        if f1.order == f2.order:
            assert not brute_force_isomorphic(h1, h2)
