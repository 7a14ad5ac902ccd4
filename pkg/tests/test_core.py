import numpy as np
import pytest

import brute
from conftest import WREATH_PERMS, C, D, E
from pmaxclass.catalogue import construct, family
from pmaxclass.core import (
    ORDER_CAP,
    CapExceeded,
    Group,
    GroupError,
    GroupSpec,
    SpecError,
    build_group,
    commutator,
    commutator_subgroup,
    direct_product,
    element_order,
    is_normal,
    normal_closure,
    permutation_group,
    prime_power,
    quotient_group,
    subgroup_generated,
    table_group,
)
from pmaxclass.invariants import nilpotency_class


def el(G, label):
    return G.labels.index(label)


# ---------------------------------------------------------------- build_group


def test_single_involution_has_order_two():
    G = build_group(GroupSpec.from_json({"kind": "permutations", "degree": 2, "generators": [[1, 0]]}))
    assert G.order == 2
    assert G.prime_power == (2, 1)


def test_dihedral_family_order_eight():
    G = build_group(GroupSpec.from_json({"kind": "family", "name": "dihedral", "params": {"m": 3}}))
    assert G.order == 8
    assert G.prime_power == (2, 3)


def test_wreath_permutations_close_to_order_81():
    G = permutation_group(WREATH_PERMS, 9)
    assert G.order == len(brute.permutation_closure(WREATH_PERMS)) == 81
    assert G.prime_power == (3, 4)


def test_permutation_order_is_breadth_first():
    G = permutation_group([[1, 2, 3, 0]], 4)
    perms = G.info["permutations"]
    assert perms[0].tolist() == [0, 1, 2, 3]
    assert perms[1].tolist() == [1, 2, 3, 0]
    # element k is the k-th power of the generator
    for k in range(4):
        assert G.power(1, k) == k


def test_permutation_product_applies_left_factor_first():
    a, b = [1, 0, 2], [0, 2, 1]
    G = permutation_group([a, b], 3)
    P = G.info["permutations"]
    for x in range(G.order):
        for y in range(G.order):
            z = int(G.mul(x, y))
            assert P[z].tolist() == [int(P[y][P[x][i]]) for i in range(3)]


def test_non_bijective_generator_rejected():
    with pytest.raises(SpecError):
        GroupSpec.from_json({"kind": "permutations", "degree": 3, "generators": [[0, 0, 1]]})
    with pytest.raises(SpecError):
        permutation_group([[0, 0, 1]], 3)


@pytest.mark.parametrize("obj, where", [
    ([], "$"),
    ({"kind": "matrix"}, "$.kind"),
    ({"kind": "permutations", "degree": 0, "generators": []}, "$.degree"),
    ({"kind": "permutations", "degree": 2, "generators": [[0]]}, "$.generators[0]"),
    ({"kind": "table", "table": []}, "$.table"),
    ({"kind": "table", "table": [[0, 1], [1, 1]]}, "$.table[1]"),
    ({"kind": "table", "table": [[0, 1], [0, 1]]}, "$.table[*][0]"),
    ({"kind": "family", "name": 3}, "$.name"),
    ({"kind": "family", "name": "dihedral", "params": [4]}, "$.params"),
])
def test_spec_errors_name_the_offending_field(obj, where):
    with pytest.raises(SpecError, match=__import__("re").escape(where)):
        GroupSpec.from_json(obj)


def test_spec_json_roundtrip():
    for obj in [
        {"kind": "permutations", "degree": 3, "generators": [[1, 2, 0]]},
        {"kind": "table", "table": [[0, 1], [1, 0]]},
        {"kind": "family", "name": "dihedral", "params": {"m": 4}},
    ]:
        assert GroupSpec.from_json(obj).to_json() == obj


def test_cap_is_enforced():
    assert ORDER_CAP == 80_000
    with pytest.raises(CapExceeded):
        Group(ORDER_CAP + 1, rule=lambda a, b: a)
    with pytest.raises(GroupError):
        construct(family("cyclic", p=2, m=17))
    with pytest.raises(CapExceeded):
        direct_product(C(5, 6), C(5, 2))


def test_cap_admits_five_to_the_seven():
    G = construct(family("cyclic", p=5, m=7))
    assert G.order == 78_125 and G.table is None


def test_table_group_moves_identity_to_zero():
    # Z/3 written with the identity in position 2
    t = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = table_group(t)
    assert G.order == 3
    assert G.table[0].tolist() == [0, 1, 2]
    assert G.labels[0] == "2"
    # relabelled table is isomorphic to the input through the labels
    orig = [int(s) for s in G.labels]
    for i in range(3):
        for j in range(3):
            assert orig[int(G.mul(i, j))] == t[orig[i]][orig[j]]


def test_non_associative_latin_square_rejected():
    # a Latin square loop of order 5 with identity 0 that is not a group
    t = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupError, match="associative"):
        table_group(t)


def test_latin_square_without_identity_rejected():
    with pytest.raises(SpecError):
        table_group([[0, 2, 1], [2, 1, 0], [1, 0, 2]])  # x*y = -x-y mod 3


def test_prime_power_detection():
    assert prime_power(1) is None
    assert prime_power(12) is None
    assert prime_power(243) == (3, 5)
    assert prime_power(78_125) == (5, 7)
    S3 = permutation_group([[1, 2, 0], [1, 0, 2]], 3)
    assert S3.prime_power is None


@pytest.mark.parametrize("desc", [
    family("dihedral", m=5),
    family("semidihedral", m=5),
    family("heisenberg", p=5),
    family("wreath_cpcp", p=3),
    family("cyclotomic_maxclass", p=3, n=5),
])
def test_table_matches_rule(desc):
    G = construct(desc)
    assert G.table is not None and G._rule is not None
    ar = np.arange(G.order)
    assert np.array_equal(np.asarray(G._rule(ar[:, None], ar[None, :])), G.table)


def test_rule_group_above_table_limit():
    G = construct(family("wreath_cpcp", p=5))
    assert G.order == 15625 and G.table is None
    rng = np.random.default_rng(1)
    a, b, c = rng.integers(0, G.order, size=(3, 500))
    assert np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
    assert np.all(G.mul(a, G.inv[a]) == 0)
    assert G.generated(G.generators).is_whole


# ---------------------------------------------------------------- element arithmetic


def test_element_orders(named):
    D8 = named["D8"]
    assert element_order(D8, 0) == 1
    assert element_order(D8, el(D8, "r")) == 4
    E27 = E(3, 3)
    assert all(element_order(E27, x) == 3 for x in range(1, 27))
    for G in (named["Q16"], named["X27"], named["S4"]):
        T = brute.table(G)
        assert [element_order(G, x) for x in range(G.order)] == [brute.order(T, x) for x in range(G.order)]


def test_commutators(named):
    D8 = named["D8"]
    r, s = el(D8, "r"), el(D8, "s")
    assert commutator(D8, r, s) == el(D8, "r^2")
    assert commutator(D8, r, s) == brute.comm(brute.table(D8), r, s)
    for x in range(8):
        assert commutator(D8, x, x) == 0
    A = named["C4xC2"]
    assert all(commutator(A, x, y) == 0 for x in range(8) for y in range(8))


def test_subgroup_generated(named):
    D8 = named["D8"]
    assert subgroup_generated(D8, []).is_trivial
    assert subgroup_generated(D8, [el(D8, "r")]).size == 4
    assert subgroup_generated(D8, D8.generators).is_whole
    S4 = named["S4"]
    T = brute.table(S4)
    for seed in ([1], [1, 2], [3, 7], [5, 11, 13]):
        assert set(subgroup_generated(S4, seed).elements.tolist()) == brute.closure(T, seed)


def test_commutator_subgroup(named):
    D8 = named["D8"]
    W = D8.whole
    Dp = commutator_subgroup(D8, W, W)
    assert Dp.size == 2 and el(D8, "r^2") in Dp
    assert set(Dp.elements.tolist()) == brute.commutator_subgroup(brute.table(D8), range(8), range(8))
    A = named["C4xC2"]
    assert commutator_subgroup(A, A.whole, A.whole).is_trivial
    assert commutator_subgroup(D8, W, D8.trivial).is_trivial


def test_commutator_subgroup_of_subgroups_matches_brute(named):
    G = named["W3perm"]
    T = brute.table(G)
    X = G.generated([2, 5])
    Y = G.generated([7])
    expected = brute.commutator_subgroup(T, X.elements.tolist(), Y.elements.tolist())
    assert set(commutator_subgroup(G, X, Y).elements.tolist()) == expected
    assert commutator_subgroup(G, X, Y) == commutator_subgroup(G, Y, X)


def test_normal_closure(named):
    D8 = named["D8"]
    s = el(D8, "s")
    N = normal_closure(D8, [s])
    assert N.size == 4 and el(D8, "r^2") in N


# ---------------------------------------------------------------- quotients and products


def test_quotient_by_whole_and_trivial(named):
    G = named["Q16"]
    Q, pi = quotient_group(G, G.whole)
    assert Q.order == 1
    Q, pi = quotient_group(G, G.trivial)
    assert Q.order == 16
    assert np.array_equal(pi.map, np.arange(16))
    assert np.array_equal(Q.table, G.table)


def test_dihedral_16_mod_center(named):
    D16 = named["D16"]
    N = D16.generated([el(D16, "r^4")])
    Q, pi = quotient_group(D16, N)
    assert Q.order == 8 and not Q.is_abelian
    assert pi.is_homomorphism()
    assert pi.kernel() == N
    assert pi.image().is_whole
    # least element index represents each coset
    for q in range(Q.order):
        assert int(np.flatnonzero(pi.map == q).min()) == int(np.flatnonzero(pi.map == q)[0])
    reps = [int(np.flatnonzero(pi.map == q)[0]) for q in range(Q.order)]
    assert reps == sorted(reps)


def test_quotient_by_non_normal_raises(named):
    D8 = named["D8"]
    with pytest.raises(GroupError):
        quotient_group(D8, D8.generated([el(D8, "s")]))


def test_preimage_of_quotient_subgroup(named):
    G = named["W3"]
    Z = G.generated([x for x in range(G.order) if all(G.mul(x, g) == G.mul(g, x) for g in G.generators)])
    Q, pi = quotient_group(G, Z)
    assert pi.preimage(Q.trivial) == Z
    assert pi.preimage(Q.whole).is_whole


def test_direct_products(named):
    G = named["Q8"]
    one = C(2, 1).generated([]).as_group()
    P = direct_product(G, one)
    assert P.order == 8 and np.array_equal(P.table, G.table)
    V = direct_product(C(2, 1), C(2, 1))
    assert V.order == 4 and V.is_abelian and set(V.element_orders.tolist()) == {1, 2}
    HC = direct_product(named["Heis3"], C(3, 1))
    assert HC.order == 81
    assert nilpotency_class(HC) == 2 == brute.nilpotency_class(brute.table(HC))


def test_product_above_table_limit_uses_rule():
    P = direct_product(C(2, 7), C(2, 6))
    assert P.order == 8192 and P.table is None
    a = np.arange(0, 8192, 37)
    assert np.all(P.mul(a, P.inv[a]) == 0)


# ---------------------------------------------------------------- normality


def test_normality_examples(named):
    A = named["C4xC2"]
    for T in brute.all_subgroups(brute.table(A)):
        assert is_normal(A, A.generated(T))
    D8 = named["D8"]
    assert not is_normal(D8, D8.generated([el(D8, "s")]))
    assert is_normal(D8, D8.generated([el(D8, "r")]))


@pytest.mark.parametrize("key", ["D8", "Q16", "SD16", "S4", "Heis3"])
def test_normality_matches_brute(named, key):
    G = named[key]
    T = brute.table(G)
    for H in brute.all_subgroups(T):
        assert is_normal(G, G.generated(sorted(H))) == brute.is_normal(T, H)


def test_subgroup_as_group_keeps_embedding(named):
    G = named["D16"]
    H = G.generated([el(G, "r^2"), el(G, "s")])
    K = H.as_group()
    emb = K.info["embedding"]
    assert K.order == H.size
    assert np.array_equal(np.sort(emb), H.elements)
    for a in range(K.order):
        for b in range(K.order):
            assert emb[int(K.mul(a, b))] == G.mul(emb[a], emb[b])


def test_cyclic_helper_matches_definition():
    G = C(3, 3)
    assert G.is_abelian and int(G.element_orders.max()) == 27
    assert D(3).order == 8
