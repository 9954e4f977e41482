import itertools

import numpy as np
import pytest

from symracks.groups import (
    FiniteGroup,
    GroupAxiomError,
    InvalidParameter,
    NoIdentity,
    NoInverse,
    NotAssociative,
    UnsupportedFamily,
    center,
    conjugacy_classes,
    core_center_subgroup_A,
    cyclic_group,
    group_from_table,
    make_named_group,
    small_groups,
    subgroup_generated,
    swap_wreath_extension,
    two_torsion_center,
)


def brute_center(G):
    return tuple(z for z in range(G.order)
                 if all(G.m(z, g) == G.m(g, z) for g in range(G.order)))


def brute_classes(G):
    seen, out = set(), []
    for a in range(G.order):
        if a in seen:
            continue
        cls = sorted({G.m(G.m(h, a), int(G.inv[h])) for h in range(G.order)})
        seen.update(cls)
        out.append(tuple(cls))
    return sorted(out)


def test_trivial_group():
    G = group_from_table(1, [[0]])
    assert G.order == 1 and G.identity == 0


def test_z2_table():
    G = group_from_table(2, [[0, 1], [1, 0]])
    assert G.identity == 0
    assert list(G.inv) == [0, 1]


def test_idempotent_non_identity_rejected():
    # 1*1 = 1 with 0 the identity: 1 would have to be the identity too
    table = [[0, 1, 2], [1, 1, 0], [2, 0, 1]]
    with pytest.raises((NoInverse, NotAssociative, NoIdentity)):
        group_from_table(3, table)


def test_non_associative_names_triple():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative) as err:
        group_from_table(5, table)
    a, b, c = err.value.triple
    t = np.array(table)
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_bad_shape_rejected():
    with pytest.raises(GroupAxiomError):
        group_from_table(2, [[0, 1]])


def test_no_identity():
    with pytest.raises(NoIdentity):
        group_from_table(2, [[1, 1], [0, 0]])


def test_d4_center():
    G = make_named_group("D4")
    assert G.order == 8
    assert center(G) == brute_center(G) == (0, 2)


def test_sl25_center():
    G = make_named_group("SL(2,5)")
    assert G.order == 120
    assert len(center(G)) == 2


def test_dic3_presentation():
    G = make_named_group("Dic3")
    a, x = 1, 6
    e = G.identity
    assert G.order == 12
    assert G.power(a, 6) == e
    assert G.m(x, x) == G.power(a, 3)
    assert G.m(G.m(x, a), int(G.inv[x])) == int(G.inv[a])


def test_two_torsion_examples():
    assert two_torsion_center(cyclic_group(4)) == (0, 2)
    assert two_torsion_center(cyclic_group(3)) == (0,)
    G = make_named_group("Dic3")
    x2 = G.m(6, 6)
    assert two_torsion_center(G) == tuple(sorted((G.identity, x2)))


def test_abelian_center_is_everything():
    G = make_named_group("Z4xZ2")
    assert center(G) == tuple(range(8))


def test_s3_center_trivial_and_classes():
    G = make_named_group("S3")
    assert center(G) == (G.identity,)
    assert sorted(len(c) for c in conjugacy_classes(G)) == [1, 2, 3]


def test_sl25_class_sizes():
    G = make_named_group("SL(2,5)")
    sizes = sorted(len(c) for c in conjugacy_classes(G) if len(c) > 1)
    assert sizes == [12, 12, 12, 12, 20, 20, 30]


def test_abelian_classes_singletons():
    G = make_named_group("Z6")
    assert all(len(c) == 1 for c in conjugacy_classes(G))


def test_identity_class_first():
    for name in ["S3", "D4", "A4", "Dic3"]:
        G = make_named_group(name)
        assert conjugacy_classes(G)[0] == (G.identity,)


def test_subgroup_generated_examples():
    A4 = make_named_group("A4")
    three_cycles = [g for g in range(12) if A4.element_order(g) == 3]
    assert len(subgroup_generated(A4, three_cycles)) == 12
    D4 = make_named_group("D4")
    assert len(subgroup_generated(D4, [1])) == 4
    assert subgroup_generated(D4, [D4.identity]) == (D4.identity,)


def test_wreath_extension_sizes():
    K, phi = swap_wreath_extension(cyclic_group(2))
    assert K.order == 8
    K, phi = swap_wreath_extension(cyclic_group(3))
    assert K.order == 18
    # phi(1) = (1, 2, swap); index i*n^2 + a*n + b
    assert phi(1) == 1 * 9 + 1 * 3 + 2


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "Z5", "Dic3"])
def test_wreath_image_is_order_two(name):
    G = make_named_group(name)
    K, phi = swap_wreath_extension(G)
    for g in range(G.order):
        assert K.m(phi(g), phi(g)) == K.identity


def test_core_center_subgroup_examples():
    assert core_center_subgroup_A(cyclic_group(4)) == (0, 2)
    assert core_center_subgroup_A(cyclic_group(3)) == (0,)


def test_unsupported_and_invalid():
    with pytest.raises(UnsupportedFamily):
        make_named_group("Foo7")
    with pytest.raises(InvalidParameter):
        make_named_group("Dic1")
    with pytest.raises((InvalidParameter, UnsupportedFamily)):
        make_named_group("SL(2,4)")


def test_json_round_trip():
    G = make_named_group("QD16")
    H = FiniteGroup.from_json(G.to_json())
    assert H == G and H.name == G.name


@pytest.mark.parametrize("name", small_groups(16) + ["SL(2,5)", "S5", "A5"])
def test_group_axioms_and_structure(name):
    G = make_named_group(name)
    n = G.order
    m = G.mul
    idx = np.arange(n)
    assert np.array_equal(m[m[idx[:, None, None], idx[None, :, None]], idx[None, None, :]],
                          m[idx[:, None, None], m[idx[None, :, None], idx[None, None, :]]])
    assert np.all(m[G.identity] == idx) and np.all(m[:, G.identity] == idx)
    assert np.all(m[idx, G.inv] == G.identity)
    classes = conjugacy_classes(G)
    assert sum(len(c) for c in classes) == n
    assert all(n % len(c) == 0 for c in classes)
    if n <= 24:
        assert sorted(classes) == brute_classes(G)
        assert center(G) == brute_center(G)


@pytest.mark.parametrize("name", small_groups(16))
def test_torsion_inside_A_inside_center(name):
    G = make_named_group(name)
    T, A, Z = set(two_torsion_center(G)), set(core_center_subgroup_A(G)), set(center(G))
    assert T <= A <= Z


def test_subgroup_closure_properties():
    G = make_named_group("S4")
    S = [1, 7]
    H = set(subgroup_generated(G, S))
    assert set(S) <= H and G.identity in H
    assert all(G.m(a, b) in H for a, b in itertools.product(H, H))
    assert all(int(G.inv[a]) in H for a in H)


def test_catalogue_orders_match_names():
    for name in small_groups(23):
        G = make_named_group(name)
        assert 1 <= G.order <= 23


def _alternating_pairs(G):
    """Pairs (g1 g2^-1 g3 g4^-1 ..., g1^-1 g2 g3^-1 g4 ...) over all lengths."""
    n = G.order
    blocks = {(G.m(g, int(G.inv[h])), G.m(int(G.inv[g]), h)) for g in range(n) for h in range(n)}
    reach, frontier = set(blocks), list(blocks)
    while frontier:
        nxt = []
        for p in frontier:
            for q in blocks:
                r = (G.m(p[0], q[0]), G.m(p[1], q[1]))
                if r not in reach:
                    reach.add(r)
                    nxt.append(r)
        frontier = nxt
    return reach


@pytest.mark.parametrize("name", small_groups(16))
def test_A_matches_its_definition(name):
    G = make_named_group(name)
    reach = _alternating_pairs(G)
    assert core_center_subgroup_A(G) == tuple(a for a in center(G) if (a, a) in reach)


@pytest.mark.parametrize("name", ["M16", "(Z4xZ2):Z2"])
def test_two_torsion_strictly_inside_A(name):
    G = make_named_group(name)
    T, A = set(two_torsion_center(G)), set(core_center_subgroup_A(G))
    assert T < A
    a = next(iter(A - T))
    assert G.element_order(a) == 4
    inv = G.inv
    witness = next(w for w in itertools.product(range(G.order), repeat=4)
                   if G.m(G.m(w[0], int(inv[w[1]])), G.m(w[2], int(inv[w[3]]))) == a
                   == G.m(G.m(int(inv[w[0]]), w[1]), G.m(int(inv[w[2]]), w[3])))
    assert len(witness) == 4
