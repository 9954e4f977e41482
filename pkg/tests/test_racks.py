import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symracks.constructors import (
    alexander_quandle,
    conj_subquandle,
    dihedral_quandle,
    galkin_quandle,
    permutation_rack,
    tetrahedral_quandle,
)
from symracks.enumeration import enumerate_racks
from symracks.groups import cyclic_group, make_named_group
from symracks.racks import (
    NotSelfDistributive,
    RackAxiomError,
    RowNotPermutation,
    SizeCap,
    antiautomorphisms,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    classify_rack,
    compose,
    cycle_type,
    dual_rack,
    identity_perm,
    inner_group,
    inverse,
    is_antiautomorphism,
    is_automorphism,
    is_homomorphism,
    isomorphisms,
    kink_map,
    orbit_decomposition,
    perm_power,
    product_rack,
    rack_from_table,
    relabel,
    trivial_quandle,
    Rack,
)

SMALL_RACKS = [r for n in range(1, 5) for r in enumerate_racks(n, "rack")]


def brute_automorphisms(R):
    return sorted(p for p in itertools.permutations(range(R.order)) if is_automorphism(R, p))


def brute_antiautomorphisms(R):
    return sorted(p for p in itertools.permutations(range(R.order))
                  if is_antiautomorphism(R, p))


def cycle(n, *cyc):
    p = list(range(n))
    for i, a in enumerate(cyc):
        p[a] = cyc[(i + 1) % len(cyc)]
    return p


def test_permutation_helpers():
    p = (1, 2, 0)
    assert compose(p, inverse(p)) == identity_perm(3)
    assert perm_power(p, 3) == identity_perm(3)
    assert perm_power(p, -1) == inverse(p)
    assert cycle_type((1, 0, 3, 4, 2)) == (2, 3)
    # compose applies the right-hand map first
    assert compose((1, 0, 2), (0, 2, 1)) == (1, 2, 0)


def test_trivial_quandle_valid():
    R = rack_from_table(3, [[0, 1, 2]] * 3)
    flags = classify_rack(R)
    assert flags.is_quandle and flags.is_kei and not flags.is_connected


def test_tetrahedral_table_valid():
    # s1=(234), s2=(143), s3=(124), s4=(132), shifted to 0-indexing
    rows = [cycle(4, 1, 2, 3), cycle(4, 0, 3, 2), cycle(4, 0, 1, 3), cycle(4, 0, 2, 1)]
    R = rack_from_table(4, rows)
    assert R == tetrahedral_quandle()
    assert classify_rack(R).is_quandle


def test_swap_permutation_rack_valid():
    R = rack_from_table(2, [[1, 0], [1, 0]])
    assert R.order == 2


def test_swap_and_identity_rows_rejected():
    with pytest.raises(NotSelfDistributive):
        rack_from_table(2, [[1, 0], [0, 1]])


def test_non_permutation_row_rejected():
    with pytest.raises(RowNotPermutation):
        rack_from_table(2, [[0, 0], [0, 1]])


def test_shape_rejected():
    with pytest.raises(RackAxiomError):
        rack_from_table(2, [[0, 1]])


def test_classify_examples():
    T = classify_rack(tetrahedral_quandle())
    assert T.is_quandle and T.is_faithful and T.is_connected and not T.is_involutory
    R5 = classify_rack(dihedral_quandle(5))
    assert R5.is_kei and R5.is_faithful and R5.is_connected
    P = classify_rack(permutation_rack(2, [1, 0]))
    assert P.is_involutory and not P.is_quandle and not P.is_faithful


def test_kink_map_examples():
    assert kink_map(tetrahedral_quandle()) == identity_perm(4)
    assert kink_map(permutation_rack(3, [1, 2, 0])) == (1, 2, 0)
    a = cycle(5, 0, 1)
    b = cycle(5, 2, 3, 4)
    s12 = compose(a, b)
    R = rack_from_table(5, [s12, s12, a, a, a])
    assert kink_map(R) == tuple(a)


def test_dual_examples():
    R = dihedral_quandle(6)
    assert dual_rack(R) == R
    T = tetrahedral_quandle()
    D = dual_rack(T)
    assert D.rows[0] == tuple(cycle(4, 1, 3, 2))
    assert D != T and are_isomorphic(D, T)
    assert dual_rack(trivial_quandle(3)) == trivial_quandle(3)


def test_inner_group_examples():
    _, order, orbits = inner_group(trivial_quandle(4))
    assert order == 1 and len(orbits) == 4
    _, order, orbits = inner_group(tetrahedral_quandle())
    assert order == 12 and len(orbits) == 1
    A4 = make_named_group("A4")
    X = [g for g in range(12) if A4.element_order(g) == 3][:1]
    cls = {A4.m(A4.m(h, X[0]), int(A4.inv[h])) for h in range(12)}
    spec = conj_subquandle(A4, cls)
    assert len(inner_group(spec.rack)[2]) == 1


def test_inner_group_cap():
    with pytest.raises(SizeCap):
        inner_group(dihedral_quandle(7), cap=3)


def test_automorphism_examples():
    assert len(automorphism_group(trivial_quandle(4))) == 24
    assert len(automorphism_group(tetrahedral_quandle())) == 12
    assert len(automorphism_group(dihedral_quandle(3))) == 6


def test_automorphism_cap():
    with pytest.raises(SizeCap):
        automorphism_group(trivial_quandle(20), cap=16)


def test_antiautomorphism_examples():
    R = dihedral_quandle(5)
    assert antiautomorphisms(R) == automorphism_group(R)
    anti = set(antiautomorphisms(tetrahedral_quandle()))
    for i, j in itertools.combinations(range(4), 2):
        t = list(range(4))
        t[i], t[j] = j, i
        assert tuple(t) in anti
    G = cyclic_group(5)
    A = alexander_quandle(G, [(2 * g) % 5 for g in range(5)])
    assert antiautomorphisms(A) == []
    assert brute_antiautomorphisms(A) == []


def test_antiautomorphisms_from_known_one():
    T = tetrahedral_quandle()
    iota = (1, 0, 2, 3)
    assert antiautomorphisms(T, iota=iota) == antiautomorphisms(T)


def test_canonical_form_examples():
    A4 = make_named_group("A4")
    three = [g for g in range(12) if A4.element_order(g) == 3]
    g = three[0]
    cls = sorted({A4.m(A4.m(h, g), int(A4.inv[h])) for h in range(12)})
    sub = conj_subquandle(A4, cls).rack
    assert np.array_equal(canonical_form(sub)[0], canonical_form(tetrahedral_quandle())[0])
    assert not np.array_equal(canonical_form(dihedral_quandle(3))[0],
                              canonical_form(trivial_quandle(3))[0])


def test_canonical_relabeling_reproduces_table():
    R = galkin_quandle(cyclic_group(2), 1)
    table, _, p = canonical_form(R)
    assert np.array_equal(relabel(R, p).s, table)


def test_product_examples():
    R = dihedral_quandle(5)
    assert are_isomorphic(product_rack(R, trivial_quandle(1)), R)
    assert product_rack(trivial_quandle(2), trivial_quandle(3)) == trivial_quandle(6)
    R3 = dihedral_quandle(3)
    P = product_rack(R3, R3)
    assert P.order == 9
    # (x, y) -> s_y(x) is a homomorphism R3 x R3 -> R3
    mult = [int(R3.s[b, a]) for a in range(3) for b in range(3)]
    assert is_homomorphism(P, R3, mult)


def test_json_round_trip():
    R = galkin_quandle(cyclic_group(3), 1)
    S = Rack.from_json(R.to_json())
    assert S == R and hash(S) == hash(R) and S.name == R.name


@pytest.mark.parametrize("R", SMALL_RACKS, ids=lambda r: r.name or str(r.rows))
def test_small_rack_invariants(R):
    assert dual_rack(dual_rack(R)) == R
    aut = automorphism_group(R)
    assert aut == brute_automorphisms(R)
    anti = antiautomorphisms(R)
    assert anti == brute_antiautomorphisms(R)
    assert len(anti) in (0, len(aut))
    theta = kink_map(R)
    aut_set = set(aut)
    for phi in aut:
        assert compose(phi, theta) == compose(theta, phi)
    for a, b in itertools.product(anti[:4], anti[:4]):
        assert compose(a, b) in aut_set
    for a, phi in itertools.product(anti[:4], aut[:4]):
        assert is_antiautomorphism(R, compose(a, phi))
    for orbit in orbit_decomposition(R).orbits:
        for row in R.rows:
            assert {row[y] for y in orbit} == set(orbit)


def test_mediality_of_products():
    medial = [r for r in SMALL_RACKS if classify_rack(r).is_medial][:8]
    for R1, R2 in itertools.combinations(medial, 2):
        assert classify_rack(product_rack(R1, R2)).is_medial


def test_medial_matches_definition():
    for R in SMALL_RACKS[:40]:
        n = R.order
        s = R.s
        brute = all(
            s[s[y2, x2], s[y1, x1]] == s[s[y2, y1], s[x2, x1]]
            for x1, y1, x2, y2 in itertools.product(range(n), repeat=4)
        )
        assert classify_rack(R).is_medial == brute


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_RACKS + [tetrahedral_quandle(), galkin_quandle(cyclic_group(2), 1),
                                      dihedral_quandle(6)]),
       st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabeling(R, rnd):
    p = list(range(R.order))
    rnd.shuffle(p)
    S = relabel(R, p)
    c1, c2 = canonical_form(R)[0], canonical_form(S)[0]
    assert np.array_equal(c1, c2)
    again = rack_from_table(R.order, c1)
    assert np.array_equal(canonical_form(again)[0], c1)
    phi = next(isomorphisms(R, S))
    assert is_homomorphism(R, S, phi)


def test_canonical_forms_separate_small_racks():
    keys = {canonical_form(R)[0].tobytes() for R in SMALL_RACKS}
    assert len(keys) == len(SMALL_RACKS)


def test_isomorphism_search_against_brute_force():
    rng = random.Random(7)
    racks = [R for R in SMALL_RACKS if R.order == 4]
    for R in rng.sample(racks, 10):
        for S in rng.sample(racks, 3):
            brute = any(is_homomorphism(R, S, p) for p in itertools.permutations(range(4)))
            assert are_isomorphic(R, S) == brute
