"""Tests for the signed permutation Coxeter systems."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from descent_loewy.coxeter import (
    CoxeterSystem,
    GroupTooLargeError,
    SignedPermutation,
    act,
    build_coxeter_system,
    dot,
    group_order,
)


def system(fam, n):
    return build_coxeter_system(fam, n)


# frozen orders: A_n (n+1)!, B_n 2^n n!, D_n 2^(n-1) n!
ORDERS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120,
    ("B", 2): 8, ("B", 3): 48, ("B", 4): 384,
    ("D", 2): 4, ("D", 3): 24, ("D", 4): 192, ("D", 5): 1920,
}


@pytest.mark.parametrize("fam,n", sorted(ORDERS))
def test_enumeration_matches_order_formula(fam, n):
    W = system(fam, n)
    assert W.order == ORDERS[(fam, n)]
    assert len(W.element_images()) == W.order


def test_group_order_formulas():
    assert group_order("A", 5) == math.factorial(6)
    assert group_order("B", 5) == 2 ** 5 * math.factorial(5)
    assert group_order("D", 6) == 2 ** 5 * math.factorial(6)


def test_signed_permutation_validation():
    with pytest.raises(ValueError):
        SignedPermutation((1, 1))
    with pytest.raises(ValueError):
        SignedPermutation((1, 3))
    w = SignedPermutation((2, -1, 3))
    assert w(1) == 2 and w(2) == -1 and w(-1) == -2
    assert w.negation_count() == 1
    assert w.inverse().compose(w).is_identity()


def test_act_moves_coordinates():
    # w sends letter 1 to 2 and letter 2 to -1, so coordinate v_1 lands in
    # slot 2 and v_2 lands negated in slot 1
    w = SignedPermutation((2, -1))
    assert act(w, (5, 7)) == (-7, 5)
    u = SignedPermutation((1, 2))
    assert act(u, (5, 7)) == (5, 7)


def test_longest_element_lengths():
    # number of positive roots: A2 -> 3, B2 -> 4, D4 -> 12, B3 -> 9
    assert int(system("A", 2).lengths().max()) == 3
    assert int(system("B", 2).lengths().max()) == 4
    assert int(system("D", 4).lengths().max()) == 12
    assert int(system("B", 3).lengths().max()) == 9
    for fam, n in [("A", 3), ("B", 3), ("D", 4)]:
        W = system(fam, n)
        assert int(W.lengths().max()) == len(W.positive_roots)


def test_longest_element_in_D4_is_minus_identity():
    W = system("D", 4)
    w0 = W.element_images()[W.longest_element_id()]
    assert w0 == (-1, -2, -3, -4)


def test_generators_are_involutions_and_distinct():
    for fam, n in [("A", 3), ("B", 3), ("D", 4)]:
        W = system(fam, n)
        assert len(set(W.generators)) == W.num_generators
        for g in W.generators:
            assert g.is_involution()


def test_coweights_dual_to_simple_roots():
    for fam, n in [("A", 3), ("B", 4), ("D", 4), ("D", 5)]:
        W = system(fam, n)
        for i, cw in enumerate(W.fundamental_coweights):
            for j, al in enumerate(W.simple_roots):
                assert dot(cw, al) == (1 if i == j else 0)


def test_type_D_elements_have_even_negation_count():
    W = system("D", 3)
    assert all(SignedPermutation(w).negation_count() % 2 == 0
               for w in W.element_images())
    B = system("B", 3)
    assert any(SignedPermutation(w).negation_count() % 2 == 1
               for w in B.element_images())


def test_word_of_reconstructs_element():
    for fam, n in [("A", 3), ("B", 3), ("D", 4)]:
        W = system(fam, n)
        elems = W.element_images()
        for wid in range(0, W.order, 7):
            word = W.word_of(wid)
            assert len(word) == int(W.lengths()[wid])
            cur = 0
            rmul = W.rmul_table()
            for gi in word:
                cur = int(rmul[gi, cur])
            assert cur == wid


def test_descent_mask_definition():
    W = system("B", 3)
    lengths = W.lengths()
    rmul = W.rmul_table()
    masks = W.descent_masks()
    for wid in range(W.order):
        for gi in range(W.num_generators):
            bit = bool(masks[wid] >> gi & 1)
            assert bit == (lengths[rmul[gi, wid]] < lengths[wid])


def test_min_coset_reps_tile_the_group():
    W = system("D", 3)
    for J in [(), (0,), (0, 1), (0, 1, 2)]:
        reps = W.min_coset_rep_ids(J)
        sub = W.subgroup_element_ids(J)
        assert len(reps) * len(sub) == W.order
        elems = W.element_images()
        seen = set()
        for r in reps:
            for u in sub:
                prod = W.element_id(
                    SignedPermutation(elems[r]).compose(
                        SignedPermutation(elems[u])))
                seen.add(prod)
        assert len(seen) == W.order


def test_min_coset_rep_counts_in_D4():
    W = system("D", 4)
    assert len(W.min_coset_rep_ids((0, 1))) == 192 // 6
    assert len(W.min_coset_rep_ids(())) == 192
    assert len(W.min_coset_rep_ids((0, 1, 2, 3))) == 1


def test_parabolic_class_counts():
    # class counts equal the number of W-orbits on the intersection lattice
    assert len(system("A", 2).parabolic_classes()[0]) == 3
    assert len(system("D", 3).parabolic_classes()[0]) == 5
    assert len(system("D", 4).parabolic_classes()[0]) == 11
    assert len(system("B", 4).parabolic_classes()[0]) == 12
    assert len(system("D", 5).parabolic_classes()[0]) == 14


def test_parabolic_classes_D4_singletons_merge():
    # all four simple reflections of D4 are conjugate, matching the single
    # orbit of hyperplanes
    W = system("D", 4)
    classes, _ = W.parabolic_classes()
    singleton_classes = [c for c in classes if len(c[0]) == 1]
    assert len(singleton_classes) == 1
    assert singleton_classes[0] == ((0,), (1,), (2,), (3,))


def test_parabolic_class_order_empty_set_is_maximum():
    for fam, n in [("A", 2), ("B", 2), ("D", 3), ("D", 4)]:
        W = system(fam, n)
        classes, leq = W.parabolic_classes()
        empty_idx = W.parabolic_class_index(())
        assert all(leq[a, empty_idx] for a in range(len(classes)))
        full_idx = W.parabolic_class_index(tuple(range(W.num_generators)))
        assert all(leq[full_idx, a] for a in range(len(classes)))


def test_normalizer_index_examples():
    # W_{s1} in A2: reflection subgroup of order 2, three conjugates,
    # normalizer = itself
    assert system("A", 2).normalizer_index((0,)) == 1
    # B2: the two simple reflections lie in different orbits, each normalizer
    # has order 4
    assert system("B", 2).normalizer_index((0,)) == 2
    assert system("B", 2).normalizer_index((1,)) == 2
    # D4: 12 reflections in one orbit, |N| = 192/12 = 16, index 8
    assert system("D", 4).normalizer_index((0,)) == 8
    # the full group normalizes itself
    assert system("D", 4).normalizer_index((0, 1, 2, 3)) == 1
    assert system("D", 4).normalizer_index(()) == 192


def test_cap_refuses_large_groups():
    W = CoxeterSystem("D", 9, cap=1000)
    with pytest.raises(GroupTooLargeError):
        W.element_images()


def test_rank_validation():
    with pytest.raises(ValueError):
        CoxeterSystem("B", 1)
    with pytest.raises(ValueError):
        CoxeterSystem("D", 1)
    with pytest.raises(ValueError):
        CoxeterSystem("E", 6)
    assert CoxeterSystem("A", 1).order == 2


@st.composite
def group_and_two_ids(draw):
    fam, n = draw(st.sampled_from([("A", 3), ("B", 3), ("D", 3), ("D", 4)]))
    W = build_coxeter_system(fam, n)
    i = draw(st.integers(0, W.order - 1))
    j = draw(st.integers(0, W.order - 1))
    return W, i, j


@settings(max_examples=60, deadline=None)
@given(group_and_two_ids())
def test_act_is_a_group_action(data):
    W, i, j = data
    elems = W.element_images()
    u = SignedPermutation(elems[i])
    w = SignedPermutation(elems[j])
    v = tuple(range(1, W.ambient + 1))
    assert act(u.compose(w), v) == act(u, act(w, v))


@settings(max_examples=60, deadline=None)
@given(group_and_two_ids())
def test_length_subadditive_and_inverse_invariant(data):
    W, i, j = data
    elems = W.element_images()
    u, w = SignedPermutation(elems[i]), SignedPermutation(elems[j])
    lu, lw = W.length(u), W.length(w)
    assert W.length(u.compose(w)) <= lu + lw
    assert (W.length(u.compose(w)) - lu - lw) % 2 == 0
    assert W.length(u.inverse()) == lu
    inv_tab = W.inverse_table()
    assert int(inv_tab[i]) == W.element_id(u.inverse())
