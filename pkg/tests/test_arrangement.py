"""Tests for the face semigroup and intersection lattice."""

import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from descent_loewy.arrangement import (
    FaceSemigroup,
    IntersectionLattice,
    build_face_semigroup,
    expected_face_count,
)
from descent_loewy.coxeter import build_coxeter_system, dot

# face and lattice sizes, frozen from independent counts
FACE_COUNTS = {
    ("A", 2): (13, 5),
    ("B", 2): (17, 6),
    ("D", 2): (9, 4),
    ("A", 3): (75, 15),
    ("D", 3): (75, 15),
    ("B", 3): (147, 24),
    ("D", 4): (865, 72),
    ("B", 4): (1697, 116),
    ("D", 5): (12483, 403),
}

SMALL = [("A", 2), ("B", 2), ("D", 2), ("A", 3), ("D", 3), ("B", 3)]


@pytest.fixture(scope="module")
def semigroups():
    return {key: build_face_semigroup(*key) for key in SMALL}


@pytest.fixture(scope="module")
def lattices(semigroups):
    return {key: IntersectionLattice(fs) for key, fs in semigroups.items()}


@pytest.mark.parametrize("family,rank", sorted(FACE_COUNTS))
def test_face_and_lattice_counts(family, rank):
    nf, nl = FACE_COUNTS[(family, rank)]
    fs = build_face_semigroup(family, rank)
    assert fs.face_count == nf
    assert IntersectionLattice(fs).size == nl


def test_expected_face_count_formula():
    # the oracle itself: sum over J of the index of the standard parabolic
    assert expected_face_count("A", 2) == 13
    assert expected_face_count("B", 2) == 17
    assert expected_face_count("D", 4) == 865


@pytest.mark.parametrize("key", SMALL)
def test_semigroup_axioms_exhaustive(semigroups, key):
    """x*x = x, x*y*x = x*y, and associativity over every face triple."""
    fs = semigroups[key]
    T = fs.product_table()
    F = fs.face_count
    idx = np.arange(F)
    assert np.array_equal(T[idx, idx], idx)
    # xyx = xy, one row at a time
    for i in range(F):
        xy = T[i]
        assert np.array_equal(T[xy, i], xy)
    # associativity, chunked over the first index
    for i in range(F):
        lhs = T[T[i]]          # [j, k] -> (ij)k
        rhs = T[i][T]          # [j, k] -> i(jk)
        assert np.array_equal(lhs, rhs)


def test_semigroup_axioms_rank_four():
    fs = build_face_semigroup("D", 4)
    T = fs.product_table()
    F = fs.face_count
    idx = np.arange(F)
    assert np.array_equal(T[idx, idx], idx)
    for i in range(F):
        xy = T[i]
        assert np.array_equal(T[xy, i], xy)
        assert np.array_equal(T[T[i]], T[i][T])


def test_semigroup_axioms_sampled_b4():
    fs = build_face_semigroup("B", 4)
    T = fs.product_table()
    F = fs.face_count
    rng = np.random.default_rng(7)
    i, j, k = (rng.integers(0, F, size=200_000) for _ in range(3))
    assert np.array_equal(T[T[i, j], k], T[i, T[j, k]])
    assert np.array_equal(T[i, i], i)
    assert np.array_equal(T[T[i, j], i], T[i, j])


@pytest.mark.parametrize("key", SMALL)
def test_identity_face(semigroups, key):
    fs = semigroups[key]
    T = fs.product_table()
    e = fs.identity_id
    idx = np.arange(fs.face_count)
    assert np.array_equal(T[e], idx)
    assert np.array_equal(T[:, e], idx)
    assert not fs.signs[e].any()


@pytest.mark.parametrize("key", SMALL)
def test_chambers_are_left_zeroes(semigroups, key):
    fs = semigroups[key]
    T = fs.product_table()
    ch = fs.chamber_ids()
    assert len(ch) == fs.system.order
    for c in ch:
        assert (fs.signs[c] != 0).all()
        assert np.array_equal(T[c], np.full(fs.face_count, c))


@pytest.mark.parametrize("key", [("B", 3), ("D", 3)])
def test_product_geometry_sampled(semigroups, key):
    """Products agree with sign vectors of actual interior points."""
    fs = semigroups[key]
    rng = np.random.default_rng(11)
    pairs = [(int(a), int(b)) for a, b in
             rng.integers(0, fs.face_count, size=(120, 2))]
    assert fs.check_product_geometry(pairs) == 120


@pytest.mark.parametrize("key", SMALL)
def test_sample_points_realize_signs(semigroups, key):
    fs = semigroups[key]
    rng = np.random.default_rng(3)
    for fid in rng.integers(0, fs.face_count, size=60):
        p = fs.sample_point(int(fid))  # asserts the sign vector internally
        assert len(p) == fs.system.ambient


@pytest.mark.parametrize("key", SMALL)
def test_generator_action_matches_point_action(semigroups, key):
    """Acting on a face matches acting on its interior point."""
    from descent_loewy.coxeter import act
    fs = semigroups[key]
    fperm = fs.generator_action()
    rng = np.random.default_rng(5)
    for fid in rng.integers(0, fs.face_count, size=40):
        p = fs.sample_point(int(fid))
        for gi, g in enumerate(fs.system.generators):
            gp = act(g, p)
            sv = np.array([np.sign(dot(r, gp)) for r in fs.normals],
                          dtype=np.int8)
            assert fs.find_ids(sv[None, :])[0] == fperm[gi, fid]


@pytest.mark.parametrize("key", SMALL)
def test_action_by_semigroup_automorphisms(semigroups, key):
    """g(x y) = g(x) g(y) for every generator g."""
    fs = semigroups[key]
    T = fs.product_table()
    fperm = fs.generator_action()
    for gi in range(fs.system.num_generators):
        f = fperm[gi]
        assert np.array_equal(f[T], T[np.ix_(f, f)])


@pytest.mark.parametrize("key", SMALL)
def test_support_of_product_is_join(semigroups, lattices, key):
    fs, lat = semigroups[key], lattices[key]
    T = fs.product_table()
    rng = np.random.default_rng(13)
    for a, b in rng.integers(0, fs.face_count, size=(200, 2)):
        x = int(lat.face_supp[a])
        y = int(lat.face_supp[b])
        assert lat.face_supp[T[a, b]] == lat.join(x, y)


@pytest.mark.parametrize("key", SMALL)
def test_lattice_order_and_covers(lattices, key):
    """Cover pairs from the dimension grading match the raw definition."""
    lat = lattices[key]
    raw = set()
    for a in range(lat.size):
        for b in range(lat.size):
            if a == b or not lat.leq[a, b]:
                continue
            if not any(c != a and c != b and lat.leq[a, c] and lat.leq[c, b]
                       for c in range(lat.size)):
                raw.add((a, b))
    assert raw == set(lat.covers)
    # the order is antisymmetric with unique top (ambient space)
    assert not np.any(lat.leq & lat.leq.T & ~np.eye(lat.size, dtype=bool))
    top = lat.top_id
    assert all(lat.leq[x, top] for x in range(lat.size))


@pytest.mark.parametrize("key", SMALL)
def test_lattice_dims_and_bases(lattices, key):
    lat = lattices[key]
    N = lat.faces.system.ambient
    for x in range(lat.size):
        basis = lat.bases[x]
        assert len(basis) == lat.dims[x]
        for v in basis:
            for i in range(lat.faces.m):
                if lat.masks[x] >> i & 1:
                    assert dot(lat.faces.normals[i], v) == 0
    assert lat.dims[lat.top_id] == N


def test_lattice_top_dim_type_a():
    # type A fixes the all-ones direction, so the effective top has full
    # ambient dimension (the arrangement is not essential)
    fs = build_face_semigroup("A", 2)
    lat = IntersectionLattice(fs)
    assert lat.dims[lat.top_id] == 3
    bottom = lat.index[(1 << fs.m) - 1]
    assert lat.dims[bottom] == 1


@pytest.mark.parametrize("key", SMALL)
def test_lattice_equivariance(semigroups, lattices, key):
    """Support of the transformed face equals the transformed support."""
    fs, lat = semigroups[key], lattices[key]
    fperm = fs.generator_action()
    for gi in range(fs.system.num_generators):
        for fid in range(0, fs.face_count, 5):
            lhs = int(lat.face_supp[fperm[gi, fid]])
            rhs = lat.act_generator(gi, int(lat.face_supp[fid]))
            assert lhs == rhs


def test_orbit_shapes_type_d3():
    lat = IntersectionLattice(build_face_semigroup("D", 3))
    shapes = sorted(set(lat.shape(x) for x in range(lat.size)))
    assert shapes == [((), 3), ((1,), 2), ((1, 1, 1), 0), ((2, 1), 0),
                      ((3,), 0)]
    assert len(lat.orbits) == 5
    # orbits coincide with shapes here (no all-even splitting at rank 3)
    for orb in lat.orbits:
        assert len(set(lat.shape(x) for x in orb)) == 1


def test_orbit_split_rule_type_d4():
    """Shapes with no central part and all blocks even split in two."""
    lat = IntersectionLattice(build_face_semigroup("D", 4))
    assert len(lat.orbits) == 11
    by_shape = {}
    for x in range(lat.size):
        by_shape.setdefault(lat.shape(x), set()).add(int(lat.orbit_id[x]))
    for (blocks, c), oids in by_shape.items():
        splits = bool(blocks) and c == 0 and all(b % 2 == 0 for b in blocks)
        assert len(oids) == (2 if splits else 1), (blocks, c)


def test_orbit_counts_match_frozen():
    for fam, rk, norb in [("D", 3, 5), ("D", 4, 11), ("B", 4, 12),
                          ("D", 5, 14)]:
        lat = IntersectionLattice(build_face_semigroup(fam, rk))
        assert len(lat.orbits) == norb, (fam, rk)


def test_signed_blocks_examples():
    fs = build_face_semigroup("D", 4)
    lat = IntersectionLattice(fs)
    # the top is one singleton block per coordinate
    blocks, central = lat.signed_blocks(lat.top_id)
    assert blocks == ((1,), (2,), (3,), (4,)) and central == ()
    # x1 = x2 gives a two-letter block
    i = fs.normals.index((1, -1, 0, 0))
    x = lat.index[1 << i]
    blocks, central = lat.signed_blocks(x)
    assert blocks == ((1, 2), (3,), (4,)) and central == ()
    # x1 = -x2 flips the second letter
    j = fs.normals.index((1, 1, 0, 0))
    x = lat.index[1 << j]
    blocks, central = lat.signed_blocks(x)
    assert blocks == ((1, -2), (3,), (4,)) and central == ()
    # x1 = x2 and x1 = -x2 force a central pair
    x = lat.index[(1 << i) | (1 << j)]
    blocks, central = lat.signed_blocks(x)
    assert blocks == ((3,), (4,)) and central == (0, 1)


def test_signed_blocks_count_equals_dim():
    for fam, rk in [("B", 3), ("D", 3), ("D", 4), ("B", 4)]:
        lat = IntersectionLattice(build_face_semigroup(fam, rk))
        for x in range(lat.size):
            blocks, _ = lat.signed_blocks(x)
            assert len(blocks) == lat.dims[x]


def test_canonical_block_vectors_span():
    from descent_loewy.exactalg import rank_exact
    lat = IntersectionLattice(build_face_semigroup("D", 4))
    for x in range(lat.size):
        vecs = lat.canonical_block_vectors(x)
        assert len(vecs) == lat.dims[x]
        for v in vecs:
            for i in range(lat.faces.m):
                if lat.masks[x] >> i & 1:
                    assert dot(lat.faces.normals[i], v) == 0
        if vecs:
            assert rank_exact([list(map(Fraction, v)) for v in vecs]) == \
                len(vecs)


def test_shape_constant_on_orbits_d5():
    lat = IntersectionLattice(build_face_semigroup("D", 5))
    for orb in lat.orbits:
        assert len(set(lat.shape(x) for x in orb)) == 1
        eo = set(lat.even_odd(x) for x in orb)
        assert len(eo) == 1


def test_canonical_face_has_support():
    fs = build_face_semigroup("B", 3)
    lat = IntersectionLattice(fs)
    for x in range(lat.size):
        f = lat.canonical_face(x)
        assert lat.face_supp[f] == x
        earlier = np.nonzero(lat.face_supp[:f] == x)[0]
        assert len(earlier) == 0


def test_two_limb_keys_roundtrip():
    """Key packing is injective and order-stable above 39 hyperplanes."""
    rng = np.random.default_rng(2)
    rows = rng.integers(-1, 2, size=(500, 45)).astype(np.int8)
    rows = np.unique(rows, axis=0)

    class Wide:
        m = 45
    keys = FaceSemigroup.pack_keys(Wide(), rows)
    assert len(np.unique(keys)) == len(rows)
    order = np.argsort(keys, kind="stable")
    back = FaceSemigroup.pack_keys(Wide(), rows[order])
    assert np.array_equal(np.unique(keys), back)
    pos = np.searchsorted(back, keys)
    assert np.array_equal(back[pos], keys)


def test_word_action_on_faces():
    fs = build_face_semigroup("B", 3)
    sys = fs.system
    rng = np.random.default_rng(17)
    fperm = fs.generator_action()
    for wid in rng.integers(0, sys.order, size=25):
        word = sys.word_of(int(wid))
        for fid in rng.integers(0, fs.face_count, size=4):
            got = fs.act_word_on_face(word, int(fid))
            cur = int(fid)
            for gi in reversed(word):
                cur = int(fperm[gi, cur])
            assert got == cur


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 74), st.integers(0, 74), st.integers(0, 74))
def test_associativity_property_d3(i, j, k):
    fs = build_face_semigroup("D", 3)
    ij = fs.product_ids(i, j)
    jk = fs.product_ids(j, k)
    assert fs.product_ids(ij, k) == fs.product_ids(i, jk)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 146), st.integers(0, 146))
def test_support_join_property_b3(a, b):
    fs = build_face_semigroup("B", 3)
    lat = IntersectionLattice(fs)
    p = fs.product_ids(a, b)
    assert lat.face_supp[p] == lat.join(int(lat.face_supp[a]),
                                        int(lat.face_supp[b]))
    # products only shrink the zero set
    assert lat.leq[lat.face_supp[a], lat.face_supp[p]]
