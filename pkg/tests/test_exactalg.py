"""Tests for exact linear algebra and the generic algebra machinery."""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from descent_loewy.exactalg import (
    FiniteDimAlgebra,
    ModPSpan,
    SparseIntRows,
    det_sign,
    in_span,
    nullspace,
    peirce_quiver,
    poly_divmod,
    poly_gcd,
    radical_oracle,
    rank_exact,
    reduce_mod_span,
    rref,
    scale_to_int,
    squarefree_part,
    verify_complete_idempotent_system,
)


def truncated_poly_algebra(n):
    """k[t]/t^n with basis 1, t, ..., t^(n-1)."""
    consts = [[{i + j: 1} if i + j < n else {} for j in range(n)]
              for i in range(n)]
    return FiniteDimAlgebra(consts, [1] + [0] * (n - 1))


def upper_triangular_algebra(n):
    """Upper triangular n x n matrices with basis E_ij, i <= j."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    idx = {p: k for k, p in enumerate(pairs)}
    d = len(pairs)
    consts = [[{} for _ in range(d)] for _ in range(d)]
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                consts[a][b] = {idx[(i, l)]: 1}
    one = [0] * d
    for i in range(n):
        one[idx[(i, i)]] = 1
    return FiniteDimAlgebra(consts, one), idx


def product_of_fields(n):
    consts = [[{i: 1} if i == j else {} for j in range(n)] for i in range(n)]
    return FiniteDimAlgebra(consts, [1] * n)


def exact_det(mat):
    n = len(mat)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sgn = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sgn = -sgn
        term = Fraction(1)
        for i in range(n):
            term *= Fraction(mat[i][perm[i]])
        total += sgn * term
    return total


# -- row reduction -----------------------------------------------------------

def test_rref_simple():
    basis, pivots = rref([[2, 4], [1, 2], [0, 1]])
    assert pivots == [0, 1]
    assert basis == [[1, 2], [0, 1]] or basis == [[Fraction(1), Fraction(0)],
                                                  [Fraction(0), Fraction(1)]]
    assert basis[0][1] == 0  # reduced above the second pivot


def test_rref_is_reduced_and_ordered():
    rows = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
    basis, pivots = rref(rows)
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        for j in range(len(basis)):
            assert basis[j][p] == (1 if i == j else 0)


def test_nullspace_annihilates():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [1, 0, 1, 0]]
    ker = nullspace(rows, 4)
    assert len(ker) == 4 - rank_exact(rows)
    for v in ker:
        for r in rows:
            assert sum(Fraction(a) * b for a, b in zip(r, v)) == 0


def test_reduce_mod_span_membership():
    basis, pivots = rref([[1, 0, 1], [0, 1, 1]])
    assert in_span([2, 3, 5], basis, pivots)
    assert not in_span([0, 0, 1], basis, pivots)
    assert any(reduce_mod_span([1, 1, 3], basis, pivots))


def test_scale_to_int():
    assert scale_to_int([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
    assert scale_to_int([2, 4, 6]) == [1, 2, 3]
    assert scale_to_int([0, 0]) == [0, 0]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                min_size=1, max_size=6))
def test_sparse_int_rows_matches_rref_rank(rows):
    span = SparseIntRows()
    for r in rows:
        span.add({i: x for i, x in enumerate(r) if x})
    assert span.rank == rank_exact(rows, 4)
    # span membership agrees with rref containment
    basis, pivots = rref(rows, 4)
    for r in rows:
        assert span.contains({i: x for i, x in enumerate(r) if x})
        assert in_span(r, basis, pivots)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_det_sign_matches_permutation_expansion(mat):
    d = exact_det(mat)
    expected = 0 if d == 0 else (1 if d > 0 else -1)
    assert det_sign(mat) == expected


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=5, max_size=5),
                min_size=2, max_size=5))
def test_mod_p_rank_is_lower_bound_and_usually_exact(rows):
    span = ModPSpan(5)
    for r in rows:
        span.add(r)
    exact = rank_exact(rows, 5)
    assert span.rank <= exact
    # with entries this small, no minor is divisible by the huge prime
    assert span.rank == exact


# -- polynomials --------------------------------------------------------------

def test_poly_divmod_and_gcd():
    # (t^2 - 1) = (t - 1)(t + 1)
    q, r = poly_divmod([-1, 0, 1], [-1, 1])
    assert q == [Fraction(1), Fraction(1)] and r == []
    g = poly_gcd([-1, 0, 1], [1, 1])  # gcd(t^2-1, t+1) = t+1
    assert g == [Fraction(1), Fraction(1)]


def test_squarefree_part():
    # (t-1)^2 (t+2) -> (t-1)(t+2) = t^2 + t - 2
    p = [2, -3, 0, 1]  # (t-1)^2(t+2) = t^3 - 3t + 2
    assert squarefree_part(p) == [Fraction(-2), Fraction(1), Fraction(1)]
    assert squarefree_part([0, 0, 1]) == [Fraction(0), Fraction(1)]
    # squarefree input is unchanged (up to monic scaling)
    assert squarefree_part([1, 3, 2]) == [Fraction(1, 2), Fraction(3, 2),
                                          Fraction(1)]


# -- algebra construction checks ----------------------------------------------

def test_associativity_check_catches_bad_constants():
    consts = [[{0: 1}, {1: 1}], [{1: 1}, {0: 1}]]
    FiniteDimAlgebra(consts, [1, 0])  # fine: k[t]/(t^2-1)
    # (e1 e1) e1 = e2 e1 = 0 but e1 (e1 e1) = e1 e2 = e0
    bad = [
        [{0: 1}, {1: 1}, {2: 1}],
        [{1: 1}, {2: 1}, {0: 1}],
        [{2: 1}, {}, {}],
    ]
    with pytest.raises(AssertionError):
        FiniteDimAlgebra(bad, [1, 0, 0])


def test_identity_check_catches_wrong_one():
    consts = [[{0: 1}, {1: 1}], [{1: 1}, {0: 1}]]
    with pytest.raises(AssertionError):
        FiniteDimAlgebra(consts, [0, 1])


def test_sampled_associativity_path():
    # force the sampled path with a tiny full bound; valid algebra passes
    A = truncated_poly_algebra(4)
    FiniteDimAlgebra(A.constants, A.one, assoc_full_bound=2)


def test_multiply_and_left_mult_matrix():
    A = truncated_poly_algebra(3)
    t = {1: 1}
    assert A.multiply(t, t) == {2: 1}
    assert A.multiply(A.multiply(t, t), t) == {}
    M = A.left_mult_matrix(t)
    assert M[1][0] == 1 and M[2][1] == 1 and M[0][0] == 0


# -- radical, Loewy, quiver ---------------------------------------------------

def test_truncated_polynomials_loewy():
    for n in range(1, 6):
        A = truncated_poly_algebra(n)
        assert A.loewy_length() == n
        assert A.radical_power_dims() == list(range(n - 1, 0, -1))


def test_product_of_fields_is_semisimple():
    A = product_of_fields(4)
    assert A.radical_basis() == []
    assert A.loewy_length() == 1
    assert A.semisimple_quotient_dim() == 4


def test_gram_matrix_matches_direct_traces():
    A, _ = upper_triangular_algebra(2)
    G = A.gram_matrix()
    d = A.dim
    for i in range(d):
        Li = A.left_mult_matrix({i: 1})
        for j in range(d):
            Lj = A.left_mult_matrix({j: 1})
            t = sum(Li[a][b] * Lj[b][a] for a in range(d) for b in range(d))
            assert G[i][j] == t


def test_upper_triangular_radical_and_quiver():
    A, idx = upper_triangular_algebra(3)
    assert A.loewy_length() == 3
    assert A.radical_power_dims() == [3, 1]
    idems = [{idx[(i, i)]: 1} for i in range(3)]
    checks = verify_complete_idempotent_system(A, idems)
    assert all(checks.values())
    arrows = peirce_quiver(A, idems, ["P0", "P1", "P2"])
    # E12 spans e1 rad e2, E23 spans e2 rad e3, E13 lies in rad^2
    assert arrows == {("P0", "P1"): 1, ("P1", "P2"): 1}


def test_incomplete_idempotent_system_flagged():
    A, idx = upper_triangular_algebra(2)
    idems = [{idx[(0, 0)]: 1}]
    checks = verify_complete_idempotent_system(A, idems)
    assert checks["idempotent"]
    assert not checks["sum_is_identity"]
    assert not checks["primitive_by_count"]


def test_radical_oracle_agrees_with_trace_form():
    cases = [
        truncated_poly_algebra(2),
        truncated_poly_algebra(4),
        upper_triangular_algebra(2)[0],
        upper_triangular_algebra(3)[0],
        product_of_fields(3),
    ]
    for A in cases:
        oracle_basis, cert = radical_oracle(A)
        assert all(bool(v) for v in cert.values())
        assert oracle_basis == A.radical_basis()


def test_radical_oracle_on_commutative_mixed_algebra():
    # k[t]/t^2 x k: radical is (t), one dimensional
    consts = [
        [{0: 1}, {1: 1}, {}],
        [{1: 1}, {}, {}],
        [{}, {}, {2: 1}],
    ]
    A = FiniteDimAlgebra(consts, [1, 0, 1])
    basis, cert = radical_oracle(A)
    assert len(basis) == 1 and basis[0][1] == 1
    assert basis == A.radical_basis()
    assert cert["nilpotency_index"] == 2
