"""The descent algebra of a finite Coxeter group.

For J a subset of the simple generators, x_J is the sum of the elements
whose right descent set avoids J (the minimal coset representatives of
W_J).  These 2^|S| sums span an algebra; its structure constants are
computed here in two independent ways.

The group-direct route works inside the group algebra: the coefficient of
w in x_J x_K is #{u : D(u) cap J = 0, D(u^-1 w) cap K = 0}, which depends
only on the descent class of w (that constancy is asserted against two
representatives per class), and a Moebius inversion over subsets turns
per-class coefficients into x-basis constants.

The pullback route reverses the multiplication of the invariant
subalgebra of the face algebra: the linear map sending the orbit sum of
the fundamental face F_J to x_J is an anti-isomorphism, so reversing the
invariant structure constants gives the descent constants.  Both routes
must produce identical integer tables; tests and the verification suite
compare them pair by pair.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .coxeter import CoxeterSystem, build_coxeter_system
from .exactalg import FiniteDimAlgebra, verify_complete_idempotent_system
from .facealg import invariant_constants, orbit_basis_labels

NAIVE_ORDER_LIMIT = 48


def descent_basis_labels(n):
    return [
        "x{" + ",".join(str(i) for i in range(n) if J >> i & 1) + "}"
        for J in range(1 << n)
    ]


def _class_coefficient_tables(system: CoxeterSystem):
    """RW[T][Tu, Tv] = #{u : D(u) = Tu, D(u^-1 w) = Tv} for D(w) = T.

    Checked to be independent of the representative w (two per class when
    available); this constancy is equivalent to the x_J spanning a closed
    algebra, so a failure would signal a group-table bug.
    """
    n = system.num_generators
    desc = system.descent_masks()
    rmul = system.rmul_table()
    inv = system.inverse_table()
    order = system.order
    nmask = 1 << n
    tables = {}
    for T in range(nmask):
        wids = np.nonzero(desc == T)[0]
        if len(wids) == 0:
            continue
        got = None
        for w in wids[:2]:
            col = np.arange(order)
            for gi in system.word_of(int(w)):
                col = rmul[gi][col]
            uinvw = col[inv]
            lab = desc * nmask + desc[uinvw]
            RW = np.bincount(lab, minlength=nmask * nmask)
            RW = RW.reshape(nmask, nmask)
            if got is None:
                got = RW
            else:
                assert np.array_equal(got, RW), \
                    "class coefficient depends on the representative"
        tables[T] = got
    return tables


def descent_constants_group(system: CoxeterSystem):
    """x-basis structure constants from group-algebra products."""
    n = system.num_generators
    nmask = 1 << n
    tables = _class_coefficient_tables(system)
    masks = list(range(nmask))
    avoid = {J: np.array([m for m in masks if m & J == 0]) for J in masks}
    constants = [[None] * nmask for _ in range(nmask)]
    full = nmask - 1
    for J in range(nmask):
        for K in range(nmask):
            delta = {}
            for T, RW in tables.items():
                delta[T] = int(RW[np.ix_(avoid[J], avoid[K])].sum())
            a = {}
            for U in range(nmask):
                comp = full ^ U
                s = 0
                for T in tables:
                    if T & comp == comp:
                        extra = bin(T & ~comp & full).count("1")
                        s += (-1) ** extra * delta[T]
                if s:
                    a[U] = s
            # round trip: the class coefficients must reassemble
            for T in tables:
                back = sum(c for U, c in a.items() if U & T == 0)
                assert back == delta[T], "basis re-expression failed"
            constants[J][K] = a
    return constants


def descent_constants_naive(system: CoxeterSystem):
    """Third route at tiny orders: convolve coset-representative sums
    elementwise in the group algebra, then re-express."""
    if system.order > NAIVE_ORDER_LIMIT:
        raise ValueError("naive convolution limited to very small groups")
    n = system.num_generators
    nmask = 1 << n
    desc = system.descent_masks()
    elems = system.element_images()
    index = {w: i for i, w in enumerate(elems)}
    from .coxeter import _compose
    prod = [[index[_compose(elems[i], elems[j])] for j in range(len(elems))]
            for i in range(len(elems))]
    reps = {
        J: list(system.min_coset_rep_ids(
            tuple(i for i in range(n) if J >> i & 1)))
        for J in range(nmask)
    }
    constants = [[None] * nmask for _ in range(nmask)]
    full = nmask - 1
    for J in range(nmask):
        for K in range(nmask):
            coeff = np.zeros(len(elems), dtype=np.int64)
            for u in reps[J]:
                for v in reps[K]:
                    coeff[prod[int(u)][int(v)]] += 1
            # the coefficient must be constant on descent classes
            delta = {}
            for T in range(nmask):
                ids = np.nonzero(desc == T)[0]
                if len(ids) == 0:
                    continue
                vals = set(int(coeff[i]) for i in ids)
                assert len(vals) == 1, "coefficient varies inside a class"
                delta[T] = vals.pop()
            a = {}
            for U in range(nmask):
                comp = full ^ U
                s = 0
                for T in delta:
                    if T & comp == comp:
                        extra = bin(T & ~comp & full).count("1")
                        s += (-1) ** extra * delta[T]
                if s:
                    a[U] = s
            constants[J][K] = a
    return constants


def descent_algebra(system: CoxeterSystem, method="pullback", faces=None,
                    check=True):
    """Sigma(W) as a structure-constant algebra in the x_J basis.

    method 'group-direct' multiplies in the group algebra; 'pullback'
    reverses the invariant-algebra constants through the
    anti-isomorphism.  The identity is x_S.
    """
    n = system.num_generators
    nmask = 1 << n
    if method == "group-direct":
        constants = descent_constants_group(system)
    elif method == "pullback":
        if faces is None:
            from .arrangement import FaceSemigroup
            faces = FaceSemigroup(system)
        inv = invariant_constants(faces)
        constants = [[inv[K][J] for K in range(nmask)] for J in range(nmask)]
    else:
        raise ValueError(f"unknown method {method!r}")
    one = [0] * nmask
    one[nmask - 1] = 1
    return FiniteDimAlgebra(constants, one, labels=descent_basis_labels(n),
                            check=check)


def verify_anti_isomorphism(system: CoxeterSystem, faces=None):
    """Check that reversing products maps (kF)^W onto Sigma(W).

    Compares a_inv[J][K] with c_group[K][J] on every basis pair, checks
    the identities correspond, and reports the first failing pair.
    """
    if faces is None:
        from .arrangement import FaceSemigroup
        faces = FaceSemigroup(system)
    inv = invariant_constants(faces)
    grp = descent_constants_group(system)
    n = system.num_generators
    nmask = 1 << n
    failures = []
    for J in range(nmask):
        for K in range(nmask):
            left = {L: int(c) for L, c in inv[J][K].items()}
            right = {L: int(c) for L, c in grp[K][J].items()}
            if left != right:
                failures.append((J, K, left, right))
    return {
        "pairs_checked": nmask * nmask,
        "failures": failures,
        "ok": not failures,
        "identity_matches": inv[nmask - 1][nmask - 1] ==
        grp[nmask - 1][nmask - 1] == {nmask - 1: 1},
        "dims_equal": True,
    }


def direct_descent_idempotents(system: CoxeterSystem, alg=None):
    """Orthogonal idempotents of Sigma(W), one per parabolic class.

    Classes are processed from the maximum (the class of the empty set)
    downward; for a class O with lexicographically least member J_O and
    lambda_O the index of W_{J_O} in its normalizer,

        eps_O = u - (sum of eps_{O'} over O' > O) * u,   u = x_{J_O}/lambda_O.

    Returns (idempotents as sparse dicts over x-basis indices, classes).
    """
    if alg is None:
        alg = descent_algebra(system)
    classes, leq = system.parabolic_classes()
    eps = []
    for ci, cls in enumerate(classes):
        J = cls[0]
        lam = system.normalizer_index(J)
        u = {system.subset_mask(J): Fraction(1, lam)}
        acc = {}
        for cj in range(ci):
            if leq[ci][cj]:
                for k, c in eps[cj].items():
                    nc = acc.get(k, 0) + c
                    if nc:
                        acc[k] = nc
                    elif k in acc:
                        del acc[k]
        e = dict(u)
        if acc:
            prod = alg.multiply(acc, u)
            for k, c in prod.items():
                nc = e.get(k, 0) - c
                if nc:
                    e[k] = nc
                elif k in e:
                    del e[k]
        eps.append(e)
    return eps, classes


def verify_direct_idempotents(system: CoxeterSystem, alg=None):
    if alg is None:
        alg = descent_algebra(system)
    eps, classes = direct_descent_idempotents(system, alg)
    report = verify_complete_idempotent_system(alg, eps)
    report["count"] = len(eps)
    return report, eps, classes


def loewy_length_descent(family, rank, method="pullback", faces=None):
    """Loewy length of Sigma(W) and its radical power dimensions."""
    system = build_coxeter_system(family, rank)
    alg = descent_algebra(system, method=method, faces=faces)
    dims = alg.radical_power_dims()
    return {
        "family": family,
        "rank": rank,
        "loewy_length": alg.loewy_length(),
        "radical_power_dims": dims,
        "semisimple_dim": alg.semisimple_quotient_dim(),
        "dim": alg.dim,
        "method": method,
    }
