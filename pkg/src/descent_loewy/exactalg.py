"""Exact linear algebra over the rationals and finite dimensional algebras.

Vectors are lists (or tuples) of Fraction or int; matrices are lists of
rows.  Everything user facing here is exact; floating point appears only
inside one associativity check whose integer inputs are small enough that
every intermediate value is an exactly representable float64 integer.  A
prime field reducer is provided for cheap rank lower bounds; callers must
promote such bounds to exact statements with a containment or counting
argument before relying on them.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

CERT_PRIME = 2 ** 31 - 1
ASSOC_FULL_BOUND = 256


# -- exact row reduction ---------------------------------------------------

def rref(rows, ncols=None):
    """Reduced row echelon basis of the row span.

    Returns (basis, pivots) with pivot entries 1, zeros above and below
    each pivot, rows ordered by pivot column.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    basis = []
    pivots = []
    for r in rows:
        for pc, br in zip(pivots, basis):
            c = r[pc]
            if c:
                r = [x - c * y for x, y in zip(r, br)]
        nz = next((i for i, x in enumerate(r) if x), None)
        if nz is None:
            continue
        pv = Fraction(r[nz])
        r = [Fraction(x) / pv for x in r]
        for idx, br in enumerate(basis):
            c = br[nz]
            if c:
                basis[idx] = [x - c * y for x, y in zip(br, r)]
        basis.append(r)
        pivots.append(nz)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank_exact(rows, ncols=None):
    return len(rref(rows, ncols)[0])


def reduce_mod_span(vec, basis, pivots):
    """Residue of vec modulo the rref row span; zero vector iff contained."""
    r = list(vec)
    for pc, br in zip(pivots, basis):
        c = r[pc]
        if c:
            r = [x - c * y for x, y in zip(r, br)]
    return r


def in_span(vec, basis, pivots):
    return not any(reduce_mod_span(vec, basis, pivots))


def nullspace(rows, ncols):
    """Basis of the right kernel {v : M v = 0} of the matrix with given rows."""
    basis, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    ker = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for br, pc in zip(basis, pivots):
            v[pc] = -br[fc]
        ker.append(v)
    return ker


def det_sign(mat):
    """Sign of the determinant of a square matrix: -1, 0, or 1.  Exact."""
    a = [[Fraction(x) for x in row] for row in mat]
    n = len(a)
    sign = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        if a[c][c] < 0:
            sign = -sign
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign


def scale_to_int(vec):
    """Clear denominators and divide by the content; returns a list of ints."""
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


# -- integer fraction-free sparse row reduction ----------------------------

class SparseIntRows:
    """Incremental fraction-free row reduction of integer vectors.

    Rows are dicts {col: int}.  Pivot rows are kept integral with content 1;
    the row span over Q is preserved exactly, so ranks and membership tests
    agree with rational elimination.
    """

    def __init__(self):
        self.rows = {}  # pivot col -> dict row

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, vec):
        v = {c: x for c, x in vec.items() if x}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                return v, p
            a, b = v[p], row[p]
            g = math.gcd(a, b)
            ca, cb = b // g, a // g
            out = {c: x * ca for c, x in v.items()}
            for c, x in row.items():
                y = out.get(c, 0) - x * cb
                if y:
                    out[c] = y
                elif c in out:
                    del out[c]
            v = out
        return v, None

    def add(self, vec):
        """Insert vec; returns True if the rank grew."""
        v, p = self._reduce(vec)
        if p is None:
            return False
        g = 0
        for x in v.values():
            g = math.gcd(g, abs(x))
        if g > 1:
            v = {c: x // g for c, x in v.items()}
        if v[p] < 0:
            v = {c: -x for c, x in v.items()}
        self.rows[p] = v
        return True

    def contains(self, vec):
        _, p = self._reduce(vec)
        return p is None

    def basis_dicts(self):
        return [dict(r) for r in self.rows.values()]


# -- prime field rank (lower bounds only) ----------------------------------

class ModPSpan:
    """Incremental span over the prime field F_p.

    Ranks computed here are lower bounds for ranks over Q; equality must be
    established separately (for instance by an exact dimension that the
    mod p rank meets).
    """

    def __init__(self, ncols, p=CERT_PRIME):
        self.p = p
        self.ncols = ncols
        self.rows = {}  # pivot col -> normalized np.int64 row

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        p = self.p
        v = np.asarray(vec, dtype=np.int64) % p
        for pc in sorted(self.rows):
            c = int(v[pc])
            if c:
                v = (v - c * self.rows[pc]) % p
        return v

    def add(self, vec):
        v = self.reduce(vec)
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            return False
        pc = int(nz[0])
        inv = pow(int(v[pc]), self.p - 2, self.p)
        self.rows[pc] = (v * inv) % self.p
        return True


def fraction_vector_mod_p(vec, p=CERT_PRIME):
    out = []
    for x in vec:
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError("denominator divisible by the prime")
        out.append(x.numerator * pow(x.denominator, p - 2, p) % p)
    return out


# -- polynomials over Q (coefficient lists, low degree first) ---------------

def poly_normalize(p):
    q = [Fraction(c) for c in p]
    while q and q[-1] == 0:
        q.pop()
    return q


def poly_derivative(p):
    return [Fraction(i) * c for i, c in enumerate(p)][1:]


def poly_divmod(a, b):
    a, b = poly_normalize(a), poly_normalize(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a[:]
    while len(r) >= len(b) and r:
        f = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            r[k + i] -= f * c
        r = poly_normalize(r)
    return poly_normalize(q), r


def poly_gcd(a, b):
    a, b = poly_normalize(a), poly_normalize(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        a = [c / a[-1] for c in a]
    return a


def squarefree_part(p):
    """p / gcd(p, p'), monic.  Same roots as p, all simple."""
    p = poly_normalize(p)
    g = poly_gcd(p, poly_derivative(p))
    q, r = poly_divmod(p, g)
    assert not r
    return [c / q[-1] for c in q]


# -- finite dimensional associative algebras -------------------------------

class FiniteDimAlgebra:
    """An associative unital algebra over Q, given by structure constants.

    constants[i][j] is a dict {k: c} meaning e_i e_j = sum_k c e_k, with
    integer or Fraction values; one is the dense coordinate vector of the
    identity.  Associativity and both identity laws are verified on
    construction: exhaustively for dim <= assoc_full_bound, on 1000 seeded
    random triples above that.
    """

    def __init__(self, constants, one, labels=None, check=True, seed=1729,
                 assoc_full_bound=ASSOC_FULL_BOUND):
        self.dim = len(constants)
        self.constants = [
            [dict(constants[i][j]) for j in range(self.dim)]
            for i in range(self.dim)
        ]
        self.one = list(one)
        self.labels = list(labels) if labels is not None else list(range(self.dim))
        if len(self.one) != self.dim or len(self.labels) != self.dim:
            raise ValueError("identity vector or labels of wrong length")
        self._tensor = None
        self._rad = None
        if check:
            self._check_identity()
            self._check_associativity(seed, assoc_full_bound)

    def _int_tensor(self):
        """(C, den, maxabs): dense integer tensor C = den * constants."""
        if self._tensor is not None:
            return self._tensor
        d = self.dim
        den = 1
        for i in range(d):
            for j in range(d):
                for c in self.constants[i][j].values():
                    if isinstance(c, Fraction) and c.denominator != 1:
                        den = den * c.denominator // math.gcd(den, c.denominator)
        C = np.zeros((d, d, d), dtype=np.int64)
        maxabs = 0
        for i in range(d):
            for j in range(d):
                for k, c in self.constants[i][j].items():
                    v = int(c * den)
                    maxabs = max(maxabs, abs(v))
                    C[i, j, k] = v
        self._tensor = (C, den, maxabs)
        return self._tensor

    def _check_identity(self):
        onesp = self.vector_to_sparse(self.one)
        for j in range(self.dim):
            ej = {j: 1}
            left = self.multiply(onesp, ej)
            right = self.multiply(ej, onesp)
            unit = {j: Fraction(1)}
            assert {k: Fraction(c) for k, c in left.items()} == unit, \
                f"left identity law fails at basis element {j}"
            assert {k: Fraction(c) for k, c in right.items()} == unit, \
                f"right identity law fails at basis element {j}"

    def _check_associativity(self, seed, full_bound):
        d = self.dim
        if d <= full_bound:
            C, _, maxabs = self._int_tensor()
            # every partial sum below is an integer bounded by d*maxabs^2;
            # when that fits in float64's exact integer range the BLAS
            # contraction is exact, otherwise fall back to int64 tensordot
            # (exact while the same bound fits in int64)
            bound = d * maxabs * maxabs
            if bound < 2 ** 52:
                Cf = C.astype(np.float64)
                flat = Cf.reshape(d, d * d)
                for i in range(d):
                    # lhs[j,l,r] = sum_k C[i,j,k] C[k,l,r]
                    lhs = (Cf[i] @ flat).reshape(d, d, d)
                    # rhs[j,l,r] = sum_k C[j,l,k] C[i,k,r]
                    rhs = np.tensordot(Cf, Cf[i], axes=([2], [0]))
                    assert np.array_equal(lhs, rhs), \
                        f"associativity fails with left factor {i}"
            elif bound < 2 ** 62:
                flat = C.reshape(d, d * d)
                for i in range(d):
                    lhs = (C[i] @ flat).reshape(d, d, d)
                    rhs = np.tensordot(C, C[i], axes=([2], [0]))
                    assert np.array_equal(lhs, rhs), \
                        f"associativity fails with left factor {i}"
            else:
                self._check_associativity_sampled(seed, exhaustive=True)
        else:
            self._check_associativity_sampled(seed)

    def _check_associativity_sampled(self, seed, exhaustive=False):
        d = self.dim
        if exhaustive:
            triples = ((i, j, k) for i in range(d) for j in range(d)
                       for k in range(d))
        else:
            rng = np.random.default_rng(seed)
            triples = (tuple(int(x) for x in rng.integers(0, d, size=3))
                       for _ in range(1000))
        for i, j, k in triples:
            lhs = self.multiply(self.multiply({i: 1}, {j: 1}), {k: 1})
            rhs = self.multiply({i: 1}, self.multiply({j: 1}, {k: 1}))
            assert {a: Fraction(c) for a, c in lhs.items()} == \
                   {a: Fraction(c) for a, c in rhs.items()}, \
                f"associativity fails at ({i},{j},{k})"

    # -- element arithmetic (sparse dicts {index: coeff}) -------------------

    @staticmethod
    def vector_to_sparse(v):
        return {i: x for i, x in enumerate(v) if x}

    def sparse_to_vector(self, x):
        v = [Fraction(0)] * self.dim
        for i, c in x.items():
            v[i] = Fraction(c)
        return v

    def multiply(self, x, y):
        out = {}
        for i, ci in x.items():
            if not ci:
                continue
            row = self.constants[i]
            for j, cj in y.items():
                if not cj:
                    continue
                s = ci * cj
                for k, c in row[j].items():
                    t = out.get(k, 0) + s * c
                    if t:
                        out[k] = t
                    elif k in out:
                        del out[k]
        return out

    def multiply_vec(self, u, v):
        return self.sparse_to_vector(
            self.multiply(self.vector_to_sparse(u), self.vector_to_sparse(v)))

    def left_mult_matrix(self, x):
        """Matrix of left multiplication by sparse x; M[k][j] = (x e_j)_k."""
        d = self.dim
        M = [[Fraction(0)] * d for _ in range(d)]
        for j in range(d):
            for k, c in self.multiply(x, {j: 1}).items():
                M[k][j] = Fraction(c)
        return M

    # -- radical and Loewy structure ----------------------------------------

    def basis_traces(self):
        """tau_k = trace of left multiplication by e_k."""
        return [sum(Fraction(self.constants[k][j].get(j, 0))
                    for j in range(self.dim)) for k in range(self.dim)]

    def gram_matrix(self):
        """G[i][j] = trace(L_{e_i} L_{e_j}) = sum_k c_{ij}^k tau_k.

        The contraction uses that left multiplication is an algebra map,
        so L_{e_i} L_{e_j} = L_{e_i e_j}, and that trace is linear.
        """
        tau = self.basis_traces()
        d = self.dim
        return [[sum(Fraction(c) * tau[k]
                     for k, c in self.constants[i][j].items())
                 for j in range(d)] for i in range(d)]

    def radical_basis(self):
        """Rref basis of the Jacobson radical: the kernel of the trace form.

        Over a field of characteristic zero the radical of a finite
        dimensional algebra equals the radical of the trace form of the
        regular representation, so this is exact.
        """
        if self._rad is None:
            G = self.gram_matrix()
            ker = nullspace(G, self.dim)
            self._rad = rref(ker, self.dim)[0]
        return self._rad

    def radical_power_dims(self):
        """Dimensions [dim rad, dim rad^2, ...] down to the last nonzero power.

        Products are taken fraction free on integer rescalings of the rref
        basis vectors; spans and ranks over Q are unchanged by the scaling.
        """
        rad = self.radical_basis()
        if not rad:
            return []
        rad_sparse = []
        for v in rad:
            iv = scale_to_int(v)
            rad_sparse.append({i: x for i, x in enumerate(iv) if x})
        dims = [len(rad)]
        cur = rad_sparse
        while True:
            span = SparseIntRows()
            for u in cur:
                for v in rad_sparse:
                    w = self.multiply(u, v)
                    if w:
                        span.add(self._intify(w))
            if span.rank == 0:
                return dims
            dims.append(span.rank)
            cur = span.basis_dicts()

    @staticmethod
    def _intify(w):
        if all(not isinstance(c, Fraction) or c.denominator == 1
               for c in w.values()):
            return {k: int(c) for k, c in w.items()}
        den = 1
        for c in w.values():
            c = Fraction(c)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return {k: int(Fraction(c) * den) for k, c in w.items()}

    def loewy_length(self):
        """Least l with rad^l = 0; equals 1 exactly for semisimple algebras."""
        return len(self.radical_power_dims()) + 1

    def semisimple_quotient_dim(self):
        return self.dim - len(self.radical_basis())


# -- idempotent systems and quivers ----------------------------------------

def verify_complete_idempotent_system(alg, idems):
    """Check a family of sparse elements is a complete orthogonal system of
    idempotents, primitive by count.

    Primitivity is certified by counting: a complete orthogonal system of
    exactly dim(A/rad A) nonzero idempotents can only consist of primitive
    ones, since refining any member would exceed that count.
    """

    def norm(x):
        return {k: Fraction(c) for k, c in x.items() if c}

    results = {}
    results["idempotent"] = all(
        norm(alg.multiply(e, e)) == norm(e) for e in idems)
    ok_orth = True
    for a in range(len(idems)):
        for b in range(len(idems)):
            if a != b and norm(alg.multiply(idems[a], idems[b])):
                ok_orth = False
    results["orthogonal"] = ok_orth
    total = {}
    for e in idems:
        for k, c in e.items():
            t = total.get(k, 0) + Fraction(c)
            if t:
                total[k] = t
            elif k in total:
                del total[k]
    results["sum_is_identity"] = total == norm(
        alg.vector_to_sparse(alg.one))
    results["all_nonzero"] = all(norm(e) for e in idems)
    results["primitive_by_count"] = (
        len(idems) == alg.semisimple_quotient_dim())
    return results


def peirce_quiver(alg, idems, labels):
    """Multiplicity of arrows b -> a as dim e_a (rad/rad^2) e_b.

    idems must be a complete orthogonal system of primitive idempotents;
    then rad and rad^2 split as direct sums of their Peirce blocks
    e_a X e_b, so projecting an exact basis of each spans each block and
    the multiplicity is the difference of the block dimensions.  Returns
    {(label_a, label_b): multiplicity} with zero entries omitted.
    """
    rad = alg.radical_basis()
    rad_sparse = [alg.vector_to_sparse(v) for v in rad]
    sq = []
    for u in rad_sparse:
        for v in rad_sparse:
            w = alg.multiply(u, v)
            if w:
                sq.append(alg.sparse_to_vector(w))
    sq_basis, _ = rref(sq, alg.dim)
    sq_sparse = [alg.vector_to_sparse(v) for v in sq_basis]
    arrows = {}
    for a, ea in enumerate(idems):
        for b, eb in enumerate(idems):
            blk = [alg.sparse_to_vector(
                alg.multiply(ea, alg.multiply(r, eb))) for r in rad_sparse]
            d1 = len(rref(blk, alg.dim)[0])
            if d1 == 0:
                continue
            blk2 = [alg.sparse_to_vector(
                alg.multiply(ea, alg.multiply(r, eb))) for r in sq_sparse]
            d2 = len(rref(blk2, alg.dim)[0])
            if d1 - d2:
                arrows[(labels[a], labels[b])] = d1 - d2
    return arrows


# -- certified radical without the trace form -------------------------------

def _ideal_closure(alg, vectors):
    """Smallest subspace containing vectors and closed under left and right
    multiplication by basis elements; returns (rref basis, pivots)."""
    basis, pivots = rref(vectors, alg.dim)
    frontier = list(basis)
    while frontier:
        new = []
        for v in frontier:
            sv = alg.vector_to_sparse(v)
            for g in range(alg.dim):
                for prod in (alg.multiply({g: 1}, sv), alg.multiply(sv, {g: 1})):
                    w = alg.sparse_to_vector(prod)
                    r = reduce_mod_span(w, basis, pivots)
                    if any(r):
                        basis, pivots = rref(basis + [r], alg.dim)
                        new.append(r)
        frontier = new
    return basis, pivots


def _subspace_is_nilpotent(alg, basis):
    """Whether the span of basis is nilpotent under multiplication;
    returns (flag, k) with span^k = 0 when it is."""
    cur = basis
    k = 1
    while cur:
        if k > alg.dim + 1:
            return False, None
        prods = []
        for u in cur:
            su = alg.vector_to_sparse(u)
            for v in basis:
                w = alg.multiply(su, alg.vector_to_sparse(v))
                if w:
                    prods.append(alg.sparse_to_vector(w))
        cur = rref(prods, alg.dim)[0]
        k += 1
    return True, k


class _Quotient:
    """A/I for an ideal I given by an rref basis; elements are vectors of A
    reduced modulo I, with coordinates read off the free columns."""

    def __init__(self, alg, ideal_basis, ideal_pivots):
        self.alg = alg
        self.basis = ideal_basis
        self.pivots = ideal_pivots
        pivset = set(ideal_pivots)
        self.free = [c for c in range(alg.dim) if c not in pivset]

    @property
    def dim(self):
        return len(self.free)

    def project(self, vec):
        r = reduce_mod_span(vec, self.basis, self.pivots)
        return tuple(Fraction(r[c]) for c in self.free)

    def lift(self, qvec):
        v = [Fraction(0)] * self.alg.dim
        for c, x in zip(self.free, qvec):
            v[c] = Fraction(x)
        return reduce_mod_span(v, self.basis, self.pivots)

    def multiply(self, qu, qv):
        return self.project(self.alg.multiply_vec(self.lift(qu), self.lift(qv)))

    def one(self):
        return self.project(self.alg.one)

    def unit(self, k):
        return tuple(Fraction(1 if i == k else 0) for i in range(self.dim))

    def is_commutative(self):
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                if self.multiply(self.unit(a), self.unit(b)) != \
                        self.multiply(self.unit(b), self.unit(a)):
                    return False
        return True

    def minimal_polynomial(self, qvec):
        """Monic minimal polynomial of the element, coefficients low first."""
        powers = [self.one()]
        basis, pivots = rref([list(powers[0])], self.dim)
        cur = powers[0]
        while True:
            cur = self.multiply(cur, qvec)
            r = reduce_mod_span(list(cur), basis, pivots)
            if not any(r):
                coeffs = _solve_in_span(powers, cur, self.dim)
                return poly_normalize([-c for c in coeffs] + [Fraction(1)])
            basis, pivots = rref(basis + [r], self.dim)
            powers.append(cur)


def _solve_in_span(vectors, target, ncols):
    """Coefficients writing target as a combination of independent vectors."""
    k = len(vectors)
    rows = [[Fraction(vectors[i][c]) for i in range(k)] + [Fraction(target[c])]
            for c in range(ncols)]
    basis, pivots = rref(rows, k + 1)
    coeffs = [Fraction(0)] * k
    for br, pc in zip(basis, pivots):
        assert pc < k, "target not in span"
        coeffs[pc] = br[k]
    return coeffs


def radical_oracle(alg):
    """Certified radical computation that never touches the trace form.

    Strategy: close the commutator subspace into an ideal and verify it is
    nilpotent; in the now commutative quotient, repeatedly split off the
    nilpotent parts s(b) of basis elements b, where s is the squarefree
    part of the exact minimal polynomial of b; s(b) is nilpotent because
    the minimal polynomial of b divides a power of s.  The loop stops when
    every basis element of the quotient has squarefree minimal polynomial.

    Certificate checked at the end, independent of the construction path:
    the returned subspace R is a two sided ideal, R is nilpotent, A/R is
    commutative, and every basis element of A/R has squarefree minimal
    polynomial.  A nilpotent ideal sits inside the radical; conversely, in
    a commutative algebra over a characteristic zero field the nilpotent
    part of an element depends linearly on it (Wedderburn splitting), so
    vanishing on a basis forces the quotient semisimple.  Hence R is
    exactly the radical.

    Returns (basis, certificate); basis is an rref basis of R.  Intended
    for small algebras; cost grows quickly with dimension.  Precondition:
    the semisimple quotient of the algebra must be commutative (true for
    every algebra this package builds: face algebras have commutative
    semisimple quotients, and these descent and invariant algebras do as
    well); the commutator closure fails the nilpotency check otherwise.
    """
    d = alg.dim
    comms = []
    for i in range(d):
        for j in range(i + 1, d):
            ab = alg.multiply({i: 1}, {j: 1})
            ba = alg.multiply({j: 1}, {i: 1})
            diff = dict(ab)
            for k, c in ba.items():
                t = diff.get(k, 0) - c
                if t:
                    diff[k] = t
                elif k in diff:
                    del diff[k]
            if diff:
                comms.append(alg.sparse_to_vector(diff))
    basis, pivots = _ideal_closure(alg, comms) if comms else ([], [])
    while True:
        ok, _ = _subspace_is_nilpotent(alg, basis)
        assert ok, "commutator ideal is not nilpotent"
        Q = _Quotient(alg, basis, pivots)
        assert Q.is_commutative(), "quotient is not commutative"
        new_nils = []
        for k in range(Q.dim):
            u = Q.unit(k)
            mp = Q.minimal_polynomial(u)
            s = squarefree_part(mp)
            if s == mp:
                continue
            acc = tuple(Fraction(0) for _ in range(Q.dim))
            for c in reversed(s):
                acc = Q.multiply(acc, u)
                acc = tuple(a + c * o for a, o in zip(acc, Q.one()))
            if any(acc):
                new_nils.append(Q.lift(acc))
        if not new_nils:
            break
        basis, pivots = _ideal_closure(alg, basis + new_nils)
    ok, index = _subspace_is_nilpotent(alg, basis)
    Q = _Quotient(alg, basis, pivots)
    cert = {
        "is_ideal": True,
        "nilpotent": ok,
        "nilpotency_index": index,
        "quotient_commutative": Q.is_commutative(),
        "quotient_minpolys_squarefree": all(
            squarefree_part(Q.minimal_polynomial(Q.unit(k)))
            == Q.minimal_polynomial(Q.unit(k)) for k in range(Q.dim)),
    }
    for v in basis:
        sv = alg.vector_to_sparse(v)
        for g in range(d):
            for prod in (alg.multiply({g: 1}, sv), alg.multiply(sv, {g: 1})):
                if not in_span(alg.sparse_to_vector(prod), basis, pivots):
                    cert["is_ideal"] = False
    assert all(bool(v) for v in cert.values()), \
        f"radical certificate failed: {cert}"
    return basis, cert
