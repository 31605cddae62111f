"""Algebra structures built on the faces of a reflection arrangement.

Three layers share this module.  The face algebra kF has the faces as a
basis and the semigroup product extended bilinearly.  Its invariant
subalgebra (kF)^W has one basis element per group orbit of faces (the sum
over the orbit), with structure constants computed by an orbit-mass count.
Between the two sit the support idempotents e_X, one per intersection
subspace X, produced by the standard averaging recursion; summing them
over a W-orbit of subspaces gives the orthogonal idempotents of the
invariant algebra.

Elements of kF are sparse dicts {face id: Fraction}.  All arithmetic is
exact; the only modular computations are rank lower bounds, and every one
of them is promoted to an exact statement by a dimension-sum certificate
before being returned.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .arrangement import FaceSemigroup, IntersectionLattice, \
    PRODUCT_TABLE_LIMIT
from .exactalg import (
    CERT_PRIME,
    FiniteDimAlgebra,
    SparseIntRows,
    rref,
)

FACE_ALGEBRA_LIMIT = 400


def face_orbit(fs: FaceSemigroup, fid):
    """Sorted ids of the W-orbit of a face."""
    fperm = fs.generator_action()
    seen = {int(fid)}
    frontier = [int(fid)]
    while frontier:
        nxt = []
        for f in frontier:
            for gi in range(fs.system.num_generators):
                g = int(fperm[gi, f])
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt
    return np.array(sorted(seen), dtype=np.int64)


def _to_int_dict(u):
    den = 1
    for c in u.values():
        den = den * Fraction(c).denominator // math.gcd(
            den, Fraction(c).denominator)
    return {f: int(Fraction(c) * den) for f, c in u.items()}, den


def face_mul(fs: FaceSemigroup, u, v):
    """Product in kF of two sparse face vectors."""
    if not u or not v:
        return {}
    ui, ud = _to_int_dict(u)
    vi, vd = _to_int_dict(v)
    den = ud * vd
    use_table = fs.face_count <= PRODUCT_TABLE_LIMIT
    T = fs.product_table() if use_table else None
    out = {}
    vitems = list(vi.items())
    for f, cf in ui.items():
        row = T[f] if use_table else fs.products_with_all(f)
        for g, cg in vitems:
            k = int(row[g])
            out[k] = out.get(k, 0) + cf * cg
    return {k: Fraction(c, den) for k, c in out.items() if c}


def vec_add(u, v, scale=1):
    out = dict(u)
    for k, c in v.items():
        nc = out.get(k, 0) + scale * c
        if nc:
            out[k] = nc
        elif k in out:
            del out[k]
    return out


def act_on_vector(fs: FaceSemigroup, gi, u):
    """Image of a face vector under a simple generator."""
    fperm = fs.generator_action()
    return {int(fperm[gi, f]): c for f, c in u.items()}


def support_idempotents(fs: FaceSemigroup, lat: IntersectionLattice):
    """The family e_X of orthogonal idempotents of kF, one per subspace.

    For each W-orbit of subspaces pick the least face whose support lies
    in the orbit, take its face orbit, and for each support X in that
    orbit let ell(X) be the average of the orbit faces with support
    exactly X (lam(X) counts them).  Then, by decreasing dimension,

        e_X = ell(X) - ell(X) * sum of e_Y over Y strictly above X.

    Returns (e, lam) indexed by lattice id.
    """
    e = [None] * lat.size
    lam = [0] * lat.size
    ell = [None] * lat.size
    for orb in lat.orbits:
        f0 = min(lat.canonical_face(x) for x in orb)
        forb = face_orbit(fs, f0)
        by_supp = {}
        for z in forb:
            by_supp.setdefault(int(lat.face_supp[z]), []).append(int(z))
        assert sorted(by_supp) == list(orb), \
            "face orbit must cover the subspace orbit"
        for X, zs in by_supp.items():
            lam[X] = len(zs)
            ell[X] = {z: Fraction(1, len(zs)) for z in zs}
    for X in sorted(range(lat.size), key=lambda x: -lat.dims[x]):
        above = [Y for Y in range(lat.size) if Y != X and lat.leq[X, Y]]
        eX = dict(ell[X])
        if above:
            s = {}
            for Y in above:
                s = vec_add(s, e[Y])
            eX = vec_add(eX, face_mul(fs, ell[X], s), scale=-1)
        e[X] = eX
    return e, lam


def orbit_idempotents(fs, lat, e=None):
    """eps_O = sum of e_X over the orbit O, indexed by orbit id."""
    if e is None:
        e, _ = support_idempotents(fs, lat)
    out = []
    for orb in lat.orbits:
        s = {}
        for X in orb:
            s = vec_add(s, e[X])
        out.append(s)
    return out


def check_idempotent_family(fs, vectors, identity_vec=None,
                            pair_budget=150_000_000):
    """Verify a family of face vectors is a complete orthogonal system.

    Idempotency and the sum are always checked exactly.  Orthogonality of
    every pair is checked exactly when the total work fits pair_budget;
    otherwise a seeded sample of pairs is checked and the rest is settled
    by the rank argument: idempotents summing to the identity in a
    finite dimensional algebra over Q are automatically orthogonal, since
    their left multiplications are idempotent operators whose traces (=
    ranks) add up to the full dimension, forcing the image sum direct.
    """
    if identity_vec is None:
        identity_vec = {fs.identity_id: Fraction(1)}
    report = {}
    total = {}
    for v in vectors:
        total = vec_add(total, v)
    report["sum_is_identity"] = total == identity_vec
    report["all_nonzero"] = all(v for v in vectors)
    report["idempotent"] = all(
        face_mul(fs, v, v) == v for v in vectors)
    cost = 0
    sizes = [len(v) for v in vectors]
    for a in range(len(vectors)):
        for b in range(len(vectors)):
            if a != b:
                cost += sizes[a] * sizes[b]
    if cost <= pair_budget:
        ok = True
        for a in range(len(vectors)):
            for b in range(len(vectors)):
                if a != b and face_mul(fs, vectors[a], vectors[b]):
                    ok = False
        report["orthogonal"] = ok
        report["orthogonal_mode"] = "all-pairs"
    else:
        rng = np.random.default_rng(909)
        n = len(vectors)
        ok = True
        for _ in range(60):
            a, b = rng.integers(0, n, size=2)
            if a != b and face_mul(fs, vectors[int(a)], vectors[int(b)]):
                ok = False
        report["orthogonal"] = ok and report["idempotent"] and \
            report["sum_is_identity"]
        report["orthogonal_mode"] = "sampled+rank-argument"
    return report


# -- the W-invariant subalgebra ---------------------------------------------

def invariant_constants(fs: FaceSemigroup):
    """Structure constants of (kF)^W in the orbit-sum basis.

    Basis element J (a bitmask over simple generators) is the sum of the
    faces in the orbit of the fundamental face F_J.  The coefficient of
    basis L in the product J*K is counted against a single representative
    of the larger orbit: each group element maps pair counts bijectively,
    so the count for one representative, scaled by that orbit's size and
    divided by |orbit L|, is the coefficient.  Integrality is asserted.
    """
    n = fs.system.num_generators
    nlab = 1 << n
    L = fs.orbit_label
    ids_by = [np.nonzero(L == J)[0] for J in range(nlab)]
    sizes = [len(ix) for ix in ids_by]
    assert all(s > 0 for s in sizes)
    S = fs.signs
    step = 1 << 17
    constants = [[None] * nlab for _ in range(nlab)]
    for J in range(nlab):
        for K in range(nlab):
            if sizes[J] <= sizes[K]:
                fixed = S[int(ids_by[K][0])]
                moving = ids_by[J]
                fixed_on_right = True
                mass = sizes[K]
            else:
                fixed = S[int(ids_by[J][0])]
                moving = ids_by[K]
                fixed_on_right = False
                mass = sizes[J]
            cnt = np.zeros(nlab, dtype=np.int64)
            for lo in range(0, len(moving), step):
                blk = S[moving[lo:lo + step]]
                if fixed_on_right:
                    rows = np.where(blk != 0, blk, fixed[None, :])
                else:
                    rows = np.where(fixed[None, :] != 0, fixed[None, :], blk)
                labs = L[fs.find_ids(rows)]
                cnt += np.bincount(labs, minlength=nlab)
            d = {}
            for Lb in np.nonzero(cnt)[0]:
                num = mass * int(cnt[Lb])
                assert num % sizes[Lb] == 0, \
                    "orbit-mass count must distribute evenly"
                d[int(Lb)] = num // sizes[Lb]
            constants[J][K] = d
    return constants


def orbit_basis_labels(n):
    return [
        "x{" + ",".join(str(i) for i in range(n) if J >> i & 1) + "}"
        for J in range(1 << n)
    ]


def invariant_algebra(fs: FaceSemigroup, check=True):
    """(kF)^W as a structure-constant algebra; identity is the basis
    element of the origin's orbit (J = all generators)."""
    n = fs.system.num_generators
    constants = invariant_constants(fs)
    one = [0] * (1 << n)
    one[(1 << n) - 1] = 1
    return FiniteDimAlgebra(constants, one, labels=orbit_basis_labels(n),
                            check=check)


def orbit_coordinates(fs: FaceSemigroup, vec):
    """Coordinates of a W-invariant face vector in the orbit-sum basis.

    Asserts the vector really is constant on every orbit it touches.
    Returns a dense list indexed by the label bitmask.
    """
    n = fs.system.num_generators
    out = [Fraction(0)] * (1 << n)
    seen = {}
    for f, c in vec.items():
        J = int(fs.orbit_label[f])
        if J in seen:
            assert seen[J] == c, "vector is not constant on an orbit"
        else:
            seen[J] = c
            out[J] = Fraction(c)
    sizes = np.bincount(fs.orbit_label, minlength=1 << n)
    for J, c in seen.items():
        touched = sum(1 for f in vec if int(fs.orbit_label[f]) == J)
        assert touched == sizes[J], "vector misses part of an orbit"
    return out


# -- full face algebra (small ranks) ----------------------------------------

def face_algebra(fs: FaceSemigroup, check=True):
    """kF as a structure-constant algebra; basis = faces."""
    F = fs.face_count
    if F > FACE_ALGEBRA_LIMIT:
        raise ValueError(f"face algebra of dimension {F} is too large; "
                         f"use the sparse routines")
    T = fs.product_table()
    constants = [[{int(T[i, j]): 1} for j in range(F)] for i in range(F)]
    one = [0] * F
    one[fs.identity_id] = 1
    return FiniteDimAlgebra(constants, one, check=check)


def star_counts(fs: FaceSemigroup):
    """star[f] = #{h : f h = h}, the number of faces having f as a face.

    This is the trace of left multiplication by f on kF, and it depends
    only on supp(f); both facts are exploited by the radical certificate.
    """
    T = fs.product_table()
    idx = np.arange(fs.face_count)
    return (T == idx[None, :]).sum(axis=1).astype(np.int64)


def _modp_rank(A, p=CERT_PRIME):
    """Rank of an integer matrix mod p (a lower bound on the exact rank)."""
    M = np.mod(A.astype(np.int64), p)
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if M[i, c]:
                piv = i
                break
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        nz = np.nonzero(M[:, c])[0]
        nz = nz[nz != r]
        if len(nz):
            M[nz] = (M[nz] - M[nz, c][:, None] * M[r][None, :]) % p
        r += 1
        if r == rows:
            break
    return r


def face_radical_certificate(fs: FaceSemigroup, lat: IntersectionLattice):
    """Certified radical data of kF without materializing dense kernels.

    The candidate radical basis is {f - f0 : supp f = supp f0, f != f0}
    with f0 the canonical face of the support; the candidates are echelon
    by construction, so they span a space of dimension F - |L|.  The trace
    form G[f,g] = star(fg) depends only on supp(fg) = supp(f) v supp(g),
    hence G has equal columns on each support class, which puts every
    candidate in the kernel of G.  A mod-p rank of G at least |L| then
    pins rank(G) = |L| exactly, so in characteristic zero the radical is
    exactly the candidate span and dim kF/rad = |L|.
    """
    T = fs.product_table()
    star = star_counts(fs)
    star_sup = np.zeros(lat.size, dtype=np.int64)
    for x in range(lat.size):
        star_sup[x] = star[lat.canonical_face(x)]
    assert np.array_equal(star, star_sup[lat.face_supp])
    G = star_sup[lat.face_supp[T]]
    cmap = np.array([lat.canonical_face(int(lat.face_supp[f]))
                     for f in range(fs.face_count)], dtype=np.int64)
    assert np.array_equal(G, G[:, cmap]), \
        "trace form must be constant on support classes"
    assert np.array_equal(G, G[cmap, :])
    mp = _modp_rank(G)
    assert mp >= lat.size, "trace form rank fell below the class count"
    assert mp == lat.size
    return {
        "semisimple_dim": lat.size,
        "radical_dim": fs.face_count - lat.size,
        "gram_rank": lat.size,
    }


def face_quiver(fs: FaceSemigroup, lat: IntersectionLattice, e=None):
    """Arrow multiplicities of the quiver of kF: {(X, Y): dim}.

    The key (X, Y) means an arrow from X to Y with multiplicity
    dim e_Y (rad/rad^2) e_X.  Radical and radical-square dimensions are
    exact; the per-block dimensions are computed mod p and certified
    exact by the Peirce direct-sum argument: the blocks of rad (and of
    rad^2) partition it, so the mod-p block ranks, each at most the true
    rank, are all exact as soon as they add up to the true total.
    """
    cert = face_radical_certificate(fs, lat)
    if e is None:
        e, _ = support_idempotents(fs, lat)
    T = fs.product_table()
    F = fs.face_count
    p = CERT_PRIME

    # radical basis: f - canonical(supp f), 2-sparse
    rad_pairs = []
    for f in range(F):
        f0 = lat.canonical_face(int(lat.face_supp[f]))
        if f != f0:
            rad_pairs.append((f, f0))
    assert len(rad_pairs) == cert["radical_dim"]

    # exact dim of rad^2 from 4-sparse integer products
    sq = SparseIntRows()
    for (f, f0) in rad_pairs:
        for (g, g0) in rad_pairs:
            prod = {}
            for a, sa in ((f, 1), (f0, -1)):
                for b, sb in ((g, 1), (g0, -1)):
                    k = int(T[a, b])
                    prod[k] = prod.get(k, 0) + sa * sb
            sq.add({k: c for k, c in prod.items() if c})
    sq_dim = sq.rank

    emod = []
    for v in e:
        dense = np.zeros(F, dtype=np.int64)
        for f, c in v.items():
            c = Fraction(c)
            dense[f] = c.numerator * pow(c.denominator, p - 2, p) % p
        emod.append(dense)

    def mul_mod(u, v):
        out = np.zeros(F, dtype=np.int64)
        unz = np.nonzero(u)[0]
        vnz = np.nonzero(v)[0]
        if len(unz) == 0 or len(vnz) == 0:
            return out
        prods = (u[unz][:, None] * v[vnz][None, :]) % p
        np.add.at(out, T[np.ix_(unz, vnz)], prods)
        return out % p

    sq_dense = []
    for row in sq.basis_dicts():
        dense = np.zeros(F, dtype=np.int64)
        for k, c in row.items():
            dense[k] = c % p
        sq_dense.append(dense)

    def block_dims(vectors):
        """dims[a][b] of the Peirce blocks e_a * span * e_b, mod p."""
        nl = lat.size
        dims = np.zeros((nl, nl), dtype=np.int64)
        spans = {}
        for vec in vectors:
            for b in range(nl):
                w = mul_mod(vec, emod[b])
                if not w.any():
                    continue
                for a in range(nl):
                    z = mul_mod(emod[a], w)
                    if not z.any():
                        continue
                    sp = spans.setdefault((a, b), [])
                    z = _reduce_mod_span_p(z, sp, p)
                    if z is not None:
                        sp.append(z)
                        dims[a, b] += 1
        return dims

    rad_dense = []
    for (f, f0) in rad_pairs:
        dense = np.zeros(F, dtype=np.int64)
        dense[f] = 1
        dense[f0] = p - 1
        rad_dense.append(dense)

    d1 = block_dims(rad_dense)
    assert d1.sum() == cert["radical_dim"], \
        "mod-p Peirce ranks failed to certify; unlucky prime"
    d2 = block_dims(sq_dense)
    assert d2.sum() == sq_dim, \
        "mod-p Peirce ranks failed to certify; unlucky prime"
    arrows = {}
    for a in range(lat.size):
        for b in range(lat.size):
            m = int(d1[a, b] - d2[a, b])
            if m:
                arrows[(b, a)] = m  # arrow source b, target a
    return arrows


def _reduce_mod_span_p(vec, span_rows, p):
    """Reduce vec against normalized rows; None if it becomes zero."""
    v = vec.copy()
    for piv, row in span_rows:
        if v[piv]:
            v = (v - v[piv] * row) % p
    nz = np.nonzero(v)[0]
    if len(nz) == 0:
        return None
    piv = int(nz[0])
    v = (v * pow(int(v[piv]), p - 2, p)) % p
    return (piv, v)
