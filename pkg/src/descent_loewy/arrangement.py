"""Faces and intersection lattice of a reflection arrangement.

The arrangement of a Coxeter system is the set of reflecting hyperplanes,
one per positive root.  A face is encoded by its sign vector: for each
hyperplane the sign of <normal, p> at any point p of the face's relative
interior.  The face semigroup product is sign composition,

    sigma_H(xy) = sigma_H(x) if nonzero else sigma_H(y),

which makes the face set a left regular band.  Faces are enumerated as
group orbits of the fundamental faces F_J (one per subset J of the simple
generators), which also records, for every face, an exact rational point
in its relative interior via the orbit genealogy.

Sign vectors are deduplicated through exact injective keys (base 3 digit
packing; two int64 limbs compared bytewise when one does not suffice), so
equality of faces is never a hash comparison.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .coxeter import (
    CoxeterSystem,
    act,
    build_coxeter_system,
    dot,
    group_order,
    parabolic_subgroup_order,
)

SINGLE_KEY_LIMIT = 39  # 3^39 < 2^63; beyond this keys use two limbs
POINT_STORE_LIMIT = 20_000_000  # max faces * ambient entries kept in memory
PRODUCT_TABLE_LIMIT = 2048
SAMPLE_VERIFY_COUNT = 1000


def sign_int(x):
    return (x > 0) - (x < 0)


def expected_face_count(family, rank):
    """Number of faces as the sum over J of the index [W : W_J].

    Faces decompose into the orbits of the fundamental faces F_J, and the
    stabilizer of F_J is the standard parabolic subgroup W_J.
    """
    order = group_order(family, rank)
    n_gens = rank
    total = 0
    for mask in range(1 << n_gens):
        J = tuple(j for j in range(n_gens) if mask >> j & 1)
        sub = parabolic_subgroup_order(family, rank, J)
        assert order % sub == 0
        total += order // sub
    return total


class FaceSemigroup:
    """All faces of the reflection arrangement of a Coxeter system.

    Faces are indexed 0..F-1 in increasing key order (a fixed deterministic
    order).  Face i has sign vector signs[i], lies in the orbit of the
    fundamental face F_J for J = orbit_label[i], and an exact interior
    point is recoverable through the parent/parent_gen genealogy.
    """

    def __init__(self, system: CoxeterSystem, verify=True, seed=20250819):
        self.system = system
        self.normals = system.positive_roots
        self.m = len(self.normals)
        if self.m >= 63:
            raise ValueError("support masks need one bit per hyperplane")
        self._build_hyperplane_action()
        self._enumerate(seed)
        self._fperm = None
        self._table = None
        self._supports = None
        if verify:
            self._verify(seed)

    # -- construction -------------------------------------------------------

    def _build_hyperplane_action(self):
        sys = self.system
        ridx = {r: i for i, r in enumerate(self.normals)}
        ns = sys.num_generators
        gperm = np.zeros((ns, self.m), dtype=np.int64)
        gflip = np.zeros((ns, self.m), dtype=np.int8)
        for gi, g in enumerate(sys.generators):
            for hi, r in enumerate(self.normals):
                gr = act(g, r)
                if gr in ridx:
                    gperm[gi, hi] = ridx[gr]
                    gflip[gi, hi] = 1
                else:
                    neg = tuple(-x for x in gr)
                    gperm[gi, hi] = ridx[neg]
                    gflip[gi, hi] = -1
        self.gperm = gperm
        self.gflip = gflip

    def pack_keys(self, rows):
        """Injective key per sign vector.  rows: (k, m) int8 in {-1,0,1}.

        Up to 39 hyperplanes the base 3 value fits one int64; above that
        the digit string is split into two int64 limbs viewed as 16 raw
        bytes, compared bytewise.  Both forms are exact and collision free.
        """
        T = (rows + 1).astype(np.int64)
        if self.m <= SINGLE_KEY_LIMIT:
            pw = 3 ** np.arange(self.m - 1, -1, -1, dtype=np.int64)
            return T @ pw
        h = self.m // 2
        pw1 = 3 ** np.arange(h - 1, -1, -1, dtype=np.int64)
        pw2 = 3 ** np.arange(self.m - h - 1, -1, -1, dtype=np.int64)
        pair = np.stack([T[:, :h] @ pw1, T[:, h:] @ pw2], axis=1)
        return np.ascontiguousarray(pair).view(
            np.dtype((np.void, 16))).ravel()

    def _scaled_seed_point(self, Jbits):
        """2 * sum of fundamental coweights outside J: integer coordinates."""
        sys = self.system
        p = [Fraction(0)] * sys.ambient
        for i in range(sys.num_generators):
            if not (Jbits >> i & 1):
                cw = sys.fundamental_coweights[i]
                p = [a + b for a, b in zip(p, cw)]
        scaled = [2 * x for x in p]
        assert all(x.denominator == 1 for x in map(Fraction, scaled))
        return tuple(int(x) for x in scaled)

    def _enumerate(self, seed):
        sys = self.system
        ns = sys.num_generators
        normals = np.array(self.normals, dtype=np.int64)
        sign_chunks = []
        label_chunks = []
        parent_chunks = []
        pgen_chunks = []
        key_set = set()
        count = 0
        seeds = {}
        for Jbits in range(1 << ns):
            pt = self._scaled_seed_point(Jbits)
            seeds[Jbits] = pt
            sv = np.sign(normals @ np.array(pt, dtype=np.int64)).astype(np.int8)
            row = sv[None, :]
            k0 = self._key_scalar(self.pack_keys(row)[0])
            if k0 in key_set:
                raise RuntimeError("fundamental face orbits must be disjoint")
            key_set.add(k0)
            sid = count
            sign_chunks.append(row)
            label_chunks.append(np.array([Jbits], dtype=np.int32))
            parent_chunks.append(np.array([-1], dtype=np.int64))
            pgen_chunks.append(np.array([-1], dtype=np.int8))
            count += 1
            frontier = row
            frontier_ids = np.array([sid], dtype=np.int64)
            while len(frontier):
                cands = []
                for gi in range(ns):
                    cands.append(frontier[:, self.gperm[gi]] * self.gflip[gi])
                C = np.concatenate(cands)
                par = np.tile(frontier_ids, ns)
                pg = np.repeat(np.arange(ns, dtype=np.int8), len(frontier))
                K = self.pack_keys(C)
                uK, idx = np.unique(K, return_index=True)
                C, par, pg = C[idx], par[idx], pg[idx]
                new_mask = np.fromiter(
                    (self._key_scalar(k) not in key_set for k in uK),
                    dtype=bool, count=len(uK))
                C, par, pg = C[new_mask], par[new_mask], pg[new_mask]
                for k in uK[new_mask]:
                    key_set.add(self._key_scalar(k))
                if len(C):
                    ids = np.arange(count, count + len(C), dtype=np.int64)
                    count += len(C)
                    sign_chunks.append(C)
                    label_chunks.append(
                        np.full(len(C), Jbits, dtype=np.int32))
                    parent_chunks.append(par)
                    pgen_chunks.append(pg)
                    frontier = C
                    frontier_ids = ids
                else:
                    frontier = C
        S = np.concatenate(sign_chunks)
        L = np.concatenate(label_chunks)
        P = np.concatenate(parent_chunks)
        G = np.concatenate(pgen_chunks)
        keys = self.pack_keys(S)
        order = np.argsort(keys, kind="stable")
        rankpos = np.empty(len(order), dtype=np.int64)
        rankpos[order] = np.arange(len(order))
        self.signs = np.ascontiguousarray(S[order])
        self.orbit_label = L[order]
        self.keys = keys[order]
        self.parent = np.where(P[order] >= 0, rankpos[P[order]], -1)
        self.parent_gen = G[order]
        self.seed_points = seeds
        self.face_count = len(self.signs)
        ident = np.nonzero((self.signs == 0).all(axis=1))[0]
        assert len(ident) == 1, "exactly one face must lie on every hyperplane"
        self.identity_id = int(ident[0])

    @staticmethod
    def _key_scalar(k):
        return k.tobytes() if isinstance(k, np.void) else int(k)

    def _verify(self, seed):
        fam, rank = self.system.family, self.system.rank
        assert self.face_count == expected_face_count(fam, rank), \
            "face count disagrees with the parabolic index sum"
        if isinstance(self.keys[0], np.void):
            assert len(np.unique(self.keys)) == self.face_count
        else:
            assert np.all(np.diff(self.keys) > 0), "keys must be strictly sorted"
        counts = np.bincount(self.orbit_label,
                             minlength=1 << self.system.num_generators)
        order = self.system.order
        for Jbits, c in enumerate(counts):
            J = tuple(j for j in range(self.system.num_generators)
                      if Jbits >> j & 1)
            assert c == order // parabolic_subgroup_order(fam, rank, J), \
                f"orbit of fundamental face {Jbits} has wrong size"
        # interior points realize the stored sign vectors: all faces when
        # points fit in memory, a seeded sample otherwise
        if self.face_count * self.system.ambient <= POINT_STORE_LIMIT:
            pts = self._all_points_scaled()
            normals = np.array(self.normals, dtype=np.int64)
            step = 1 << 18
            for lo in range(0, self.face_count, step):
                block = np.sign(pts[lo:lo + step] @ normals.T).astype(np.int8)
                assert np.array_equal(block, self.signs[lo:lo + step]), \
                    "sample points do not realize the sign vectors"
        else:
            rng = np.random.default_rng(seed)
            for fid in rng.integers(0, self.face_count,
                                    size=SAMPLE_VERIFY_COUNT):
                self.sample_point(int(fid))  # asserts internally

    def _all_points_scaled(self):
        """Interior points (doubled to be integral) for every face, by
        transporting each seed along the orbit genealogy."""
        sys = self.system
        pts = np.zeros((self.face_count, sys.ambient), dtype=np.int64)
        done = np.zeros(self.face_count, dtype=bool)
        gen_images = [g.images for g in sys.generators]
        # after the key sort parents need not precede children, so walk
        # each ancestry chain up to a resolved node and unwind
        for fid in range(self.face_count):
            if done[fid]:
                continue
            chain = []
            cur = fid
            while cur >= 0 and not done[cur]:
                chain.append(cur)
                cur = int(self.parent[cur])
            if cur < 0:
                base = chain.pop()
                pts[base] = self.seed_points[int(self.orbit_label[base])]
                done[base] = True
                cur = base
            while chain:
                nxt = chain.pop()
                g = gen_images[int(self.parent_gen[nxt])]
                pts[nxt] = act(g, tuple(int(x) for x in pts[cur]))
                done[nxt] = True
                cur = nxt
        return pts

    # -- basic access --------------------------------------------------------

    def find_ids(self, rows):
        """Face ids of the given sign vectors; asserts all are present."""
        K = self.pack_keys(rows)
        pos = np.searchsorted(self.keys, K)
        assert np.all(pos < self.face_count) and \
            np.all(self.keys[pos] == K), "sign vector is not a face"
        return pos

    def sample_point(self, fid, scaled=False):
        """Exact point in the relative interior of face fid.

        Reconstructed by transporting the fundamental seed point along the
        genealogy; the resulting sign vector is asserted to match.
        """
        chain = []
        cur = int(fid)
        while self.parent[cur] >= 0:
            chain.append(cur)
            cur = int(self.parent[cur])
        pt = self.seed_points[int(self.orbit_label[cur])]
        gen_images = [g.images for g in self.system.generators]
        for node in reversed(chain):
            pt = act(gen_images[int(self.parent_gen[node])], pt)
        sv = [sign_int(dot(r, pt)) for r in self.normals]
        assert sv == list(self.signs[fid]), "genealogy point mismatch"
        if scaled:
            return pt
        return tuple(Fraction(x, 2) for x in pt)

    def product_ids(self, i, j):
        """Id of the face product: signs of i where nonzero, else of j."""
        si = self.signs[i]
        row = np.where(si != 0, si, self.signs[j])
        return int(self.find_ids(row[None, :])[0])

    def products_with_all(self, i):
        """Ids of (face i) * (every face), vectorized."""
        si = self.signs[i]
        P = np.where(si[None, :] != 0, si[None, :], self.signs)
        return self.find_ids(P)

    def product_table(self):
        """Full product table (F, F) int32; only for small face counts."""
        if self._table is None:
            if self.face_count > PRODUCT_TABLE_LIMIT:
                raise ValueError(
                    f"product table over {self.face_count} faces is too "
                    f"large; use products_with_all")
            T = np.zeros((self.face_count, self.face_count), dtype=np.int32)
            for i in range(self.face_count):
                T[i] = self.products_with_all(i)
            self._table = T
        return self._table

    def generator_action(self):
        """fperm[g, f] = id of the face obtained by acting with generator g."""
        if self._fperm is None:
            ns = self.system.num_generators
            fperm = np.zeros((ns, self.face_count), dtype=np.int64)
            for gi in range(ns):
                C = self.signs[:, self.gperm[gi]] * self.gflip[gi]
                fperm[gi] = self.find_ids(C)
            self._fperm = fperm
        return self._fperm

    def act_word_on_face(self, word, fid):
        """Apply the group element with the given reduced word (generator
        indices, leftmost factor first) to a face."""
        fperm = self.generator_action()
        cur = int(fid)
        for gi in reversed(word):
            cur = int(fperm[gi, cur])
        return cur

    def support_masks(self):
        """Zero set of each face as a bitmask over hyperplanes."""
        if self._supports is None:
            pw = (np.int64(1) << np.arange(self.m, dtype=np.int64))
            out = np.empty(self.face_count, dtype=np.int64)
            step = 1 << 18
            for lo in range(0, self.face_count, step):
                bits = (self.signs[lo:lo + step] == 0).astype(np.int64)
                out[lo:lo + step] = bits @ pw
            self._supports = out
        return self._supports

    def chamber_ids(self):
        return np.nonzero(self.orbit_label == 0)[0]

    def check_product_geometry(self, pairs):
        """Cross-check products against geometry on the given (i, j) pairs.

        For each pair, p = p_i + eps * p_j with a provably small exact eps
        lies in the relative interior of the product face; its sign vector
        is recomputed from scratch and compared with the sign composition
        rule.  Returns the number of pairs checked.
        """
        for i, j in pairs:
            pi = self.sample_point(i)
            pj = self.sample_point(j)
            dots_i = [dot(r, pi) for r in self.normals]
            dots_j = [dot(r, pj) for r in self.normals]
            nz = [abs(d) for d, s in zip(dots_i, self.signs[i]) if s != 0]
            if nz:
                eps = min(nz) / (1 + max(abs(d) for d in dots_j))
            else:
                eps = Fraction(1)
            p = tuple(a + eps * b for a, b in zip(pi, pj))
            sv = [sign_int(dot(r, p)) for r in self.normals]
            expected = np.where(self.signs[i] != 0, self.signs[i],
                                self.signs[j])
            assert sv == list(expected), f"geometry mismatch for pair {(i, j)}"
            assert self.product_ids(i, j) == int(self.find_ids(
                np.array(sv, dtype=np.int8)[None, :])[0])
        return len(pairs)


class IntersectionLattice:
    """Supports of faces ordered by inclusion of subspaces.

    Element x is stored as the bitmask of hyperplanes containing it; the
    partial order is x <= y iff the zero set of x contains that of y (x is
    a subspace of y).  Elements are indexed by (number of containing
    hyperplanes, mask), so the full ambient space has index 0.
    """

    def __init__(self, faces: FaceSemigroup):
        self.faces = faces
        supp = faces.support_masks()
        uniq = sorted(set(int(z) for z in supp),
                      key=lambda z: (bin(z).count("1"), z))
        self.masks = uniq
        self.index = {z: i for i, z in enumerate(uniq)}
        self.face_supp = np.array([self.index[int(z)] for z in supp],
                                  dtype=np.int32)
        self._compute_bases()
        self.size = len(self.masks)
        self.leq = self._order_matrix()
        self.covers = self._cover_pairs()
        self._orbits()
        self._canonical_face = None

    def _compute_bases(self):
        from .exactalg import nullspace, rref
        N = self.faces.system.ambient
        self.bases = []
        self.dims = []
        for z in self.masks:
            rows = [self.faces.normals[i] for i in range(self.faces.m)
                    if z >> i & 1]
            if rows:
                ker = nullspace(rows, N)
            else:
                ker = [[Fraction(int(i == j)) for j in range(N)]
                       for i in range(N)]
            kb, _ = rref(ker, N)
            self.bases.append(kb)
            self.dims.append(len(kb))

    def _order_matrix(self):
        masks = np.array(self.masks, dtype=np.int64)
        return (masks[:, None] & masks[None, :]) == masks[None, :]

    def _cover_pairs(self):
        """(lower, upper) pairs with dim(upper) = dim(lower) + 1.

        The lattice is graded by dimension, so inclusion with dimension gap
        one is exactly the cover relation.
        """
        covers = []
        dims = self.dims
        for a in range(self.size):
            for b in range(self.size):
                if a != b and self.leq[a, b] and dims[a] + 1 == dims[b]:
                    covers.append((a, b))
        return covers

    def act_generator(self, gi, x):
        z = self.masks[x]
        gp = self.faces.gperm[gi]
        nz = 0
        for i in range(self.faces.m):
            if z >> i & 1:
                nz |= 1 << int(gp[i])
        return self.index[nz]

    def act_word(self, word, x):
        cur = x
        for gi in reversed(word):
            cur = self.act_generator(gi, cur)
        return cur

    def _orbits(self):
        nl = self.size
        ns = self.faces.system.num_generators
        orbit_id = [-1] * nl
        orbits = []
        for x in range(nl):
            if orbit_id[x] >= 0:
                continue
            oid = len(orbits)
            mem = [x]
            orbit_id[x] = oid
            q = [x]
            while q:
                nq = []
                for y in q:
                    for gi in range(ns):
                        z = self.act_generator(gi, y)
                        if orbit_id[z] < 0:
                            orbit_id[z] = oid
                            mem.append(z)
                            nq.append(z)
                q = nq
            orbits.append(sorted(mem))
        self.orbit_id = np.array(orbit_id, dtype=np.int32)
        self.orbits = orbits

    @property
    def top_id(self):
        return self.index[0]

    def join(self, x, y):
        """Smallest upper bound; for supports, supp(fg) = supp(f) v supp(g)."""
        return self.index[self.masks[x] & self.masks[y]]

    def canonical_face(self, x):
        """Least face id with support x (deterministic representative)."""
        if self._canonical_face is None:
            first = np.full(self.size, -1, dtype=np.int64)
            for fid in range(self.faces.face_count - 1, -1, -1):
                first[self.face_supp[fid]] = fid
            self._canonical_face = first
        return int(self._canonical_face[x])

    # -- block structure of lattice elements (types B and D) ---------------

    def signed_blocks(self, x):
        """Blocks and central part of a type B or D lattice element.

        Returns (blocks, central): central is a tuple of coordinates forced
        to zero; each block is a tuple of nonzero signed letters (i or -i,
        1-based) sharing one coordinate value up to the signs, normalized
        so its smallest letter is positive, blocks sorted by that letter.
        Type A returns the unsigned partition blocks with empty central.
        """
        sys = self.faces.system
        n = sys.ambient
        parent = list(range(n))
        rel = [1] * n  # x_k = rel[k] * x_parent[k] along the forest
        central = set()

        def find_simple(a):
            sgn = 1
            while parent[a] != a:
                sgn *= rel[a]
                a = parent[a]
            return a, sgn

        def union(a, b, s):
            ra, sa = find_simple(a)
            rb, sb = find_simple(b)
            if ra == rb:
                if sa * sb != s:
                    central.add(ra)
                return
            parent[rb] = ra
            rel[rb] = sa * s * sb

        z = self.masks[x]
        for i in range(self.faces.m):
            if not (z >> i & 1):
                continue
            r = self.faces.normals[i]
            nz = [(k, r[k]) for k in range(n) if r[k] != 0]
            if len(nz) == 1:
                central.add(find_simple(nz[0][0])[0])
            else:
                (a, ca), (b, cb) = nz
                # c_a x_a + c_b x_b = 0  =>  x_a = -(c_b/c_a) x_b
                union(a, b, -1 if ca == cb else 1)
        groups = {}
        for k in range(n):
            root, sgn = find_simple(k)
            groups.setdefault(root, []).append((k, sgn))
        central_roots = {find_simple(c)[0] for c in central}
        blocks = []
        central_coords = []
        for root, members in groups.items():
            if root in central_roots:
                central_coords.extend(k for k, _ in members)
            else:
                lead_sign = min(members)[1]
                letters = [(k + 1) * s * lead_sign for k, s in members]
                blocks.append(tuple(sorted(letters, key=abs)))
        blocks.sort(key=lambda b: abs(b[0]))
        return tuple(blocks), tuple(sorted(central_coords))

    def shape(self, x):
        """(sorted block sizes descending, central size in coordinates)."""
        blocks, central = self.signed_blocks(x)
        return (tuple(sorted((len(b) for b in blocks), reverse=True)),
                len(central))

    def even_odd(self, x):
        """Counts of even and odd sized non-central blocks."""
        blocks, _ = self.signed_blocks(x)
        even = sum(1 for b in blocks if len(b) % 2 == 0)
        return even, len(blocks) - even

    def canonical_block_vectors(self, x):
        """One vector per block: sum of signed standard basis vectors.

        These span the lattice element (for types B and D, where blocks
        determine the subspace).
        """
        n = self.faces.system.ambient
        blocks, _ = self.signed_blocks(x)
        out = []
        for b in blocks:
            v = [0] * n
            for letter in b:
                v[abs(letter) - 1] = 1 if letter > 0 else -1
            out.append(tuple(v))
        return out


def build_face_semigroup(family, rank, cap=None, verify=True):
    return FaceSemigroup(build_coxeter_system(family, rank, cap=cap),
                         verify=verify)
