"""Finite Coxeter groups of types A, B, D realized as signed permutation groups.

Elements are signed permutations of {±1, ..., ±N}: bijections w with
w(-i) = -w(i), stored as the tuple of images of 1..N.  Type A_n uses
N = n + 1 letters and no signs; types B_n and D_n use N = n with signs,
type D restricted to an even number of negated letters.

The group is enumerated by breadth-first closure over the simple
generators, which also yields Coxeter lengths (Cayley graph distance),
right multiplication tables, and right descent sets.  Enumeration is
refused above a configurable element cap.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

DEFAULT_CAP = 400_000

FAMILIES = ("A", "B", "D")


class GroupTooLargeError(RuntimeError):
    """Raised when an operation needs the full group but |W| exceeds the cap."""


def _compose(u, w):
    """Composite u after w on signed letters: (u*w)(i) = u(w(i))."""
    out = []
    for i in range(len(w)):
        wi = w[i]
        out.append(u[wi - 1] if wi > 0 else -u[-wi - 1])
    return tuple(out)


def _inverse(w):
    out = [0] * len(w)
    for i, wi in enumerate(w):
        if wi > 0:
            out[wi - 1] = i + 1
        else:
            out[-wi - 1] = -(i + 1)
    return tuple(out)


@dataclass(frozen=True)
class SignedPermutation:
    """A bijection w of {±1..±N} with w(-i) = -w(i), stored by images of 1..N."""

    images: tuple

    def __post_init__(self):
        seen = {abs(x) for x in self.images}
        if seen != set(range(1, len(self.images) + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        if i == 0 or abs(i) > self.n:
            raise ValueError(f"letter {i} out of range")
        return self.images[i - 1] if i > 0 else -self.images[-i - 1]

    def compose(self, other):
        """self after other."""
        return SignedPermutation(_compose(self.images, other.images))

    def inverse(self):
        return SignedPermutation(_inverse(self.images))

    def is_involution(self):
        return _compose(self.images, self.images) == _identity(self.n)

    def negation_count(self):
        return sum(1 for x in self.images if x < 0)

    def is_identity(self):
        return self.images == _identity(self.n)


def _identity(n):
    return tuple(range(1, n + 1))


def act(w: SignedPermutation, v):
    """Act on a coordinate vector: output_j = v_{w^{-1}(j)} with v_{-i} = -v_i.

    Equivalently the entry v_i is carried to position w(i), negated if
    w(i) < 0.  Exact on Fraction or int coordinates.
    """
    images = w.images if isinstance(w, SignedPermutation) else w
    if len(v) != len(images):
        raise ValueError("dimension mismatch")
    out = [0] * len(v)
    for i, wi in enumerate(images):
        if wi > 0:
            out[wi - 1] = v[i]
        else:
            out[-wi - 1] = -v[i]
    return tuple(out)


def _simple_generator_images(family, rank):
    if family == "A":
        n = rank + 1
        gens = []
        for i in range(1, rank + 1):
            im = list(_identity(n))
            im[i - 1], im[i] = im[i], im[i - 1]
            gens.append(tuple(im))
        return gens, n
    if family == "B":
        n = rank
        gens = []
        for i in range(1, n):
            im = list(_identity(n))
            im[i - 1], im[i] = im[i], im[i - 1]
            gens.append(tuple(im))
        im = list(_identity(n))
        im[n - 1] = -n
        gens.append(tuple(im))
        return gens, n
    if family == "D":
        n = rank
        gens = []
        for i in range(1, n):
            im = list(_identity(n))
            im[i - 1], im[i] = im[i], im[i - 1]
            gens.append(tuple(im))
        im = list(_identity(n))
        im[n - 2], im[n - 1] = -n, -(n - 1)
        gens.append(tuple(im))
        return gens, n
    raise ValueError(f"unknown family {family!r}")


def group_order(family, rank):
    if family == "A":
        return math.factorial(rank + 1)
    if family == "B":
        return (2 ** rank) * math.factorial(rank)
    if family == "D":
        return (2 ** (rank - 1)) * math.factorial(rank)
    raise ValueError(f"unknown family {family!r}")


@lru_cache(maxsize=None)
def parabolic_subgroup_order(family, rank, J):
    """Order of the subgroup generated by the simple generators in J.

    Computed by direct closure over the generator images, independently of
    any product-formula shortcut, so it can serve as an oracle for orbit
    sizes.  J is a tuple of generator indices.
    """
    J = tuple(sorted(set(J)))
    if not J:
        return 1
    if len(J) == rank:
        # the full group; its order formula is checked against the BFS
        # closure whenever a CoxeterSystem is enumerated
        return group_order(family, rank)
    gens, n = _simple_generator_images(family, rank)
    chosen = [gens[i] for i in J]
    seen = {_identity(n)}
    frontier = [_identity(n)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in chosen:
                wg = _compose(w, g)
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
        frontier = nxt
    return len(seen)


def _positive_roots(family, rank):
    """Positive root normals in a fixed, stable order."""
    if family == "A":
        n = rank + 1
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                r = [0] * n
                r[i], r[j] = 1, -1
                roots.append(tuple(r))
        return roots
    n = rank
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0] * n
            r[i], r[j] = 1, -1
            roots.append(tuple(r))
            r = [0] * n
            r[i], r[j] = 1, 1
            roots.append(tuple(r))
    if family == "B":
        for i in range(n):
            r = [0] * n
            r[i] = 1
            roots.append(tuple(r))
    return roots


def _simple_roots(family, rank):
    if family == "A":
        n = rank + 1
        alphas = []
        for i in range(1, rank + 1):
            a = [0] * n
            a[i - 1], a[i] = 1, -1
            alphas.append(tuple(a))
        return alphas
    n = rank
    alphas = []
    for i in range(1, n):
        a = [0] * n
        a[i - 1], a[i] = 1, -1
        alphas.append(tuple(a))
    a = [0] * n
    if family == "B":
        a[n - 1] = 1
    else:
        a[n - 2], a[n - 1] = 1, 1
    alphas.append(tuple(a))
    return alphas


def _fundamental_coweights(family, rank):
    """Vectors dual to the simple roots: <w_i, alpha_j> = delta_ij."""
    if family == "A":
        n = rank + 1
        return [tuple(Fraction(1 if k <= i else 0) for k in range(n))
                for i in range(rank)]
    n = rank
    cw = [tuple(Fraction(1 if k <= i else 0) for k in range(n))
          for i in range(n - 1)]
    if family == "B":
        cw.append(tuple(Fraction(1) for _ in range(n)))
    else:
        cw[n - 2] = tuple(Fraction(1, 2) if k < n - 1 else Fraction(-1, 2)
                          for k in range(n))
        cw.append(tuple(Fraction(1, 2) for _ in range(n)))
    return cw


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class CoxeterSystem:
    """A finite Coxeter group of type A, B, or D with its standard geometry.

    Construction is cheap; the group itself is enumerated lazily, and any
    operation that needs the full element list raises GroupTooLargeError
    when |W| exceeds the cap.
    """

    def __init__(self, family, rank, cap=None):
        if family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
        if rank < 1 or (family in ("B", "D") and rank < 2):
            raise ValueError(f"rank {rank} out of range for type {family}")
        self.family = family
        self.rank = rank
        if cap is None:
            cap = int(os.environ.get("DESCENT_LOEWY_CAP", DEFAULT_CAP))
        self.cap = cap
        gen_images, ambient = _simple_generator_images(family, rank)
        self.ambient = ambient
        self.generators = tuple(SignedPermutation(g) for g in gen_images)
        self.simple_roots = tuple(_simple_roots(family, rank))
        self.positive_roots = tuple(_positive_roots(family, rank))
        self.fundamental_coweights = tuple(_fundamental_coweights(family, rank))
        for g in self.generators:
            assert g.is_involution(), "simple generators must be involutions"
        for i, cw in enumerate(self.fundamental_coweights):
            for j, al in enumerate(self.simple_roots):
                assert dot(cw, al) == (1 if i == j else 0), \
                    "coweights must be dual to the simple roots"
        chamber_point = tuple(sum(c) for c in zip(*self.fundamental_coweights))
        assert all(dot(r, chamber_point) > 0 for r in self.positive_roots), \
            "fundamental chamber must be nonempty"
        self._group = None
        self._conj_tables = None
        self._parabolic = None

    @property
    def order(self):
        return group_order(self.family, self.rank)

    @property
    def num_generators(self):
        return len(self.generators)

    def __repr__(self):
        return f"CoxeterSystem({self.family}{self.rank}, |W|={self.order})"

    # -- group enumeration ------------------------------------------------

    def _enumerate(self):
        if self._group is not None:
            return self._group
        if self.order > self.cap:
            raise GroupTooLargeError(
                f"|W({self.family}{self.rank})| = {self.order} exceeds the "
                f"materialization cap {self.cap}; raise DESCENT_LOEWY_CAP "
                f"to override")
        gens = [g.images for g in self.generators]
        ns = len(gens)
        ident = _identity(self.ambient)
        elements = [ident]
        index = {ident: 0}
        lengths = [0]
        rmul_rows = []
        frontier = [0]
        while frontier:
            new_frontier = []
            for wid in frontier:
                w = elements[wid]
                row = []
                for g in gens:
                    wg = _compose(w, g)
                    tid = index.get(wg)
                    if tid is None:
                        tid = len(elements)
                        index[wg] = tid
                        elements.append(wg)
                        lengths.append(lengths[wid] + 1)
                        new_frontier.append(tid)
                    row.append(tid)
                rmul_rows.append(row)
            frontier = new_frontier
        assert len(elements) == self.order, \
            f"closure produced {len(elements)} elements, expected {self.order}"
        rmul = np.array(rmul_rows, dtype=np.int32).T.copy()
        lengths = np.array(lengths, dtype=np.int32)
        inverse = np.empty(len(elements), dtype=np.int32)
        for i, w in enumerate(elements):
            inverse[i] = index[_inverse(w)]
        descent = np.zeros(len(elements), dtype=np.int64)
        for gi in range(ns):
            descent |= (lengths[rmul[gi]] < lengths).astype(np.int64) << gi
        self._group = {
            "elements": elements,
            "index": index,
            "lengths": lengths,
            "rmul": rmul,
            "inverse": inverse,
            "descent": descent,
        }
        return self._group

    def elements(self):
        """All group elements as SignedPermutation, in enumeration order."""
        return [SignedPermutation(w) for w in self._enumerate()["elements"]]

    def element_images(self):
        return self._enumerate()["elements"]

    def element_id(self, w):
        images = w.images if isinstance(w, SignedPermutation) else tuple(w)
        idx = self._enumerate()["index"].get(images)
        if idx is None:
            raise ValueError(f"{images} is not an element of {self!r}")
        return idx

    def contains(self, w):
        images = w.images if isinstance(w, SignedPermutation) else tuple(w)
        return images in self._enumerate()["index"]

    def length(self, w):
        """Coxeter length: Cayley graph distance from the identity."""
        return int(self._enumerate()["lengths"][self.element_id(w)])

    def lengths(self):
        return self._enumerate()["lengths"]

    def rmul_table(self):
        """rmul[g][i] = id of elements[i] composed with generator g on the right."""
        return self._enumerate()["rmul"]

    def inverse_table(self):
        return self._enumerate()["inverse"]

    def descent_masks(self):
        """Bitmask per element: bit g set iff length(w s_g) < length(w)."""
        return self._enumerate()["descent"]

    def word_of(self, wid):
        """A reduced word (generator indices) for element wid, by greedy
        right-descent stripping: composing the generators left to right,
        starting from the identity, reproduces the element."""
        g = self._enumerate()
        word = []
        cur = wid
        while g["lengths"][cur] > 0:
            mask = int(g["descent"][cur])
            gi = (mask & -mask).bit_length() - 1
            word.append(gi)
            cur = int(g["rmul"][gi, cur])
        word.reverse()
        return word

    def longest_element_id(self):
        g = self._enumerate()
        return int(np.argmax(g["lengths"]))

    # -- parabolic machinery ----------------------------------------------

    def subset_mask(self, J):
        mask = 0
        for j in J:
            if not 0 <= j < self.num_generators:
                raise ValueError(f"generator index {j} out of range")
            mask |= 1 << j
        return mask

    def subgroup_element_ids(self, J):
        """Element ids of the standard parabolic subgroup generated by J."""
        g = self._enumerate()
        J = sorted(set(J))
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for wid in frontier:
                for gi in J:
                    t = int(g["rmul"][gi, wid])
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        return np.array(sorted(seen), dtype=np.int32)

    def subgroup_order(self, J):
        return len(self.subgroup_element_ids(J))

    def min_coset_rep_ids(self, J):
        """Ids of X_J: elements w with length(w s) > length(w) for all s in J."""
        g = self._enumerate()
        mask = self.subset_mask(J)
        return np.nonzero((g["descent"] & mask) == 0)[0].astype(np.int32)

    def min_coset_reps(self, J):
        elems = self._enumerate()["elements"]
        return [SignedPermutation(elems[i]) for i in self.min_coset_rep_ids(J)]

    def _conjugation_tables(self):
        """Per generator g, the table i -> id of g w_i g^{-1} (g an involution)."""
        if self._conj_tables is not None:
            return self._conj_tables
        g = self._enumerate()
        ns = self.num_generators
        lmul = np.empty((ns, len(g["elements"])), dtype=np.int32)
        for gi, gen in enumerate(self.generators):
            gim = gen.images
            for i, w in enumerate(g["elements"]):
                lmul[gi, i] = g["index"][_compose(gim, w)]
        conj = np.empty_like(lmul)
        for gi in range(ns):
            conj[gi] = g["rmul"][gi][lmul[gi]]
        self._conj_tables = conj
        return conj

    def _subgroup_orbit(self, J):
        """Orbit of the parabolic subgroup W_J under conjugation, as canonical
        sorted-id byte keys; returns (orbit set, orbit size)."""
        conj = self._conjugation_tables()
        start = self.subgroup_element_ids(J)
        key0 = start.tobytes()
        seen = {key0: start}
        frontier = [start]
        while frontier:
            nxt = []
            for ids in frontier:
                for gi in range(self.num_generators):
                    out = np.sort(conj[gi][ids])
                    key = out.tobytes()
                    if key not in seen:
                        seen[key] = out
                        nxt.append(out)
            frontier = nxt
        return seen

    def normalizer_index(self, J):
        """Index of W_J in its normalizer N_W(W_J)."""
        orbit = self._subgroup_orbit(J)
        wj = self.subgroup_order(J)
        norm_order = self.order // len(orbit)
        assert norm_order % wj == 0, "normalizer order must be divisible by |W_J|"
        return norm_order // wj

    def parabolic_classes(self):
        """Conjugacy classes of parabolic subsets J of S.

        Returns (classes, leq) where classes is a list of tuples of subsets
        (each subset a sorted tuple of generator indices), sorted with a
        deterministic key, and leq[a][b] holds iff class a <= class b in the
        order: some member of class b is contained in some member of class a.
        The class of the empty set is the unique maximum.
        """
        if self._parabolic is not None:
            return self._parabolic
        ns = self.num_generators
        subsets = [tuple(j for j in range(ns) if mask >> j & 1)
                   for mask in range(1 << ns)]
        sig_of = {}
        for J in subsets:
            orbit = self._subgroup_orbit(J)
            sig_of[J] = min(orbit.keys())
        by_sig = {}
        for J in subsets:
            by_sig.setdefault(sig_of[J], []).append(J)
        classes = sorted((tuple(sorted(v, key=lambda s: (len(s), s)))
                          for v in by_sig.values()),
                         key=lambda c: (len(c[0]), c))
        nc = len(classes)
        leq = np.zeros((nc, nc), dtype=bool)
        member_sets = [[frozenset(J) for J in cls] for cls in classes]
        for a in range(nc):
            for b in range(nc):
                leq[a, b] = any(K <= Jset
                                for Jset in member_sets[a]
                                for K in member_sets[b])
        for a in range(nc):
            for b in range(nc):
                if leq[a, b] and leq[b, a]:
                    assert a == b, "parabolic class order must be antisymmetric"
        self._parabolic = (classes, leq)
        return self._parabolic

    def parabolic_class_index(self, J):
        classes, _ = self.parabolic_classes()
        J = tuple(sorted(J))
        for i, cls in enumerate(classes):
            if J in cls:
                return i
        raise ValueError(f"subset {J} not classified")


@lru_cache(maxsize=None)
def _cached_system(family, rank, cap):
    return CoxeterSystem(family, rank, cap=cap)


def build_coxeter_system(family, rank, cap=None):
    """Build (and cache) the Coxeter system of the given family and rank."""
    if cap is None:
        cap = int(os.environ.get("DESCENT_LOEWY_CAP", DEFAULT_CAP))
    return _cached_system(family, rank, cap)
