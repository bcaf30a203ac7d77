"""Extended affine Weyl groups W x Ytilde with alcove-based length
functions, reduced words and the length-zero subgroup.

An element (w, y) acts on Y (x) R by v -> w(v + y); the composition law
is (w1, y1)(w2, y2) = (w1 w2, w2^-1 y1 + y2).  The doubled alcove 2A
(walls <alpha_i, v> = 0 and <theta, v> = 2) is the fundamental domain of
the index-two-lattice affine group W x 2Y; its stabilizer inside
W x Ytilde is the length-zero subgroup, isomorphic to Ytilde/2Y.

Two length functions are computed by exact hyperplane counting from the
rational barycenter of 2A (scaled to integers, so no fractions appear in
the hot path):

  * length_tilde: hyperplanes <alpha, v> = 2k (even levels only),
    the Coxeter length on W x 2Y extended by zero on the stabilizer;
  * length_two: hyperplanes <alpha, v> = k (all integer levels),
    the crossing count for the finer alcove arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .rootdata import RootDatum, Ytilde_mod_2Y, in_Y_tilde

AFFINE = "af"  # label of the affine node


def _mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class ExtAffineWeylElt:
    """Element (w, y) of W x Ytilde; w is an integer matrix on coroot
    coordinates and y a translation in Ytilde.  w_inv is carried along so
    that group operations never invert matrices."""

    datum: RootDatum
    w: tuple
    y: tuple
    w_inv: tuple = field(compare=False, hash=False, default=None)

    def __mul__(self, other: "ExtAffineWeylElt") -> "ExtAffineWeylElt":
        if self.datum is not other.datum:
            raise ValueError("elements from different root data")
        y = tuple(a + b for a, b in zip(_mat_vec(other.w_inv, self.y), other.y))
        return ExtAffineWeylElt(self.datum, _mat_mul(self.w, other.w), y,
                                _mat_mul(other.w_inv, self.w_inv))

    def inverse(self) -> "ExtAffineWeylElt":
        y = tuple(-c for c in _mat_vec(self.w, self.y))
        return ExtAffineWeylElt(self.datum, self.w_inv, y, self.w)

    def apply(self, point: Sequence) -> tuple:
        """Image of a point of Y (x) Q (coroot coordinates)."""
        shifted = tuple(p + c for p, c in zip(point, self.y))
        return _mat_vec(self.w, shifted)

    def apply_scaled(self, point: Sequence[int], denom: int) -> tuple:
        """Image of point/denom, returned scaled by denom (integers only)."""
        shifted = tuple(p + denom * c for p, c in zip(point, self.y))
        return _mat_vec(self.w, shifted)

    def is_identity(self) -> bool:
        n = len(self.y)
        return (not any(self.y)
                and self.w == _identity_matrix(n))

    def __repr__(self):
        return f"ExtAffineWeylElt(w={self.w}, y={self.y})"


class AffineWeyl:
    """Context for W x Ytilde over a fixed root datum: generators, exact
    alcove geometry, cached lengths, reduced words and length-zero data."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        r = datum.rank
        self._ident = _identity_matrix(r)
        self._simple_mats = [datum.simple_reflection_matrix(i) for i in range(r)]
        theta = datum.highest_root
        self._theta = theta
        # the reflection through <theta, v> = 2 composed into (w, y) form:
        # v -> w_theta(v) + 2 theta^vee = w_theta(v + y) with y = -2 theta^vee
        wt = self._reflection_matrix(theta)
        self._w_af = ExtAffineWeylElt(datum, wt,
                                      tuple(-2 * c for c in theta), wt)
        self.generators = [(i, ExtAffineWeylElt(datum, m, (0,) * r, m))
                           for i, m in enumerate(self._simple_mats)]
        self.generators.append((AFFINE, self._w_af))
        self._gen_by_label = dict(self.generators)

        # scaled barycenter of 2A: vertices are 0 and 2*omega_i/m_i
        marks = datum.marks()
        fw = datum.fundamental_coweights()
        verts = [tuple(Fraction(0) for _ in range(r))]
        for i in range(r):
            verts.append(tuple(2 * fw[i][j] / marks[i] for j in range(r)))
        bary = [sum(v[j] for v in verts) / (r + 1) for j in range(r)]
        denom = lcm(*[c.denominator for c in bary],
                    *[c.denominator for v in verts for c in v], 1)
        self._D = denom
        self._B = tuple(int(c * denom) for c in bary)
        self._verts = tuple(tuple(int(c * denom) for c in v) for v in verts)
        for alpha in datum.positive_roots:
            val = self._pair_scaled(alpha, self._B)
            if not 0 < val < 2 * denom:
                raise ArithmeticError("barycenter is not interior to 2A")
        self._len_cache: dict = {}
        self._len2_cache: dict = {}
        self._omega_cache: Optional[dict] = None

    # ------------------------------------------------------------------

    def _reflection_matrix(self, root) -> tuple:
        r = self.datum.rank
        cols = []
        for j in range(r):
            basis = tuple(1 if k == j else 0 for k in range(r))
            pair = self.datum.pairing(root, basis)
            cols.append(tuple(basis[k] - pair * root[k] for k in range(r)))
        return tuple(tuple(cols[j][k] for j in range(r)) for k in range(r))

    def _pair_scaled(self, root, scaled_point) -> int:
        r = self.datum.rank
        c = self.datum.cartan
        return sum(root[i] * c[i][j] * scaled_point[j]
                   for i in range(r) for j in range(r) if root[i])

    def identity(self) -> ExtAffineWeylElt:
        r = self.datum.rank
        return ExtAffineWeylElt(self.datum, self._ident, (0,) * r, self._ident)

    def generator(self, label) -> ExtAffineWeylElt:
        return self._gen_by_label[label]

    def simple(self, i: int) -> ExtAffineWeylElt:
        return self._gen_by_label[i]

    def affine_reflection(self) -> ExtAffineWeylElt:
        return self._w_af

    def translation(self, y: Sequence[int]) -> ExtAffineWeylElt:
        y = tuple(int(c) for c in y)
        if not in_Y_tilde(self.datum, y):
            raise ValueError(f"translation {y} is not in Ytilde")
        return ExtAffineWeylElt(self.datum, self._ident, y, self._ident)

    def element(self, w, y) -> ExtAffineWeylElt:
        y = tuple(int(c) for c in y)
        if not in_Y_tilde(self.datum, y):
            raise ValueError(f"translation part {y} is not in Ytilde")
        winv = self._invert_orthogonal(w)
        return ExtAffineWeylElt(self.datum, tuple(tuple(row) for row in w), y, winv)

    def _invert_orthogonal(self, w) -> tuple:
        # Weyl matrices permute the roots, so the inverse is found by
        # exact Gaussian elimination over the rationals
        r = self.datum.rank
        aug = [[Fraction(w[i][j]) for j in range(r)]
               + [Fraction(1 if j == i else 0) for j in range(r)] for i in range(r)]
        for col in range(r):
            piv = next(i for i in range(col, r) if aug[i][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            aug[col] = [x / aug[col][col] for x in aug[col]]
            for i in range(r):
                if i != col and aug[i][col] != 0:
                    fac = aug[i][col]
                    aug[i] = [x - fac * y for x, y in zip(aug[i], aug[col])]
        inv = tuple(tuple(int(aug[i][r + j]) for j in range(r)) for i in range(r))
        return inv

    # ------------------------------------------------------------------
    # lengths

    @staticmethod
    def _strict_multiples(lo: int, hi: int, step: int) -> int:
        """Number of integers m with lo < m*step < hi (lo, hi, step ints)."""
        if lo > hi:
            lo, hi = hi, lo
        if lo == hi:
            return 0
        return (hi - 1) // step - lo // step

    def length_tilde(self, x: ExtAffineWeylElt) -> int:
        """Hyperplanes <alpha, v> = 2k strictly separating 2A from x(2A)."""
        key = (x.w, x.y)
        hit = self._len_cache.get(key)
        if hit is not None:
            return hit
        img = x.apply_scaled(self._B, self._D)
        total = 0
        step = 2 * self._D
        for alpha in self.datum.positive_roots:
            total += self._strict_multiples(self._pair_scaled(alpha, self._B),
                                            self._pair_scaled(alpha, img), step)
        self._len_cache[key] = total
        return total

    def length_two(self, x: ExtAffineWeylElt) -> int:
        """Coset-growth count for the depth-two alcove group.

        The stabilizer of 2A pins positive root subgroups at level 0 and
        negative ones at level 2; conjugating by x = (w, y) shifts the
        level of the gamma-subgroup to that of w(gamma) minus <gamma, y>.
        The count adds, over all roots, the number of filtration steps by
        which x's stabilizer profile exceeds the base profile.
        """
        key = (x.w, x.y)
        hit = self._len2_cache.get(key)
        if hit is not None:
            return hit
        total = 0
        for gamma in self.datum.roots:
            base = 0 if sum(gamma) > 0 else 2
            img = 0 if sum(_mat_vec(x.w, gamma)) > 0 else 2
            total += max(0, base - self.datum.pairing(gamma, x.y) - img)
        self._len2_cache[key] = total
        return total

    def length_formula(self, x: ExtAffineWeylElt) -> int:
        """Closed form: sum over positive roots alpha of |<alpha,y>/2| when
        w(alpha) is positive and |<alpha,y>/2 + 1| when negative (the
        pairings are halved because the relevant root system is half-scaled)."""
        total = 0
        for alpha in self.datum.positive_roots:
            half = self.datum.pairing(alpha, x.y)
            if half % 2:
                raise ValueError("translation part is not in Ytilde")
            half //= 2
            if sum(_mat_vec(x.w, alpha)) > 0:
                total += abs(half)
            else:
                total += abs(half + 1)
        return total

    # ------------------------------------------------------------------
    # reduced words

    def reduced_word(self, x: ExtAffineWeylElt):
        """Greedy left descent: returns (omega, word) with
        x = generator(word[0]) * ... * generator(word[-1]) * omega and
        len(word) = length_tilde(x); omega has length zero."""
        word = []
        cur = x
        length = self.length_tilde(cur)
        while length > 0:
            for label, s in self.generators:
                cand = s * cur
                cl = self.length_tilde(cand)
                if cl < length:
                    word.append(label)
                    cur = cand
                    length = cl
                    break
            else:
                raise ArithmeticError("no descent found; length function bug")
        return cur, tuple(word)

    def left_factorization(self, x: ExtAffineWeylElt):
        """(omega, word) with x = omega * generator(word[0]) * ... ; this is
        the canonical form used for Hecke basis keys."""
        omega, _ = self.reduced_word(x)
        rest = omega.inverse() * x
        _, word = self.reduced_word(rest)
        # rest lies in W x 2Y, so its own omega part is the identity and
        # the word multiplies out to rest itself
        return omega, word

    def evaluate_word(self, word, omega: Optional[ExtAffineWeylElt] = None,
                      omega_left: bool = False) -> ExtAffineWeylElt:
        out = self.identity()
        for label in word:
            out = out * self._gen_by_label[label]
        if omega is not None:
            out = omega * out if omega_left else out * omega
        return out

    def all_reduced_words(self, x: ExtAffineWeylElt, cap: int = 100000):
        """Every reduced word of an element of W x 2Y (left descents)."""
        length = self.length_tilde(x)
        if length == 0:
            return [()]
        out = []
        stack = [(x, ())]
        while stack:
            cur, prefix = stack.pop()
            cl = self.length_tilde(cur)
            if cl == 0:
                out.append(prefix)
                if len(out) > cap:
                    raise ArithmeticError("too many reduced words")
                continue
            for label, s in self.generators:
                cand = s * cur
                if self.length_tilde(cand) < cl:
                    stack.append((cand, prefix + (label,)))
        return out

    # ------------------------------------------------------------------
    # length-zero elements

    def omega_elements(self) -> dict:
        """One length-zero element per class of Ytilde/2Y, with the induced
        permutation of the affine diagram nodes.

        The translation part of a length-zero element is minus a vertex of
        2A, and the finite part is recovered by reflecting the shifted
        barycenter back into the dominant chamber.
        """
        if self._omega_cache is not None:
            return self._omega_cache
        datum = self.datum
        r = datum.rank
        info = Ytilde_mod_2Y(datum)
        classes = {tuple(c) for c in info["classes"]}
        found = {(0,) * r: (self.identity(), self._node_permutation(self.identity()))}

        marks = datum.marks()
        fw = datum.fundamental_coweights()
        candidates = []
        for i in range(r):
            coords = [2 * fw[i][j] / marks[i] for j in range(r)]
            if all(c.denominator == 1 for c in coords):
                candidates.append(tuple(-int(c) for c in coords))
        for y in candidates:
            if not in_Y_tilde(datum, y):
                continue
            cls = tuple(c % 2 for c in y)
            if cls not in classes or cls in found:
                continue
            elt = self._alcove_stabilizer_with_translation(y)
            if elt is None:
                continue
            found[cls] = (elt, self._node_permutation(elt))
        if set(found) != classes:
            raise ArithmeticError("length-zero elements do not match Ytilde/2Y")
        self._omega_cache = found
        return found

    def _alcove_stabilizer_with_translation(self, y) -> Optional[ExtAffineWeylElt]:
        r = self.datum.rank
        z = tuple(b + self._D * c for b, c in zip(self._B, y))
        w = self._ident
        for _ in range(10000):
            for i in range(r):
                alpha = self.datum.simple_root(i)
                if self._pair_scaled(alpha, z) < 0:
                    z = _mat_vec(self._simple_mats[i], z)
                    w = _mat_mul(self._simple_mats[i], w)
                    break
            else:
                break
        if z != self._B:
            return None
        elt = ExtAffineWeylElt(self.datum, w, y, self._invert_orthogonal(w))
        if self.length_tilde(elt) != 0:
            raise ArithmeticError("alcove stabilizer has nonzero length")
        return elt

    def _node_permutation(self, x: ExtAffineWeylElt) -> dict:
        """Where each wall of 2A is sent: labels {0..r-1, 'af'} permuted."""
        datum = self.datum
        r = datum.rank
        walls = {i: (datum.simple_root(i), 0) for i in range(r)}
        walls[AFFINE] = (self._theta, 2)
        perm = {}
        for label, (alpha, level) in walls.items():
            img_root = _mat_vec(x.w, alpha)
            img_level = level + datum.pairing(alpha, x.y)
            if sum(img_root) < 0:
                img_root = tuple(-c for c in img_root)
                img_level = -img_level
            target = None
            for lab2, (beta, lev2) in walls.items():
                if img_root == beta and img_level == lev2:
                    target = lab2
                    break
            if target is None:
                raise ArithmeticError("wall image is not a wall of 2A")
            perm[label] = target
        if sorted(map(str, perm.values())) != sorted(map(str, walls)):
            raise ArithmeticError("wall map is not a permutation")
        return perm

    # ------------------------------------------------------------------

    def ball(self, max_length: int, with_omega: bool = True):
        """All elements with length_tilde <= max_length (BFS over W x 2Y,
        then translated by the length-zero subgroup when with_omega)."""
        level = {self.identity(): 0}
        frontier = [self.identity()]
        for dist in range(1, max_length + 1):
            nxt = []
            for x in frontier:
                for _, s in self.generators:
                    cand = x * s
                    if cand not in level:
                        if self.length_tilde(cand) == dist:
                            level[cand] = dist
                            nxt.append(cand)
            frontier = nxt
        if not with_omega:
            return level
        out = dict(level)
        for cls, (omega, _) in self.omega_elements().items():
            if omega.is_identity():
                continue
            for x, d in level.items():
                out[omega * x] = d
        return out


# ----------------------------------------------------------------------
# module-level wrappers (operations by name)

_CONTEXTS: dict = {}


def affine_weyl(datum: RootDatum) -> AffineWeyl:
    ctx = _CONTEXTS.get(id(datum))
    if ctx is None or ctx.datum is not datum:
        ctx = AffineWeyl(datum)
        _CONTEXTS[id(datum)] = ctx
    return ctx


def length_tilde(x: ExtAffineWeylElt) -> int:
    return affine_weyl(x.datum).length_tilde(x)


def length_two(x: ExtAffineWeylElt) -> int:
    return affine_weyl(x.datum).length_two(x)


def reduced_word(x: ExtAffineWeylElt):
    return affine_weyl(x.datum).reduced_word(x)


def omega_elements(datum: RootDatum) -> dict:
    return affine_weyl(datum).omega_elements()
