"""Generic Iwahori-Matsumoto Hecke algebra over integer Laurent
polynomials in q, supported on the extended affine Weyl group.

The algebra has one generator per affine simple node satisfying
T^2 = (q-1)T + q and the simply-laced braid relations, extended by the
length-zero subgroup acting through its permutation of the affine
diagram.  Basis elements are indexed by group elements through the
canonical factorization x = omega * w; products reduce by expanding the
right factor's reduced word, so every structure constant is an exact
integer Laurent polynomial.

A self-contained finite model grounds the quadratic constants: the
convolution algebra of B-biinvariant functions on SL3(F2) with B the
(here unipotent) upper triangular subgroup, whose six double cosets
reproduce the same presentation at q = 2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coxeter import AFFINE, AffineWeyl, ExtAffineWeylElt
from .rootdata import RootDatum


# ----------------------------------------------------------------------
# integer Laurent polynomials in q


class LaurentPoly:
    """Finitely supported integer combination of powers of q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict] = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def const(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                key = e1 + e2
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, q: int):
        num = 0
        den = 1
        for e, c in self.coeffs.items():
            if e >= 0:
                num += c * q ** e * den
            else:
                scale = q ** (-e)
                num = num * scale + c * den
                den *= scale
        if den != 1 and num % den == 0:
            return num // den
        return num if den == 1 else (num, den)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return " + ".join(parts)


_ZERO = LaurentPoly()
_ONE = LaurentPoly.const(1)
_Q = LaurentPoly.q_power(1)
_QINV = LaurentPoly.q_power(-1)
_QM1 = _Q - _ONE


# ----------------------------------------------------------------------
# Hecke elements


class HeckeElement:
    """Finitely supported map from group elements to Laurent polynomials;
    the basis element at x is T_omega * T_w for the factorization
    x = omega * w."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: dict):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _ZERO) + v
        return HeckeElement(self.algebra, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _ZERO) - v
        return HeckeElement(self.algebra, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        return self.algebra.mul(self, other)

    def scale(self, poly: LaurentPoly) -> "HeckeElement":
        return HeckeElement(self.algebra,
                            {k: v * poly for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, HeckeElement)
                and self.algebra is other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        return hash(tuple(sorted(((k.w, k.y), v)
                                 for k, v in self.terms.items()),
                          key=repr))

    def _check(self, other: "HeckeElement"):
        if self.algebra is not other.algebra:
            raise ValueError("elements from different Hecke algebras")

    def support_lengths(self) -> list:
        W = self.algebra.weyl
        return sorted(W.length_tilde(k) for k in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.terms.items():
            parts.append(f"({v})*T[{k.w},{k.y}]")
        return " + ".join(parts)


class HeckeAlgebra:
    """The generic algebra attached to one root datum."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.weyl = AffineWeyl(datum)
        self.quad_linear = _QM1   # T^2 = quad_linear * T + quad_const
        self.quad_const = _Q
        self._node_labels = [label for label, _ in self.weyl.generators]

    # ------------------------------------------------------------------

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def one(self) -> HeckeElement:
        return HeckeElement(self, {self.weyl.identity(): _ONE})

    def t_basis(self, x: ExtAffineWeylElt) -> HeckeElement:
        """T_x = T_omega * T_{s_1} ... T_{s_k} along the canonical
        factorization; independent of the reduced word by the braid
        relations (property-tested)."""
        return HeckeElement(self, {x: _ONE})

    def generator(self, label) -> HeckeElement:
        return self.t_basis(self.weyl.generator(label))

    def omega_basis(self) -> dict:
        return {cls: self.t_basis(elt)
                for cls, (elt, _) in self.weyl.omega_elements().items()}

    # ------------------------------------------------------------------

    def _mul_basis_generator(self, terms: dict, label) -> dict:
        """Right multiplication of a term dict by T_s for a generator."""
        s = self.weyl.generator(label)
        W = self.weyl
        out: dict = {}

        def bump(key, poly):
            if key in out:
                out[key] = out[key] + poly
            else:
                out[key] = poly

        for x, poly in terms.items():
            xs = x * s
            if W.length_tilde(xs) > W.length_tilde(x):
                bump(xs, poly)
            else:
                bump(x, poly * self.quad_linear)
                bump(xs, poly * self.quad_const)
        return out

    def mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """Bilinear product; each right basis factor is expanded along its
        canonical factorization omega * word, the omega part acting by
        relabelling keys (length-zero twist) and the word letter by letter."""
        W = self.weyl
        out: dict = {}
        for y, poly_y in b.terms.items():
            omega, word = W.left_factorization(y)
            terms = {x * omega: poly_x * poly_y
                     for x, poly_x in a.terms.items()}
            for label in word:
                terms = self._mul_basis_generator(terms, label)
            for k, v in terms.items():
                out[k] = out.get(k, _ZERO) + v
        return HeckeElement(self, out)

    def basis_inverse(self, x: ExtAffineWeylElt) -> HeckeElement:
        """Two-sided inverse of T_x from the quadratic relations."""
        W = self.weyl
        omega, word = W.left_factorization(x)
        inv = self.t_basis(omega.inverse())
        acc = self.one()
        for label in reversed(word):
            s = self.generator(label)
            # T_s^-1 = q^-1 (T_s - (q - 1))
            s_inv = (s - self.one().scale(self.quad_linear)).scale(_QINV)
            acc = acc * s_inv
        return acc * inv

    # ------------------------------------------------------------------
    # verification

    def _node_pairs(self):
        labels = self._node_labels
        theta = self.datum.highest_root
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                if a == AFFINE or b == AFFINE:
                    other = b if a == AFFINE else a
                    adj = self.datum.pairing(theta,
                                             self.datum.simple_root(other)) == 1
                else:
                    adj = self.datum.adjacency(a, b)
                yield a, b, adj

    def verify_relations(self, trials: int = 200, seed: int = 0) -> dict:
        """Exact checks of the presentation; returns a report whose entries
        each carry a pass flag and the failures found."""
        rng = random.Random(seed)
        W = self.weyl
        report: Dict[str, dict] = {}

        failures = []
        for label in self._node_labels:
            t = self.generator(label)
            lhs = t * t
            rhs = t.scale(self.quad_linear) + self.one().scale(self.quad_const)
            if lhs != rhs:
                failures.append(f"quadratic at node {label}")
        report["quadratic"] = {"pass": not failures, "failures": failures}

        failures = []
        for a, b, adjacent in self._node_pairs():
            ta, tb = self.generator(a), self.generator(b)
            if adjacent:
                ok = (ta * tb) * ta == (tb * ta) * tb
            else:
                ok = ta * tb == tb * ta
            if not ok:
                failures.append(f"braid at nodes ({a}, {b})")
        report["braid"] = {"pass": not failures, "failures": failures}

        failures = []
        omegas = W.omega_elements()
        for cls, (eps, perm) in omegas.items():
            t_eps = self.t_basis(eps)
            t_eps_inv = self.t_basis(eps.inverse())
            if t_eps * t_eps_inv != self.one():
                failures.append(f"omega inverse at class {cls}")
            if (t_eps * t_eps) != self.t_basis(eps * eps):
                failures.append(f"omega square at class {cls}")
            for label in self._node_labels:
                lhs = (t_eps * self.generator(label)) * t_eps_inv
                rhs = self.generator(perm[label])
                if lhs != rhs:
                    failures.append(
                        f"omega conjugation at class {cls}, node {label}")
        report["omega_action"] = {"pass": not failures, "failures": failures}

        failures = []
        for label in self._node_labels:
            t = self.generator(label)
            lhs = (t - self.one().scale(self.quad_linear)).scale(_QINV) * t
            if lhs != self.one():
                failures.append(f"inverse identity at node {label}")
        report["inverse"] = {"pass": not failures, "failures": failures}

        pool = self._sample_pool(rng)
        failures = []
        for n in range(trials):
            x, y, z = (rng.choice(pool) for _ in range(3))
            tx, ty, tz = map(self.t_basis, (x, y, z))
            if (tx * ty) * tz != tx * (ty * tz):
                failures.append(f"associativity trial {n}")
        report["associativity"] = {"pass": not failures, "failures": failures,
                                   "trials": trials}

        failures = []
        checked = 0
        for n in range(trials):
            x, y = rng.choice(pool), rng.choice(pool)
            if W.length_tilde(x * y) == W.length_tilde(x) + W.length_tilde(y):
                checked += 1
                if self.t_basis(x) * self.t_basis(y) != self.t_basis(x * y):
                    failures.append(f"length-additive trial {n}")
        report["length_additive"] = {"pass": not failures,
                                     "failures": failures, "checked": checked}

        failures = []
        for n in range(min(trials, 100)):
            x, y = rng.choice(pool), rng.choice(pool)
            if not self._twisted_tensor_agrees(x, y):
                failures.append(f"twisted tensor trial {n}")
        report["twisted_tensor"] = {"pass": not failures, "failures": failures}

        report["pass"] = all(v["pass"] for v in report.values()
                             if isinstance(v, dict))
        report["seed"] = seed
        return report

    def _sample_pool(self, rng: random.Random, max_len: int = 3) -> list:
        W = self.weyl
        omegas = [elt for elt, _ in W.omega_elements().values()]
        pool = []
        for _ in range(60):
            x = W.identity()
            for _ in range(rng.randrange(max_len + 1)):
                _, s = W.generators[rng.randrange(len(W.generators))]
                x = x * s
            pool.append(rng.choice(omegas) * x)
        return pool

    def _twisted_tensor_agrees(self, x: ExtAffineWeylElt,
                               y: ExtAffineWeylElt) -> bool:
        """Normal-form product versus the twisted tensor product
        (eps1 (x) t_{w1}) (eps2 (x) t_{w2})
            = eps1 eps2 (x) t_{eps2^-1 w1 eps2} t_{w2}."""
        W = self.weyl
        e1, w1word = W.left_factorization(x)
        e2, w2word = W.left_factorization(y)
        w1 = W.evaluate_word(w1word)
        tw1_twisted = self.t_basis(e2.inverse() * w1 * e2)
        tw2 = self.t_basis(W.evaluate_word(w2word))
        eps = self.t_basis(e1 * e2)
        rhs = eps * (tw1_twisted * tw2)
        lhs = self.t_basis(x) * self.t_basis(y)
        return lhs == rhs


# ----------------------------------------------------------------------
# finite Iwahori-Hecke model: SL3 over F2


def _mat3_mul(a, b):
    return tuple(tuple((a[i][0] & b[0][j]) ^ (a[i][1] & b[1][j])
                       ^ (a[i][2] & b[2][j]) for j in range(3))
                 for i in range(3))


def _mat3_det(m) -> int:
    return (m[0][0] & m[1][1] & m[2][2]) ^ (m[0][0] & m[1][2] & m[2][1]) \
        ^ (m[0][1] & m[1][0] & m[2][2]) ^ (m[0][1] & m[1][2] & m[2][0]) \
        ^ (m[0][2] & m[1][0] & m[2][1]) ^ (m[0][2] & m[1][1] & m[2][0])


def finite_iwahori_model(which: str = "SL3_F2") -> dict:
    """Brute-force convolution model of the rank-two finite Hecke algebra.

    Enumerates SL3(F2) (168 elements) with B the unipotent upper
    triangular subgroup (8 elements; the split torus over F2 is trivial),
    partitions the group into B-double cosets, and convolves the
    indicator functions exactly.  Verifies the quadratic relation at
    q = 2, the braid relation, the double-coset count 6 = |W|, and the
    index [G:B] = 21 = sum of q^length.
    """
    if which not in ("SL3_F2", "sl3f2"):
        raise ValueError("only the SL3(F2) model is implemented")
    group = []
    for bits in itertools.product((0, 1), repeat=9):
        m = (tuple(bits[0:3]), tuple(bits[3:6]), tuple(bits[6:9]))
        if _mat3_det(m) == 1:
            group.append(m)
    if len(group) != 168:
        raise ArithmeticError("SL3(F2) enumeration failed")
    borel = [m for m in group
             if m[1][0] == 0 and m[2][0] == 0 and m[2][1] == 0
             and m[0][0] == 1 and m[1][1] == 1 and m[2][2] == 1]
    if len(borel) != 8:
        raise ArithmeticError("unipotent upper-triangular subgroup size is off")

    index = {m: i for i, m in enumerate(group)}
    inverse = {}
    for m in group:
        for n in group:
            if _mat3_mul(m, n) == (
                    (1, 0, 0), (0, 1, 0), (0, 0, 1)):
                inverse[m] = n
                break

    # double cosets
    coset_id: Dict[tuple, int] = {}
    reps = []
    for m in group:
        if m in coset_id:
            continue
        cid = len(reps)
        reps.append(m)
        for b1 in borel:
            for b2 in borel:
                coset_id[_mat3_mul(_mat3_mul(b1, m), b2)] = cid

    s1 = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    s2 = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    e = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def indicator(cid):
        return tuple(1 if coset_id[m] == cid else 0 for m in group)

    def convolve(f, g):
        out = [0] * len(group)
        support_f = [i for i, v in enumerate(f) if v]
        for x_i, x in enumerate(group):
            acc = 0
            for y_i in support_f:
                y = group[y_i]
                acc += f[y_i] * g[index[_mat3_mul(inverse[y], x)]]
            if acc % len(borel):
                raise ArithmeticError("convolution is not B-normalized")
            out[x_i] = acc // len(borel)
        return tuple(out)

    def as_coset_coeffs(f):
        coeffs = {}
        for cid, rep in enumerate(reps):
            coeffs[cid] = f[index[rep]]
            for m in group:
                if coset_id[m] == cid and f[index[m]] != coeffs[cid]:
                    raise ArithmeticError("function not biinvariant")
        return coeffs

    t_e = indicator(coset_id[e])
    t_s1 = indicator(coset_id[s1])
    t_s2 = indicator(coset_id[s2])
    q = 2

    checks = {}
    checks["double_cosets"] = len(reps) == 6
    sizes = {}
    for m in group:
        sizes[coset_id[m]] = sizes.get(coset_id[m], 0) + 1
    lengths = {cid: (sz // len(borel)).bit_length() - 1
               for cid, sz in sizes.items()}
    checks["index"] = sum(sz for sz in sizes.values()) // len(borel) == 21
    checks["poincare"] = sorted(q ** l for l in lengths.values()) == \
        [1, 2, 2, 4, 4, 8]

    sq1 = as_coset_coeffs(convolve(t_s1, t_s1))
    sq2 = as_coset_coeffs(convolve(t_s2, t_s2))
    want_sq = {coset_id[e]: q, coset_id[s1]: q - 1}
    checks["quadratic_s1"] = sq1 == {**{c: 0 for c in range(6)},
                                     coset_id[e]: q, coset_id[s1]: q - 1} or \
        all(sq1.get(c, 0) == want_sq.get(c, 0) for c in range(6))
    want_sq2 = {coset_id[e]: q, coset_id[s2]: q - 1}
    checks["quadratic_s2"] = all(sq2.get(c, 0) == want_sq2.get(c, 0)
                                 for c in range(6))

    braid_l = convolve(convolve(t_s1, t_s2), t_s1)
    braid_r = convolve(convolve(t_s2, t_s1), t_s2)
    checks["braid"] = braid_l == braid_r

    # specialization: generic rank-two products at q = 2 match convolution
    algebra = HeckeAlgebra(RootDatum.build("A", 2))
    W = algebra.weyl
    words = {(): e, (0,): s1, (1,): s2, (0, 1): _mat3_mul(s1, s2),
             (1, 0): _mat3_mul(s2, s1), (0, 1, 0): _mat3_mul(_mat3_mul(s1, s2), s1)}
    elt_of = {word: W.evaluate_word(word) for word in words}
    coset_of_word = {word: coset_id[m] for word, m in words.items()}
    ind = {word: indicator(coset_of_word[word]) for word in words}
    spec_ok = True
    for w1 in words:
        for w2 in words:
            generic = algebra.t_basis(elt_of[w1]) * algebra.t_basis(elt_of[w2])
            got = as_coset_coeffs(convolve(ind[w1], ind[w2]))
            expect = {c: 0 for c in range(6)}
            for key, poly in generic.terms.items():
                word = next(w for w, el in elt_of.items() if el == key)
                expect[coset_of_word[word]] = poly.evaluate(q)
            if got != expect:
                spec_ok = False
    checks["specialization"] = spec_ok

    checks["pass"] = all(checks.values())
    return {
        "model": "SL3_F2",
        "group_order": len(group),
        "borel_order": len(borel),
        "double_cosets": len(reps),
        "index": 21,
        "lengths": sorted(lengths.values()),
        "checks": checks,
    }
