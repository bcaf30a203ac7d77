"""Genuine irreducible representations of the finite covering torus that
kill the integral-radical part, built as exact monomial matrices.

Every element of the covering torus squares to a central sign, so the
group is 2-step with elementary abelian quotient; each genuine character
of the center extends to a maximal abelian subgroup and induces
irreducibly, giving matrices whose nonzero entries are fourth roots of
unity.  Characters take values in the Gaussian integers and all the
checks (irreducibility, genuineness, invariance under the Weyl
automorphisms, branching multiplicities, averaged one-parameter sums)
are exact integer computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .covertorus import CoverTorusGroup, TorusElement
from .rootdata import RootDatum

# fourth roots of unity as exponents k of i^k
_I_POW = ((1, 0), (0, 1), (-1, 0), (0, -1))


@dataclass(frozen=True)
class Monomial:
    """A monomial matrix: column j carries i^phases[j] in row perm[j]."""

    perm: tuple
    phases: tuple  # exponents mod 4

    def __mul__(self, other: "Monomial") -> "Monomial":
        perm = tuple(self.perm[other.perm[j]] for j in range(len(self.perm)))
        phases = tuple((other.phases[j] + self.phases[other.perm[j]]) % 4
                       for j in range(len(self.perm)))
        return Monomial(perm, phases)

    def scale(self, k: int) -> "Monomial":
        return Monomial(self.perm, tuple((p + k) % 4 for p in self.phases))

    def trace(self) -> tuple:
        re = im = 0
        for j, target in enumerate(self.perm):
            if target == j:
                dr, di = _I_POW[self.phases[j]]
                re += dr
                im += di
        return (re, im)

    def dense(self):
        n = len(self.perm)
        out = [[(Fraction(0), Fraction(0))] * n for _ in range(n)]
        for j in range(n):
            dr, di = _I_POW[self.phases[j]]
            out[self.perm[j]][j] = (Fraction(dr), Fraction(di))
        return out


def _gauss_mat_add(a, b):
    return [[(x[0] + y[0], x[1] + y[1]) for x, y in zip(ra, rb)]
            for ra, rb in zip(a, b)]


def _gauss_mat_scale(a, s: Fraction):
    return [[(x[0] * s, x[1] * s) for x in row] for row in a]


def _gauss_mat_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            re = Fraction(0)
            im = Fraction(0)
            for k in range(n):
                (ar, ai), (br, bi) = a[i][k], b[k][j]
                re += ar * br - ai * bi
                im += ar * bi + ai * br
            row.append((re, im))
        out.append(row)
    return out


def _gauss_mat_trace(a):
    re = sum(a[i][i][0] for i in range(len(a)))
    im = sum(a[i][i][1] for i in range(len(a)))
    return (re, im)


# ----------------------------------------------------------------------
# abelian character machinery (works on any set of commuting elements of
# a covering torus; all squares are central signs)


def _abelian_chain(group: CoverTorusGroup, elements: List[TorusElement]):
    """Greedy generator chain of an abelian subgroup, scanning in the
    given order; each generator doubles the span since squares are signs."""
    span = {group.identity(): 0, group.minus_identity(): 2}
    chain = []
    for x in elements:
        if x in span:
            continue
        chain.append(x)
        for elt, _ in list(span.items()):
            span[group.multiply(elt, x)] = 0
    return chain


def _enumerate_genuine_characters(group: CoverTorusGroup,
                                  elements: List[TorusElement]) -> List[dict]:
    """All characters of the abelian subgroup sending -1 to -1, as maps
    element -> exponent of i."""
    base = {group.identity(): 0, group.minus_identity(): 2}
    chain = []
    span = dict(base)
    for x in elements:
        if x not in span:
            chain.append(x)
            for elt, _ in list(span.items()):
                span[group.multiply(elt, x)] = 0
    out = [dict(base)]
    for g in chain:
        gsq = group.multiply(g, g)
        nxt = []
        for chi in out:
            csq = chi[gsq]
            if csq % 2:
                raise ArithmeticError("square character value is not +-1")
            for t in (csq // 2 % 4, (csq // 2 + 2) % 4):
                ext = dict(chi)
                for elt, v in chi.items():
                    ext[group.multiply(elt, g)] = (v + t) % 4
                nxt.append(ext)
        out = nxt
    return out


def genuine_central_characters(group: CoverTorusGroup) -> List[dict]:
    """Genuine characters of the center: values are fourth roots of unity
    (every central element squares to a sign) and -1 maps to -1."""
    center = group.center()
    chars = _enumerate_genuine_characters(group, sorted(
        center, key=lambda x: (x.coords, -x.sign)))
    expected = len(center) // 2
    if len(chars) != expected:
        raise ArithmeticError(
            f"found {len(chars)} genuine central characters, expected {expected}")
    return chars


# ----------------------------------------------------------------------
# induced representations


class InductionFrame:
    """Character-independent data for inducing from a maximal abelian
    subgroup: the polarization, a coset transversal, and the factorization
    g = r_j * a of every group element.  Shared by all the central
    characters of one subgroup."""

    def __init__(self, group: CoverTorusGroup, universe: List[TorusElement],
                 center: List[TorusElement]):
        self.group = group
        self.universe = universe
        self.center = center
        center_set = set(center)

        # grow a maximal abelian subgroup through the center, scanning the
        # universe in its canonical order
        a_set = set(center)
        gens: List[TorusElement] = []
        for x in universe:
            if x in a_set:
                continue
            if all(group.multiply(x, g) == group.multiply(g, x) for g in gens) \
                    and all(group.multiply(x, z) == group.multiply(z, x)
                            for z in center):
                for elt in list(a_set):
                    a_set.add(group.multiply(elt, x))
                gens.append(x)
        self.abelian_gens = gens
        self.abelian = a_set
        if len(a_set) ** 2 != len(universe) * len(center):
            raise ArithmeticError("polarization is not maximal abelian")
        self.dim = len(universe) // len(a_set)

        coset_of: Dict[TorusElement, int] = {}
        factor: Dict[TorusElement, TorusElement] = {}
        transversal: List[TorusElement] = []
        for x in universe:
            if x in coset_of:
                continue
            j = len(transversal)
            transversal.append(x)
            for a in a_set:
                y = group.multiply(x, a)
                coset_of[y] = j
                factor[y] = a
        if len(transversal) != self.dim:
            raise ArithmeticError("transversal does not match the dimension")
        self.transversal = transversal
        self.coset_of = coset_of
        self.factor = factor
        # conjugation-to-negative certificates: for each non-central g a
        # witness s in the universe with s g s^-1 = -g, which forces the
        # trace of g to vanish in every genuine representation
        self.sign_conjugators: Dict[TorusElement, TorusElement] = {}
        probes = gens + transversal
        for g in universe:
            if g in center_set:
                continue
            wit = next((p for p in probes
                        if group.multiply(p, g) ==
                        group.multiply(g, p).negate()), None)
            if wit is None:
                raise ArithmeticError(
                    "non-central element without a sign conjugator")
            self.sign_conjugators[g] = wit

    def extend_character(self, chi: dict) -> dict:
        """First-choice extension of a genuine central character along the
        polarization generators (values stay fourth roots of unity)."""
        span = dict(chi)
        for g in self.abelian_gens:
            csq = span[self.group.multiply(g, g)]
            if csq % 2:
                raise ArithmeticError("non-sign square in the polarization")
            t = csq // 2 % 4
            for elt, v in list(span.items()):
                span[self.group.multiply(elt, g)] = (v + t) % 4
        if len(span) != len(self.abelian):
            raise ArithmeticError("character extension does not cover A")
        return span


_FRAMES: Dict[tuple, InductionFrame] = {}


def _frame_for(group: CoverTorusGroup,
               elements: Optional[List[TorusElement]],
               center: List[TorusElement]) -> InductionFrame:
    if elements is None:
        universe = list(group.elements())
        key = (id(group), None)
    else:
        universe = elements
        key = (id(group), tuple(sorted((x.sign, x.coords) for x in universe)))
    frame = _FRAMES.get(key)
    if frame is None or frame.group is not group:
        frame = InductionFrame(group, universe, center)
        _FRAMES[key] = frame
    return frame


class GenuineRep:
    """Monomial model of the genuine irreducible representation with a
    given central character, induced from a maximal abelian subgroup."""

    def __init__(self, group: CoverTorusGroup, central_character: dict,
                 elements: Optional[List[TorusElement]] = None):
        self.group = group
        self.central_character = central_character
        frame = _frame_for(group, elements,
                           sorted(central_character,
                                  key=lambda x: (x.coords, -x.sign)))
        self._frame = frame
        self._universe = frame.universe
        self.dim = frame.dim
        self.polarization = frame.extend_character(central_character)
        self.transversal = frame.transversal
        self._coset_of = frame.coset_of
        self._factor = frame.factor
        self._char_cache: Dict[TorusElement, tuple] = {}
        if self.character_inner_product() != 1:
            raise ArithmeticError("induced representation is not irreducible")

    # --------------------------------------------------------------

    def matrix(self, g: TorusElement) -> Monomial:
        perm = []
        phases = []
        pol = self.polarization
        for r in self.transversal:
            y = self.group.multiply(g, r)
            perm.append(self._coset_of[y])
            phases.append(pol[self._factor[y]])
        return Monomial(tuple(perm), tuple(phases))

    def generator_matrices(self) -> dict:
        """Monomial matrices of the torus generators (one per node and
        basis class) plus the central sign."""
        out = {"-1": self.matrix(self.group.minus_identity())}
        for i in range(self.group.rank):
            for j in range(self.group.ef):
                out[(i, 1 << j)] = self.matrix(self.group.generator(i, 1 << j))
        return out

    def character(self, g: TorusElement) -> tuple:
        if g in self._frame.sign_conjugators:
            return (0, 0)  # certified: g is conjugate to -g
        hit = self._char_cache.get(g)
        if hit is None:
            hit = self.matrix(g).trace()
            self._char_cache[g] = hit
        return hit

    def character_table(self) -> dict:
        return {g: self.character(g) for g in self._universe}

    def character_inner_product(self) -> Fraction:
        """Exact <chi, chi>; non-central elements carry a certificate
        s g s^-1 = -g, so chi(g) = chi(-g) = -chi(g) vanishes there and
        only the center contributes to the sum."""
        total = 0
        conj = self._frame.sign_conjugators
        for g in self._universe:
            if g in conj:
                continue
            re, im = self.character(g)
            total += re * re + im * im
        return Fraction(total, len(self._universe))

    def is_genuine(self) -> bool:
        return all(self.character(g.negate()) ==
                   tuple(-c for c in self.character(g))
                   for g in self._universe)


# ----------------------------------------------------------------------
# the pseudo-spherical family


def construct_irrep(group: CoverTorusGroup, chi: dict) -> GenuineRep:
    """The unique genuine irreducible with central character chi."""
    if chi.get(group.minus_identity()) != 2:
        raise ValueError("central character is not genuine")
    return GenuineRep(group, chi)


def all_pseudospherical(group: CoverTorusGroup,
                        cross_check: bool = True) -> List[GenuineRep]:
    """One representation per genuine central character.

    With cross_check, the same family is rebuilt through the product of
    the anisotropic/symplectic factor subgroups (tensoring one genuine
    irreducible per factor and descending through the glued signs), and
    the two character sets are required to coincide.
    """
    if group.rank * group.ef > 12:
        raise ValueError("representation enumeration budget exceeded")
    reps = [construct_irrep(group, chi)
            for chi in genuine_central_characters(group)]
    expected_count = _expected_count(group)
    if expected_count is not None and len(reps) != expected_count:
        raise ArithmeticError("pseudo-spherical count mismatch")
    if cross_check:
        direct = {_freeze_character(rep.character_table(), group)
                  for rep in reps}
        tensor = {_freeze_character(tab, group)
                  for tab in _tensor_construction_tables(group)}
        if direct != tensor:
            raise ArithmeticError(
                "factor-tensor construction disagrees with the direct one")
    return reps


def _expected_count(group: CoverTorusGroup) -> Optional[int]:
    from .rootdata import Ytilde_mod_2Y
    classes = len(Ytilde_mod_2Y(group.datum)["classes"])
    return classes ** group.ef


def _freeze_character(table: dict, group: CoverTorusGroup) -> tuple:
    return tuple(table[g] for g in sorted(
        table, key=lambda x: (x.coords, -x.sign)))


def _tensor_construction_tables(group: CoverTorusGroup) -> List[dict]:
    """Character tables obtained by tensoring one genuine irreducible per
    anisotropic/symplectic factor subgroup and descending to the torus."""
    mn = group.build_MN_factorization()
    k = mn["report"]["k"]
    ell = mn["report"]["l"]
    factors = []  # (mask, sorted subgroup elements)
    for i in range(k):
        factors.append((1 << i, sorted(mn["M"][i],
                                       key=lambda x: (x.coords, -x.sign))))
    for i in range(ell):
        mask = (1 << (k + i)) | (1 << (k + ell + i))
        factors.append((mask, sorted(mn["N"][i],
                                     key=lambda x: (x.coords, -x.sign))))
    factor_reps = []
    for mask, elts in factors:
        chars = _enumerate_genuine_characters(
            group, [x for x in elts
                    if _is_central_in(group, x, elts)])
        factor_reps.append([GenuineRep(group, chi, elements=elts)
                            for chi in chars])

    tables = []
    universe = list(group.elements())
    for combo in itertools.product(*factor_reps):
        table = {}
        for g in universe:
            comps = []
            for (mask, _), rep in zip(factors, combo):
                comps.append(TorusElement(
                    group, 1, tuple(c & mask for c in g.coords)))
            prod = group.identity()
            for comp in comps:
                prod = group.multiply(prod, comp)
            if prod.coords != g.coords:
                raise ArithmeticError("factor decomposition failed")
            delta = g.sign * prod.sign
            re = Fraction(1)
            im = Fraction(0)
            for comp, rep in zip(comps, combo):
                cr, ci = rep.character(comp)
                re, im = re * cr - im * ci, re * ci + im * cr
            table[g] = (delta * re, delta * im)
        tables.append(table)
    return tables


def _is_central_in(group: CoverTorusGroup, x: TorusElement,
                   elts: List[TorusElement]) -> bool:
    return all(group.multiply(x, y) == group.multiply(y, x) for y in elts)


def is_weyl_invariant(rep: GenuineRep) -> bool:
    """Whether the character is fixed by every simple Weyl automorphism."""
    group = rep.group
    for i in range(group.rank):
        phi = group.weyl_automorphism(i)
        for g in rep._universe:
            if rep.character(phi(g)) != rep.character(g):
                return False
    return True


def character_is_weyl_invariant(group: CoverTorusGroup, table: dict) -> bool:
    """Same test for a bare character table (e.g. a sign character)."""
    for i in range(group.rank):
        phi = group.weyl_automorphism(i)
        for g, val in table.items():
            if table[phi(g)] != val:
                return False
    return True


# ----------------------------------------------------------------------
# branching


def _sub_datum_map(datum: RootDatum, drop: int):
    """Bourbaki-relabelled root datum on the nodes other than `drop`,
    which must be an endpoint; returns (sub_datum, kept_nodes_in_order)."""
    r = datum.rank
    kept = [i for i in range(r) if i != drop]
    degree = {i: sum(1 for j in kept if datum.adjacency(i, j)) for i in kept}
    if sum(1 for j in kept if datum.adjacency(drop, j)) != 1:
        raise ValueError("only endpoint nodes can be dropped")
    center = [i for i in kept if degree[i] == 3]
    if center:
        c = center[0]
        leaves = sorted(j for j in kept
                        if degree[j] == 1 and datum.adjacency(c, j))
        # exactly two fork nodes; with three leaf neighbours (a rank-4
        # star) the remaining leaf serves as the end of the chain
        fork = leaves[-2:]
        chain_next = [j for j in kept
                      if datum.adjacency(c, j) and j not in fork]
        chain = [c]
        while chain_next:
            node = chain_next[0]
            chain.append(node)
            chain_next = [j for j in kept if datum.adjacency(node, j)
                          and j not in chain and j not in fork]
        order = list(reversed(chain)) + fork  # 1 .. k-2, then the fork
        letter = "D"
    else:
        ends = sorted(i for i in kept if degree[i] <= 1)
        order = [ends[0]]
        while len(order) < len(kept):
            nxt = [j for j in kept if datum.adjacency(order[-1], j)
                   and j not in order]
            order.append(nxt[0])
        letter = "A"
    sub = RootDatum.build(letter, len(kept))
    for a in range(len(kept)):
        for b in range(len(kept)):
            if sub.cartan[a][b] != datum.cartan[order[a]][order[b]]:
                raise ArithmeticError("sub-diagram relabelling failed")
    return sub, order


def restrict_branch(rep: GenuineRep, drop: int) -> List[Tuple[GenuineRep, int]]:
    """Decomposition of the restriction to the sub-torus obtained by
    deleting one endpoint node, against that torus's own family.

    Returns (constituent, multiplicity) pairs; the restriction is a sum
    of members of the smaller family because triviality on the radical
    part is inherited.
    """
    group = rep.group
    sub, order = _sub_datum_map(group.datum, drop)
    subgroup = CoverTorusGroup(group.space, sub)
    sub_reps = all_pseudospherical(subgroup, cross_check=False)

    def embed(x: TorusElement) -> TorusElement:
        coords = [0] * group.rank
        for a, node in enumerate(order):
            coords[node] = x.coords[a]
        return TorusElement(group, x.sign, tuple(coords))

    sub_universe = list(subgroup.elements())
    out = []
    total = 0
    for sigma in sub_reps:
        acc = 0
        for h in sub_universe:
            re1, im1 = rep.character(embed(h))
            re2, im2 = sigma.character(h)
            acc += re1 * re2 + im1 * im2  # chi * conj(chi_sigma)
        mult = Fraction(acc, len(sub_universe))
        if mult.denominator != 1 or mult < 0:
            raise ArithmeticError("non-integral branching multiplicity")
        if mult:
            out.append((sigma, int(mult)))
            total += int(mult) * sigma.dim
    if total != rep.dim:
        raise ArithmeticError("branching does not fill the dimension")
    return out


# ----------------------------------------------------------------------
# averaged one-parameter sums


def X_matrix(rep: GenuineRep, alpha, u, j: int = 1):
    """The averaged element (1/2^ef) sum over unit classes v of
    (v, u) rho(h_alpha(v)), as a dense Gaussian-rational matrix.

    For j in {0, 1} the unit filtration step U_j covers every class
    modulo the radical, so the sum runs over all of O^x/R; the matrix has
    trace dim/2^ef and squares to (-1 pairing with u)/2^ef times
    rho(h_alpha(-1)).
    """
    if j not in (0, 1):
        raise ValueError("only the first two filtration steps are supported")
    group = rep.group
    if isinstance(u, TorusElement):
        raise TypeError("u must be a unit class bitmask or a field unit")
    if not isinstance(u, int):
        u = group.unit_class(u)
    n = rep.dim
    acc = [[(Fraction(0), Fraction(0))] * n for _ in range(n)]
    for v in range(1 << group.ef):
        elt = group.canonicalize_root_element(alpha, v)
        mat = rep.matrix(elt).dense()
        if group.symbol(v, u) == -1:
            mat = _gauss_mat_scale(mat, Fraction(-1))
        acc = _gauss_mat_add(acc, mat)
    return _gauss_mat_scale(acc, Fraction(1, 1 << group.ef))


def x_matrix_identities(rep: GenuineRep, alpha, u, j: int = 1) -> dict:
    """Exact checks: trace, invertibility-granting square identity and the
    root-negation symmetry of the averaged sums."""
    group = rep.group
    if not isinstance(u, int):
        u = group.unit_class(u)
    X = X_matrix(rep, alpha, u, j)
    tr = _gauss_mat_trace(X)
    expected_tr = (Fraction(rep.dim, 1 << group.ef), Fraction(0))
    X2 = _gauss_mat_mul(X, X)
    chi_m1 = group.symbol(group.minus_one_class, u)
    target = rep.matrix(group.canonicalize_root_element(
        alpha, group.minus_one_class)).dense()
    target = _gauss_mat_scale(target, Fraction(chi_m1, 1 << group.ef))
    neg_alpha = tuple(-a for a in alpha)
    minus_u = u ^ group.minus_one_class
    sym_ok = X_matrix(rep, neg_alpha, u, j) == X_matrix(rep, alpha, minus_u, j)
    report = {
        "trace_ok": tr == expected_tr,
        "square_ok": X2 == target,
        "negation_ok": sym_ok,
        "ok": tr == expected_tr and X2 == target and sym_ok,
    }
    return report


# ----------------------------------------------------------------------
# tabulation


def table2_row(group: CoverTorusGroup, cross_check: bool = False) -> dict:
    """(dimension, count) of the family plus the exactness bookkeeping."""
    reps = all_pseudospherical(group, cross_check=cross_check)
    dims = sorted({rep.dim for rep in reps})
    if len(dims) != 1:
        raise ArithmeticError("pseudo-spherical dimensions disagree")
    total = sum(rep.dim ** 2 for rep in reps)
    return {
        "type": group.datum.cartan_type,
        "rank": group.rank,
        "e": group.field.e,
        "f": group.field.f,
        "dimension": dims[0],
        "count": len(reps),
        "sum_of_squares": total,
        "genuine_part": group.order // 2,
        "sum_rule_ok": total == group.order // 2,
    }
