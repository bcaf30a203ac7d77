"""The finite covering torus: a sign extension of r copies of the unit
square classes modulo the integral radical, multiplied by Steinberg's
torus relations.

Elements are written canonically as a sign times an ordered product
h_1(t_1) ... h_r(t_r) of generators indexed by the simple roots, with
each argument t_i a class in O^x/R (an F_2 vector of dimension ef).
Multiplication bubbles the right factor's generators leftward into
canonical position; each transposition across adjacent nodes contributes
the Hilbert pairing of the two arguments, and merging two generators at
the same node contributes the pairing of their arguments.  Signs against
classes in R vanish, which is exactly why the quotient is well defined.

The group has order 2 * 2^(r*ef); its center is the sign subgroup times
the tuples whose coordinate pattern columns lie in Ytilde/2Y.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .padic import PadicElement, SquareClassSpace, _gf2_solve, _in_gf2_span
from .rootdata import RootDatum


def _popcount_parity(x: int) -> int:
    return bin(x).count("1") & 1


class CoverTorusGroup:
    """Finite covering torus attached to a square-class space and a
    simply-laced root datum.

    The coordinate space is O^x/R in the basis coming from the
    orthogonal/symplectic decomposition (anisotropic classes first, then
    symplectic pairs); classes are packed into int bitmasks.
    """

    def __init__(self, space: SquareClassSpace, datum: RootDatum):
        self.space = space
        self.datum = datum
        self.field = space.field
        self.ef = space.field.e * space.field.f
        self.rank = datum.rank
        quotient_basis = [tuple(v) for v in space.D_basis] + \
                         [tuple(v) for v in space.Dperp_basis]
        if len(quotient_basis) != self.ef:
            raise ValueError("square-class space decomposition is incomplete")
        self.quotient_basis = quotient_basis
        self.basis_kinds = self._basis_kinds()
        self.gram = tuple(
            tuple(space.pairing(u, v) for v in quotient_basis)
            for u in quotient_basis)
        self._gram_rows = tuple(
            sum(bit << j for j, bit in enumerate(row)) for row in self.gram)
        self.minus_one_class = self._express_unit_class(-space.field.one())
        self.cartan_mod2 = tuple(
            tuple(abs(c) % 2 for c in row) for row in datum.cartan)
        self.order = 2 * (1 << (self.rank * self.ef))

    def _basis_kinds(self) -> tuple:
        k = len(self.space.D_basis)
        ell = len(self.space.Dperp_basis) // 2
        kinds = [("u", i) for i in range(k)]
        kinds += [("e", i) for i in range(ell)]
        kinds += [("f", i) for i in range(ell)]
        return tuple(kinds)

    # ------------------------------------------------------------------
    # classes

    def _express_unit_class(self, x: PadicElement) -> int:
        """Coordinates of a unit's class in the quotient basis (mod R)."""
        coords = list(self.space.class_coordinates(x))
        if coords[0]:
            raise ValueError("argument has odd valuation")
        rad = list(self.space.radical_vector)
        n = len(coords)
        basis_full = [list(v) for v in self.quotient_basis] + [rad]
        # solve coords = sum bits_i * basis_i (+ radical component)
        mat = [[basis_full[j][i] for j in range(len(basis_full))]
               for i in range(n)]
        # least-squares-free exact solve over F_2 by Gaussian elimination
        rows = [mat[i] + [coords[i]] for i in range(n)]
        m = len(basis_full)
        piv = []
        r = 0
        for col in range(m):
            sel = next((i for i in range(r, n) if rows[i][col]), None)
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            for i in range(n):
                if i != r and rows[i][col]:
                    rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
            piv.append(col)
            r += 1
        sol = [0] * m
        for i, col in enumerate(piv):
            sol[col] = rows[i][m]
        recon = [0] * n
        for j in range(m):
            if sol[j]:
                recon = [a ^ b for a, b in zip(recon, basis_full[j])]
        if recon != coords:
            raise ArithmeticError("unit class is outside the quotient span")
        return sum(sol[j] << j for j in range(self.ef))

    def unit_class(self, x: PadicElement) -> int:
        """Bitmask of the class of a unit in O^x/R."""
        return self._express_unit_class(x)

    def class_representative(self, bits: int) -> PadicElement:
        out = self.field.one()
        for j in range(self.ef):
            if bits >> j & 1:
                out = out * self.space.element_from_coordinates(
                    self.quotient_basis[j])
        return out

    def symbol(self, u: int, v: int) -> int:
        """Hilbert pairing of two classes, as +-1."""
        acc = 0
        x = u
        while x:
            j = (x & -x).bit_length() - 1
            acc ^= _popcount_parity(self._gram_rows[j] & v)
            x &= x - 1
        return -1 if acc else 1

    # ------------------------------------------------------------------
    # elements

    def identity(self) -> "TorusElement":
        return TorusElement(self, 1, (0,) * self.rank)

    def minus_identity(self) -> "TorusElement":
        return TorusElement(self, -1, (0,) * self.rank)

    def generator(self, i: int, bits) -> "TorusElement":
        """h_{alpha_i}(t) for a simple root index and a class."""
        if isinstance(bits, PadicElement):
            bits = self.unit_class(bits)
        coords = [0] * self.rank
        coords[i] = bits
        return TorusElement(self, 1, tuple(coords))

    def element(self, sign: int, coords: Sequence[int]) -> "TorusElement":
        if sign not in (1, -1):
            raise ValueError("sign must be +-1")
        return TorusElement(self, sign, tuple(int(c) for c in coords))

    def elements(self) -> Iterable["TorusElement"]:
        """All elements in lexicographic canonical order (signs +1 first)."""
        space = range(1 << self.ef)
        for coords in itertools.product(space, repeat=self.rank):
            yield TorusElement(self, 1, coords)
            yield TorusElement(self, -1, coords)

    def multiply(self, a: "TorusElement", b: "TorusElement") -> "TorusElement":
        if a.group is not self or b.group is not self:
            raise ValueError("elements from different torus groups")
        sign_bit = 0 if a.sign * b.sign == 1 else 1
        c = list(a.coords)
        cart = self.cartan_mod2
        rows = self._gram_rows
        for i in range(self.rank):
            bi = b.coords[i]
            if bi:
                # bubble h_{alpha_i}(b_i) left past h_{alpha_j}(c_j), j > i
                for j in range(i + 1, self.rank):
                    if c[j] and cart[i][j]:
                        x = bi
                        acc = 0
                        while x:
                            t = (x & -x).bit_length() - 1
                            acc ^= _popcount_parity(rows[t] & c[j])
                            x &= x - 1
                        sign_bit ^= acc
                # merge with the resident generator at node i
                x = c[i]
                acc = 0
                while x:
                    t = (x & -x).bit_length() - 1
                    acc ^= _popcount_parity(rows[t] & bi)
                    x &= x - 1
                sign_bit ^= acc
                c[i] ^= bi
        return TorusElement(self, -1 if sign_bit else 1, tuple(c))

    # ------------------------------------------------------------------
    # root elements and Weyl automorphisms

    def canonicalize_root_element(self, gamma, bits) -> "TorusElement":
        """h_gamma(t) for an arbitrary root, in canonical form.

        Positive non-simple roots are split as h_{gamma-alpha} h_alpha at
        the lowest-indexed simple alpha with <gamma, alpha_vee> = 1 (the
        braid-conjugation relation for adjacent roots); negative roots are
        handled by h_{-gamma}(t) = (t, -1) h_gamma(t^-1) and t^-1 = t mod R.
        """
        if isinstance(bits, PadicElement):
            bits = self.unit_class(bits)
        gamma = tuple(gamma)
        if gamma not in self.datum.roots:
            raise ValueError(f"{gamma} is not a root")
        return self._canon(gamma, bits)

    def _canon(self, gamma, bits) -> "TorusElement":
        if sum(gamma) < 0:
            pos = self._canon(tuple(-g for g in gamma), bits)
            sign = self.symbol(bits, self.minus_one_class)
            return TorusElement(self, sign * pos.sign, pos.coords)
        ht = sum(gamma)
        if ht == 1:
            i = gamma.index(1)
            return self.generator(i, bits)
        for i in range(self.rank):
            basis = self.datum.simple_root(i)
            if self.datum.pairing(gamma, basis) == 1 and gamma != basis:
                rest = tuple(g - b for g, b in zip(gamma, basis))
                return self.multiply(self._canon(rest, bits),
                                     self.generator(i, bits))
        raise ArithmeticError(f"no descent for root {gamma}")

    def weyl_automorphism(self, i: int) -> Callable[["TorusElement"], "TorusElement"]:
        """Conjugation by the Weyl representative of the i-th simple
        reflection: fixes h_{alpha_i}(t) and orthogonal generators, and
        maps adjacent h_beta(t) to h_beta(t) h_{alpha_i}(t)."""
        if not 0 <= i < self.rank:
            raise ValueError("simple root index out of range")

        def phi(x: "TorusElement") -> "TorusElement":
            if x.group is not self:
                raise ValueError("element from another group")
            out = TorusElement(self, x.sign, (0,) * self.rank)
            for j in range(self.rank):
                bits = x.coords[j]
                if not bits:
                    continue
                img = self.generator(j, bits)
                if j != i and self.cartan_mod2[i][j]:
                    img = self.multiply(img, self.generator(i, bits))
                out = self.multiply(out, img)
            return out

        return phi

    # ------------------------------------------------------------------
    # structure

    def center(self, budget: int = 1 << 16) -> list:
        """All central elements, by commutation against the generators."""
        if self.order > budget:
            raise ValueError(f"group order {self.order} exceeds budget {budget}")
        gens = [self.generator(i, 1 << j)
                for i in range(self.rank) for j in range(self.ef)]
        out = []
        for x in self.elements():
            if all(self.multiply(x, g) == self.multiply(g, x) for g in gens):
                out.append(x)
        return out

    def predicted_center_order(self, parity_classes: Sequence[Sequence[int]]) -> int:
        """2 * |Ytilde/2Y|^(ef): every coordinate column must be a parity class."""
        return 2 * len(parity_classes) ** self.ef

    def subgroup_closure(self, gens: Sequence["TorusElement"],
                         budget: int = 1 << 16) -> set:
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.multiply(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > budget:
                            raise ValueError("subgroup closure exceeds budget")
            frontier = nxt
        return seen

    def build_MN_factorization(self) -> dict:
        """Subgroups generated by the anisotropic classes (one M per u_i)
        and by the symplectic pairs (one N per (e_i, f_i)), with the order
        bookkeeping of the product covering the whole group."""
        k = len(self.space.D_basis)
        ell = len(self.space.Dperp_basis) // 2
        m_groups = []
        for i in range(k):
            gens = [self.canonicalize_root_element(gamma, 1 << i)
                    for gamma in self.datum.roots]
            m_groups.append(self.subgroup_closure(gens))
        n_groups = []
        for i in range(ell):
            be = 1 << (k + i)
            bf = 1 << (k + ell + i)
            gens = [self.canonicalize_root_element(gamma, b)
                    for gamma in self.datum.roots for b in (be, bf)]
            n_groups.append(self.subgroup_closure(gens))
        all_gens = [self.generator(i, 1 << j)
                    for i in range(self.rank) for j in range(self.ef)]
        all_gens.append(self.minus_identity())
        product = self.subgroup_closure(all_gens)
        sizes = [len(g) for g in m_groups] + [len(g) for g in n_groups]
        prod_sizes = 1
        for s in sizes:
            prod_sizes *= s
        report = {
            "k": k,
            "l": ell,
            "M_orders": [len(g) for g in m_groups],
            "N_orders": [len(g) for g in n_groups],
            "product_order": len(product),
            "expected_product_order": self.order,
            "order_identity": prod_sizes == len(product) * 2 ** (k + ell - 1),
            "ok": (len(product) == self.order
                   and prod_sizes == len(product) * 2 ** (k + ell - 1)),
        }
        if not report["ok"]:
            raise ArithmeticError(f"M/N factorization failed: {report}")
        return {"M": m_groups, "N": n_groups, "report": report}

    def __repr__(self):
        return (f"CoverTorusGroup({self.datum.cartan_type}{self.rank}, "
                f"ef={self.ef}, order={self.order})")


@dataclass(frozen=True)
class TorusElement:
    """Canonical form: sign * h_1(t_1) ... h_r(t_r), coords[i] the class
    bitmask of t_i.  Equality is componentwise."""

    group: CoverTorusGroup = field(compare=False, hash=False, repr=False)
    sign: int = 1
    coords: tuple = ()

    def __hash__(self):
        return hash((self.sign, self.coords))

    def __eq__(self, other):
        return (isinstance(other, TorusElement) and self.sign == other.sign
                and self.coords == other.coords)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "TorusElement":
        square = self.group.multiply(self, self)
        # the square is a central sign, so x^-1 = sign(x^2) * x
        if any(square.coords):
            raise ArithmeticError("element square is not central")
        return TorusElement(self.group, self.sign * square.sign, self.coords)

    def negate(self) -> "TorusElement":
        return TorusElement(self.group, -self.sign, self.coords)

    def __repr__(self):
        return f"TorusElement(sign={self.sign:+d}, coords={self.coords})"


def cover_torus_order(space: SquareClassSpace, datum: RootDatum,
                      modulus: str = "R") -> int:
    """Order of the covering torus for the chosen argument modulus:
    classes mod R (the default carrying all representation content) or
    the finer classes mod U_{2e} (for order computations only)."""
    fld = space.field
    r = datum.rank
    if modulus == "R":
        return 2 * (1 << (r * fld.e * fld.f))
    if modulus == "U2e":
        classes = (fld.q - 1) * fld.q ** (2 * fld.e - 1)
        return 2 * classes ** r
    raise ValueError("modulus must be 'R' or 'U2e'")
