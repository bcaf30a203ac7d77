"""Simply-laced root systems and the even-pairing sublattice of the
coroot lattice.

Roots are integer vectors in simple-root coordinates, coweights integer
vectors in simple-coroot coordinates; the Cartan matrix (symmetric for
types A, D, E) gives the pairing between them.  Simple roots follow the
Bourbaki numbering: chains for A_r, a fork on node r-2 for D_r (node 1
for D_3), and node 2 hanging off node 4 (node 3 for E_6... node 4 in all
E types) for E_6, E_7, E_8.

The lattice of interest is Ytilde = {y in Y : <alpha, y> even for all
roots alpha}; its classes modulo 2Y are parity patterns on the Dynkin
diagram (odd nodes drawn as 'o', even as '*').
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def cartan_matrix(cartan_type: str, rank: int) -> tuple:
    """Symmetric Cartan matrix in Bourbaki numbering."""
    t = cartan_type.upper()
    edges = []
    if t == "A":
        if rank < 2:
            raise ValueError("type A requires rank >= 2")
        edges = [(i, i + 1) for i in range(1, rank)]
    elif t == "D":
        if rank < 3:
            raise ValueError("type D requires rank >= 3")
        edges = [(i, i + 1) for i in range(1, rank - 2)]
        edges += [(rank - 2, rank - 1), (rank - 2, rank)]
        if rank == 3:  # fork directly on node 1
            edges = [(1, 2), (1, 3)]
    elif t == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E requires rank 6, 7 or 8")
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)]
        edges += [(i, i + 1) for i in range(5, rank)]
    else:
        raise ValueError(f"unsupported Cartan type {cartan_type!r}")
    mat = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        mat[i][i] = 2
    for i, j in edges:
        mat[i - 1][j - 1] = -1
        mat[j - 1][i - 1] = -1
    return tuple(tuple(row) for row in mat)


_ROOT_COUNTS = {"A": lambda r: r * (r + 1), "D": lambda r: 2 * r * (r - 1),
                "E": lambda r: {6: 72, 7: 126, 8: 240}[r]}


@dataclass(frozen=True)
class RootDatum:
    """An irreducible simply-laced root system with its coroot lattice."""

    cartan_type: str
    rank: int
    cartan: tuple
    roots: tuple            # all roots, simple-root coordinates
    positive_roots: tuple
    highest_root: tuple

    @classmethod
    def build(cls, cartan_type: str, rank: int) -> "RootDatum":
        cartan = cartan_matrix(cartan_type, rank)
        return cls._from_cartan(cartan_type.upper(), rank, cartan)

    @classmethod
    def _from_cartan(cls, t: str, rank: int, cartan: tuple) -> "RootDatum":
        simple = [tuple(1 if j == i else 0 for j in range(rank))
                  for i in range(rank)]
        roots = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for j in range(rank):
                    pair = sum(beta[i] * cartan[i][j] for i in range(rank))
                    refl = tuple(beta[i] - (pair if i == j else 0)
                                 for i in range(rank))
                    if refl not in roots:
                        roots.add(refl)
                        nxt.append(refl)
            frontier = nxt
        expected = _ROOT_COUNTS[t](rank)
        if len(roots) != expected:
            raise ArithmeticError(
                f"root closure produced {len(roots)} roots, expected {expected}")
        positive = tuple(sorted(b for b in roots if sum(b) > 0))
        highest = max(positive, key=sum)
        for beta in positive:
            if any(h < b for h, b in zip(highest, beta)):
                raise ArithmeticError("highest root is not coordinatewise maximal")
        return cls(t, rank, cartan, tuple(sorted(roots)), positive, highest)

    # ------------------------------------------------------------------

    def pairing(self, root: Sequence[int], coweight: Sequence) -> object:
        """<beta, y> for a root in simple-root and y in simple-coroot
        coordinates (values integral on the coroot lattice)."""
        r = self.rank
        return sum(root[i] * self.cartan[i][j] * coweight[j]
                   for i in range(r) for j in range(r) if root[i])

    def coroot(self, root: Sequence[int]) -> tuple:
        """Coroot coordinates of a root (identical vectors: simply laced)."""
        return tuple(root)

    def simple_root(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    @property
    def lowest_root(self) -> tuple:
        return tuple(-c for c in self.highest_root)

    def reflect_coweight(self, i: int, y: Sequence) -> tuple:
        """w_{alpha_i}(y) = y - <alpha_i, y> alpha_i^vee on coweights."""
        pair = sum(self.cartan[i][j] * y[j] for j in range(self.rank))
        return tuple(y[j] - (pair if j == i else 0) for j in range(self.rank))

    def reflect_root(self, i: int, beta: Sequence[int]) -> tuple:
        """w_{alpha_i}(beta) on roots."""
        pair = sum(beta[j] * self.cartan[j][i] for j in range(self.rank))
        return tuple(beta[j] - (pair if j == i else 0) for j in range(self.rank))

    def simple_reflection_matrix(self, i: int) -> tuple:
        """Matrix of w_{alpha_i} acting on coroot coordinates (columns are
        images of the simple coroots)."""
        cols = [self.reflect_coweight(i, self.simple_root(j))
                for j in range(self.rank)]
        return tuple(tuple(cols[j][k] for j in range(self.rank))
                     for k in range(self.rank))

    def adjacency(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] == -1

    def fundamental_coweights(self) -> tuple:
        """Columns of the inverse Cartan matrix, as exact fractions."""
        r = self.rank
        aug = [[Fraction(self.cartan[i][j]) for j in range(r)]
               + [Fraction(1 if j == i else 0) for j in range(r)]
               for i in range(r)]
        for col in range(r):
            piv = next(i for i in range(col, r) if aug[i][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pivval = aug[col][col]
            aug[col] = [x / pivval for x in aug[col]]
            for i in range(r):
                if i != col and aug[i][col] != 0:
                    factor = aug[i][col]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
        inv = [[aug[i][r + j] for j in range(r)] for i in range(r)]
        return tuple(tuple(inv[i][j] for i in range(r)) for j in range(r))

    def marks(self) -> tuple:
        """Coefficients of the highest root on the simple roots."""
        return self.highest_root


# ----------------------------------------------------------------------
# the sublattice Ytilde and its parity classes


def in_Y_tilde(sys: RootDatum, y: Sequence[int]) -> bool:
    """Whether <alpha, y> is even for every root (simple roots suffice)."""
    return all(sum(sys.cartan[i][j] * y[j] for j in range(sys.rank)) % 2 == 0
               for i in range(sys.rank))


def Ytilde_mod_2Y(sys: RootDatum) -> dict:
    """All parity classes of Ytilde/2Y, with the group and index [Y:Ytilde].

    Classes are 0/1 coefficient vectors; each is also rendered as a
    Dynkin-diagram string with 'o' at odd nodes and '*' at even nodes.
    """
    r = sys.rank
    classes = []
    for bits in range(1 << r):
        vec = tuple(bits >> i & 1 for i in range(r))
        if in_Y_tilde(sys, vec):
            classes.append(vec)
    count = len(classes)
    if count == 1:
        group = "1"
    elif count == 2:
        group = "Z/2"
    elif count == 4:
        group = "Z/2 x Z/2"
    else:
        raise ArithmeticError(f"unexpected parity class count {count}")
    diagrams = ["".join("o" if c else "*" for c in vec) for vec in classes]
    return {
        "type": sys.cartan_type,
        "rank": r,
        "classes": classes,
        "group": group,
        "index": (1 << r) // count,
        "diagrams": diagrams,
        "nontrivial_diagrams": sorted(d for d in diagrams if "o" in d),
    }


def weyl_reflect(sys: RootDatum, i: int, y: Sequence[int]) -> tuple:
    """Simple reflection on the coroot lattice, for generating W-orbits."""
    return sys.reflect_coweight(i, y)
