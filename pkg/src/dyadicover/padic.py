"""Truncated 2-adic field arithmetic and the quadratic Hilbert symbol.

A field F is a finite extension of Q_2 given by a two-stage tower: an
unramified layer W = Z_2[y]/(U(y)) of inertia degree f, followed by a
totally ramified Eisenstein extension O = W[pi]/(E(pi)) of degree e, so
that 2*O = pi^e*O and the residue field has q = 2^f elements.

Elements are carried with a fixed budget of pi-digits.  On top of the
raw arithmetic this module computes:

  * squareness (is_square), decided modulo U_{2e+1} = 1 + pi^(2e+1)*O;
  * the quadratic Hilbert symbol (a, b), by enumerating the square
    classes of the binary norm form x^2 - a*y^2;
  * the square-class group F^x/F^x2 as an F_2 vector space together
    with its Gram matrix of Hilbert symbols (SquareClassSpace);
  * the integral radical R = U_{2e}*O^x2, the unique subgroup of O^x
    of index 2^(ef) pairing trivially with every unit;
  * the orthogonal/symplectic decomposition of O^x/R.

All computations are exact; no floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence


class PrecisionError(ArithmeticError):
    """Raised when an operation would need more pi-digits than carried."""


# Irreducible polynomials over F_2, used as default residue towers.
# Bit k of the integer is the coefficient of y^k.
_F2_IRREDUCIBLE = {
    1: 0b10,        # y
    2: 0b111,       # y^2 + y + 1
    3: 0b1011,      # y^3 + y + 1
    4: 0b10011,     # y^4 + y + 1
    5: 0b100101,    # y^5 + y^2 + 1
    6: 0b1000011,   # y^6 + y + 1
}

MAX_EF = 6  # enumeration budget: norm searches stay under ~10^6 pairs


def _f2_poly_mulmod(a: int, b: int, mod: int) -> int:
    deg = mod.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= mod
    return r


def _f2_poly_is_irreducible(mod: int) -> bool:
    deg = mod.bit_length() - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in range(1 << d):
            g = (1 << d) | low
            r = mod
            while r and r.bit_length() >= g.bit_length():
                r ^= g << (r.bit_length() - g.bit_length())
            if r == 0:
                return False
    return True


class _ResidueField:
    """GF(2^f) with elements as f-bit integers (coordinates in 1,y,..,y^{f-1})."""

    def __init__(self, f: int, modulus_bits: int):
        self.f = f
        self.q = 1 << f
        self.modulus_bits = modulus_bits
        self._mul = [[_f2_poly_mulmod(a, b, modulus_bits) for b in range(self.q)]
                     for a in range(self.q)]
        self._inv = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("residue-field inverse of 0")
        return self._inv[a]


class FieldSpec:
    """A 2-adic field with ramification e, inertia f and a pi-digit budget N.

    The ring of integers is modelled inside O/2^M with M chosen well above
    the digit budget; public operations only claim digits they can
    guarantee.  Instances are immutable after construction (the caches are
    write-once tables keyed by exact digit strings).
    """

    def __init__(self, e: int, f: int, eisenstein: Optional[Sequence[int]] = None,
                 unramified_modulus: Optional[Sequence[int]] = None,
                 precision: Optional[int] = None):
        if e < 1 or f < 1:
            raise ValueError("ramification and inertia degrees must be positive")
        if e * f > MAX_EF:
            raise ValueError(f"e*f = {e * f} exceeds the enumeration budget {MAX_EF}")
        self.e = e
        self.f = f
        self.q = 1 << f
        self.N = 4 * e + 2 if precision is None else int(precision)
        if self.N < 4 * e + 2:
            raise ValueError("working precision must be at least 4e+2 pi-digits")
        self._mbits = self.N + 8
        self._mask = (1 << self._mbits) - 1

        if unramified_modulus is None:
            umod_bits = _F2_IRREDUCIBLE[f]
            self.unramified_modulus = tuple(umod_bits >> k & 1 for k in range(f + 1))
        else:
            self.unramified_modulus = tuple(int(c) for c in unramified_modulus)
            if len(self.unramified_modulus) != f + 1 or self.unramified_modulus[-1] != 1:
                raise ValueError("unramified modulus must be monic of degree f")
            umod_bits = 0
            for k, c in enumerate(self.unramified_modulus):
                umod_bits |= (c & 1) << k
            if not _f2_poly_is_irreducible(umod_bits):
                raise ValueError("unramified modulus must be irreducible mod 2")
        self.residue = _ResidueField(f, umod_bits)

        if eisenstein is None:
            coeffs = [-2] + [0] * (e - 1) + [1]
            self.eisenstein = tuple(coeffs)
            self.eisenstein_defaulted = True
        else:
            coeffs = [int(c) for c in eisenstein]
            if len(coeffs) == e:  # lower coefficients only
                coeffs = coeffs + [1]
            if len(coeffs) != e + 1 or coeffs[e] != 1:
                raise ValueError("Eisenstein polynomial must be monic of degree e")
            self.eisenstein = tuple(coeffs)
            self.eisenstein_defaulted = False
        for j in range(e):
            if self.eisenstein[j] % 2 != 0:
                raise ValueError(f"not Eisenstein: coefficient {j} has valuation 0")
        if self.eisenstein[0] % 4 == 0:
            raise ValueError("not Eisenstein: constant term has valuation > 1")

        self._build_ring_tables()
        v2 = self.from_integer(2).valuation
        if v2 != e:
            raise ValueError(f"Eisenstein check failed: val(2) = {v2}, expected {e}")

    # ------------------------------------------------------------------
    # the ring O/2^M: flat tuples of e*f integers, index i*f + j holding
    # the coefficient of pi^i y^j

    def _build_ring_tables(self):
        e, f, mask = self.e, self.f, self._mask
        umod = self.unramified_modulus
        # y^k for f <= k <= 2f-2 as W-vectors (length f)
        ytab = [tuple((-umod[j]) & mask for j in range(f))]  # y^f
        for _ in range(f - 2):
            prev = ytab[-1]
            nxt = [0] * f
            for j in range(f - 1):
                nxt[j + 1] = prev[j]
            top = prev[f - 1]
            if top:
                for j in range(f):
                    nxt[j] = (nxt[j] + top * ytab[0][j]) & mask
            ytab.append(tuple(nxt))
        self._ytab = ytab

        # pi as a ring element
        eis = self.eisenstein
        if e > 1:
            pivec = [0] * (e * f)
            pivec[f] = 1
            self._pivec = tuple(pivec)
        else:
            pivec = [0] * f
            pivec[0] = (-eis[0]) & mask
            self._pivec = tuple(pivec)

        # pi^k for e <= k <= 2e-2 as ring vectors, built by shifting
        pitab = []
        base = [0] * (e * f)
        for j in range(e):
            base[j * f] = (-eis[j]) & mask  # pi^e = -sum eis[j] pi^j
        pitab.append(tuple(base))
        for _ in range(max(0, e - 2)):
            prev = pitab[-1]
            nxt = [0] * (e * f)
            for i in range(e - 1):
                for j in range(f):
                    nxt[(i + 1) * f + j] = prev[i * f + j]
            top = prev[(e - 1) * f:e * f]  # W-coefficient of pi^(e-1)
            if any(top):
                for j2 in range(f):
                    c = top[j2]
                    if not c:
                        continue
                    ypow = self._wshift_ring(pitab[0], j2)
                    for idx in range(e * f):
                        nxt[idx] = (nxt[idx] + c * ypow[idx]) & mask
            pitab.append(tuple(nxt))
        self._pitab = pitab

        # g with pi^e = 2*g (g is a unit since the polynomial is Eisenstein)
        g = [0] * (e * f)
        for j in range(e):
            g[j * f] = ((-eis[j]) // 2) & mask
        self._g = tuple(g)
        self._ginv = self._ring_unit_inverse(self._g)
        # dividing by pi: x/pi = halve(x * pi^(e-1) * g^(-1))
        if e > 1:
            pim1 = [0] * (e * f)
            pim1[(e - 1) * f] = 1
            pim1 = tuple(pim1)
        else:
            pim1 = tuple([1] + [0] * (f - 1))
        self._pidiv = self.rmul(pim1, self._ginv)

        self._pipow_cache = [self._one_vec()]
        for _ in range(self.N + 6):
            self._pipow_cache.append(self.rmul(self._pipow_cache[-1], self._pivec))
        self._build_fast_tables()
        self._square_cache: dict = {}
        self._norm_class_cache: dict = {}

    def _build_fast_tables(self):
        """Flatten multiplication into a structure tensor, division by pi
        into a matrix, and digit lifting into lookup tables; the generic
        polynomial machinery above is only used to build these once."""
        e, f, n = self.e, self.f, self.e * self.f
        plan = []
        for j in range(n):
            ej = tuple(1 if t == j else 0 for t in range(n))
            for k in range(j, n):
                ek = tuple(1 if t == k else 0 for t in range(n))
                prod = self._slow_rmul(ej, ek)
                row = tuple((i, c) for i, c in enumerate(prod) if c)
                if row:
                    plan.append((j, k, row))
        self._mul_plan = tuple(plan)
        self._divpi_rows = tuple(
            tuple(self._slow_rmul(
                tuple(1 if t == j else 0 for t in range(n)), self._pidiv))
            for j in range(n))
        self._digit_pi = tuple(
            tuple(self.rmul(self._lift_digit(d), self._pipow_cache[k])
                  for d in range(self.q))
            for k in range(self.N + 6))

    def _slow_rmul(self, a, b):
        return FieldSpec._generic_rmul(self, a, b)

    def _one_vec(self) -> tuple:
        vec = [0] * (self.e * self.f)
        vec[0] = 1
        return tuple(vec)

    def _wshift_ring(self, vec: Sequence[int], j2: int) -> tuple:
        """Multiply a ring vector by y^j2 (0 <= j2 < f)."""
        if j2 == 0:
            return tuple(vec)
        e, f, mask = self.e, self.f, self._mask
        out = [0] * (e * f)
        for i in range(e):
            coeff = [0] * (2 * f - 1)
            for j in range(f):
                coeff[j + j2] = vec[i * f + j]
            red = self._wreduce(coeff)
            for j in range(f):
                out[i * f + j] = red[j]
        return tuple(out)

    def _wreduce(self, coeff: Sequence[int]) -> list:
        f, mask = self.f, self._mask
        out = [c & mask for c in coeff[:f]]
        out += [0] * (f - len(out))
        for k in range(len(coeff) - 1, f - 1, -1):
            c = coeff[k]
            if c:
                row = self._ytab[k - f]
                for j in range(f):
                    out[j] = (out[j] + c * row[j]) & mask
        return out

    def _wmul(self, a: Sequence[int], b: Sequence[int]) -> list:
        f, mask = self.f, self._mask
        if f == 1:
            return [(a[0] * b[0]) & mask]
        conv = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] = (conv[i + j] + ai * bj) & mask
        return self._wreduce(conv)

    def rmul(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        """Product in O/2^M (via the precomputed structure tensor)."""
        plan = getattr(self, "_mul_plan", None)
        if plan is None:
            return self._generic_rmul(a, b)
        out = [0] * (self.e * self.f)
        for j, k, row in plan:
            c = a[j] * b[k] + (a[k] * b[j] if k != j else 0)
            if c:
                for i, t in row:
                    out[i] += c * t
        mask = self._mask
        return tuple(v & mask for v in out)

    def _generic_rmul(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        e, f, mask = self.e, self.f, self._mask
        if e == 1:
            return tuple(self._wmul(a, b))
        conv = [[0] * f for _ in range(2 * e - 1)]
        for i in range(e):
            av = a[i * f:i * f + f]
            if not any(av):
                continue
            for k in range(e):
                bv = b[k * f:k * f + f]
                if not any(bv):
                    continue
                prod = self._wmul(av, bv)
                row = conv[i + k]
                for j in range(f):
                    row[j] = (row[j] + prod[j]) & mask
        out = [0] * (e * f)
        for i in range(e):
            for j in range(f):
                out[i * f + j] = conv[i][j]
        for k in range(2 * e - 2, e - 1, -1):
            cv = conv[k]
            if any(cv):
                red = self._pitab[k - e]
                for j2 in range(f):
                    c = cv[j2]
                    if not c:
                        continue
                    ypow = self._wshift_ring(red, j2)
                    for idx in range(e * f):
                        out[idx] = (out[idx] + c * ypow[idx]) & mask
        return tuple(out)

    def radd(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        mask = self._mask
        return tuple((x + y) & mask for x, y in zip(a, b))

    def rsub(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        mask = self._mask
        return tuple((x - y) & mask for x, y in zip(a, b))

    def rneg(self, a: Sequence[int]) -> tuple:
        mask = self._mask
        return tuple((-x) & mask for x in a)

    def _residue_bits(self, vec: Sequence[int]) -> int:
        r = 0
        for j in range(self.f):
            r |= (vec[j] & 1) << j
        return r

    def _lift_digit(self, d: int) -> tuple:
        vec = [0] * (self.e * self.f)
        for j in range(self.f):
            vec[j] = d >> j & 1
        return tuple(vec)

    def _div_pi(self, vec: Sequence[int], mbits: int) -> tuple:
        """Divide an element of pi*O by pi; result is good mod 2^(mbits-1)."""
        rows = getattr(self, "_divpi_rows", None)
        if rows is None:
            prod = self.rmul(vec, self._pidiv)
        else:
            n = self.e * self.f
            prod = [0] * n
            for j in range(n):
                c = vec[j]
                if c:
                    row = rows[j]
                    for i in range(n):
                        if row[i]:
                            prod[i] += c * row[i]
        halfmask = (1 << (mbits - 1)) - 1
        out = []
        for c in prod:
            c &= (1 << mbits) - 1
            if c & 1:
                raise PrecisionError("element not divisible by pi")
            out.append((c >> 1) & halfmask)
        return tuple(out)

    def _digits_from(self, vec: Sequence[int], count: int, mbits: int) -> tuple:
        if count >= mbits - 1:
            raise PrecisionError("digit request exceeds the ring modulus")
        work = tuple(vec)
        out = []
        for _ in range(count):
            d = self._residue_bits(work)
            out.append(d)
            if d:
                work = self.rsub(work, self._lift_digit(d))
            work = self._div_pi(work, mbits)
            mbits -= 1
        return tuple(out)

    def _digits(self, vec: Sequence[int], count: int) -> tuple:
        return self._digits_from(vec, count, self._mbits)

    def _ring_val(self, vec: Sequence[int], limit: int) -> Optional[int]:
        """pi-valuation of a ring element, or None if >= limit."""
        if limit >= self._mbits - 1:
            raise PrecisionError("valuation scan exceeds the ring modulus")
        work = tuple(vec)
        mbits = self._mbits
        for k in range(limit):
            if self._residue_bits(work):
                return k
            work = self._div_pi(work, mbits)
            mbits -= 1
        return None

    def _ring_from_digits(self, digits: Sequence[int]) -> tuple:
        table = getattr(self, "_digit_pi", None)
        n = self.e * self.f
        if table is None:
            vec = tuple([0] * n)
            for k, d in enumerate(digits):
                if d:
                    vec = self.radd(vec, self.rmul(self._lift_digit(d),
                                                   self._pipow_cache[k]))
            return vec
        out = [0] * n
        for k, d in enumerate(digits):
            if d:
                row = table[k][d]
                for i in range(n):
                    out[i] += row[i]
        mask = self._mask
        return tuple(v & mask for v in out)

    def _ring_unit_inverse(self, vec: Sequence[int]) -> tuple:
        r = self._residue_bits(vec)
        if r == 0:
            raise ZeroDivisionError("inverse of a non-unit")
        x = self._lift_digit(self.residue.inv(r))
        twovec = tuple([2] + [0] * (self.e * self.f - 1))
        for _ in range(self._mbits.bit_length() + 2):
            x = self.rmul(x, self.rsub(twovec, self.rmul(vec, x)))
        return x

    # ------------------------------------------------------------------
    # element constructors

    def from_integer(self, n: int) -> "PadicElement":
        if n == 0:
            return self.zero()
        vec = [0] * (self.e * self.f)
        vec[0] = n & self._mask
        return self._element_from_ring(tuple(vec))

    def zero(self) -> "PadicElement":
        return PadicElement(self, None, ())

    def one(self) -> "PadicElement":
        return PadicElement(self, 0, (1,) + (0,) * (self.N - 1))

    def uniformizer(self) -> "PadicElement":
        return PadicElement(self, 1, (1,) + (0,) * (self.N - 1))

    def unit_from_digits(self, digits: Sequence[int], valuation: int = 0) -> "PadicElement":
        digits = tuple(int(d) for d in digits)
        if not digits or digits[0] == 0:
            raise ValueError("unit digits must start with a nonzero residue")
        if any(d < 0 or d >= self.q for d in digits):
            raise ValueError("digits must be residue-field elements")
        return PadicElement(self, valuation, digits)

    def _element_from_ring(self, vec: Sequence[int],
                           prec: Optional[int] = None) -> "PadicElement":
        if not any(vec):
            return self.zero()
        limit = min(self.N + 4, self._mbits - 2)
        v = self._ring_val(vec, limit)
        if v is None:
            return self.zero()
        work = tuple(vec)
        mbits = self._mbits
        for _ in range(v):
            work = self._div_pi(work, mbits)
            mbits -= 1
        want = self.N if prec is None else min(prec, self.N)
        want = min(want, mbits - 2)
        return PadicElement(self, v, self._digits_from(work, want, mbits))

    def describe(self) -> dict:
        return {
            "e": self.e,
            "f": self.f,
            "q": self.q,
            "precision": self.N,
            "eisenstein": list(self.eisenstein),
            "unramified_modulus": list(self.unramified_modulus),
        }


@dataclass(frozen=True)
class PadicElement:
    """pi^valuation times the unit with the given digit expansion, or zero.

    digits[k] is the k-th pi-digit of the unit part, an f-bit integer of
    residue-field coordinates; digits[0] != 0 unless the element is zero
    (valuation None).  The element is known modulo pi^(valuation + prec).
    """

    field: FieldSpec
    valuation: Optional[int]
    digits: tuple

    @property
    def prec(self) -> int:
        return len(self.digits)

    def is_zero(self) -> bool:
        return self.valuation is None

    def _ring(self) -> tuple:
        return self.field._ring_from_digits(self.digits)

    def _require(self, n: int):
        if self.is_zero():
            raise ValueError("operation undefined for zero")
        if self.prec < n:
            raise PrecisionError(f"need {n} digits, have {self.prec}")

    def unit_key(self, n: int) -> tuple:
        self._require(n)
        return self.digits[:n]

    def unit_part(self) -> "PadicElement":
        if self.is_zero():
            raise ValueError("zero has no unit part")
        return PadicElement(self.field, 0, self.digits)

    def shift(self, k: int) -> "PadicElement":
        """Multiply by pi^k."""
        if self.is_zero():
            return self
        return PadicElement(self.field, self.valuation + k, self.digits)

    def __mul__(self, other: "PadicElement") -> "PadicElement":
        if self.field is not other.field:
            raise ValueError("elements from different fields")
        if self.is_zero() or other.is_zero():
            return self.field.zero()
        prod = self.field.rmul(self._ring(), other._ring())
        prec = min(self.prec, other.prec)
        digits = self.field._digits(prod, prec)
        return PadicElement(self.field, self.valuation + other.valuation, digits)

    def inverse(self) -> "PadicElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        inv = self.field._ring_unit_inverse(self._ring())
        return PadicElement(self.field, -self.valuation,
                            self.field._digits(inv, self.prec))

    def __neg__(self) -> "PadicElement":
        if self.is_zero():
            return self
        neg = self.field.rneg(self._ring())
        return PadicElement(self.field, self.valuation,
                            self.field._digits(neg, self.prec))

    def __add__(self, other: "PadicElement") -> "PadicElement":
        if self.field is not other.field:
            raise ValueError("elements from different fields")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        fld = self.field
        v = min(self.valuation, other.valuation)
        budget = min(self.prec + self.valuation - v,
                     other.prec + other.valuation - v)
        a = fld.rmul(self._ring(), fld._pipow_cache[self.valuation - v])
        b = fld.rmul(other._ring(), fld._pipow_cache[other.valuation - v])
        s = fld.radd(a, b)
        k = fld._ring_val(s, budget)
        if k is None:
            return fld.zero()  # cancelled beyond the joint precision
        work = s
        mbits = fld._mbits
        for _ in range(k):
            work = fld._div_pi(work, mbits)
            mbits -= 1
        digits = fld._digits_from(work, min(budget - k, mbits - 2), mbits)
        return PadicElement(fld, v + k, digits)

    def __sub__(self, other: "PadicElement") -> "PadicElement":
        return self + (-other)

    def __repr__(self):
        if self.is_zero():
            return "PadicElement(0)"
        return f"PadicElement(val={self.valuation}, digits={list(self.digits)})"


def make_field(e: int, f: int, eisenstein: Optional[Sequence[int]] = None,
               **kwargs) -> FieldSpec:
    """Build a validated 2-adic field.

    When no Eisenstein polynomial is supplied the default is x^e - 2,
    falling back to x^e - 2x - 2 should the default ever fail validation;
    the chosen polynomial is echoed by FieldSpec.describe().
    """
    try:
        return FieldSpec(e, f, eisenstein=eisenstein, **kwargs)
    except ValueError:
        if eisenstein is not None:
            raise
        if e < 2:
            raise
        fallback = [-2, -2] + [0] * (e - 2) + [1]
        return FieldSpec(e, f, eisenstein=fallback, **kwargs)


# ----------------------------------------------------------------------
# squares


def _unit_square_prefixes(fld: FieldSpec) -> frozenset:
    """All (2e+1)-digit prefixes of squares of units.

    Squaring factors through O^x / U_{e+1}, so candidates run over digit
    strings of length e+1 with nonzero leading digit.
    """
    got = getattr(fld, "_sq_prefixes", None)
    if got is not None:
        return got
    e, q = fld.e, fld.q
    need = 2 * e + 1
    out = set()
    for first in range(1, q):
        for rest in itertools.product(range(q), repeat=e):
            vec = fld._ring_from_digits((first,) + rest)
            out.add(fld._digits(fld.rmul(vec, vec), need))
    result = frozenset(out)
    fld._sq_prefixes = result
    return result


def is_square(u: PadicElement) -> bool:
    """Whether u is a square in F^x: even valuation and unit part congruent
    to v^2 modulo pi^(2e+1) for some v (U_{2e+1} consists of squares)."""
    if u.is_zero():
        raise ValueError("squareness of zero is undefined")
    fld = u.field
    if fld.N < 2 * fld.e + 1:
        raise PrecisionError("square test needs at least 2e+1 digits")
    if u.valuation % 2 != 0:
        return False
    need = 2 * fld.e + 1
    key = u.unit_key(need)
    cache = fld._square_cache
    hit = cache.get(key)
    if hit is None:
        hit = key in _unit_square_prefixes(fld)
        cache[key] = hit
    return hit


def _same_square_class_units(a: PadicElement, b: PadicElement) -> bool:
    """Whether two units lie in the same square class."""
    fld = a.field
    need = 2 * fld.e + 1
    inv = fld._ring_unit_inverse(b._ring())
    return _unit_key_is_square(fld, fld.rmul(a._ring(), inv))


def _unit_key_is_square(fld: FieldSpec, vec) -> bool:
    """Squareness of a unit given as a ring vector (cached by digit key)."""
    need = 2 * fld.e + 1
    key = fld._digits(vec, need)
    cache = fld._square_cache
    hit = cache.get(key)
    if hit is None:
        hit = key in _unit_square_prefixes(fld)
        cache[key] = hit
    return hit


# ----------------------------------------------------------------------
# Hilbert symbol


def _norm_class_reps(fld: FieldSpec, a: PadicElement) -> list:
    """Square classes of values of the norm form x^2 - a*y^2.

    `a` must have valuation 0 or 1 and must not be a square.  Primitive
    pairs are enumerated modulo pi^(3e+1) up to unit scaling (which fixes
    square classes): (x, 1) with arbitrary x and (1, y) with y in pi*O.
    Only values of valuation <= 2e+1 determine classes at this depth and
    every norm class has such a representative.  Entries are
    (valuation parity, unit digit prefix) deduplicated up to squares.
    """
    e, q = fld.e, fld.q
    key = (a.valuation % 2, a.unit_key(2 * e + 1))
    cached = fld._norm_class_cache.get(key)
    if cached is not None:
        return cached
    depth = 3 * e + 1
    avec = fld.rmul(a._ring(), fld._pipow_cache[a.valuation])
    val_cap = 2 * e + 1
    seen = set()
    one = fld._one_vec()

    def record(nvec):
        v = fld._ring_val(nvec, val_cap + 1)
        if v is None:
            return
        work = nvec
        mbits = fld._mbits
        for _ in range(v):
            work = fld._div_pi(work, mbits)
            mbits -= 1
        seen.add((v % 2, fld._digits_from(work, 2 * e + 1, mbits)))

    for digits in itertools.product(range(q), repeat=depth):
        xvec = fld._ring_from_digits(digits)
        record(fld.rsub(fld.rmul(xvec, xvec), avec))
    for digits in itertools.product(range(q), repeat=depth - 1):
        yvec = fld.rmul(fld._ring_from_digits(digits), fld._pipow_cache[1])
        record(fld.rsub(one, fld.rmul(avec, fld.rmul(yvec, yvec))))

    reps: list = []
    inv_vecs: list = []
    for parity, prefix in sorted(seen):
        vec = fld._ring_from_digits(prefix)
        dup = any(p == parity and _unit_key_is_square(fld, fld.rmul(vec, iv))
                  for (p, _pr), iv in zip(reps, inv_vecs))
        if not dup:
            reps.append((parity, prefix))
            inv_vecs.append(fld._ring_unit_inverse(vec))
    fld._norm_class_cache[key] = reps
    return reps


def hilbert(a: PadicElement, b: PadicElement) -> int:
    """The quadratic Hilbert symbol (a, b) in {+1, -1}.

    Both arguments are first reduced to valuation 0 or 1 (the symbol is
    bilinear and even powers of pi are squares).  A square argument gives
    +1; otherwise (a, b) = +1 exactly when the square class of b is among
    the square classes of the norm form x^2 - a*y^2.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("Hilbert symbol requires nonzero arguments")
    if a.field is not b.field:
        raise ValueError("elements from different fields")
    fld = a.field
    a = a.shift(-2 * (a.valuation // 2))
    b = b.shift(-2 * (b.valuation // 2))
    if is_square(a) or is_square(b):
        return 1
    b_inv = fld._ring_unit_inverse(b._ring())
    b_parity = b.valuation % 2
    for parity, prefix in _norm_class_reps(fld, a):
        if parity == b_parity and _unit_key_is_square(
                fld, fld.rmul(fld._ring_from_digits(prefix), b_inv)):
            return 1
    return -1


def hilbert_symbol_q2(a: int, b: int) -> int:
    """Closed formula for the Hilbert symbol of Q_2 on nonzero integers.

    With a = 2^alpha * u and b = 2^beta * v (u, v odd),
        (a, b) = (-1)^(eps(u)eps(v) + alpha*omega(v) + beta*omega(u)),
    where eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8, both taken mod 2.
    """
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol requires nonzero arguments")
    alpha = 0
    while a % 2 == 0:
        a //= 2
        alpha += 1
    beta = 0
    while b % 2 == 0:
        b //= 2
        beta += 1
    exp = ((a - 1) // 2) * ((b - 1) // 2) \
        + alpha * ((b * b - 1) // 8) + beta * ((a * a - 1) // 8)
    return -1 if exp % 2 else 1


def conic_has_point(a: PadicElement, b: PadicElement) -> bool:
    """Solvability of z^2 = a*x^2 + b*y^2 over F.

    Searches for a primitive zero modulo pi^(2e+1) that has a unit
    coordinate whose form coefficient is a unit; such a zero lifts to an
    exact zero by the Newton criterion.  Primitive zeros are normalized
    by scaling the chosen unit coordinate to 1, and a pair of valuation-1
    coefficients is first reduced to (a, -u_a*u_b) using (x, -x) = 1.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("conic test requires nonzero coefficients")
    fld = a.field
    a = a.shift(-2 * (a.valuation // 2))
    b = b.shift(-2 * (b.valuation // 2))
    if a.valuation == 1 and b.valuation == 1:
        b = -(a.unit_part() * b.unit_part())
    e, q = fld.e, fld.q
    depth = 2 * e + 1
    avec = fld.rmul(a._ring(), fld._pipow_cache[a.valuation])
    bvec = fld.rmul(b._ring(), fld._pipow_cache[b.valuation])
    one = fld._one_vec()

    def prefix(vec):
        return fld._digits(vec, depth)

    squares = getattr(fld, "_conic_squares", None)
    if squares is None:
        squares = set()
        for digits in itertools.product(range(q), repeat=depth):
            v = fld._ring_from_digits(digits)
            squares.add(prefix(fld.rmul(v, v)))
        fld._conic_squares = squares

    # z = 1: need 1 - a*x^2 in b*(squares)
    b_squares = {prefix(fld.rmul(bvec, fld._ring_from_digits(s))) for s in squares}
    for digits in itertools.product(range(q), repeat=depth):
        x = fld._ring_from_digits(digits)
        if prefix(fld.rsub(one, fld.rmul(avec, fld.rmul(x, x)))) in b_squares:
            return True
    # x = 1 (coefficient a must be a unit): a + b*y^2 must be a square
    if a.valuation == 0:
        for digits in itertools.product(range(q), repeat=depth):
            y = fld._ring_from_digits(digits)
            if prefix(fld.radd(avec, fld.rmul(bvec, fld.rmul(y, y)))) in squares:
                return True
    # y = 1 (coefficient b must be a unit): b + a*x^2 must be a square
    if b.valuation == 0:
        for digits in itertools.product(range(q), repeat=depth):
            x = fld._ring_from_digits(digits)
            if prefix(fld.radd(bvec, fld.rmul(avec, fld.rmul(x, x)))) in squares:
                return True
    return False


# ----------------------------------------------------------------------
# square-class space


@dataclass
class SquareClassSpace:
    """F^x/F^x2 as an F_2 vector space carrying the Hilbert pairing.

    basis[0] is the uniformizer, basis[1:] are units; gram[i][j] is 1
    exactly when (basis[i], basis[j]) = -1.  radical_vector holds the
    coordinates of the class generating R/O^x2.  D_basis and Dperp_basis
    are coordinate vectors (in the full basis) of unit classes giving the
    orthogonal/symplectic decomposition of O^x/R; case is "i", "ii" or
    "iii" according to dim D = 0, 1, 2.
    """

    field: FieldSpec
    basis: list
    gram: list
    radical_vector: tuple
    case: str
    D_basis: list
    Dperp_basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        """F_2 value of the Hilbert pairing on coordinate vectors."""
        n = self.dim
        return sum(u[i] * sum(self.gram[i][j] * v[j] for j in range(n))
                   for i in range(n)) % 2

    def class_coordinates(self, x: PadicElement) -> tuple:
        """Coordinates of the square class of x in the chosen basis."""
        if x.is_zero():
            raise ValueError("zero has no square class")
        pair = tuple(0 if hilbert(x, b) == 1 else 1 for b in self.basis)
        coords = _gf2_solve(self.gram, pair)
        check = x
        for c, b in zip(coords, self.basis):
            if c:
                check = check * b
        if check.valuation % 2 != 0 or not is_square(check.unit_part()):
            raise ArithmeticError("square-class coordinate recovery failed")
        return coords

    def element_from_coordinates(self, coords: Sequence[int]) -> PadicElement:
        out = self.field.one()
        for c, b in zip(coords, self.basis):
            if c:
                out = out * b
        return out

    def minus_one_coordinates(self) -> tuple:
        return self.class_coordinates(-self.field.one())


def _gf2_solve(gram: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple:
    n = len(gram)
    rows = [list(gram[i]) + [rhs[i] % 2] for i in range(n)]
    piv_cols = []
    r = 0
    for col in range(n):
        sel = next((i for i in range(r, n) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(n):
            if i != r and rows[i][col]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    x = [0] * n
    for i, col in enumerate(piv_cols):
        x[col] = rows[i][n]
    for i in range(n):
        if sum(gram[i][j] * x[j] for j in range(n)) % 2 != rhs[i] % 2:
            raise ArithmeticError("inconsistent GF(2) system")
    return tuple(x)


def _gf2_rank(mat: Sequence[Sequence[int]]) -> int:
    rows = []
    for row in mat:
        v = 0
        for j, b in enumerate(row):
            v |= (b & 1) << j
        rows.append(v)
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(len(rows)) if rows[i] >> col & 1), None)
        if piv is None:
            continue
        p = rows.pop(piv)
        rows = [r ^ p if r >> col & 1 else r for r in rows]
        rank += 1
    return rank


def _in_gf2_span(vec: Sequence[int], span: Sequence[Sequence[int]]) -> bool:
    rows = [list(v) for v in span]
    target = list(vec)
    n = len(target)
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        if target[col]:
            target = [x ^ y for x, y in zip(target, rows[r])]
        r += 1
    return not any(target)


def _unit_candidates(fld: FieldSpec):
    """Deterministic stream of units covering O^x modulo squares."""
    depth = 2 * fld.e + 1
    pad = (0,) * (fld.N - depth)
    for digits in itertools.product(range(fld.q), repeat=depth):
        if digits[0] == 0:
            continue
        yield PadicElement(fld, 0, digits + pad)


def square_class_space(field: FieldSpec) -> SquareClassSpace:
    """Greedy basis for F^x/F^x2, its Hilbert Gram matrix, and the
    integral-radical / unit-decomposition data."""
    dim_target = field.e * field.f + 2
    unit_basis: list = []
    # ring vectors of all subset products of the unit basis found so far;
    # a unit lies in the span exactly when some such product makes it square
    subset_vecs = [field._one_vec()]

    for cand in _unit_candidates(field):
        if len(unit_basis) == dim_target - 1:
            break
        cvec = cand._ring()
        if not any(_unit_key_is_square(field, field.rmul(cvec, sv))
                   for sv in subset_vecs):
            subset_vecs.extend([field.rmul(sv, cvec) for sv in subset_vecs])
            unit_basis.append(cand)
    basis = [field.uniformizer()] + unit_basis
    if len(basis) != dim_target:
        raise ArithmeticError("failed to span the square-class group")

    gram = [[0 if hilbert(x, y) == 1 else 1 for y in basis] for x in basis]
    if _gf2_rank(gram) != dim_target:
        raise ArithmeticError("Hilbert Gram matrix is degenerate")

    radical_vec = _radical_vector(field, basis, gram)
    case, d_basis, dperp_basis = _decompose(field, basis, gram, radical_vec)
    return SquareClassSpace(field, basis, gram, radical_vec, case,
                            d_basis, dperp_basis)


def radical_generator(field: FieldSpec) -> PadicElement:
    """A unit in U_{2e} = 1 + pi^(2e)*O that is not a square."""
    e = field.e
    pad = (0,) * (field.N - 2 * e - 1)
    for d in range(1, field.q):
        digits = (1,) + (0,) * (2 * e - 1) + (d,) + pad
        u = PadicElement(field, 0, digits)
        if not is_square(u):
            return u
    raise ArithmeticError("no non-square found in U_{2e}")


def _radical_vector(field: FieldSpec, basis, gram) -> tuple:
    u = radical_generator(field)
    pair = tuple(0 if hilbert(u, b) == 1 else 1 for b in basis)
    return _gf2_solve(gram, pair)


def _decompose(field: FieldSpec, basis, gram, radical_vec):
    """Case and bases for O^x/R = D (+) D^perp.

    dim D is 0, 1 or 2 according to whether -1 lies in R, pairs -1 with
    itself, or neither; D^perp consists of isotropic classes and carries
    a symplectic basis.
    """
    n = len(basis)
    minus_one = -field.one()
    pair_m1 = tuple(0 if hilbert(minus_one, b) == 1 else 1 for b in basis)
    m1q = list(_gf2_solve(gram, pair_m1))

    def pairing(u, v):
        return sum(u[i] * sum(gram[i][j] * v[j] for j in range(n))
                   for i in range(n)) % 2

    def diag(u):
        return pairing(u, u)

    def add(u, v):
        return [x ^ y for x, y in zip(u, v)]

    rad = list(radical_vec)
    quotient = []  # complement basis of the unit classes modulo <rad>
    span = [rad]
    for i in range(1, n):
        vec = [1 if j == i else 0 for j in range(n)]
        if not _in_gf2_span(vec, span):
            quotient.append(vec)
            span.append(vec)
    if len(quotient) != field.e * field.f:
        raise ArithmeticError("unit classes modulo R have the wrong dimension")

    if _in_gf2_span(m1q, [rad]):
        case = "i"
        d_basis = []
    elif diag(m1q) == 1:
        case = "ii"
        d_basis = [m1q]
    else:
        case = "iii"
        u0 = None
        for c in range(1, 1 << len(quotient)):
            vec = [0] * n
            for i, qv in enumerate(quotient):
                if c >> i & 1:
                    vec = add(vec, qv)
            if diag(vec) == 1:
                u0 = vec
                break
        if u0 is None:
            raise ArithmeticError("case (iii) without an anisotropic class")
        d_basis = [u0, add(u0, m1q)]  # {u0, -u0}, orthogonal with (u,u) = -1

    rest = _orth_complement(quotient, d_basis, pairing, rad)
    dperp = _symplectic_basis(rest, pairing, diag)
    for i, u in enumerate(d_basis):
        if diag(u) != 1:
            raise ArithmeticError("D basis vector is isotropic")
        for v in d_basis[i + 1:]:
            if pairing(u, v) != 0:
                raise ArithmeticError("D basis is not orthogonal")
    return case, d_basis, dperp


def _gf2_span_elements(basis):
    if not basis:
        return
    width = len(basis[0])
    for bits in range(1, 1 << len(basis)):
        vec = [0] * width
        for i in range(len(basis)):
            if bits >> i & 1:
                vec = [a ^ b for a, b in zip(vec, basis[i])]
        yield vec


def _orth_complement(quotient, d_basis, pairing, rad):
    out = []
    span = [list(rad)] + [list(v) for v in d_basis]
    for vec in _gf2_span_elements(quotient):
        if all(pairing(vec, d) == 0 for d in d_basis):
            if not _in_gf2_span(vec, span + out):
                out.append(list(vec))
    return out


def _symplectic_basis(vectors, pairing, diag):
    """Symplectic basis (e_1..e_l, f_1..f_l) of a space of isotropic classes."""
    remaining = [list(v) for v in vectors]
    es, fs = [], []
    while remaining:
        e_vec = remaining[0]
        if diag(e_vec) != 0:
            raise ArithmeticError("anisotropic class in the symplectic part")
        f_vec = next((v for v in remaining[1:] if pairing(e_vec, v) == 1), None)
        if f_vec is None:
            raise ArithmeticError("degenerate pairing in the symplectic part")
        if diag(f_vec) != 0:
            raise ArithmeticError("anisotropic class in the symplectic part")
        es.append(e_vec)
        fs.append(f_vec)
        reduced = []
        for v in remaining[1:]:
            if v is f_vec:
                continue
            w = list(v)
            if pairing(w, f_vec) == 1:
                w = [a ^ b for a, b in zip(w, e_vec)]
            if pairing(w, e_vec) == 1:
                w = [a ^ b for a, b in zip(w, f_vec)]
            if any(w) and not _in_gf2_span(w, reduced):
                reduced.append(w)
        remaining = reduced
    return es + fs


# ----------------------------------------------------------------------
# radical / decomposition reports


def integral_radical(space: SquareClassSpace) -> dict:
    """The class generating R/O^x2, with a verification report.

    Raises ArithmeticError if any assertion fails (an arithmetic bug).
    """
    field = space.field
    n = space.dim
    rad = space.radical_vector
    gen = space.element_from_coordinates(rad)
    e, ef = field.e, field.e * field.f
    checks = {}

    checks["radical_is_nontrivial_unit_class"] = any(rad) and rad[0] == 0
    checks["annihilates_units"] = all(
        hilbert(gen, space.basis[i]) == 1 for i in range(1, n))

    # [O^x : R] = 2^(ef): the kernel of the Gram pairing restricted to
    # unit classes must be exactly the radical line
    unit_vectors = [[1 if j == i else 0 for j in range(n)] for i in range(1, n)]
    kernel = [v for v in _gf2_span_elements(unit_vectors)
              if all(space.pairing(v, u) == 0 for u in unit_vectors)]
    checks["unit_pairing_kernel_is_radical_line"] = (
        len(kernel) == 1 and tuple(kernel[0]) == tuple(rad))

    # (u, a*pi^k) = -1 for the radical generator, units a and odd k
    pi = field.uniformizer()
    ok = hilbert(gen, pi) == -1
    for i in range(1, n):
        for k in (1, 3):
            if hilbert(gen, space.basis[i] * pi.shift(k - 1)) != -1:
                ok = False
    checks["pairs_minus_one_with_odd_valuations"] = ok

    # U_{2e+1} is contained in the squares
    pad = (0,) * (field.N - 2 * e - 2)
    checks["U_2e_plus_1_in_squares"] = all(
        is_square(PadicElement(field, 0, (1,) + (0,) * (2 * e) + (d,) + pad))
        for d in range(field.q))

    # U_{2e} meets exactly two square classes: the trivial one and R's
    classes = set()
    pad = (0,) * (field.N - 2 * e - 1)
    for d in range(field.q):
        u = PadicElement(field, 0, (1,) + (0,) * (2 * e - 1) + (d,) + pad)
        if is_square(u):
            classes.add("trivial")
        elif is_square(u * gen.inverse()):
            classes.add("radical")
        else:
            classes.add("other")
    checks["U_2e_two_classes_mod_squares"] = classes == {"trivial", "radical"}

    report = {
        "radical_vector": list(rad),
        "index_units_over_R": 2 ** ef,
        "checks": checks,
        "ok": all(checks.values()),
    }
    if not report["ok"]:
        raise ArithmeticError(f"integral radical verification failed: {checks}")
    return report


def decompose_units(space: SquareClassSpace) -> dict:
    """Decomposition report {case, u_basis, symplectic_pairs} for O^x/R."""
    field = space.field
    k = len(space.D_basis)
    ell = len(space.Dperp_basis) // 2
    if k + 2 * ell != field.e * field.f:
        raise ArithmeticError("decomposition does not fill O^x/R")
    for i, u in enumerate(space.D_basis):
        if space.pairing(u, u) != 1:
            raise ArithmeticError("D basis vector is isotropic")
        for v in space.D_basis[i + 1:]:
            if space.pairing(u, v) != 0:
                raise ArithmeticError("D basis not orthogonal")
    es = space.Dperp_basis[:ell]
    fs = space.Dperp_basis[ell:]
    for i in range(ell):
        if space.pairing(es[i], fs[i]) != 1:
            raise ArithmeticError("symplectic pair does not pair to -1")
        if space.pairing(es[i], es[i]) != 0 or space.pairing(fs[i], fs[i]) != 0:
            raise ArithmeticError("symplectic basis vector not isotropic")
        for j in range(ell):
            if i != j and (space.pairing(es[i], es[j]) or space.pairing(fs[i], fs[j])
                           or space.pairing(es[i], fs[j])):
                raise ArithmeticError("symplectic basis not normalized")
        for u in space.D_basis:
            if space.pairing(es[i], u) or space.pairing(fs[i], u):
                raise ArithmeticError("D and D^perp are not orthogonal")
    return {
        "case": space.case,
        "dim_D": k,
        "u_basis": [list(v) for v in space.D_basis],
        "symplectic_pairs": [[list(es[i]), list(fs[i])] for i in range(ell)],
        "k": k,
        "l": ell,
    }
