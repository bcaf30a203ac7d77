"""Tests for 2-adic arithmetic, squares, Hilbert symbols and square classes."""

import random

import pytest

from dyadicover.padic import (
    FieldSpec,
    PadicElement,
    PrecisionError,
    conic_has_point,
    decompose_units,
    hilbert,
    hilbert_symbol_q2,
    integral_radical,
    is_square,
    make_field,
    radical_generator,
    square_class_space,
    _in_gf2_span,
)

# The six fields of the acceptance matrix (coefficients for Q2(i) chosen
# so that pi = 1 + i).
FIELDS = [(1, 1, None), (2, 1, None), (3, 1, None),
          (1, 2, None), (2, 2, None), (1, 3, None)]


def field(e, f, eis=None):
    key = (e, f, tuple(eis) if eis else None)
    if key not in field._cache:
        field._cache[key] = make_field(e, f, eisenstein=eis)
    return field._cache[key]


field._cache = {}


def random_element(F, rng, max_shift=2):
    digits = [rng.randrange(1, F.q)] + [rng.randrange(F.q) for _ in range(F.N - 1)]
    return PadicElement(F, rng.randrange(-max_shift, max_shift + 1), tuple(digits))


# ----------------------------------------------------------------------
# construction


def test_make_field_q2():
    F = field(1, 1)
    assert (F.e, F.f, F.q) == (1, 1, 2)
    assert F.describe()["eisenstein"] == [-2, 1]


def test_make_field_ramified_quadratic():
    F = field(2, 1)
    assert F.describe()["eisenstein"] == [-2, 0, 1]
    assert F.from_integer(2).valuation == 2


def test_make_field_unramified_quadratic():
    F = field(1, 2)
    assert F.q == 4
    assert F.from_integer(2).valuation == 1


def test_make_field_rejects_budget():
    with pytest.raises(ValueError):
        make_field(4, 2)


def test_make_field_rejects_non_eisenstein():
    with pytest.raises(ValueError):
        make_field(2, 1, eisenstein=[1, 0, 1])   # constant term is a unit
    with pytest.raises(ValueError):
        make_field(2, 1, eisenstein=[4, 0, 1])   # constant term valuation 2
    with pytest.raises(ValueError):
        make_field(2, 1, eisenstein=[2, 1, 1])   # middle coefficient odd


def test_arithmetic_round_trips():
    F = field(2, 2)
    rng = random.Random(7)
    one = F.one()
    for _ in range(25):
        x = random_element(F, rng)
        y = random_element(F, rng)
        assert (x * y).valuation == x.valuation + y.valuation
        inv = x.inverse()
        prod = x * inv
        assert prod.valuation == 0
        assert prod.digits[:F.N - 1] == one.digits[:F.N - 1]
        diff = (x + y) - y
        assert diff.valuation == x.valuation
        assert diff.digits[:diff.prec] == x.digits[:diff.prec]


def test_integer_embedding_valuations():
    F = field(3, 1)
    assert F.from_integer(2).valuation == 3
    assert F.from_integer(12).valuation == 6
    assert F.from_integer(0).is_zero()


# ----------------------------------------------------------------------
# squares


def test_is_square_17_over_q2():
    # 17 lies in 1 + 16 Z_2, inside the squares
    assert is_square(field(1, 1).from_integer(17))


def test_is_square_5_over_q2():
    # all odd squares are congruent to 1 mod 8 (exhausted below), so 5 is not one
    odd_squares_mod8 = {(v * v) % 8 for v in range(1, 16, 2)}
    assert odd_squares_mod8 == {1}
    assert not is_square(field(1, 1).from_integer(5))


def test_is_square_one():
    assert is_square(field(1, 1).one())


def test_is_square_rejects_zero_and_low_precision():
    F = field(1, 1)
    with pytest.raises(ValueError):
        is_square(F.zero())
    small = PadicElement(F, 0, (1,))
    with pytest.raises(PrecisionError):
        is_square(small)


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_squares_of_random_elements_are_squares(e, f, eis):
    F = field(e, f, eis)
    rng = random.Random(42)
    for _ in range(10):
        x = random_element(F, rng)
        assert is_square(x * x)


# ----------------------------------------------------------------------
# Hilbert symbol over Q2 (closed-formula oracle)


def test_hilbert_minus_one_minus_one():
    F = field(1, 1)
    m1 = -F.one()
    assert hilbert(m1, m1) == -1


def test_hilbert_2_minus_1():
    F = field(1, 1)
    assert hilbert(F.from_integer(2), -F.one()) == 1


def test_hilbert_5_2():
    # closed formula: (5,2) = (-1)^(omega(5)) = -1 since (25-1)/8 = 3
    assert hilbert_symbol_q2(5, 2) == -1
    F = field(1, 1)
    assert hilbert(F.from_integer(5), F.from_integer(2)) == -1


def test_hilbert_q2_full_square_class_table():
    # all 64 pairs of square-class representatives of Q2
    F = field(1, 1)
    reps = [1, 3, 5, 7, 2, 6, 10, 14]
    for x in reps:
        for y in reps:
            assert hilbert(F.from_integer(x), F.from_integer(y)) == \
                hilbert_symbol_q2(x, y), (x, y)


def test_hilbert_rejects_zero():
    F = field(1, 1)
    with pytest.raises(ValueError):
        hilbert(F.zero(), F.one())


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_hilbert_invariants(e, f, eis):
    F = field(e, f, eis)
    rng = random.Random(2024)
    one = F.one()
    for _ in range(12):
        a = random_element(F, rng)
        b = random_element(F, rng)
        c = random_element(F, rng)
        assert hilbert(a, b) == hilbert(b, a)
        assert hilbert(a * c, b) == hilbert(a, b) * hilbert(c, b)
        assert hilbert(a, -a) == 1
        if not (one - a).is_zero():
            assert hilbert(a, one - a) == 1
        assert hilbert(a, a) == hilbert(a, -one)


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_conic_search_agrees_on_basis_pairs(e, f, eis):
    S = square_class_space(field(e, f, eis))
    for x in S.basis:
        for y in S.basis:
            assert (hilbert(x, y) == 1) == conic_has_point(x, y)


# ----------------------------------------------------------------------
# square-class space


def test_q2_square_class_dimension_and_representatives():
    # independent oracle: the odd square classes mod 8 are {1,3,5,7}, so
    # F^x/F^x2 has 8 elements: dimension 3 over F_2
    F = field(1, 1)
    S = square_class_space(F)
    assert S.dim == 3
    for n in (2, -1, 5):
        S.class_coordinates(F.from_integer(n))  # raises on failure


@pytest.mark.parametrize("e,f,eis,dim", [(2, 1, None, 4), (1, 2, None, 4)])
def test_quadratic_extensions_have_dimension_four(e, f, eis, dim):
    assert square_class_space(field(e, f, eis)).dim == dim


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_gram_nondegenerate_and_unit_kernel(e, f, eis):
    S = square_class_space(field(e, f, eis))
    report = integral_radical(S)
    assert report["ok"]
    assert report["checks"]["unit_pairing_kernel_is_radical_line"]


# ----------------------------------------------------------------------
# integral radical


def test_q2_radical_is_class_of_five():
    F = field(1, 1)
    S = square_class_space(F)
    gen = S.element_from_coordinates(S.radical_vector)
    assert is_square(gen * F.from_integer(5).inverse())
    # exhaustive class count: units fall into 4 classes, R covers 2 of 8 total
    assert integral_radical(S)["index_units_over_R"] == 2


def test_q2_radical_pairs_minus_one_with_two():
    F = field(1, 1)
    assert hilbert(F.from_integer(5), F.from_integer(2)) == -1


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_one_plus_pi_2e_plus_1_is_square(e, f, eis):
    F = field(e, f, eis)
    digits = (1,) + (0,) * (2 * F.e) + (1,) + (0,) * (F.N - 2 * F.e - 2)
    assert is_square(PadicElement(F, 0, digits))


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_radical_generator_lives_in_U_2e(e, f, eis):
    F = field(e, f, eis)
    gen = radical_generator(F)
    assert gen.valuation == 0
    assert gen.digits[0] == 1
    assert all(d == 0 for d in gen.digits[1:2 * F.e])
    assert not is_square(gen)


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_radical_report(e, f, eis):
    F = field(e, f, eis)
    report = integral_radical(square_class_space(F))
    assert report["ok"]
    assert report["index_units_over_R"] == 2 ** (F.e * F.f)


# ----------------------------------------------------------------------
# unit decomposition


def test_decompose_q2_case_ii():
    F = field(1, 1)
    S = square_class_space(F)
    d = decompose_units(S)
    assert d["case"] == "ii"
    assert (d["k"], d["l"]) == (1, 0)
    u1 = S.element_from_coordinates(d["u_basis"][0])
    assert is_square(u1 * (-F.one()).inverse())  # D = <-1>


def test_decompose_q2_i_case_i():
    # pi = 1 + i, minimal polynomial x^2 - 2x + 2
    F = make_field(2, 1, eisenstein=[2, -2, 1])
    d = decompose_units(square_class_space(F))
    assert d["case"] == "i"
    assert (d["k"], d["l"]) == (0, 1)


def test_decompose_q2_sqrt2_case_iii():
    F = field(2, 1)
    S = square_class_space(F)
    d = decompose_units(S)
    assert d["case"] == "iii"
    assert (d["k"], d["l"]) == (2, 0)
    m1 = list(S.minus_one_coordinates())
    assert _in_gf2_span(m1, [list(v) for v in S.D_basis])


@pytest.mark.parametrize("e,f,eis", FIELDS)
def test_decomposition_counts(e, f, eis):
    F = field(e, f, eis)
    d = decompose_units(square_class_space(F))
    assert d["k"] + 2 * d["l"] == F.e * F.f
    assert d["k"] <= 2
