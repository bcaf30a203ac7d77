"""Tests for root systems, the even-pairing sublattice and parity diagrams."""

import random

import pytest

from dyadicover.rootdata import RootDatum, Ytilde_mod_2Y, in_Y_tilde, weyl_reflect


def datum(t, r):
    key = (t, r)
    if key not in datum._cache:
        datum._cache[key] = RootDatum.build(t, r)
    return datum._cache[key]


datum._cache = {}

ALL_TYPES = ([("A", r) for r in range(2, 10)] + [("D", r) for r in range(3, 9)]
             + [("E", 6), ("E", 7), ("E", 8)])


# expected parity table: (group, index, set of odd-node index sets)
def expected_row(t, r):
    if t == "A":
        if r % 2 == 0:
            return "1", 2 ** r, set()
        return "Z/2", 2 ** (r - 1), {frozenset(range(1, r + 1, 2))}
    if t == "D":
        fork = frozenset({r - 1, r})
        if r % 2 == 1:
            return "Z/2", 2 ** (r - 1), {fork}
        odd_chain = frozenset(range(1, r - 2, 2))
        return ("Z/2 x Z/2", 2 ** (r - 2),
                {fork, odd_chain | {r - 1}, odd_chain | {r}})
    if t == "E":
        if r == 7:
            return "Z/2", 2 ** 6, {frozenset({2, 5, 7})}
        return "1", 2 ** r, set()
    raise AssertionError


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_root_counts(t, r):
    sys = datum(t, r)
    counts = {"A": r * (r + 1), "D": 2 * r * (r - 1),
              "E": {6: 72, 7: 126, 8: 240}.get(r, 0)}
    assert len(sys.roots) == counts[t]
    assert len(sys.positive_roots) * 2 == len(sys.roots)


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_cartan_is_simply_laced_and_symmetric(t, r):
    sys = datum(t, r)
    for i in range(r):
        assert sys.cartan[i][i] == 2
        for j in range(r):
            if i != j:
                assert sys.cartan[i][j] in (0, -1)
            assert sys.cartan[i][j] == sys.cartan[j][i]


def test_lowest_root_is_minus_highest():
    sys = datum("A", 2)
    assert sys.highest_root == (1, 1)
    assert sys.lowest_root == (-1, -1)
    # adding any simple root to the highest root leaves the root system
    for i in range(2):
        cand = tuple(h + s for h, s in zip(sys.highest_root, sys.simple_root(i)))
        assert cand not in sys.roots


def test_in_Y_tilde_examples():
    A3 = datum("A", 3)
    assert in_Y_tilde(A3, (1, 0, 1))        # alpha1v + alpha3v
    assert not in_Y_tilde(A3, (1, 0, 0))    # <alpha2, alpha1v> = -1
    for t, r in ALL_TYPES:
        assert in_Y_tilde(datum(t, r), (0,) * r)


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_parity_table(t, r):
    info = Ytilde_mod_2Y(datum(t, r))
    group, index, odd_sets = expected_row(t, r)
    assert info["group"] == group
    assert info["index"] == index
    got = {frozenset(i + 1 for i, c in enumerate(vec) if c)
           for vec in info["classes"] if any(vec)}
    assert got == odd_sets


def test_parity_table_specific_rows():
    e7 = Ytilde_mod_2Y(datum("E", 7))
    assert e7["nontrivial_diagrams"] == ["*o**o*o"]  # odd at nodes 2, 5, 7
    d4 = Ytilde_mod_2Y(datum("D", 4))
    assert d4["group"] == "Z/2 x Z/2" and d4["index"] == 4
    e8 = Ytilde_mod_2Y(datum("E", 8))
    assert e8["group"] == "1" and e8["index"] == 256


def test_weyl_reflect_examples():
    A2 = datum("A", 2)
    assert weyl_reflect(A2, 0, (1, 0)) == (-1, 0)
    assert weyl_reflect(A2, 0, (0, 1)) == (1, 1)


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_weyl_invariance_mod_2Y(t, r):
    sys = datum(t, r)
    for vec in Ytilde_mod_2Y(sys)["classes"]:
        for i in range(r):
            refl = weyl_reflect(sys, i, vec)
            assert all((a - b) % 2 == 0 for a, b in zip(refl, vec))


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_adjacency_parity_lemma(t, r):
    # for y in Ytilde: the coefficient sum over nodes adjacent to any fixed
    # node is even, and nodes adjacent to an endpoint have even coefficient
    sys = datum(t, r)
    degree = [sum(1 for j in range(r) if sys.adjacency(i, j)) for i in range(r)]
    rng = random.Random(5)
    samples = [tuple(rng.randrange(-3, 4) for _ in range(r)) for _ in range(200)]
    for y in samples:
        if not in_Y_tilde(sys, y):
            continue
        for k in range(r):
            adj = [i for i in range(r) if sys.adjacency(i, k)]
            assert sum(y[i] for i in adj) % 2 == 0
            if any(degree[i] == 1 for i in adj):
                assert y[k] % 2 == 0


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_adjacent_product_parity(t, r):
    sys = datum(t, r)
    for vec in Ytilde_mod_2Y(sys)["classes"]:
        for i in range(r):
            for j in range(r):
                if sys.adjacency(i, j):
                    assert (vec[i] * vec[j]) % 2 == 0


@pytest.mark.parametrize("t,r", ALL_TYPES)
def test_pairing_symmetry(t, r):
    sys = datum(t, r)
    rng = random.Random(11)
    roots = list(sys.roots)
    for _ in range(30):
        a = rng.choice(roots)
        b = rng.choice(roots)
        assert sys.pairing(a, sys.coroot(b)) == sys.pairing(b, sys.coroot(a))


def test_fundamental_coweights_invert_cartan():
    sys = datum("D", 4)
    om = sys.fundamental_coweights()
    for i in range(4):
        for j in range(4):
            val = sum(sys.cartan[i][k] * om[j][k] for k in range(4))
            assert val == (1 if i == j else 0)


def test_rejects_bad_types():
    with pytest.raises(ValueError):
        RootDatum.build("A", 1)
    with pytest.raises(ValueError):
        RootDatum.build("D", 2)
    with pytest.raises(ValueError):
        RootDatum.build("E", 9)
    with pytest.raises(ValueError):
        RootDatum.build("B", 2)
