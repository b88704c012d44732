import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from degcalc.classes import odd_moduli_pushforward_ch
from degcalc.ring import GradedRing, chern_ring, moduli_ring
from degcalc.symfun import (
    ChernSeries,
    ChSeries,
    Partition,
    ch_to_chern,
    chern_to_ch,
    determinant,
    dualize,
    dualize_ch,
    half_twist_ch,
    pfaffian,
    schur,
    series_inverse,
    series_product,
)


def generic_series(k, top=None):
    ring = chern_ring(k, top_weight=top)
    return ChernSeries(ring, tuple(ring.gen(f"c{i}") for i in range(1, k + 1)))


def generic_ch(k):
    ring = chern_ring(k, prefix="ch")
    return ring, ChSeries(ring, {i: ring.gen(f"ch{i}") for i in range(1, k + 1)})


# series ------------------------------------------------------------------------

def test_inverse_of_one():
    c = ChernSeries(chern_ring(2), ())
    assert series_inverse(c, 5) == c


def test_inverse_geometric():
    ring = GradedRing.build([("c1", 1)])
    c1 = ring.gen("c1")
    inv = series_inverse(ChernSeries(ring, (c1,)), 4)
    assert [inv[k] for k in range(1, 5)] == [-c1, c1 ** 2, -c1 ** 3, c1 ** 4]


def test_inverse_weight_two():
    c = generic_series(2)
    inv = series_inverse(c, 4)
    assert inv[2] == c.ring.parse("c1^2 - c2")


@pytest.mark.parametrize("k", [1, 3, 5])
def test_inverse_multiplies_back(k):
    c = generic_series(k, top=6)
    prod = series_product(c, series_inverse(c, 6), top=6)
    assert prod == ChernSeries(c.ring, ())


def test_dualize():
    ring = GradedRing.build([("c1", 1)])
    c1 = ring.gen("c1")
    assert dualize(ChernSeries(ring, (c1,))) == ChernSeries(ring, (-c1,))
    c = generic_series(5)
    assert dualize(dualize(c)) == c


def test_dualize_pushforward_ch1():
    ch = odd_moduli_pushforward_ch(3)
    ring = ch.ring
    assert ch[1] == ring.parse("-1/2*a")
    assert dualize_ch(ch)[1] == ring.parse("1/2*a")


def test_half_twist_rank_only():
    ring = GradedRing.build([("phi", 1)])
    ch = ChSeries(ring, {0: ring.const(2), 1: ring.zero(), 2: ring.zero()})
    assert half_twist_ch(ch, ring.zero()) == ch


def test_half_twist_shifts_ch1():
    ring = GradedRing.build([("phi", 1), ("x", 1)])
    phi, x = ring.gens("phi", "x")
    ch = ChSeries(ring, {0: ring.const(2), 1: x, 2: ring.zero()})
    twisted = half_twist_ch(ch, phi)
    assert twisted[1] == x - phi
    assert twisted[2] == phi ** 2 / 4 - x * phi / 2


def test_half_twist_needs_all_components():
    ring = GradedRing.build([("phi", 1)])
    ch = ChSeries(ring, {0: ring.const(2), 2: ring.zero()})
    with pytest.raises(ValueError, match="missing"):
        half_twist_ch(ch, ring.gen("phi"))


# Newton identities ------------------------------------------------------------------

def test_newton_against_power_sums():
    # oracle: c = prod(1 + x_i) has ch_k = sum x_i^k / k!
    xs = sympy.symbols("x1:6")
    elementary = [sympy.Integer(1)] + [
        sum(sympy.Mul(*s) for s in itertools.combinations(xs, k)) for k in range(1, 6)]
    c = generic_series(5)
    ch = chern_to_ch(c, 5)
    names = {f"c{i}": elementary[i] for i in range(1, 6)}
    for k in range(1, 6):
        expr = sympy.Integer(0)
        for powers, coeff in ch[k].items():
            term = sympy.Rational(coeff.numerator, coeff.denominator)
            for name, e in powers.items():
                term *= names[name] ** e
            expr += term
        expected = sum(x ** k for x in xs) / sympy.factorial(k)
        assert sympy.expand(expr - expected) == 0


@pytest.mark.parametrize("top", [1, 4, 8])
def test_newton_round_trip(top):
    c = generic_series(top)
    assert ch_to_chern(chern_to_ch(c, top), top) == c
    ring, ch = generic_ch(top)
    assert chern_to_ch(ch_to_chern(ch, top), top) == ch


def test_ch_to_chern_placeholders():
    ch = odd_moduli_pushforward_ch(3)
    with pytest.raises(ValueError, match="placeholders"):
        ch_to_chern(ch, 3)
    c = ch_to_chern(ch, 3, placeholders=True)
    assert "ch2" in c.ring.names


# Schur determinants ------------------------------------------------------------------

@pytest.mark.parametrize("parts, expected", [
    ((1,), "c1"),
    ((2, 1), "c1*c2 - c3"),
    ((3, 2, 1), "c1*c2*c3 - c3^2 - c1^2*c4 + c1*c5"),
    ((1, 1), "c1^2 - c2"),
    ((), "1"),
])
def test_schur(parts, expected):
    c = generic_series(6)
    assert schur(Partition(parts), c) == c.ring.parse(expected)


def test_partition_helpers():
    assert Partition.staircase(3).parts == (3, 2, 1)
    assert Partition.rectangle(2, 3).parts == (2, 2, 2)
    assert Partition.of(3, 1).size == 4
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_staircase_21_in_ch():
    ring, ch = generic_ch(3)
    value = schur(Partition.of(2, 1), ch_to_chern(ch, 3))
    assert value == ring.parse("1/3*ch1^3 - 2*ch3")


def test_staircase_321_in_ch():
    # the even characters cancel; the c1^3 ch3 coefficient is -2/3
    ring, ch = generic_ch(5)
    value = schur(Partition.of(3, 2, 1), ch_to_chern(ch, 5))
    assert value == ring.parse("1/45*ch1^6 - 2/3*ch1^3*ch3 + 24*ch1*ch5 - 4*ch3^2")


def test_staircase_321_printed_coefficient_is_off():
    ring, ch = generic_ch(5)
    value = schur(Partition.of(3, 2, 1), ch_to_chern(ch, 5))
    printed = ring.parse("1/45*ch1^6 - 1/3*ch1^3*ch3 + 24*ch1*ch5 - 4*ch3^2")
    assert value - printed == ring.parse("-1/3*ch1^3*ch3")


# determinant and Pfaffian -----------------------------------------------------------

int_matrix = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(int_matrix)
def test_determinant_matches_sympy(m):
    assert determinant(m, one=1) == sympy.Matrix(m).det()


def pfaffian_by_permutations(a):
    """Sum over all permutations, divided by 2^n n!."""
    size = len(a)
    n = size // 2
    total = Fraction(0)
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = Fraction(-1) ** inversions
        for i in range(n):
            term *= a[perm[2 * i]][perm[2 * i + 1]]
        total += term
    return total / (2 ** n * math.factorial(n))


def random_skew(rng, size, lo=-5, hi=5):
    a = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            a[i][j] = rng.randint(lo, hi)
            a[j][i] = -a[i][j]
    return a


@pytest.mark.parametrize("size", [2, 4, 6])
def test_pfaffian_matches_permutation_sum(size):
    rng = random.Random(size)
    for _ in range(3 if size == 6 else 10):
        a = random_skew(rng, size)
        assert pfaffian(a, one=1) == pfaffian_by_permutations(a)


@pytest.mark.parametrize("seed", range(100))
def test_pfaffian_squared_is_det(seed):
    rng = random.Random(seed)
    a = random_skew(rng, rng.choice((2, 4, 6, 8)))
    assert pfaffian(a, one=1) ** 2 == sympy.Matrix(a).det()


def test_pfaffian_2x2_and_4x4_generic():
    names = [f"x{i}{j}" for i in range(1, 5) for j in range(i + 1, 5)]
    ring = GradedRing.build([(n, 1) for n in names], canonical=False)
    a = [[ring.zero()] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            a[i][j] = ring.gen(f"x{i + 1}{j + 1}")
            a[j][i] = -a[i][j]
    assert pfaffian([row[:2] for row in a[:2]]) == ring.gen("x12")
    assert pfaffian(a) == ring.parse("x12*x34 - x13*x24 + x14*x23")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pfaffian_standard_symplectic(n):
    size = 2 * n
    a = [[0] * size for _ in range(size)]
    for i in range(n):
        a[i][n + i] = 1
        a[n + i][i] = -1
    assert pfaffian(a, one=1) == (-1) ** (n * (n - 1) // 2)
    assert pfaffian(a, one=1) == pfaffian_by_permutations(a)


def test_pfaffian_rejects_bad_input():
    with pytest.raises(ValueError):
        pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]], one=1)
    with pytest.raises(ValueError):
        pfaffian([[0, 1], [1, 0]], one=1)


def test_pfaffian_empty():
    assert pfaffian([], one=1) == 1


def test_moduli_ring_determinant():
    r = moduli_ring()
    a, b = r.gens("a", "b")
    assert determinant([[a, b], [r.one(), a]]) == a * a - b
