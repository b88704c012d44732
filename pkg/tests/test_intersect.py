import csv
import io
import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from degcalc import classes, intersect
from degcalc.intersect import PairingConvention, Target, pair_M, pair_Z
from degcalc.ring import moduli_ring

POW_G = PairingConvention(twos_factor="pow-g")
LITERAL = PairingConvention(z_pairing="literal")


def as_fraction(x):
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def pair_m_sympy(g, m, n, p):
    """The Bernoulli-number formula written out again with sympy."""
    q = m + p + 1 - g
    if q < 0 or p > g:
        return sympy.Integer(0)
    b = sympy.bernoulli(q) if q != 1 else sympy.Rational(-1, 2)
    return (sympy.Integer(-1) ** (p - g) * sympy.factorial(g) * sympy.factorial(m)
            / (sympy.factorial(g - p) * sympy.factorial(q))
            * sympy.Integer(2) ** (2 * g - 2 - p) * (2 ** q - 2) * b)


@pytest.mark.parametrize("g, m, n, p, value", [
    (2, 3, 0, 0, 4),
    (2, 1, 1, 0, -4),
    (2, 0, 0, 1, 4),
    (3, 6, 0, 0, 224),
    (3, 4, 1, 0, -64),
    (3, 3, 0, 1, 24),
])
def test_pair_m_values(g, m, n, p, value):
    assert pair_M(g, m, n, p) == value


@pytest.mark.parametrize("g", range(2, 9))
def test_pair_m_against_sympy(g):
    for _, m, n, p in intersect.top_monomials(g):
        assert pair_M(g, m, n, p) == as_fraction(pair_m_sympy(g, m, n, p))


def test_pair_m_genus_two_is_quadric_intersection():
    # M is the intersection of two quadrics in P^5 and a is the hyperplane class
    assert pair_M(2, 3, 0, 0) == 4


def test_pair_m_errors():
    with pytest.raises(ValueError, match="degree mismatch"):
        pair_M(3, 5, 0, 0)
    with pytest.raises(ValueError):
        pair_M(1, 0, 0, 0)
    with pytest.raises(ValueError):
        pair_M(2, -1, 2, 0)


@pytest.mark.parametrize("g", range(2, 9))
def test_degree_display(g):
    assert intersect.degree_odd_moduli(g) == intersect.degree_display(g)


def test_degree_odd_moduli_values():
    assert intersect.degree_odd_moduli(2) == 4
    assert intersect.degree_odd_moduli(3) == 224


def test_pow_g_variant_breaks_display():
    assert intersect.degree_odd_moduli(2, POW_G) == intersect.degree_display(2)
    for g in range(3, 9):
        assert intersect.degree_odd_moduli(g, POW_G) != intersect.degree_display(g)


@pytest.mark.parametrize("g", range(2, 7))
def test_q_parity(g):
    for _, m, n, p in intersect.top_monomials(g):
        assert (m + p + 1 - g) % 2 == 0


@pytest.mark.parametrize("g", range(2, 7))
def test_pairings_are_integers(g):
    for _, m, n, p in intersect.top_monomials(g):
        assert pair_M(g, m, n, p).denominator == 1


def test_pair_z_examples():
    assert pair_Z(2, 1, 3, 0, 0) == 4
    assert pair_Z(2, 2, 2, 0, 0) == 4
    assert pair_Z(2, 1, 1, 1, 0, LITERAL) == -4


@pytest.mark.parametrize("g", range(2, 6))
def test_fiber_rule(g):
    for _, m, n, p in intersect.top_monomials(g):
        assert pair_Z(g, 1, m, n, p) == pair_M(g, m, n, p)


def test_literal_pairing_only_for_single_h():
    with pytest.raises(ValueError):
        pair_Z(2, 2, 2, 0, 0, LITERAL)


def test_literal_pairing_disagrees_somewhere():
    bad = [(g, m, n, p) for g in range(2, 6) for a, m, n, p in intersect.top_monomials(g, hecke=True)
           if a == 1 and pair_Z(g, 1, m, n, p) != pair_Z(g, 1, m, n, p, LITERAL)]
    assert bad


H, A, B, C = sympy.symbols("h a b c")


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.data())
def test_integrate_z_against_sympy_reduction(g, data):
    monos = intersect.top_monomials(g, hecke=True)
    a, m, n, p = data.draw(st.sampled_from(monos))
    rule = H ** 2 - A * H + (A ** 2 - B) / 4
    rem = sympy.Poly(sympy.rem(sympy.expand(H ** a * A ** m * B ** n * C ** p), rule, H), H, A, B, C)
    expected = sympy.Integer(0)
    for (eh, ea, eb, ec), coeff in rem.terms():
        if eh == 1:
            expected += coeff * pair_m_sympy(g, ea, eb, ec)
    assert pair_Z(g, a, m, n, p) == as_fraction(expected)


@pytest.mark.parametrize("g, degree", [(2, 1), (3, 16), (4, 2544), (5, 1231616)])
def test_type2_nu3_degrees(g, degree):
    assert intersect.evaluate_degree(classes.type2_class(3), g) == degree


def test_evaluate_degree_of_unit():
    assert intersect.evaluate_degree(moduli_ring().one(), 2) == 4


def test_evaluate_degree_errors():
    r = moduli_ring()
    with pytest.raises(ValueError):
        intersect.evaluate_degree(r.parse("a + b"), 3)
    with pytest.raises(ValueError):
        intersect.evaluate_degree(r.parse("c^2"), 2)


def test_type3_point_count():
    assert intersect.evaluate_degree_Z(classes.type3_class(1), 3, ell_powers=0) == 1


@pytest.mark.parametrize("n, g, degree", [(0, 3, 4), (1, 3, 1), (1, 4, 3), (2, 5, 4)])
def test_type3_small_cases(n, g, degree):
    # cone over the Veronese surface, a point, a cubic threefold, a quartic threefold
    assert intersect.evaluate_degree_Z(classes.type3_class(n), g) == degree


@pytest.mark.parametrize("g, degree", [(4, 6), (5, 256), (6, 28640)])
def test_type2_nu4_degrees(g, degree):
    assert intersect.evaluate_degree_Z(classes.type2_class(4, "hecke-graph"), g) == degree


def test_closed_form_nu4_class_misses():
    closed = classes.type2_class(4, "hecke-graph", route="closed-form")
    assert intersect.evaluate_degree_Z(closed, 4) != 6


def test_convention_validation():
    with pytest.raises(ValueError):
        PairingConvention(divisor="b")
    with pytest.raises(ValueError):
        PairingConvention(fiber_factor=0)
    with pytest.raises(ValueError):
        PairingConvention(twos_factor="pow-x")
    conv = PairingConvention(divisor="2*h - a")
    assert conv.divisor_coeffs == (2, -1)


def test_pairing_table_g2():
    rows = intersect.pairing_table(2)
    assert [(r["monomial"], r["value"]) for r in rows] == [
        ({"H": 0, "a": 3, "b": 0, "c": 0}, "4"),
        ({"H": 0, "a": 1, "b": 1, "c": 0}, "-4"),
        ({"H": 0, "a": 0, "b": 0, "c": 1}, "4"),
    ]
    doc = json.loads(intersect.records_to_json(rows))
    assert doc["version"] == 1 and doc["rows"] == rows
    table = list(csv.reader(io.StringIO(intersect.records_to_csv(rows))))
    assert table[0] == ["g", "H", "a", "b", "c", "value"]
    assert table[1] == ["2", "0", "3", "0", "0", "4"]


def test_pairing_table_hecke_sums():
    rows = intersect.pairing_table(3, hecke=True)
    assert all(r["monomial"]["H"] >= 1 for r in rows)
    assert len(rows) == len(intersect.top_monomials(3, hecke=True))


# calibration ---------------------------------------------------------------------------

def test_calibration_default():
    report = intersect.calibrate_even_convention()
    assert report.found
    assert report.distinct_solutions == 1
    assert report.heldout_ok
    assert report.surviving_variants == ["determinant", "printed"]
    assert report.rejected_variants == ["closed-form"]
    config = report.solutions[0]
    assert (config.h_coeff, config.a_coeff, config.fiber_factor) == (1, 0, Fraction(1, 2))


def test_calibration_point_count_alone_keeps_default():
    report = intersect.calibrate_even_convention([Target(3, 1, 3, 1)], [])
    assert any(s.fiber_factor == Fraction(1, 2) for s in report.solutions)
    assert len(report.solutions) > 3


def test_calibration_no_solution_lists_near_misses():
    report = intersect.calibrate_even_convention([Target(2, 4, 4, 7)], [], n_near_misses=5)
    assert not report.found
    assert len(report.near_misses) == 5
    assert "nearest misses" in report.format()


def test_calibration_needs_targets():
    with pytest.raises(ValueError):
        intersect.calibrate_even_convention([])


def test_target_json_round_trip():
    for t in intersect.DEFAULT_TARGETS + intersect.DEFAULT_HELDOUT:
        assert Target.from_json(t.to_json()) == t
