import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qfano.catalog import CLASS_NUMBERS, build_pi, fano_class
from qfano.graded import (GENERIC_BASES, HilbertSeries, InexactDivision, WeightBase,
                          adjunction_check, adjunction_values, certify_homogeneity, class_numerator,
                          class_summary, degree_data, degree_invariants, derive_weights,
                          homogeneity_failures, key_numerator, palindromic_sign, tpoly_divide,
                          tpoly_mul)
from qfano.poly import NotHomogeneous


def test_weights_308():
    w = derive_weights(WeightBase(7, 6, 8, 24))
    assert (w["p1"], w["p2"], w["s1"], w["t1"], w["L245"], w["L246"]) == (5, 4, 8, 2, 2, 0)
    assert w["t2"] == 3


def test_weights_1766():
    w = derive_weights(WeightBase(3, 3, 4, 12))
    assert (w["s1"], w["L135"], w["L245"]) == (3, 3, 1)


def test_b_has_degree_14_for_308():
    w = derive_weights(WeightBase(7, 6, 8, 24))
    assert build_pi().b.weighted_degree(w) == 14


def test_degrees_308():
    dd = degree_data(WeightBase(7, 6, 8, 24))
    assert dd.d == (14, 16, 15, 17, 16, 18, 18, 19, 20)
    assert (dd.delta, dd.k) == (51, 47)
    assert sum(dd.d) == 153 == 3 * dd.delta


def test_degrees_1766():
    dd = degree_data(WeightBase(3, 3, 4, 12))
    assert (dd.delta, dd.k) == (24, 26)


def test_middle_degree_symmetry():
    dd = degree_data(WeightBase(7, 6, 8, 24))
    w = derive_weights(WeightBase(7, 6, 8, 24))
    e = dd.d[5] + w["p2"]
    assert e in dd.p2_degrees and dd.delta - e in dd.p2_degrees
    assert degree_invariants(dd) == []


@pytest.mark.parametrize("base", [fano_class(n).base for n in CLASS_NUMBERS] + list(GENERIC_BASES))
def test_every_equation_is_homogeneous(base):
    assert homogeneity_failures(WeightBase(*base)) == []


@given(st.tuples(*(st.integers(1, 60) for _ in range(3))), st.integers(1, 200))
def test_homogeneity_for_random_bases(b, g):
    # any base whose derived weights are positive where needed still makes F homogeneous
    base = WeightBase(*b, g)
    try:
        assert homogeneity_failures(base) == []
    except NotHomogeneous:
        pytest.fail("homogeneity raised instead of reporting")


def test_homogeneity_certificate():
    assert certify_homogeneity().passed


def test_inhomogeneous_input_is_reported():
    F = list(build_pi().F)
    F[0] = F[0] + build_pi().M[0, 0]
    bad = homogeneity_failures(WeightBase(7, 6, 8, 24), F)
    assert bad and bad[0].startswith("F1")


# -- series arithmetic -----------------------------------------------------------

def test_series_examples():
    assert HilbertSeries((1,), (1, 1)).expansion(3) == [1, 2, 3, 4]
    assert HilbertSeries((1, 0, -1), (1, 1, 1)).expansion(2) == [1, 3, 5]


T = sympy.symbols("t")


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.lists(st.integers(1, 5), max_size=4))
def test_series_matches_sympy(num, weights):
    order = 8
    got = HilbertSeries(tuple(num), tuple(weights)).expansion(order)
    expr = sum(c * T ** i for i, c in enumerate(num))
    for w in weights:
        expr = expr / (1 - T ** w)
    ser = sympy.series(expr, T, 0, order + 1).removeO()
    assert got == [ser.coeff(T, i) for i in range(order + 1)]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_tpoly_division_inverts_multiplication(p, q):
    if not any(q) or q[0] == 0:
        return
    prod = tpoly_mul(p, q)
    got = tpoly_divide(prod, q)
    stripped = list(p)
    while len(stripped) > 1 and stripped[-1] == 0:
        stripped.pop()
    assert got == stripped


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        tpoly_divide([1, 0, 1], [1, 1])


def test_palindromic_sign():
    assert palindromic_sign([1, 2, 1], 2) == 1
    assert palindromic_sign([1, 0, -1], 2) == -1
    assert palindromic_sign([1, 2], 1) is None


def test_key_series_nonnegative_for_308():
    fc = fano_class(308)
    dd = degree_data(WeightBase(*fc.base))
    series = HilbertSeries(tuple(key_numerator(dd)), fc.key_weights).expansion(40)
    assert all(c >= 0 for c in series)


# -- per-class bookkeeping ------------------------------------------------------------

def test_adjunction_arithmetic_308():
    v = adjunction_values(fano_class(308))
    assert v == {"K_X": -1, "K_Pi13": -47, "K_key": -48, "k": 47}
    fc = fano_class(308)
    assert sum(fc.key_weights) == 99 and sum(fc.cuts) == 47


def test_adjunction_arithmetic_1766():
    fc = fano_class(1766)
    assert sum(fc.key_weights) == 50 and sum(fc.cuts) == 25
    assert adjunction_values(fc)["K_X"] == -1


@pytest.mark.parametrize("n", CLASS_NUMBERS)
def test_class_bookkeeping(n):
    fc = fano_class(n)
    assert adjunction_check(fc).passed
    num = class_numerator(fc)
    assert num[0] == 1
    assert palindromic_sign(num, sum(fc.ambient_PX) - 1) is not None
    s = class_summary(fc)
    assert s["implied_generators_match"]
    assert s["codimension"] == 4


def test_implied_generators_1766():
    s = class_summary(fano_class(1766))
    assert sorted(s["implied_generators"]) == [1, 2, 3, 3, 3, 4, 4, 5]


def test_cone_classes_carry_a_note():
    assert "note" in adjunction_check(fano_class(308)).details
    assert "note" not in adjunction_check(fano_class(1766)).details
