from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qfano.poly import (EvaluationError, NotDivisible, NotHomogeneous, PolyMatrix, Substitution,
                        UniverseError, VarTable, det_values, determinant, divide, divides,
                        exact_divide, identity, is_homogeneous, jacobian, nullspace, pfaffian,
                        pfaffian_values, rank_values, same_span, span_intersection,
                        weighted_degree)

VT = VarTable(["x", "y", "z", "w"])
X, Y, Z, W = VT.vars(["x", "y", "z", "w"])
SYMS = sympy.symbols("x y z w")


def to_sympy(p):
    return sympy.sympify(p.to_text().replace("^", "**"), locals=dict(zip("xyzw", SYMS)))


def from_sympy(e):
    return VT.parse(str(sympy.expand(e)).replace("**", "^"))


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6)
monomials = st.tuples(*(st.integers(0, 3) for _ in range(4)))
polys = st.dictionaries(monomials, coeffs, max_size=6).map(
    lambda d: sum((c * X ** a * Y ** b * Z ** e * W ** f for (a, b, e, f), c in d.items()), VT.zero()))
small_polys = st.dictionaries(st.tuples(*(st.integers(0, 2) for _ in range(4))), coeffs,
                              max_size=3).map(
    lambda d: sum((c * X ** a * Y ** b * Z ** e * W ** f for (a, b, e, f), c in d.items()), VT.zero()))
points = st.fixed_dictionaries({n: st.fractions(min_value=-9, max_value=9, max_denominator=4)
                                for n in "xyzw"})


# -- arithmetic ----------------------------------------------------------------

def test_additive_inverse():
    assert X + (-X) == VT.zero()
    assert not (X - X)


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2


@given(polys, polys)
def test_sum_and_product_match_sympy(p, q):
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@given(polys, points)
def test_evaluation_is_a_ring_homomorphism(p, pt):
    q = p * p + X
    assert q.evaluate(pt) == p.evaluate(pt) ** 2 + pt["x"]


@given(polys)
def test_text_round_trip(p):
    assert VT.parse(p.to_text()) == p
    assert from_sympy(to_sympy(p)) == p


def test_canonical_text_is_order_independent():
    assert (Y + X).to_text() == (X + Y).to_text()
    assert (Fraction(1, 2) * X ** 2 * Y - Fraction(3, 7) * Z + 5).to_text() == "1/2*x^2*y - 3/7*z + 5"


def test_exponent_overflow_is_reported():
    with pytest.raises(OverflowError):
        X ** 200


def test_foreign_universe_rejected():
    other = VarTable(["x"]).var("x")
    with pytest.raises(UniverseError):
        X + other


def test_missing_coordinate_in_evaluation():
    with pytest.raises(EvaluationError):
        (X * Y).evaluate({"x": 1})


# -- division ------------------------------------------------------------------

def test_exact_division_examples():
    assert exact_divide(X ** 2 - Y ** 2, X - Y) == X + Y
    g = X ** 3 * Y - Z ** 2 + 4
    assert exact_divide(g, g) == VT.const(1)


def test_inexact_division_raises():
    with pytest.raises(NotDivisible):
        exact_divide(X ** 2 + 1, X - Y)


@given(polys, polys)
def test_product_is_divisible_by_each_factor(p, q):
    if not p:
        return
    assert divides(p, p * q)
    assert exact_divide(p * q, p) == q


@given(polys, polys)
def test_division_identity(p, q):
    if not q:
        return
    quot, rem = divide(p, q)
    assert quot * q + rem == p


# -- substitution and calculus ---------------------------------------------------

def test_identity_substitution():
    p = X ** 2 * Y + Z
    assert Substitution(VT, {})(p) == p


@settings(max_examples=25)
@given(small_polys, small_polys, small_polys)
def test_substitution_is_simultaneous_and_matches_sympy(p, a, b):
    got = Substitution(VT, {"x": a, "y": b})(p)
    want = to_sympy(p).subs({SYMS[0]: to_sympy(a), SYMS[1]: to_sympy(b)}, simultaneous=True)
    assert sympy.expand(to_sympy(got) - want) == 0


def test_swap_is_simultaneous():
    assert Substitution(VT, {"x": Y, "y": X})(X - Y) == Y - X


@given(polys)
def test_derivative_matches_sympy(p):
    assert sympy.expand(to_sympy(p.diff("x")) - sympy.diff(to_sympy(p), SYMS[0])) == 0


def test_jacobian_of_square():
    assert jacobian([X ** 2], ["x"])[0, 0] == 2 * X


# -- determinants, Pfaffians, rank ---------------------------------------------

def test_determinant_of_identity():
    assert determinant(identity(VT, 3)) == VT.const(1)


@settings(max_examples=25)
@given(st.lists(small_polys, min_size=9, max_size=9))
def test_determinant_matches_sympy(entries):
    m = PolyMatrix(VT, [entries[0:3], entries[3:6], entries[6:9]])
    sm = sympy.Matrix(3, 3, [to_sympy(e) for e in entries])
    assert sympy.expand(to_sympy(determinant(m)) - sm.det(method="berkowitz")) == 0


def test_adjugate_inverts_up_to_determinant():
    m = PolyMatrix(VT, [[X, Y, 1], [Z, X + Y, W], [0, 2, X * Z]])
    d = determinant(m)
    assert m.adjugate() @ m == identity(VT, 3).scale(d)
    assert m @ m.adjugate() == identity(VT, 3).scale(d)


def test_pfaffian_examples():
    zero = PolyMatrix(VT, [[0] * 4 for _ in range(4)])
    assert pfaffian(zero) == VT.zero()
    block = PolyMatrix(VT, [[0, X, 0, 0], [-X, 0, 0, 0], [0, 0, 0, Y], [0, 0, -Y, 0]])
    assert pfaffian(block) == X * Y


def test_pfaffian_squared_is_determinant():
    a, b, c, d, e, f = X, Y, Z, W, X + Y, Z * W
    m = PolyMatrix(VT, [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]])
    assert pfaffian(m) ** 2 == determinant(m)


@given(st.lists(st.integers(-5, 5), min_size=15, max_size=15))
def test_numeric_pfaffian_squared_is_determinant(vals):
    n, it = 6, iter(vals)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = Fraction(next(it))
            rows[j][i] = -rows[i][j]
    assert pfaffian_values(rows) ** 2 == det_values(rows)


@pytest.mark.parametrize("rows,rank", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
    ([[0, 0], [0, 0]], 0),
    ([[1, 2, 3], [2, 4, 6]], 1),
    ([[1, 2], [3, 4], [5, 6]], 2),
])
def test_rank_examples(rows, rank):
    assert rank_values([[Fraction(x) for x in r] for r in rows]) == rank


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_sympy(rows):
    assert rank_values([[Fraction(x) for x in r] for r in rows]) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_vectors_are_killed(rows):
    fr = [[Fraction(x) for x in r] for r in rows]
    basis = nullspace(fr, 4)
    assert len(basis) == 4 - rank_values(fr)
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in fr)


# -- weights and spans -------------------------------------------------------------

def test_weighted_degree_and_homogeneity():
    w = {"x": 1, "y": 2, "z": 3, "w": 0}
    assert weighted_degree(X * Y + Z, w) == 3
    assert is_homogeneous(X ** 3 + X * Y, w)
    with pytest.raises(NotHomogeneous):
        weighted_degree(X + Y ** 2, {"x": 1, "y": 1, "z": 1, "w": 1})


def test_span_operations():
    a = [X * Y, X * Z]
    assert same_span(a, [X * Y + X * Z, X * Y - X * Z])
    assert not same_span(a, [X * Y])
    inter = span_intersection([[X * Y, X * Z], [X * Z, Y * Z]])
    assert same_span(inter, [X * Z])
