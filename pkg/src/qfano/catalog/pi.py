"""The fifteen-dimensional key variety: matrix, minors, the hypersurface G and F1..F9."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from ..poly import PolyMatrix, Polynomial, Substitution, determinant
from .universe import UNIVERSE, poly, var

TRIPLES = tuple(combinations(range(1, 7), 3))

MATRIX_TEXT = (
    ("u", "v", "-t2*p2", "-t2*p4", "-t2*p1 + t1*u", "-t2*p3 + t1*v"),
    ("-p1", "-p3", "u + t1*p2", "v + t1*p4", "-t2*p2", "-t2*p4"),
    ("-p2", "-p4", "-p1", "-p3", "u", "v"),
)

# name -> (coefficient, L variable) of the hypersurface G.  The combination
# with unit coefficients is the one whose 4x4 minors of [H; M] factor through
# it and which is GL2 semi-invariant; the variant with 3 on the primed
# generators is kept for comparison and fails both properties.
G_COMBINATION = (
    ("D123", 1, "L123"), ("D124", 1, "L124"), ("D125", 1, "L125"), ("D126", 1, "L126"),
    ("D135", 1, "L135"), ("D'136", 1, "L136"), ("D'245", 1, "L245"), ("D246", 1, "L246"),
)
G_TRIPLED_COMBINATION = tuple(
    (name, 3 if name.startswith("D'") else coeff, lvar) for name, coeff, lvar in G_COMBINATION
)

F_TEXT = (
    # F1
    "(u*s1 - p1*s2 - p2*s3) - L126*(-p2*p3 + p1*p4) - L136*(p1^2 + t1*p2^2 + p2*u)"
    " - L245*(2*p1*p3 + 2*t1*p2*p4 + p4*u + p2*v) - L246*(p3^2 + t1*p4^2 + p4*v)",
    # F2
    "(v*s1 - p3*s2 - p4*s3) + L125*(-p2*p3 + p1*p4) + L135*(p1^2 + t1*p2^2 + p2*u)"
    " + L136*(2*p1*p3 + 2*t1*p2*p4 + p4*u + p2*v) + L245*(p3^2 + t1*p4^2 + p4*v)",
    # F3
    "(-t2*p2*s1 + (u + t1*p2)*s2 - p1*s3) - L124*(-p2*p3 + p1*p4) - L136*(t2*p2^2 + p1*u)"
    " - L245*(2*t2*p2*p4 + p3*u + p1*v) - L246*(t2*p4^2 + p3*v)",
    # F4
    "(-t2*p4*s1 + (v + t1*p4)*s2 - p3*s3) + L123*(-p2*p3 + p1*p4) + L135*(t2*p2^2 + p1*u)"
    " + L136*(2*t2*p2*p4 + p3*u + p1*v) + L245*(t2*p4^2 + p3*v)",
    # F5
    "(-t2*p1*s1 + (t1*p1 - t2*p2)*s2 + (u + t1*p2)*s3)"
    " + L123*(p1^2 + t1*p2^2 + p2*u) + L124*(p1*p3 + t1*p2*p4 + p2*v)"
    " - L125*(t2*p2^2 + p1*u) - L126*(t2*p2*p4 + p1*v)"
    " - L136*(t1*p2*u - t2*p1*p2 + u^2) - L245*(t1*(p4*u + p2*v) - t2*(p2*p3 + p1*p4) + 2*u*v)"
    " - L246*(t1*p4*v - t2*p3*p4 + v^2)",
    # F6
    "(-t2*p3*s1 + (t1*p3 - t2*p4)*s2 + (v + t1*p4)*s3)"
    " + L123*(t1*p2*p4 + p1*p3 + p4*u) + L124*(p3^2 + t1*p4^2 + p4*v)"
    " - L125*(t2*p2*p4 + p3*u) - L126*(t2*p4^2 + p3*v)"
    " + L135*(t1*p2*u - t2*p1*p2 + u^2) + L136*(t1*(p4*u + p2*v) - t2*(p2*p3 + p1*p4) + 2*u*v)"
    " + L245*(t1*p4*v - t2*p3*p4 + v^2)",
    # F7
    "(-s2^2 + s1*s3) + ((L123*p2 + L124*p4)*s1 - (L125*p2 + L126*p4)*s2)"
    " + L123*(L136*p2^2 + 2*L245*p2*p4 + L246*p4^2) - L124*(L135*p2^2 + 2*L136*p2*p4 + L245*p4^2)"
    " - L125*(L136*p1*p2 + L245*(p2*p3 + p1*p4) + L246*p3*p4)"
    " + L126*(L135*p1*p2 + L136*(p2*p3 + p1*p4) + L245*p3*p4)"
    " + (L135*L245 - L136^2)*(-p1^2 + 2*u*p2 + t1*p2^2)"
    " + (L135*L246 - L136*L245)*(-p1*p3 + u*p4 + v*p2 + t1*p2*p4)"
    " + (L136*L246 - L245^2)*(-p3^2 + 2*v*p4 + t1*p4^2)",
    # F8
    "(s2*s3 + t1*s1*s2 - t2*s1^2) + s1*(L123*p1 + L124*p3) - s2*(L125*p1 + L126*p3)"
    " + L123*(L136*p1*p2 + L245*(p1*p4 + p3*p2) + L246*p3*p4)"
    " - L124*(L135*p1*p2 + L136*(p1*p4 + p3*p2) + L245*p3*p4)"
    " - L125*(L136*p1^2 + 2*L245*p1*p3 + L246*p3^2) + L126*(L135*p1^2 + 2*L136*p1*p3 + L245*p3^2)"
    " + (-L136^2 + L135*L245)*(2*u*p1 + 2*t1*p1*p2 - t2*p2^2)"
    " + (L135*L246 - L136*L245)*((v*p1 + u*p3) + t1*(p1*p4 + p3*p2) - t2*p2*p4)"
    " + (L246*L136 - L245^2)*(2*v*p3 + 2*t1*p3*p4 - t2*p4^2)",
    # F9
    "(t1*s2^2 + s3^2 - s1*s2*t2) + s1*(L123*u + L124*v) - s2*(L125*u + L126*v)"
    " + (L124*L125 - L123*L126)*(-p2*p3 + p1*p4)"
    " - L123*(L246*(p3^2 + t1*p4^2) + L136*(p1^2 + t1*p2^2) + 2*L245*(p1*p3 + t1*p2*p4))"
    " + L124*(L135*(p1^2 + t1*p2^2) + 2*L136*(p1*p3 + t1*p2*p4) + L245*(p3^2 + t1*p4^2))"
    " + L125*t2*(L246*p4^2 + L136*p2^2 + 2*L245*p2*p4)"
    " - L126*t2*(L135*p2^2 + 2*L136*p2*p4 + L245*p4^2)"
    " + (-L136^2 + L135*L245)*(u^2 + 2*t2*p1*p2)"
    " + (L135*L246 - L136*L245)*(u*v + t2*(p2*p3 + p1*p4))"
    " + (L246*L136 - L245^2)*(v^2 + 2*t2*p3*p4)",
)

H_SUB_TEXT = {"u": "w*p1 + w^2*p2", "v": "w*p3 + w^2*p4", "t2": "w^3 + t1*w"}

# coordinates of the 5x5 skew chart on {p2*p4 != 0}: (scalar, inner, denominator)
M_COORD_TEXT = {
    (1, 2): (9, "L123*p2*p4^2 + L126*p3*p4^2 + p3*p4*s2 + L135*p2*p4*u"
                " + L136*(p2*p3^2 + p1*p3*p4 + p2*p4*v) + 2*L245*p3^2*p4", "p2*p4^3"),
    (1, 3): (-3, "L135*(p1^2 + t1*p2^2)*p2^2 - L125*(p2*p3 - p1*p4)*p2^2 - L126*p2^2*p3*p4"
                 " + L246*(p2*p3 + p1*p4)*p3*p4 + L124*p2^2*p4^2 + p2*(-p2*p3 + p1*p4)*s2"
                 " + L135*p2^3*u + p2^2*s1*v + L136*(2*p1*p3 + 2*t1*p2*p4 + 2*p4*u + p2*v)*p2^2"
                 " + L245*(p2*p3^2 + 2*p1*p3*p4 + t1*p2*p4^2 + 2*p2*p4*v)*p2", "p2^2*p4^2"),
    (1, 4): (3, "p2*p4*s2 + L136*p2^2*p3 + 2*L245*p2*p3*p4 + L246*p3*p4^2", "p2^2*p4"),
    (1, 5): (-3, "p3*u + p2*p4*t2", "p4"),
    (2, 3): (3, "-(p2*p3 + p1*p4)*s1 - p2*p4*s2 - L125*p2^2*p4 - L126*p2*p4^2"
                " + L136*(-p2*p3 + p1*p4)*p2 - L245*(p2*p3 - p1*p4)*p4", "p2*p4^2"),
    (2, 4): (3, "-L135*p2^2 + p4*s1 - 2*L136*p2*p4 - L245*p4^2", "p2*p4"),
    (2, 5): (-3, "p2*(p3^2 + t1*p4^2 + p4*v)", "p4^2"),
    (3, 4): (1, "p2*s1 + L136*p2^2 + 2*L245*p2*p4 + L246*p4^2", "p2"),
    (3, 5): (-1, "p1^2 + t1*p2^2 + p2*u", "1"),
    (4, 5): (1, "-p2*p3 + p1*p4", "1"),
}

# two entries differ from a literal reading: m13 carries L135*p2^3*u (degree
# balance with L135*p1^2*p2^2) and m23 carries L245*(p2*p3 - p1*p4)*p4.  The
# literal forms below leave the Pfaffians and the m_ij on S nonzero.
M_COORD_LITERAL = {
    (1, 3): ("L135*p2^3*u", "L135*p2^2*u"),
    (2, 3): ("L245*(p2*p3 - p1*p4)*p4", "L245*(p2*p3 + p1*p4)*p4"),
}


def literal_m_coords() -> dict[tuple[int, int], tuple[int, str, str]]:
    out = dict(M_COORD_TEXT)
    for ij, (fixed, literal) in M_COORD_LITERAL.items():
        scalar, inner, den = out[ij]
        assert fixed in inner
        out[ij] = (scalar, inner.replace(fixed, literal), den)
    return out


# singular locus on {p2*p4 != 0}: coordinate -> (numerator, denominator), in the
# order the values must be computed; free: p2, p3, p4, t1, L126, L136, L245, L246
S_FREE = ("p2", "p3", "p4", "t1", "L126", "L136", "L245", "L246")
S_PARAM_TEXT = (
    ("p1", "p2*p3", "p4"),
    ("v", "-(p3^2 + t1*p4^2)", "p4"),
    ("u", "p2*v", "p4"),
    ("t2", "-p3*v", "p4^2"),
    ("s1", "-(L136*p2^2 + 2*L245*p2*p4 + L246*p4^2)", "p2"),
    ("s2", "p3*s1", "p4"),
    ("s3", "-(2*p3^2 + t1*p4^2)*s1", "p4^2"),
    ("L123", "-(L126*p2*p3*p4^2 + L136*(3*p3^2 + 2*t1*p4^2)*p2^2"
             " + 3*L245*(p3^2 + t1*p4^2)*p2*p4 + L246*t1*p4^4)", "p2^2*p4^2"),
    ("L124", "L126*p2*p3*p4 - L245*(3*p3^2 + t1*p4^2)*p2 - L246*(3*p3^2 + t1*p4^2)*p4", "p2*p4^2"),
    ("L125", "-L126*p2*p4^2 + 3*L136*p2^2*p3 + 6*L245*p2*p3*p4 + 3*L246*p3*p4^2", "p2^2*p4"),
    ("L135", "-(p4*(3*L136*p2^2 + 3*L245*p2*p4 + L246*p4^2))", "p2^3"),
)

BLOCK_TEXT = {
    "U": ("p1^2 + t1*p2^2 + p2*u", "2*(p1*p3 + t1*p2*p4) + (p4*u + p2*v)", "p3^2 + t1*p4^2 + p4*v"),
    "I": ("t2*p2^2 + p1*u", "2*t2*p2*p4 + (p3*u + p1*v)", "t2*p4^2 + p3*v"),
    "A": ("t1*p2*u - t2*p1*p2 + u^2",
          "t1*(p4*u + p2*v) - t2*(p2*p3 + p1*p4) + 2*u*v",
          "t1*p4*v - t2*p3*p4 + v^2"),
}


@dataclass(frozen=True)
class RationalExpr:
    """``numerator / denominator`` with polynomial parts."""

    numerator: Polynomial
    denominator: Polynomial

    def evaluate(self, point: Mapping[str, object]):
        den = self.denominator.evaluate(point)
        if not den:
            raise ZeroDivisionError("denominator vanishes at the point")
        return Fraction(self.numerator.evaluate(point)) / den

    def to_text(self) -> str:
        return f"({self.numerator.to_text()}) / ({self.denominator.to_text()})"


@dataclass(frozen=True)
class Blocks:
    U: tuple[Polynomial, ...]
    I: tuple[Polynomial, ...]
    A: tuple[Polynomial, ...]
    Lmat: PolyMatrix
    v1: tuple[Polynomial, Polynomial]
    v2: tuple[Polynomial, Polynomial]
    v3: tuple[Polynomial, Polynomial]
    v3_untraced: tuple[Polynomial, Polynomial]
    s_matrix: PolyMatrix
    left: PolyMatrix


@dataclass(frozen=True)
class PiSystem:
    M: PolyMatrix
    minors: Mapping[tuple[int, int, int], Polynomial]
    chosen_generators: Mapping[str, Polynomial]
    G: Polynomial
    F: tuple[Polynomial, ...]
    Fprime: tuple[Polynomial, ...]
    H: tuple[Polynomial, ...]
    b: Polynomial
    h_sub: Substitution
    m_coords: Mapping[tuple[int, int], RationalExpr]
    S_param: tuple[tuple[str, RationalExpr], ...]
    blocks: Blocks
    g_combination: tuple = field(default=G_COMBINATION)

    def minor(self, triple) -> Polynomial:
        return self.minors[tuple(triple)]

    def submatrix(self, triple) -> PolyMatrix:
        return self.M.columns([i - 1 for i in triple])

    def g_from_generators(self, combination=None) -> Polynomial:
        acc = UNIVERSE.zero()
        for name, coeff, lvar in combination or self.g_combination:
            acc = acc + self.chosen_generators[name] * var(lvar) * coeff
        return acc


def _minors(M: PolyMatrix) -> dict[tuple[int, int, int], Polynomial]:
    return {t: determinant(M.columns([i - 1 for i in t])) for t in TRIPLES}


def chosen_generators_from(minors) -> dict[str, Polynomial]:
    return {
        "D123": minors[(1, 2, 3)], "D124": minors[(1, 2, 4)], "D125": minors[(1, 2, 5)],
        "D126": minors[(1, 2, 6)], "D135": minors[(1, 3, 5)],
        "D'136": minors[(1, 3, 6)] + minors[(1, 4, 5)] * 2,
        "D'245": minors[(2, 4, 5)] + minors[(1, 4, 6)] * 2,
        "D246": minors[(2, 4, 6)],
    }


def s_free_parts(M: PolyMatrix, Fprime) -> tuple[Polynomial, ...]:
    """``H_i = (s M)_i - Fprime_i``; the result must not involve s."""
    s = [var("s1"), var("s2"), var("s3")]
    out = []
    for i, f in enumerate(Fprime):
        sm = s[0] * M[0, i] + s[1] * M[1, i] + s[2] * M[2, i]
        out.append(sm - f)
    return tuple(out)


def _blocks() -> Blocks:
    U = tuple(poly(t) for t in BLOCK_TEXT["U"])
    I = tuple(poly(t) for t in BLOCK_TEXT["I"])
    A = tuple(poly(t) for t in BLOCK_TEXT["A"])
    L = UNIVERSE.var
    Lmat = PolyMatrix(UNIVERSE, [[L("L136"), L("L245"), L("L246")],
                                 [-L("L135"), -L("L136"), -L("L245")]])
    det = poly("-p2*p3 + p1*p4")
    col_a = (L("L126"), -L("L125"))
    col_b = (L("L124"), -L("L123"))

    def lmul(vec):
        return tuple(sum((Lmat[r, k] * vec[k] for k in range(3)), UNIVERSE.zero()) for r in range(2))

    LU, LI, LA = lmul(U), lmul(I), lmul(A)
    v1 = (det * col_a[0] + LU[0], det * col_a[1] + LU[1])
    v2 = (det * col_b[0] + LI[0], det * col_b[1] + LI[1])
    half = Fraction(1, 2)
    pa = poly("-p3*u + p1*v") * half
    pb = poly("p4*u - p2*v") * half

    def third(UU, II):
        return tuple(
            -(UU[r][0] * col_b[0] + UU[r][1] * col_b[1])
            + (II[r][0] * col_a[0] + II[r][1] * col_a[1])
            + LA[r] + pa * col_a[r] + pb * col_b[r]
            for r in range(2)
        )

    # traceless 2x2 blocks; the untraced variant leaves a residual in F5, F6
    v3 = third(((U[1] * half, -U[0]), (U[2], -U[1] * half)),
               ((I[1] * half, -I[0]), (I[2], -I[1] * half)))
    v3_untraced = third(((U[1], -U[0]), (U[2], -U[1])), ((I[1], -I[0]), (I[2], -I[1])))
    s_matrix = PolyMatrix(UNIVERSE, [[poly("s1"), poly("s2"), poly("s3")],
                                     [poly("s2"), poly("s3"), poly("t2*s1 - t1*s2")],
                                     [poly("s3"), poly("t2*s1 - t1*s2"), poly("t2*s2 - t1*s3")]])
    left = PolyMatrix(UNIVERSE, [[poly("u"), poly("-p1"), poly("-p2")],
                                 [poly("v"), poly("-p3"), poly("-p4")]])
    return Blocks(U, I, A, Lmat, v1, v2, v3, v3_untraced, s_matrix, left)


def build_pi() -> PiSystem:
    M = PolyMatrix(UNIVERSE, [[poly(e) for e in row] for row in MATRIX_TEXT])
    minors = _minors(M)
    gens = chosen_generators_from(minors)
    G = UNIVERSE.zero()
    for name, coeff, lvar in G_COMBINATION:
        G = G + gens[name] * var(lvar) * coeff
    F = tuple(poly(t) for t in F_TEXT)
    t1 = var("t1")
    Fprime = (F[0], F[1], F[2], F[3], F[4] + t1 * F[0], F[5] + t1 * F[1])
    H = s_free_parts(M, Fprime)
    m_coords = {}
    for ij, (scalar, inner, den) in M_COORD_TEXT.items():
        m_coords[ij] = RationalExpr(poly(inner) * scalar, poly(den))
    S_param = tuple((name, RationalExpr(poly(num), poly(den))) for name, num, den in S_PARAM_TEXT)
    pi = PiSystem(
        M=M, minors=minors, chosen_generators=gens, G=G, F=F, Fprime=Fprime, H=H,
        b=poly("p3^2 + t1*p4^2 + p4*v"),
        h_sub=Substitution(UNIVERSE, {k: poly(t) for k, t in H_SUB_TEXT.items()}),
        m_coords=m_coords, S_param=S_param, blocks=_blocks(),
    )
    self_check(pi)
    return pi


def self_check(pi: PiSystem) -> None:
    """Constructor invariants; a failure here is a transcription bug."""
    for t in TRIPLES:
        assert pi.minors[t] == determinant(pi.submatrix(t)), t
    assert pi.G == pi.g_from_generators()
    s = ("s1", "s2", "s3")
    for i, f in enumerate(pi.Fprime):
        for j, sj in enumerate(s):
            assert f.diff(sj) == pi.M[j, i], (i, j)
    for h in pi.H:
        assert not set(h.variables()) & set(s)
