"""The thirteen-dimensional key variety built from a 2x2x2 tensor."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from ..poly import PolyMatrix, Polynomial, Substitution, determinant
from .universe import H_P, H_U, H_X, UNIVERSE, poly, var

# D^(f)_jk = | p  x1f ; p' x2f | = p*x2f - p'*x1f, listed as (p, p')
D_PAIRS = {
    1: {(1, 1): ("p111", "p211"), (1, 2): ("p112", "p212"),
        (2, 1): ("p121", "p221"), (2, 2): ("p122", "p222")},
    2: {(1, 1): ("p111", "p121"), (1, 2): ("p112", "p122"),
        (2, 1): ("p211", "p221"), (2, 2): ("p212", "p222")},
    3: {(1, 1): ("p111", "p112"), (1, 2): ("p121", "p122"),
        (2, 1): ("p211", "p212"), (2, 2): ("p221", "p222")},
}

HYPERDET_TEXT = (
    "p111^2*p222^2 + p112^2*p221^2 + p121^2*p212^2 + p122^2*p211^2"
    " - 2*p111*p122*p211*p222 - 2*p111*p121*p212*p222 - 2*p111*p112*p221*p222"
    " - 2*p121*p122*p211*p212 - 2*p112*p122*p211*p221 - 2*p112*p121*p212*p221"
    " + 4*p111*p122*p212*p221 + 4*p112*p121*p211*p222"
)

# the origin and the four orbit representatives, as sets of unit coordinates
ORBIT_SUPPORT = {
    "origin": (),
    "p1": ("p111",),
    "p2": ("p111", "p221"),
    "p3": ("p111", "p122", "p212"),
    "p4": ("p111", "p222"),
}

FIBER_COORDS = H_X + H_U


@dataclass(frozen=True)
class Component:
    """Linear forms plus quadrics cutting one component of a fiber."""

    linear: tuple[Polynomial, ...]
    quadrics: tuple[Polynomial, ...]

    def degree_two_part(self) -> list[Polynomial]:
        out = [l * var(x) for l in self.linear for x in FIBER_COORDS]
        return out + list(self.quadrics)


@dataclass(frozen=True)
class FiberSpec:
    label: str
    point: str
    components: tuple[Component, ...]


@dataclass(frozen=True)
class HSystem:
    G_vec: Mapping[int, tuple[Polynomial, Polynomial]]
    G_quad: Mapping[int, Polynomial]
    Dtables: Mapping[int, Mapping[tuple[int, int], Polynomial]]
    hyperdet: Polynomial
    contraction_pairs: Mapping[str, tuple[tuple[Polynomial, Polynomial], tuple[Polynomial, Polynomial]]]
    orbit_points: Mapping[str, Mapping[str, int]]
    fiber_data: Mapping[str, FiberSpec]

    @property
    def equations(self) -> tuple[Polynomial, ...]:
        """G1a, G1b, G2a, G2b, G3a, G3b, G4, G5, G6."""
        out = []
        for k in (1, 2, 3):
            out.extend(self.G_vec[k])
        out.extend(self.G_quad[k] for k in (4, 5, 6))
        return tuple(out)

    def specialize(self, point: str) -> tuple[Polynomial, ...]:
        sub = Substitution(UNIVERSE, dict(self.orbit_points[point]))
        return tuple(sub(e) for e in self.equations)


def xvec(f: int) -> tuple[Polynomial, Polynomial]:
    return var(f"x1{f}"), var(f"x2{f}")


def matvec(m, vec) -> tuple[Polynomial, Polynomial]:
    return tuple(m[r][0] * vec[0] + m[r][1] * vec[1] for r in range(2))


def _d_tables() -> dict[int, dict[tuple[int, int], Polynomial]]:
    out = {}
    for f, table in D_PAIRS.items():
        x1, x2 = xvec(f)
        out[f] = {jk: var(p) * x2 - var(q) * x1 for jk, (p, q) in table.items()}
    return out


def _twist(D, order) -> list[list[Polynomial]]:
    """[[-D_a, D_11], [-D_22, D_b]] with ``order = (a, b)``."""
    a, b = order
    return [[-D[a], D[(1, 1)]], [-D[(2, 2)], D[b]]]


# (matrix factor, (a, b)) for the three vector equations
_G_MATRIX = {1: (3, ((1, 2), (2, 1))), 2: (1, ((1, 2), (2, 1))), 3: (2, ((2, 1), (1, 2)))}
_G_VECTOR = {1: 2, 2: 3, 3: 1}
# contraction -> two (D factor, (a, b), x factor) readings
_CONTRACTIONS = {
    "c12": ((1, ((2, 1), (1, 2)), 2), (2, ((2, 1), (1, 2)), 1)),
    "c23": ((2, ((1, 2), (2, 1)), 3), (3, ((1, 2), (2, 1)), 2)),
    "c31": ((3, ((2, 1), (1, 2)), 1), (1, ((1, 2), (2, 1)), 3)),
}
# G4 = u1 u2 - ..., G5 = u2 u3 - ..., G6 = u3 u1 - ...
_G_QUAD = {4: ((1, 2), 3), 5: ((2, 3), 1), 6: ((3, 1), 2)}


def _fibers() -> dict[str, FiberSpec]:
    v = var
    u1, u2, u3 = v("u1"), v("u2"), v("u3")
    x11, x21, x12, x22, x13, x23 = (v(n) for n in H_X)
    C = Component
    a = FiberSpec("a", "origin", (
        C((u1, u2, u3), ()),
        C((u1, u2, x13, x23), ()),
        C((u1, u3, x12, x22), ()),
        C((u2, u3, x11, x21), ()),
    ))
    b = FiberSpec("b", "p1", (
        C((u1, u2, x23), (u3 * x13 - x21 * x22,)),
        C((u1, u3, x22), (u2 * x12 - x23 * x21,)),
        C((u2, u3, x21), (u1 * x11 - x23 * x22,)),
    ))
    rows_c = ((x23, u2, x11, x21), (u1, -x23, x22, -x12))
    minors_c = tuple(rows_c[0][i] * rows_c[1][j] - rows_c[0][j] * rows_c[1][i]
                     for i, j in combinations(range(4), 2))
    c = FiberSpec("c", "p2", (
        C((u1, u2, x23), (u3 * x13 - x11 * x12 - x21 * x22,)),
        C((u3,), minors_c),
    ))
    sym = PolyMatrix(UNIVERSE, [[u1, x13, x22], [x13, u2, -x21], [x22, -x21, -u3]])
    sigma = (-x11, x12, x23)
    kernel = tuple(sum((sym[r, k] * sigma[k] for k in range(3)), UNIVERSE.zero()) for r in range(3))
    d = FiberSpec("d", "p3", (C((), tuple(_two_minors(sym)) + kernel),))
    full = PolyMatrix(UNIVERSE, [[u1, x13, x22], [x23, u2, x11], [x12, x21, u3]])
    e = FiberSpec("e", "p4", (C((), tuple(_two_minors(full))),))
    return {s.label: s for s in (a, b, c, d, e)}


def _two_minors(m: PolyMatrix) -> list[Polynomial]:
    """Distinct nonzero 2x2 minors (up to sign) of a 3x3 matrix."""
    out: list[Polynomial] = []
    for rows in combinations(range(3), 2):
        for cols in combinations(range(3), 2):
            q = determinant(m.submatrix(rows, cols))
            if q and q not in out and -q not in out:
                out.append(q)
    return out


def fiber_matrix_e() -> PolyMatrix:
    v = var
    return PolyMatrix(UNIVERSE, [[v("u1"), v("x13"), v("x22")],
                                 [v("x23"), v("u2"), v("x11")],
                                 [v("x12"), v("x21"), v("u3")]])


def build_h() -> HSystem:
    D = _d_tables()
    u = {k: var(f"u{k}") for k in (1, 2, 3)}
    G_vec = {}
    for k, (f, order) in _G_MATRIX.items():
        rhs = matvec(_twist(D[f], order), xvec(_G_VECTOR[k]))
        x = xvec(k)
        G_vec[k] = (u[k] * x[0] - rhs[0], u[k] * x[1] - rhs[1])
    G_quad = {}
    for k, ((i, j), f) in _G_QUAD.items():
        Df = D[f]
        G_quad[k] = u[i] * u[j] - (Df[(1, 2)] * Df[(2, 1)] - Df[(1, 1)] * Df[(2, 2)])
    contractions = {}
    for name, readings in _CONTRACTIONS.items():
        contractions[name] = tuple(matvec(_twist(D[f], order), xvec(x)) for f, order, x in readings)
    points = {}
    for name, support in ORBIT_SUPPORT.items():
        points[name] = {p: (1 if p in support else 0) for p in H_P}
    h = HSystem(
        G_vec=G_vec, G_quad=G_quad, Dtables=D, hyperdet=poly(HYPERDET_TEXT),
        contraction_pairs=contractions, orbit_points=points, fiber_data=_fibers(),
    )
    self_check(h)
    return h


def self_check(h: HSystem) -> None:
    D3 = h.Dtables[3]
    assert h.G_quad[4] == var("u1") * var("u2") - (D3[(1, 2)] * D3[(2, 1)] - D3[(1, 1)] * D3[(2, 2)])
    assert h.Dtables[1][(1, 1)] == poly("p111*x21 - p211*x11")
    e = h.fiber_data["e"].components[0].quadrics
    assert len(e) == 9
