"""Symbolic GL2 actions on the two key varieties, with their expected transforms.

The inverse determinant appearing in the action on the L-block is carried by
the marker variable ``dinv``; :func:`clear_inverse` trades it for powers of
``ad - bc`` so that identities can be compared as honest polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from ..poly import PolyMatrix, Polynomial, Substitution
from .universe import H_P, UNIVERSE, var

a, b, c, d, dinv = (var(n) for n in ("a", "b", "c", "d", "dinv"))
DET = a * d - b * c

# hat-g times det(g); the rule on the L-block uses (1/det) * HAT_NUM
HAT_NUM = PolyMatrix(UNIVERSE, [
    [d ** 2, -c * d, c ** 2],
    [-2 * b * d, b * c + a * d, -2 * a * c],
    [b ** 2, -a * b, a ** 2],
])
G_T = PolyMatrix(UNIVERSE, [[a, c], [b, d]])
G_ADJ = PolyMatrix(UNIVERSE, [[d, -b], [-c, a]])


def dinv_degree(p: Polynomial) -> int:
    return max(p.degree_in("dinv"), 0)


def clear_inverse(p: Polynomial, power: int) -> Polynomial:
    """Replace ``dinv**k`` by ``det**(power - k)``; this is ``det**power * p``."""
    parts = p.coefficients_in("dinv")
    if max(parts) > power:
        raise ValueError(f"clearing power {power} below dinv degree {max(parts)}")
    acc = UNIVERSE.zero()
    for k, coeff in parts.items():
        acc = acc + coeff * DET ** (power - k)
    return acc


@dataclass(frozen=True)
class Transform:
    """Expected image of equation ``index`` as a function of the equation list."""

    index: int
    rule: str
    image: Callable[[Sequence[Polynomial]], Polynomial]


@dataclass(frozen=True)
class GL2Action:
    target: str
    sub: Substitution
    transforms: tuple[Transform, ...]

    def apply(self, p: Polynomial) -> Polynomial:
        return self.sub(p)


def _pi_substitution() -> Substitution:
    v = UNIVERSE.var
    assign: dict[str, Polynomial] = {}
    # rows (p1 p3), (p2 p4), (u v) are multiplied on the right by g
    for left, right in (("p1", "p3"), ("p2", "p4"), ("u", "v")):
        x, y = v(left), v(right)
        assign[left] = a * x + c * y
        assign[right] = b * x + d * y
    for s in ("s1", "s2", "s3"):
        assign[s] = DET * v(s)
    blk = PolyMatrix(UNIVERSE, [[v("L123"), v("L125")], [v("L124"), v("L126")]])
    nb = G_ADJ @ blk
    assign.update(L123=nb[0, 0], L125=nb[0, 1], L124=nb[1, 0], L126=nb[1, 1])
    Lm = PolyMatrix(UNIVERSE, [[v("L136"), v("L245"), v("L246")],
                               [-v("L135"), -v("L136"), -v("L245")]])
    nl = G_T @ Lm @ HAT_NUM
    # the image keeps the shape of the L-block
    assert nl[1, 1] == -nl[0, 0] and nl[1, 2] == -nl[0, 1]
    assign.update(L136=dinv * nl[0, 0], L245=dinv * nl[0, 1], L246=dinv * nl[0, 2],
                  L135=-dinv * nl[1, 0])
    return Substitution(UNIVERSE, assign)


def _pi_transforms() -> tuple[Transform, ...]:
    out = []
    # columns (F1,F2), (F3,F4), (F5,F6) transform by det * transpose(g)
    for top, bot in ((0, 1), (2, 3), (4, 5)):
        out.append(Transform(top, "det*(a*F%d + c*F%d)" % (top + 1, bot + 1),
                             lambda F, t=top, s=bot: DET * (a * F[t] + c * F[s])))
        out.append(Transform(bot, "det*(b*F%d + d*F%d)" % (top + 1, bot + 1),
                             lambda F, t=top, s=bot: DET * (b * F[t] + d * F[s])))
    for k in (6, 7, 8):
        out.append(Transform(k, "det^2*F%d" % (k + 1), lambda F, k=k: DET ** 2 * F[k]))
    return tuple(sorted(out, key=lambda t: t.index))


# -- the 2x2x2 variety ------------------------------------------------------

def _h_factor_substitution(factor: int) -> Substitution:
    v = UNIVERSE.var
    assign: dict[str, Polynomial] = {}
    x1, x2 = f"x1{factor}", f"x2{factor}"
    assign[x1] = a * v(x1) + b * v(x2)
    assign[x2] = c * v(x1) + d * v(x2)
    for k in (1, 2, 3):
        if k != factor:
            assign[f"u{k}"] = DET * v(f"u{k}")
    for name in H_P:
        idx = name[1:]
        if idx[factor - 1] != "1":
            continue
        other = idx[:factor - 1] + "2" + idx[factor:]
        p1, p2 = v(name), v("p" + other)
        assign[name] = a * p1 + b * p2
        assign["p" + other] = c * p1 + d * p2
    return Substitution(UNIVERSE, assign)


# equation order for the H system: G1 (2 comps), G2 (2), G3 (2), G4, G5, G6
H_EQ_NAMES = ("G1a", "G1b", "G2a", "G2b", "G3a", "G3b", "G4", "G5", "G6")
# quadrics in u: G4 = u1 u2, G5 = u2 u3, G6 = u3 u1
_QUAD_MISSING = {6: 3, 7: 1, 8: 2}


def _h_factor_transforms(factor: int) -> tuple[Transform, ...]:
    out = []
    for vec in (1, 2, 3):
        i0, i1 = 2 * (vec - 1), 2 * (vec - 1) + 1
        if vec == factor:
            out.append(Transform(i0, f"a*G{vec}a + b*G{vec}b",
                                 lambda E, i=i0, j=i1: a * E[i] + b * E[j]))
            out.append(Transform(i1, f"c*G{vec}a + d*G{vec}b",
                                 lambda E, i=i0, j=i1: c * E[i] + d * E[j]))
        else:
            out.append(Transform(i0, f"det*G{vec}a", lambda E, i=i0: DET * E[i]))
            out.append(Transform(i1, f"det*G{vec}b", lambda E, i=i1: DET * E[i]))
    for idx, missing in _QUAD_MISSING.items():
        name = H_EQ_NAMES[idx]
        if missing == factor:
            out.append(Transform(idx, f"det^2*{name}", lambda E, i=idx: DET ** 2 * E[i]))
        else:
            out.append(Transform(idx, f"det*{name}", lambda E, i=idx: DET * E[i]))
    return tuple(out)


def permutation_substitution(perm: Mapping[int, int]) -> Substitution:
    """Relabel tensor positions by ``perm`` (position k goes to ``perm[k]``)."""
    v = UNIVERSE.var
    assign: dict[str, Polynomial] = {}
    for k in (1, 2, 3):
        assign[f"u{k}"] = v(f"u{perm[k]}")
        for r in (1, 2):
            assign[f"x{r}{k}"] = v(f"x{r}{perm[k]}")
    for name in H_P:
        idx = name[1:]
        new = [""] * 3
        for pos in range(3):
            new[perm[pos + 1] - 1] = idx[pos]
        assign[name] = v("p" + "".join(new))
    return Substitution(UNIVERSE, assign)


PERMUTATIONS = {
    "id": {1: 1, 2: 2, 3: 3},
    "(12)": {1: 2, 2: 1, 3: 3},
    "(13)": {1: 3, 2: 2, 3: 1},
    "(23)": {1: 1, 2: 3, 3: 2},
    "(123)": {1: 2, 2: 3, 3: 1},
    "(132)": {1: 3, 2: 1, 3: 2},
}


def gl2_action(target: str) -> GL2Action:
    """``target`` is ``Pi``, ``H1``, ``H2``, ``H3`` or ``H-perm:<cycle>``."""
    if target == "Pi":
        return GL2Action("Pi", _pi_substitution(), _pi_transforms())
    if target in ("H1", "H2", "H3"):
        f = int(target[1])
        return GL2Action(target, _h_factor_substitution(f), _h_factor_transforms(f))
    if target.startswith("H-perm:"):
        key = target.split(":", 1)[1]
        if key not in PERMUTATIONS:
            raise KeyError(f"unknown permutation {key!r}")
        return GL2Action(target, permutation_substitution(PERMUTATIONS[key]), ())
    raise KeyError(f"unknown action target {target!r}")


def specialize_identity(sub: Substitution) -> Substitution:
    """Compose with g = identity (dinv = 1)."""
    return sub.then(Substitution(UNIVERSE, {"a": 1, "b": 0, "c": 0, "d": 1, "dinv": 1}))
