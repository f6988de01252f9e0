"""The eight Q-Fano threefold classes: weights, table data and threefold sections T."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from ..poly import Polynomial, Substitution
from .pi import RationalExpr
from .universe import PI_COORDS, UNIVERSE, poly


class UnknownClass(KeyError):
    pass


@dataclass(frozen=True)
class Locus:
    """A rational family of points on T.

    ``entries`` are evaluated in order; each may use parameters, the free
    locus variables and earlier entries. Coordinates of the section that no
    entry assigns are zero on the locus. ``stated`` marks loci given as
    catalog data as opposed to loci derived for the smoothness probes.
    """

    name: str
    stated: bool
    free: tuple[str, ...]
    entries: tuple[tuple[str, RationalExpr], ...]
    note: str = ""

    @property
    def polynomial(self) -> bool:
        """Every entry is a polynomial (constant denominators only)."""
        return all(e.denominator.is_constant() for _, e in self.entries)

    def substitutions(self) -> list[Substitution]:
        """One substitution per entry, in the order they must be applied to a
        polynomial (last entry first), so later entries may use earlier ones."""
        if not self.polynomial:
            raise ValueError(f"locus {self.name} has non-constant denominators")
        return [Substitution(UNIVERSE, {name: e.numerator / e.denominator.constant_value()})
                for name, e in reversed(self.entries)]


@dataclass(frozen=True)
class ChartReduction:
    """Solve equations linear in one variable each on a chart of T."""

    chart: Mapping[str, int]
    dropped: tuple[str, ...]
    pivots: tuple[tuple[int, str], ...]
    reducer: int
    expected: Polynomial


@dataclass(frozen=True)
class Emptiness:
    """``T`` meets ``{restriction}`` nowhere, for generic parameters."""

    restriction: tuple[str, ...]


@dataclass(frozen=True)
class Section:
    assign: Mapping[str, Polynomial]
    coords: tuple[str, ...]
    params: tuple[str, ...]
    loci: tuple[Locus, ...] = ()
    chart: ChartReduction | None = None
    emptiness: Emptiness | None = None

    def substitution(self, drop: tuple[str, ...] = ()) -> Substitution:
        return Substitution(UNIVERSE, {k: v for k, v in self.assign.items() if k not in drop})


@dataclass(frozen=True)
class FanoClass:
    number: int
    d: int
    base: tuple[int, int, int, int]
    weight_table: Mapping[str, int]
    ambient_PX: tuple[int, ...]
    cuts: tuple[int, ...]
    cone: bool
    basket: tuple[str, ...]
    section_T: Section
    extra_weights: Mapping[str, int] = field(default_factory=dict)

    @property
    def key_weights(self) -> tuple[int, ...]:
        """Generator weights of the key variety's graded ring."""
        w = tuple(self.weight_table[c] for c in PI_COORDS if c != "L246")
        return w + ((1,) if self.cone else ())

    @property
    def key_dimension(self) -> int:
        return 14 if self.cone else 13


def _expr(num: str, den: str = "1") -> RationalExpr:
    return RationalExpr(poly(num), poly(den))


def _locus(name, stated, free, entries, note=""):
    return Locus(name, stated, tuple(free),
                 tuple((k, _expr(*((v,) if isinstance(v, str) else v))) for k, v in entries), note)


def _section(assign, coords, params, **kw) -> Section:
    full = {k: poly(v) for k, v in assign.items()}
    full["L246"] = poly("1")
    return Section(full, tuple(coords), tuple(params), **kw)


def _s1_line() -> Locus:
    return _locus("A(s1)", True, ("tau",), (("s1", "tau"),))


P308 = (
    "-1 + a123*p1^2*p4 - a125*p1^2*u + b123*p1^2*u - a123*p1*p3*p4*u + a125*p1*p3*u^2"
    " - b123*p1*p3*u^2 - a123*p4^2*u^2 - a135*p4*u^3 - b123*p4*u^3 - b135*u^4"
)


def _t308() -> Section:
    assign = {"t1": "0", "L245": "0", "t2": "0", "L126": "0", "p2": "0", "L124": "0", "L136": "0",
              "L125": "a125*p1", "L123": "a123*p4 + b123*u", "L135": "a135*p4 + b135*u",
              "s1": "a1*v"}
    loci = (
        _locus("S1", True, ("tau", "rho"), (
            ("a123", "-(b135*rho^2 + (a135 + b123)*rho)"),
            ("p4", "tau"), ("u", "rho*tau"),
        ), "rational points use a root rho of the quadric; a123 is made dependent"),
        _locus("S2", True, ("tau", "alpha"), (
            ("a123", "alpha^2"), ("p4", "tau^2"), ("s2", "alpha*tau^3"),
        )),
        _locus("s3-chart", True, ("tau",), (
            ("b135", ("-1 - (a1^2*a123 + a1*a135 + a1*b123)*tau^5", "tau^5")),
            ("s3", "1"), ("v", "tau"), ("u", "tau^2"), ("p4", "a1*tau^2"),
        ), "the quintic in v is solved by making b135 dependent"),
    )
    chart = ChartReduction(chart={"v": 1}, dropped=("s1",),
                           pivots=((5, "s3"), (3, "s2"), (1, "s1")), reducer=4, expected=poly(P308))
    return _section(assign, ("p1", "p4", "u", "p3", "v", "s2", "s3"),
                    ("a125", "a123", "b123", "a135", "b135", "a1"), loci=loci, chart=chart)


def _t501() -> Section:
    assign = {"t1": "0", "L245": "0", "t2": "a_*L126", "p2": "0", "L124": "0", "L136": "0",
              "p1": "0", "L125": "0", "p4": "b4*u + c4*L126^2",
              "L123": "b123*u + c123*L126^2", "L135": "b135*u + c135*L126^2"}
    return _section(assign, ("L126", "u", "p3", "v", "s1", "s2", "s3"),
                    ("a_", "b4", "c4", "b123", "c123", "b135", "c135"), loci=(_s1_line(),))


def _t512() -> Section:
    assign = {"t1": "0", "L245": "0", "p2": "a2*L126", "t2": "a_*L126", "p1": "0", "L124": "0",
              "L136": "0", "p4": "a4*u", "L125": "a125*u",
              "L123": "a123*p3 + b123*L126^2", "L135": "a135*p3 + b135*L126^2"}
    return _section(assign, ("L126", "u", "p3", "v", "s1", "s2", "s3"),
                    ("a2", "a_", "a4", "a125", "a123", "b123", "a135", "b135"), loci=(_s1_line(),))


# the literal loci use a136 where the section equations need 3*a136 (with
# L136 = a136*u on T); literal_550_loci() keeps those forms for comparison
K550 = "a135 + 3*a136 + a123*a4 + a124*a4 + a4^2*b123 + a4*b135"
S3_550 = "-(a135 + 2*a136 + a123*a4 + a124*a4 + a4^2*b123 + a4*b135)*u^2"
K550_LITERAL = "a135 + a136 + a123*a4 + a124*a4 + a4^2*b123 + a4*b135"
S3_550_LITERAL = ("(-3*a135 - 2*a136 - 3*a123*a4 - 3*a124*a4 - 3*a4^2*b123 - 3*a4*b135)*u^2", "3")


def _loci_550(k: str, s3_s1, s3_s2, suffix: str = "") -> tuple[Locus, ...]:
    return (
        _locus("S1" + suffix, True, ("tau",), (("u", "tau"), ("s3", s3_s1))),
        _locus("S2" + suffix, True, ("tau",), (
            ("u", f"-({k})*tau^2"), ("v", f"({k})^2*tau^3"), ("s1", "a4*v"), ("s3", s3_s2),
        ), "the cubic relation in u, v is parameterized by a cusp"),
    )


def literal_550_loci() -> tuple[Locus, ...]:
    return _loci_550(K550_LITERAL, ("a136*tau^2", "3"), S3_550_LITERAL, " (literal)")


def _t550() -> Section:
    assign = {"p2": "0", "t1": "0", "L245": "0", "p1": "a1*L126", "t2": "a_*L126", "p4": "a4*u",
              "L124": "a124*u", "L136": "a136*u", "L125": "a125*p3",
              "L123": "a123*v + b123*s1 + c123*L126^2", "L135": "a135*v + b135*s1 + c135*L126^2"}
    loci = (_s1_line(),) + _loci_550(K550, "a136*tau^2", S3_550)
    return _section(assign, ("L126", "u", "p3", "v", "s1", "s2", "s3"),
                    ("a1", "a_", "a4", "a124", "a136", "a125", "a123", "b123", "c123",
                     "a135", "b135", "c135"), loci=loci)


def _t872() -> Section:
    # t2 and L126 are mixed by an invertible change; p2 = 0 is the weight-one cut
    assign = {"t2": "a_*T2 + b_*l126", "L126": "c_*T2 + d_*l126", "p4": "T2", "u": "l126",
              "p2": "0", "p1": "0", "t1": "0", "L245": "0",
              "L124": "a124*p3", "L136": "a136*p3", "L125": "a125*v + b125*s1",
              "L123": "a123*s2 + q10*T2^2 + q11*T2*l126 + q12*l126^2",
              "L135": "a135*s2 + q20*T2^2 + q21*T2*l126 + q22*l126^2"}
    return _section(assign, ("T2", "l126", "p3", "v", "s1", "s2", "s3"),
                    ("a_", "b_", "c_", "d_", "a124", "a136", "a125", "b125", "a123", "a135",
                     "q10", "q11", "q12", "q20", "q21", "q22"), loci=(_s1_line(),))


K577 = ("a2^3*(a124^2*b3^2 - a124*a125*b3^3 - 2*a124*a_*b3 + a125*a_*b3^2"
        " + a_^2 + a_*b3^3)")


def _t577() -> Section:
    assign = {"L245": "0", "t1": "0", "L126": "0", "L136": "0", "p2": "a2*L135",
              "t2": "a_*L135", "L124": "a124*L135", "L125": "a125*L135",
              "p1": "a1*L123", "p4": "a4*L123", "p3": "a3*u + b3*s1"}
    loci = (
        _locus("L123=u=0, s1=0", False, ("tau", "xi"), (
            ("a125", ("a124*xi^2*a2 + a2^3*a_^2 - xi^3", "a2^2*a_*xi")),
            ("L135", "tau"), ("v", "xi*tau^2"), ("s2", ("-a2^2*a_*tau^2", "xi")),
        ), "derived: a125 is made dependent on xi"),
        _locus("L123=u=0, s1!=0", False, ("tau",), (
            ("kappa", (f"-({K577})", "b3^6")),
            ("L135", "kappa*tau^3"), ("s1", "kappa^2*tau^5"),
            ("v", ("a2*L135^2*(a124*b3 - a_)", "b3")),
            ("s2", ("v - a125*a2*b3*L135^2", "b3")),
            ("s3", ("-b3^2*s1^2", "a2*L135")),
        ), "derived: the relation b3^6*s1^3 + K*L135^5 = 0 is parameterized by a cusp"),
    )
    return _section(assign, ("L135", "L123", "u", "s1", "v", "s2", "s3"),
                    ("a2", "a_", "a124", "a125", "a1", "a4", "a3", "b3"), loci=loci)


def _t878() -> Section:
    assign = {"L245": "0", "p2": "0", "t1": "0", "L126": "0", "L136": "0",
              "p1": "a1*L125 + b1*L135", "p4": "a4*L125 + b4*L135", "t2": "a_*L125 + b_*L135",
              "L124": "a124*L125 + b124*L135", "p3": "a3*s1 + b3*L123", "u": "c_*s1 + d_*L123"}
    loci = (
        _locus("L125=L135=0", False, ("tau", "rho"), (
            ("c_", "(a3 + b3*rho)^2 - d_*rho"),
            ("s1", "tau"), ("L123", "rho*tau"),
        ), "derived: c_ is made dependent on the slope rho"),
    )
    return _section(assign, ("L125", "L135", "s1", "L123", "v", "s2", "s3"),
                    ("a1", "b1", "a4", "b4", "a_", "b_", "a124", "b124", "a3", "b3", "c_", "d_"),
                    loci=loci)


def _t1766() -> Section:
    assign = {"p2": "0", "L245": "0", "p1": "a1*L136", "p4": "a4*L136", "t1": "a0*L136",
              "L126": "a126*L136", "p3": "a3*u + b3*s1 + c3*L135",
              "t2": "a_*u + b_*s1 + c_*L135", "L124": "a124*u + b124*s1 + c124*L135",
              "L125": "a125*u + b125*s1 + c125*L135", "s2": "a2*v + b2*L123 + c2*L136^2"}
    loci = (
        _locus("L136=s1=0", False, ("tau",), (
            ("u", "a3^2*c3*tau^3"), ("v", "a3^3*c3*tau^4"), ("L135", "-a3^3*tau^3"),
            ("L123", ("-a2*v", "b2")), ("s3", "a3^4*c3*tau^5"),
        ), "derived: on L136 = s1 = 0 the section reduces to a3*u^4 = c3*v^3"),
    )
    return _section(assign, ("L136", "u", "s1", "L135", "v", "L123", "s3"),
                    ("a1", "a4", "a0", "a126", "a3", "b3", "c3", "a_", "b_", "c_",
                     "a124", "b124", "c124", "a125", "b125", "c125", "a2", "b2", "c2"),
                    loci=loci, emptiness=Emptiness(("L136", "u", "s1")))


# number -> (d, group, ambient P_X, cuts, cone, basket, section builder)
_TABLE = {
    308: (7, 1, (1, 5, 6, 6, 7, 8, 9, 10), (2, 2, 3, 3, 4, 4, 4, 5, 6, 6, 8), True,
          ("1/2(1,1,1)", "1/3(1,1,2)", "1/5(1,2,3)", "2x1/6(1,1,5)"), _t308),
    501: (7, 1, (1, 3, 6, 7, 8, 8, 9, 10), (2, 2, 3, 4, 4, 4, 5, 5, 6, 6, 6), True,
          ("1/2(1,1,1)", "4x1/3(1,1,2)", "1/8(1,1,7)"), _t501),
    512: (6, 1, (1, 3, 5, 6, 7, 7, 8, 9), (2, 2, 3, 3, 4, 4, 4, 5, 5, 6, 6), True,
          ("3x1/3(1,1,2)", "1/5(1,2,3)", "1/7(1,1,6)"), _t512),
    550: (5, 1, (1, 3, 4, 5, 6, 6, 7, 8), (2, 2, 2, 3, 3, 4, 4, 4, 5, 6, 6), True,
          ("1/2(1,1,1)", "3x1/3(1,1,2)", "1/4(1,1,3)", "1/6(1,1,5)"), _t550),
    872: (4, 1, (1, 3, 3, 4, 5, 5, 6, 7), (2, 2, 2, 3, 3, 4, 4, 5, 6, 6), False,
          ("5x1/3(1,1,2)", "1/5(1,1,4)"), _t872),
    577: (4, 2, (1, 3, 4, 5, 5, 6, 6, 7), (2, 2, 2, 3, 3, 3, 3, 4, 4, 5), False,
          ("1/2(1,1,1)", "3x1/3(1,1,2)", "2x1/5(1,1,4)"), _t577),
    878: (3, 2, (1, 3, 3, 4, 4, 5, 5, 6), (2, 2, 2, 2, 3, 3, 3, 3, 4, 4), False,
          ("4x1/3(1,1,2)", "2x1/4(1,1,3)"), _t878),
    1766: (2, 2, (1, 2, 3, 3, 3, 4, 4, 5), (1, 2, 2, 2, 2, 3, 3, 3, 3, 4), False,
           ("2x1/2(1,1,1)", "5x1/3(1,1,2)"), _t1766),
}

CLASS_NUMBERS = tuple(_TABLE)


def class_base(d: int, group: int) -> tuple[int, int, int, int]:
    """(w(p3), w(u), w(v), w(G)) of the two weight families."""
    if group == 1:
        return (d, d - 1, d + 1, 3 * d + 3)
    return (d + 1, d + 1, d + 2, 3 * d + 6)


@lru_cache(maxsize=None)
def fano_class(number: int) -> FanoClass:
    from ..graded import WeightBase, derive_weights

    if number not in _TABLE:
        raise UnknownClass(f"unknown class {number}; known: {', '.join(map(str, CLASS_NUMBERS))}")
    d, group, px, cuts, cone, basket, build = _TABLE[number]
    base = class_base(d, group)
    weights = derive_weights(WeightBase(*base))
    section = build()
    extra = {}
    if number == 872:
        extra = {"T2": weights["p4"], "l126": weights["u"]}
    fc = FanoClass(number, d, base, weights, px, cuts, cone, basket, section, extra)
    self_check(fc)
    return fc


def self_check(fc: FanoClass) -> None:
    assert len(fc.cuts) == fc.key_dimension - 3, fc.number
    assert fc.weight_table["L246"] == 0
    w = dict(fc.weight_table)
    w.update(fc.extra_weights)
    # every section assignment respects the class grading (parameters have weight 0)
    for name, value in fc.section_T.assign.items():
        if value:
            assert value.weighted_degree(w) == w[name], (fc.number, name)
