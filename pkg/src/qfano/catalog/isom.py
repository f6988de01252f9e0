"""Isomorphism between the degree-six base change of the 15-fold and the 13-fold."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..poly import Polynomial, Substitution
from .pi import RationalExpr
from .universe import UNIVERSE, poly

BASE_TEXT = {"t1": "-A^2 - A*B - B^2", "t2": "-A*B*(A + B)"}

DEN_AB = "(A - B)*(2*A + B)"
DEN_AC = "(A - B)*(A + 2*B)"
DEN_BC = "(2*A + B)*(A + 2*B)"
# the excluded locus of the base: (A - B)(2A + B)(A + 2B) = 0
DISCRIMINANT = "(A - B)*(2*A + B)*(A + 2*B)"

# target coordinate -> (polynomial part, fractional numerator, denominator);
# the u3 entry is listed with the sign that build_isom reverses
FWD_TEXT = {
    "p111": ("-3*L246", "0", "1"),
    "p112": ("3*L245", "3*(L124 + (A + B)*L126)", DEN_BC),
    "p121": ("3*L245", "3*(-L124 + B*L126)", DEN_AC),
    "p122": ("-3*L136", "3*(L123 - A*L125)", DEN_AB),
    "p211": ("3*L245", "3*(L124 - A*L126)", DEN_AB),
    "p212": ("-3*L136", "3*(-L123 + B*L125)", DEN_AC),
    "p221": ("-3*L136", "3*(L123 + (A + B)*L125)", DEN_BC),
    "p222": ("3*L135", "0", "1"),
    "x11": ("-A*p1 - A^2*p2 + u", "0", "1"),
    "x21": ("-A*p3 - A^2*p4 + v", "0", "1"),
    "x12": ("B*p1 + B^2*p2 - u", "0", "1"),
    "x22": ("B*p3 + B^2*p4 - v", "0", "1"),
    "x13": ("-(A + B)*p1 + (A + B)^2*p2 - u", "0", "1"),
    "x23": ("-(A + B)*p3 + (A + B)^2*p4 - v", "0", "1"),
    "u1": (
        "3*((A*B + B^2)*s1 - A*s2 - s3)",
        "3*((2*A*L123 - (A*B + B^2)*L125)*p1"
        " - ((2*A^2 + A*B + B^2)*L123 - 2*(A^2*B + A*B^2)*L125)*p2"
        " + (2*A*L124 - (A*B + B^2)*L126)*p3"
        " - ((2*A^2 + A*B + B^2)*L124 - 2*(A^2*B + A*B^2)*L126)*p4"
        " + (L123 - A*L125)*u + (L124 - A*L126)*v)",
        DEN_AB,
    ),
    "u2": (
        "3*((A^2 + A*B)*s1 - B*s2 - s3)",
        "3*((-2*B*L123 + (A^2 + A*B)*L125)*p1"
        " + ((A^2 + A*B + 2*B^2)*L123 - 2*(A^2*B + A*B^2)*L125)*p2"
        " + (-2*B*L124 + (A^2 + A*B)*L126)*p3"
        " + ((A^2 + A*B + 2*B^2)*L124 - 2*(A^2*B + A*B^2)*L126)*p4"
        " + (-L123 + B*L125)*u + (-L124 + B*L126)*v)",
        DEN_AC,
    ),
    "u3": (
        "3*(A*B*s1 - (A + B)*s2 + s3)",
        "3*((2*(A + B)*L123 - A*B*L125)*p1"
        " + ((2*A^2 + 3*A*B + 2*B^2)*L123 - 2*(A^2*B + A*B^2)*L125)*p2"
        " + (2*(A + B)*L124 - A*B*L126)*p3"
        " + ((2*A^2 + 3*A*B + 2*B^2)*L124 - 2*(A^2*B + A*B^2)*L126)*p4"
        " + (-L123 - (A + B)*L125)*u + (-L124 - (A + B)*L126)*v)",
        DEN_BC,
    ),
}


@dataclass(frozen=True)
class IsomData:
    base_sub: Substitution
    fwd: Mapping[str, RationalExpr]
    discriminant: Polynomial
    # the u3 component with the opposite overall sign; its images miss G3, G5, G6
    u3_flipped: RationalExpr

    def image(self, point: Mapping[str, object]) -> dict[str, object]:
        """Evaluate the forward map at a point carrying A, B and the 19 coordinates."""
        return {name: expr.evaluate(point) for name, expr in self.fwd.items()}


def build_isom() -> IsomData:
    fwd = {}
    for name, (whole, frac, den) in FWD_TEXT.items():
        d = poly(den)
        fwd[name] = RationalExpr(poly(whole) * d + poly(frac), d)
    flipped = fwd["u3"]
    fwd["u3"] = RationalExpr(-flipped.numerator, flipped.denominator)
    data = IsomData(
        base_sub=Substitution(UNIVERSE, {k: poly(t) for k, t in BASE_TEXT.items()}),
        fwd=fwd,
        discriminant=poly(DISCRIMINANT),
        u3_flipped=flipped,
    )
    self_check(data)
    return data


def self_check(data: IsomData) -> None:
    from ..poly import divides

    for name, expr in data.fwd.items():
        assert divides(expr.denominator, data.discriminant), name
