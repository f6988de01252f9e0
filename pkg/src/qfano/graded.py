"""Weights, equation degrees, Hilbert series and per-class numerical bookkeeping."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .catalog.universe import PI_COORDS
from .poly import NotHomogeneous
from .results import CheckResult, outcome

GENERIC_BASES = ((101, 103, 107, 1009), (11, 13, 19, 97))


@dataclass(frozen=True)
class WeightBase:
    w_p3: int
    w_u: int
    w_v: int
    w_G: int


def derive_weights(base: WeightBase) -> dict[str, int]:
    """Weights of all 19 coordinates making F1..F9 homogeneous."""
    p3, u, v, G = base.w_p3, base.w_u, base.w_v, base.w_G
    return {
        "p1": p3 + u - v, "p2": 2 * p3 + u - 2 * v, "p3": p3, "p4": 2 * p3 - v,
        "u": u, "v": v,
        "t1": 2 * (v - p3), "t2": 3 * (v - p3),
        "L123": G - (2 * p3 + 2 * u - v), "L124": G - (2 * p3 + u),
        "L125": G - (p3 + 2 * u), "L126": G - (p3 + u + v),
        "L135": G - 3 * u, "L136": G - (2 * u + v),
        "L245": G - (u + 2 * v), "L246": G - 3 * v,
        "s1": G - (u + 3 * v - 2 * p3), "s2": G - (u + 2 * v - p3), "s3": G - (u + v),
    }


@dataclass(frozen=True)
class DegreeData:
    d: tuple[int, ...]
    delta: int
    k: int
    p2_degrees: tuple[int, ...]

    def resolution_degrees(self) -> dict[str, list[int]]:
        return {"P0": [0], "P1": list(self.d), "P2": list(self.p2_degrees),
                "P3": [self.delta - e for e in self.d], "P4": [self.delta]}


def degree_data(base: WeightBase) -> DegreeData:
    p3, u, v, G = base.w_p3, base.w_u, base.w_v, base.w_G
    w = derive_weights(base)
    d = (
        G - (3 * v - 2 * p3), G - (u + 2 * v - 2 * p3), G - (2 * v - p3), G - (u + v - p3),
        G - v, G - u, 2 * (G - u - 2 * v + p3), 2 * G - (2 * u + 3 * v - p3), 2 * (G - (u + v)),
    )
    delta = 4 * G - (3 * u + 6 * v - 3 * p3)
    k = 7 * G - 5 * p3 - 9 * u - 4 * v
    d6, d8 = d[5], d[7]
    low = [d6 + w["p2"], d6 + w["p1"], d8 + w["p2"], d8 + w["p4"],
           d8 + w["p1"], d8 + w["p1"], d8 + w["p3"], d8 + w["p3"]]
    middle = tuple(sorted(low + [delta - e for e in low]))
    return DegreeData(d, delta, k, middle)


def degree_invariants(dd: DegreeData) -> list[str]:
    bad = []
    if sum(dd.d) != 3 * dd.delta:
        bad.append(f"sum(d) = {sum(dd.d)} != 3*delta = {3 * dd.delta}")
    if Counter(dd.p2_degrees) != Counter(dd.delta - e for e in dd.p2_degrees):
        bad.append("middle degrees are not symmetric under e -> delta - e")
    whole = [0, *dd.d, *dd.p2_degrees, *(dd.delta - e for e in dd.d), dd.delta]
    if Counter(whole) != Counter(dd.delta - e for e in whole):
        bad.append("resolution degrees are not self-dual")
    return bad


def sum_identity_holds() -> bool:
    """sum(d) - 3*delta is affine in the base, so vanishing at 0 and e1..e4 proves it."""
    points = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    for pt in points:
        dd = degree_data(WeightBase(*pt))
        if sum(dd.d) != 3 * dd.delta:
            return False
    return True


def homogeneity_failures(base: WeightBase, equations: Sequence | None = None) -> list[str]:
    from .catalog import build_pi

    F = equations if equations is not None else build_pi().F
    w = derive_weights(base)
    dd = degree_data(base)
    bad = []
    for i, f in enumerate(F):
        try:
            deg = f.weighted_degree(w)
        except NotHomogeneous as exc:
            bad.append(f"F{i + 1} not homogeneous under {tuple(vars(base).values())}: {exc}")
            continue
        if deg != dd.d[i]:
            bad.append(f"F{i + 1} has degree {deg}, expected {dd.d[i]}")
    return bad


def certify_homogeneity(bases: Sequence[WeightBase] | None = None,
                        equations: Sequence | None = None) -> CheckResult:
    from .catalog import CLASS_NUMBERS, fano_class

    if bases is None:
        bases = [WeightBase(*fano_class(n).base) for n in CLASS_NUMBERS]
        bases += [WeightBase(*b) for b in GENERIC_BASES]
    bad = []
    for b in bases:
        bad += homogeneity_failures(b, equations)
        bad += degree_invariants(degree_data(b))
    if not sum_identity_holds():
        bad.append("sum(d) = 3*delta fails as an identity in the base weights")
    return outcome("graded.homogeneity", bad, details={"bases": len(bases)})


# -- integer polynomials in t, stored as coefficient lists, low degree first --

def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def tpoly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def tpoly_monomial(e: int, c: int = 1) -> list[int]:
    return [0] * e + [c]


def tpoly_add(p: Sequence[int], q: Sequence[int]) -> list[int]:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def one_minus(e: int) -> list[int]:
    return tpoly_add([1], tpoly_monomial(e, -1))


def product_one_minus(weights: Sequence[int]) -> list[int]:
    out = [1]
    for w in weights:
        out = tpoly_mul(out, one_minus(w))
    return out


class InexactDivision(ArithmeticError):
    pass


def tpoly_divide(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """Exact quotient of integer polynomials; q has leading coefficient +-1 here."""
    p, q = _trim(list(p)), _trim(list(q))
    if q == [0]:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(p) < len(q):
        if any(p):
            raise InexactDivision("nonzero remainder")
        return [0]
    quot = [0] * (len(p) - len(q) + 1)
    rem = list(p)
    lead = q[-1]
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + len(q) - 1]
        if c % lead:
            raise InexactDivision("non-integral quotient")
        c //= lead
        quot[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    if any(rem):
        raise InexactDivision("nonzero remainder")
    return _trim(quot)


def tpoly_text(p: Sequence[int]) -> str:
    parts = []
    for e, c in enumerate(p):
        if not c:
            continue
        mag = abs(c)
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


@dataclass(frozen=True)
class HilbertSeries:
    numerator: tuple[int, ...]
    denominator_weights: tuple[int, ...]

    def __post_init__(self):
        if any(w <= 0 for w in self.denominator_weights):
            raise ValueError("denominator weights must be positive")

    def expansion(self, order: int) -> list[int]:
        """Coefficients of t^0..t^order of numerator / prod(1 - t^w)."""
        if order < 0:
            raise ValueError("order must be non-negative")
        series = [0] * (order + 1)
        for e, c in enumerate(self.numerator[:order + 1]):
            series[e] = c
        # multiply by 1/(1 - t^w) = running sum with stride w
        for w in self.denominator_weights:
            for n in range(w, order + 1):
                series[n] += series[n - w]
        return series


def hilbert_series(num: Sequence[int], weights: Sequence[int]) -> HilbertSeries:
    return HilbertSeries(tuple(num), tuple(weights))


def key_numerator(dd: DegreeData) -> list[int]:
    """1 - sum t^d_i + sum t^middle - sum t^(delta - d_i) + t^delta."""
    out = [1]
    for e in dd.d:
        out = tpoly_add(out, tpoly_monomial(e, -1))
    for e in dd.p2_degrees:
        out = tpoly_add(out, tpoly_monomial(e, 1))
    for e in dd.d:
        out = tpoly_add(out, tpoly_monomial(dd.delta - e, -1))
    return tpoly_add(out, tpoly_monomial(dd.delta, 1))


def class_degree_data(fc) -> DegreeData:
    return degree_data(WeightBase(*fc.base))


def key_series(fc) -> HilbertSeries:
    return hilbert_series(key_numerator(class_degree_data(fc)), fc.key_weights)


def class_numerator(fc) -> list[int]:
    """Hilbert numerator of X over its ambient weights; raises InexactDivision on mismatch."""
    num = key_numerator(class_degree_data(fc))
    num = tpoly_mul(num, product_one_minus(fc.cuts))
    num = tpoly_mul(num, product_one_minus(fc.ambient_PX))
    return tpoly_divide(num, product_one_minus(fc.key_weights))


def class_series(fc) -> HilbertSeries:
    return hilbert_series(class_numerator(fc), fc.ambient_PX)


def palindromic_sign(num: Sequence[int], e: int) -> int | None:
    """+1 or -1 when num(t) = sign * t^e * num(1/t), else None."""
    padded = list(num) + [0] * max(0, e + 1 - len(num))
    if len(padded) > e + 1:
        return None
    rev = padded[::-1]
    if rev == padded:
        return 1
    if rev == [-c for c in padded]:
        return -1
    return None


def implied_generators(series: Sequence[int], max_degree: int) -> list[int]:
    """Greedy generator degrees forced by the series, assuming no relations up to max_degree."""
    gens: list[int] = []
    for n in range(1, max_degree + 1):
        free = HilbertSeries((1,), tuple(gens)).expansion(n)[n]
        extra = series[n] - free
        gens += [n] * max(extra, 0)
    return gens


def genus(series: Sequence[int]) -> int:
    return series[1] - 2


def adjunction_values(fc) -> dict:
    dd = class_degree_data(fc)
    key_sum = sum(fc.key_weights)
    pi13_sum = sum(fc.weight_table[c] for c in PI_COORDS if c != "L246")
    return {
        "K_X": dd.delta - key_sum + sum(fc.cuts),
        "K_Pi13": dd.delta - pi13_sum,
        "K_key": dd.delta - key_sum,
        "k": dd.k,
    }


def adjunction_check(fc) -> CheckResult:
    vals = adjunction_values(fc)
    bad = []
    if vals["K_X"] != -1:
        bad.append(f"delta - sum(weights) + sum(cuts) = {vals['K_X']}, expected -1")
    if vals["K_Pi13"] != -vals["k"]:
        bad.append(f"delta - sum(Pi13 weights) = {vals['K_Pi13']}, expected -k = {-vals['k']}")
    details = dict(vals)
    if fc.cone:
        details["note"] = ("delta - sum(weights) is -(k+1) for the cone and -k for the "
                           "13-dimensional ring; the check uses the latter")
    return outcome(f"graded.adjunction.{fc.number}", bad, details=details)


def class_summary(fc, order: int | None = None) -> dict:
    """Everything the hilbert subcommand prints for one class."""
    dd = class_degree_data(fc)
    order = 2 * max(fc.ambient_PX) if order is None else order
    out: dict = {
        "class": fc.number, "d": fc.d,
        "base": dict(zip(("w_p3", "w_u", "w_v", "w_G"), fc.base)),
        "weights": {k: fc.weight_table[k] for k in PI_COORDS},
        "delta": dd.delta, "k": dd.k, "equation_degrees": list(dd.d),
        "middle_degrees": list(dd.p2_degrees),
        "ambient_PX": list(fc.ambient_PX), "cuts": list(fc.cuts), "cone": fc.cone,
        "basket": list(fc.basket),
    }
    adj = adjunction_check(fc)
    out["adjunction"] = {"status": adj.status, **adj.details}
    try:
        num = class_numerator(fc)
    except InexactDivision as exc:
        out["numerator"] = None
        out["numerator_error"] = str(exc)
        return out
    series = HilbertSeries(tuple(num), fc.ambient_PX).expansion(max(order, 1))
    e = sum(fc.ambient_PX) - 1
    gens = implied_generators(series, max(fc.ambient_PX))
    out.update({
        "numerator": tpoly_text(num),
        "numerator_coefficients": num,
        "palindromic_sign": palindromic_sign(num, e),
        "palindromic_degree": e,
        "expansion": series[:order + 1],
        "genus": genus(series),
        "implied_generators": gens,
        "implied_generators_match": sorted(gens) == sorted(fc.ambient_PX),
        "codimension": len(fc.ambient_PX) - 1 - 3,
    })
    return out


def numerator_failures(fc) -> list[str]:
    bad = []
    try:
        num = class_numerator(fc)
    except InexactDivision as exc:
        return [f"class {fc.number}: numerator division is not exact ({exc})"]
    if num[0] != 1:
        bad.append(f"class {fc.number}: constant term {num[0]}")
    e = sum(fc.ambient_PX) - 1
    if palindromic_sign(num, e) is None:
        bad.append(f"class {fc.number}: numerator is not palindromic of degree {e}")
    if len(fc.ambient_PX) - 1 - 3 != 4:
        bad.append(f"class {fc.number}: ambient has {len(fc.ambient_PX)} weights, codimension is not 4")
    series = HilbertSeries(tuple(num), fc.ambient_PX).expansion(2 * max(fc.ambient_PX))
    if any(c < 0 for c in series):
        bad.append(f"class {fc.number}: negative Hilbert function value")
    gens = implied_generators(series, max(fc.ambient_PX))
    if sorted(gens) != sorted(fc.ambient_PX):
        bad.append(f"class {fc.number}: series implies generators {gens}, ambient has {list(fc.ambient_PX)}")
    key = key_series(fc).expansion(2 * max(fc.ambient_PX))
    if any(c < 0 for c in key):
        bad.append(f"class {fc.number}: negative key-variety Hilbert function value")
    return bad


def numerator_check(fc) -> CheckResult:
    return outcome(f"graded.numerator.{fc.number}", numerator_failures(fc))
