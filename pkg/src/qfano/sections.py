"""Checks on the threefold sections T of each class: chart reductions, loci, smoothness."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .catalog import build_pi, fano_class
from .catalog.classes import ChartReduction, Emptiness, FanoClass, Locus
from .catalog.universe import UNIVERSE
from .poly import Polynomial, Substitution, divides, jacobian, rank_values

PROBE_DRAWS = 20
# parameters are meant to be general; a wide range makes accidental
# special values (a closed condition) vanishingly rare
PARAM_BOUND = 10_000


@lru_cache(maxsize=None)
def section_equations(number: int) -> tuple[Polynomial, ...]:
    fc = fano_class(number)
    sub = fc.section_T.substitution()
    return tuple(sub(f) for f in build_pi().F)


@lru_cache(maxsize=None)
def section_jacobian(number: int):
    fc = fano_class(number)
    return jacobian(section_equations(number), fc.section_T.coords)


# -- (a) chart reduction ----------------------------------------------------

def substituted(fc: FanoClass, F=None, drop: tuple[str, ...] = ()) -> list[Polynomial]:
    """The key equations (catalog ones unless ``F`` is given) restricted to T."""
    if F is None and not drop:
        return list(section_equations(fc.number))
    sub = fc.section_T.substitution(drop=drop)
    return [sub(f) for f in (F if F is not None else build_pi().F)]


def chart_reduction(fc: FanoClass, F=None) -> tuple[Polynomial | None, list[str]]:
    """Run the recorded eliminations; return the reduced equation and any failures."""
    red: ChartReduction = fc.section_T.chart
    equations = substituted(fc, F, red.dropped)
    chart = Substitution(UNIVERSE, dict(red.chart))
    eqs = [chart(f) for f in equations]
    bad = []
    for idx, name in red.pivots:
        f = eqs[idx]
        if f.degree_in(name) != 1:
            bad.append(f"F{idx + 1} is not linear in {name}")
            return None, bad
        parts = f.coefficients_in(name)
        coef, rest = parts[1], parts.get(0, UNIVERSE.zero())
        if not coef.is_constant():
            bad.append(f"pivot of F{idx + 1} in {name} is not a unit on the chart: {coef.to_text()}")
            return None, bad
        solved = Substitution(UNIVERSE, {name: -rest / coef.constant_value()})
        eqs = [solved(e) for e in eqs]
    reduced = eqs[red.reducer]
    if reduced != red.expected and reduced != -red.expected:
        bad.append(f"reduced F{red.reducer + 1} differs from the stored polynomial by "
                   f"{(reduced - red.expected).to_text()}")
    for i, e in enumerate(eqs):
        if i != red.reducer and e and not divides(red.expected, e):
            bad.append(f"F{i + 1} on the chart is not a multiple of the reduced equation")
    return reduced, bad


# -- (b) loci lie on T --------------------------------------------------------

def locus_residuals(fc: FanoClass, locus: Locus, equations=None) -> list[Polynomial]:
    """Substitute a polynomial locus into the section equations symbolically."""
    coords = fc.section_T.coords
    assigned = {name for name, _ in locus.entries}
    zero = Substitution(UNIVERSE, {c: 0 for c in coords if c not in assigned})
    out = []
    for f in equations if equations is not None else section_equations(fc.number):
        g = zero(f)
        for s in locus.substitutions():
            g = s(g)
        out.append(g)
    return out


def draw_parameters(fc: FanoClass, locus: Locus, rng: random.Random) -> dict[str, Fraction]:
    return {name: _nonzero(rng) for name in fc.section_T.params + locus.free}


def _nonzero(rng: random.Random) -> Fraction:
    x = rng.randint(1, PARAM_BOUND)
    return Fraction(x if rng.random() < 0.5 else -x)


def locus_point(fc: FanoClass, locus: Locus, rng: random.Random, retries: int = 100) -> dict[str, Fraction]:
    """Generic parameters plus a point of the locus; redraws when a denominator vanishes."""
    for _ in range(retries):
        pt = draw_parameters(fc, locus, rng)
        for c in fc.section_T.coords:
            pt[c] = Fraction(0)
        try:
            for name, expr in locus.entries:
                pt[name] = expr.evaluate(pt)
        except ZeroDivisionError:
            continue
        if all(pt[c] == 0 for c in fc.section_T.coords):
            continue
        # dependent parameters must stay generic too
        if any(pt[p] == 0 for p in fc.section_T.params):
            continue
        return pt
    raise RuntimeError(f"no admissible parameters for locus {locus.name}")


def probe(fc: FanoClass, locus: Locus, rng: random.Random, equations=None) -> list[str]:
    """Evaluate the section equations and the Jacobian rank at one locus point."""
    pt = locus_point(fc, locus, rng)
    eqs = equations if equations is not None else section_equations(fc.number)
    bad = []
    for i, f in enumerate(eqs):
        val = f.evaluate(pt)
        if val:
            bad.append(f"F{i + 1} = {val} at a point of {locus.name}")
    if bad:
        return bad
    jac = jacobian(eqs, fc.section_T.coords) if equations is not None else section_jacobian(fc.number)
    rank = rank_values(jac.evaluate(pt))
    codim = len(fc.section_T.coords) - 3
    if rank != codim:
        shown = {k: str(v) for k, v in sorted(pt.items())}
        bad.append(f"Jacobian rank {rank} != {codim} on {locus.name} at {shown}")
    return bad


# -- emptiness ---------------------------------------------------------------

def pure_power_elimination(equations, coords) -> tuple[bool, list[str]]:
    """Repeatedly use an equation c * x^k (c free of coordinates) to force x = 0.

    Returns (every coordinate forced to zero, the trace of eliminations with
    the coefficients that must not vanish).
    """
    coords = list(coords)
    eqs = [e for e in equations if e]
    trace = []
    while coords:
        hit = None
        for e in eqs:
            present = [c for c in coords if e.degree_in(c) > 0]
            if len(present) != 1:
                continue
            x = present[0]
            parts = e.coefficients_in(x)
            if len(parts) == 1:
                (k, coef), = parts.items()
                if not any(coef.degree_in(c) > 0 for c in coords):
                    hit = (x, k, coef)
                    break
        if hit is None:
            return False, trace
        x, k, coef = hit
        trace.append(f"{x}^{k} with coefficient {coef.to_text()}")
        zero = Substitution(UNIVERSE, {x: 0})
        eqs = [z for z in (zero(e) for e in eqs) if z]
        coords.remove(x)
    return True, trace


def emptiness(fc: FanoClass, equations=None) -> tuple[bool, list[str]]:
    em: Emptiness = fc.section_T.emptiness
    restrict = Substitution(UNIVERSE, {c: 0 for c in em.restriction})
    eqs = [restrict(f) for f in (equations if equations is not None else section_equations(fc.number))]
    rest = [c for c in fc.section_T.coords if c not in em.restriction]
    return pure_power_elimination(eqs, rest)


def section_failures(number: int, rng: random.Random, draws: int = PROBE_DRAWS,
                     F=None) -> tuple[list[str], int, dict]:
    """All failures for one class, the number of probe points, and a summary."""
    fc = fano_class(number)
    sec = fc.section_T
    bad: list[str] = []
    summary: dict = {"loci": [l.name for l in sec.loci]}
    eqs = substituted(fc, F)
    equations = None if F is None else eqs
    if sec.chart is not None:
        reduced, why = chart_reduction(fc, F)
        bad += why
        summary["chart"] = {"chart": dict(sec.chart.chart), "matches": not why}
    for locus in sec.loci:
        if locus.polynomial:
            for i, r in enumerate(locus_residuals(fc, locus, eqs)):
                if r:
                    bad.append(f"F{i + 1} on {locus.name} leaves {r.to_text()}")
    if sec.emptiness is not None:
        empty, trace = emptiness(fc, eqs)
        summary["emptiness"] = {"restriction": list(sec.emptiness.restriction),
                                "empty": empty, "steps": trace}
        if not empty:
            bad.append("could not certify that T misses {"
                       + " = ".join(sec.emptiness.restriction) + " = 0}")
    probes = 0
    for locus in sec.loci:
        for _ in range(draws):
            bad += probe(fc, locus, rng, equations)
            probes += 1
    return bad, probes, summary

