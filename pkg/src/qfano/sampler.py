"""Seeded exact rational points on {G=0}, the 15-fold, its singular stratum and the 13-fold."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .catalog import build_pi, isom_data
from .catalog.pi import TRIPLES
from .catalog.universe import G_CHART, H_COORDS, PI_COORDS, S_VARS
from .poly import det_values

Point = dict[str, Fraction]

DEFAULT_BOUND = 7
DEFAULT_RETRIES = 1000
# the lift prefers these triples, in order; any nonvanishing minor works
LIFT_ORDER = ((1, 2, 3), (2, 4, 6), (1, 3, 5)) + tuple(
    t for t in TRIPLES if t not in ((1, 2, 3), (2, 4, 6), (1, 3, 5)))


class SamplingError(RuntimeError):
    def __init__(self, what: str, rejections: int):
        super().__init__(f"could not sample {what}: {rejections} draws rejected")
        self.rejections = rejections


class NoLift(ValueError):
    """The chosen minor vanishes at the point."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    coord_bound: int = DEFAULT_BOUND
    max_retries: int = DEFAULT_RETRIES

    def __post_init__(self):
        if self.coord_bound < 0:
            raise ValueError("coordinate bound must be non-negative")
        if self.max_retries < 1:
            raise ValueError("max_retries must be positive")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def derive_seed(master: int, label: str) -> int:
    """Independent 64-bit seed for ``label``; stable across runs and check sets."""
    digest = hashlib.sha256(f"{master}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _draw(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound))


def _draw_nonzero(rng: random.Random, bound: int, retries: int, what: str) -> Fraction:
    for _ in range(retries):
        x = _draw(rng, bound)
        if x:
            return x
    raise SamplingError(what, retries)


# -- {G = 0} and the unprojection lift --------------------------------------

def solve_on_G(point: Mapping[str, Fraction]) -> Point | None:
    """Complete a point missing L246 so that G = 0; None when D246 vanishes."""
    pi = build_pi()
    base = dict(point)
    base["L246"] = Fraction(0)
    d246 = pi.chosen_generators["D246"].evaluate(base)
    if not d246:
        return None
    rest = pi.G.evaluate(base)
    base["L246"] = Fraction(-rest) / d246
    return {k: Fraction(base[k]) for k in G_CHART}


def sample_on_G(cfg: SampleConfig, fixed: Mapping[str, Fraction] | None = None,
                rng: random.Random | None = None) -> Point:
    """Draw the chart coordinates except L246 and solve G = 0 for it."""
    rng = rng or cfg.rng()
    fixed = dict(fixed or {})
    for _ in range(cfg.max_retries):
        draw = {k: (Fraction(fixed[k]) if k in fixed else _draw(rng, cfg.coord_bound))
                for k in G_CHART if k != "L246"}
        pt = solve_on_G(draw)
        if pt is not None:
            return pt
    # every draw met D246 = 0; the zero matrix branch lies on {G = 0} for any L246
    if all(fixed.get(k, 1) == 0 for k in ("p1", "p2", "p3", "p4", "u", "v")) or cfg.coord_bound == 0:
        pt = {k: (Fraction(fixed[k]) if k in fixed else Fraction(0)) for k in G_CHART}
        if not build_pi().G.evaluate(pt):
            return pt
    raise SamplingError("a point on G = 0 with D246 != 0", cfg.max_retries)


def lift_to_pi(point: Mapping[str, Fraction], triple: Sequence[int]) -> Point:
    """Append s1, s2, s3 by Cramer's rule on the columns ``triple`` of M."""
    pi = build_pi()
    if pi.G.evaluate(point):
        raise PreconditionError("G does not vanish at the point")
    triple = tuple(triple)
    cols = [i - 1 for i in triple]
    mat = [[pi.M[r, c].evaluate(point) for c in cols] for r in range(3)]
    den = det_values(mat)
    if not den:
        raise NoLift(f"D{''.join(map(str, triple))} vanishes at the point")
    rhs = [pi.H[c].evaluate(point) for c in cols]
    # s * mat = rhs, so s_j = det(mat with row j replaced by rhs) / det(mat)
    s = []
    for j in range(3):
        rows = [list(r) for r in mat]
        rows[j] = rhs
        s.append(Fraction(det_values(rows)) / den)
    out = {k: Fraction(point[k]) for k in G_CHART}
    out.update(zip(S_VARS, s))
    return out


def lift_any(point: Mapping[str, Fraction]) -> tuple[Point, tuple[int, int, int]]:
    for t in LIFT_ORDER:
        try:
            return lift_to_pi(point, t), t
        except NoLift:
            continue
    raise NoLift("every 3x3 minor vanishes at the point")


def sample_on_pi(cfg: SampleConfig, fixed: Mapping[str, Fraction] | None = None,
                 rng: random.Random | None = None) -> Point:
    rng = rng or cfg.rng()
    for _ in range(cfg.max_retries):
        pt = sample_on_G(cfg, fixed, rng)
        try:
            return lift_any(pt)[0]
        except NoLift:
            continue
    raise SamplingError("a liftable point", cfg.max_retries)


def forget(point: Mapping[str, Fraction]) -> Point:
    return {k: point[k] for k in G_CHART}


# -- the singular stratum ---------------------------------------------------

def s_point(free: Mapping[str, Fraction]) -> Point:
    """Evaluate the stored parameterization of the stratum at free values."""
    pi = build_pi()
    pt = {k: Fraction(v) for k, v in free.items()}
    for name, expr in pi.S_param:
        pt[name] = expr.evaluate(pt)
    return {k: pt[k] for k in PI_COORDS}


def sample_on_S(cfg: SampleConfig, rng: random.Random | None = None) -> Point:
    from .catalog.pi import S_FREE

    rng = rng or cfg.rng()
    free = {}
    for name in S_FREE:
        if name in ("p2", "p4"):
            free[name] = _draw_nonzero(rng, cfg.coord_bound, cfg.max_retries, name + " != 0")
        else:
            free[name] = _draw(rng, cfg.coord_bound)
    return s_point(free)


# -- the 13-fold through the isomorphism --------------------------------------

def admissible(A: Fraction, B: Fraction) -> bool:
    return bool((A - B) * (2 * A + B) * (A + 2 * B))


def sample_h13_source(cfg: SampleConfig, rng: random.Random | None = None) -> Point:
    """A lifted point with t1, t2 on the base covering, carrying A and B."""
    rng = rng or cfg.rng()
    for _ in range(cfg.max_retries):
        A, B = _draw(rng, cfg.coord_bound), _draw(rng, cfg.coord_bound)
        if not admissible(A, B):
            continue
        t1 = -A * A - A * B - B * B
        t2 = -A * B * (A + B)
        try:
            pt = sample_on_pi(cfg, {"t1": t1, "t2": t2}, rng)
        except SamplingError:
            continue
        pt["A"], pt["B"] = A, B
        return pt
    raise SamplingError("an admissible (A, B) point", cfg.max_retries)


def sample_h13(cfg: SampleConfig, rng: random.Random | None = None) -> Point:
    src = sample_h13_source(cfg, rng)
    img = isom_data().image(src)
    return {k: Fraction(img[k]) for k in H_COORDS}


TARGETS = {
    "G": sample_on_G,
    "Pi": sample_on_pi,
    "S": sample_on_S,
    "H13": sample_h13,
}


def sample(target: str, cfg: SampleConfig) -> Point:
    if target not in TARGETS:
        raise KeyError(f"unknown sampling target {target!r}")
    return TARGETS[target](cfg)
