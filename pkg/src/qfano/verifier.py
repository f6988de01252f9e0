"""The named check suite, its runner and the fault-injection table."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from . import sampler
from .catalog import CLASS_NUMBERS, build_h, build_pi, fano_class, gl2_action, isom_data
from .catalog.actions import DET, PERMUTATIONS, clear_inverse, dinv_degree
from .catalog.h13 import FIBER_COORDS, HSystem
from .catalog.isom import IsomData
from .catalog.pi import G_TRIPLED_COMBINATION, TRIPLES, PiSystem, RationalExpr, literal_m_coords
from .catalog.universe import PI_COORDS, S_VARS, UNIVERSE, L_VARS, poly, var
from .poly import (PolyMatrix, Polynomial, Substitution, determinant, divides, jacobian,
                   pfaffian_values, rank_values, same_span, span_intersection)
from .results import FAIL, SKIPPED, CheckResult, outcome

DEFAULT_SAMPLES = 100
DEFAULT_SEED = 42


@dataclass(frozen=True)
class Context:
    """The objects a check reads; the fault injector swaps one of them."""

    pi: PiSystem
    h: HSystem
    isom: IsomData
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    perturbed: bool = False
    # class records that replace the catalog ones (fault injection only)
    class_overrides: tuple = ()

    def fano(self, number: int):
        for fc in self.class_overrides:
            if fc.number == number:
                return fc
        return fano_class(number)

    def rng(self, check_id: str) -> random.Random:
        return random.Random(sampler.derive_seed(self.seed, check_id))

    def config(self, check_id: str) -> sampler.SampleConfig:
        return sampler.SampleConfig(seed=sampler.derive_seed(self.seed, check_id))


def default_context(seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> Context:
    return Context(build_pi(), build_h(), isom_data(), seed, samples)


def _fmt_point(pt) -> str:
    return "{" + ", ".join(f"{k}={v}" for k, v in pt.items()) + "}"


# -- identities on the 15-fold ----------------------------------------------

def check_g_decomposition(ctx: Context) -> CheckResult:
    pi = ctx.pi
    bad = []
    residual = pi.G - pi.g_from_generators()
    if residual:
        bad.append(f"G minus the generator combination = {residual.to_text()}")
    minors = {t: determinant(pi.submatrix(t)) for t in TRIPLES}
    expect = {"D'136": minors[(1, 3, 6)] + 2 * minors[(1, 4, 5)],
              "D'245": minors[(2, 4, 5)] + 2 * minors[(1, 4, 6)]}
    for name, value in expect.items():
        if pi.chosen_generators[name] != value:
            bad.append(f"{name} differs from its minor combination by "
                       f"{(pi.chosen_generators[name] - value).to_text()}")
    return outcome("pi.g_decomposition", bad)


def check_normalization_kernel(ctx: Context) -> CheckResult:
    pi = ctx.pi
    bad = []
    for t in TRIPLES:
        img = pi.h_sub(determinant(pi.submatrix(t)))
        if img:
            bad.append(f"h(D{''.join(map(str, t))}) = {img.to_text()}")
    img = pi.h_sub(pi.G)
    if img:
        bad.append(f"h(G) = {img.to_text()}")
    return outcome("pi.normalization_kernel", bad, details={"minors": len(TRIPLES)})


def check_syzygy_composition(ctx: Context) -> CheckResult:
    pi = ctx.pi
    w = var("w")
    hm = pi.M.map(pi.h_sub)
    bad = []
    for j in range(6):
        entry = hm[0, j] + w * hm[1, j] + w ** 2 * hm[2, j]
        if entry:
            bad.append(f"column {j + 1}: {entry.to_text()}")
    return outcome("pi.syzygy", bad)


def s_degree_parts(p: Polynomial) -> dict[int, Polynomial]:
    """Split ``p`` by total degree in s1, s2, s3."""
    idx = {UNIVERSE.index[s] for s in S_VARS}
    parts: dict[int, dict] = {}
    for m, c in p.terms.items():
        deg = sum(e for i, e in UNIVERSE.unpack(m) if i in idx)
        parts.setdefault(deg, {})[m] = c
    return {d: Polynomial(UNIVERSE, t) for d, t in parts.items()}


def cramer_numerators(pi: PiSystem, triple) -> tuple[Polynomial, list[Polynomial]]:
    """(D, sigma) with sigma = (H_i, H_j, H_k) adj(M_ijk), so s = sigma / D."""
    sub = pi.submatrix(triple)
    adj = sub.adjugate()
    hs = [pi.H[i - 1] for i in triple]
    sigma = [sum((hs[k] * adj[k, j] for k in range(3)), UNIVERSE.zero()) for j in range(3)]
    return determinant(sub), sigma


def cleared(p: Polynomial, D: Polynomial, sigma, top: int) -> Polynomial:
    """D^top * p with s replaced by sigma / D."""
    sub = Substitution(UNIVERSE, dict(zip(S_VARS, sigma)))
    acc = UNIVERSE.zero()
    for deg, part in s_degree_parts(p).items():
        if deg > top:
            raise ValueError("s-degree exceeds the clearing power")
        acc = acc + sub(part) * D ** (top - deg)
    return acc


def check_unprojection(ctx: Context) -> CheckResult:
    pi = ctx.pi
    D, sigma = cramer_numerators(pi, (1, 2, 3))
    bad = []
    for i in range(3):
        r = cleared(pi.Fprime[i], D, sigma, 1)
        if r:
            bad.append(f"(a) D123*F'{i + 1} = {r.to_text()}")
    for i in range(3, 6):
        r = cleared(pi.Fprime[i], D, sigma, 1)
        if not divides(pi.G, r):
            bad.append(f"(b) D123*F'{i + 1} is not divisible by G")
    for i in range(6, 9):
        r = cleared(pi.F[i], D, sigma, 2)
        if not divides(pi.G, r):
            bad.append(f"(c) D123^2*F{i + 1} is not divisible by G")
    for other in ((2, 4, 6), (1, 3, 5)):
        Dp, sp = cramer_numerators(pi, other)
        for j in range(3):
            r = D * sp[j] - Dp * sigma[j]
            if not divides(pi.G, r):
                bad.append(f"(d) cross identity (1,2,3) vs {other} fails in entry {j + 1}")
    return outcome("pi.unprojection", bad)


def _covariance_failures(sub_apply, transforms, equations, names) -> tuple[list[str], dict]:
    bad, powers = [], {}
    for t in transforms:
        lhs = sub_apply(equations[t.index])
        rhs = t.image(equations)
        m = max(dinv_degree(lhs), dinv_degree(rhs))
        residual = clear_inverse(lhs, m) - clear_inverse(rhs, m)
        powers[names[t.index]] = m
        if residual:
            bad.append(f"{names[t.index]} ({t.rule}): residual {residual.to_text()}")
    return bad, powers


def check_gl2_covariance(ctx: Context) -> CheckResult:
    act = gl2_action("Pi")
    names = [f"F{i + 1}" for i in range(9)]
    bad, powers = _covariance_failures(act.apply, act.transforms, ctx.pi.F, names)
    # the group element g = 1 must act trivially
    ident = Substitution(UNIVERSE, {"a": 1, "b": 0, "c": 0, "d": 1, "dinv": 1})
    for i, f in enumerate(ctx.pi.F):
        if ident(act.apply(f)) != f:
            bad.append(f"identity element moves F{i + 1}")
    return outcome("pi.gl2_covariance", bad, details={"clearing_powers": powers})


def check_block_presentation(ctx: Context) -> CheckResult:
    blk = ctx.pi.blocks
    F = ctx.pi.F
    prod = blk.left @ blk.s_matrix
    vs = (blk.v1, blk.v2, blk.v3)
    expected = ((F[0], F[2], F[4]), (F[1], F[3], F[5]))
    bad = []
    for r in range(2):
        for c in range(3):
            resid = prod[r, c] - vs[c][r] - expected[r][c]
            if resid:
                bad.append(f"entry ({r + 1},{c + 1}): {resid.to_text()}")
    return outcome("pi.block_presentation", bad)


# -- sampled geometry of the 15-fold -------------------------------------------

@lru_cache(maxsize=4)
def _jacobian_of(F: tuple[Polynomial, ...]) -> PolyMatrix:
    return jacobian(F, PI_COORDS)


def jacobian_rank(F, point) -> int:
    return rank_values(_jacobian_of(tuple(F)).evaluate(point))


def skew_matrix(m_values) -> list[list[Fraction]]:
    mat = [[Fraction(0)] * 5 for _ in range(5)]
    for (i, j), val in m_values.items():
        mat[i - 1][j - 1] = val
        mat[j - 1][i - 1] = -val
    return mat


def five_pfaffians(mat) -> list[Fraction]:
    out = []
    for k in range(5):
        keep = [i for i in range(5) if i != k]
        out.append(pfaffian_values([[mat[i][j] for j in keep] for i in keep]))
    return out


def check_pfaffian_chart(ctx: Context) -> CheckResult:
    cid = "pi.pfaffian_chart"
    cfg, rng = ctx.config(cid), ctx.rng(cid)
    bad, used, rejected = [], 0, 0
    m45 = ctx.pi.m_coords[(4, 5)]
    if m45.numerator != poly("-p2*p3 + p1*p4") or m45.denominator != poly("1"):
        bad.append("m45 is not -p2*p3 + p1*p4")
    while used < ctx.samples and rejected < cfg.max_retries:
        pt = sampler.sample_on_pi(cfg, rng=rng)
        if not pt["p2"] * pt["p4"]:
            rejected += 1
            continue
        used += 1
        vals = {ij: e.evaluate(pt) for ij, e in ctx.pi.m_coords.items()}
        pf = five_pfaffians(skew_matrix(vals))
        if any(pf):
            bad.append(f"Pfaffians {[str(x) for x in pf]} at {_fmt_point(pt)}")
    if used < ctx.samples and not bad:
        return CheckResult(cid, SKIPPED, f"only {used} admissible samples", samples_used=used)
    return outcome(cid, bad, used, {"rejected_p2p4_zero": rejected})


def check_singular_locus(ctx: Context) -> CheckResult:
    cid = "pi.singular_locus"
    cfg, rng = ctx.config(cid), ctx.rng(cid)
    F = ctx.pi.F
    bad, used = [], 0
    for _ in range(ctx.samples):
        pt = sampler.sample_on_S(cfg, rng)
        used += 1
        vals = [f.evaluate(pt) for f in F]
        if any(vals):
            bad.append(f"(a) F = {[str(v) for v in vals]} at S-point {_fmt_point(pt)}")
            continue
        r = jacobian_rank(F, pt)
        if r > 3:
            bad.append(f"(a) Jacobian rank {r} > 3 at S-point {_fmt_point(pt)}")
        nz = {f"m{i}{j}": str(e.evaluate(pt)) for (i, j), e in ctx.pi.m_coords.items() if e.evaluate(pt)}
        if nz:
            bad.append(f"(b) nonzero {nz} at S-point {_fmt_point(pt)}")
    for _ in range(ctx.samples):
        pt = sampler.sample_on_pi(cfg, rng=rng)
        used += 1
        r = jacobian_rank(F, pt)
        if r != 4:
            bad.append(f"(c) Jacobian rank {r} != 4 at lifted point {_fmt_point(pt)}")
    for _ in range(ctx.samples):
        pt = {k: Fraction(0) for k in PI_COORDS}
        for k in ("t1", "t2") + L_VARS:
            pt[k] = Fraction(rng.randint(-cfg.coord_bound, cfg.coord_bound))
        used += 1
        vals = [f.evaluate(pt) for f in F]
        if any(vals):
            bad.append(f"(d) F nonzero at {_fmt_point(pt)}")
    return outcome(cid, bad, used)


def check_projection_roundtrip(ctx: Context) -> CheckResult:
    cid = "pi.projection_roundtrip"
    cfg, rng = ctx.config(cid), ctx.rng(cid)
    F = ctx.pi.F
    bad, used, compared = [], 0, 0
    for _ in range(ctx.samples):
        pt = sampler.sample_on_G(cfg, rng=rng)
        used += 1
        try:
            lifted, _ = sampler.lift_any(pt)
        except sampler.NoLift:
            continue
        if sampler.forget(lifted) != pt:
            bad.append(f"forgetting s does not return {_fmt_point(pt)}")
        vals = [f.evaluate(lifted) for f in F]
        if any(vals):
            bad.append(f"lift misses F = 0: {[str(v) for v in vals]} at {_fmt_point(lifted)}")
        try:
            a = sampler.lift_to_pi(pt, (1, 3, 5))
            b = sampler.lift_to_pi(pt, (2, 4, 6))
        except sampler.NoLift:
            continue
        compared += 1
        if a != b:
            bad.append(f"triples (1,3,5) and (2,4,6) disagree at {_fmt_point(pt)}")
    trivial = {k: Fraction(0) for k in PI_COORDS[:16]}
    for k in ("t1", "t2") + L_VARS:
        trivial[k] = Fraction(rng.randint(-cfg.coord_bound, cfg.coord_bound))
    exceptional = all(not ctx.pi.minors[t].evaluate(trivial) for t in TRIPLES)
    try:
        sampler.lift_any(trivial)
        bad.append("a point with every minor zero was lifted")
    except sampler.NoLift:
        pass
    if not exceptional:
        bad.append("the trivial point has a nonzero minor")
    return outcome(cid, bad, used, {"triple_comparisons": compared})


# -- the 13-fold -------------------------------------------------------------

H_NAMES = ("G1a", "G1b", "G2a", "G2b", "G3a", "G3b", "G4", "G5", "G6")


def check_h13_actions(ctx: Context) -> CheckResult:
    eqs = ctx.h.equations
    bad, powers = [], {}
    for target in ("H1", "H2", "H3"):
        act = gl2_action(target)
        b, p = _covariance_failures(act.apply, act.transforms, eqs, H_NAMES)
        bad += [f"{target}: {x}" for x in b]
        powers[target] = p
    for key in PERMUTATIONS:
        act = gl2_action(f"H-perm:{key}")
        moved = [act.apply(e) for e in eqs]
        if not same_span(moved, eqs):
            bad.append(f"permutation {key} does not preserve the equations")
    return outcome("h13.actions", bad, details={"clearing_powers": powers})


def check_contractions(ctx: Context) -> CheckResult:
    bad = []
    for name, (first, second) in sorted(ctx.h.contraction_pairs.items()):
        for r in range(2):
            diff = first[r] - second[r]
            if diff:
                bad.append(f"{name} entry {r + 1}: {diff.to_text()}")
    return outcome("h13.contractions", bad)


def check_hyperdet_invariance(ctx: Context) -> CheckResult:
    H = ctx.h.hyperdet
    bad = []
    for target in ("H1", "H2", "H3"):
        resid = gl2_action(target).apply(H) - DET ** 2 * H
        if resid:
            bad.append(f"{target}: residual {resid.to_text()}")
    for key in PERMUTATIONS:
        resid = gl2_action(f"H-perm:{key}").apply(H) - H
        if resid:
            bad.append(f"permutation {key}: residual {resid.to_text()}")
    return outcome("h13.hyperdet", bad)


def fiber_span(spec) -> list[Polynomial]:
    parts = [c.degree_two_part() for c in spec.components]
    return parts[0] if len(parts) == 1 else span_intersection(parts)


def check_fibers(ctx: Context) -> CheckResult:
    bad = []
    sizes = {}
    for label, spec in sorted(ctx.h.fiber_data.items()):
        sub = Substitution(UNIVERSE, dict(ctx.h.orbit_points[spec.point]))
        specialized = [e for e in (sub(x) for x in ctx.h.equations) if e]
        stray = {v for e in specialized for v in e.variables()} - set(FIBER_COORDS)
        if stray:
            bad.append(f"({label}) specialized equations still involve {sorted(stray)}")
            continue
        expected = fiber_span(spec)
        sizes[label] = len(specialized)
        if not same_span(specialized, expected):
            bad.append(f"({label}) over {spec.point}: spans differ")
    return outcome("h13.fibers", bad, details={"equations": sizes})


def check_isomorphism(ctx: Context) -> CheckResult:
    cid = "h13.isomorphism"
    cfg, rng = ctx.config(cid), ctx.rng(cid)
    eqs = ctx.h.equations
    bad, used = [], 0
    if sampler.admissible(Fraction(1), Fraction(1)):
        bad.append("A = B was accepted")
    for _ in range(ctx.samples):
        src = sampler.sample_h13_source(cfg, rng)
        used += 1
        if not ctx.isom.discriminant.evaluate(src):
            bad.append(f"discriminant vanishes at {_fmt_point(src)}")
            continue
        img = {name: expr.evaluate(src) for name, expr in ctx.isom.fwd.items()}
        vals = {n: e.evaluate(img) for n, e in zip(H_NAMES, eqs)}
        nz = {n: str(v) for n, v in vals.items() if v}
        if nz:
            bad.append(f"image misses {nz} for source {_fmt_point(src)}")
    return outcome(cid, bad, used)


# -- sections and graded data ----------------------------------------------------

def make_section_check(number: int) -> Callable[[Context], CheckResult]:
    def run(ctx: Context) -> CheckResult:
        from .sections import section_failures

        cid = f"sections.{number}"
        F = ctx.pi.F if ctx.perturbed else None
        bad, probes, summary = section_failures(number, ctx.rng(cid), F=F)
        return outcome(cid, bad, probes, summary)

    return run


def check_homogeneity(ctx: Context) -> CheckResult:
    from .graded import certify_homogeneity

    return certify_homogeneity(equations=ctx.pi.F)


def make_adjunction_check(number: int) -> Callable[[Context], CheckResult]:
    def run(ctx: Context) -> CheckResult:
        from .graded import adjunction_check

        return adjunction_check(ctx.fano(number))

    return run


def make_numerator_check(number: int) -> Callable[[Context], CheckResult]:
    def run(ctx: Context) -> CheckResult:
        from .graded import numerator_check

        return numerator_check(ctx.fano(number))

    return run


# -- registry ----------------------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    id: str
    run: Callable[[Context], CheckResult]
    kind: str  # "symbolic" or "sampled"
    group: str
    claim: str


def _registry() -> dict[str, CheckSpec]:
    specs = [
        CheckSpec("pi.g_decomposition", check_g_decomposition, "symbolic", "15-fold identities",
                  "G equals the stored combination of the eight chosen minors"),
        CheckSpec("pi.normalization_kernel", check_normalization_kernel, "symbolic", "15-fold identities",
                  "all twenty 3x3 minors and G vanish under the normalization map h"),
        CheckSpec("pi.syzygy", check_syzygy_composition, "symbolic", "15-fold identities",
                  "(1, w, w^2) h(M) = 0"),
        CheckSpec("pi.unprojection", check_unprojection, "symbolic", "15-fold identities",
                  "Cramer values of s solve F1..F9 modulo G; lifts agree across triples"),
        CheckSpec("pi.gl2_covariance", check_gl2_covariance, "symbolic", "15-fold identities",
                  "F1..F9 transform covariantly under GL2"),
        CheckSpec("pi.block_presentation", check_block_presentation, "symbolic", "15-fold identities",
                  "F1..F6 as block matrix times the symmetric s-matrix minus (v1 v2 v3)"),
        CheckSpec("pi.pfaffian_chart", check_pfaffian_chart, "sampled", "15-fold singularities",
                  "the 4x4 Pfaffians of the skew chart vanish on p2*p4 != 0"),
        CheckSpec("pi.singular_locus", check_singular_locus, "sampled", "15-fold singularities",
                  "rank drop along S, rank 4 at generic points, the L-plane lies on the variety"),
        CheckSpec("pi.projection_roundtrip", check_projection_roundtrip, "sampled", "15-fold singularities",
                  "lift then forget is the identity; lifts are independent of the triple"),
        CheckSpec("h13.actions", check_h13_actions, "symbolic", "13-fold",
                  "each GL2 factor and each permutation maps the equations to the expected combinations"),
        CheckSpec("h13.contractions", check_contractions, "symbolic", "13-fold",
                  "the two matrix forms of each contraction agree"),
        CheckSpec("h13.hyperdet", check_hyperdet_invariance, "symbolic", "13-fold",
                  "the hyperdeterminant is a det^2 semi-invariant fixed by S3"),
        CheckSpec("h13.fibers", check_fibers, "symbolic", "13-fold",
                  "fibers over the orbit representatives span the stored generators"),
        CheckSpec("h13.isomorphism", check_isomorphism, "sampled", "13-fold",
                  "the base-changed 15-fold maps into the 13-fold"),
        CheckSpec("graded.homogeneity", check_homogeneity, "symbolic", "graded data",
                  "F1..F9 are homogeneous of the derived degrees for every weight base"),
    ]
    for n in CLASS_NUMBERS:
        specs.append(CheckSpec(f"sections.{n}", make_section_check(n), "sampled", "threefold sections",
                               f"the section T of class {n}: reductions, loci and smoothness"))
        specs.append(CheckSpec(f"graded.adjunction.{n}", make_adjunction_check(n), "symbolic",
                               "graded data", f"K_X = O(-1) and the canonical degree for class {n}"))
        specs.append(CheckSpec(f"graded.numerator.{n}", make_numerator_check(n), "symbolic",
                               "graded data", f"Hilbert numerator of class {n}: exact, palindromic"))
    return {s.id: s for s in sorted(specs, key=lambda s: s.id)}


CHECKS = _registry()
CHECK_IDS = tuple(CHECKS)


class UnknownCheck(KeyError):
    pass


def resolve(ids: Sequence[str] | None) -> list[str]:
    """Validate requested ids; a trailing ``*`` selects a prefix."""
    if not ids:
        return list(CHECK_IDS)
    out = []
    for raw in ids:
        if raw.endswith("*"):
            hits = [c for c in CHECK_IDS if c.startswith(raw[:-1])]
        else:
            hits = [raw] if raw in CHECKS else []
        if not hits:
            raise UnknownCheck(raw)
        out += [h for h in hits if h not in out]
    return sorted(out)


def run_check(check_id: str, ctx: Context) -> CheckResult:
    spec = CHECKS[check_id]
    start = time.perf_counter()
    try:
        res = spec.run(ctx)
    except Exception as exc:  # a crash is a failed check, never a silent pass
        res = CheckResult(check_id, FAIL, f"{type(exc).__name__}: {exc}")
    return replace(res, id=check_id, elapsed=time.perf_counter() - start)


def _run_in_worker(args) -> CheckResult:
    check_id, seed, samples = args
    return run_check(check_id, default_context(seed, samples))


def run_checks(ids: Sequence[str] | None = None, seed: int = DEFAULT_SEED,
               samples: int = DEFAULT_SAMPLES, parallelism: int = 1) -> list[CheckResult]:
    """Run the selected checks; results come back sorted by id whatever the schedule."""
    chosen = resolve(ids)
    if parallelism <= 1 or len(chosen) == 1:
        ctx = default_context(seed, samples)
        results = [run_check(c, ctx) for c in chosen]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_run_in_worker, [(c, seed, samples) for c in chosen]))
    return sorted(results, key=lambda r: r.id)


# -- fault injection ------------------------------------------------------------

@dataclass(frozen=True)
class Mutant:
    check_id: str
    description: str
    build: Callable[[Context], Context]


def _pi(ctx: Context, **changes) -> Context:
    return replace(ctx, pi=replace(ctx.pi, **changes), perturbed=True)


def _h(ctx: Context, **changes) -> Context:
    return replace(ctx, h=replace(ctx.h, **changes), perturbed=True)


def _with_F(ctx: Context, index: int, extra: str) -> Context:
    F = list(ctx.pi.F)
    F[index] = F[index] + poly(extra)
    t1 = var("t1")
    Fp = (F[0], F[1], F[2], F[3], F[4] + t1 * F[0], F[5] + t1 * F[1])
    return _pi(ctx, F=tuple(F), Fprime=Fp)


def _with_M(ctx: Context, r: int, c: int, extra: str) -> Context:
    rows = ctx.pi.M.tolist()
    rows[r][c] = rows[r][c] + poly(extra)
    return _pi(ctx, M=PolyMatrix(UNIVERSE, rows))


def _with_H(ctx: Context, index: int, extra: str) -> Context:
    H = list(ctx.pi.H)
    H[index] = H[index] + poly(extra)
    return _pi(ctx, H=tuple(H))


def _literal_m(ctx: Context) -> Context:
    coords = {ij: RationalExpr(poly(inner) * scalar, poly(den))
              for ij, (scalar, inner, den) in literal_m_coords().items()}
    return _pi(ctx, m_coords=coords)


def _untraced_v3(ctx: Context) -> Context:
    blk = ctx.pi.blocks
    return _pi(ctx, blocks=replace(blk, v3=blk.v3_untraced))


def _h_quad(ctx: Context, k: int, extra: str) -> Context:
    G_quad = dict(ctx.h.G_quad)
    G_quad[k] = G_quad[k] + poly(extra)
    return _h(ctx, G_quad=G_quad)


def _flip_contraction(ctx: Context) -> Context:
    pairs = dict(ctx.h.contraction_pairs)
    first, second = pairs["c23"]
    pairs["c23"] = (first, (-second[0], second[1]))
    return _h(ctx, contraction_pairs=pairs)


def _fiber_e_term(ctx: Context) -> Context:
    fibers = dict(ctx.h.fiber_data)
    spec = fibers["e"]
    comp = spec.components[0]
    quads = list(comp.quadrics)
    quads[0] = quads[0] + poly("u1*u2")
    fibers["e"] = replace(spec, components=(replace(comp, quadrics=tuple(quads)),))
    return _h(ctx, fiber_data=fibers)


def _flipped_isom(ctx: Context) -> Context:
    fwd = dict(ctx.isom.fwd)
    fwd["u3"] = ctx.isom.u3_flipped
    return replace(ctx, isom=replace(ctx.isom, fwd=fwd), perturbed=True)


def _with_class(ctx: Context, number: int, **changes) -> Context:
    fc = replace(fano_class(number), **changes)
    return replace(ctx, class_overrides=ctx.class_overrides + (fc,), perturbed=True)


def _bump_last(values: tuple[int, ...]) -> tuple[int, ...]:
    return values[:-1] + (values[-1] + 1,)


MUTANTS: tuple[Mutant, ...] = (
    Mutant("pi.g_decomposition", "G plus L123", lambda c: _pi(c, G=c.pi.G + var("L123"))),
    Mutant("pi.g_decomposition", "coefficient 1 replaced by 3 on the primed generators",
           lambda c: _pi(c, G=c.pi.g_from_generators(G_TRIPLED_COMBINATION))),
    Mutant("pi.normalization_kernel", "M[1,1] plus p1", lambda c: _with_M(c, 0, 0, "p1")),
    Mutant("pi.normalization_kernel", "G plus L123*p1", lambda c: _pi(c, G=c.pi.G + poly("L123*p1"))),
    Mutant("pi.syzygy", "M[3,6] plus t1", lambda c: _with_M(c, 2, 5, "t1")),
    Mutant("pi.unprojection", "F9 plus s1*s2", lambda c: _with_F(c, 8, "s1*s2")),
    Mutant("pi.unprojection", "H1 plus p1*p2", lambda c: _with_H(c, 0, "p1*p2")),
    Mutant("pi.gl2_covariance", "F1 plus p1*s2", lambda c: _with_F(c, 0, "p1*s2")),
    Mutant("pi.gl2_covariance", "F7 plus p1*s1", lambda c: _with_F(c, 6, "p1*s1")),
    Mutant("pi.block_presentation", "v3 with untraced blocks", _untraced_v3),
    Mutant("pi.block_presentation", "F4 plus p3*s3", lambda c: _with_F(c, 3, "p3*s3")),
    Mutant("pi.pfaffian_chart", "m13 and m23 in their literal variant", _literal_m),
    Mutant("pi.singular_locus", "F2 plus v*s1", lambda c: _with_F(c, 1, "v*s1")),
    Mutant("pi.projection_roundtrip", "F8 plus s1*s3", lambda c: _with_F(c, 7, "s1*s3")),
    Mutant("h13.actions", "G4 plus u1*x11", lambda c: _h_quad(c, 4, "u1*x11")),
    Mutant("h13.contractions", "sign flip in c23", _flip_contraction),
    Mutant("h13.hyperdet", "extra p111*p122*p211*p222 term",
           lambda c: _h(c, hyperdet=c.h.hyperdet + poly("p111*p122*p211*p222"))),
    Mutant("h13.fibers", "fiber (e) quadric plus u1*u2", _fiber_e_term),
    Mutant("h13.fibers", "G5 plus u2*u3", lambda c: _h_quad(c, 5, "u2*u3")),
    Mutant("h13.isomorphism", "u3 with the opposite overall sign", _flipped_isom),
    Mutant("graded.homogeneity", "F3 plus p1", lambda c: _with_F(c, 2, "p1")),
    Mutant("graded.adjunction.308", "largest cut degree raised by one",
           lambda c: _with_class(c, 308, cuts=_bump_last(tuple(sorted(fano_class(308).cuts))))),
    Mutant("graded.adjunction.1766", "largest cut degree raised by one",
           lambda c: _with_class(c, 1766, cuts=_bump_last(tuple(sorted(fano_class(1766).cuts))))),
    Mutant("graded.numerator.1766", "largest ambient weight raised by one",
           lambda c: _with_class(c, 1766, ambient_PX=_bump_last(fano_class(1766).ambient_PX))),
    Mutant("graded.numerator.308", "one cut degree lowered from 8 to 7",
           lambda c: _with_class(c, 308, cuts=tuple(sorted(fano_class(308).cuts))[:-1] + (7,))),
    Mutant("sections.308", "F5 plus L123*u^2", lambda c: _with_F(c, 4, "L123*u^2")),
    Mutant("sections.1766", "F9 plus L123*s3", lambda c: _with_F(c, 8, "L123*s3")),
)


def run_mutant(m: Mutant, ctx: Context | None = None) -> CheckResult:
    base = ctx or default_context(samples=10)
    return run_check(m.check_id, m.build(base))
