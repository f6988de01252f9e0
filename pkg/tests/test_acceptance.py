"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import time

import pytest

from qfano import verifier as V
from qfano.catalog import CLASS_NUMBERS, fano_class
from qfano.graded import WeightBase, degree_data
from qfano.sections import chart_reduction, emptiness, locus_residuals

LINES: list[str] = []
SEED, SAMPLES = 42, 100


@pytest.fixture(scope="module")
def full_ctx():
    return V.default_context(seed=SEED, samples=SAMPLES)


def record(number: int, title: str, ok: bool, elapsed: float, limit: float, note: str = ""):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"ACCEPTANCE {number} {status}: {title} ({elapsed:.2f}s, limit {limit:.0f}s){' ' + note if note else ''}"
    LINES.append(line)
    print(line)
    assert ok, note
    assert within, f"took {elapsed:.2f}s, limit {limit}s"


def run_ids(ids, ctx):
    start = time.perf_counter()
    results = [V.run_check(i, ctx) for i in ids]
    elapsed = time.perf_counter() - start
    bad = [f"{r.id}: {r.witness}" for r in results if not r.passed]
    return results, elapsed, "; ".join(bad)


def test_1_identity_suite(full_ctx):
    ids = ["pi.g_decomposition", "pi.normalization_kernel", "pi.syzygy",
           "pi.block_presentation", "h13.contractions"]
    results, elapsed, bad = run_ids(ids, full_ctx)
    record(1, "identity suite is exactly zero", not bad, elapsed, 5, bad)


def test_2_unprojection(full_ctx):
    results, elapsed, bad = run_ids(["pi.unprojection"], full_ctx)
    record(2, "unprojection identities and divisibility by G", not bad, elapsed, 60, bad)


def test_3_covariance(full_ctx):
    results, elapsed, bad = run_ids(["pi.gl2_covariance", "h13.actions", "h13.hyperdet"], full_ctx)
    record(3, "GL2 and (GL2)^3 x S3 covariance, hyperdeterminant semi-invariance",
           not bad, elapsed, 120, bad)


def test_4_randomized_geometry(full_ctx):
    ids = ["pi.projection_roundtrip", "pi.pfaffian_chart", "pi.singular_locus", "h13.isomorphism"]
    results, elapsed, bad = run_ids(ids, full_ctx)
    short = [r.id for r in results if r.samples_used < SAMPLES]
    if short:
        bad = (bad + "; " if bad else "") + f"fewer than {SAMPLES} samples in {short}"
    record(4, f"randomized geometry at seed {SEED}, {SAMPLES} samples", not bad, elapsed, 600, bad)


def test_5_weights_and_degrees(full_ctx):
    start = time.perf_counter()
    res = V.run_check("graded.homogeneity", full_ctx)
    problems = [] if res.passed else [res.witness]
    if res.details.get("bases") != len(CLASS_NUMBERS) + 2:
        problems.append(f"checked {res.details.get('bases')} bases")
    for n, want in ((308, (51, 47)), (1766, (24, 26))):
        dd = degree_data(WeightBase(*fano_class(n).base))
        if (dd.delta, dd.k) != want:
            problems.append(f"No.{n}: (delta, k) = {(dd.delta, dd.k)}")
    record(5, "quasi-homogeneity, sum(d) = 3 delta, symmetric degrees, (delta, k) values",
           not problems, time.perf_counter() - start, 5, "; ".join(problems))


def test_6_graded_bookkeeping(full_ctx):
    ids = [f"graded.{kind}.{n}" for kind in ("adjunction", "numerator") for n in CLASS_NUMBERS]
    results, elapsed, bad = run_ids(ids, full_ctx)
    record(6, "K_X = O(-1), exact palindromic numerators, codimension 4", not bad, elapsed, 10, bad)


def test_7_sections(full_ctx):
    start = time.perf_counter()
    problems = []
    fc = fano_class(308)
    _, why = chart_reduction(fc)
    problems += why
    for locus in fc.section_T.loci:
        if locus.name in ("S1", "S2") and any(locus_residuals(fc, locus)):
            problems.append(f"308 locus {locus.name} leaves a residual")
    empty, _ = emptiness(fano_class(1766))
    if not empty:
        problems.append("1766 emptiness not certified")
    results, _, bad = run_ids([f"sections.{n}" for n in CLASS_NUMBERS], full_ctx)
    if bad:
        problems.append(bad)
    record(7, "section reductions, loci, emptiness and 20-draw smoothness probes",
           not problems, time.perf_counter() - start, 300, "; ".join(problems))


def test_8_fibers(full_ctx):
    results, elapsed, bad = run_ids(["h13.fibers"], full_ctx)
    labels = sorted(results[0].details.get("equations", {}))
    if labels != ["a", "b", "c", "d", "e"]:
        bad = (bad + "; " if bad else "") + f"fibers compared: {labels}"
    record(8, "fibers over the origin and the four orbit points", not bad, elapsed, 10, bad)


def test_9_fault_injection():
    start = time.perf_counter()
    ctx = V.default_context(seed=SEED, samples=10)
    missed = []
    for m in V.MUTANTS:
        r = V.run_mutant(m, ctx)
        if r.status != "fail" or not r.witness:
            missed.append(f"{m.check_id}: {m.description}")
    symbolic = [c for c, s in V.CHECKS.items() if s.kind == "symbolic"]
    families = {m.check_id.rsplit(".", 1)[0] if m.check_id.startswith("graded.") else m.check_id
                for m in V.MUTANTS}
    uncovered = [c for c in symbolic
                 if (c.rsplit(".", 1)[0] if c.startswith("graded.") else c) not in families]
    detected = len(V.MUTANTS) - len(missed)
    note = f"{detected}/{len(V.MUTANTS)} faults detected"
    if missed:
        note += "; missed " + "; ".join(missed)
    if uncovered:
        note += "; symbolic checks without a fault: " + ", ".join(uncovered)
    record(9, "every injected fault detected with a witness", not missed and not uncovered,
           time.perf_counter() - start, 120, note)
