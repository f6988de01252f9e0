from dataclasses import replace

import pytest

from qfano import verifier as V
from qfano.catalog import gl2_action
from qfano.catalog.actions import DET, PERMUTATIONS, clear_inverse, dinv_degree
from qfano.catalog.universe import UNIVERSE, poly
from qfano.poly import Substitution, divides
from qfano.results import FAIL, PASS, CheckResult, outcome


def test_registry_is_sorted_and_complete():
    assert list(V.CHECK_IDS) == sorted(V.CHECK_IDS)
    assert len(V.CHECK_IDS) == 15 + 3 * 8
    for cid, spec in V.CHECKS.items():
        assert spec.kind in ("symbolic", "sampled")
        assert spec.claim


@pytest.mark.parametrize("cid", V.CHECK_IDS)
def test_every_check_passes_on_the_catalog(cid, ctx):
    res = V.run_check(cid, ctx)
    assert res.status == PASS, res.witness
    assert res.id == cid


@pytest.mark.parametrize("mutant", V.MUTANTS, ids=lambda m: f"{m.check_id}:{m.description}")
def test_every_injected_fault_is_detected(mutant, ctx):
    res = V.run_mutant(mutant, ctx)
    assert res.status == FAIL
    assert res.witness


def test_every_symbolic_check_has_a_mutant():
    symbolic = {c for c, s in V.CHECKS.items() if s.kind == "symbolic"}
    covered = {m.check_id for m in V.MUTANTS}
    families = {c.rsplit(".", 1)[0] for c in symbolic if c.startswith("graded.")}
    # per-class graded checks share code; one class per family is enough
    for c in symbolic:
        family = c.rsplit(".", 1)[0]
        assert c in covered or (family in families and any(m.startswith(family) for m in covered)), c


def test_g_plus_l123_witness_is_l123(ctx):
    res = V.run_mutant(V.MUTANTS[0], ctx)
    assert "= L123" in res.witness


def test_resolve():
    assert V.resolve(None) == list(V.CHECK_IDS)
    assert V.resolve(["pi.g_decomposition"]) == ["pi.g_decomposition"]
    assert V.resolve(["sections.*"]) == [c for c in V.CHECK_IDS if c.startswith("sections.")]
    with pytest.raises(V.UnknownCheck):
        V.resolve(["nope"])


def test_results_are_sorted_by_id():
    ids = ["pi.syzygy", "h13.contractions", "graded.homogeneity"]
    got = [r.id for r in V.run_checks(ids, samples=3)]
    assert got == sorted(ids)


def test_per_check_seed_does_not_depend_on_the_selection():
    alone = V.run_checks(["pi.pfaffian_chart"], seed=9, samples=5)[0]
    together = {r.id: r for r in V.run_checks(["pi.pfaffian_chart", "pi.singular_locus"], seed=9,
                                              samples=5)}
    assert alone.to_dict() == together["pi.pfaffian_chart"].to_dict()


def test_parallel_schedule_gives_the_same_results():
    ids = ["pi.pfaffian_chart", "h13.isomorphism", "sections.1766", "pi.syzygy"]
    serial = [r.to_dict() for r in V.run_checks(ids, seed=3, samples=4)]
    parallel = [r.to_dict() for r in V.run_checks(ids, seed=3, samples=4, parallelism=3)]
    assert serial == parallel


def test_a_crashing_check_is_a_failure(ctx, monkeypatch):
    def boom(_):
        raise RuntimeError("broken")

    monkeypatch.setitem(V.CHECKS, "pi.syzygy", replace(V.CHECKS["pi.syzygy"], run=boom))
    res = V.run_check("pi.syzygy", ctx)
    assert res.status == FAIL and "broken" in res.witness


def test_result_record_contract():
    with pytest.raises(ValueError):
        CheckResult("x.y", FAIL)
    with pytest.raises(ValueError):
        CheckResult("x.y", "maybe")
    assert outcome("x.y", []).passed
    many = outcome("x.y", [str(i) for i in range(8)])
    assert many.witness.endswith("(+3 more)")
    assert "elapsed" not in many.to_dict() and "elapsed" in many.to_dict(timing=True)


# -- pieces of the individual checks ---------------------------------------------------

def test_unprojection_pieces(pi):
    D, sigma = V.cramer_numerators(pi, (1, 2, 3))
    assert D == pi.minor((1, 2, 3))
    assert not V.cleared(pi.Fprime[0], D, sigma, 1)
    assert divides(pi.G, V.cleared(pi.F[8], D, sigma, 2))


def test_clearing_power_must_cover_s_degree(pi):
    D, sigma = V.cramer_numerators(pi, (1, 2, 3))
    with pytest.raises(ValueError):
        V.cleared(pi.F[8], D, sigma, 1)


def _specialize(p, **vals):
    return Substitution(UNIVERSE, vals)(p)


def test_identity_element_fixes_every_equation(pi):
    act = gl2_action("Pi")
    for f in pi.F:
        assert _specialize(act.apply(f), a=1, b=0, c=0, d=1, dinv=1) == f


def test_diagonal_element_scales_f7_by_a_squared(pi):
    act = gl2_action("Pi")
    img = act.apply(pi.F[6])
    m = dinv_degree(img)
    cleared = _specialize(clear_inverse(img, m), b=0, c=0, d=1)
    assert cleared == poly("a") ** (m + 2) * pi.F[6]


def test_full_symbolic_action_on_f1(pi):
    act = gl2_action("Pi")
    t = act.transforms[0]
    lhs = act.apply(pi.F[0])
    m = dinv_degree(lhs)
    assert clear_inverse(lhs, m) == clear_inverse(t.image(pi.F), m)


def test_h_factor_one_on_g4(h):
    act = gl2_action("H1")
    assert act.apply(h.G_quad[4]) == DET * h.G_quad[4]


def test_transposition_fixes_g4_as_a_set(h):
    act = gl2_action("H-perm:(12)")
    assert act.apply(h.G_quad[4]) in (h.G_quad[4], -h.G_quad[4])


def test_hyperdet_unchanged_by_a_shear(h):
    img = gl2_action("H1").apply(h.hyperdet)
    assert _specialize(img, a=1, b=1, c=0, d=1) == h.hyperdet
    assert gl2_action("H-perm:(12)").apply(h.hyperdet) == h.hyperdet
    assert set(PERMUTATIONS) == {"id", "(12)", "(13)", "(23)", "(123)", "(132)"}


def test_block_entries(pi):
    blk = pi.blocks
    prod = blk.left @ blk.s_matrix
    assert prod[0, 0] - blk.v1[0] == pi.F[0]
    assert prod[1, 2] - blk.v3[1] == pi.F[5]


def test_five_pfaffians_of_a_rank_two_matrix():
    from fractions import Fraction
    a = [Fraction(x) for x in (1, 2, 3, 4, 5)]
    b = [Fraction(x) for x in (0, 1, -1, 2, 7)]
    m = {(i + 1, j + 1): a[i] * b[j] - a[j] * b[i] for i in range(5) for j in range(i + 1, 5)}
    assert V.five_pfaffians(V.skew_matrix(m)) == [0] * 5


def test_pfaffian_rejection_is_counted(ctx):
    res = V.run_check("pi.pfaffian_chart", ctx)
    assert "rejected_p2p4_zero" in res.details
    assert res.samples_used == ctx.samples


def test_trivial_point_is_exceptional(ctx):
    res = V.run_check("pi.projection_roundtrip", ctx)
    assert res.passed
