import random

import pytest

from qfano.catalog import CLASS_NUMBERS, build_pi, fano_class
from qfano.catalog.classes import P308, literal_550_loci
from qfano.catalog.universe import poly
from qfano.sections import (chart_reduction, emptiness, locus_residuals, probe,
                            pure_power_elimination, section_failures, substituted)


def test_308_chart_reproduces_the_stored_quartic():
    reduced, bad = chart_reduction(fano_class(308))
    assert bad == []
    assert reduced in (poly(P308), -poly(P308))


@pytest.mark.parametrize("name", ["S1", "S2"])
def test_308_loci_lie_on_t(name):
    fc = fano_class(308)
    locus = next(l for l in fc.section_T.loci if l.name == name)
    assert all(not r for r in locus_residuals(fc, locus))


def test_308_chart_fails_on_perturbed_equations():
    F = list(build_pi().F)
    F[4] = F[4] + poly("L123*u^2")
    _, bad = chart_reduction(fano_class(308), F)
    assert bad


def test_1766_emptiness():
    empty, trace = emptiness(fano_class(1766))
    assert empty
    assert len(trace) == len(fano_class(1766).section_T.coords) - 3


def test_pure_power_elimination_stops_when_stuck():
    x, y = poly("p1"), poly("p2")
    ok, _ = pure_power_elimination([x * y], ["p1", "p2"])
    assert not ok
    ok, trace = pure_power_elimination([x ** 2, y ** 3 + x], ["p1", "p2"])
    assert ok and trace[0].startswith("p1^2")


def test_corrected_550_loci_lie_on_t():
    fc = fano_class(550)
    for locus in fc.section_T.loci:
        if locus.polynomial:
            assert all(not r for r in locus_residuals(fc, locus)), locus.name


@pytest.mark.parametrize("locus", literal_550_loci(), ids=lambda l: l.name)
def test_literal_550_loci_miss_t(locus):
    residuals = locus_residuals(fano_class(550), locus)
    assert any(residuals)


@pytest.mark.parametrize("n", CLASS_NUMBERS)
@pytest.mark.parametrize("seed", [0, 42])
def test_sections_pass(n, seed):
    bad, probes, summary = section_failures(n, random.Random(seed))
    assert bad == []
    assert probes == 20 * len(fano_class(n).section_T.loci)


def test_probe_detects_a_wrong_equation():
    fc = fano_class(872)
    eqs = substituted(fc)
    eqs[0] = eqs[0] + poly("s1")
    assert probe(fc, fc.section_T.loci[0], random.Random(1), eqs)


def test_rational_locus_is_probe_only():
    locus = next(l for l in fano_class(308).section_T.loci if l.name == "s3-chart")
    assert not locus.polynomial
