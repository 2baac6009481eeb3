from fractions import Fraction

import pytest

from grover_period.bethe_spectrum import branching_segments, p_sequence
from grover_period.exact_algebra import RationalPolynomial, zhukovskij_transform
from grover_period.graph_core import (
    BetheSpec,
    bethe_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
)
from grover_period.grover_walk import SizeLimitError
from grover_period.periodicity import (
    APERIODIC,
    B123,
    BS3,
    PATH,
    STAR,
    AgreementOptions,
    classify_bethe,
    enumerate_bethe,
    spectral_period_bethe,
    spectral_period_graph,
    verify_agreement,
)

S = lambda *d: BetheSpec(d)


def is_known_periodic(d):
    """Independent membership test for the periodic families, by construction."""
    n = len(d)
    shapes = set()
    for k in range(1, n + 1):
        ones = (1,) * (k - 1)
        shapes.add((1,) * n)
        for m in range(2, 10):
            shapes.add((m,) + ones)
            shapes.add((1,) * k + (m,) + ones)
        shapes.add((1,) * k + (2,) + ones + (3,) + ones)
        for s in range(2, 10):
            shapes.add((s,) + ones + (3,) + ones)
    return d in shapes


# -- classifier --------------------------------------------------------------

@pytest.mark.parametrize("degrees,family,params,period", [
    ((1, 1, 1), PATH, {"n": 3}, 6),
    ((1, 1, 2, 1, 3, 1), B123, {"k": 2}, 24),
    ((2, 1, 3, 1), BS3, {"k": 2, "s": 2}, 24),
    ((2, 2), APERIODIC, {}, None),
    ((4, 1), STAR, {"k": 2, "l": 5}, 8),
    ((1, 3), STAR, {"k": 1, "l": 5}, 4),
    ((1, 2, 3), B123, {"k": 1}, 12),
    ((3, 3), BS3, {"k": 1, "s": 3}, 12),
])
def test_classifier_examples(degrees, family, params, period):
    c = classify_bethe(BetheSpec(degrees))
    assert (c.family, c.parameters, c.period) == (family, params, period)


def test_overlapping_families_are_noted():
    c = classify_bethe(S(2, 1, 1))
    assert c.family == STAR and c.period == 12
    assert c.also_matches == ("Path(n=6)",)
    assert c.to_json()["also_matches"] == ["Path(n=6)"]


# -- spectral route ----------------------------------------------------------

def test_spectral_examples():
    r = spectral_period_bethe(S(1, 1))
    assert r.period == 4
    z = lambda *c: RationalPolynomial(c, "z")
    assert r.evidence[-1].transform == z(-1, 0, 1) * z(-1, 0, 0, 0, 1)

    r = spectral_period_bethe(S(1, 2, 3))
    assert r.period == 12
    assert r.evidence[1].transform == z(1, 0, -1, 0, 1)

    r = spectral_period_bethe(S(2, 2))
    assert not r.periodic
    assert r.witness.label == "p_2"
    assert r.witness.transform == z(1, 0, Fraction(-2, 3), 0, 1)
    assert r.to_json()["witness"]["not_cyclotomic"] == "non-integer coefficient"


@pytest.mark.parametrize("g,period", [
    (path_graph(2), 2),
    (cycle_graph(3), 3),
    (complete_bipartite_graph(2, 3), 4),
    (complete_bipartite_graph(3, 3), 4),
    (cycle_graph(5), 5),
    (complete_graph(4), None),
    (complete_graph(5), None),
])
def test_graph_route(g, period):
    r = spectral_period_graph(g)
    assert r.period == period
    if period is None:
        assert not r.witness.transform.is_integral()


def test_graph_route_size_limit():
    with pytest.raises(SizeLimitError):
        spectral_period_graph(bethe_graph(S(4, 4, 4))[0])


def test_graph_and_bethe_routes_agree():
    for spec in enumerate_bethe(4, 3, 40):
        g, _ = bethe_graph(spec)
        assert spectral_period_graph(g).period == spectral_period_bethe(spec).period, spec


# -- sweeps over the branching structure -------------------------------------

def test_two_branching_ages_integrality():
    seen = 0
    for spec in enumerate_bethe(6, 4, 200):
        segs, _ = branching_segments(spec)
        if len(segs) != 2:
            continue
        seen += 1
        transform = zhukovskij_transform(p_sequence(spec)[segs[1].age])
        if transform.is_integral():
            assert segs[0].gap == segs[1].gap and segs[0].children == 3, spec
    assert seen > 100


def test_three_branching_ages_are_aperiodic():
    seen = 0
    for spec in enumerate_bethe(6, 3, 200):
        segs, _ = branching_segments(spec)
        if len(segs) < 3:
            continue
        seen += 1
        r = spectral_period_bethe(spec)
        assert not r.periodic, spec
        assert not r.witness.transform.is_integral()
    assert seen > 20


def test_periodic_set_is_exactly_the_families():
    for spec in enumerate_bethe(5, 4, 60):
        spectral = spectral_period_bethe(spec)
        assert spectral.periodic == is_known_periodic(spec.degrees), spec
        assert spectral.period == classify_bethe(spec).period, spec


# -- agreement harness -------------------------------------------------------

@pytest.mark.parametrize("degrees,period", [((1, 1, 2, 1, 3, 1), 24), ((2, 3), 12), ((2, 2), None)])
def test_agreement_examples(degrees, period):
    report = verify_agreement(BetheSpec(degrees))
    assert report.agreement
    assert report.spectral.period == period
    if period is None:
        assert report.bruteforce.status == "none_within_cap"
    else:
        assert report.bruteforce.period == period
    assert report.to_json()["agreement"] is True


def test_agreement_skips_over_budget():
    report = verify_agreement(S(1, 2, 3), AgreementOptions(bruteforce_budget=10))
    assert report.bruteforce.status == "skipped"
    assert report.agreement
    assert any("budget" in n for n in report.notes)


def test_short_cap_is_consistent_with_a_longer_period():
    report = verify_agreement(S(1, 2, 3), AgreementOptions(cap=5))
    assert report.bruteforce.status == "none_within_cap"
    assert report.agreement


def test_enumeration():
    small = [s.degrees for s in enumerate_bethe(2, 2, 5)]
    assert small == [(1,), (1, 1), (1, 2), (2,), (2, 1)]
    assert [s.degrees for s in enumerate_bethe(1, 1, 2)] == [(1,)]
    specs = list(enumerate_bethe(4, 3, 40))
    assert specs == sorted(specs, key=lambda s: s.degrees)
    assert all(s.n <= 4 and max(s.degrees) <= 3 and s.vertex_count <= 40 for s in specs)
    assert len(set(specs)) == len(specs)
    with pytest.raises(ValueError):
        list(enumerate_bethe(0, 1, 1))
