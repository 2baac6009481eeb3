import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grover_period import bethe_spectrum as bs
from grover_period.exact_algebra import RationalPolynomial, quotient_ring_reduce
from grover_period.graph_core import BetheSpec, bethe_graph
from grover_period.grover_walk import SizeLimitError

F = Fraction
S = lambda *d: BetheSpec(d)


def x(*coeffs):
    return RationalPolynomial(coeffs, "x")


specs = st.lists(st.integers(1, 4), min_size=1, max_size=5).map(tuple).map(BetheSpec).filter(
    lambda s: s.vertex_count <= 40
)


@pytest.mark.parametrize("spec,D", [
    (S(1, 1), [F(1, 2), F(1, 2)]),
    (S(2, 3, 1), [F(1, 4), F(3, 8), F(1, 2)]),
    (S(3), [F(1)]),
])
def test_hopping_rates(spec, D):
    assert list(bs.hopping_rates(spec).D) == D


@pytest.mark.parametrize("spec,omega", [
    (S(1, 1, 1), ()),
    (S(1, 2, 3), (1, 2)),
    (S(3), (1,)),
])
def test_branching_levels(spec, omega):
    assert bs.branching_levels(spec) == omega


def test_branching_segments():
    segs, top = bs.branching_segments(S(2, 1, 3, 1))
    assert [(s.age, s.gap, s.children) for s in segs] == [(2, 2, 3), (4, 2, 2)]
    assert top == 0
    segs, top = bs.branching_segments(S(1, 1, 2, 1))
    assert [(s.age, s.gap, s.children) for s in segs] == [(2, 2, 2)]
    assert top == 2


def test_g_sequence_example():
    g = bs.g_sequence(S(1, 2, 3))
    assert g[1] == x(0, 1)
    assert g[2] == x(-3, 0, 4)
    assert g[3] == x(0, -11, 0, 12)
    assert g[4] == x(3, 0, -15, 0, 12)


def test_p_sequence_examples():
    p = bs.p_sequence(S(1, 1))
    assert p[2] == x(F(-1, 2), 0, 1)
    assert p[3] == x(0, -1, 0, 1)
    p = bs.p_sequence(S(1, 2, 3))
    assert p[4] == x(F(1, 4), 0, F(-5, 4), 0, 1)
    assert p[4] == bs.g_sequence(S(1, 2, 3))[4].monic()
    assert p[1] == x(0, 1)


def test_p_by_determinant_matches_recurrence():
    for spec in (S(1, 2, 3), S(2, 3, 1), S(4, 1, 2, 2)):
        p = bs.p_sequence(spec)
        assert all(p[i] == bs.p_by_determinant(spec, i) for i in range(spec.n + 2))


def test_p_equals_monic_g_examples():
    assert bs.verify_p_equals_monic_g(S(1, 2, 3))
    assert bs.verify_p_equals_monic_g(S(2, 3, 1))


def test_p_equals_monic_g_random_sweep():
    rng = random.Random(2024)
    for _ in range(200):
        spec = BetheSpec(tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 6))))
        assert bs.verify_p_equals_monic_g(spec), spec


def test_chebyshev_examples():
    assert bs.chebyshev("first", 0) == x(1)
    assert bs.chebyshev("second", 0) == x(1)
    assert bs.chebyshev("second", -1).is_zero()
    assert bs.chebyshev("first", 2) == x(-1, 0, 2)
    assert bs.chebyshev("second", 1) == x(0, 2)
    assert bs.chebyshev("first", 3) == x(0, -3, 0, 4)
    with pytest.raises(ValueError):
        bs.chebyshev("third", 2)
    with pytest.raises(ValueError):
        bs.chebyshev("first", -1)


@pytest.mark.parametrize("i", range(1, 21))
def test_chebyshev_identities(i):
    assert bs.chebyshev_identity_check(i, "first")
    assert bs.chebyshev_identity_check(i, "second")


def test_path_prefix_matches_chebyshev_examples():
    assert bs.p_sequence(S(1, 1, 1))[3] == x(0, F(-3, 4), 0, 1)
    assert bs.claim_path_check(S(1, 1, 1))
    assert bs.claim_path_check(S(1, 1))
    assert bs.first_branching_age(S(3, 1, 1)) == 3
    assert bs.claim_path_check(S(3, 1, 1))
    assert bs.p_sequence(S(3, 1, 1))[2] == bs.chebyshev("first", 2) * F(1, 2)


@settings(max_examples=50, deadline=None)
@given(specs)
def test_path_prefix_matches_chebyshev_everywhere(spec):
    assert bs.claim_path_check(spec)


# -- eigenfunctions ----------------------------------------------------------

def test_star_eigenfunction():
    spec = S(3)
    f = bs.aperp_eigenfunction(spec, 1)
    assert [f.values[v] for v in range(4)] == [x(), x(1), x(-1), x()]
    assert bs.verify_eigenfunction(spec, f)


def test_eigenfunction_supports():
    spec = S(1, 2, 3)
    g, part = bethe_graph(spec)
    for v_star in part.levels[2]:
        f = bs.aperp_eigenfunction(spec, 1, v_star)
        support = {v for v, p in f.values.items() if not p.is_zero()}
        assert support == {f.v1, f.v2}
        assert bs.verify_eigenfunction(spec, f)
    f = bs.aperp_eigenfunction(spec, 2)
    assert f.v_star == part.levels[1][0]
    assert f.values[f.v1] == x(0, 1) and f.values[f.v2] == x(0, -1)
    for leaf in part.children(f.v1):
        assert f.values[leaf] == x(1)
    assert bs.verify_eigenfunction(spec, f)


def test_eigenfunction_uses_the_quotient_ring():
    # at v1 (degree 4, parent carries 0, three leaves carry g_0) the vertex
    # equation 3 g_0 / 4 = x g_1 only holds modulo monic g_2 = x^2 - 3/4
    spec = S(1, 2, 3)
    g = bs.g_sequence(spec)
    residual = g[0] * F(3, 4) - x(0, 1) * g[1]
    assert not residual.is_zero()
    assert quotient_ring_reduce(residual, g[2].monic()).is_zero()


def test_eigenfunction_errors():
    spec = S(1, 2, 3)
    with pytest.raises(ValueError):
        bs.aperp_eigenfunction(spec, 3)
    with pytest.raises(ValueError):
        bs.aperp_eigenfunction(spec, 1, v_star=0)
    with pytest.raises(ValueError):
        bs.aperp_eigenfunction(spec, 2, children=(2, 2))


def test_eigenfunction_rejected_at_wrong_age():
    spec = S(2, 3, 1)
    f = bs.aperp_eigenfunction(spec, 2)
    assert bs.verify_eigenfunction(spec, f)
    assert not bs.verify_eigenfunction(spec, f, i=3)


@settings(max_examples=40, deadline=None)
@given(specs, st.data())
def test_every_eigenfunction_verifies(spec, data):
    _, part = bethe_graph(spec)
    for i in bs.branching_levels(spec):
        v_star = data.draw(st.sampled_from(part.levels[spec.n - i]))
        kids = part.children(v_star)
        pair = data.draw(st.permutations(kids))[:2]
        f = bs.aperp_eigenfunction(spec, i, v_star, tuple(pair))
        assert bs.verify_eigenfunction(spec, f)


@pytest.mark.parametrize("degrees", [(1, 1), (1, 2, 3), (3,), (2, 3, 1), (4, 1, 1, 2)])
def test_quotient_eigenvectors(degrees):
    assert bs.a_eigvec_recurrence_check(BetheSpec(degrees))


def test_quotient_roots():
    from grover_period.grover_walk import real_roots

    assert real_roots(bs.p_sequence(S(1, 1))[3]) == pytest.approx([-1, 0, 1])
    assert real_roots(bs.p_sequence(S(1, 2, 3))[4]) == pytest.approx([-1, -0.5, 0.5, 1])
    assert bs.p_sequence(S(3))[2] == x(-1, 0, 1)


# -- full characteristic polynomial ------------------------------------------

def test_charpoly_factorization_examples():
    spec = S(3)
    assert bs.aperp_multiplicities(spec) == {1: 2}
    assert bs.transition_charpoly(spec) == x(0, 0, -1, 0, 1)
    assert bs.charpoly_factorization_check(spec)
    assert bs.predicted_charpoly(S(1, 1)) == bs.p_sequence(S(1, 1))[3]
    assert bs.charpoly_factorization_check(S(1, 1))
    assert bs.aperp_multiplicities(S(2, 3, 1)) == {2: 4, 3: 1}
    assert bs.charpoly_factorization_check(S(2, 3, 1))


def test_charpoly_size_limit():
    with pytest.raises(SizeLimitError):
        bs.transition_charpoly(S(4, 4, 4))


@settings(max_examples=30, deadline=None)
@given(specs)
def test_dimension_count(spec):
    assert bs.dimension_count_check(spec)
    assert bs.predicted_charpoly(spec).degree == spec.vertex_count
