from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twotasep import markov
from twotasep.core import InvalidParams, RateParams, SizeTriple, cyclic_class
from twotasep.markov import (NotIrreducible, build_open_chain, build_ring_chain, check_projection,
                             make_chain, ring_stationary, stationary_exact)

rationals = st.fractions(min_value=Fraction(1, 20), max_value=20)


@given(rationals, rationals)
def test_two_state_chain(a, b):
    pi = stationary_exact(make_chain("xy", [("x", "y", a), ("y", "x", b)]))
    assert pi == {"x": b / (a + b), "y": a / (a + b)}


def test_reducible_chain_rejected():
    chain = make_chain("xyz", [("x", "y", 1), ("y", "x", 1), ("z", "x", 1)])
    with pytest.raises(NotIrreducible):
        stationary_exact(chain)


def test_nonpositive_rate_rejected():
    with pytest.raises(InvalidParams):
        make_chain("xy", [("x", "y", 0)])
    with pytest.raises(InvalidParams):
        build_open_chain(2, 3, RateParams())


def test_ring_chain_12020():
    size = SizeTriple(2, 1, 2)
    chain = build_ring_chain(size)
    assert len(chain.states) == 30
    pi = stationary_exact(chain)
    c = cyclic_class("12020")
    assert c.order * pi[c.representative] == Fraction(1, 4)


def test_out_degree_counts_corner_pairs():
    chain = build_ring_chain(SizeTriple(2, 1, 2))
    out = {}
    for a, _, _ in chain.transitions:
        out[a] = out.get(a, 0) + 1
    for w in chain.states:
        pairs = sum(1 for i in range(5) if w[i] > w[(i + 1) % 5])
        assert out.get(w, 0) == pairs


def test_fewer_species_is_uniform():
    pi = stationary_exact(build_ring_chain(SizeTriple(2, 0, 2)))
    assert set(pi.values()) == {Fraction(1, 6)}


def test_generic_small_ring_irreducible():
    p = RateParams(t=Fraction(2, 3), d=Fraction(5, 7), e=Fraction(3, 11))
    chain = build_ring_chain(SizeTriple(1, 1, 1), p)
    assert len(chain.states) == 6
    markov.check_irreducible(chain)


def test_open_small_cases():
    assert len(build_open_chain(3, 1).states) == 12
    assert stationary_exact(build_open_chain(2, 2)) == {(1, 1): 1}


@pytest.mark.parametrize("size", [SizeTriple(2, 1, 2), SizeTriple(2, 2, 2), SizeTriple(3, 2, 1)])
def test_lumped_solver_matches_full(size):
    p = RateParams(t=Fraction(3, 2), d=Fraction(2, 5), e=Fraction(7, 3))
    assert ring_stationary(size, p, "words") == ring_stationary(size, p, "classes")


def test_identity_projection():
    chain = build_ring_chain(SizeTriple(1, 1, 2))
    assert check_projection(chain, chain, lambda s: s).ok


def test_corrupted_rate_reports_one_violation():
    coarse = build_ring_chain(SizeTriple(2, 1, 2))
    a, b, q = coarse.transitions[0]
    fine = make_chain(coarse.states, [(a, b, q * 2)] + list(coarse.transitions[1:]))
    rep = check_projection(fine, coarse, lambda s: s)
    assert not rep.ok
    assert len(rep.violations) == 1


def test_non_surjective_projection():
    chain = build_ring_chain(SizeTriple(1, 1, 1))
    with pytest.raises(markov.InvalidProjectionMap):
        check_projection(chain, chain, lambda s: chain.states[0])
