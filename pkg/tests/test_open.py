from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twotasep import markov
from twotasep import open_boundary as ob
from twotasep.core import RatePolynomial, RateParams
from twotasep.mlq import Mlq, mlq_type
from twotasep.open_boundary import Amlq, InvalidAmlq


@st.composite
def amlqs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    r = draw(st.integers(0, n))
    return draw(st.sampled_from(ob.enumerate_amlqs(n, r)))


def test_amlq_count_size_3_1():
    assert len(ob.enumerate_amlqs(3, 1)) == 14


def test_validity():
    assert ob.validate_amlq(Amlq((0, 0, 0), (1, 0, 1)))
    assert not ob.validate_amlq(Amlq((0, 0, 1), (1, 0, 0)))
    with pytest.raises(InvalidAmlq):
        ob.amlq_drop(Amlq((0, 0, 1), (1, 0, 0)))


def test_prefix_condition_rejects_valid_amlqs():
    # the prefix reading rejects AMLQs whose drops never wrap
    valid = ob.enumerate_amlqs(3, 1)
    assert any(not ob.prefix_condition(a) for a in valid)


def test_embedding():
    assert ob.embed_amlq(Amlq((), ())) == Mlq((0, 0), (1, 1))
    a = Amlq((1, 0, 0, 1), (0, 1, 1, 1))
    m = ob.embed_amlq(a)
    x = ob.amlq_type(a)
    assert mlq_type(m) == (1,) + x + (1,)
    assert ob.unembed_mlq(m) == a


def test_example_weights():
    x = "220012020010202"
    hits = [a for a in ob.amlqs_of_type(x)
            if (lambda s: (s.mv, s.urest, s.ufree, s.lfree))(ob.amlq_stats(a)) == (5, 2, 1, 1)]
    assert hits
    for a in hits:
        assert ob.amlq_weight(a, enhanced=False) == RatePolynomial.monomial(alpha=12, beta=12)
        assert ob.amlq_weight(a) == RatePolynomial.monomial(alpha=12, beta=12, e=-4)


def test_frozen_word():
    for a in ob.enumerate_amlqs(3, 3):
        assert ob.amlq_weight(a) == RatePolynomial.const(1)


def test_convention_oracle():
    assert ob.select_convention(max_n=4, max_r=2, points=2) == {"definition": True, "proof": False}


@given(amlqs(max_n=7))
def test_rat_round_trip(a):
    f = ob.rat_from_amlq(a)
    assert ob.amlq_from_rat(f) == a
    assert ob.rat_stats(f) == ob.amlq_stats(a)
    assert ob.rat_weight(f) == ob.amlq_weight(a)
    assert ob.unembed_mlq(ob.embed_amlq(a)) == a


@pytest.mark.parametrize("n", range(0, 6))
def test_rat_counts(n):
    for r in range(n + 1):
        c = Counter(ob.amlq_type(a) for a in ob.enumerate_amlqs(n, r))
        for x, k in c.items():
            assert len(ob.enumerate_rats(x)) == k
    if n:
        assert len(ob.enumerate_rats((0,) * n)) == 1


@given(amlqs(max_n=6), st.integers(0, 6))
def test_move_changes_type_by_one_transition(a, i):
    i %= a.n + 1
    out = ob.amlq_move(a, i)
    x = ob.amlq_type(a)
    if out is None:
        return
    new, rate = out
    y = ob.amlq_type(new)
    assert ob.validate_amlq(new)
    if i == 0:
        assert rate == "alpha" and x[0] == 0 and y == (2,) + x[1:]
    elif i == a.n:
        assert rate == "beta" and x[-1] == 2 and y == x[:-1] + (0,)
    else:
        assert y[:i - 1] == x[:i - 1] and y[i + 1:] == x[i + 1:]
        assert (y[i - 1], y[i]) == (x[i], x[i - 1])


@pytest.mark.parametrize("n", range(1, 6))
def test_omega_amlq_projects_and_is_stationary(n):
    p = RateParams(alpha=Fraction(2, 3), beta=Fraction(5, 7), d=Fraction(3, 4), e=Fraction(7, 5))
    for r in range(n + 1):
        chain = ob.build_amlq_chain(n, r, p)
        rep = markov.check_projection(chain, markov.build_open_chain(n, r, p), ob.amlq_type)
        assert rep.ok
        pi = markov.stationary_exact(chain)
        w = {a: ob.amlq_weight(a).evaluate(p) for a in chain.states}
        z = sum(w.values())
        assert all(pi[a] == w[a] / z for a in pi)


def test_amlq_sum_matches_solver():
    p = RateParams(alpha=Fraction(1, 2), beta=Fraction(3, 2), d=Fraction(2, 5), e=Fraction(4, 3))
    for n, r in [(4, 1), (5, 2), (3, 0)]:
        pi = markov.stationary_exact(markov.build_open_chain(n, r, p))
        w = ob.amlq_stationary_weights(n, r, p)
        z = sum(w.values())
        assert all(pi[x] == w[x] / z for x in pi)
