from math import comb

import pytest
from hypothesis import given, strategies as st

from twotasep import mlq
from twotasep.core import RatePolynomial, RateParams, SizeTriple, as_word, classify, rotate
from twotasep.mlq import (InconsistentWeights, InvalidMlq, InvalidWeights, Mlq, drop,
                          enumerate_mlqs, is_x_consistent, mlq_from_weights, mlq_type, mlq_weight)


@st.composite
def mlqs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    bot = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    ones = [i for i, b in enumerate(bot) if b]
    top = [0] * n
    for i in draw(st.lists(st.integers(0, n - 1), max_size=len(ones), unique=True)):
        top[i] = 1
    return Mlq(tuple(top), tuple(bot))


FIG = Mlq.parse("11000110100110|00111010111101")


def test_drop_example():
    res = drop(FIG)
    assert res.type_word == as_word("22001202001020")
    assert res.weights == (1, 1, 0, 0, 2, 0, 1)
    assert sum(res.weights) == len(res.marked_vacancies)


def test_example_weights_are_consistent():
    x = as_word("22001202001020")
    xr = rotate(x, x.index(1))
    # the checker reads weights along the rotated word, starting at its first 1
    assert is_x_consistent(xr, (0, 0, 2, 0, 1, 1, 1))
    assert mlq_from_weights(x, (1, 1, 0, 0, 2, 0, 1)) == FIG


def test_consistency_edge_cases():
    assert not is_x_consistent("120", (2,))
    assert is_x_consistent("120", (1,))
    assert is_x_consistent("1220200", (0, 0, 0))
    with pytest.raises(InvalidWeights):
        is_x_consistent("120", (0, 0))
    with pytest.raises(InvalidWeights):
        is_x_consistent("201", (0,))
    with pytest.raises(InconsistentWeights):
        mlq_from_weights(as_word("120"), (2,))


def test_zero_weights_put_balls_over_zeros():
    x = as_word("1220200")
    m = mlq_from_weights(x, (0, 0, 0))
    for i, c in enumerate(x):
        if c == 0:
            assert m.top[i] == 1 and m.bottom[i] == 1


def test_empty_top_row():
    m = Mlq((0, 0, 0), (1, 0, 1))
    res = drop(m)
    assert res.type_word == (1, 2, 1)
    assert res.weights == () and not res.marked_vacancies
    assert mlq_type(Mlq((0,) * 4, (1,) * 4)) == (1,) * 4


def test_invalid_mlq():
    with pytest.raises(InvalidMlq):
        Mlq((1, 1), (1, 0))
    with pytest.raises(InvalidMlq):
        Mlq.parse("10-01")


def test_mlq_counts():
    assert len(enumerate_mlqs("12020")) == 5
    assert len(enumerate_mlqs("1022")) == 1
    assert len(enumerate_mlqs("2200")) == comb(4, 2)


def test_weighted_example():
    x = "12200120200102"
    target = RatePolynomial.monomial(d=4, e=3, t=4)
    hits = [m for m in enumerate_mlqs(x) if mlq_weight(m) == target]
    assert len(hits) == 4


def test_weight_without_20_pattern():
    for m in enumerate_mlqs("1022"):
        assert mlq_weight(m) == RatePolynomial.monomial(t=3)


def test_mlq_count_equals_consistent_lists():
    for x in ["12020", "120201210", "12200120200102", "1102020"]:
        assert len(enumerate_mlqs(x)) == len(mlq.consistent_lists(as_word(x)))


@given(mlqs())
def test_drop_lift_round_trip(m):
    res = drop(m)
    x = res.type_word
    assert classify(x) == SizeTriple(m.n - sum(m.bottom), sum(m.bottom) - sum(m.top), sum(m.top))
    if 1 not in x:
        return
    xr = rotate(x, res.shift)
    rot_w = [res.weight_of(z) for z in sorted(res.zero_ball_sites, key=lambda z: (z - res.shift) % m.n)]
    assert is_x_consistent(xr, rot_w)
    assert mlq_from_weights(x, res.weights) == m
    assert set(res.unrestricted) <= set(res.zero_ball_sites)


@given(mlqs())
def test_weight_is_degree_k_plus_l(m):
    s = classify(mlq_type(m))
    w = mlq_weight(m)
    assert w.degree() == {s.k + s.l}
    assert w.evaluate(RateParams()) == 1


@given(mlqs(max_n=8), st.integers(0, 7))
def test_omega_moves_type_by_one_jump(m, i):
    i %= m.n
    new = mlq.omega_mlq(m, i)
    kind = mlq.jump_kind(m, i)
    if kind is None:
        assert new == m
        return
    x, y = mlq_type(m), mlq_type(new)
    a, b = (i - 1) % m.n, i
    swapped = list(x)
    swapped[a], swapped[b] = x[b], x[a]
    assert y == tuple(swapped)
    assert kind == {(2, 0): "t", (2, 1): "d", (1, 0): "e"}[(x[a], x[b])]


@pytest.mark.parametrize("n", range(1, 6))
def test_omega_projects_for_every_size(n):
    from twotasep import markov
    from twotasep.core import ring_sizes
    p = RateParams(t=2, d=3, e=5)
    for size in ring_sizes(n):
        chain = mlq.build_mlq_chain(size, p)
        rep = markov.check_projection(chain, markov.build_ring_chain(size, p), mlq_type)
        assert rep.ok, (size, rep.violations[:2])
        if size.r and len(chain.states) > 1:
            pi = markov.stationary_exact(chain)
            w = {m: mlq_weight(m).evaluate(p) for m in chain.states}
            z = sum(w.values())
            assert all(pi[m] == w[m] / z for m in pi)
