from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twotasep import formulas, markov
from twotasep.core import RateParams, as_word, classify
from twotasep.formulas import (InvalidInterval, TraceDiverges, ansatz_open, ansatz_trace_ring,
                               binomial_matrix, det_int, det_weight, lambda_partition)
from twotasep.mlq import class_weight, enumerate_mlqs

rationals = st.fractions(min_value=Fraction(1, 9), max_value=9)


def test_lambda_examples():
    assert lambda_partition("2202002022") == (4, 4, 3, 1, 0, 0)
    assert lambda_partition("000") == ()
    assert lambda_partition("222") == (0, 0, 0)
    with pytest.raises(InvalidInterval):
        lambda_partition("201")


def test_determinants():
    assert binomial_matrix((2, 1)) == [[3, 1], [1, 2]]
    assert det_int(binomial_matrix((2, 1))) == 5
    assert det_int([]) == 1
    assert det_weight("12020") == 5
    assert det_weight("120201210") == 5
    assert det_weight("1120") == 2
    assert det_weight("2200") == 6


@pytest.mark.parametrize("x", ["12020", "120201210", "1102020", "12200120200102", "1222000"])
def test_det_matches_mlq_count(x):
    assert det_weight(x) == len(enumerate_mlqs(x))


def test_ring_trace_examples():
    assert ansatz_trace_ring("12011020") == 4
    d, e, t = Fraction(3), Fraction(5), Fraction(2)
    p = RateParams(t=t, d=d, e=e)
    assert ansatz_trace_ring("2201021", p) == (d * d + d * e + t * e) / (e * e * t * t * d ** 3)
    assert ansatz_trace_ring("111") == 1
    with pytest.raises(TraceDiverges):
        ansatz_trace_ring("2200")


@given(rationals, rationals, rationals)
def test_ring_trace_is_normalised_weight(t, d, e):
    p = RateParams(t=t, d=d, e=e)
    for x in ["12020", "1210", "120120"]:
        s = classify(x)
        assert formulas.ring_normalizer(s, p) * ansatz_trace_ring(x, p) == class_weight(as_word(x)).evaluate(p)


def test_ring_truncation_stable():
    p = RateParams(t=Fraction(2, 3), d=Fraction(5, 4), e=Fraction(1, 7))
    for x in ["12020", "120201210", "2201021"]:
        n = len(x)
        assert ansatz_trace_ring(x, p, n + 2) == ansatz_trace_ring(x, p, n + 5)


@given(rationals, rationals, rationals, rationals, rationals)
def test_open_relations_hold(t, d, e, a, b):
    p = RateParams(t=t, d=d, e=e, alpha=a, beta=b)
    assert formulas.check_open_relations(4, 2, p) == ()


def test_open_matches_solver_small():
    p = RateParams(t=Fraction(3, 2), d=Fraction(2, 3), e=Fraction(5, 4), alpha=Fraction(1, 2),
                   beta=Fraction(7, 3))
    for n, r in [(3, 1), (4, 2), (2, 0)]:
        pi = markov.stationary_exact(markov.build_open_chain(n, r, p))
        z = formulas.open_partition_function(n, r, p)
        for x, q in pi.items():
            assert ansatz_open(x, p) / z == q


def test_frozen_open_word():
    assert ansatz_open("11") / formulas.open_partition_function(2, 2) == 1


def test_uchiyama_numerator_example():
    a, b = Fraction(2, 3), Fraction(5, 7)
    want = a ** 3 * b ** 3 * (2 * a ** 3 * b ** 3 + 2 * a ** 2 * b ** 3 + a * b ** 3)
    assert formulas.uchiyama_numerator("20201210", a, b) == want


def test_displayed_matrices_break_relations():
    D, A, E = formulas.explicit_homogeneous_matrices(Fraction(1, 2), Fraction(1, 3), 8)
    assert formulas.homogeneous_relation_failures(D, A, E) == ["DE=D+E", "DA=A", "AE=A"]


def test_intervals():
    assert formulas.intervals("120201210") == [(2, 0, 2, 0), (2,), (0,)]
    assert formulas.intervals("11") == [(), ()]
    with pytest.raises(InvalidInterval):
        formulas.intervals("2020")


def test_class_weight_r0_rule():
    from twotasep.core import RatePolynomial
    assert class_weight(as_word("2020")) == RatePolynomial.monomial(6, t=4)
