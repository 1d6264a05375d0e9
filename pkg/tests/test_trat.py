import json
from math import comb

import pytest
from hypothesis import given

from twotasep import trat
from twotasep.core import RatePolynomial, as_word, classify, ring_sizes
from twotasep.mlq import drop, enumerate_mlqs, mlq_type, mlq_weight
from twotasep.trat import (NotCompatible, NotFlippable, NotRotated, build_diagram,
                           canonical_tiling, enumerate_fillings, trat_count, trat_weight)

from test_mlq import mlqs


def test_diagram_corners():
    h = build_diagram("120201210")
    assert h.start == (6, 6) and h.end == (0, 0)
    assert build_diagram("12").path and build_diagram("10").end == (0, 0)
    with pytest.raises(NotRotated):
        build_diagram("2101")


def test_canonical_tiling_shape():
    t = canonical_tiling("120201210")
    assert len(t.north) == 3
    assert all(len(s) == 6 for _, s in t.north)
    assert t.counts()["21"] == 9
    t = canonical_tiling("120")
    assert t.counts() == {"20": 1, "10": 1, "21": 1}


@pytest.mark.parametrize("x", ["12020", "120201210", "1102020", "12200120200102"])
def test_tile_counts(x):
    s = classify(x)
    c = canonical_tiling(x).counts()
    assert c == {"20": s.k * s.l, "10": s.r * s.l, "21": s.k * s.r}


def test_filling_counts():
    assert len(enumerate_fillings(canonical_tiling("120201210"))) == 5
    assert len(enumerate_fillings(canonical_tiling("10"))) == 1
    assert len(enumerate_fillings(canonical_tiling("12"))) == 1
    assert len(enumerate_fillings(canonical_tiling("1222"))) == 1
    assert trat_count("2200") == comb(4, 2)


def test_class_weight_2201021():
    x = as_word("1022010")  # rotation of 2201021 starting at a 1
    total = trat.class_trat_weight(x)
    d, e, t = (RatePolynomial.var(v) for v in "det")
    # the ansatz value (d^2+de+te)/(e^2 t^2 d^3) times t^(k+l) d^k e^l
    assert total == t ** 3 * (d ** 2 + d * e + t * e)


def test_base_case_weight():
    for f in enumerate_fillings(canonical_tiling("1022")):
        assert trat_weight(f) == RatePolynomial.monomial(t=3)


@given(mlqs())
def test_mlq_trat_round_trip(m):
    if 1 not in mlq_type(m):
        return
    f = trat.trat_from_mlq(m)
    assert trat.is_valid_filling(f)
    assert trat_weight(f) == mlq_weight(m)
    assert trat.mlq_from_trat(f) == m.rotated(drop(m).shift)
    pp = trat.paths_from_mlq(m)
    assert trat.is_compatible(pp)
    assert trat.trat_from_paths(trat.paths_from_trat(f)) == f


@pytest.mark.parametrize("x", ["12020", "1210", "120120", "120201210", "1102020"])
def test_path_sets_agree(x):
    x = as_word(x)
    from_mlq = {trat.paths_from_mlq(m) for m in enumerate_mlqs(x)}
    from_trat = {trat.paths_from_trat(f) for f in enumerate_fillings(canonical_tiling(x))}
    assert from_mlq == from_trat


@given(mlqs(max_n=7))
def test_json_round_trip(m):
    if 1 not in mlq_type(m):
        return
    f = trat.trat_from_mlq(m)
    assert trat.filling_from_json(json.loads(trat.dumps(f))) == f
    assert trat.ascii_dump(f)


def test_empty_top_row_paths_coincide_on_diagonals():
    from twotasep.mlq import Mlq
    pp = trat.paths_from_mlq(Mlq((0, 0, 0, 0), (1, 0, 1, 0)))
    assert [i for i, c in enumerate(pp.p1) if c == "D"] == [i for i, c in enumerate(pp.p2) if c == "D"]


def test_incompatible_paths_rejected():
    with pytest.raises(NotCompatible):
        trat.trat_from_paths(trat.NestedPaths("DSW", "DDD"))


def test_flip_rejects_non_hexagon():
    t = canonical_tiling("12020")
    tiles = sorted(t.tiles())
    with pytest.raises(NotFlippable):
        trat.flip(t, (tiles[0], tiles[0], tiles[0]))


def test_hexagon_count_small():
    total = 0
    for n in range(1, 7):
        for size in ring_sizes(n, min_r=1):
            from twotasep.core import enumerate_states
            for c in enumerate_states(size)[1]:
                w = c.representative
                x = w[w.index(1):] + w[:w.index(1)]
                total += len(trat.hexagons(canonical_tiling(x)))
    assert total == 53


def test_flip_transport_example():
    x = as_word("120120")
    t = canonical_tiling(x)
    hexes = trat.hexagons(t)
    assert hexes
    h = hexes[0]
    t2 = trat.flip(t, h)
    fs = enumerate_fillings(t)
    imgs = {trat.transport(f, h) for f in fs}
    assert imgs == set(enumerate_fillings(t2))
    assert trat.flip(t2, h) == t


def test_omega_trat_stays_valid():
    for m in enumerate_mlqs("12020"):
        f = trat.trat_from_mlq(m)
        for i in range(5):
            g = trat.omega_trat(f, i)
            assert g is None or trat.is_valid_filling(g)
