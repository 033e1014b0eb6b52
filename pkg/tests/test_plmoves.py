from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from tropfold.plmoves import (
    ChartError,
    TropLusztigData,
    add,
    apply_move,
    braid_pl,
    collapse,
    expand,
    is_sigma_fixed,
    orbit_blocks,
    relabel,
    s_sum_U,
    sigma_trop_U,
    transport,
)
from tropfold.rootdata import build_root_datum, fold, standard_automorphism
from tropfold.weylwords import BraidMove, available_moves, longest_word, reduced_words, standard_word

A2 = build_root_datum("A2")
A3 = build_root_datum("A3")
F2 = fold(A2, standard_automorphism(A2))
F3 = fold(A3, standard_automorphism(A3))
W3 = standard_word(A3, F3)


def test_short_braid_examples():
    d = TropLusztigData((1, 2, 1), (1, 2, 3))
    assert apply_move(d, BraidMove(0, "braid")) == TropLusztigData((2, 1, 2), (4, 1, 2))
    assert braid_pl(5, 5, 5) == (5, 5, 5)
    c = TropLusztigData((1, 3), (4, 7))
    assert apply_move(c, BraidMove(0, "commutation")) == TropLusztigData((3, 1), (7, 4))
    assert transport(d, (2, 1, 2), A2.cartan).coords == (4, 1, 2)
    assert transport(d, (1, 2, 1), A2.cartan) == d


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_braid_pl_involution(a, b, c):
    assert braid_pl(*braid_pl(a, b, c)) == (a, b, c)


def test_sigma_trop_A2_formula():
    for m1, m2, m3 in [(1, 2, 3), (0, 5, -2), (4, 4, 4)]:
        d = TropLusztigData((1, 2, 1), (m1, m2, m3))
        mn = min(m1, m3)
        assert sigma_trop_U(d, F2.sigma).coords == (m2 + m3 - mn, mn, m1 + m2 - mn)


def test_relabel_commuting_orbit():
    s = standard_automorphism(A3)
    d = TropLusztigData((1, 3), (2, 9))
    assert relabel(d, s) == TropLusztigData((3, 1), (2, 9))


def test_fixed_point_criterion():
    assert is_sigma_fixed(TropLusztigData((1, 2, 1), (3, 3, 3)), F2)
    assert not is_sigma_fixed(TropLusztigData((1, 2, 1), (1, 2, 3)), F2)
    assert orbit_blocks(F3, longest_word(F3.folded)) == [2, 1, 2, 1]
    assert is_sigma_fixed(TropLusztigData(W3, (5, 5, 2, 7, 7, 1)), F3)
    assert not is_sigma_fixed(TropLusztigData(W3, (5, 4, 2, 7, 7, 1)), F3)


def test_collapse_expand():
    d = TropLusztigData(W3, (5, 5, 2, 7, 7, 1))
    e = collapse(d, F3)
    assert e.coords == (5, 2, 7, 1)
    assert expand(e, F3) == d
    assert collapse(TropLusztigData((1, 2, 1), (3, 3, 3)), F2).coords == (3,)
    with pytest.raises(ValueError):
        collapse(TropLusztigData(W3, (5, 4, 2, 7, 7, 1)), F3)


def test_s_sum_examples():
    d = TropLusztigData((1, 2, 1), (1, 2, 3))
    s = 1 + 2 * 2 + 3
    assert s_sum_U(d, F2.sigma).coords == (s, s, s)
    assert s_sum_U(TropLusztigData((1, 2, 1), (2, 2, 2)), F2.sigma).coords == (8, 8, 8)
    fixed = TropLusztigData(W3, (5, 5, 2, 7, 7, 1))
    assert s_sum_U(fixed, F3.sigma).coords == tuple(2 * x for x in fixed.coords)


@given(st.lists(st.integers(-10, 10), min_size=6, max_size=6))
def test_s_sum_is_fixed_A3(coords):
    assert is_sigma_fixed(s_sum_U(TropLusztigData(W3, tuple(coords)), F3.sigma), F3)


@given(st.lists(st.integers(-10, 10), min_size=3, max_size=3))
def test_s_sum_is_fixed_A2(coords):
    assert is_sigma_fixed(s_sum_U(TropLusztigData((1, 2, 1), tuple(coords)), F2.sigma), F2)


@given(st.lists(st.integers(-10, 10), min_size=6, max_size=6))
def test_sigma_order_A3(coords):
    d = TropLusztigData(W3, tuple(coords))
    once = sigma_trop_U(d, F3.sigma)
    assert once.word == W3
    assert sigma_trop_U(once, F3.sigma) == d


def test_add_requires_same_chart():
    with pytest.raises(ChartError):
        add(TropLusztigData((1, 2, 1), (1, 1, 1)), TropLusztigData((2, 1, 2), (1, 1, 1)))
    assert add(TropLusztigData((1, 2, 1), (1, 2, 3)), TropLusztigData((1, 2, 1), (1, 1, 1))).coords == (2, 3, 4)


def test_json_round_trip():
    d = TropLusztigData(W3, (1, -2, 3, 0, 4, 5))
    assert TropLusztigData.from_dict(json.loads(d.to_json())) == d


def _random_path_transport(d, target, cartan, rng, steps):
    """Transport along a random walk in the word graph, finished by the BFS path."""
    for _ in range(steps):
        mv = rng.choice(available_moves(cartan, d.word))
        d = apply_move(d, mv)
    return transport(d, target, cartan)


@pytest.mark.parametrize("datum", [A2, A3], ids=["A2", "A3"])
def test_transport_round_trip_exhaustive(datum):
    rng = random.Random(7)
    words = reduced_words(datum, longest_word(datum))
    for w1 in words:
        for w2 in words:
            coords = tuple(rng.randint(-6, 6) for _ in w1)
            d = TropLusztigData(w1, coords)
            there = transport(d, w2, datum.cartan)
            assert there.word == w2
            assert transport(there, w1, datum.cartan) == d
            assert _random_path_transport(d, w2, datum.cartan, rng, 5) == there
