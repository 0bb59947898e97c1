import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from waybelow.order import (
    FinitePoset,
    all_posets,
    compact_elements,
    random_poset,
    sup,
    way_below_directed,
    way_below_literal,
)

D = FinitePoset.diamond()
BOT, LEFT, RIGHT, TOP = range(4)


def brute_way_below(p, x, y, directed):
    """Straight from the definition, with tuples instead of bitmasks."""
    n = p.n
    for r in range(1, n + 1):
        for s in itertools.combinations(range(n), r):
            if directed and not all(any(p.leq[a][c] and p.leq[b][c] for c in s) for a in s for b in s):
                continue
            ubs = [u for u in range(n) if all(p.leq[a][u] for a in s)]
            least = [u for u in ubs if all(p.leq[u][v] for v in ubs)]
            if least and p.leq[y][least[0]] and not any(p.leq[x][a] for a in s):
                return False
    return True


def test_sup_examples():
    c = FinitePoset.chain(3)
    assert sup(c, {0, 1}) == 1
    assert sup(D, {LEFT, RIGHT}) == TOP
    anti = FinitePoset.from_relation(2, [])
    assert sup(anti, {0, 1}) is None
    with pytest.raises(ValueError):
        sup(c, set())


def test_literal_examples():
    assert way_below_literal(FinitePoset.chain(3), 1, 2)
    assert not way_below_literal(D, TOP, TOP)
    assert all(way_below_literal(D, BOT, y) for y in range(4))


def test_directed_examples():
    assert way_below_directed(D, TOP, TOP)
    assert not way_below_directed(D, LEFT, RIGHT)
    assert not way_below_literal(D, LEFT, RIGHT)


def test_compact_elements_examples():
    assert compact_elements(D) == {0, 1, 2, 3}
    assert compact_elements(D, "literal") == {BOT, LEFT, RIGHT}
    assert compact_elements(FinitePoset.chain(1)) == {0}


def test_validation():
    with pytest.raises(ValueError):
        FinitePoset([[True, True], [True, True]])
    with pytest.raises(ValueError):
        FinitePoset([[True, False], [False, False]])
    with pytest.raises(ValueError):
        FinitePoset([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(ValueError):
        FinitePoset.from_relation(2, [(0, 1), (1, 0)])
    with pytest.raises(IndexError):
        way_below_literal(D, 0, 9)


def test_json_round_trip():
    assert FinitePoset.from_json(D.to_json()) == D


def test_enumeration_counts():
    # naturally labelled posets: 1, 2, 7, 40, 357
    assert [sum(1 for _ in all_posets(n)) for n in range(1, 6)] == [1, 2, 7, 40, 357]


def test_exhaustive_sweep_against_brute_force():
    for n in range(1, 5):
        for p in all_posets(n):
            for x, y in itertools.product(range(n), repeat=2):
                lit, dirs = way_below_literal(p, x, y), way_below_directed(p, x, y)
                assert lit == brute_way_below(p, x, y, False)
                assert dirs == brute_way_below(p, x, y, True)
                assert dirs == p.leq[x][y]
                assert not lit or dirs


def test_seeded_posets_up_to_seven():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 7)
        p = random_poset(rng, n)
        for x, y in itertools.product(range(n), repeat=2):
            assert way_below_directed(p, x, y) == p.leq[x][y]
            if way_below_literal(p, x, y):
                assert p.leq[x][y]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_monotonicity(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    p = random_poset(rng, n)
    for x, y, x2, y2 in itertools.product(range(n), repeat=4):
        if p.leq[x2][x] and p.leq[y][y2]:
            for wb in (way_below_literal, way_below_directed):
                if wb(p, x, y):
                    assert wb(p, x2, y2)
