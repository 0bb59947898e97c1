from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import DENSE, dense_grid, interp
from waybelow.generators import nonzero_pl, random_compact, random_open_pair, random_pl, random_space_1d
from waybelow.plfunc import (
    NotCompactlyContained,
    PLFunction,
    add,
    cuntz_witness_gap,
    cutdown,
    evaluate,
    linear_domination_constant,
    max_over,
    min_const,
    min_over,
    mul,
    open_support,
    pointwise,
    scale,
    superlevel,
    urysohn,
)
from waybelow.region import PreconditionError, Region, compactly_contained, difference, is_compact, is_subset, relative_closure, union

K = Region.interval(0, 2)
B = PLFunction.tent(1, 1, 1, K)
A = PLFunction.tent(1, F(1, 4), 1, K)


def op(lo, hi):
    return Region.interval(F(lo), F(hi), True, True)


def on_dense(f):
    """Pairs (x, f(x)) on the 1/1024 grid of every component, by hand interpolation."""
    out = []
    for lo, hi in f.components:
        for x in dense_grid(lo, hi):
            out.append((x, interp(list(f.bp), list(f.val), x)))
    return out


def test_eval_examples():
    assert evaluate(B, 1) == 1
    assert evaluate(B, F(1, 2)) == F(1, 2)
    with pytest.raises(ValueError):
        evaluate(B, 3)


def test_construction_checks():
    with pytest.raises(ValueError):
        PLFunction(K, (F(0), F(2)), (F(0), F(-1)))  # negative
    with pytest.raises(ValueError):
        PLFunction(K, (F(0), F(1)), (F(0), F(1)))  # missing component end
    with pytest.raises(ValueError):
        PLFunction(Region.interval(0, 1, True, True), (F(0), F(1)), (F(0), F(0)))  # non-compact space


def test_canonical_breakpoints():
    f = PLFunction(K, (F(0), F(1, 2), F(1), F(2)), (F(0), F(1, 2), F(1), F(0)))
    assert f == B
    assert PLFunction.from_json(B.to_json()) == B


def test_cutdown_examples():
    c = cutdown(B, F(1, 2))
    assert c == PLFunction(K, (F(0), F(1, 2), F(1), F(3, 2), F(2)), (F(0), F(0), F(1, 2), F(0), F(0)))
    assert open_support(c) == op(F(1, 2), F(3, 2))
    assert cutdown(B, 1).is_zero and cutdown(B, 5).is_zero
    assert cutdown(PLFunction.zero(K), F(1, 3)).is_zero
    with pytest.raises(PreconditionError):
        cutdown(B, 0)


def test_cutdown_matches_dense_oracle():
    c = cutdown(B, F(1, 2))
    for x, v in on_dense(B):
        assert evaluate(c, x) == max(v - F(1, 2), F(0))


def test_superlevel_examples():
    assert superlevel(B, F(1, 2)) == op(F(1, 2), F(3, 2))
    assert superlevel(B, 0) == op(0, 2)
    assert superlevel(B, F(3, 8)) == op(F(3, 8), F(13, 8))
    assert superlevel(B, 1).is_empty
    with pytest.raises(PreconditionError):
        superlevel(B, -1)


def test_superlevel_matches_dense_oracle():
    s = superlevel(B, F(1, 2))
    for x, v in on_dense(B):
        assert s.contains_point(x) == (v > F(1, 2))


def test_open_support_examples():
    assert open_support(B) == op(0, 2)
    assert open_support(PLFunction.zero(K)).is_empty
    k2 = union(Region.interval(0, 1), Region.interval(2, 3))
    f = PLFunction(k2, (F(0), F(1), F(2), F(3)), (F(0), F(0), F(1), F(1)))
    assert open_support(f) == Region.interval(2, 3)


def test_isolated_point_component():
    k = union(Region.interval(0, 1), Region.interval(2, 2))
    f = PLFunction(k, (F(0), F(1), F(2)), (F(0), F(1), F(3)))
    assert evaluate(f, 2) == 3
    assert open_support(f) == union(Region.interval(0, 1, True, False), Region.interval(2, 2))


def test_min_over_examples():
    assert min_over(B, Region.interval(F(3, 4), F(5, 4))) == F(3, 4)
    assert min_over(B, K) == 0
    assert min_over(PLFunction.constant(K, 2), Region.interval(F(1, 3), F(1, 2))) == 2
    assert max_over(B, Region.interval(0, F(1, 2))) == F(1, 2)
    with pytest.raises(PreconditionError):
        min_over(B, op(0, 1))


def test_pointwise_examples():
    assert add(B, B) == PLFunction.tent(1, 1, 2, K)
    assert scale(B, F(1, 2)) == PLFunction.tent(1, 1, F(1, 2), K)
    plateau = min_const(B, F(1, 2))
    assert plateau == PLFunction(K, (F(0), F(1, 2), F(3, 2), F(2)), (F(0), F(1, 2), F(1, 2), F(0)))
    assert pointwise("scale", B, 3) == scale(B, 3)
    assert mul(B, PLFunction.constant(K, 2)) == scale(B, 2)
    with pytest.raises(ValueError):
        mul(B, B)


def test_urysohn_example():
    e = urysohn(op(F(3, 4), F(5, 4)), op(0, 2), K)
    # delta = 3/4, so the ramps have width 3/8
    assert e == PLFunction(
        K,
        (F(0), F(3, 8), F(3, 4), F(5, 4), F(13, 8), F(2)),
        (F(0), F(0), F(1), F(1), F(0), F(0)),
    )
    k01 = Region.interval(0, 1)
    assert urysohn(k01, k01, k01) == PLFunction.constant(k01, 1)
    with pytest.raises(NotCompactlyContained):
        urysohn(op(0, 1), op(0, 1), k01)


def _urysohn_postconditions(e, u, v, k):
    cl = relative_closure(u, k)
    assert cl.is_empty or min_over(e, cl) == 1
    assert max(e.val) <= 1
    scl = relative_closure(open_support(e), k)
    assert is_compact(scl) and is_subset(scl, v)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_urysohn_postconditions_random(seed):
    rng = random.Random(seed)
    k = random_compact(rng, 1)
    u, v = random_open_pair(rng, k)
    if compactly_contained(u, v, k):
        e = urysohn(u, v, k)
        _urysohn_postconditions(e, u, v, k)
        # dense oracle: 0 <= e <= 1 everywhere and e = 1 on U
        for x, val in on_dense(e)[::8]:
            assert 0 <= val <= 1
            if u.contains_point(x):
                assert val == 1
    else:
        with pytest.raises(NotCompactlyContained):
            urysohn(u, v, k)


def test_linear_domination_constant_examples():
    # a/b peaks at the shared peak x = 1, where both equal 1
    assert linear_domination_constant(A, B) == 1
    assert linear_domination_constant(B, B) == 1
    assert linear_domination_constant(scale(B, 3), B) == 3
    with pytest.raises(PreconditionError):
        linear_domination_constant(B, A)


def test_linear_domination_constant_dense_oracle():
    ratios = [interp(list(A.bp), list(A.val), x) / v for x, v in on_dense(B) if v > 0]
    assert max(ratios) == linear_domination_constant(A, B)


def test_witness_gap_examples():
    assert cuntz_witness_gap(B, B, 2) == F(1, 8)
    # [3/4,5/4] stays above 1/n once n >= 4/3
    assert cuntz_witness_gap(A, B, 2) == 0
    assert cuntz_witness_gap(PLFunction.zero(K), B, 3) == 0
    with pytest.raises(PreconditionError):
        cuntz_witness_gap(B, B, 0)


def _dense_gap(a, b, n):
    best = F(0)
    for x, bv in on_dense(b):
        av = interp(list(a.bp), list(a.val), x)
        best = max(best, av * max(F(0), 1 - n * bv))
    return best


@pytest.mark.parametrize("n", [1, 2, 3, 8])
def test_witness_gap_dense_oracle(n):
    exact = cuntz_witness_gap(B, B, n)
    dense = _dense_gap(B, B, n)
    assert dense <= exact <= dense + 2 * n * DENSE
    assert exact == F(1, 4 * n)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_witness_gap_bounds_random(seed):
    rng = random.Random(seed)
    k = random_space_1d(rng)
    b = nonzero_pl(rng, k)
    a = scale(cutdown(b, b.sup * F(rng.randint(1, 7), 8)) if rng.random() < 0.5 else b, F(rng.randint(1, 8), 4))
    c = linear_domination_constant(a, b)
    prev = None
    for n in (1, 2, 4, 8, 16, 32):
        g = cuntz_witness_gap(a, b, n)
        assert g <= c / n
        assert prev is None or g <= prev
        prev = g


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 15))
def test_cutdown_support_is_superlevel(seed, k):
    rng = random.Random(seed)
    f = random_pl(rng, random_space_1d(rng))
    eps = F(k, 8)
    assert open_support(cutdown(f, eps)) == superlevel(f, eps)
    assert is_subset(superlevel(f, eps + F(1, 8)), superlevel(f, eps))
    s = superlevel(f, eps)
    for x in set(f.bp) | {(p + q) / 2 for p, q in zip(f.bp, f.bp[1:])}:
        if f.space.contains_point(x):
            assert s.contains_point(x) == (evaluate(f, x) > eps)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_properness_criterion_for_sums(seed):
    rng = random.Random(seed)
    k = random_space_1d(rng)
    gens = [random_pl(rng, k) for _ in range(rng.randint(1, 3))]
    total = add(*gens)
    common_zero = k
    for g in gens:
        common_zero = difference(common_zero, open_support(g))
    assert common_zero.is_empty == (min_over(total, k) > 0)
