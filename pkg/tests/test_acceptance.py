"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import numpy as np

from acceptance_log import report
from oracles import dense_values, probes, random_raw
from waybelow.campaigns import run_campaign
from waybelow.cuntz import PositiveElement, gp_constant, way_below_epsilon
from waybelow.order import FinitePoset, all_posets, random_poset, way_below_directed, way_below_literal
from waybelow.plfunc import PLFunction, cuntz_witness_gap, linear_domination_constant, open_support, superlevel
from waybelow.region import (
    Region,
    closure,
    compactly_contained,
    complement,
    difference,
    interior,
    intersect,
    is_subset,
    union,
)

F = Fraction


def test_criterion_01_prop32_campaign():
    start = time.perf_counter()
    rep = run_campaign("prop32", 500, 7)
    elapsed = time.perf_counter() - start
    ok = rep.passed == 500 and rep.failed == 0 and elapsed < 30
    report(1, "prop32 product containment, 500 instances, seed 7", ok, f"{rep.passed}/500 in {elapsed:.1f}s, limit 30s")
    assert ok, rep.first_counterexample


def test_criterion_02_decider_agreement():
    rep = run_campaign("agreement", 500, 3)
    touching = rep.stats["adversarial_touching"]
    ok = rep.failed == 0 and touching >= 50
    report(2, "three way-below deciders agree, 500 pairs", ok, f"{rep.passed}/500 agree, {touching} adversarial touching pairs (need 50)")
    assert ok, rep.first_counterexample


def test_criterion_03_epsilon_chain_campaign():
    start = time.perf_counter()
    rep = run_campaign("thm42", 200, 1)
    elapsed = time.perf_counter() - start
    eps_exact = all(F(r["eps"]) == F(r["eps1"]) * F(r["eps2"]) for r in rep.records)
    ok = rep.failed == 0 and len(rep.records) == 200 and eps_exact and elapsed < 60
    report(3, "tensor certificates with eps = eps1*eps2 and 10^4-point audits", ok, f"{rep.passed}/200 in {elapsed:.1f}s, limit 60s")
    assert ok, rep.first_counterexample


def test_criterion_04_urysohn_tensor_campaign():
    rep = run_campaign("thm41", 200, 0)
    pos, neg = rep.stats["positive"], rep.stats["negative"]
    ok = rep.failed == 0 and pos == 100 and neg == 100
    report(4, "Urysohn witnesses exist exactly under compact containment", ok, f"{rep.passed}/200, {pos} positive, {neg} negative")
    assert ok, rep.first_counterexample


def _dense_inf_on_support(a, b):
    xs, av = dense_values(a, 0, 2)
    _, bv = dense_values(b, 0, 2)
    return float(bv[av > 0].min())


def test_criterion_05_worked_values():
    k = Region.interval(0, 2)
    a = PLFunction.tent(1, F(1, 4), 1, k)
    b = PLFunction.tent(1, 1, 1, k)
    A, B = PositiveElement.scalar(a), PositiveElement.scalar(b)

    # dense oracle at step 1/1024: inf of b over {a > 0} is approached from above
    c_dense = _dense_inf_on_support(a, b)
    c_star = gp_constant(A, B) * 2
    oracle_c = c_star <= F(c_dense) <= c_star + F(1, 1024)
    eps = way_below_epsilon(A, B)
    xs, av = dense_values(a, 0, 2)
    _, bv = dense_values(b, 0, 2)
    oracle_eps = bool(np.all(bv[av > 0] > float(eps)))

    # tensor: inf of b(x) b(y) over {a(x) a(y) > 0} on the 2049^2 grid
    mask = np.outer(av > 0, av > 0)
    c_tensor_dense = float(np.outer(bv, bv)[mask].min())
    t_eps = way_below_epsilon(PositiveElement.tensor(a, a), PositiveElement.tensor(b, b))
    oracle_tensor = c_star**2 <= F(c_tensor_dense) <= (c_star + F(1, 1024)) ** 2 and t_eps == (c_star / 2) ** 2

    level = superlevel(b, F(1, 2))
    above = xs[bv > 0.5]
    oracle_level = float(above.min()) == 0.5 + 1 / 1024 and float(above.max()) == 1.5 - 1 / 1024

    frozen = (
        c_star == F(3, 4)
        and eps == F(3, 8)
        and t_eps == F(9, 64)
        and level == Region.interval(F(1, 2), F(3, 2), True, True)
    )
    ok = frozen and oracle_c and oracle_eps and oracle_tensor and oracle_level
    report(5, "worked values c*=3/4, eps=3/8, tensor eps=9/64, superlevel (1/2,3/2)", ok, "exact values match, dense 1/1024 oracle agrees")
    assert ok


def test_criterion_06_finite_posets():
    checked = 0
    bad = 0
    for n in range(1, 6):
        for p in all_posets(n):
            for x in range(n):
                for y in range(n):
                    bad += way_below_directed(p, x, y) != p.leq[x][y]
            checked += 1
    rng = random.Random(6)
    for _ in range(10_000):
        n = rng.randint(1, 5)
        p = random_poset(rng, n)
        x, y = rng.randrange(n), rng.randrange(n)
        bad += way_below_directed(p, x, y) != p.leq[x][y]
        checked += 1
    d = FinitePoset.diamond()
    diamond = not way_below_literal(d, 3, 3) and way_below_directed(d, 3, 3)
    ok = bad == 0 and checked >= 10_000 and diamond
    report(6, "directed way-below equals order on finite posets; diamond regression", ok, f"{checked} posets, {bad} exceptions")
    assert ok


def test_criterion_07_exhaustion():
    rep = run_campaign("exhaustion", 200, 0)
    ok = rep.failed == 0
    report(7, "exhaustion capture within N=64 iff compact containment", ok, f"{rep.passed}/200, {rep.stats['compact']} compactly contained")
    assert ok, rep.first_counterexample


def test_criterion_08_properness():
    rep = run_campaign("appendixA", 200, 0)
    ok = rep.failed == 0
    report(8, "properness three-way agreement and generators vanish on F", ok, f"{rep.passed}/200, {rep.stats['proper']} proper")
    assert ok, rep.first_counterexample


def _supported_inside(rng, b):
    """Random ``a`` with ``supp a`` inside ``supp b``."""
    pts = set(b.bp)
    for lo, hi in b.components:
        if lo < hi:
            pts |= {lo + (hi - lo) * F(rng.randint(1, 7), 8) for _ in range(rng.randint(0, 3))}
    bp = sorted(pts)
    val = [F(rng.randint(1, 16), 8) if b(x) > 0 else F(0) for x in bp]
    return PLFunction(b.space, tuple(bp), tuple(val))


def test_criterion_09_witness_gap_decay():
    from waybelow.generators import nonzero_pl, random_space_1d

    rng = random.Random(9)
    ns = [2**i for i in range(9)]
    failures = 0
    for _ in range(50):
        k = random_space_1d(rng)
        b = nonzero_pl(rng, k)
        a = _supported_inside(rng, b)
        assert is_subset(open_support(a), open_support(b))
        c = linear_domination_constant(a, b)
        gaps = [cuntz_witness_gap(a, b, n) for n in ns]
        bounded = all(g <= c / n for g, n in zip(gaps, ns))
        monotone = all(g1 >= g2 for g1, g2 in zip(gaps, gaps[1:]))
        failures += not (bounded and monotone)
    ok = failures == 0
    report(9, "witness gap <= C/n and non-increasing, 50 pairs, n = 1..256", ok, f"{50 - failures}/50")
    assert ok


def test_criterion_10_region_oracle():
    rng = random.Random(10)
    discrepancies = 0
    for i in range(1000):
        dim = 1 if i % 10 < 6 else 2
        a, b = random_raw(rng, dim), random_raw(rng, dim)
        ra, rb = a.region(), b.region()
        results = {
            "union": union(ra, rb),
            "intersect": intersect(ra, rb),
            "difference": difference(ra, rb),
            "complement": complement(ra),
            "closure": closure(ra),
            "interior": interior(ra),
        }
        oracle = {
            "union": lambda p: a.member(p) or b.member(p),
            "intersect": lambda p: a.member(p) and b.member(p),
            "difference": lambda p: a.member(p) and not b.member(p),
            "complement": lambda p: not a.member(p),
            "closure": a.closure_member,
            "interior": a.interior_member,
        }
        pts = probes([a, b], dim)
        for name, region in results.items():
            discrepancies += sum(region.contains_point(p) != oracle[name](p) for p in pts)
        discrepancies += is_subset(ra, rb) != all(b.member(p) for p in pts if a.member(p))

        # compact containment on K closed, U = O & K, V = W & K
        kr = random_raw(rng, dim, "closed", 3)
        o1, o2 = random_raw(rng, dim, "open", 3), random_raw(rng, dim, "open", 3)
        k = kr.region()
        v = intersect(union(o1.region(), o2.region()), k)
        u = intersect(o1.region(), k)
        cpts = probes([kr, o1, o2], dim)
        want = all(
            (o1.member(p) or o2.member(p)) and kr.member(p)
            for p in cpts
            # p lies in cl(U) iff some atom touching p lies in U
            if kr.member(p) and any(
                o1.member(q) and kr.member(q)
                for q in _neighbourhood(p, dim)
            )
        )
        discrepancies += compactly_contained(u, v, k) != want
    ok = discrepancies == 0
    report(10, "region booleans, closure, interior and containment match brute force, 1000 instances", ok, f"{discrepancies} discrepancies")
    assert ok


def _neighbourhood(p, dim, eps=F(1, 64)):
    import itertools

    for off in itertools.product((-eps, 0, eps), repeat=dim):
        yield tuple(x + o for x, o in zip(p, off))


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
