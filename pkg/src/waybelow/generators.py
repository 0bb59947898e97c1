"""Seeded random instances for the verification campaigns.

Regions use at most four boxes with endpoints on the grid ``{0, 1/8, ..., 2}``;
PL functions use at most eight breakpoints with values on the same grid.
Hypothesis-satisfying instances are drawn by rejection, with a deterministic
fallback construction once the attempt cap is hit.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .plfunc import PLFunction, add, components, cutdown, open_support, scale, urysohn
from .region import (
    Interval,
    Region,
    compactly_contained,
    exhaustion_chain,
    interior,
    intersect,
    union,
)

GRID = 16
STEP = Fraction(1, 8)
MAX_TRIES = 200


def grid_value(rng: random.Random, lo: int = 0, hi: int = GRID) -> Fraction:
    return rng.randint(lo, hi) * STEP


def random_interval(rng: random.Random, *, closed: bool | None = None, open_: bool = False) -> Interval:
    a, b = sorted(rng.sample(range(GRID + 1), 2)) if rng.random() < 0.9 else (rng.randint(0, GRID),) * 2
    if a == b:
        if open_:
            b = min(a + 1, GRID)
            a = b - 1
        else:
            return Interval(a * STEP, False, a * STEP, False)
    if closed:
        flags = (False, False)
    elif open_:
        flags = (True, True)
    else:
        flags = (rng.random() < 0.5, rng.random() < 0.5)
    return Interval(a * STEP, flags[0], b * STEP, flags[1])


def random_region(rng: random.Random, dim: int, *, max_boxes: int = 4, closed=None, open_=False) -> Region:
    boxes = [
        tuple(random_interval(rng, closed=closed, open_=open_) for _ in range(dim))
        for _ in range(rng.randint(1, max_boxes))
    ]
    return Region.from_boxes(boxes, dim)


def random_compact(rng: random.Random, dim: int, max_boxes: int = 3) -> Region:
    return random_region(rng, dim, max_boxes=max_boxes, closed=True)


def random_open_in(rng: random.Random, k: Region, max_boxes: int = 3) -> Region:
    """``O & K`` for a random open box union ``O``; open in ``K``."""
    return intersect(random_region(rng, k.dim, max_boxes=max_boxes, open_=True), k)


def random_open_pair(rng: random.Random, k: Region) -> tuple[Region, Region]:
    """Open-in-K sets ``U <= V``."""
    v = random_open_in(rng, k)
    if rng.random() < 0.3:
        v = union(v, random_open_in(rng, k))
    u = intersect(random_open_in(rng, k), v)
    return u, v


def compact_triple(rng: random.Random, dim: int, want: bool = True, max_boxes: int = 3):
    """``(U, V, K)`` with ``K`` compact and ``compactly_contained(U, V, K) == want``."""
    last = None
    for _ in range(MAX_TRIES):
        k = random_compact(rng, dim, max_boxes)
        u, v = random_open_pair(rng, k)
        if compactly_contained(u, v, k) == want and (not want or not u.is_empty or rng.random() < 0.05):
            return u, v, k
        last = (u, v, k)
    u, v, k = last
    if want:
        # a deep exhaustion member is always compactly inside V
        return exhaustion_chain(v, k, 8), v, k
    # V itself is compactly inside V only when clopen; fall back to a known failure
    k = Region.interval(0, 1)
    v = Region.interval(0, 1, True, True)
    return v, v, k


def random_space_1d(rng: random.Random) -> Region:
    """Compact 1D domain: one to three closed intervals, occasionally a point."""
    for _ in range(MAX_TRIES):
        k = random_compact(rng, 1, max_boxes=3)
        if any(lo < hi for lo, hi in components(k)):
            return k
    return Region.interval(0, 2)


def random_pl(rng: random.Random, k: Region, max_bp: int = 8) -> PLFunction:
    comps = components(k)
    pts = {x for c in comps for x in c}
    inner = [Fraction(i) * STEP for i in range(GRID + 1) if k.contains_point(Fraction(i) * STEP)]
    inner += [(lo + hi) / 2 for lo, hi in comps if lo < hi]
    budget = max(0, max_bp - len(pts))
    pts |= set(rng.sample(inner, min(len(inner), rng.randint(0, budget))))
    zero_bias = rng.random() < 0.7
    vals = {}
    for x in pts:
        vals[x] = Fraction(0) if zero_bias and rng.random() < 0.35 else grid_value(rng)
    return _from_values(k, vals)


def _from_values(k: Region, vals: dict) -> PLFunction:
    bp = sorted(vals)
    return PLFunction(k, tuple(bp), tuple(vals[x] for x in bp))


def nonzero_pl(rng: random.Random, k: Region) -> PLFunction:
    for _ in range(MAX_TRIES):
        f = random_pl(rng, k)
        if not f.is_zero:
            return f
    return PLFunction.constant(k, 1)


def way_below_pair(rng: random.Random, k: Region) -> tuple[PLFunction, PLFunction]:
    """A pair ``(a, b)`` on ``k`` with ``[a] << [b]`` and ``b`` nonzero.

    Mixes rejection-sampled pairs with constructions known to satisfy the
    relation: rescaled cutdowns of ``b`` and rescaled Urysohn bumps.
    """
    from .cuntz import way_below_support

    b = nonzero_pl(rng, k)
    mode = rng.random()
    if mode < 0.25:
        for _ in range(MAX_TRIES // 4):
            a = random_pl(rng, k)
            if way_below_support(a, b):
                return a, b
    if mode < 0.8:
        t = b.sup * Fraction(rng.randint(1, 7), 8)
        a = scale(cutdown(b, t), grid_value(rng, 1))
        if rng.random() < 0.4:
            t2 = b.sup * Fraction(rng.randint(1, 7), 8)
            a = add(a, scale(cutdown(b, t2), grid_value(rng, 1)))
        return a, b
    supp = open_support(b)
    u = exhaustion_chain(supp, k, rng.choice([4, 8, 16]))
    u = intersect(u, union(random_open_in(rng, k), interior(random_open_in(rng, k))))
    e = urysohn(u, supp, k)
    return scale(e, grid_value(rng, 1)), b


def touching_pair(rng: random.Random, k: Region) -> tuple[PLFunction, PLFunction]:
    """A pair whose open supports share a boundary point.

    ``a`` is a ramp living on part of one support component of ``b`` that ends
    exactly where that component ends.
    """
    for _ in range(MAX_TRIES):
        b = nonzero_pl(rng, k)
        comps = [bx[0] for bx in open_support(b).boxes if bx[0].lo < bx[0].hi]
        if not comps:
            continue
        iv = rng.choice(comps)
        lo, hi = iv.lo, iv.hi
        mid = lo + (hi - lo) * Fraction(rng.randint(1, 3), 4)
        h = grid_value(rng, 1)
        if rng.random() < 0.5:
            # positive on (lo, mid), touching lo
            vals = {lo: Fraction(0) if iv.lo_open else h, mid: Fraction(0)}
            anchor = lo
        else:
            vals = {mid: Fraction(0), hi: Fraction(0) if iv.hi_open else h}
            anchor = hi
        vals[(anchor + mid) / 2] = h
        for lo_c, hi_c in components(k):
            vals.setdefault(lo_c, Fraction(0))
            vals.setdefault(hi_c, Fraction(0))
        try:
            a = _from_values(k, vals)
        except ValueError:
            continue
        return a, b
    return PLFunction.tent(1, 1, 1, Region.interval(0, 2)), PLFunction.tent(1, 1, 1, Region.interval(0, 2))


def supports_touch(a: PLFunction, b: PLFunction) -> bool:
    """Do the open supports share an endpoint value?"""
    ends = lambda f: {x for bx in open_support(f).boxes for x in (bx[0].lo, bx[0].hi)}
    return bool(ends(a) & ends(b))


def random_generators(rng: random.Random, k: Region, max_count: int = 4) -> list[PLFunction]:
    return [random_pl(rng, k) for _ in range(rng.randint(0, max_count))]
