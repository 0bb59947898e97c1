"""Nonnegative piecewise-linear functions on compact subsets of the line.

The domain is a compact 1D region, i.e. a finite union of closed intervals
(points allowed). A function is given by its values at breakpoints, linear in
between, and every domain component endpoint is a breakpoint. Breakpoints
where the function does not bend are dropped so equal functions compare equal.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .region import (
    Interval,
    PreconditionError,
    Region,
    as_region,
    compactly_contained,
    difference,
    gap,
    is_compact,
    is_subset,
    relative_closure,
    to_scalar,
)


class NotCompactlyContained(ValueError):
    """No Urysohn witness exists because the containment is not compact."""


def components(space: Region) -> list[tuple[Fraction, Fraction]]:
    """Closed components ``[lo, hi]`` of a compact 1D region, left to right."""
    return [(b[0].lo, b[0].hi) for b in space.boxes]


def _check_domain(space: Region) -> Region:
    space = as_region(space)
    if space.dim != 1:
        raise PreconditionError("piecewise-linear functions live on 1D spaces")
    if space.is_empty or not is_compact(space):
        raise PreconditionError("function domain must be compact and nonempty")
    return space


def _lerp(x0, v0, x1, v1, x):
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0)


@dataclass(frozen=True)
class PLFunction:
    space: Region
    bp: tuple
    val: tuple
    _comps: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        space = _check_domain(self.space)
        bp = tuple(to_scalar(x) for x in self.bp)
        val = tuple(to_scalar(v) for v in self.val)
        if len(bp) != len(val):
            raise ValueError("breakpoints and values differ in length")
        if any(b >= c for b, c in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(v < 0 for v in val):
            raise ValueError("piecewise-linear functions here are nonnegative")
        comps = components(space)
        bps = set(bp)
        for lo, hi in comps:
            if lo not in bps or hi not in bps:
                raise ValueError(f"component endpoints {lo}, {hi} must be breakpoints")
        if not all(space.contains_point(x) for x in bp):
            raise ValueError("breakpoint outside the domain")

        # drop interior breakpoints where the slope does not change
        keep_bp, keep_val = [], []
        ends = {x for c in comps for x in c}
        for i, (x, v) in enumerate(zip(bp, val)):
            if x not in ends:
                x0, v0, x1, v1 = bp[i - 1], val[i - 1], bp[i + 1], val[i + 1]
                if (v - v0) * (x1 - x) == (v1 - v) * (x - x0):
                    continue
            keep_bp.append(x)
            keep_val.append(v)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "bp", tuple(keep_bp))
        object.__setattr__(self, "val", tuple(keep_val))
        object.__setattr__(self, "_comps", tuple(comps))

    # -- constructors -------------------------------------------------------

    @classmethod
    def sample(cls, space, candidates: Iterable, fn: Callable) -> "PLFunction":
        """Evaluate ``fn`` at the candidate kinks inside ``space`` plus component ends.

        Exact only when ``fn`` is linear between consecutive candidates.
        """
        space = _check_domain(space)
        pts = {x for c in components(space) for x in c}
        pts |= {to_scalar(x) for x in candidates if space.contains_point(to_scalar(x))}
        bp = sorted(pts)
        return cls(space, tuple(bp), tuple(to_scalar(fn(x)) for x in bp))

    @classmethod
    def constant(cls, space, c) -> "PLFunction":
        c = to_scalar(c)
        return cls.sample(space, (), lambda x: c)

    @classmethod
    def zero(cls, space) -> "PLFunction":
        return cls.constant(space, 0)

    @classmethod
    def tent(cls, center, halfwidth, height, space) -> "PLFunction":
        """``height * max(0, 1 - |x - center| / halfwidth)``."""
        c, w, h = to_scalar(center), to_scalar(halfwidth), to_scalar(height)
        if w <= 0:
            raise ValueError("tent half-width must be positive")
        return cls.sample(
            space, (c - w, c, c + w), lambda x: h * max(Fraction(0), 1 - abs(x - c) / w)
        )

    # -- basics -------------------------------------------------------------

    @property
    def components(self) -> tuple:
        return self._comps

    def segments(self):
        """Consecutive breakpoint pairs ``(x0, v0, x1, v1)`` inside one component."""
        bp, val = self.bp, self.val
        for lo, hi in self._comps:
            i = bisect_left(bp, lo)
            j = bisect_left(bp, hi)
            for k in range(i, j):
                yield bp[k], val[k], bp[k + 1], val[k + 1]

    def isolated_points(self):
        for lo, hi in self._comps:
            if lo == hi:
                yield lo, self.val[bisect_left(self.bp, lo)]

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    @property
    def sup(self) -> Fraction:
        return max(self.val)

    @property
    def is_zero(self) -> bool:
        return not any(self.val)

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "bp": [str(x) for x in self.bp],
            "val": [str(v) for v in self.val],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PLFunction":
        return cls(Region.from_json(data["space"]), tuple(data["bp"]), tuple(data["val"]))


def evaluate(f: PLFunction, x) -> Fraction:
    x = to_scalar(x)
    if not f.space.contains_point(x):
        raise PreconditionError(f"{x} lies outside the function's domain")
    i = bisect_right(f.bp, x) - 1
    if f.bp[i] == x:
        return f.val[i]
    return _lerp(f.bp[i], f.val[i], f.bp[i + 1], f.val[i + 1], x)


eval_at = evaluate


def _with_crossings(f: PLFunction, level: Fraction) -> list[Fraction]:
    """Breakpoints of ``f`` plus the exact points where ``f`` crosses ``level``."""
    pts = set(f.bp)
    for x0, v0, x1, v1 in f.segments():
        if (v0 - level) * (v1 - level) < 0:
            pts.add(x0 + (level - v0) * (x1 - x0) / (v1 - v0))
    return sorted(pts)


def cutdown(f: PLFunction, eps) -> PLFunction:
    """Pointwise ``max(f - eps, 0)``."""
    eps = to_scalar(eps)
    if not eps > 0:
        raise PreconditionError("cutdown level must be positive")
    return PLFunction.sample(f.space, _with_crossings(f, eps), lambda x: max(evaluate(f, x) - eps, Fraction(0)))


def min_const(f: PLFunction, c) -> PLFunction:
    c = to_scalar(c)
    if c < 0:
        raise PreconditionError("clip level must be nonnegative")
    return PLFunction.sample(f.space, _with_crossings(f, c), lambda x: min(evaluate(f, x), c))


def _same_space(f: PLFunction, g: PLFunction) -> None:
    if f.space != g.space:
        raise PreconditionError("functions live on different spaces")


def add(*fs: PLFunction) -> PLFunction:
    if not fs:
        raise ValueError("add needs at least one function")
    for g in fs[1:]:
        _same_space(fs[0], g)
    pts = set().union(*(g.bp for g in fs))
    return PLFunction.sample(fs[0].space, pts, lambda x: sum(evaluate(g, x) for g in fs))


def scale(f: PLFunction, r) -> PLFunction:
    r = to_scalar(r)
    if r < 0:
        raise PreconditionError("scaling factor must be nonnegative")
    return PLFunction(f.space, f.bp, tuple(r * v for v in f.val))


def mul(f: PLFunction, g: PLFunction) -> PLFunction:
    """Product, defined only when one factor is constant (otherwise not PL)."""
    _same_space(f, g)
    for p, q in ((f, g), (g, f)):
        if len(set(p.val)) == 1:
            return scale(q, p.val[0])
    raise PreconditionError("product of two non-constant PL functions is not PL")


def pointwise(kind: str, *args) -> PLFunction:
    ops = {"add": add, "mul": mul, "scale": scale, "min_const": min_const}
    if kind not in ops:
        raise ValueError(f"unknown pointwise operation {kind!r}")
    return ops[kind](*args)


def superlevel(f: PLFunction, t) -> Region:
    """Exact region ``{x : f(x) > t}``; open in the function's domain."""
    t = to_scalar(t)
    if t < 0:
        raise PreconditionError("superlevel threshold must be nonnegative")
    boxes = []
    for x, v in f.isolated_points():
        if v > t:
            boxes.append((Interval(x, False, x, False),))
    for x0, v0, x1, v1 in f.segments():
        a, b = v0 > t, v1 > t
        if a and b:
            boxes.append((Interval(x0, False, x1, False),))
        elif a or b:
            root = x0 + (t - v0) * (x1 - x0) / (v1 - v0)
            if a:
                boxes.append((Interval(x0, False, root, True),))
            else:
                boxes.append((Interval(root, True, x1, False),))
    return Region.from_boxes(boxes, 1)


def open_support(f: PLFunction) -> Region:
    return superlevel(f, 0)


def _candidates_in(f: PLFunction, c: Region) -> list:
    pts = {x for b in c.boxes for x in (b[0].lo, b[0].hi)}
    pts |= {x for x in f.bp if c.contains_point(x)}
    return sorted(pts)


def _check_compact_subset(f: PLFunction, c: Region) -> None:
    if c.dim != 1 or c.is_empty or not is_compact(c):
        raise PreconditionError("extremum needs a nonempty compact 1D region")
    if not is_subset(c, f.space):
        raise PreconditionError("region leaves the function's domain")


def min_over(f: PLFunction, c: Region) -> Fraction:
    _check_compact_subset(f, c)
    return min(evaluate(f, x) for x in _candidates_in(f, c))


def max_over(f: PLFunction, c: Region) -> Fraction:
    _check_compact_subset(f, c)
    return max(evaluate(f, x) for x in _candidates_in(f, c))


def distance_to(x, c: Region) -> Fraction:
    """L-infinity distance from a point to a nonempty compact 1D region."""
    return min(max(Fraction(0), b[0].lo - x, x - b[0].hi) for b in c.boxes)


def urysohn(u: Region, v: Region, k) -> PLFunction:
    """A PL function ``e`` with ``0 <= e <= 1``, ``e = 1`` on ``cl U`` and support compactly in ``V``.

    With ``C = cl_K(U)`` and ``delta`` the gap from ``C`` to ``K \\ V`` the
    witness is ``max(0, 1 - dist(x, C) / (delta / 2))``.
    """
    kr = as_region(k)
    _check_domain(kr)
    if not compactly_contained(u, v, k):
        raise NotCompactlyContained("U is not compactly contained in V; no witness exists")
    c = relative_closure(u, kr)
    if c.is_empty:
        return PLFunction.zero(kr)
    outside = difference(kr, v)
    if outside.is_empty:
        return PLFunction.constant(kr, 1)
    half = gap(c, outside) / 2
    cands = []
    comps = components(c)
    for lo, hi in comps:
        cands += [lo - half, lo, hi, hi + half]
    for (_, hi), (lo, _) in zip(comps, comps[1:]):
        cands.append((hi + lo) / 2)
    return PLFunction.sample(kr, cands, lambda x: max(Fraction(0), 1 - distance_to(x, c) / half))


def _refined(a: PLFunction, b: PLFunction) -> list:
    _same_space(a, b)
    return sorted(set(a.bp) | set(b.bp))


def _pieces(comps, pts: Sequence):
    """Split sorted points into consecutive pairs within each component.

    Isolated-point components come out as ``(x, x)``.
    """
    for lo, hi in comps:
        inside = pts[bisect_left(pts, lo) : bisect_right(pts, hi)]
        if lo == hi:
            yield lo, lo
        yield from zip(inside, inside[1:])


def _check_support_inclusion(a: PLFunction, b: PLFunction) -> None:
    _same_space(a, b)
    if not is_subset(open_support(a), open_support(b)):
        raise PreconditionError("support of a is not contained in support of b")


def linear_domination_constant(a: PLFunction, b: PLFunction) -> Fraction:
    """Least ``C`` with ``a <= C * b`` everywhere.

    On a piece where both are linear the ratio ``a/b`` is monotone; where ``b``
    vanishes at one end so does ``a``, and the ratio is constant on the piece.
    Hence the supremum is attained at a breakpoint with ``b > 0``.
    """
    _check_support_inclusion(a, b)
    pts = _refined(a, b)
    ratios = [evaluate(a, x) / evaluate(b, x) for x in pts if evaluate(b, x) > 0]
    c = max(ratios, default=Fraction(0))
    if any(evaluate(a, x) > c * evaluate(b, x) for x in pts):
        raise AssertionError("domination constant failed exact verification")
    return c


def _max_product_on(x0, x1, p: Callable, q: Callable) -> Fraction:
    """Max of the product of two linear functions on ``[x0, x1]``."""
    best = max(p(x0) * q(x0), p(x1) * q(x1))
    if x1 > x0:
        sp = (p(x1) - p(x0)) / (x1 - x0)
        sq = (q(x1) - q(x0)) / (x1 - x0)
        if sp * sq < 0:
            # vertex of p(x0 + s) q(x0 + s) where the derivative vanishes
            s = -(p(x0) * sq + q(x0) * sp) / (2 * sp * sq)
            if 0 < s < x1 - x0:
                best = max(best, p(x0 + s) * q(x0 + s))
    return best


def cuntz_witness_gap(a: PLFunction, b: PLFunction, n: int) -> Fraction:
    """``sup |a - a * min(n b, 1)|``, the error of the n-th Cuntz witness ``v_n b v_n*``."""
    if n <= 0:
        raise PreconditionError("n must be positive")
    _check_support_inclusion(a, b)
    level = Fraction(1, n)
    pts = sorted(set(a.bp) | set(_with_crossings(b, level)))
    best = Fraction(0)
    for x0, x1 in _pieces(a.components, pts):
        if x0 == x1:
            best = max(best, evaluate(a, x0) * max(Fraction(0), 1 - n * evaluate(b, x0)))
            continue
        if evaluate(b, x0) >= level and evaluate(b, x1) >= level:
            continue
        best = max(best, _max_product_on(x0, x1, lambda x: evaluate(a, x), lambda x: 1 - n * evaluate(b, x)))
    return best
