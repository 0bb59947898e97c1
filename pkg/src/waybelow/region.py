"""Exact rectilinear regions in R^d.

A region is a finite union of axis-aligned boxes whose faces may be open or
closed. Internally every region lives on a compressed grid: along each axis the
finite endpoint values ``c_0 < ... < c_{m-1}`` cut the line into ``2m + 1``
atoms, alternating open cells and single points::

    (-inf, c_0)  {c_0}  (c_0, c_1)  {c_1}  ...  {c_{m-1}}  (c_{m-1}, inf)
        0          1        2         3             2m-1          2m

A region is a boolean mask over the product of these atoms. The grid is always
reduced to the minimal one describing the point set, so two regions are equal
exactly when their grids and masks are equal, and the box list emitted by a
deterministic greedy merge is canonical.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

INF = math.inf
Scalar = Union[Fraction, float]  # float only for +-inf


class DimensionError(ValueError):
    pass


class PreconditionError(ValueError):
    """An operation was called outside its domain (not a negative verdict)."""


def to_scalar(value) -> Scalar:
    """Parse ``"p/q"``, ints, Fractions or the strings ``"inf"``/``"-inf"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return value
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if s in ("inf", "+inf"):
            return INF
        if s == "-inf":
            return -INF
        return Fraction(s)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def scalar_str(value: Scalar) -> str:
    if isinstance(value, float):
        return "inf" if value > 0 else "-inf"
    return str(value)


class Interval(NamedTuple):
    lo: Scalar
    lo_open: bool
    hi: Scalar
    hi_open: bool

    @classmethod
    def make(cls, lo, hi, lo_open=False, hi_open=False) -> "Interval":
        iv = cls(to_scalar(lo), bool(lo_open), to_scalar(hi), bool(hi_open))
        iv.validate()
        return iv

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls.make(lo, hi)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls.make(lo, hi, True, True)

    def validate(self) -> None:
        lo, hi = self.lo, self.hi
        if lo == INF or hi == -INF:
            raise ValueError(f"bad interval endpoints {self}")
        if lo == -INF and not self.lo_open or hi == INF and not self.hi_open:
            raise ValueError("infinite endpoints must be open")
        if lo > hi:
            raise ValueError(f"empty interval {self}")
        if lo == hi and (self.lo_open or self.hi_open):
            raise ValueError(f"degenerate interval must be closed: {self}")

    def contains(self, x) -> bool:
        above = x > self.lo or (x == self.lo and not self.lo_open)
        below = x < self.hi or (x == self.hi and not self.hi_open)
        return above and below

    def __str__(self) -> str:
        if self.lo == self.hi:
            return "{" + scalar_str(self.lo) + "}"
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{scalar_str(self.lo)},{scalar_str(self.hi)}{right}"


Box = tuple  # tuple[Interval, ...]


def _atom_index(coords: Sequence[Fraction], x) -> int:
    k = bisect_left(coords, x)
    if k < len(coords) and coords[k] == x:
        return 2 * k + 1
    return 2 * k


def _representative(coords: Sequence[Fraction], j: int) -> Fraction:
    """A point inside atom ``j`` of the axis grid ``coords``."""
    if j % 2:
        return coords[j // 2]
    k = j // 2
    if not coords:
        return Fraction(0)
    if k == 0:
        return coords[0] - 1
    if k == len(coords):
        return coords[-1] + 1
    return (coords[k - 1] + coords[k]) / 2


def _refine(coords, mask: np.ndarray, new_coords) -> np.ndarray:
    """Re-express ``mask`` on a finer grid (``new_coords`` must be a superset)."""
    out = mask
    for axis, (old, new) in enumerate(zip(coords, new_coords)):
        if old == new:
            continue
        pos = {v: i for i, v in enumerate(old)}
        index = [0]
        passed = 0  # old coordinates at or left of the current position
        for v in new:
            i = pos.get(v)
            if i is None:
                index.append(2 * passed)
            else:
                index.append(2 * i + 1)
                passed = i + 1
            index.append(2 * passed)
        out = np.take(out, index, axis=axis)
    return out


def _merge_coords(a, b):
    return tuple(tuple(sorted(set(x) | set(y))) for x, y in zip(a, b))


class Region:
    """Immutable finite union of boxes, stored in canonical grid form."""

    def __init__(self, dim: int, coords, mask: np.ndarray, *, _minimal: bool = False):
        if dim < 1:
            raise ValueError("dimension must be positive")
        coords = tuple(tuple(c) for c in coords)
        mask = np.asarray(mask, dtype=bool)
        if len(coords) != dim or mask.shape != tuple(2 * len(c) + 1 for c in coords):
            raise ValueError("grid/mask shape mismatch")
        if not _minimal:
            coords, mask = _minimize(coords, mask)
        mask.flags.writeable = False
        self.dim = dim
        self.coords = coords
        self.mask = mask

    # -- construction -------------------------------------------------------

    @classmethod
    def empty(cls, dim: int) -> "Region":
        return cls(dim, ((),) * dim, np.zeros((1,) * dim, dtype=bool), _minimal=True)

    @classmethod
    def whole(cls, dim: int) -> "Region":
        return cls(dim, ((),) * dim, np.ones((1,) * dim, dtype=bool), _minimal=True)

    @classmethod
    def from_boxes(cls, boxes: Iterable[Sequence[Interval]], dim: int | None = None) -> "Region":
        boxes = [tuple(b) for b in boxes]
        if dim is None:
            if not boxes:
                raise ValueError("dimension required for an empty box list")
            dim = len(boxes[0])
        for b in boxes:
            if len(b) != dim:
                raise DimensionError(f"box of dimension {len(b)} in a {dim}-dimensional region")
            for iv in b:
                iv.validate()
        coords = []
        for axis in range(dim):
            vals = set()
            for b in boxes:
                for v in (b[axis].lo, b[axis].hi):
                    if not isinstance(v, float):
                        vals.add(v)
            coords.append(tuple(sorted(vals)))
        mask = np.zeros(tuple(2 * len(c) + 1 for c in coords), dtype=bool)
        for b in boxes:
            sl = []
            for axis, iv in enumerate(b):
                c = coords[axis]
                if iv.lo == -INF:
                    start = 0
                else:
                    start = _atom_index(c, iv.lo) + (1 if iv.lo_open else 0)
                if iv.hi == INF:
                    stop = 2 * len(c)
                else:
                    stop = _atom_index(c, iv.hi) - (1 if iv.hi_open else 0)
                sl.append(slice(start, stop + 1))
            mask[tuple(sl)] = True
        return cls(dim, coords, mask)

    @classmethod
    def interval(cls, lo, hi, lo_open=False, hi_open=False) -> "Region":
        """One-dimensional region consisting of a single interval."""
        return cls.from_boxes([(Interval.make(lo, hi, lo_open, hi_open),)])

    @classmethod
    def box(cls, *intervals: Interval) -> "Region":
        return cls.from_boxes([tuple(intervals)])

    # -- canonical data -----------------------------------------------------

    @cached_property
    def boxes(self) -> tuple:
        """Canonical non-overlapping boxes, greedy-merged in axis order."""
        free = self.mask.copy()
        shape = free.shape
        out = []
        for start in np.argwhere(self.mask):
            start = tuple(int(s) for s in start)
            if not free[start]:
                continue
            lo = list(start)
            hi = list(start)
            for axis in range(self.dim):
                while hi[axis] + 1 < shape[axis]:
                    probe = tuple(
                        slice(lo[k], hi[k] + 1) if k != axis else hi[axis] + 1
                        for k in range(self.dim)
                    )
                    if not free[probe].all():
                        break
                    hi[axis] += 1
            free[tuple(slice(a, b + 1) for a, b in zip(lo, hi))] = False
            out.append(tuple(self._span(axis, lo[axis], hi[axis]) for axis in range(self.dim)))
        return tuple(out)

    def _span(self, axis: int, first: int, last: int) -> Interval:
        c = self.coords[axis]
        if first % 2:
            lo, lo_open = c[first // 2], False
        else:
            k = first // 2
            lo, lo_open = (c[k - 1], True) if k > 0 else (-INF, True)
        if last % 2:
            hi, hi_open = c[last // 2], False
        else:
            k = last // 2
            hi, hi_open = (c[k], True) if k < len(c) else (INF, True)
        return Interval(lo, lo_open, hi, hi_open)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.coords == other.coords
            and np.array_equal(self.mask, other.mask)
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.coords, self.mask.tobytes()))

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Region(dim={self.dim}, empty)"
        parts = [" x ".join(str(iv) for iv in b) for b in self.boxes]
        return "Region(" + " u ".join(parts) + ")"

    # -- predicates ---------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.mask.any()

    @property
    def is_bounded(self) -> bool:
        for axis in range(self.dim):
            m = np.moveaxis(self.mask, axis, 0)
            if m[0].any() or m[-1].any():
                return False
        return True

    def contains_point(self, point) -> bool:
        if self.dim == 1 and not isinstance(point, (tuple, list)):
            point = (point,)
        if len(point) != self.dim:
            raise DimensionError("point dimension mismatch")
        idx = tuple(_atom_index(c, x) for c, x in zip(self.coords, point))
        return bool(self.mask[idx])

    __contains__ = contains_point

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "boxes": [
                {
                    "iv": [
                        {
                            "lo": scalar_str(iv.lo),
                            "lo_open": iv.lo_open,
                            "hi": scalar_str(iv.hi),
                            "hi_open": iv.hi_open,
                        }
                        for iv in b
                    ]
                }
                for b in self.boxes
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Region":
        dim = int(data["dim"])
        boxes = []
        for b in data["boxes"]:
            boxes.append(
                tuple(
                    Interval.make(iv["lo"], iv["hi"], iv.get("lo_open", False), iv.get("hi_open", False))
                    for iv in b["iv"]
                )
            )
        return cls.from_boxes(boxes, dim)


def _minimize(coords, mask):
    coords = list(coords)
    for axis in range(len(coords)):
        c = coords[axis]
        if not c:
            continue
        m = np.moveaxis(mask, axis, 0).reshape(mask.shape[axis], -1)
        # coordinate k is redundant when its point slice matches both neighbouring cells
        redundant = ((m[0:-1:2] == m[1::2]) & (m[1::2] == m[2::2])).all(axis=1)
        if redundant.any():
            keep = [0]
            for k, r in enumerate(redundant):
                if not r:
                    keep += [2 * k + 1, 2 * k + 2]
            mask = np.take(mask, keep, axis=axis)
            coords[axis] = tuple(v for v, r in zip(c, redundant) if not r)
    return tuple(coords), np.ascontiguousarray(mask)


def _check_dims(*regions: Region) -> int:
    dims = {r.dim for r in regions}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def _aligned(a: Region, b: Region):
    _check_dims(a, b)
    if a.coords == b.coords:
        return a.coords, a.mask, b.mask
    coords = _merge_coords(a.coords, b.coords)
    return coords, _refine(a.coords, a.mask, coords), _refine(b.coords, b.mask, coords)


# -- operations --------------------------------------------------------------


def normalize(boxes: Iterable[Sequence[Interval]], dim: int | None = None) -> Region:
    return Region.from_boxes(boxes, dim)


def union(a: Region, b: Region) -> Region:
    coords, ma, mb = _aligned(a, b)
    return Region(a.dim, coords, ma | mb)


def intersect(a: Region, b: Region) -> Region:
    coords, ma, mb = _aligned(a, b)
    return Region(a.dim, coords, ma & mb)


def difference(a: Region, b: Region) -> Region:
    coords, ma, mb = _aligned(a, b)
    return Region(a.dim, coords, ma & ~mb)


def complement(a: Region) -> Region:
    return Region(a.dim, a.coords, ~a.mask, _minimal=True)


def boolean(kind: str, a: Region, b: Region) -> Region:
    ops = {"union": union, "intersect": intersect, "difference": difference}
    if kind not in ops:
        raise ValueError(f"unknown boolean operation {kind!r}")
    return ops[kind](a, b)


def closure(a: Region) -> Region:
    mask = a.mask
    for axis in range(a.dim):
        m = np.moveaxis(mask, axis, 0)
        grown = m.copy()
        # a point atom joins the closure when a neighbouring open cell is present
        grown[1::2] |= m[0:-1:2] | m[2::2]
        mask = np.moveaxis(grown, 0, axis)
    return Region(a.dim, a.coords, mask)


def interior(a: Region) -> Region:
    return complement(closure(complement(a)))


def is_subset(a: Region, b: Region) -> bool:
    _, ma, mb = _aligned(a, b)
    return not (ma & ~mb).any()


def is_closed(a: Region) -> bool:
    return closure(a) == a


def is_compact(a: Region) -> bool:
    return a.is_bounded and is_closed(a)


def product(a: Region, b: Region) -> Region:
    mask = np.logical_and.outer(a.mask, b.mask)
    return Region(a.dim + b.dim, a.coords + b.coords, mask)


def product_all(regions: Sequence[Region]) -> Region:
    out = regions[0]
    for r in regions[1:]:
        out = product(out, r)
    return out


def dilate(a: Region, delta) -> Region:
    """Minkowski sum with the closed L-infinity cube of radius ``delta``."""
    delta = to_scalar(delta)
    if not delta > 0:
        raise PreconditionError("dilation radius must be positive")
    boxes = [
        tuple(Interval(iv.lo - delta, iv.lo_open, iv.hi + delta, iv.hi_open) for iv in b)
        for b in a.boxes
    ]
    return Region.from_boxes(boxes, a.dim)


def erode(a: Region, delta) -> Region:
    """Points whose closed L-infinity cube of radius ``delta`` fits inside ``a``."""
    return complement(dilate(complement(a), delta))


def morph(kind: str, a: Region, delta) -> Region:
    if kind == "dilate":
        return dilate(a, delta)
    if kind == "erode":
        return erode(a, delta)
    raise ValueError(f"unknown morphology {kind!r}")


def _interval_gap(p: Interval, q: Interval) -> Fraction:
    return max(Fraction(0), q.lo - p.hi, p.lo - q.hi)


def gap(a: Region, b: Region) -> Fraction:
    """Exact L-infinity distance between two disjoint nonempty compact regions."""
    _check_dims(a, b)
    if a.is_empty or b.is_empty:
        raise PreconditionError("gap needs nonempty regions")
    if not (is_compact(a) and is_compact(b)):
        raise PreconditionError("gap needs compact regions")
    if not intersect(a, b).is_empty:
        raise PreconditionError("gap needs disjoint regions")
    # the distance to a box equals the distance to its closure
    return min(
        max(_interval_gap(p, q) for p, q in zip(ba, bb)) for ba in a.boxes for bb in b.boxes
    )


# -- topology relative to an ambient space ------------------------------------


class Space:
    """A region used as ambient topological space; must be locally compact.

    A subset of R^d is locally compact exactly when it is open in its own
    closure, i.e. when ``closure(K) \\ K`` is closed and misses ``K``'s closure
    points in ``K``. We test ``closure(closure(K) \\ K) & K == empty``.
    """

    __slots__ = ("region",)

    def __init__(self, region: Region):
        frontier = difference(closure(region), region)
        if not intersect(closure(frontier), region).is_empty:
            raise PreconditionError(f"{region!r} is not locally compact")
        self.region = region

    @property
    def dim(self) -> int:
        return self.region.dim

    @property
    def is_compact(self) -> bool:
        return is_compact(self.region)

    def __eq__(self, other) -> bool:
        if isinstance(other, Space):
            return self.region == other.region
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.region)

    def __repr__(self) -> str:
        return f"Space({self.region!r})"


def as_region(k) -> Region:
    return k.region if isinstance(k, Space) else k


def as_space(k) -> Space:
    return k if isinstance(k, Space) else Space(k)


def relative_closure(u: Region, k) -> Region:
    k = as_region(k)
    if not is_subset(u, k):
        raise PreconditionError("region is not contained in the ambient space")
    return intersect(closure(u), k)


def is_open_in(u: Region, k) -> bool:
    k = as_region(k)
    if not is_subset(u, k):
        raise PreconditionError("region is not contained in the ambient space")
    return intersect(closure(difference(k, u)), u).is_empty


def compactly_contained(u: Region, v: Region, k) -> bool:
    """``cl_K(U)`` is compact and lies inside ``V``; U, V must be open in K."""
    k = as_space(k)
    for name, r in (("U", u), ("V", v)):
        if not is_open_in(r, k):
            raise PreconditionError(f"{name} is not open in the ambient space")
    if not is_subset(u, v):
        raise PreconditionError("U is not contained in V")
    cl = relative_closure(u, k)
    return is_compact(cl) and is_subset(cl, v)


def exhaustion_chain(v: Region, k, n: int) -> Region:
    """The n-th member of the increasing open exhaustion of ``V`` inside compact ``K``."""
    k = as_region(k)
    grown = union(v, complement(k))
    return intersect(interior(erode(grown, Fraction(1, n))), k)


def exhaustion_capture(u: Region, v: Region, k, limit: int) -> int | None:
    """Least ``n <= limit`` with ``U`` inside the n-th exhaustion member, if any."""
    k = as_space(k)
    if not k.is_compact:
        raise PreconditionError("exhaustion needs a compact ambient space")
    for name, r in (("U", u), ("V", v)):
        if not is_open_in(r, k):
            raise PreconditionError(f"{name} is not open in the ambient space")
    if not is_subset(u, v):
        raise PreconditionError("U is not contained in V")
    # the chain is increasing, so capture is monotone in n
    if not is_subset(u, exhaustion_chain(v, k, limit)):
        return None
    lo, hi = 1, limit
    while lo < hi:
        mid = (lo + hi) // 2
        if is_subset(u, exhaustion_chain(v, k, mid)):
            hi = mid
        else:
            lo = mid + 1
    return lo


def exhaustion_consistency(u: Region, v: Region, k, limit: int) -> tuple[bool, int | None]:
    """Whether finite capture agrees with compact containment; also the capture index."""
    n = exhaustion_capture(u, v, k, limit)
    return (n is not None) == compactly_contained(u, v, k), n
