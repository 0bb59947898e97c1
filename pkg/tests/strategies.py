from fractions import Fraction

from hypothesis import strategies as st

from oracles import GRID, STEP, RawRegion
from waybelow.region import Interval


@st.composite
def intervals(draw, kind="any"):
    a = draw(st.integers(0, GRID))
    b = draw(st.integers(0, GRID))
    a, b = min(a, b), max(a, b)
    if kind == "closed":
        return Interval(a * STEP, False, b * STEP, False)
    if kind == "open":
        if a == b:
            b = a + 1
        return Interval(a * STEP, True, b * STEP, True)
    if a == b:
        return Interval(a * STEP, False, a * STEP, False)
    return Interval(a * STEP, draw(st.booleans()), b * STEP, draw(st.booleans()))


@st.composite
def raw_regions(draw, dim=1, kind="any", max_boxes=4):
    n = draw(st.integers(1, max_boxes))
    boxes = [tuple(draw(intervals(kind)) for _ in range(dim)) for _ in range(n)]
    return RawRegion(boxes, dim)


dims = st.sampled_from([1, 1, 2])
deltas = st.sampled_from([Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(3, 8)])
