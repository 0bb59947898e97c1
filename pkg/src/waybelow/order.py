"""Way-below on explicit finite posets.

A sequence in a finite poset has a finite image and its supremum depends only
on that image, so quantifying over sequences is the same as quantifying over
nonempty subsets. Subsets are handled as bitmasks.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence


class FinitePoset:
    def __init__(self, leq: Sequence[Sequence[bool]]):
        n = len(leq)
        rel = [[bool(leq[i][j]) for j in range(n)] for i in range(n)]
        if any(len(row) != n for row in leq):
            raise ValueError("order relation must be a square matrix")
        for i in range(n):
            if not rel[i][i]:
                raise ValueError(f"relation is not reflexive at {i}")
            for j in range(n):
                if i != j and rel[i][j] and rel[j][i]:
                    raise ValueError(f"relation is not antisymmetric at ({i}, {j})")
                for k in range(n):
                    if rel[i][j] and rel[j][k] and not rel[i][k]:
                        raise ValueError(f"relation is not transitive at ({i}, {j}, {k})")
        self.n = n
        self.leq = tuple(tuple(r) for r in rel)
        # up[i]: bitmask of elements >= i
        self.up = tuple(sum(1 << j for j in range(n) if rel[i][j]) for i in range(n))
        self.down = tuple(sum(1 << j for j in range(n) if rel[j][i]) for i in range(n))
        self._sups: list | None = None

    @classmethod
    def from_relation(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "FinitePoset":
        """Reflexive-transitive closure of ``pairs``; raises if it is not antisymmetric."""
        rel = [[i == j for j in range(n)] for i in range(n)]
        for i, j in pairs:
            rel[i][j] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        return cls(rel)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls([[i <= j for j in range(n)] for i in range(n)])

    @classmethod
    def diamond(cls) -> "FinitePoset":
        """Bottom 0, incomparable 1 and 2, top 3."""
        return cls.from_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)])

    def __eq__(self, other):
        return isinstance(other, FinitePoset) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def __repr__(self):
        return f"FinitePoset(n={self.n}, leq={[list(map(int, r)) for r in self.leq]})"

    def to_json(self) -> dict:
        return {"n": self.n, "leq": [list(r) for r in self.leq]}

    @classmethod
    def from_json(cls, data: dict) -> "FinitePoset":
        leq = data["leq"]
        if int(data.get("n", len(leq))) != len(leq):
            raise ValueError("poset size does not match the relation")
        return cls(leq)

    def check(self, *ids: int) -> None:
        for i in ids:
            if not (isinstance(i, int) and 0 <= i < self.n):
                raise IndexError(f"invalid element id {i!r}")

    def sup_mask(self, mask: int) -> int | None:
        """Least upper bound of a nonempty subset given as a bitmask."""
        if self._sups is None:
            self._sups = [self._compute_sup(m) for m in range(1 << self.n)]
        return self._sups[mask]

    def _compute_sup(self, mask: int) -> int | None:
        if not mask:
            return None
        ub = (1 << self.n) - 1
        for i in _bits(mask):
            ub &= self.up[i]
        for u in _bits(ub):
            if ub & ~self.up[u] == 0:
                return u
        return None

    def is_directed(self, mask: int) -> bool:
        members = list(_bits(mask))
        for i, j in itertools.combinations(members, 2):
            if not self.up[i] & self.up[j] & mask:
                return False
        return True


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _to_mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def sup(p: FinitePoset, s: Iterable[int]) -> int | None:
    s = list(s)
    if not s:
        raise ValueError("sup of an empty set is not defined here")
    p.check(*s)
    return p.sup_mask(_to_mask(s))


def _way_below(p: FinitePoset, x: int, y: int, directed: bool) -> bool:
    p.check(x, y)
    above_x = p.up[x]
    for mask in range(1, 1 << p.n):
        s = p.sup_mask(mask)
        if s is None or not p.leq[y][s]:
            continue
        if directed and not p.is_directed(mask):
            continue
        if not mask & above_x:
            return False
    return True


def way_below_literal(p: FinitePoset, x: int, y: int) -> bool:
    """Every subset whose supremum exists and dominates ``y`` meets ``up(x)``."""
    return _way_below(p, x, y, directed=False)


def way_below_directed(p: FinitePoset, x: int, y: int) -> bool:
    """As :func:`way_below_literal`, restricted to directed subsets."""
    return _way_below(p, x, y, directed=True)


def compact_elements(p: FinitePoset, variant: str = "directed") -> set[int]:
    test = {"directed": way_below_directed, "literal": way_below_literal}[variant]
    return {x for x in range(p.n) if test(p, x, x)}


def all_posets(n: int):
    """Every poset on ``{0..n-1}`` whose natural order is a linear extension.

    Each finite poset is isomorphic to one of these, so this covers all posets
    of size ``n`` up to relabelling.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for bits in range(1 << len(pairs)):
        chosen = [pr for k, pr in enumerate(pairs) if bits >> k & 1]
        p = FinitePoset.from_relation(n, chosen)
        if p.leq not in seen:
            seen.add(p.leq)
            yield p


def random_poset(rng, n: int, density: float | None = None) -> FinitePoset:
    """Closure of a random relation, resampled until antisymmetric."""
    while True:
        d = rng.random() * 0.6 if density is None else density
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < d / 2]
        try:
            return FinitePoset.from_relation(n, pairs)
        except ValueError:
            continue
