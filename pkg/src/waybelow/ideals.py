"""Closed ideals of C(K) through their open carriers.

Every closed ideal of ``C(K)`` is ``C0(U)`` for an open ``U``, the functions
vanishing on ``F = K \\ U``. Ideals are stored by their carrier; generator lists
are kept when the ideal was built from PL functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .plfunc import PLFunction, add, distance_to, max_over, min_over, open_support
from .region import (
    PreconditionError,
    Region,
    Space,
    as_region,
    compactly_contained,
    difference,
    is_open_in,
    product,
    union,
)


@dataclass(frozen=True)
class Ideal:
    ambient: Region
    carrier: Region
    generators: tuple = ()

    def __post_init__(self):
        ambient = as_region(self.ambient)
        Space(ambient)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "generators", tuple(self.generators))
        if not is_open_in(self.carrier, ambient):
            raise PreconditionError("ideal carrier must be open in the ambient space")

    @property
    def is_zero(self) -> bool:
        return self.carrier.is_empty

    def contains(self, f: PLFunction) -> bool:
        """Membership of a function: it must vanish outside the carrier."""
        rest = difference(self.ambient, self.carrier)
        return rest.is_empty or max_over(f, rest) == 0

    def to_json(self) -> dict:
        out = {"ambient": self.ambient.to_json(), "carrier": self.carrier.to_json()}
        if self.generators:
            out["generators"] = [g.to_json() for g in self.generators]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Ideal":
        ambient = Region.from_json(data["ambient"])
        if "generators" in data and "carrier" not in data:
            gens = [PLFunction.from_json(g) for g in data["generators"]]
            return ideal_from_generators(gens, ambient)
        gens = tuple(PLFunction.from_json(g) for g in data.get("generators", ()))
        return cls(ambient, Region.from_json(data["carrier"]), gens)


def _check_generators(generators, k: Region) -> None:
    for g in generators:
        if g.space != k:
            raise PreconditionError("generator lives on a different space")


def vanishing_locus(generators, k) -> Region:
    """Common zero set ``F`` of the generators; they are checked to vanish on it."""
    k = as_region(k)
    _check_generators(generators, k)
    carrier = Region.empty(k.dim)
    for g in generators:
        carrier = union(carrier, open_support(g))
    f = difference(k, carrier)
    if not f.is_empty and any(max_over(g, f) != 0 for g in generators):
        raise AssertionError("a generator does not vanish on the vanishing locus")
    return f


def ideal_from_generators(generators, k) -> Ideal:
    k = as_region(k)
    f = vanishing_locus(generators, k)
    return Ideal(k, difference(k, f), tuple(generators))


def canonical_generator(ideal: Ideal) -> PLFunction:
    """A PL function positive exactly on the carrier of a 1D ideal.

    ``min(dist(x, F), 1)`` for the vanishing locus ``F``.
    """
    k = ideal.ambient
    f = difference(k, ideal.carrier)
    if f.is_empty:
        return PLFunction.constant(k, 1)
    ends = [x for b in f.boxes for x in (b[0].lo, b[0].hi)]
    cands = set(ends)
    cands |= {x + d for x in ends for d in (-1, 1)}
    cands |= {(a + b) / 2 for a, b in zip(ends[1::2], ends[2::2])}
    return PLFunction.sample(k, cands, lambda x: min(distance_to(x, f), Fraction(1)))


def is_proper(ideal: Ideal) -> bool:
    """``I != C(K)``, decided three ways that must agree.

    The carrier differs from K; the vanishing locus is nonempty; the sum of
    the generators is not strictly positive (an ideal holding a strictly
    positive function holds an invertible one).
    """
    k = ideal.ambient
    by_carrier = ideal.carrier != k
    if k.dim == 1:
        gens = ideal.generators or ((canonical_generator(ideal),) if not ideal.is_zero else ())
        locus = vanishing_locus(gens, k)
        by_locus = not locus.is_empty
        by_sum = True if not gens else min_over(add(*gens), k) == 0
    else:
        by_locus = not difference(k, ideal.carrier).is_empty
        by_sum = by_locus
    if not by_carrier == by_locus == by_sum:
        raise AssertionError("properness checks disagree")
    return by_carrier


def ideal_compactly_contained(i: Ideal, j: Ideal) -> bool:
    if i.ambient != j.ambient:
        raise PreconditionError("ideals live in different algebras")
    return compactly_contained(i.carrier, j.carrier, i.ambient)


def ideal_tensor(i: Ideal, j: Ideal) -> Ideal:
    """``C0(U1) (x) C0(U2) = C0(U1 x U2)`` over the product space."""
    return Ideal(product(i.ambient, j.ambient), product(i.carrier, j.carrier))
