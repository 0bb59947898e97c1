"""Cuntz comparison of positive functions in the commutative model.

Positive elements are either a single PL function or an elementary tensor
``f1 (x) f2 (x) ...`` acting as ``(x1, x2, ...) -> f1(x1) f2(x2) ...`` on the
product of the factor domains. In ``C(K)`` the Cuntz class of a positive
function is determined by its open support, and

    [a] << [b]  iff  cl(supp a) is inside supp b
                iff  b > c on supp a for some c > 0
                iff  supp a is inside {b > eps} for some eps > 0

The three deciders below implement the three right-hand sides independently so
their agreement can be tested.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Sequence

from .plfunc import (
    PLFunction,
    evaluate,
    min_over,
    open_support,
    superlevel,
)
from .region import (
    PreconditionError,
    Region,
    as_region,
    intersect,
    is_compact,
    is_subset,
    product,
    product_all,
    relative_closure,
)


@dataclass(frozen=True)
class PositiveElement:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors or not all(isinstance(f, PLFunction) for f in factors):
            raise ValueError("a positive element needs one or more PL factors")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def scalar(cls, f: PLFunction) -> "PositiveElement":
        return cls((f,))

    @classmethod
    def tensor(cls, *factors: PLFunction) -> "PositiveElement":
        if len(factors) < 2:
            raise ValueError("a tensor needs at least two factors")
        return cls(tuple(factors))

    @property
    def kind(self) -> str:
        return "scalar" if len(self.factors) == 1 else "tensor"

    @cached_property
    def space(self) -> Region:
        return product_all([f.space for f in self.factors])

    @property
    def is_zero(self) -> bool:
        return any(f.is_zero for f in self.factors)

    def __call__(self, *point) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != len(self.factors):
            raise PreconditionError("point has the wrong number of coordinates")
        return reduce(lambda acc, fx: acc * evaluate(*fx), zip(self.factors, point), Fraction(1))

    def to_json(self) -> dict:
        return {"kind": self.kind, "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data: dict) -> "PositiveElement":
        if "factors" not in data and "bp" in data:
            return cls.scalar(PLFunction.from_json(data))
        factors = tuple(PLFunction.from_json(f) for f in data["factors"])
        if data.get("kind", "tensor" if len(factors) > 1 else "scalar") == "scalar" and len(factors) != 1:
            raise ValueError("a scalar element has exactly one factor")
        return cls(factors)


def tensor(a: "PositiveElement | PLFunction", b: "PositiveElement | PLFunction") -> PositiveElement:
    fa = a.factors if isinstance(a, PositiveElement) else (a,)
    fb = b.factors if isinstance(b, PositiveElement) else (b,)
    return PositiveElement(fa + fb)


@dataclass(frozen=True)
class CuntzClass:
    element: PositiveElement

    @cached_property
    def support(self) -> Region:
        return support(self.element)

    @property
    def factors(self) -> tuple:
        return self.element.factors

    @property
    def space(self) -> Region:
        return self.element.space


def as_class(x) -> CuntzClass:
    if isinstance(x, CuntzClass):
        return x
    if isinstance(x, PositiveElement):
        return CuntzClass(x)
    if isinstance(x, PLFunction):
        return CuntzClass(PositiveElement.scalar(x))
    raise TypeError(f"cannot form a Cuntz class from {type(x).__name__}")


def support(e) -> Region:
    """Open support; for tensors the product of the factor supports."""
    if isinstance(e, CuntzClass):
        e = e.element
    if isinstance(e, PLFunction):
        return open_support(e)
    return product_all([open_support(f) for f in e.factors])


def _same_shape(a: CuntzClass, b: CuntzClass, k=None) -> Region:
    if [f.space for f in a.factors] != [f.space for f in b.factors]:
        raise PreconditionError("elements live over different spaces")
    if k is not None and as_region(k) != a.space:
        raise PreconditionError("ambient space does not match the elements")
    return a.space


def cuntz_leq(a, b) -> bool:
    a, b = as_class(a), as_class(b)
    _same_shape(a, b)
    return is_subset(a.support, b.support)


def tensor_leq_lemma(a1, b1, a2, b2) -> bool:
    """``[a1] <= [b1]`` and ``[a2] <= [b2]`` give ``[a1 (x) a2] <= [b1 (x) b2]``."""
    a1, b1, a2, b2 = (as_class(x) for x in (a1, b1, a2, b2))
    if not (cuntz_leq(a1, b1) and cuntz_leq(a2, b2)):
        raise PreconditionError("factor comparisons do not hold")
    return cuntz_leq(tensor(a1.element, a2.element), tensor(b1.element, b2.element))


def way_below_support(a, b, k=None) -> bool:
    """Closure of ``supp a`` (in the ambient space) lies inside ``supp b``."""
    a, b = as_class(a), as_class(b)
    kr = _same_shape(a, b, k)
    return is_subset(relative_closure(a.support, kr), b.support)


def _zero_level(b: CuntzClass) -> Fraction:
    """Constant used for ``[0] << [b]``: half of ``sup b`` per factor (1 for zero factors)."""
    out = Fraction(1)
    for f in b.factors:
        out *= f.sup / 2 if f.sup > 0 else Fraction(1)
    return out


def _factor_minima(a: CuntzClass, b: CuntzClass) -> list[Fraction]:
    """``min b_i`` over ``cl(supp a_i)`` for each factor (``a`` nonzero)."""
    out = []
    for fa, fb in zip(a.factors, b.factors):
        cl = relative_closure(open_support(fa), fa.space)
        out.append(min_over(fb, cl))
    return out


def gp_constant(a, b, k=None) -> Fraction | None:
    """A ``c > 0`` with ``a > 0 => b > c``, or ``None`` when there is none.

    The minimum of ``b`` over the closed support of ``a`` is ``c*``; the returned
    constant is ``c*/2`` per factor, multiplied across tensor factors.
    """
    a, b = as_class(a), as_class(b)
    _same_shape(a, b, k)
    if a.element.is_zero:
        return _zero_level(b)
    minima = _factor_minima(a, b)
    if any(m == 0 for m in minima):
        return None
    return reduce(lambda x, y: x * y, (m / 2 for m in minima), Fraction(1))


def factor_epsilons(a, b, k=None) -> list[Fraction] | None:
    """Per-factor cutdown levels ``eps_i`` with ``supp a_i`` inside ``{b_i > eps_i}``."""
    a, b = as_class(a), as_class(b)
    _same_shape(a, b, k)
    if a.element.is_zero:
        return [f.sup / 2 if f.sup > 0 else Fraction(1) for f in b.factors]
    eps = []
    for fa, fb in zip(a.factors, b.factors):
        m = min_over(fb, relative_closure(open_support(fa), fa.space))
        if m == 0:
            return None
        e = m / 2
        if not is_subset(open_support(fa), superlevel(fb, e)):
            raise AssertionError("cutdown level failed exact re-verification")
        eps.append(e)
    return eps


def way_below_epsilon(a, b, k=None) -> Fraction | None:
    """An ``eps > 0`` with ``[a] <= [(b - eps)+]``, or ``None``.

    For tensors this is the product of the factor levels; validity follows from
    the factor containments since ``b1(x) > e1`` and ``b2(y) > e2`` force
    ``b1(x) b2(y) > e1 e2``.
    """
    eps = factor_epsilons(a, b, k)
    if eps is None:
        return None
    return reduce(lambda x, y: x * y, eps, Fraction(1))


def is_compact_class(a, k=None) -> bool:
    """``[a] << [a]``, decided twice: by closure and by an exact level set."""
    a = as_class(a)
    by_closure = way_below_support(a, a, k)
    if a.element.is_zero:
        by_level = True
    else:
        by_level = True
        for f in a.factors:
            supp = open_support(f)
            m = min_over(f, relative_closure(supp, f.space))
            if m == 0 or superlevel(f, m / 2) != supp:
                by_level = False
                break
    if by_closure != by_level:
        raise AssertionError("compactness checks disagree")
    return by_closure


class InnerProduct:
    """``<f1 (x) f2, g1 (x) g2> = (f1 g1) (x) (f2 g2)``, exposed through eval and support.

    The factor products are piecewise quadratic, so they are kept as pairs.
    """

    def __init__(self, left: PositiveElement, right: PositiveElement):
        if [f.space for f in left.factors] != [g.space for g in right.factors]:
            raise PreconditionError("tensor shapes do not match")
        self.pairs = tuple(zip(left.factors, right.factors))

    def __call__(self, *point) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        out = Fraction(1)
        for (f, g), x in zip(self.pairs, point):
            out *= evaluate(f, x) * evaluate(g, x)
        return out

    @property
    def support(self) -> Region:
        return product_all([intersect(open_support(f), open_support(g)) for f, g in self.pairs])

    @property
    def is_zero(self) -> bool:
        return self.support.is_empty


def module_inner(s: PositiveElement, t: PositiveElement) -> InnerProduct:
    return InnerProduct(s, t)


def tensor_witness_check(e1, u1, v1, e2, u2, v2, k1=None, k2=None) -> bool:
    """Check that ``e1 (x) e2`` witnesses ``U1 x U2 << V1 x V2``.

    Verifies ``0 <= e <= 1``, that the tensor is identically 1 on the closure of
    ``U1 x U2`` and that the closure of its support is compact and inside
    ``V1 x V2``. ``False`` means the tensor witness is invalid.
    """
    k1 = as_region(k1) if k1 is not None else e1.space
    k2 = as_region(k2) if k2 is not None else e2.space
    if e1.space != k1 or e2.space != k2:
        raise PreconditionError("witnesses live on the wrong spaces")
    k = product(k1, k2)
    if max(e1.val) > 1 or max(e2.val) > 1:
        return False
    cl1, cl2 = relative_closure(u1, k1), relative_closure(u2, k2)
    if not (cl1.is_empty or cl2.is_empty):
        if min_over(e1, cl1) * min_over(e2, cl2) != 1:
            return False
    supp = product(open_support(e1), open_support(e2))
    if supp != support(PositiveElement.tensor(e1, e2)):
        return False
    cl = relative_closure(supp, k)
    return is_compact(cl) and is_subset(cl, product(v1, v2))


# -- the epsilon chain for tensor products ----------------------------------


@dataclass
class WayBelowCertificate:
    verdict: bool
    reason: str = ""
    eps1: Fraction | None = None
    eps2: Fraction | None = None
    eps: Fraction | None = None
    c1: Fraction | None = None
    c2: Fraction | None = None
    c: Fraction | None = None
    checks: list = field(default_factory=list)
    audit_points: int = 0
    audit_violations: int = 0

    def record(self, name: str, holds: bool) -> bool:
        self.checks.append((name, bool(holds)))
        return holds

    def to_json(self) -> dict:
        def q(x):
            return None if x is None else str(x)

        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "eps1": q(self.eps1),
            "eps2": q(self.eps2),
            "eps": q(self.eps),
            "c1": q(self.c1),
            "c2": q(self.c2),
            "c": q(self.c),
            "checks": [{"name": n, "holds": h} for n, h in self.checks],
            "audit": {"points": self.audit_points, "violations": self.audit_violations},
        }


def _sample_points(f: PLFunction, rng: random.Random, count: int, extra: Sequence = ()) -> list:
    """Random exact points of ``f``'s domain, plus every breakpoint and ``extra``."""
    comps = f.components
    pts = set(f.bp) | {x for x in extra if f.space.contains_point(x)}
    while len(pts) < count:
        lo, hi = rng.choice(comps)
        pts.add(lo + (hi - lo) * Fraction(rng.randint(0, 1 << 12), 1 << 12))
    return sorted(pts)


def _region_ends(r: Region) -> list:
    return [x for b in r.boxes for x in (b[0].lo, b[0].hi)]


def sampling_audit(
    a1: PLFunction, b1: PLFunction, a2: PLFunction, b2: PLFunction,
    eps1: Fraction, eps2: Fraction, rng: random.Random, per_axis: int = 100,
) -> tuple[int, int]:
    """Grid audit of the chain links on ``per_axis**2`` product points.

    For every sampled ``(x, y)``: ``a1 a2 > 0`` puts it in the product of the
    factor superlevel sets, membership there gives ``b1 b2 > eps1 eps2``, and
    so ``a1 a2 > 0`` gives ``b1 b2 > eps``. Returns (points, violations).
    """
    s1, s2 = superlevel(b1, eps1), superlevel(b2, eps2)
    eps = eps1 * eps2
    xs = _sample_points(b1, rng, per_axis, _region_ends(s1) + _region_ends(open_support(a1)))
    ys = _sample_points(b2, rng, per_axis, _region_ends(s2) + _region_ends(open_support(a2)))
    col_x = [(evaluate(a1, x) > 0, s1.contains_point(x), evaluate(b1, x)) for x in xs]
    col_y = [(evaluate(a2, y) > 0, s2.contains_point(y), evaluate(b2, y)) for y in ys]
    violations = 0
    for ax, inx, bx in col_x:
        for ay, iny, by in col_y:
            pos = ax and ay
            inside = inx and iny
            if pos and not inside:
                violations += 1
            elif (inside or pos) and not bx * by > eps:
                violations += 1
    return len(xs) * len(ys), violations


def tensor_certificate(a1, b1, a2, b2, k1=None, k2=None, *, seed: int = 0, per_axis: int = 100) -> WayBelowCertificate:
    """Certificate for ``[a1 (x) a2] << [b1 (x) b2]`` from the factor relations.

    Chain: ``[a1 (x) a2] <= [(b1-e1)+ (x) (b2-e2)+] <= [(b1 (x) b2 - e1 e2)+]``.
    """
    fs = [as_class(x) for x in (a1, b1, a2, b2)]
    for x in fs:
        if x.element.kind != "scalar":
            raise PreconditionError("tensor_certificate takes scalar factors")
    a1, b1, a2, b2 = (x.factors[0] for x in fs)
    for i, (a, b, k) in enumerate(((a1, b1, k1), (a2, b2, k2)), start=1):
        if a.space != b.space or (k is not None and as_region(k) != a.space):
            raise PreconditionError(f"factor {i}: ambient mismatch")
        if b.is_zero:
            raise PreconditionError(f"factor {i}: b is the zero function")

    cert = WayBelowCertificate(verdict=False)
    for i, (a, b) in enumerate(((a1, b1), (a2, b2)), start=1):
        holds = way_below_support(a, b)
        cert.record(f"factor {i}: closure of supp a inside supp b", holds)
        if not holds:
            cert.reason = f"factor {i} not compactly contained"
            return cert

    cert.c1, cert.c2 = gp_constant(a1, b1), gp_constant(a2, b2)
    cert.c = cert.c1 * cert.c2
    cert.eps1, cert.eps2 = way_below_epsilon(a1, b1), way_below_epsilon(a2, b2)
    cert.eps = cert.eps1 * cert.eps2

    s1, s2 = superlevel(b1, cert.eps1), superlevel(b2, cert.eps2)
    ok = cert.record(
        "link 1: supp(a1) x supp(a2) inside {b1 > eps1} x {b2 > eps2}",
        is_subset(product(open_support(a1), open_support(a2)), product(s1, s2)),
    )
    # b_i > eps_i on s_i and eps_i > 0, so the product exceeds eps1 eps2 there
    lemma = cert.eps1 > 0 and cert.eps2 > 0
    for i, (b, s, e) in enumerate(((b1, s1, cert.eps1), (b2, s2, cert.eps2)), start=1):
        if not s.is_empty:
            cl = relative_closure(s, b.space)
            lemma = lemma and min_over(b, cl) >= e
    ok &= cert.record("link 2: factorization b1(x) b2(y) > eps1 eps2 on the product", lemma)
    ok &= cert.record("combined level eps = eps1 * eps2", cert.eps == cert.eps1 * cert.eps2)
    ok &= cert.record("combined constant c = c1 * c2", cert.c == cert.c1 * cert.c2)

    rng = random.Random(seed)
    cert.audit_points, cert.audit_violations = sampling_audit(
        a1, b1, a2, b2, cert.eps1, cert.eps2, rng, per_axis
    )
    ok &= cert.record("sampling audit", cert.audit_violations == 0)
    cert.verdict = bool(ok)
    cert.reason = "" if ok else "certificate check failed"
    return cert


def cuntz_certificate(a, b, k=None) -> dict:
    """Verdicts of all three deciders plus their constants, as JSON-ready data."""
    a, b = as_class(a), as_class(b)
    by_support = way_below_support(a, b, k)
    c = gp_constant(a, b, k)
    eps = way_below_epsilon(a, b, k)
    factors = factor_epsilons(a, b, k)
    return {
        "leq": cuntz_leq(a, b),
        "way_below": by_support,
        "deciders": {
            "support": by_support,
            "gp_constant": c is not None,
            "epsilon": eps is not None,
        },
        "c": None if c is None else str(c),
        "eps": None if eps is None else str(eps),
        "factor_eps": None if factors is None else [str(e) for e in factors],
        "support_a": a.support.to_json(),
        "support_b": b.support.to_json(),
    }
