"""Seeded verification campaigns, one per theorem.

Each verifier draws one hypothesis-satisfying instance from its own RNG
(seeded from the campaign seed and the instance index, so results do not depend
on scheduling) and returns whether every check passed.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import generators as gen
from .cuntz import (
    PositiveElement,
    gp_constant,
    tensor_certificate,
    tensor_witness_check,
    way_below_epsilon,
    way_below_support,
    cuntz_leq,
)
from .ideals import Ideal, ideal_compactly_contained, ideal_from_generators, ideal_tensor, is_proper
from .instances import Instance, generators_instance, pair_instance, quadruple_instance, region_instance
from .plfunc import (
    NotCompactlyContained,
    add,
    evaluate,
    min_over,
    open_support,
    urysohn,
)
from .region import (
    closure,
    compactly_contained,
    difference,
    exhaustion_capture,
    is_compact,
    is_subset,
    product,
    relative_closure,
)

EXHAUSTION_LIMIT = 64


@dataclass
class Outcome:
    ok: bool
    instance: Instance
    record: dict = field(default_factory=dict)


def instance_rng(theorem: str, seed: int, index: int) -> random.Random:
    return random.Random(f"wbk/{theorem}/{seed}/{index}")


def _product_containment(rng: random.Random, index: int) -> Outcome:
    d1 = 1 if rng.random() < 0.8 else 2
    d2 = 1 if rng.random() < 0.8 else 2
    u1, v1, k1 = gen.compact_triple(rng, d1)
    u2, v2, k2 = gen.compact_triple(rng, d2)
    inst = Instance(
        "region-pair",
        {"first": region_instance(u1, v1, k1), "second": region_instance(u2, v2, k2)},
    )
    hyp = compactly_contained(u1, v1, k1) and compactly_contained(u2, v2, k2)
    identity = closure(product(u1, u2)) == product(closure(u1), closure(u2))
    verdict = compactly_contained(product(u1, u2), product(v1, v2), product(k1, k2))
    ideal = ideal_compactly_contained(
        ideal_tensor(Ideal(k1, u1), Ideal(k2, u2)), ideal_tensor(Ideal(k1, v1), Ideal(k2, v2))
    )
    return Outcome(hyp and identity and verdict and ideal, inst, {"dims": [d1, d2]})


def _urysohn_ok(e, u, v, k) -> bool:
    cl = relative_closure(u, k)
    if not cl.is_empty and min_over(e, cl) != 1:
        return False
    if max(e.val) > 1:
        return False
    scl = relative_closure(open_support(e), k)
    return is_compact(scl) and is_subset(scl, v)


def _urysohn_tensor(rng: random.Random, index: int) -> Outcome:
    if index % 2 == 0:
        u1, v1, k1 = gen.compact_triple(rng, 1, True)
        u2, v2, k2 = gen.compact_triple(rng, 1, True)
        inst = Instance(
            "region-pair",
            {"first": region_instance(u1, v1, k1), "second": region_instance(u2, v2, k2)},
        )
        try:
            e1, e2 = urysohn(u1, v1, k1), urysohn(u2, v2, k2)
        except NotCompactlyContained:
            return Outcome(False, inst, {"positive": True, "reason": "witness missing"})
        ok = _urysohn_ok(e1, u1, v1, k1) and _urysohn_ok(e2, u2, v2, k2)
        ok = ok and tensor_witness_check(e1, u1, v1, e2, u2, v2, k1, k2)
        return Outcome(ok, inst, {"positive": True})
    u, v, k = gen.compact_triple(rng, 1, False)
    inst = region_instance(u, v, k)
    if compactly_contained(u, v, k):
        return Outcome(False, inst, {"positive": False, "reason": "generator produced a positive"})
    try:
        urysohn(u, v, k)
    except NotCompactlyContained:
        return Outcome(True, inst, {"positive": False})
    return Outcome(False, inst, {"positive": False, "reason": "witness built without compact containment"})


def _epsilon_chain(rng: random.Random, index: int) -> Outcome:
    k1, k2 = gen.random_space_1d(rng), gen.random_space_1d(rng)
    a1, b1 = gen.way_below_pair(rng, k1)
    a2, b2 = gen.way_below_pair(rng, k2)
    inst = quadruple_instance(a1, b1, a2, b2)
    cert = tensor_certificate(a1, b1, a2, b2, k1, k2, seed=rng.getrandbits(32))
    # the tensor relation decided directly on the product, independent of the chain
    direct = way_below_support(PositiveElement.tensor(a1, a2), PositiveElement.tensor(b1, b2))
    ok = (
        cert.verdict
        and direct
        and cert.eps == cert.eps1 * cert.eps2
        and cert.audit_points >= 10_000
        and cert.audit_violations == 0
    )
    record = {"eps1": str(cert.eps1), "eps2": str(cert.eps2), "eps": str(cert.eps)}
    return Outcome(bool(ok), inst, record)


def decider_verdicts(a, b) -> tuple[bool, bool, bool]:
    return (
        way_below_support(a, b),
        gp_constant(a, b) is not None,
        way_below_epsilon(a, b) is not None,
    )


def _agreement(rng: random.Random, index: int) -> Outcome:
    k = gen.random_space_1d(rng)
    if index % 5 == 0:
        a, b = gen.touching_pair(rng, k)
    elif rng.random() < 0.4:
        a, b = gen.way_below_pair(rng, k)
    else:
        a, b = gen.random_pl(rng, k), gen.random_pl(rng, k)
    verdicts = decider_verdicts(a, b)
    ok = len(set(verdicts)) == 1 and (not verdicts[0] or cuntz_leq(a, b))
    record = {
        "adversarial": index % 5 == 0,
        "touching": gen.supports_touch(a, b),
        "way_below": verdicts[0],
    }
    return Outcome(ok, pair_instance(a, b), record)


def _exhaustion(rng: random.Random, index: int) -> Outcome:
    dim = 1 if rng.random() < 0.7 else 2
    u, v, k = gen.compact_triple(rng, dim, want=rng.random() < 0.5)
    cc = compactly_contained(u, v, k)
    n = exhaustion_capture(u, v, k, EXHAUSTION_LIMIT)
    return Outcome((n is not None) == cc, region_instance(u, v, k), {"captured_at": n, "compact": cc})


def _properness(rng: random.Random, index: int) -> Outcome:
    k = gen.random_space_1d(rng)
    gens = gen.random_generators(rng, k)
    inst = generators_instance(k, gens)
    try:
        ideal = ideal_from_generators(gens, k)
        verdict = is_proper(ideal)
    except AssertionError:
        return Outcome(False, inst, {"reason": "internal disagreement"})
    locus = difference(k, ideal.carrier)
    by_carrier = ideal.carrier != k
    by_locus = not locus.is_empty
    by_sum = True if not gens else min_over(add(*gens), k) == 0
    probes = {x for bx in locus.boxes for x in (bx[0].lo, bx[0].hi)}
    for g in gens:
        probes |= {x for x in g.bp if locus.contains_point(x)}
    vanish = all(evaluate(g, x) == 0 for g in gens for x in probes)
    ok = verdict == by_carrier == by_locus == by_sum and vanish
    return Outcome(ok, inst, {"proper": verdict, "generators": len(gens)})


VERIFIERS = {
    "prop32": _product_containment,
    "thm41": _urysohn_tensor,
    "thm42": _epsilon_chain,
    "agreement": _agreement,
    "exhaustion": _exhaustion,
    "appendixA": _properness,
}


def run_one(theorem: str, seed: int, index: int) -> tuple[int, bool, dict, dict | None]:
    rng = instance_rng(theorem, seed, index)
    out = VERIFIERS[theorem](rng, index)
    return index, out.ok, out.record, None if out.ok else out.instance.to_json()


def _run_packed(args):
    return run_one(*args)


@dataclass
class CampaignReport:
    theorem: str
    seed: int
    count: int
    passed: int
    failed: int
    first_counterexample: dict | None
    stats: dict
    records: list
    wall_time: float | None = None

    def to_json(self, timestamps: bool = True) -> dict:
        out = {
            "theorem": self.theorem,
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "failed": self.failed,
            "first_counterexample": self.first_counterexample,
            "stats": self.stats,
            "records": self.records,
        }
        if timestamps and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def dumps(self) -> str:
        timestamps = os.environ.get("WBK_NO_TIMESTAMP") != "1"
        return json.dumps(self.to_json(timestamps), indent=2, sort_keys=True)


def _stats(theorem: str, results) -> dict:
    recs = [r for _, _, r, _ in results]
    if theorem == "agreement":
        return {
            "adversarial_touching": sum(r["adversarial"] and r["touching"] for r in recs),
            "touching_pairs": sum(r["touching"] for r in recs),
            "way_below_true": sum(r["way_below"] for r in recs),
        }
    if theorem == "thm41":
        return {"positive": sum(r["positive"] for r in recs), "negative": sum(not r["positive"] for r in recs)}
    if theorem == "exhaustion":
        return {
            "compact": sum(r["compact"] for r in recs),
            "max_capture": max((r["captured_at"] for r in recs if r["captured_at"]), default=None),
        }
    if theorem == "appendixA":
        return {"proper": sum(r["proper"] for r in recs)}
    if theorem == "prop32":
        return {"product_dims": {str(d): sum(sum(r["dims"]) == d for r in recs) for d in (2, 3, 4)}}
    return {}


def run_campaign(theorem: str, count: int, seed: int, jobs: int = 1) -> CampaignReport:
    if theorem not in VERIFIERS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if count < 1:
        raise ValueError("count must be at least 1")
    start = time.perf_counter()
    tasks = [(theorem, seed, i) for i in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_packed, tasks, chunksize=max(1, count // (4 * jobs))))
    else:
        results = [run_one(*t) for t in tasks]
    results.sort(key=lambda r: r[0])
    failures = [r for r in results if not r[1]]
    records = [dict(index=i, ok=ok, **rec) for i, ok, rec, _ in results] if theorem == "thm42" else []
    return CampaignReport(
        theorem=theorem,
        seed=seed,
        count=count,
        passed=count - len(failures),
        failed=len(failures),
        first_counterexample=None if not failures else {"index": failures[0][0], "instance": failures[0][3]},
        stats=_stats(theorem, results),
        records=records,
        wall_time=time.perf_counter() - start,
    )
