"""Tagged problem instances and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .cuntz import PositiveElement
from .ideals import Ideal
from .order import FinitePoset
from .plfunc import PLFunction
from .region import Region, to_scalar

# kind -> {field: codec}
_REGION = (Region.from_json, lambda r: r.to_json())
_PL = (PLFunction.from_json, lambda f: f.to_json())
_ELEM = (PositiveElement.from_json, lambda e: e.to_json())
_POSET = (FinitePoset.from_json, lambda p: p.to_json())
_IDEAL = (Ideal.from_json, lambda i: i.to_json())
_PLS = (lambda xs: tuple(PLFunction.from_json(g) for g in xs), lambda gs: [g.to_json() for g in gs])
_NESTED = (lambda d: Instance.from_json(d), lambda i: i.to_json())
_INT = (int, int)
_SCALAR = (to_scalar, str)

SCHEMAS = {
    "region-ll": {"U": _REGION, "V": _REGION, "K": _REGION},
    "region-pair": {"first": _NESTED, "second": _NESTED},
    "cuntz-ll": {"a": _ELEM, "b": _ELEM},
    "factor-quadruple": {"a1": _PL, "b1": _PL, "a2": _PL, "b2": _PL},
    "poset-ll": {"poset": _POSET, "x": _INT, "y": _INT},
    "ideal-ll": {"I": _IDEAL, "J": _IDEAL},
    "function": {"f": _PL, "eps": _SCALAR},
    "generators": {"K": _REGION, "generators": _PLS},
}

OPTIONAL = {("cuntz-ll", "K"): _REGION, ("function", "eps"): _SCALAR}


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    kind: str
    payload: dict

    def __getitem__(self, key):
        return self.payload[key]

    def get(self, key, default=None):
        return self.payload.get(key, default)

    def __eq__(self, other):
        return isinstance(other, Instance) and self.kind == other.kind and self.payload == other.payload

    def __hash__(self):
        return hash(self.kind)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for key, value in self.payload.items():
            codec = SCHEMAS[self.kind].get(key) or OPTIONAL.get((self.kind, key))
            out[key] = codec[1](value)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Instance":
        if not isinstance(data, dict) or "kind" not in data:
            raise InstanceError("instance must be a JSON object with a 'kind' field")
        kind = data["kind"]
        if kind not in SCHEMAS:
            raise InstanceError(f"unknown instance kind {kind!r}")
        payload = {}
        try:
            for key, codec in SCHEMAS[kind].items():
                if key not in data:
                    if (kind, key) in OPTIONAL:
                        continue
                    raise InstanceError(f"{kind} instance is missing {key!r}")
                payload[key] = codec[0](data[key])
            for (k, key), codec in OPTIONAL.items():
                if k == kind and key in data and key not in payload:
                    payload[key] = codec[0](data[key])
        except InstanceError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"malformed {kind} instance: {exc}") from exc
        return cls(kind, payload)


def load(path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    return Instance.from_json(data)


def region_instance(u: Region, v: Region, k: Region) -> Instance:
    return Instance("region-ll", {"U": u, "V": v, "K": k})


def quadruple_instance(a1, b1, a2, b2) -> Instance:
    return Instance("factor-quadruple", {"a1": a1, "b1": b1, "a2": a2, "b2": b2})


def pair_instance(a, b) -> Instance:
    wrap = lambda f: f if isinstance(f, PositiveElement) else PositiveElement.scalar(f)
    return Instance("cuntz-ll", {"a": wrap(a), "b": wrap(b)})


def generators_instance(k: Region, gens) -> Instance:
    return Instance("generators", {"K": k, "generators": tuple(gens)})
