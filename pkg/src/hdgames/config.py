"""JSON configs: named constructors for sets, trees and games, plus report encoding."""

from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import canopy as cp
from .hausdorff import RadicalSum
from .schmidt import frac_str, parse_frac


class ValidationError(ValueError):
    """Bad config: carries the offending key."""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


def build_index_set(spec: Any) -> cp.IndexSet:
    try:
        return cp.index_set_from_spec(spec)
    except KeyError as e:
        raise ValidationError(f"unknown index set: {e}", "M") from None


def build_tree(spec: Any) -> cp.TreeOracle:
    name = spec.get("tree", "complete_2") if isinstance(spec, dict) else spec
    trees = cp.make_example_trees()
    if name in trees:
        return trees[name]
    if isinstance(name, str) and name.startswith("complete_"):
        return cp.complete_tree(int(name.split("_", 1)[1]))
    raise ValidationError(f"unknown tree {name!r}", "tree")


def build_target(spec: Any) -> cp.TargetOracle:
    """{"set": "F_M", "M": {...}}, {"set": "cantor_WC"}, {"set": "Y0"}, {"set": "W_delta", ...}, ..."""
    if isinstance(spec, str):
        spec = {"set": spec}
    kind = spec.get("set")
    if kind == "F_M":
        if "M" not in spec:
            raise ValidationError("F_M needs an index set M", "M")
        return cp.make_FM(build_index_set(spec["M"]), int(spec.get("m", 2)))
    if kind in ("Y0", "F_odds"):
        return cp.make_Y0()
    if kind == "cantor_WC":
        return cp.make_cantor_WC(int(spec.get("max_digits", 64)))
    if kind == "full":
        return cp.full_canopy(build_tree(spec) if "tree" in spec else None)
    if kind == "empty":
        return cp.empty_target(build_tree(spec) if "tree" in spec else None)
    if kind == "cylinder":
        return cp.cylinder_target(spec.get("prefix", []), build_tree(spec) if "tree" in spec else None)
    if kind in ("W_delta", "F_K", "F_L"):
        N = build_index_set(spec["N"]) if "N" in spec else cp.default_N()
        delta = parse_frac(spec.get("delta", "3/4"))
        M = build_index_set(spec["M"]) if "M" in spec else cp.default_M(delta, N)
        if kind == "F_K":
            return cp.wdelta_bounds(N, M)[0]
        if kind == "F_L":
            return cp.wdelta_bounds(N, M)[1]
        W = build_target(spec.get("W", {"set": "Y0"}))
        try:
            return cp.make_Wdelta(W, N, M)
        except cp.ConstructionError as e:
            raise ValidationError(str(e), "M") from None
    raise ValidationError(f"unknown set {kind!r}", "set")


@dataclass
class ExperimentConfig:
    cmd: str
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None
    out: Optional[str] = None

    STOCHASTIC = ("mc",)

    def validate(self) -> "ExperimentConfig":
        if self.cmd in self.STOCHASTIC and self.seed is None:
            raise ValidationError(f"{self.cmd} runs need a seed", "seed")
        if self.seed is not None and not (0 <= int(self.seed) < 2**64):
            raise ValidationError("seed must be a 64-bit unsigned integer", "seed")
        for key in ("depth", "trials", "steps", "k", "cap"):
            if key in self.params and int(self.params[key]) <= 0:
                raise ValidationError(f"{key} must be positive", key)
        return self

    @classmethod
    def from_json(cls, d: dict) -> "ExperimentConfig":
        if "cmd" not in d:
            raise ValidationError("config needs a 'cmd'", "cmd")
        params = {k: v for k, v in d.items() if k not in ("cmd", "seed", "out")}
        return cls(d["cmd"], params, d.get("seed"), d.get("out")).validate()

    def to_json(self) -> dict:
        d = {"cmd": self.cmd, **self.params}
        if self.seed is not None:
            d["seed"] = self.seed
        if self.out is not None:
            d["out"] = self.out
        return d


def jsonable(obj: Any) -> Any:
    """Fractions as "p/q", radical values as {"expr", "float"}, enums as their names."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, RadicalSum):
        return {"expr": obj.expr(), "float": float(obj)}
    if isinstance(obj, enum.Enum):
        return str(obj)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if dataclasses.is_dataclass(obj):
        return jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return str(obj)


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True)
