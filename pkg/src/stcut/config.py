"""Ensemble specification files.

A spec is a JSON object; fractions and probabilities are strings such as
``"1/3"`` so they survive parsing exactly::

    {"n": 120,
     "degree_fractions": {"3": "1/3", "4": "1/3", "5": "1/5", "6": "2/15"},
     "weights": {"1": "1"},
     "delta_max": 12, "mode": "simple", "samples": 10000, "seed": 1}
"""
from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional

from .ensemble import MODES, SIMPLE, DegreeDistribution, EnsembleError, WeightDistribution

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class SpecError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` exactly; decimals are refused."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise SpecError(f"expected a rational string like '1/3', got {text!r}")
    match = _RATIONAL.match(text)
    if not match:
        raise SpecError(f"malformed rational {text!r}; use 'a/b' or an integer")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise SpecError(f"malformed rational {text!r}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def _parse_int_key(key: str, what: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise SpecError(f"{what} key {key!r} is not an integer") from None


@dataclass
class EnsembleSpec:
    n: int
    degree_fractions: Dict[str, str]
    weights: Dict[str, str] = field(default_factory=lambda: {"1": "1"})
    delta_max: int = 12
    mode: str = SIMPLE
    samples: int = 10**4
    seed: Optional[int] = None

    def __post_init__(self):
        self.degree_distribution()
        self.weight_distribution()
        if self.mode not in MODES:
            raise SpecError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.delta_max < 1:
            raise SpecError("delta_max must be at least 1")
        if self.samples < 1:
            raise SpecError("samples must be at least 1")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise SpecError("seed must be an unsigned 64-bit integer")

    def degree_distribution(self) -> DegreeDistribution:
        fr = {_parse_int_key(k, "degree"): parse_rational(v)
              for k, v in self.degree_fractions.items()}
        try:
            return DegreeDistribution(self.n, fr)
        except EnsembleError as exc:
            raise SpecError(str(exc)) from None

    def weight_distribution(self) -> WeightDistribution:
        mass = {_parse_int_key(k, "weight"): parse_rational(v) for k, v in self.weights.items()}
        if not mass:
            raise SpecError("weights must not be empty")
        try:
            return WeightDistribution(max(mass), mass)
        except EnsembleError as exc:
            raise SpecError(str(exc)) from None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["degree_fractions"] = {k: self.degree_fractions[k]
                                 for k in sorted(self.degree_fractions, key=int)}
        d["weights"] = {k: self.weights[k] for k in sorted(self.weights, key=int)}
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "EnsembleSpec":
        if not isinstance(data, dict):
            raise SpecError("spec must be a JSON object")
        known = {"n", "degree_fractions", "weights", "delta_max", "mode", "samples", "seed"}
        extra = set(data) - known
        if extra:
            raise SpecError(f"unknown spec keys: {', '.join(sorted(extra))}")
        for key in ("n", "degree_fractions"):
            if key not in data:
                raise SpecError(f"spec is missing required key {key!r}")
        kwargs = dict(data)
        kwargs["degree_fractions"] = {str(k): v for k, v in data["degree_fractions"].items()}
        if "weights" in data:
            kwargs["weights"] = {str(k): v for k, v in data["weights"].items()}
        return cls(**kwargs)

    @classmethod
    def loads(cls, text: str) -> "EnsembleSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"spec is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "EnsembleSpec":
        return cls.loads(Path(path).read_text())


# Ensembles used in the numerical experiments.
SPARSE = EnsembleSpec(
    n=120, degree_fractions={"3": "1/3", "4": "1/3", "5": "1/5", "6": "2/15"},
    delta_max=12, mode="simple", seed=1)
DENSE = EnsembleSpec(
    n=120, degree_fractions={"7": "1/3", "8": "1/3", "9": "1/5", "10": "2/15"},
    delta_max=14, mode="multigraph", seed=2)
WIDE = EnsembleSpec(
    n=120, degree_fractions={"6": "1/24", "7": "1/24", "8": "1/12", "9": "1/6", "10": "1/3",
                             "11": "1/6", "12": "1/12", "13": "1/24", "14": "1/24"},
    delta_max=16, mode="multigraph", seed=3)
PRESETS = {"sparse": SPARSE, "dense": DENSE, "wide": WIDE}
