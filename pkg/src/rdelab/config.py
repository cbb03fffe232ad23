"""Run configuration: a JSON document with every rational carried as a string.

    {
      "initial": ["1", "1", "1", "1", "1"],
      "a": {"kind": "constant", "values": ["1"]},
      "b": {"kind": "periodic", "values": ["1", "-1/2"]},
      "steps": 20,
      "seed": 7
    }

``a`` and ``b`` may also be a bare rational string (a constant sequence).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .errors import RdeError
from .model import CoefficientSpec, InitialConditions, parse_rational

KNOWN_FIELDS = ("initial", "a", "b", "steps", "seed")


class ConfigError(RdeError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"config field {field!r}: {message}")
        self.field = field


@dataclass(frozen=True)
class RunConfig:
    initial: Optional[InitialConditions] = None
    a: Optional[CoefficientSpec] = None
    b: Optional[CoefficientSpec] = None
    steps: Optional[int] = None
    seed: Optional[int] = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.initial is not None:
            out["initial"] = self.initial.to_json()
        if self.a is not None:
            out["a"] = self.a.to_json()
        if self.b is not None:
            out["b"] = self.b.to_json()
        if self.steps is not None:
            out["steps"] = self.steps
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: Any) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("<root>", "config must be a JSON object")
        unknown = sorted(set(data) - set(KNOWN_FIELDS))
        if unknown:
            raise ConfigError(unknown[0], "unknown field")
        return cls(
            initial=_parse_initial(data["initial"]) if "initial" in data else None,
            a=_parse_spec("a", data["a"]) if "a" in data else None,
            b=_parse_spec("b", data["b"]) if "b" in data else None,
            steps=_parse_int("steps", data["steps"], minimum=1) if "steps" in data else None,
            seed=_parse_int("seed", data["seed"]) if "seed" in data else None,
        )

    @classmethod
    def loads(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("<root>", f"invalid JSON: {exc}") from None
        return cls.from_json(data)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError("<file>", str(exc)) from None
        return cls.loads(text)

    def require(self, *fields: str) -> None:
        for name in fields:
            if getattr(self, name) is None:
                raise ConfigError(name, "missing")


def _parse_initial(value: Any) -> InitialConditions:
    if isinstance(value, str):
        value = value.split(",")
    if not isinstance(value, list) or len(value) != 5:
        raise ConfigError("initial", "expected a list of five rational strings")
    try:
        return InitialConditions(tuple(parse_rational(v) for v in value))
    except (ValueError, TypeError) as exc:
        raise ConfigError("initial", str(exc)) from None


def _parse_spec(name: str, value: Any) -> CoefficientSpec:
    try:
        return CoefficientSpec.from_json(value)
    except (ValueError, TypeError) as exc:
        raise ConfigError(name, str(exc)) from None


def _parse_int(name: str, value: Any, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(name, "expected an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(name, f"must be >= {minimum}")
    return value


def parse_initial_text(text: str) -> InitialConditions:
    """``"1,2,1,1,1"`` -> seeds x_{-4}..x_0."""
    return _parse_initial([s.strip() for s in text.split(",")])
