"""Named target functions with hand-coded derivatives."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict

Func = Callable[[float], float]


@dataclass(frozen=True)
class TargetFunction:
    name: str
    f: Func
    d1: Func
    d2: Func

    def __call__(self, t: float) -> float:
        return self.f(t)


def _runge(t):
    u = t - 0.5
    return 1.0 / (1.0 + 25.0 * u * u)


def _runge_d1(t):
    u = t - 0.5
    g = 1.0 + 25.0 * u * u
    return -50.0 * u / (g * g)


def _runge_d2(t):
    u = t - 0.5
    g = 1.0 + 25.0 * u * u
    return (3750.0 * u * u - 50.0) / g**3


def _kink(value):
    # derivative of |t - 1/2| does not exist at the kink
    def d(t):
        return math.nan if t == 0.5 else value(t)
    return d


FUNCTIONS: Dict[str, TargetFunction] = {
    "exp": TargetFunction("exp", math.exp, math.exp, math.exp),
    "sin": TargetFunction("sin", math.sin, math.cos, lambda t: -math.sin(t)),
    "square": TargetFunction("square", lambda t: t * t, lambda t: 2.0 * t, lambda t: 2.0),
    "abs": TargetFunction(
        "abs", lambda t: abs(t - 0.5), _kink(lambda t: math.copysign(1.0, t - 0.5)), _kink(lambda t: 0.0)
    ),
    "runge": TargetFunction("runge", _runge, _runge_d1, _runge_d2),
    "linear": TargetFunction("linear", lambda t: t, lambda t: 1.0, lambda t: 0.0),
    "const": TargetFunction("const", lambda t: 1.0, lambda t: 0.0, lambda t: 0.0),
}

ALIASES = {"id": "linear", "identity": "linear", "t2": "square", "t^2": "square"}


def get_function(name: str) -> TargetFunction:
    key = ALIASES.get(name, name)
    try:
        return FUNCTIONS[key]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; choose from {sorted(FUNCTIONS) + sorted(ALIASES)}")
