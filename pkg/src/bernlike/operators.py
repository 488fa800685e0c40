"""Bernstein-like operators, their moments and Voronovskaja-type estimators."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .basis_core import basis_grid
from .errors import InvalidDegree
from .families import FamilySpec, alpha_family

Func = Callable[[float], float]


@dataclass(frozen=True)
class OperatorSample:
    """Node values f(k/n), k = 0..n, of a target function."""

    family: FamilySpec
    degree: int
    node_values: Tuple[float, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidDegree(f"degree must be >= 1, got {self.degree}")
        if len(self.node_values) != self.degree + 1:
            raise ValueError(f"expected {self.degree + 1} node values, got {len(self.node_values)}")

    @classmethod
    def from_function(cls, family: FamilySpec, n: int, f: Func) -> "OperatorSample":
        return cls(family, n, tuple(float(f(k / n)) for k in range(n + 1)))

    @classmethod
    def from_values(cls, family: FamilySpec, values: Sequence[float]) -> "OperatorSample":
        return cls(family, len(values) - 1, tuple(float(v) for v in values))


def _weighted_sum(basis: np.ndarray, values: Sequence[float]) -> np.ndarray:
    # left-to-right over k, independent of BLAS reduction order
    acc = np.zeros(basis.shape[:-1])
    for k, v in enumerate(values):
        acc = acc + basis[..., k] * v
    return acc


def operator_grid(sample: OperatorSample, z) -> np.ndarray:
    """B_n(f; z) on an array of abscissae."""
    z = np.asarray(z, dtype=float)
    return _weighted_sum(basis_grid(sample.family, sample.degree, z), sample.node_values)


def apply_operator(sample: OperatorSample, z: float) -> float:
    z = float(z)
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z={z} outside [0, 1]")
    return float(operator_grid(sample, np.array([z]))[0])


# -- moments -------------------------------------------------------------------

class Route(enum.Enum):
    DIRECT = "direct"
    RECURRENCE = "recurrence"


@dataclass(frozen=True)
class MomentValue:
    power: int
    degree: int
    alpha: float
    z: float
    value: float
    route: Route


def moment_direct(n: int, j: int, alpha: float, z: float) -> MomentValue:
    """Brute-force sum_k (k/n)^j F_{n,k}(z), with 0^0 = 1."""
    if n < 1:
        raise InvalidDegree(f"degree must be >= 1, got {n}")
    if j < 0:
        raise ValueError("power must be >= 0")
    nodes = [(k / n) ** j for k in range(n + 1)]
    basis = basis_grid(alpha_family(alpha), n, np.array([float(z)]))[0]
    value = 0.0
    for w, v in zip(basis, nodes):
        value += w * v
    return MomentValue(j, n, alpha, float(z), float(value), Route.DIRECT)


def moment_table(n: int, p: int, alpha: float, z: float) -> np.ndarray:
    """Table T[d, q] = B_d(t^q; z) for d = 2..n, q = 0..p via the recurrence

        B_d(t^q) = (1 - 1/d)^q [(1 - z) B_{d-1}(t^q)
                   + z sum_{k=0}^{q} C(q, k) (d - 1)^{-k} B_{d-1}(t^{q-k})]

    seeded at d = 2 by direct summation. Rows below 2 are left as NaN. The
    table is local to the call.
    """
    if n < 2:
        raise InvalidDegree(f"the moment recurrence needs n >= 2, got {n}")
    table = np.full((n + 1, p + 1), np.nan)
    for q in range(p + 1):
        table[2, q] = moment_direct(2, q, alpha, z).value
    for d in range(3, n + 1):
        prev = table[d - 1]
        table[d, 0] = 1.0
        for q in range(1, p + 1):
            inner = 0.0
            for k in range(q + 1):
                inner += comb(q, k) / (d - 1) ** k * prev[q - k]
            table[d, q] = (1.0 - 1.0 / d) ** q * ((1.0 - z) * prev[q] + z * inner)
    return table


def moment_recurrence(n: int, p: int, alpha: float, z: float) -> MomentValue:
    """B_n^alpha(t^p; z) through the degree recurrence (p is the target power)."""
    if p < 0:
        raise ValueError("power must be >= 0")
    table = moment_table(n, p, alpha, float(z))
    return MomentValue(p, n, alpha, float(z), float(table[n, p]), Route.RECURRENCE)


# -- Voronovskaja-type limits --------------------------------------------------

@dataclass(frozen=True)
class LimitEstimate:
    degree_sequence: Tuple[int, ...]
    estimates: Tuple[float, ...]
    target: float
    z: float

    def __post_init__(self):
        d = self.degree_sequence
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ValueError("degree_sequence must be strictly increasing")

    @property
    def abs_errors(self) -> Tuple[float, ...]:
        return tuple(abs(e - self.target) for e in self.estimates)


def _check_limit_args(z: float, degrees: Sequence[int]) -> Tuple[int, ...]:
    if not 0.0 < z < 1.0:
        raise ValueError("z must lie in the open interval (0, 1)")
    degrees = tuple(int(n) for n in degrees)
    if any(n < 2 for n in degrees):
        raise InvalidDegree("all degrees must be >= 2")
    return degrees


def _apply(family: FamilySpec, n: int, f: Func, z: float) -> float:
    return apply_operator(OperatorSample.from_function(family, n, f), z)


def voronovskaja_estimate(f: Func, f_second: Func, alpha: float, z: float,
                          degrees: Sequence[int], family: FamilySpec | None = None) -> LimitEstimate:
    """n (B_n(f; z) - f(z)) for each n, against 1/2 z (1 - z) f''(z)."""
    degrees = _check_limit_args(z, degrees)
    family = family or alpha_family(alpha)
    fz = f(z)
    est = tuple(n * (_apply(family, n, f, z) - fz) for n in degrees)
    target = 0.5 * z * (1.0 - z) * f_second(z)
    return LimitEstimate(degrees, est, float(target), z)


def gruss_voronovskaja_estimate(f: Func, f_prime: Func, h: Func, h_prime: Func, alpha: float,
                                z: float, degrees: Sequence[int],
                                family: FamilySpec | None = None) -> LimitEstimate:
    """n (B_n(fh; z) - B_n(f; z) B_n(h; z)) against z (1 - z) f'(z) h'(z)."""
    degrees = _check_limit_args(z, degrees)
    family = family or alpha_family(alpha)
    fh = lambda t: f(t) * h(t)  # noqa: E731
    est = []
    for n in degrees:
        basis = basis_grid(family, n, np.array([z]))[0]
        nodes = [k / n for k in range(n + 1)]
        bf = _weighted_sum(basis, [f(t) for t in nodes])
        bh = _weighted_sum(basis, [h(t) for t in nodes])
        bfh = _weighted_sum(basis, [fh(t) for t in nodes])
        est.append(float(n * (bfh - bf * bh)))
    target = z * (1.0 - z) * f_prime(z) * h_prime(z)
    return LimitEstimate(degrees, tuple(est), float(target), z)


def convergence_table(f: Func, spec: FamilySpec, degrees: Sequence[int],
                      grid: int = 1001) -> List[Tuple[int, float]]:
    """(n, max |B_n(f; z) - f(z)|) over a uniform grid, per degree."""
    z = np.linspace(0.0, 1.0, grid)
    fz = np.array([f(t) for t in z], dtype=float)
    rows = []
    for n in degrees:
        approx = operator_grid(OperatorSample.from_function(spec, int(n), f), z)
        rows.append((int(n), float(np.max(np.abs(approx - fz)))))
    return rows
