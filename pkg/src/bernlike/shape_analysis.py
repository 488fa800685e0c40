"""Monotonicity and convexity preservation checks on a uniform grid.

A system {h_0..h_n} preserves monotonicity iff the cumulative tail
k_0 = sum_j h_j is constant and every k_i = sum_{j>=i} h_j, i >= 1, is
nondecreasing. The checks below verify these conditions, and the
monotone/convex images of data vectors, by scanning derivatives on a grid:
exact Bernstein-coefficient derivatives for polynomial phi, finite
differences otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .basis_core import (
    _fd_grid,
    basis_coeff_matrix,
    basis_derivative_grid,
    basis_grid,
    derivative_coeffs,
    poly_eval,
)
from .errors import IndexOutOfRange, InvalidDegree, NotConvex, NotIncreasing
from .families import FamilySpec

FIRST_DERIVATIVE_TOL = 1e-9
SECOND_DERIVATIVE_TOL = 1e-8
FINITE_DIFFERENCE_TOL = 1e-5
DEFAULT_GRID = 1001


class DataClass(enum.Enum):
    INCREASING = "increasing"
    CONVEX = "convex"
    GENERAL = "general"


class CheckKind(enum.Enum):
    MONOTONE_PRESERVING = "monotone_preserving"
    MONOTONE_IMAGE = "monotone_image"
    CONVEX_IMAGE = "convex_image"


def is_increasing(values) -> bool:
    v = np.asarray(values, dtype=float)
    return bool(np.all(v[1:] >= v[:-1]))


def is_convex(values) -> bool:
    v = np.asarray(values, dtype=float)
    return bool(np.all(v[2:] - 2.0 * v[1:-1] + v[:-2] >= 0.0))


@dataclass(frozen=True)
class DataVector:
    values: Tuple[float, ...]
    classification: DataClass = DataClass.GENERAL

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) < 2:
            raise ValueError("a data vector needs at least two entries")

    @property
    def degree(self) -> int:
        return len(self.values) - 1

    def validate(self) -> None:
        """Raise if the values contradict the declared classification (no slack)."""
        if self.classification is DataClass.INCREASING and not is_increasing(self.values):
            raise NotIncreasing("data values are not nondecreasing")
        if self.classification is DataClass.CONVEX and not is_convex(self.values):
            raise NotConvex("data values have a negative second difference")


@dataclass(frozen=True)
class ShapeReport:
    check_kind: CheckKind
    passed: bool
    extremal_value: float
    extremal_z: float
    tolerance_used: float
    grid_size: int
    # (i, min derivative of k_i, location) for the basis check
    per_index: Tuple[Tuple[int, float, float], ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "check_kind": self.check_kind.value,
            "pass": self.passed,
            "extremal_value": self.extremal_value,
            "extremal_z": self.extremal_z,
            "tolerance_used": self.tolerance_used,
            "grid_size": self.grid_size,
            "per_index": [list(r) for r in self.per_index],
        }


def default_tolerance(spec: FamilySpec, order: int) -> float:
    if not spec.is_polynomial:
        return FINITE_DIFFERENCE_TOL
    return FIRST_DERIVATIVE_TOL if order == 1 else SECOND_DERIVATIVE_TOL


def _grid(grid: int) -> np.ndarray:
    if grid < 2:
        raise ValueError("grid must have at least two points")
    return np.linspace(0.0, 1.0, grid)


def _argmin(values: np.ndarray, z: np.ndarray) -> Tuple[float, float]:
    # np.argmin returns the first hit, i.e. the smallest z on ties
    i = int(np.argmin(values))
    return float(values[i]), float(z[i])


def cumulative_tail(spec: FamilySpec, n: int, i: int, z: float) -> float:
    """k_i(z) = sum_{j=i}^{n} F_{n,j}(z)."""
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"i={i} outside 0..{n}")
    row = basis_grid(spec, n, np.array([float(z)]))[0]
    total = 0.0
    for v in row[i:]:
        total += v
    return float(total)


def _tails(values: np.ndarray) -> np.ndarray:
    # reverse cumulative sum along the last axis
    return np.flip(np.cumsum(np.flip(values, -1), -1), -1)


def tail_derivative_grid(spec: FamilySpec, n: int, z) -> np.ndarray:
    """d/dz k_i(z) for i = 0..n on ``z``; shape ``z.shape + (n + 1,)``."""
    z = np.asarray(z, dtype=float)
    if spec.is_polynomial:
        coeffs = _tails(np.asarray(basis_coeff_matrix(spec, n)).T).T
        return poly_eval(derivative_coeffs(coeffs, 1), z)
    return _fd_grid(lambda t: _tails(basis_grid(spec, n, t)), z, 1)


def check_monotonicity_preserving_basis(spec: FamilySpec, n: int, grid: int = DEFAULT_GRID,
                                        tol: Optional[float] = None) -> ShapeReport:
    if n < 2:
        raise InvalidDegree("the basis check needs n >= 2")
    tol = default_tolerance(spec, 1) if tol is None else tol
    z = _grid(grid)

    k0_dev = np.abs(basis_grid(spec, n, z).sum(axis=-1) - 1.0)
    dk = tail_derivative_grid(spec, n, z)
    per_index = []
    for i in range(1, n + 1):
        v, at = _argmin(dk[:, i], z)
        per_index.append((i, v, at))
    worst, worst_z = _argmin(dk[:, 1:].min(axis=1), z)
    # a non-constant k_0 counts as a violation of size max |k_0 - 1|
    dev, dev_z = _argmin(-k0_dev, z)
    if dev < worst and -dev > tol:
        worst, worst_z = dev, dev_z
    return ShapeReport(CheckKind.MONOTONE_PRESERVING, worst >= -tol, worst, worst_z, tol, grid,
                       tuple(per_index))


def _image_derivative(spec: FamilySpec, values: Sequence[float], z: np.ndarray,
                      order: int) -> np.ndarray:
    n = len(values) - 1
    v = np.asarray(values, dtype=float)
    if spec.is_polynomial:
        coeffs = v @ np.asarray(basis_coeff_matrix(spec, n))
        return poly_eval(derivative_coeffs(coeffs, order), z)[:, 0]
    d = basis_derivative_grid(spec, n, z, order)
    acc = np.zeros(z.shape)
    for k in range(n + 1):
        acc = acc + d[:, k] * v[k]
    return acc


def _image_check(kind: CheckKind, order: int, spec: FamilySpec, data: DataVector, grid: int,
                 tol: Optional[float]) -> ShapeReport:
    data.validate()
    tol = default_tolerance(spec, order) if tol is None else tol
    z = _grid(grid)
    g = _image_derivative(spec, data.values, z, order)
    worst, at = _argmin(g, z)
    return ShapeReport(kind, worst >= -tol, worst, at, tol, grid)


def check_monotone_image(spec: FamilySpec, data: DataVector, grid: int = DEFAULT_GRID,
                         tol: Optional[float] = None) -> ShapeReport:
    """Minimum of G'(z), G = sum_i nu_i F_{n,i}, for nondecreasing data."""
    if data.classification is not DataClass.INCREASING:
        data = DataVector(data.values, DataClass.INCREASING)
    return _image_check(CheckKind.MONOTONE_IMAGE, 1, spec, data, grid, tol)


def check_convex_image(spec: FamilySpec, data: DataVector, grid: int = DEFAULT_GRID,
                       tol: Optional[float] = None) -> ShapeReport:
    """Minimum of G''(z), G = sum_i lambda_i F_{n,i}, for convex data."""
    if data.classification is not DataClass.CONVEX:
        data = DataVector(data.values, DataClass.CONVEX)
    return _image_check(CheckKind.CONVEX_IMAGE, 2, spec, data, grid, tol)


def second_derivative_form_n2(alpha: float, values: Sequence[float]) -> float:
    """G'' for n = 2 in the alpha family: 2 alpha (l2 - 2 l1 + l0), constant in z."""
    l0, l1, l2 = values
    return 2.0 * alpha * (l2 - 2.0 * l1 + l0)


# -- random data -----------------------------------------------------------------

def random_increasing_data(rng: np.random.Generator, n: int) -> DataVector:
    """Sorted uniform samples on [0, 1]."""
    return DataVector(np.sort(rng.uniform(size=n + 1)), DataClass.INCREASING)


def random_convex_data(rng: np.random.Generator, n: int) -> DataVector:
    """Cumulative sums of sorted uniform increments, redrawn on rounding ties."""
    while True:
        increments = np.sort(rng.uniform(-1.0, 1.0, size=n))
        values = np.concatenate([[0.0], np.cumsum(increments)])
        if is_convex(values):
            return DataVector(values, DataClass.CONVEX)
