"""Starting triples (a, b, phi) and their numerical validation.

A family of Bernstein-like functions is fixed by two real coefficients and a
function ``phi`` on [0, 1]; the three order-two starting functions are

    g0 = a z + b + phi(z)
    g1 = 1 - 2b - a - 2 phi(z)
    g2 = -a z + b + a + phi(z)

and every higher degree is produced by the de Casteljau-style recursion in
:mod:`bernlike.basis_core`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .errors import InvalidFamily, NonFiniteValue

ArrayLike = Union[float, np.ndarray]

NONNEG_TOL = 1e-12
SYMMETRY_TOL = 1e-12
ENDPOINT_TOL = 1e-14
DEFAULT_VALIDATION_GRID = 1001


# -- phi kinds ---------------------------------------------------------------

@dataclass(frozen=True)
class AlphaQuadratic:
    """phi(z) = alpha (z^2 - z)."""

    alpha: float

    symmetric = True

    def __call__(self, z: ArrayLike) -> ArrayLike:
        return self.alpha * (z * z - z)

    @property
    def monomial(self) -> Tuple[float, float, float]:
        # (constant, linear, quadratic)
        return (0.0, -self.alpha, self.alpha)


@dataclass(frozen=True)
class ClassicalQuadratic:
    """phi(z) = z^2 - z + 1; with a=-1, b=0 this gives the classical basis."""

    symmetric = True

    def __call__(self, z: ArrayLike) -> ArrayLike:
        return z * z - z + 1.0

    @property
    def monomial(self) -> Tuple[float, float, float]:
        return (1.0, -1.0, 1.0)


@dataclass(frozen=True)
class SqRoot:
    """phi(z) = sqrt((1 - nu)(z^2 - z) + 1/4), the sq-basis family."""

    nu: float

    symmetric = True

    def radicand(self, z: ArrayLike) -> ArrayLike:
        return (1.0 - self.nu) * (z * z - z) + 0.25

    def __call__(self, z: ArrayLike) -> ArrayLike:
        r = self.radicand(z)
        if np.ndim(r) == 0:
            return math.sqrt(r) if r >= 0 else math.nan
        with np.errstate(invalid="ignore"):
            return np.sqrt(r)

    monomial = None


@dataclass(frozen=True)
class Custom:
    """User-supplied phi.

    ``func`` maps a float in [0, 1] to a float and must be pure and
    reentrant. ``symmetric`` declares whether phi(1 - z) = phi(z); the
    declaration is checked by :func:`validate_family`.
    """

    func: Callable[[float], float]
    symmetric: bool = False

    def __call__(self, z: ArrayLike) -> ArrayLike:
        if np.ndim(z) == 0:
            return float(self.func(float(z)))
        z = np.asarray(z, dtype=float)
        return np.array([float(self.func(float(t))) for t in z.ravel()]).reshape(z.shape)

    monomial = None


PhiKind = Union[AlphaQuadratic, ClassicalQuadratic, SqRoot, Custom]


# -- family spec -------------------------------------------------------------

_FORCED = {
    AlphaQuadratic: (-1.0, 1.0),
    ClassicalQuadratic: (-1.0, 0.0),
    SqRoot: (-1.0, 0.5),
}


@dataclass(frozen=True)
class FamilySpec:
    a: float
    b: float
    phi: PhiKind
    label: str = "custom"

    def __post_init__(self):
        forced = _FORCED.get(type(self.phi))
        if forced is not None and (self.a, self.b) != forced:
            raise ValueError(
                f"{type(self.phi).__name__} requires (a, b) = {forced}, got ({self.a}, {self.b})"
            )

    @property
    def is_polynomial(self) -> bool:
        return self.phi.monomial is not None

    def starting_basis(self, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
        """Return (g0, g1, g2) at ``z`` (scalar or array). No validation."""
        p = self.phi(z)
        _check_finite(p)
        a, b = self.a, self.b
        return (a * z + b + p, 1.0 - 2.0 * b - a - 2.0 * p, -a * z + b + a + p)


def alpha_family(alpha: float) -> FamilySpec:
    return FamilySpec(-1.0, 1.0, AlphaQuadratic(float(alpha)), label=f"alpha={alpha:g}")


def classical_family() -> FamilySpec:
    return FamilySpec(-1.0, 0.0, ClassicalQuadratic(), label="classical")


def sq_family(nu: float) -> FamilySpec:
    return FamilySpec(-1.0, 0.5, SqRoot(float(nu)), label=f"sq(nu={nu:g})")


def custom_family(a: float, b: float, func: Callable[[float], float], symmetric: bool = False,
                  label: str = "custom") -> FamilySpec:
    return FamilySpec(float(a), float(b), Custom(func, symmetric), label=label)


def _check_finite(values) -> None:
    if not np.all(np.isfinite(values)):
        raise NonFiniteValue("phi returned a non-finite value (invalid family parameter?)")


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    nonnegative: bool
    symmetric: bool
    endpoints: bool
    min_value: float
    min_z: float
    symmetry_error: float
    endpoint_error: float
    grid_size: int
    # Sum g0 + g1 + g2 = 1 holds identically for any (a, b, phi).
    partition_of_unity: str = "analytic"
    diagnostics: Tuple[str, ...] = field(default=())


def validate_family(spec: FamilySpec, grid_size: int = DEFAULT_VALIDATION_GRID) -> ValidationReport:
    """Check the starting triple of ``spec`` on a uniform grid.

    Nonnegativity of g0, g1, g2, symmetry of phi and the end-point values
    g_i(0) = delta_{i0}, g_i(1) = delta_{i2} are checked; a non-finite phi
    raises :class:`NonFiniteValue`.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    z = np.linspace(0.0, 1.0, grid_size)
    g = np.vstack(spec.starting_basis(z))

    flat = int(np.argmin(g))
    min_value = float(g.flat[flat])
    min_z = float(z[flat % grid_size])
    nonnegative = min_value >= -NONNEG_TOL

    phi_z = spec.phi(z)
    phi_mirror = spec.phi(1.0 - z)
    _check_finite(phi_mirror)
    symmetry_error = float(np.max(np.abs(phi_z - phi_mirror)))
    symmetric = symmetry_error <= SYMMETRY_TOL

    g_end = np.vstack(spec.starting_basis(np.array([0.0, 1.0])))
    expected = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]])
    endpoint_error = float(np.max(np.abs(g_end - expected)))
    endpoints = endpoint_error <= ENDPOINT_TOL

    diagnostics = []
    if not nonnegative:
        diagnostics.append(f"starting function negative: min {min_value:.3e} at z={min_z:g}")
    if not endpoints:
        diagnostics.append(f"end-point values off by {endpoint_error:.3e}")
    declared = spec.phi.symmetric
    if declared and not symmetric:
        diagnostics.append(f"phi declared symmetric but |phi(1-z)-phi(z)| = {symmetry_error:.3e}")

    passed = nonnegative and endpoints and (symmetric or not declared)
    return ValidationReport(
        passed=passed,
        nonnegative=nonnegative,
        symmetric=symmetric,
        endpoints=endpoints,
        min_value=min_value,
        min_z=min_z,
        symmetry_error=symmetry_error,
        endpoint_error=endpoint_error,
        grid_size=grid_size,
        diagnostics=tuple(diagnostics),
    )


@functools.lru_cache(maxsize=256)
def require_valid(spec: FamilySpec) -> ValidationReport:
    """Validate once per spec; raise :class:`InvalidFamily` on failure."""
    report = validate_family(spec)
    if not report.passed:
        raise InvalidFamily(f"{spec.label}: " + "; ".join(report.diagnostics))
    return report
