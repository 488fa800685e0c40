"""Evaluation of Bernstein-like bases built from a starting triple.

Three independent routes are provided:

* :func:`eval_basis_point` / :func:`basis_grid` run the degree-raising
  recursion F_{n,i} = (1 - z) F_{n-1,i} + z F_{n-1,i-1} from the order-two
  starting functions;
* :func:`eval_alpha_closed` is the closed-form alpha-Bernstein polynomial;
* :func:`expand_via_lower_order` writes F_{n,i} through the basis of a lower
  order m weighted by classical Bernstein polynomials of degree n - m.

For polynomial phi the exact coefficient backend
(:func:`basis_polynomial_coeffs`) supplies analytic derivatives.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import List, Tuple

import numpy as np

from . import bernstein
from .bernstein import BernsteinPoly, classical_basis_matrix
from .errors import IndexOutOfRange, InvalidOrder, UnsupportedOrder, UnsupportedPhi
from .families import FamilySpec, require_valid

FD_STEP_FIRST = 6e-6
FD_STEP_SECOND = 1e-4


@dataclass(frozen=True)
class BasisVector:
    family: FamilySpec
    degree: int
    z: float
    values: Tuple[float, ...]

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def _check_z(z: float) -> float:
    z = float(z)
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z={z} outside [0, 1]")
    return z


def _check_degree(n: int) -> int:
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    return int(n)


def eval_classical_bernstein(n: int, k: int, z: float) -> float:
    return bernstein.eval_classical_bernstein(n, k, z)


def eval_starting_basis(spec: FamilySpec, z: float) -> Tuple[float, float, float]:
    require_valid(spec)
    g0, g1, g2 = spec.starting_basis(_check_z(z))
    return float(g0), float(g1), float(g2)


def basis_grid(spec: FamilySpec, n: int, z) -> np.ndarray:
    """F_{n,0..n} at every abscissa of ``z``; shape ``z.shape + (n + 1,)``."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=float)
    if n == 1:
        return np.stack([1.0 - z, z], axis=-1)
    require_valid(spec)
    out = np.zeros(z.shape + (n + 1,))
    out[..., 0], out[..., 1], out[..., 2] = spec.starting_basis(z)
    w = (1.0 - z)[..., None]
    t = z[..., None]
    for d in range(3, n + 1):
        prev = out[..., :d].copy()
        # index d of ``out`` is still zero, so the shifted add covers i = d
        out[..., :d] = w * prev
        out[..., 1 : d + 1] += t * prev
    return out


def eval_basis_point(spec: FamilySpec, n: int, z: float) -> BasisVector:
    """All n + 1 basis values at one abscissa, in a single recursion pass."""
    z = _check_z(z)
    row = basis_grid(spec, n, np.array([z]))[0]
    return BasisVector(spec, int(n), z, tuple(float(v) for v in row))


def eval_alpha_closed(n: int, k: int, alpha: float, z: float) -> float:
    """Closed-form alpha-Bernstein polynomial B_{n,k}^{(alpha)}(z).

    The prefactor z^(k-1) (1-z)^(n-k-1) is distributed over the bracket, and
    C(m, l) = 0 outside 0 <= l <= m, so no negative power is ever formed.
    """
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 0..{n}")
    if n == 1:
        return 1.0 - z if k == 0 else z
    u = 1.0 - z
    total = 0.0
    if k <= n - 2:
        total += comb(n - 2, k) * (1.0 - alpha) * z**k * u ** (n - k - 1)
    if k >= 2:
        total += comb(n - 2, k - 2) * (1.0 - alpha) * z ** (k - 1) * u ** (n - k)
    total += comb(n, k) * alpha * z**k * u ** (n - k)
    return total


def expansion_term_indices(n: int, m: int, i: int) -> range:
    """Values of j in 0..n-m for which F_{m,i-j} is not identically zero."""
    return range(max(0, i - m), min(n - m, i) + 1)


def expand_via_lower_order(spec: FamilySpec, n: int, m: int, i: int, z: float) -> float:
    """F_{n,i}(z) = sum_j B_{n-m,j}(z) F_{m,i-j}(z) over the non-vanishing j."""
    if m < 2 or m >= n:
        raise InvalidOrder(f"need 2 <= m < n, got m={m}, n={n}")
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"i={i} outside 0..{n}")
    lower = eval_basis_point(spec, m, z).values
    total = 0.0
    for j in expansion_term_indices(n, m, i):
        total += eval_classical_bernstein(n - m, j, z) * lower[i - j]
    return total


# -- exact polynomial backend ------------------------------------------------

@functools.lru_cache(maxsize=512)
def _coeff_matrix(spec: FamilySpec, n: int) -> np.ndarray:
    if n == 1:
        return np.eye(2)
    mono = spec.phi.monomial
    if mono is None:
        raise UnsupportedPhi(f"{type(spec.phi).__name__} is not polynomial; use the pointwise backend")
    require_valid(spec)
    # For a quadratic p the degree-2 Bernstein coordinates are
    # (p(0), p(0) + p'(0)/2, p(1)); taking the end values straight from the
    # starting functions keeps F(0) and F(1) exact.
    a, lin = spec.a, mono[1]
    at0 = [float(v) for v in spec.starting_basis(0.0)]
    at1 = [float(v) for v in spec.starting_basis(1.0)]
    slopes = (a + lin, -2.0 * lin, -a + lin)
    c = np.array([[p0, p0 + 0.5 * s, p1] for p0, s, p1 in zip(at0, slopes, at1)])
    for _ in range(3, n + 1):
        c = bernstein.recursion_step(c)
    c.setflags(write=False)
    return c


def basis_coeff_matrix(spec: FamilySpec, n: int) -> np.ndarray:
    """Row i holds the degree-n Bernstein coordinates of F_{n,i} (read-only)."""
    return _coeff_matrix(spec, _check_degree(n))


def basis_polynomial_coeffs(spec: FamilySpec, n: int) -> List[BernsteinPoly]:
    return [BernsteinPoly.from_coeffs(row) for row in basis_coeff_matrix(spec, n)]


def poly_eval(coeffs: np.ndarray, z) -> np.ndarray:
    """Evaluate rows of Bernstein coefficients on ``z``; shape ``z.shape + (rows,)``."""
    coeffs = np.atleast_2d(coeffs)
    d = coeffs.shape[1] - 1
    return classical_basis_matrix(d, z) @ coeffs.T


def derivative_coeffs(coeffs: np.ndarray, order: int) -> np.ndarray:
    c = np.atleast_2d(np.asarray(coeffs, dtype=float))
    for _ in range(order):
        d = c.shape[1] - 1
        if d == 0:
            c = np.zeros_like(c)
        else:
            c = d * np.diff(c, axis=1)
    return c


# -- derivatives ---------------------------------------------------------------

def _fd_grid(func, z: np.ndarray, order: int) -> np.ndarray:
    """Finite-difference derivative of a vectorised ``func`` (values stacked
    on the last axis), central in the interior and one-sided within h of 0 or 1."""
    h = FD_STEP_FIRST if order == 1 else FD_STEP_SECOND
    z = np.asarray(z, dtype=float)
    lo = z < h
    hi = z > 1.0 - h
    mid = ~(lo | hi)
    out = None

    def put(mask, val):
        nonlocal out
        if out is None:
            out = np.zeros(z.shape + val.shape[z.ndim:])
        out[mask] = val[mask]

    if order == 1:
        if mid.any():
            put(mid, (func(np.clip(z + h, 0, 1)) - func(np.clip(z - h, 0, 1))) / (2 * h))
        if lo.any():
            zz = np.where(lo, z, 0.0)
            put(lo, (-3 * func(zz) + 4 * func(zz + h) - func(zz + 2 * h)) / (2 * h))
        if hi.any():
            zz = np.where(hi, z, 1.0)
            put(hi, (3 * func(zz) - 4 * func(zz - h) + func(zz - 2 * h)) / (2 * h))
    else:
        if mid.any():
            zc = np.where(mid, z, 0.5)
            put(mid, (func(zc + h) - 2 * func(zc) + func(zc - h)) / h**2)
        if lo.any():
            zz = np.where(lo, z, 0.0)
            put(lo, (2 * func(zz) - 5 * func(zz + h) + 4 * func(zz + 2 * h) - func(zz + 3 * h)) / h**2)
        if hi.any():
            zz = np.where(hi, z, 1.0)
            put(hi, (2 * func(zz) - 5 * func(zz - h) + 4 * func(zz - 2 * h) - func(zz - 3 * h)) / h**2)
    return out


def basis_derivative_grid(spec: FamilySpec, n: int, z, order: int = 1) -> np.ndarray:
    """d^order/dz^order F_{n,i}(z) for all i; shape ``z.shape + (n + 1,)``."""
    if order not in (1, 2):
        raise UnsupportedOrder(f"order must be 1 or 2, got {order}")
    z = np.asarray(z, dtype=float)
    if spec.is_polynomial or n == 1:
        dc = derivative_coeffs(basis_coeff_matrix(spec, n), order)
        return poly_eval(dc, z)
    return _fd_grid(lambda t: basis_grid(spec, n, t), z, order)


def eval_basis_derivative(spec: FamilySpec, n: int, i: int, z: float, order: int = 1) -> float:
    if order not in (1, 2):
        raise UnsupportedOrder(f"order must be 1 or 2, got {order}")
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"i={i} outside 0..{n}")
    z = _check_z(z)
    return float(basis_derivative_grid(spec, n, np.array([z]), order)[0, i])
