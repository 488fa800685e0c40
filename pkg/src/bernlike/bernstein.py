"""Polynomials stored by their coordinates in the classical Bernstein basis."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange


def eval_classical_bernstein(n: int, k: int, z: float) -> float:
    """C(n, k) z^k (1 - z)^(n - k)."""
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 0..{n}")
    return comb(n, k) * z**k * (1.0 - z) ** (n - k)


def classical_basis_matrix(n: int, z) -> np.ndarray:
    """All degree-n classical Bernstein values, shape ``z.shape + (n + 1,)``.

    Built with the degree-raising recursion so that every entry is a convex
    combination of the previous row (no large binomials).
    """
    z = np.asarray(z, dtype=float)
    out = np.zeros(z.shape + (n + 1,))
    out[..., 0] = 1.0
    w = 1.0 - z
    for d in range(1, n + 1):
        prev = out[..., :d].copy()
        out[..., :d] = prev * w[..., None]
        out[..., 1 : d + 1] += prev * z[..., None]
    return out


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coefficients must be a non-empty 1-D sequence")
    return arr


@dataclass(frozen=True)
class BernsteinPoly:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} needs {self.degree + 1} coefficients")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[float]) -> "BernsteinPoly":
        arr = _as_coeffs(coeffs)
        return cls(arr.size - 1, tuple(float(c) for c in arr))

    @classmethod
    def from_monomial(cls, mono: Sequence[float], degree: int | None = None) -> "BernsteinPoly":
        """Convert sum_j mono[j] z^j to Bernstein form of ``degree`` (>= len(mono) - 1).

        Uses z^j = sum_{k>=j} C(k, j)/C(n, j) B_{n,k}.
        """
        m = len(mono) - 1
        n = m if degree is None else degree
        if n < m:
            raise ValueError("target degree below polynomial degree")
        c = np.zeros(n + 1)
        for j, a in enumerate(mono):
            if a == 0.0:
                continue
            for k in range(j, n + 1):
                c[k] += a * comb(k, j) / comb(n, j)
        return cls.from_coeffs(c)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=float)

    def __call__(self, z):
        """Evaluate by de Casteljau; ``z`` may be a scalar or an array."""
        scalar = np.ndim(z) == 0
        z = np.asarray(z, dtype=float)
        b = np.broadcast_to(self.array, z.shape + (self.degree + 1,)).copy()
        t = z[..., None]
        for r in range(self.degree):
            b = (1.0 - t) * b[..., :-1] + t * b[..., 1:]
        out = b[..., 0]
        return float(out) if scalar else out

    def derivative(self) -> "BernsteinPoly":
        if self.degree == 0:
            return BernsteinPoly(0, (0.0,))
        c = self.array
        return BernsteinPoly.from_coeffs(self.degree * np.diff(c))

    def times_one_minus_z(self) -> "BernsteinPoly":
        return BernsteinPoly.from_coeffs(raise_one_minus_z(self.array))

    def times_z(self) -> "BernsteinPoly":
        return BernsteinPoly.from_coeffs(raise_z(self.array))

    def __add__(self, other: "BernsteinPoly") -> "BernsteinPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BernsteinPoly.from_coeffs(self.array + other.array)


def raise_one_minus_z(c: np.ndarray) -> np.ndarray:
    """Coefficients of (1 - z) p for p of degree d: c_k (d+1-k)/(d+1)."""
    d = c.shape[-1] - 1
    k = np.arange(d + 2)
    out = np.zeros(c.shape[:-1] + (d + 2,))
    out[..., : d + 1] = c * (d + 1 - k[: d + 1])
    return out / (d + 1)


def raise_z(c: np.ndarray) -> np.ndarray:
    """Coefficients of z p for p of degree d: index k+1 gets c_k (k+1)/(d+1)."""
    d = c.shape[-1] - 1
    k = np.arange(d + 1)
    out = np.zeros(c.shape[:-1] + (d + 2,))
    out[..., 1:] = c * (k + 1)
    return out / (d + 1)


def recursion_step(c: np.ndarray) -> np.ndarray:
    """One degree-raising step applied to a stack of coefficient rows.

    ``c`` has shape (d+1, d+1): row i holds F_{d,i}. Returns the (d+2, d+2)
    stack for F_{d+1,i} = (1 - z) F_{d,i} + z F_{d,i-1}. Each entry is formed
    with a single division so that unit vectors stay exact.
    """
    d = c.shape[0] - 1
    k = np.arange(d + 2)
    left = np.zeros((d + 2, d + 2))   # (d+1-k) * F_{d,i}[k]
    right = np.zeros((d + 2, d + 2))  # k * F_{d,i-1}[k-1]
    left[: d + 1, : d + 1] = c * (d + 1 - k[: d + 1])
    right[1:, 1:] = c * k[1:]
    return (left + right) / (d + 1)
