"""Integral correction kernel for an order-m differential operator.

The correction step of the iteration adds ``integral_0^x lam(t, x) * r(t) dt``
to the current approximation, where ``r`` is the equation residual and the
weight ``lam(t, x) = (-1)**m * (t - x)**(m - 1) / (m - 1)!`` makes the
functional stationary with respect to variations of the approximation: the
natural conditions ``1 + lam^(m-1) = 0`` at ``t = x`` and ``lam^(j) = 0`` at
``t = x`` for ``j <= m - 2`` pin the weight down uniquely.

On a monomial residual the integral is closed-form,

    integral_0^x t**j (t - x)**(m-1) dt = (-1)**(m-1) j! (m-1)!/(j+m)! x**(j+m),

so applying the kernel to ``sum c_j t**j`` yields ``-c_j * j!/(j+m)!`` at
degree ``j + m``.  :meth:`CorrectionKernel.integrate` implements exactly this
map; degrees beyond the kernel's truncation are discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .series import Series

__all__ = ["CorrectionKernel"]


@dataclass(frozen=True)
class CorrectionKernel:
    """Closed-form correction integral for ``d^order/dx^order``."""

    order: int
    truncation: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("operator order must be at least 1")
        if self.truncation < self.order:
            raise ValueError(
                "truncation degree must be at least the operator order"
            )

    def multiplier(self, t: float, x: float) -> float:
        """Weight ``(-1)**m (t - x)**(m-1) / (m-1)!`` at one point."""
        m = self.order
        sign = -1.0 if m % 2 else 1.0
        return sign * (t - x) ** (m - 1) / math.factorial(m - 1)

    def integrate(self, f: Series) -> Series:
        """Apply the correction integral to a residual series.

        The degree-j input coefficient lands at degree ``j + order`` scaled
        by ``-j!/(j+order)!``; the ratio is accumulated as a running product
        of reciprocals so no factorial overflows.  Degrees of the image that
        exceed the kernel truncation are discarded.
        """
        if f.truncation != self.truncation:
            raise ValueError(
                f"residual truncation {f.truncation} does not match "
                f"kernel truncation {self.truncation}"
            )
        m = self.order
        w = self.truncation
        out = [0.0] * (w + 1)
        for j, c in enumerate(f.coeffs):
            k = j + m
            if k > w:
                break
            ratio = 1.0  # j!/(j+m)! built without forming either factorial
            for i in range(j + 1, k + 1):
                ratio /= i
            out[k] = -c * ratio
        return Series(tuple(out))
