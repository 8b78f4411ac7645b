"""Bump amplitudes, their Fourier transforms, and smearing kernels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline


def _smoothstep_coeffs(m: int):
    # antiderivative of t^m (1-t)^m, normalized so S(1) = 1
    coeffs = {}
    for k in range(m + 1):
        coeffs[m + k + 1] = ((-1) ** k * comb(m, k)) / (m + k + 1)
    total = sum(coeffs.values())
    return {p: c / total for p, c in coeffs.items()}


class Bump:
    """Even compactly supported bump on the line, b(0) = 1.

    kind "poly": (1 - (x/R)^2)^m, C^{m-1} at the boundary, curved at 0.
    kind "plateau": identically 1 on |x| <= flat*R, C^m decay to 0 at R;
    flat at 0 to all orders, which is what the symbolic stationary-phase
    path relies on.
    """

    def __init__(self, radius: float = 1.0, order: int = 6,
                 kind: str = "plateau", flat: float = 0.5):
        if kind not in ("poly", "plateau"):
            raise ValueError(f"unknown bump kind {kind!r}")
        self.radius = float(radius)
        self.order = int(order)
        self.kind = kind
        self.flat = float(flat)
        if kind == "plateau":
            self._steps = _smoothstep_coeffs(self.order)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        u = np.abs(x) / self.radius
        if self.kind == "poly":
            out = np.where(u < 1.0, (1.0 - np.minimum(u, 1.0) ** 2)
                           ** self.order, 0.0)
            return out
        t = (1.0 - u) / (1.0 - self.flat)
        t = np.clip(t, 0.0, 1.0)
        s = np.zeros_like(t)
        for p, c in self._steps.items():
            s += c * t ** p
        s = np.where(u <= self.flat, 1.0, s)
        return np.where(u < 1.0, s, 0.0)

    def second_derivative_at_zero(self) -> float:
        if self.kind == "plateau":
            return 0.0
        return -2.0 * self.order / self.radius ** 2

    def mass(self) -> float:
        from scipy.integrate import quad
        return quad(lambda x: float(self(x)), -self.radius, self.radius,
                    limit=200)[0]


@dataclass
class BumpHat:
    """hat b(w) = int b(x) e^{i w x} dx, real and even for even bumps.

    Dense cubic-spline cache; direct quadrature beyond the cached range.
    """

    bump: Bump
    wmax: float = 400.0
    samples: int = 8192

    def __post_init__(self):
        grid = np.linspace(0.0, self.wmax, self.samples)
        # vectorized composite Gauss: enough panels to resolve cos(wmax x)
        r = self.bump.radius
        panels = max(64, int(self.wmax * r / 4.0) + 16)
        x, w16 = np.polynomial.legendre.leggauss(16)
        edges = np.linspace(0.0, r, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        wts = (half[:, None] * w16[None, :]).ravel()
        fb = self.bump(nodes) * wts
        vals = 2.0 * (np.cos(np.outer(grid, nodes)) @ fb)
        self._spline = CubicSpline(grid, vals)

    def _direct(self, w: float) -> float:
        from scipy.integrate import quad
        r = self.bump.radius
        val, _ = quad(lambda x: float(self.bump(x)) * math.cos(w * x),
                      0.0, r, limit=400)
        return 2.0 * val

    def __call__(self, w):
        w = np.abs(np.asarray(w, dtype=float))
        out = np.empty_like(w)
        inside = w <= self.wmax
        out[inside] = self._spline(w[inside])
        if np.any(~inside):
            flat = w[~inside].ravel()
            out[~inside] = np.array([self._direct(x) for x in flat]
                                    ).reshape(w[~inside].shape)
        return out if out.shape else float(out)

    def moment(self, k: int = 0, tail: float = 4000.0) -> float:
        """int w^k hat b(w) dw over the line (even integrand for even k)."""
        from scipy.integrate import quad
        val, _ = quad(lambda w: w ** k * float(self(w)), 0.0, self.wmax,
                      limit=800)
        val2, _ = quad(lambda w: w ** k * float(self(w)), self.wmax, tail,
                       limit=400)
        return 2.0 * (val + val2)


class SmearingKernel:
    """Normalized bump phi on g* (here d = 1) with evaluator for phi-hat."""

    def __init__(self, bump: Optional[Bump] = None):
        self.bump = bump or Bump(radius=1.0, order=4, kind="poly")
        self._mass = self.bump.mass()
        self._hat = BumpHat(self.bump, wmax=600.0)

    def phi(self, xi, eps: float = 1.0):
        return self.bump(np.asarray(xi) / eps) / (self._mass * eps)

    def phi_hat(self, x):
        """Fourier transform of phi (total integral one => phi_hat(0) = 1)."""
        return self._hat(x) / self._mass

    def check_normalized(self, eps: float) -> float:
        from scipy.integrate import quad
        val, _ = quad(lambda x: float(self.phi(x, eps)),
                      -self.bump.radius * eps, self.bump.radius * eps,
                      limit=200)
        return val
