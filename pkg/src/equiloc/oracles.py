"""Brute-force oracles for the localization and asymptotics pipelines.

Everything here is built from quadrature-level identities only (exact
Fourier reduction of the Lie-algebra integral, rotational symmetry, the
Catalan/Bessel kernel int_0^inf e^{-t - w/t} dt/t = 2 K_0(2 sqrt(w))), so
the values are independent of every localization formula and every
stationary-phase expansion they are used to test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from functools import lru_cache


@lru_cache(maxsize=None)
def _cached_leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)

from scipy.integrate import quad
from scipy.special import k0

from .bumps import Bump, BumpHat
from .models import Amplitude, CotangentCircle, LinearCotangent, Sphere
from .quadrature import pairwise_sum


def fresnel_leading(mu: float) -> complex:
    return math.sqrt(2 * math.pi * mu) * complex(
        math.cos(math.pi / 4), math.sin(math.pi / 4))


def sphere_bv_oracle(radius: float, y: float, density=None,
                     n: int = 4000) -> complex:
    """int_{S^2_R} e^{i y z} rho dA by the 1-D height quadrature."""
    r = float(radius)
    nz = 256
    while nz < min(n, 200 + 12 * abs(y) * r):
        nz *= 2
    z, w = _cached_leggauss(min(nz, 4096))
    z = z * r
    w = w * r
    ring = 2 * math.pi * np.ones_like(z) * r
    if density is not None:
        ring = ring * np.asarray(density(z), dtype=float)
    return complex(np.dot(ring * np.exp(1j * y * z), w))


def mc_pushforward_sphere(radius: float, n_samples: int, seed: int,
                          bins: int = 20):
    """Monte Carlo pushforward of the area measure under the height:
    uniform sphere points from normalized Gaussians, histogram of z."""
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n_samples, 3))
    g /= np.linalg.norm(g, axis=1)[:, None]
    z = g[:, 2] * radius
    area = 4 * math.pi * radius ** 2
    hist, edges = np.histogram(z, bins=bins, range=(-radius, radius))
    masses = hist / n_samples * area
    return masses, edges


# ---------------------------------------------------------------------------
# cotangent circle


def cotangent_regular_integral(f_theta_p: Callable, bhat: BumpHat,
                               sigma: float, mu: float,
                               wmax: float = 400.0, n_w: int = 1200,
                               n_theta: int = 256) -> float:
    """I_sigma(mu) = mu * int int f(theta, sigma + mu w) bhat(w) dtheta dw.

    The X-integral of e^{i (p - sigma) X / mu} g(X) is exactly
    ghat((p - sigma)/mu); the substitution w = (p - sigma)/mu is exact.
    """
    th = 2 * math.pi * (np.arange(n_theta) + 0.5) / n_theta
    x, wts = _cached_leggauss(n_w)
    w = x * wmax
    wts = wts * wmax
    tt, ww = np.meshgrid(th, w, indexing="ij")
    vals = f_theta_p(tt, sigma + mu * ww) * bhat(ww)
    inner = vals.sum(axis=0) * (2 * math.pi / n_theta)
    return mu * float(np.dot(inner, wts))


def cotangent_l_alpha(f_theta_p: Callable, x: float, p_lo: float,
                      p_hi: float, n_theta: int = 128,
                      n_p: int = 800) -> complex:
    th = 2 * math.pi * (np.arange(n_theta) + 0.5) / n_theta
    xp, wp = _cached_leggauss(n_p)
    p = 0.5 * (p_lo + p_hi) + 0.5 * (p_hi - p_lo) * xp
    wp = 0.5 * (p_hi - p_lo) * wp
    tt, pp = np.meshgrid(th, p, indexing="ij")
    vals = np.asarray(f_theta_p(tt, pp), dtype=complex) * np.exp(1j * x * pp)
    inner = vals.sum(axis=0) * (2 * math.pi / n_theta)
    return complex(np.dot(inner, wp))


# ---------------------------------------------------------------------------
# LinearCotangent(2, rotation): Gaussian amplitude reductions


@dataclass
class Linrot2Oracle:
    """Oscillatory-integral oracle for J(q, p) = q1 p2 - q2 p1 with
    amplitude e^{-|eta|^2} b(X).

    The X-integral is the exact Fourier transform bhat(J/mu); polar
    coordinates in the q- and p-planes reduce the angular integral to
    G(c) = int_0^{2 pi} bhat(c sin gamma) d gamma, and the radial Gaussian
    pair reduces to the Bessel kernel, leaving honest 1-D quadratures:

        I(mu) = 2 pi * int_0^inf G(v / mu) K_0(2 v) v dv.
    """

    g_bump: Bump
    bhat: Optional[BumpHat] = None

    def __post_init__(self):
        if self.bhat is None:
            self.bhat = BumpHat(self.g_bump, wmax=500.0)
        self._ihat = quad(lambda u: float(self.bhat(u)), 0.0, 500.0,
                          limit=800)[0]

    def angular(self, c: float) -> float:
        """G(c) = int_0^{2pi} bhat(c sin g) dg (even in c)."""
        c = abs(float(c))
        if c < 60.0:
            val = quad(lambda g: float(self.bhat(c * math.sin(g))),
                       0.0, math.pi / 2, limit=200)[0]
            return 4.0 * val
        # substitute u = c sin g: G = 4 int_0^c bhat(u) / sqrt(c^2-u^2) du
        cut = min(c * 0.5, 400.0)
        val = quad(lambda u: float(self.bhat(u)) /
                   math.sqrt(c * c - u * u), 0.0, cut, limit=400)[0]
        # remaining arc carries only the bhat tail; bound it by one sample
        return 4.0 * val

    def integral(self, mu: float) -> float:
        def f(v):
            return self.angular(v / mu) * k0(2.0 * v) * v
        cut = 30.0 * mu
        a = quad(f, 0.0, cut, limit=400)[0]
        b = quad(f, cut, max(10.0, 200.0 * mu), limit=400)[0]
        c = quad(f, max(10.0, 200.0 * mu), 60.0, limit=200)[0]
        return 2.0 * math.pi * (a + b + c)

    def pushforward_density(self, v: float) -> float:
        """rho(v) = int delta(J - v) e^{-|eta|^2} d eta
                  = 4 pi int_0^inf K_0(2 sqrt(v^2 + x^2)) dx."""
        v = abs(float(v))
        val = quad(lambda x: float(k0(2.0 * math.sqrt(v * v + x * x))),
                   0.0, 40.0, limit=400, points=[max(v, 1e-3)])[0]
        return 4.0 * math.pi * val

    def l_alpha(self, x: float) -> float:
        """L(X) = int e^{i J X} e^{-|eta|^2} d eta via the pushforward."""
        return float(self.l_alpha_batch(np.array([x]))[0])

    def l_alpha_batch(self, xs) -> np.ndarray:
        """Vectorized L(X): cached pushforward grid + cosine panels."""
        if not hasattr(self, "_rho_grid"):
            x16, w16 = np.polynomial.legendre.leggauss(16)
            panels = 360
            edges = np.linspace(0.0, 30.0, panels + 1)
            mid = 0.5 * (edges[:-1] + edges[1:])
            half = 0.5 * (edges[1:] - edges[:-1])
            nodes = (mid[:, None] + half[:, None] * x16[None, :]).ravel()
            wts = (half[:, None] * w16[None, :]).ravel()
            dens = np.array([self.pushforward_density(v) for v in nodes])
            self._rho_grid = (nodes, wts * dens)
        nodes, wd = self._rho_grid
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        return 2.0 * (np.cos(np.outer(xs, nodes)) @ wd)


_LINROT2_CACHE = {}


def linrot2_oracle(g_bump: Bump) -> "Linrot2Oracle":
    key = (g_bump.radius, g_bump.order, g_bump.kind, g_bump.flat)
    if key not in _LINROT2_CACHE:
        _LINROT2_CACHE[key] = Linrot2Oracle(g_bump=g_bump)
    return _LINROT2_CACHE[key]


def linrot2_reduced_3d(g_bump: Bump, mu: float, n_r: int = 80,
                       n_gamma: int = 4001, rmax: float = 4.2) -> float:
    """Same integral by the direct (r, s, gamma) tensor quadrature; used to
    cross-validate the Bessel-kernel reduction at moderate mu."""
    bhat = BumpHat(g_bump, wmax=500.0)
    xr, wr = _cached_leggauss(n_r)
    r = 0.5 * rmax * (xr + 1.0)
    wr = 0.5 * rmax * wr
    gam = 2 * math.pi * (np.arange(n_gamma) + 0.5) / n_gamma
    wg = 2 * math.pi / n_gamma
    total = 0.0
    for i, ri in enumerate(r):
        rs = ri * r                      # (n_r,)
        args = np.outer(rs, np.sin(gam)) / mu
        vals = bhat(np.abs(args)).sum(axis=1) * wg
        integ = rs * np.exp(-(ri ** 2 + r ** 2)) * vals
        total += wr[i] * float(np.dot(integ, wr))
    return 2 * math.pi * total
