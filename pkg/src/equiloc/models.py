"""Catalog of Hamiltonian circle/torus actions with momentum maps.

Three families:

* Sphere(R): the radius-R sphere with its area form and the rotation about
  the z-axis generated by the Hamiltonian J = z (height).  Fixed points at
  the poles, weights -Y/R and +Y/R.
* CotangentCircle: T*S^1 with J = p; the action is free, so there are no
  fixed points and every level is regular.
* LinearCotangent(n, generators): T*R^n with commuting antisymmetric
  generators acting by g.(q, p) = (gq, gp) and J_X(q, p) = <Xq, p>.

Conventions: generators are declared orthonormal in the Lie algebra, so a
2*pi-periodic rotation circle has volume 2*pi; orbit volumes and the Gram
matrix of the fundamental fields are exact rationals at rational points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from functools import lru_cache


@lru_cache(maxsize=None)
def _cached_leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


from .bumps import Bump
from .mpoly import LinForm, MPoly
from .symmat import SymMat


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class GroupData:
    d: int
    d_t: int
    roots: tuple            # tuple[LinForm], positive roots
    vol_g: float
    vol_t: float
    weyl_order: int
    principal_isotropy_order: int
    kappa: int

    def validate(self):
        if self.d - self.d_t != 2 * len(self.roots):
            raise ModelError("root count inconsistent with d - d_T")
        if self.kappa > self.d:
            raise ModelError("principal orbit dimension exceeds dim g")
        if min(self.vol_g, self.vol_t) <= 0:
            raise ModelError("group volumes must be positive")
        if self.weyl_order < 1 or self.principal_isotropy_order < 1:
            raise ModelError("orders must be positive")
        return self


@dataclass(frozen=True)
class FixedComponent:
    points: tuple                  # coordinates of the component (isolated)
    j_value: LinForm               # Y -> J_Y(F)
    weights: tuple                 # tuple[(LinForm, multiplicity)]
    rank_nf: int
    chern_data: Optional[object] = None

    def validate(self):
        nw = sum(m for _, m in self.weights)
        if self.rank_nf != 2 * nw:
            raise ModelError("rank NF must be twice the weight count")
        return self


@dataclass
class Amplitude:
    """poly(eta) * radial cutoff(|eta|) * optional g-profile(X), with an
    optional Gaussian factor e^{-|eta|^2} used by the singular catalog and
    an optional free density factor on the phase-space coordinates."""
    poly: Optional[MPoly] = None
    cutoff: Optional[Bump] = None
    g_profile: Optional[Bump] = None
    gaussian: bool = False
    density: Optional[Callable] = None

    def eta_factor(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        r2 = (coords ** 2).sum(axis=0)
        out = np.ones_like(r2)
        if self.poly is not None:
            out = out * np.real(np.array(
                [self.poly.eval_float(c) for c in coords.T]))
        if self.cutoff is not None:
            out = out * self.cutoff(np.sqrt(r2))
        if self.gaussian:
            out = out * np.exp(-r2)
        if self.density is not None:
            out = out * np.asarray(self.density(coords), dtype=float)
        return out

    def g_factor(self, x) -> np.ndarray:
        if self.g_profile is None:
            return np.ones_like(np.asarray(x, dtype=float))
        return self.g_profile(x)


# ---------------------------------------------------------------------------


class Sphere:
    """Radius-R sphere, area form, rotation about z with J = z."""

    kind = "sphere"

    def __init__(self, radius=1):
        self.radius = Fraction(radius)
        if self.radius <= 0:
            raise ModelError("radius must be positive")
        r = float(self.radius)
        self.group = GroupData(
            d=1, d_t=1, roots=(), vol_g=2 * math.pi * r,
            vol_t=2 * math.pi * r, weyl_order=1,
            principal_isotropy_order=1, kappa=1).validate()
        self.ambient_dim = 2

    # points are (x, y, z) with |.| = R; the chart language below works in
    # cylindrical coordinates (z, theta) where the area form is R dz dtheta.

    def momentum(self, eta, x=1.0) -> float:
        return float(x) * float(eta[2])

    def fundamental_field(self, eta):
        r = float(self.radius)
        return np.array([-eta[1] / r, eta[0] / r, 0.0])

    def flow(self, eta, x, t):
        ang = t * float(x) / float(self.radius)
        c, s = math.cos(ang), math.sin(ang)
        return np.array([c * eta[0] - s * eta[1],
                         s * eta[0] + c * eta[1], eta[2]])

    def fixed_components(self) -> List[FixedComponent]:
        r = self.radius
        north = FixedComponent(
            points=(Fraction(0), Fraction(0), r),
            j_value=LinForm([r]),
            weights=((LinForm([Fraction(-1, 1) / r]), 1),),
            rank_nf=2).validate()
        south = FixedComponent(
            points=(Fraction(0), Fraction(0), -r),
            j_value=LinForm([-r]),
            weights=((LinForm([Fraction(1, 1) / r]), 1),),
            rank_nf=2).validate()
        return [north, south]

    def isotropy_dim(self, eta) -> int:
        return 1 if abs(eta[0]) < 1e-14 and abs(eta[1]) < 1e-14 else 0

    def orbit_volume(self, eta) -> float:
        return 2 * math.pi * math.hypot(eta[0], eta[1])

    def xi_map(self, eta) -> SymMat:
        x = Fraction(eta[0]) if not isinstance(eta[0], float) else \
            Fraction(eta[0]).limit_denominator(10 ** 12)
        y = Fraction(eta[1]) if not isinstance(eta[1], float) else \
            Fraction(eta[1]).limit_denominator(10 ** 12)
        val = (x * x + y * y) / self.radius ** 2
        if val == 0:
            raise ModelError("trivial orbit")
        return SymMat([[val]])

    def lie_derivative_map(self, eta, x):
        if self.isotropy_dim(eta) == 0 and float(x) != 0.0:
            raise ModelError("X not in the isotropy algebra")
        return np.zeros((1, 1))

    # measure: dA = R dz dtheta over z in [-R, R], theta in [0, 2 pi)

    def area_integral(self, f: Callable, nz: int = 256,
                      ntheta: int = 128) -> float:
        r = float(self.radius)
        z, wz = _cached_leggauss(nz)
        z = z * r
        wz = wz * r
        th = 2 * math.pi * (np.arange(ntheta) + 0.5) / ntheta
        wt = 2 * math.pi / ntheta
        zz, tt = np.meshgrid(z, th, indexing="ij")
        rho = np.sqrt(np.maximum(r ** 2 - zz ** 2, 0.0))
        pts = np.stack([rho * np.cos(tt), rho * np.sin(tt), zz])
        vals = f(pts)
        return float(np.einsum("ij,i->", np.asarray(vals, float) * wt, wz)
                     ) * 1.0

    def l_alpha(self, x, density: Callable = None) -> complex:
        """L(X) = int e^{i X z} rho(eta) dA, by (z, theta) quadrature."""
        r = float(self.radius)
        panels = max(16, int(abs(x) * r / 2.0) + 1)
        xg, wg = _cached_leggauss(16)
        edges = np.linspace(-r, r, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        z = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        wz = (half[:, None] * wg[None, :]).ravel()
        if density is None:
            ring = 2 * math.pi * np.ones_like(z)
        else:
            ntheta = 64
            th = 2 * math.pi * (np.arange(ntheta) + 0.5) / ntheta
            zz, tt = np.meshgrid(z, th, indexing="ij")
            rho = np.sqrt(np.maximum(r ** 2 - zz ** 2, 0.0))
            pts = np.stack([rho * np.cos(tt), rho * np.sin(tt), zz])
            ring = np.asarray(density(pts), float).mean(axis=1) * 2 * math.pi
        vals = ring * np.exp(1j * float(x) * z)
        return complex(np.dot(vals, wz))

    def stratum_points(self, sigma: float, n: int):
        """Level circle {z = sigma} with its induced length measure."""
        r = float(self.radius)
        if abs(sigma) >= r:
            raise ModelError("empty stratum")
        rho = math.sqrt(r * r - sigma * sigma)
        th = 2 * math.pi * (np.arange(n) + 0.5) / n
        pts = np.stack([rho * np.cos(th), rho * np.sin(th),
                        np.full(n, sigma)])
        w = np.full(n, 2 * math.pi * rho / n)
        return pts, w


class CotangentCircle:
    """T*S^1 with coordinates (theta, p); J = p; the action is free."""

    kind = "cotangent-circle"

    def __init__(self):
        self.group = GroupData(
            d=1, d_t=1, roots=(), vol_g=2 * math.pi, vol_t=2 * math.pi,
            weyl_order=1, principal_isotropy_order=1, kappa=1).validate()
        self.ambient_dim = 2

    def momentum(self, eta, x=1.0) -> float:
        return float(x) * float(eta[1])

    def fundamental_field(self, eta):
        return np.array([1.0, 0.0])

    def flow(self, eta, x, t):
        return np.array([(eta[0] + t * float(x)) % (2 * math.pi), eta[1]])

    def fixed_components(self) -> List[FixedComponent]:
        return []

    def isotropy_dim(self, eta) -> int:
        return 0

    def orbit_volume(self, eta) -> float:
        return 2 * math.pi

    def xi_map(self, eta) -> SymMat:
        return SymMat([[1]])

    def lie_derivative_map(self, eta, x):
        if float(x) != 0.0:
            raise ModelError("X not in the isotropy algebra")
        return np.zeros((1, 1))

    def stratum_points(self, sigma: float, n: int):
        th = 2 * math.pi * (np.arange(n) + 0.5) / n
        pts = np.stack([th, np.full(n, sigma)])
        w = np.full(n, 2 * math.pi / n)
        return pts, w


def _antisym_check(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    for i in range(n):
        for j in range(n):
            if m[i][j] != -m[j][i]:
                raise ModelError(
                    f"generator not antisymmetric at entry ({i},{j})")
    return m


def _commute_check(gens):
    n = len(gens[0])
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            for i in range(n):
                for j in range(n):
                    ab = sum(gens[a][i][k] * gens[b][k][j]
                             for k in range(n))
                    ba = sum(gens[b][i][k] * gens[a][k][j]
                             for k in range(n))
                    if ab != ba:
                        raise ModelError(
                            f"generators {a} and {b} do not commute")


@dataclass(frozen=True)
class RotationPlane:
    axes: tuple              # (i, j) coordinate pair
    speeds: tuple            # Fraction per generator


class LinearCotangent:
    """T*R^n with commuting antisymmetric generators; J_X(q,p) = <Xq, p>."""

    kind = "linear-cotangent"

    def __init__(self, n: int, generators: Sequence):
        self.n = int(n)
        gens = []
        for idx, g in enumerate(generators):
            try:
                gens.append(_antisym_check(g))
            except ModelError as exc:
                raise ModelError(f"generator {idx}: {exc}") from None
        for g in gens:
            if len(g) != self.n:
                raise ModelError("generator size does not match n")
        _commute_check(gens)
        self.generators = gens
        self.k = len(gens)
        self.planes = self._extract_planes()
        self.ambient_dim = 2 * self.n
        covered = {a for pl in self.planes for a in pl.axes}
        if len(covered) < self.n:
            raise ModelError("generators leave a common fixed subspace; "
                             "catalog requires isolated fixed points")
        kappa = self._principal_orbit_dim()
        self.group = GroupData(
            d=self.k, d_t=self.k, roots=(), vol_g=(2 * math.pi) ** self.k,
            vol_t=(2 * math.pi) ** self.k, weyl_order=1,
            principal_isotropy_order=1, kappa=kappa).validate()

    def _extract_planes(self) -> List[RotationPlane]:
        """Require generators in common 2x2 block-rotation form."""
        planes = []
        used = set()
        for i in range(self.n):
            for j in range(i + 1, self.n):
                speeds = []
                for g in self.generators:
                    speeds.append(g[j][i])
                if any(s != 0 for s in speeds):
                    for g in self.generators:
                        if g[i][j] != -g[j][i]:
                            raise ModelError("generator not block form")
                    if i in used or j in used:
                        raise ModelError("generators not simultaneously "
                                         "block-diagonal")
                    used.add(i)
                    used.add(j)
                    planes.append(RotationPlane(axes=(i, j),
                                                speeds=tuple(speeds)))
        for pl in planes:
            i, j = pl.axes
            for g in self.generators:
                for c in range(self.n):
                    if c not in (i, j) and (g[i][c] != 0 or g[j][c] != 0):
                        raise ModelError("generators not block-diagonal")
        return planes

    def _principal_orbit_dim(self) -> int:
        rows = [pl.speeds for pl in self.planes]
        return _rank_frac([list(r) for r in rows])

    # -- basic operations ---------------------------------------------------

    def generator_matrix(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros((self.n, self.n))
        for g, xi in zip(self.generators, x):
            out += xi * np.array([[float(v) for v in row] for row in g])
        return out

    def momentum(self, eta, x) -> float:
        q, p = np.asarray(eta[:self.n], float), np.asarray(
            eta[self.n:], float)
        a = self.generator_matrix(x)
        return float(a.dot(q).dot(p))

    def momentum_vector(self, eta) -> np.ndarray:
        """(J_{X_1}, ..., J_{X_k}) at eta."""
        return np.array([self.momentum(eta, _unit(self.k, i))
                         for i in range(self.k)])

    def fundamental_field(self, eta, x=None) -> np.ndarray:
        if x is None:
            x = _unit(self.k, 0)
        a = self.generator_matrix(x)
        q, p = np.asarray(eta[:self.n], float), np.asarray(
            eta[self.n:], float)
        return np.concatenate([a.dot(q), a.dot(p)])

    def flow(self, eta, x, t):
        from scipy.linalg import expm
        a = expm(t * self.generator_matrix(x))
        q, p = np.asarray(eta[:self.n], float), np.asarray(
            eta[self.n:], float)
        return np.concatenate([a.dot(q), a.dot(p)])

    def fixed_components(self) -> List[FixedComponent]:
        weights = []
        for pl in self.planes:
            lam = LinForm(list(pl.speeds))
            weights.append((lam, 1))
            weights.append((-lam, 1))
        return [FixedComponent(
            points=tuple(Fraction(0) for _ in range(2 * self.n)),
            j_value=LinForm([0] * self.k),
            weights=tuple(weights),
            rank_nf=4 * len(self.planes)).validate()]

    def isotropy_dim(self, eta) -> int:
        rows = []
        for pl in self.planes:
            i, j = pl.axes
            if any(abs(float(eta[a])) > 1e-13
                   for a in (i, j, self.n + i, self.n + j)):
                rows.append(list(pl.speeds))
        return self.k - _rank_frac(rows)

    def isotropy_basis(self, eta) -> List[np.ndarray]:
        """Orthonormal basis of g_eta (in generator coordinates)."""
        rows = []
        for pl in self.planes:
            i, j = pl.axes
            if any(abs(float(eta[a])) > 1e-13
                   for a in (i, j, self.n + i, self.n + j)):
                rows.append([float(s) for s in pl.speeds])
        if not rows:
            return [np.eye(self.k)[i] for i in range(self.k)]
        a = np.array(rows)
        _, sv, vt = np.linalg.svd(a)
        rank = int((sv > 1e-12 * max(1.0, sv[0])).sum())
        return [vt[i] for i in range(rank, self.k)]

    def gram(self, eta) -> np.ndarray:
        fields = [self.fundamental_field(eta, _unit(self.k, i))
                  for i in range(self.k)]
        return np.array([[float(np.dot(a, b)) for b in fields]
                         for a in fields])

    def xi_map(self, eta) -> SymMat:
        """Gram matrix of the fundamental fields restricted to g.eta, in an
        orthonormal basis of the orbit tangent (exact at rational points)."""
        fields = []
        for i in range(self.k):
            f = self._field_exact(eta, i)
            fields.append(f)
        grams = [[sum(a * b for a, b in zip(fa, fb)) for fb in fields]
                 for fa in fields]
        active = [i for i in range(self.k)
                  if any(v != 0 for v in fields[i])]
        if not active:
            raise ModelError("trivial orbit")
        sub = [[grams[i][j] for j in active] for i in active]
        if _rank_frac([list(map(Fraction, r)) for r in sub]) < len(active):
            # dependent fields: restrict to an exact independent subset
            raise ModelError("xi_map needs independent fundamental fields "
                             "at this point")
        return SymMat(sub)

    def _field_exact(self, eta, i):
        eta = [Fraction(x).limit_denominator(10 ** 12)
               if isinstance(x, float) else Fraction(x) for x in eta]
        g = self.generators[i]
        q, p = eta[:self.n], eta[self.n:]
        gq = [sum(g[r][c] * q[c] for c in range(self.n))
              for r in range(self.n)]
        gp = [sum(g[r][c] * p[c] for c in range(self.n))
              for r in range(self.n)]
        return gq + gp

    def orbit_volume(self, eta) -> float:
        fields = [np.asarray([float(v) for v in self._field_exact(eta, i)])
                  for i in range(self.k)]
        active = [i for i in range(self.k)
                  if np.linalg.norm(fields[i]) > 1e-13]
        if not active:
            return 0.0
        gram = np.array([[float(np.dot(fields[i], fields[j]))
                          for j in active] for i in active])
        det = float(np.linalg.det(gram))
        # period lattice: unit-speed catalog generators have period 2 pi
        return (2 * math.pi) ** len(active) * math.sqrt(max(det, 0.0)) \
            / self._stabilizer_order(eta)

    def _stabilizer_order(self, eta) -> int:
        # catalog generators act with coprime integer speeds; the finite
        # stabilizer of a point off the fixed set is trivial
        return 1

    def lie_derivative_map(self, eta, x) -> np.ndarray:
        """Matrix of the bracket action of X in g_eta on the orbit tangent."""
        x = np.asarray(x, dtype=float)
        scale = max(1.0, float(np.linalg.norm(x)),
                    float(np.max(np.abs(np.asarray(eta, float)))))
        if np.linalg.norm(self.fundamental_field(eta, x)) > 1e-10 * scale:
            raise ModelError("X not in the isotropy algebra")
        fields = [self.fundamental_field(eta, _unit(self.k, i))
                  for i in range(self.k)]
        active = [i for i in range(self.k)
                  if np.linalg.norm(fields[i]) > 1e-13]
        ax = self.generator_matrix(x)
        out = np.zeros((len(active), len(active)))
        basis_vecs = [fields[i] / np.linalg.norm(fields[i])
                      for i in active]
        for col, i in enumerate(active):
            ai = self.generator_matrix(_unit(self.k, i))
            comm = ai.dot(ax) - ax.dot(ai)     # [X~, Y~] for linear fields
            q, p = np.asarray(eta[:self.n], float), np.asarray(
                eta[self.n:], float)
            vec = np.concatenate([comm.dot(q), comm.dot(p)])
            for row in range(len(active)):
                out[row, col] = float(np.dot(vec, basis_vecs[row]))
        return out

    def stratum_points(self, sigma, n_r: int, n_ang: int, rmax: float,
                       which: str = "para"):
        raise NotImplementedError("use resolution.direct_leading quadrature")


def _unit(k, i):
    v = np.zeros(k)
    v[i] = 1.0
    return v


def _rank_frac(rows) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0),
                   None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
        if r == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# catalog constructors and config ingestion

J90 = [[0, -1], [1, 0]]


def rotation_generator(n: int, plane: Tuple[int, int],
                       speed=1) -> List[List[Fraction]]:
    g = [[Fraction(0)] * n for _ in range(n)]
    i, j = plane
    g[i][j] = -Fraction(speed)
    g[j][i] = Fraction(speed)
    return g


def make_model(kind: str, **kw):
    if kind == "sphere":
        return Sphere(kw.get("radius", 1))
    if kind == "cotangent-circle":
        return CotangentCircle()
    if kind in ("linear-cotangent", "linrot2"):
        if kind == "linrot2":
            return LinearCotangent(2, [rotation_generator(2, (0, 1))])
        return LinearCotangent(kw["n"], kw["generators"])
    if kind == "linrot4":
        return LinearCotangent(4, [rotation_generator(4, (0, 1)),
                                   rotation_generator(4, (2, 3))])
    raise ModelError(f"unknown model kind {kind!r}")


def model_from_config(cfg: dict):
    """Build a model from the JSON config schema
    {kind, n, generators:[[...]], roots:[[...]], bump:{R, order}}."""
    kind = cfg.get("kind")
    if kind is None:
        raise ModelError("config missing 'kind'")
    if kind == "sphere":
        model = Sphere(cfg.get("radius", 1))
    elif kind == "cotangent-circle":
        model = CotangentCircle()
    elif kind in ("linear-cotangent", "linrot2", "linrot4"):
        if kind == "linrot2":
            model = make_model("linrot2")
        elif kind == "linrot4":
            model = make_model("linrot4")
        else:
            model = LinearCotangent(cfg["n"], cfg["generators"])
    else:
        raise ModelError(f"unknown model kind {kind!r}")
    model.group.validate()
    return model


def default_amplitude(model, bump_cfg: Optional[dict] = None) -> Amplitude:
    bump_cfg = bump_cfg or {}
    radius = bump_cfg.get("R", 1.0)
    order = bump_cfg.get("order", 6)
    return Amplitude(
        g_profile=Bump(radius=radius, order=order, kind="poly"),
        gaussian=(getattr(model, "kind", "") == "linear-cotangent"))


def stratum_sampler(model, sigma: float, n: int, seed: int = 1):
    """Quasi-random points of Reg Omega_sigma with surface-measure weights.

    Stratified-jittered sampling; weights are cell measures, so their sum
    estimates the stratum measure of the sampled region.  Every sample
    satisfies |J(eta) - sigma| < 1e-12 and has principal isotropy.
    """
    rng = np.random.default_rng(seed)
    if isinstance(model, (Sphere, CotangentCircle)):
        pts, w = model.stratum_points(sigma, n)
        jitter = (rng.uniform(-0.5, 0.5, size=n)) * (2 * math.pi / n)
        pts = pts.copy()
        if isinstance(model, Sphere):
            th = np.arctan2(pts[1], pts[0]) + jitter
            rho = np.hypot(pts[0, 0], pts[1, 0])
            pts = np.stack([rho * np.cos(th), rho * np.sin(th), pts[2]])
        else:
            pts = np.stack([(pts[0] + jitter) % (2 * math.pi), pts[1]])
        return pts, w
    if isinstance(model, LinearCotangent) and model.n == 2:
        if sigma != 0.0:
            raise ModelError("planar rotation stratum sampled at the "
                             "singular level 0")
        # Omega \ {0} = {(r u, s u)}: (r, s) in R^2, phi in [0, pi);
        # surface measure sqrt(r^2 + s^2) dr ds dphi
        rmax = 4.0
        k = max(2, int(round(n ** (1.0 / 3.0))))
        n_phi = max(2, n // (k * k))
        rs = np.linspace(-rmax, rmax, k + 1)
        phis = np.linspace(0.0, math.pi, n_phi + 1)
        pts = []
        wts = []
        dr = rs[1] - rs[0]
        dphi = phis[1] - phis[0]
        for i in range(k):
            for j in range(k):
                for l in range(n_phi):
                    r = rs[i] + rng.uniform(0, dr)
                    s = rs[j] + rng.uniform(0, dr)
                    ph = phis[l] + rng.uniform(0, dphi)
                    u = np.array([math.cos(ph), math.sin(ph)])
                    pts.append(np.concatenate([r * u, s * u]))
                    wts.append(math.hypot(r, s) * dr * dr * dphi)
        return np.stack(pts, axis=1), np.asarray(wts)
    raise ModelError("no stratum sampler for this model")
