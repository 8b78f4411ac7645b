"""Fixed-point localization sums, Duistermaat-Heckman measures, ray
residues, Weyl-factor plumbing, smeared delta-limits, and the pairing with
the reduced-space integral.

Normalization is pinned by one calibration identity: for the unit sphere
with the area form, the smeared limit of the transformed distribution must
equal 4 pi^2.  With the transform convention of piecewise.py this fixes the
pairing constant to (2 pi)^{d_T} * vol G / (|W| vol T); `calibrate`
recomputes the smeared side by quadrature and returns the measured ratio.
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

from scipy.integrate import quad

from .bumps import Bump, SmearingKernel
from .models import (Amplitude, CotangentCircle, FixedComponent,
                     LinearCotangent, ModelError, Sphere)
from .mpoly import LinForm, MPoly
from .oscillatory import CleanPhase, BaseNode, sp_coefficients
from .piecewise import PiecewisePoly, admissible_cone, ft_shifted
from .ratexp import RatExp, RatTerm
from .scalars import CRat, TwoPi, i_power


class NoFixedPointsError(RuntimeError):
    def __init__(self):
        super().__init__("no fixed points: localization sum not applicable")


class RegularityError(ValueError):
    pass


@dataclass
class EquivariantForm:
    """Closed basic data reduced to a density against the reference top
    form (Liouville/area), optionally with an equivariantly exact part.

    density: callable on model coordinates, or None for the constant 1;
    scale: exact rational multiple; exact_beta: profile function f defining
    beta = f * dtheta in the model's angular coordinate (the catalog's Dbeta
    family); poly_coeff: optional S(g*) coefficient.
    """
    scale: Fraction = Fraction(1)
    density: Optional[Callable] = None
    exact_beta: Optional[Callable] = None
    poly_coeff: Optional[MPoly] = None

    @property
    def is_exact(self) -> bool:
        return self.exact_beta is not None

    def value_at(self, point) -> float:
        v = float(self.scale)
        if self.density is not None:
            v *= float(self.density(np.asarray(point, dtype=float)))
        return v


@dataclass
class EulerExpansion:
    """Nilpotent expansion record of 1/chi_NF for a non-point component:
    the inverse weight product times the finite geometric series in
    c_1/lambda_q (chern data kept formal; the catalog never evaluates it)."""
    weights: tuple
    chern_data: object
    max_order: int


def euler_inverse(fc: FixedComponent, y):
    """1/prod lambda_q(Y)^m for point components; an expansion record when
    first-Chern data is present."""
    if fc.chern_data is not None:
        return EulerExpansion(weights=fc.weights, chern_data=fc.chern_data,
                              max_order=len(fc.weights))
    exact = all(not isinstance(v, float) for v in y)
    out = Fraction(1) if exact else 1.0
    for form, mult in fc.weights:
        lam = form([Fraction(v) for v in y]) if exact else float(
            form([Fraction(v).limit_denominator(10 ** 12) for v in y]))
        if lam == 0:
            raise RegularityError(f"Y on the weight hyperplane {form}")
        out = out / lam ** mult
    return out


def _bv_constant(rank_nf: int) -> complex:
    return complex(TwoPi.of(i_power(rank_nf // 2), rank_nf // 2))


def bv_term(model, fc: FixedComponent, rho: EquivariantForm, y) -> complex:
    y = np.atleast_1d(np.asarray(y, dtype=float))
    inv = euler_inverse(fc, list(y))
    if isinstance(inv, EulerExpansion):
        raise NotImplementedError("nilpotent components not in the catalog")
    jval = float(fc.j_value(
        [Fraction(v).limit_denominator(10 ** 12) for v in y]))
    val = rho.value_at([float(f) for f in fc.points])
    return _bv_constant(fc.rank_nf) * complex(
        math.cos(jval), math.sin(jval)) * val * float(inv)


def bv_sum(model, rho: EquivariantForm, y) -> complex:
    comps = model.fixed_components()
    if not comps:
        raise NoFixedPointsError()
    return sum(bv_term(model, fc, rho, y) for fc in comps)


def u_f_symbolic(model, fc: FixedComponent,
                 rho: EquivariantForm) -> RatExp:
    """Exact fixed-point term: phase = J-value, denominators = weights."""
    if rho.density is not None:
        raise ModelError("symbolic route needs a constant form")
    d_t = model.group.d_t
    coeff = TwoPi.of(i_power(fc.rank_nf // 2) * CRat(rho.scale),
                     fc.rank_nf // 2)
    term = RatTerm(coeff, fc.j_value,
                   MPoly.constant(d_t, Fraction(1)), list(fc.weights))
    return RatExp(d_t, [term])


def weyl_factor(roots: Sequence[LinForm]):
    """(Phi, Phi^2) with Phi the product of the positive roots."""
    if not roots:
        dim = 1
    else:
        dim = roots[0].dim
    phi = MPoly.constant(dim, Fraction(1))
    for g in roots:
        phi = phi * g.to_mpoly()
    return phi, phi * phi


def weight_cone(model, prefer=None) -> List[LinForm]:
    forms = []
    for fc in model.fixed_components():
        for form, _ in fc.weights:
            forms.append(form)
    if not forms:
        raise NoFixedPointsError()
    return admissible_cone(forms, model.group.d_t, prefer=prefer)


def dh_measure(model, rho: EquivariantForm,
               cone: Optional[Sequence[LinForm]] = None) -> PiecewisePoly:
    """Pushforward-normalized piecewise-polynomial measure: the shifted
    transform of the summed fixed-point terms."""
    comps = model.fixed_components()
    if not comps:
        raise NoFixedPointsError()
    u = RatExp(model.group.d_t, [])
    for fc in comps:
        u = u + u_f_symbolic(model, fc, rho)
    cone = cone or weight_cone(model)
    return ft_shifted(u, cone)


def jk_residue(model, rho: EquivariantForm, direction,
               cone: Optional[Sequence[LinForm]] = None) -> TwoPi:
    """sum_F Res^{Lambda, sigma} of the transformed u_F Phi^2 terms, in the
    pushforward normalization (multiply by the pairing constant to match
    the smeared limit)."""
    comps = model.fixed_components()
    if not comps:
        raise NoFixedPointsError()
    _, phi2 = weyl_factor(model.group.roots)
    u = RatExp(model.group.d_t, [])
    for fc in comps:
        u = u + u_f_symbolic(model, fc, rho).mul_poly(phi2)
    cone = cone or weight_cone(model)
    U = ft_shifted(u, cone)
    return U.residue_ray(direction)


def pairing_constant(model) -> float:
    g = model.group
    return (2 * math.pi) ** g.d_t * g.vol_g / (g.weyl_order * g.vol_t)


# ---------------------------------------------------------------------------
# model L-evaluators


def l_alpha(model, rho: EquivariantForm, x: float,
            p_support: Tuple[float, float] = (-2.0, 2.0)) -> complex:
    """L(X) = int e^{i J_X} rho, reduced per model to low-dimensional
    quadrature (exact-form inputs use the total-derivative integrand)."""
    if isinstance(model, Sphere):
        if rho.is_exact:
            return _sphere_l_exact(model, rho, x)
        dens = None
        if rho.density is not None:
            dens = rho.density
        return float(rho.scale) * model.l_alpha(
            x, None if dens is None else dens)
    if isinstance(model, CotangentCircle):
        if rho.is_exact:
            return _cotangent_l_exact(model, rho, x, p_support)
        from .oracles import cotangent_l_alpha
        dens = rho.density or (lambda t, p: np.ones_like(t))
        return float(rho.scale) * cotangent_l_alpha(
            lambda t, p: dens(_pack(t, p)), x, *p_support)
    if isinstance(model, LinearCotangent):
        from .oracles import Linrot2Oracle
        if model.n != 2 or rho.density is not None or rho.is_exact:
            raise ModelError("LinearCotangent L-evaluator covers the "
                             "Gaussian rotation catalog entry")
        orc = _linrot2_oracle_cache(model)
        return float(rho.scale) * orc.l_alpha(x)
    raise ModelError("no L evaluator for this model")


def _pack(t, p):
    return np.stack([t, p])


_ORACLE_CACHE = {}


def _linrot2_oracle_cache(model):
    from .oracles import linrot2_oracle
    return linrot2_oracle(Bump(radius=1.0, order=6, kind="poly"))


def _sphere_l_exact(model: Sphere, rho: EquivariantForm, x: float) -> complex:
    """Dbeta with beta = f(z) dtheta: the (z-)integrand is an exact
    derivative, so the value is zero up to quadrature noise."""
    f = rho.exact_beta
    r = float(model.radius)
    z, w = _cached_leggauss(400)
    z = z * r
    w = w * r
    h = 1e-6
    fprime = (np.asarray(f(z + h)) - np.asarray(f(z - h))) / (2 * h)
    vals = (fprime + 1j * x * np.asarray(f(z))) * np.exp(1j * x * z)
    return 2 * math.pi * complex(np.dot(vals, w)) * float(rho.scale)


def _cotangent_l_exact(model, rho, x, p_support) -> complex:
    f = rho.exact_beta
    th = 2 * math.pi * (np.arange(128) + 0.5) / 128
    lo, hi = p_support
    xp, wp = _cached_leggauss(600)
    p = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xp
    wp = 0.5 * (hi - lo) * wp
    tt, pp = np.meshgrid(th, p, indexing="ij")
    h = 1e-6
    fp = (np.asarray(f(_pack(tt, pp + h))) -
          np.asarray(f(_pack(tt, pp - h)))) / (2 * h)
    vals = (fp + 1j * x * np.asarray(f(_pack(tt, pp)))) * np.exp(1j * x * pp)
    inner = vals.sum(axis=0) * (2 * math.pi / 128)
    return complex(np.dot(inner, wp)) * float(rho.scale)


# ---------------------------------------------------------------------------
# smeared limits and the reduced-space pairing


@dataclass
class SmearedResult:
    values: List[Tuple[float, float]]
    extrapolated: float
    converged: bool
    route: str = "smeared"


def l_alpha_batch(model, rho: EquivariantForm, xs: np.ndarray) -> np.ndarray:
    """Vectorized real part of L(X) over an array of X values."""
    xs = np.asarray(xs, dtype=float)
    if isinstance(model, Sphere) and not rho.is_exact:
        r = float(model.radius)
        from .models import _cached_leggauss
        z, w = _cached_leggauss(2048)
        z = z * r
        w = w * r
        if rho.density is None:
            ring = 2 * math.pi * r * np.ones_like(z)
        else:
            th = 2 * math.pi * (np.arange(64) + 0.5) / 64
            zz, tt = np.meshgrid(z, th, indexing="ij")
            rr = np.sqrt(np.maximum(r * r - zz ** 2, 0.0))
            pts = np.stack([rr * np.cos(tt), rr * np.sin(tt), zz])
            ring = np.asarray(rho.density(pts), float).mean(axis=1) \
                * 2 * math.pi * r
        mat = np.cos(np.outer(xs, z))
        return float(rho.scale) * (mat @ (ring * w))
    if isinstance(model, CotangentCircle) and not rho.is_exact:
        from .models import _cached_leggauss
        xp, wp = _cached_leggauss(1024)
        lo, hi = -2.0, 2.0
        p = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xp
        wp = 0.5 * (hi - lo) * wp
        th = 2 * math.pi * (np.arange(128) + 0.5) / 128
        tt, pp = np.meshgrid(th, p, indexing="ij")
        dens = np.ones_like(pp) if rho.density is None else \
            np.asarray(rho.density(np.stack([tt, pp])), float)
        prof = dens.sum(axis=0) * (2 * math.pi / 128)
        mat = np.cos(np.outer(xs, p))
        return float(rho.scale) * (mat @ (prof * wp))
    if isinstance(model, LinearCotangent) and not rho.is_exact and \
            rho.density is None:
        orc = _linrot2_oracle_cache(model)
        return float(rho.scale) * orc.l_alpha_batch(xs)
    return np.array([float(np.real(l_alpha(model, rho, x))) for x in xs])


_DEFAULT_KERNEL: List[SmearingKernel] = []


def default_kernel() -> SmearingKernel:
    if not _DEFAULT_KERNEL:
        _DEFAULT_KERNEL.append(SmearingKernel())
    return _DEFAULT_KERNEL[0]


def smeared_limit(model, rho: EquivariantForm,
                  kernel: Optional[SmearingKernel] = None,
                  eps_list: Sequence[float] = (0.2, 0.1, 0.05, 0.025),
                  x_max: float = 600.0) -> SmearedResult:
    """<F_g L, phi_eps> = int L(X) phi_hat(eps X) dX at each eps, then
    Richardson extrapolation with the even-kernel O(eps^2) ansatz."""
    kernel = kernel or default_kernel()
    from .quadrature import _gl
    xg, wg = _gl(16)
    panels = max(64, int(x_max / math.pi) + 1)
    edges = np.linspace(0.0, x_max, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    wts = (half[:, None] * wg[None, :]).ravel()
    lvals = l_alpha_batch(model, rho, nodes)
    vals = []
    for eps in eps_list:
        integrand = lvals * np.asarray(kernel.phi_hat(eps * nodes), float)
        v = float(np.dot(integrand, wts))
        vals.append((eps, 2.0 * v))
    ext = list(v for _, v in vals)
    seq = ext[:]
    eps_arr = [e for e, _ in vals]
    # Richardson on the eps^2 ladder (eps halves along the list)
    while len(seq) > 1:
        seq = [(4.0 * b - a) / 3.0 for a, b in zip(seq[:-1], seq[1:])]
    spread = max(ext) - min(ext)
    converged = abs(seq[0] - ext[-1]) < 0.05 * (1 + abs(seq[0]))
    return SmearedResult(values=vals, extrapolated=float(seq[0]),
                         converged=converged)


def kirwan_integral(model, rho: EquivariantForm, n: int = 2048) -> float:
    """(2 pi)^d vol G / |H| * int_{Reg Omega_0} r(rho) / vol O_eta."""
    g = model.group
    if g.kappa != g.d:
        raise ModelError("kirwan_integral requires kappa = d")
    pref = (2 * math.pi) ** g.d * g.vol_g / g.principal_isotropy_order
    if isinstance(model, (Sphere, CotangentCircle)):
        pts, w = model.stratum_points(0.0, n)
        dens = np.ones(pts.shape[1])
        if rho.density is not None:
            dens = np.asarray(rho.density(pts), dtype=float)
        vols = np.array([model.orbit_volume(pts[:, i])
                         for i in range(pts.shape[1])])
        return pref * float(rho.scale) * float(np.dot(w, dens / vols))
    if isinstance(model, LinearCotangent):
        from .resolution import direct_leading
        amp = Amplitude(gaussian=True,
                        g_profile=Bump(radius=1.0, order=6, kind="poly"))
        return (2 * math.pi) ** g.d * direct_leading(model, amp)
    raise ModelError("no stratum quadrature for this model")


@dataclass
class CalibrationStamp:
    pairing_constant: float
    measured: float
    ratio: float
    model: str = "sphere"

    def to_dict(self):
        return {"pairing_constant": self.pairing_constant,
                "measured": self.measured, "ratio": self.ratio,
                "model": self.model}


def calibrate(kernel: Optional[SmearingKernel] = None) -> CalibrationStamp:
    """Fix the transform normalization on the unit-sphere oracle: the
    smeared limit of the area form must equal 4 pi^2, while the exact
    residue side gives 2 pi; the ratio is the pairing constant."""
    sphere = Sphere(1)
    rho = EquivariantForm()
    sm = smeared_limit(sphere, rho, kernel)
    res = jk_residue(sphere, rho, (1,))
    exact_side = float(res) * sphere.group.vol_g / (
        sphere.group.weyl_order * sphere.group.vol_t)
    return CalibrationStamp(
        pairing_constant=pairing_constant(sphere),
        measured=sm.extrapolated,
        ratio=sm.extrapolated / exact_side,
        model="sphere")


# ---------------------------------------------------------------------------
# localization with remainder: per-component expansions in 1/|Y|


@dataclass
class AsymptoticL:
    terms: List[complex]
    total: Callable
    order: int


def asymptotic_l(model, rho: EquivariantForm, order: int = 1,
                 tube: float = 0.8) -> AsymptoticL:
    """Per-fixed-component stationary-phase expansions of L(Y) in 1/|Y|
    (mu = 1/|Y|), assembled from orthographic charts at the poles."""
    if not isinstance(model, Sphere):
        raise ModelError("asymptotic_l is shipped for the sphere catalog")
    r = float(model.radius)
    expansions = []
    for sgn in (+1.0, -1.0):
        def psi(s, _sgn=sgn):
            s = np.asarray(s, dtype=float)
            return _sgn * math.sqrt(max(r * r - float(s[0]) ** 2 -
                                        float(s[1]) ** 2, 1e-300))

        def amp(s, _sgn=sgn):
            s = np.asarray(s, dtype=float)
            rho2 = float(s[0]) ** 2 + float(s[1]) ** 2
            if rho2 >= (tube * r) ** 2:
                return 0.0
            z = _sgn * math.sqrt(r * r - rho2)
            jac = r / abs(z)
            pt = np.array([s[0], s[1], z])
            dens = rho.value_at(pt)
            cut = Bump(radius=tube * r, order=8, kind="plateau", flat=0.6)
            return dens * jac * float(cut(math.sqrt(rho2)))

        node = BaseNode(weight=1.0, psi_num=psi, amp_num=amp)
        phase = CleanPhase(rank=2, psi0=sgn * r, nodes=[node])
        expansions.append(sp_coefficients(phase, order, method="fd"))

    def total(y: float) -> complex:
        mu = 1.0 / abs(y)
        out = 0j
        for e in expansions:
            out += e.evaluate(mu)
        return out

    return AsymptoticL(terms=[e.coefficients for e in expansions],
                       total=total, order=order)
