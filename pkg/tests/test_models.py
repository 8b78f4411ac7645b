import math
import random
from fractions import Fraction

import numpy as np
import pytest

from equiloc.models import (Amplitude, CotangentCircle, GroupData,
                            LinearCotangent, ModelError, Sphere, make_model,
                            model_from_config, rotation_generator)
from equiloc.mpoly import LinForm
from equiloc.symmat import ldlt


def test_momentum_examples():
    m = make_model("linrot2")
    assert m.momentum([1, 0, 0, 1], [1]) == pytest.approx(1.0)
    s = Sphere(1)
    assert s.momentum([0.0, math.sqrt(0.75), 0.5], 1.0) == pytest.approx(0.5)
    c = CotangentCircle()
    assert c.momentum([0.0, 2.0], 1.0) == pytest.approx(2.0)


def test_momentum_linear_in_x():
    m = make_model("linrot4")
    rng = np.random.default_rng(2)
    for _ in range(10):
        eta = rng.normal(size=8)
        x1 = rng.normal(size=2)
        x2 = rng.normal(size=2)
        a, b = rng.normal(size=2)
        lhs = m.momentum(eta, a * x1 + b * x2)
        rhs = a * m.momentum(eta, x1) + b * m.momentum(eta, x2)
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_equivariance_over_torus():
    m = make_model("linrot2")
    rng = np.random.default_rng(3)
    for _ in range(8):
        eta = rng.normal(size=4)
        x = rng.normal(size=1)
        t = rng.uniform(0, 2 * math.pi)
        geta = m.flow(eta, [1.0], -t)       # g^{-1} eta
        # abelian: Ad(g) X = X
        assert m.momentum(geta, x) == pytest.approx(
            m.momentum(eta, x), abs=1e-10)


def _omega(u, v, n):
    """omega = sum dp_i ^ dq_i on R^{2n}: omega(u, v) = <u_p, v_q> - <v_p, u_q>."""
    return float(np.dot(u[n:], v[:n]) - np.dot(v[n:], u[:n]))


def test_hamiltonian_identity_finite_differences():
    # dJ_X + iota_{X~} omega = 0 at random points
    m = make_model("linrot2")
    rng = np.random.default_rng(4)
    h = 1e-6
    for _ in range(10):
        eta = rng.normal(size=4)
        x = [rng.normal()]
        v = rng.normal(size=4)
        dj = (m.momentum(eta + h * v, x) - m.momentum(eta - h * v, x)) / (
            2 * h)
        xf = m.fundamental_field(eta, x)
        assert dj + _omega(xf, v, 2) == pytest.approx(0.0, abs=1e-7)


def test_fixed_components_catalog():
    s = Sphere(1)
    comps = s.fixed_components()
    assert len(comps) == 2
    north = next(f for f in comps if f.j_value.coeffs == (Fraction(1),))
    south = next(f for f in comps if f.j_value.coeffs == (Fraction(-1),))
    assert north.weights[0][0].coeffs == (Fraction(-1),)
    assert south.weights[0][0].coeffs == (Fraction(1),)
    assert north.rank_nf == 2
    assert CotangentCircle().fixed_components() == []
    m = make_model("linrot2")
    (fc,) = m.fixed_components()
    assert fc.rank_nf == 4
    assert sorted(w.coeffs[0] for w, _ in fc.weights) == [-1, 1]


def test_fixed_set_exhausts_vanishing_field():
    # for regular Y, the vanishing locus of Y~ on a dense sample is F^T
    m = make_model("linrot2")
    rng = np.random.default_rng(5)
    for _ in range(200):
        eta = rng.normal(size=4)
        assert np.linalg.norm(m.fundamental_field(eta, [1.0])) > 1e-8
    assert np.linalg.norm(m.fundamental_field(np.zeros(4), [1.0])) == 0.0


def test_orbit_volume_and_isotropy():
    m = make_model("linrot2")
    assert m.orbit_volume([1, 0, 2, 0]) == pytest.approx(
        2 * math.pi * math.sqrt(5), rel=1e-12)
    assert m.isotropy_dim([1, 0, 2, 0]) == 0
    assert m.orbit_volume([0, 0, 0, 0]) == 0.0
    assert m.isotropy_dim([0, 0, 0, 0]) == 1
    s = Sphere(1)
    assert s.orbit_volume([1, 0, 0]) == pytest.approx(2 * math.pi)
    assert s.isotropy_dim([1, 0, 0]) == 0


def test_xi_map_examples_and_scaling():
    m = make_model("linrot2")
    assert m.xi_map([1, 0, 2, 0]).entries == ((Fraction(5),),)
    assert Sphere(1).xi_map([1, 0, 0]).entries == ((Fraction(1),),)
    base = m.xi_map([1, 0, 2, 0]).entries[0][0]
    scaled = m.xi_map([3, 0, 6, 0]).entries[0][0]
    assert scaled == 9 * base


def test_xi_det_identity_random_points():
    # |det Xi|^{1/2} = vol(G.eta) |G_eta| / vol G, relative 1e-10
    rng = np.random.default_rng(6)
    m = make_model("linrot2")
    for _ in range(10):
        eta = [Fraction(rng.integers(-6, 7), int(rng.integers(1, 5)))
               for _ in range(4)]
        if all(v == 0 for v in eta):
            continue
        lhs = math.sqrt(float(ldlt(m.xi_map(eta)).det))
        rhs = m.orbit_volume([float(v) for v in eta]) / m.group.vol_g
        assert lhs == pytest.approx(rhs, rel=1e-10)
    m4 = make_model("linrot4")
    for _ in range(6):
        eta = [Fraction(rng.integers(-5, 6), int(rng.integers(1, 4)))
               for _ in range(8)]
        try:
            xi = m4.xi_map(eta)
        except ModelError:
            continue
        if xi.dim < 2:
            continue
        lhs = math.sqrt(abs(float(ldlt(xi).det)))
        rhs = m4.orbit_volume([float(v) for v in eta]) / m4.group.vol_g
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_lie_derivative_map():
    m = make_model("linrot2")
    assert np.allclose(m.lie_derivative_map([1, 0, 2, 0], [0.0]), 0.0)
    with pytest.raises(ModelError):
        m.lie_derivative_map([1, 0, 2, 0], [1.0])
    m4 = make_model("linrot4")
    eta = [1, 0, 0, 0, 0, 2, 0, 0]      # fixed by the second generator
    L = m4.lie_derivative_map(eta, [0.0, 1.0])
    assert np.allclose(L, 0.0)           # commuting generators


def test_lie_derivative_flow_conjugation():
    # [X~, Y~]_eta by finite-difference flow conjugation for linear fields
    m = make_model("linrot4")
    eta = np.array([1.0, 0, 0, 0, 0, 2.0, 0, 0])
    x = np.array([0.0, 1.0])
    y = np.array([1.0, 0.0])
    h = 1e-6

    def pushed(t):
        # (e^{-tX})_* Y~ (e^{tX} eta)
        from scipy.linalg import expm
        ax = m.generator_matrix(x)
        g = expm(-t * ax)
        pt = m.flow(eta, x, t)
        f = m.fundamental_field(pt, y)
        return np.concatenate([g @ f[:4], g @ f[4:]])

    fd = (pushed(h) - pushed(-h)) / (2 * h)
    assert np.allclose(fd, 0.0, atol=1e-7)   # commuting: bracket zero


def test_stratum_samplers():
    s = Sphere(1)
    pts, w = s.stratum_points(0.0, 256)
    assert w.sum() == pytest.approx(2 * math.pi, rel=1e-12)
    assert np.max(np.abs(pts[2])) < 1e-12
    for i in range(0, 256, 37):
        assert abs(s.momentum(pts[:, i]) - 0.0) < 1e-12
        assert s.isotropy_dim(pts[:, i]) == 0
    c = CotangentCircle()
    pts, w = c.stratum_points(0.7, 128)
    assert w.sum() == pytest.approx(2 * math.pi, rel=1e-12)
    assert np.max(np.abs(pts[1] - 0.7)) < 1e-15


def test_sphere_stratum_empty():
    with pytest.raises(ModelError):
        Sphere(1).stratum_points(1.5, 16)


def test_group_data_validation():
    with pytest.raises(ModelError):
        GroupData(d=3, d_t=1, roots=(), vol_g=1.0, vol_t=1.0,
                  weyl_order=1, principal_isotropy_order=1,
                  kappa=1).validate()
    with pytest.raises(ModelError):
        GroupData(d=1, d_t=1, roots=(), vol_g=1.0, vol_t=1.0,
                  weyl_order=1, principal_isotropy_order=1,
                  kappa=2).validate()


def test_config_validation_names_bad_generator():
    cfg = {"kind": "linear-cotangent", "n": 2,
           "generators": [[[0, 1], [1, 0]]]}
    with pytest.raises(ModelError, match=r"\(0,1\)|antisymmetric"):
        model_from_config(cfg)
    ok = model_from_config({"kind": "linear-cotangent", "n": 2,
                            "generators": [[[0, -1], [1, 0]]]})
    assert ok.group.kappa == 1


def test_noncommuting_generators_rejected():
    g1 = rotation_generator(3, (0, 1))
    g2 = rotation_generator(3, (1, 2))
    with pytest.raises(ModelError, match="commute"):
        LinearCotangent(3, [g1, g2])


def test_amplitude_factors():
    from equiloc.bumps import Bump
    amp = Amplitude(gaussian=True,
                    g_profile=Bump(radius=1.0, order=6, kind="poly"))
    coords = np.array([[1.0], [0.0], [0.0], [0.0]])
    assert amp.eta_factor(coords)[0] == pytest.approx(math.exp(-1.0))
    assert amp.g_factor(0.0) == pytest.approx(1.0)
    assert amp.g_factor(2.0) == pytest.approx(0.0)


def test_stratum_sampler_planar_rotation():
    from equiloc.models import stratum_sampler
    m = make_model("linrot2")
    pts, w = stratum_sampler(m, 0.0, 14 ** 3, seed=3)
    for i in range(0, pts.shape[1], 211):
        eta = pts[:, i]
        assert abs(m.momentum(eta, [1.0])) < 1e-12
        assert m.isotropy_dim(eta) == m.group.d - m.group.kappa
    # weight sum estimates the stratum measure of the sampled box
    from scipy.integrate import dblquad
    ref = math.pi * dblquad(lambda s, r: math.hypot(r, s), -4.0, 4.0,
                            -4.0, 4.0)[0]
    assert float(w.sum()) == pytest.approx(ref, rel=0.02)


def test_stratum_sampler_level_constraint():
    from equiloc.models import stratum_sampler
    pts, w = stratum_sampler(CotangentCircle(), 0.7, 64, seed=2)
    assert np.max(np.abs(pts[1] - 0.7)) < 1e-12
    assert w.sum() == pytest.approx(2 * math.pi, rel=1e-12)
