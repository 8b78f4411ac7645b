import random
from fractions import Fraction

import pytest

from equiloc.mpoly import LinForm, MPoly, poly_ops


def rand_poly(rng, dim, deg=3, terms=4):
    tt = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(dim))
        tt[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return MPoly(dim, tt)


def test_ring_axioms_randomized():
    rng = random.Random(3)
    for _ in range(120):
        dim = rng.choice([1, 2])
        p, q, r = (rand_poly(rng, dim) for _ in range(3))
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + MPoly.zero(dim) == p
        assert p * MPoly.constant(dim, 1) == p


def test_poly_ops_examples():
    y1sq = MPoly(1, {(2,): Fraction(1)})
    y1 = MPoly.variable(1, 0)
    assert poly_ops(y1sq, "add", y1) == MPoly(1, {(2,): Fraction(1),
                                                  (1,): Fraction(1)})
    y1y2 = MPoly(2, {(1, 1): Fraction(1)})
    assert poly_ops(y1y2, "diff", 0) == MPoly.variable(2, 1)
    # Phi for the single root 2Y evaluated at Y = 3
    phi = LinForm([2]).to_mpoly()
    assert poly_ops(phi, "eval", [Fraction(3)]) == Fraction(6)


def test_dim_mismatch_errors():
    p = MPoly.variable(1, 0)
    q = MPoly.variable(2, 0)
    with pytest.raises(ValueError):
        p + q
    with pytest.raises(ValueError):
        p.eval([1, 2])


def test_diff_reduces_degree_and_eval_exact():
    rng = random.Random(9)
    for _ in range(50):
        p = rand_poly(rng, 2)
        v = rng.choice([0, 1])
        if p.degree_in(v) > 0:
            assert p.diff(v).degree_in(v) == p.degree_in(v) - 1
        pt = [Fraction(rng.randint(-4, 4), rng.randint(1, 4))
              for _ in range(2)]
        direct = sum(c * pt[0] ** e[0] * pt[1] ** e[1]
                     for e, c in p.terms.items())
        assert p.eval(pt) == direct


def test_substitute_vars():
    p = MPoly(2, {(1, 1): Fraction(1)})       # Y0*Y1
    img0 = MPoly(2, {(1, 0): Fraction(1), (0, 1): Fraction(2)})  # Y0+2Y1
    img1 = MPoly.variable(2, 1)
    out = p.substitute_vars([img0, img1])
    assert out == MPoly(2, {(1, 1): Fraction(1), (0, 2): Fraction(2)})


def test_linform_algebra():
    a = LinForm([1, -2])
    b = LinForm([Fraction(1, 2), 3])
    assert (a + b).coeffs == (Fraction(3, 2), Fraction(1))
    assert (-a).coeffs == (Fraction(-1), Fraction(2))
    assert a([Fraction(2), Fraction(1)]) == 0
    assert a.to_mpoly() == MPoly(2, {(1, 0): Fraction(1),
                                     (0, 1): Fraction(-2)})
