"""Exponential-rational expressions: sums of c * e^{i a(Y)} P(Y) / prod l_j(Y)^{r_j}.

This is the exact carrier for fixed-point contributions; the shifted
Fourier transform in piecewise.py consumes it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .mpoly import LinForm, MPoly
from .scalars import TwoPi


class RatTerm:
    __slots__ = ("coeff", "phase", "num", "denoms")

    def __init__(self, coeff: TwoPi, phase: LinForm, num: MPoly,
                 denoms: Sequence[Tuple[LinForm, int]]):
        dd = []
        for form, mult in denoms:
            mult = int(mult)
            if mult <= 0:
                raise ValueError("denominator multiplicity must be positive")
            if form.is_zero():
                raise ValueError("zero linear form in denominator")
            if form.dim != phase.dim or num.dim != phase.dim:
                raise ValueError("dimension mismatch in RatTerm")
            dd.append((form, mult))
        object.__setattr__(self, "coeff", TwoPi.coerce(coeff))
        object.__setattr__(self, "phase", phase)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "denoms", tuple(dd))

    def __setattr__(self, *a):
        raise AttributeError("RatTerm is immutable")

    @property
    def dim(self) -> int:
        return self.phase.dim

    def scale(self, c) -> "RatTerm":
        return RatTerm(self.coeff * TwoPi.coerce(c), self.phase, self.num,
                       self.denoms)

    def mul_poly(self, p: MPoly) -> "RatTerm":
        return RatTerm(self.coeff, self.phase, self.num * p, self.denoms)

    def eval_complex(self, point) -> complex:
        """Numerical value at a real point off every denominator hyperplane."""
        import cmath
        z = complex(self.coeff)
        z *= cmath.exp(1j * float(self.phase(point)))
        z *= self.num.eval_float(point)
        for form, mult in self.denoms:
            v = float(form(point))
            if v == 0.0:
                raise ZeroDivisionError("evaluation on a denominator wall")
            z /= v ** mult
        return z


class RatExp:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Sequence[RatTerm] = ()):
        for t in terms:
            if t.dim != dim:
                raise ValueError("RatTerm dimension mismatch")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, *a):
        raise AttributeError("RatExp is immutable")

    def __add__(self, other: "RatExp") -> "RatExp":
        if self.dim != other.dim:
            raise ValueError("RatExp dimension mismatch")
        return RatExp(self.dim, self.terms + other.terms)

    def scale(self, c) -> "RatExp":
        return RatExp(self.dim, [t.scale(c) for t in self.terms])

    def mul_poly(self, p: MPoly) -> "RatExp":
        return RatExp(self.dim, [t.mul_poly(p) for t in self.terms])

    def eval_complex(self, point) -> complex:
        return sum((t.eval_complex(point) for t in self.terms), complex(0))

    def denominator_forms(self):
        out = []
        for t in self.terms:
            for form, _ in t.denoms:
                out.append(form)
        return out
