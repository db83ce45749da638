"""Primitive quadratic Dirichlet characters of odd squarefree conductor.

A character is realized by the Jacobi symbol ``n -> (n/f)``; its Gauss sum is
never evaluated numerically but carried as the generator ``g`` of a
:class:`~eisencusp.arith.QuadExt` with ``g**2 = psi(-1)*f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import Number, QuadExt, bernoulli2, is_squarefree, jacobi


@dataclass(frozen=True)
class QuadraticCharacter:
    conductor: int
    parity: int
    _table: tuple = field(repr=False, compare=False, hash=False, default=())

    def __call__(self, n: int) -> int:
        if self.conductor == 1:
            return 1
        return self._table[n % self.conductor]

    def eval(self, q: Number) -> int:
        """psi on an integer or on a rational whose parts are prime to f."""
        q = Fraction(q)
        if q.denominator == 1:
            return self(q.numerator)
        a, b = self(q.numerator), self(q.denominator)
        if a == 0 or b == 0:
            raise ValueError(f"psi_{self.conductor} undefined on {q}")
        return a * b

    @property
    def is_trivial(self) -> bool:
        return self.conductor == 1

    def __repr__(self):
        return f"psi_{self.conductor}"


@lru_cache(maxsize=None)
def quad_char(f: int) -> QuadraticCharacter:
    """The primitive quadratic character of conductor ``f`` (f odd squarefree, or 1)."""
    if f < 1 or f % 2 == 0 or not is_squarefree(f):
        raise ValueError(f"no primitive quadratic character of conductor {f} in scope")
    if f == 1:
        return QuadraticCharacter(1, 1)
    table = tuple(jacobi(n, f) for n in range(f))
    return QuadraticCharacter(f, table[f - 1], table)


TRIVIAL = quad_char(1)


def product_character(psi: QuadraticCharacter, chi: QuadraticCharacter) -> QuadraticCharacter:
    """chi*psi for coprime conductors; the product of Jacobi symbols is again one."""
    if gcd(psi.conductor, chi.conductor) != 1:
        raise ValueError("conductors must be coprime")
    return quad_char(psi.conductor * chi.conductor)


def gauss_disc(psi: QuadraticCharacter) -> int:
    """g(psi)**2 = psi(-1) * f."""
    return psi.parity * psi.conductor


def gauss_sum(psi: QuadraticCharacter) -> QuadExt:
    return QuadExt.gen(gauss_disc(psi))


def b2_double_sum(psi: QuadraticCharacter) -> Fraction:
    """sum_{a,b mod f} psi(a) psi(b) B2((a+b)/f)."""
    f = psi.conductor
    return sum(
        (psi(a) * psi(b) * bernoulli2(Fraction(a + b, f)) for a in range(f) for b in range(f)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def n_psi(psi: QuadraticCharacter) -> QuadExt:
    """n_psi = -(f / (4 g)) * sum_{a,b} psi(a) psi(b) B2((a+b)/f), with 1/g = g/disc."""
    f = psi.conductor
    disc = gauss_disc(psi)
    coeff = -Fraction(f, 4) * b2_double_sum(psi) / disc
    return QuadExt(Fraction(0), coeff, disc)
