"""Exact integer, rational and quadratic-extension arithmetic.

Everything here is exact: rationals are :class:`fractions.Fraction`, and the
quadratic extension ``Q(g)`` with ``g**2 = disc`` is :class:`QuadExt`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod
from numbers import Rational as _RationalABC
from typing import NamedTuple, Union

import gmpy2
from sympy import factorint as _factorint

Number = Union[int, Fraction]

MAX_FACTOR = 2**64


class DiscMismatch(ValueError):
    """Arithmetic between elements of two different quadratic extensions."""


# ---------------------------------------------------------------------------
# factorization and multiplicative functions


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as increasing ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > MAX_FACTOR:
        raise ValueError(f"factorize supports n <= 2**64, got {n}")
    return tuple(sorted(_factorint(n).items()))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for _, e in factorize(n))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


@lru_cache(maxsize=1 << 14)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of ``n`` in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def euler_phi(n: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factorize(n))


def nu(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(e for _, e in factorize(n))


def mu_plus(n: int) -> int:
    """prod_{p | n} (p + 1)."""
    return prod(p + 1 for p, _ in factorize(n))


def varpi(n: int) -> int:
    """prod_{p | n} (p**2 - 1)."""
    return prod(p * p - 1 for p, _ in factorize(n))


class MultFunctions(NamedTuple):
    phi: int
    nu: int
    mu_plus: int
    varpi: int


def mult_functions(n: int) -> MultFunctions:
    return MultFunctions(euler_phi(n), nu(n), mu_plus(n), varpi(n))


def prime_to_part(n: int, primes) -> int:
    """Largest divisor of ``n`` with no prime factor in ``primes``."""
    n = abs(n)
    for p in primes:
        while n and n % p == 0:
            n //= p
    return n


def sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# symbols and Bernoulli-type functions


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    return int(gmpy2.jacobi(a % n, n))


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def bernoulli2(x: Number) -> Fraction:
    """Periodic second Bernoulli function B2(<x>) = <x>^2 - <x> + 1/6."""
    t = _frac_part(Fraction(x))
    return t * t - t + Fraction(1, 6)


def sawtooth(x: Number) -> Fraction:
    """((x)): zero at integers, x - floor(x) - 1/2 otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return _frac_part(x) - Fraction(1, 2)


def gen_bernoulli_b1(chi) -> Fraction:
    """B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a for a nontrivial character.

    ``chi`` is any object with a ``conductor`` attribute that is callable on
    integers.
    """
    f = chi.conductor
    if f <= 1:
        raise ValueError("B_{1,chi} is only defined here for nontrivial chi")
    return Fraction(sum(chi(a) * a for a in range(1, f + 1)), f)


# ---------------------------------------------------------------------------
# fractional ideals of Z


def rational_gcd(u: Number, v: Number) -> Fraction:
    """Positive generator of uZ + vZ; gcd(a/b, c/d) = gcd(ad, cb)/(bd)."""
    u, v = Fraction(u), Fraction(v)
    if u == 0:
        return abs(v)
    if v == 0:
        return abs(u)
    a, b = u.numerator, u.denominator
    c, d = v.numerator, v.denominator
    return Fraction(gcd(a * d, c * b), b * d)


def lattice_quotient_order(u: Number, v: Number) -> int:
    """Order of the cyclic group (uZ + vZ)/vZ."""
    if u == 0 or v == 0:
        raise ValueError("lattice_quotient_order needs nonzero u and v")
    q = abs(Fraction(v)) / rational_gcd(u, v)
    assert q.denominator == 1
    return q.numerator


# ---------------------------------------------------------------------------
# the quadratic extension Q(g), g^2 = disc


def _coerce_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, bool):
        return Fraction(int(x))
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True, slots=True)
class QuadExt:
    """The element ``rat + irr*g`` of Q(g) where ``g**2 == disc``.

    ``disc == 1`` is the rational field (g = 1); such elements are kept with
    ``irr == 0``.  Operations between elements with different ``disc`` raise
    :class:`DiscMismatch`; plain ints and Fractions mix with anything.
    """

    rat: Fraction
    irr: Fraction = Fraction(0)
    disc: int = 1

    def __post_init__(self):
        rat = _coerce_rational(self.rat)
        irr = _coerce_rational(self.irr)
        if self.disc == 0:
            raise ValueError("disc must be nonzero")
        if self.disc == 1 and irr:
            rat, irr = rat + irr, Fraction(0)
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "irr", irr)

    @classmethod
    def gen(cls, disc: int) -> "QuadExt":
        """The generator g itself."""
        return cls(Fraction(0), Fraction(1), disc)

    def _other(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.disc != self.disc:
                raise DiscMismatch(f"disc {self.disc} vs {other.disc}")
            return other
        try:
            return QuadExt(_coerce_rational(other), Fraction(0), self.disc)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.rat + o.rat, self.irr + o.irr, self.disc)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.rat, -self.irr, self.disc)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.rat - o.rat, self.irr - o.irr, self.disc)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.rat, self.irr, o.rat, o.irr
        return QuadExt(a * c + b * d * self.disc, a * d + b * c, self.disc)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.rat, -self.irr, self.disc)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.irr * self.irr * self.disc

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QuadExt")
        num = self * o.conjugate()
        return QuadExt(num.rat / n, num.irr / n, self.disc)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.is_rational() and other.is_rational():
                return self.rat == other.rat
            return self.disc == other.disc and self.rat == other.rat and self.irr == other.irr
        try:
            return self.is_rational() and self.rat == _coerce_rational(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.rat)
        return hash((self.rat, self.irr, self.disc))

    def __bool__(self):
        return bool(self.rat) or bool(self.irr)

    def is_rational(self) -> bool:
        return self.irr == 0

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.rat

    def to_complex(self) -> complex:
        """Numeric value with g = sqrt(disc) (principal root, i*sqrt|disc| if disc < 0)."""
        g = complex(0, abs(self.disc) ** 0.5) if self.disc < 0 else complex(self.disc**0.5)
        return float(self.rat) + float(self.irr) * g

    def as_ints(self) -> list[int]:
        """[rat_num, rat_den, irr_num, irr_den]."""
        return [self.rat.numerator, self.rat.denominator, self.irr.numerator, self.irr.denominator]

    @classmethod
    def from_ints(cls, ints, disc: int) -> "QuadExt":
        a, b, c, d = ints
        return cls(Fraction(a, b), Fraction(c, d), disc)

    def __repr__(self):
        if self.is_rational():
            return f"QuadExt({self.rat})"
        return f"QuadExt({self.rat} + {self.irr}*g, g^2={self.disc})"

    __str__ = __repr__


def isqrt_exact(n: int) -> int:
    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r
