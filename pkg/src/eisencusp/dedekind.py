"""Dedekind sums, the Rademacher function Phi and the period cocycle xi.

For gamma in Gamma_0(DC) and trivial character,

    int_z^{gamma z} E_{M, D/M}(tau) d tau = xi_M(gamma) / 24,

with xi_M(gamma) = sum_{r | D} (-1)^{nu(r) - 1} / gcd(r, D/M) * Phi(a, rb; c/r, d).
Only :func:`numeric_period` uses floating point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .arith import divisors, euler_phi, jacobi, nu, sawtooth, sign, valuation
from .cusps import LevelShape

# numpy's int64 holds sum_mu (2 r_mu - k)(2 mu - k) comfortably below this k
_NUMPY_MAX_K = 200_000


@dataclass(frozen=True)
class GammaElement:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"{self} does not have determinant 1")

    def __matmul__(self, other: "GammaElement") -> "GammaElement":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return GammaElement(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "GammaElement":
        return GammaElement(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return GammaElement(-self.a, -self.b, -self.c, -self.d)

    def in_gamma0(self, N: int) -> bool:
        return self.c % N == 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def parse(cls, text: str) -> "GammaElement":
        parts = [int(p) for p in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected a,b,c,d; got {text!r}")
        return cls(*parts)


IDENTITY = GammaElement(1, 0, 0, 1)
T_MATRIX = GammaElement(1, 1, 0, 1)
S_MATRIX = GammaElement(0, -1, 1, 0)


# ---------------------------------------------------------------------------
# Dedekind sums


def _check_pair(h: int, k: int):
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")


def _brute(h: int, k: int) -> Fraction:
    # terms with mu = k vanish, as does ((h mu / k)) never being an integer otherwise
    if k == 1:
        return Fraction(0)
    if k <= _NUMPY_MAX_K:
        mu = np.arange(1, k, dtype=np.int64)
        r = (h % k) * mu % k
        total = int(np.dot(2 * r - k, 2 * mu - k))
        return Fraction(total, 4 * k * k)
    return sum((sawtooth(Fraction(h * m, k)) * sawtooth(Fraction(m, k)) for m in range(1, k)), Fraction(0))


def _fast(h: int, k: int) -> Fraction:
    # s(h, k) = -s(k mod h, h) + (-1/4 + (h/k + 1/(hk) + k/h)/12) for 0 < h < k
    total = Fraction(0)
    sgn = 1
    h %= k
    while k > 1 and h:
        total += sgn * (Fraction(-1, 4) + Fraction(h * h + 1 + k * k, 12 * h * k))
        sgn = -sgn
        h, k = k % h, h
    return total


def dedekind_sum(h: int, k: int, mode: str = "fast") -> Fraction:
    """s(h, k) = sum_{mu=1}^{k} ((h mu / k)) ((mu / k))."""
    _check_pair(h, k)
    if mode == "fast":
        return _fast(h, k)
    if mode == "brute":
        return _brute(h, k)
    raise ValueError(f"unknown mode {mode!r}")


def reciprocity_check(h: int, k: int) -> bool:
    if h < 1 or k < 1:
        raise ValueError("h and k must be positive")
    _check_pair(h, k)
    lhs = dedekind_sum(h, k, "brute") + dedekind_sum(k, h, "brute")
    rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(1, h * k) + Fraction(k, h)) / 12
    return lhs == rhs


def congruence_check(h: int, k: int) -> bool:
    """12 k s(h, k) is an integer congruent to k + 1 - 2 (h/k) mod 8 (k odd)."""
    if k % 2 == 0:
        raise ValueError("k must be odd")
    _check_pair(h, k)
    v = 12 * k * dedekind_sum(h, k)
    if v.denominator != 1:
        return False
    return (v.numerator - (k + 1 - 2 * jacobi(h, k))) % 8 == 0


# ---------------------------------------------------------------------------
# Phi and xi


def rademacher_phi(g: GammaElement) -> Fraction:
    a, b, c, d = g.as_tuple()
    if c == 0:
        return Fraction(b, d)
    return Fraction(a + d, c) - 12 * sign(c) * dedekind_sum(d, abs(c))


def _check_M(M: int, shape: LevelShape):
    if M < 1 or shape.D % M:
        raise ValueError(f"M={M} must divide D={shape.D}")


def xi(M: int, shape: LevelShape, g: GammaElement) -> Fraction:
    """Period cocycle of E_{M, D/M}: 24 times its integral from z to gamma z."""
    _check_M(M, shape)
    if not g.in_gamma0(shape.N):
        raise ValueError(f"{g} is not in Gamma_0({shape.N})")
    D = shape.D
    total = Fraction(0)
    for r in divisors(D):
        assert g.c % r == 0
        term = rademacher_phi(GammaElement(g.a, r * g.b, g.c // r, g.d))
        sgn = 1 if nu(r) % 2 else -1
        total += sgn * term / gcd(r, D // M)
    return total


def xi_homomorphism_check(M: int, shape: LevelShape, g1: GammaElement, g2: GammaElement) -> bool:
    return xi(M, shape, g1 @ g2) == xi(M, shape, g1) + xi(M, shape, g2)


# ---------------------------------------------------------------------------
# 2-adic structure for odd D


def _v2(q: Fraction) -> float:
    return math.inf if q == 0 else valuation(q.numerator, 2) - valuation(q.denominator, 2)


def _cong8(x: Fraction, y: Fraction) -> bool:
    return _v2(Fraction(x) - Fraction(y)) >= 3


@dataclass
class TwoPartReport:
    ok: bool
    xi: Fraction
    case: str
    detail: str = ""

    def __bool__(self):
        return self.ok


def _two_part_pre(M: int, shape: LevelShape, g: GammaElement):
    _check_M(M, shape)
    if shape.D % 2 == 0 or nu(shape.D) < 2:
        raise ValueError("needs D odd with at least two prime factors")
    if not g.in_gamma0(shape.N):
        raise ValueError(f"{g} is not in Gamma_0({shape.N})")


def two_part_check(M: int, shape: LevelShape, g: GammaElement) -> TwoPartReport:
    """xi lies in 24 Z_2 + phi(D) Z_2 when M = D, and in 8 Z_2 otherwise."""
    _two_part_pre(M, shape, g)
    D = shape.D
    val = xi(M, shape, g)
    case = ("I" if M == D else "II") + (".1" if g.c == 0 else ".2" if g.c % 2 else ".3")
    if val.denominator % 2 == 0:
        return TwoPartReport(False, val, case, "even denominator")
    need = min(3, valuation(euler_phi(D), 2)) if M == D else 3
    if _v2(val) < need:
        return TwoPartReport(False, val, case, f"2-adic valuation below {need}")
    return TwoPartReport(True, val, case)


def two_part_case_congruence(M: int, shape: LevelShape, g: GammaElement) -> TwoPartReport:
    """The explicit mod-8 value of xi in each case of the 2-part argument.

    M = D:  c = 0 gives +-b (-1)^{nu(D)-1} phi(D) exactly; c odd gives
    (-1)^{nu(D)-1} (a+d-1)/c phi(D); c even gives c/(dD) phi(D) after
    normalizing d > 0.  M != D: xi = 0 for c = 0 and xi = 0 mod 8 otherwise.
    """
    _two_part_pre(M, shape, g)
    D = shape.D
    phi = euler_phi(D)
    sgn = (-1) ** (nu(D) - 1)
    val = xi(M, shape, g)
    a, b, c, d = g.as_tuple()
    if M != D:
        case = "II.1" if c == 0 else ("II.2" if c % 2 else "II.3")
        ok = val == 0 if c == 0 else _cong8(val, 0)
        return TwoPartReport(ok, val, case)
    if c == 0:
        return TwoPartReport(val == d * b * sgn * phi, val, "I.1")
    if c % 2:
        if c < 0:
            a, b, c, d = -a, -b, -c, -d
        return TwoPartReport(_cong8(val, sgn * Fraction(a + d - 1, c) * phi), val, "I.2")
    if d < 0:
        a, b, c, d = -a, -b, -c, -d
    return TwoPartReport(_cong8(val, Fraction(c, d * D) * phi), val, "I.3")


# ---------------------------------------------------------------------------
# numeric oracle and sampling


class ConvergenceError(RuntimeError):
    pass


def numeric_period(M: int, shape: LevelShape, g: GammaElement, terms: int = 4000) -> complex:
    """F(gamma z0) - F(z0) with F' = E_{M, D/M} summed termwise, z0 = (-d + i)/c."""
    from .eisenstein import EisIndex, eis_qexp

    _check_M(M, shape)
    if g.c == 0:
        raise ValueError("c = 0: use the exact formula")
    if not g.in_gamma0(shape.N):
        raise ValueError(f"{g} is not in Gamma_0({shape.N})")
    if terms < 2000:
        raise ValueError("at least 2000 terms required")
    if g.c < 0:
        g = -g
    a, c, d = g.a, g.c, g.d
    y = 1.0 / c
    if math.exp(-2 * math.pi * y * terms) * terms > 1e-12:
        raise ConvergenceError(f"imaginary part 1/{c} too small for {terms} terms")
    series = eis_qexp(EisIndex(shape, M, shape.D // M, 1), terms, check=False)
    coeffs = np.array([float(x) for x in series.rat], dtype=float)
    n = np.arange(1, terms + 1, dtype=float)

    def F(z: complex) -> complex:
        q = np.exp(2j * np.pi * n * z)
        return coeffs[0] * z + np.sum(coeffs[1:] / (2j * np.pi * n) * q)

    z0 = complex(-d, 1) / c
    z1 = complex(a, 1) / c
    return complex(F(z1) - F(z0))


def random_gamma0(N: int, height: int, rng: random.Random) -> GammaElement:
    """Random element of Gamma_0(N): bottom row (c, d) with N | c, then complete."""
    if N < 1 or height < N:
        raise ValueError("need N >= 1 and height >= N")
    while True:
        c = N * rng.randint(-(height // N), height // N)
        d = rng.randint(-height, height)
        if gcd(c, d) != 1:
            continue
        if c == 0:
            a = d  # d = +-1
            b = rng.randint(-height, height)
            return GammaElement(a, b, 0, d)
        # a d - b c = 1: a = d^{-1} mod |c|, shifted by a random multiple of c
        a = pow(d, -1, abs(c)) if abs(c) > 1 else 0
        a += abs(c) * rng.randint(-(height // abs(c)), height // abs(c))
        b = (a * d - 1) // c
        return GammaElement(a, b, c, d)
