"""Exact truncated q-expansions and the operators acting on them.

Coefficients live in ``Q(g)``.  Internally a series keeps two parallel tuples
(rational part and g-part) of ints/Fractions, which keeps the hot loops on
plain Python integers; :meth:`QExpansion.coeff` hands out
:class:`~eisencusp.arith.QuadExt` values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import Number, QuadExt, divisors, is_prime, prime_divisors
from .characters import QuadraticCharacter, gauss_disc


class TruncationError(ValueError):
    """An operator would have to read coefficients beyond the truncation."""


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class QExpansion:
    """sum_{n=0}^{T} a_n q^n on Gamma_0(level)."""

    rat: tuple
    irr: tuple
    level: int
    disc: int = 1

    def __post_init__(self):
        if len(self.rat) != len(self.irr):
            raise ValueError("rational and g-parts differ in length")
        if len(self.rat) < 1:
            raise ValueError("empty series")

    @classmethod
    def from_rational(cls, coeffs, level: int, disc: int = 1) -> "QExpansion":
        coeffs = tuple(_norm(c) for c in coeffs)
        return cls(coeffs, (0,) * len(coeffs), level, disc)

    @classmethod
    def from_coeffs(cls, coeffs, level: int, disc: int = 1) -> "QExpansion":
        rat, irr = [], []
        for c in coeffs:
            if isinstance(c, QuadExt):
                if c.disc != disc and not c.is_rational():
                    raise ValueError(f"coefficient {c} not in Q(sqrt({disc}))")
                rat.append(_norm(c.rat))
                irr.append(_norm(c.irr))
            else:
                rat.append(_norm(c))
                irr.append(0)
        return cls(tuple(rat), tuple(irr), level, disc)

    @property
    def truncation(self) -> int:
        return len(self.rat) - 1

    def coeff(self, n: int) -> QuadExt:
        return QuadExt(self.rat[n], self.irr[n], self.disc)

    @property
    def coeffs(self) -> list[QuadExt]:
        return [self.coeff(n) for n in range(len(self.rat))]

    def truncate(self, T: int) -> "QExpansion":
        if T > self.truncation:
            raise TruncationError(f"cannot extend truncation {self.truncation} to {T}")
        return QExpansion(self.rat[: T + 1], self.irr[: T + 1], self.level, self.disc)

    def promote(self, level: int) -> "QExpansion":
        """The same series regarded on Gamma_0(level)."""
        if level % self.level:
            raise ValueError(f"level {self.level} does not divide {level}")
        return QExpansion(self.rat, self.irr, level, self.disc)

    def scale(self, c) -> "QExpansion":
        """Multiply every coefficient by c in Q(g)."""
        c = c if isinstance(c, QuadExt) else QuadExt(c, 0, self.disc)
        if c.is_rational():
            r = _norm(c.rat)
            return QExpansion(
                tuple(_norm(r * a) for a in self.rat), tuple(_norm(r * b) for b in self.irr),
                self.level, self.disc,
            )
        return QExpansion.from_coeffs([c * a for a in self.coeffs], self.level, self.disc)

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (
            self.level == other.level
            and self.rat == other.rat
            and self.irr == other.irr
            and (self.disc == other.disc or not any(self.irr))
        )

    def __hash__(self):
        return hash((self.rat, self.irr, self.level))

    def first_difference(self, other: "QExpansion") -> int | None:
        """Smallest n with a_n != b_n over the common truncation, else None."""
        for n in range(min(len(self.rat), len(other.rat))):
            if self.rat[n] != other.rat[n] or self.irr[n] != other.irr[n]:
                return n
        return None

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "truncation": self.truncation,
            "disc": self.disc,
            "coeffs": [c.as_ints() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc) -> "QExpansion":
        if isinstance(doc, str):
            doc = json.loads(doc)
        disc = doc["disc"]
        coeffs = [QuadExt.from_ints(c, disc) for c in doc["coeffs"]]
        if len(coeffs) != doc["truncation"] + 1:
            raise ValueError("truncation does not match coefficient count")
        return cls.from_coeffs(coeffs, doc["level"], disc)


# ---------------------------------------------------------------------------
# coefficient functions


def sigma_psi(psi: QuadraticCharacter, n: int) -> int:
    """sum_{d | n} d psi(d) psi^{-1}(n/d); psi is quadratic so psi^{-1} = psi."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return sum(d * psi(d) * psi(n // d) for d in divisors(n))


def sigma_Df(D: int, f: int, n: int) -> int:
    """Sum of the divisors of n prime to D/f."""
    if D % f:
        raise ValueError("f must divide D")
    m = D // f
    return sum(d for d in divisors(n) if gcd(d, m) == 1)


def sigma_ML(M: int, L: int, D: int, f: int, n: int) -> int:
    """Coefficient function of E_{M,L,psi} without the factor psi(n)."""
    if gcd(n, gcd(M, L)) > 1:
        return 0
    out = sigma_Df(D, f, n)
    for ell in prime_divisors(D // M):
        while n % ell == 0:
            n //= ell
            out *= ell
    return out


def e_psi_qexp(psi: QuadraticCharacter, T: int) -> QExpansion:
    """Holomorphic part of E_psi on Gamma_0(f^2): a_0 = -1/24 or 0, a_n = sigma_psi(n)."""
    if T < 1:
        raise ValueError("T >= 1 required")
    a0 = Fraction(-1, 24) if psi.is_trivial else 0
    # sigma_psi(n) = psi(n) sigma(n) for quadratic psi; sieve the divisor sums
    sig = [0] * (T + 1)
    for d in range(1, T + 1):
        for m in range(d, T + 1, d):
            sig[m] += d
    coeffs = [a0] + [psi(n) * sig[n] for n in range(1, T + 1)]
    f = psi.conductor
    return QExpansion.from_rational(coeffs, f * f, gauss_disc(psi))


# ---------------------------------------------------------------------------
# operators


def _check_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def v_operator(s: QExpansion, p: int) -> QExpansion:
    """g | gamma_p = sum (p a_n) q^{pn}, re-truncated to the input truncation."""
    _check_prime(p)
    T = s.truncation
    rat = [0] * (T + 1)
    irr = [0] * (T + 1)
    for n in range(T // p + 1):
        rat[p * n] = p * s.rat[n]
        irr[p * n] = p * s.irr[n]
    return QExpansion(tuple(rat), tuple(irr), s.level * p, s.disc)


def _bracket(s: QExpansion, p: int, factor: int) -> QExpansion:
    rat = list(s.rat)
    irr = list(s.irr)
    for n in range(0, s.truncation + 1, p):
        m = n // p
        rat[n] = _norm(rat[n] - factor * s.rat[m])
        irr[n] = _norm(irr[n] - factor * s.irr[m])
    return QExpansion(tuple(rat), tuple(irr), s.level * p, s.disc)


def bracket_plus(s: QExpansion, p: int, psi: QuadraticCharacter) -> QExpansion:
    """[p]^+_psi: a_n <- a_n - p psi(p) a_{n/p}."""
    _check_prime(p)
    if psi.conductor % p == 0:
        raise ValueError(f"[p]^+ needs p not dividing the conductor ({p} | {psi.conductor})")
    return _bracket(s, p, p * psi(p))


def bracket_minus(s: QExpansion, p: int, psi: QuadraticCharacter) -> QExpansion:
    """[p]^-_psi: a_n <- a_n - psi^{-1}(p) a_{n/p}."""
    _check_prime(p)
    if psi.conductor % p == 0:
        raise ValueError(f"[p]^- needs p not dividing the conductor ({p} | {psi.conductor})")
    return _bracket(s, p, psi(p))


def hecke(s: QExpansion, ell: int, T: int | None = None) -> QExpansion:
    """Weight-2 Hecke operator T_ell on Gamma_0(s.level), output truncated at T.

    Reads a_{n*ell} for n <= T, so the input truncation must be at least ell*T.
    """
    _check_prime(ell)
    if T is None:
        T = s.truncation // ell
    if s.truncation < ell * T:
        raise TruncationError(
            f"T_{ell} to order {T} needs truncation {ell * T}, have {s.truncation}"
        )
    bad = s.level % ell == 0
    rat, irr = [], []
    for n in range(T + 1):
        r, i = s.rat[n * ell], s.irr[n * ell]
        if not bad and n % ell == 0:
            r = r + ell * s.rat[n // ell]
            i = i + ell * s.irr[n // ell]
        rat.append(_norm(r))
        irr.append(_norm(i))
    return QExpansion(tuple(rat), tuple(irr), s.level, s.disc)
