"""Cusps of X_0(DC) in (r, s, t, x) coordinates.

A representative ``(r, s, t, x)`` stands for the point ``r s^2 t x / DC`` with
``r | D/C``, ``s, t | C`` coprime and ``x`` prime to ``D`` taken mod ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from .arith import divisors, euler_phi, is_squarefree, isqrt_exact, prime_divisors


@dataclass(frozen=True, order=True)
class LevelShape:
    D: int
    C: int

    def __post_init__(self):
        if self.D < 1 or not is_squarefree(self.D):
            raise ValueError(f"D={self.D} must be a positive squarefree integer")
        if self.C < 1 or self.D % self.C:
            raise ValueError(f"C={self.C} must be a positive divisor of D={self.D}")

    @property
    def N(self) -> int:
        return self.D * self.C


@dataclass(frozen=True, order=True)
class CuspRep:
    r: int
    s: int
    t: int
    x: int


@dataclass(frozen=True, order=True)
class Cusp:
    """The point a/c of P^1(Q) in lowest terms, c >= 0 (1/0 is infinity)."""

    a: int
    c: int

    def __post_init__(self):
        a, c = self.a, self.c
        if c == 0:
            if a == 0:
                raise ValueError("0/0 is not a cusp")
            a = 1
        else:
            g = gcd(a, c)
            a, c = a // g, c // g
            if c < 0:
                a, c = -a, -c
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    def __str__(self):
        return "oo" if self.c == 0 else f"{self.a}/{self.c}"


INFINITY = Cusp(1, 0)


def validate_rep(rep: CuspRep, shape: LevelShape) -> None:
    D, C = shape.D, shape.C
    r, s, t, x = rep.r, rep.s, rep.t, rep.x
    if (D // C) % r or C % s or C % t or gcd(s, t) != 1:
        raise ValueError(f"{rep} is not a valid coordinate tuple for {shape}")
    if x < 1 or gcd(x, D) != 1:
        raise ValueError(f"{rep}: x must be positive and prime to D")


def canonical_x(x: int, t: int, D: int) -> int:
    """Smallest positive integer congruent to x mod t and prime to D."""
    y = x % t or t
    if t == 1:
        y = 1
    while gcd(y, D) != 1:
        y += t
    return y


def enumerate_cusps(shape: LevelShape) -> list[CuspRep]:
    """Full set of inequivalent representatives, ordered by (r, t, s, x)."""
    D, C = shape.D, shape.C
    reps = []
    for r in divisors(D // C):
        for t in divisors(C):
            classes = [a for a in range(1, t + 1) if gcd(a, t) == 1] if t > 1 else [1]
            xs = sorted(canonical_x(a, t, D) for a in classes)
            for s in divisors(C):
                if gcd(s, t) != 1:
                    continue
                reps.extend(CuspRep(r, s, t, x) for x in xs)
    return reps


def cusp_count(N: int) -> int:
    """sum_{d | N} phi(gcd(d, N/d))."""
    return sum(euler_phi(gcd(d, N // d)) for d in divisors(N))


def rep_to_cusp(rep: CuspRep, shape: LevelShape) -> Cusp:
    validate_rep(rep, shape)
    return Cusp(rep.r * rep.s**2 * rep.t * rep.x, shape.N)


def cusp_class(u: Cusp, N: int) -> tuple[int, int]:
    """Complete Gamma_0(N)-invariant of a cusp a/c.

    With g = gcd(c, N) and t = gcd(g, N/g), the pair (g, a*(c/g) mod t)
    determines the orbit.
    """
    g = gcd(u.c, N)
    t = gcd(g, N // g)
    return g, (u.a * (u.c // g)) % t


def cusp_equiv(u: Cusp, v: Cusp, N: int) -> bool:
    if N < 1:
        raise ValueError("N >= 1 required")
    return cusp_class(u, N) == cusp_class(v, N)


def _completion(u: Cusp) -> tuple[int, int, int, int]:
    """An SL_2(Z) matrix (a b; c d) sending infinity to u."""
    a, c = u.a, u.c
    if c == 0:
        return (1, 0, 0, 1)
    # a*d - b*c = 1
    d = pow(a, -1, c) if c > 1 else 1
    b = (a * d - 1) // c
    return (a, b, c, d)


def find_gamma0_element(u: Cusp, v: Cusp, N: int):
    """Search for gamma in Gamma_0(N) with gamma(u) = v.

    Every such gamma has the form gamma_v T^n gamma_u^{-1} up to sign, where
    gamma_u, gamma_v are fixed completions and T = (1 1; 0 1); the search runs
    over one period n in [0, N).  Returns the matrix as a 4-tuple or None.
    """
    a1, b1, c1, d1 = _completion(u)
    a2, b2, c2, d2 = _completion(v)
    inv = (d1, -b1, -c1, a1)
    for n in range(N):
        m = (a2, a2 * n + b2, c2, c2 * n + d2)
        g = (
            m[0] * inv[0] + m[1] * inv[2],
            m[0] * inv[1] + m[1] * inv[3],
            m[2] * inv[0] + m[3] * inv[2],
            m[2] * inv[1] + m[3] * inv[3],
        )
        if g[2] % N == 0:
            assert g[0] * g[3] - g[1] * g[2] == 1
            return g
    return None


def act(g, u: Cusp) -> Cusp:
    a, b, c, d = g
    return Cusp(a * u.a + b * u.c, c * u.a + d * u.c)


def width(rep: CuspRep, shape: LevelShape) -> int:
    """Ramification index of X_0(DC) at the cusp: r s^2."""
    validate_rep(rep, shape)
    return rep.r * rep.s**2


def classical_width(u: Cusp, N: int) -> int:
    """N / gcd(c^2, N)."""
    return N // gcd(u.c * u.c, N)


def gamma0_index(N: int) -> int:
    """[SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)."""
    return N * prod(p + 1 for p in prime_divisors(N)) // prod(prime_divisors(N))


def galois_orbit(rep: CuspRep, shape: LevelShape) -> list[CuspRep]:
    """Orbit {(r, s, t, alpha x)} over alpha in (Z/t)^x; it has phi(t) elements."""
    validate_rep(rep, shape)
    t = rep.t
    alphas = [a for a in range(1, t + 1) if gcd(a, t) == 1] if t > 1 else [1]
    xs = sorted({canonical_x(a * rep.x, t, shape.D) for a in alphas})
    return [CuspRep(rep.r, rep.s, t, x) for x in xs]


def cusp_to_rep(u: Cusp, shape: LevelShape) -> CuspRep:
    """The enumerated representative equivalent to u."""
    D, C, N = shape.D, shape.C, shape.N
    g = gcd(u.c, N)
    m = N // g
    r = s = t = 1
    for p in prime_divisors(D):
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        if C % p:
            r *= p**v
        elif v == 2:
            s *= p
        elif v == 1:
            t *= p
    x = canonical_x(u.a * (u.c // g), t, D)
    return CuspRep(r, s, t, x)


# ---------------------------------------------------------------------------
# divisors of DC <-> pairs (M, L)


def _square_case(d: int, C: int) -> tuple[int, int]:
    g = gcd(d, C * C // d)
    return isqrt_exact(d * g), isqrt_exact((C * C // d) * g)


def divisor_to_ML(d: int, shape: LevelShape) -> tuple[int, int]:
    """Bijection {d | DC} -> {(M, L): M, L | D, D | ML | DC}; gcd(d, DC/d) = gcd(M, L)."""
    D, C = shape.D, shape.C
    if d < 1 or shape.N % d:
        raise ValueError(f"{d} does not divide {shape.N}")
    d0 = gcd(d, D // C)
    m, ell = _square_case(d // d0, C)
    return d0 * m, (D // C // d0) * ell


def ML_to_divisor(M: int, L: int, shape: LevelShape) -> int:
    D, C = shape.D, shape.C
    if M < 1 or L < 1 or D % M or D % L or (M * L) % D or (D * C) % (M * L):
        raise ValueError(f"({M}, {L}) is not an admissible pair for {shape}")
    d0 = gcd(M, D // C)
    m, ell = gcd(M, C), gcd(L, C)
    g = gcd(m, ell)
    return d0 * (m // g) ** 2 * g


# ---------------------------------------------------------------------------
# lowering a cusp to a lower level along a prime p | D


def lower_cusp(rep: CuspRep, p: int, shape: LevelShape) -> tuple[CuspRep, LevelShape]:
    """Image of the cusp under X_0(DC) -> X_0(DC/p) or X_0(DC/p^2).

    Exactly one of p | r, p | s, p | t, p | D/(Cr), p | C/(st) holds; the
    first two keep the point, the others rescale x by p or p^2.
    """
    validate_rep(rep, shape)
    D, C = shape.D, shape.C
    r, s, t, x = rep.r, rep.s, rep.t, rep.x
    if D % p:
        raise ValueError(f"{p} does not divide D={D}")
    if r % p == 0:
        new, low = (r // p, s, t, x), LevelShape(D // p, C)
    elif s % p == 0:
        new, low = (r, s // p, t, x), LevelShape(D // p, C // p)
    elif t % p == 0:
        new, low = (r, s, t // p, p * x), LevelShape(D // p, C // p)
    elif (D // (C * r)) % p == 0:
        new, low = (r, s, t, p * x), LevelShape(D // p, C)
    else:
        assert (C // (s * t)) % p == 0
        new, low = (r, s, t, p * p * x), LevelShape(D // p, C // p)
    r2, s2, t2, x2 = new
    return CuspRep(r2, s2, t2, canonical_x(x2, t2, low.D)), low


def level_shapes(max_level: int, odd_D: bool = False) -> list[LevelShape]:
    """Every (D, C) with D squarefree, C | D and DC <= max_level, sorted by (DC, D)."""
    out = []
    for D in range(1, max_level + 1):
        if (odd_D and D % 2 == 0) or not is_squarefree(D):
            continue
        out.extend(LevelShape(D, C) for C in divisors(D) if D * C <= max_level)
    return sorted(out, key=lambda s: (s.N, s.D))
