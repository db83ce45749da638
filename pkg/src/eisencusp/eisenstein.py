"""The Eisenstein eigenbasis E_{M,L,psi} of weight 2 on Gamma_0(DC).

Each basis element is built from E_psi by the operators [p]^+ (p | M/f) and
[p]^- (p | L/f).  Its constant terms at every cusp come in two flavours: a
closed form (:func:`constant_term`) and a recursion that pushes the cusp down
through the bracket operators to level f^2 (:func:`constant_term_oracle`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import (
    QuadExt,
    bernoulli2,
    divisors,
    euler_phi,
    gen_bernoulli_b1,
    lattice_quotient_order,
    mu_plus,
    nu,
    prime_divisors,
    prime_to_part,
    rational_gcd,
    varpi,
)
from .characters import QuadraticCharacter, gauss_disc, n_psi, quad_char
from .cusps import (
    INFINITY,
    Cusp,
    CuspRep,
    LevelShape,
    cusp_class,
    cusp_to_rep,
    divisor_to_ML,
    enumerate_cusps,
    rep_to_cusp,
    validate_rep,
    width,
)
from .qseries import QExpansion, bracket_minus, bracket_plus, e_psi_qexp, hecke


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True, order=True)
class EisIndex:
    """A triple (M, L, psi) of H(DC), together with the level shape it lives on."""

    shape: LevelShape
    M: int
    L: int
    f: int = 1

    def __post_init__(self):
        D, C = self.shape.D, self.shape.C
        M, L, f = self.M, self.L, self.f
        if M == 1:
            raise ValueError("M = 1 is excluded")
        if M < 1 or L < 1 or D % M or D % L:
            raise ValueError(f"M={M}, L={L} must divide D={D}")
        if (M * L) % D or (D * C) % (M * L):
            raise ValueError(f"need D | ML | DC, got M={M}, L={L}, D={D}, C={C}")
        if gcd(M, L) % f:
            raise ValueError(f"conductor {f} must divide gcd(M, L) = {gcd(M, L)}")
        quad_char(f)  # rejects even f

    @property
    def psi(self) -> QuadraticCharacter:
        return quad_char(self.f)

    @property
    def disc(self) -> int:
        return gauss_disc(self.psi)

    def label(self) -> str:
        return f"({self.M},{self.L},{self.f})"


@dataclass
class CheckResult:
    """Outcome of a verification; truthy iff it passed."""

    ok: bool
    detail: str = ""
    failure: tuple | None = None

    def __bool__(self):
        return self.ok


@dataclass
class ConstantTermTable:
    index: EisIndex
    entries: dict[CuspRep, QuadExt] = field(default_factory=dict)

    def total(self) -> QuadExt:
        return sum(self.entries.values(), QuadExt(0, 0, self.index.disc))


@dataclass(frozen=True)
class EigenSystem:
    pairs: tuple[tuple[int, QuadExt], ...]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


# ---------------------------------------------------------------------------
# the index set


def admissible_pairs(shape: LevelShape) -> list[tuple[int, int]]:
    """All (M, L) with M != 1, M, L | D and D | ML | DC, via the divisors d > 1 of DC."""
    return sorted(divisor_to_ML(d, shape) for d in divisors(shape.N) if d > 1)


def enumerate_H(shape: LevelShape, quadratic_only: bool = True) -> list:
    """Eisenstein indices at the given level shape.

    With ``quadratic_only`` the result is a list of :class:`EisIndex`: the
    trivial character for every pair plus one quadratic character per odd
    squarefree f > 1 dividing gcd(M, L).  Otherwise every pair carries phi(gcd)
    character slots; these come back as ``(M, L, k)`` placeholders since only
    their number matters.
    """
    out = []
    for M, L in admissible_pairs(shape):
        g = gcd(M, L)
        if quadratic_only:
            out.extend(EisIndex(shape, M, L, f) for f in divisors(g) if f % 2)
        else:
            out.extend((M, L, k) for k in range(euler_phi(g)))
    return out


def h_count(N: int) -> int:
    """sum_{1 < d | N} phi(gcd(d, N/d))."""
    return sum(euler_phi(gcd(d, N // d)) for d in divisors(N) if d > 1)


# ---------------------------------------------------------------------------
# q-expansions


@lru_cache(maxsize=256)
def _e_psi(f: int, T: int) -> QExpansion:
    return e_psi_qexp(quad_char(f), T)


def eis_qexp_bracket(idx: EisIndex, T: int) -> QExpansion:
    """[L/f]^- o [M/f]^+ applied to E_psi, regarded on Gamma_0(DC)."""
    psi, f = idx.psi, idx.f
    s = _e_psi(f, T)
    for p in prime_divisors(idx.M // f):
        s = bracket_plus(s, p, psi)
    for p in prime_divisors(idx.L // f):
        s = bracket_minus(s, p, psi)
    return s.promote(idx.shape.N)


@lru_cache(maxsize=256)
def _sigma_table(D: int, M: int, ML: int, f: int, T: int) -> tuple:
    m = D // f
    sig = [0] * (T + 1)
    for d in range(1, T + 1):
        if gcd(d, m) == 1:
            for k in range(d, T + 1, d):
                sig[k] += d
    for ell in prime_divisors(D // M):
        pw = ell
        while pw <= T:
            for k in range(pw, T + 1, pw):
                sig[k] *= ell
            pw *= ell
    for p in prime_divisors(ML):
        for k in range(p, T + 1, p):
            sig[k] = 0
    return tuple(sig)


def eis_qexp_closed(idx: EisIndex, T: int) -> QExpansion:
    """a_n = sigma_{M,L}(n) psi(n), with a_0 the constant term at infinity."""
    if T < 1:
        raise ValueError("T >= 1 required")
    D = idx.shape.D
    sig = _sigma_table(D, idx.M, gcd(idx.M, idx.L), idx.f, T)
    psi = idx.psi
    a0 = constant_term(idx, cusp_to_rep(INFINITY, idx.shape))
    if not a0.is_rational():
        raise ConsistencyError(f"irrational constant term at infinity for {idx}")
    coeffs = [a0.rat] + [sig[n] * psi(n) for n in range(1, T + 1)]
    return QExpansion.from_rational(coeffs, idx.shape.N, idx.disc)


def eis_qexp(idx: EisIndex, T: int, check: bool = True) -> QExpansion:
    """q-expansion of E_{M,L,psi} to q^T, built by brackets and (optionally) checked
    against the closed divisor-sum formula."""
    if T < 1:
        raise ValueError("T >= 1 required")
    s = eis_qexp_bracket(idx, T)
    if check:
        closed = eis_qexp_closed(idx, T)
        n = s.first_difference(closed)
        if n is not None:
            raise ConsistencyError(
                f"{idx}: bracket and closed form differ at n={n}: {s.coeff(n)} vs {closed.coeff(n)}"
            )
    return s


# ---------------------------------------------------------------------------
# Hecke eigenvalues


def eigenvalue(idx: EisIndex, ell: int) -> QuadExt:
    psi = idx.psi
    D, M, L = idx.shape.D, idx.M, idx.L
    g = gcd(M, L)
    if D % ell:
        lam = psi(ell) * (1 + ell)
    elif g % ell == 0:
        lam = 0
    elif (M // g) % ell == 0:
        lam = psi(ell)
    else:
        lam = ell * psi(ell)
    return QuadExt(lam, 0, idx.disc)


def verify_eigenform(
    idx: EisIndex, T: int = 200, primes=(2, 3, 5, 7, 11, 13), series: QExpansion | None = None
) -> CheckResult:
    """T_ell E = lambda_ell E to q^T for each listed prime.

    ``series`` overrides the computed expansion (it must reach max(primes)*T).
    """
    primes = tuple(primes)
    if not primes:
        return CheckResult(True, "no primes")
    big = series if series is not None else eis_qexp(idx, max(primes) * T)
    base = big.truncate(T)
    for ell in primes:
        lhs = hecke(big, ell, T)
        rhs = base.scale(eigenvalue(idx, ell))
        n = lhs.first_difference(rhs)
        if n is not None:
            return CheckResult(
                False, f"{idx.label()}: T_{ell} fails at n={n}", (ell, n)
            )
    return CheckResult(True)


def ideal_generators(idx: EisIndex, primes) -> EigenSystem:
    """Pairs (ell, lambda_ell); T_ell - lambda_ell generate the Eisenstein ideal."""
    return EigenSystem(tuple((ell, eigenvalue(idx, ell)) for ell in primes))


# ---------------------------------------------------------------------------
# constant terms: closed form


def constant_term(idx: EisIndex, rep: CuspRep) -> QuadExt:
    """Constant term of E_{M,L,psi} at the cusp (r, s, t, x)."""
    shape = idx.shape
    validate_rep(rep, shape)
    D, C = shape.D, shape.C
    M, L, f = idx.M, idx.L, idx.f
    psi = idx.psi
    r, s, t, x = rep.r, rep.s, rep.t, rep.x
    g = gcd(M, L)
    zero = QuadExt(0, 0, idx.disc)
    if gcd(s, f) != 1 or (s * t) % g or (r * s) % (D // M):
        return zero
    arg = Fraction(D * C, f * r * s * s * t * x)
    assert gcd(arg.numerator, f) == 1 and gcd(arg.denominator, f) == 1, (idx, rep)
    c = Fraction((-1) ** nu(D // (f * r * s)) * psi.eval(arg), r * s)
    for p in prime_divisors(gcd(s, g // f)):
        c *= 1 - Fraction(1, p)
    lead = Fraction(euler_phi(D // f) * mu_plus(L // f), L // f)
    return n_psi(psi) * (lead * c)


# ---------------------------------------------------------------------------
# constant terms: recursion down to E_psi


def e_psi_constant_term(psi: QuadraticCharacter, u: Cusp) -> QuadExt:
    """a_0(E_psi) at a cusp of X_0(f^2): psi(x) n_psi at (s, t) = (1, f), else 0."""
    f = psi.conductor
    rep = cusp_to_rep(u, LevelShape(f, f))
    if rep.s == 1 and rep.t == f:
        return n_psi(psi) * psi(rep.x)
    return QuadExt(0, 0, gauss_disc(psi))


def e_psi_constant_term_b2(psi: QuadraticCharacter, u: Cusp) -> QuadExt:
    """a_0(E_psi) at a/c from the Bernoulli sum

        -(1/(4g)) sum_{a' mod f, b' mod f^2} psi(a') psi(b') B2(a' a/f + b' c/f^2).
    """
    f = psi.conductor
    disc = gauss_disc(psi)
    a, c = u.a, u.c
    if f == 1:
        # E_1 has a single cusp orbit under SL_2(Z)
        return QuadExt(Fraction(-1, 24), 0, 1)
    f2 = f * f
    total = Fraction(0)
    for ap in range(1, f):
        pa = psi(ap)
        if not pa:
            continue
        for bp in range(1, f2):
            pb = psi(bp)
            if not pb:
                continue
            total += pa * pb * bernoulli2(Fraction((ap * a * f + bp * c) % f2, f2))
    return QuadExt(0, -total / (4 * disc), disc)


def _oracle(psi, plus, minus, a: int, c: int, memo) -> QuadExt:
    key = (plus, minus, a, c)
    if key in memo:
        return memo[key]
    if plus or minus:
        if plus:
            p, rest = plus[0], (plus[1:], minus)
            factor = p * psi(p) if c % p == 0 else Fraction(psi(p), p)
        else:
            p, rest = minus[0], (plus, minus[1:])
            factor = psi(p) if c % p == 0 else Fraction(psi(p), p * p)
        u = Cusp(a * p, c)
        val = _oracle(psi, *rest, a, c, memo) - _oracle(psi, *rest, u.a, u.c, memo) * factor
    else:
        f = psi.conductor
        key0 = ("base",) + cusp_class(Cusp(a, c), f * f)
        if key0 not in memo:
            memo[key0] = e_psi_constant_term(psi, Cusp(a, c))
        val = memo[key0]
    memo[key] = val
    return val


def constant_term_oracle(idx: EisIndex, rep: CuspRep, memo: dict | None = None) -> QuadExt:
    """Constant term by peeling one bracket operator at a time.

    For a cusp u = a/c, [p]^+ h has constant term a_0(h; u) - k a_0(h; pu) with
    k = p psi(p) when p | c and psi(p)/p otherwise; for [p]^- the factor is
    psi(p) or psi(p)/p^2.  The recursion bottoms out at E_psi on X_0(f^2).
    """
    u = rep_to_cusp(rep, idx.shape)
    f = idx.f
    plus = tuple(prime_divisors(idx.M // f))
    minus = tuple(prime_divisors(idx.L // f))
    return _oracle(idx.psi, plus, minus, u.a, u.c, {} if memo is None else memo)


def constant_term_table(idx: EisIndex, method: str = "closed") -> ConstantTermTable:
    reps = enumerate_cusps(idx.shape)
    if method == "closed":
        entries = {rep: constant_term(idx, rep) for rep in reps}
    elif method == "oracle":
        memo: dict = {}
        entries = {rep: constant_term_oracle(idx, rep, memo) for rep in reps}
    else:
        raise ValueError(f"unknown method {method!r}")
    return ConstantTermTable(idx, entries)


def delta_divisor(idx: EisIndex) -> ConstantTermTable:
    """Residue divisor: width times constant term at each cusp."""
    table = constant_term_table(idx)
    entries = {rep: v * width(rep, idx.shape) for rep, v in table.entries.items()}
    return ConstantTermTable(idx, entries)


# ---------------------------------------------------------------------------
# lattices and orders


def r_lattice(idx: EisIndex, gamma_one: bool = False) -> QuadExt:
    D, C = idx.shape.D, idx.shape.C
    f = idx.f
    k = Fraction(euler_phi(D // f) * mu_plus(idx.L // f) * gcd(D // idx.M, C), idx.L // f)
    if gamma_one:
        k *= f
    return n_psi(idx.psi) * k


def r_lattice_from_divisor(idx: EisIndex) -> QuadExt:
    """Positive generator of the Z-span of the residue divisor's entries."""
    n = n_psi(idx.psi)
    g = Fraction(0)
    for v in delta_divisor(idx).entries.values():
        q = v / n
        if not q.is_rational():
            raise ConsistencyError(f"entry {v} is not a rational multiple of n_psi")
        g = rational_gcd(g, q.rat)
    return n * g


def period_lattice_g1(idx: EisIndex) -> tuple[QuadExt, QuadExt]:
    """Generators g(psi)/L and the Gamma_1 residue generator."""
    first = QuadExt.gen(idx.disc) * Fraction(1, idx.L) if idx.f > 1 else QuadExt(Fraction(1, idx.L))
    return first, r_lattice(idx, gamma_one=True)


@dataclass(frozen=True)
class OrderResult:
    order: int
    inverted: frozenset

    def away_from(self, primes) -> int:
        return prime_to_part(self.order, primes)


def cuspidal_order(idx: EisIndex) -> OrderResult:
    """Order of (uZ + vZ)/vZ, exact away from the primes of 2^delta (M, L)."""
    D, C, f = idx.shape.D, idx.shape.C, idx.f
    u = QuadExt.gen(idx.disc) / (n_psi(idx.psi) * f) if f > 1 else 1 / (n_psi(idx.psi))
    if not u.is_rational():
        raise ConsistencyError(f"g/(f n_psi) is irrational for {idx}")
    v = euler_phi(D // f) * mu_plus(idx.L // f) * gcd(D // idx.M, C)
    g = gcd(idx.M, idx.L)
    delta = 1 if g == 1 else 0
    inverted = frozenset(prime_divisors(2**delta * g))
    return OrderResult(lattice_quotient_order(u.rat, v), inverted)


def order_nml(M: int, L: int, shape: LevelShape) -> int:
    """Order N_{M,L} of the cuspidal group of E_{M,L} (trivial character)."""
    D, C = shape.D, shape.C
    EisIndex(shape, M, L, 1)
    N = shape.N
    if prime_divisors(N) == [N]:
        return (N - 1) // gcd(12, N - 1)
    if D % 2 == 0:
        raise ValueError("the general formula assumes D odd")
    v = euler_phi(D) * mu_plus(L) * gcd(D // M, C)
    return v // gcd(24, v)


# ---------------------------------------------------------------------------
# twisted L-series


def _dirichlet_convolve(a: list, b: list) -> list:
    n_max = len(a) - 1
    out = [0] * (n_max + 1)
    for i in range(1, n_max + 1):
        if a[i]:
            ai = a[i]
            for j in range(1, n_max // i + 1):
                if b[j]:
                    out[i * j] += ai * b[j]
    return out


def lseries_factorization_check(
    idx: EisIndex, chi: QuadraticCharacter, n_max: int = 500
) -> CheckResult:
    """sum a_n chi(n) n^-s against Euler factors times L(chi psi, s-1) L(chi psi, s)."""
    if n_max < 1:
        raise ValueError("n_max >= 1 required")
    if gcd(chi.conductor, idx.shape.D) != 1:
        raise ValueError("chi must have conductor prime to D")
    psi = idx.psi

    def cp(n):
        return chi(n) * psi(n)

    s = eis_qexp(idx, n_max)
    lhs = [0] + [s.rat[n] * chi(n) for n in range(1, n_max + 1)]
    rhs = [0] * (n_max + 1)
    rhs[1] = 1
    for p in prime_divisors(idx.M // idx.f):
        fac = [0] * (n_max + 1)
        fac[1] = 1
        if p <= n_max:
            fac[p] = -cp(p) * p
        rhs = _dirichlet_convolve(rhs, fac)
    for p in prime_divisors(idx.L // idx.f):
        fac = [0] * (n_max + 1)
        fac[1] = 1
        if p <= n_max:
            fac[p] = -cp(p)
        rhs = _dirichlet_convolve(rhs, fac)
    rhs = _dirichlet_convolve(rhs, [0] + [cp(n) * n for n in range(1, n_max + 1)])
    rhs = _dirichlet_convolve(rhs, [0] + [cp(n) for n in range(1, n_max + 1)])
    for n in range(1, n_max + 1):
        if lhs[n] != rhs[n]:
            return CheckResult(False, f"{idx.label()} x chi_{chi.conductor}: n={n}", (n,))
    return CheckResult(True)


def lambda_value(idx: EisIndex, chi: QuadraticCharacter) -> QuadExt:
    """Special value Lambda(E, chi, 1); zero when chi psi is even."""
    psi, f = idx.psi, idx.f
    if gcd(chi.conductor, f) != 1:
        raise ValueError("conductors must be coprime")
    disc = idx.disc
    cp = chi.parity * psi.parity
    if cp == 1:
        return QuadExt(0, 0, disc)
    chipsi = quad_char(f * chi.conductor)

    def cpv(n):
        return chi(n) * psi(n)

    euler = Fraction(1)
    for p in prime_divisors(idx.M // f):
        euler *= 1 - cpv(p)
    for p in prime_divisors(idx.L // f):
        euler *= 1 - Fraction(cpv(p), p)
    b1 = gen_bernoulli_b1(chipsi)
    front = -Fraction(chi.parity * chi(f) * psi(chi.conductor), 2 * f)
    g = QuadExt.gen(disc) if f > 1 else QuadExt(1)
    return g * (front * euler * b1 * b1)


# ---------------------------------------------------------------------------
# units


def _is_unit_away(q: Fraction, allowed) -> bool:
    return prime_to_part(q.numerator, allowed) == 1 and prime_to_part(q.denominator, allowed) == 1


def edd_unit_check(shape: LevelShape) -> CheckResult:
    """Nonzero width-scaled constant terms of E_{D,D} are units in Z[1/(6 D varpi(D))]."""
    D = shape.D
    if shape.C != D:
        raise ValueError("E_{D,D} needs C = D")
    idx = EisIndex(shape, D, D, 1)
    allowed = prime_divisors(6 * D * varpi(D))
    for rep, v in delta_divisor(idx).entries.items():
        if v and not _is_unit_away(v.to_rational(), allowed):
            return CheckResult(False, f"{rep}: {v}", (rep,))
    return CheckResult(True)


__all__ = [
    "CheckResult",
    "ConsistencyError",
    "ConstantTermTable",
    "EigenSystem",
    "EisIndex",
    "OrderResult",
    "admissible_pairs",
    "constant_term",
    "constant_term_oracle",
    "constant_term_table",
    "cuspidal_order",
    "delta_divisor",
    "e_psi_constant_term",
    "e_psi_constant_term_b2",
    "edd_unit_check",
    "eigenvalue",
    "eis_qexp",
    "eis_qexp_bracket",
    "eis_qexp_closed",
    "enumerate_H",
    "h_count",
    "ideal_generators",
    "lambda_value",
    "lseries_factorization_check",
    "order_nml",
    "period_lattice_g1",
    "r_lattice",
    "r_lattice_from_divisor",
    "verify_eigenform",
]
