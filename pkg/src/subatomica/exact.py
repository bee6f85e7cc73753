"""Exact integer/rational arithmetic substrate.

Rationals are plain ``fractions.Fraction`` values (always in lowest terms,
positive denominator).  On top of that this module provides p-adic
valuations, deterministic primality, integer factorization, the quadratic
extension field Q(sqrt(d)), and certified rational enclosures for
log2 of positive sums of exponentials.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import IndeterminateAtPrecision, InvalidPrime, ZeroInput

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def padic_valuation(q, p: int):
    """v_p(q); returns math.inf for q = 0."""
    if not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return math.inf
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _pollard_rho(n: int) -> int:
    # n odd composite, not a prime power of a tiny prime
    if n % 2 == 0:
        return 2
    x, c = 2, 1
    while True:
        y, d = x, 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        x, c = x + 1, c + 1


def factor_integer(n: int) -> Counter:
    """Prime multiset of n >= 1 (empty for n = 1)."""
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if n < 0:
        raise ZeroInput("expected a positive integer")
    out: Counter = Counter()
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] += 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] += 1
            continue
        # small trial division first; rho for what survives
        d = None
        for p in range(17, 10_000, 2):
            if p * p > m:
                break
            if m % p == 0:
                d = p
                break
        if d is None:
            if is_prime(m):
                out[m] += 1
                continue
            d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def primes_greater_than(bound: int, count: int) -> list:
    """First `count` primes strictly greater than `bound`, ascending."""
    out = []
    n = max(bound, 1)
    while len(out) < count:
        n += 1
        if is_prime(n):
            out.append(n)
    return out


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factor_integer(n).values())


@dataclass(frozen=True)
class QuadExt:
    """a + b*sqrt(d) with a, b rational and d a squarefree integer >= 2."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 2

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d < 2 or not _squarefree(self.d):
            raise ValueError(f"d = {self.d} must be squarefree and >= 2")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return other
        return QuadExt(Fraction(other), 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadExt(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.d * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("zero element of Q(sqrt(d))")
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt{self.d}"
        return f"{self.a} + {self.b}*sqrt{self.d}"


@dataclass(frozen=True)
class RealBound:
    """Certified enclosure lower <= v <= upper with rational endpoints."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, v) -> bool:
        return self.lower <= Fraction(v) <= self.upper


def _mpf_to_fraction(raw) -> Fraction:
    # raw is an exact mpf endpoint tuple (sign, man, exp, bc); no rounding here
    sign, man, exp, _ = raw
    if man == 0 and exp == 0:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** exp)
    return -val if sign else val


def _iv_from_fraction(ctx, q: Fraction):
    return ctx.mpf(q.numerator) / ctx.mpf(q.denominator)


def expsum_value_bounds(terms, precision: int = 128) -> RealBound:
    """Enclosure of sum(c_i * e^(q_i)) with outward rounding."""
    if not terms:
        raise ZeroInput("empty term list")
    ctx = mpmath.iv
    old = ctx.prec
    try:
        ctx.prec = precision
        total = ctx.mpf(0)
        for coeff, q in terms:
            q = Fraction(q)
            if q < 0:
                raise ValueError("exponents must be nonnegative")
            total += ctx.mpf(int(coeff)) * ctx.exp(_iv_from_fraction(ctx, q))
        lo, hi = total._mpi_
        return RealBound(_mpf_to_fraction(lo), _mpf_to_fraction(hi))
    finally:
        ctx.prec = old


def expsum_log2_bounds(terms, precision: int = 128) -> RealBound:
    """Enclosure of log2(sum(c_i * e^(q_i)))."""
    if not terms:
        raise ZeroInput("empty term list")
    ctx = mpmath.iv
    old = ctx.prec
    try:
        ctx.prec = precision
        total = ctx.mpf(0)
        for coeff, q in terms:
            q = Fraction(q)
            if q < 0:
                raise ValueError("exponents must be nonnegative")
            total += ctx.mpf(int(coeff)) * ctx.exp(_iv_from_fraction(ctx, q))
        b = ctx.log(total) / ctx.log(2)
        lo, hi = b._mpi_
        return RealBound(_mpf_to_fraction(lo), _mpf_to_fraction(hi))
    finally:
        ctx.prec = old


def floor_log2_expsum(terms, precision: int = 64, precision_cap: int = 256) -> int:
    """Largest m with 2^m <= sum(c_i e^(q_i)).

    Exact when all exponents are 0; otherwise decided through interval
    refinement, doubling precision up to the cap.
    """
    terms = [(int(c), Fraction(q)) for c, q in terms]
    if all(q == 0 for _, q in terms):
        v = sum(c for c, _ in terms)
        return v.bit_length() - 1
    prec = precision
    while True:
        b = expsum_log2_bounds(terms, prec)
        lo, hi = math.floor(b.lower), math.floor(b.upper)
        if lo == hi:
            return lo
        if prec >= precision_cap:
            raise IndeterminateAtPrecision(
                f"floor(log2) undecided in [{b.lower}, {b.upper}]",
                precision_cap=precision_cap,
            )
        prec = min(2 * prec, precision_cap)
