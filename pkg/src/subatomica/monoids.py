"""Concrete additive monoids with decision procedures.

Seven kinds are supported:

* ``Numerical(gens)``   -- submonoid of N0 generated by positive integers
* ``PuiseuxFG(gens)``   -- finitely generated submonoid of Q>=0
* ``PrimeReciprocal``   -- P = <1/p : p prime>
* ``PrimeReciprocalPlusQge1`` -- M_F = P  union  Q>=1
* ``AlmostAtomicExample`` -- M_AA = <A union B> built on the primes > 4
* ``Dyadic``            -- all nonnegative dyadic rationals
* ``LexCone``           -- (N0 x {0}) union (Z x N), lex order, second
                           coordinate first

Elements are ``Fraction`` values, except LexCone elements which are
``(b, c)`` integer pairs.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import EmptyInput, NotAnElement
from .exact import factor_integer, is_prime, padic_valuation, primes_greater_than


class Kind(str, Enum):
    NUMERICAL = "numerical"
    PUISEUX = "puiseux"
    PRIME_RECIPROCAL = "prime_reciprocal"
    MF = "mf"
    MAA = "maa"
    DYADIC = "dyadic"
    LEXCONE = "lexcone"


@dataclass(frozen=True)
class Monoid:
    kind: Kind
    gens: tuple = ()

    def __post_init__(self):
        if self.kind in (Kind.NUMERICAL, Kind.PUISEUX):
            if not self.gens:
                raise ValueError("generator list must be nonempty")
            if len(set(self.gens)) != len(self.gens):
                raise ValueError("duplicate generators")
            if any(g <= 0 for g in self.gens):
                raise ValueError("generators must be positive")

    @property
    def is_lexcone(self):
        return self.kind is Kind.LEXCONE

    def zero(self):
        return (0, 0) if self.is_lexcone else Fraction(0)


def numerical(*gens) -> Monoid:
    return Monoid(Kind.NUMERICAL, tuple(int(g) for g in gens))


def puiseux(*gens) -> Monoid:
    return Monoid(Kind.PUISEUX, tuple(Fraction(g) for g in gens))


PRIME_RECIPROCAL = Monoid(Kind.PRIME_RECIPROCAL)
MF = Monoid(Kind.MF)
MAA = Monoid(Kind.MAA)
DYADIC = Monoid(Kind.DYADIC)
LEXCONE = Monoid(Kind.LEXCONE)


# ---------------------------------------------------------------------------
# The prime sequence p_1 < p_2 < ... of all primes greater than 4.

@lru_cache(maxsize=None)
def maa_prime(n: int) -> int:
    """p_n, the n-th prime greater than 4 (p_1 = 5)."""
    return primes_greater_than(4, n)[-1]


def maa_index(p: int) -> int | None:
    """n with p_n = p, or None if p is not a prime greater than 4."""
    if p <= 4 or not is_prime(p):
        return None
    n = 0
    for q in range(5, p + 1):
        if is_prime(q):
            n += 1
    return n


def maa_atom(n: int) -> Fraction:
    """a_n = 1/p_n."""
    return Fraction(1, maa_prime(n))


def maa_coatom(n: int) -> Fraction:
    """a'_n = 1/2^(n+2) + 1/2 - 1/p_n."""
    return Fraction(1, 2 ** (n + 2)) + Fraction(1, 2) - Fraction(1, maa_prime(n))


# ---------------------------------------------------------------------------
# Membership

@lru_cache(maxsize=None)
def _apery_mins(gens: tuple) -> tuple:
    """Minimal element of <gens> in each residue class mod min(gens).

    Dijkstra over residues; gens are positive integers.
    """
    g0 = min(gens)
    dist = {0: 0}
    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if d > dist.get(r, math.inf):
            continue
        for g in gens:
            nd, nr = d + g, (r + g) % g0
            if nd < dist.get(nr, math.inf):
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return tuple(dist.get(r, math.inf) for r in range(g0))


def _numerical_member(gens: tuple, n: int) -> bool:
    if n < 0:
        return False
    if n == 0:
        return True
    mins = _apery_mins(gens)
    return n >= mins[n % min(gens)]


def _scaled(gens, q):
    """Common-denominator view of fractional generators plus target."""
    denoms = [Fraction(g).denominator for g in gens] + [Fraction(q).denominator]
    L = math.lcm(*denoms)
    return tuple(int(Fraction(g) * L) for g in gens), Fraction(q) * L, L


def _p_residues(q: Fraction, primes=None) -> dict:
    """Forced residue r_p in [0, p-1] at primes of den(q).

    r_p is the unique residue with v_p(q - r_p/p) >= 0; requires
    v_p(q) = -1 at each requested prime.
    """
    den = q.denominator
    if primes is None:
        primes = list(factor_integer(den))
    out = {}
    for p in primes:
        m = den // p
        out[p] = (q.numerator * pow(m, -1, p)) % p
    return out


def _prime_reciprocal_member(q: Fraction) -> bool:
    if q < 0:
        return False
    den = q.denominator
    if den == 1:
        return True
    if any(e > 1 for e in factor_integer(den).values()):
        return False
    rem = q - sum(Fraction(r, p) for p, r in _p_residues(q).items())
    return rem >= 0 and rem.denominator == 1


@dataclass(frozen=True)
class CanonicalDecomposition:
    """q = dyadic_summand + sum(c_n a_n + c'_n a'_n)."""

    dyadic_summand: Fraction
    pairs: tuple  # ((n, c_n, c'_n), ...) with 1 <= c_n + c'_n, ranges [0, p_n-1]

    def value(self) -> Fraction:
        total = self.dyadic_summand
        for n, c, cp in self.pairs:
            total += c * maa_atom(n) + cp * maa_coatom(n)
        return total


def canonical_decompositions(q) -> list:
    """All canonical decompositions of q; empty iff q is not in M_AA.

    Nonzero pairs can only occur at indices n with p_n dividing den(q),
    and there (c_n - c'_n) mod p_n is pinned by the p_n-adic valuation,
    so the search space is small.
    """
    q = Fraction(q)
    if q < 0:
        return []
    den = q.denominator
    fac = factor_integer(den)
    indices = []
    for p, e in sorted(fac.items()):
        if p == 2:
            continue
        n = maa_index(p)
        if n is None or e > 1:
            return []
        indices.append((n, p))
    residues = _p_residues(q, [p for _, p in indices])
    per_index = []
    for n, p in indices:
        r = residues[p]
        opts = []
        for c in range(p):
            cp = (c - r) % p
            opts.append((n, c, cp, c * maa_atom(n) + cp * maa_coatom(n)))
        opts.sort(key=lambda t: t[3])
        per_index.append(opts)
    out = []

    def rec(i, rem, pairs):
        if i == len(per_index):
            if rem.denominator & (rem.denominator - 1) == 0:
                out.append(CanonicalDecomposition(rem, tuple(pairs)))
            return
        for n, c, cp, val in per_index[i]:
            if val > rem:
                break
            if c or cp:
                pairs.append((n, c, cp))
                rec(i + 1, rem - val, pairs)
                pairs.pop()
            else:
                rec(i + 1, rem, pairs)

    rec(0, q, [])
    out.sort(key=lambda d: d.dyadic_summand)
    return out


def contains(M: Monoid, q) -> bool:
    if M.kind is Kind.LEXCONE:
        b, c = q
        return c >= 1 or (c == 0 and b >= 0)
    q = Fraction(q)
    if q < 0:
        return False
    if M.kind is Kind.NUMERICAL:
        return q.denominator == 1 and _numerical_member(M.gens, q.numerator)
    if M.kind is Kind.PUISEUX:
        gens, target, _ = _scaled(M.gens, q)
        return target.denominator == 1 and _numerical_member(gens, int(target))
    if M.kind is Kind.PRIME_RECIPROCAL:
        return _prime_reciprocal_member(q)
    if M.kind is Kind.MF:
        return q >= 1 or _prime_reciprocal_member(q)
    if M.kind is Kind.MAA:
        return bool(canonical_decompositions(q))
    if M.kind is Kind.DYADIC:
        return q.denominator & (q.denominator - 1) == 0
    raise ValueError(M.kind)


def divides(M: Monoid, b, c) -> bool:
    """b divides c in (M, +), i.e. c - b lies in M."""
    if M.kind is Kind.LEXCONE:
        return contains(M, (c[0] - b[0], c[1] - b[1]))
    return contains(M, Fraction(c) - Fraction(b))


# ---------------------------------------------------------------------------
# Atoms

def is_atom(M: Monoid, q) -> bool:
    if not contains(M, q):
        raise NotAnElement(f"{q} is not an element of {M.kind.value}")
    if M.kind is Kind.LEXCONE:
        return tuple(q) == (1, 0)
    q = Fraction(q)
    if q == 0:
        return False
    if M.kind in (Kind.PRIME_RECIPROCAL, Kind.MF):
        return q.numerator == 1 and is_prime(q.denominator)
    if M.kind is Kind.MAA:
        den = q.denominator
        if q.numerator == 1 and is_prime(den) and den > 4:
            return True
        t = (den & -den).bit_length() - 1  # v_2(den)
        if t < 3:
            return False
        n = t - 2
        p = den >> t
        return p == maa_prime(n) and q == maa_coatom(n)
    if M.kind is Kind.DYADIC:
        return False
    # finitely generated: search over scaled integer splits
    gens, target, _ = _scaled(M.gens, q)
    n = int(target)
    for u in range(1, n // 2 + 1):
        if _numerical_member(gens, u) and _numerical_member(gens, n - u):
            return False
    return True


def atoms_up_to(M: Monoid, bound) -> list:
    """Atoms with denominator <= bound, ascending.

    For the finitely generated and LexCone kinds the atom set is finite
    and is returned in full.
    """
    if M.kind is Kind.LEXCONE:
        return [(1, 0)]
    if M.kind is Kind.DYADIC:
        return []
    if M.kind in (Kind.NUMERICAL, Kind.PUISEUX):
        return sorted(Fraction(g) for g in M.gens if is_atom(M, Fraction(g)))
    bound = int(bound)
    if M.kind in (Kind.PRIME_RECIPROCAL, Kind.MF):
        ps = [p for p in range(2, bound + 1) if is_prime(p)]
        return [Fraction(1, p) for p in reversed(ps)]
    if M.kind is Kind.MAA:
        out = []
        n = 1
        while maa_prime(n) <= bound:
            out.append(maa_atom(n))
            n += 1
        n = 1
        while 2 ** (n + 2) * maa_prime(n) <= bound:
            out.append(maa_coatom(n))
            n += 1
        return sorted(out)
    raise ValueError(M.kind)


# ---------------------------------------------------------------------------
# Factorizations into atoms

@dataclass(frozen=True)
class AdditiveFactorization:
    atoms: tuple  # sorted ascending

    def total(self):
        return sum(self.atoms, Fraction(0))

    def __len__(self):
        return len(self.atoms)


@dataclass(frozen=True)
class EmptyCertificate:
    """Machine-checkable reason why no atom factorization exists."""

    reason: str          # "valuation" | "antimatter" | "atom-span"
    prime: int | None = None
    atom_floor: int | None = None

    def check(self, M: Monoid, q) -> bool:
        if self.reason == "antimatter":
            return atoms_up_to(M, 10 ** 4) == []
        if self.reason == "atom-span":
            return M.kind is Kind.LEXCONE and q[1] >= 1
        v = padic_valuation(Fraction(q), self.prime)
        return v < self.atom_floor


@dataclass(frozen=True)
class FactorizationOutcome:
    factorizations: tuple
    complete: bool
    certified_empty: EmptyCertificate | None = None


def _certified_empty(M: Monoid, q) -> EmptyCertificate | None:
    if M.kind is Kind.DYADIC:
        return EmptyCertificate("antimatter") if q != 0 else None
    if M.kind is Kind.LEXCONE:
        return EmptyCertificate("atom-span") if q[1] >= 1 else None
    q = Fraction(q)
    if M.kind in (Kind.PRIME_RECIPROCAL, Kind.MF):
        # every atom 1/p has v_p = -1 and v_r >= 0 elsewhere; sums of
        # atoms therefore keep every valuation >= -1
        for p, e in factor_integer(q.denominator).items():
            if e >= 2:
                return EmptyCertificate("valuation", prime=p, atom_floor=-1)
        return None
    if M.kind is Kind.MAA:
        for p, e in factor_integer(q.denominator).items():
            if p == 2:
                continue
            if maa_index(p) is None:
                return EmptyCertificate("valuation", prime=p, atom_floor=0)
            if e >= 2:
                return EmptyCertificate("valuation", prime=p, atom_floor=-1)
        # below 1/4 only the 1/p_n atoms fit, and those are 2-adically whole
        if q < Fraction(1, 4) and padic_valuation(q, 2) < 0:
            return EmptyCertificate("valuation", prime=2, atom_floor=0)
    return None


def _atom_candidates(M: Monoid, q, atom_bound):
    """(candidates descending, provably complete?)"""
    q = Fraction(q)
    if M.kind in (Kind.NUMERICAL, Kind.PUISEUX):
        return sorted((a for a in atoms_up_to(M, atom_bound) if a <= q), reverse=True), True
    if M.kind in (Kind.PRIME_RECIPROCAL, Kind.MF):
        if q < 1:
            cands = [Fraction(1, p) for p in sorted(factor_integer(q.denominator))]
            return cands, True
        cands = [a for a in atoms_up_to(M, atom_bound) if a <= q]
        return sorted(cands, reverse=True), False
    if M.kind is Kind.MAA:
        if q < Fraction(1, 4):
            cands = [Fraction(1, p) for p in sorted(factor_integer(q.denominator)) if p != 2]
            return cands, True
        cands = [a for a in atoms_up_to(M, atom_bound) if a <= q]
        return sorted(cands, reverse=True), False
    return [], True


def factorizations(M: Monoid, q, max_count: int = 16, atom_bound: int = 100,
                   node_budget: int = 200_000) -> FactorizationOutcome:
    """Distinct atom factorizations of q, up to max_count."""
    if M.kind is Kind.LEXCONE:
        b, c = q
        cert = _certified_empty(M, q)
        if cert:
            return FactorizationOutcome((), True, cert)
        if b == 0 and c == 0:
            return FactorizationOutcome((AdditiveFactorization(()),), True)
        return FactorizationOutcome(
            (AdditiveFactorization(((1, 0),) * b),), True)
    q = Fraction(q)
    if not contains(M, q):
        raise NotAnElement(f"{q} is not an element of {M.kind.value}")
    if q == 0:
        return FactorizationOutcome((AdditiveFactorization(()),), True)
    cert = _certified_empty(M, q)
    if cert:
        return FactorizationOutcome((), True, cert)
    cands, complete = _atom_candidates(M, q, atom_bound)
    found = []
    nodes = 0
    exhausted = True

    def dfs(remaining, idx, stack):
        nonlocal nodes, exhausted
        if len(found) >= max_count:
            exhausted = False
            return
        nodes += 1
        if nodes > node_budget:
            exhausted = False
            return
        if remaining == 0:
            found.append(AdditiveFactorization(tuple(sorted(stack))))
            return
        for i in range(idx, len(cands)):
            a = cands[i]
            if a > remaining:
                continue
            if not contains(M, remaining - a):
                continue
            stack.append(a)
            dfs(remaining - a, i, stack)
            stack.pop()
            if len(found) >= max_count or nodes > node_budget:
                return

    dfs(q, 0, [])
    return FactorizationOutcome(tuple(found), complete and exhausted)


# ---------------------------------------------------------------------------
# Common divisors, gcd and mcd sets

@dataclass(frozen=True)
class DivisorSetResult:
    gcd: tuple
    mcd: tuple
    common: tuple
    exact: bool


def _common_divisor_grid(M: Monoid, elems, search_bound):
    """Candidate common divisors for the dense kinds (bounded grid)."""
    lo = min(elems)
    L = math.lcm(*(e.denominator for e in elems))
    if search_bound:
        L = math.lcm(L, int(search_bound))
    k = 0
    out = []
    while Fraction(k, L) <= lo:
        out.append(Fraction(k, L))
        k += 1
    return out


def common_divisors(M: Monoid, elems, search_bound=None):
    """All common divisors (exact for the finitely generated and valuation
    kinds; a bounded-denominator grid otherwise), plus an exactness flag."""
    if not elems:
        raise EmptyInput("need at least one element")
    if M.kind is Kind.LEXCONE:
        elems = [tuple(e) for e in elems]
        m = min(elems, key=lambda e: (e[1], e[0]))
        # valuation monoid: divisors of the lex-min element below it
        out = []
        for c in range(0, m[1] + 1):
            if c == m[1]:
                bs = range(0, m[0] + 1) if c == 0 else range(-abs(search_bound or 8), m[0] + 1)
            else:
                bb = abs(search_bound or 8)
                bs = range(-bb, bb + 1) if c > 0 else range(0, bb + 1)
            for b in bs:
                d = (b, c)
                if contains(M, d) and all(divides(M, d, e) for e in elems):
                    out.append(d)
        exact = m[1] == 0  # otherwise the b-range was truncated
        return sorted(out, key=lambda e: (e[1], e[0])), exact
    elems = [Fraction(e) for e in elems]
    if M.kind in (Kind.NUMERICAL, Kind.PUISEUX):
        gens = M.gens
        lo = min(elems)
        _, _, L = _scaled(gens, lo)
        grid = []
        k = 0
        while Fraction(k, L) <= lo:
            grid.append(Fraction(k, L))
            k += 1
        out = [d for d in grid
               if contains(M, d) and all(divides(M, d, e) for e in elems)]
        return out, True
    if M.kind is Kind.DYADIC:
        m = min(elems)
        # valuation monoid: divisors are exactly the elements <= min
        out = [d for d in _common_divisor_grid(M, elems, search_bound) if contains(M, d)]
        if m not in out:
            out.append(m)
        return sorted(set(out)), True
    if M.kind in (Kind.PRIME_RECIPROCAL, Kind.MF):
        small = [e for e in elems if 0 <= e < 1 and contains(M, e)]
        if small:
            # below 1 the residue decomposition q = sum r_p/p is forced,
            # so the divisors of q are exactly its residue subsums
            q = min(small)
            res = _p_residues(q)
            primes = sorted(res)
            out = []
            for combo in itertools.product(*(range(res[p] + 1) for p in primes)):
                d = sum((Fraction(c, p) for c, p in zip(combo, primes)),
                        Fraction(0))
                if all(divides(M, d, e) for e in elems):
                    out.append(d)
            return sorted(set(out)), True
    grid = _common_divisor_grid(M, elems, search_bound)
    out = [d for d in grid
           if contains(M, d) and all(divides(M, d, e) for e in elems)]
    return out, False


def gcd_mcd_sets(M: Monoid, elems, search_bound=None) -> DivisorSetResult:
    if not elems:
        raise EmptyInput("need at least one element")
    common, exact = common_divisors(M, elems, search_bound)
    gcd = [d for d in common if all(divides(M, e, d) for e in common)]
    mcd = [d for d in common
           if not any(e != d and divides(M, d, e) for e in common)]
    key = (lambda e: (e[1], e[0])) if M.kind is Kind.LEXCONE else None
    return DivisorSetResult(
        tuple(sorted(gcd, key=key)), tuple(sorted(mcd, key=key)),
        tuple(sorted(common, key=key)), exact)


def gcd_set(M: Monoid, elems, search_bound=None):
    return list(gcd_mcd_sets(M, elems, search_bound).gcd)


def mcd_set(M: Monoid, elems, search_bound=None):
    return list(gcd_mcd_sets(M, elems, search_bound).mcd)


# ---------------------------------------------------------------------------
# Greatest divisor inside the dyadic submonoid of M_AA

def greatest_divisor_in_dyadic(q) -> Fraction:
    """Greatest divisor of q in N = <1/2^(n+2)> inside M_AA: the maximum
    dyadic summand over all canonical decompositions."""
    decs = canonical_decompositions(q)
    if not decs:
        raise NotAnElement(f"{q} is not an element of M_AA")
    return max(d.dyadic_summand for d in decs)
