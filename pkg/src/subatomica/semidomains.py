"""Multiplicative structure of assorted semidomains.

Covered here:

* ``ExpSum`` -- formal sums  c1*e^(q1) + ... + ck*e^(qk)  with positive
  integer coefficients and exponents drawn from an additive monoid of
  rationals.  Multiplication is convolution; since every coefficient is
  positive there is no cancellation, which makes divisibility decidable
  by a forced lowest-term recursion.
* ``MixedPoly`` -- polynomials whose coefficients live in Q(sqrt 2) from
  degree two on, but whose constant and linear coefficients must be
  nonnegative integers.
* ``LexConePoly`` -- the monoid algebra of the lexicographic cone
  (b, c) with c >= 1 arbitrary b, or c = 0 and b >= 0, over Q.

Ambient-ring factoring (K[x] with K = Q(sqrt 2), two-variable Laurent
division) is delegated to sympy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import sympy

from . import monoids
from .errors import (NotAnElement, UnitInput, ZeroDivisor, ZeroInput)
from .exact import QuadExt, factor_integer, floor_log2_expsum, is_prime

_X = sympy.Symbol("x")
_U = sympy.Symbol("u")
_V = sympy.Symbol("v")
_SQRT2 = sympy.sqrt(2)


class SKind(str, Enum):
    N0 = "N0"
    INT = "Z"
    QGE1 = "QGe1"
    EXPSUM = "ExpSum"
    MIXED = "MixedRing"
    LEXCONE_ALG = "LexConeAlgebra"


@dataclass(frozen=True)
class Semidomain:
    kind: SKind
    monoid: monoids.Monoid | None = None  # exponent monoid for EXPSUM

    def __str__(self):
        if self.kind is SKind.EXPSUM:
            return f"E({self.monoid})"
        return self.kind.value


N0_SD = Semidomain(SKind.N0)
INT_SD = Semidomain(SKind.INT)
QGE1_SD = Semidomain(SKind.QGE1)
MIXED_SD = Semidomain(SKind.MIXED)
LEXCONE_SD = Semidomain(SKind.LEXCONE_ALG)


def expsum_semidomain(M: monoids.Monoid) -> Semidomain:
    return Semidomain(SKind.EXPSUM, M)


# ---------------------------------------------------------------------------
# Formal exponential sums

@dataclass(frozen=True)
class ExpSum:
    """Sorted (exponent, coefficient) pairs; coefficients are positive
    integers, exponents distinct."""

    terms: tuple  # ((Fraction, int), ...) ascending by exponent

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_unit(self):
        return self.terms == ((Fraction(0), 1),)

    @property
    def support(self):
        return tuple(q for q, _ in self.terms)

    @property
    def min_exponent(self):
        return self.terms[0][0]

    def coeff(self, q):
        for e, c in self.terms:
            if e == q:
                return c
        return 0

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for q, c in self.terms:
            if q == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"e^({q})")
            else:
                parts.append(f"{c}*e^({q})")
        return " + ".join(parts)


def expsum(mapping) -> ExpSum:
    items = mapping.items() if hasattr(mapping, "items") else mapping
    acc: dict = {}
    for q, c in items:
        q, c = Fraction(q), int(c)
        if c:
            acc[q] = acc.get(q, 0) + c
    for q, c in acc.items():
        if c <= 0:
            raise ValueError(f"coefficient of e^({q}) must be positive")
    return ExpSum(tuple(sorted(acc.items())))


EXP_ONE = expsum({0: 1})


def expsum_contains(S: Semidomain, r: ExpSum) -> bool:
    return all(monoids.contains(S.monoid, q) for q in r.support)


def expsum_add(a: ExpSum, b: ExpSum) -> ExpSum:
    acc = dict(a.terms)
    for q, c in b.terms:
        acc[q] = acc.get(q, 0) + c
    return ExpSum(tuple(sorted(acc.items())))


def expsum_mul(a: ExpSum, b: ExpSum) -> ExpSum:
    acc: dict = {}
    for qa, ca in a.terms:
        for qb, cb in b.terms:
            q = qa + qb
            acc[q] = acc.get(q, 0) + ca * cb
    return ExpSum(tuple(sorted(acc.items())))


def expsum_product(factors) -> ExpSum:
    acc = EXP_ONE
    for f in factors:
        acc = expsum_mul(acc, f)
    return acc


def expsum_divides(S: Semidomain, a: ExpSum, b: ExpSum):
    """q with a*q = b (exponents of q in the base monoid), else None.

    Coefficients are positive, so the lowest term of the quotient is
    forced at every stage: b's lowest term must be the product of the
    lowest terms of a and q.
    """
    if a.is_zero:
        raise ZeroDivisor("division by the zero sum")
    if b.is_zero:
        return ExpSum(())
    rem = dict(b.terms)
    qterms = []
    a0, c0 = a.terms[0]
    while rem:
        mq = min(rem)
        e = mq - a0
        c, rcoeff = divmod(rem[mq], c0)
        if rcoeff or c <= 0:
            return None
        if not monoids.contains(S.monoid, e):
            return None
        qterms.append((e, c))
        for qa, ca in a.terms:
            k = qa + e
            left = rem.get(k, 0) - ca * c
            if left < 0:
                return None
            if left:
                rem[k] = left
            else:
                rem.pop(k, None)
        if len(qterms) > len(b.terms):
            return None
    return ExpSum(tuple(qterms))


def expsum_exponent_mcd_split(S: Semidomain, r: ExpSum):
    """A split r = e^(m) * r' extracting a nonzero common exponent
    divisor m of the support, or None.

    Returns (m, r', exact) where exact reports whether the underlying
    common-divisor enumeration was exhaustive (so None really means no
    shift exists).
    """
    if r.is_zero:
        raise ZeroInput("zero sum")
    supp = list(r.support)
    if 0 in supp:
        return None, True
    common, exact = monoids.common_divisors(S.monoid, supp)
    best = max((m for m in common if m > 0), default=None)
    if best is None:
        return None, exact
    shifted = ExpSum(tuple((q - best, c) for q, c in r.terms))
    return (expsum({best: 1}), shifted), exact


def _monoid_nonunit_split(M: monoids.Monoid, q):
    """u, v nonzero in M with u + v = q, for a known non-atom q."""
    if M.kind is monoids.Kind.LEXCONE:
        b, c = q
        if c >= 1 or b >= 2:
            return (1, 0), (b - 1, c)
        return None
    q = Fraction(q)
    half = q / 2
    if monoids.contains(M, half) and half != 0:
        return half, half
    try:
        cands = monoids.atoms_up_to(M, q)
    except Exception:
        cands = []
    for a in cands:
        rest = q - a
        if rest != 0 and monoids.contains(M, rest):
            return a, rest
    outcome = monoids.factorizations(M, q, max_count=1)
    for f in outcome.factorizations:
        if len(f.atoms) >= 2:
            return f.atoms[0], q - f.atoms[0]
    return None


@dataclass(frozen=True)
class ExpAtomVerdict:
    status: str                    # "atom" | "not_atom" | "unknown"
    reason: str = ""
    witness: tuple | None = None   # (s, t) with s*t = r, both nonunits

    @property
    def is_atom(self):
        return self.status == "atom"


def _expsum_divisor_candidates(S: Semidomain, r: ExpSum):
    """Exponent candidates for a proper divisor, with an exactness flag."""
    M = S.monoid
    supp = list(r.support)
    m_r = min(supp)
    divisors, exact = monoids.common_divisors(M, [m_r])
    cands = set()
    for sigma in supp:
        for u in divisors:
            e = sigma - u
            if e >= 0 and monoids.contains(M, e):
                cands.add(e)
    return sorted(cands), exact


def expsum_divisor_search(S: Semidomain, r: ExpSum, max_support: int | None = None,
                          budget: int = 200_000):
    """Nontrivial divisor pairs (s, t), s*t = r, both nonunits.

    Returns (pairs, complete).  Complete means every such pair (up to
    order) was enumerated.
    """
    cands, exact = _expsum_divisor_candidates(S, r)
    cmax = max(c for _, c in r.terms)
    k = len(r.terms) if max_support is None else max_support
    pairs = []
    seen = set()
    tried = 0
    complete = exact
    for size in range(1, min(k, len(cands)) + 1):
        for supp in itertools.combinations(cands, size):
            for coeffs in itertools.product(range(1, cmax + 1), repeat=size):
                tried += 1
                if tried > budget:
                    return pairs, False
                s = ExpSum(tuple(zip(supp, coeffs)))
                if s.is_unit or s == r:
                    continue
                t = expsum_divides(S, s, r)
                if t is None or t.is_unit:
                    continue
                key = frozenset((s.terms, t.terms))
                if key not in seen:
                    seen.add(key)
                    pairs.append((s, t))
    return pairs, complete


def expsum_is_atom(S: Semidomain, r: ExpSum) -> ExpAtomVerdict:
    """Atom test in E(M) = { sums with exponents in M }.

    The units are exactly {1}; a sum with at least two terms has value
    at least 2, and a single term c*e^(q) is a nonunit of value >= 2
    unless c = 1.  A factor of the shape e^(q) forces q to divide every
    exponent of the support, so once common exponent shifts are ruled
    out every proper factor has value >= 2 and a value below 4
    certifies atomicity.
    """
    if r.is_zero:
        raise ZeroInput("zero sum")
    if r.is_unit:
        raise UnitInput("1 is a unit")
    if not expsum_contains(S, r):
        raise NotAnElement(f"{r} has exponents outside {S.monoid}")
    M = S.monoid
    if len(r.terms) == 1:
        q, c = r.terms[0]
        if c == 1:
            if monoids.is_atom(M, q):
                return ExpAtomVerdict("atom", reason="exponent is an atom of the base monoid")
            split = _monoid_nonunit_split(M, q)
            if split is None:
                return ExpAtomVerdict("unknown", reason="no exponent split found")
            u, v = split
            return ExpAtomVerdict("not_atom", witness=(expsum({u: 1}), expsum({v: 1})))
        if (q == 0 if M.kind is not monoids.Kind.LEXCONE else q == (0, 0)):
            if is_prime(c):
                return ExpAtomVerdict("atom", reason="prime constant")
            p = min(factor_integer(c))
            return ExpAtomVerdict("not_atom", witness=(expsum({q: p}), expsum({q: c // p})))
        return ExpAtomVerdict("not_atom", witness=(expsum({0 if M.kind is not monoids.Kind.LEXCONE else (0, 0): c}),
                                                   expsum({q: 1})))
    g = math.gcd(*(c for _, c in r.terms))
    if g > 1:
        zero = Fraction(0) if M.kind is not monoids.Kind.LEXCONE else (0, 0)
        p = min(factor_integer(g))
        return ExpAtomVerdict(
            "not_atom",
            witness=(expsum({zero: p}), ExpSum(tuple((q, c // p) for q, c in r.terms))))
    split, exact = expsum_exponent_mcd_split(S, r)
    if split is not None:
        return ExpAtomVerdict("not_atom", witness=split)
    if exact and M.kind is not monoids.Kind.LEXCONE:
        fl = floor_log2_expsum([(c, q) for q, c in r.terms])
        if fl < 2:
            return ExpAtomVerdict(
                "atom",
                reason="no common exponent shift and value below 4: every "
                       "product of two nonunits without a shift has value >= 4")
    pairs, complete = expsum_divisor_search(S, r)
    if pairs:
        return ExpAtomVerdict("not_atom", witness=pairs[0])
    if complete:
        return ExpAtomVerdict("atom", reason="exhaustive divisor search found no split")
    return ExpAtomVerdict("unknown", reason="divisor search inconclusive")


def expsum_factorizations(S: Semidomain, r: ExpSum, max_count: int = 16,
                          depth: int = 12):
    """Factorizations of r into atoms of E(M); (list of tuples, complete)."""
    if r.is_zero:
        raise ZeroInput("zero sum")
    if r.is_unit:
        return [()], True
    results: list = []
    complete = True

    def expand(x, acc, d):
        nonlocal complete
        v = expsum_is_atom(S, x)
        if v.status == "unknown":
            complete = False
            return
        if v.is_atom:
            fact = tuple(sorted(acc + [x], key=lambda e: e.terms))
            if fact not in results and len(results) < max_count:
                results.append(fact)
            elif len(results) >= max_count:
                complete = False
            return
        if d <= 0:
            complete = False
            return
        pairs, pc = expsum_divisor_search(S, x)
        if not pc:
            complete = False
        handled = False
        for s, t in pairs:
            if expsum_is_atom(S, s).is_atom:
                handled = True
                expand(t, acc + [s], d - 1)
        if not handled and pairs:
            s, t = pairs[0]
            expand(s, acc, d - 1)  # keep splitting s until an atom appears
        if not pairs and v.witness:
            s, t = v.witness
            # fall back on the verdict witness (e.g. exponent shift)
            if expsum_is_atom(S, s).is_atom:
                expand(t, acc + [s], d - 1)
            else:
                complete = False

    expand(r, [], depth)
    return results, complete


def expsum_neg_embed(r: ExpSum):
    """Image in the group ring: dict exponent -> integer coefficient."""
    return {q: c for q, c in r.terms}


# ---------------------------------------------------------------------------
# The mixed ring  S + Sx + x^2 K[x],  K = Q(sqrt 2),  S = N0

@dataclass(frozen=True)
class MixedPoly:
    coeffs: tuple  # QuadExt, ascending, last nonzero

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        if self.is_zero:
            raise ZeroInput("degree of zero")
        return len(self.coeffs) - 1

    @property
    def ord(self):
        return next(i for i, c in enumerate(self.coeffs) if c)

    @property
    def ord_coeff(self):
        return self.coeffs[self.ord]

    @property
    def is_unit(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == QuadExt(Fraction(1))

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else QuadExt(Fraction(0))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if c == QuadExt(Fraction(1)) else f"({cs})*{xs}")
        return " + ".join(parts)


def _as_quad(c) -> QuadExt:
    if isinstance(c, QuadExt):
        return c
    return QuadExt(Fraction(c))


def mixed_poly(coeffs) -> MixedPoly:
    cs = [_as_quad(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    p = MixedPoly(tuple(cs))
    if not p.is_zero and not mixed_contains(p):
        raise NotAnElement(
            f"{p}: constant and linear coefficients must be nonnegative integers")
    return p


def _quad_nonneg_int(c: QuadExt) -> bool:
    return c.is_rational and c.a.denominator == 1 and c.a >= 0


def mixed_contains(p: MixedPoly) -> bool:
    return all(_quad_nonneg_int(p.coeff(i)) for i in (0, 1))


def mixed_mul(f: MixedPoly, g: MixedPoly) -> MixedPoly:
    if f.is_zero or g.is_zero:
        return MixedPoly(())
    out = [QuadExt(Fraction(0))] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] = out[i + j] + a * b
    return MixedPoly(tuple(out))


def mixed_scale(lam: QuadExt, f: MixedPoly) -> MixedPoly:
    return MixedPoly(tuple(lam * c for c in f.coeffs))


def _mixed_kx_divide(f: MixedPoly, g: MixedPoly):
    """Quotient in K[x] (exact), else None."""
    if g.is_zero:
        raise ZeroDivisor("division by zero")
    if f.is_zero:
        return MixedPoly(())
    if f.degree < g.degree:
        return None
    rem = list(f.coeffs)
    q = [QuadExt(Fraction(0))] * (f.degree - g.degree + 1)
    glead = g.coeffs[-1]
    while len(rem) >= len(g.coeffs) and any(bool(c) for c in rem):
        while rem and not rem[-1]:
            rem.pop()
        if len(rem) < len(g.coeffs):
            break
        k = len(rem) - len(g.coeffs)
        c = rem[-1] / glead
        q[k] = c
        for i, gc in enumerate(g.coeffs):
            rem[k + i] = rem[k + i] - c * gc
        rem.pop()
    if any(bool(c) for c in rem):
        return None
    return MixedPoly(tuple(q))


def mixed_divides(f: MixedPoly, g: MixedPoly):
    """q in the mixed ring with f*q = g, else None."""
    q = _mixed_kx_divide(g, f)
    if q is None or (not q.is_zero and not mixed_contains(q)):
        return None
    return q


@dataclass(frozen=True)
class OrdStatus:
    status: str          # "factors_into_atoms" | "never_factors"
    ord: int
    ord_coeff: QuadExt


def mixedring_ord_status(f: MixedPoly) -> OrdStatus:
    """A nonunit factors into atoms exactly when its lowest-order
    coefficient is a (positive) integer; ord coefficients multiply and
    every atom has a positive integer one."""
    if f.is_zero:
        raise ZeroInput("zero polynomial")
    if f.is_unit:
        raise UnitInput("1 is a unit")
    c = f.ord_coeff
    ok = c.is_rational and c.a.denominator == 1 and c.a > 0
    return OrdStatus("factors_into_atoms" if ok else "never_factors", f.ord, c)


def _quad_to_sympy(c: QuadExt):
    return sympy.Rational(c.a.numerator, c.a.denominator) \
        + sympy.Rational(c.b.numerator, c.b.denominator) * _SQRT2


def _quad_from_sympy(e) -> QuadExt:
    e = sympy.expand(e)
    b = e.coeff(_SQRT2)
    a = sympy.simplify(e - b * _SQRT2)
    return QuadExt(Fraction(a.p, a.q), Fraction(b.p, b.q))


def _mixed_to_sympy(f: MixedPoly):
    return sum(_quad_to_sympy(c) * _X ** i for i, c in enumerate(f.coeffs))


def _mixed_kx_factors(f: MixedPoly):
    """Factor over K[x]; returns (const QuadExt, [MixedPoly monic irreducible])."""
    expr = _mixed_to_sympy(f)
    const, facs = sympy.factor_list(expr, _X, extension=_SQRT2)
    cq = _quad_from_sympy(const)
    out = []
    for p, e in facs:
        pol = sympy.Poly(p, _X, extension=_SQRT2)
        cs = [_quad_from_sympy(c.as_expr() if hasattr(c, "as_expr") else c)
              for c in reversed(pol.all_coeffs())]
        lead = cs[-1]
        if len(cs) == 1:
            cq = cq * lead ** e if e > 1 else cq * lead
            continue
        monic = MixedPoly(tuple(c / lead for c in cs))
        for _ in range(e):
            cq = cq * lead
            out.append(monic)
    out.sort(key=lambda p: (p.degree, [str(c) for c in p.coeffs]))
    return cq, out


def _positive_int_divisor_pairs(n: int):
    for d in sorted(set(itertools.chain.from_iterable(
            (d, n // d) for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0))):
        yield d, n // d


@dataclass(frozen=True)
class MixedAtomVerdict:
    status: str                   # "atom" | "not_atom"
    reason: str = ""
    witness: tuple | None = None  # (g, h), g*h = f

    @property
    def is_atom(self):
        return self.status == "atom"


def mixed_is_atom(f: MixedPoly) -> MixedAtomVerdict:
    """Atom test; complete.

    For ord <= 1 the lowest-order coefficient is a positive integer and
    multiplies across any factorization, while the K[x] irreducible
    factors of one side form a sub-multiset; enumerating both determines
    all splits.
    """
    if f.is_zero:
        raise ZeroInput("zero polynomial")
    if f.is_unit:
        raise UnitInput("1 is a unit")
    if not mixed_contains(f):
        raise NotAnElement(str(f))
    if f.ord >= 2:
        half = mixed_scale(QuadExt(Fraction(1, 2)), f)
        return MixedAtomVerdict(
            "not_atom", reason="order >= 2 admits a scalar split",
            witness=(mixed_poly([2]), half))
    if len(f.coeffs) == 1:
        n = int(f.coeffs[0].a)
        if is_prime(n):
            return MixedAtomVerdict("atom", reason="prime constant")
        p = min(factor_integer(n)) if n > 1 else None
        if p is None:
            raise UnitInput("1 is a unit")
        return MixedAtomVerdict("not_atom",
                                witness=(mixed_poly([p]), mixed_poly([n // p])))
    c_ord = int(f.ord_coeff.a)
    const, facs = _mixed_kx_factors(f)
    n = len(facs)
    for mask in range(2 ** n):
        sub = [facs[i] for i in range(n) if mask >> i & 1]
        g0 = mixed_poly([1])
        for p in sub:
            g0 = mixed_mul(g0, p)
        ord_g0 = g0.ord if not g0.is_zero else 0
        c_g0 = g0.ord_coeff
        for n1, n2 in _positive_int_divisor_pairs(c_ord):
            lam = QuadExt(Fraction(n1)) / c_g0
            g = mixed_scale(lam, g0)
            if g.is_unit or not mixed_contains(g):
                continue
            h = _mixed_kx_divide(f, g)
            if h is None or h.is_unit or not mixed_contains(h):
                continue
            return MixedAtomVerdict("not_atom", witness=(g, h))
    return MixedAtomVerdict(
        "atom",
        reason="no split over any K[x] factor subset and integer divisor pair")


def mixed_factorizations(f: MixedPoly, max_count: int = 16, depth: int = 24):
    """Factorizations into atoms; ([], True) certifies none exist."""
    st = mixedring_ord_status(f)
    if st.status == "never_factors":
        return [], True
    results: list = []
    complete = True

    def expand(x, acc, d):
        nonlocal complete
        v = mixed_is_atom(x)
        if v.is_atom:
            fact = tuple(sorted(acc + [x], key=lambda p: (p.degree, str(p))))
            if fact not in results:
                if len(results) < max_count:
                    results.append(fact)
                else:
                    complete = False
            return
        if d <= 0:
            complete = False
            return
        expand_splits(x, acc, d)

    def expand_splits(x, acc, d):
        nonlocal complete
        # enumerate all atom-first splits at this node (x has ord <= 1
        # here: recursion starts below an explicit order peel)
        c_ord = int(x.ord_coeff.a)
        const, facs = _mixed_kx_factors(x)
        n = len(facs)
        seen = set()
        for mask in range(2 ** n):
            sub = [facs[i] for i in range(n) if mask >> i & 1]
            g0 = mixed_poly([1])
            for p in sub:
                g0 = mixed_mul(g0, p)
            for n1, _ in _positive_int_divisor_pairs(c_ord):
                lam = QuadExt(Fraction(n1)) / g0.ord_coeff
                g = mixed_scale(lam, g0)
                if g.is_unit or not mixed_contains(g):
                    continue
                h = _mixed_kx_divide(x, g)
                if h is None or h.is_unit or not mixed_contains(h):
                    continue
                if not mixed_is_atom(g).is_atom:
                    continue
                key = str(g)
                if key in seen:
                    continue
                seen.add(key)
                expand(h, acc + [g], d - 1)

    # order >= 2: peel x-powers times the ord coefficient explicitly:
    # f = (x^(m-1)) * c_m * g with g of order 1 and unit ord coefficient
    if f.ord >= 2:
        m = f.ord
        cm = f.ord_coeff          # positive integer here
        x_atom = mixed_poly([0, 1])
        inv = QuadExt(Fraction(1)) / cm
        g = MixedPoly((QuadExt(Fraction(0)),)
                      + tuple(inv * c for c in f.coeffs[m:]))
        base_acc = [x_atom] * (m - 1)
        n = int(cm.a)
        prime_atoms = []
        for p, e in sorted(factor_integer(n).items()):
            prime_atoms.extend([mixed_poly([p])] * e)
        expand(g, base_acc + prime_atoms, depth)
        if f.degree > m:
            # atoms with irrational tails can recombine outside this peel
            complete = False
        return results, complete
    expand(f, [], depth)
    return results, complete


# ---------------------------------------------------------------------------
# Lexicographic-cone monoid algebra over Q

@dataclass(frozen=True)
class LexConePoly:
    terms: tuple  # (((b, c), Fraction), ...) sorted, coefficients nonzero

    @property
    def is_zero(self):
        return not self.terms

    @property
    def support(self):
        return tuple(m for m, _ in self.terms)

    @property
    def is_unit(self):
        return len(self.terms) == 1 and self.terms[0][0] == (0, 0)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for (b, c), coeff in self.terms:
            if (b, c) == (0, 0):
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(f"X^({b},{c})")
            else:
                parts.append(f"{coeff}*X^({b},{c})")
        return " + ".join(parts)


def lexcone_poly(mapping) -> LexConePoly:
    items = mapping.items() if hasattr(mapping, "items") else mapping
    acc: dict = {}
    for m, coeff in items:
        m = (int(m[0]), int(m[1]))
        coeff = Fraction(coeff)
        if not monoids.contains(monoids.LEXCONE, m):
            raise NotAnElement(f"exponent {m} outside the lexicographic cone")
        acc[m] = acc.get(m, Fraction(0)) + coeff
    return LexConePoly(tuple(sorted((m, c) for m, c in acc.items() if c)))


def lexcone_mul(f: LexConePoly, g: LexConePoly) -> LexConePoly:
    acc: dict = {}
    for (b1, c1), x in f.terms:
        for (b2, c2), y in g.terms:
            m = (b1 + b2, c1 + c2)
            acc[m] = acc.get(m, Fraction(0)) + x * y
    return LexConePoly(tuple(sorted((m, c) for m, c in acc.items() if c)))


def lexcone_phi(f: LexConePoly) -> int:
    """Max second exponent coordinate; additive across products."""
    if f.is_zero:
        raise ZeroInput("phi of zero")
    return max(c for (_, c) in f.support)


def _lexcone_to_sympy(f: LexConePoly):
    bmin = min(b for (b, _) in f.support)
    shift = max(0, -bmin)
    expr = sympy.Integer(0)
    for (b, c), coeff in f.terms:
        expr += sympy.Rational(coeff.numerator, coeff.denominator) \
            * _U ** (b + shift) * _V ** c
    return expr, shift


def lexcone_divides(f: LexConePoly, g: LexConePoly):
    """q in the algebra with f*q = g, else None.

    Division happens in the Laurent ring Q[u^(+-1), v]; the quotient, if
    polynomial there, must then have its support inside the cone.
    """
    if f.is_zero:
        raise ZeroDivisor("division by zero")
    if g.is_zero:
        return LexConePoly(())
    fe, fs = _lexcone_to_sympy(f)
    ge, gs = _lexcone_to_sympy(g)
    q = sympy.cancel(ge * _U ** fs / (fe * _U ** gs))
    num, den = sympy.fraction(sympy.together(q))
    dp = sympy.Poly(den, _U, _V)
    if len(dp.monoms()) != 1:
        return None
    (du, dv), = dp.monoms()
    dc = dp.coeffs()[0]
    np_ = sympy.Poly(num, _U, _V)
    terms = []
    for (mu, mv), coeff in zip(np_.monoms(), np_.coeffs()):
        b = mu - du
        c = mv - dv
        if c < 0:
            return None
        coeff = sympy.Rational(coeff, dc)
        m = (int(b), int(c))
        if not monoids.contains(monoids.LEXCONE, m):
            return None
        terms.append((m, Fraction(coeff.p, coeff.q)))
    out = LexConePoly(tuple(sorted(terms)))
    if lexcone_mul(f, out) != g:
        return None
    return out


def _lexcone_normalize_irreducible(terms):
    """Shift a non-monomial irreducible so its minimal layer is 0 and
    the minimal first coordinate inside that layer is 0.

    The result is an atom of the algebra: a monomial X^(mb,mc) divides
    it only if mc <= 0 and mb <= 0, i.e. only trivially.
    """
    cmin = min(c for (_, c), _ in terms)
    shifted = [((b, c - cmin), coeff) for (b, c), coeff in terms]
    bmin0 = min(b for (b, c), _ in shifted if c == 0)
    return LexConePoly(tuple(sorted(
        ((b - bmin0, c), coeff) for (b, c), coeff in shifted)))


def lexcone_canonical_factor(f: LexConePoly):
    """f = scalar * X^(monomial) * prod(atoms) in the ambient Laurent
    ring Q[u^(+-1), v].

    Returns (scalar, monomial, atoms).  The monomial collects whatever
    exponent is left after normalizing each non-monomial irreducible
    factor into atom position; it may fall outside the cone.  f is a
    product of atoms in the algebra exactly when the monomial is
    (k, 0) with k >= 0.
    """
    if f.is_zero:
        raise ZeroInput("zero element")
    expr, shift = _lexcone_to_sympy(f)
    const, facs = sympy.factor_list(sympy.expand(expr), _U, _V)
    scalar = Fraction(const.p, const.q)
    mono_b, mono_c = -shift, 0
    atoms = []
    for p, e in facs:
        pol = sympy.Poly(p, _U, _V)
        monoms = pol.monoms()
        if len(monoms) == 1:
            (mb, mc), = monoms
            coeff = pol.coeffs()[0]
            for _ in range(e):
                scalar *= Fraction(coeff.p, coeff.q)
                mono_b += mb
                mono_c += mc
            continue
        terms = [(((int(mb), int(mc))), Fraction(c.p, c.q))
                 for (mb, mc), c in zip(pol.monoms(), pol.coeffs())]
        atom = _lexcone_normalize_irreducible(terms)
        # bookkeeping: p = X^(delta) * atom for some delta
        (b0, c0), coeff0 = atom.terms[0]
        src = sorted(terms)
        (sb, sc), scoeff = src[0]
        db, dc = sb - b0, sc - c0
        scalar_adj = scoeff / coeff0
        for _ in range(e):
            atoms.append(atom)
            mono_b += db
            mono_c += dc
            scalar *= scalar_adj
    return scalar, (mono_b, mono_c), atoms


def lexcone_is_monomial_unit_multiple(f: LexConePoly):
    """c * X^m form: returns (c, m) or None."""
    if len(f.terms) == 1:
        m, c = f.terms[0]
        return c, m
    return None


# ---------------------------------------------------------------------------
# Grothendieck-style ambient embeddings

def grothendieck_embed(S: Semidomain, x):
    """Image of x in the difference/fraction ambient of the semidomain."""
    if S.kind is SKind.N0:
        return int(x)
    if S.kind is SKind.INT:
        return int(x)
    if S.kind is SKind.QGE1:
        return Fraction(x)
    if S.kind is SKind.EXPSUM:
        return expsum_neg_embed(x)
    if S.kind is SKind.MIXED:
        return list(x.coeffs)
    if S.kind is SKind.LEXCONE_ALG:
        return x
    raise ValueError(S.kind)
