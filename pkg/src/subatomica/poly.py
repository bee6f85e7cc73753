"""Polynomial and Laurent polynomial semidomains S[x], S[x^(+-1)].

Coefficient bases: N0 (nonnegative integers), QGe1 ({0} union Q>=1) and
Z.  Factoring in the ambient rings Z[x] / Q[x] is delegated to sympy;
everything on top (membership filtering, recombination of irreducible
factors, scaling scans for QGe1) is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import sympy
from sympy.utilities.iterables import multiset_partitions

from .errors import (BaseMismatch, ConstantInput, UnitInput, ZeroDivisor,
                     ZeroInput)
from .exact import factor_integer, is_prime

_X = sympy.Symbol("x")


class Base(str, Enum):
    N0 = "N0"
    QGE1 = "QGe1"
    INT = "Z"


# ---------------------------------------------------------------------------
# Scalars of the base semidomain

def scalar_contains(base: Base, c) -> bool:
    c = Fraction(c)
    if base is Base.N0:
        return c.denominator == 1 and c >= 0
    if base is Base.QGE1:
        return c == 0 or c >= 1
    return c.denominator == 1


def scalar_is_unit(base: Base, c) -> bool:
    c = Fraction(c)
    if base is Base.INT:
        return abs(c) == 1
    return c == 1


def scalar_divide(base: Base, b, c):
    """d with b*d = c and d in the base, else None (b nonzero)."""
    b, c = Fraction(b), Fraction(c)
    if b == 0:
        raise ZeroDivisor("division by zero scalar")
    d = c / b
    return d if scalar_contains(base, d) else None


def scalar_is_atom(base: Base, c) -> bool:
    c = Fraction(c)
    if base is Base.QGE1:
        return False
    return c.denominator == 1 and is_prime(abs(c.numerator))


def scalar_atom_split(base: Base, c):
    """A nontrivial split c = u*v into nonunits, or None."""
    c = Fraction(c)
    if base is Base.QGE1:
        if c > 1:
            u = (1 + c) / 2
            return (u, c / u)
        return None
    n = abs(c.numerator)
    for p in sorted(factor_integer(n)):
        if p != n:
            return (Fraction(p), c / p)
    return None


# ---------------------------------------------------------------------------
# Polynomials

@dataclass(frozen=True)
class SemiPoly:
    """Dense polynomial over a base semidomain; zero = empty coeffs."""

    base: Base
    coeffs: tuple  # c0..cn ascending, cn != 0

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        if self.is_zero:
            raise ZeroInput("degree of the zero polynomial")
        return len(self.coeffs) - 1

    @property
    def ord(self):
        if self.is_zero:
            raise ZeroInput("ord of the zero polynomial")
        return next(i for i, c in enumerate(self.coeffs) if c)

    @property
    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def is_unit(self):
        return self.is_constant and not self.is_zero and scalar_is_unit(self.base, self.coeffs[0])

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                cs = "" if c == 1 else f"{c}"
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(f"{cs}{xs}" if cs else xs)
        return " + ".join(parts)


def make_poly(base: Base, coeffs) -> SemiPoly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    for c in cs:
        if c and not scalar_contains(base, c):
            raise ValueError(f"coefficient {c} not in base {base.value}")
    return SemiPoly(base, tuple(cs))


def const_poly(base: Base, c) -> SemiPoly:
    return make_poly(base, [c])


def poly_add(f: SemiPoly, g: SemiPoly) -> SemiPoly:
    if f.base is not g.base:
        raise BaseMismatch(f"{f.base} vs {g.base}")
    n = max(len(f.coeffs), len(g.coeffs))
    return make_poly(f.base, [f.coeff(i) + g.coeff(i) for i in range(n)])


def poly_mul(f: SemiPoly, g: SemiPoly) -> SemiPoly:
    if f.base is not g.base:
        raise BaseMismatch(f"{f.base} vs {g.base}")
    if f.is_zero or g.is_zero:
        return SemiPoly(f.base, ())
    out = [Fraction(0)] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return SemiPoly(f.base, tuple(out))


def poly_product(base: Base, polys) -> SemiPoly:
    acc = const_poly(base, 1)
    for p in polys:
        acc = poly_mul(acc, p)
    return acc


def _rat_divmod(f_coeffs, g_coeffs):
    """Long division in Q[x]; returns (quotient, remainder) coeff tuples."""
    rem = list(f_coeffs)
    q = [Fraction(0)] * max(len(f_coeffs) - len(g_coeffs) + 1, 1)
    glead = g_coeffs[-1]
    gdeg = len(g_coeffs) - 1
    while len(rem) >= len(g_coeffs) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(g_coeffs):
            break
        k = len(rem) - 1 - gdeg
        c = rem[-1] / glead
        q[k] = c
        for i, gc in enumerate(g_coeffs):
            rem[k + i] -= c * gc
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(q), tuple(rem)


def exact_divide(f: SemiPoly, g: SemiPoly):
    """h with f = g*h and h in S[x], else None.

    Division happens in the ambient Q[x]; the quotient is then filtered
    by coefficient membership.
    """
    if f.base is not g.base:
        raise BaseMismatch(f"{f.base} vs {g.base}")
    if g.is_zero:
        raise ZeroDivisor("division by the zero polynomial")
    if f.is_zero:
        return SemiPoly(f.base, ())
    if f.degree < g.degree:
        return None
    q, r = _rat_divmod(f.coeffs, g.coeffs)
    if r:
        return None
    try:
        return make_poly(f.base, q)
    except ValueError:
        return None


def coefficient_mcd(f: SemiPoly) -> list:
    """Maximal common divisors of the coefficient multiset in the base."""
    if f.is_zero:
        raise ZeroInput("zero polynomial has no coefficient mcd")
    nz = [c for c in f.coeffs if c]
    if f.base is Base.N0:
        return [Fraction(math.gcd(*(int(c) for c in nz)))]
    if f.base is Base.QGE1:
        return [min(nz)]
    return [Fraction(math.gcd(*(abs(int(c)) for c in nz)))]


# ---------------------------------------------------------------------------
# Ambient factorization (sympy)

def _to_sympy(coeffs):
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        _X, domain="QQ")


def _from_sympy(p) -> tuple:
    return tuple(Fraction(c.p, c.q) for c in reversed(p.all_coeffs()))


def ambient_factors(coeffs):
    """Factor a rational polynomial in Q[x].

    Returns (const, factors): const is a Fraction and factors a list of
    coefficient tuples of monic irreducible nonconstant polynomials,
    repeated per multiplicity, with const * prod(factors) == input.
    """
    p = _to_sympy(coeffs)
    const, facs = p.factor_list()
    const = Fraction(const.p, const.q)
    out = []
    for q, e in facs:
        qc = _from_sympy(q)
        lead = qc[-1]
        if len(qc) == 1:
            const *= lead ** e
            continue
        monic = tuple(c / lead for c in qc)
        const *= lead ** e
        out.extend([monic] * e)
    out.sort()
    return const, out


def _submultisets(items):
    """Distinct proper nonempty sub-multisets of a sorted list, as
    (subset, complement) pairs."""
    counts = []
    for it in items:
        if counts and counts[-1][0] == it:
            counts[-1][1] += 1
        else:
            counts.append([it, 1])
    ranges = [range(c + 1) for _, c in counts]
    for combo in itertools.product(*ranges):
        total = sum(combo)
        if total == 0 or total == len(items):
            continue
        sub, comp = [], []
        for (it, c), k in zip(counts, combo):
            sub.extend([it] * k)
            comp.extend([it] * (c - k))
        yield sub, comp


def _mul_coeff_lists(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _product_coeffs(factors):
    acc = (Fraction(1),)
    for f in factors:
        acc = _mul_coeff_lists(acc, f)
    return acc


# ---------------------------------------------------------------------------
# Indecomposability

def _n0_split(f: SemiPoly):
    """Split f = g*h into nonconstant N0[x] polynomials, or None."""
    const, facs = ambient_factors(f.coeffs)
    if len(facs) < 2:
        return None
    for sub, comp in _submultisets(facs):
        g = _product_coeffs(sub)
        if any(c < 0 for c in g):
            continue
        h = tuple(const * c for c in _product_coeffs(comp))
        if any(c < 0 or c.denominator != 1 for c in h):
            continue
        # integrality of g: scale by its denominator lcm into h
        L = math.lcm(*(c.denominator for c in g))
        gi = tuple(c * L for c in g)
        hi = tuple(c / L for c in h)
        if any(c.denominator != 1 for c in hi):
            continue
        return make_poly(Base.N0, gi), make_poly(Base.N0, hi)
    return None


def _uniform_positive(coeffs):
    """min of the nonzero coefficients if they all share one sign,
    reported for the positive representative; None on mixed signs."""
    nz = [c for c in coeffs if c]
    if all(c > 0 for c in nz):
        return min(nz)
    if all(c < 0 for c in nz):
        return min(-c for c in nz)
    return None


def _qge1_split(f: SemiPoly):
    """Split f = g*h into nonconstant QGe1[x] polynomials, or None.

    For a fixed split of the Q[x] irreducible factors the free scalar is
    constrained to a closed rational interval by the requirement that
    every nonzero coefficient on both sides is >= 1; the split is
    feasible iff the product of the two minimal scalings is at most the
    leading constant.
    """
    const, facs = ambient_factors(f.coeffs)
    if len(facs) < 2:
        return None
    for sub, comp in _submultisets(facs):
        g0 = _product_coeffs(sub)       # monic
        h0 = _product_coeffs(comp)      # monic; f = const * g0 * h0
        mg = _uniform_positive(g0)
        mh = _uniform_positive(h0)
        if mg is None or mh is None:
            continue
        if mg * mh * const < 1:
            continue
        alpha = 1 / mg
        g = tuple(alpha * c for c in g0)
        h = tuple(const / alpha * c for c in h0)
        return make_poly(Base.QGE1, g), make_poly(Base.QGE1, h)
    return None


def _int_split(f: SemiPoly):
    const, facs = ambient_factors(f.coeffs)
    if len(facs) < 2:
        return None
    sub, comp = next(iter(_submultisets(facs)))
    g = _product_coeffs(sub)
    L = math.lcm(*(c.denominator for c in g))
    g = tuple(c * L for c in g)
    h = tuple(const / L * c for c in _product_coeffs(comp))
    if any(c.denominator != 1 for c in h):
        return None
    return make_poly(Base.INT, g), make_poly(Base.INT, h)


def is_indecomposable(f: SemiPoly):
    """(verdict, evidence); evidence is a (g, h) split when decomposable."""
    if f.is_zero:
        raise ZeroInput("zero polynomial")
    if f.is_constant:
        raise ConstantInput("indecomposability concerns nonconstant polynomials")
    split = {Base.N0: _n0_split, Base.QGE1: _qge1_split, Base.INT: _int_split}[f.base](f)
    return (split is None), split


# ---------------------------------------------------------------------------
# Atom certification

@dataclass(frozen=True)
class PolyAtomCertificate:
    kind: str                 # "constant" | "nonconstant"
    content: Fraction | None = None   # unit coefficient mcd for nonconstant


@dataclass(frozen=True)
class AtomVerdict:
    status: str               # "atom" | "not_atom" | "unknown"
    certificate: PolyAtomCertificate | None = None
    witness: tuple | None = None      # (g, h) with g*h = f

    @property
    def is_atom(self):
        return self.status == "atom"


def is_atom_poly(f: SemiPoly) -> AtomVerdict:
    if f.is_zero:
        raise ZeroInput("zero polynomial")
    if f.is_unit:
        raise UnitInput(f"{f} is a unit")
    if f.is_constant:
        c = f.coeffs[0]
        if scalar_is_atom(f.base, c):
            return AtomVerdict("atom", PolyAtomCertificate("constant"))
        split = scalar_atom_split(f.base, c)
        if split:
            return AtomVerdict("not_atom",
                               witness=(const_poly(f.base, split[0]),
                                        const_poly(f.base, split[1])))
        return AtomVerdict("not_atom", witness=None) if f.base is Base.QGE1 \
            else AtomVerdict("unknown")
    mcd = coefficient_mcd(f)[0]
    if not scalar_is_unit(f.base, mcd):
        g = const_poly(f.base, mcd)
        h = exact_divide(f, g)
        return AtomVerdict("not_atom", witness=(g, h))
    indec, split = is_indecomposable(f)
    if indec:
        return AtomVerdict("atom", PolyAtomCertificate("nonconstant", content=mcd))
    return AtomVerdict("not_atom", witness=split)


def check_atom_certificate(f: SemiPoly, verdict: AtomVerdict) -> bool:
    """Replay the evidence attached to an AtomVerdict."""
    if verdict.status == "atom":
        cert = verdict.certificate
        if cert.kind == "constant":
            return f.is_constant and scalar_is_atom(f.base, f.coeffs[0])
        return (scalar_is_unit(f.base, coefficient_mcd(f)[0])
                and is_indecomposable(f)[0])
    if verdict.status == "not_atom" and verdict.witness:
        g, h = verdict.witness
        return (poly_mul(g, h) == f
                and not g.is_unit and not h.is_unit)
    return True


# ---------------------------------------------------------------------------
# Atom factorizations

@dataclass(frozen=True)
class PolyFactorization:
    unit: Fraction
    scalar_atoms: tuple       # constant atoms (as Fractions)
    poly_atoms: tuple         # nonconstant SemiPoly atoms

    def product(self, base: Base) -> SemiPoly:
        acc = const_poly(base, self.unit)
        for c in self.scalar_atoms:
            acc = poly_mul(acc, const_poly(base, c))
        for p in self.poly_atoms:
            acc = poly_mul(acc, p)
        return acc

    @property
    def length(self):
        return len(self.scalar_atoms) + len(self.poly_atoms)


@dataclass(frozen=True)
class PolyFactorizationOutcome:
    factorizations: tuple
    complete: bool
    note: str = ""


def _n0_block_atom(block_coeffs):
    """content, primitive atom for a nonneg integer block product, or None."""
    d = math.gcd(*(int(c) for c in block_coeffs if c))
    prim = make_poly(Base.N0, [Fraction(c, d) for c in block_coeffs])
    if _n0_split(prim) is not None:
        return None
    return Fraction(d), prim


def _scalar_prime_multiset(base: Base, c: Fraction):
    """Primes of a positive integer scalar (N0/INT); None if not factorable."""
    if c == 1:
        return []
    if c.denominator != 1:
        return None
    out = []
    for p, e in sorted(factor_integer(int(c)).items()):
        out.extend([Fraction(p)] * e)
    return out


def atom_factorizations(f: SemiPoly, max_count: int = 64) -> PolyFactorizationOutcome:
    """Distinct factorizations of f into certified atoms, up to units."""
    if f.is_zero:
        raise ZeroInput("zero polynomial")
    if f.is_unit:
        return PolyFactorizationOutcome(
            (PolyFactorization(f.coeffs[0], (), ()),), True)
    base = f.base
    if base is Base.QGE1 and f.is_constant:
        return PolyFactorizationOutcome(
            (), True, note="scalars of QGe1 are antimatter: no factorization exists")
    if f.is_constant:
        c = f.coeffs[0]
        unit = Fraction(1) if c > 0 else Fraction(-1)
        primes = _scalar_prime_multiset(base, abs(c))
        return PolyFactorizationOutcome(
            (PolyFactorization(unit, tuple(primes), ()),), True)
    const, facs = ambient_factors(f.coeffs)
    found = []
    if base in (Base.N0, Base.INT):
        sign = Fraction(1) if const > 0 else Fraction(-1)
        for parts in multiset_partitions(list(range(len(facs)))):
            blocks = []
            scalar = abs(const)
            ok = True
            for part in parts:
                bc = _product_coeffs([facs[i] for i in part])
                L = math.lcm(*(c.denominator for c in bc))
                bc = tuple(c * L for c in bc)
                scalar /= L
                if base is Base.N0 and any(c < 0 for c in bc):
                    ok = False
                    break
                if base is Base.INT and bc[-1] < 0:
                    bc = tuple(-c for c in bc)
                d = math.gcd(*(int(abs(c)) for c in bc if c))
                scalar *= d
                try:
                    prim = make_poly(base, [Fraction(c, d) for c in bc])
                except ValueError:
                    ok = False
                    break
                verdict = is_atom_poly(prim) if not prim.is_unit else None
                if verdict is None or not verdict.is_atom:
                    ok = False
                    break
                blocks.append(prim)
            if not ok:
                continue
            primes = _scalar_prime_multiset(base, scalar)
            if primes is None:
                continue
            fact = PolyFactorization(
                sign, tuple(sorted(primes)),
                tuple(sorted(blocks, key=lambda p: (p.degree, p.coeffs))))
            if fact not in found:
                found.append(fact)
            if len(found) >= max_count:
                break
        return PolyFactorizationOutcome(tuple(found), True)
    # QGe1: enumerate partitions of the monic irreducible multiset; each
    # block is scaled so its minimal nonzero coefficient is exactly 1
    # (forced for an atom); accept when the scalings absorb the constant.
    for parts in multiset_partitions(list(range(len(facs)))):
        blocks = []
        residual = const
        ok = True
        for part in parts:
            bc = _product_coeffs([facs[i] for i in part])
            m = _uniform_positive(bc)
            if m is None:
                ok = False
                break
            atom = make_poly(Base.QGE1, [c / m for c in bc])
            residual *= m
            if _qge1_split(atom) is not None:
                ok = False
                break
            blocks.append(atom)
        if not ok or residual != 1:
            continue
        fact = PolyFactorization(
            Fraction(1), (),
            tuple(sorted(blocks, key=lambda p: (p.degree, p.coeffs))))
        if fact not in found:
            found.append(fact)
        if len(found) >= max_count:
            break
    return PolyFactorizationOutcome(
        tuple(found), False,
        note="complete only among factorizations whose factors all have "
             "positive degree after extracting one scalar")


# ---------------------------------------------------------------------------
# Laurent polynomials

@dataclass(frozen=True)
class LaurentPoly:
    """x^shift * body with ord(body) = 0 (canonical form)."""

    shift: int
    body: SemiPoly

    def __str__(self):
        if self.shift == 0:
            return str(self.body)
        return f"x^{self.shift} * ({self.body})"


def laurent(base: Base, shift: int, coeffs) -> LaurentPoly:
    body = make_poly(base, coeffs)
    if body.is_zero:
        return LaurentPoly(0, body)
    k = body.ord
    if k:
        body = SemiPoly(base, body.coeffs[k:])
    return LaurentPoly(shift + k, body)


def laurent_normalize(g: LaurentPoly):
    return (g.shift, g.body)


def laurent_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(f.shift + g.shift, poly_mul(f.body, g.body))


def laurent_is_unit(g: LaurentPoly) -> bool:
    return not g.body.is_zero and g.body.is_constant \
        and scalar_is_unit(g.body.base, g.body.coeffs[0])


def laurent_atom_transfer(a: SemiPoly):
    """View an S[x] atom inside S[x^(+-1)]; None when a is u*x (a unit
    there)."""
    if a.is_zero:
        raise ZeroInput("zero polynomial")
    if a.ord != 0:
        return None
    return LaurentPoly(0, a)
