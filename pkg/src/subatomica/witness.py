"""Constructive subatomicity witnesses.

Three properties of a (cancellative, commutative) monoid or of the
multiplicative monoid of a semidomain, each witnessed constructively:

* Furstenberg: every nonunit is divisible by an atom -- witness: the
  atom.
* almost atomic: every nonunit becomes a product (sum) of atoms after
  multiplying by (adding) finitely many atoms -- witness: the added
  atom multiset plus the resulting full factorization.
* quasi-atomic: same, but the multiplier may be any nonzero element.

Statuses are three-valued: a witness, a proof that none exists, or an
honest "not found within budget".
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import monoids, poly, semidomains
from .errors import InvalidInput, NotAnElement
from .exact import QuadExt, factor_integer, is_prime
from .monoids import Kind, Monoid
from .poly import Base, SemiPoly
from .semidomains import (ExpSum, LexConePoly, MixedPoly, Semidomain, SKind,
                          expsum, expsum_divides, expsum_is_atom,
                          expsum_factorizations, expsum_mul, lexcone_mul,
                          lexcone_poly, mixed_mul, mixed_poly)

FOUND = "found"
PROVABLY_NONE = "provably_none"
NOT_FOUND = "not_found"


@dataclass(frozen=True)
class PolyRing:
    """S[x] (or S[x^(+-1)] when laurent) over a scalar base."""

    base: Base
    laurent: bool = False

    def __str__(self):
        return f"{self.base.value}[x^(+-1)]" if self.laurent \
            else f"{self.base.value}[x]"


@dataclass(frozen=True)
class SearchBudget:
    atom_denominator_bound: int = 100
    factor_depth_bound: int = 8
    multiplier_degree_bound: int = 8
    precision_cap: int = 256

    def __post_init__(self):
        if min(self.atom_denominator_bound, self.factor_depth_bound,
               self.multiplier_degree_bound, self.precision_cap) <= 0:
            raise InvalidInput("budget fields must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class SubatomicWitness:
    kind: str                      # "furstenberg" | "almost_atomic" | "quasi_atomic"
    status: str                    # FOUND | PROVABLY_NONE | NOT_FOUND
    atom: object = None            # furstenberg
    added_atoms: tuple = ()        # almost_atomic
    multiplier: object = None      # quasi_atomic
    factorization: tuple = ()      # full factorization of the adjusted element
    reason: str = ""
    report: dict = field(default_factory=dict)

    @property
    def found(self):
        return self.status == FOUND


def _w(kind, **kw):
    return SubatomicWitness(kind=kind, status=FOUND, **kw)


def _none(kind, reason, **kw):
    return SubatomicWitness(kind=kind, status=PROVABLY_NONE, reason=reason, **kw)


def _miss(kind, reason, **kw):
    return SubatomicWitness(kind=kind, status=NOT_FOUND, reason=reason, **kw)


# ---------------------------------------------------------------------------
# Furstenberg witnesses

def _monoid_furstenberg(M: Monoid, q, budget: SearchBudget):
    K = "furstenberg"
    if M.kind is Kind.LEXCONE:
        q = (int(q[0]), int(q[1]))
        if not monoids.contains(M, q):
            raise NotAnElement(str(q))
        if q == (0, 0):
            raise InvalidInput("zero element")
        return _w(K, atom=(1, 0))
    q = Fraction(q)
    if not monoids.contains(M, q):
        raise NotAnElement(str(q))
    if q == 0:
        raise InvalidInput("zero element")
    if M.kind is Kind.DYADIC:
        return _none(K, "antimatter valuation monoid: there are no atoms")
    if M.kind in (Kind.PRIME_RECIPROCAL, Kind.MF):
        den = q.denominator
        cands = []
        if den > 1:
            cands.append(Fraction(1, min(factor_integer(den))))
        if den == 1 or q == 1:
            cands.append(Fraction(1, 2))
        if q > 1:
            # pick 1/p small enough that q - 1/p >= 1
            from .exact import primes_greater_than
            bound = math.ceil(Fraction(1, q - 1))
            cands.append(Fraction(1, primes_greater_than(max(bound, 1), 1)[0]))
        for a in cands:
            if monoids.contains(M, q - a):
                return _w(K, atom=a)
        return _miss(K, "closed-form candidate failed")
    if M.kind is Kind.MAA:
        for n in range(1, budget.factor_depth_bound + 1):
            for a in (monoids.maa_atom(n), monoids.maa_coatom(n)):
                if a != q and monoids.contains(M, q - a):
                    return _w(K, atom=a)
            if monoids.maa_atom(n) == q or monoids.maa_coatom(n) == q:
                return _w(K, atom=q)
        if monoids.is_atom(M, q):
            return _w(K, atom=q)
        return _miss(K, f"no atom among indices <= {budget.factor_depth_bound}")
    # numerical / puiseux: atomic
    for a in monoids.atoms_up_to(M, q):
        if a == q or monoids.contains(M, q - a):
            return _w(K, atom=a)
    return _miss(K, "no dividing atom found (should not happen: atomic)")


def _expsum_furstenberg(S: Semidomain, r: ExpSum, budget: SearchBudget):
    K = "furstenberg"
    if r.is_zero or r.is_unit:
        raise InvalidInput("zero/unit element")
    cur = r
    for _ in range(budget.factor_depth_bound):
        v = expsum_is_atom(S, cur)
        if v.is_atom:
            return _w(K, atom=cur)
        if v.status == "unknown":
            return _miss(K, v.reason)
        s, _t = v.witness
        cur = s
    return _miss(K, "factor depth budget exhausted")


def _mixed_furstenberg(f: MixedPoly, budget: SearchBudget):
    K = "furstenberg"
    if f.is_zero or f.is_unit:
        raise InvalidInput("zero/unit element")
    cur = f
    for _ in range(4 * budget.factor_depth_bound):
        v = semidomains.mixed_is_atom(cur)
        if v.is_atom:
            return _w(K, atom=cur)
        g, _h = v.witness
        cur = g
    return _miss(K, "factor depth budget exhausted")


def _lexcone_furstenberg(f: LexConePoly, budget: SearchBudget):
    K = "furstenberg"
    if f.is_zero or f.is_unit:
        raise InvalidInput("zero/unit element")
    _c, _mono, atoms = semidomains.lexcone_canonical_factor(f)
    if atoms:
        a = atoms[0]
        if semidomains.lexcone_divides(a, f) is not None:
            return _w(K, atom=a)
        return _miss(K, "normalized irreducible failed the divisibility recheck")
    # pure monomial c*X^m, m != 0: X^(1,0) always divides
    x10 = lexcone_poly({(1, 0): 1})
    if semidomains.lexcone_divides(x10, f) is not None:
        return _w(K, atom=x10)
    return _miss(K, "monomial not divisible by X^(1,0)")


def _poly_furstenberg(R: PolyRing, f, budget: SearchBudget):
    K = "furstenberg"
    if R.laurent:
        sh, body = (f.shift, f.body) if isinstance(f, poly.LaurentPoly) \
            else (0, f)
        if body.is_unit or body.is_zero:
            raise InvalidInput("zero/unit element")
        inner = _poly_furstenberg(PolyRing(R.base), body, budget)
        if inner.found:
            return _w(K, atom=poly.LaurentPoly(0, inner.atom))
        return inner
    if f.is_zero or f.is_unit:
        raise InvalidInput("zero/unit element")
    if f.is_constant:
        c = f.coeffs[0]
        if R.base is Base.QGE1:
            return _none(K, "the scalars of QGe1 are antimatter: no atom "
                            "divides a constant")
        p = min(factor_integer(abs(int(c))))
        return _w(K, atom=poly.const_poly(R.base, p))
    cur = f
    for _ in range(4 * budget.factor_depth_bound):
        v = poly.is_atom_poly(cur)
        if v.is_atom:
            return _w(K, atom=cur)
        g, h = v.witness
        if g.is_constant and R.base is not Base.QGE1:
            p = min(factor_integer(abs(int(g.coeffs[0]))))
            return _w(K, atom=poly.const_poly(R.base, p))
        cur = h if g.is_constant else g
    return _miss(K, "factor depth budget exhausted")


def furstenberg_witness(structure, element, budget: SearchBudget = DEFAULT_BUDGET):
    if isinstance(structure, Monoid):
        return _monoid_furstenberg(structure, element, budget)
    if isinstance(structure, PolyRing):
        return _poly_furstenberg(structure, element, budget)
    if isinstance(structure, Semidomain):
        S = structure
        if S.kind in (SKind.N0, SKind.INT):
            n = abs(int(element))
            if n in (0, 1):
                raise InvalidInput("zero/unit element")
            return _w("furstenberg", atom=min(factor_integer(n)))
        if S.kind is SKind.QGE1:
            c = Fraction(element)
            if c == 1 or c == 0:
                raise InvalidInput("zero/unit element")
            return _none("furstenberg", "QGe1 is antimatter: it has no atoms")
        if S.kind is SKind.EXPSUM:
            return _expsum_furstenberg(S, element, budget)
        if S.kind is SKind.MIXED:
            return _mixed_furstenberg(element, budget)
        if S.kind is SKind.LEXCONE_ALG:
            return _lexcone_furstenberg(element, budget)
    raise InvalidInput(f"unsupported structure {structure}")


# ---------------------------------------------------------------------------
# Almost-atomic witnesses

def _mf_residue_factorization(q: Fraction):
    """Atoms summing to q for q in P with its residue remainder >= 0."""
    res = monoids._p_residues(q) if q.denominator > 1 else {}
    atoms = []
    for p, r in sorted(res.items()):
        atoms.extend([Fraction(1, p)] * r)
    rem = q - sum((Fraction(r, p) for p, r in res.items()), Fraction(0))
    atoms.extend([Fraction(1, 2)] * (2 * int(rem)))
    return tuple(atoms)


def _monoid_almost(M: Monoid, q, budget: SearchBudget):
    K = "almost_atomic"
    if M.kind is Kind.LEXCONE:
        q = (int(q[0]), int(q[1]))
        if q == (0, 0):
            raise InvalidInput("zero element")
        if not monoids.contains(M, q):
            raise NotAnElement(str(q))
        if q[1] >= 1:
            return _none(K, "sums of atoms are the multiples of (1,0); the "
                            "second coordinate can only grow")
        return _w(K, added_atoms=(), factorization=((1, 0),) * q[0])
    q = Fraction(q)
    if q == 0:
        raise InvalidInput("zero element")
    if not monoids.contains(M, q):
        raise NotAnElement(str(q))
    if M.kind is Kind.DYADIC:
        return _none(K, "antimatter: there are no atoms, and no finite sum "
                        "of atoms moves a nonzero dyadic into the empty span")
    if M.kind in (Kind.PRIME_RECIPROCAL, Kind.MF):
        bad = [p for p, e in factor_integer(q.denominator).items() if e > 1]
        if bad:
            if M.kind is Kind.PRIME_RECIPROCAL:
                raise NotAnElement(str(q))
            return _none(K, f"{q} has {bad[0]}-adic valuation <= -2; adding "
                            f"atoms 1/p (valuation >= -1 each) cannot raise it")
        res = monoids._p_residues(q) if q.denominator > 1 else {}
        rem = q - sum((Fraction(r, p) for p, r in res.items()), Fraction(0))
        if rem >= 0:
            return _w(K, added_atoms=(), factorization=_mf_residue_factorization(q))
        added = (Fraction(1, 2),) * (2 * int(-rem))
        total = q + sum(added)
        return _w(K, added_atoms=added,
                  factorization=_mf_residue_factorization(total))
    if M.kind is Kind.MAA:
        decomps = monoids.canonical_decompositions(q)
        if not decomps:
            raise NotAnElement(str(q))
        d = decomps[0]  # smallest dyadic summand
        added: tuple = ()
        atoms: list = []
        for n, c, cp in d.pairs:
            atoms.extend([monoids.maa_atom(n)] * c)
            atoms.extend([monoids.maa_coatom(n)] * cp)
        dy = d.dyadic_summand
        if dy:
            # dy = c / 2^(n+1); add c (as c*p1 copies of a1 = 1/5), then
            # c + dy = 2c*(a_n + a'_n)
            v2 = monoids.padic_valuation(dy, 2) if dy.denominator > 1 else 0
            if dy.denominator > 1:
                n = dy.denominator.bit_length() - 2  # den = 2^(n+1)
                c = int(dy.numerator)
            else:
                n = 1
                c = int(dy) * 4
            a1 = monoids.maa_atom(1)
            added = (a1,) * (c * 5)
            atoms.extend([monoids.maa_atom(n)] * (2 * c))
            atoms.extend([monoids.maa_coatom(n)] * (2 * c))
        return _w(K, added_atoms=added, factorization=tuple(sorted(atoms)))
    # numerical / puiseux: atomic
    out = monoids.factorizations(M, q)
    if out.factorizations:
        return _w(K, added_atoms=(),
                  factorization=tuple(out.factorizations[0].atoms))
    return _miss(K, "no factorization found within bounds")


def _qge1_poly_almost(f: SemiPoly, budget: SearchBudget):
    """QGe1[x]: peel indecomposable parts, scale each to an atom, absorb
    the leftover scalar c with the atom  w = x^2 + (c + 1/c)x + 1,
    for which  c*w = (cx+1)(x+c)."""
    K = "almost_atomic"
    parts: list = []

    def split_all(h):
        if h.is_constant:
            return [h]
        indec, sp = poly.is_indecomposable(h)
        if indec:
            return [h]
        g, h2 = sp
        return split_all(g) + split_all(h2)

    scalar = Fraction(1)
    atoms: list = []
    for part in split_all(f):
        if part.is_constant:
            scalar *= part.coeffs[0]
            continue
        m = min(c for c in part.coeffs if c)
        scalar *= m
        atoms.append(poly.make_poly(Base.QGE1, [c / m for c in part.coeffs]))
    if scalar == 1:
        if not atoms:
            raise InvalidInput("unit element")
        return _w(K, added_atoms=(), factorization=tuple(atoms))
    c = scalar
    w = poly.make_poly(Base.QGE1, [1, c + 1 / c, 1])
    fac = [poly.make_poly(Base.QGE1, [1, c]),
           poly.make_poly(Base.QGE1, [c, 1])] + atoms
    return _w(K, added_atoms=(w,),
              factorization=tuple(sorted(fac, key=lambda p: (p.degree, p.coeffs))))


def _poly_almost(R: PolyRing, f, budget: SearchBudget):
    K = "almost_atomic"
    if R.laurent:
        body = f.body if isinstance(f, poly.LaurentPoly) else f
        if body.is_unit or body.is_zero:
            raise InvalidInput("zero/unit element")
        inner = _poly_almost(PolyRing(R.base), body, budget)
        if inner.found:
            return _w(K, added_atoms=tuple(poly.LaurentPoly(0, a)
                                           for a in inner.added_atoms),
                      factorization=tuple(poly.LaurentPoly(0, a)
                                          for a in inner.factorization))
        return inner
    if f.is_zero or f.is_unit:
        raise InvalidInput("zero/unit element")
    if R.base is Base.QGE1:
        return _qge1_poly_almost(f, budget)
    out = poly.atom_factorizations(f, max_count=1)
    if out.factorizations:
        fa = out.factorizations[0]
        fac = [poly.const_poly(R.base, c) for c in fa.scalar_atoms] \
            + list(fa.poly_atoms)
        if fa.unit != 1:
            # absorb the sign into one factor? -1 is a unit of Z[x]
            pass
        return _w(K, added_atoms=(), factorization=tuple(fac),
                  report={"unit": fa.unit})
    return _miss(K, "no atom factorization found")


def _mixed_almost(f: MixedPoly, budget: SearchBudget):
    K = "almost_atomic"
    if f.is_zero or f.is_unit:
        raise InvalidInput("zero/unit element")
    st = semidomains.mixedring_ord_status(f)
    cm = st.ord_coeff
    if st.status == "factors_into_atoms":
        facts, _c = semidomains.mixed_factorizations(f, max_count=1)
        if facts:
            return _w(K, added_atoms=(), factorization=facts[0])
        return _miss(K, "no factorization found")
    if cm.b != 0 or cm.a < 0:
        return _none(K, "the order coefficient is not a positive rational: "
                        "multiplying by atoms keeps the order coefficient a "
                        "positive-integer multiple of it, never in N0")
    den = cm.a.denominator
    added = []
    for p, e in sorted(factor_integer(den).items()):
        added.extend([mixed_poly([p])] * e)
    scaled = semidomains.mixed_scale(QuadExt(Fraction(den)), f)
    facts, _c = semidomains.mixed_factorizations(scaled, max_count=1)
    if facts:
        return _w(K, added_atoms=tuple(added), factorization=facts[0])
    return _miss(K, "no factorization of the rescaled element found")


def _lexcone_almost(f: LexConePoly, budget: SearchBudget):
    K = "almost_atomic"
    if f.is_zero or f.is_unit:
        raise InvalidInput("zero/unit element")
    c, (mb, mc), atoms = semidomains.lexcone_canonical_factor(f)
    if mc != 0:
        return _none(K, "the Laurent monomial part carries a positive power "
                        "of the second coordinate; monomial atoms are exactly "
                        "X^(1,0), so no atom multiplication can cancel it")
    x10 = lexcone_poly({(1, 0): 1})
    if mb >= 0:
        fac = tuple([x10] * mb + atoms)
        return _w(K, added_atoms=(), factorization=fac, report={"unit": c})
    added = (x10,) * (-mb)
    fac = tuple(atoms)
    return _w(K, added_atoms=added, factorization=fac, report={"unit": c})


def almost_atomic_witness(structure, element, budget: SearchBudget = DEFAULT_BUDGET):
    if isinstance(structure, Monoid):
        return _monoid_almost(structure, element, budget)
    if isinstance(structure, PolyRing):
        return _poly_almost(structure, element, budget)
    if isinstance(structure, Semidomain):
        S = structure
        K = "almost_atomic"
        if S.kind in (SKind.N0, SKind.INT):
            n = int(element)
            if abs(n) in (0, 1):
                raise InvalidInput("zero/unit element")
            fac = []
            for p, e in sorted(factor_integer(abs(n)).items()):
                fac.extend([p] * e)
            return _w(K, added_atoms=(), factorization=tuple(fac),
                      report={"unit": -1 if n < 0 else 1})
        if S.kind is SKind.QGE1:
            c = Fraction(element)
            if c in (0, 1):
                raise InvalidInput("zero/unit element")
            return _none(K, "QGe1 has no atoms; the only product of atoms "
                            "is 1 and c*1 is never 1 for a nonunit c")
        if S.kind is SKind.EXPSUM:
            facts, complete = expsum_factorizations(S, element, max_count=1)
            if facts:
                return _w(K, added_atoms=(), factorization=facts[0])
            if complete:
                return _none(K, "exhaustive search: the element has no atom "
                                "factorization and no atom multiple was found")
            return _miss(K, "bounded factorization search inconclusive")
        if S.kind is SKind.MIXED:
            return _mixed_almost(element, budget)
        if S.kind is SKind.LEXCONE_ALG:
            return _lexcone_almost(element, budget)
    raise InvalidInput(f"unsupported structure {structure}")


# ---------------------------------------------------------------------------
# Quasi-atomic witnesses

def quasi_atomic_witness(structure, element, budget: SearchBudget = DEFAULT_BUDGET):
    K = "quasi_atomic"
    if isinstance(structure, Monoid):
        M = structure
        if M.kind is Kind.MF:
            q = Fraction(element)
            if q == 0:
                raise InvalidInput("zero element")
            if not monoids.contains(M, q):
                raise NotAnElement(str(q))
            if q < 1:
                base = _monoid_almost(M, q, budget)
                return _w(K, multiplier=Fraction(0),
                          factorization=base.factorization)
            b = math.floor(q) + 2 - q          # in [1, 2) so b is in M_F
            total = q + b                       # an integer >= 2
            fac = (Fraction(1, 2),) * (2 * int(total))
            return _w(K, multiplier=b, factorization=fac)
        base = _monoid_almost(M, element, budget)
        if base.status == FOUND:
            mult = sum(base.added_atoms, Fraction(0)) \
                if M.kind is not Kind.LEXCONE else \
                (sum(a[0] for a in base.added_atoms),
                 sum(a[1] for a in base.added_atoms))
            return _w(K, multiplier=mult, factorization=base.factorization)
        if base.status == PROVABLY_NONE and M.kind in (Kind.DYADIC, Kind.LEXCONE):
            # for these monoids the almost-atomic obstruction (no atom
            # sum can reach the target coordinate) applies verbatim to
            # arbitrary translates
            return _none(K, base.reason)
        return _miss(K, base.reason)
    if isinstance(structure, Semidomain) and structure.kind is SKind.MIXED:
        f = element
        if f.is_zero or f.is_unit:
            raise InvalidInput("zero/unit element")
        st = semidomains.mixedring_ord_status(f)
        if st.status == "factors_into_atoms":
            facts, _c = semidomains.mixed_factorizations(f, max_count=1)
            if facts:
                return _w(K, multiplier=mixed_poly([1]), factorization=facts[0])
            return _miss(K, "no factorization found")
        inv = QuadExt(Fraction(1)) / st.ord_coeff
        mult = MixedPoly((QuadExt(Fraction(0)), QuadExt(Fraction(0)), inv))
        prod = mixed_mul(f, mult)
        facts, _c = semidomains.mixed_factorizations(prod, max_count=1)
        if facts:
            return _w(K, multiplier=mult, factorization=facts[0])
        return _miss(K, "rescaled product did not factor within bounds")
    base = almost_atomic_witness(structure, element, budget)
    if base.status == FOUND:
        if isinstance(structure, PolyRing):
            mult = poly.const_poly(structure.base, 1) if not structure.laurent \
                else poly.LaurentPoly(0, poly.const_poly(structure.base, 1))
            for a in base.added_atoms:
                mult = poly.poly_mul(mult, a) if not structure.laurent \
                    else poly.laurent_mul(mult, a)
            return _w(K, multiplier=mult, factorization=base.factorization,
                      report=base.report)
        S = structure
        if S.kind is SKind.EXPSUM:
            mult = semidomains.expsum_product(base.added_atoms)
        elif S.kind is SKind.LEXCONE_ALG:
            mult = lexcone_poly({(0, 0): 1})
            for a in base.added_atoms:
                mult = lexcone_mul(mult, a)
        elif S.kind in (SKind.N0, SKind.INT):
            mult = math.prod(base.added_atoms) if base.added_atoms else 1
        else:
            mult = Fraction(1)
        return _w(K, multiplier=mult, factorization=base.factorization,
                  report=base.report)
    if base.status == PROVABLY_NONE:
        S = structure
        if isinstance(S, Semidomain) and S.kind in (SKind.QGE1, SKind.LEXCONE_ALG):
            # the obstruction argument never used atomicity of the
            # multiplier, so it rules out quasi-atomic witnesses too
            return _none(K, base.reason)
        if isinstance(S, PolyRing) and S.base is Base.QGE1:
            return _none(K, base.reason)
        return _miss(K, "almost-atomic obstruction does not transfer; "
                        "bounded multiplier search not attempted")
    return _miss(K, base.reason)


# ---------------------------------------------------------------------------
# Witness re-verification (no access to search state)

def verify_witness(structure, element, w: SubatomicWitness) -> bool:
    if not w.found:
        return True
    if isinstance(structure, Monoid):
        M = structure
        if w.kind == "furstenberg":
            return monoids.is_atom(M, w.atom) and \
                monoids.divides(M, w.atom, element)
        add = w.added_atoms
        if M.kind is Kind.LEXCONE:
            tot = (element[0] + sum(a[0] for a in add),
                   element[1] + sum(a[1] for a in add))
            fsum = (sum(a[0] for a in w.factorization),
                    sum(a[1] for a in w.factorization))
        else:
            if w.kind == "quasi_atomic":
                add = (w.multiplier,) if w.multiplier else ()
                if any(not monoids.contains(M, a) for a in add):
                    return False
            tot = Fraction(element) + sum(add, Fraction(0))
            fsum = sum(w.factorization, Fraction(0))
        if w.kind == "almost_atomic" and \
                not all(monoids.is_atom(M, a) for a in add):
            return False
        return tot == fsum and all(monoids.is_atom(M, a)
                                   for a in w.factorization)
    if isinstance(structure, PolyRing):
        R = structure
        if R.laurent:
            strip = lambda g: g.body if isinstance(g, poly.LaurentPoly) else g
            inner = SubatomicWitness(
                w.kind, w.status, atom=strip(w.atom) if w.atom else None,
                added_atoms=tuple(strip(a) for a in w.added_atoms),
                multiplier=strip(w.multiplier) if w.multiplier is not None else None,
                factorization=tuple(strip(a) for a in w.factorization),
                report=w.report)
            el = element.body if isinstance(element, poly.LaurentPoly) else element
            return verify_witness(PolyRing(R.base), el, inner)
        if w.kind == "furstenberg":
            return poly.is_atom_poly(w.atom).is_atom and \
                poly.exact_divide(element, w.atom) is not None
        mults = list(w.added_atoms) if w.kind == "almost_atomic" \
            else ([w.multiplier] if w.multiplier is not None else [])
        if w.kind == "almost_atomic" and \
                not all(poly.is_atom_poly(a).is_atom for a in mults):
            return False
        lhs = element
        for m in mults:
            lhs = poly.poly_mul(lhs, m)
        unit = Fraction(w.report.get("unit", 1))
        rhs = poly.const_poly(element.base, unit) if unit != 1 \
            else poly.const_poly(element.base, 1)
        rhs = poly.poly_product(element.base, [rhs] + list(w.factorization))
        return lhs == rhs and all(poly.is_atom_poly(a).is_atom
                                  for a in w.factorization)
    S = structure
    if S.kind in (SKind.N0, SKind.INT):
        if w.kind == "furstenberg":
            return is_prime(w.atom) and int(element) % w.atom == 0
        unit = w.report.get("unit", 1)
        return math.prod(w.factorization) * unit == int(element) and \
            all(is_prime(a) for a in w.factorization)
    if S.kind is SKind.EXPSUM:
        if w.kind == "furstenberg":
            return expsum_is_atom(S, w.atom).is_atom and \
                expsum_divides(S, w.atom, element) is not None
        lhs = element
        adds = w.added_atoms if w.kind == "almost_atomic" else \
            ((w.multiplier,) if w.multiplier is not None else ())
        for a in adds:
            lhs = expsum_mul(lhs, a)
        rhs = semidomains.expsum_product(w.factorization)
        if w.kind == "almost_atomic" and \
                not all(expsum_is_atom(S, a).is_atom for a in w.added_atoms):
            return False
        return lhs == rhs and all(expsum_is_atom(S, a).is_atom
                                  for a in w.factorization)
    if S.kind is SKind.MIXED:
        if w.kind == "furstenberg":
            return semidomains.mixed_is_atom(w.atom).is_atom and \
                semidomains.mixed_divides(w.atom, element) is not None
        lhs = element
        adds = w.added_atoms if w.kind == "almost_atomic" else \
            ((w.multiplier,) if w.multiplier is not None else ())
        for a in adds:
            lhs = mixed_mul(lhs, a)
        rhs = mixed_poly([1])
        for a in w.factorization:
            rhs = mixed_mul(rhs, a)
        if w.kind == "almost_atomic" and \
                not all(semidomains.mixed_is_atom(a).is_atom for a in w.added_atoms):
            return False
        return lhs == rhs and all(semidomains.mixed_is_atom(a).is_atom
                                  for a in w.factorization)
    if S.kind is SKind.LEXCONE_ALG:
        if w.kind == "furstenberg":
            return semidomains.lexcone_divides(w.atom, element) is not None
        lhs = element
        adds = w.added_atoms if w.kind == "almost_atomic" else \
            ((w.multiplier,) if w.multiplier is not None else ())
        for a in adds:
            lhs = lexcone_mul(lhs, a)
        unit = Fraction(w.report.get("unit", 1))
        rhs = lexcone_poly({(0, 0): unit})
        for a in w.factorization:
            rhs = lexcone_mul(rhs, a)
        return lhs == rhs
    if S.kind is SKind.QGE1:
        return False  # no witnesses are ever produced here
    return False


# ---------------------------------------------------------------------------
# UFM cross-check

@dataclass(frozen=True)
class UfmReport:
    label: str
    gcd_failures: tuple        # pairs with empty gcd set
    quasi_failures: tuple      # elements with no quasi witness
    nonunique: tuple           # elements with >= 2 atom factorizations
    hypothesis_holds: bool     # GCD on sample and quasi-atomic on sample
    conclusion_holds: bool     # unique factorization on sample
    consistent: bool           # hypothesis implies conclusion on the sample


def _ufm_report(label, gcd_failures, quasi_failures, nonunique):
    hyp = not gcd_failures and not quasi_failures
    con = not nonunique
    return UfmReport(label, tuple(gcd_failures), tuple(quasi_failures),
                     tuple(nonunique), hyp, con, (not hyp) or con)


def ufm_check_small(structure, sample_range=(2, 30)) -> UfmReport:
    lo, hi = sample_range
    if isinstance(structure, Semidomain) and structure.kind is SKind.N0:
        elems = list(range(max(lo, 2), hi + 1))
        gcd_failures = []   # integer gcd always exists
        nonunique = []      # prime factorization is unique
        quasi_failures = [n for n in elems
                          if not quasi_atomic_witness(structure, n).found]
        return _ufm_report(f"(N,x) on [{lo},{hi}]",
                           gcd_failures, quasi_failures, nonunique)
    if isinstance(structure, Monoid) and structure.kind in (Kind.NUMERICAL,
                                                            Kind.PUISEUX):
        M = structure
        elems = [Fraction(n) for n in range(max(lo, 1), hi + 1)
                 if monoids.contains(M, Fraction(n))]
        gcd_failures = []
        for a, b in itertools.combinations(elems[:12], 2):
            if not monoids.gcd_set(M, [a, b]):
                gcd_failures.append((a, b))
        quasi_failures = []
        nonunique = []
        for q in elems:
            out = monoids.factorizations(M, q)
            if len(out.factorizations) >= 2:
                nonunique.append(q)
            if not out.factorizations and out.complete:
                quasi_failures.append(q)
        return _ufm_report(f"{M} on [{lo},{hi}]",
                           gcd_failures, quasi_failures, nonunique)
    if isinstance(structure, PolyRing) and structure.base is Base.N0:
        deg, cmax = min(hi, 5), 2
        elems = []
        for degree in range(1, deg + 1):
            for coeffs in itertools.product(range(cmax + 1), repeat=degree):
                f = poly.make_poly(Base.N0, list(coeffs) + [1])
                if not f.is_unit:
                    elems.append(f)
        probe = poly.make_poly(Base.N0, [1] * 6)
        if probe not in elems and deg >= 5:
            elems.append(probe)
        nonunique = []
        for f in elems:
            out = poly.atom_factorizations(f, max_count=2)
            if len(out.factorizations) >= 2:
                nonunique.append(f)
        gcd_failures = []
        if nonunique:
            # the canonical non-GCD pair behind the first nonunique element
            f = nonunique[0]
            g = poly.poly_mul(poly.make_poly(Base.N0, [1, 1]),
                              poly.make_poly(Base.N0, [1, 1, 1]))
            if not _n0_gcd_exists(f, g):
                gcd_failures.append((f, g))
        return _ufm_report(f"N0[x] deg<={deg} coeffs<={cmax}",
                           gcd_failures, [], nonunique)
    raise InvalidInput(f"unsupported structure for ufm_check_small: {structure}")


def _n0_divisors(f: SemiPoly):
    """All divisors of f in N0[x] (exhaustive via Z[x] factors)."""
    n = int(f.coeffs[0]) if f.is_constant else None
    const, facs = poly.ambient_factors(f.coeffs)
    content = abs(int(const)) if const.denominator == 1 else 1
    divs = set()
    idx = list(range(len(facs)))
    for r in range(len(idx) + 1):
        for sub in itertools.combinations(idx, r):
            prod = poly._product_coeffs([facs[i] for i in sub])
            L = math.lcm(*(c.denominator for c in prod))
            prod = tuple(c * L for c in prod)
            if any(c < 0 for c in prod):
                continue
            for d in range(1, content + 1):
                if content % d:
                    continue
                cand = tuple(c * d for c in prod)
                try:
                    g = poly.make_poly(Base.N0, cand)
                except ValueError:
                    continue
                if poly.exact_divide(f, g) is not None:
                    divs.add(g)
    return divs


def _n0_gcd_exists(f: SemiPoly, g: SemiPoly) -> bool:
    common = _n0_divisors(f) & _n0_divisors(g)
    for d in common:
        if all(poly.exact_divide(d, e) is not None for e in common):
            return True
    return False


# ---------------------------------------------------------------------------
# Brute-force oracle

def brute_force_oracle(structure, element, depth_bound: int = 3):
    """All factorizations of element into <= depth_bound nonunits, by
    recursive divisor enumeration.  Independent of the closed-form
    decision procedures; used to validate them."""
    if isinstance(structure, Semidomain) and structure.kind in (SKind.N0,
                                                                SKind.INT):
        n = abs(int(element))

        def splits(m, k):
            out = {(m,)}
            if k <= 1:
                return out
            for d in range(2, m):
                if m % d == 0 and m // d >= 2:
                    for rest in splits(m // d, k - 1):
                        out.add(tuple(sorted((d,) + rest)))
            return out

        return sorted(splits(n, depth_bound))
    if isinstance(structure, Monoid):
        M = structure
        q = Fraction(element)

        def msplits(x, k):
            out = {(x,)}
            if k <= 1:
                return out
            divisors, _exact = monoids.common_divisors(M, [x])
            for d in divisors:
                r = x - d
                if d == 0 or r == 0:
                    continue
                for rest in msplits(r, k - 1):
                    out.add(tuple(sorted((d,) + rest)))
            return out

        return sorted(msplits(q, depth_bound))
    if isinstance(structure, Semidomain) and structure.kind is SKind.EXPSUM:
        S = structure

        def esplits(x, k):
            out = {(x,)}
            if k <= 1:
                return out
            pairs, _comp = semidomains.expsum_divisor_search(S, x)
            for s, t in pairs:
                for rest in esplits(t, k - 1):
                    out.add(tuple(sorted((s,) + rest,
                                         key=lambda e: e.terms)))
            return out

        return sorted(esplits(element, depth_bound),
                      key=lambda fs: [e.terms for e in fs])
    if isinstance(structure, PolyRing) and not structure.laurent:
        base = structure.base
        f = element
        cmax = int(max(abs(c) for c in f.coeffs))

        def pdivisors(h):
            out = []
            rng = range(0, cmax + 1) if base is Base.N0 \
                else range(-cmax, cmax + 1)
            for degree in range(0, h.degree + 1):
                for coeffs in itertools.product(rng, repeat=degree + 1):
                    if not coeffs[-1]:
                        continue
                    try:
                        g = poly.make_poly(base, coeffs)
                    except ValueError:
                        continue
                    if g.is_unit or g == h:
                        continue
                    if poly.exact_divide(h, g) is not None:
                        out.append(g)
            return out

        def psplits(h, k):
            out = {(h,)}
            if k <= 1:
                return out
            for g in pdivisors(h):
                rest_p = poly.exact_divide(h, g)
                if rest_p.is_unit:
                    continue
                for rest in psplits(rest_p, k - 1):
                    out.add(tuple(sorted((g,) + rest,
                                         key=lambda p: (p.degree, p.coeffs))))
            return out

        return sorted(psplits(f, depth_bound),
                      key=lambda fs: [(p.degree, p.coeffs) for p in fs])
    raise InvalidInput(f"unsupported structure for brute_force_oracle: {structure}")
