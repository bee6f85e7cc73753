"""Acceptance suite: one test (and one printed pass/fail line) per criterion.

Every equality below is exact — Fractions, integers, tuples — no tolerances.
"""

import itertools
import random
from contextlib import contextmanager
from fractions import Fraction

from subatomica import monoids as mo
from subatomica import poly as po
from subatomica import semidomains as sd
from subatomica import witness as wi
from subatomica.exact import QuadExt, is_prime
from subatomica.poly import Base


S_MF = sd.expsum_semidomain(mo.MF)


@contextmanager
def criterion(n, label):
    try:
        yield
    except BaseException:
        print(f"criterion {n:02d} [{label}]: FAIL")
        raise
    print(f"criterion {n:02d} [{label}]: PASS")


def test_criterion_01_numerical_2_3_divisor_sets():
    with criterion(1, "divisor sets of {5,6} in <2,3>"):
        M = mo.numerical(2, 3)
        res = mo.gcd_mcd_sets(M, [5, 6])
        assert res.gcd == ()
        assert set(res.mcd) == {Fraction(2), Fraction(3)}
        assert set(res.common) == {Fraction(0), Fraction(2), Fraction(3)}


def test_criterion_02_prime_reciprocal_union_monoid():
    with criterion(2, "atoms, certified-empty 5/4, Furstenberg sample"):
        atoms = mo.atoms_up_to(mo.MF, 30)
        assert set(atoms) == {Fraction(1, p) for p in range(2, 31) if is_prime(p)}

        out = mo.factorizations(mo.MF, Fraction(5, 4))
        assert out.factorizations == () and out.complete
        assert out.certified_empty is not None
        assert out.certified_empty.reason == "valuation"
        assert out.certified_empty.prime == 2
        assert out.certified_empty.check(mo.MF, Fraction(5, 4))

        rng = random.Random(2)
        checked = 0
        while checked < 100:
            b = rng.randint(1, 50)
            q = Fraction(rng.randint(1, 3 * b), b)
            if not mo.contains(mo.MF, q):
                continue
            w = wi.furstenberg_witness(mo.MF, q)
            assert w.found, q
            assert wi.verify_witness(mo.MF, q, w)
            checked += 1


def test_criterion_03_expsum_atoms_and_oracle():
    with criterion(3, "E(M_F): atom certificate, Furstenberg, oracle grid"):
        r = sd.expsum({Fraction(0): 2, Fraction(1, 2): 1})
        v = sd.expsum_is_atom(S_MF, r)
        assert v.is_atom
        assert "value below 4" in v.reason or "shift" in v.reason

        f = sd.expsum({Fraction(1, 2): 2, Fraction(3, 2): 3})
        w = wi.furstenberg_witness(S_MF, f)
        assert w.found
        assert w.atom == sd.expsum({Fraction(1, 2): 1})
        assert wi.verify_witness(S_MF, f, w)

        grid = [Fraction(k, 2) for k in range(4)]
        rng = random.Random(3)
        for _ in range(20):
            support = rng.sample(grid, rng.randint(1, 4))
            e = sd.expsum({q: rng.randint(1, 3) for q in support})
            if e.is_zero or e.is_unit:
                continue
            results, complete = sd.expsum_factorizations(S_MF, e)
            if not complete:
                continue
            oracle = wi.brute_force_oracle(S_MF, e, depth_bound=4)
            got = {tuple(sorted(map(str, fac))) for fac in results}
            want = {
                tuple(sorted(map(str, fac)))
                for fac in oracle
                if all(sd.expsum_is_atom(S_MF, a).is_atom for a in fac)
            }
            assert got == want, e


def test_criterion_04_almost_atomic_example_monoid():
    with criterion(4, "M_AA: atoms, 1/8, canonical decompositions"):
        for n in range(1, 5):
            assert mo.maa_prime(n) in (5, 7, 11, 13)
            assert mo.is_atom(mo.MAA, mo.maa_atom(n))
            assert mo.is_atom(mo.MAA, mo.maa_coatom(n))
        assert set(mo.atoms_up_to(mo.MAA, 13)) == {mo.maa_atom(n) for n in range(1, 5)}
        for q in (Fraction(1, 8), Fraction(1, 2), Fraction(1), mo.maa_atom(1) * 2):
            assert not mo.is_atom(mo.MAA, q)

        out = mo.factorizations(mo.MAA, Fraction(1, 8))
        assert out.factorizations == () and out.complete
        assert out.certified_empty is not None
        assert out.certified_empty.check(mo.MAA, Fraction(1, 8))

        w = wi.almost_atomic_witness(mo.MAA, Fraction(1, 8))
        assert w.found
        assert w.added_atoms == (Fraction(1, 5),) * 5
        total = Fraction(1, 8) + sum(w.added_atoms)
        assert total == Fraction(9, 8)
        assert w.factorization == (mo.maa_atom(2), mo.maa_atom(2),
                                   mo.maa_coatom(2), mo.maa_coatom(2))
        assert sum(w.factorization) == total
        assert wi.verify_witness(mo.MAA, Fraction(1, 8), w)

        # canonical decompositions vs an independent exhaustive scan
        from test_monoids import _exhaustive_maa_scan

        rng = random.Random(4)
        gens = [mo.maa_atom(n) for n in (1, 2, 3)] + \
               [mo.maa_coatom(n) for n in (1, 2)] + \
               [Fraction(1, 8), Fraction(1, 2), Fraction(1)]
        for _ in range(100):
            q = sum((rng.choice(gens) for _ in range(rng.randint(0, 4))),
                    Fraction(0))
            got = mo.canonical_decompositions(q)
            want = _exhaustive_maa_scan(q)
            assert {(d.dyadic_summand, d.pairs) for d in got} == \
                   {(d.dyadic_summand, d.pairs) for d in want}, q
            for d in got:
                assert d.value() == q
            # greatest dyadic divisor = the largest dyadic summand
            assert mo.greatest_divisor_in_dyadic(q) == \
                max(d.dyadic_summand for d in got)


def test_criterion_05_qge1_poly_decomposition_identity():
    with criterion(5, "QGe1[x]: c*w = (cx+1)(x+c), atoms, almost witnesses"):
        rng = random.Random(5)
        for _ in range(50):
            c = Fraction(rng.randint(1, 40), rng.randint(1, 12))
            if c < 1:
                c = 1 / c
            w = po.make_poly(Base.QGE1, [1, c + 1 / c, 1])
            lhs = po.poly_mul(po.const_poly(Base.QGE1, c), w)
            rhs = po.poly_mul(po.make_poly(Base.QGE1, [1, c]),
                              po.make_poly(Base.QGE1, [c, 1]))
            assert lhs == rhs
            assert po.is_atom_poly(w).status == "atom"
            assert po.is_atom_poly(po.make_poly(Base.QGE1, [1, c])).status == "atom"
            assert po.is_atom_poly(po.make_poly(Base.QGE1, [c, 1])).status == "atom"

        R = wi.PolyRing(Base.QGE1)
        pool = [Fraction(0), Fraction(1), Fraction(3, 2), Fraction(2),
                Fraction(5, 2), Fraction(7, 3), Fraction(9, 4)]
        checked = 0
        while checked < 50:
            cs = [rng.choice(pool) for _ in range(rng.randint(1, 4))]
            try:
                f = po.make_poly(Base.QGE1, cs)
            except ValueError:
                continue
            if f.is_zero or f.is_unit:
                continue
            w = wi.almost_atomic_witness(R, f)
            assert w.found, f
            assert wi.verify_witness(R, f, w)
            checked += 1


def test_criterion_06_n0x_factorizations():
    with criterion(6, "N0[x]: two factorizations, atoms, brute-force grid"):
        f = po.make_poly(Base.N0, [1, 1, 1, 1, 1, 1])
        out = po.atom_factorizations(f)
        assert out.complete
        got = {frozenset(p.coeffs for p in fac.poly_atoms)
               for fac in out.factorizations}
        one, zero = Fraction(1), Fraction(0)
        assert got == {
            frozenset({(one, one), (one, zero, one, zero, one)}),
            frozenset({(one, zero, zero, one), (one, one, one)}),
        }
        assert po.is_atom_poly(po.make_poly(Base.N0, [1, 0, 1, 0, 1])).status == "atom"
        assert po.is_atom_poly(po.make_poly(Base.N0, [1, 0, 0, 1])).status == "atom"

        # agreement with products-of-nonunits on the degree <= 4, coeff <= 3 grid
        small = []
        for d in range(5):
            for cs in itertools.product(range(4), repeat=d + 1):
                if d > 0 and cs[-1] == 0:
                    continue
                p = po.make_poly(Base.N0, cs)
                if not p.is_zero and not p.is_unit:
                    small.append(p)
        reducible = set()
        for g in small:
            for h in small:
                if g.degree + h.degree > 4:
                    continue
                p = po.poly_mul(g, h)
                if all(c <= 3 for c in p.coeffs):
                    reducible.add(p.coeffs)
        for p in small:
            assert (po.is_atom_poly(p).status == "atom") == \
                (p.coeffs not in reducible), p


def test_criterion_07_mixed_ring():
    with criterion(7, "mixed ring: ord dichotomy, quasi witness, no almost"):
        rng = random.Random(7)
        seen = {True: 0, False: 0}
        for _ in range(100):
            n = rng.randint(1, 5)
            coeffs = []
            for i in range(n):
                if i <= 1:
                    coeffs.append(QuadExt(Fraction(rng.randint(0, 4))))
                else:
                    coeffs.append(QuadExt(
                        Fraction(rng.randint(0, 6), rng.choice([1, 2, 3])),
                        Fraction(rng.randint(-2, 2), rng.choice([1, 2])),
                    ))
            f = sd.MixedPoly(tuple(coeffs))
            if not any(bool(c) for c in f.coeffs) or sd.mixed_poly(f.coeffs).is_unit:
                continue
            st = sd.mixedring_ord_status(f)
            c = st.ord_coeff
            in_n = c.b == 0 and c.a.denominator == 1 and c.a > 0
            assert (st.status == "factors_into_atoms") == in_n
            seen[in_n] += 1
            if not in_n:
                facs, complete = sd.mixed_factorizations(f)
                assert facs == [] and complete
                if c.b != 0:
                    wa = wi.almost_atomic_witness(sd.MIXED_SD, f)
                    assert wa.status == wi.PROVABLY_NONE
        assert seen[True] and seen[False]

        f = sd.mixed_poly([0, 0, QuadExt(Fraction(0), Fraction(1))])  # sqrt2 x^2
        w = wi.quasi_atomic_witness(sd.MIXED_SD, f)
        assert w.found
        assert w.multiplier == sd.mixed_poly([0, 0, QuadExt(Fraction(0), Fraction(1, 2))])
        assert w.factorization == (sd.mixed_poly([0, 1]),) * 4
        assert sd.mixed_mul(f, w.multiplier) == sd.mixed_poly([0, 0, 0, 0, 1])
        assert wi.verify_witness(sd.MIXED_SD, f, w)


def test_criterion_08_lexcone_algebra():
    with criterion(8, "lex-cone algebra: atoms, Furstenberg, non-atomic base"):
        assert mo.atoms_up_to(mo.LEXCONE, 0) == [(1, 0)]
        # N0*(1,0) misses the cone's upper layers, so the monoid is not atomic
        assert mo.contains(mo.LEXCONE, (0, 1))
        out = mo.factorizations(mo.LEXCONE, (0, 1))
        assert out.certified_empty is not None and out.factorizations == ()

        rng = random.Random(8)
        checked = 0
        while checked < 50:
            n = rng.randint(1, 4)
            terms = {}
            for _ in range(n):
                b, c = rng.randint(-5, 5), rng.randint(0, 3)
                if c == 0 and b < 0:
                    b = -b
                terms[(b, c)] = Fraction(rng.randint(-3, 3))
            terms = {k: v for k, v in terms.items() if v}
            if not terms:
                continue
            f = sd.lexcone_poly(terms)
            if f.is_zero or f.is_unit:
                continue
            w = wi.furstenberg_witness(sd.LEXCONE_SD, f)
            assert w.found, f
            assert wi.verify_witness(sd.LEXCONE_SD, f, w)
            checked += 1


def test_criterion_09_ufm_cross_check():
    with criterion(9, "GCD + quasi-atomic vs unique factorization"):
        r1 = wi.ufm_check_small(sd.N0_SD, (2, 200))
        assert r1.hypothesis_holds and r1.conclusion_holds and r1.consistent
        assert not r1.gcd_failures and not r1.quasi_failures and not r1.nonunique

        r2 = wi.ufm_check_small(mo.numerical(2, 3))
        assert r2.consistent and not r2.hypothesis_holds
        assert r2.gcd_failures and r2.nonunique

        r3 = wi.ufm_check_small(wi.PolyRing(Base.N0))
        assert r3.consistent and not r3.hypothesis_holds
        assert r3.gcd_failures and r3.nonunique


def test_criterion_10_property_suites():
    with criterion(10, "module property suites (see sibling test files)"):
        # one sample from each family; the full suites live in the other files
        assert mo.divides(mo.MF, Fraction(1, 2), Fraction(5, 6)) == \
            mo.contains(mo.MF, Fraction(5, 6) - Fraction(1, 2))
        a = sd.expsum({Fraction(0): 2})
        b = sd.expsum({Fraction(1, 2): 3})
        assert sd.expsum_mul(a, b) == sd.expsum_mul(b, a)
        f = po.make_poly(Base.N0, [0, 2])
        g = po.make_poly(Base.N0, [1, 3])
        assert po.poly_mul(f, g).ord == f.ord + g.ord
        x, y = sd.lexcone_poly({(1, 1): Fraction(2)}), \
            sd.lexcone_poly({(0, 2): Fraction(1), (3, 2): Fraction(1)})
        assert sd.lexcone_phi(sd.lexcone_mul(x, y)) == \
            sd.lexcone_phi(x) + sd.lexcone_phi(y)
        assert mo.divides(mo.DYADIC, Fraction(3, 4), Fraction(1, 2)) or \
            mo.divides(mo.DYADIC, Fraction(1, 2), Fraction(3, 4))
