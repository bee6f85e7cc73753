import random
from fractions import Fraction

import pytest
from hypothesis import given, assume, settings
import hypothesis.strategies as st

from subatomica import monoids as mo
from subatomica import semidomains as sd
from subatomica.exact import QuadExt, expsum_log2_bounds


S_MF = sd.expsum_semidomain(mo.MF)
S_P = sd.expsum_semidomain(mo.PRIME_RECIPROCAL)


half_grid = st.fractions(min_value=0, max_value=3, max_denominator=2)
expsums = st.dictionaries(half_grid, st.integers(1, 4), min_size=0, max_size=4).map(
    sd.expsum
)

quads = st.builds(
    QuadExt,
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
)

mixed_polys = st.lists(quads, min_size=1, max_size=5).map(
    lambda cs: sd.MixedPoly(tuple(cs))
)

cone_points = st.tuples(st.integers(-4, 4), st.integers(0, 3)).filter(
    lambda bc: bc[1] >= 1 or bc[0] >= 0
)
lexcone_polys = st.dictionaries(
    cone_points,
    st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool),
    min_size=1,
    max_size=4,
).map(sd.lexcone_poly)


# ---------------------------------------------------------------------------
# Semiring laws and zero divisors

@given(expsums, expsums, expsums)
def test_expsum_semiring_laws(a, b, c):
    assert sd.expsum_mul(a, b) == sd.expsum_mul(b, a)
    assert sd.expsum_add(a, b) == sd.expsum_add(b, a)
    assert sd.expsum_mul(a, sd.expsum_add(b, c)) == sd.expsum_add(
        sd.expsum_mul(a, b), sd.expsum_mul(a, c)
    )
    assert sd.expsum_mul(sd.expsum_mul(a, b), c) == sd.expsum_mul(
        a, sd.expsum_mul(b, c)
    )


@given(expsums, expsums)
def test_expsum_no_zero_divisors(a, b):
    assume(not a.is_zero and not b.is_zero)
    assert not sd.expsum_mul(a, b).is_zero


@given(mixed_polys, mixed_polys)
def test_mixed_mul_commutes_no_zero_divisors(f, g):
    assert sd.mixed_mul(f, g) == sd.mixed_mul(g, f)
    if any(bool(c) for c in f.coeffs) and any(bool(c) for c in g.coeffs):
        assert any(bool(c) for c in sd.mixed_mul(f, g).coeffs)


@given(lexcone_polys, lexcone_polys, lexcone_polys)
@settings(max_examples=50, deadline=None)
def test_lexcone_mul_laws(f, g, h):
    assert sd.lexcone_mul(f, g) == sd.lexcone_mul(g, f)
    assert sd.lexcone_mul(sd.lexcone_mul(f, g), h) == sd.lexcone_mul(
        f, sd.lexcone_mul(g, h)
    )
    assert sd.lexcone_mul(f, g).terms  # no zero divisors


@given(lexcone_polys, lexcone_polys)
@settings(max_examples=50, deadline=None)
def test_lexcone_phi_additive(f, g):
    assert sd.lexcone_phi(sd.lexcone_mul(f, g)) == sd.lexcone_phi(f) + sd.lexcone_phi(g)


# ---------------------------------------------------------------------------
# ExpSum divisibility and atoms

@given(expsums, expsums)
@settings(max_examples=60, deadline=None)
def test_expsum_divides_sound(a, b):
    assume(not a.is_zero and not b.is_zero)
    prod = sd.expsum_mul(a, b)
    q = sd.expsum_divides(S_MF, a, prod)
    if sd.expsum_contains(S_MF, a) and sd.expsum_contains(S_MF, b):
        assert q is not None
    if q is not None:
        assert sd.expsum_mul(a, q) == prod


@given(expsums, expsums)
@settings(max_examples=40, deadline=None)
def test_expsum_divides_none_is_honest(a, b):
    assume(not a.is_zero and not b.is_zero)
    assume(sd.expsum_contains(S_MF, a) and sd.expsum_contains(S_MF, b))
    q = sd.expsum_divides(S_MF, a, b)
    if q is None:
        pairs, complete = sd.expsum_divisor_search(S_MF, b, max_support=4)
        for s, t in pairs:
            assert s != a and t != a
    else:
        assert sd.expsum_mul(a, q) == b


def test_expsum_atom_examples():
    r = sd.expsum({Fraction(0): 2, Fraction(1, 2): 1})
    v = sd.expsum_is_atom(S_MF, r)
    assert v.is_atom
    square = sd.expsum_mul(r, r)
    v2 = sd.expsum_is_atom(S_MF, square)
    assert v2.status == "not_atom"
    s, t = v2.witness
    assert sd.expsum_mul(s, t) == square


def test_expsum_factorization_of_square():
    r = sd.expsum({Fraction(0): 2, Fraction(1, 2): 1})
    square = sd.expsum_mul(r, r)
    results, complete = sd.expsum_factorizations(S_MF, square)
    assert complete
    assert [sorted(str(a) for a in fac) for fac in results] == [
        ["2 + e^(1/2)", "2 + e^(1/2)"]
    ]


def test_expsum_exponent_shift_split():
    r = sd.expsum({Fraction(1, 2): 2, Fraction(3, 2): 3})
    (shift, body), exact = sd.expsum_exponent_mcd_split(S_MF, r)
    assert exact
    assert shift == sd.expsum({Fraction(1, 2): 1})
    assert sd.expsum_mul(shift, body) == r


# ---------------------------------------------------------------------------
# MixedRing

def _random_mixed(rng, force_irrational=None):
    n = rng.randint(1, 5)
    coeffs = []
    for i in range(n):
        if i <= 1:
            coeffs.append(QuadExt(Fraction(rng.randint(0, 4))))
        else:
            a = Fraction(rng.randint(0, 8), rng.choice([1, 1, 2, 3]))
            b = Fraction(rng.randint(-3, 3), rng.choice([1, 2]))
            coeffs.append(QuadExt(a, b))
    return sd.MixedPoly(tuple(coeffs))


def test_mixed_ord_status_dichotomy():
    rng = random.Random(5)
    seen_factor, seen_never = 0, 0
    for _ in range(100):
        f = _random_mixed(rng)
        if not any(bool(c) for c in f.coeffs) or sd.mixed_poly(f.coeffs).is_unit:
            continue
        status = sd.mixedring_ord_status(f)
        c = f.coeffs[status.ord]
        assert c == status.ord_coeff
        in_n_pos = c.b == 0 and c.a.denominator == 1 and c.a > 0
        if status.status == "factors_into_atoms":
            assert in_n_pos
            seen_factor += 1
        else:
            assert not in_n_pos
            seen_never += 1
            facs, complete = sd.mixed_factorizations(f)
            assert facs == [] and complete
    assert seen_factor and seen_never


def test_mixed_factorization_round_trip():
    rng = random.Random(9)
    for _ in range(40):
        f = _random_mixed(rng)
        if not any(bool(c) for c in f.coeffs) or sd.mixed_poly(f.coeffs).is_unit:
            continue
        facs, complete = sd.mixed_factorizations(f)
        for fac in facs:
            prod = fac[0]
            for a in fac[1:]:
                prod = sd.mixed_mul(prod, a)
            assert prod == f
            for a in fac:
                assert sd.mixed_is_atom(a).is_atom


def test_mixed_never_factors_depth_check():
    # sqrt2 * x^2: no bounded-depth split produces all-atom factors
    f = sd.mixed_poly([0, 0, QuadExt(Fraction(0), Fraction(1))])
    assert sd.mixedring_ord_status(f).status == "never_factors"
    facs, complete = sd.mixed_factorizations(f)
    assert facs == [] and complete
    v = sd.mixed_is_atom(f)
    assert v.status == "not_atom"
    g, h = v.witness
    assert sd.mixed_mul(g, h) == f


def test_mixed_atom_examples():
    x = sd.mixed_poly([0, 1])
    assert sd.mixed_is_atom(x).is_atom
    two = sd.mixed_poly([2])
    assert sd.mixed_is_atom(two).is_atom
    four = sd.mixed_poly([4])
    assert not sd.mixed_is_atom(four).is_atom


# ---------------------------------------------------------------------------
# LexCone algebra

def test_lexcone_divides_sound():
    rng = random.Random(21)
    samples = []
    for _ in range(12):
        n = rng.randint(1, 3)
        terms = {}
        for _ in range(n):
            b, c = rng.randint(-3, 3), rng.randint(0, 2)
            if c == 0 and b < 0:
                b = -b
            terms[(b, c)] = Fraction(rng.randint(1, 3))
        samples.append(sd.lexcone_poly(terms))
    for f in samples:
        for g in samples:
            prod = sd.lexcone_mul(f, g)
            q = sd.lexcone_divides(f, prod)
            assert q is not None
            assert sd.lexcone_mul(f, q) == prod


def test_lexcone_canonical_factor_recomposes():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(1, 3)
        terms = {}
        for _ in range(n):
            b, c = rng.randint(-3, 3), rng.randint(0, 2)
            if c == 0 and b < 0:
                b = -b
            terms[(b, c)] = Fraction(rng.randint(1, 3))
        f = sd.lexcone_poly(terms)
        scalar, mono, atoms = sd.lexcone_canonical_factor(f)
        acc = sd.lexcone_poly({mono: scalar})
        for a in atoms:
            acc = sd.lexcone_mul(acc, a)
        assert acc == f


def test_lexcone_phi_examples():
    assert sd.lexcone_phi(sd.lexcone_poly({(2, 0): Fraction(1), (0, 0): Fraction(3)})) == 0
    assert sd.lexcone_phi(sd.lexcone_poly({(0, 1): Fraction(3), (2, 1): Fraction(1)})) == 1
    assert sd.lexcone_phi(sd.lexcone_poly({(-4, 2): Fraction(1)})) == 2


# ---------------------------------------------------------------------------
# Scalars, embeddings, value homomorphism

def test_scalar_submonoid_divisor_closed():
    # a scalar dividing a one-term element forces a scalar quotient
    a = sd.expsum({Fraction(0): 2})
    b = sd.expsum({Fraction(0): 6})
    q = sd.expsum_divides(S_MF, a, b)
    assert q == sd.expsum({Fraction(0): 3})


def _dict_add(a, b):
    out = dict(a)
    for q, c in b.items():
        out[q] = out.get(q, 0) + c
    return {q: c for q, c in out.items() if c}


def _dict_mul(a, b):
    out = {}
    for qa, ca in a.items():
        for qb, cb in b.items():
            out[qa + qb] = out.get(qa + qb, 0) + ca * cb
    return {q: c for q, c in out.items() if c}


@given(expsums, expsums)
@settings(max_examples=40, deadline=None)
def test_grothendieck_embed_homomorphism(a, b):
    S = S_MF
    ea, eb = sd.grothendieck_embed(S, a), sd.grothendieck_embed(S, b)
    eab = sd.grothendieck_embed(S, sd.expsum_mul(a, b))
    esum = sd.grothendieck_embed(S, sd.expsum_add(a, b))
    assert eab == _dict_mul(ea, eb)
    assert esum == _dict_add(ea, eb)


@given(expsums, expsums)
@settings(max_examples=25, deadline=None)
def test_expsum_value_bounds_multiplicative(a, b):
    assume(not a.is_zero and not b.is_zero)
    prod = sd.expsum_mul(a, b)
    ba = expsum_log2_bounds([(c, q) for q, c in a.terms])
    bb = expsum_log2_bounds([(c, q) for q, c in b.terms])
    bp = expsum_log2_bounds([(c, q) for q, c in prod.terms])
    # log2 of the product lies inside the summed enclosures
    assert bp.lower <= ba.upper + bb.upper
    assert ba.lower + bb.lower <= bp.upper
